//! Loading and saving embedding tables from the plain-text format.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use textphase_core::{EmbeddingError, EmbeddingTable, EmbeddingTableBuilder};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EmbeddingIoError {
    #[error("cannot read embeddings file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("embeddings file {path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: EmbeddingError,
    },
}

/// Stream an embedding file from disk. Lines are fed one at a time, so the
/// whole file is never held in memory alongside the parsed table.
pub fn load_embeddings(
    path: &Path,
    expected_dim: Option<usize>,
) -> Result<EmbeddingTable, EmbeddingIoError> {
    let io_err = |source| EmbeddingIoError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    let mut reader = BufReader::new(file);
    let mut builder = EmbeddingTableBuilder::new(expected_dim);
    let mut line = String::new();
    loop {
        line.clear();
        let read = reader.read_line(&mut line).map_err(io_err)?;
        if read == 0 {
            break;
        }
        builder.push_line(&line).map_err(|source| EmbeddingIoError::Parse {
            path: path.to_path_buf(),
            source,
        })?;
    }
    builder.finish().map_err(|source| EmbeddingIoError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Write a table back in the same text format (six decimals per component).
pub fn write_embeddings(table: &EmbeddingTable, path: &Path) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(table.to_text().as_bytes())?;
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.txt");
        std::fs::write(&path, "alpha 0.5 -1.25\nbeta 2.0 0.125\n").unwrap();
        let table = load_embeddings(&path, None).unwrap();
        assert_eq!(table.dim(), 2);
        assert_eq!(table.word_count(), 2);

        let copy = dir.path().join("copy.txt");
        write_embeddings(&table, &copy).unwrap();
        let again = load_embeddings(&copy, Some(2)).unwrap();
        assert_eq!(again.word_count(), 2);
        for (word, vector) in table.iter() {
            let other = again.vector(word).unwrap();
            for (x, y) in vector.iter().zip(other) {
                assert!((x - y).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn missing_file_reports_path() {
        let err = load_embeddings(Path::new("/nonexistent/vectors.txt"), None).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/vectors.txt"));
    }

    #[test]
    fn parse_error_carries_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        let mut f = File::create(&path).unwrap();
        writeln!(f, "good 1.0 2.0").unwrap();
        writeln!(f, "bad 1.0").unwrap();
        drop(f);
        let err = load_embeddings(&path, None).unwrap_err();
        assert!(matches!(
            err,
            EmbeddingIoError::Parse {
                source: EmbeddingError::MalformedLine { line: 2 },
                ..
            }
        ));
    }
}
