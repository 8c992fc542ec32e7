//! Deterministic synthetic corpora and embedding tables.
//!
//! These generators back the test suites and the `fixtures` subcommand:
//! repeating (degenerate) texts, i.i.d. texts, and a long-memory surrogate
//! whose autocorrelation follows a known power law. Everything is seeded,
//! so identical seeds give identical bytes.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt::Write as _;
use std::path::Path;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use textphase_core::fft::fft;
use textphase_core::EmbeddingTable;

use crate::corpus::corpus_filename;

/// Standard normal via Box-Muller.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// `n` synthetic words: w0000, w0001, …
pub fn word_lexicon(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i:04}")).collect()
}

/// A table of unit-scale gaussian vectors, one per word.
pub fn gaussian_table(words: &[String], dim: usize, seed: u64) -> EmbeddingTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    for word in words {
        text.push_str(word);
        for _ in 0..dim {
            let _ = write!(text, " {:.6}", gaussian(&mut rng));
        }
        text.push('\n');
    }
    EmbeddingTable::parse_text(&text, Some(dim)).expect("generated table parses")
}

/// Cycle through `words` until `total` tokens are emitted.
pub fn cycle_tokens(words: &[String], total: usize) -> Vec<String> {
    (0..total).map(|i| words[i % words.len()].clone()).collect()
}

/// `total` tokens drawn uniformly (with replacement) from the lexicon.
pub fn iid_tokens(lexicon: &[String], total: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..total)
        .map(|_| lexicon[rng.random_range(0..lexicon.len())].clone())
        .collect()
}

/// The classic low-temperature degeneration loop: 8-word lines whose last
/// word cycles through man/whale/ship, repeated until at least
/// `total_words` words are present.
pub fn degenerate_cycle_text(total_words: usize) -> String {
    let mut text = String::new();
    let mut words = 0;
    for ending in ["man", "whale", "ship"].iter().cycle() {
        if words >= total_words {
            break;
        }
        text.push_str("and in the act of devouring a ");
        text.push_str(ending);
        text.push_str(",\n");
        words += 8;
    }
    text
}

/// Vocabulary of [`degenerate_cycle_text`].
pub fn degenerate_vocabulary() -> Vec<String> {
    ["and", "in", "the", "act", "of", "devouring", "a", "man", "whale", "ship"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

// ---------------------------------------------------------------------------
// Long-memory surrogate
// ---------------------------------------------------------------------------

/// Token-level autocorrelation amplitude the surrogate targets at lag 1.
const LONG_MEMORY_AMPLITUDE: f64 = 0.12;
/// Power-law exponent of the target autocorrelation.
const LONG_MEMORY_EXPONENT: f64 = 0.3;
/// Independent sign dimensions (the lexicon has 2^12 pattern words).
const LONG_MEMORY_DIMS: usize = 12;
const TAPER_FROM: usize = 2000;
const TAPER_TO: usize = 4000;

/// Circulant eigenvalues for the target correlation
/// `rho(tau) = rho1 * tau^(-b)` with a cosine taper to zero.
fn circulant_eigenvalues(len: usize, rho1: f64, b: f64) -> Vec<f64> {
    let mut r = vec![0.0; len];
    r[0] = 1.0;
    for tau in 1..=len / 2 {
        let base = rho1 * (tau as f64).powf(-b);
        let window = if tau <= TAPER_FROM {
            1.0
        } else if tau >= TAPER_TO {
            0.0
        } else {
            let x = (tau - TAPER_FROM) as f64 / (TAPER_TO - TAPER_FROM) as f64;
            0.5 * (1.0 + (PI * x).cos())
        };
        let value = base * window;
        r[tau] = value;
        r[len - tau] = value;
    }
    let mut im = vec![0.0; len];
    fft(&mut r, &mut im, false);
    r
}

/// One gaussian series with the circulant-embedded covariance.
fn gaussian_series(n: usize, eigenvalues: &[f64], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let len = eigenvalues.len();
    let mut re = vec![0.0; len];
    let mut im = vec![0.0; len];
    for k in 0..len {
        // Slightly negative eigenvalues from the taper are clipped.
        let scale = eigenvalues[k].max(0.0).sqrt();
        re[k] = scale * gaussian(rng) / SQRT_2;
        im[k] = scale * gaussian(rng) / SQRT_2;
    }
    fft(&mut re, &mut im, true);
    let scale = (len as f64).sqrt() * SQRT_2;
    re[..n].iter().map(|&x| x * scale).collect()
}

/// A long-memory token stream plus its embedding table.
///
/// Twelve independent gaussian series with an exact power-law
/// autocorrelation are sign-quantized per position into 4096 pattern words;
/// each word embeds as its own ±1 vector. The resulting token
/// autocorrelation is `(2/π)·asin(rho(tau))` ≈ `0.12·tau^(-0.3)`: positive
/// through the whole fit window and far better described by a power law
/// than by an exponential.
pub fn long_memory_corpus(n: usize, seed: u64) -> (Vec<String>, EmbeddingTable) {
    let rho1 = FRAC_PI_2 * LONG_MEMORY_AMPLITUDE;
    let len = (2 * (n + TAPER_TO)).next_power_of_two();
    let eigenvalues = circulant_eigenvalues(len, rho1, LONG_MEMORY_EXPONENT);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut patterns = vec![0usize; n];
    for _ in 0..LONG_MEMORY_DIMS {
        let series = gaussian_series(n, &eigenvalues, &mut rng);
        for (pattern, value) in patterns.iter_mut().zip(&series) {
            *pattern = (*pattern << 1) | usize::from(*value >= 0.0);
        }
    }

    let tokens: Vec<String> = patterns.iter().map(|p| format!("s{p:03x}")).collect();
    let mut table_text = String::new();
    let mut seen = std::collections::BTreeSet::new();
    for &pattern in &patterns {
        if seen.insert(pattern) {
            let _ = write!(table_text, "s{pattern:03x}");
            for bit in (0..LONG_MEMORY_DIMS).rev() {
                let sign = if (pattern >> bit) & 1 == 1 { 1.0 } else { -1.0 };
                let _ = write!(table_text, " {sign:.1}");
            }
            table_text.push('\n');
        }
    }
    let table =
        EmbeddingTable::parse_text(&table_text, Some(LONG_MEMORY_DIMS)).expect("table parses");
    (tokens, table)
}

// ---------------------------------------------------------------------------
// Whole-corpus fixture
// ---------------------------------------------------------------------------

/// Temperatures below this produce repeating texts in the synthetic sweep;
/// above it, i.i.d. texts.
pub const SWEEP_FIXTURE_CUT: f64 = 0.8;

/// Write a synthetic sweep corpus plus a matching embedding file.
///
/// Low temperatures get degenerate repeating texts (cycle length grows with
/// the seed), high temperatures i.i.d. texts, mirroring how generation
/// degenerates below the transition and randomizes above it. Returns the
/// embedding file path.
pub fn write_sweep_fixture(
    dir: &Path,
    temperatures: &[f64],
    seeds: &[u64],
    words_per_text: usize,
    seed: u64,
) -> std::io::Result<std::path::PathBuf> {
    std::fs::create_dir_all(dir)?;
    let lexicon = word_lexicon(64);
    let table = gaussian_table(&lexicon, 50, seed);
    let embeddings_path = dir.join("embeddings.txt");
    crate::embeddings_io::write_embeddings(&table, &embeddings_path)?;

    let corpus_dir = dir.join("corpus");
    std::fs::create_dir_all(&corpus_dir)?;
    for &temperature in temperatures {
        for &text_seed in seeds {
            let tokens = if temperature < SWEEP_FIXTURE_CUT {
                let cycle_len = 5 + (text_seed as usize % 7);
                cycle_tokens(&lexicon[..cycle_len], words_per_text)
            } else {
                iid_tokens(
                    &lexicon,
                    words_per_text,
                    seed ^ (text_seed * 7919) ^ temperature.to_bits(),
                )
            };
            let path = corpus_dir.join(corpus_filename("fixture", temperature, text_seed));
            std::fs::write(path, tokens.join(" "))?;
        }
    }
    Ok(embeddings_path)
}
