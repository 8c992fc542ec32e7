//! Cross-checks of the two autocorrelation routes against an independent
//! double-loop oracle, plus the structural properties that only show up on
//! randomized inputs.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use textphase_core::{acf_direct, acf_fft, AcfCurve, LagGrid, VectorSequence};

/// Independent oracle: cosine evaluated per pair, straight from the
/// definition, sharing no code with the library paths.
fn oracle_acf(data: &[f64], dim: usize, n: usize, lags: &[usize]) -> Vec<f64> {
    let row = |i: usize| &data[i * dim..(i + 1) * dim];
    let pair_cosine = |u: &[f64], v: &[f64]| {
        let mut dot = 0.0;
        let mut nu = 0.0;
        let mut nv = 0.0;
        for k in 0..u.len() {
            dot += u[k] * v[k];
            nu += u[k] * u[k];
            nv += v[k] * v[k];
        }
        if nu == 0.0 || nv == 0.0 {
            0.0
        } else {
            dot / (nu.sqrt() * nv.sqrt())
        }
    };
    lags.iter()
        .map(|&lag| {
            let mut sum = 0.0;
            for i in 0..n - lag {
                sum += pair_cosine(row(i), row(i + lag));
            }
            sum / (n - lag) as f64
        })
        .collect()
}

fn random_sequence(rng: &mut ChaCha8Rng, n: usize, dim: usize, oov_share: f64) -> VectorSequence {
    let mut data = Vec::with_capacity(n * dim);
    for i in 0..n {
        let zero_row = rng.random::<f64>() < oov_share;
        for _ in 0..dim {
            if zero_row {
                data.push(0.0);
            } else {
                data.push(rng.random::<f64>() * 2.0 - 1.0);
            }
        }
        let _ = i;
    }
    VectorSequence::from_vectors(data, dim)
}

fn max_abs_diff(a: &AcfCurve, b: &[f64]) -> f64 {
    a.points()
        .iter()
        .zip(b)
        .map(|(p, &v)| (p.value - v).abs())
        .fold(0.0, f64::max)
}

#[test]
fn direct_path_matches_double_loop_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..40 {
        let n = rng.random_range(64..=512);
        let dim = rng.random_range(1..=16);
        let oov = if case % 3 == 0 { 0.1 } else { 0.0 };
        let seq = random_sequence(&mut rng, n, dim, oov);
        let grid = LagGrid::contiguous(LagGrid::max_admissible_lag(n));
        let curve = acf_direct(&seq, &grid).unwrap();
        let lags: Vec<usize> = curve.lags().collect();
        let want = oracle_acf(seq.data(), dim, n, &lags);
        let diff = max_abs_diff(&curve, &want);
        assert!(diff < 1e-12, "case {case}: n {n} dim {dim} diff {diff:e}");
    }
}

#[test]
fn fft_path_matches_direct_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..40 {
        let n = rng.random_range(64..=2048);
        let dim = rng.random_range(1..=64);
        let seq = random_sequence(&mut rng, n, dim, if case % 4 == 0 { 0.15 } else { 0.0 });
        // Mix of full and sparse grids.
        let grid = if case % 2 == 0 {
            LagGrid::contiguous(LagGrid::max_admissible_lag(n))
        } else {
            let max = LagGrid::max_admissible_lag(n);
            LagGrid::custom((1..=max).step_by(7).collect()).unwrap()
        };
        let direct = acf_direct(&seq, &grid).unwrap();
        let fast = acf_fft(&seq, &grid).unwrap();
        let diff = direct
            .points()
            .iter()
            .zip(fast.points())
            .map(|(a, b)| (a.value - b.value).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-9, "case {case}: n {n} dim {dim} diff {diff:e}");
    }
}

#[test]
fn large_random_case_agrees_across_paths() {
    // 4096 vectors of 50 dims, lags 1..2048.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let seq = random_sequence(&mut rng, 4096, 50, 0.0);
    let grid = LagGrid::contiguous(2048);
    let direct = acf_direct(&seq, &grid).unwrap();
    let fast = acf_fft(&seq, &grid).unwrap();
    let diff = direct
        .points()
        .iter()
        .zip(fast.points())
        .map(|(a, b)| (a.value - b.value).abs())
        .fold(0.0, f64::max);
    assert!(diff < 1e-9, "diff {diff:e}");
}

#[test]
fn appending_oov_zeros_only_rescales_the_divisor() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let n = 400;
    let dim = 8;
    let k = 60;
    let seq = random_sequence(&mut rng, n, dim, 0.0);

    let mut padded_data = seq.data().to_vec();
    padded_data.extend(std::iter::repeat(0.0).take(k * dim));
    let padded = VectorSequence::from_vectors(padded_data, dim);

    let grid = LagGrid::contiguous(150);
    let base = acf_direct(&seq, &grid).unwrap();
    let grown = acf_direct(&padded, &grid).unwrap();

    // Zero rows contribute zero-valued cosines, so the lag sums are
    // unchanged and only the 1/(N-tau) divisor moves.
    for (a, b) in base.points().iter().zip(grown.points()) {
        let rescaled = a.value * a.pair_count as f64 / b.pair_count as f64;
        assert!((rescaled - b.value).abs() < 1e-12);
    }

    // And the padded curve still matches the oracle on its own terms.
    let lags: Vec<usize> = grown.lags().collect();
    let want = oracle_acf(padded.data(), dim, n + k, &lags);
    assert!(max_abs_diff(&grown, &want) < 1e-12);
}

#[test]
fn fft_path_outruns_direct_path_on_long_texts() {
    // N = 10000, d = 300, full admissible lag range; asserted as an
    // ordering only, no absolute time.
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let seq = random_sequence(&mut rng, 10_000, 300, 0.0);
    let grid = LagGrid::contiguous(5000);

    let start = std::time::Instant::now();
    let direct = acf_direct(&seq, &grid).unwrap();
    let direct_elapsed = start.elapsed();

    let start = std::time::Instant::now();
    let fast = acf_fft(&seq, &grid).unwrap();
    let fft_elapsed = start.elapsed();

    let diff = direct
        .points()
        .iter()
        .zip(fast.points())
        .map(|(a, b)| (a.value - b.value).abs())
        .fold(0.0, f64::max);
    assert!(diff < 1e-9, "paths disagree: {diff:e}");
    assert!(
        fft_elapsed < direct_elapsed,
        "fft {fft_elapsed:?} not faster than direct {direct_elapsed:?}"
    );
}
