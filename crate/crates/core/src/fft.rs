//! Iterative radix-2 complex FFT on split real/imaginary buffers.
//!
//! Small by design: the correlation kernel only ever needs power-of-two
//! lengths (inputs are zero-padded), so a single radix-2 path covers it.

use alloc::vec::Vec;
use core::f64::consts::PI;

/// In-place transform of the complex signal `(re, im)`.
///
/// Both slices must have the same power-of-two length. The inverse
/// transform includes the `1/n` scaling, so `fft(inverse) ∘ fft(forward)`
/// is the identity up to rounding.
pub fn fft(re: &mut [f64], im: &mut [f64], inverse: bool) {
    let n = re.len();
    assert_eq!(n, im.len(), "re/im buffers must have equal length");
    assert!(n.is_power_of_two(), "fft length must be a power of two");
    if n < 2 {
        return;
    }

    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            re.swap(i, j);
            im.swap(i, j);
        }
    }

    // One twiddle table for the full length; stage `len` strides through it.
    let half = n / 2;
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut tw_re = Vec::with_capacity(half);
    let mut tw_im = Vec::with_capacity(half);
    for k in 0..half {
        let angle = sign * 2.0 * PI * k as f64 / n as f64;
        tw_re.push(libm::cos(angle));
        tw_im.push(libm::sin(angle));
    }

    let mut len = 2usize;
    while len <= n {
        let half_len = len / 2;
        let stride = n / len;
        let mut start = 0usize;
        while start < n {
            for k in 0..half_len {
                let wr = tw_re[k * stride];
                let wi = tw_im[k * stride];
                let a = start + k;
                let b = a + half_len;
                let tr = re[b] * wr - im[b] * wi;
                let ti = re[b] * wi + im[b] * wr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
            }
            start += len;
        }
        len <<= 1;
    }

    if inverse {
        let scale = 1.0 / n as f64;
        for v in re.iter_mut() {
            *v *= scale;
        }
        for v in im.iter_mut() {
            *v *= scale;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dft_naive(re: &[f64], im: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = re.len();
        let mut out_re = vec![0.0; n];
        let mut out_im = vec![0.0; n];
        for k in 0..n {
            for t in 0..n {
                let angle = -2.0 * PI * (k * t) as f64 / n as f64;
                let (c, s) = (libm::cos(angle), libm::sin(angle));
                out_re[k] += re[t] * c - im[t] * s;
                out_im[k] += re[t] * s + im[t] * c;
            }
        }
        (out_re, out_im)
    }

    #[test]
    fn matches_naive_dft() {
        let mut re = vec![0.7, -1.2, 3.0, 0.25, -0.5, 2.0, 1.0, -0.125];
        let mut im = vec![0.0, 0.5, -1.0, 2.0, 0.0, -0.25, 0.75, 1.5];
        let (want_re, want_im) = dft_naive(&re, &im);
        fft(&mut re, &mut im, false);
        for k in 0..re.len() {
            assert!((re[k] - want_re[k]).abs() < 1e-12, "re[{k}]");
            assert!((im[k] - want_im[k]).abs() < 1e-12, "im[{k}]");
        }
    }

    #[test]
    fn inverse_round_trips() {
        let orig_re = vec![1.0, 2.0, -3.0, 0.5, 0.0, -1.25, 4.0, 0.75];
        let orig_im = vec![0.0; 8];
        let mut re = orig_re.clone();
        let mut im = orig_im.clone();
        fft(&mut re, &mut im, false);
        fft(&mut re, &mut im, true);
        for k in 0..8 {
            assert!((re[k] - orig_re[k]).abs() < 1e-13);
            assert!(im[k].abs() < 1e-13);
        }
    }

    #[test]
    fn pure_tone_lands_in_one_bin() {
        let n = 64;
        let mut re: Vec<f64> = (0..n)
            .map(|t| libm::cos(2.0 * PI * 5.0 * t as f64 / n as f64))
            .collect();
        let mut im = vec![0.0; n];
        fft(&mut re, &mut im, false);
        for k in 0..n {
            let mag = libm::sqrt(re[k] * re[k] + im[k] * im[k]);
            if k == 5 || k == n - 5 {
                assert!((mag - n as f64 / 2.0).abs() < 1e-9);
            } else {
                assert!(mag < 1e-9, "leak at bin {k}: {mag}");
            }
        }
    }
}
