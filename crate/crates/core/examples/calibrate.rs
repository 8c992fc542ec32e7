//! Scratch calibration harness (deleted before release).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use textphase_core::*;

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-12);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_table(words: &[String], dim: usize, seed: u64) -> EmbeddingTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    for w in words {
        text.push_str(w);
        for _ in 0..dim {
            text.push_str(&format!(" {:.6}", gaussian(&mut rng)));
        }
        text.push('\n');
    }
    EmbeddingTable::parse_text(&text, None).unwrap()
}

fn figure_cycle_tokens(total: usize) -> Vec<String> {
    // verbatim 3-line degenerate cycle: 8-word lines ending man/whale/ship
    let mut text = String::new();
    while tokenize(&text).len() < total {
        for ending in ["man", "whale", "ship"] {
            text.push_str("and in the act of devouring a ");
            text.push_str(ending);
            text.push_str(",\n");
        }
    }
    let mut t = tokenize(&text);
    t.truncate(total);
    t
}

fn nine_cycle_tokens(total: usize) -> Vec<String> {
    let cycle = [
        "and", "in", "the", "act", "of", "devouring", "a", "man", "whale",
    ];
    (0..total).map(|i| cycle[i % 9].to_string()).collect()
}

fn spectrum_of(tokens: &[String], table: &EmbeddingTable) -> SpectrumResult {
    let seq = embed_and_center(tokens, table).unwrap();
    let curve = acf_fft(&seq, &LagGrid::periodic_scan()).unwrap();
    acf_spectrum(&curve).unwrap()
}

fn main() {
    let vocab: Vec<String> = [
        "and", "in", "the", "act", "of", "devouring", "a", "man", "whale", "ship",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();

    let mut nine_ok = 0;
    let mut fig_periods = std::collections::BTreeMap::<String, usize>::new();
    let mut midpoints = Vec::new();
    for seed in 0u64..20 {
        let table = random_table(&vocab, 50, seed);
        let nine = nine_cycle_tokens(10000);
        let s = spectrum_of(&nine, &table);
        if (s.implied_period - 9.0).abs() <= 1.0 {
            nine_ok += 1;
        }
        let mut shuffled = nine.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 500);
        shuffled.shuffle(&mut rng);
        let ss = spectrum_of(&shuffled, &table);
        midpoints.push((s.periodicity_metric * ss.periodicity_metric).sqrt());

        let fig = figure_cycle_tokens(10000);
        let sf = spectrum_of(&fig, &table);
        *fig_periods
            .entry(format!("{:.2}", sf.implied_period))
            .or_default() += 1;
    }
    println!("nine-cycle implied period within 9±1: {nine_ok}/20");
    println!("figure-cycle implied periods: {fig_periods:?}");
    let mean_mid = midpoints.iter().sum::<f64>() / midpoints.len() as f64;
    let (lo, hi) = midpoints
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(l, h), &m| (l.min(m), h.max(m)));
    println!("log-midpoint theta_p: mean {mean_mid:.4} range [{lo:.4}, {hi:.4}]");

    // Long-memory surrogate: per-dimension 1/f^beta gaussian noise diluted
    // with white noise, sign-quantized into 2^d pattern words.
    fn long_memory_series(n: usize, beta: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let padded = (2 * n).next_power_of_two();
        let mut re = vec![0.0; padded];
        let mut im = vec![0.0; padded];
        for k in 1..padded / 2 {
            let f = k as f64 / padded as f64;
            let amp = f.powf(-beta / 2.0);
            let (a, b) = (gaussian(rng) * amp, gaussian(rng) * amp);
            re[k] = a;
            im[k] = b;
            re[padded - k] = a;
            im[padded - k] = -b;
        }
        textphase_core::fft::fft(&mut re, &mut im, true);
        let mut series: Vec<f64> = re[..n].to_vec();
        let var = series.iter().map(|x| x * x).sum::<f64>() / n as f64;
        let inv = 1.0 / var.sqrt();
        for x in series.iter_mut() {
            *x *= inv;
        }
        series
    }

    // Circulant-embedding synthesis of a gaussian series with an exact
    // power-law autocorrelation rho(tau) = rho1 * tau^(-b), tapered to 0.
    fn power_law_gaussian(
        n: usize,
        rho1: f64,
        b: f64,
        rng: &mut ChaCha8Rng,
        eigen: &[f64],
    ) -> Vec<f64> {
        let l = eigen.len();
        let mut re = vec![0.0; l];
        let mut im = vec![0.0; l];
        for k in 0..l {
            let s = (eigen[k].max(0.0)).sqrt();
            re[k] = s * gaussian(rng) / std::f64::consts::SQRT_2;
            im[k] = s * gaussian(rng) / std::f64::consts::SQRT_2;
        }
        textphase_core::fft::fft(&mut re, &mut im, true);
        let scale = (l as f64).sqrt() * std::f64::consts::SQRT_2;
        let _ = (rho1, b);
        re[..n].iter().map(|&x| x * scale).collect()
    }

    fn circulant_eigenvalues(l: usize, rho1: f64, b: f64, taper_from: usize, taper_to: usize) -> Vec<f64> {
        let mut r = vec![0.0; l];
        r[0] = 1.0;
        for tau in 1..=l / 2 {
            let base = rho1 * (tau as f64).powf(-b);
            let w = if tau <= taper_from {
                1.0
            } else if tau >= taper_to {
                0.0
            } else {
                let x = (tau - taper_from) as f64 / (taper_to - taper_from) as f64;
                0.5 * (1.0 + (std::f64::consts::PI * x).cos())
            };
            let v = base * w;
            r[tau] = v;
            r[l - tau] = v;
        }
        let mut im = vec![0.0; l];
        textphase_core::fft::fft(&mut r, &mut im, false);
        r
    }

    for (amp, b, d, n) in [
        (0.10, 0.30, 12usize, 50000usize),
        (0.12, 0.30, 12, 50000),
        (0.10, 0.25, 12, 50000),
    ] {
        // per-dim gaussian correlation for a target token ACF amp*tau^-b:
        // sign correlation is (2/pi) arcsin(rho), so rho ~= (pi/2) * target.
        let rho1 = std::f64::consts::FRAC_PI_2 * amp;
        let l = (2 * (n + 4000)).next_power_of_two();
        let eigen = circulant_eigenvalues(l, rho1, b, 2000, 4000);
        let neg = eigen.iter().filter(|&&e| e < 0.0).count();
        let mut oks = 0;
        let mut report = String::new();
        for seed in 0u64..8 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed * 97 + 13);
            let mut patterns = vec![0usize; n];
            for _ in 0..d {
                let s = power_law_gaussian(n, rho1, b, &mut rng, &eigen);
                for (i, p) in patterns.iter_mut().enumerate() {
                    *p = (*p << 1) | usize::from(s[i] >= 0.0);
                }
            }
            let tokens: Vec<String> = patterns.iter().map(|p| format!("s{p:03x}")).collect();
            let mut text = String::new();
            let mut seen = std::collections::BTreeSet::new();
            for &p in &patterns {
                if seen.insert(p) {
                    text.push_str(&format!("s{p:03x}"));
                    for bit in (0..d).rev() {
                        let sign = if (p >> bit) & 1 == 1 { 1.0 } else { -1.0 };
                        text.push_str(&format!(" {sign:.1}"));
                    }
                    text.push('\n');
                }
            }
            let table = EmbeddingTable::parse_text(&text, None).unwrap();
            let seq = embed_and_center(&tokens, &table).unwrap();
            let label = classify(&seq, &AnalysisConfig::default()).unwrap();
            let curve = acf_fft(&seq, &LagGrid::medium_range()).unwrap();
            let min_c = curve.values().fold(f64::INFINITY, f64::min);
            if label.label == Phase::Critical {
                oks += 1;
            }
            report.push_str(&format!(
                "   {:?} m {:.4} g {:.2} C1 {:.3} C600 {:.4} min {:.4} vocab {}\n",
                label.label,
                label.periodicity_metric,
                label.gapelmaper.value.unwrap_or(f64::NAN),
                curve.value_at(1).unwrap(),
                curve.value_at(600).unwrap(),
                min_c,
                seen.len()
            ));
        }
        println!("amp {amp} b {b} d {d} n {n} (rho1 {rho1:.3}, neg-eigen {neg}): critical {oks}/8");
        print!("{report}");
    }

    for seed in [1u64, 2, 3] {
        let table = random_table(&vocab, 50, seed);

        let fig = figure_cycle_tokens(10000);
        let s = spectrum_of(&fig, &table);
        println!(
            "seed {seed} figure-cycle: peak {} period {:.3} metric {:.6}",
            s.peak_index, s.implied_period, s.periodicity_metric
        );

        let nine = nine_cycle_tokens(10000);
        let s9 = spectrum_of(&nine, &table);
        println!(
            "seed {seed} nine-cycle:   peak {} period {:.3} metric {:.6}",
            s9.peak_index, s9.implied_period, s9.periodicity_metric
        );

        let mut shuffled = nine.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
        shuffled.shuffle(&mut rng);
        let ss = spectrum_of(&shuffled, &table);
        println!(
            "seed {seed} shuffled-9:   peak {} period {:.3} metric {:.6}  ratio {:.1}",
            ss.peak_index,
            ss.implied_period,
            ss.periodicity_metric,
            s9.periodicity_metric / ss.periodicity_metric
        );

        let mut fig_shuffled = fig.clone();
        fig_shuffled.shuffle(&mut rng);
        let fs = spectrum_of(&fig_shuffled, &table);
        println!(
            "seed {seed} shuffled-fig: metric {:.6}  ratio {:.1}",
            fs.periodicity_metric,
            s.periodicity_metric / fs.periodicity_metric
        );
    }

    // i.i.d. text over a 1000-word lexicon
    let lexicon: Vec<String> = (0..1000).map(|i| format!("w{i:04}")).collect();
    let table = random_table(&lexicon, 50, 7);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let tokens: Vec<String> = (0..10000)
        .map(|_| lexicon[rng.random_range(0..1000)].clone())
        .collect();
    let seq = embed_and_center(&tokens, &table).unwrap();
    let curve = acf_fft(&seq, &LagGrid::contiguous(5000)).unwrap();
    let max_after_20 = curve
        .points()
        .iter()
        .filter(|p| p.lag >= 20)
        .map(|p| p.value.abs())
        .fold(0.0f64, f64::max);
    println!("iid: max |C(tau)| for tau>=20: {max_after_20:.5}");
    let label = classify(&seq, &AnalysisConfig::default()).unwrap();
    println!(
        "iid: label {:?} metric {:.6} gap status {:?} value {:?}",
        label.label, label.periodicity_metric, label.gapelmaper.status, label.gapelmaper.value
    );
}
