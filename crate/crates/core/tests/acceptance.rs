//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use myo_core::dsp::{design_bandpass, StreamConfig};
use myo_core::eval::{confusion, motion_completion, motion_efficacy, EfficacyMode, WindowOutcome};
use myo_core::features::{atdm, moments};
use myo_core::label::MotionLabel;
use myo_core::lda::{
    complexity_report, fit_class, read_model, write_model, ClassModel, ClassifierKind, OpCounts,
    PooledModel, Pooling,
};
use myo_core::session::{
    profile_latency, read_recording, run_session, run_session_on, synth_generate, write_recording,
    FeatureSet, Phase, Session, SessionScript, SynthSpec,
};

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 moment oracle", c1_moment_oracle),
        ("2 atdm hand oracle", c2_atdm_hand_oracle),
        ("3 incremental equals batch", c3_incremental_equals_batch),
        ("4 filter contract", c4_filter_contract),
        ("5 synthetic end to end", c5_synthetic_end_to_end),
        ("6 metrics arithmetic", c6_metrics),
        ("7 complexity table", c7_complexity),
        ("8 latency budget", c8_latency),
        ("9 determinism and round trips", c9_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {name}: PASS ({secs:.2} s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({secs:.2} s) {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

// ---------------------------------------------------------------- 1

/// `|X[k]|^2 / L` by direct summation.
fn dft_power(x: &[f64]) -> Vec<f64> {
    let l = x.len();
    (0..l)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, &v) in x.iter().enumerate() {
                let ph = -2.0 * PI * ((j * k) % l) as f64 / l as f64;
                re += v * ph.cos();
                im += v * ph.sin();
            }
            (re * re + im * im) / l as f64
        })
        .collect()
}

/// Squared terms a circular difference has and a linear one lacks.
fn wrap_terms(x: &[f64], n: usize) -> f64 {
    let l = x.len();
    let at = |i: isize| x[i.rem_euclid(l as isize) as usize];
    match n {
        2 => (at(0) - at(-1)).powi(2),
        4 => (0..2).map(|j| (at(j) - 2.0 * at(j - 1) + at(j - 2)).powi(2)).sum(),
        _ => 0.0,
    }
}

fn c1_moment_oracle() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = [0.0f64; 3];
    for w in 0..1000 {
        let scale = 10f64.powf(rng.random_range(-3.0..3.0));
        let x: Vec<f64> = (0..200).map(|_| scale * gaussian(&mut rng)).collect();
        let p = dft_power(&x);
        let l = x.len() as f64;
        let spectral = |n: i32| -> f64 {
            p.iter()
                .enumerate()
                .map(|(k, pk)| (2.0 * (PI * k as f64 / l).sin()).powi(n) * pk)
                .sum()
        };
        let m = moments(&x).map_err(|e| e.to_string())?;
        let errs = [
            rel_err(m.m0, spectral(0).sqrt()),
            rel_err((m.m2 * m.m2 + wrap_terms(&x, 2)).sqrt(), spectral(2).sqrt()),
            rel_err((m.m4 * m.m4 + wrap_terms(&x, 4)).sqrt(), spectral(4).sqrt()),
        ];
        for (i, e) in errs.iter().enumerate() {
            ensure!(*e <= 1e-9, "window {w}: m{} relative error {e:e}", 2 * i);
            worst[i] = worst[i].max(*e);
        }
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!(
        "1000 windows, max rel err m0 {:.1e} m2 {:.1e} m4 {:.1e}",
        worst[0], worst[1], worst[2]
    ))
}

// ---------------------------------------------------------------- 2

fn c2_atdm_hand_oracle() -> Outcome {
    let f = atdm(&[1.0, 2.0, 4.0]).map_err(|e| e.to_string())?;
    let expected = [105f64.sqrt(), 21.0 / 5f64.sqrt(), 1.0, 21f64.sqrt() - 5f64.sqrt()];
    for (got, want) in f.as_array().iter().zip(expected) {
        ensure!((got - want).abs() <= 1e-12, "[1,2,4]: got {got}, want {want}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for w in 0..1000 {
        let x: Vec<f64> = (0..200).map(|_| gaussian(&mut rng)).collect();
        let base = atdm(&x).map_err(|e| e.to_string())?;
        let m0 = moments(&x).map_err(|e| e.to_string())?.m0;
        let a = rng.random_range(0.01..100.0);
        let scaled: Vec<f64> = x.iter().map(|v| a * v).collect();
        let fs = atdm(&scaled).map_err(|e| e.to_string())?;
        for (i, (g, b)) in fs.as_array().iter().zip(base.as_array()).enumerate() {
            let tol = 1e-12 * a * b.abs().max(m0);
            ensure!((g - a * b).abs() <= tol, "window {w} feature {i}: not homogeneous");
        }
        let c = rng.random_range(-50.0..50.0);
        let shifted: Vec<f64> = x.iter().map(|v| v + c).collect();
        let fd = atdm(&shifted).map_err(|e| e.to_string())?;
        let (a2, s2) = (base.as_array(), fd.as_array());
        // differences ignore the offset; moments of the signal itself do not
        ensure!(rel_err(s2[2], a2[2]) <= 1e-9, "window {w}: MWL changed under a DC shift");
        let (m, ms) = (
            moments(&x).map_err(|e| e.to_string())?,
            moments(&shifted).map_err(|e| e.to_string())?,
        );
        ensure!(
            rel_err(ms.m2, m.m2) <= 1e-9 && rel_err(ms.m4, m.m4) <= 1e-9,
            "window {w}: derivative moments changed under a DC shift"
        );
    }
    Ok("hand values within 1e-12, homogeneity and DC invariance on 1000 windows".into())
}

// ---------------------------------------------------------------- 3

fn class_data(rng: &mut ChaCha8Rng, d: usize, n: usize, spread: f64) -> Vec<Vec<f64>> {
    let mean: Vec<f64> = (0..d).map(|_| spread * gaussian(rng)).collect();
    let mix: Vec<Vec<f64>> = (0..d).map(|_| (0..d).map(|_| 0.3 * gaussian(rng)).collect()).collect();
    (0..n)
        .map(|_| {
            let z: Vec<f64> = (0..d).map(|_| gaussian(rng)).collect();
            (0..d)
                .map(|i| mean[i] + z[i] + (0..d).map(|j| mix[i][j] * z[j]).sum::<f64>())
                .collect()
        })
        .collect()
}

fn oracle_cov(samples: &[Vec<f64>]) -> DMatrix<f64> {
    let n = samples.len();
    let d = samples[0].len();
    let mean: Vec<f64> = (0..d).map(|i| samples.iter().map(|s| s[i]).sum::<f64>() / n as f64).collect();
    DMatrix::from_fn(d, d, |i, j| {
        samples.iter().map(|s| (s[i] - mean[i]) * (s[j] - mean[j])).sum::<f64>() / (n - 1) as f64
    })
}

fn c3_incremental_equals_batch() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut points = 0;
    for set in 0..100 {
        let d = [4, 8, 32][set % 3];
        let k = rng.random_range(3..=12usize);
        let data: Vec<Vec<Vec<f64>>> = (0..k).map(|_| class_data(&mut rng, d, d + 20, 3.0)).collect();
        let classes: Vec<ClassModel> = data
            .iter()
            .enumerate()
            .map(|(i, s)| fit_class(s, MotionLabel::new(i as u16, format!("c{i}"))))
            .collect::<myo_core::Result<_>>()
            .map_err(|e| e.to_string())?;
        for (c, s) in classes.iter().zip(&data) {
            let o = oracle_cov(s);
            let scale = o.amax();
            ensure!(
                (&c.cov - &o).amax() <= 1e-12 * scale,
                "set {set}: class covariance differs from the oracle"
            );
        }
        let initial = 4.min(k - 1);
        let mut inc = PooledModel::build(classes[..initial].to_vec(), Pooling::Sum).map_err(|e| e.to_string())?;
        for c in &classes[initial..] {
            inc = inc.add_class(c.clone()).map_err(|e| e.to_string())?;
        }
        let batch = PooledModel::build(classes.clone(), Pooling::Sum).map_err(|e| e.to_string())?;
        let mut sum = DMatrix::zeros(d, d);
        for c in &classes {
            sum += &c.cov;
        }
        ensure!(inc.pooled_cov() == &sum, "set {set}: incremental pool is not the plain sum");
        ensure!(batch.pooled_cov() == &sum, "set {set}: batch pool is not the plain sum");
        for _ in 0..500 {
            let x: Vec<f64> = (0..d).map(|_| 4.0 * gaussian(&mut rng)).collect();
            let a = inc.discriminants(&x).map_err(|e| e.to_string())?;
            let b = batch.discriminants(&x).map_err(|e| e.to_string())?;
            for (u, v) in a.iter().zip(&b) {
                ensure!((u - v).abs() <= 1e-10 * v.abs().max(1.0), "set {set}: discriminants differ");
            }
            ensure!(
                inc.predict(&x).map_err(|e| e.to_string())? == batch.predict(&x).map_err(|e| e.to_string())?,
                "set {set}: predictions differ"
            );
            points += 1;
        }
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("100 datasets, {points} test points"))
}

// ---------------------------------------------------------------- 4

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Magnitude of `B(z) / A(z)` at `z = e^{jw}`, coefficients in powers of `z^-1`.
fn poly_gain(b: &[f64], a: &[f64], w: f64) -> f64 {
    let eval = |p: &[f64]| {
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in p.iter().enumerate() {
            re += c * (w * k as f64).cos();
            im -= c * (w * k as f64).sin();
        }
        (re * re + im * im).sqrt()
    };
    eval(b) / eval(a)
}

fn c4_filter_contract() -> Outcome {
    let config = StreamConfig::default();
    let fs = config.sample_rate as f64;
    let design = design_bandpass(fs, config.bandpass.low_hz, config.bandpass.high_hz, config.bandpass.order)
        .map_err(|e| e.to_string())?;
    let bank = config.filter_bank().map_err(|e| e.to_string())?;

    let (mut b, mut a) = (vec![1.0], vec![1.0]);
    for s in design.cascade.sections() {
        b = poly_mul(&b, &[s.b0, s.b1, s.b2]);
        a = poly_mul(&a, &[1.0, s.a1, s.a2]);
        // roots of z^2 + a1 z + a2
        let disc = s.a1 * s.a1 - 4.0 * s.a2;
        let radius = if disc < 0.0 { s.a2.sqrt() } else { ((-s.a1).abs() + disc.sqrt()) / 2.0 };
        ensure!(radius < 1.0, "band-pass pole radius {radius}");
    }
    for s in bank.sections() {
        let disc = s.a1 * s.a1 - 4.0 * s.a2;
        let radius = if disc < 0.0 { s.a2.sqrt() } else { ((-s.a1).abs() + disc.sqrt()) / 2.0 };
        ensure!(radius < 1.0, "filter bank pole radius {radius}");
    }

    let dc = b.iter().sum::<f64>().abs();
    ensure!(dc == 0.0, "|H(DC)| numerator is {dc}");
    let pass_db = 20.0 * poly_gain(&b, &a, 2.0 * PI * 100.0 / fs).log10();
    ensure!(pass_db.abs() <= 1.0, "100 Hz gain {pass_db:.3} dB");

    // impulse response against long division of B(z) / A(z)
    let mut single = design.cascade.for_channels(1).map_err(|e| e.to_string())?;
    let mut h: Vec<f64> = Vec::new();
    let mut worst = 0.0f64;
    for n in 0..512 {
        let got = single.process_sample(0, if n == 0 { 1.0 } else { 0.0 });
        let mut v = b.get(n).copied().unwrap_or(0.0);
        for k in 1..a.len().min(n + 1) {
            v -= a[k] * h[n - k];
        }
        h.push(v);
        worst = worst.max((got - v).abs());
    }
    ensure!(worst <= 1e-9, "impulse response differs by {worst:e}");

    // 50 Hz mains through the whole bank, steady state after one second
    let mut bank1 = bank.for_channels(1).map_err(|e| e.to_string())?;
    let n = 3 * config.sample_rate as usize;
    let (mut e_in, mut e_out) = (0.0, 0.0);
    for i in 0..n {
        let x = (2.0 * PI * 50.0 * i as f64 / fs).sin();
        let y = bank1.process_sample(0, x);
        if i >= config.sample_rate as usize {
            e_in += x * x;
            e_out += y * y;
        }
    }
    let rejection = 10.0 * (e_in / e_out).log10();
    ensure!(rejection >= 30.0, "50 Hz rejection only {rejection:.1} dB");
    Ok(format!(
        "DC exactly 0, 100 Hz {pass_db:+.3} dB, 50 Hz -{rejection:.1} dB, impulse err {worst:.1e}"
    ))
}

// ---------------------------------------------------------------- 5

/// Minimum Mahalanobis distance between class means under the average
/// within-class covariance.
fn min_mahalanobis(groups: &[Vec<Vec<f64>>]) -> f64 {
    let d = groups[0][0].len();
    let means: Vec<DVector<f64>> = groups
        .iter()
        .map(|g| DVector::from_fn(d, |i, _| g.iter().map(|v| v[i]).sum::<f64>() / g.len() as f64))
        .collect();
    let mut within = DMatrix::zeros(d, d);
    let mut dof = 0usize;
    for g in groups {
        within += oracle_cov(g) * (g.len() - 1) as f64;
        dof += g.len() - 1;
    }
    within /= dof as f64;
    let inv = within.try_inverse().expect("within-class covariance is invertible");
    let mut best = f64::INFINITY;
    for i in 0..means.len() {
        for j in 0..i {
            let diff = &means[i] - &means[j];
            best = best.min((diff.transpose() * &inv * &diff)[(0, 0)].sqrt());
        }
    }
    best
}

fn c5_synthetic_end_to_end() -> Outcome {
    let started = Instant::now();
    let spec = SynthSpec::standard(42);
    let rec = synth_generate(&spec).map_err(|e| e.to_string())?;
    let config = StreamConfig::default();
    let data = FeatureSet::extract(&rec, &config).map_err(|e| e.to_string())?;

    let half = spec.trials_per_class / 2;
    let groups: Vec<Vec<Vec<f64>>> = spec
        .classes
        .iter()
        .map(|l| {
            data.training_trials(l, half)
                .unwrap()
                .iter()
                .flat_map(|t| t.vectors.iter().map(|v| v.values.clone()))
                .collect()
        })
        .collect();
    let separation = min_mahalanobis(&groups);
    ensure!(separation >= 5.0, "class means only {separation:.2} pooled sigma apart");

    let script = SessionScript::standard(half, spec.trials_per_class - half);
    let out = run_session_on(&script, &data, Session::new(Pooling::Sum, EfficacyMode::Literal))
        .map_err(|e| e.to_string())?;
    let tests: Vec<_> = out.report.tests().collect();
    let first = tests.first().ok_or("no test phase")?;
    let last = tests.last().ok_or("no test phase")?;
    ensure!(first.labels.len() == 4, "first test covers {} labels", first.labels.len());
    ensure!(last.labels.len() == 12, "last test covers {} labels", last.labels.len());
    let curve: Vec<String> = tests.iter().map(|t| format!("{}:{:.2}", t.labels.len(), t.mc_percent)).collect();
    ensure!(first.mc_percent == 100.0, "4-class MC {:.2}% (curve {curve:?})", first.mc_percent);
    ensure!(last.mc_percent >= 90.0, "12-label MC {:.2}% (curve {curve:?})", last.mc_percent);
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "min separation {separation:.1} sigma, MC by class count {}",
        curve.join(" ")
    ))
}

// ---------------------------------------------------------------- 6

fn outcomes(ests: &[u8], props: &[f64]) -> Vec<WindowOutcome> {
    let hit = MotionLabel::new(1, "a");
    let miss = MotionLabel::new(2, "b");
    ests.iter()
        .zip(props)
        .map(|(&e, &p)| WindowOutcome::new(if e == 1 { hit.clone() } else { miss.clone() }, hit.clone(), p))
        .collect()
}

fn c6_metrics() -> Outcome {
    let e = |r: myo_core::Result<f64>| r.map_err(|e| e.to_string());
    let fixture = outcomes(&[1, 1, 0, 1], &[0.5, 1.0, 0.8, 0.25]);
    ensure!(e(motion_efficacy(&fixture, EfficacyMode::Literal))? == 75.0, "literal efficacy");
    ensure!(e(motion_efficacy(&fixture, EfficacyMode::SpeedWeighted))? == 43.75, "speed-weighted efficacy");

    let all = outcomes(&[1; 30], &[1.0; 30]);
    ensure!(e(motion_completion(&all))? == 100.0, "all-success MC");
    for mode in [EfficacyMode::Literal, EfficacyMode::SpeedWeighted] {
        ensure!(e(motion_efficacy(&all, mode))? == 100.0, "all-success efficacy ({mode})");
    }
    let mut ests = [1u8; 30];
    ests[3] = 0;
    ests[17] = 0;
    let mc = e(motion_completion(&outcomes(&ests, &[0.5; 30])))?;
    ensure!(mc == 100.0 * 28.0 / 30.0, "28 of 30 gave {mc}");
    ensure!(e(motion_completion(&outcomes(&[0; 30], &[0.5; 30])))? == 0.0, "0 of 30");
    ensure!(motion_completion(&[]).is_err(), "empty outcome list accepted");

    let labels = vec![MotionLabel::new(1, "a"), MotionLabel::new(2, "b")];
    let m = confusion(labels.clone(), &outcomes(&[1, 0, 1], &[1.0; 3])).map_err(|e| e.to_string())?;
    ensure!(m.counts == vec![vec![2, 1], vec![0, 0]], "confusion counts {:?}", m.counts);
    Ok("efficacy 75 / 43.75, MC 100 / 93.33 / 0, confusion counts".into())
}

// ---------------------------------------------------------------- 7

fn c7_complexity() -> Outcome {
    let (q, s) = (10i64, 100i64);
    for w in [1i64, 32, 64] {
        let rows = [
            (ClassifierKind::Lda, [w, w, 0, 0]),
            (ClassifierKind::Qda, [w + w, w + w, w, 0]),
            (ClassifierKind::SvmLinear, [(w + 1) * q - 1, (w + 2) * q, 0, 0]),
            (ClassifierKind::SvmQuadratic, [(w + 2) * q - 1, (w + 2) * q, q, 0]),
            (ClassifierKind::Knn, [2 * s * (w + 1) - 6, 0, s * w, s]),
        ];
        for (kind, [adds, muls, squares, roots]) in rows {
            let got = complexity_report(kind, w as u32, Some(q as u32), Some(s as u32)).map_err(|e| e.to_string())?;
            let want = OpCounts { adds, muls, squares, roots };
            ensure!(got == want, "{} at W={w}: {got:?} != {want:?}", kind.name());
        }
    }
    Ok("15 rows for W in {1, 32, 64}, Q = 10, S = 100".into())
}

// ---------------------------------------------------------------- 8

fn c8_latency() -> Outcome {
    let spec = SynthSpec { trials_per_class: 3, ..SynthSpec::standard(8) };
    let rec = synth_generate(&spec).map_err(|e| e.to_string())?;
    let config = StreamConfig::default();
    let train = SessionScript {
        phases: spec
            .classes
            .iter()
            .map(|l| Phase::Train { label: l.name.clone(), trials: 3 })
            .collect(),
    };
    let model = run_session(&train, &rec, &config, Pooling::Sum, EfficacyMode::Literal)
        .map_err(|e| e.to_string())?
        .model;
    let r = profile_latency(&config, &rec, &model).map_err(|e| e.to_string())?;
    ensure!(r.windows >= 1000, "only {} windows", r.windows);
    ensure!(r.feature_predict_ms <= 75.0, "feature+predict {:.3} ms", r.feature_predict_ms);
    ensure!(r.decision_latency_ms <= 300.0, "decision latency {:.1} ms", r.decision_latency_ms);
    Ok(format!(
        "{} windows, feature+predict {:.4} ms, decision latency {:.2} ms",
        r.windows, r.feature_predict_ms, r.decision_latency_ms
    ))
}

// ---------------------------------------------------------------- 9

fn c9_determinism() -> Outcome {
    let spec = SynthSpec { trials_per_class: 4, ..SynthSpec::standard(42) };
    let config = StreamConfig::default();
    let script = SessionScript::standard(2, 2);
    let run = || -> myo_core::Result<(Vec<u8>, String, Vec<u8>)> {
        let rec = synth_generate(&spec)?;
        let mut rec_bytes = Vec::new();
        write_recording(&rec, &mut rec_bytes)?;
        let out = run_session(&script, &rec, &config, Pooling::Sum, EfficacyMode::SpeedWeighted)?;
        let mut model_bytes = Vec::new();
        write_model(&out.model, &mut model_bytes)?;
        Ok((rec_bytes, out.report.to_json(), model_bytes))
    };
    let (rec_a, report_a, model_a) = run().map_err(|e| e.to_string())?;
    let (rec_b, report_b, model_b) = run().map_err(|e| e.to_string())?;
    ensure!(rec_a == rec_b, "recordings differ between runs");
    ensure!(report_a == report_b, "reports differ between runs");
    ensure!(model_a == model_b, "models differ between runs");

    let rec = read_recording(rec_a.as_slice()).map_err(|e| e.to_string())?;
    let mut again = Vec::new();
    write_recording(&rec, &mut again).map_err(|e| e.to_string())?;
    ensure!(again == rec_a, "recording write-read-write changed bytes");

    let model = read_model(model_a.as_slice()).map_err(|e| e.to_string())?;
    let mut again = Vec::new();
    write_model(&model, &mut again).map_err(|e| e.to_string())?;
    ensure!(again == model_a, "model write-read-write changed bytes");
    Ok(format!(
        "report {} bytes, recording {} bytes, model {} bytes identical",
        report_a.len(),
        rec_a.len(),
        model_a.len()
    ))
}
