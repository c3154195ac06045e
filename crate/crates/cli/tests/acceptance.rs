//! Acceptance criteria C1–C10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fracyamabe::bifurcation::{detect_instants, pinching_family, product_volume, DetectOptions};
use fracyamabe::golden::GoldenSet;
use fracyamabe::morse::{check_bifurcation_inequality, jacobi_threshold, morse_index_nullity};
use fracyamabe::specfun::{digamma, gamma_real, psi_shift_series};
use fracyamabe::symbol::{
    a_m, d_gamma_normalizer, dlog_theta, q_gamma_trivial, theta, theta_eigenvalue, xi_const, BValue, Direction,
    HalfAxisPoint,
};
use fracyamabe::thresholds::{dlog_f, f, find_x0, solve_cn};
use fracyamabe::{ComplexValue, SeriesStop, SpectralParams, SurfaceSpectrum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn core_tests_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests")
}

fn grid_gammas(n: u32) -> Vec<f64> {
    let top = f64::from(n) / 2.0 - 1.05;
    (1..).map(|i| 0.1 * f64::from(i)).take_while(|g| *g <= top + 1e-12).collect()
}

fn c1_cn_table() -> Outcome {
    let expected = [(4, 0.857), (5, 1.408), (6, 1.932), (7, 2.446), (8, 2.955)];
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fracyamabe"))
        .args(["cn", "--n-min", "4", "--n-max", "8"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    let mut worst: f64 = 0.0;
    let mut seen = 0;
    for (rec, (n, want)) in rd.records().zip(expected) {
        let rec = rec.map_err(|e| e.to_string())?;
        ensure(rec[0] == *n.to_string(), || format!("row for n = {} where {n} expected", &rec[0]))?;
        let c: f64 = rec[1].parse().map_err(|e| format!("{e}"))?;
        ensure((c - want).abs() <= 0.005, || format!("c_{n} = {c}, expected {want} ± 0.005"))?;
        worst = worst.max((c - want).abs());
        seen += 1;
    }
    ensure(seen == 5, || format!("{seen} rows"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("runtime {elapsed:?}"))?;
    Ok(format!("max deviation {worst:.2e}, runtime {elapsed:.2?}"))
}

fn c2_minimizer() -> Outcome {
    let x0 = find_x0(1e-12).map_err(|e| e.to_string())?;
    ensure((x0 - 1.514).abs() <= 0.002, || format!("x0 = {x0}"))?;
    let ln_f = |x: f64| f(x).unwrap().ln();
    let mut checked = 0;
    for i in 0..200 {
        // log-spaced in x − 1 over (0.01, 49)
        let x = 1.0 + 0.01 * (4900f64).powf(f64::from(i) / 199.0);
        let h = 1e-6 * x.min(x - 1.0);
        let fd = (ln_f(x + h) - ln_f(x - h)) / (2.0 * h);
        let d = dlog_f(x).map_err(|e| e.to_string())?;
        if (x - x0).abs() < 1e-3 {
            continue;
        }
        let want_negative = x < x0;
        ensure((fd < 0.0) == want_negative, || format!("finite-difference slope {fd:e} at x = {x}"))?;
        ensure((d < 0.0) == want_negative, || format!("analytic slope {d:e} at x = {x}"))?;
        checked += 1;
    }
    ensure(checked >= 195, || format!("only {checked} points checked"))?;
    Ok(format!("x0 = {x0:.6}, {checked} slope signs"))
}

fn c3_ratio_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 4..=12u32 {
        let nf = f64::from(n);
        for g in grid_gammas(n) {
            let p = SpectralParams::new_extended(n, 1, g).map_err(|e| e.to_string())?;
            let t00 = theta_eigenvalue(0, 0.0, &p).map_err(|e| e.to_string())?;
            let t10 = theta_eigenvalue(1, 0.0, &p).map_err(|e| e.to_string())?;
            let err = rel(t10, (nf + 2.0 * g - 2.0) / (nf - 2.0 * g - 2.0) * t00);
            ensure(err <= 1e-10, || format!("n = {n}, γ = {g}: relative error {err:e}"))?;
            worst = worst.max(err);
            count += 1;
        }
    }
    Ok(format!("{count} points, max relative error {worst:.1e}"))
}

fn c4_threshold_equivalence() -> Outcome {
    let mut count = 0;
    for n in 4..=12u32 {
        let c = solve_cn(n, 1e-13).map_err(|e| e.to_string())?.c_n;
        for g in grid_gammas(n) {
            if (g - c).abs() < 1e-8 {
                continue;
            }
            let p = SpectralParams::new_extended(n, 1, g).map_err(|e| e.to_string())?;
            let check = check_bifurcation_inequality(&p).map_err(|e| e.to_string())?;
            ensure(check.holds == (g < c), || format!("n = {n}, γ = {g}, c_n = {c}: inequality {}", check.holds))?;
            count += 1;
        }
    }
    for i in 1..=49 {
        let g = 0.01 * f64::from(i);
        let p = SpectralParams::new_extended(3, 1, g).map_err(|e| e.to_string())?;
        let check = check_bifurcation_inequality(&p).map_err(|e| e.to_string())?;
        ensure(!check.holds, || format!("n = 3, γ = {g}: inequality holds"))?;
    }
    Ok(format!("{count} grid points agree, n = 3 fails at all 49 orders"))
}

fn sample_params(r: &mut impl Rng, count: usize) -> Vec<SpectralParams> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n: u32 = r.gen_range(4..=14);
        let gamma = r.gen_range(0.05..f64::from(n) / 2.0 - 1.05);
        let room = f64::from(n) / 2.0 - gamma;
        let k = r.gen_range(1..=room.ceil() as u32 - 1);
        if f64::from(k) < room - 0.01 {
            out.push(SpectralParams::new_extended(n, k, gamma).unwrap());
        }
    }
    out
}

fn c5_monotonicity() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let params = sample_params(&mut r, 12);
    let mut checks = 0;
    for p in &params {
        let a0 = a_m(0, p);
        let half_k = f64::from(p.k()) / 2.0;
        let d = |pt: HalfAxisPoint, dir| dlog_theta(pt, p, dir).map_err(|e| e.to_string());
        for i in 0..50 {
            let a = a0 + 25.0 * f64::from(i) / 49.0;
            for j in 1..=50 {
                let beta = half_k * f64::from(j) / 50.0;
                let im = HalfAxisPoint::new(a, BValue::Imaginary(beta), p.k()).map_err(|e| e.to_string())?;
                let re = HalfAxisPoint::new(a, BValue::Real(40.0 * f64::from(j) / 50.0), p.k()).map_err(|e| e.to_string())?;
                ensure(d(im, Direction::A)? > 0.0, || format!("{p:?}: ∂_a at {im:?}"))?;
                ensure(d(re, Direction::A)? > 0.0, || format!("{p:?}: ∂_a at {re:?}"))?;
                ensure(d(re, Direction::B)? > 0.0, || format!("{p:?}: ∂_b at {re:?}"))?;
                ensure(d(im, Direction::Beta)? < 0.0, || format!("{p:?}: ∂_β at {im:?}"))?;
                checks += 4;
            }
        }
        let ev = |m, l| theta_eigenvalue(m, l, p).map_err(|e| e.to_string());
        for m in 0..20 {
            ensure(ev(m + 1, 0.0)? > ev(m, 0.0)?, || format!("{p:?}: Θ_m0 not increasing at m = {m}"))?;
        }
        for m in [0, 1, 3] {
            let mut prev = ev(m, 0.0)?;
            for i in 1..200 {
                let next = ev(m, 30.0 * (f64::from(i) / 199.0).powi(2))?;
                ensure(next >= prev, || format!("{p:?}: Θ_m decreasing in λ at m = {m}"))?;
                prev = next;
            }
        }
    }
    Ok(format!("{checks} sign checks over {} parameter sets, ordering holds", params.len()))
}

fn c6_series_and_derivatives() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let (mut series_worst, mut fd_worst): (f64, f64) = (0.0, 0.0);
    let h = 1e-5;
    let mut done = 0;
    while done < 500 {
        let p = sample_params(&mut r, 1).remove(0);
        let a = a_m(0, &p) + r.gen_range(0.0..25.0);
        let b = r.gen_range(2.0 * h..40.0);
        let g = p.gamma();
        let z = ComplexValue::new((1.0 - g) / 2.0 + a / 2.0, b / 2.0);
        let series = psi_shift_series(z, g, SeriesStop::default()).map_err(|e| e.to_string())?;
        let direct = digamma(z + g).map_err(|e| e.to_string())? - digamma(z).map_err(|e| e.to_string())?;
        let err = (series - direct).norm();
        ensure(err <= 1e-10, || format!("z = {z}, shift {g}: series error {err:e}"))?;
        series_worst = series_worst.max(err);

        let ln_theta = |a: f64, b: f64| {
            theta(HalfAxisPoint { a, b: BValue::Real(b) }, &p).map(f64::ln).map_err(|e| e.to_string())
        };
        let pt = HalfAxisPoint::new(a, BValue::Real(b), p.k()).map_err(|e| e.to_string())?;
        let (dir, fd) = if done % 2 == 0 {
            (Direction::A, ln_theta(a + h, b)? - ln_theta(a - h, b)?)
        } else {
            (Direction::B, ln_theta(a, b + h)? - ln_theta(a, b - h)?)
        };
        let fd = fd / (2.0 * h);
        let d = dlog_theta(pt, &p, dir).map_err(|e| e.to_string())?;
        let err = (d - fd).abs();
        ensure(err <= 1e-6, || format!("{p:?} {pt:?} {dir:?}: {d} vs finite difference {fd}"))?;
        fd_worst = fd_worst.max(err);
        done += 1;
    }
    Ok(format!("500 points, series error {series_worst:.1e}, finite-difference error {fd_worst:.1e}"))
}

/// Brute-force count over `m ≤ m_max` and the listed eigenvalues, with the
/// truncation certificates: `Θ_{m_max+1,0}` and `Θ_{0,Λ}` above the band.
fn brute_force(spec: &SurfaceSpectrum, p: &SpectralParams, m_max: u32, tol: f64) -> Result<(usize, usize, usize), String> {
    let t = jacobi_threshold(p).map_err(|e| e.to_string())?;
    let ev = |m, l| theta_eigenvalue(m, l, p).map_err(|e| e.to_string());
    let (mut index, mut nullity, mut high_m) = (0, 0, 0);
    for m in 0..=m_max {
        for (l, &lambda) in spec.eigenvalues().iter().enumerate() {
            if m == 0 && l == 0 {
                continue;
            }
            let v = ev(m, lambda)?;
            let counted = if v < t - tol {
                index += 1;
                true
            } else if (v - t).abs() <= tol {
                nullity += 1;
                true
            } else {
                false
            };
            if counted && m >= 1 {
                high_m += 1;
            }
        }
    }
    ensure(ev(m_max + 1, 0.0)? > t + tol, || format!("m truncation at {m_max} not certified"))?;
    ensure(ev(0, spec.truncation_bound())? > t + tol, || "eigenvalue truncation not certified".into())?;
    Ok((index, nullity, high_m))
}

fn c7_morse_counts() -> Outcome {
    let golden = GoldenSet::from_path(core_tests_dir().join("golden/morse.golden")).map_err(|e| e.to_string())?;
    let mut spectra = 0;
    for i in 0..20 {
        let id = format!("s{i:02}");
        let spec = SurfaceSpectrum::from_path(core_tests_dir().join(format!("data/spectra/{id}.csv")))
            .map_err(|e| format!("{id}: {e}"))?;
        let p = if i < 10 { SpectralParams::new_extended(5, 1, 1.0) } else { SpectralParams::new(4, 1, 0.5) }
            .map_err(|e| e.to_string())?;
        let fast = morse_index_nullity(&spec, &p, None).map_err(|e| e.to_string())?;
        ensure(fast.complete, || format!("{id}: fast path not certified"))?;
        let (index, nullity, high_m) = brute_force(&spec, &p, 10, fast.null_tol).map_err(|e| format!("{id}: {e}"))?;
        let want = |suffix: &str| -> Result<usize, String> {
            let key = format!("morse({id}).{suffix}");
            let rec = golden.get(&key).ok_or_else(|| format!("golden key {key} missing"))?;
            Ok(rec.expected().map_err(|e| e.to_string())? as usize)
        };
        let golden_counts = (want("index")?, want("nullity")?, want("pairs_with_m_ge_1")?);
        ensure((fast.index, fast.nullity) == (golden_counts.0, golden_counts.1), || {
            format!("{id}: fast path ({}, {}) vs golden {golden_counts:?}", fast.index, fast.nullity)
        })?;
        ensure((index, nullity, high_m) == golden_counts, || {
            format!("{id}: brute force ({index}, {nullity}, {high_m}) vs golden {golden_counts:?}")
        })?;
        ensure(fast.contributing_pairs.iter().all(|c| c.m == 0 && c.l >= 1), || format!("{id}: pair with m ≥ 1"))?;
        spectra += 1;
    }
    Ok(format!("{spectra} spectra agree with golden and brute-force counts"))
}

fn c8_pinching() -> Outcome {
    let p = SpectralParams::new_extended(5, 1, 1.0).map_err(|e| e.to_string())?;
    let base: Vec<f64> = std::iter::once(0.0).chain((1..=12).map(|i| 1.5 + 0.5 * f64::from(i))).collect();
    let base = SurfaceSpectrum::new(base, Some(7), None).map_err(|e| e.to_string())?;
    let mut times = Vec::new();
    for d in [1, 3, 5] {
        let start = Instant::now();
        let path = pinching_family(d, 0.26, &base).map_err(|e| e.to_string())?;
        let report = detect_instants(&path, &p, &DetectOptions::default()).map_err(|e| format!("d = {d}: {e}"))?;
        let elapsed = start.elapsed();
        for t in [0.0, 1.0] {
            let spec = path.spectrum_at(t).map_err(|e| e.to_string())?;
            let r = morse_index_nullity(&spec, &p, None).map_err(|e| e.to_string())?;
            ensure(r.nullity == 0, || format!("d = {d}: endpoint t = {t} is degenerate"))?;
        }
        ensure(report.jump_total == d as i64, || format!("d = {d}: jump_total = {}", report.jump_total))?;
        for c in &report.instants {
            ensure(c.residual <= 1e-6 * report.threshold, || format!("d = {d}: residual {:e} at t = {}", c.residual, c.t))?;
        }
        ensure(elapsed < Duration::from_secs(5), || format!("d = {d}: runtime {elapsed:?}"))?;
        times.push(format!("{elapsed:.2?}"));
    }
    Ok(format!("jumps 1, 3, 5 reproduced; runtimes {}", times.join(", ")))
}

fn c9_closed_forms() -> Outcome {
    let q = q_gamma_trivial(&SpectralParams::new(4, 1, 0.5).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let xi = xi_const(&SpectralParams::new_extended(5, 1, 1.0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let d = d_gamma_normalizer(0.5).map_err(|e| e.to_string())?;
    let vol = product_volume(4, 2).map_err(|e| e.to_string())?;
    let checks = [
        ("Q_{1/2}(4,1)", q, 0.5),
        ("Ξ(5,1)", xi, 0.25),
        ("d_{1/2}", d, -1.0),
        ("product_volume(4,2)", vol, 16.0 * std::f64::consts::PI.powi(2)),
    ];
    let failures: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| rel(*got, *want) > 1e-12)
        .map(|(name, got, want)| format!("{name} = {got}, expected {want}"))
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("all four closed forms within 1e-12".into())
}

fn c10_asymptotics() -> Outcome {
    let ratio = |x: f64| f(x).map(|v| v / (x / 2.0)).map_err(|e| e.to_string());
    let r50 = ratio(50.0)?;
    ensure((0.95..=1.05).contains(&r50), || format!("F(50)/25 = {r50}"))?;
    let devs = [r50, ratio(100.0)?, ratio(200.0)?].map(|r| (r - 1.0).abs());
    ensure(devs[0] > devs[1] && devs[1] > devs[2], || format!("|F(x)/(x/2) − 1| = {devs:?} not decreasing"))?;
    let limit = std::f64::consts::PI.sqrt() / gamma_real(0.25).map_err(|e| e.to_string())?.powi(2);
    let near = f(1.001).map_err(|e| e.to_string())? * 0.001;
    ensure(rel(near, limit) <= 0.02, || format!("F(1.001)·0.001 = {near}, limit {limit}"))?;
    Ok(format!("F(50)/25 = {r50:.5}, F(1.001)·0.001 = {near:.6} vs {limit:.6}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1", c1_cn_table),
        ("C2", c2_minimizer),
        ("C3", c3_ratio_identity),
        ("C4", c4_threshold_equivalence),
        ("C5", c5_monotonicity),
        ("C6", c6_series_and_derivatives),
        ("C7", c7_morse_counts),
        ("C8", c8_pinching),
        ("C9", c9_closed_forms),
        ("C10", c10_asymptotics),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("{name} PASS  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{name} FAIL  {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
