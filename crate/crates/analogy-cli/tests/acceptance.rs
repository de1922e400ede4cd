//! Acceptance suite: one numbered criterion per test, each printing a PASS
//! line on success (visible with `--nocapture`); a failed assertion names
//! its criterion in the panic message.

use std::process::Command;
use std::time::{Duration, Instant};

use analogy::{
    arithmetic_residual, boolean_check, check, complex_equation_residual, compose_powers,
    compute_grid, equivalent_forms, find_p, generalized_mean, negative_normalize, PositivePair, render_ppm,
    residual, scale, sign_change_scan, solve_complex, solve_real, to_arithmetic, to_reciprocal,
    to_unit_interval, write_csv, AxisSpec, BooleanVerdict, ExtendedPower, GridSpec, PGrid,
    Position, PowerResult, Quadruple, SearchConfig, SolveResult,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(n: u32, detail: &str) {
    println!("criterion {n}: PASS ({detail})");
}

fn fp(p: f64) -> ExtendedPower {
    ExtendedPower::finite(p).expect("finite power")
}

fn quad(t: [f64; 4]) -> Quadruple {
    Quadruple::new(t[0], t[1], t[2], t[3]).expect("valid quadruple")
}

#[test]
fn criterion_01_paper_power_value() {
    let q = quad([2.0, 3.5, 4.5, 5.0]);
    let start = Instant::now();
    let result = find_p(&q, SearchConfig::default()).expect("criterion 1: search runs");
    let elapsed = start.elapsed();
    let p = match result {
        PowerResult::Unique { p, .. } => p.as_f64(),
        other => panic!("criterion 1: expected a unique power, got {other:?}"),
    };
    assert!((3.05..=3.07).contains(&p), "criterion 1: p = {p}");
    assert!(elapsed < Duration::from_millis(10), "criterion 1: took {elapsed:?}");

    // the CLI front-end reports the same value
    let out = Command::new(env!("CARGO_BIN_EXE_analogy"))
        .args(["--json", "find-p", "2", "3.5", "4.5", "5"])
        .output()
        .expect("criterion 1: binary runs");
    let value: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("criterion 1: json output");
    let cli_p = value["p"].as_f64().expect("criterion 1: numeric p");
    assert!((cli_p - p).abs() < 1e-8, "criterion 1: cli p = {cli_p}");
    pass(1, &format!("p = {p:.6}, search took {elapsed:?}"));
}

#[test]
fn criterion_02_mean_ladder() {
    let powers = [
        ExtendedPower::NegInf,
        fp(-1.0),
        ExtendedPower::Zero,
        fp(1.0),
        fp(2.0),
        ExtendedPower::PosInf,
    ];
    let closed_form = [2.0, 20.0 / 7.0, 10.0f64.sqrt(), 3.5, 14.5f64.sqrt(), 5.0];
    let displayed = [2.0, 2.86, 3.16, 3.5, 3.81, 5.0];
    for ((&p, &exact), &rounded) in powers.iter().zip(&closed_form).zip(&displayed) {
        let pair = PositivePair::new(2.0, 5.0).expect("criterion 2: valid pair");
        let m = generalized_mean(pair, p).expect("criterion 2: mean evaluates");
        assert!((m - exact).abs() <= 1e-9, "criterion 2: m_{p}(2,5) = {m}, want {exact}");
        let two_dec = (m * 100.0).round() / 100.0;
        assert_eq!(two_dec, rounded, "criterion 2: rounding at p = {p}");
    }
    pass(2, "six ladder values within 1e-9, two-decimal roundings match");
}

#[test]
fn criterion_03_uniqueness_scan() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let config = SearchConfig::default();
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < 500 {
        attempts += 1;
        assert!(attempts < 5000, "criterion 3: sampler stalled");
        let mut t: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.1..10.0));
        t.sort_by(|x, y| x.partial_cmp(y).unwrap());
        if t[0] >= t[1] || t[1] >= t[2] || t[2] >= t[3] {
            continue;
        }
        let q = quad(t);
        // keep the root strictly inside the scan window
        let p_star = match find_p(&q, config).expect("criterion 3: search runs") {
            PowerResult::Unique { p, .. } => p,
            _ => continue,
        };
        if p_star.as_f64().abs() > 60.0 {
            continue;
        }
        let crossings =
            sign_change_scan(&q, -64.0, 64.0, 100_000).expect("criterion 3: scan runs");
        assert_eq!(crossings, 1, "criterion 3: {t:?} has {crossings} crossings");
        let verdict = check(&q, p_star, 1e-6).expect("criterion 3: check runs");
        assert!(verdict.holds, "criterion 3: {t:?} residual {}", verdict.residual);
        accepted += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "criterion 3: took {elapsed:?}");
    pass(3, &format!("500 quadruples, single crossing each, {elapsed:?}"));
}

/// Draws a quadruple that holds exactly at `p` by solving for the last term.
fn holding_quadruple(rng: &mut ChaCha8Rng, p: f64) -> Option<Quadruple> {
    let known: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.1..10.0));
    match solve_real(known, Position::D, fp(p)).ok()? {
        SolveResult::UniqueReal(d) if d.is_finite() && d > 1e-3 && d < 1e4 => {
            let q = Quadruple::new(known[0], known[1], known[2], d).ok()?;
            let v = check(&q, fp(p), 1e-9).ok()?;
            v.holds.then_some(q)
        }
        _ => None,
    }
}

fn random_power(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let p: f64 = rng.gen_range(-4.0..4.0);
        if p.abs() >= 0.05 {
            return p;
        }
    }
}

#[test]
fn criterion_04_reduction_equivalences() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let tol = 1e-9;
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 1000 {
        attempts += 1;
        assert!(attempts < 20_000, "criterion 4: sampler stalled");
        let p = random_power(&mut rng);
        let Some(q) = holding_quadruple(&mut rng, p) else { continue };
        let power = fp(p);

        for form in equivalent_forms(&q) {
            let v = check(&form, power, tol).expect("criterion 4: form check");
            assert!(v.holds, "criterion 4: form {:?} of {:?} fails", form.terms(), q.terms());
        }

        let factor = rng.gen_range(0.1..10.0);
        let scaled = scale(&q, factor).expect("criterion 4: scale");
        assert!(check(&scaled, power, tol).unwrap().holds, "criterion 4: scale invariance");

        let sorted = equivalent_forms(&q)
            .into_iter()
            .find(Quadruple::is_sorted_ascending)
            .expect("criterion 4: a holding quadruple has a sorted form");
        let unit = to_unit_interval(&sorted).expect("criterion 4: unit interval");
        assert!(unit.d() == 1.0 && check(&unit, power, tol).unwrap().holds,
            "criterion 4: unit-interval reduction");

        let arith = to_arithmetic(&q, power).expect("criterion 4: arithmetic map");
        assert!(arithmetic_residual(arith) <= tol,
            "criterion 4: arithmetic residual {}", arithmetic_residual(arith));

        let exponent = if rng.gen_bool(0.5) { rng.gen_range(0.5..3.0) } else { -rng.gen_range(0.5..3.0) };
        let composed = compose_powers(&q, exponent).expect("criterion 4: power composition");
        assert!(check(&composed, fp(p / exponent), tol).unwrap().holds,
            "criterion 4: composition at p/e");

        let flipped = to_reciprocal(&q).expect("criterion 4: reciprocal");
        assert!(check(&flipped, fp(-p), tol).unwrap().holds, "criterion 4: reciprocal duality");

        done += 1;
    }
    pass(4, "1000 quadruple/power pairs satisfy all six reductions");
}

#[test]
fn criterion_05_transitivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 500 {
        attempts += 1;
        assert!(attempts < 20_000, "criterion 5: sampler stalled");
        let p = random_power(&mut rng);
        let power = fp(p);
        let Some(first) = holding_quadruple(&mut rng, p) else { continue };
        let (c, d) = (first.c(), first.d());
        let e = rng.gen_range(0.1..10.0);
        let f = match solve_real([c, d, e], Position::D, power) {
            Ok(SolveResult::UniqueReal(f)) if f.is_finite() && f > 1e-3 && f < 1e4 => f,
            _ => continue,
        };
        let Ok(second) = Quadruple::new(c, d, e, f) else { continue };
        let r1 = residual(&first, power).expect("criterion 5: premise 1 residual");
        let r2 = residual(&second, power).expect("criterion 5: premise 2 residual");
        if r1 > 1e-12 || r2 > 1e-12 {
            continue; // premises must hold essentially exactly
        }
        let conclusion = Quadruple::new(first.a(), first.b(), e, f)
            .expect("criterion 5: conclusion quadruple");
        let v = check(&conclusion, power, 1e-9).expect("criterion 5: conclusion check");
        assert!(v.holds, "criterion 5: conclusion residual {} at p = {p}", v.residual);
        done += 1;
    }

    // at infinite powers the implication is lost
    let p = ExtendedPower::NegInf;
    let premise1 = quad([10.0, 2.0, 1.0, 1.0]);
    let premise2 = quad([1.0, 1.0, 3.0, 9.0]);
    let conclusion = quad([10.0, 2.0, 3.0, 9.0]);
    assert!(check(&premise1, p, 1e-9).unwrap().holds, "criterion 5: min premise 1");
    assert!(check(&premise2, p, 1e-9).unwrap().holds, "criterion 5: min premise 2");
    assert!(!check(&conclusion, p, 1e-9).unwrap().holds,
        "criterion 5: the min-based counterexample must fail");
    pass(5, "500 finite chains transit, minus-infinity counterexample fails");
}

#[test]
fn criterion_06_negative_terms() {
    let q = quad([-3.0, -2.0, 4.0, 5.0]);
    let normalized = negative_normalize(&q).expect("criterion 6: normalization");
    assert_eq!(normalized.terms(), [2.0, 3.0, 4.0, 5.0], "criterion 6: normalized terms");
    assert!(check(&normalized, fp(1.0), 1e-9).unwrap().holds, "criterion 6: holds at p = 1");

    let swapped = quad([3.0, 2.0, 4.0, 5.0]);
    assert!(!check(&swapped, fp(1.0), 1e-9).unwrap().holds,
        "criterion 6: 3:2::4:5 must fail at p = 1");

    assert!(compose_powers(&q, 2.0).is_err(),
        "criterion 6: composition must reject negative terms");
    pass(6, "normalization holds, naive order fails, composition guarded");
}

#[test]
fn criterion_07_boolean_table() {
    let cases = [
        ([0.0, 0.0, 0.0, 0.0], BooleanVerdict::ValidAllP),
        ([1.0, 1.0, 1.0, 1.0], BooleanVerdict::ValidAllP),
        ([0.0, 0.0, 1.0, 1.0], BooleanVerdict::ValidAllP),
        ([0.0, 1.0, 1.0, 0.0], BooleanVerdict::InvalidNoP),
    ];
    for (terms, expected) in cases {
        let got = boolean_check(terms).expect("criterion 7: boolean check");
        assert_eq!(got, expected, "criterion 7: {terms:?}");
    }
    // the rewritten form from the listing
    assert_eq!(boolean_check([0.0, 1.0, 0.0, 1.0]).unwrap(), BooleanVerdict::ValidAllP,
        "criterion 7: 0:1::0:1");
    pass(7, "all four table rows match");
}

#[test]
fn criterion_08_complex_solving() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let positions = [Position::A, Position::B, Position::C, Position::D];
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 1000 {
        attempts += 1;
        assert!(attempts < 10_000, "criterion 8: sampler stalled");
        let known: [Complex64; 3] = std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))
        });
        if known.iter().any(|z| z.norm() < 0.1) {
            continue;
        }
        let p = loop {
            let p: f64 = rng.gen_range(-8.0..8.0);
            if p.abs() >= 1e-2 {
                break p;
            }
        };
        let missing = positions[rng.gen_range(0..4)];
        let x = match solve_complex(known, missing, fp(p)) {
            Ok(SolveResult::UniqueComplex(x)) => x,
            Ok(other) => panic!("criterion 8: unexpected result {other:?}"),
            Err(_) => continue, // degenerate kernel (zero right-hand side)
        };
        let r = complex_equation_residual(known, missing, x, p);
        assert!(r <= 1e-9, "criterion 8: residual {r} for {known:?} missing {missing:?} p {p}");
        done += 1;
    }
    pass(8, "1000 complex equations solved with residual <= 1e-9");
}

fn grid_200(fixed: [(Position, f64); 2], x: Position, y: Position) -> GridSpec {
    let axis = |position| AxisSpec { position, min: 0.0, max: 12.0, steps: 200 };
    GridSpec::new(fixed, axis(x), axis(y)).expect("valid grid spec")
}

fn populated(result: &PowerResult) -> bool {
    matches!(result, PowerResult::Unique { .. } | PowerResult::DegenerateInfinite(_))
}

fn csv_bytes(grid: &PGrid) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(grid, &mut buf).expect("csv serializes");
    buf
}

#[test]
fn criterion_09_landscape_replication() {
    let start = Instant::now();

    // extremes landscape: b = 2, c = 5, cells over (a, d)
    let spec_ad = grid_200([(Position::B, 2.0), (Position::C, 5.0)], Position::A, Position::D);
    let grid_ad = compute_grid(&spec_ad).expect("criterion 9: a/d grid");
    for yi in 0..200 {
        let d = spec_ad.y_axis.cell_center(yi);
        for xi in 0..200 {
            let a = spec_ad.x_axis.cell_center(xi);
            let expected = (a < 2.0 && d > 5.0)
                || (a > 2.0 && a < 5.0 && d > 2.0 && d < 5.0)
                || (a > 5.0 && d < 2.0);
            let got = populated(grid_ad.cell(xi, yi));
            assert_eq!(got, expected, "criterion 9: a/d cell ({a}, {d})");
            if (a * d - 10.0).abs() <= 1e-12 * 10.0 {
                match grid_ad.cell(xi, yi) {
                    PowerResult::Unique { p, .. } => assert!(
                        p.as_f64().abs() <= 1e-6,
                        "criterion 9: hyperbola cell ({a}, {d}) has p = {p}"
                    ),
                    other => panic!("criterion 9: hyperbola cell ({a}, {d}) is {other:?}"),
                }
            }
        }
    }

    // a cell center placed exactly on the hyperbola a*d = 10
    let hyper = GridSpec::new(
        [(Position::B, 2.0), (Position::C, 5.0)],
        AxisSpec { position: Position::A, min: 0.5, max: 1.5, steps: 1 },
        AxisSpec { position: Position::D, min: 9.5, max: 10.5, steps: 1 },
    )
    .expect("criterion 9: hyperbola spec");
    let hyper_grid = compute_grid(&hyper).expect("criterion 9: hyperbola grid");
    match hyper_grid.cell(0, 0) {
        PowerResult::Unique { p, .. } => {
            assert!(p.as_f64().abs() <= 1e-6, "criterion 9: on-hyperbola p = {p}")
        }
        other => panic!("criterion 9: on-hyperbola cell is {other:?}"),
    }

    // means landscape: a = 2, b = 5, cells over (c, d)
    let spec_cd = grid_200([(Position::A, 2.0), (Position::B, 5.0)], Position::C, Position::D);
    let grid_cd = compute_grid(&spec_cd).expect("criterion 9: c/d grid");
    for yi in 0..200 {
        let d = spec_cd.y_axis.cell_center(yi);
        for xi in 0..200 {
            let c = spec_cd.x_axis.cell_center(xi);
            if c >= d {
                continue; // the figure covers the c < d half-plane
            }
            let expected = (c < 2.0 && d < 5.0) || (c > 2.0 && d > 5.0);
            let got = populated(grid_cd.cell(xi, yi));
            assert_eq!(got, expected, "criterion 9: c/d cell ({c}, {d})");
        }
    }

    // byte determinism of both serializations
    let again_ad = compute_grid(&spec_ad).expect("criterion 9: a/d rerun");
    let again_cd = compute_grid(&spec_cd).expect("criterion 9: c/d rerun");
    assert_eq!(csv_bytes(&grid_ad), csv_bytes(&again_ad), "criterion 9: a/d csv determinism");
    assert_eq!(csv_bytes(&grid_cd), csv_bytes(&again_cd), "criterion 9: c/d csv determinism");
    assert_eq!(render_ppm(&grid_ad), render_ppm(&again_ad), "criterion 9: a/d ppm determinism");
    assert_eq!(render_ppm(&grid_cd), render_ppm(&again_cd), "criterion 9: c/d ppm determinism");

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "criterion 9: took {elapsed:?}");
    pass(9, &format!("both 200x200 landscapes replicate, {elapsed:?}"));
}

#[test]
fn criterion_10_equality_classification() {
    let config = SearchConfig::default();
    let all_equal = find_p(&quad([3.0, 3.0, 3.0, 3.0]), config).unwrap();
    assert!(matches!(all_equal, PowerResult::AllPowers), "criterion 10: (3,3,3,3)");
    let pairwise = find_p(&quad([2.0, 2.0, 5.0, 5.0]), config).unwrap();
    assert!(matches!(pairwise, PowerResult::AllPowers), "criterion 10: (2,2,5,5)");

    let q = quad([2.0, 3.0, 3.0, 5.0]);
    match find_p(&q, config).unwrap() {
        PowerResult::Unique { p, .. } => {
            let v = check(&q, p, 1e-9).unwrap();
            assert!(v.holds, "criterion 10: residual {} at p = {p}", v.residual);
        }
        other => panic!("criterion 10: (2,3,3,5) gave {other:?}"),
    }

    pass(10, "degenerate classes and the b = c case behave as specified");
}
