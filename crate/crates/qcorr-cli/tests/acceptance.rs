//! Acceptance suite: one test per criterion, numbered c01..c11. Each test
//! prints a `[PASS]` line on success (visible with `--nocapture`); a
//! failing criterion shows up as a failing test of the same name.
//!
//! Every expected number here is derived independently of the library
//! (closed-form algebra or an external calculation) and frozen, so these
//! tests cannot drift along with implementation bugs.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcorr::channels::{
    almeida_after_gad, almeida_after_pd, almeida_after_sdc, apply_channel, gad_channel,
    lift_two_qubit, pd_channel, sdc_channel, KrausChannel,
};
use qcorr::linalg::{max_abs_diff, CMat};
use qcorr::quantifiers::{
    concurrence, concurrence_xform, f3_steering, f3_xform, interferometric_power, ip_bruteforce,
};
use qcorr::states::{
    lhs_admissible, make_almeida_from, make_bell, AlmeidaParams, BellIndex, DensityOperator,
    XFormState,
};
use qcorr::swapping::{swap, swap_all};
use qcorr::sweep::figures::figure_data;
use qcorr::sweep::{detect_revival, detect_sudden_death};
use qcorr::Complex64;

const SEED: u64 = 0x5eed_2026;

/// A random X-form state with strictly positive diagonal margins and
/// coherences inside the positivity disks.
fn random_xform(rng: &mut ChaCha8Rng) -> XFormState {
    let mut diag = [0.0f64; 4];
    let mut sum = 0.0;
    for d in &mut diag {
        *d = 0.05 + rng.random::<f64>();
        sum += *d;
    }
    for d in &mut diag {
        *d /= sum;
    }
    let [a, b, c, d] = diag;
    let w = Complex64::from_polar(
        (a * d).sqrt() * 0.98 * rng.random::<f64>(),
        TAU * rng.random::<f64>(),
    );
    let z = Complex64::from_polar(
        (b * c).sqrt() * 0.98 * rng.random::<f64>(),
        TAU * rng.random::<f64>(),
    );
    XFormState::new(a, b, c, d, w, z).expect("inside the valid region by construction")
}

/// A random full-rank two-qubit state: A·A† normalized, with A drawn
/// entrywise from a box distribution.
fn random_density(rng: &mut ChaCha8Rng) -> DensityOperator {
    let a = CMat::from_fn(4, 4, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let m = &a * a.adjoint();
    let trace = m.trace().re;
    DensityOperator::new(m.unscale(trace)).expect("Gram matrices are valid states")
}

/// Concurrence after sending both qubits through a channel at strength p.
fn concurrence_after(rho: &DensityOperator, channel: &KrausChannel) -> f64 {
    concurrence(&apply_channel(rho, channel).expect("CPTP on a valid state")).unwrap()
}

fn pd_lifted(p: f64) -> KrausChannel {
    lift_two_qubit(&pd_channel(p).unwrap()).unwrap()
}

fn gad_lifted(p: f64, gamma: f64) -> KrausChannel {
    lift_two_qubit(&gad_channel(p, gamma).unwrap()).unwrap()
}

/// Sample (p, f(p)) on the standard 101-point grid.
fn p_series<F: Fn(f64) -> f64>(eval: &F) -> Vec<(f64, f64)> {
    (0..=100)
        .map(|i| {
            let p = i as f64 / 100.0;
            (p, eval(p))
        })
        .collect()
}

#[test]
fn c01_closed_form_equivalence_on_random_x_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..1000 {
        let x = random_xform(&mut rng);
        let rho = x.to_density().unwrap();
        let c_general = concurrence(&rho).unwrap();
        let c_closed = concurrence_xform(&x);
        assert!(
            (c_general - c_closed).abs() <= 1e-10,
            "concurrence routes disagree: {c_general} vs {c_closed} on {x:?}"
        );
        let f_general = f3_steering(&rho).unwrap();
        let f_closed = f3_xform(&x);
        assert!(
            (f_general - f_closed).abs() <= 1e-10,
            "steering routes disagree: {f_general} vs {f_closed} on {x:?}"
        );
    }
    println!("[PASS] c01: eigenvalue/SVD routes match X-form closed forms to 1e-10 on 1000 random states");
}

#[test]
fn c02_family_analytics_and_entanglement_frontier() {
    let n = 50;
    for i in 0..n {
        for j in 0..n {
            let k = i as f64 / (n - 1) as f64;
            let theta = FRAC_PI_4 * j as f64 / (n - 1) as f64;
            let rho = make_almeida_from(k, theta).unwrap();
            let s2 = (2.0 * theta).sin();

            let c = concurrence(&rho).unwrap();
            let c_expect = ((3.0 * k - 1.0) / 2.0).max(0.0) * s2;
            assert!(
                (c - c_expect).abs() <= 1e-10,
                "concurrence at k={k}, theta={theta}: {c} vs {c_expect}"
            );
            // Frontier: for theta > 0 entanglement exists iff k > 1/3.
            if theta > 0.0 {
                assert_eq!(
                    c > 0.0,
                    k > 1.0 / 3.0,
                    "frontier broken at k={k}, theta={theta}"
                );
            }

            let f = f3_steering(&rho).unwrap();
            let f_expect =
                ((k * (1.0 + 2.0 * s2 * s2).sqrt() - 1.0) / (3f64.sqrt() - 1.0)).max(0.0);
            assert!(
                (f - f_expect).abs() <= 1e-10,
                "steering at k={k}, theta={theta}: {f} vs {f_expect}"
            );
        }
    }
    // The frontier is exactly k = 1/3: dead on the line, alive just above.
    assert!(concurrence(&make_almeida_from(1.0 / 3.0, FRAC_PI_4).unwrap()).unwrap() <= 1e-12);
    assert!(concurrence(&make_almeida_from(1.0 / 3.0 + 1e-6, FRAC_PI_4).unwrap()).unwrap() > 1e-7);
    println!("[PASS] c02: family analytics hold on a 50x50 grid; entanglement frontier at k = 1/3");
}

#[test]
fn c03_interferometric_power_against_brute_force() {
    // Frozen closed-form anchors first.
    for i in BellIndex::ALL {
        let ip = interferometric_power(&make_bell(i)).unwrap();
        assert!((ip - 1.0).abs() <= 1e-10, "IP of Bell {i} = {ip}");
    }
    let anchor = interferometric_power(&make_almeida_from(1.0, FRAC_PI_6).unwrap()).unwrap();
    assert!((anchor - 0.75).abs() <= 1e-10, "IP(1, pi/6) = {anchor}");

    // Independent route: direct minimization of the directional QFI.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x17);
    for trial in 0..100 {
        let rho = random_density(&mut rng);
        let fast = interferometric_power(&rho).unwrap();
        let brute = ip_bruteforce(&rho, 64).unwrap();
        assert!(
            (fast - brute).abs() <= 1e-3,
            "trial {trial}: M-matrix route {fast} vs brute force {brute}"
        );
    }
    println!("[PASS] c03: interferometric power matches brute-force QFI minimization (100 random states, 1e-3)");
}

#[test]
fn c04_channel_kraus_route_matches_closed_forms() {
    let grid = |n: usize, lo: f64, hi: f64| -> Vec<f64> {
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    };
    let ks = grid(20, 0.0, 1.0);
    let thetas = grid(20, 0.0, FRAC_PI_4);
    let ps = grid(10, 0.0, 1.0);

    // Phase damping.
    for &p in &ps {
        let ch = pd_lifted(p);
        assert!(ch.closure_residual() <= 1e-12);
        for &k in &ks {
            for &theta in &thetas {
                let kraus = apply_channel(&make_almeida_from(k, theta).unwrap(), &ch).unwrap();
                let closed = almeida_after_pd(k, theta, p).unwrap();
                assert!(
                    max_abs_diff(kraus.matrix(), closed.matrix()) <= 1e-12,
                    "pd mismatch at k={k}, theta={theta}, p={p}"
                );
            }
        }
    }

    // Generalized amplitude damping (5 strengths x 2 rates = 10 settings).
    for &p in &grid(5, 0.0, 1.0) {
        for &gamma in &[0.3, 0.6] {
            let ch = gad_lifted(p, gamma);
            assert!(ch.closure_residual() <= 1e-12);
            for &k in &ks {
                for &theta in &thetas {
                    let kraus = apply_channel(&make_almeida_from(k, theta).unwrap(), &ch).unwrap();
                    let closed = almeida_after_gad(k, theta, p, gamma).unwrap();
                    assert!(
                        max_abs_diff(kraus.matrix(), closed.matrix()) <= 1e-12,
                        "gad mismatch at k={k}, theta={theta}, p={p}, gamma={gamma}"
                    );
                }
            }
        }
    }

    // Collective dephasing.
    for &p in &ps {
        let ch = sdc_channel(p).unwrap();
        assert!(ch.closure_residual() <= 1e-12);
        for &k in &ks {
            for &theta in &thetas {
                let kraus = apply_channel(&make_almeida_from(k, theta).unwrap(), &ch).unwrap();
                let closed = almeida_after_sdc(k, theta, p).unwrap();
                assert!(
                    max_abs_diff(kraus.matrix(), closed.matrix()) <= 1e-12,
                    "sdc mismatch at k={k}, theta={theta}, p={p}"
                );
            }
        }
    }
    println!("[PASS] c04: Kraus route reproduces all three closed-form channel images to 1e-12");
}

#[test]
fn c05_sudden_death_points_and_channel_ordering() {
    // Phase damping at (k = 0.8, theta = pi/4): the X-form coherence is
    // 0.4(1-p) against a floor of sqrt(bc) = 0.05, so concurrence dies at
    // exactly p* = 7/8.
    let rho = make_almeida_from(0.8, FRAC_PI_4).unwrap();
    let eval_pd = |p: f64| concurrence_after(&rho, &pd_lifted(p));
    let death_pd = detect_sudden_death(&p_series(&eval_pd), eval_pd).expect("PD death exists");
    assert!(
        (death_pd - 0.875).abs() <= 1e-6,
        "PD death at {death_pd}, expected 0.875"
    );

    // Collective dephasing shrinks the same coherence by (1-p)^2, so the
    // death point is p* = 1 - sqrt(1/8).
    let eval_sdc = |p: f64| concurrence_after(&rho, &sdc_channel(p).unwrap());
    let death_sdc = detect_sudden_death(&p_series(&eval_sdc), eval_sdc).expect("SDC death exists");
    let expected_sdc = 1.0 - 0.125f64.sqrt();
    assert!(
        (death_sdc - expected_sdc).abs() <= 1e-6,
        "SDC death at {death_sdc}, expected {expected_sdc}"
    );

    // The collective channel always kills entanglement earlier, across
    // the entangled range of k.
    for i in 0..13 {
        let k = 0.36 + (0.96 - 0.36) * i as f64 / 12.0;
        let rho_k = make_almeida_from(k, FRAC_PI_4).unwrap();
        let pd_k = |p: f64| concurrence_after(&rho_k, &pd_lifted(p));
        let sdc_k = |p: f64| concurrence_after(&rho_k, &sdc_channel(p).unwrap());
        let d_pd = detect_sudden_death(&p_series(&pd_k), pd_k).expect("PD death");
        let d_sdc = detect_sudden_death(&p_series(&sdc_k), sdc_k).expect("SDC death");
        assert!(
            d_sdc < d_pd,
            "at k={k}: SDC death {d_sdc} not earlier than PD death {d_pd}"
        );
    }
    println!("[PASS] c05: sudden death at p = 0.875 (PD) and 1 - sqrt(0.125) (SDC); SDC dies first for k in (1/3, 1)");
}

#[test]
fn c06_gad_death_and_revival() {
    let rho = make_almeida_from(0.9, FRAC_PI_4).unwrap();

    // Steering under gamma = 0.3. In X-form the steering argument is
    // sqrt(D(p)^2 + 8 w^2) with w = 0.315 and D(p) = 0.531 - 0.36 p + 0.36 p^2,
    // so the zero set is the interval between the roots of
    // 0.36 p^2 - 0.36 p + (0.531 - sqrt(1 - 8 w^2)) = 0.
    let w: f64 = 0.9 * (1.0 - 0.3) * 0.5;
    let target = (1.0 - 8.0 * w * w).sqrt();
    let half_spread = (1.0f64 - 4.0 * (0.531 - target) / 0.36).sqrt() / 2.0;
    let expected = (0.5 - half_spread, 0.5 + half_spread);

    let eval_f3 = |p: f64| f3_steering(&apply_channel(&rho, &gad_lifted(p, 0.3)).unwrap()).unwrap();
    let (death, revival) =
        detect_revival(&p_series(&eval_f3), eval_f3).expect("steering death and revival");
    assert!(
        (death - expected.0).abs() <= 1e-6,
        "steering death at {death}, expected {}",
        expected.0
    );
    assert!(
        (revival - expected.1).abs() <= 1e-6,
        "steering revival at {revival}, expected {}",
        expected.1
    );

    // Concurrence under gamma = 0.6: coherence w = 0.18 against the
    // population floor M2(p) = (0.856 - 0.36 (1-2p)^2) / 4, dead where
    // (1-2p)^2 <= 0.136 / 0.36.
    let u = (0.136f64 / 0.36).sqrt();
    let expected_c = ((1.0 - u) / 2.0, (1.0 + u) / 2.0);
    let eval_c = |p: f64| concurrence_after(&rho, &gad_lifted(p, 0.6));
    let (c_death, c_revival) =
        detect_revival(&p_series(&eval_c), eval_c).expect("concurrence death and revival");
    assert!(
        (c_death - expected_c.0).abs() <= 1e-6,
        "concurrence death at {c_death}, expected {}",
        expected_c.0
    );
    assert!(
        (c_revival - expected_c.1).abs() <= 1e-6,
        "concurrence revival at {c_revival}, expected {}",
        expected_c.1
    );

    // While concurrence dies and revives at gamma = 0.6, steering stays
    // identically zero across the whole strength range.
    let eval_f3_heavy =
        |p: f64| f3_steering(&apply_channel(&rho, &gad_lifted(p, 0.6)).unwrap()).unwrap();
    let series = p_series(&eval_f3_heavy);
    assert!(series.iter().all(|&(_, v)| v <= 1e-12));
    assert!(detect_revival(&series, eval_f3_heavy).is_none());
    println!("[PASS] c06: GAD steering dies/revives at gamma = 0.3; concurrence revives at gamma = 0.6 while steering stays zero");
}

#[test]
fn c07_swapping_pure_inputs_exactly() {
    for i in 1..=25 {
        let theta = FRAC_PI_4 * i as f64 / 25.0;
        let rho = make_almeida_from(1.0, theta).unwrap();
        let s2 = (2.0 * theta).sin();

        // phi3 outcome: probability sin^2(2 theta) / 4, maximally
        // entangled conditional state.
        let out3 = swap(&rho, &rho, BellIndex::Phi3).unwrap();
        assert!((out3.probability - s2 * s2 / 4.0).abs() <= 1e-12);
        let state3 = out3.state.unwrap();
        assert!((concurrence(&state3).unwrap() - 1.0).abs() <= 1e-10);
        assert!((f3_steering(&state3).unwrap() - 1.0).abs() <= 1e-10);
        assert!((interferometric_power(&state3).unwrap() - 1.0).abs() <= 1e-10);

        // phi1 outcome: probability (cos^4 + sin^4)/2, partially
        // entangled conditional state.
        let (c2, s2q) = (theta.cos().powi(4), theta.sin().powi(4));
        let out1 = swap(&rho, &rho, BellIndex::Phi1).unwrap();
        assert!((out1.probability - (c2 + s2q) / 2.0).abs() <= 1e-12);
        let c_expect = s2 * s2 / (2.0 - s2 * s2);
        let c_actual = concurrence(&out1.state.unwrap()).unwrap();
        assert!(
            (c_actual - c_expect).abs() <= 1e-10,
            "phi1 concurrence {c_actual} vs {c_expect} at theta={theta}"
        );
    }
    println!("[PASS] c07: pure-input swapping reproduces exact probabilities and conditional-state quantifiers");
}

#[test]
fn c08_steering_enhancement_window_below_purity() {
    let result = figure_data("9").unwrap();
    let in_idx = result
        .quantity_names
        .iter()
        .position(|n| n == "steering_in")
        .unwrap();
    let out_idx = result
        .quantity_names
        .iter()
        .position(|n| n == "steering_out")
        .unwrap();
    let window: Vec<&qcorr::sweep::SweepRow> = result
        .rows
        .iter()
        .filter(|r| {
            r.params[1] == 3.0
                && !r.zero_probability
                && r.values[out_idx].unwrap() > r.values[in_idx].unwrap()
                && (0.08..=0.18).contains(&r.probability.unwrap())
        })
        .collect();
    assert!(
        !window.is_empty(),
        "no theta with post-swap steering gain at 8-18% success probability"
    );
    println!(
        "[PASS] c08: steering enhancement via phi3 swapping at k = 0.93 on {} of 201 grid points",
        window.len()
    );
}

#[test]
fn c09_lhs_admissibility_is_sufficient_but_not_necessary() {
    let n = 100;
    let mut admissible_points = 0usize;
    let mut converse_misses = 0usize;
    for i in 0..n {
        for j in 0..n {
            let k = i as f64 / (n - 1) as f64;
            let theta = FRAC_PI_4 * j as f64 / (n - 1) as f64;
            let params = AlmeidaParams::new(k, theta).unwrap();
            let f3 = f3_steering(&make_almeida_from(k, theta).unwrap()).unwrap();
            if lhs_admissible(&params) {
                admissible_points += 1;
                assert!(
                    f3 <= 1e-12,
                    "LHS-admissible state is flagged steerable at k={k}, theta={theta}: F3={f3}"
                );
            } else if f3 <= 1e-12 {
                converse_misses += 1;
            }
        }
    }
    assert!(
        admissible_points > 0,
        "grid never hit the admissible region"
    );
    assert!(
        converse_misses > 0,
        "F3 = 0 should not imply LHS admissibility anywhere on the grid"
    );
    println!(
        "[PASS] c09: LHS model forces F3 = 0 ({admissible_points} points); converse fails on {converse_misses} points"
    );
}

#[test]
fn c10_swap_probabilities_complete_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x10);
    for trial in 0..100 {
        let rho12 = random_density(&mut rng);
        let rho34 = random_density(&mut rng);
        let outcomes = swap_all(&rho12, &rho34).unwrap();
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        assert!(
            (total - 1.0).abs() <= 1e-12,
            "trial {trial}: outcome probabilities sum to {total}"
        );
    }
    println!(
        "[PASS] c10: Bell-outcome probabilities sum to 1 within 1e-12 on 100 random input pairs"
    );
}

#[test]
fn c11_figure_pipeline_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_qcorr"))
            .args(["figure", "7", "--out"])
            .arg(&path)
            .status()
            .expect("run the qcorr binary");
        assert!(status.success(), "figure 7 run failed");
        std::fs::read(&path).unwrap()
    };
    let first = run("first.csv");
    let second = run("second.csv");
    assert!(!first.is_empty());
    assert_eq!(first, second, "figure 7 CSV runs differ");
    println!(
        "[PASS] c11: two figure-7 pipeline runs produced byte-identical CSV ({} bytes)",
        first.len()
    );
}
