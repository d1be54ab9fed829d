//! Invariant catalogue shared by the property tests and the acceptance
//! runner. Each entry drives a deterministic proptest runner, so both
//! targets exercise identical cases.

#![allow(dead_code)]

use std::process::Command;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use susy_jacobi::coordinate_maps::{theta_of_z, w_of_z, z_of_theta, MapParams};
use susy_jacobi::exact_algebra::{
    apply_ladder, differentiate_z, eigen_residual_symbolic, eval_wave, int, ladder_chain, rat, to_f64, HypWave,
    LadderParam, Rational, TanhPoly,
};
use susy_jacobi::numeric_oracle::{
    bound_state_eigenvalues, discretize, reflection_coefficient, Grid, ScatterOptions, FLUX_TOL, SCATTER_HALF_WIDTH,
};
use susy_jacobi::special_oracle::{
    assoc_legendre, check_gegenbauer_identity, check_legendre_identity, gegenbauer_poly, jacobi_ode_residual,
    jacobi_poly, legendre_poly,
};
use susy_jacobi::spectra::{
    bound_levels, poschl_teller_spectrum, rosen_morse_admits, rosen_morse_eigenfunction, rosen_morse_energy,
    rosen_morse_spectrum, LevelKind, PotentialFamily,
};
use susy_jacobi::susy_core::{
    partner_potentials, riccati_residual, shape_invariance_remainder, shape_invariant_levels, PartnerPotential,
    Superpotential,
};
use susy_jacobi::verification::{self, MAP_GAMMAS, MAP_IDENTITY_TOL, MAP_LIMIT_TOL};

pub const BIN: &str = env!("CARGO_BIN_EXE_susy-jacobi");

pub struct Invariant {
    pub name: &'static str,
    pub run: fn() -> Result<(), String>,
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn drive<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn fail<E: std::fmt::Display>(e: E) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

// ---- strategies ----

pub fn rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(p, q)| rat(p, q))
}

/// Nonnegative multiples of 1/2 up to `max / 2`.
pub fn half_steps(max: i64) -> impl Strategy<Value = Rational> {
    (0..=max).prop_map(|k| rat(k, 2))
}

pub fn tanh_poly(max_degree: usize, max_coeff: i64) -> impl Strategy<Value = TanhPoly> {
    prop::collection::vec(rational(max_coeff, 3), 0..=max_degree + 1).prop_map(TanhPoly::new)
}

pub fn hyp_wave() -> impl Strategy<Value = HypWave> {
    (half_steps(4), half_steps(4), tanh_poly(3, 3), rational(3, 2))
        .prop_map(|(a, b, p, c)| HypWave::new(a, b, p, c))
}

/// Exponent parameter of the Jacobi family, strictly above −1.
pub fn jacobi_param() -> impl Strategy<Value = Rational> {
    (-3i64..=20, 1i64..=4).prop_map(|(p, q)| rat(p, q)).prop_filter("above -1", |r| r > &int(-1))
}

// ---- exact algebra ----

pub fn ladder_is_minus_derivative_plus_kt() -> Result<(), String> {
    drive(256, (rational(10, 4), hyp_wave()), |(k, w)| {
        let lhs = apply_ladder(&LadderParam::new(k.clone()), &w);
        let kt = w.mul_poly(&TanhPoly::t()).scale(&k);
        let rhs = differentiate_z(&w).scale(&int(-1)).checked_add(&kt).map_err(fail)?;
        ensure(lhs == rhs, || format!("k = {k}, w = {w}: {lhs} != {rhs}"))
    })
}

pub fn ladder_tower_is_exact() -> Result<(), String> {
    for l in 1..=10i64 {
        for n in 0..l {
            let w = ladder_chain(&int(l), n as u32).map_err(|e| e.to_string())?;
            let fam = PotentialFamily::poschl_teller(int(l));
            let r = eigen_residual_symbolic(&w, &fam, &-(int(l - n) * int(l - n))).map_err(|e| e.to_string())?;
            if !r.is_zero() {
                return Err(format!("l = {l}, n = {n}: residual {r}"));
            }
        }
    }
    Ok(())
}

pub fn ladder_degree_and_parity() -> Result<(), String> {
    drive(128, (1i64..=12, 0u32..12), |(l, n)| {
        prop_assume!((n as i64) < l);
        let w = ladder_chain(&int(l), n).map_err(fail)?;
        ensure(w.poly().degree() == n as i64, || format!("degree {} != {n}", w.poly().degree()))?;
        let expected = if n % 2 == 0 { 1 } else { -1 };
        ensure(w.poly().parity() == Some(expected), || format!("l = {l}, n = {n}: parity {:?}", w.poly().parity()))?;
        ensure(w.a() == w.b(), || format!("l = {l}, n = {n}: exponents {} {}", w.a(), w.b()))
    })
}

pub fn canonical_form_idempotent() -> Result<(), String> {
    drive(256, hyp_wave(), |w| {
        let once = w.clone().canonical();
        let twice = once.clone().canonical();
        ensure(once == twice && once == w, || format!("{w}: {once} vs {twice}"))
    })
}

pub fn derivative_matches_finite_difference() -> Result<(), String> {
    let h = 1e-4;
    drive(128, (hyp_wave(), -5.0f64..=5.0), |(w, z)| {
        let exact = eval_wave(&differentiate_z(&w), z).map_err(fail)?;
        let fd = (eval_wave(&w, z + h).map_err(fail)? - eval_wave(&w, z - h).map_err(fail)?) / (2.0 * h);
        ensure((exact - fd).abs() <= 1e-6, || format!("{w} at z = {z}: {exact} vs {fd}"))
    })
}

// ---- coordinate maps ----

fn chart_point() -> impl Strategy<Value = (f64, f64)> {
    (prop::sample::select(MAP_GAMMAS.to_vec()), -3.0f64..=3.0).prop_map(|(gamma, w)| {
        let z = if gamma == 0.0 { w } else { (gamma * w).exp_m1() / gamma };
        (gamma, z)
    })
}

pub fn map_round_trip() -> Result<(), String> {
    drive(512, chart_point(), |(gamma, z)| {
        let p = MapParams::new(gamma).map_err(fail)?;
        let back = z_of_theta(p, theta_of_z(p, z).map_err(fail)?).map_err(fail)?;
        ensure((back - z).abs() <= MAP_IDENTITY_TOL * z.abs().max(1.0), || {
            format!("gamma = {gamma}, z = {z}: round trip {back}")
        })
    })
}

pub fn map_limit_consistency() -> Result<(), String> {
    let d = verification::map_limit_deviation(1001).map_err(|e| e.to_string())?;
    if d <= MAP_LIMIT_TOL {
        Ok(())
    } else {
        Err(format!("deviation {d:e}"))
    }
}

pub fn map_trig_identities() -> Result<(), String> {
    drive(512, chart_point(), |(gamma, z)| {
        let p = MapParams::new(gamma).map_err(fail)?;
        let theta = theta_of_z(p, z).map_err(fail)?;
        let w = w_of_z(p, z).map_err(fail)?;
        let pyth = (theta.sin().powi(2) + theta.cos().powi(2) - 1.0).abs();
        let sech = (theta.sin() * w.cosh() - 1.0).abs();
        ensure(pyth <= MAP_IDENTITY_TOL && sech <= MAP_IDENTITY_TOL, || {
            format!("gamma = {gamma}, z = {z}: {pyth:e} {sech:e}")
        })
    })
}

pub fn map_monotone() -> Result<(), String> {
    for gamma in MAP_GAMMAS {
        let grid = verification::map_grid(gamma, 1000).map_err(|e| e.to_string())?;
        let d = verification::map_deviations(gamma, &grid).map_err(|e| e.to_string())?;
        if !d.monotone {
            return Err(format!("gamma = {gamma}: not increasing"));
        }
    }
    Ok(())
}

// ---- susy core ----

pub fn partner_difference_is_twice_derivative() -> Result<(), String> {
    drive(256, (rational(12, 5), rational(6, 5)), |(k, s)| {
        let pair = partner_potentials(&Superpotential::ClosedForm { k: k.clone(), s }).map_err(fail)?;
        let (PartnerPotential::Closed(v1), PartnerPotential::Closed(v2)) = (&pair.v1, &pair.v2) else {
            return Err(TestCaseError::fail("closed form expected"));
        };
        let expected = TanhPoly::one_minus_t2().scale(&(int(2) * &k));
        ensure(v2 - v1 == expected, || format!("k = {k}: {}", v2 - v1))
    })
}

pub fn shape_invariant_levels_match_spectrum() -> Result<(), String> {
    drive(64, (1i64..=12).prop_flat_map(|k| (Just(k), 0..k)), |(k, n)| {
        let k = int(k);
        let levels = shape_invariant_levels(&k).map_err(fail)?;
        let pt = poschl_teller_spectrum(&k).map_err(fail)?;
        let si = &levels[n as usize];
        let gap = &k - int(n);
        let expected = &k * &k - &gap * &gap;
        let shifted = &pt[n as usize].energy + &k * &k;
        ensure(si == &expected && si == &shifted, || format!("k = {k}, n = {n}: {si} vs {expected} vs {shifted}"))
    })
}

pub fn riccati_round_trip() -> Result<(), String> {
    let grid = Grid::new(-8.0, 8.0, 801).map_err(|e| e.to_string())?;
    drive(64, (rational(8, 4), rational(4, 4)), |(k, s)| {
        let w = Superpotential::ClosedForm { k: k.clone(), s: s.clone() };
        let v1 = partner_potentials(&w).map_err(fail)?.v1.sample(&grid).map_err(fail)?;
        let r = riccati_residual(&v1, &w).map_err(fail)?;
        ensure(r <= 1e-10, || format!("k = {k}, s = {s}: {r:e}"))
    })
}

pub fn shape_invariance_constancy_is_zero() -> Result<(), String> {
    drive(256, rational(40, 7), |k| {
        let si = shape_invariance_remainder(&k).map_err(fail)?;
        let expected = &k * &k - (&k - Rational::one()) * (&k - Rational::one());
        ensure(si.constancy == 0.0 && si.remainder == expected, || format!("k = {k}: {si:?}"))
    })
}

// ---- spectra ----

fn rosen_morse_params() -> impl Strategy<Value = (Rational, Rational)> {
    (1i64..=10).prop_flat_map(|twice| {
        let np = rat(twice, 2);
        let bound = (&np * &np * int(4)).to_integer();
        let max: i64 = bound.try_into().unwrap_or(1);
        (Just(np), (-max + 1..max).prop_map(|b| rat(b, 4)))
    })
}

pub fn rosen_morse_b0_is_shifted_sech_well() -> Result<(), String> {
    drive(64, (1i64..=12).prop_map(|t| rat(t, 2)), |np| {
        let bound = |v: Vec<susy_jacobi::SpectrumEntry>| -> Vec<susy_jacobi::SpectrumEntry> {
            v.into_iter().filter(|e| e.kind == LevelKind::Bound).collect()
        };
        let rm = bound(rosen_morse_spectrum(&np, &Rational::zero()).map_err(fail)?);
        let pt_all = poschl_teller_spectrum(&np).map_err(fail)?;
        let shift = &np * (&np + Rational::one());
        for t in pt_all.iter().filter(|e| e.kind == LevelKind::Threshold) {
            // shifted, the threshold sits on the continuum edge n′(n′+1)
            ensure(t.energy.is_zero(), || format!("n' = {np}: threshold at {}", t.energy))?;
        }
        let pt = bound(pt_all);
        ensure(rm.len() == pt.len(), || format!("n' = {np}: {} vs {} levels", rm.len(), pt.len()))?;
        for (a, b) in rm.iter().zip(&pt) {
            ensure(a.energy == &b.energy + &shift, || format!("n' = {np}: {} vs {}", a.energy, b.energy))?;
        }
        Ok(())
    })
}

pub fn rosen_morse_b0_matches_ladder() -> Result<(), String> {
    drive(64, (1i64..=12).prop_flat_map(|t| (Just(rat(t, 2)), 0u32..6)), |(np, n)| {
        prop_assume!(int(n as i64) < np);
        let rm = rosen_morse_eigenfunction(&np, &Rational::zero(), n).map_err(fail)?;
        let tower = ladder_chain(&np, n).map_err(fail)?;
        ensure(rm.ratio_to(&tower).is_some(), || format!("n' = {np}, n = {n}: {rm} vs {tower}"))
    })
}

pub fn bound_energies_below_edge() -> Result<(), String> {
    drive(128, rosen_morse_params(), |(np, b)| {
        let edge = &np * (&np + Rational::one()) - int(2) * b.abs();
        for e in rosen_morse_spectrum(&np, &b).map_err(fail)? {
            if e.kind == LevelKind::Bound {
                ensure(e.energy < edge, || format!("n' = {np}, B = {b}: {} >= {edge}", e.energy))?;
            }
        }
        for e in poschl_teller_spectrum(&np).map_err(fail)? {
            if e.kind == LevelKind::Bound {
                ensure(e.energy.is_negative(), || format!("l = {np}: {}", e.energy))?;
            }
        }
        Ok(())
    })
}

pub fn rosen_morse_eigenfunctions_exact() -> Result<(), String> {
    drive(128, (rosen_morse_params(), 0u32..6), |((np, b), n)| {
        prop_assume!(rosen_morse_admits(&np, &b, n));
        let w = rosen_morse_eigenfunction(&np, &b, n).map_err(fail)?;
        let e = rosen_morse_energy(&np, &b, n);
        let fam = PotentialFamily::rosen_morse(np.clone(), b.clone());
        let r = eigen_residual_symbolic(&w, &fam, &e).map_err(fail)?;
        ensure(r.is_zero(), || format!("n' = {np}, B = {b}, n = {n}: {r}"))
    })
}

pub fn oracle_agreement() -> Result<(), String> {
    let grid = Grid::default_box();
    let checks = verification::spectrum_suite(&grid, verification::SPECTRUM_ORACLE_TOL).map_err(|e| e.to_string())?;
    match checks.iter().find(|c| !c.pass) {
        None => Ok(()),
        Some(c) => Err(c.summary_line()),
    }
}

// ---- special functions ----

pub fn jacobi_ode_identity() -> Result<(), String> {
    drive(128, (0u32..=9, jacobi_param(), jacobi_param()), |(n, a, b)| {
        let p = jacobi_poly(n, &a, &b).map_err(fail)?;
        let r = jacobi_ode_residual(&p, n, &a, &b);
        ensure(r.is_zero(), || format!("n = {n}, alpha = {a}, beta = {b}: {r}"))
    })
}

pub fn jacobi_symmetry() -> Result<(), String> {
    drive(128, (0u32..=9, jacobi_param(), jacobi_param()), |(n, a, b)| {
        let lhs = jacobi_poly(n, &a, &b).map_err(fail)?.reflect();
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        let rhs = jacobi_poly(n, &b, &a).map_err(fail)?.scale(&sign);
        ensure(lhs == rhs, || format!("n = {n}, alpha = {a}, beta = {b}"))
    })
}

fn max_coeff_gap(p: &TanhPoly, q: &TanhPoly) -> f64 {
    (p - q).coeffs().iter().map(|c| to_f64(c).abs()).fold(0.0, f64::max)
}

pub fn gegenbauer_reduces_to_legendre() -> Result<(), String> {
    for p in 0..=8u32 {
        let legendre = legendre_poly(p);
        let at_half = gegenbauer_poly(p, &rat(1, 2)).map_err(|e| e.to_string())?;
        if at_half != legendre {
            return Err(format!("p = {p}: C_p^(1/2) = {at_half} != {legendre}"));
        }
        let mut last = f64::INFINITY;
        for den in [10i64, 100, 1000, 10000] {
            let eps = rat(1, den);
            let g = gegenbauer_poly(p, &(rat(1, 2) + &eps)).map_err(|e| e.to_string())?;
            let j = jacobi_poly(p, &eps, &eps).map_err(|e| e.to_string())?;
            let ratio = HypWave::from_poly(g.clone()).ratio_to(&HypWave::from_poly(j));
            if ratio.is_none() {
                return Err(format!("p = {p}, eps = {eps}: Gegenbauer and Jacobi not proportional"));
            }
            let gap = max_coeff_gap(&g, &legendre);
            if p > 0 && gap >= last {
                return Err(format!("p = {p}, eps = {eps}: gap {gap:e} did not shrink"));
            }
            last = gap;
        }
    }
    Ok(())
}

pub fn identity_constants_hold_pointwise() -> Result<(), String> {
    let zs = [-2.5, -0.7, 0.0, 0.3, 1.9];
    for l in 1..=8u32 {
        for m in 1..=l {
            let c = check_legendre_identity(l, m).map_err(|e| e.to_string())?;
            let lhs = assoc_legendre(l, m).map_err(|e| e.to_string())?;
            let rhs = ladder_chain(&int(l as i64), l - m).map_err(|e| e.to_string())?;
            for z in zs {
                let a = eval_wave(&lhs, z).map_err(|e| e.to_string())?;
                let b = to_f64(&c) * eval_wave(&rhs, z).map_err(|e| e.to_string())?;
                if (a - b).abs() > 1e-9 * a.abs().max(1.0) {
                    return Err(format!("l = {l}, m = {m}, z = {z}: {a} vs {b}"));
                }
            }
        }
    }
    for q in [rat(3, 2), rat(5, 2), rat(7, 2)] {
        for p in 0..=6 {
            check_gegenbauer_identity(p, &q).map_err(|e| format!("p = {p}, q = {q}: {e}"))?;
        }
    }
    Ok(())
}

// ---- numeric oracle ----

pub fn flux_conservation() -> Result<(), String> {
    drive(12, ((1i64..=8).prop_map(|t| rat(t, 2)), 0.3f64..=3.0), |(l, k)| {
        let s = reflection_coefficient(&PotentialFamily::poschl_teller(l.clone()), k, SCATTER_HALF_WIDTH, ScatterOptions::default())
            .map_err(fail)?;
        ensure(s.flux_error.abs() <= FLUX_TOL, || format!("l = {l}, k = {k}: flux error {:e}", s.flux_error))
    })
}

/// Ratio of level errors on the spacing-`h` and spacing-`h/2` grids of the
/// `l = 2` sech² well.
pub fn grid_convergence_ratios() -> Result<Vec<f64>, String> {
    let fam = PotentialFamily::poschl_teller(int(2));
    let closed = bound_levels(&poschl_teller_spectrum(&int(2)).map_err(|e| e.to_string())?);
    let errors = |points: usize| -> Result<Vec<f64>, String> {
        let grid = Grid::new(-12.0, 12.0, points).map_err(|e| e.to_string())?;
        let op = discretize(&fam, &grid).map_err(|e| e.to_string())?;
        let numeric = bound_state_eigenvalues(&op, -1e-6, 8).map_err(|e| e.to_string())?;
        Ok(numeric.iter().zip(&closed).map(|(a, b)| (a - b).abs()).collect())
    };
    let coarse = errors(401)?;
    let fine = errors(801)?;
    Ok(coarse.iter().zip(&fine).map(|(c, f)| c / f).collect())
}

pub fn grid_convergence() -> Result<(), String> {
    let ratios = grid_convergence_ratios()?;
    if ratios.len() == 2 && ratios.iter().all(|r| (3.5..=4.5).contains(r)) {
        Ok(())
    } else {
        Err(format!("error ratios {ratios:?}"))
    }
}

pub fn bound_count_matches() -> Result<(), String> {
    let grid = Grid::default_box();
    let mut cases: Vec<PotentialFamily> = (1..=10).map(|t| PotentialFamily::poschl_teller(rat(t, 2))).collect();
    cases.extend(verification::rosen_morse_cases().into_iter().map(|(np, b)| PotentialFamily::rosen_morse(np, b)));
    for fam in cases {
        let closed = match &fam {
            PotentialFamily::PoschlTeller { l } => bound_levels(&poschl_teller_spectrum(l).map_err(|e| e.to_string())?),
            PotentialFamily::RosenMorseII { n_prime, b } => {
                bound_levels(&rosen_morse_spectrum(n_prime, b).map_err(|e| e.to_string())?)
            }
            _ => unreachable!(),
        };
        let op = discretize(&fam, &grid).map_err(|e| e.to_string())?;
        let numeric = bound_state_eigenvalues(&op, fam.continuum_edge() - 1e-6, 32).map_err(|e| e.to_string())?;
        if numeric.len() != closed.len() {
            return Err(format!("{}: {} numeric vs {} closed-form levels", fam.label(), numeric.len(), closed.len()));
        }
    }
    Ok(())
}

pub fn deterministic_outputs() -> Result<(), String> {
    let grid = Grid::default_box();
    let fam = PotentialFamily::rosen_morse(int(3), int(1));
    let run = || -> Result<(Vec<u64>, u64), String> {
        let op = discretize(&fam, &grid).map_err(|e| e.to_string())?;
        let levels = bound_state_eigenvalues(&op, fam.continuum_edge() - 1e-6, 8).map_err(|e| e.to_string())?;
        let s = reflection_coefficient(&PotentialFamily::poschl_teller(rat(3, 2)), 1.0, SCATTER_HALF_WIDTH, ScatterOptions::default())
            .map_err(|e| e.to_string())?;
        Ok((levels.iter().map(|x| x.to_bits()).collect(), s.reflection.to_bits()))
    };
    if run()? == run()? {
        Ok(())
    } else {
        Err("outputs differ between identical runs".into())
    }
}

// ---- cli ----

pub fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).env_remove(susy_jacobi::cli::CONFIG_ENV).output().expect("binary runs")
}

pub fn report_round_trip() -> Result<(), String> {
    let cases: [&[&str]; 7] = [
        &["spectrum", "--family", "rosen-morse", "--nprime", "5/2", "--B", "1/2"],
        &["eigenfunction", "--family", "poschl-teller", "--l", "3", "--n", "1", "--grid-points", "201"],
        &["map", "--gamma", "-0.5", "--z", "0.75"],
        &["verify", "shape-invariance"],
        &["scatter", "--family", "poschl-teller", "--l", "2", "--k", "1"],
        &["oracle", "--family", "gegenbauer", "--p", "1", "--q", "3/2"],
        &["deformed", "--alpha", "1", "--beta", "2", "--n", "1"],
    ];
    for args in cases {
        let first = run_cli(args);
        let doc: serde_json::Value =
            serde_json::from_slice(&first.stdout).map_err(|e| format!("{args:?}: invalid JSON: {e}"))?;
        let echoed: Vec<String> = doc["argv"]
            .as_array()
            .ok_or("argv missing")?
            .iter()
            .map(|v| v.as_str().unwrap_or_default().to_string())
            .collect();
        let echoed: Vec<&str> = echoed.iter().map(String::as_str).collect();
        let second = run_cli(&echoed);
        if first.stdout != second.stdout || first.status.code() != second.status.code() {
            return Err(format!("{args:?}: rerun from {echoed:?} differs"));
        }
    }
    Ok(())
}

/// Anchors `verify all` must cover: one per relation the tool checks.
pub const REQUIRED_ANCHORS: [&str; 17] = [
    "riccati-equation",
    "partner-potential-difference",
    "shape-invariance-remainder",
    "shape-invariance-spectrum",
    "ground-state-annihilation",
    "sech2-well-spectrum",
    "ladder-eigenfunctions",
    "angular-map",
    "first-derivative-elimination",
    "jacobi-equation",
    "deformed-zero-energy-solutions",
    "rosen-morse-spectrum",
    "rosen-morse-eigenfunctions",
    "ultraspherical-equation",
    "gegenbauer-target-level",
    "gegenbauer-legendre-identity",
    "reflectionless-iff-integer",
];

pub fn verify_all_passes() -> Result<(), String> {
    let out = run_cli(&["verify", "all"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("invalid JSON: {e}"))?;
    let checks = doc["body"]["checks"].as_array().ok_or("checks missing")?;
    for anchor in REQUIRED_ANCHORS.iter().chain(["legendre-ladder-identity", "flux-conservation"].iter()) {
        if !checks.iter().any(|c| c["anchor"] == *anchor) {
            return Err(format!("no check anchored at {anchor}"));
        }
    }
    match out.status.code() {
        Some(0) if doc["passed"] == true => Ok(()),
        code => Err(format!("exit {code:?}, {} failed", doc["body"]["failed"])),
    }
}

pub fn catalogue() -> Vec<Invariant> {
    macro_rules! entries {
        ($($f:ident),* $(,)?) => { vec![$(Invariant { name: stringify!($f), run: $f }),*] };
    }
    entries![
        ladder_is_minus_derivative_plus_kt,
        ladder_tower_is_exact,
        ladder_degree_and_parity,
        canonical_form_idempotent,
        derivative_matches_finite_difference,
        map_round_trip,
        map_limit_consistency,
        map_trig_identities,
        map_monotone,
        partner_difference_is_twice_derivative,
        shape_invariant_levels_match_spectrum,
        riccati_round_trip,
        shape_invariance_constancy_is_zero,
        rosen_morse_b0_is_shifted_sech_well,
        rosen_morse_b0_matches_ladder,
        bound_energies_below_edge,
        rosen_morse_eigenfunctions_exact,
        oracle_agreement,
        jacobi_ode_identity,
        jacobi_symmetry,
        gegenbauer_reduces_to_legendre,
        identity_constants_hold_pointwise,
        flux_conservation,
        grid_convergence,
        bound_count_matches,
        deterministic_outputs,
        report_round_trip,
        verify_all_passes,
    ]
}
