//! Closed-form spectra and eigenfunctions of the sech² well, the
//! Rosen–Morse II well and the Gegenbauer tower, plus the zero-energy
//! solutions of the γ-deformed problem.
//!
//! Sign conventions, pinned against the finite-difference oracle:
//!
//! * Pöschl–Teller: `V(z) = −l(l+1) sech² z`, bound levels `−(l−n)²`.
//! * Rosen–Morse II: `V(z) = n′(n′+1) tanh² z − 2B tanh z`, i.e. the
//!   operator `−d²/dz² − [A tanh² z + 2B tanh z]` with `A = −n′(n′+1)`.
//!   Levels are `n′(n′+1) − (n′−n)² − B²/(n′−n)²`. With this sign of the
//!   `B` term the decay rate at `z → +∞` is `n′−n−r`, `r = B/(n′−n)`, so the
//!   eigenfunction is `(1−t)^{(n′−n−r)/2} (1+t)^{(n′−n+r)/2} P_n^{(n′−n−r, n′−n+r)}(t)`.
//! * γ-deformed: see [`gamma_deformed_residual`].

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coordinate_maps::{w_of_z, MapParams};
use crate::error::{Error, Result};
use crate::exact_algebra::{int, rat, to_f64, HypWave, Rational, TanhPoly};
use crate::numeric_oracle::{second_derivative_5pt, Grid, Samples};
use crate::special_oracle::{jacobi_eval, jacobi_poly};

/// Potential descriptor.
#[derive(Clone, Debug, PartialEq)]
pub enum PotentialFamily {
    /// `−l(l+1) sech² z`.
    PoschlTeller { l: Rational },
    /// `n′(n′+1) tanh² z − 2B tanh z`.
    RosenMorseII { n_prime: Rational, b: Rational },
    /// Zero-energy potential of the γ-deformed Jacobi problem for the
    /// degree-`n` solution; `γ = β − α`, `m = (α+β)/2`, `n′ = n + m`.
    GammaDeformed { alpha: f64, beta: f64, n: u32 },
    /// Grid samples, linearly interpolated.
    Custom(Samples),
}

impl PotentialFamily {
    pub fn poschl_teller(l: Rational) -> Self {
        PotentialFamily::PoschlTeller { l }
    }

    pub fn rosen_morse(n_prime: Rational, b: Rational) -> Self {
        PotentialFamily::RosenMorseII { n_prime, b }
    }

    pub fn label(&self) -> String {
        match self {
            PotentialFamily::PoschlTeller { l } => format!("poschl-teller(l={l})"),
            PotentialFamily::RosenMorseII { n_prime, b } => {
                format!("rosen-morse(nprime={n_prime}, B={b})")
            }
            PotentialFamily::GammaDeformed { alpha, beta, n } => {
                format!("gamma-deformed(alpha={alpha}, beta={beta}, n={n})")
            }
            PotentialFamily::Custom(s) => format!("custom({} samples)", s.values.len()),
        }
    }

    /// `V` as a polynomial in `t = tanh z`, when it is one.
    pub fn tanh_polynomial(&self) -> Result<TanhPoly> {
        match self {
            PotentialFamily::PoschlTeller { l } => {
                let depth = l * (l + Rational::one());
                Ok(TanhPoly::one_minus_t2().scale(&-depth))
            }
            PotentialFamily::RosenMorseII { n_prime, b } => {
                let depth = n_prime * (n_prime + Rational::one());
                Ok(TanhPoly::new(vec![Rational::zero(), b * int(-2), depth]))
            }
            other => Err(Error::Unsupported(format!(
                "{} has no polynomial form in tanh z",
                other.label()
            ))),
        }
    }

    pub fn potential_at(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::NonFinite(format!("z = {z}")));
        }
        match self {
            PotentialFamily::PoschlTeller { l } => {
                let l = to_f64(l);
                let s = 1.0 / z.cosh();
                Ok(-l * (l + 1.0) * s * s)
            }
            PotentialFamily::RosenMorseII { n_prime, b } => {
                let np = to_f64(n_prime);
                let t = z.tanh();
                Ok(np * (np + 1.0) * t * t - 2.0 * to_f64(b) * t)
            }
            PotentialFamily::GammaDeformed { alpha, beta, n } => {
                deformed_potential(*alpha, *beta, *n, DeformedForm::Derived, z)
            }
            PotentialFamily::Custom(s) => s.interpolate(z).ok_or_else(|| {
                Error::OutOfChart(format!(
                    "z = {z} outside sampled range [{}, {}]",
                    s.grid.z_min(),
                    s.grid.z_max()
                ))
            }),
        }
    }

    /// `(V(−∞), V(+∞))`.
    pub fn asymptotes(&self) -> (f64, f64) {
        match self {
            PotentialFamily::PoschlTeller { .. } => (0.0, 0.0),
            PotentialFamily::RosenMorseII { n_prime, b } => {
                let np = to_f64(n_prime);
                let depth = np * (np + 1.0);
                let b = to_f64(b);
                (depth + 2.0 * b, depth - 2.0 * b)
            }
            PotentialFamily::GammaDeformed { .. } => (0.0, 0.0),
            PotentialFamily::Custom(s) => (s.values[0], *s.values.last().unwrap_or(&0.0)),
        }
    }

    /// Lower edge of the continuum.
    pub fn continuum_edge(&self) -> f64 {
        let (l, r) = self.asymptotes();
        l.min(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelKind {
    Bound,
    /// Zero-energy edge state of an integer-depth well; never counted as bound.
    Threshold,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub n: u32,
    pub energy: Rational,
    pub kind: LevelKind,
}

impl SpectrumEntry {
    pub fn energy_f64(&self) -> f64 {
        to_f64(&self.energy)
    }
}

/// Bound energies only, as floats.
pub fn bound_levels(entries: &[SpectrumEntry]) -> Vec<f64> {
    entries
        .iter()
        .filter(|e| e.kind == LevelKind::Bound)
        .map(SpectrumEntry::energy_f64)
        .collect()
}

/// Smallest integer `≥ r`.
fn ceil_u32(r: &Rational) -> Option<u32> {
    r.ceil().to_integer().to_u32()
}

/// Levels of `−l(l+1) sech² z`: `E_n = −(l−n)²` for `n < l`, plus a
/// threshold entry at `E = 0` when `l` is an integer.
pub fn poschl_teller_spectrum(l: &Rational) -> Result<Vec<SpectrumEntry>> {
    if !l.is_positive() {
        return Err(Error::NoBoundState(format!("l = {l} must be positive")));
    }
    let count = ceil_u32(l).ok_or_else(|| Error::InvalidParameter(format!("l = {l} too large")))?;
    let mut out: Vec<SpectrumEntry> = (0..count)
        .map(|n| {
            let s = l - int(n as i64);
            SpectrumEntry {
                n,
                energy: -(&s * &s),
                kind: LevelKind::Bound,
            }
        })
        .collect();
    if l.is_integer() {
        out.push(SpectrumEntry {
            n: count,
            energy: Rational::zero(),
            kind: LevelKind::Threshold,
        });
    }
    Ok(out)
}

/// `n′(n′+1) − (n′−n)² − B²/(n′−n)²`.
pub fn rosen_morse_energy(n_prime: &Rational, b: &Rational, n: u32) -> Rational {
    let s = n_prime - int(n as i64);
    let s2 = &s * &s;
    n_prime * (n_prime + Rational::one()) - &s2 - (b * b) / s2
}

fn check_rosen_morse(n_prime: &Rational, b: &Rational) -> Result<()> {
    if !n_prime.is_positive() {
        return Err(Error::InvalidParameter(format!("n' = {n_prime} must be positive")));
    }
    if b.abs() >= n_prime * n_prime {
        return Err(Error::InvalidParameter(format!(
            "|B| = {} must be below n'^2 = {}",
            b.abs(),
            n_prime * n_prime
        )));
    }
    Ok(())
}

/// A level is bound when `n < n′` and `(n′−n)² > |B|`, i.e. both decay
/// exponents of the eigenfunction are positive.
pub fn rosen_morse_admits(n_prime: &Rational, b: &Rational, n: u32) -> bool {
    let s = n_prime - int(n as i64);
    s.is_positive() && &s * &s > b.abs()
}

pub fn rosen_morse_spectrum(n_prime: &Rational, b: &Rational) -> Result<Vec<SpectrumEntry>> {
    check_rosen_morse(n_prime, b)?;
    Ok((0u32..)
        .take_while(|&n| rosen_morse_admits(n_prime, b, n))
        .map(|n| SpectrumEntry {
            n,
            energy: rosen_morse_energy(n_prime, b, n),
            kind: LevelKind::Bound,
        })
        .collect())
}

/// Unnormalized Rosen–Morse II bound state of index `n`.
pub fn rosen_morse_eigenfunction(n_prime: &Rational, b: &Rational, n: u32) -> Result<HypWave> {
    check_rosen_morse(n_prime, b)?;
    if !rosen_morse_admits(n_prime, b, n) {
        return Err(Error::NoBoundState(format!(
            "level n = {n} is not bound for n' = {n_prime}, B = {b}"
        )));
    }
    let s = n_prime - int(n as i64);
    let r = b / &s;
    let alpha = &s - &r;
    let beta = &s + &r;
    let poly = jacobi_poly(n, &alpha, &beta)?;
    let half = rat(1, 2);
    Ok(HypWave::new(alpha * &half, beta * &half, poly, Rational::one()))
}

/// Gegenbauer tower mapped onto the sech² well of depth `n′ = p + q − 1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct GegenbauerSpectrum {
    pub n_prime: Rational,
    pub m_prime: Rational,
    pub levels: Vec<SpectrumEntry>,
    /// Level `n = p`, with energy `−m′²`.
    pub target: SpectrumEntry,
    /// The well is reflectionless exactly when `n′` is an integer.
    pub reflectionless: bool,
}

pub fn gegenbauer_spectrum(p: u32, q: &Rational) -> Result<GegenbauerSpectrum> {
    let half = rat(1, 2);
    if q <= &half {
        return Err(Error::NoBoundState(format!(
            "q = {q} must exceed 1/2 for a decaying target state"
        )));
    }
    let n_prime = int(p as i64) + q - &half;
    let m_prime = q - &half;
    let levels = poschl_teller_spectrum(&n_prime)?;
    let target = levels
        .iter()
        .find(|e| e.n == p && e.kind == LevelKind::Bound)
        .cloned()
        .ok_or_else(|| Error::NoBoundState(format!("level p = {p} missing")))?;
    debug_assert_eq!(target.energy, -(&m_prime * &m_prime));
    Ok(GegenbauerSpectrum {
        reflectionless: n_prime.is_integer(),
        n_prime,
        m_prime,
        levels,
        target,
    })
}

/// Which form of the γ-deformed zero-energy problem to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeformedForm {
    /// Re-derived from the angular equation: potential
    /// `−[n′(n′+1) sech² w − m² − γm tanh w]/(γz+1)²` and solution
    /// `sech^m w · P_n^{(α,β)}(−tanh w)`, the argument being `cos θ`.
    Derived,
    /// Potential `−[n′(n′+1) sech² w + m² + γm tanh w]/(γz+1)²` with solution
    /// `sech^m w · P_n^{(α,β)}(tanh w)`, as the closed form is usually quoted.
    /// Kept to document that it does not solve the equation.
    AsQuoted,
}

fn deformed_params(alpha: f64, beta: f64, n: u32) -> Result<(MapParams, f64, f64)> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::NonFinite(format!("alpha = {alpha}, beta = {beta}")));
    }
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::InvalidParameter(format!(
            "Jacobi parameters must exceed -1, got alpha = {alpha}, beta = {beta}"
        )));
    }
    let m = 0.5 * (alpha + beta);
    Ok((MapParams::new(beta - alpha)?, m, n as f64 + m))
}

fn deformed_potential(alpha: f64, beta: f64, n: u32, form: DeformedForm, z: f64) -> Result<f64> {
    let (map, m, n_prime) = deformed_params(alpha, beta, n)?;
    let w = w_of_z(map, z)?;
    let gamma = if map.is_gudermannian() { 0.0 } else { map.gamma };
    let jac = gamma * z + 1.0;
    let sech = 1.0 / w.cosh();
    let well = n_prime * (n_prime + 1.0) * sech * sech;
    let centrifugal = m * m + gamma * m * w.tanh();
    let bracket = match form {
        DeformedForm::Derived => well - centrifugal,
        DeformedForm::AsQuoted => well + centrifugal,
    };
    Ok(-bracket / (jac * jac))
}

fn deformed_solution(alpha: f64, beta: f64, n: u32, form: DeformedForm, z: f64) -> Result<f64> {
    let (map, m, _) = deformed_params(alpha, beta, n)?;
    let w = w_of_z(map, z)?;
    let t = w.tanh();
    let x = match form {
        DeformedForm::Derived => -t,
        DeformedForm::AsQuoted => t,
    };
    Ok((1.0 / w.cosh()).powf(m) * jacobi_eval(n, alpha, beta, x))
}

/// Candidate zero-energy solution `v_n(z)` of the γ-deformed problem.
pub fn gamma_deformed_solution(alpha: f64, beta: f64, n: u32, z: f64) -> Result<f64> {
    deformed_solution(alpha, beta, n, DeformedForm::Derived, z)
}

/// `sup |−v″ + V v|` over the interior of `grid`, with `v″` from the
/// centered five-point stencil.
pub fn gamma_deformed_residual(alpha: f64, beta: f64, n: u32, grid: &Grid) -> Result<f64> {
    gamma_deformed_residual_with(DeformedForm::Derived, alpha, beta, n, grid)
}

pub fn gamma_deformed_residual_with(
    form: DeformedForm,
    alpha: f64,
    beta: f64,
    n: u32,
    grid: &Grid,
) -> Result<f64> {
    let (map, _, _) = deformed_params(alpha, beta, n)?;
    if grid.points() < 5 {
        return Err(Error::InvalidParameter("residual needs at least 5 grid points".into()));
    }
    if !map.is_gudermannian() {
        let margin = crate::coordinate_maps::DEFAULT_CHART_MARGIN;
        for z in [grid.z_min(), grid.z_max()] {
            if map.gamma * z + 1.0 < margin {
                return Err(Error::OutOfChart(format!(
                    "grid endpoint z = {z} touches the singular point z = {}",
                    -1.0 / map.gamma
                )));
            }
        }
    }
    let nodes = grid.nodes();
    let v = nodes
        .iter()
        .map(|&z| deformed_solution(alpha, beta, n, form, z))
        .collect::<Result<Vec<_>>>()?;
    let h = grid.spacing();
    let mut sup = 0.0f64;
    for i in 2..v.len() - 2 {
        let pot = deformed_potential(alpha, beta, n, form, nodes[i])?;
        let r = -second_derivative_5pt(&v, i, h) + pot * v[i];
        sup = sup.max(r.abs());
    }
    Ok(sup)
}

/// Chart-respecting grid for the deformed problem: `γz + 1 ∈ [1/2, 4]`
/// (the image of `w ∈ [−ln 2/γ, ln 4/γ]`), or `z ∈ [−3, 3]` when `γ = 0`.
pub fn deformed_default_grid(alpha: f64, beta: f64, h: f64) -> Result<Grid> {
    let map = MapParams::new(beta - alpha)?;
    if map.is_gudermannian() {
        return Grid::with_step(-3.0, 3.0, h);
    }
    let g = map.gamma;
    let (a, b) = ((0.5 - 1.0) / g, (4.0 - 1.0) / g);
    Grid::with_step(a.min(b), a.max(b), h)
}
