//! Numerical cross-checks that share no code path with the exact algebra:
//! a finite-difference Hamiltonian with Sturm-sequence bisection, grid
//! residuals of closed-form waves, and plane-wave scattering by direct
//! integration of the Schrödinger equation.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::{eval_wave, HypWave};
use crate::spectra::PotentialFamily;

/// Default verification box half-width.
pub const DEFAULT_HALF_WIDTH: f64 = 12.0;
pub const DEFAULT_POINTS: usize = 2001;
pub const BISECTION_TOL: f64 = 1e-10;
pub const BISECTION_MAX_ITER: usize = 200;
pub const SCATTER_STEP: f64 = 1e-3;
pub const SCATTER_HALF_WIDTH: f64 = 20.0;
/// Largest allowed |V(±L) − V(±∞)| for a scattering run.
pub const ASYMPTOTE_TOL: f64 = 1e-10;
/// Required agreement of |R|² between step h and h/2.
pub const STEP_HALVING_TOL: f64 = 1e-7;
pub const FLUX_TOL: f64 = 1e-6;

/// Uniform grid `z_min = z_0 < … < z_{points−1} = z_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    z_min: f64,
    z_max: f64,
    points: usize,
}

impl Grid {
    pub fn new(z_min: f64, z_max: f64, points: usize) -> Result<Self> {
        if !z_min.is_finite() || !z_max.is_finite() {
            return Err(Error::NonFinite(format!("grid bounds [{z_min}, {z_max}]")));
        }
        if z_min >= z_max {
            return Err(Error::InvalidParameter(format!(
                "grid requires z_min < z_max, got [{z_min}, {z_max}]"
            )));
        }
        if points < 3 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 3 points, got {points}"
            )));
        }
        Ok(Grid {
            z_min,
            z_max,
            points,
        })
    }

    /// Grid on `[z_min, z_max]` whose spacing is as close as possible to `h`.
    pub fn with_step(z_min: f64, z_max: f64, h: f64) -> Result<Self> {
        if h <= 0.0 || !h.is_finite() {
            return Err(Error::InvalidParameter(format!("grid step must be positive, got {h}")));
        }
        let intervals = ((z_max - z_min) / h).round().max(2.0) as usize;
        Self::new(z_min, z_max, intervals + 1)
    }

    /// `[−12, 12]` with 2001 points.
    pub fn default_box() -> Self {
        Grid {
            z_min: -DEFAULT_HALF_WIDTH,
            z_max: DEFAULT_HALF_WIDTH,
            points: DEFAULT_POINTS,
        }
    }

    pub fn z_min(&self) -> f64 {
        self.z_min
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        (self.z_max - self.z_min) / (self.points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.z_max
        } else {
            self.z_min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.point(i)).collect()
    }
}

/// Function values on a [`Grid`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Samples {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl Samples {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.points() {
            return Err(Error::GridMismatch {
                expected: grid.points(),
                actual: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("sample {i} = {}", values[i])));
        }
        Ok(Samples { grid, values })
    }

    pub fn from_fn(grid: &Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().into_iter().map(f).collect();
        Self::new(grid.clone(), values)
    }

    /// Linear interpolation; `None` outside the grid.
    pub fn interpolate(&self, z: f64) -> Option<f64> {
        let g = &self.grid;
        if !(z >= g.z_min && z <= g.z_max) {
            return None;
        }
        let x = (z - g.z_min) / g.spacing();
        let i = (x.floor() as usize).min(g.points - 2);
        let frac = x - i as f64;
        Some(self.values[i] * (1.0 - frac) + self.values[i + 1] * frac)
    }

    /// First derivative: centered differences inside, second-order one-sided
    /// stencils at the two ends.
    pub fn derivative(&self) -> Samples {
        let h = self.grid.spacing();
        let v = &self.values;
        let n = v.len();
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
        }
        d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
        Samples {
            grid: self.grid.clone(),
            values: d,
        }
    }
}

/// Symmetric tridiagonal matrix; Dirichlet walls are implied beyond the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diagonal.len(),
                off_diagonal.len()
            )));
        }
        Ok(TridiagonalOperator {
            diagonal,
            off_diagonal,
        })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Number of eigenvalues strictly below `lambda`.
    ///
    /// Counts negative pivots of the LDLᵀ factorization of `T − λ`. The
    /// recurrence carries the pivot itself rather than the characteristic
    /// polynomial, so it cannot overflow; exact zero pivots are nudged.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let guard = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diagonal[0] - lambda;
        for i in 0..self.dim() {
            if i > 0 {
                let e = self.off_diagonal[i - 1];
                let prev = if q.abs() < guard { guard.copysign(q) } else { q };
                q = self.diagonal[i] - lambda - e * e / prev;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off_diagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }
}

/// `−d²/dz² + V` with the three-point stencil.
pub fn discretize(fam: &PotentialFamily, grid: &Grid) -> Result<TridiagonalOperator> {
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let diagonal = grid
        .nodes()
        .into_iter()
        .map(|z| fam.potential_at(z).map(|v| 2.0 * inv_h2 + v))
        .collect::<Result<Vec<_>>>()?;
    let off = vec![-inv_h2; grid.points() - 1];
    TridiagonalOperator::new(diagonal, off)
}

/// All eigenvalues strictly below `below`, ascending, by bisection on the
/// Sturm count.
pub fn bound_state_eigenvalues(
    op: &TridiagonalOperator,
    below: f64,
    max_count: usize,
) -> Result<Vec<f64>> {
    if !below.is_finite() {
        return Err(Error::NonFinite(format!("eigenvalue ceiling {below}")));
    }
    let count = op.sturm_count(below);
    if count > max_count {
        return Err(Error::MaxCountExceeded { below, max_count });
    }
    let (lo, _) = op.gershgorin();
    let lo = lo - 1.0;
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        // λ_k is the smallest λ with sturm_count(λ) > k
        let mut a = lo;
        let mut b = below;
        for _ in 0..BISECTION_MAX_ITER {
            if b - a <= BISECTION_TOL {
                break;
            }
            let mid = 0.5 * (a + b);
            if op.sturm_count(mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Centered five-point second derivative at interior index `i`.
pub(crate) fn second_derivative_5pt(v: &[f64], i: usize, h: f64) -> f64 {
    (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h * h)
}

/// `sup |(−D² + V − E) w| / sup |w|` over interior grid points.
///
/// `D²` is the centered five-point stencil, so the truncation error is
/// `O(h⁴)`.
pub fn grid_residual(w: &HypWave, fam: &PotentialFamily, e: f64, grid: &Grid) -> Result<f64> {
    if grid.points() < 5 {
        return Err(Error::InvalidParameter(
            "grid residual needs at least 5 points".into(),
        ));
    }
    if w.is_zero() {
        return Err(Error::Degenerate("wave is identically zero".into()));
    }
    let nodes = grid.nodes();
    let values = nodes
        .iter()
        .map(|&z| eval_wave(w, z))
        .collect::<Result<Vec<_>>>()?;
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Err(Error::Degenerate("wave vanishes on every grid point".into()));
    }
    let h = grid.spacing();
    let mut sup = 0.0f64;
    for i in 2..values.len() - 2 {
        let v = fam.potential_at(nodes[i])?;
        let r = -second_derivative_5pt(&values, i, h) + (v - e) * values[i];
        sup = sup.max(r.abs());
    }
    Ok(sup / scale)
}

/// Outcome of one scattering run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scattering {
    pub k: f64,
    pub half_width: f64,
    pub step: f64,
    /// |R|² at the nominal step.
    pub reflection: f64,
    /// (k_t / k_i) |T|².
    pub transmission: f64,
    /// |R|² + (k_t/k_i)|T|² − 1.
    pub flux_error: f64,
    /// |R|² recomputed with half the step.
    pub reflection_half_step: f64,
}

impl Scattering {
    pub fn flux_ok(&self) -> bool {
        self.flux_error.abs() <= FLUX_TOL
    }
}

/// Integration settings for [`reflection_coefficient`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatterOptions {
    pub step: f64,
}

impl Default for ScatterOptions {
    fn default() -> Self {
        ScatterOptions {
            step: SCATTER_STEP,
        }
    }
}

/// |R|² for a wave of momentum `k` (above the common asymptote) incident from
/// the left.
///
/// A pure transmitted wave `e^{ikz}` is integrated from `+L` back to `−L`
/// with classical fourth-order Runge–Kutta and split into incident and
/// reflected plane waves there.
pub fn reflection_coefficient(
    fam: &PotentialFamily,
    k: f64,
    half_width: f64,
    opts: ScatterOptions,
) -> Result<Scattering> {
    if k <= 0.0 || !k.is_finite() {
        return Err(Error::InvalidParameter(format!("k must be positive, got {k}")));
    }
    if half_width <= 0.0 || !half_width.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "half-width must be positive, got {half_width}"
        )));
    }
    let asymptote = match fam {
        PotentialFamily::PoschlTeller { .. } => 0.0,
        PotentialFamily::RosenMorseII { b, .. } if num_traits::Zero::is_zero(b) => {
            fam.asymptotes().1
        }
        other => {
            return Err(Error::Unsupported(format!(
                "scattering needs a symmetric decaying potential, got {}",
                other.label()
            )))
        }
    };
    for z in [-half_width, half_width] {
        let dev = (fam.potential_at(z)? - asymptote).abs();
        if dev >= ASYMPTOTE_TOL {
            return Err(Error::Numerical(format!(
                "half-width {half_width} too small: |V({z}) - V(inf)| = {dev:e} >= {ASYMPTOTE_TOL:e}"
            )));
        }
    }
    let energy = asymptote + k * k;
    let (r_full, t_full) = integrate_scattering(fam, energy, k, half_width, opts.step)?;
    let (r_half, _) = integrate_scattering(fam, energy, k, half_width, opts.step / 2.0)?;
    if (r_full - r_half).abs() > STEP_HALVING_TOL {
        return Err(Error::Numerical(format!(
            "step-halving check failed: |R|^2 = {r_full:e} at h = {}, {r_half:e} at h/2",
            opts.step
        )));
    }
    Ok(Scattering {
        k,
        half_width,
        step: opts.step,
        reflection: r_full,
        transmission: t_full,
        flux_error: r_full + t_full - 1.0,
        reflection_half_step: r_half,
    })
}

fn integrate_scattering(
    fam: &PotentialFamily,
    energy: f64,
    k: f64,
    half_width: f64,
    step: f64,
) -> Result<(f64, f64)> {
    let steps = (2.0 * half_width / step).round() as usize;
    if steps == 0 {
        return Err(Error::InvalidParameter(format!("step {step} larger than the box")));
    }
    let h = -2.0 * half_width / steps as f64;
    let ik = Complex64::new(0.0, k);
    let mut z = half_width;
    let mut psi = (ik * z).exp();
    let mut dpsi = ik * psi;
    // ψ'' = (V − E) ψ
    let q = |z: f64| -> Result<f64> { Ok(fam.potential_at(z)? - energy) };
    for i in 0..steps {
        let q0 = q(z)?;
        let qm = q(z + 0.5 * h)?;
        let z1 = if i + 1 == steps { -half_width } else { z + h };
        let q1 = q(z1)?;
        let k1p = dpsi;
        let k1d = psi * q0;
        let k2p = dpsi + k1d * (0.5 * h);
        let k2d = (psi + k1p * (0.5 * h)) * qm;
        let k3p = dpsi + k2d * (0.5 * h);
        let k3d = (psi + k2p * (0.5 * h)) * qm;
        let k4p = dpsi + k3d * h;
        let k4d = (psi + k3p * h) * q1;
        psi += (k1p + k2p * 2.0 + k3p * 2.0 + k4p) * (h / 6.0);
        dpsi += (k1d + k2d * 2.0 + k3d * 2.0 + k4d) * (h / 6.0);
        z = z1;
    }
    if !psi.re.is_finite() || !psi.im.is_finite() {
        return Err(Error::Numerical("scattering integration diverged".into()));
    }
    // ψ = A e^{ikz} + B e^{−ikz} at z = −L
    let incident = (psi + dpsi / ik) * 0.5 * (-ik * z).exp();
    let reflected = (psi - dpsi / ik) * 0.5 * (ik * z).exp();
    let r2 = (reflected / incident).norm_sqr();
    let t2 = 1.0 / incident.norm_sqr();
    Ok((r2, t2))
}
