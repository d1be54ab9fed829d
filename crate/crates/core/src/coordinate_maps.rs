//! Changes of variable `θ = f(z)` that remove the first-derivative term.
//!
//! For `γ = 0` this is the Gudermannian chart `θ = 2 arctan eᶻ`, with
//! `sin θ = sech z` and `cos θ = −tanh z`. For `γ ≠ 0` the map is
//! `θ = 2 arctan[(γz + 1)^{1/γ}]`, which is the same chart evaluated at
//! `w = ln(γz + 1)/γ`. All formulas here go through `w`, so the `γ → 0`
//! limit is approached smoothly (`ln_1p`/`expm1`).

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric_oracle::Grid;

/// Below this `|γ|` the Gudermannian formulas are used verbatim.
pub const GAMMA_BRANCH_THRESHOLD: f64 = 1e-7;
/// Grid builders stay this many multiples of `|1/γ|` away from the singular end.
pub const DEFAULT_CHART_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MapParams {
    pub gamma: f64,
}

impl MapParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::NonFinite(format!("gamma = {gamma}")));
        }
        Ok(MapParams { gamma })
    }

    pub fn is_gudermannian(&self) -> bool {
        self.gamma.abs() < GAMMA_BRANCH_THRESHOLD
    }

    /// Open interval of admissible `z`.
    pub fn chart_domain(&self) -> (f64, f64) {
        if self.is_gudermannian() {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else if self.gamma > 0.0 {
            (-1.0 / self.gamma, f64::INFINITY)
        } else {
            (f64::NEG_INFINITY, -1.0 / self.gamma)
        }
    }

    fn check(&self, z: f64) -> Result<()> {
        if !z.is_finite() {
            return Err(Error::NonFinite(format!("z = {z}")));
        }
        if !self.is_gudermannian() && self.gamma * z + 1.0 <= 0.0 {
            return Err(Error::OutOfChart(format!(
                "gamma*z + 1 = {} <= 0 at z = {z}, gamma = {}",
                self.gamma * z + 1.0,
                self.gamma
            )));
        }
        Ok(())
    }

    /// Uniform grid on `[lo, hi]` clipped to the chart, inset from a finite
    /// singular endpoint by `margin · |1/γ|`.
    pub fn chart_grid(&self, lo: f64, hi: f64, points: usize, margin: f64) -> Result<Grid> {
        let (dlo, dhi) = self.chart_domain();
        let inset = margin * (1.0 / self.gamma).abs();
        let lo = if dlo.is_finite() { lo.max(dlo + inset) } else { lo };
        let hi = if dhi.is_finite() { hi.min(dhi - inset) } else { hi };
        Grid::new(lo, hi, points)
    }
}

/// A point of the chart with its angular and hyperbolic images.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MapPoint {
    pub z: f64,
    pub theta: f64,
    pub w: f64,
}

impl MapPoint {
    pub fn at(p: MapParams, z: f64) -> Result<Self> {
        let w = w_of_z(p, z)?;
        Ok(MapPoint {
            z,
            theta: theta_from_w(w),
            w,
        })
    }
}

// θ = 2 arctan eʷ = π/2 + gd(w)
fn theta_from_w(w: f64) -> f64 {
    FRAC_PI_2 + w.sinh().atan()
}

/// `w = ln(γz + 1)/γ`, or `z` itself on the Gudermannian branch.
pub fn w_of_z(p: MapParams, z: f64) -> Result<f64> {
    p.check(z)?;
    if p.is_gudermannian() {
        Ok(z)
    } else {
        Ok((p.gamma * z).ln_1p() / p.gamma)
    }
}

pub fn theta_of_z(p: MapParams, z: f64) -> Result<f64> {
    Ok(theta_from_w(w_of_z(p, z)?))
}

/// Inverse of [`theta_of_z`]: `z = (tan^γ(θ/2) − 1)/γ`, `ln tan(θ/2)` at `γ = 0`.
pub fn z_of_theta(p: MapParams, theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFinite(format!("theta = {theta}")));
    }
    if theta <= 0.0 || theta >= std::f64::consts::PI {
        return Err(Error::OutOfChart(format!("theta = {theta} not in (0, pi)")));
    }
    let log_tan = (theta / 2.0).tan().ln();
    if p.is_gudermannian() {
        Ok(log_tan)
    } else {
        Ok((p.gamma * log_tan).exp_m1() / p.gamma)
    }
}

/// Coefficient of `dv/dz` after the change of variable,
/// `f′ P(f) − f″/f′` with `P(θ) = cot θ − γ / sin θ`.
///
/// Both terms are evaluated independently: `f′ = sin θ · tan^{−γ}(θ/2)` from
/// the chart, `f″/f′ = d f′/dθ`. The coefficient `m` of the angular equation
/// does not enter the first-derivative term.
pub fn first_derivative_coefficient(p: MapParams, _m: f64, z: f64) -> Result<f64> {
    let theta = theta_of_z(p, z)?;
    let gamma = if p.is_gudermannian() { 0.0 } else { p.gamma };
    let half = theta / 2.0;
    let tan_pow = (-gamma * half.tan().ln()).exp();
    let (sin, cos) = theta.sin_cos();
    let f1 = sin * tan_pow;
    let p_of_f = cos / sin - gamma / sin;
    // d/dθ [sin θ tan^{−γ}(θ/2)] = tan^{−γ}(θ/2) [cos θ − γ sin θ / (2 tan(θ/2) cos²(θ/2))]
    let df1_dtheta = tan_pow * (cos - gamma * sin / (2.0 * half.tan() * half.cos().powi(2)));
    Ok(f1 * p_of_f - df1_dtheta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(g: f64) -> MapParams {
        MapParams::new(g).unwrap()
    }

    #[test]
    fn theta_examples() {
        assert!((theta_of_z(params(0.0), 0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((theta_of_z(params(2.0), 0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        let th = theta_of_z(params(2.0), 1.5).unwrap();
        assert!((th - 2.0 * 2f64.atan()).abs() < 1e-14);
        assert!((th - 2.2143).abs() < 1e-4);
    }

    #[test]
    fn z_examples() {
        assert!(z_of_theta(params(0.0), PI / 2.0).unwrap().abs() < 1e-15);
        assert!(z_of_theta(params(1.0), PI / 2.0).unwrap().abs() < 1e-15);
        let z = z_of_theta(params(2.0), 2.0 * 2f64.atan()).unwrap();
        assert!((z - 1.5).abs() < 1e-12);
    }

    #[test]
    fn w_examples() {
        let e = std::f64::consts::E;
        assert!((w_of_z(params(1.0), e - 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(w_of_z(params(0.0), 0.7).unwrap(), 0.7);
        let w = w_of_z(params(2.0), 1.5).unwrap();
        assert!((w - 2f64.ln()).abs() < 1e-15);
        assert!((1.0 / w.cosh() - 0.8).abs() < 1e-15);
        assert!((theta_of_z(params(2.0), 1.5).unwrap().sin() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn chart_violations() {
        assert!(matches!(theta_of_z(params(2.0), -0.5), Err(Error::OutOfChart(_))));
        assert!(matches!(w_of_z(params(-1.0), 1.0), Err(Error::OutOfChart(_))));
        assert!(matches!(z_of_theta(params(1.0), 0.0), Err(Error::OutOfChart(_))));
        assert!(matches!(z_of_theta(params(1.0), PI), Err(Error::OutOfChart(_))));
        assert!(theta_of_z(params(0.0), f64::NAN).is_err());
    }

    #[test]
    fn first_derivative_coefficient_vanishes_at_origin() {
        assert!(first_derivative_coefficient(params(0.0), 1.0, 0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn chart_grid_is_inset() {
        let g = params(2.0).chart_grid(-5.0, 3.0, 11, DEFAULT_CHART_MARGIN).unwrap();
        assert!((g.z_min() - (-0.5 + 0.5e-6)).abs() < 1e-15);
        assert_eq!(g.z_max(), 3.0);
        let g = params(-1.0).chart_grid(-3.0, 3.0, 11, DEFAULT_CHART_MARGIN).unwrap();
        assert!((g.z_max() - (1.0 - 1e-6)).abs() < 1e-15);
    }
}
