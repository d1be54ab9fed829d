//! Factorization `H₁ = A†A`, `H₂ = AA†` with `A = d/dz + W`, `A† = −d/dz + W`
//! (units with `ħ²/2m = 1`), partner potentials `V₁,₂ = W² ∓ W′`, and the
//! shape-invariance bookkeeping for the `W = k tanh z` family.
//!
//! The factorization-native potential `V₁(z; k) = k² − k(k+1) sech² z` has
//! its ground state at zero energy. The sech² well `−k(k+1) sech² z` used by
//! [`crate::spectra`] is the same potential lowered by `k²`; the shift is
//! carried explicitly in [`PartnerPair::well_offset`].

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::{apply_lowering, int, to_f64, HypWave, LadderParam, Rational, TanhPoly};
use crate::numeric_oracle::{Grid, Samples};

#[derive(Clone, Debug, PartialEq)]
pub enum Superpotential {
    /// `W(z) = k tanh z + s`.
    ClosedForm { k: Rational, s: Rational },
    Sampled(Samples),
}

impl Superpotential {
    pub fn tanh(k: Rational) -> Self {
        Superpotential::ClosedForm {
            k,
            s: Rational::zero(),
        }
    }

    /// `W` and `W′` sampled on `grid`; exact for the closed form, centered
    /// differences for sampled input.
    fn on_grid(&self, grid: &Grid) -> Result<(Vec<f64>, Vec<f64>)> {
        match self {
            Superpotential::ClosedForm { k, s } => {
                let (k, s) = (to_f64(k), to_f64(s));
                let nodes = grid.nodes();
                let w = nodes.iter().map(|z| k * z.tanh() + s).collect();
                let dw = nodes
                    .iter()
                    .map(|z| {
                        let sech = 1.0 / z.cosh();
                        k * sech * sech
                    })
                    .collect();
                Ok((w, dw))
            }
            Superpotential::Sampled(samples) => {
                if samples.grid != *grid {
                    return Err(Error::GridMismatch {
                        expected: grid.points(),
                        actual: samples.grid.points(),
                    });
                }
                Ok((samples.values.clone(), samples.derivative().values))
            }
        }
    }
}

/// One partner potential, exact or sampled.
#[derive(Clone, Debug, PartialEq)]
pub enum PartnerPotential {
    /// Polynomial in `t = tanh z`.
    Closed(TanhPoly),
    Sampled(Samples),
}

impl PartnerPotential {
    pub fn at(&self, z: f64) -> Result<f64> {
        match self {
            PartnerPotential::Closed(p) => Ok(p.eval_f64(z.tanh())),
            PartnerPotential::Sampled(s) => s
                .interpolate(z)
                .ok_or_else(|| Error::OutOfChart(format!("z = {z} outside sampled range"))),
        }
    }

    pub fn sample(&self, grid: &Grid) -> Result<Samples> {
        match self {
            PartnerPotential::Closed(p) => Samples::from_fn(grid, |z| p.eval_f64(z.tanh())),
            PartnerPotential::Sampled(s) => {
                if s.grid != *grid {
                    return Err(Error::GridMismatch {
                        expected: grid.points(),
                        actual: s.grid.points(),
                    });
                }
                Ok(s.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartnerPair {
    /// `W² − W′`.
    pub v1: PartnerPotential,
    /// `W² + W′`.
    pub v2: PartnerPotential,
    /// For `W = k tanh z`: `V₁ = −k(k+1) sech² z + well_offset`, i.e. `k²`.
    pub well_offset: Option<Rational>,
}

pub fn partner_potentials(w: &Superpotential) -> Result<PartnerPair> {
    match w {
        Superpotential::ClosedForm { k, s } => {
            let w_poly = TanhPoly::new(vec![s.clone(), k.clone()]);
            let w2 = &w_poly * &w_poly;
            let dw = TanhPoly::one_minus_t2().scale(k);
            Ok(PartnerPair {
                v1: PartnerPotential::Closed(&w2 - &dw),
                v2: PartnerPotential::Closed(&w2 + &dw),
                well_offset: s.is_zero().then(|| k * k),
            })
        }
        Superpotential::Sampled(samples) => {
            let (values, dw) = w.on_grid(&samples.grid)?;
            let v1 = values.iter().zip(&dw).map(|(w, d)| w * w - d).collect();
            let v2 = values.iter().zip(&dw).map(|(w, d)| w * w + d).collect();
            Ok(PartnerPair {
                v1: PartnerPotential::Sampled(Samples::new(samples.grid.clone(), v1)?),
                v2: PartnerPotential::Sampled(Samples::new(samples.grid.clone(), v2)?),
                well_offset: None,
            })
        }
    }
}

/// `sup |V₁ − (W² − W′)|` over the grid of `v1`.
pub fn riccati_residual(v1: &Samples, w: &Superpotential) -> Result<f64> {
    let (values, dw) = w.on_grid(&v1.grid)?;
    Ok(v1
        .values
        .iter()
        .zip(values.iter().zip(&dw))
        .map(|(v, (w, d))| (v - (w * w - d)).abs())
        .fold(0.0, f64::max))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeInvariance {
    /// `R(k) = k² − (k−1)²`.
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub remainder: Rational,
    /// Sup-norm over `z` of the non-constant part of `V₂(z;k) − V₁(z;k−1)`.
    pub constancy: f64,
}

/// `V₂(z; k) − V₁(z; k−1)` for the tanh family, split into its constant
/// and `z`-dependent parts.
pub fn shape_invariance_remainder(k: &Rational) -> Result<ShapeInvariance> {
    let v2 = match partner_potentials(&Superpotential::tanh(k.clone()))?.v2 {
        PartnerPotential::Closed(p) => p,
        PartnerPotential::Sampled(_) => unreachable!("closed form in, closed form out"),
    };
    let v1 = match partner_potentials(&Superpotential::tanh(k - Rational::one()))?.v1 {
        PartnerPotential::Closed(p) => p,
        PartnerPotential::Sampled(_) => unreachable!("closed form in, closed form out"),
    };
    let diff = &v2 - &v1;
    let remainder = diff.coeff(0);
    let mut varying = diff.coeffs().to_vec();
    if let Some(c) = varying.first_mut() {
        *c = Rational::zero();
    }
    let varying = TanhPoly::new(varying);
    let constancy = if varying.is_zero() {
        0.0
    } else {
        // t = tanh z sweeps (−1, 1)
        (0..=2000)
            .map(|i| varying.eval_f64(-1.0 + i as f64 / 1000.0).abs())
            .fold(0.0, f64::max)
    };
    Ok(ShapeInvariance {
        remainder,
        constancy,
    })
}

/// `A(k) sech^k z` with `A = d/dz + k tanh z`; the returned polynomial
/// factor is zero when the ground state is annihilated.
pub fn annihilation_check(k: &Rational) -> Result<TanhPoly> {
    if !k.is_positive() {
        return Err(Error::InvalidParameter(format!("k = {k} must be positive")));
    }
    let ground = HypWave::sech_power(k);
    Ok(apply_lowering(&LadderParam::new(k.clone()), &ground).scaled_poly())
}

/// Levels of `V₁(z; k)` from the shape-invariance sum
/// `E_n = Σ_{j<n} R(k − j)`, for `n < k`.
pub fn shape_invariant_levels(k: &Rational) -> Result<Vec<Rational>> {
    let mut levels = Vec::new();
    let mut energy = Rational::zero();
    let mut n = 0i64;
    while &int(n) < k {
        levels.push(energy.clone());
        let a = k - int(n);
        energy += shape_invariance_remainder(&a)?.remainder;
        n += 1;
    }
    Ok(levels)
}
