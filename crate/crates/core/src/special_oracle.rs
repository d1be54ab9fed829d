//! Jacobi, Gegenbauer and associated Legendre polynomials from their
//! three-term recurrences, in exact rational arithmetic, and the two
//! proportionality identities tying them to the ladder construction.
//!
//! No Condon–Shortley phase is used: `P_l^m(t) = (1 − t²)^{m/2} dᵐP_l/dtᵐ`.

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{int, ladder_chain, rat, HypWave, Rational, TanhPoly};

#[derive(Clone, Debug, PartialEq)]
pub enum PolyFamily {
    Jacobi { alpha: Rational, beta: Rational },
    Gegenbauer { q: Rational },
    AssocLegendre { m: u32 },
}

/// A classical polynomial together with its family and degree.
///
/// For `AssocLegendre` the stored coefficients are those of `dᵐP_l/dtᵐ`,
/// the polynomial factor multiplying `(1 − t²)^{m/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTriple {
    pub family: PolyFamily,
    pub degree: u32,
    pub coefficients: TanhPoly,
}

impl PolyTriple {
    pub fn build(family: PolyFamily, degree: u32) -> Result<Self> {
        let coefficients = match &family {
            PolyFamily::Jacobi { alpha, beta } => jacobi_poly(degree, alpha, beta)?,
            PolyFamily::Gegenbauer { q } => gegenbauer_poly(degree, q)?,
            PolyFamily::AssocLegendre { m } => {
                if *m > degree {
                    return Err(Error::InvalidParameter(format!("m = {m} > l = {degree}")));
                }
                legendre_derivative(degree, *m)
            }
        };
        Ok(PolyTriple {
            family,
            degree,
            coefficients,
        })
    }
}

fn check_jacobi(alpha: &Rational, beta: &Rational) -> Result<()> {
    let minus_one = -Rational::one();
    if alpha <= &minus_one || beta <= &minus_one {
        return Err(Error::InvalidParameter(format!(
            "Jacobi parameters must exceed -1, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(())
}

/// `P_n^{(α,β)}(t)` with exact coefficients.
pub fn jacobi_poly(n: u32, alpha: &Rational, beta: &Rational) -> Result<TanhPoly> {
    check_jacobi(alpha, beta)?;
    let one = Rational::one();
    let two = int(2);
    let p0 = TanhPoly::one();
    if n == 0 {
        return Ok(p0);
    }
    let ab = alpha + beta;
    // (α+1) + (α+β+2)(t−1)/2
    let p1 = TanhPoly::new(vec![
        alpha + &one - (&ab + &two) / &two,
        (&ab + &two) / &two,
    ]);
    let (mut prev, mut cur) = (p0, p1);
    for k in 2..=n {
        let k = int(k as i64);
        let s = &two * &k + &ab; // 2k + α + β
        let denom = &two * &k * (&k + &ab) * (&s - &two);
        let lin = TanhPoly::new(vec![alpha * alpha - beta * beta, &s * (&s - &two)]);
        let first = (&lin * &cur).scale(&((&s - &one) / &denom));
        let c2 = &two * (&k + alpha - &one) * (&k + beta - &one) * &s / &denom;
        let next = &first - &prev.scale(&c2);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `C_p^{(q)}(t)` with exact coefficients.
pub fn gegenbauer_poly(p: u32, q: &Rational) -> Result<TanhPoly> {
    if q <= &rat(-1, 2) || q.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "Gegenbauer parameter must satisfy q > -1/2, q != 0; got {q}"
        )));
    }
    let two = int(2);
    let c0 = TanhPoly::one();
    if p == 0 {
        return Ok(c0);
    }
    let c1 = TanhPoly::t().scale(&(&two * q));
    let (mut prev, mut cur) = (c0, c1);
    for k in 2..=p {
        let k = int(k as i64);
        let a = &two * (&k + q - Rational::one()) / &k;
        let b = (&k + &two * q - &two) / &k;
        let next = &cur.mul_t().scale(&a) - &prev.scale(&b);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

pub fn legendre_poly(l: u32) -> TanhPoly {
    jacobi_poly(l, &Rational::zero(), &Rational::zero()).expect("α = β = 0 is admissible")
}

fn legendre_derivative(l: u32, m: u32) -> TanhPoly {
    (0..m).fold(legendre_poly(l), |p, _| p.derivative())
}

/// `(1 − t²)^{m/2} dᵐP_l/dtᵐ` as a closed-form wave.
pub fn assoc_legendre(l: u32, m: u32) -> Result<HypWave> {
    if m > l {
        return Err(Error::InvalidParameter(format!("m = {m} exceeds l = {l}")));
    }
    let half = rat(m as i64, 2);
    Ok(HypWave::new(
        half.clone(),
        half,
        legendre_derivative(l, m),
        Rational::one(),
    ))
}

/// Constant `c` with `P_l^m(tanh z) = c · v_{l−m}(z; l)`, the right side
/// built by the ladder chain.
pub fn check_legendre_identity(l: u32, m: u32) -> Result<Rational> {
    if m < 1 || m > l {
        return Err(Error::InvalidParameter(format!("need 1 <= m <= l, got l = {l}, m = {m}")));
    }
    let lhs = assoc_legendre(l, m)?;
    let rhs = ladder_chain(&int(l as i64), l - m)?;
    lhs.ratio_to(&rhs)
        .ok_or_else(|| Error::NotProportional(format!("P_{l}^{m} = {lhs} vs ladder state {rhs}")))
}

/// Constant `c` with `C_p^q(t) = c · (1 − t²)^{(1−2q)/4} P_{p+q−1/2}^{q−1/2}(t)`.
pub fn check_gegenbauer_identity(p: u32, q: &Rational) -> Result<Rational> {
    let half = rat(1, 2);
    let m = q - &half;
    if !m.is_integer() || m < Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "q = {q} must be a half-integer >= 3/2"
        )));
    }
    let m = m.to_integer().to_u32().ok_or_else(|| Error::InvalidParameter(format!("q = {q} too large")))?;
    let l = p + m;
    let weight = (Rational::one() - int(2) * q) / int(4);
    let rhs = assoc_legendre(l, m)?.mul_weight(&weight, &weight);
    let lhs = HypWave::from_poly(gegenbauer_poly(p, q)?);
    lhs.ratio_to(&rhs)
        .ok_or_else(|| Error::NotProportional(format!("C_{p}^{q} = {lhs} vs {rhs}")))
}

/// `(1 − t²)P″ + [β − α − (α+β+2)t]P′ + n(n+α+β+1)P`.
pub fn jacobi_ode_residual(p: &TanhPoly, n: u32, alpha: &Rational, beta: &Rational) -> TanhPoly {
    let n = int(n as i64);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let drift = TanhPoly::new(vec![beta - alpha, -(alpha + beta + int(2))]);
    let eig = &n * (&n + alpha + beta + Rational::one());
    &(&(&TanhPoly::one_minus_t2() * &d2) + &(&drift * &d1)) + &p.scale(&eig)
}

/// `(1 − t²)C″ − (2q+1)tC′ + p(p+2q)C`.
pub fn gegenbauer_ode_residual(c: &TanhPoly, p: u32, q: &Rational) -> TanhPoly {
    let p = int(p as i64);
    let d1 = c.derivative();
    let d2 = d1.derivative();
    let drift = TanhPoly::new(vec![Rational::zero(), -(int(2) * q + Rational::one())]);
    let eig = &p * (&p + int(2) * q);
    &(&(&TanhPoly::one_minus_t2() * &d2) + &(&drift * &d1)) + &c.scale(&eig)
}

/// `P_n^{(α,β)}(x)` in floating point, same recurrence as [`jacobi_poly`].
pub fn jacobi_eval(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let ab = alpha + beta;
    let p1 = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
    let (mut prev, mut cur) = (p0, p1);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let denom = 2.0 * k * (k + ab) * (s - 2.0);
        let next = ((s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta) * cur
            - 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s * prev)
            / denom;
        prev = cur;
        cur = next;
    }
    cur
}

/// Value at `t = 1`, `binom(n+α, n)`, used as an independent normalization check.
pub fn jacobi_at_one(n: u32, alpha: &Rational) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| {
        let k = int(k as i64);
        acc * (alpha + &k) / k
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_poly(0, &int(3), &int(4)).unwrap(), TanhPoly::one());
        assert_eq!(jacobi_poly(1, &int(0), &int(0)).unwrap(), TanhPoly::t());
        assert_eq!(
            jacobi_poly(1, &int(1), &int(2)).unwrap(),
            TanhPoly::new(vec![rat(-1, 2), rat(5, 2)])
        );
        assert!(jacobi_poly(2, &int(-1), &int(0)).is_err());
    }

    #[test]
    fn legendre_low_degrees() {
        assert_eq!(legendre_poly(2), TanhPoly::new(vec![rat(-1, 2), int(0), rat(3, 2)]));
        assert_eq!(
            legendre_poly(3),
            TanhPoly::new(vec![int(0), rat(-3, 2), int(0), rat(5, 2)])
        );
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer_poly(0, &int(1)).unwrap(), TanhPoly::one());
        assert_eq!(gegenbauer_poly(1, &int(1)).unwrap(), TanhPoly::from_ints(&[0, 2]));
        assert_eq!(gegenbauer_poly(2, &int(1)).unwrap(), TanhPoly::from_ints(&[-1, 0, 4]));
        assert!(gegenbauer_poly(2, &int(0)).is_err());
        assert!(gegenbauer_poly(2, &rat(-1, 2)).is_err());
    }

    #[test]
    fn assoc_legendre_examples() {
        assert_eq!(assoc_legendre(1, 1).unwrap(), HypWave::sech_power(&int(1)));
        assert_eq!(
            assoc_legendre(2, 1).unwrap(),
            HypWave::sech_power(&int(1)).mul_poly(&TanhPoly::from_ints(&[0, 3]))
        );
        assert_eq!(
            assoc_legendre(2, 0).unwrap(),
            HypWave::from_poly(TanhPoly::new(vec![rat(-1, 2), int(0), rat(3, 2)]))
        );
        assert!(assoc_legendre(1, 2).is_err());
    }

    #[test]
    fn legendre_identity_examples() {
        assert_eq!(check_legendre_identity(2, 1).unwrap(), int(1));
        assert_eq!(check_legendre_identity(1, 1).unwrap(), int(1));
        // P_3^2 = 15 t (1 − t²); ladder A†(3) sech² = 5 t sech²
        assert_eq!(check_legendre_identity(3, 2).unwrap(), int(3));
        assert!(check_legendre_identity(2, 0).is_err());
    }

    #[test]
    fn gegenbauer_identity_examples() {
        assert_eq!(check_gegenbauer_identity(1, &rat(3, 2)).unwrap(), int(1));
        assert_eq!(check_gegenbauer_identity(0, &rat(3, 2)).unwrap(), int(1));
        // C_2^{3/2} = (15t² − 3)/2, P_3^1 ∝ (15t² − 3)/2 · sech
        assert_eq!(check_gegenbauer_identity(2, &rat(3, 2)).unwrap(), int(1));
        assert!(check_gegenbauer_identity(1, &int(2)).is_err());
        assert!(check_gegenbauer_identity(1, &rat(1, 2)).is_err());
    }

    #[test]
    fn value_at_one_matches_binomial() {
        for n in 0..8 {
            let a = rat(3, 4);
            let p = jacobi_poly(n, &a, &rat(5, 3)).unwrap();
            assert_eq!(p.eval(&int(1)), jacobi_at_one(n, &a));
        }
    }

    #[test]
    fn float_recurrence_matches_exact() {
        let p = jacobi_poly(5, &rat(1, 2), &rat(3, 2)).unwrap();
        for x in [-0.9, -0.3, 0.0, 0.4, 0.99] {
            assert!((p.eval_f64(x) - jacobi_eval(5, 0.5, 1.5, x)).abs() < 1e-12);
        }
    }

    #[test]
    fn poly_triple_degree() {
        let t = PolyTriple::build(PolyFamily::Jacobi { alpha: int(1), beta: int(2) }, 4).unwrap();
        assert_eq!(t.coefficients.degree(), 4);
        let t = PolyTriple::build(PolyFamily::AssocLegendre { m: 2 }, 5).unwrap();
        assert_eq!(t.coefficients.degree(), 3);
        assert!(PolyTriple::build(PolyFamily::AssocLegendre { m: 6 }, 5).is_err());
    }
}
