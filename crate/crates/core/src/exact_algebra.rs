//! Exact arithmetic on closed-form wavefunctions in the variable `t = tanh z`.
//!
//! Every eigenfunction handled by this crate has the shape
//!
//! ```text
//! c · (1 − t)^a · (1 + t)^b · P(t)
//! ```
//!
//! with rational `a`, `b`, `c` and a polynomial `P` with rational
//! coefficients. Since `d/dz = (1 − t²) d/dt`, differentiation keeps the
//! exponents fixed and only rewrites the polynomial part, so ladder
//! operators and Schrödinger residuals reduce to polynomial identities.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::spectra::PotentialFamily;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// `num / den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"5/2"`, `"-3"`, `"0.25"` or `"1e-3"` style input into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse '{s}' as a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if s.contains('/') {
        let r = Rational::from_str(s).map_err(|_| bad())?;
        return Ok(r);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, f),
        None => (digits, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{whole}{frac}");
    let numer = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Polynomial in `t = tanh z`; `coeffs[i]` multiplies `t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TanhPoly {
    coeffs: Vec<Rational>,
}

impl TanhPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = TanhPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        TanhPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `1 − t²`, i.e. `sech² z`.
    pub fn one_minus_t2() -> Self {
        Self::from_ints(&[1, 0, -1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial at −1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn mul_t(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// `P(−t)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient by `(t − root)`, or `None` if `root` is not a root.
    pub fn div_linear(&self, root: &Rational) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // synthetic division, highest degree first
        let n = self.coeffs.len();
        let mut quotient = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return value.is_zero().then(|| Self::new(quotient));
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// `P(−t) = sign · P(t)` for some sign; `Some(+1)`, `Some(−1)` or `None`.
    pub fn parity(&self) -> Option<i8> {
        let r = self.reflect();
        if r == *self {
            Some(1)
        } else if r == -self {
            Some(-1)
        } else {
            None
        }
    }
}

impl Add for &TanhPoly {
    type Output = TanhPoly;
    fn add(self, rhs: &TanhPoly) -> TanhPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TanhPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &TanhPoly {
    type Output = TanhPoly;
    fn sub(self, rhs: &TanhPoly) -> TanhPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TanhPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &TanhPoly {
    type Output = TanhPoly;
    fn mul(self, rhs: &TanhPoly) -> TanhPoly {
        if self.is_zero() || rhs.is_zero() {
            return TanhPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TanhPoly::new(out)
    }
}

impl Neg for &TanhPoly {
    type Output = TanhPoly;
    fn neg(self) -> TanhPoly {
        TanhPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for TanhPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Closed-form wave `prefactor · (1 − t)^a · (1 + t)^b · poly(t)`, `t = tanh z`.
///
/// Values are always canonical: `poly` is monic and divisible by neither
/// `1 − t` nor `1 + t`, with the overall scale carried by `prefactor`. The
/// zero wave has `prefactor = 0`, empty `poly` and zero exponents. Two
/// canonical waves are proportional exactly when their exponents and
/// polynomials coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypWave {
    a: Rational,
    b: Rational,
    poly: TanhPoly,
    prefactor: Rational,
}

impl HypWave {
    pub fn new(a: Rational, b: Rational, poly: TanhPoly, prefactor: Rational) -> Self {
        HypWave {
            a,
            b,
            poly,
            prefactor,
        }
        .canonical()
    }

    pub fn zero() -> Self {
        HypWave {
            a: Rational::zero(),
            b: Rational::zero(),
            poly: TanhPoly::zero(),
            prefactor: Rational::zero(),
        }
    }

    /// `sech^m z = (1 − t)^{m/2} (1 + t)^{m/2}`.
    pub fn sech_power(m: &Rational) -> Self {
        let half = m / int(2);
        Self::new(half.clone(), half, TanhPoly::one(), Rational::one())
    }

    pub fn from_poly(poly: TanhPoly) -> Self {
        Self::new(Rational::zero(), Rational::zero(), poly, Rational::one())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn poly(&self) -> &TanhPoly {
        &self.poly
    }

    pub fn prefactor(&self) -> &Rational {
        &self.prefactor
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero() || self.poly.is_zero()
    }

    /// `prefactor · poly`, the full polynomial factor multiplying the weight.
    pub fn scaled_poly(&self) -> TanhPoly {
        self.poly.scale(&self.prefactor)
    }

    /// Pulls `(1 ∓ t)` factors out of the polynomial into the exponents and
    /// moves the leading coefficient into the prefactor.
    pub fn canonical(self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let HypWave {
            mut a,
            mut b,
            mut poly,
            mut prefactor,
        } = self;
        let one = Rational::one();
        let minus_one = -Rational::one();
        // (1 − t) = −(t − 1)
        while let Some(q) = poly.div_linear(&one) {
            poly = -&q;
            a += Rational::one();
        }
        while let Some(q) = poly.div_linear(&minus_one) {
            poly = q;
            b += Rational::one();
        }
        let lead = poly.leading_coeff().cloned().expect("nonzero polynomial");
        poly = poly.scale(&lead.recip());
        prefactor *= lead;
        HypWave {
            a,
            b,
            poly,
            prefactor,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            self.a.clone(),
            self.b.clone(),
            self.poly.clone(),
            &self.prefactor * c,
        )
    }

    /// Multiplies by `(1 − t)^da (1 + t)^db`.
    pub fn mul_weight(&self, da: &Rational, db: &Rational) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(
            &self.a + da,
            &self.b + db,
            self.poly.clone(),
            self.prefactor.clone(),
        )
    }

    pub fn mul_poly(&self, p: &TanhPoly) -> Self {
        Self::new(
            self.a.clone(),
            self.b.clone(),
            &self.poly * p,
            self.prefactor.clone(),
        )
    }

    /// Rewrites `self` with the (smaller) exponents `a`, `b`, returning the
    /// full polynomial factor. Requires `self.a − a` and `self.b − b` to be
    /// nonnegative integers.
    fn poly_at(&self, a: &Rational, b: &Rational) -> Option<TanhPoly> {
        let da = &self.a - a;
        let db = &self.b - b;
        if !da.is_integer() || !db.is_integer() || da.is_negative() || db.is_negative() {
            return None;
        }
        let da = da.to_integer().to_u32()?;
        let db = db.to_integer().to_u32()?;
        let one_minus = TanhPoly::from_ints(&[1, -1]).pow(da);
        let one_plus = TanhPoly::from_ints(&[1, 1]).pow(db);
        Some(&(&self.scaled_poly() * &one_minus) * &one_plus)
    }

    /// Exact sum; the exponents must differ by integers.
    pub fn checked_add(&self, other: &HypWave) -> Result<HypWave> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let a = if self.a < other.a { &self.a } else { &other.a }.clone();
        let b = if self.b < other.b { &self.b } else { &other.b }.clone();
        let mismatch = || {
            Error::NotProportional(format!(
                "exponents ({}, {}) and ({}, {}) differ by non-integers",
                self.a, self.b, other.a, other.b
            ))
        };
        let p = self.poly_at(&a, &b).ok_or_else(mismatch)?;
        let q = other.poly_at(&a, &b).ok_or_else(mismatch)?;
        Ok(HypWave::new(a, b, &p + &q, Rational::one()))
    }

    /// Constant `c` with `self = c · other`, if one exists.
    pub fn ratio_to(&self, other: &HypWave) -> Option<Rational> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        (self.a == other.a && self.b == other.b && self.poly == other.poly)
            .then(|| &self.prefactor / &other.prefactor)
    }

    /// `P(−t)` with exponents swapped: the wave evaluated at `−z`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.b.clone(),
            self.a.clone(),
            self.poly.reflect(),
            self.prefactor.clone(),
        )
    }
}

impl fmt::Display for HypWave {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(
            f,
            "({}) * (1-t)^({}) * (1+t)^({}) * [{}]",
            self.prefactor, self.a, self.b, self.poly
        )
    }
}

/// Coefficient `k` of `tanh z` in the raising operator `−d/dz + k tanh z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LadderParam {
    pub k: Rational,
}

impl LadderParam {
    pub fn new(k: Rational) -> Self {
        LadderParam { k }
    }
}

/// `ln(1 − tanh z)` and `ln(1 + tanh z)` without cancellation at large `|z|`.
fn log_one_minus_plus_tanh(z: f64) -> (f64, f64) {
    let softplus = |x: f64| x.max(0.0) + (-x.abs()).exp().ln_1p();
    let ln2 = std::f64::consts::LN_2;
    (ln2 - softplus(2.0 * z), ln2 - softplus(-2.0 * z))
}

/// Numeric value of the wave at `z`.
pub fn eval_wave(w: &HypWave, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::NonFinite(format!("z = {z}")));
    }
    if w.is_zero() {
        return Ok(0.0);
    }
    let t = z.tanh();
    let (ln_minus, ln_plus) = log_one_minus_plus_tanh(z);
    let weight = (to_f64(&w.a) * ln_minus + to_f64(&w.b) * ln_plus).exp();
    Ok(to_f64(&w.prefactor) * weight * w.poly.eval_f64(t))
}

/// Polynomial factor of `d/dz [(1−t)^a (1+t)^b P]` at the same exponents:
/// `[(b − a) − (a + b) t] P + (1 − t²) P'`.
fn derivative_poly(a: &Rational, b: &Rational, p: &TanhPoly) -> TanhPoly {
    let linear = TanhPoly::new(vec![b - a, -(a + b)]);
    &(&linear * p) + &(&TanhPoly::one_minus_t2() * &p.derivative())
}

pub fn differentiate_z(w: &HypWave) -> HypWave {
    if w.is_zero() {
        return HypWave::zero();
    }
    HypWave::new(
        w.a.clone(),
        w.b.clone(),
        derivative_poly(&w.a, &w.b, &w.poly),
        w.prefactor.clone(),
    )
}

/// `(−d/dz + k tanh z) w`.
pub fn apply_ladder(k: &LadderParam, w: &HypWave) -> HypWave {
    if w.is_zero() {
        return HypWave::zero();
    }
    let d = derivative_poly(&w.a, &w.b, &w.poly);
    let kt = w.poly.mul_t().scale(&k.k);
    HypWave::new(w.a.clone(), w.b.clone(), &kt - &d, w.prefactor.clone())
}

/// `(d/dz + k tanh z) w`, the lowering partner of [`apply_ladder`].
pub fn apply_lowering(k: &LadderParam, w: &HypWave) -> HypWave {
    if w.is_zero() {
        return HypWave::zero();
    }
    let d = derivative_poly(&w.a, &w.b, &w.poly);
    let kt = w.poly.mul_t().scale(&k.k);
    HypWave::new(w.a.clone(), w.b.clone(), &kt + &d, w.prefactor.clone())
}

/// Unnormalized `n`-th bound state of the `−n′(n′+1) sech² z` well:
/// `A†(n′) A†(n′−1) ⋯ A†(n′−n+1) sech^{n′−n} z`.
pub fn ladder_chain(n_prime: &Rational, n: u32) -> Result<HypWave> {
    let seed_power = n_prime - int(n as i64);
    // n′ = n gives the bounded threshold state at E = 0
    if seed_power.is_negative() {
        return Err(Error::NoBoundState(format!(
            "n' - n = {seed_power} must not be negative (n' = {n_prime}, n = {n})"
        )));
    }
    let mut w = HypWave::sech_power(&seed_power);
    // innermost operator first: k = n′ − n + 1, …, n′
    for j in (0..n).rev() {
        let k = LadderParam::new(n_prime - int(j as i64));
        w = apply_ladder(&k, &w);
    }
    Ok(w)
}

/// Polynomial numerator of `(−d²/dz² + V − E) w` after dividing out the
/// weight `(1 − t)^a (1 + t)^b` of `w`. It vanishes exactly when `w` is an
/// eigenfunction with eigenvalue `E`.
pub fn eigen_residual_symbolic(w: &HypWave, fam: &PotentialFamily, e: &Rational) -> Result<TanhPoly> {
    let v = fam.tanh_polynomial()?;
    if w.is_zero() {
        return Ok(TanhPoly::zero());
    }
    let first = derivative_poly(&w.a, &w.b, &w.poly);
    let second = derivative_poly(&w.a, &w.b, &first);
    let shifted = &v - &TanhPoly::constant(e.clone());
    let residual = &(&shifted * &w.poly) - &second;
    Ok(residual.scale(&w.prefactor))
}
