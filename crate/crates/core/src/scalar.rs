//! Scalar rings: Gaussian rationals and Laurent polynomials in the formal
//! parameter `hbar` over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

/// An element of Q(i): `re + im*i` with arbitrary-precision rational parts.
///
/// `BigRational` keeps both parts in lowest terms with positive denominator,
/// so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The rational part, provided the value is real.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_real() {
            Some(&self.re)
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`; zero exactly when the value is zero.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Exact division; `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.checked_inv().map(|inv| self * &inv)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl_owned_variants!(GaussianRational, Add, add);
impl_owned_variants!(GaussianRational, Sub, sub);
impl_owned_variants!(GaussianRational, Mul, mul);

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

/// `i^k` for any integer `k` (period four).
pub fn i_pow(k: i64) -> GaussianRational {
    match k.rem_euclid(4) {
        0 => GaussianRational::one(),
        1 => GaussianRational::i(),
        2 => -GaussianRational::one(),
        _ => -GaussianRational::i(),
    }
}

/// `2^k` as an exact rational for any integer `k`.
pub fn pow2(k: i64) -> BigRational {
    let two = BigInt::from(2);
    if k >= 0 {
        BigRational::from_integer(two.pow(k as u32))
    } else {
        BigRational::new(BigInt::one(), two.pow((-k) as u32))
    }
}

/// A Laurent polynomial in the formal parameter `hbar` with Gaussian-rational
/// coefficients. This is the universal scalar ring of the crate: it carries the
/// `(i*hbar)^k` prefactors of both star-products and the `1/(i*hbar)` of the
/// star-commutator without any quotient construction.
///
/// Stored sparsely as exponent -> coefficient with no zero entries; the empty
/// map is zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HScalar {
    terms: BTreeMap<i64, GaussianRational>,
}

impl HScalar {
    pub fn zero() -> Self {
        HScalar::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_gaussian(GaussianRational::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_ratio(num, den))
    }

    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    /// `c * hbar^k`.
    pub fn monomial(c: GaussianRational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        HScalar { terms }
    }

    pub fn hbar() -> Self {
        Self::hbar_pow(1)
    }

    pub fn hbar_pow(k: i64) -> Self {
        Self::monomial(GaussianRational::one(), k)
    }

    /// `(i*hbar)^k` for any integer `k`.
    pub fn ih_pow(k: i64) -> Self {
        Self::monomial(i_pow(k), k)
    }

    /// Coefficient of `hbar^k` (zero if absent).
    pub fn coeff(&self, k: i64) -> GaussianRational {
        self.terms.get(&k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// The Gaussian-rational value, provided no genuine `hbar` power occurs.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// The plain rational value, provided the scalar is `hbar`-free and real.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_gaussian()
            .and_then(|g| g.as_rational().cloned())
    }

    fn insert(&mut self, k: i64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        HScalar { terms }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale_gaussian(&GaussianRational::from_rational(r.clone()))
    }

    /// Multiplies by `c * hbar^k`.
    pub fn mul_monomial(&self, c: &GaussianRational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, v)| (*e + k, v * c)).collect();
        HScalar { terms }
    }

    /// Exact division by `c * hbar^k`; `None` when `c == 0`.
    pub fn div_monomial(&self, c: &GaussianRational, k: i64) -> Option<Self> {
        let inv = c.checked_inv()?;
        Some(self.mul_monomial(&inv, -k))
    }

    /// Drops every term of `hbar`-degree above `max_order`.
    pub fn truncate_hbar(&self, max_order: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| **k <= max_order)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        HScalar { terms }
    }

    /// Coefficient of `hbar^k` as an `hbar`-free scalar.
    pub fn hbar_component(&self, k: i64) -> Self {
        Self::from_gaussian(self.coeff(k))
    }
}

impl Add<&HScalar> for &HScalar {
    type Output = HScalar;
    fn add(self, rhs: &HScalar) -> HScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, c.clone());
        }
        out
    }
}

impl Sub<&HScalar> for &HScalar {
    type Output = HScalar;
    fn sub(self, rhs: &HScalar) -> HScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, -c);
        }
        out
    }
}

impl Mul<&HScalar> for &HScalar {
    type Output = HScalar;
    fn mul(self, rhs: &HScalar) -> HScalar {
        let mut out = HScalar::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.insert(ka + kb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &HScalar {
    type Output = HScalar;
    fn neg(self) -> HScalar {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c)).collect();
        HScalar { terms }
    }
}

impl Neg for HScalar {
    type Output = HScalar;
    fn neg(self) -> HScalar {
        -&self
    }
}

impl_owned_variants!(HScalar, Add, add);
impl_owned_variants!(HScalar, Sub, sub);
impl_owned_variants!(HScalar, Mul, mul);
