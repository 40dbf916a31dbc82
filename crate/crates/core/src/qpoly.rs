//! Polynomials in the position variable `q` over the `hbar`-Laurent scalar
//! ring. These are the coefficient functions of phase-space symbols and the
//! values of tensor densities.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::BigRational;

use crate::scalar::HScalar;

/// Sparse polynomial in `q` with `HScalar` coefficients. Exponents are
/// non-negative; no zero coefficients are stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    terms: BTreeMap<u32, HScalar>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(HScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: HScalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(HScalar::from_int(n))
    }

    /// `c * q^n`.
    pub fn monomial(c: HScalar, n: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        QPoly { terms }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(n: u32) -> Self {
        Self::monomial(HScalar::one(), n)
    }

    /// Degree in `q`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, n: u32) -> HScalar {
        self.terms.get(&n).cloned().unwrap_or_else(HScalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &HScalar)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    /// The constant value, provided the polynomial has no genuine `q` power.
    pub fn as_constant(&self) -> Option<HScalar> {
        match self.degree() {
            None => Some(HScalar::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    fn insert(&mut self, n: u32, c: HScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(n) {
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

    /// Formal derivative d/dq.
    pub fn derivative(&self) -> Self {
        let mut out = QPoly::zero();
        for (n, c) in &self.terms {
            if *n > 0 {
                out.insert(n - 1, c.scale_rational(&BigRational::from_integer((*n).into())));
            }
        }
        out
    }

    /// `k`-fold derivative.
    pub fn derivative_n(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = out.derivative();
        }
        out
    }

    pub fn scale(&self, c: &HScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = QPoly::zero();
        for (n, v) in &self.terms {
            out.insert(*n, v * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&HScalar::from_rational(r.clone()))
    }

    pub fn truncate_hbar(&self, max_order: i64) -> Self {
        let mut out = QPoly::zero();
        for (n, v) in &self.terms {
            out.insert(*n, v.truncate_hbar(max_order));
        }
        out
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.insert(*n, c.clone());
        }
        out
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.insert(*n, -c);
        }
        out
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (na, ca) in &self.terms {
            for (nb, cb) in &rhs.terms {
                out.insert(na + nb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        let terms = self.terms.iter().map(|(n, c)| (*n, -c)).collect();
        QPoly { terms }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl_owned_variants!(QPoly, Add, add);
impl_owned_variants!(QPoly, Sub, sub);
impl_owned_variants!(QPoly, Mul, mul);
