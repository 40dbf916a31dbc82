//! Phase-space symbols: Laurent polynomials in the momentum variable `p`
//! whose coefficients are `q`-polynomials. The decomposition into
//! `p`-homogeneous components is the backbone of the exotic product and of
//! the density modules used by the cocycle machinery.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::BigRational;

use crate::qpoly::QPoly;
use crate::scalar::HScalar;

/// A variable of the phase plane.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PhaseVar {
    P,
    Q,
}

/// Sparse sum of components `p^m * f_m(q)` with `m` ranging over the
/// integers. No zero components are stored; equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PhaseFn {
    terms: BTreeMap<i64, QPoly>,
}

/// A single `p`-homogeneous component `p^weight * coeff(q)`, tagged with its
/// homogeneity weight. Under the Poisson action of degree-one symbols these
/// are exactly the tensor densities of the matching weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedDensity {
    pub weight: i64,
    pub coeff: QPoly,
}

impl WeightedDensity {
    pub fn to_phase(&self) -> PhaseFn {
        PhaseFn::from_component(self.weight, self.coeff.clone())
    }
}

impl PhaseFn {
    pub fn zero() -> Self {
        PhaseFn::default()
    }

    pub fn one() -> Self {
        Self::constant(HScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: HScalar) -> Self {
        Self::from_component(0, QPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(HScalar::from_int(n))
    }

    /// `p^m * f(q)`.
    pub fn from_component(m: i64, f: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(m, f);
        }
        PhaseFn { terms }
    }

    /// `c * p^m * q^n`.
    pub fn monomial(m: i64, n: u32, c: HScalar) -> Self {
        Self::from_component(m, QPoly::monomial(c, n))
    }

    pub fn p() -> Self {
        Self::p_pow(1)
    }

    pub fn p_pow(m: i64) -> Self {
        Self::from_component(m, QPoly::one())
    }

    pub fn q() -> Self {
        Self::from_component(0, QPoly::q())
    }

    pub fn q_pow(n: u32) -> Self {
        Self::from_component(0, QPoly::q_pow(n))
    }

    /// The `p`-homogeneous components, ordered by increasing `p`-exponent.
    pub fn components(&self) -> impl Iterator<Item = (i64, &QPoly)> {
        self.terms.iter().map(|(m, f)| (*m, f))
    }

    pub fn weighted_components(&self) -> Vec<WeightedDensity> {
        self.components()
            .map(|(m, f)| WeightedDensity { weight: m, coeff: f.clone() })
            .collect()
    }

    pub fn component(&self, m: i64) -> QPoly {
        self.terms.get(&m).cloned().unwrap_or_else(QPoly::zero)
    }

    /// The coefficient polynomial, provided the symbol is supported in
    /// `p`-degree zero.
    pub fn as_qpoly(&self) -> Option<QPoly> {
        match self.terms.len() {
            0 => Some(QPoly::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Maximal `q`-degree over all components; `None` for the zero symbol.
    pub fn deg_q(&self) -> Option<u32> {
        self.terms.values().filter_map(|f| f.degree()).max()
    }

    fn insert(&mut self, m: i64, f: QPoly) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Exact partial derivative. In `p` the power rule runs over all integer
    /// exponents including the negative ones.
    pub fn partial(&self, var: PhaseVar) -> Self {
        let mut out = PhaseFn::zero();
        match var {
            PhaseVar::P => {
                for (m, f) in &self.terms {
                    if *m != 0 {
                        out.insert(
                            m - 1,
                            f.scale_rational(&BigRational::from_integer((*m).into())),
                        );
                    }
                }
            }
            PhaseVar::Q => {
                for (m, f) in &self.terms {
                    out.insert(*m, f.derivative());
                }
            }
        }
        out
    }

    /// `d^(a+b) F / dp^a dq^b`.
    pub fn partial_many(&self, p_order: u32, q_order: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..q_order {
            if out.is_zero() {
                break;
            }
            out = out.partial(PhaseVar::Q);
        }
        for _ in 0..p_order {
            if out.is_zero() {
                break;
            }
            out = out.partial(PhaseVar::P);
        }
        out
    }

    pub fn scale(&self, c: &HScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = PhaseFn::zero();
        for (m, f) in &self.terms {
            out.insert(*m, f.scale(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&HScalar::from_rational(r.clone()))
    }

    /// Multiplies by `p^k`.
    pub fn mul_p_pow(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(m, f)| (m + k, f.clone())).collect();
        PhaseFn { terms }
    }

    /// Non-negative integer power by repeated multiplication.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = PhaseFn::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Drops every scalar term of `hbar`-degree above `max_order`.
    pub fn truncate_hbar(&self, max_order: i64) -> Self {
        let mut out = PhaseFn::zero();
        for (m, f) in &self.terms {
            out.insert(*m, f.truncate_hbar(max_order));
        }
        out
    }

    /// The coefficient of `hbar^k`, as an `hbar`-free symbol.
    pub fn hbar_component(&self, k: i64) -> Self {
        let mut out = PhaseFn::zero();
        for (m, f) in &self.terms {
            let mut g = QPoly::zero();
            for (n, c) in f.iter() {
                g = &g + &QPoly::monomial(c.hbar_component(k), n);
            }
            out.insert(*m, g);
        }
        out
    }
}

impl Add<&PhaseFn> for &PhaseFn {
    type Output = PhaseFn;
    fn add(self, rhs: &PhaseFn) -> PhaseFn {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.insert(*m, f.clone());
        }
        out
    }
}

impl Sub<&PhaseFn> for &PhaseFn {
    type Output = PhaseFn;
    fn sub(self, rhs: &PhaseFn) -> PhaseFn {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.insert(*m, -f);
        }
        out
    }
}

impl Mul<&PhaseFn> for &PhaseFn {
    type Output = PhaseFn;
    fn mul(self, rhs: &PhaseFn) -> PhaseFn {
        let mut out = PhaseFn::zero();
        for (ma, fa) in &self.terms {
            for (mb, fb) in &rhs.terms {
                out.insert(ma + mb, fa * fb);
            }
        }
        out
    }
}

impl Neg for &PhaseFn {
    type Output = PhaseFn;
    fn neg(self) -> PhaseFn {
        let terms = self.terms.iter().map(|(m, f)| (*m, -f)).collect();
        PhaseFn { terms }
    }
}

impl Neg for PhaseFn {
    type Output = PhaseFn;
    fn neg(self) -> PhaseFn {
        -&self
    }
}

impl_owned_variants!(PhaseFn, Add, add);
impl_owned_variants!(PhaseFn, Sub, sub);
impl_owned_variants!(PhaseFn, Mul, mul);
