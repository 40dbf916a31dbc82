//! Formal pseudodifferential operators with polynomial coefficients, and the
//! Weyl / exotic quantization maps of phase-space symbols into them.
//!
//! An operator is a finite sum of terms `coeff(q) . D^d` with integer `d`
//! (negative powers of `D = d/dq` included). Composition follows the
//! generalized Leibniz rule `D^d . b = sum_s C(d, s) b^(s) D^(d-s)`, which
//! terminates because coefficients are polynomials, so the whole calculus is
//! exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::BigRational;

use crate::comb::{binomial, gen_binomial};
use crate::phase::PhaseFn;
use crate::qpoly::QPoly;
use crate::scalar::{pow2, HScalar};
use crate::star::{exotic_product, moyal_product, phi_pullback, poisson, ProductKind};

/// A formal pseudodifferential operator in normal form: derivative exponent
/// `d` maps to the polynomial coefficient standing to its left. No zero
/// coefficients are stored; equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Pdo {
    terms: BTreeMap<i64, QPoly>,
}

impl Pdo {
    pub fn zero() -> Self {
        Pdo::default()
    }

    pub fn identity() -> Self {
        Self::from_term(0, QPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `coeff(q) . D^d`.
    pub fn from_term(d: i64, coeff: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(d, coeff);
        }
        Pdo { terms }
    }

    /// `D^d`.
    pub fn d_pow(d: i64) -> Self {
        Self::from_term(d, QPoly::one())
    }

    /// Multiplication operator by a polynomial.
    pub fn mult_op(coeff: QPoly) -> Self {
        Self::from_term(0, coeff)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &QPoly)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, d: i64) -> QPoly {
        self.terms.get(&d).cloned().unwrap_or_else(QPoly::zero)
    }

    /// Highest derivative exponent present.
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert(&mut self, d: i64, coeff: QPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &HScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Pdo::zero();
        for (d, coeff) in &self.terms {
            out.insert(*d, coeff.scale(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&HScalar::from_rational(r.clone()))
    }
}

impl Add<&Pdo> for &Pdo {
    type Output = Pdo;
    fn add(self, rhs: &Pdo) -> Pdo {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.insert(*d, c.clone());
        }
        out
    }
}

impl Sub<&Pdo> for &Pdo {
    type Output = Pdo;
    fn sub(self, rhs: &Pdo) -> Pdo {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.insert(*d, -c);
        }
        out
    }
}

impl Neg for &Pdo {
    type Output = Pdo;
    fn neg(self) -> Pdo {
        let terms = self.terms.iter().map(|(d, c)| (*d, -c)).collect();
        Pdo { terms }
    }
}

impl Neg for Pdo {
    type Output = Pdo;
    fn neg(self) -> Pdo {
        -&self
    }
}

impl_owned_variants!(Pdo, Add, add);
impl_owned_variants!(Pdo, Sub, sub);

/// Exact operator composition by the generalized Leibniz rule.
pub fn pdo_compose(a: &Pdo, b: &Pdo) -> Pdo {
    let mut out = Pdo::zero();
    for (d, ca) in a.iter() {
        for (e, cb) in b.iter() {
            let cutoff = cb.degree().unwrap_or(0);
            for s in 0..=cutoff {
                let c = gen_binomial(d, s);
                if num::Zero::is_zero(&c) {
                    continue;
                }
                let coeff = (ca * &cb.derivative_n(s))
                    .scale_rational(&BigRational::from_integer(c));
                out.insert(d + e - s as i64, coeff);
            }
        }
    }
    out
}

/// `A . B - B . A`.
pub fn pdo_commutator(a: &Pdo, b: &Pdo) -> Pdo {
    &pdo_compose(a, b) - &pdo_compose(b, a)
}

/// Weyl (symmetric) quantization: on a monomial `p^m q^n`,
/// `2^(-n) sum_j C(n, j) q^j . (i*hbar*D)^m . q^(n-j)`, extended linearly.
/// Negative `m` goes through `(i*hbar)^m D^m` over the `hbar`-Laurent
/// scalars; in particular `p^-1` maps to `(i*hbar)^(-1) D^(-1)`.
pub fn weyl_quantize(f: &PhaseFn) -> Pdo {
    let mut out = Pdo::zero();
    for (m, fm) in f.components() {
        let dm = Pdo::d_pow(m);
        for (n, c) in fm.iter() {
            let mut sym = Pdo::zero();
            for j in 0..=n {
                let piece = pdo_compose(
                    &Pdo::mult_op(QPoly::q_pow(j)),
                    &pdo_compose(&dm, &Pdo::mult_op(QPoly::q_pow(n - j))),
                );
                sym = &sym + &piece.scale_rational(&BigRational::from_integer(binomial(n, j)));
            }
            let factor = (c * &HScalar::ih_pow(m)).scale_rational(&pow2(-(n as i64)));
            out = &out + &sym.scale(&factor);
        }
    }
    out
}

/// Quantization intertwining the exotic product: quantize the pullback.
pub fn exotic_quantize(f: &PhaseFn) -> Pdo {
    weyl_quantize(&phi_pullback(f))
}

/// Difference between quantizing the star-product and composing the
/// quantizations; identically zero for both representations.
pub fn homomorphism_residual(f: &PhaseFn, g: &PhaseFn, kind: ProductKind) -> Pdo {
    match kind {
        ProductKind::Moyal => {
            &weyl_quantize(&moyal_product(f, g, None))
                - &pdo_compose(&weyl_quantize(f), &weyl_quantize(g))
        }
        ProductKind::Exotic => {
            &exotic_quantize(&exotic_product(f, g, None))
                - &pdo_compose(&exotic_quantize(f), &exotic_quantize(g))
        }
    }
}

/// The argument of [`mobius_equivariance_residual`] was not in the Moebius
/// `sl2` span.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MobiusDomainError;

impl fmt::Display for MobiusDomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X must lie in the span of {{p, p*q, p*q^2}}")
    }
}

impl std::error::Error for MobiusDomainError {}

/// Residual of the equivariance identity
/// `quantize({X, F}) = [quantize(X), quantize(F)] / (i*hbar)`
/// for the exotic representation; zero for `X` in the span of
/// `{p, pq, pq^2}`.
pub fn mobius_equivariance_residual(x: &PhaseFn, f: &PhaseFn) -> Result<Pdo, MobiusDomainError> {
    let in_span = x.is_zero()
        || (x.components().all(|(m, _)| m == 1) && x.deg_q().unwrap_or(0) <= 2);
    if !in_span {
        return Err(MobiusDomainError);
    }
    let lhs = exotic_quantize(&poisson(x, f));
    let rhs = pdo_commutator(&exotic_quantize(x), &exotic_quantize(f)).scale(&HScalar::ih_pow(-1));
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn leibniz_rule_first_order() {
        // D . q = q D + 1
        let lhs = pdo_compose(&Pdo::d_pow(1), &Pdo::mult_op(QPoly::q()));
        let expect = &Pdo::from_term(1, QPoly::q()) + &Pdo::identity();
        assert_eq!(lhs, expect);
    }

    #[test]
    fn generalized_leibniz_negative_order() {
        // D^-1 . q = q D^-1 - D^-2
        let lhs = pdo_compose(&Pdo::d_pow(-1), &Pdo::mult_op(QPoly::q()));
        let expect = &Pdo::from_term(-1, QPoly::q()) - &Pdo::d_pow(-2);
        assert_eq!(lhs, expect);
    }

    #[test]
    fn euler_operator_square() {
        // (qD)(qD) = q^2 D^2 + q D
        let qd = Pdo::from_term(1, QPoly::q());
        let expect = &Pdo::from_term(2, QPoly::q_pow(2)) + &Pdo::from_term(1, QPoly::q());
        assert_eq!(pdo_compose(&qd, &qd), expect);
    }

    #[test]
    fn inverse_derivative_is_two_sided() {
        let i = Pdo::identity();
        assert_eq!(pdo_compose(&Pdo::d_pow(-1), &Pdo::d_pow(1)), i);
        assert_eq!(pdo_compose(&Pdo::d_pow(1), &Pdo::d_pow(-1)), i);
    }

    #[test]
    fn composition_is_associative_and_unital() {
        let ops = [
            Pdo::from_term(2, &QPoly::q_pow(3) + &QPoly::from_int(1)),
            Pdo::from_term(-2, QPoly::q_pow(2)),
            &Pdo::from_term(1, QPoly::q_pow(4)) + &Pdo::from_term(-1, QPoly::from_int(3)),
        ];
        let i = Pdo::identity();
        for a in &ops {
            assert_eq!(pdo_compose(a, &i), *a);
            assert_eq!(pdo_compose(&i, a), *a);
            for b in &ops {
                for c in &ops {
                    assert_eq!(
                        pdo_compose(&pdo_compose(a, b), c),
                        pdo_compose(a, &pdo_compose(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn weyl_generators() {
        assert_eq!(
            weyl_quantize(&PhaseFn::p()),
            Pdo::d_pow(1).scale(&HScalar::ih_pow(1))
        );
        assert_eq!(weyl_quantize(&PhaseFn::q()), Pdo::mult_op(QPoly::q()));
        assert_eq!(
            weyl_quantize(&PhaseFn::p_pow(-1)),
            Pdo::d_pow(-1).scale(&HScalar::ih_pow(-1))
        );
    }

    #[test]
    fn weyl_symmetrizes_pq() {
        // pq -> i hbar (q D + 1/2)
        let lhs = weyl_quantize(&PhaseFn::monomial(1, 1, HScalar::one()));
        let expect = (&Pdo::from_term(1, QPoly::q()) + &Pdo::identity().scale_rational(&half()))
            .scale(&HScalar::ih_pow(1));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn weyl_leading_terms_separate_monomials() {
        for m in -3i64..=3 {
            for n in 0u32..=3 {
                let op = weyl_quantize(&PhaseFn::monomial(m, n, HScalar::one()));
                assert_eq!(op.order(), Some(m));
                assert_eq!(op.coeff(m), QPoly::monomial(HScalar::ih_pow(m), n));
            }
        }
    }

    #[test]
    fn exotic_quantization_table() {
        // p -> (i hbar)^2/2 D^2
        assert_eq!(
            exotic_quantize(&PhaseFn::p()),
            Pdo::d_pow(2).scale(&HScalar::ih_pow(2).scale_rational(&half()))
        );
        // pq -> i hbar/4 + (i hbar/2) q D
        let expect_pq = &Pdo::identity().scale(
            &HScalar::ih_pow(1).scale_rational(&BigRational::new(1.into(), 4.into())),
        ) + &Pdo::from_term(1, QPoly::q()).scale(&HScalar::ih_pow(1).scale_rational(&half()));
        assert_eq!(
            exotic_quantize(&PhaseFn::monomial(1, 1, HScalar::one())),
            expect_pq
        );
        // pq^2 -> q^2/2
        assert_eq!(
            exotic_quantize(&PhaseFn::monomial(1, 2, HScalar::one())),
            Pdo::mult_op(QPoly::q_pow(2)).scale_rational(&half())
        );
    }

    #[test]
    fn exotic_position_operator_matches_dilation_form() {
        // quantize(q) = (1/(4 i hbar)) (Delta^-1 . A + A . Delta^-1)
        // with Delta = D^2 and A = 2 q D + 1.
        let delta_inv = Pdo::d_pow(-2);
        let dilation = &Pdo::from_term(1, QPoly::q()).scale_rational(&BigRational::from_integer(2.into()))
            + &Pdo::identity();
        let combo = (&pdo_compose(&delta_inv, &dilation) + &pdo_compose(&dilation, &delta_inv))
            .scale(
                &HScalar::ih_pow(-1).scale_rational(&BigRational::new(1.into(), 4.into())),
            );
        assert_eq!(exotic_quantize(&PhaseFn::q()), combo);
    }

    #[test]
    fn canonical_relations() {
        let ih_id = Pdo::identity().scale(&HScalar::ih_pow(1));
        assert_eq!(
            pdo_commutator(&weyl_quantize(&PhaseFn::p()), &weyl_quantize(&PhaseFn::q())),
            ih_id
        );
        assert_eq!(
            pdo_commutator(&exotic_quantize(&PhaseFn::p()), &exotic_quantize(&PhaseFn::q())),
            ih_id
        );
        let a = exotic_quantize(&PhaseFn::monomial(2, 1, HScalar::one()));
        assert_eq!(pdo_commutator(&a, &a), Pdo::zero());
    }

    #[test]
    fn moyal_homomorphism_with_negative_powers() {
        // F = p, G = q/p: both legs equal q + D^-1/2.
        let f = PhaseFn::p();
        let g = PhaseFn::monomial(-1, 1, HScalar::one());
        assert_eq!(homomorphism_residual(&f, &g, ProductKind::Moyal), Pdo::zero());
        let both = weyl_quantize(&moyal_product(&f, &g, None));
        let expect = &Pdo::mult_op(QPoly::q()) + &Pdo::d_pow(-1).scale_rational(&half());
        assert_eq!(both, expect);
    }

    #[test]
    fn exotic_homomorphism_on_monomials() {
        let cases = [
            (PhaseFn::monomial(2, 1, HScalar::one()), PhaseFn::monomial(-1, 2, HScalar::one())),
            (PhaseFn::q_pow(2), PhaseFn::monomial(1, 1, HScalar::one())),
            (PhaseFn::p_pow(-2), PhaseFn::monomial(3, 0, HScalar::one())),
        ];
        for (f, g) in cases {
            assert_eq!(homomorphism_residual(&f, &g, ProductKind::Exotic), Pdo::zero());
        }
    }

    #[test]
    fn units_quantize_to_identity() {
        let g = PhaseFn::monomial(-2, 3, HScalar::from_gaussian(GaussianRational::i()));
        for kind in [ProductKind::Moyal, ProductKind::Exotic] {
            assert_eq!(homomorphism_residual(&PhaseFn::one(), &g, kind), Pdo::zero());
            assert_eq!(homomorphism_residual(&g, &PhaseFn::one(), kind), Pdo::zero());
        }
    }

    #[test]
    fn mobius_equivariance_holds_on_the_triple() {
        let cases = [
            (PhaseFn::monomial(1, 1, HScalar::one()), PhaseFn::monomial(2, 1, HScalar::one())),
            (PhaseFn::p(), PhaseFn::q_pow(3)),
            (PhaseFn::monomial(1, 2, HScalar::one()), PhaseFn::one()),
        ];
        for (x, f) in cases {
            assert_eq!(mobius_equivariance_residual(&x, &f).unwrap(), Pdo::zero());
        }
    }

    #[test]
    fn mobius_domain_is_enforced() {
        assert!(mobius_equivariance_residual(&PhaseFn::q(), &PhaseFn::p()).is_err());
        assert!(
            mobius_equivariance_residual(&PhaseFn::monomial(1, 3, HScalar::one()), &PhaseFn::p())
                .is_err()
        );
        assert!(mobius_equivariance_residual(&PhaseFn::p_pow(2), &PhaseFn::q()).is_err());
    }
}
