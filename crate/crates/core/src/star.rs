//! The two star-products and the symplectomorphism tying them together.
//!
//! The Moyal product is the bidifferential series with terms
//! `{F,G}_k = sum_i (-1)^i C(k,i) d^k F/dp^(k-i)dq^i * d^k G/dp^i dq^(k-i)`,
//! weighted by `(i*hbar)^k / (2^k k!)`. The exotic product acts on
//! `p`-homogeneous components through transvectants and is the pullback of
//! the Moyal product along `(p, q) -> (p^2/2, q/p)`. Both series terminate on
//! polynomial-in-`q` symbols, so every result here is exact.

use std::fmt;

use num::{BigRational, Zero};

use crate::comb::{binomial, factorial, pochhammer_weight};
use crate::phase::{PhaseFn, PhaseVar};
use crate::qpoly::QPoly;
use crate::scalar::{pow2, HScalar};

/// Selector for the two deformations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProductKind {
    Moyal,
    Exotic,
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductKind::Moyal => write!(f, "moyal"),
            ProductKind::Exotic => write!(f, "exotic"),
        }
    }
}

impl std::str::FromStr for ProductKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "moyal" => Ok(ProductKind::Moyal),
            "exotic" => Ok(ProductKind::Exotic),
            other => Err(format!("unknown product kind '{other}' (expected moyal or exotic)")),
        }
    }
}

/// The standard Poisson bracket `F_p G_q - F_q G_p`.
pub fn poisson(f: &PhaseFn, g: &PhaseFn) -> PhaseFn {
    &(&f.partial(PhaseVar::P) * &g.partial(PhaseVar::Q))
        - &(&f.partial(PhaseVar::Q) * &g.partial(PhaseVar::P))
}

/// The order-`k` bidifferential term of the Moyal series. `k = 0` is the
/// pointwise product and `k = 1` the Poisson bracket.
pub fn moyal_term(f: &PhaseFn, g: &PhaseFn, k: u32) -> PhaseFn {
    if k == 0 {
        return f * g;
    }
    let mut acc = PhaseFn::zero();
    for i in 0..=k {
        let fi = f.partial_many(k - i, i);
        if fi.is_zero() {
            continue;
        }
        let gi = g.partial_many(i, k - i);
        if gi.is_zero() {
            continue;
        }
        let mut c = BigRational::from_integer(binomial(k, i));
        if i % 2 == 1 {
            c = -c;
        }
        acc = &acc + &(&fi * &gi).scale_rational(&c);
    }
    acc
}

/// Upper bound for the order at which both star-product series vanish: each
/// order-`k` term differentiates the pair `k` times in `q` in total.
fn series_cutoff(f: &PhaseFn, g: &PhaseFn) -> Option<u32> {
    Some(f.deg_q()? + g.deg_q()?)
}

/// The Moyal star-product, summed exactly to its finite cutoff. `max_order`
/// only filters `hbar`-degrees out of the finished result.
pub fn moyal_product(f: &PhaseFn, g: &PhaseFn, max_order: Option<i64>) -> PhaseFn {
    let mut acc = PhaseFn::zero();
    if let Some(cutoff) = series_cutoff(f, g) {
        for k in 0..=cutoff {
            let term = moyal_term(f, g, k);
            if term.is_zero() {
                continue;
            }
            let weight = HScalar::ih_pow(k as i64)
                .scale_rational(&BigRational::new(1.into(), moyal_denominator(k)));
            acc = &acc + &term.scale(&weight);
        }
    }
    match max_order {
        Some(n) => acc.truncate_hbar(n),
        None => acc,
    }
}

fn moyal_denominator(k: u32) -> num::BigInt {
    // 2^k k!
    num::BigInt::from(2).pow(k) * factorial(k)
}

/// The order-`k` transvectant of `q`-polynomials at integer weights `m`, `n`:
///
/// `J_k(f, g) = sum_{i+j=k} (-1)^i W(m,i,k)/i! * W(n,j,k)/j! * f^(i) g^(j)`
///
/// with `W(m,i,k) = prod_{t=i}^{k-1} (2m - t)`. For `2m, 2n >= k` the weights
/// reproduce the classical factorial-ratio coefficients; the product form is
/// their unique polynomial continuation to all integer (Laurent) weights.
/// This normalization is the one under which the order-`k` term of the
/// conjugated Moyal product is exactly `(k!/2^k) p^(m+n-k) J_k(f,g)`.
pub fn transvectant(f: &QPoly, g: &QPoly, m: i64, n: i64, k: u32) -> QPoly {
    let mut acc = QPoly::zero();
    for i in 0..=k {
        let j = k - i;
        let fi = f.derivative_n(i);
        if fi.is_zero() {
            continue;
        }
        let gj = g.derivative_n(j);
        if gj.is_zero() {
            continue;
        }
        let mut c = BigRational::new(
            pochhammer_weight(m, i, k) * pochhammer_weight(n, j, k),
            factorial(i) * factorial(j),
        );
        if c.is_zero() {
            continue;
        }
        if i % 2 == 1 {
            c = -c;
        }
        acc = &acc + &(&fi * &gj).scale_rational(&c);
    }
    acc
}

/// The exotic star-product: on components `p^m f` and `p^n g` it is
/// `sum_k (i*hbar)^k / 2^(2k) * p^(m+n-k) J_k(f,g)`, extended bilinearly.
pub fn exotic_product(f: &PhaseFn, g: &PhaseFn, max_order: Option<i64>) -> PhaseFn {
    let mut acc = PhaseFn::zero();
    for (m, fm) in f.components() {
        for (n, gn) in g.components() {
            let cutoff = fm.degree().unwrap_or(0) + gn.degree().unwrap_or(0);
            for k in 0..=cutoff {
                let j = transvectant(fm, gn, m, n, k);
                if j.is_zero() {
                    continue;
                }
                let weight = HScalar::ih_pow(k as i64).scale_rational(&pow2(-2 * k as i64));
                acc = &acc + &PhaseFn::from_component(m + n - k as i64, j.scale(&weight));
            }
        }
    }
    match max_order {
        Some(n) => acc.truncate_hbar(n),
        None => acc,
    }
}

/// Star-product dispatch over [`ProductKind`].
pub fn star_product(f: &PhaseFn, g: &PhaseFn, kind: ProductKind, max_order: Option<i64>) -> PhaseFn {
    match kind {
        ProductKind::Moyal => moyal_product(f, g, max_order),
        ProductKind::Exotic => exotic_product(f, g, max_order),
    }
}

/// The star-commutator `(F * G - G * F) / (i*hbar)` of the selected product.
pub fn star_bracket(f: &PhaseFn, g: &PhaseFn, kind: ProductKind) -> PhaseFn {
    let diff = &star_product(f, g, kind, None) - &star_product(g, f, kind, None);
    diff.scale(&HScalar::ih_pow(-1))
}

/// Pullback along the symplectomorphism `(p, q) -> (p^2/2, q/p)`:
/// `p^m q^n -> 2^(-m) p^(2m-n) q^n`. Every image monomial has even total
/// degree.
pub fn phi_pullback(f: &PhaseFn) -> PhaseFn {
    let mut out = PhaseFn::zero();
    for (m, fm) in f.components() {
        let scale = pow2(-m);
        for (n, c) in fm.iter() {
            out = &out + &PhaseFn::monomial(2 * m - n as i64, n, c.scale_rational(&scale));
        }
    }
    out
}

/// A monomial outside the image of [`phi_pullback`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParityError {
    pub p_exp: i64,
    pub q_exp: u32,
}

impl fmt::Display for ParityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "monomial p^{}*q^{} has odd total degree {}; only even-degree symbols lie in the pullback image",
            self.p_exp,
            self.q_exp,
            self.p_exp + self.q_exp as i64
        )
    }
}

impl std::error::Error for ParityError {}

/// Inverse of [`phi_pullback`], defined on even-total-degree symbols:
/// `p^a q^b -> 2^((a+b)/2) p^((a+b)/2) q^b`.
pub fn phi_pushforward(f: &PhaseFn) -> Result<PhaseFn, ParityError> {
    let mut out = PhaseFn::zero();
    for (a, fa) in f.components() {
        for (b, c) in fa.iter() {
            let total = a + b as i64;
            if total.rem_euclid(2) != 0 {
                return Err(ParityError { p_exp: a, q_exp: b });
            }
            let half = total / 2;
            out = &out + &PhaseFn::monomial(half, b, c.scale_rational(&pow2(half)));
        }
    }
    Ok(out)
}

/// The conjugated Moyal product `pushforward(pullback(F) * pullback(G))`.
/// Coincides with [`exotic_product`]; both routes are kept separate so the
/// coincidence stays checkable.
pub fn conjugated_moyal(f: &PhaseFn, g: &PhaseFn) -> PhaseFn {
    let prod = moyal_product(&phi_pullback(f), &phi_pullback(g), None);
    phi_pushforward(&prod).expect("Moyal products of pullback images have even parity")
}

/// Residual of the term-by-term conjugation identity: pushing the order-`k`
/// Moyal term of the pulled-back components forward must give exactly
/// `(k!/2^k) p^(m+n-k) J_k(f,g)`.
pub fn prop43_residual(f: &QPoly, g: &QPoly, m: i64, n: i64, k: u32) -> PhaseFn {
    let lhs_term = moyal_term(
        &phi_pullback(&PhaseFn::from_component(m, f.clone())),
        &phi_pullback(&PhaseFn::from_component(n, g.clone())),
        k,
    );
    let lhs = phi_pushforward(&lhs_term).expect("Moyal terms of pullback images have even parity");
    let scale = BigRational::new(factorial(k), num::BigInt::from(2).pow(k));
    let rhs = PhaseFn::from_component(m + n - k as i64, transvectant(f, g, m, n, k))
        .scale_rational(&scale);
    &lhs - &rhs
}

/// Residual of the derivation property of `poisson(X, -)` over the selected
/// star-product; vanishes for `X` in the matching `sl2` triple
/// (`{p^2, pq, q^2}` for Moyal, `{p, pq, pq^2}` for the exotic product).
pub fn leibniz_residual(x: &PhaseFn, f: &PhaseFn, g: &PhaseFn, kind: ProductKind) -> PhaseFn {
    let lhs = poisson(x, &star_product(f, g, kind, None));
    let rhs = &star_product(&poisson(x, f), g, kind, None)
        + &star_product(f, &poisson(x, g), kind, None);
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn ih() -> HScalar {
        HScalar::ih_pow(1)
    }

    fn half_i() -> HScalar {
        HScalar::from_gaussian(GaussianRational::i()).scale_rational(&BigRational::new(1.into(), 2.into()))
    }

    #[test]
    fn poisson_canonical_pair() {
        assert_eq!(poisson(&PhaseFn::p(), &PhaseFn::q()), PhaseFn::one());
    }

    #[test]
    fn poisson_squares() {
        // {p^2, q^2} = 4pq
        let expect = PhaseFn::monomial(1, 1, HScalar::from_int(4));
        assert_eq!(poisson(&PhaseFn::p_pow(2), &PhaseFn::q_pow(2)), expect);
    }

    #[test]
    fn poisson_antisymmetry_diagonal() {
        let f = &PhaseFn::monomial(2, 3, HScalar::from_int(3)) + &PhaseFn::p_pow(-1);
        assert_eq!(poisson(&f, &f), PhaseFn::zero());
    }

    #[test]
    fn moyal_term_squares() {
        assert_eq!(
            moyal_term(&PhaseFn::p_pow(2), &PhaseFn::q_pow(2), 2),
            PhaseFn::from_int(4)
        );
    }

    #[test]
    fn moyal_terms_vanish_on_constants() {
        let f = &PhaseFn::monomial(2, 2, HScalar::one()) + &PhaseFn::monomial(-1, 3, HScalar::from_int(5));
        for k in 1..=4 {
            assert_eq!(moyal_term(&f, &PhaseFn::one(), k), PhaseFn::zero());
            assert_eq!(moyal_term(&PhaseFn::one(), &f, k), PhaseFn::zero());
        }
    }

    #[test]
    fn moyal_term_order_one_antisymmetry() {
        assert_eq!(
            moyal_term(&PhaseFn::q(), &PhaseFn::p(), 1),
            PhaseFn::from_int(-1)
        );
    }

    #[test]
    fn moyal_product_canonical() {
        // p * q = pq + i hbar / 2
        let expect = &PhaseFn::monomial(1, 1, HScalar::one())
            + &PhaseFn::constant(ih().scale_rational(&BigRational::new(1.into(), 2.into())));
        assert_eq!(moyal_product(&PhaseFn::p(), &PhaseFn::q(), None), expect);
    }

    #[test]
    fn moyal_canonical_commutation() {
        let lhs = &moyal_product(&PhaseFn::p(), &PhaseFn::q(), None)
            - &moyal_product(&PhaseFn::q(), &PhaseFn::p(), None);
        assert_eq!(lhs, PhaseFn::constant(ih()));
    }

    #[test]
    fn moyal_unit() {
        let f = &PhaseFn::monomial(-2, 4, HScalar::from_int(7)) + &PhaseFn::q_pow(2);
        assert_eq!(moyal_product(&f, &PhaseFn::one(), None), f);
        assert_eq!(moyal_product(&PhaseFn::one(), &f, None), f);
    }

    #[test]
    fn star_bracket_canonical() {
        assert_eq!(
            star_bracket(&PhaseFn::p(), &PhaseFn::q(), ProductKind::Moyal),
            PhaseFn::one()
        );
        assert_eq!(
            star_bracket(&PhaseFn::p(), &PhaseFn::q(), ProductKind::Exotic),
            PhaseFn::one()
        );
    }

    #[test]
    fn star_bracket_diagonal() {
        let f = &PhaseFn::monomial(1, 3, HScalar::one()) + &PhaseFn::monomial(-1, 0, HScalar::from_int(2));
        for kind in [ProductKind::Moyal, ProductKind::Exotic] {
            assert_eq!(star_bracket(&f, &f, kind), PhaseFn::zero());
        }
    }

    #[test]
    fn exotic_bracket_tail_sits_below_degree_one() {
        // X = p q^3, Y = p q^4: the bracket is the Poisson part plus a single
        // order-7 tail term -(9/128) hbar^6 p^-5.
        let x = PhaseFn::monomial(1, 3, HScalar::one());
        let y = PhaseFn::monomial(1, 4, HScalar::one());
        let tail = &star_bracket(&x, &y, ProductKind::Exotic) - &poisson(&x, &y);
        let expect = PhaseFn::from_component(
            -5,
            QPoly::constant(HScalar::hbar_pow(6).scale_rational(&BigRational::new(
                (-9).into(),
                128.into(),
            ))),
        );
        assert_eq!(tail, expect);
    }

    #[test]
    fn transvectant_order_zero_is_product() {
        let f = &QPoly::q_pow(2) + &QPoly::from_int(1);
        let g = QPoly::q_pow(3);
        assert_eq!(transvectant(&f, &g, -3, 5, 0), &f * &g);
    }

    #[test]
    fn transvectant_order_one_closed_form() {
        // J_1 = 2m f g' - 2n f' g
        let f = QPoly::q_pow(2);
        let g = QPoly::q_pow(3);
        for (m, n) in [(2i64, 3i64), (-1, 4), (0, 0), (-5, -2)] {
            let expect = &(&f * &g.derivative()).scale_rational(&BigRational::from_integer((2 * m).into()))
                - &(&f.derivative() * &g).scale_rational(&BigRational::from_integer((2 * n).into()));
            assert_eq!(transvectant(&f, &g, m, n, 1), expect);
        }
    }

    #[test]
    fn weight_one_transvectants_three_and_five_vanish() {
        for a in 0..=8u32 {
            for b in 0..=8u32 {
                let f = QPoly::q_pow(a);
                let g = QPoly::q_pow(b);
                assert_eq!(transvectant(&f, &g, 1, 1, 3), QPoly::zero());
                assert_eq!(transvectant(&f, &g, 1, 1, 5), QPoly::zero());
            }
        }
    }

    #[test]
    fn weight_one_transvectant_seven_closed_form() {
        // J_7(f,g) = 4 (f''' g'''' - f'''' g''') at weights (1,1).
        let pairs = [(3u32, 4u32), (4, 5), (5, 7), (3, 6)];
        for (a, b) in pairs {
            let f = QPoly::q_pow(a);
            let g = QPoly::q_pow(b);
            let closed = &(&f.derivative_n(3) * &g.derivative_n(4))
                - &(&f.derivative_n(4) * &g.derivative_n(3));
            assert_eq!(
                transvectant(&f, &g, 1, 1, 7),
                closed.scale_rational(&BigRational::from_integer(4.into()))
            );
        }
        // Frozen spot value: J_7(q^3, q^4) = 4 * (6*24 - 0) = 576.
        assert_eq!(
            transvectant(&QPoly::q_pow(3), &QPoly::q_pow(4), 1, 1, 7),
            QPoly::from_int(576)
        );
    }

    #[test]
    fn exotic_order_structure() {
        let f = &PhaseFn::monomial(2, 1, HScalar::one()) + &PhaseFn::monomial(-1, 2, HScalar::from_int(3));
        let g = &PhaseFn::monomial(1, 2, HScalar::from_int(2)) + &PhaseFn::q();
        let prod = exotic_product(&f, &g, None);
        // Order 0 is the commutative product.
        assert_eq!(prod.hbar_component(0), &f * &g);
        // Order 1 is i/2 times the Poisson bracket.
        assert_eq!(prod.hbar_component(1), poisson(&f, &g).scale(&half_i()));
    }

    #[test]
    fn exotic_recovers_q_from_inverse_momentum() {
        // (1/2)((1/p) * pq + pq * (1/p)) = q,
        // and each summand is q -/+ (i hbar / 2) p^-1.
        let inv_p = PhaseFn::p_pow(-1);
        let pq = PhaseFn::monomial(1, 1, HScalar::one());
        let a = exotic_product(&inv_p, &pq, None);
        let b = exotic_product(&pq, &inv_p, None);
        let half = BigRational::new(1.into(), 2.into());
        let correction = PhaseFn::from_component(
            -1,
            QPoly::constant(ih().scale_rational(&half)),
        );
        assert_eq!(a, &PhaseFn::q() - &correction);
        assert_eq!(b, &PhaseFn::q() + &correction);
        assert_eq!((&a + &b).scale_rational(&half), PhaseFn::q());
    }

    #[test]
    fn pullback_generators() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            phi_pullback(&PhaseFn::p()),
            PhaseFn::p_pow(2).scale_rational(&half)
        );
        assert_eq!(
            phi_pullback(&PhaseFn::monomial(1, 1, HScalar::one())),
            PhaseFn::monomial(1, 1, HScalar::one()).scale_rational(&half)
        );
        assert_eq!(
            phi_pullback(&PhaseFn::monomial(1, 2, HScalar::one())),
            PhaseFn::q_pow(2).scale_rational(&half)
        );
    }

    #[test]
    fn pushforward_inverts_pullback() {
        let f = &PhaseFn::monomial(-2, 3, HScalar::from_int(5)) + &PhaseFn::monomial(4, 1, HScalar::i());
        assert_eq!(phi_pushforward(&phi_pullback(&f)).unwrap(), f);
        // p*q doubles.
        assert_eq!(
            phi_pushforward(&PhaseFn::monomial(1, 1, HScalar::one())).unwrap(),
            PhaseFn::monomial(1, 1, HScalar::from_int(2))
        );
    }

    #[test]
    fn pushforward_rejects_odd_parity() {
        let err = phi_pushforward(&PhaseFn::monomial(2, 1, HScalar::one())).unwrap_err();
        assert_eq!(err, ParityError { p_exp: 2, q_exp: 1 });
    }

    #[test]
    fn conjugation_matches_exotic_product() {
        let cases = [
            (PhaseFn::p(), PhaseFn::q()),
            (PhaseFn::monomial(1, 2, HScalar::one()), PhaseFn::q()),
            (PhaseFn::monomial(-2, 1, HScalar::one()), PhaseFn::monomial(3, 2, HScalar::one())),
        ];
        for (f, g) in cases {
            assert_eq!(conjugated_moyal(&f, &g), exotic_product(&f, &g, None));
        }
        let f = &PhaseFn::monomial(1, 2, HScalar::one()) + &PhaseFn::p_pow(-1);
        assert_eq!(conjugated_moyal(&f, &PhaseFn::one()), f);
    }

    #[test]
    fn conjugation_frozen_value() {
        // pq^2 * q = pq^3 + (i hbar/2) q^2 + ((i hbar)^2/8) p^-1 q,
        // computed by hand along both routes.
        let f = PhaseFn::monomial(1, 2, HScalar::one());
        let g = PhaseFn::q();
        let expect = &(&PhaseFn::monomial(1, 3, HScalar::one())
            + &PhaseFn::monomial(
                0,
                2,
                ih().scale_rational(&BigRational::new(1.into(), 2.into())),
            ))
            + &PhaseFn::monomial(
                -1,
                1,
                HScalar::ih_pow(2).scale_rational(&BigRational::new(1.into(), 8.into())),
            );
        assert_eq!(exotic_product(&f, &g, None), expect);
        assert_eq!(conjugated_moyal(&f, &g), expect);
    }

    #[test]
    fn prop43_residual_vanishes() {
        assert_eq!(
            prop43_residual(&QPoly::q_pow(2), &QPoly::q_pow(3), -2, 3, 4),
            PhaseFn::zero()
        );
        for k in 0..=3 {
            assert_eq!(
                prop43_residual(&QPoly::q_pow(1), &QPoly::q_pow(2), 2, -1, k),
                PhaseFn::zero()
            );
        }
    }

    #[test]
    fn leibniz_for_sl2_elements() {
        let f = &PhaseFn::monomial(2, 1, HScalar::one()) + &PhaseFn::q_pow(2);
        let g = &PhaseFn::monomial(-1, 2, HScalar::from_int(3)) + &PhaseFn::p();
        let pq = PhaseFn::monomial(1, 1, HScalar::one());
        for kind in [ProductKind::Moyal, ProductKind::Exotic] {
            assert_eq!(leibniz_residual(&pq, &f, &g, kind), PhaseFn::zero());
        }
        assert_eq!(
            leibniz_residual(&PhaseFn::p_pow(2), &f, &g, ProductKind::Moyal),
            PhaseFn::zero()
        );
        assert_eq!(
            leibniz_residual(&PhaseFn::monomial(1, 2, HScalar::one()), &f, &g, ProductKind::Exotic),
            PhaseFn::zero()
        );
    }

    #[test]
    fn max_order_is_an_output_filter() {
        let full = moyal_product(&PhaseFn::p_pow(2), &PhaseFn::q_pow(2), None);
        let cut = moyal_product(&PhaseFn::p_pow(2), &PhaseFn::q_pow(2), Some(1));
        assert_eq!(cut, full.truncate_hbar(1));
        assert_ne!(cut, full);
    }

    #[test]
    fn associativity_spot_checks() {
        let f = PhaseFn::monomial(2, 1, HScalar::one());
        let g = &PhaseFn::p_pow(-1) + &PhaseFn::q();
        let h = PhaseFn::monomial(-1, 2, HScalar::from_int(2));
        for kind in [ProductKind::Moyal, ProductKind::Exotic] {
            let lhs = star_product(&star_product(&f, &g, kind, None), &h, kind, None);
            let rhs = star_product(&f, &star_product(&g, &h, kind, None), kind, None);
            assert_eq!(lhs, rhs);
        }
    }
}
