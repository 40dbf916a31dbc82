//! Vector fields on the line, tensor-density modules, and the cocycle
//! calculus certifying that the exotic star-commutator's tail terms are
//! genuinely non-trivial extensions.
//!
//! Everything is verified on polynomial fields: every identity in play is a
//! differential-polynomial identity in finitely many jet coefficients, so
//! checking it on monomials of sufficient degree decides it.

use num::{BigRational, Zero};

use crate::linalg::{solve_linear, LinearOutcome};
use crate::phase::PhaseFn;
use crate::qpoly::QPoly;
use crate::star::{poisson, star_bracket, transvectant, ProductKind};

/// A polynomial vector field `X(q) d/dq`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectField {
    pub coeff: QPoly,
}

impl VectField {
    pub fn new(coeff: QPoly) -> Self {
        VectField { coeff }
    }

    /// The field `q^a d/dq`.
    pub fn x_pow(a: u32) -> Self {
        Self::new(QPoly::q_pow(a))
    }
}

/// A tensor density of degree `-weight`: a polynomial value carrying the
/// Lie-derivative action of the matching weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DensityElement {
    pub value: QPoly,
    pub weight: i64,
}

impl DensityElement {
    pub fn new(value: QPoly, weight: i64) -> Self {
        DensityElement { value, weight }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Commutator of vector fields: `[X, Y] = X Y' - X' Y`.
pub fn vect_bracket(x: &VectField, y: &VectField) -> VectField {
    VectField::new(&(&x.coeff * &y.coeff.derivative()) - &(&x.coeff.derivative() * &y.coeff))
}

/// Lie derivative on densities: `L_X a = X a' - weight * X' a`.
pub fn lie_derivative(x: &VectField, a: &DensityElement) -> DensityElement {
    let lam = BigRational::from_integer(a.weight.into());
    let value = &(&x.coeff * &a.value.derivative())
        - &(&x.coeff.derivative() * &a.value).scale_rational(&lam);
    DensityElement::new(value, a.weight)
}

/// The embedding of vector fields into phase space: `X(q) d/dq -> p X(q)`.
/// Intertwines the field commutator with the Poisson bracket.
pub fn embed_vect(x: &VectField) -> PhaseFn {
    PhaseFn::from_component(1, x.coeff.clone())
}

/// The terms beyond the Poisson part in the exotic star-commutator of two
/// embedded fields, indexed by their transvectant order `k` (odd, at least
/// 3). Each entry sits in `p`-degree `2 - k` and carries density weight
/// `2 - k`.
pub fn commutator_tail(x: &VectField, y: &VectField) -> Vec<(u32, DensityElement)> {
    let ex = embed_vect(x);
    let ey = embed_vect(y);
    let tail = &star_bracket(&ex, &ey, ProductKind::Exotic) - &poisson(&ex, &ey);
    let mut out: Vec<(u32, DensityElement)> = tail
        .components()
        .map(|(d, coeff)| {
            debug_assert!(d <= -1 && (2 - d) % 2 == 1, "tail terms sit at odd order >= 3");
            ((2 - d) as u32, DensityElement::new(coeff.clone(), d))
        })
        .collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

/// A differential 1-cochain `A(X) = sum_i coeffs[i] X^(i)` with values in
/// densities of weight `weight`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneCochain {
    pub coeffs: Vec<BigRational>,
    pub weight: i64,
}

impl OneCochain {
    pub fn new(coeffs: Vec<BigRational>, weight: i64) -> Self {
        OneCochain { coeffs, weight }
    }

    pub fn zero(order: u32, weight: i64) -> Self {
        Self::new(vec![BigRational::zero(); order as usize + 1], weight)
    }

    /// Differential order `K` (index of the last stored coefficient).
    pub fn order(&self) -> u32 {
        self.coeffs.len().saturating_sub(1) as u32
    }

    pub fn eval(&self, x: &VectField) -> DensityElement {
        let mut value = QPoly::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            value = &value + &x.coeff.derivative_n(i as u32).scale_rational(a);
        }
        DensityElement::new(value, self.weight)
    }
}

/// Coboundary of a 1-cochain:
/// `dA(X, Y) = L_X A(Y) - L_Y A(X) - A([X, Y])`.
pub fn delta1(a: &OneCochain, x: &VectField, y: &VectField) -> DensityElement {
    let mut value = lie_derivative(x, &a.eval(y)).value;
    value = &value - &lie_derivative(y, &a.eval(x)).value;
    value = &value - &a.eval(&vect_bracket(x, y)).value;
    DensityElement::new(value, a.weight)
}

/// A bilinear 2-cochain on vector fields with density values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TwoCochain {
    /// `(X, Y) -> J_k(X, Y)` at weights `(1, 1)`; target weight `2 - k`.
    Transvectant { order: u32 },
    /// The coboundary of a 1-cochain (trivial by construction; used as a
    /// solvable control for the certificate machinery).
    Coboundary(OneCochain),
}

impl TwoCochain {
    pub fn j(order: u32) -> Self {
        TwoCochain::Transvectant { order }
    }

    pub fn target_weight(&self) -> i64 {
        match self {
            TwoCochain::Transvectant { order } => 2 - *order as i64,
            TwoCochain::Coboundary(a) => a.weight,
        }
    }

    pub fn eval(&self, x: &VectField, y: &VectField) -> DensityElement {
        match self {
            TwoCochain::Transvectant { order } => DensityElement::new(
                transvectant(&x.coeff, &y.coeff, 1, 1, *order),
                self.target_weight(),
            ),
            TwoCochain::Coboundary(a) => delta1(a, x, y),
        }
    }
}

/// The cocycle residual
/// `dc(X, Y, Z) = sum_cyclic [ c(X, [Y, Z]) + L_X c(Y, Z) ]`,
/// with the Lie derivative taken at the target weight of `c`. Zero exactly
/// when `c` satisfies the 2-cocycle identity on the triple.
pub fn delta2(c: &TwoCochain, x: &VectField, y: &VectField, z: &VectField) -> DensityElement {
    let weight = c.target_weight();
    let mut value = QPoly::zero();
    let cycle = [(x, y, z), (y, z, x), (z, x, y)];
    for (a, b, d) in cycle {
        value = &value + &c.eval(a, &vect_bracket(b, d)).value;
        value = &value + &lie_derivative(a, &c.eval(b, d)).value;
    }
    DensityElement::new(value, weight)
}

/// The cyclic sum of `J_3` at weights `(1, -5)` applied to `(X, J_7(Y, Z))`;
/// identically zero, which is what promotes `J_9` to a cocycle.
pub fn cyclic_j3j7_residual(x: &VectField, y: &VectField, z: &VectField) -> QPoly {
    let j7 = TwoCochain::j(7);
    let mut acc = QPoly::zero();
    let cycle = [(x, y, z), (y, z, x), (z, x, y)];
    for (a, b, d) in cycle {
        let inner = j7.eval(b, d).value;
        acc = &acc + &transvectant(&a.coeff, &inner, 1, -5, 3);
    }
    acc
}

/// Identifies one scalar equation of the certificate system: the coefficient
/// of `q^q_exp` in the cochain identity evaluated on `(q^x_deg d/dq,
/// q^y_deg d/dq)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EquationId {
    pub x_deg: u32,
    pub y_deg: u32,
    pub q_exp: u32,
}

/// Outcome of the bounded-order coboundary search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// No differential 1-cochain of the requested order cobounds the target:
    /// the listed rational combination of equations reduces to
    /// `0 = contradiction`.
    Infeasible {
        witness: Vec<(EquationId, BigRational)>,
        contradiction: BigRational,
    },
    /// A cobounding 1-cochain (with free coefficients set to zero).
    Cobound(OneCochain),
}

fn rational_coeffs(value: &QPoly) -> Vec<(u32, BigRational)> {
    value
        .iter()
        .map(|(e, c)| {
            let r = c
                .as_rational()
                .expect("cochain values over rational inputs stay rational");
            (e, r)
        })
        .collect()
}

/// Searches for a 1-cochain `A` of differential order at most `max_order`
/// and weight `lambda` with `delta1(A) = target`, by exact elimination over
/// the monomial-pair grid `0 <= a, b <= max_order + 10`. Returns either the
/// cobounding cochain or a rational infeasibility witness; infeasibility on
/// the grid is conclusive for all of `Vect`, since the grid equations are a
/// subset of the full constraint set.
pub fn nontriviality_certificate(
    target: &TwoCochain,
    lambda: i64,
    max_order: u32,
) -> Certificate {
    let unknowns = max_order as usize + 1;
    let deg_cap = max_order + 10;

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    let mut ids: Vec<EquationId> = Vec::new();

    for a in 0..=deg_cap {
        for b in 0..=deg_cap {
            let x = VectField::x_pow(a);
            let y = VectField::x_pow(b);

            let mut columns: Vec<Vec<(u32, BigRational)>> = Vec::with_capacity(unknowns);
            for i in 0..unknowns {
                let mut unit = OneCochain::zero(max_order, lambda);
                unit.coeffs[i] = BigRational::from_integer(1.into());
                columns.push(rational_coeffs(&delta1(&unit, &x, &y).value));
            }
            let target_coeffs = rational_coeffs(&target.eval(&x, &y).value);

            let mut support: Vec<u32> = columns
                .iter()
                .flat_map(|col| col.iter().map(|(e, _)| *e))
                .chain(target_coeffs.iter().map(|(e, _)| *e))
                .collect();
            support.sort_unstable();
            support.dedup();

            for e in support {
                let pick = |entries: &[(u32, BigRational)]| {
                    entries
                        .iter()
                        .find(|(d, _)| *d == e)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(BigRational::zero)
                };
                rows.push(columns.iter().map(|col| pick(col)).collect());
                rhs.push(pick(&target_coeffs));
                ids.push(EquationId { x_deg: a, y_deg: b, q_exp: e });
            }
        }
    }

    match solve_linear(&rows, &rhs).expect("certificate system has consistent dimensions") {
        LinearOutcome::Infeasible { witness, contradiction } => {
            let sparse = witness
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (ids[i], c))
                .collect();
            Certificate::Infeasible { witness: sparse, contradiction }
        }
        LinearOutcome::Solution { values, .. } => {
            Certificate::Cobound(OneCochain::new(values, lambda))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::HScalar;

    fn rq(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn bracket_of_monomial_fields() {
        // [x^2 d/dx, x^3 d/dx] = x^4 d/dx
        assert_eq!(
            vect_bracket(&VectField::x_pow(2), &VectField::x_pow(3)),
            VectField::x_pow(4)
        );
        // [d/dx, x d/dx] = d/dx
        assert_eq!(
            vect_bracket(&VectField::x_pow(0), &VectField::x_pow(1)),
            VectField::x_pow(0)
        );
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi() {
        let x = VectField::new(&QPoly::q_pow(2) + &QPoly::from_int(1));
        let y = VectField::x_pow(3);
        let z = VectField::new(&QPoly::q() + &QPoly::q_pow(4));
        assert_eq!(vect_bracket(&x, &x).coeff, QPoly::zero());
        let jac = &(&vect_bracket(&x, &vect_bracket(&y, &z)).coeff
            + &vect_bracket(&y, &vect_bracket(&z, &x)).coeff)
            + &vect_bracket(&z, &vect_bracket(&x, &y)).coeff;
        assert_eq!(jac, QPoly::zero());
    }

    #[test]
    fn lie_derivative_closed_forms() {
        // L_{x d/dx} x^2 = (2 - weight) x^2
        for lam in [-5i64, 0, 3] {
            let out = lie_derivative(
                &VectField::x_pow(1),
                &DensityElement::new(QPoly::q_pow(2), lam),
            );
            assert_eq!(out.value, QPoly::q_pow(2).scale_rational(&rq(2 - lam)));
        }
        // Weight 0 on constants is a plain derivation.
        let out = lie_derivative(&VectField::x_pow(3), &DensityElement::new(QPoly::one(), 0));
        assert!(out.is_zero());
        // Translation field just differentiates.
        let f = &QPoly::q_pow(3) + &QPoly::q();
        let out = lie_derivative(&VectField::x_pow(0), &DensityElement::new(f.clone(), 7));
        assert_eq!(out.value, f.derivative());
    }

    #[test]
    fn lie_derivative_is_an_action() {
        for lam in [-8i64, -5, -1, 0, 2] {
            for (a, b) in [(0u32, 3u32), (2, 3), (1, 4), (5, 2)] {
                let x = VectField::x_pow(a);
                let y = VectField::x_pow(b);
                let dens = DensityElement::new(&QPoly::q_pow(2) + &QPoly::from_int(1), lam);
                let lhs = &lie_derivative(&x, &lie_derivative(&y, &dens)).value
                    - &lie_derivative(&y, &lie_derivative(&x, &dens)).value;
                let rhs = lie_derivative(&vect_bracket(&x, &y), &dens).value;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn embedding_is_a_morphism() {
        assert_eq!(embed_vect(&VectField::x_pow(0)), PhaseFn::p());
        let x = VectField::x_pow(2);
        let y = VectField::x_pow(3);
        assert_eq!(
            poisson(&embed_vect(&x), &embed_vect(&y)),
            embed_vect(&vect_bracket(&x, &y))
        );
    }

    #[test]
    fn poisson_action_on_components_is_the_lie_derivative() {
        // {pX, p^m f} = p^m (X f' - m X' f)
        let x = VectField::new(&QPoly::q_pow(2) + &QPoly::q());
        let f = &QPoly::q_pow(3) + &QPoly::from_int(2);
        for m in [-3i64, 0, 2] {
            let lhs = poisson(&embed_vect(&x), &PhaseFn::from_component(m, f.clone()));
            let rhs = PhaseFn::from_component(
                m,
                lie_derivative(&x, &DensityElement::new(f.clone(), m)).value,
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tail_is_empty_below_seventh_jets() {
        for (a, b) in [(0u32, 1u32), (1, 2), (2, 2), (0, 2)] {
            assert!(commutator_tail(&VectField::x_pow(a), &VectField::x_pow(b)).is_empty());
        }
    }

    #[test]
    fn tail_orders_three_and_five_never_appear() {
        for (a, b) in [(3u32, 4u32), (4, 5), (5, 6), (3, 6), (6, 6)] {
            let tail = commutator_tail(&VectField::x_pow(a), &VectField::x_pow(b));
            for (k, entry) in &tail {
                assert!(*k >= 7 && k % 2 == 1, "unexpected order {k}");
                assert_eq!(entry.weight, 2 - *k as i64);
            }
        }
    }

    #[test]
    fn tail_frozen_value() {
        // X = q^3, Y = q^4: single order-7 entry -(9/128) hbar^6.
        let tail = commutator_tail(&VectField::x_pow(3), &VectField::x_pow(4));
        assert_eq!(tail.len(), 1);
        let (k, entry) = &tail[0];
        assert_eq!(*k, 7);
        assert_eq!(entry.weight, -5);
        let expect = QPoly::constant(
            HScalar::hbar_pow(6).scale_rational(&BigRational::new((-9).into(), 128.into())),
        );
        assert_eq!(entry.value, expect);
    }

    #[test]
    fn j7_and_j9_are_cocycles_on_samples() {
        let j7 = TwoCochain::j(7);
        let j9 = TwoCochain::j(9);
        assert_eq!(j7.target_weight(), -5);
        assert_eq!(j9.target_weight(), -7);
        for (a, b, c) in [(3u32, 4u32, 5u32), (2, 5, 6), (4, 4, 7), (0, 6, 8)] {
            let x = VectField::x_pow(a);
            let y = VectField::x_pow(b);
            let z = VectField::x_pow(c);
            assert!(delta2(&j7, &x, &y, &z).is_zero(), "dJ7 != 0 on ({a},{b},{c})");
            assert!(delta2(&j9, &x, &y, &z).is_zero(), "dJ9 != 0 on ({a},{b},{c})");
        }
    }

    #[test]
    fn zero_cochain_is_a_cocycle() {
        // J_3 at weights (1,1) vanishes identically.
        let j3 = TwoCochain::j(3);
        let x = VectField::x_pow(2);
        let y = VectField::x_pow(5);
        let z = VectField::x_pow(6);
        assert!(j3.eval(&x, &y).is_zero());
        assert!(delta2(&j3, &x, &y, &z).is_zero());
    }

    #[test]
    fn coboundaries_are_cocycles() {
        // delta2 of a delta1 image vanishes: sign-convention consistency.
        let a = OneCochain::new(vec![rq(2), rq(-1), rq(3), rq(1)], -5);
        let c = TwoCochain::Coboundary(a);
        for (i, j, k) in [(1u32, 2u32, 3u32), (0, 4, 5), (2, 3, 6)] {
            assert!(delta2(&c, &VectField::x_pow(i), &VectField::x_pow(j), &VectField::x_pow(k))
                .is_zero());
        }
    }

    #[test]
    fn j3_on_j7_cyclic_identity() {
        for (a, b, c) in [(3u32, 3u32, 4u32), (3, 4, 5), (2, 4, 6), (5, 6, 7)] {
            let res = cyclic_j3j7_residual(
                &VectField::x_pow(a),
                &VectField::x_pow(b),
                &VectField::x_pow(c),
            );
            assert!(res.is_zero(), "cyclic residual nonzero on ({a},{b},{c})");
        }
        // Repeated argument: antisymmetry collapses the sum.
        let res = cyclic_j3j7_residual(
            &VectField::x_pow(4),
            &VectField::x_pow(4),
            &VectField::x_pow(5),
        );
        assert!(res.is_zero());
    }

    #[test]
    fn j3_on_j7_single_term_closed_form() {
        // J_3 at weights (1,-5) is 220 f''' g, so the single term is
        // 880 X''' (Y''' Z'''' - Y'''' Z''').
        let x = VectField::x_pow(3);
        let y = VectField::x_pow(3);
        let z = VectField::x_pow(4);
        let inner = TwoCochain::j(7).eval(&y, &z).value;
        let single = transvectant(&x.coeff, &inner, 1, -5, 3);
        assert_eq!(single, QPoly::from_int(760320));
        let closed = {
            let xppp = x.coeff.derivative_n(3);
            let e7 = &(&y.coeff.derivative_n(3) * &z.coeff.derivative_n(4))
                - &(&y.coeff.derivative_n(4) * &z.coeff.derivative_n(3));
            (&xppp * &e7).scale_rational(&rq(880))
        };
        assert_eq!(single, closed);
    }

    #[test]
    fn delta1_edge_cases() {
        let zero = OneCochain::zero(3, -5);
        let x = VectField::x_pow(2);
        let y = VectField::x_pow(3);
        assert!(delta1(&zero, &x, &y).is_zero());
        let a = OneCochain::new(vec![rq(1), rq(2), rq(-3)], -5);
        assert!(delta1(&a, &x, &x).is_zero());
        // A = X' lies in the kernel of delta1 at every weight: the direct
        // expansion L_X(Y') - L_Y(X') - [X,Y]' collapses to zero.
        for lam in [-5i64, 0, 5] {
            let a1 = OneCochain::new(vec![rq(0), rq(1)], lam);
            assert!(delta1(&a1, &VectField::x_pow(1), &VectField::x_pow(2)).is_zero());
        }
    }

    #[test]
    fn certificate_rejects_j7_at_small_order() {
        match nontriviality_certificate(&TwoCochain::j(7), -5, 2) {
            Certificate::Infeasible { witness, contradiction } => {
                assert!(!witness.is_empty());
                assert!(!contradiction.is_zero());
            }
            Certificate::Cobound(a) => panic!("J7 must not cobound, got {a:?}"),
        }
    }

    #[test]
    fn certificate_solves_actual_coboundaries() {
        let a0 = OneCochain::new(vec![rq(1), rq(0), rq(-2), rq(5)], -5);
        let target = TwoCochain::Coboundary(a0.clone());
        match nontriviality_certificate(&target, -5, 3) {
            Certificate::Cobound(a) => {
                for (i, j) in [(0u32, 1u32), (1, 3), (2, 5), (4, 6)] {
                    let x = VectField::x_pow(i);
                    let y = VectField::x_pow(j);
                    assert_eq!(delta1(&a, &x, &y), delta1(&a0, &x, &y));
                }
            }
            Certificate::Infeasible { .. } => panic!("coboundary targets are solvable"),
        }
    }
}
