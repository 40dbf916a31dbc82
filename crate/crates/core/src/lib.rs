//! Exact symbolic calculus on the algebra of Laurent polynomials in `p`
//! with polynomial coefficients in `q`.
//!
//! The crate provides two associative star-products on that algebra — the
//! Moyal product and the transvectant-based exotic product — together with
//! the symplectomorphism conjugating one into the other, Lie-derivative and
//! cocycle machinery for vector fields on the line, quantization maps into
//! formal pseudodifferential operators, and a small expression language for
//! the command-line front end. All arithmetic is exact over Gaussian
//! rationals; there is no floating point anywhere.

// Derives the by-value variants of a binary operator from the
// reference-reference implementation.
macro_rules! impl_owned_variants {
    ($t:ty, $tr:ident, $method:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                (&self).$method(rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                self.$method(&rhs)
            }
        }
    };
}

pub mod cohomology;
pub mod comb;
pub mod expr;
pub mod linalg;
pub mod pdo;
pub mod phase;
pub mod printer;
pub mod qpoly;
pub mod sample;
pub mod scalar;
pub mod star;
pub mod verify;

pub use cohomology::{
    commutator_tail, cyclic_j3j7_residual, delta1, delta2, embed_vect, lie_derivative,
    nontriviality_certificate, vect_bracket, Certificate, DensityElement, OneCochain, TwoCochain,
    VectField,
};
pub use expr::{normalize, parse, Expr, NormalizeError, ParseError};
pub use linalg::{solve_linear, LinAlgError, LinearOutcome};
pub use pdo::{
    exotic_quantize, homomorphism_residual, mobius_equivariance_residual, pdo_commutator,
    pdo_compose, weyl_quantize, MobiusDomainError, Pdo,
};
pub use phase::{PhaseFn, PhaseVar, WeightedDensity};
pub use printer::{render_pdo, render_phase, render_qpoly, OutputFormat};
pub use qpoly::QPoly;
pub use scalar::{GaussianRational, HScalar};
pub use star::{
    conjugated_moyal, exotic_product, leibniz_residual, moyal_product, moyal_term, phi_pullback,
    phi_pushforward, poisson, prop43_residual, star_bracket, star_product, transvectant,
    ParityError, ProductKind,
};
pub use verify::{run_suite, Bounds, SuiteName, SuiteReport};
