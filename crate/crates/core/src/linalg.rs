//! Exact linear algebra over the rationals: incremental Gaussian elimination
//! that either solves the system or produces a rational infeasibility
//! certificate (a combination of input equations reducing to 0 = nonzero).

use std::fmt;

use num::{BigRational, One, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LinAlgError {
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected row length {expected}, got {got}")
            }
        }
    }
}

impl std::error::Error for LinAlgError {}

/// Outcome of [`solve_linear`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LinearOutcome {
    /// A particular solution; `free[j]` marks columns not determined by any
    /// pivot (their value is fixed to zero in `values`).
    Solution {
        values: Vec<BigRational>,
        free: Vec<bool>,
    },
    /// Certificate of infeasibility: multipliers `witness[e]` for the input
    /// equations such that the combination has all-zero coefficients but a
    /// nonzero right-hand side `contradiction`.
    Infeasible {
        witness: Vec<BigRational>,
        contradiction: BigRational,
    },
}

struct BasisRow {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
    pivot: usize,
    // Sparse combination of original equation indices that produced this row.
    provenance: Vec<(usize, BigRational)>,
}

fn provenance_sub(
    acc: &mut Vec<(usize, BigRational)>,
    factor: &BigRational,
    other: &[(usize, BigRational)],
) {
    for (idx, c) in other {
        let delta = factor * c;
        match acc.binary_search_by_key(idx, |(j, _)| *j) {
            Ok(k) => {
                acc[k].1 = &acc[k].1 - &delta;
                if acc[k].1.is_zero() {
                    acc.remove(k);
                }
            }
            Err(k) => acc.insert(k, (*idx, -delta)),
        }
    }
}

/// Solves `rows * x = rhs` exactly over the rationals.
///
/// Rows are processed incrementally; a contradictory equation is detected the
/// moment it reduces to `0 = c` with `c != 0`, and the recorded row
/// operations are replayed into a rational certificate over the original
/// equations.
pub fn solve_linear(
    rows: &[Vec<BigRational>],
    rhs: &[BigRational],
) -> Result<LinearOutcome, LinAlgError> {
    if rows.len() != rhs.len() {
        return Err(LinAlgError::DimensionMismatch { expected: rows.len(), got: rhs.len() });
    }
    let ncols = rows.first().map_or(0, |r| r.len());
    for r in rows {
        if r.len() != ncols {
            return Err(LinAlgError::DimensionMismatch { expected: ncols, got: r.len() });
        }
    }

    let mut basis: Vec<BasisRow> = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut coeffs = row.clone();
        let mut b = rhs[idx].clone();
        let mut provenance = vec![(idx, BigRational::one())];

        for br in &basis {
            let factor = coeffs[br.pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..ncols {
                let delta = &factor * &br.coeffs[j];
                coeffs[j] = &coeffs[j] - &delta;
            }
            b = &b - &(&factor * &br.rhs);
            provenance_sub(&mut provenance, &factor, &br.provenance);
        }

        match coeffs.iter().position(|c| !c.is_zero()) {
            Some(pivot) => {
                let lead = coeffs[pivot].clone();
                for c in coeffs.iter_mut() {
                    *c = &*c / &lead;
                }
                b = &b / &lead;
                for (_, c) in provenance.iter_mut() {
                    *c = &*c / &lead;
                }
                basis.push(BasisRow { coeffs, rhs: b, pivot, provenance });
            }
            None => {
                if !b.is_zero() {
                    let mut witness = vec![BigRational::zero(); rows.len()];
                    for (j, c) in provenance {
                        witness[j] = c;
                    }
                    return Ok(LinearOutcome::Infeasible { witness, contradiction: b });
                }
            }
        }
    }

    // Back-substitute so every basis row is supported only on its own pivot
    // and on free columns.
    for i in (0..basis.len()).rev() {
        for k in 0..i {
            let factor = basis[k].coeffs[basis[i].pivot].clone();
            if factor.is_zero() {
                continue;
            }
            let (head, tail) = basis.split_at_mut(i);
            let (upper, lower) = (&mut head[k], &tail[0]);
            for j in 0..ncols {
                let delta = &factor * &lower.coeffs[j];
                upper.coeffs[j] = &upper.coeffs[j] - &delta;
            }
            upper.rhs = &upper.rhs - &(&factor * &lower.rhs);
        }
    }

    let mut values = vec![BigRational::zero(); ncols];
    let mut free = vec![true; ncols];
    for br in &basis {
        free[br.pivot] = false;
        values[br.pivot] = br.rhs.clone();
    }
    Ok(LinearOutcome::Solution { values, free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn symmetric_system() {
        // x + y = 2, x - y = 0  =>  x = 1, y = 1
        let rows = vec![vec![r(1), r(1)], vec![r(1), r(-1)]];
        let rhs = vec![r(2), r(0)];
        match solve_linear(&rows, &rhs).unwrap() {
            LinearOutcome::Solution { values, free } => {
                assert_eq!(values, vec![r(1), r(1)]);
                assert_eq!(free, vec![false, false]);
            }
            other => panic!("expected solution, got {other:?}"),
        }
    }

    #[test]
    fn contradictory_system_yields_certificate() {
        // x = 1, x = 2
        let rows = vec![vec![r(1)], vec![r(1)]];
        let rhs = vec![r(1), r(2)];
        match solve_linear(&rows, &rhs).unwrap() {
            LinearOutcome::Infeasible { witness, contradiction } => {
                assert!(!contradiction.is_zero());
                // The witness combination must cancel all coefficients and
                // reproduce the contradiction on the right-hand side.
                let combo_coeff: BigRational =
                    witness.iter().zip(&rows).map(|(w, row)| w * &row[0]).sum();
                let combo_rhs: BigRational =
                    witness.iter().zip(&rhs).map(|(w, b)| w * b).sum();
                assert!(combo_coeff.is_zero());
                assert_eq!(combo_rhs, contradiction);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_row_flags_free_variable() {
        // 0 * x = 0
        let rows = vec![vec![r(0)]];
        let rhs = vec![r(0)];
        match solve_linear(&rows, &rhs).unwrap() {
            LinearOutcome::Solution { values, free } => {
                assert_eq!(values, vec![r(0)]);
                assert_eq!(free, vec![true]);
            }
            other => panic!("expected solution, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let rows = vec![vec![r(1), r(2)], vec![r(1)]];
        let rhs = vec![r(1), r(1)];
        assert!(solve_linear(&rows, &rhs).is_err());
    }

    #[test]
    fn underdetermined_with_pivots_after_free_columns() {
        // y = 3 with unknowns (x, y): x free, y pivot.
        let rows = vec![vec![r(0), r(2)]];
        let rhs = vec![r(6)];
        match solve_linear(&rows, &rhs).unwrap() {
            LinearOutcome::Solution { values, free } => {
                assert_eq!(values, vec![r(0), r(3)]);
                assert_eq!(free, vec![true, false]);
            }
            other => panic!("expected solution, got {other:?}"),
        }
    }
}
