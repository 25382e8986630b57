//! Exact rational linear solving via fraction-free (Bareiss) elimination.
//!
//! Rows are cleared to integers first, the elimination itself stays in
//! `BigInt` with exact divisions, and back-substitution reintroduces
//! rationals only at the end. No floating point, no tolerance.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    /// The system has exactly one solution.
    Unique(Vec<Rat>),
    /// No solution satisfies every equation exactly.
    Inconsistent,
    /// Consistent but rank-deficient.
    Underdetermined,
}

/// Solves `A x = b` exactly. `a` is row-major, rows may outnumber columns.
pub fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> SolveOutcome {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    if ncols == 0 {
        return if b.iter().all(|v| v.is_zero()) {
            SolveOutcome::Unique(Vec::new())
        } else {
            SolveOutcome::Inconsistent
        };
    }

    // clear denominators row by row into an integer augmented matrix
    let mut m: Vec<Vec<Int>> = Vec::with_capacity(nrows);
    for (row, rhs) in a.iter().zip(b) {
        assert_eq!(row.len(), ncols, "ragged matrix");
        let mut lcm = Int::one();
        for v in row.iter().chain(std::iter::once(rhs)) {
            lcm = lcm.lcm(v.denom());
        }
        let mut irow: Vec<Int> = row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        irow.push(rhs.numer() * (&lcm / rhs.denom()));
        m.push(irow);
    }

    // Bareiss elimination with row pivoting
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut prev = Int::one();
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for r in row + 1..nrows {
            for c in col + 1..=ncols {
                let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "Bareiss exact division failed");
                m[r][c] = q;
            }
            m[r][col] = Int::zero();
        }
        prev = m[row][col].clone();
        pivot_cols.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }

    // rows below the profile must have vanishing right-hand side
    #[allow(clippy::needless_range_loop)]
    for r in row..nrows {
        if !m[r][ncols].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if pivot_cols.len() < ncols {
        return SolveOutcome::Underdetermined;
    }

    // back substitution over the triangular integer system
    let mut x = vec![Rat::zero(); ncols];
    for (i, &col) in pivot_cols.iter().enumerate().rev() {
        let mut acc = Rat::from_integer(m[i][ncols].clone());
        for c in col + 1..ncols {
            acc -= Rat::from_integer(m[i][c].clone()) * &x[c];
        }
        x[col] = acc / Rat::from_integer(m[i][col].clone());
    }
    SolveOutcome::Unique(x)
}

/// Convenience wrapper asserting signs make sense for debug display.
pub fn rat_is_negative(r: &Rat) -> bool {
    r.is_negative()
}
