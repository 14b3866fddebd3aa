//! Dense exact-rational simplex for covering LPs.
//!
//! Solves `min c·x  s.t.  A x >= b, x >= 0` by the two-phase tableau
//! method with Bland's rule (termination guaranteed, no cycling). All
//! arithmetic is rational, so primal/dual optimality is exact; the solver
//! re-verifies feasibility, dual feasibility and strong duality against
//! the original data before returning.

use num::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("infeasible program")]
    Infeasible,
    #[error("unbounded program")]
    Unbounded,
    #[error("solver self-check failed: {0}")]
    Internal(String),
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub value: Rat,
    /// Optimal primal vector, one entry per column of `a`.
    pub primal: Vec<Rat>,
    /// Optimal dual vector, one entry per row of `a`; all entries
    /// non-negative, with `b·dual == value` exactly.
    pub dual: Vec<Rat>,
}

/// Minimizes `c·x` subject to `A x >= b`, `x >= 0`, with `b >= 0`.
pub fn solve_covering_lp(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Result<LpSolution, SimplexError> {
    let n_rows = a.len();
    let n_struct = c.len();
    assert!(a.iter().all(|row| row.len() == n_struct));
    assert_eq!(b.len(), n_rows);
    assert!(b.iter().all(|v| !v.is_negative()), "rhs must be non-negative");

    // Columns: structural | surplus (-I) | artificial (I) | rhs.
    let n_surplus = n_rows;
    let art_base = n_struct + n_surplus;
    let n_cols = n_struct + n_surplus + n_rows;

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n_rows);
    for i in 0..n_rows {
        let mut row = vec![rat(0); n_cols + 1];
        row[..n_struct].clone_from_slice(&a[i]);
        row[n_struct + i] = rat(-1);
        row[art_base + i] = rat(1);
        row[n_cols] = b[i].clone();
        rows.push(row);
    }
    let mut basis: Vec<usize> = (0..n_rows).map(|i| art_base + i).collect();
    // Original row index per tableau row; survives redundant-row removal.
    let mut row_origin: Vec<usize> = (0..n_rows).collect();

    // Phase 1: minimize the artificial sum. Reduced costs start as
    // 0 - sum of the (unit-cost) basic rows.
    let mut cost = vec![rat(0); n_cols + 1];
    for j in art_base..n_cols {
        cost[j] = rat(1);
    }
    for row in &rows {
        for j in 0..=n_cols {
            cost[j] -= &row[j];
        }
    }
    pivot_until_optimal(&mut rows, &mut cost, &mut basis, n_cols, art_base, true)?;
    if !cost[n_cols].is_zero() {
        return Err(SimplexError::Infeasible);
    }

    // Drive basic artificials out; delete rows that became redundant.
    let mut i = 0;
    while i < rows.len() {
        if basis[i] >= art_base {
            let col = (0..art_base).find(|&j| !rows[i][j].is_zero());
            match col {
                Some(j) => pivot(&mut rows, &mut cost, &mut basis, i, j),
                None => {
                    rows.remove(i);
                    basis.remove(i);
                    row_origin.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2: real objective, reduced against the current basis.
    let real_cost = |j: usize| -> Rat {
        if j < n_struct {
            c[j].clone()
        } else {
            rat(0)
        }
    };
    for j in 0..=n_cols {
        cost[j] = if j < n_cols { real_cost(j) } else { rat(0) };
    }
    for (i, row) in rows.iter().enumerate() {
        let cb = real_cost(basis[i]);
        if !cb.is_zero() {
            for j in 0..=n_cols {
                cost[j] -= &cb * &row[j];
            }
        }
    }
    pivot_until_optimal(&mut rows, &mut cost, &mut basis, n_cols, art_base, false)?;

    let value = -cost[n_cols].clone();
    let mut primal = vec![rat(0); n_struct];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n_struct {
            primal[bv] = rows[i][n_cols].clone();
        }
    }
    // Duals: y = c_B * B^{-1}; the artificial columns carry B^{-1}.
    let mut dual = vec![rat(0); n_rows];
    for (orig, item) in dual.iter_mut().enumerate() {
        let mut y = rat(0);
        for (i, row) in rows.iter().enumerate() {
            let cb = real_cost(basis[i]);
            if !cb.is_zero() {
                y += cb * &row[art_base + orig];
            }
        }
        *item = y;
    }

    verify(a, b, c, &value, &primal, &dual)?;
    Ok(LpSolution { value, primal, dual })
}

fn pivot_until_optimal(
    rows: &mut Vec<Vec<Rat>>,
    cost: &mut [Rat],
    basis: &mut [usize],
    n_cols: usize,
    art_base: usize,
    allow_artificial: bool,
) -> Result<(), SimplexError> {
    loop {
        // Bland: smallest-index column with negative reduced cost.
        let enter_limit = if allow_artificial { art_base } else { art_base };
        let entering = (0..enter_limit).find(|&j| cost[j].is_negative());
        let Some(j) = entering else {
            return Ok(());
        };
        // Ratio test; ties resolved toward the smallest basis variable.
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = &row[n_cols] / &row[j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = leave else {
            return Err(SimplexError::Unbounded);
        };
        pivot(rows, cost, basis, i, j);
    }
}

fn pivot(rows: &mut [Vec<Rat>], cost: &mut [Rat], basis: &mut [usize], r: usize, c: usize) {
    let p = rows[r][c].clone();
    for v in rows[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = rows[r].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(pivot_row.iter()) {
                *v -= &f * pv;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (v, pv) in cost.iter_mut().zip(pivot_row.iter()) {
            *v -= &f * pv;
        }
    }
    basis[r] = c;
}

fn verify(
    a: &[Vec<Rat>],
    b: &[Rat],
    c: &[Rat],
    value: &Rat,
    primal: &[Rat],
    dual: &[Rat],
) -> Result<(), SimplexError> {
    for x in primal {
        if x.is_negative() {
            return Err(SimplexError::Internal("negative primal entry".into()));
        }
    }
    for (i, row) in a.iter().enumerate() {
        let lhs: Rat = row.iter().zip(primal).map(|(aij, xj)| aij * xj).sum();
        if lhs < b[i] {
            return Err(SimplexError::Internal(format!("primal row {i} uncovered")));
        }
    }
    let obj: Rat = c.iter().zip(primal).map(|(cj, xj)| cj * xj).sum();
    if &obj != value {
        return Err(SimplexError::Internal("objective mismatch".into()));
    }
    for y in dual {
        if y.is_negative() {
            return Err(SimplexError::Internal("negative dual entry".into()));
        }
    }
    for j in 0..c.len() {
        let lhs: Rat = a.iter().zip(dual).map(|(row, yi)| &row[j] * yi).sum();
        if lhs > c[j] {
            return Err(SimplexError::Internal(format!("dual column {j} violated")));
        }
    }
    let dual_obj: Rat = b.iter().zip(dual).map(|(bi, yi)| bi * yi).sum();
    if &dual_obj != value {
        return Err(SimplexError::Internal("strong duality violated".into()));
    }
    Ok(())
}
