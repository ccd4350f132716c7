//! Exact feasibility of `{t ≥ 0 : M t = b}` by a two-phase-free phase-one
//! simplex over the rationals. Pivots follow Bland's rule, so the method
//! terminates on degenerate problems.

use num_traits::{One, Signed, Zero};

use crate::linalg::QMatrix;
use crate::rational::Rational;

/// A nonnegative solution of `M t = b`, or `None` if none exists.
pub fn feasible_point(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.rows();
    let n = m.cols();
    assert_eq!(b.len(), rows, "right-hand side has the wrong length");
    // Columns: n structural, rows artificial, then the right-hand side.
    let width = n + rows + 1;
    let mut t = QMatrix::zeros(rows + 1, width);
    for i in 0..rows {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[(i, j)] = if flip { -m[(i, j)].clone() } else { m[(i, j)].clone() };
        }
        t[(i, n + i)] = Rational::one();
        t[(i, width - 1)] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    // Objective row: minimize the sum of artificials, kept as reduced costs.
    let obj = rows;
    for j in 0..width {
        if (n..n + rows).contains(&j) {
            continue;
        }
        let s = (0..rows).fold(Rational::zero(), |acc, i| acc + &t[(i, j)]);
        t[(obj, j)] = -s;
    }
    let mut basis: Vec<usize> = (n..n + rows).collect();

    loop {
        // Bland: lowest-index column with negative reduced cost.
        let Some(enter) = (0..width - 1).find(|&j| t[(obj, j)].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if !t[(i, enter)].is_positive() {
                continue;
            }
            let ratio = &t[(i, width - 1)] / &t[(i, enter)];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (pr, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, pr, enter);
        basis[pr] = enter;
    }

    if !t[(obj, width - 1)].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[(i, width - 1)].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut QMatrix, pr: usize, pc: usize) {
    let width = t.cols();
    let inv = t[(pr, pc)].recip();
    for j in 0..width {
        t[(pr, j)] *= &inv;
    }
    for i in 0..t.rows() {
        if i == pr || t[(i, pc)].is_zero() {
            continue;
        }
        let f = t[(i, pc)].clone();
        for j in 0..width {
            if t[(pr, j)].is_zero() {
                continue;
            }
            let delta = &f * &t[(pr, j)];
            t[(i, j)] -= delta;
        }
    }
}
