//! Dense tableau simplex for `max c.x` subject to `A x <= b`, `x >= 0`,
//! with `b >= 0` so the slack basis is feasible from the start.
//! Bland's rule picks both the entering and the leaving variable, which
//! rules out cycling.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    pub x: Vec<T>,
    /// Optimal dual values, one per constraint row.
    pub duals: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal(LpSolution<T>),
    Unbounded,
}

pub fn maximize<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpOutcome<T> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "one right-hand side per row");
    assert!(b.iter().all(|v| !v.is_negative_tol()), "right-hand sides must be nonnegative");
    let width = n + m + 1;
    let mut t: Vec<Vec<T>> = (0..m)
        .map(|i| {
            assert_eq!(a[i].len(), n, "row {i} has the wrong width");
            let mut row = a[i].clone();
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    // Reduced costs; the last entry holds minus the objective value.
    let mut z: Vec<T> = c.to_vec();
    z.extend(std::iter::repeat_n(T::zero(), m + 1));
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..n + m).find(|&j| z[j].is_positive_tol()) else { break };
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive_tol() {
                continue;
            }
            let ratio = t[i][width - 1].clone() / t[i][enter].clone();
            leave = match leave {
                None => Some((i, ratio)),
                Some((r, best)) => {
                    let better = ratio < best && !ratio.approx_eq(&best);
                    let tie = ratio.approx_eq(&best) && basis[i] < basis[r];
                    if better || tie {
                        Some((i, ratio))
                    } else {
                        Some((r, best))
                    }
                }
            };
        }
        let Some((r, _)) = leave else { return LpOutcome::Unbounded };
        let p = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        let f = z[enter].clone();
        for (v, pv) in z.iter_mut().zip(&pivot_row) {
            *v = v.clone() - f.clone() * pv.clone();
        }
        basis[r] = enter;
    }
    let mut x = vec![T::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    let duals = (0..m).map(|i| -z[n + i].clone()).collect();
    LpOutcome::Optimal(LpSolution { value: -z[width - 1].clone(), x, duals })
}
