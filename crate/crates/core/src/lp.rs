//! Exact primal simplex for `max c.x  s.t.  A x <= b, x >= 0` with `b >= 0`,
//! so the origin is always feasible and no phase one is needed. Bland's rule
//! prevents cycling.

use crate::linalg::{q, Q};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Q, x: Vec<Q> },
    Unbounded,
}

pub fn maximize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert!(b.iter().all(|x| !x.is_negative()), "rhs must be nonnegative");
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut row = vec![Q::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = q(1);
            row[width - 1] = b[i].clone();
            row
        })
        .collect();
    // objective row holds reduced costs -c
    let mut z = vec![Q::zero(); width];
    for j in 0..n {
        z[j] = -c[j].clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| z[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return LpOutcome::Unbounded;
        };
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for (x, p) in z.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        basis[r] = enter;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    LpOutcome::Optimal {
        value: z[width - 1].clone(),
        x,
    }
}

/// Homogeneous cone `{x >= 0 : rows . x <= 0 (le), rows . x = 0 (eq)}`.
/// Returns a point with every `le` row and every coordinate strictly
/// negative/positive when one exists.
pub fn strict_point(le: &[Vec<Q>], eq: &[Vec<Q>], n: usize) -> Option<Vec<Q>> {
    mixed_point(le, &[], eq, n)
}

/// Like [`strict_point`], but the `weak` rows only need `row . x <= 0`.
pub fn mixed_point(strict: &[Vec<Q>], weak: &[Vec<Q>], eq: &[Vec<Q>], n: usize) -> Option<Vec<Q>> {
    // variables (x_1..x_n, t); maximize t
    // t - x_i <= 0 ; row.x + t <= 0 ; eq rows as two inequalities; sum x <= 1
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        let mut r = vec![Q::zero(); n + 1];
        r[i] = q(-1);
        r[n] = q(1);
        a.push(r);
        b.push(Q::zero());
    }
    for row in strict {
        let mut r = row.clone();
        r.push(q(1));
        a.push(r);
        b.push(Q::zero());
    }
    for row in weak {
        let mut r = row.clone();
        r.push(Q::zero());
        a.push(r);
        b.push(Q::zero());
    }
    for row in eq {
        let mut r = row.clone();
        r.push(Q::zero());
        a.push(r.clone());
        b.push(Q::zero());
        a.push(r.into_iter().map(|x| -x).collect());
        b.push(Q::zero());
    }
    let mut s = vec![q(1); n];
    s.push(Q::zero());
    a.push(s);
    b.push(q(1));
    let mut c = vec![Q::zero(); n];
    c.push(q(1));
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, mut x } if value.is_positive() => {
            x.truncate(n);
            Some(x)
        }
        _ => None,
    }
}

/// Maximize `obj . x` over `{x >= 0, le . x <= 0, eq . x = 0, sum x <= 1}`.
pub fn max_over_slice(obj: &[Q], le: &[Vec<Q>], eq: &[Vec<Q>], n: usize) -> (Q, Vec<Q>) {
    let mut a: Vec<Vec<Q>> = le.to_vec();
    let mut b = vec![Q::zero(); le.len()];
    for row in eq {
        a.push(row.clone());
        a.push(row.iter().map(|x| -x.clone()).collect());
        b.push(Q::zero());
        b.push(Q::zero());
    }
    a.push(vec![q(1); n]);
    b.push(q(1));
    match maximize(obj, &a, &b) {
        LpOutcome::Optimal { value, x } => (value, x),
        LpOutcome::Unbounded => unreachable!("bounded by the simplex slice"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qvec;

    #[test]
    fn small_lp() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let out = maximize(&qvec(&[1, 1]), &[qvec(&[1, 2]), qvec(&[3, 1])], &qvec(&[4, 6]));
        match out {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, Q::new(14.into(), 5.into()));
                assert_eq!(x, vec![Q::new(8.into(), 5.into()), Q::new(6.into(), 5.into())]);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn unbounded_detected() {
        let out = maximize(&qvec(&[1, 0]), &[qvec(&[0, 1])], &qvec(&[1]));
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn strict_points() {
        // x - y <= 0 in the positive quadrant: interior nonempty
        assert!(strict_point(&[qvec(&[1, -1])], &[], 2).is_some());
        // x - y <= 0 and y - x <= 0: only the diagonal, no strict point
        assert!(strict_point(&[qvec(&[1, -1]), qvec(&[-1, 1])], &[], 2).is_none());
        // but with the equality moved to eq, the diagonal has a strict point
        assert!(strict_point(&[], &[qvec(&[1, -1])], 2).is_some());
    }
}
