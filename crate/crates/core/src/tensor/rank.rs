//! Exact rank computation.
//!
//! The nonzero pattern is first split into independent row/column blocks
//! (connected components of the bipartite support graph); operators built
//! from R-matrices are typically block diagonal in the multi-index basis,
//! and per-block elimination is dramatically cheaper than one global pass.
//!
//! Numeric backend: rows are cleared to integers and eliminated with the
//! fraction-free Bareiss scheme. Formal backend: straightforward elimination
//! with rational-function pivots, picking the structurally simplest nonzero
//! pivot (fewest terms) to limit expression growth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::TensorOperator;
use crate::scalar::{Rat, Scalar};

pub fn rank(op: &TensorOperator) -> usize {
    let d = op.dim();
    let mut uf = UnionFind::new(2 * d); // rows: 0..d, cols: d..2d
    let mut nonzero = false;
    for i in 0..d {
        for j in 0..d {
            if !op.entry(i, j).is_zero() {
                uf.union(i, d + j);
                nonzero = true;
            }
        }
    }
    if !nonzero {
        return 0;
    }
    let mut groups: std::collections::HashMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for i in 0..d {
        let root = uf.find(i);
        groups.entry(root).or_default().0.push(i);
    }
    for j in 0..d {
        let root = uf.find(d + j);
        groups.entry(root).or_default().1.push(j);
    }
    groups
        .values()
        .filter(|(rows, cols)| !rows.is_empty() && !cols.is_empty())
        .map(|(rows, cols)| block_rank(op, rows, cols))
        .sum()
}

fn block_rank(op: &TensorOperator, rows: &[usize], cols: &[usize]) -> usize {
    let first = op.entry(rows[0], cols[0]);
    match first {
        Scalar::Num(_) => {
            let m: Vec<Vec<Rat>> = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| match op.entry(i, j) {
                            Scalar::Num(r) => r.clone(),
                            Scalar::Formal(_) => unreachable!("one backend per operator"),
                        })
                        .collect()
                })
                .collect();
            bareiss_rank(m)
        }
        Scalar::Formal(_) => {
            let m: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| op.entry(i, j).clone()).collect())
                .collect();
            pivoted_rank(m)
        }
    }
}

/// Fraction-free Bareiss elimination on integer-cleared rows.
fn bareiss_rank(m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m
        .into_iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for v in &row {
                lcm = lcm.lcm(v.denom());
            }
            row.into_iter()
                .map(|v| {
                    let s = v * Rat::from_integer(lcm.clone());
                    debug_assert!(s.denom().is_one());
                    s.numer().clone()
                })
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0; // next pivot row
    for c in 0..cols {
        // smallest nonzero pivot by bit size keeps growth down
        let pivot = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].magnitude().bits());
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Elimination over the rational-function field with simplest-pivot choice.
fn pivoted_rank(mut a: Vec<Vec<Scalar>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let pivot = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].complexity());
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        let pv = a[r][c].clone();
        let (upper, lower) = a.split_at_mut(r + 1);
        let pivot_row = &upper[r];
        for row in lower.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].checked_div(&pv).expect("pivot nonzero");
            for (x, pe) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                if !pe.is_zero() {
                    let t = f.checked_mul(pe).expect("same backend");
                    *x = x.checked_sub(&t).expect("same backend");
                }
            }
            row[c] = pv.zero_like();
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QContext;

    #[test]
    fn rank_of_identity_and_zero() {
        for ctx in [QContext::Formal, QContext::numeric_from_parts(3, 2)] {
            let id = TensorOperator::identity(&ctx, 2, 2);
            assert_eq!(id.rank(), 4);
            assert_eq!(TensorOperator::zero(&ctx, 2, 2).rank(), 0);
        }
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        let ctx = QContext::numeric_from_parts(3, 2);
        let v = [1i64, 2, 0, -3];
        let u = [2i64, 0, 5, 1];
        let m = TensorOperator::from_fn(&ctx, 2, 2, |i, j| ctx.from_int(v[i] * u[j]));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn formal_rank_with_cancellation() {
        // rows proportional over the function field: rank 1
        let ctx = QContext::Formal;
        let m = TensorOperator::from_fn(&ctx, 2, 1, |i, j| {
            let base = &ctx.q_pow(j as i64) + &ctx.one();
            if i == 0 {
                base
            } else {
                base.checked_mul(&ctx.q_number(2).unwrap()).unwrap()
            }
        });
        assert_eq!(m.rank(), 1);
    }
}
