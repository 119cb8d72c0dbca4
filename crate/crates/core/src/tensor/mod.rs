//! Exact dense operators on tensor powers `V^⊗k`.
//!
//! Basis convention: a multi-index `(i_1, …, i_k)` over site dimension `n`
//! has composite code `Σ_t i_t · n^(k−t)` — the first factor is the most
//! significant digit. Operators act on column vectors; `multiply(A, B)`
//! applies `B` first, then `A`.

mod rank;

use crate::error::{Error, Result};
use crate::scalar::{Backend, QContext, Scalar};

pub use rank::rank;

/// Default cap on `n^k`; callers that legitimately need more raise it
/// explicitly (see `HeckeSymmetry::max_dim`).
pub const DEFAULT_MAX_DIM: usize = 512;

/// A multi-index `(i_1, …, i_k)` with digits in `{0, …, n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    pub digits: Vec<usize>,
    pub n: usize,
}

impl MultiIndex {
    pub fn decode(code: usize, n: usize, k: usize) -> Self {
        let mut digits = vec![0; k];
        let mut rest = code;
        for t in (0..k).rev() {
            digits[t] = rest % n;
            rest /= n;
        }
        MultiIndex { digits, n }
    }

    pub fn encode(&self) -> usize {
        self.digits.iter().fold(0, |acc, d| acc * self.n + d)
    }
}

pub fn checked_dim(n: usize, k: usize, max_dim: usize) -> Result<usize> {
    let mut dim = 1usize;
    for _ in 0..k {
        dim = dim
            .checked_mul(n)
            .filter(|d| *d <= max_dim)
            .ok_or(Error::DimensionLimit(usize::MAX, max_dim))?;
    }
    Ok(dim)
}

/// Exact dense operator on `V^⊗k`; entries indexed `[out][in]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorOperator {
    n: usize,
    k: usize,
    dim: usize,
    entries: Vec<Scalar>,
}

impl TensorOperator {
    pub fn zero(ctx: &QContext, n: usize, k: usize) -> Self {
        let dim = n.pow(k as u32);
        TensorOperator {
            n,
            k,
            dim,
            entries: vec![ctx.zero(); dim * dim],
        }
    }

    pub fn identity(ctx: &QContext, n: usize, k: usize) -> Self {
        let mut op = TensorOperator::zero(ctx, n, k);
        for i in 0..op.dim {
            op.entries[i * op.dim + i] = ctx.one();
        }
        op
    }

    pub fn from_fn(
        ctx: &QContext,
        n: usize,
        k: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut op = TensorOperator::zero(ctx, n, k);
        for i in 0..op.dim {
            for j in 0..op.dim {
                op.entries[i * op.dim + j] = f(i, j);
            }
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn backend(&self) -> Backend {
        // all entries share one backend by construction
        self.entries[0].backend()
    }

    pub fn entry(&self, out: usize, inp: usize) -> &Scalar {
        &self.entries[out * self.dim + inp]
    }

    pub fn set_entry(&mut self, out: usize, inp: usize, v: Scalar) {
        self.entries[out * self.dim + inp] = v;
    }

    pub fn row(&self, out: usize) -> &[Scalar] {
        &self.entries[out * self.dim..(out + 1) * self.dim]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.entry(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// First nonzero entry as a multi-index pair, for residual reports.
    pub fn first_nonzero(&self) -> Option<(MultiIndex, MultiIndex)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !self.entry(i, j).is_zero() {
                    return Some((
                        MultiIndex::decode(i, self.n, self.k),
                        MultiIndex::decode(j, self.n, self.k),
                    ));
                }
            }
        }
        None
    }

    fn check_same_shape(&self, rhs: &TensorOperator, op: &str) -> Result<()> {
        if self.n != rhs.n || self.k != rhs.k {
            return Err(Error::ShapeMismatch(format!(
                "{op}: ({}, {} sites) vs ({}, {} sites)",
                self.n, self.k, rhs.n, rhs.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &TensorOperator) -> Result<TensorOperator> {
        self.check_same_shape(rhs, "add")?;
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(TensorOperator {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, rhs: &TensorOperator) -> Result<TensorOperator> {
        self.check_same_shape(rhs, "sub")?;
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(TensorOperator {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<TensorOperator> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.checked_mul(c))
            .collect::<Result<_>>()?;
        Ok(TensorOperator {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries,
        })
    }

    pub fn neg(&self) -> TensorOperator {
        let entries = self.entries.iter().map(|a| -a).collect();
        TensorOperator {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries,
        }
    }

    /// Matrix product `self · rhs` (apply `rhs` first). Zero entries are
    /// skipped, so block-structured operators multiply at their block cost.
    pub fn multiply(&self, rhs: &TensorOperator) -> Result<TensorOperator> {
        self.check_same_shape(rhs, "multiply")?;
        let d = self.dim;
        let mut out = vec![None::<Scalar>; d * d];
        // nonzero pattern of rhs rows, computed once
        let rhs_nnz: Vec<Vec<u32>> = (0..d)
            .map(|t| {
                (0..d)
                    .filter(|j| !rhs.entry(t, *j).is_zero())
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        for i in 0..d {
            let row = self.row(i);
            for (t, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &j in &rhs_nnz[t] {
                    let j = j as usize;
                    let prod = a.checked_mul(rhs.entry(t, j))?;
                    let slot = &mut out[i * d + j];
                    *slot = Some(match slot.take() {
                        None => prod,
                        Some(acc) => acc.checked_add(&prod)?,
                    });
                }
            }
        }
        let zero = zero_like(&self.entries[0]);
        let entries = out
            .into_iter()
            .map(|e| e.unwrap_or_else(|| zero.clone()))
            .collect();
        Ok(TensorOperator {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries,
        })
    }

    /// Kronecker product; `self` occupies the leading sites.
    pub fn tensor_product(&self, rhs: &TensorOperator) -> Result<TensorOperator> {
        if self.n != rhs.n {
            return Err(Error::ShapeMismatch(format!(
                "tensor_product: site dimensions {} vs {}",
                self.n, rhs.n
            )));
        }
        let (da, db) = (self.dim, rhs.dim);
        let dim = da * db;
        let zero = zero_like(&self.entries[0]);
        let mut entries = vec![zero; dim * dim];
        for ia in 0..da {
            for ja in 0..da {
                let a = self.entry(ia, ja);
                if a.is_zero() {
                    continue;
                }
                for ib in 0..db {
                    for jb in 0..db {
                        let b = rhs.entry(ib, jb);
                        if b.is_zero() {
                            continue;
                        }
                        entries[(ia * db + ib) * dim + (ja * db + jb)] = a.checked_mul(b)?;
                    }
                }
            }
        }
        Ok(TensorOperator {
            n: self.n,
            k: self.k + rhs.k,
            dim,
            entries,
        })
    }

    /// Embed a two-site operator at sites `(pos, pos+1)` of `V^⊗k`,
    /// `1 ≤ pos ≤ k−1`; identity elsewhere.
    pub fn embed_at(op2: &TensorOperator, pos: usize, k: usize) -> Result<TensorOperator> {
        if op2.k != 2 {
            return Err(Error::ShapeMismatch(
                "embed_at needs a two-site operator".into(),
            ));
        }
        if pos < 1 || pos + 1 > k {
            return Err(Error::PositionOutOfRange(format!(
                "embed_at({pos}) on {k} sites"
            )));
        }
        let n = op2.n;
        let left = n.pow((pos - 1) as u32);
        let right = n.pow((k - pos - 1) as u32);
        let dim = left * n * n * right;
        let zero = zero_like(&op2.entries[0]);
        let mut entries = vec![zero; dim * dim];
        let block = n * n;
        for a in 0..left {
            for (r, s) in (0..block).flat_map(|r| (0..block).map(move |s| (r, s))) {
                let v = op2.entry(r, s);
                if v.is_zero() {
                    continue;
                }
                for b in 0..right {
                    let out = (a * block + r) * right + b;
                    let inp = (a * block + s) * right + b;
                    entries[out * dim + inp] = v.clone();
                }
            }
        }
        Ok(TensorOperator { n, k, dim, entries })
    }

    /// Partial trace over one site (1-based); the result has `k−1` sites.
    pub fn partial_trace(&self, site: usize) -> Result<TensorOperator> {
        if site < 1 || site > self.k {
            return Err(Error::PositionOutOfRange(format!(
                "partial_trace({site}) on {} sites",
                self.k
            )));
        }
        let n = self.n;
        let left = n.pow((site - 1) as u32);
        let right = n.pow((self.k - site) as u32);
        let dim = left * right;
        let zero = zero_like(&self.entries[0]);
        let mut entries = vec![zero; dim * dim];
        for il in 0..left {
            for ir in 0..right {
                for jl in 0..left {
                    for jr in 0..right {
                        let mut acc = zero_like(&self.entries[0]);
                        for a in 0..n {
                            let out = (il * n + a) * right + ir;
                            let inp = (jl * n + a) * right + jr;
                            let e = self.entry(out, inp);
                            if !e.is_zero() {
                                acc = acc.checked_add(e)?;
                            }
                        }
                        entries[(il * right + ir) * dim + (jl * right + jr)] = acc;
                    }
                }
            }
        }
        Ok(TensorOperator {
            n,
            k: self.k - 1,
            dim,
            entries,
        })
    }

    /// The usual matrix trace.
    pub fn trace(&self) -> Result<Scalar> {
        let mut acc = zero_like(&self.entries[0]);
        for i in 0..self.dim {
            acc = acc.checked_add(self.entry(i, i))?;
        }
        Ok(acc)
    }

    /// Exact rank over the scalar field.
    pub fn rank(&self) -> usize {
        rank::rank(self)
    }

    /// Exact inverse; `Err(Singular)` when none exists.
    pub fn invert(&self) -> Result<TensorOperator> {
        let d = self.dim;
        let mut a: Vec<Vec<Scalar>> = (0..d).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<Scalar>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            one_like(&self.entries[0])
                        } else {
                            zero_like(&self.entries[0])
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..d {
            // simplest nonzero pivot in this column
            let pivot_row = (col..d)
                .filter(|r| !a[*r][col].is_zero())
                .min_by_key(|r| a[*r][col].complexity())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let p_inv = a[col][col].inv()?;
            for j in 0..d {
                a[col][j] = a[col][j].checked_mul(&p_inv)?;
                inv[col][j] = inv[col][j].checked_mul(&p_inv)?;
            }
            for r in 0..d {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..d {
                    if !a[col][j].is_zero() {
                        let t = f.checked_mul(&a[col][j])?;
                        a[r][j] = a[r][j].checked_sub(&t)?;
                    }
                    if !inv[col][j].is_zero() {
                        let t = f.checked_mul(&inv[col][j])?;
                        inv[r][j] = inv[r][j].checked_sub(&t)?;
                    }
                }
            }
        }
        let entries = inv.into_iter().flatten().collect();
        Ok(TensorOperator {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries,
        })
    }

    /// Column inverse `Q` of a two-site operator `R`: the unique solution of
    /// `Σ_{a,b} R^{ia}_{jb} Q^{bk}_{al} = δ^i_l δ^k_j` (and the same with the
    /// factors swapped). Built by inverting the reshuffled matrix
    /// `F[(i,j),(b,a)] = R^{ia}_{jb}`.
    pub fn column_inverse(&self) -> Result<TensorOperator> {
        if self.k != 2 {
            return Err(Error::ShapeMismatch(
                "column_inverse needs a two-site operator".into(),
            ));
        }
        let n = self.n;
        let f = TensorOperator::from_fn(&ctx_like(&self.entries[0]), n, 2, |row, col| {
            let (i, j) = (row / n, row % n);
            let (b, a) = (col / n, col % n);
            self.entry(i * n + a, j * n + b).clone()
        });
        let f_inv = f.invert().map_err(|e| match e {
            Error::Singular => Error::NotColumnInvertible,
            other => other,
        })?;
        // Q^{bk}_{al} = F^{-1}[(b,a),(l,k)]
        Ok(TensorOperator::from_fn(
            &ctx_like(&self.entries[0]),
            n,
            2,
            |out, inp| {
                let (b, kk) = (out / n, out % n);
                let (a, l) = (inp / n, inp % n);
                f_inv.entry(b * n + a, l * n + kk).clone()
            },
        ))
    }

    /// Evaluate every entry at a rational `q` (formal backend only).
    pub fn eval_at(&self, q: &crate::scalar::Rat) -> Result<TensorOperator> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.eval_at(q).map(Scalar::Num))
            .collect::<Result<_>>()?;
        Ok(TensorOperator {
            n: self.n,
            k: self.k,
            dim: self.dim,
            entries,
        })
    }
}

pub(crate) fn zero_like(s: &Scalar) -> Scalar {
    s.zero_like()
}

pub(crate) fn one_like(s: &Scalar) -> Scalar {
    s.one_like()
}

fn ctx_like(s: &Scalar) -> QContext {
    match s.backend() {
        // the placeholder q is never read: entries are cloned in
        Backend::Numeric => QContext::numeric_from_parts(1, 1),
        Backend::Formal => QContext::Formal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QContext;

    fn fq() -> QContext {
        QContext::Formal
    }

    /// Naive Kronecker-product oracle for embed_at.
    fn embed_oracle(op2: &TensorOperator, pos: usize, k: usize) -> TensorOperator {
        let ctx = fq();
        let mut acc = if pos > 1 {
            TensorOperator::identity(&ctx, op2.n(), pos - 1)
        } else {
            op2.clone()
        };
        if pos > 1 {
            acc = acc.tensor_product(op2).unwrap();
        }
        if k > pos + 1 {
            acc = acc
                .tensor_product(&TensorOperator::identity(&ctx, op2.n(), k - pos - 1))
                .unwrap();
        }
        acc
    }

    fn sample_op2(ctx: &QContext, n: usize) -> TensorOperator {
        // an arbitrary dense-ish two-site operator with distinct entries
        TensorOperator::from_fn(ctx, n, 2, |i, j| {
            if (i + 2 * j) % 3 == 0 {
                ctx.from_int((i + 1) as i64)
                    .checked_mul(&ctx.q_pow((j % 3) as i64 - 1))
                    .unwrap()
            } else {
                ctx.zero()
            }
        })
    }

    #[test]
    fn multi_index_round_trip() {
        for code in 0..27 {
            let mi = MultiIndex::decode(code, 3, 3);
            assert_eq!(mi.encode(), code);
        }
        // first factor most significant: code of (1,0) over n=2, k=2 is 2
        assert_eq!(
            MultiIndex {
                digits: vec![1, 0],
                n: 2
            }
            .encode(),
            2
        );
    }

    #[test]
    fn embed_matches_kronecker_oracle() {
        let ctx = fq();
        let op = sample_op2(&ctx, 2);
        for k in 2..=4 {
            for pos in 1..k {
                let got = TensorOperator::embed_at(&op, pos, k).unwrap();
                assert_eq!(got, embed_oracle(&op, pos, k), "pos={pos} k={k}");
            }
        }
    }

    #[test]
    fn embed_identity_is_identity() {
        let ctx = fq();
        let id2 = TensorOperator::identity(&ctx, 2, 2);
        let e = TensorOperator::embed_at(&id2, 2, 4).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn multiply_against_direct_summation() {
        let ctx = fq();
        let op = sample_op2(&ctx, 2);
        let a = TensorOperator::embed_at(&op, 1, 3).unwrap();
        let b = TensorOperator::embed_at(&op, 2, 3).unwrap();
        let fast = a.multiply(&b).unwrap();
        // brute-force index sum
        let slow = TensorOperator::from_fn(&ctx, 2, 3, |i, j| {
            let mut acc = ctx.zero();
            for t in 0..8 {
                acc = acc + a.entry(i, t).checked_mul(b.entry(t, j)).unwrap();
            }
            acc
        });
        assert_eq!(fast, slow);
        // identity is neutral
        let id = TensorOperator::identity(&ctx, 2, 3);
        assert_eq!(id.multiply(&a).unwrap(), a);
        assert_eq!(a.multiply(&id).unwrap(), a);
    }

    #[test]
    fn multiply_is_associative() {
        let ctx = fq();
        let op = sample_op2(&ctx, 2);
        let a = TensorOperator::embed_at(&op, 1, 3).unwrap();
        let b = TensorOperator::embed_at(&op, 2, 3).unwrap();
        let c = a.add(&b).unwrap();
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn distant_embeddings_commute() {
        let ctx = fq();
        let op = sample_op2(&ctx, 2);
        let a = TensorOperator::embed_at(&op, 1, 4).unwrap();
        let b = TensorOperator::embed_at(&op, 3, 4).unwrap();
        assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
    }

    #[test]
    fn partial_trace_basics() {
        let ctx = fq();
        let id = TensorOperator::identity(&ctx, 2, 2);
        let t = id.partial_trace(2).unwrap();
        // Tr_(2) id = n·id
        assert_eq!(
            t,
            TensorOperator::identity(&ctx, 2, 1)
                .scale(&ctx.from_int(2))
                .unwrap()
        );
        // Tr_(last) (A ⊗ B) = Tr(B) · A for single-site B
        let a = sample_op2(&ctx, 2);
        let b = TensorOperator::from_fn(&ctx, 2, 1, |i, j| ctx.from_int((2 * i + j + 1) as i64));
        let prod = a.tensor_product(&b).unwrap();
        let reduced = prod.partial_trace(3).unwrap();
        assert_eq!(reduced, a.scale(&b.trace().unwrap()).unwrap());
    }

    #[test]
    fn invert_round_trip() {
        let ctx = fq();
        let id = TensorOperator::identity(&ctx, 2, 1);
        assert_eq!(id.invert().unwrap(), id);
        let q_id = id.scale(&ctx.q()).unwrap();
        assert_eq!(q_id.invert().unwrap(), id.scale(&ctx.q_pow(-1)).unwrap());
        let m = TensorOperator::from_fn(&ctx, 2, 2, |i, j| {
            if i == j {
                ctx.q_pow(i as i64 + 1)
            } else if i + 1 == j {
                ctx.one()
            } else {
                ctx.zero()
            }
        });
        let inv = m.invert().unwrap();
        assert!(m.multiply(&inv).unwrap().is_identity());
        assert!(inv.multiply(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let ctx = fq();
        let z = TensorOperator::zero(&ctx, 2, 1);
        assert!(matches!(z.invert(), Err(Error::Singular)));
    }

    #[test]
    fn flip_is_its_own_column_inverse() {
        let ctx = fq();
        let n = 3;
        let flip = TensorOperator::from_fn(&ctx, n, 2, |out, inp| {
            let (i, a) = (out / n, out % n);
            let (j, b) = (inp / n, inp % n);
            if i == b && a == j {
                ctx.one()
            } else {
                ctx.zero()
            }
        });
        let q = flip.column_inverse().unwrap();
        assert_eq!(q, flip);
    }

    #[test]
    fn scalar_operator_is_not_column_invertible() {
        // the reshuffle of q·id has rank n, so no column inverse exists
        let ctx = fq();
        let q_id = TensorOperator::identity(&ctx, 2, 2)
            .scale(&ctx.q())
            .unwrap();
        assert!(matches!(
            q_id.column_inverse(),
            Err(Error::NotColumnInvertible)
        ));
    }

    #[test]
    fn column_inverse_of_scaled_flip() {
        // R = q·flip has column inverse Q^{bk}_{al} = q^{-1} δ^b_l δ^k_a
        let ctx = fq();
        let n = 2;
        let r = TensorOperator::from_fn(&ctx, n, 2, |out, inp| {
            let (i, a) = (out / n, out % n);
            let (j, b) = (inp / n, inp % n);
            if i == b && a == j {
                ctx.q()
            } else {
                ctx.zero()
            }
        });
        let q = r.column_inverse().unwrap();
        let expect = TensorOperator::from_fn(&ctx, n, 2, |out, inp| {
            let (b, k) = (out / n, out % n);
            let (a, l) = (inp / n, inp % n);
            if b == l && k == a {
                ctx.q_pow(-1)
            } else {
                ctx.zero()
            }
        });
        assert_eq!(q, expect);
    }
}
