//! The rank frame of an even symmetry: rank detection, Poincaré series,
//! the rank-one factorization `A^(p) = v·u`, the matrices `N` and `M`, the
//! naturality verdict, and renormalization bookkeeping.
//!
//! Fractional powers of `q` never materialize: the rescaling that makes the
//! braidings natural is `(±q)^(−1/p)`, recorded symbolically as a sign and
//! the exponent `−1/p`. Every traced quantity downstream uses only integer
//! powers (the fractional factor is absorbed into the trace normalization).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heckealg::LocalRep;
use crate::scalar::Scalar;
use crate::symmetry::HeckeSymmetry;
use crate::tensor::TensorOperator;

/// Dimensions of the quadratic-algebra components:
/// `minus[l] = dim Λ₋^l` for `l = 0…p` and `plus[l] = dim Λ₊^l` for
/// `l = 0…plus_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

impl PoincareSeries {
    /// `P₊(t)·P₋(−t) = 1` through degree `plus.len()−1`.
    pub fn relation_holds(&self) -> bool {
        let degree = self.plus.len();
        for d in 0..degree {
            let mut acc: i64 = 0;
            for j in 0..=d.min(self.minus.len() - 1) {
                let i = d - j;
                if i >= self.plus.len() {
                    continue;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * (self.plus[i] as i64) * (self.minus[j] as i64);
            }
            if acc != i64::from(d == 0) {
                return false;
            }
        }
        true
    }
}

/// The sign and rational exponent of the rescaling `(εq)^(−1/p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenormExponent {
    /// `"+"` or `"-"`, present only when the frame is natural.
    pub sign: Option<String>,
    /// Always `"-1/p"`.
    pub exponent: String,
}

/// Everything the frame pipeline establishes about one symmetry.
#[derive(Debug, Clone)]
pub struct RankFrame {
    pub p: u32,
    pub u: Vec<Scalar>,
    pub v: Vec<Scalar>,
    pub n_matrix: TensorOperator,
    pub m_matrix: TensorOperator,
    pub n_scalar: bool,
    pub m_scalar: bool,
    pub natural: bool,
    pub epsilon: Option<i8>,
    pub renorm: RenormExponent,
    pub poincare: PoincareSeries,
}

impl RankFrame {
    pub fn report(&self) -> FrameReport {
        let n = self.n_matrix.dim();
        let render = |m: &TensorOperator| -> Vec<Vec<String>> {
            (0..n)
                .map(|i| (0..n).map(|j| m.entry(i, j).to_string()).collect())
                .collect()
        };
        FrameReport {
            p: self.p,
            poincare: self.poincare.clone(),
            poincare_relation_ok: self.poincare.relation_holds(),
            n_matrix: render(&self.n_matrix),
            m_matrix: render(&self.m_matrix),
            n_scalar: self.n_scalar,
            m_scalar: self.m_scalar,
            natural: self.natural,
            epsilon: self
                .epsilon
                .map(|e| if e > 0 { "+1".into() } else { "-1".into() }),
            renormalization: self.renorm.clone(),
            det_q_central: self.n_scalar,
            det_q_note: "quantum determinant centrality in the RTT bialgebra is equivalent to N \
                         being scalar (reported from the computed N, not from the bialgebra)"
                .into(),
        }
    }
}

/// Serializable view of a `RankFrame`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameReport {
    pub p: u32,
    pub poincare: PoincareSeries,
    pub poincare_relation_ok: bool,
    pub n_matrix: Vec<Vec<String>>,
    pub m_matrix: Vec<Vec<String>>,
    pub n_scalar: bool,
    pub m_scalar: bool,
    pub natural: bool,
    pub epsilon: Option<String>,
    pub renormalization: RenormExponent,
    pub det_q_central: bool,
    pub det_q_note: String,
}

/// Default search bound: an even symmetry has `p ≤ n`, so failure past `n + 1`
/// is conclusive.
pub fn default_max_k(n: usize) -> usize {
    n + 2
}

/// Find the smallest `p` with `rank A^(p) = 1` and `A^(p+1) = 0`; every
/// lower level must have rank above one.
pub fn detect_rank(rep: &LocalRep<'_>, max_k: usize) -> Result<u32> {
    if max_k < 2 {
        return Err(Error::OutOfRange("detect_rank needs max_k ≥ 2".into()));
    }
    for k in 1..=max_k {
        let r = rep.antisymmetrizer(k)?.rank();
        if r == 1 {
            let next = rep.antisymmetrizer(k + 1)?;
            if next.is_zero() {
                return Ok(k as u32);
            }
            return Err(Error::NotEven(format!(
                "rank A^({k}) = 1 but A^({}) ≠ 0",
                k + 1
            )));
        }
        if r == 0 {
            return Err(Error::NotEven(format!(
                "rank A^({k}) = 0 without a rank-one level below"
            )));
        }
    }
    Err(Error::NotEven(format!(
        "no rank-one antisymmetrizer up to k = {max_k}"
    )))
}

/// Ranks of the antisymmetrizer and symmetrizer ladders, with the Koszul
/// relation `P₊(t)·P₋(−t) = 1` asserted through `plus_degree`.
pub fn poincare_series(rep: &LocalRep<'_>, p: u32, plus_degree: usize) -> Result<PoincareSeries> {
    let mut minus = vec![1usize];
    for l in 1..=p as usize {
        minus.push(rep.antisymmetrizer(l)?.rank());
    }
    let mut plus = vec![1usize];
    for l in 1..=plus_degree {
        plus.push(rep.symmetrizer(l)?.rank());
    }
    let series = PoincareSeries { minus, plus };
    if series.minus[p as usize] != 1 {
        return Err(Error::NotEven(format!(
            "dim Λ₋^{p} = {} ≠ 1",
            series.minus[p as usize]
        )));
    }
    if !series.relation_holds() {
        return Err(Error::RelationViolated(format!(
            "P₊(t)·P₋(−t) ≠ 1 through degree {plus_degree}: minus {:?}, plus {:?}",
            series.minus, series.plus
        )));
    }
    Ok(series)
}

/// Rank-one factorization `A^(p) = v·u` with `u·v = 1`; the first nonzero
/// entry of `v` in lexicographic multi-index order is gauged to 1.
pub fn extract_uv(rep: &LocalRep<'_>, p: u32) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let a = rep.antisymmetrizer(p as usize)?;
    let dim = a.dim();
    let ctx = rep.symmetry().ctx();
    let row0 = (0..dim)
        .find(|&i| (0..dim).any(|j| !a.entry(i, j).is_zero()))
        .ok_or_else(|| Error::RankNotOne("antisymmetrizer is zero".into()))?;
    // gauge v[row0] = 1, so u is that row
    let u: Vec<Scalar> = (0..dim).map(|j| a.entry(row0, j).clone()).collect();
    let col0 = u
        .iter()
        .position(|x| !x.is_zero())
        .expect("row0 is nonzero");
    let u0_inv = u[col0].inv()?;
    let v: Vec<Scalar> = (0..dim)
        .map(|i| a.entry(i, col0).checked_mul(&u0_inv))
        .collect::<Result<_>>()?;
    // the factorization must reproduce A^(p) exactly
    for (i, vi) in v.iter().enumerate() {
        for (j, uj) in u.iter().enumerate() {
            if &vi.checked_mul(uj)? != a.entry(i, j) {
                return Err(Error::RankNotOne(format!(
                    "A^({p}) is not the outer product v·u at entry ({i}, {j})"
                )));
            }
        }
    }
    let mut pairing = ctx.zero();
    for (ui, vi) in u.iter().zip(v.iter()) {
        pairing = pairing.checked_add(&ui.checked_mul(vi)?)?;
    }
    if !pairing.is_one() {
        return Err(Error::RankNotOne(format!("u·v = {pairing} ≠ 1")));
    }
    Ok((u, v))
}

/// The frame matrices
/// `N^i_j = (−1)^(p−1)·q·p_q · u_(a₂…a_p j) v^(i a₂…a_p)` and
/// `M^i_j = (−1)^(p−1)·q·p_q · u_(j a₂…a_p) v^(a₂…a_p i)`,
/// with `M·N = q²·id` asserted.
pub fn frame_matrices(
    h: &HeckeSymmetry,
    p: u32,
    u: &[Scalar],
    v: &[Scalar],
) -> Result<(TensorOperator, TensorOperator)> {
    let ctx = h.ctx();
    let n = h.n();
    let inner = n.pow(p - 1); // runs over (a₂, …, a_p)
    let mut coeff = ctx.q().checked_mul(&ctx.q_number(p)?)?;
    if (p - 1) % 2 == 1 {
        coeff = -coeff;
    }
    let mut n_mat = TensorOperator::zero(ctx, n, 1);
    let mut m_mat = TensorOperator::zero(ctx, n, 1);
    for i in 0..n {
        for j in 0..n {
            let mut n_acc = ctx.zero();
            let mut m_acc = ctx.zero();
            for a in 0..inner {
                // N: u(a₂…a_p, j) · v(i, a₂…a_p)
                let t = u[a * n + j].checked_mul(&v[i * inner + a])?;
                n_acc = n_acc.checked_add(&t)?;
                // M: u(j, a₂…a_p) · v(a₂…a_p, i)
                let t = u[j * inner + a].checked_mul(&v[a * n + i])?;
                m_acc = m_acc.checked_add(&t)?;
            }
            n_mat.set_entry(i, j, n_acc.checked_mul(&coeff)?);
            m_mat.set_entry(i, j, m_acc.checked_mul(&coeff)?);
        }
    }
    let q_sq = TensorOperator::identity(ctx, n, 1).scale(&ctx.q_pow(2))?;
    if m_mat.multiply(&n_mat)? != q_sq {
        return Err(Error::IdentityViolated("M·N ≠ q²·id".into()));
    }
    Ok((n_mat, m_mat))
}

fn scalar_multiple_of_identity(m: &TensorOperator) -> Option<Scalar> {
    let d = m.dim();
    let a = m.entry(0, 0).clone();
    for i in 0..d {
        for j in 0..d {
            let e = m.entry(i, j);
            if i == j {
                if *e != a {
                    return None;
                }
            } else if !e.is_zero() {
                return None;
            }
        }
    }
    Some(a)
}

/// The full pipeline: rank detection → Poincaré series → `u, v` →
/// `N, M` → naturality verdict and renormalization bookkeeping.
pub fn naturality_report(
    rep: &LocalRep<'_>,
    max_k: Option<usize>,
    plus_degree: usize,
) -> Result<RankFrame> {
    let h = rep.symmetry();
    let max_k = max_k.unwrap_or_else(|| default_max_k(h.n()));
    let p = detect_rank(rep, max_k)?;
    let poincare = poincare_series(rep, p, plus_degree)?;
    let (u, v) = extract_uv(rep, p)?;
    let (n_mat, m_mat) = frame_matrices(h, p, &u, &v)?;
    let n_scalar_val = scalar_multiple_of_identity(&n_mat);
    let m_scalar_val = scalar_multiple_of_identity(&m_mat);
    let n_scalar = n_scalar_val.is_some();
    let m_scalar = m_scalar_val.is_some();
    let natural = match (&n_scalar_val, &m_scalar_val) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    };
    let epsilon = if natural {
        let a = n_scalar_val.expect("natural implies scalar");
        let q = h.ctx().q();
        if a == q {
            Some(1)
        } else if a == -q {
            Some(-1)
        } else {
            // M·N = q²·id forces a = ±q; anything else is unreachable
            None
        }
    } else {
        None
    };
    let renorm = RenormExponent {
        sign: epsilon.map(|e| if e > 0 { "+".into() } else { "-".into() }),
        exponent: format!("-1/{p}"),
    };
    Ok(RankFrame {
        p,
        u,
        v,
        n_matrix: n_mat,
        m_matrix: m_mat,
        n_scalar,
        m_scalar,
        natural: natural && epsilon.is_some(),
        epsilon,
        renorm,
        poincare,
    })
}
