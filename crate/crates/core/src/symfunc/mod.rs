//! Independent combinatorial engine: partitions, standard tableaux, Schur
//! evaluation, Littlewood–Richardson coefficients, and general
//! additive-multiplicative functionals.
//!
//! Nothing here touches the operator layer; the trace pipeline is
//! cross-validated against this module.

mod lr;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Int, QContext, Scalar};

pub use lr::lr_expand;

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut v: Vec<u32> = parts.into();
        while v.last() == Some(&0) {
            v.pop();
        }
        if v.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfRange(format!(
                "parts {:?} are not weakly decreasing",
                v
            )));
        }
        Ok(Partition(v))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// |λ|, the number of boxes.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// ℓ(λ), the number of nonzero parts.
    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let parts = (0..cols)
            .map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect::<Vec<_>>();
        Partition(parts)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.height()).all(|i| self.part(i) >= other.part(i))
    }

    /// Cells as 1-based `(row, col)` pairs, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len as usize).map(move |c| (r + 1, c)))
    }

    pub fn hook_length(&self, row: usize, col: usize) -> u32 {
        let arm = self.0[row - 1] - col as u32;
        let leg = self.0[row..].iter().filter(|&&p| p as usize >= col).count() as u32;
        arm + leg + 1
    }

    /// Content `col − row` of a 1-based cell.
    pub fn content(row: usize, col: usize) -> i64 {
        col as i64 - row as i64
    }

    /// Contents of all addable corners, strictly decreasing.
    pub fn addable_contents(&self) -> Vec<i64> {
        let mut out = vec![self.part(0) as i64]; // extend row 1
        for r in 1..=self.height() {
            let len = self.part(r); // row r+1 (0 if new)
            if len < self.part(r - 1) {
                out.push(len as i64 - r as i64);
            }
        }
        out
    }

    /// The partition grown by one box at the corner with the given content.
    pub fn add_box_at_content(&self, content: i64) -> Result<Partition> {
        let mut parts = self.0.clone();
        for r in 0..=self.height() {
            let len = self.part(r) as i64;
            if len - r as i64 == content && (r == 0 || self.part(r - 1) as i64 > len) {
                if r == parts.len() {
                    parts.push(1);
                } else {
                    parts[r] += 1;
                }
                return Partition::new(parts);
            }
        }
        Err(Error::OutOfRange(format!(
            "no addable corner of content {content} in {self}"
        )))
    }

    /// Prepend a full column of the given height (`μ ↦ μ + (1^p)`).
    pub fn prepend_column(&self, p: usize) -> Result<Partition> {
        if self.height() > p {
            return Err(Error::OutOfRange(format!(
                "cannot prepend a column of height {p} to {self} (height {})",
                self.height()
            )));
        }
        Partition::new((0..p).map(|i| self.part(i) + 1).collect::<Vec<_>>())
    }

    pub fn from_str_list(text: &str) -> Result<Partition> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition `{text}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All partitions of `m` in reverse-lexicographic (descending) order.
pub fn partitions(m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        let hi = rest.min(max);
        for next in (1..=hi).rev() {
            current.push(next);
            go(rest - next, next, current, out);
            current.pop();
        }
    }
    go(m, m, &mut current, &mut out);
    out
}

/// A standard Young tableau: cells filled bijectively with `1..m`,
/// increasing along rows and down columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    /// 1-based `(row, col)` of each entry, `positions[t]` holding `t+1`.
    positions: Vec<(usize, usize)>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    /// Content `col − row` of the cell holding `k` (1-based).
    pub fn content(&self, k: usize) -> i64 {
        let (r, c) = self.positions[k - 1];
        Partition::content(r, c)
    }

    /// 1-based `(row, col)` of the cell holding `k`.
    pub fn position(&self, k: usize) -> (usize, usize) {
        self.positions[k - 1]
    }

    /// Shape formed by the entries `1..=k`.
    pub fn shape_at(&self, k: usize) -> Partition {
        let mut rows: Vec<u32> = Vec::new();
        for &(r, _) in &self.positions[..k] {
            if rows.len() < r {
                rows.resize(r, 0);
            }
            rows[r - 1] += 1;
        }
        Partition::new(rows).expect("prefix of a standard tableau is a partition")
    }

    /// Row-reading word: rows concatenated top to bottom.
    pub fn reading_word(&self) -> Vec<u32> {
        let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
        for (t, &(r, c)) in self.positions.iter().enumerate() {
            if rows.len() < r {
                rows.resize(r, Vec::new());
            }
            rows[r - 1].push((c, (t + 1) as u32));
        }
        let mut word = Vec::with_capacity(self.positions.len());
        for mut row in rows {
            row.sort_unstable();
            word.extend(row.into_iter().map(|(_, v)| v));
        }
        word
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); self.shape.height()];
        for (t, &(r, _)) in self.positions.iter().enumerate() {
            rows[r - 1].push((t + 1) as u32);
        }
        rows
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let strings: Vec<String> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", strings.join(" | "))
    }
}

/// The column-major filling: columns filled left to right, each increasing
/// downwards.
pub fn column_major_tableau(shape: &Partition) -> StandardTableau {
    let conj = shape.conjugate();
    let mut positions = Vec::with_capacity(shape.weight() as usize);
    for (c, &height) in conj.parts().iter().enumerate() {
        for r in 1..=height as usize {
            positions.push((r, c + 1));
        }
    }
    StandardTableau {
        shape: shape.clone(),
        positions,
    }
}

/// All standard tableaux of a shape: the column-major filling first, the
/// rest in lexicographic order of their row-reading words.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let m = shape.weight() as usize;
    let mut all = Vec::new();
    let mut row_fill: Vec<u32> = vec![0; shape.height()];
    let mut positions: Vec<(usize, usize)> = Vec::with_capacity(m);
    fn go(
        shape: &Partition,
        k: usize,
        m: usize,
        row_fill: &mut Vec<u32>,
        positions: &mut Vec<(usize, usize)>,
        all: &mut Vec<StandardTableau>,
    ) {
        if k > m {
            all.push(StandardTableau {
                shape: shape.clone(),
                positions: positions.clone(),
            });
            return;
        }
        for r in 0..shape.height() {
            let filled = row_fill[r];
            if filled < shape.part(r) && (r == 0 || row_fill[r - 1] > filled) {
                row_fill[r] += 1;
                positions.push((r + 1, filled as usize + 1));
                go(shape, k + 1, m, row_fill, positions, all);
                positions.pop();
                row_fill[r] -= 1;
            }
        }
    }
    go(shape, 1, m, &mut row_fill, &mut positions, &mut all);
    all.sort_by_key(|t| t.reading_word());
    let first = column_major_tableau(shape);
    if let Some(idx) = all.iter().position(|t| *t == first) {
        let t = all.remove(idx);
        all.insert(0, t);
    }
    all
}

/// Count of standard tableaux by the hook length formula.
pub fn tableau_count(shape: &Partition) -> Int {
    let m = shape.weight();
    let mut num = Int::from(1u32);
    for v in 1..=u64::from(m) {
        num *= Int::from(v);
    }
    let mut den = Int::from(1u32);
    for (r, c) in shape.cells() {
        den *= Int::from(shape.hook_length(r, c));
    }
    num / den
}

/// Principal specialization of the Schur polynomial in `p` balanced powers
/// of `q`: the hook-content product `∏ [p + content]_q / [hook]_q`.
/// Returns 0 when the height exceeds `p`.
pub fn schur_principal(shape: &Partition, p: u32, ctx: &QContext) -> Result<Scalar> {
    if shape.height() > p as usize {
        return Ok(ctx.zero());
    }
    let mut acc = ctx.one();
    for (r, c) in shape.cells() {
        let content = Partition::content(r, c);
        let top = i64::from(p) + content;
        debug_assert!(top >= 1, "height ≤ p keeps p + content positive");
        acc = acc.checked_mul(&ctx.q_number(top as u32)?)?;
        acc = acc.checked_div(&ctx.q_number(shape.hook_length(r, c))?)?;
    }
    Ok(acc)
}

/// Classical dimension `s_λ(1, …, 1)` with `p` ones: the integer
/// hook-content product (the number of semistandard tableaux, entries ≤ p).
pub fn classical_dimension(shape: &Partition, p: u32) -> Int {
    if shape.height() > p as usize {
        return Int::from(0u32);
    }
    let mut num = Int::from(1u32);
    let mut den = Int::from(1u32);
    for (r, c) in shape.cells() {
        num *= Int::from(i64::from(p) + Partition::content(r, c));
        den *= Int::from(shape.hook_length(r, c));
    }
    num / den
}

/// An additive-multiplicative functional, stored via its values
/// `e_k = f(V_(1^k))` on column shapes: `e_0 = 1, …, e_(p−1)`, `e_p = 1`,
/// and `e_k = 0` beyond `p`. The roots of the associated polynomial are
/// never extracted; evaluation goes through the dual Jacobi–Trudi
/// determinant in the elementary basis.
#[derive(Debug, Clone)]
pub struct AMFunctional {
    p: u32,
    e_values: Vec<Scalar>,
}

impl AMFunctional {
    /// Build from interior values `e_1, …, e_(p−1)`; the boundary values
    /// `e_0 = e_p = 1` are fixed by the definition.
    pub fn new(ctx: &QContext, p: u32, interior: Vec<Scalar>) -> Result<Self> {
        if interior.len() != (p as usize).saturating_sub(1) {
            return Err(Error::OutOfRange(format!(
                "expected {} interior values for p = {p}, got {}",
                (p as usize).saturating_sub(1),
                interior.len()
            )));
        }
        let mut e_values = Vec::with_capacity(p as usize + 1);
        e_values.push(ctx.one());
        e_values.extend(interior);
        if p >= 1 {
            e_values.push(ctx.one());
        }
        Ok(AMFunctional { p, e_values })
    }

    /// The functional with `e_k = [p choose k]_q` — the one categorical
    /// dimensions realize.
    pub fn q_binomial(ctx: &QContext, p: u32) -> Result<Self> {
        let interior = (1..p)
            .map(|k| ctx.q_binomial(p, k))
            .collect::<Result<Vec<_>>>()?;
        AMFunctional::new(ctx, p, interior)
    }

    /// The functional with classical binomial values `e_k = C(p, k)`;
    /// evaluates to the classical dimension.
    pub fn classical(ctx: &QContext, p: u32) -> Result<Self> {
        let interior = (1..p)
            .map(|k| {
                let mut v = 1i64;
                for j in 1..=k as i64 {
                    v = v * (i64::from(p) - j + 1) / j;
                }
                ctx.from_int(v)
            })
            .collect();
        AMFunctional::new(ctx, p, interior)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn e(&self, k: i64) -> Scalar {
        if k < 0 || k > i64::from(self.p) {
            return crate::tensor::zero_like(&self.e_values[0]);
        }
        self.e_values[k as usize].clone()
    }

    /// `f(V_λ)` via the dual Jacobi–Trudi determinant
    /// `det(e_(λ′_i − i + j))` of size `λ_1`.
    pub fn evaluate(&self, shape: &Partition) -> Result<Scalar> {
        let size = shape.part(0) as usize;
        if size == 0 {
            return Ok(self.e_values[0].clone());
        }
        let conj = shape.conjugate();
        let m: Vec<Vec<Scalar>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| self.e(i64::from(conj.part(i)) - i as i64 + j as i64))
                    .collect()
            })
            .collect();
        determinant(&m)
    }

    /// Assert `f(λ)·f(μ) = Σ_ν c^ν_{λμ} f(ν)` exactly.
    pub fn multiplicativity_check(
        &self,
        lam: &Partition,
        mu: &Partition,
    ) -> Result<MultiplicativityReport> {
        let left = self.evaluate(lam)?.checked_mul(&self.evaluate(mu)?)?;
        let mut right = crate::tensor::zero_like(&left);
        for (nu, c) in lr_expand(lam, mu) {
            if c == 0 {
                continue;
            }
            let term = self.evaluate(&nu)?;
            let mut acc = term.clone();
            for _ in 1..c {
                acc = acc.checked_add(&term)?;
            }
            right = right.checked_add(&acc)?;
        }
        Ok(MultiplicativityReport {
            lam: lam.clone(),
            mu: mu.clone(),
            ok: left == right,
            left: left.to_string(),
            right: right.to_string(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiplicativityReport {
    pub lam: Partition,
    pub mu: Partition,
    pub ok: bool,
    pub left: String,
    pub right: String,
}

/// Small exact determinant by cofactor expansion (division-free; the
/// Jacobi–Trudi matrices here are at most 6×6 and full of zeros).
fn determinant(m: &[Vec<Scalar>]) -> Result<Scalar> {
    let size = m.len();
    if size == 0 {
        return Err(Error::OutOfRange("empty determinant".into()));
    }
    fn go(m: &[Vec<Scalar>], cols: &mut Vec<usize>, row: usize) -> Result<Scalar> {
        if cols.len() == 1 {
            return Ok(m[row][cols[0]].clone());
        }
        let mut acc: Option<Scalar> = None;
        for idx in 0..cols.len() {
            let c = cols[idx];
            let a = &m[row][c];
            if a.is_zero() {
                continue;
            }
            cols.remove(idx);
            let minor = go(m, cols, row + 1)?;
            cols.insert(idx, c);
            let mut term = a.checked_mul(&minor)?;
            if idx % 2 == 1 {
                term = -term;
            }
            acc = Some(match acc {
                None => term,
                Some(s) => s.checked_add(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| crate::tensor::zero_like(&m[0][0])))
    }
    let mut cols: Vec<usize> = (0..size).collect();
    go(m, &mut cols, 0)
}

#[cfg(test)]
pub(crate) mod tests;
