//! The categorical trace and q-dimension.
//!
//! For an endomorphism `F` of the object cut out by a primitive idempotent
//! `Y` on `V^⊗m`, the trace is `q^(pm)·Tr(F·C_λ)` with
//! `C_λ = Y·C₁C₂…C_m`; the normalization `α = q^p` (and `β_(k) = α^k`) is
//! the unique one making the dimension additive and multiplicative, pinned
//! by `dim_q V_(1^p) = 1`.
//!
//! Every dimension is computed twice — through the trace pipeline and
//! through the symmetric-function engine — and the two must agree exactly;
//! the routes share almost no code, so agreement exercises every module at
//! once.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::RankFrame;
use crate::heckealg::LocalRep;
use crate::scalar::Scalar;
use crate::symfunc::{
    classical_dimension, partitions, schur_principal, standard_tableaux, Partition, StandardTableau,
};
use crate::symmetry::{CMatrix, CPropertiesReport, HeckeSymmetry};
use crate::tensor::TensorOperator;

/// A validated symmetry together with its frame and C-matrix; the C-matrix
/// identities are re-checked on construction.
pub struct TraceContext<'a> {
    rep: LocalRep<'a>,
    p: u32,
    c: CMatrix,
    c_report: CPropertiesReport,
}

impl<'a> TraceContext<'a> {
    pub fn new(h: &'a HeckeSymmetry, frame: &RankFrame) -> Result<Self> {
        Self::from_rep(LocalRep::new(h)?, frame)
    }

    /// Build from an existing representation, keeping its operator caches.
    pub fn from_rep(rep: LocalRep<'a>, frame: &RankFrame) -> Result<Self> {
        let h = rep.symmetry();
        let c_report = h.check_c_properties(frame.p)?;
        if !c_report.all_ok() {
            return Err(Error::IdentityViolated(format!(
                "C-matrix identities failed: {}",
                serde_json::to_string(&c_report).unwrap_or_default()
            )));
        }
        let c = h.c_matrix()?;
        Ok(TraceContext {
            p: frame.p,
            c,
            c_report,
            rep,
        })
    }

    pub fn rep(&self) -> &LocalRep<'a> {
        &self.rep
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn c_matrix(&self) -> &CMatrix {
        &self.c
    }

    pub fn c_report(&self) -> &CPropertiesReport {
        &self.c_report
    }

    fn ctx(&self) -> &crate::scalar::QContext {
        self.rep.symmetry().ctx()
    }

    /// `C^⊗m` on `m` sites.
    fn c_power(&self, m: usize) -> Result<TensorOperator> {
        let mut acc = self.c.entries().clone();
        for _ in 1..m {
            acc = acc.tensor_product(self.c.entries())?;
        }
        Ok(acc)
    }

    /// `C_λ = Y_T · C₁C₂…C_m` (idempotent leftmost).
    pub fn c_lambda(&self, tableau: &StandardTableau) -> Result<TensorOperator> {
        let m = tableau.size();
        let y = self.rep.primitive_idempotent(tableau)?;
        y.operator.multiply(&self.c_power(m)?)
    }

    /// The categorical trace `q^(pm)·Tr(F·C_λ)` of an endomorphism `F` of
    /// the object embedded by the tableau's idempotent. The precondition
    /// `Y·F·Y = F` is checked exactly.
    pub fn quantum_trace(&self, tableau: &StandardTableau, f: &TensorOperator) -> Result<Scalar> {
        let y = self.rep.primitive_idempotent(tableau)?;
        let sandwiched = y.operator.multiply(f)?.multiply(&y.operator)?;
        if &sandwiched != f {
            return Err(Error::NotEndomorphism(format!(
                "Y·F·Y ≠ F for tableau {tableau} of {}",
                tableau.shape()
            )));
        }
        self.trace_against_idempotent(&y.operator, f, tableau.size())
    }

    fn trace_against_idempotent(
        &self,
        y: &TensorOperator,
        f: &TensorOperator,
        m: usize,
    ) -> Result<Scalar> {
        let c_m = self.c_power(m)?;
        let f_y = f.multiply(y)?;
        let raw = trace_of_product(&f_y, &c_m)?;
        let norm = self.ctx().q_pow(i64::from(self.p) * m as i64);
        raw.checked_mul(&norm)
    }

    /// `dim_q` through one specific tableau (trace route only).
    pub fn qdim_via_tableau(&self, tableau: &StandardTableau) -> Result<Scalar> {
        let y = self.rep.primitive_idempotent(tableau)?;
        // F = Y is an endomorphism by idempotency; no residual check needed
        self.trace_against_idempotent(&y.operator, &y.operator, tableau.size())
    }

    /// Both routes to the categorical dimension: the quantum trace of the
    /// identity and the principal Schur specialization.
    pub fn qdim_both(&self, shape: &Partition) -> Result<(Scalar, Scalar)> {
        let schur = schur_principal(shape, self.p, self.ctx())?;
        if shape.height() > self.p as usize {
            // the idempotent image vanishes; the trace route is 0 without
            // materializing V^⊗m
            return Ok((self.ctx().zero(), schur));
        }
        if shape.weight() == 0 {
            return Ok((self.ctx().one(), schur));
        }
        let first = standard_tableaux(shape)
            .into_iter()
            .next()
            .expect("nonempty shape has a tableau");
        let trace = self.qdim_via_tableau(&first)?;
        Ok((trace, schur))
    }

    /// The categorical dimension, with the two routes asserted equal.
    pub fn qdim(&self, shape: &Partition) -> Result<Scalar> {
        let (trace, schur) = self.qdim_both(shape)?;
        if trace != schur {
            return Err(Error::CrossCheckFailed(format!(
                "dim_q {shape}: trace route {trace} ≠ Schur route {schur}"
            )));
        }
        Ok(trace)
    }

    /// Verify `Tr(A^(k)·C₁…C_k) = q^(−pk)·[p choose k]_q` for `k = 1…p`,
    /// and that the polynomial `∏_(k=0)^(p−1) (q^(2k+1−p) + t)` has exactly
    /// those binomials as coefficients.
    pub fn lemma_omega_table(&self) -> Result<OmegaReport> {
        let ctx = self.ctx();
        let p = self.p;
        let mut rows = Vec::new();
        for k in 1..=p {
            let a = self.rep.antisymmetrizer(k as usize)?;
            let lhs = trace_of_product(&a, &self.c_power(k as usize)?)?;
            let rhs = ctx
                .q_pow(-i64::from(p) * i64::from(k))
                .checked_mul(&ctx.q_binomial(p, k)?)?;
            rows.push(OmegaRow {
                k,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                ok: lhs == rhs,
            });
        }
        // generating polynomial in t, coefficients ascending
        let mut coeffs = vec![ctx.one()];
        for k in 0..p {
            let root = ctx.q_pow(2 * i64::from(k) + 1 - i64::from(p));
            let mut next = vec![ctx.zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] = next[i].checked_add(&c.checked_mul(&root)?)?;
                next[i + 1] = next[i + 1].checked_add(c)?;
            }
            coeffs = next;
        }
        let mut generating_ok = true;
        for k in 0..=p {
            if coeffs[(p - k) as usize] != ctx.q_binomial(p, k)? {
                generating_ok = false;
            }
        }
        Ok(OmegaReport {
            p,
            rows,
            generating_ok,
        })
    }

    /// `dim_q V_(μ+(1^p)) = dim_q V_μ`: prepending a full column is
    /// dimension-neutral.
    pub fn reduction_check(&self, mu: &Partition) -> Result<ReductionReport> {
        let lam = mu.prepend_column(self.p as usize)?;
        let left = self.qdim(&lam)?;
        let right = self.qdim(mu)?;
        Ok(ReductionReport {
            mu: mu.clone(),
            lambda: lam,
            left: left.to_string(),
            right: right.to_string(),
            ok: left == right,
        })
    }

    /// The trace of the identity computed through every standard tableau of
    /// the shape; all values must coincide.
    pub fn tableau_independence_check(&self, shape: &Partition) -> Result<IndependenceReport> {
        let mut values = Vec::new();
        for t in standard_tableaux(shape) {
            values.push(self.qdim_via_tableau(&t)?.to_string());
        }
        let ok = values.windows(2).all(|w| w[0] == w[1]);
        Ok(IndependenceReport {
            shape: shape.clone(),
            values,
            ok,
        })
    }

    /// The dimension table for all shapes of weight `1..=upto` and height
    /// at most `p`, both routes shown.
    pub fn dimension_table(&self, upto: u32) -> Result<DimensionTable> {
        let shapes: Vec<Partition> = (1..=upto)
            .flat_map(partitions)
            .filter(|s| s.height() <= self.p as usize)
            .collect();
        self.dimension_table_for(&shapes)
    }

    pub fn dimension_table_for(&self, shapes: &[Partition]) -> Result<DimensionTable> {
        let mut rows = Vec::new();
        for shape in shapes {
            let (trace, schur) = self.qdim_both(shape)?;
            rows.push(DimRow {
                partition: shape.clone(),
                trace: trace.to_string(),
                schur: schur.to_string(),
                agree: trace == schur,
                classical: classical_dimension(shape, self.p).to_string(),
            });
        }
        Ok(DimensionTable {
            n: self.rep.symmetry().n(),
            p: self.p,
            backend: self.ctx().describe(),
            rows,
        })
    }
}

/// `Tr(A·B)` without materializing the product.
fn trace_of_product(a: &TensorOperator, b: &TensorOperator) -> Result<Scalar> {
    if a.dim() != b.dim() {
        return Err(Error::ShapeMismatch("trace_of_product".into()));
    }
    let mut acc = a.entry(0, 0).checked_mul(b.entry(0, 0))?;
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            if i == 0 && j == 0 {
                continue;
            }
            let x = a.entry(i, j);
            if x.is_zero() {
                continue;
            }
            let y = b.entry(j, i);
            if y.is_zero() {
                continue;
            }
            acc = acc.checked_add(&x.checked_mul(y)?)?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OmegaRow {
    pub k: u32,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OmegaReport {
    pub p: u32,
    pub rows: Vec<OmegaRow>,
    pub generating_ok: bool,
}

impl OmegaReport {
    pub fn all_ok(&self) -> bool {
        self.generating_ok && self.rows.iter().all(|r| r.ok)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionReport {
    pub mu: Partition,
    pub lambda: Partition,
    pub left: String,
    pub right: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub shape: Partition,
    pub values: Vec<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimRow {
    pub partition: Partition,
    pub trace: String,
    pub schur: String,
    pub agree: bool,
    pub classical: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionTable {
    pub n: usize,
    pub p: u32,
    pub backend: String,
    pub rows: Vec<DimRow>,
}

impl DimensionTable {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}
