//! Hecke symmetries: construction, ingestion, validation, and the C-matrix.
//!
//! A Hecke symmetry is an invertible solution `R` of the braid-form
//! Yang–Baxter equation `R₁₂R₂₃R₁₂ = R₂₃R₁₂R₂₃` that also satisfies
//! `(q·id − R)(q⁻¹·id + R) = 0` for a generic `q`. Validation is mandatory:
//! every later identity silently presupposes both relations, so downstream
//! operations refuse unvalidated symmetries.

mod file;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{GenericityReport, QContext};
use crate::tensor::{MultiIndex, TensorOperator, DEFAULT_MAX_DIM};

pub use file::{load, load_str, load_with_backend, save, to_file_string};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationFlags {
    pub yb_ok: bool,
    pub hecke_ok: bool,
    pub generic_ok: bool,
}

impl ValidationFlags {
    pub fn all_ok(&self) -> bool {
        self.yb_ok && self.hecke_ok && self.generic_ok
    }
}

/// Location of a nonzero residual entry, for diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualLocation {
    pub out: Vec<usize>,
    pub r#in: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub ok: bool,
    pub residual_at: Option<ResidualLocation>,
}

impl CheckOutcome {
    fn from_residual(residual: &TensorOperator) -> Self {
        match residual.first_nonzero() {
            None => CheckOutcome {
                ok: true,
                residual_at: None,
            },
            Some((out, inp)) => CheckOutcome {
                ok: false,
                residual_at: Some(ResidualLocation {
                    value: residual.entry(out.encode(), inp.encode()).to_string(),
                    out: out.digits,
                    r#in: inp.digits,
                }),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n: usize,
    pub backend: String,
    pub yang_baxter: CheckOutcome,
    pub hecke: CheckOutcome,
    pub genericity: GenericityReport,
    pub all_ok: bool,
}

/// A validated-or-not R-matrix with its dimension and `q` context.
#[derive(Debug, Clone)]
pub struct HeckeSymmetry {
    n: usize,
    ctx: QContext,
    r: TensorOperator,
    flags: ValidationFlags,
    max_dim: usize,
}

/// Bound used by `validate` when checking genericity of a numeric `q`.
pub const GENERICITY_BOUND: u32 = 24;

impl HeckeSymmetry {
    /// Wrap a raw two-site operator; flags start cleared.
    pub fn from_operator(ctx: QContext, r: TensorOperator) -> Result<Self> {
        if r.sites() != 2 {
            return Err(Error::ShapeMismatch("an R-matrix acts on two sites".into()));
        }
        Ok(HeckeSymmetry {
            n: r.n(),
            ctx,
            r,
            flags: ValidationFlags::default(),
            max_dim: DEFAULT_MAX_DIM,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn r_matrix(&self) -> &TensorOperator {
        &self.r
    }

    pub fn flags(&self) -> ValidationFlags {
        self.flags
    }

    pub fn is_validated(&self) -> bool {
        self.flags.all_ok()
    }

    pub fn ensure_validated(&self) -> Result<()> {
        if self.is_validated() {
            Ok(())
        } else {
            Err(Error::Unvalidated)
        }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Raise or lower the dense-dimension cap for operators derived from
    /// this symmetry.
    pub fn set_max_dim(&mut self, max_dim: usize) {
        self.max_dim = max_dim;
    }

    /// Check the Yang–Baxter and Hecke relations exactly and run the
    /// genericity check; sets the flags the checks pass.
    pub fn validate(&mut self) -> Result<ValidationReport> {
        let r1 = TensorOperator::embed_at(&self.r, 1, 3)?;
        let r2 = TensorOperator::embed_at(&self.r, 2, 3)?;
        let lhs = r1.multiply(&r2)?.multiply(&r1)?;
        let rhs = r2.multiply(&r1)?.multiply(&r2)?;
        let yb = CheckOutcome::from_residual(&lhs.sub(&rhs)?);

        let id2 = TensorOperator::identity(&self.ctx, self.n, 2);
        let first = id2.scale(&self.ctx.q())?.sub(&self.r)?;
        let second = id2.scale(&self.ctx.q_pow(-1))?.add(&self.r)?;
        let hecke = CheckOutcome::from_residual(&first.multiply(&second)?);

        let genericity = self.ctx.genericity_check(GENERICITY_BOUND);

        self.flags = ValidationFlags {
            yb_ok: yb.ok,
            hecke_ok: hecke.ok,
            generic_ok: genericity.ok,
        };
        Ok(ValidationReport {
            n: self.n,
            backend: self.ctx.describe(),
            all_ok: self.flags.all_ok(),
            yang_baxter: yb,
            hecke,
            genericity,
        })
    }

    /// `R⁻¹ = R − (q − q⁻¹)·id`, exact for any validated Hecke symmetry.
    pub fn r_inverse(&self) -> Result<TensorOperator> {
        self.ensure_validated()?;
        let omega = &self.ctx.q() - &self.ctx.q_pow(-1);
        let id2 = TensorOperator::identity(&self.ctx, self.n, 2);
        self.r.sub(&id2.scale(&omega)?)
    }

    /// The column inverse `Q` of the (unrenormalized) `R`.
    pub fn column_inverse(&self) -> Result<TensorOperator> {
        self.ensure_validated()?;
        self.r.column_inverse()
    }

    /// The C-matrix `C^i_j = Σ_a Q^{ia}_{ja}`: the site-2 partial trace of
    /// the column inverse.
    pub fn c_matrix(&self) -> Result<CMatrix> {
        let q = self.column_inverse()?;
        Ok(CMatrix(q.partial_trace(2)?))
    }

    /// Verify the three C-matrix identities exactly:
    /// (a) `R₁₂C₁C₂ = C₁C₂R₁₂`, (b) `Tr C = p_q/q^p`,
    /// (c) `Tr_(2)(R₁₂C₂) = id`.
    pub fn check_c_properties(&self, p: u32) -> Result<CPropertiesReport> {
        self.ensure_validated()?;
        let c = self.c_matrix()?;
        let cc = c.0.tensor_product(&c.0)?;
        let rcc = CheckOutcome::from_residual(&self.r.multiply(&cc)?.sub(&cc.multiply(&self.r)?)?);

        let trace = c.0.trace()?;
        let expect = self
            .ctx
            .q_number(p)?
            .checked_mul(&self.ctx.q_pow(-i64::from(p)))?;
        let trace_ok = trace == expect;

        let id_v = TensorOperator::identity(&self.ctx, self.n, 1);
        let c_site2 = id_v.tensor_product(&c.0)?;
        let tr2 =
            CheckOutcome::from_residual(&self.r.multiply(&c_site2)?.partial_trace(2)?.sub(&id_v)?);

        Ok(CPropertiesReport {
            p,
            rcc,
            trace_value: trace.to_string(),
            trace_expected: expect.to_string(),
            trace_ok,
            tr2_identity: tr2,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CPropertiesReport {
    pub p: u32,
    pub rcc: CheckOutcome,
    pub trace_value: String,
    pub trace_expected: String,
    pub trace_ok: bool,
    pub tr2_identity: CheckOutcome,
}

impl CPropertiesReport {
    pub fn all_ok(&self) -> bool {
        self.rcc.ok && self.trace_ok && self.tr2_identity.ok
    }
}

/// The n×n matrix whose properly normalized trace realizes the categorical
/// trace on `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix(pub TensorOperator);

impl CMatrix {
    pub fn entries(&self) -> &TensorOperator {
        &self.0
    }
}

/// The Drinfeld–Jimbo braiding on `V = K^n`:
/// `R̂(e_i⊗e_i) = q·e_i⊗e_i`, `R̂(e_i⊗e_j) = e_j⊗e_i` for `i < j`, and
/// `R̂(e_i⊗e_j) = e_j⊗e_i + (q−q⁻¹)·e_i⊗e_j` for `i > j`.
/// The returned symmetry has already passed `validate`.
pub fn build_uq_sln(n: usize, ctx: &QContext) -> Result<HeckeSymmetry> {
    if n < 1 {
        return Err(Error::OutOfRange("build_uq_sln needs n ≥ 1".into()));
    }
    let omega = &ctx.q() - &ctx.q_pow(-1);
    let mut r = TensorOperator::zero(ctx, n, 2);
    for i in 0..n {
        for j in 0..n {
            let inp = MultiIndex {
                digits: vec![i, j],
                n,
            }
            .encode();
            if i == j {
                r.set_entry(inp, inp, ctx.q());
            } else {
                let swapped = MultiIndex {
                    digits: vec![j, i],
                    n,
                }
                .encode();
                r.set_entry(swapped, inp, ctx.one());
                if i > j {
                    r.set_entry(inp, inp, omega.clone());
                }
            }
        }
    }
    let mut h = HeckeSymmetry::from_operator(ctx.clone(), r)?;
    let report = h.validate()?;
    if !report.all_ok {
        return Err(Error::IdentityViolated(format!(
            "builtin R-matrix failed validation: {}",
            serde_json::to_string(&report).unwrap_or_default()
        )));
    }
    Ok(h)
}
