//! Plain-text renderings; the values are the same strings the JSON carries.

use swcat_core::frame::FrameReport;
use swcat_core::qtrace::{DimensionTable, IndependenceReport, OmegaReport};
use swcat_core::symfunc::Partition;
use swcat_core::symmetry::ValidationReport;

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn validation_text(r: &ValidationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "validation  n = {}  backend = {}\n",
        r.n, r.backend
    ));
    out.push_str(&format!("  yang-baxter   {}", mark(r.yang_baxter.ok)));
    if let Some(loc) = &r.yang_baxter.residual_at {
        out.push_str(&format!(
            "  residual {} at out {:?} in {:?}",
            loc.value, loc.out, loc.r#in
        ));
    }
    out.push('\n');
    out.push_str(&format!("  hecke         {}", mark(r.hecke.ok)));
    if let Some(loc) = &r.hecke.residual_at {
        out.push_str(&format!(
            "  residual {} at out {:?} in {:?}",
            loc.value, loc.out, loc.r#in
        ));
    }
    out.push('\n');
    out.push_str(&format!("  genericity    {}", mark(r.genericity.ok)));
    if let Some(reason) = &r.genericity.reason {
        out.push_str(&format!("  ({reason})"));
    }
    out.push('\n');
    out.push_str(&format!("  overall       {}", mark(r.all_ok)));
    out
}

fn matrix_lines(label: &str, m: &[Vec<String>]) -> String {
    let width = m.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    let mut out = String::new();
    for (i, row) in m.iter().enumerate() {
        let prefix = if i == 0 {
            format!("  {label} = ")
        } else {
            " ".repeat(label.len() + 5)
        };
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str(&format!("{prefix}[ {} ]\n", cells.join("  ")));
    }
    out
}

pub fn frame_text(r: &FrameReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("frame  p = {}\n", r.p));
    out.push_str(&format!(
        "  poincare minus = {:?}\n  poincare plus  = {:?}\n  P+(t)·P-(-t) = 1  {}\n",
        r.poincare.minus,
        r.poincare.plus,
        mark(r.poincare_relation_ok)
    ));
    out.push_str(&matrix_lines("N", &r.n_matrix));
    out.push_str(&matrix_lines("M", &r.m_matrix));
    out.push_str(&format!(
        "  N scalar = {}, M scalar = {}, natural = {}\n",
        r.n_scalar, r.m_scalar, r.natural
    ));
    if let Some(eps) = &r.epsilon {
        out.push_str(&format!("  epsilon = {eps}\n"));
    }
    out.push_str(&format!(
        "  renormalization exponent = ({}, {})\n",
        r.renormalization.sign.as_deref().unwrap_or("?"),
        r.renormalization.exponent
    ));
    out.push_str(&format!(
        "  det_q central (iff N scalar) = {}",
        r.det_q_central
    ));
    out
}

pub fn dimension_text(t: &DimensionTable) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "dimensions  n = {}  p = {}  backend = {}\n",
        t.n, t.p, t.backend
    ));
    let part_w = t
        .rows
        .iter()
        .map(|r| r.partition.to_string().len())
        .max()
        .unwrap_or(4)
        .max(4);
    let trace_w = t
        .rows
        .iter()
        .map(|r| r.trace.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let schur_w = t
        .rows
        .iter()
        .map(|r| r.schur.len())
        .max()
        .unwrap_or(5)
        .max(5);
    out.push_str(&format!(
        "  {:part_w$}  {:>trace_w$}  {:>schur_w$}  {:5}  {}\n",
        "λ", "trace", "schur", "agree", "q→1"
    ));
    for r in &t.rows {
        out.push_str(&format!(
            "  {:part_w$}  {:>trace_w$}  {:>schur_w$}  {:5}  {}\n",
            r.partition.to_string(),
            r.trace,
            r.schur,
            mark(r.agree),
            r.classical
        ));
    }
    out.push_str(&format!("  all rows agree: {}", mark(t.all_agree())));
    out
}

pub fn omega_text(o: &OmegaReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("antisymmetrizer traces  p = {}\n", o.p));
    for row in &o.rows {
        out.push_str(&format!(
            "  k = {}: {} = {}  {}\n",
            row.k,
            row.lhs,
            row.rhs,
            mark(row.ok)
        ));
    }
    out.push_str(&format!(
        "  generating polynomial coefficients  {}",
        mark(o.generating_ok)
    ));
    out
}

pub fn am_text<'a>(
    rows: impl Iterator<Item = (&'a Partition, &'a Partition, bool)>,
    all_ok: bool,
) -> String {
    let mut out = String::new();
    out.push_str("multiplicativity through LR\n");
    let mut shown = 0;
    let mut failures = Vec::new();
    for (lam, mu, ok) in rows {
        shown += 1;
        if !ok {
            failures.push(format!("  {lam} × {mu}  FAIL"));
        }
    }
    out.push_str(&format!("  {shown} products checked\n"));
    for f in failures {
        out.push_str(&f);
        out.push('\n');
    }
    out.push_str(&format!("  all products agree: {}", mark(all_ok)));
    out
}

pub fn independence_text(rows: &[IndependenceReport]) -> String {
    let mut out = String::new();
    out.push_str("tableau independence\n");
    for r in rows {
        out.push_str(&format!(
            "  {}: {}  {}\n",
            r.shape,
            r.values.join(" | "),
            mark(r.ok)
        ));
    }
    out
}
