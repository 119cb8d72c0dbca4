//! R-matrix file format (JSON):
//!
//! ```json
//! {"n": 3, "q": "formal", "entries": [
//!   {"out": [0, 1], "in": [1, 0], "value": "q^-1 + (3/2)*q"}, ...
//! ]}
//! ```
//!
//! `q` is `"formal"` or a rational literal such as `"3/2"`; indices are
//! 0-based; omitted entries are zero; duplicate `(out, in)` pairs are an
//! error. Serialization writes entries in lexicographic `(out, in)` order so
//! save → load → save is bit-exact.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_rat, QContext};
use crate::tensor::{MultiIndex, TensorOperator};

use super::HeckeSymmetry;

#[derive(Debug, Serialize, Deserialize)]
struct FileEntry {
    out: [usize; 2],
    #[serde(rename = "in")]
    inp: [usize; 2],
    value: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct FileFormat {
    n: usize,
    q: String,
    entries: Vec<FileEntry>,
}

fn backend_from_str(text: &str) -> Result<QContext> {
    if text.trim() == "formal" {
        Ok(QContext::Formal)
    } else {
        Ok(QContext::Numeric(parse_rat(text)?))
    }
}

/// Parse the format from a string; the symmetry comes back unvalidated.
/// `backend` overrides the file's `q` declaration when given.
pub fn load_str(text: &str, backend: Option<QContext>) -> Result<HeckeSymmetry> {
    let raw: FileFormat = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    if raw.n == 0 {
        return Err(Error::DimensionMismatch("n must be positive".into()));
    }
    let ctx = match backend {
        Some(b) => b,
        None => backend_from_str(&raw.q)?,
    };
    let mut seen: BTreeSet<([usize; 2], [usize; 2])> = BTreeSet::new();
    let mut r = TensorOperator::zero(&ctx, raw.n, 2);
    for (ord, entry) in raw.entries.iter().enumerate() {
        for idx in entry.out.iter().chain(entry.inp.iter()) {
            if *idx >= raw.n {
                return Err(Error::DimensionMismatch(format!(
                    "entries[{ord}]: index {idx} out of range for n = {}",
                    raw.n
                )));
            }
        }
        if !seen.insert((entry.out, entry.inp)) {
            return Err(Error::DuplicateEntry(format!(
                "entries[{ord}]: out {:?}, in {:?}",
                entry.out, entry.inp
            )));
        }
        let value = ctx
            .parse(&entry.value)
            .map_err(|e| Error::Parse(format!("entries[{ord}].value: {e}")))?;
        let out = MultiIndex {
            digits: entry.out.to_vec(),
            n: raw.n,
        }
        .encode();
        let inp = MultiIndex {
            digits: entry.inp.to_vec(),
            n: raw.n,
        }
        .encode();
        r.set_entry(out, inp, value);
    }
    HeckeSymmetry::from_operator(ctx, r)
}

pub fn load(path: impl AsRef<Path>) -> Result<HeckeSymmetry> {
    load_with_backend(path, None)
}

pub fn load_with_backend(
    path: impl AsRef<Path>,
    backend: Option<QContext>,
) -> Result<HeckeSymmetry> {
    let text = std::fs::read_to_string(path)?;
    load_str(&text, backend)
}

/// Serialize to the canonical file string: entries in lexicographic
/// `(out, in)` order, zeros omitted.
pub fn to_file_string(h: &HeckeSymmetry) -> String {
    let n = h.n();
    let r = h.r_matrix();
    let mut entries = Vec::new();
    for out in 0..r.dim() {
        for inp in 0..r.dim() {
            let v = r.entry(out, inp);
            if v.is_zero() {
                continue;
            }
            let o = MultiIndex::decode(out, n, 2).digits;
            let i = MultiIndex::decode(inp, n, 2).digits;
            entries.push(FileEntry {
                out: [o[0], o[1]],
                inp: [i[0], i[1]],
                value: v.to_string(),
            });
        }
    }
    entries.sort_by_key(|e| (e.out, e.inp));
    let file = FileFormat {
        n,
        q: h.ctx().describe(),
        entries,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn save(h: &HeckeSymmetry, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_file_string(h) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::build_uq_sln;

    #[test]
    fn round_trip_is_bit_exact() {
        for ctx in [QContext::Formal, QContext::numeric_from_parts(3, 2)] {
            let h = build_uq_sln(2, &ctx).unwrap();
            let text = to_file_string(&h);
            let mut back = load_str(&text, None).unwrap();
            assert_eq!(back.r_matrix(), h.r_matrix());
            assert_eq!(back.ctx(), h.ctx());
            assert_eq!(to_file_string(&back), text);
            // loaded symmetries start unvalidated and validate cleanly
            assert!(!back.is_validated());
            assert!(back.validate().unwrap().all_ok);
            // format fidelity all the way to the C-matrix
            assert_eq!(back.c_matrix().unwrap(), h.c_matrix().unwrap());
        }
    }

    #[test]
    fn rejects_out_of_range_index() {
        let text = r#"{"n": 2, "q": "formal", "entries": [
            {"out": [0, 2], "in": [0, 0], "value": "1"}
        ]}"#;
        assert!(matches!(
            load_str(text, None),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rejects_duplicate_entries() {
        let text = r#"{"n": 2, "q": "formal", "entries": [
            {"out": [0, 1], "in": [1, 0], "value": "1"},
            {"out": [0, 1], "in": [1, 0], "value": "q"}
        ]}"#;
        assert!(matches!(
            load_str(text, None),
            Err(Error::DuplicateEntry(_))
        ));
    }

    #[test]
    fn rejects_bad_scalar_literal() {
        let text = r#"{"n": 2, "q": "formal", "entries": [
            {"out": [0, 1], "in": [1, 0], "value": "q^"}
        ]}"#;
        assert!(matches!(load_str(text, None), Err(Error::Parse(_))));
    }

    #[test]
    fn reports_json_syntax_position() {
        let err = load_str("{\"n\": 2,\n  broken", None).unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn backend_override_reparses_values() {
        let h = build_uq_sln(2, &QContext::Formal).unwrap();
        let text = to_file_string(&h);
        let over = load_str(&text, Some(QContext::numeric_from_parts(3, 2))).unwrap();
        assert_eq!(over.ctx(), &QContext::numeric_from_parts(3, 2));
        let direct = build_uq_sln(2, &QContext::numeric_from_parts(3, 2)).unwrap();
        assert_eq!(over.r_matrix(), direct.r_matrix());
    }
}
