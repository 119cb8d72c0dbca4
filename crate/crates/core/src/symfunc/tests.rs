use std::collections::BTreeMap;

use super::*;
use crate::scalar::{parse_rat, QContext};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// Monomial expansion of `s_λ` in `vars` variables as a map from exponent
/// vector to coefficient, by direct semistandard-tableau enumeration.
pub(crate) fn monomial_schur(shape: &Partition, vars: usize) -> BTreeMap<Vec<u32>, i64> {
    let cells: Vec<(usize, usize)> = shape.cells().collect();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    fn go(
        cells: &[(usize, usize)],
        idx: usize,
        vars: usize,
        filling: &mut BTreeMap<(usize, usize), usize>,
        out: &mut BTreeMap<Vec<u32>, i64>,
    ) {
        if idx == cells.len() {
            let mut mono = vec![0u32; vars];
            for v in filling.values() {
                mono[*v - 1] += 1;
            }
            *out.entry(mono).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[idx];
        let lo = filling.get(&(r, c - 1)).copied().unwrap_or(1); // row: weak
        let above = filling.get(&(r - 1, c)).copied().unwrap_or(0); // col: strict
        for v in lo.max(above + 1)..=vars {
            filling.insert((r, c), v);
            go(cells, idx + 1, vars, filling, out);
            filling.remove(&(r, c));
        }
    }
    go(&cells, 0, vars, &mut filling, &mut out);
    out
}

pub(crate) fn poly_mul(
    a: &BTreeMap<Vec<u32>, i64>,
    b: &BTreeMap<Vec<u32>, i64>,
) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mono: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(mono).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[test]
fn partition_enumeration() {
    assert_eq!(partitions(0), vec![Partition::empty()]);
    assert_eq!(partitions(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    assert_eq!(partitions(4).len(), 5);
    assert_eq!(partitions(6).len(), 11);
}

#[test]
fn conjugate_and_hooks() {
    let lam = p(&[3, 2, 2, 1]);
    assert_eq!(lam.conjugate(), p(&[4, 3, 1]));
    assert_eq!(lam.conjugate().conjugate(), lam);
    assert_eq!(lam.weight(), 8);
    assert_eq!(lam.height(), 4);
    // (2,2) hooks: 3,2,2,1
    let mu = p(&[2, 2]);
    let hooks: Vec<u32> = mu.cells().map(|(r, c)| mu.hook_length(r, c)).collect();
    assert_eq!(hooks, vec![3, 2, 2, 1]);
}

#[test]
fn addable_corner_contents() {
    assert_eq!(Partition::empty().addable_contents(), vec![0]);
    assert_eq!(p(&[1]).addable_contents(), vec![1, -1]);
    assert_eq!(p(&[2, 1]).addable_contents(), vec![2, 0, -2]);
    let grown = p(&[2, 1]).add_box_at_content(0).unwrap();
    assert_eq!(grown, p(&[2, 2]));
}

#[test]
fn standard_tableau_counts() {
    assert_eq!(standard_tableaux(&p(&[3])).len(), 1);
    assert_eq!(standard_tableaux(&p(&[2, 1])).len(), 2);
    assert_eq!(standard_tableaux(&p(&[2, 2])).len(), 2);
    for shape in partitions(5) {
        let listed = standard_tableaux(&shape).len();
        assert_eq!(Int::from(listed), tableau_count(&shape), "{shape}");
    }
}

#[test]
fn regular_module_dimension_count() {
    // Σ d_λ² = m!
    for m in 1..=6u32 {
        let mut sum = Int::from(0);
        for shape in partitions(m) {
            let d = tableau_count(&shape);
            sum += &d * &d;
        }
        let mut fact = Int::from(1);
        for v in 1..=u64::from(m) {
            fact *= Int::from(v);
        }
        assert_eq!(sum, fact, "m={m}");
    }
}

#[test]
fn first_tableau_is_column_major() {
    // the (3,2,2,1) example: columns are (1,2,3,4), (5,6,7), (8)
    let lam = p(&[3, 2, 2, 1]);
    let first = &standard_tableaux(&lam)[0];
    assert_eq!(
        first.rows(),
        vec![vec![1, 5, 8], vec![2, 6], vec![3, 7], vec![4]]
    );
    // contents along the filling follow the columns
    assert_eq!(first.content(1), 0);
    assert_eq!(first.content(4), -3);
    assert_eq!(first.content(5), 1);
    assert_eq!(first.content(8), 2);
}

#[test]
fn remaining_tableaux_sorted_by_reading_word() {
    let lam = p(&[2, 1]);
    let ts = standard_tableaux(&lam);
    assert_eq!(ts[0].rows(), vec![vec![1, 3], vec![2]]); // column-major first
    assert_eq!(ts[1].rows(), vec![vec![1, 2], vec![3]]);
    let words: Vec<Vec<u32>> = ts[1..].iter().map(|t| t.reading_word()).collect();
    let mut sorted = words.clone();
    sorted.sort();
    assert_eq!(words, sorted);
}

#[test]
fn shape_prefixes_grow_one_box() {
    let lam = p(&[3, 2]);
    for t in standard_tableaux(&lam) {
        let mut prev = Partition::empty();
        for k in 1..=t.size() {
            let cur = t.shape_at(k);
            assert_eq!(cur.weight(), k as u32);
            assert!(cur.contains(&prev));
            prev = cur;
        }
        assert_eq!(prev, lam);
    }
}

#[test]
fn schur_principal_examples() {
    let ctx = QContext::Formal;
    // s_(1) = p_q
    for pp in 1..=4u32 {
        assert_eq!(
            schur_principal(&p(&[1]), pp, &ctx).unwrap(),
            ctx.q_number(pp).unwrap()
        );
        // s_(1^p) = 1
        let col = Partition::new(vec![1; pp as usize]).unwrap();
        assert!(schur_principal(&col, pp, &ctx).unwrap().is_one());
    }
    // (2) at p=2 → 3_q
    assert_eq!(
        schur_principal(&p(&[2]), 2, &ctx).unwrap(),
        ctx.q_number(3).unwrap()
    );
    // (2,1) at p=3 → 2_q·4_q
    let expect = ctx
        .q_number(2)
        .unwrap()
        .checked_mul(&ctx.q_number(4).unwrap())
        .unwrap();
    assert_eq!(schur_principal(&p(&[2, 1]), 3, &ctx).unwrap(), expect);
    // height above p vanishes
    assert!(schur_principal(&p(&[1, 1, 1]), 2, &ctx).unwrap().is_zero());
}

#[test]
fn schur_principal_matches_ssyt_sum() {
    // hook-content vs the monomial sum at x_i = q^(p+1−2i)
    let ctx = QContext::Formal;
    for pp in 1..=3u32 {
        for m in 1..=4u32 {
            for shape in partitions(m) {
                if shape.height() > pp as usize {
                    continue;
                }
                let table = monomial_schur(&shape, pp as usize);
                let mut sum = ctx.zero();
                for (mono, coeff) in table {
                    let mut term = ctx.from_int(coeff);
                    for (i, e) in mono.iter().enumerate() {
                        let power = i64::from(pp) + 1 - 2 * (i as i64 + 1);
                        term = term.checked_mul(&ctx.q_pow(power * i64::from(*e))).unwrap();
                    }
                    sum = sum.checked_add(&term).unwrap();
                }
                assert_eq!(
                    schur_principal(&shape, pp, &ctx).unwrap(),
                    sum,
                    "{shape} p={pp}"
                );
            }
        }
    }
}

#[test]
fn schur_principal_is_palindromic() {
    // invariance under q ↔ q^-1: evaluate at q=3/2 and q=2/3
    let a = QContext::numeric_from_parts(3, 2);
    let b = QContext::numeric_from_parts(2, 3);
    for m in 1..=4u32 {
        for shape in partitions(m) {
            for pp in 1..=4u32 {
                assert_eq!(
                    schur_principal(&shape, pp, &a).unwrap(),
                    schur_principal(&shape, pp, &b).unwrap(),
                    "{shape} p={pp}"
                );
            }
        }
    }
}

#[test]
fn column_strip_is_dimension_neutral() {
    let ctx = QContext::Formal;
    for pp in 1..=3u32 {
        for m in 0..=3u32 {
            for mu in partitions(m) {
                if mu.height() > pp as usize {
                    continue;
                }
                let lam = mu.prepend_column(pp as usize).unwrap();
                assert_eq!(
                    schur_principal(&lam, pp, &ctx).unwrap(),
                    schur_principal(&mu, pp, &ctx).unwrap(),
                    "{mu} p={pp}"
                );
            }
        }
    }
}

#[test]
fn classical_dimension_examples() {
    assert_eq!(classical_dimension(&p(&[2, 1]), 3), Int::from(8));
    assert_eq!(classical_dimension(&p(&[1]), 2), Int::from(2));
    assert_eq!(classical_dimension(&p(&[1, 1, 1]), 2), Int::from(0));
    // agrees with SSYT count
    for shape in partitions(4) {
        let count = monomial_schur(&shape, 3).values().sum::<i64>();
        assert_eq!(classical_dimension(&shape, 3), Int::from(count), "{shape}");
    }
}

#[test]
fn am_functional_with_q_binomials_is_schur_principal() {
    let ctx = QContext::Formal;
    for pp in 1..=3u32 {
        let f = AMFunctional::q_binomial(&ctx, pp).unwrap();
        for m in 0..=4u32 {
            for shape in partitions(m) {
                assert_eq!(
                    f.evaluate(&shape).unwrap(),
                    schur_principal(&shape, pp, &ctx).unwrap(),
                    "{shape} p={pp}"
                );
            }
        }
    }
}

#[test]
fn am_functional_classical_counts_tableaux() {
    let ctx = QContext::numeric_from_parts(3, 2);
    let f = AMFunctional::classical(&ctx, 3).unwrap();
    for m in 0..=4u32 {
        for shape in partitions(m) {
            let expect = ctx.from_rat(crate::scalar::Rat::from_integer(classical_dimension(
                &shape, 3,
            )));
            assert_eq!(f.evaluate(&shape).unwrap(), expect, "{shape}");
        }
    }
}

#[test]
fn am_functional_at_p_one() {
    let ctx = QContext::Formal;
    let f = AMFunctional::new(&ctx, 1, vec![]).unwrap();
    assert!(f.evaluate(&p(&[5])).unwrap().is_one());
    assert!(f.evaluate(&p(&[2, 1])).unwrap().is_zero());
}

#[test]
fn multiplicativity_for_simple_cases() {
    let ctx = QContext::Formal;
    let f = AMFunctional::q_binomial(&ctx, 3).unwrap();
    // f₁² = f((2)) + f((1,1))
    let f1 = f.evaluate(&p(&[1])).unwrap();
    let sum = f
        .evaluate(&p(&[2]))
        .unwrap()
        .checked_add(&f.evaluate(&p(&[1, 1])).unwrap())
        .unwrap();
    assert_eq!(f1.checked_mul(&f1).unwrap(), sum);
    assert!(f.multiplicativity_check(&p(&[1]), &p(&[2, 1])).unwrap().ok);
}

#[test]
fn multiplicativity_for_arbitrary_e_values() {
    // the identity holds for any specialization of the elementary basis
    let ctx = QContext::numeric_from_parts(3, 2);
    let samples = [vec!["2/3", "-1/5"], vec!["7", "0"], vec!["-3/2", "11/4"]];
    for (i, interior) in samples.iter().enumerate() {
        let e: Vec<_> = interior
            .iter()
            .map(|s| ctx.from_rat(parse_rat(s).unwrap()))
            .collect();
        let f = AMFunctional::new(&ctx, 3, e).unwrap();
        for m1 in 0..=2u32 {
            for m2 in 0..=3u32 {
                if m1 + m2 > 5 {
                    continue;
                }
                for lam in partitions(m1) {
                    for mu in partitions(m2) {
                        let rep = f.multiplicativity_check(&lam, &mu).unwrap();
                        assert!(
                            rep.ok,
                            "sample {i}: {lam} × {mu}: {} ≠ {}",
                            rep.left, rep.right
                        );
                    }
                }
            }
        }
    }
}
