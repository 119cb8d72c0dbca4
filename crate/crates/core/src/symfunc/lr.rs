//! Littlewood–Richardson coefficients via the classical rule: `c^ν_{λμ}`
//! counts skew tableaux of shape `ν/λ` and content `μ` whose rows weakly
//! increase, columns strictly increase, and whose reverse reading word is a
//! lattice word.

use std::collections::BTreeMap;

use super::{partitions, Partition};

/// Expand `s_λ · s_μ = Σ_ν c^ν_{λμ} s_ν`; only nonzero coefficients appear.
pub fn lr_expand(lam: &Partition, mu: &Partition) -> BTreeMap<Partition, u64> {
    let total = lam.weight() + mu.weight();
    let mut out = BTreeMap::new();
    for nu in partitions(total) {
        if !nu.contains(lam) {
            continue;
        }
        let c = lr_coefficient(&nu, lam, mu);
        if c > 0 {
            out.insert(nu, c);
        }
    }
    out
}

/// `c^ν_{λμ}` by direct enumeration of Littlewood–Richardson fillings.
pub fn lr_coefficient(nu: &Partition, lam: &Partition, mu: &Partition) -> u64 {
    if !nu.contains(lam) || nu.weight() != lam.weight() + mu.weight() {
        return 0;
    }
    // skew cells in reverse reading order: rows top to bottom, each row
    // right to left, so the lattice condition can be tracked incrementally
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for r in 1..=nu.height() {
        let lo = lam.part(r - 1) as usize;
        let hi = nu.part(r - 1) as usize;
        for c in (lo + 1..=hi).rev() {
            cells.push((r, c));
        }
    }
    if cells.is_empty() {
        return u64::from(mu.weight() == 0);
    }
    let height = mu.height();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut counts = vec![0u32; height + 1];
    fn go(
        cells: &[(usize, usize)],
        idx: usize,
        mu: &Partition,
        filling: &mut BTreeMap<(usize, usize), usize>,
        counts: &mut Vec<u32>,
        found: &mut u64,
    ) {
        if idx == cells.len() {
            *found += 1;
            return;
        }
        let (r, c) = cells[idx];
        for v in 1..=mu.height() {
            if counts[v] >= mu.part(v - 1) {
                continue; // content exhausted
            }
            // lattice: after placing, #v ≤ #(v−1)
            if v > 1 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            // row weakly increasing, left neighbour (placed later in reverse
            // order) must be ≤ v — check the right neighbour instead:
            if let Some(&right) = filling.get(&(r, c + 1)) {
                if v > right {
                    continue;
                }
            }
            // column strictly increasing downwards
            if let Some(&up) = filling.get(&(r - 1, c)) {
                if v <= up {
                    continue;
                }
            }
            // cells above in the same column not part of the skew shape are
            // from λ and carry no entry; nothing to check there
            counts[v] += 1;
            filling.insert((r, c), v);
            go(cells, idx + 1, mu, filling, counts, found);
            filling.remove(&(r, c));
            counts[v] -= 1;
        }
    }
    let mut found = 0;
    go(&cells, 0, mu, &mut filling, &mut counts, &mut found);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Result;
    use crate::symfunc::tests::monomial_schur;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn pieri_examples() {
        // (1)×(1) → {(2):1, (1,1):1}
        let got = lr_expand(&p(&[1]), &p(&[1]));
        assert_eq!(got.len(), 2);
        assert_eq!(got[&p(&[2])], 1);
        assert_eq!(got[&p(&[1, 1])], 1);
        // (1)×(2,1) → {(3,1):1, (2,2):1, (2,1,1):1}
        let got = lr_expand(&p(&[1]), &p(&[2, 1]));
        assert_eq!(got.len(), 3);
        assert_eq!(got[&p(&[3, 1])], 1);
        assert_eq!(got[&p(&[2, 2])], 1);
        assert_eq!(got[&p(&[2, 1, 1])], 1);
    }

    #[test]
    fn empty_factor_is_neutral() {
        let lam = p(&[2, 1]);
        let got = lr_expand(&Partition::empty(), &lam);
        assert_eq!(got.len(), 1);
        assert_eq!(got[&lam], 1);
    }

    #[test]
    fn symmetric_in_both_arguments() {
        for (a, b) in [
            (p(&[2]), p(&[1, 1])),
            (p(&[2, 1]), p(&[2])),
            (p(&[2, 1]), p(&[2, 1])),
        ] {
            assert_eq!(lr_expand(&a, &b), lr_expand(&b, &a), "{a} × {b}");
        }
    }

    #[test]
    fn vanishes_unless_both_factors_embed() {
        for (nu, c) in lr_expand(&p(&[2, 1]), &p(&[1, 1])) {
            assert!(nu.contains(&p(&[2, 1])), "{nu}: {c}");
            assert!(nu.contains(&p(&[1, 1])), "{nu}: {c}");
        }
    }

    /// Brute-force oracle: expand `s_λ s_μ` as monomial polynomials in
    /// enough variables and peel off Schur terms in dominance order.
    #[test]
    fn matches_monomial_expansion_oracle() -> Result<()> {
        let pairs: Vec<(Partition, Partition)> = [
            (vec![1], vec![1]),
            (vec![2], vec![1]),
            (vec![1, 1], vec![1]),
            (vec![2, 1], vec![1]),
            (vec![2], vec![2]),
            (vec![2], vec![1, 1]),
            (vec![1, 1], vec![1, 1]),
            (vec![2, 1], vec![2, 1]),
            (vec![3], vec![2, 1]),
            (vec![2, 2], vec![2]),
            (vec![3, 1], vec![1, 1]),
        ]
        .into_iter()
        .map(|(a, b)| (p(&a), p(&b)))
        .collect();
        for (lam, mu) in pairs {
            let total = lam.weight() + mu.weight();
            let vars = total as usize; // enough variables for every height
            let mut product = monomial_schur(&lam, vars);
            let other = monomial_schur(&mu, vars);
            product = crate::symfunc::tests::poly_mul(&product, &other);
            let mut expect = BTreeMap::new();
            // partitions() is descending-lex, which refines dominance
            for nu in partitions(total) {
                let mut key = vec![0u32; vars];
                for (i, part) in nu.parts().iter().enumerate() {
                    key[i] = *part;
                }
                let c = product.get(&key).copied().unwrap_or(0);
                if c != 0 {
                    let snu = monomial_schur(&nu, vars);
                    for (mono, k) in snu {
                        let e = product.entry(mono).or_insert(0);
                        *e -= (c as i64) * k;
                        let gone = *e == 0;
                        if gone {
                            // keep map small
                        }
                    }
                    expect.insert(nu, c as u64);
                }
            }
            assert!(
                product.values().all(|v| *v == 0),
                "{lam} × {mu}: residue left"
            );
            assert_eq!(lr_expand(&lam, &mu), expect, "{lam} × {mu}");
        }
        Ok(())
    }
}
