//! The local representation of the Hecke algebra `H_m` on `V^⊗m`:
//! generator words, antisymmetrizers and symmetrizers, Jucys–Murphy
//! elements, primitive and central idempotents, braiding chains, and
//! object braidings.
//!
//! Composition convention: operators act on column vectors and
//! `multiply(A, B)` applies `B` first; a projector written last in an
//! algebra word is the leftmost matrix factor.
//!
//! `LocalRep` memoizes the ladders `A^(k)`, `S^(k)`, the Jucys–Murphy
//! elements, and small idempotents per symmetry; the caches sit behind a
//! mutex, so a shared reference can be used from several threads.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symfunc::{standard_tableaux, Partition, StandardTableau};
use crate::symmetry::HeckeSymmetry;
use crate::tensor::{checked_dim, TensorOperator};

/// A primitive idempotent realized on `V^⊗m`.
#[derive(Debug, Clone)]
pub struct IdempotentHandle {
    pub shape: Partition,
    pub tableau: StandardTableau,
    pub operator: TensorOperator,
}

/// Idempotents larger than this dimension are rebuilt on demand instead of
/// being kept in the cache.
const IDEMPOTENT_CACHE_DIM: usize = 256;

#[derive(Default)]
struct Caches {
    /// `A^(k)` on `k` sites.
    antisym: HashMap<usize, TensorOperator>,
    /// `S^(k)` on `k` sites.
    sym: HashMap<usize, TensorOperator>,
    /// Jucys–Murphy element `𝒥_k` on `k` sites.
    jm: HashMap<usize, TensorOperator>,
    /// Primitive idempotents keyed by the tableau's cell positions.
    idem: HashMap<Vec<(usize, usize)>, TensorOperator>,
}

pub struct LocalRep<'a> {
    h: &'a HeckeSymmetry,
    r_inv: TensorOperator,
    caches: Mutex<Caches>,
}

impl<'a> LocalRep<'a> {
    pub fn new(h: &'a HeckeSymmetry) -> Result<Self> {
        h.ensure_validated()?;
        Ok(LocalRep {
            h,
            r_inv: h.r_inverse()?,
            caches: Mutex::new(Caches::default()),
        })
    }

    pub fn symmetry(&self) -> &'a HeckeSymmetry {
        self.h
    }

    fn dim_of(&self, m: usize) -> Result<usize> {
        checked_dim(self.h.n(), m, self.h.max_dim())
            .map_err(|_| Error::DimensionLimit(self.h.n().pow(m as u32), self.h.max_dim()))
    }

    /// `R_i^(±1)` embedded on `m` sites.
    pub fn generator(&self, i: usize, m: usize, exponent: i8) -> Result<TensorOperator> {
        if i < 1 || i + 1 > m {
            return Err(Error::PositionOutOfRange(format!(
                "generator {i} on {m} sites"
            )));
        }
        self.dim_of(m)?;
        let base = match exponent {
            1 => self.h.r_matrix(),
            -1 => &self.r_inv,
            other => return Err(Error::OutOfRange(format!("generator exponent {other}"))),
        };
        TensorOperator::embed_at(base, i, m)
    }

    /// Product of embedded generators in word order.
    pub fn rho_word(&self, word: &[(usize, i8)], m: usize) -> Result<TensorOperator> {
        let mut acc = TensorOperator::identity(self.h.ctx(), self.h.n(), m);
        for &(i, e) in word {
            acc = acc.multiply(&self.generator(i, m, e)?)?;
        }
        Ok(acc)
    }

    /// The antisymmetrizer `A^(k)` on `k` sites, by the ladder
    /// `A^(m) = ((−1)^(m−1)/m_q) · A^(m−1) · ℛ_(m−1)(m−1) ⋯ ℛ_1(1)` with
    /// `ℛ_i(j) = R_i − (q^j/j_q)·id`, starting from `A^(1) = id`.
    pub fn antisymmetrizer(&self, k: usize) -> Result<TensorOperator> {
        self.ladder(k, false)
    }

    /// The symmetrizer `S^(k)` on `k` sites: the antisymmetrizer of the
    /// companion symmetry `(−R, q⁻¹)`, which satisfies the same quadratic
    /// relation with `q ↦ q⁻¹`. Reuses the one audited ladder.
    pub fn symmetrizer(&self, k: usize) -> Result<TensorOperator> {
        self.ladder(k, true)
    }

    fn ladder(&self, k: usize, companion: bool) -> Result<TensorOperator> {
        if k < 1 {
            return Err(Error::OutOfRange("ladder level must be ≥ 1".into()));
        }
        self.dim_of(k)?;
        let ctx = self.h.ctx();
        let n = self.h.n();
        let mut level = 1;
        let mut acc = TensorOperator::identity(ctx, n, 1);
        {
            let caches = self.caches.lock().unwrap();
            let map = if companion {
                &caches.sym
            } else {
                &caches.antisym
            };
            for l in (1..=k).rev() {
                if let Some(op) = map.get(&l) {
                    if l == k {
                        return Ok(op.clone());
                    }
                    level = l;
                    acc = op.clone();
                    break;
                }
            }
        }
        let q = if companion { ctx.q_pow(-1) } else { ctx.q() };
        while level < k {
            let m = level + 1;
            acc = acc.tensor_product(&TensorOperator::identity(ctx, n, 1))?;
            for i in (1..m).rev() {
                // ℛ_i(i) = ±R_i − (q^i/i_q)·id
                let r_i = self.generator(i, m, 1)?;
                let r_i = if companion { r_i.neg() } else { r_i };
                let iq = q_number_of(ctx, &q, i as u32)?;
                let shift = q.pow(i as i64)?.checked_div(&iq)?;
                let factor = r_i.sub(&TensorOperator::identity(ctx, n, m).scale(&shift)?)?;
                acc = acc.multiply(&factor)?;
            }
            let mq = q_number_of(ctx, &q, m as u32)?;
            let mut coeff = mq.inv()?;
            if (m - 1) % 2 == 1 {
                coeff = -coeff;
            }
            acc = acc.scale(&coeff)?;
            level = m;
            let mut caches = self.caches.lock().unwrap();
            let map = if companion {
                &mut caches.sym
            } else {
                &mut caches.antisym
            };
            map.insert(level, acc.clone());
        }
        Ok(acc)
    }

    /// Jucys–Murphy element `𝒥_k` embedded on `m` sites:
    /// `𝒥_1 = id`, `𝒥_(k+1) = R_k·𝒥_k·R_k`.
    pub fn jucys_murphy(&self, m: usize, k: usize) -> Result<TensorOperator> {
        if k < 1 || k > m {
            return Err(Error::PositionOutOfRange(format!(
                "jucys_murphy({k}) on {m} sites"
            )));
        }
        self.dim_of(m)?;
        let ctx = self.h.ctx();
        let n = self.h.n();
        let mut level = 1;
        let mut acc = TensorOperator::identity(ctx, n, 1);
        {
            let caches = self.caches.lock().unwrap();
            for l in (1..=k).rev() {
                if let Some(op) = caches.jm.get(&l) {
                    level = l;
                    acc = op.clone();
                    break;
                }
            }
        }
        while level < k {
            let m2 = level + 1;
            acc = acc.tensor_product(&TensorOperator::identity(ctx, n, 1))?;
            let r = self.generator(m2 - 1, m2, 1)?;
            acc = r.multiply(&acc)?.multiply(&r)?;
            level = m2;
            self.caches.lock().unwrap().jm.insert(level, acc.clone());
        }
        if k == m {
            Ok(acc)
        } else {
            acc.tensor_product(&TensorOperator::identity(ctx, n, m - k))
        }
    }

    /// The primitive idempotent attached to a standard tableau, built along
    /// the tableau as a product of Jucys–Murphy spectral projectors: at step
    /// `k` the factor `∏_{c' ≠ c_k} (𝒥_k − q^(2c'))/(q^(2c_k) − q^(2c'))`
    /// runs over the addable contents `c'` of the previous shape.
    pub fn primitive_idempotent(&self, tableau: &StandardTableau) -> Result<IdempotentHandle> {
        let m = tableau.size();
        if m == 0 {
            return Err(Error::OutOfRange("empty tableau".into()));
        }
        let dim = self.dim_of(m)?;
        let key: Vec<(usize, usize)> = (1..=m).map(|k| tableau.position(k)).collect();
        if let Some(op) = self.caches.lock().unwrap().idem.get(&key) {
            return Ok(IdempotentHandle {
                shape: tableau.shape().clone(),
                tableau: tableau.clone(),
                operator: op.clone(),
            });
        }
        let ctx = self.h.ctx();
        let n = self.h.n();
        let mut y = TensorOperator::identity(ctx, n, 1);
        for k in 2..=m {
            y = y.tensor_product(&TensorOperator::identity(ctx, n, 1))?;
            let jk = self.jucys_murphy(k, k)?;
            let prev = tableau.shape_at(k - 1);
            let c_k = tableau.content(k);
            let target = ctx.q_pow(2 * c_k);
            for c_other in prev.addable_contents() {
                if c_other == c_k {
                    continue;
                }
                let eig = ctx.q_pow(2 * c_other);
                let gap = &target - &eig;
                if gap.is_zero() {
                    return Err(Error::NonGenericQ(format!(
                        "eigenvalue gap q^{} − q^{} vanishes",
                        2 * c_k,
                        2 * c_other
                    )));
                }
                let num = jk.sub(&TensorOperator::identity(ctx, n, k).scale(&eig)?)?;
                y = y.multiply(&num.scale(&gap.inv()?)?)?;
            }
        }
        if dim <= IDEMPOTENT_CACHE_DIM {
            self.caches.lock().unwrap().idem.insert(key, y.clone());
        }
        Ok(IdempotentHandle {
            shape: tableau.shape().clone(),
            tableau: tableau.clone(),
            operator: y,
        })
    }

    /// The central idempotent of a shape: the sum of its primitive ones.
    pub fn central_idempotent(&self, shape: &Partition) -> Result<TensorOperator> {
        let m = shape.weight() as usize;
        if m == 0 {
            return Err(Error::OutOfRange("empty shape".into()));
        }
        let mut acc = TensorOperator::zero(self.h.ctx(), self.h.n(), m);
        for t in standard_tableaux(shape) {
            acc = acc.add(&self.primitive_idempotent(&t)?.operator)?;
        }
        Ok(acc)
    }

    /// The braiding `R_{V^⊗a, V^⊗b}` on `a+b` sites. Both chain orderings
    /// are computed independently and must agree exactly; a mismatch flags
    /// an invalid symmetry.
    pub fn braiding_chain(&self, a: usize, b: usize) -> Result<TensorOperator> {
        if a < 1 || b < 1 {
            return Err(Error::OutOfRange("braiding_chain needs a, b ≥ 1".into()));
        }
        let m = a + b;
        self.dim_of(m)?;
        // ordering 1: R_{b→(b+a−1)} R_{(b−1)→(b+a−2)} … R_{1→a}
        let mut word1: Vec<(usize, i8)> = Vec::new();
        for t in (1..=b).rev() {
            word1.extend(chain_indices(t, t + a - 1).into_iter().map(|i| (i, 1)));
        }
        // ordering 2: R_{b→1} R_{(b+1)→2} … R_{(a+b−1)→a}
        let mut word2: Vec<(usize, i8)> = Vec::new();
        for t in 0..a {
            word2.extend(chain_indices(b + t, 1 + t).into_iter().map(|i| (i, 1)));
        }
        let first = self.rho_word(&word1, m)?;
        let second = self.rho_word(&word2, m)?;
        if first != second {
            return Err(Error::ChainMismatch(format!(
                "orderings differ for a={a}, b={b}"
            )));
        }
        Ok(first)
    }

    /// The object braiding `R_{λμ} = (𝕐^μ ⊗ 𝕐^λ) · R_{V^⊗a, V^⊗b}` with
    /// `a = |λ|`, `b = |μ|`; after the chain the `μ` block occupies the
    /// leading sites.
    pub fn braiding_object(&self, lam: &Partition, mu: &Partition) -> Result<TensorOperator> {
        let a = lam.weight() as usize;
        let b = mu.weight() as usize;
        let chain = self.braiding_chain(a, b)?;
        let y_mu = self.central_idempotent(mu)?;
        let y_lam = self.central_idempotent(lam)?;
        y_mu.tensor_product(&y_lam)?.multiply(&chain)
    }

    /// Rank of the first primitive idempotent of the shape — the classical
    /// dimension of the corresponding object. Independent of the tableau
    /// choice (covered by tests).
    pub fn object_dim(&self, shape: &Partition) -> Result<usize> {
        let tableaux = standard_tableaux(shape);
        let first = tableaux
            .first()
            .ok_or_else(|| Error::OutOfRange("empty shape".into()))?;
        Ok(self.primitive_idempotent(first)?.operator.rank())
    }
}

fn chain_indices(from: usize, to: usize) -> Vec<usize> {
    if from <= to {
        (from..=to).collect()
    } else {
        (to..=from).rev().collect()
    }
}

/// `k_q` computed from an explicit scalar `q` value (the symmetrizer ladder
/// runs at the companion value `q⁻¹`).
fn q_number_of(ctx: &crate::scalar::QContext, q: &Scalar, k: u32) -> Result<Scalar> {
    if k == 0 {
        return Ok(ctx.zero());
    }
    let num = &q.pow(i64::from(k))? - &q.pow(-i64::from(k))?;
    let den = &q.pow(1)? - &q.pow(-1)?;
    if den.is_zero() {
        return Err(Error::NonGenericQ("q − q^-1 vanishes".into()));
    }
    let v = num.checked_div(&den)?;
    if v.is_zero() {
        return Err(Error::NonGenericQ(format!("{k}_q = 0 at this q")));
    }
    Ok(v)
}
