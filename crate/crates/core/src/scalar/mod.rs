//! Exact arithmetic over the ground field, on one of two backends:
//!
//! - `Num`: rationals of arbitrary precision, with `q` specialized to a fixed
//!   generic rational value (fast; used for exact ranks, which do not depend
//!   on a generic `q`),
//! - `Formal`: rational functions in a formal variable `q` (used to prove
//!   symbolic identities).
//!
//! The two backends never mix inside one computation; every value is
//! canonical, so `==` is value equality.

mod laurent;
mod parse;
mod ratfn;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use laurent::Laurent;
pub use parse::parse_scalar;
pub use ratfn::RatFn;

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Numeric,
    Formal,
}

/// One element of the ground field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Num(Rat),
    Formal(RatFn),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Num(_) => Backend::Numeric,
            Scalar::Formal(_) => Backend::Formal,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Num(r) => r.is_zero(),
            Scalar::Formal(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Num(r) => r.is_one(),
            Scalar::Formal(f) => f.is_one(),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Num(a), Scalar::Num(b)) => Ok(Scalar::Num(a + b)),
            (Scalar::Formal(a), Scalar::Formal(b)) => Ok(Scalar::Formal(a.add(b))),
            _ => Err(mismatch("add")),
        }
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Num(a), Scalar::Num(b)) => Ok(Scalar::Num(a - b)),
            (Scalar::Formal(a), Scalar::Formal(b)) => Ok(Scalar::Formal(a.sub(b))),
            _ => Err(mismatch("sub")),
        }
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Num(a), Scalar::Num(b)) => Ok(Scalar::Num(a * b)),
            (Scalar::Formal(a), Scalar::Formal(b)) => Ok(Scalar::Formal(a.mul(b))),
            _ => Err(mismatch("mul")),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Num(a) => Scalar::Num(-a),
            Scalar::Formal(a) => Scalar::Formal(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Num(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Num(a.recip()))
                }
            }
            Scalar::Formal(a) => Ok(Scalar::Formal(a.inv()?)),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e == 0 {
            return Ok(match self {
                Scalar::Num(_) => Scalar::Num(Rat::one()),
                Scalar::Formal(_) => Scalar::Formal(RatFn::one()),
            });
        }
        let base = if e > 0 { self.clone() } else { self.inv()? };
        let mut acc: Option<Scalar> = None;
        let mut b = base;
        let mut k = e.unsigned_abs();
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.checked_mul(&b)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            b = b.checked_mul(&b)?;
        }
        Ok(acc.expect("e != 0"))
    }

    /// Evaluate at a rational `q`; the identity on numeric scalars.
    pub fn eval_at(&self, q: &Rat) -> Result<Rat> {
        match self {
            Scalar::Num(a) => Ok(a.clone()),
            Scalar::Formal(f) => f.eval(q),
        }
    }

    /// Size measure for pivot selection during exact elimination.
    pub fn complexity(&self) -> usize {
        match self {
            Scalar::Num(a) => (a.numer().bits() + a.denom().bits() + 1) as usize,
            Scalar::Formal(f) => f.complexity(),
        }
    }

    /// Zero on the same backend as `self`.
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Num(_) => Scalar::Num(Rat::zero()),
            Scalar::Formal(_) => Scalar::Formal(RatFn::zero()),
        }
    }

    /// One on the same backend as `self`.
    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Num(_) => Scalar::Num(Rat::one()),
            Scalar::Formal(_) => Scalar::Formal(RatFn::one()),
        }
    }
}

fn mismatch(op: &str) -> Error {
    Error::BackendMismatch(format!("numeric and formal scalars mixed in `{op}`"))
}

macro_rules! arith_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar backends must agree")
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

arith_op!(Add, add, checked_add);
arith_op!(Sub, sub, checked_sub);
arith_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Num(a) => write!(f, "{}", a),
            Scalar::Formal(p) => write!(f, "{}", p),
        }
    }
}

/// The ambient `q`: either the formal variable or a fixed rational value.
/// All scalar values produced from the same context share one backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QContext {
    Formal,
    Numeric(Rat),
}

impl QContext {
    pub fn numeric_from_parts(numer: i64, denom: i64) -> QContext {
        QContext::Numeric(Rat::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn backend(&self) -> Backend {
        match self {
            QContext::Formal => Backend::Formal,
            QContext::Numeric(_) => Backend::Numeric,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            QContext::Formal => Scalar::Formal(RatFn::zero()),
            QContext::Numeric(_) => Scalar::Num(Rat::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            QContext::Formal => Scalar::Formal(RatFn::one()),
            QContext::Numeric(_) => Scalar::Num(Rat::one()),
        }
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        match self {
            QContext::Formal => Scalar::Formal(RatFn::constant(Rat::from_integer(BigInt::from(v)))),
            QContext::Numeric(_) => Scalar::Num(Rat::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_rat(&self, r: Rat) -> Scalar {
        match self {
            QContext::Formal => Scalar::Formal(RatFn::constant(r)),
            QContext::Numeric(_) => Scalar::Num(r),
        }
    }

    pub fn q(&self) -> Scalar {
        self.q_pow(1)
    }

    pub fn q_pow(&self, e: i64) -> Scalar {
        match self {
            QContext::Formal => Scalar::Formal(RatFn::from_poly(Laurent::monomial(e, Rat::one()))),
            QContext::Numeric(q) => {
                Scalar::Num(laurent::rat_pow(q, e).expect("numeric q is nonzero"))
            }
        }
    }

    /// The q-number `k_q = (q^k − q^(−k))/(q − q^(−1))`; `0_q = 0`, `1_q = 1`.
    pub fn q_number(&self, k: u32) -> Result<Scalar> {
        match self {
            QContext::Formal => {
                let mut terms = Vec::new();
                let k = i64::from(k);
                let mut e = k - 1;
                while e >= -(k - 1) {
                    terms.push((e, Rat::one()));
                    e -= 2;
                }
                Ok(Scalar::Formal(RatFn::from_poly(Laurent::from_terms(terms))))
            }
            QContext::Numeric(_) => {
                let num = &self.q_pow(i64::from(k)) - &self.q_pow(-i64::from(k));
                let den = &self.q_pow(1) - &self.q_pow(-1);
                if den.is_zero() {
                    return Err(Error::NonGenericQ("q - q^-1 vanishes (q = ±1)".into()));
                }
                let v = num.checked_div(&den)?;
                if k > 0 && v.is_zero() {
                    return Err(Error::NonGenericQ(format!("{k}_q = 0 at this q")));
                }
                Ok(v)
            }
        }
    }

    pub fn q_factorial(&self, k: u32) -> Result<Scalar> {
        let mut acc = self.one();
        for j in 1..=k {
            acc = acc.checked_mul(&self.q_number(j)?)?;
        }
        Ok(acc)
    }

    /// Gaussian binomial `p_q!/(k_q!(p−k)_q!)`, computed by factorial
    /// cancellation `∏_{j=1..k} (p−k+j)_q / j_q`.
    pub fn q_binomial(&self, p: u32, k: u32) -> Result<Scalar> {
        if k > p {
            return Err(Error::OutOfRange(format!(
                "q_binomial({p}, {k}) needs 0 <= k <= p"
            )));
        }
        let mut acc = self.one();
        for j in 1..=k {
            acc = acc.checked_mul(&self.q_number(p - k + j)?)?;
            acc = acc.checked_div(&self.q_number(j)?)?;
        }
        Ok(acc)
    }

    /// Check that `j_q ≠ 0` for `1 ≤ j ≤ bound`. The formal backend always
    /// passes; a numeric `q` that is itself a root of unity (`q = ±1`) is
    /// rejected by definition.
    pub fn genericity_check(&self, bound: u32) -> GenericityReport {
        match self {
            QContext::Formal => GenericityReport {
                ok: true,
                bound,
                failed_at: None,
                reason: None,
            },
            QContext::Numeric(q) => {
                if q.is_zero() {
                    return GenericityReport {
                        ok: false,
                        bound,
                        failed_at: Some(0),
                        reason: Some("q = 0 is not invertible".into()),
                    };
                }
                if q.is_one() {
                    return GenericityReport {
                        ok: false,
                        bound,
                        failed_at: Some(1),
                        reason: Some("q^1 = 1: q is a root of unity".into()),
                    };
                }
                if (-q.clone()).is_one() {
                    return GenericityReport {
                        ok: false,
                        bound,
                        failed_at: Some(2),
                        reason: Some("q^2 = 1: q is a root of unity".into()),
                    };
                }
                for j in 1..=bound {
                    if self.q_number(j).is_err() {
                        return GenericityReport {
                            ok: false,
                            bound,
                            failed_at: Some(j),
                            reason: Some(format!("{j}_q = 0")),
                        };
                    }
                }
                GenericityReport {
                    ok: true,
                    bound,
                    failed_at: None,
                    reason: None,
                }
            }
        }
    }

    /// Parse a scalar literal (see the module grammar) on this backend.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        parse_scalar(self, text)
    }

    pub fn describe(&self) -> String {
        match self {
            QContext::Formal => "formal".to_string(),
            QContext::Numeric(q) => q.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenericityReport {
    pub ok: bool,
    pub bound: u32,
    pub failed_at: Option<u32>,
    pub reason: Option<String>,
}

/// Parse a rational literal such as `3/2` or `-7`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(n, d))
}

pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq() -> QContext {
        QContext::Formal
    }

    fn nq() -> QContext {
        QContext::numeric_from_parts(3, 2)
    }

    #[test]
    fn additive_inverse_and_inv() {
        for ctx in [fq(), nq()] {
            let q = ctx.q();
            assert!((&q - &q).is_zero());
            assert_eq!(q.inv().unwrap(), ctx.q_pow(-1));
        }
    }

    #[test]
    fn numeric_evaluation_example() {
        // at q = 3/2: q + 1/q = 13/6
        let ctx = nq();
        let v = &ctx.q() + &ctx.q_pow(-1);
        assert_eq!(v, ctx.from_rat(parse_rat("13/6").unwrap()));
    }

    #[test]
    fn q_number_basics() {
        for ctx in [fq(), nq()] {
            assert!(ctx.q_number(0).unwrap().is_zero());
            assert!(ctx.q_number(1).unwrap().is_one());
            let two = &ctx.q() + &ctx.q_pow(-1);
            assert_eq!(ctx.q_number(2).unwrap(), two);
        }
        // k=3 at q=2 → (8 − 1/8)/(2 − 1/2) = 21/4
        let ctx = QContext::numeric_from_parts(2, 1);
        assert_eq!(
            ctx.q_number(3).unwrap(),
            ctx.from_rat(parse_rat("21/4").unwrap())
        );
    }

    #[test]
    fn q_binomial_values() {
        for ctx in [fq(), nq()] {
            assert_eq!(ctx.q_binomial(2, 1).unwrap(), ctx.q_number(2).unwrap());
            assert!(ctx.q_binomial(4, 4).unwrap().is_one());
            assert!(ctx.q_binomial(4, 0).unwrap().is_one());
            // (p=4, k=2) → 4_q·3_q/2_q
            let expect = ctx
                .q_number(4)
                .unwrap()
                .checked_mul(&ctx.q_number(3).unwrap())
                .unwrap()
                .checked_div(&ctx.q_number(2).unwrap())
                .unwrap();
            assert_eq!(ctx.q_binomial(4, 2).unwrap(), expect);
            // symmetry under k ↔ p−k
            for p in 0..=8u32 {
                for k in 0..=p {
                    assert_eq!(
                        ctx.q_binomial(p, k).unwrap(),
                        ctx.q_binomial(p, p - k).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn gaussian_binomial_matches_generating_product() {
        // coefficients of ∏_{k=0}^{p−1} (q^(2k+1−p) + t) in t
        let ctx = fq();
        for p in 1..=5u32 {
            let mut coeffs = vec![ctx.one()];
            for k in 0..p {
                let root = ctx.q_pow(2 * i64::from(k) + 1 - i64::from(p));
                let mut next = vec![ctx.zero(); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i] = &next[i] + &(c * &root);
                    next[i + 1] = &next[i + 1] + c;
                }
                coeffs = next;
            }
            for k in 0..=p {
                assert_eq!(
                    coeffs[(p - k) as usize],
                    ctx.q_binomial(p, k).unwrap(),
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn genericity_reports() {
        assert!(fq().genericity_check(10).ok);
        assert!(nq().genericity_check(10).ok);
        let bad = QContext::numeric_from_parts(1, 1).genericity_check(2);
        assert!(!bad.ok);
        assert_eq!(bad.failed_at, Some(1));
        let neg = QContext::numeric_from_parts(-1, 1).genericity_check(2);
        assert!(!neg.ok);
        assert_eq!(neg.failed_at, Some(2));
    }

    #[test]
    fn formal_q_numbers_nonzero() {
        let ctx = fq();
        for k in 1..=12 {
            assert!(!ctx.q_number(k).unwrap().is_zero());
        }
    }

    #[test]
    fn backend_mismatch_is_detected() {
        let a = fq().one();
        let b = nq().one();
        assert!(a.checked_add(&b).is_err());
    }
}
