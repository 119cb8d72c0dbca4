//! Rational functions in `q`: quotients of Laurent polynomials kept in a
//! canonical form so that structural equality is value equality.
//!
//! Canonical form: numerator and denominator coprime as polynomials, the
//! denominator an ordinary polynomial (lowest exponent 0) with coprime
//! integer coefficients and positive leading coefficient. Any `q`-power and
//! rational scale live in the numerator.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::laurent::Laurent;
use super::Rat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Laurent,
    den: Laurent,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn {
            num: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    pub fn one() -> Self {
        RatFn {
            num: Laurent::one(),
            den: Laurent::one(),
        }
    }

    pub fn from_poly(p: Laurent) -> Self {
        RatFn {
            num: p,
            den: Laurent::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFn::from_poly(Laurent::constant(c))
    }

    /// Build `num/den`, canonicalizing. Errors when `den` is zero.
    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        if den.is_one() {
            return Ok(RatFn { num, den });
        }
        Ok(canonicalize(num, den))
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Rough size measure used for pivot selection in exact elimination.
    pub fn complexity(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    pub fn add(&self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn {
                num: self.num.add(&rhs.num),
                den: Laurent::one(),
            };
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            return RatFn::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = self.den.gcd(&rhs.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                rhs.den.div_exact(&g).expect("gcd divides"),
            )
        };
        // a/den_a + b/den_b = (a·db' + b·da') / (da'·db'·g)
        let num = self.num.mul(&db).add(&rhs.num.mul(&da));
        if num.is_zero() {
            return RatFn::zero();
        }
        // any new cancellation divides g
        let g2 = num.gcd(&g);
        let (num, g) = if g2.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&g2).expect("gcd divides"),
                g.div_exact(&g2).expect("gcd divides"),
            )
        };
        normalize_units(num, da.mul(&db).mul(&g))
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &RatFn) -> RatFn {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn {
                num: self.num.mul(&rhs.num),
                den: Laurent::one(),
            };
        }
        // cross-cancel; the result is then automatically coprime
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.div_exact(&g1).expect("gcd divides")
        };
        let d2 = if g1.is_one() {
            rhs.den.clone()
        } else {
            rhs.den.div_exact(&g1).expect("gcd divides")
        };
        let n2 = if g2.is_one() {
            rhs.num.clone()
        } else {
            rhs.num.div_exact(&g2).expect("gcd divides")
        };
        let d1 = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.div_exact(&g2).expect("gcd divides")
        };
        normalize_units(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(normalize_units(self.den.clone(), self.num.clone()))
    }

    pub fn eval(&self, q: &Rat) -> Result<Rat> {
        let d = self.den.eval(q).ok_or(Error::DivisionByZero)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.num.eval(q).ok_or(Error::DivisionByZero)?;
        Ok(n / d)
    }
}

/// Canonicalize `num/den` assuming both nonzero: full GCD then unit cleanup.
fn canonicalize(num: Laurent, den: Laurent) -> RatFn {
    let g = num.gcd(&den);
    if g.is_one() {
        return normalize_units(num, den);
    }
    let num = num.div_exact(&g).expect("gcd divides numerator");
    let den = den.div_exact(&g).expect("gcd divides denominator");
    normalize_units(num, den)
}

/// Move the `q`-power and coefficient scale of an already-coprime pair into
/// the numerator so the denominator hits its canonical form.
fn normalize_units(num: Laurent, den: Laurent) -> RatFn {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return RatFn::zero();
    }
    let shift = den.min_exp().unwrap();
    let mut scale = den.content();
    if den.leading_coeff().is_negative() {
        scale = -scale;
    }
    let inv = Rat::one() / scale;
    let den = den.scale_shift(&inv, -shift);
    let num = num.scale_shift(&inv, -shift);
    RatFn { num, den }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.is_monomial() && !self.num.leading_coeff().is_negative() {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    fn q_num(k: i64) -> RatFn {
        // (q^k - q^-k)/(q - q^-1)
        let num = Laurent::from_terms([(k, rat(1, 1)), (-k, rat(-1, 1))]);
        let den = Laurent::from_terms([(1, rat(1, 1)), (-1, rat(-1, 1))]);
        RatFn::new(num, den).unwrap()
    }

    #[test]
    fn q_numbers_are_polynomials() {
        // 2_q = q + q^-1, 3_q = q^2 + 1 + q^-2
        assert_eq!(
            q_num(2),
            RatFn::from_poly(Laurent::from_terms([(1, rat(1, 1)), (-1, rat(1, 1))]))
        );
        assert_eq!(
            q_num(3),
            RatFn::from_poly(Laurent::from_terms([
                (2, rat(1, 1)),
                (0, rat(1, 1)),
                (-2, rat(1, 1))
            ]))
        );
    }

    #[test]
    fn field_identities() {
        let a = q_num(3);
        let b = q_num(2);
        let ab = a.mul(&b);
        assert_eq!(ab.mul(&b.inv().unwrap()), a);
        assert_eq!(a.sub(&a), RatFn::zero());
        assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let raw = RatFn::new(
            Laurent::from_terms([(3, rat(2, 3)), (1, rat(-2, 3))]),
            Laurent::from_terms([(2, rat(4, 1)), (1, rat(4, 1))]),
        )
        .unwrap();
        let again = RatFn::new(raw.num().clone(), raw.den().clone()).unwrap();
        assert_eq!(raw, again);
        // (2/3)q(q^2-1) / 4q(q+1) = (1/6)(q-1)
        assert_eq!(
            raw,
            RatFn::from_poly(Laurent::from_terms([(1, rat(1, 6)), (0, rat(-1, 6))]))
        );
    }

    #[test]
    fn display_and_eval() {
        let x = RatFn::new(
            Laurent::q(),
            Laurent::from_terms([(0, rat(1, 1)), (1, rat(1, 1))]),
        )
        .unwrap();
        assert_eq!(x.to_string(), "q/(q + 1)");
        assert_eq!(x.eval(&rat(3, 2)).unwrap(), rat(3, 5));
    }
}
