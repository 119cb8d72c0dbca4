//! Laurent polynomials in `q` with exact rational coefficients.
//!
//! Terms are a sorted vector (ascending exponent) with no zero coefficients;
//! the zero polynomial is the empty vector. Polynomial GCD goes through the
//! subresultant remainder sequence on integer-cleared coefficients, which
//! keeps intermediate coefficients small without per-step content
//! computations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    /// `(exponent, coefficient)`, strictly ascending exponents.
    terms: Vec<(i64, Rat)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent::monomial(0, Rat::one())
    }

    /// The variable itself, `q`.
    pub fn q() -> Self {
        Laurent::monomial(1, Rat::one())
    }

    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        if coeff.is_zero() {
            Laurent::zero()
        } else {
            Laurent {
                terms: vec![(exp, coeff)],
            }
        }
    }

    pub fn constant(c: Rat) -> Self {
        Laurent::monomial(0, c)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut terms: Vec<(i64, Rat)> = it.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, Rat)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc += c;
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((e, c)),
            }
        }
        Laurent { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// True when the polynomial is a single term `c·q^e`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.terms
            .last()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &rhs.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(rhs.terms[j..].iter().cloned());
        Laurent { terms: out }
    }

    pub fn sub(&self, rhs: &Laurent) -> Laurent {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return rhs.scale_shift(c, *e);
        }
        if rhs.is_monomial() {
            let (e, c) = &rhs.terms[0];
            return self.scale_shift(c, *e);
        }
        let mut acc = Laurent::zero();
        for (e, c) in &self.terms {
            acc = acc.add(&rhs.scale_shift(c, *e));
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Laurent {
        self.scale_shift(c, 0)
    }

    /// `c·q^shift · self`.
    pub fn scale_shift(&self, c: &Rat, shift: i64) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, k)| (e + shift, k * c)).collect(),
        }
    }

    pub fn shift(&self, shift: i64) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e + shift, k.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, q: &Rat) -> Option<Rat> {
        if q.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(q, *e)?;
        }
        Some(acc)
    }

    /// Exact division; `None` when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Laurent) -> Option<Laurent> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if rhs.is_monomial() {
            let (e, c) = &rhs.terms[0];
            return Some(self.scale_shift(&(Rat::one() / c), -e));
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        let d_lead = rhs.max_exp().unwrap();
        let d_coeff = rhs.leading_coeff();
        // a quotient, if it exists, has exponents bounded below by this
        let min_e = self.min_exp().unwrap() - rhs.min_exp().unwrap();
        while !rem.is_zero() {
            let e = rem.max_exp().unwrap() - d_lead;
            if e < min_e {
                return None;
            }
            let c = rem.leading_coeff() / &d_coeff;
            rem = rem.sub(&rhs.scale_shift(&c, e));
            quot.push((e, c));
        }
        quot.reverse();
        Some(Laurent { terms: quot })
    }

    /// Content: the positive rational `r` with `self = ±r · (primitive integer
    /// polynomial)`; zero polynomial has content zero.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Polynomial GCD over the rationals, ignoring powers of `q`: both inputs
    /// are shifted to have a nonzero constant term first. The result is the
    /// primitive integer form with positive leading coefficient.
    pub fn gcd(&self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return normalize_primitive(rhs);
        }
        if rhs.is_zero() {
            return normalize_primitive(self);
        }
        if self.is_monomial() || rhs.is_monomial() {
            return Laurent::one();
        }
        let a = int_coeffs(self);
        let b = int_coeffs(rhs);
        let g = int_poly_gcd(&a, &b);
        from_int_coeffs(&g)
    }
}

fn normalize_primitive(p: &Laurent) -> Laurent {
    if p.is_zero() {
        return Laurent::zero();
    }
    let shift = -p.min_exp().unwrap();
    let mut c = p.content();
    if p.leading_coeff().is_negative() {
        c = -c;
    }
    p.scale_shift(&(Rat::one() / c), shift)
}

pub fn rat_pow(base: &Rat, exp: i64) -> Option<Rat> {
    if exp == 0 {
        return Some(Rat::one());
    }
    if base.is_zero() {
        return if exp > 0 { Some(Rat::zero()) } else { None };
    }
    let mut acc = Rat::one();
    let mut b = if exp > 0 { base.clone() } else { base.recip() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    Some(acc)
}

/// Dense integer coefficients of the `q`-shifted polynomial, constant term
/// first; the shift and the rational content are dropped (callers only use
/// this for GCDs, which are defined up to units anyway).
fn int_coeffs(p: &Laurent) -> Vec<BigInt> {
    let min = p.min_exp().unwrap();
    let max = p.max_exp().unwrap();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut out = vec![BigInt::zero(); (max - min + 1) as usize];
    for (e, c) in p.terms() {
        let scaled = c * Rat::from_integer(den_lcm.clone());
        debug_assert!(scaled.denom().is_one());
        out[(e - min) as usize] = scaled.numer().clone();
    }
    out
}

fn from_int_coeffs(c: &[BigInt]) -> Laurent {
    Laurent::from_terms(
        c.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, v)| (e as i64, Rat::from_integer(v.clone()))),
    )
}

fn deg(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn primitive_part(p: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in p.iter() {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in p.iter_mut() {
        *c = &*c / &g;
    }
}

/// Pseudo-remainder: `lc(b)^(deg a − deg b + 1) · a  mod  b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let da = deg(a).unwrap();
    let db = deg(b).unwrap();
    debug_assert!(da >= db);
    let lb = b[db].clone();
    let mut r: Vec<BigInt> = a.to_vec();
    for k in (db..=da).rev() {
        let lead = r[k].clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        if !lead.is_zero() {
            for j in 0..db {
                r[k - db + j] -= &lead * &b[j];
            }
        }
        for c in r.iter_mut().skip(k) {
            *c = BigInt::zero();
        }
    }
    r.truncate(db.max(1));
    r
}

/// Subresultant polynomial remainder sequence GCD of primitive integer
/// polynomials; returns the primitive GCD with positive leading coefficient.
fn int_poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    primitive_part(&mut a);
    primitive_part(&mut b);
    if deg(&a).is_none() {
        return fix_sign(b);
    }
    if deg(&b).is_none() {
        return fix_sign(a);
    }
    if deg(&a).unwrap() < deg(&b).unwrap() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = deg(&a).unwrap();
        let db = match deg(&b) {
            None => {
                primitive_part(&mut a);
                return fix_sign(a);
            }
            Some(d) => d,
        };
        if db == 0 {
            // nonzero constant: coprime
            return vec![BigInt::one()];
        }
        let delta = (da - db) as u32;
        let mut r = pseudo_rem(&a, &b);
        if deg(&r).is_none() {
            primitive_part(&mut b);
            return fix_sign(b);
        }
        let divisor = &g * pow_big(&h, delta);
        for c in r.iter_mut() {
            debug_assert!((&*c % &divisor).is_zero());
            *c = &*c / &divisor;
        }
        a = std::mem::take(&mut b);
        b = r;
        g = a[deg(&a).unwrap()].clone();
        if delta > 0 {
            h = pow_big(&g, delta) / pow_big(&h, delta - 1);
        }
    }
}

fn pow_big(b: &BigInt, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

fn fix_sign(mut p: Vec<BigInt>) -> Vec<BigInt> {
    if let Some(d) = deg(&p) {
        if p[d].is_negative() {
            for c in p.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
    } else {
        p = vec![BigInt::zero()];
    }
    p
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", abs)?,
                (_, true) => write!(f, "q^{}", e)?,
                (_, false) => write!(f, "{}*q^{}", abs, e)?,
            }
        }
        Ok(())
    }
}
