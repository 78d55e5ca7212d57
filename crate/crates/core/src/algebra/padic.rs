use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::base::rat_valuation;

/// A p-adic number known modulo `p^prec`: `p^val · unit + O(p^prec)`.
///
/// `unit` is reduced modulo `p^(prec − val)` and prime to p; an
/// approximation indistinguishable from zero has `unit = 0` and `val = prec`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PAdic {
    p: u64,
    unit: BigInt,
    val: i64,
    prec: i64,
}

fn ppow(p: u64, e: i64) -> BigInt {
    debug_assert!(e >= 0);
    Pow::pow(&BigInt::from(p), e as u64)
}

pub(crate) fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.abs().is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

impl PAdic {
    fn normalize(p: u64, n: BigInt, mut shift: i64, prec: i64) -> PAdic {
        if prec <= shift {
            return PAdic::zero(p, prec);
        }
        let mut n = n.mod_floor(&ppow(p, prec - shift));
        if n.is_zero() {
            return PAdic::zero(p, prec);
        }
        let pb = BigInt::from(p);
        while (&n % &pb).is_zero() {
            n /= &pb;
            shift += 1;
        }
        PAdic {
            p,
            unit: n,
            val: shift,
            prec,
        }
    }

    pub fn zero(p: u64, prec: i64) -> PAdic {
        PAdic {
            p,
            unit: BigInt::zero(),
            val: prec,
            prec,
        }
    }

    /// `n · p^shift + O(p^prec)`.
    pub fn new(p: u64, n: BigInt, shift: i64, prec: i64) -> PAdic {
        PAdic::normalize(p, n, shift, prec)
    }

    pub fn from_rational(q: &BigRational, p: u64, prec: i64) -> PAdic {
        let Some(v) = rat_valuation(q, p) else {
            return PAdic::zero(p, prec);
        };
        if prec <= v {
            return PAdic::zero(p, prec);
        }
        let pb = BigInt::from(p);
        let (mut n, mut d) = (q.numer().clone(), q.denom().clone());
        while (&n % &pb).is_zero() {
            n /= &pb;
        }
        while (&d % &pb).is_zero() {
            d /= &pb;
        }
        let m = ppow(p, prec - v);
        let dinv = inv_mod(&d, &m).expect("unit denominator");
        PAdic::normalize(p, n * dinv, v, prec)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// `None` when the approximation cannot be distinguished from zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.unit.is_zero()).then_some(self.val)
    }

    pub fn is_provably_nonzero(&self) -> bool {
        !self.unit.is_zero()
    }

    /// A rational representative `unit · p^val`.
    pub fn representative(&self) -> BigRational {
        if self.val >= 0 {
            BigRational::from_integer(&self.unit * ppow(self.p, self.val))
        } else {
            BigRational::new(self.unit.clone(), ppow(self.p, -self.val))
        }
    }

    pub fn add(&self, o: &PAdic) -> PAdic {
        let s = self.val.min(o.val);
        let n = &self.unit * ppow(self.p, self.val - s) + &o.unit * ppow(self.p, o.val - s);
        PAdic::normalize(self.p, n, s, self.prec.min(o.prec))
    }

    pub fn neg(&self) -> PAdic {
        PAdic::normalize(self.p, -&self.unit, self.val, self.prec)
    }

    pub fn sub(&self, o: &PAdic) -> PAdic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PAdic) -> PAdic {
        let prec = (self.prec + o.val).min(o.prec + self.val);
        PAdic::normalize(self.p, &self.unit * &o.unit, self.val + o.val, prec)
    }

    pub fn inv(&self) -> Option<PAdic> {
        if self.unit.is_zero() {
            return None;
        }
        let rel = self.prec - self.val;
        let u = inv_mod(&self.unit, &ppow(self.p, rel))?;
        Some(PAdic::normalize(self.p, u, -self.val, rel - self.val))
    }

    pub fn div(&self, o: &PAdic) -> Option<PAdic> {
        Some(self.mul(&o.inv()?))
    }

    /// Whether the exact rational `q` is consistent with this approximation.
    pub fn agrees_with(&self, q: &BigRational) -> bool {
        let other = PAdic::from_rational(q, self.p, self.prec);
        !self.sub(&other).is_provably_nonzero()
    }
}

impl fmt::Debug for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PAdic {
    /// Digit expansion, e.g. `3 + 1*7 + 2*7^2 + O(7^3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        let pb = BigInt::from(p);
        let mut terms = Vec::new();
        let mut n = self.unit.clone();
        let mut e = self.val;
        while !n.is_zero() {
            let (q, d) = n.div_mod_floor(&pb);
            if !d.is_zero() {
                terms.push(match e {
                    0 => format!("{d}"),
                    1 => format!("{d}*{p}"),
                    _ => format!("{d}*{p}^{e}"),
                });
            }
            n = q;
            e += 1;
        }
        terms.push(format!("O({p}^{})", self.prec));
        f.write_str(&terms.join(" + "))
    }
}
