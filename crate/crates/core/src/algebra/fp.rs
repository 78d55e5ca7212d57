//! Polynomials over the prime field F_p and the rational function field F_p(T).

use std::fmt;

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow(a % p, p - 2, p)
}

pub(crate) fn mod_pow(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut base = (b % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Square root in F_p by exhaustive search (p odd, small).
pub(crate) fn fp_sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    (1..p).find(|x| mulmod(*x, *x, p) == a)
}

/// Dense polynomial in T over F_p, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly(pub Vec<u64>);

impl FpPoly {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly(c)
    }

    pub fn zero() -> Self {
        FpPoly(Vec::new())
    }

    pub fn constant(a: u64, p: u64) -> Self {
        FpPoly::new(vec![a], p)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.0.last().unwrap_or(&0)
    }

    /// Lowest exponent with a nonzero coefficient (T-adic order).
    pub fn order(&self) -> Option<usize> {
        self.0.iter().position(|c| *c != 0)
    }

    pub fn add(&self, o: &Self, p: u64) -> Self {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| (self.0.get(i).copied().unwrap_or(0) + o.0.get(i).copied().unwrap_or(0)) % p)
            .collect();
        FpPoly::new(c, p)
    }

    pub fn neg(&self, p: u64) -> Self {
        FpPoly::new(self.0.iter().map(|c| (p - c) % p).collect(), p)
    }

    pub fn sub(&self, o: &Self, p: u64) -> Self {
        self.add(&o.neg(p), p)
    }

    pub fn scale(&self, a: u64, p: u64) -> Self {
        FpPoly::new(self.0.iter().map(|c| mulmod(*c, a, p)).collect(), p)
    }

    pub fn mul(&self, o: &Self, p: u64) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero();
        }
        let mut c = vec![0u64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(*a, *b, p)) % p;
            }
        }
        FpPoly::new(c, p)
    }

    pub fn divrem(&self, d: &Self, p: u64) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let inv = mod_inv(d.lead(), p);
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (FpPoly::zero(), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = mulmod(r[k + dd], inv, p);
            q[k] = coef;
            if coef != 0 {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulmod(coef, *dc, p)) % p;
                }
            }
        }
        (FpPoly::new(q, p), FpPoly::new(r, p))
    }

    pub fn monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.lead(), p), p)
    }

    pub fn gcd(&self, o: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b, p).1;
            a = b;
            b = r;
        }
        a.monic(p)
    }

    /// `a(T)^p = a(T^p)` over F_p.
    pub fn frobenius(&self, p: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let n = (self.0.len() - 1) * p as usize + 1;
        let mut c = vec![0u64; n];
        for (i, a) in self.0.iter().enumerate() {
            c[i * p as usize] = *a;
        }
        FpPoly::new(c, p)
    }

    /// Inverse of [`FpPoly::frobenius`] when every exponent is divisible by p.
    pub fn frobenius_root(&self, p: u64) -> Option<Self> {
        let step = p as usize;
        if self
            .0
            .iter()
            .enumerate()
            .any(|(i, c)| *c != 0 && i % step != 0)
        {
            return None;
        }
        Some(FpPoly::new(
            self.0.iter().step_by(step).copied().collect(),
            p,
        ))
    }

    /// Square root in F_p[T] (p odd), if one exists.
    pub fn sqrt(&self, p: u64) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let d = self.0.len() - 1;
        if d % 2 == 1 || p == 2 {
            return None;
        }
        let half = d / 2;
        let lead_root = fp_sqrt(self.lead(), p)?;
        // determine coefficients from the top down: s_{half - k}
        let mut s = vec![0u64; half + 1];
        s[half] = lead_root;
        let inv2l = mod_inv(mulmod(2, lead_root, p), p);
        for k in 1..=half {
            // coefficient of T^{d-k} in s^2 equals self[d-k]
            let mut acc = 0u64;
            for i in 1..k {
                acc = (acc + mulmod(s[half - i], s[half - (k - i)], p)) % p;
            }
            let target = (self.0[d - k] + p - acc) % p;
            s[half - k] = mulmod(target, inv2l, p);
        }
        let cand = FpPoly::new(s, p);
        if cand.mul(&cand, p) == *self {
            Some(cand)
        } else {
            None
        }
    }

    fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }
}

/// Element of F_p(T) in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub p: u64,
    pub num: FpPoly,
    pub den: FpPoly,
}

impl RatFn {
    pub fn new(num: FpPoly, den: FpPoly, p: u64) -> Self {
        assert!(!den.is_zero(), "zero denominator in F_p(T)");
        if num.is_zero() {
            return RatFn {
                p,
                num,
                den: FpPoly::constant(1, p),
            };
        }
        let g = num.gcd(&den, p);
        let num = num.divrem(&g, p).0;
        let den = den.divrem(&g, p).0;
        let li = mod_inv(den.lead(), p);
        RatFn {
            p,
            num: num.scale(li, p),
            den: den.scale(li, p),
        }
    }

    pub fn from_int(a: i64, p: u64) -> Self {
        let r = a.rem_euclid(p as i64) as u64;
        RatFn::new(FpPoly::constant(r, p), FpPoly::constant(1, p), p)
    }

    pub fn generator(p: u64) -> Self {
        RatFn::new(FpPoly::new(vec![0, 1], p), FpPoly::constant(1, p), p)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p;
        let num = self.num.mul(&o.den, p).add(&o.num.mul(&self.den, p), p);
        RatFn::new(num, self.den.mul(&o.den, p), p)
    }

    pub fn neg(&self) -> Self {
        RatFn {
            p: self.p,
            num: self.num.neg(self.p),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        RatFn::new(self.num.mul(&o.num, p), self.den.mul(&o.den, p), p)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFn::new(self.den.clone(), self.num.clone(), self.p))
    }

    /// T-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let a = self.num.order()? as i64;
        let b = self.den.order().expect("nonzero denominator") as i64;
        Some(a - b)
    }

    pub fn frobenius(&self) -> Self {
        RatFn::new(
            self.num.frobenius(self.p),
            self.den.frobenius(self.p),
            self.p,
        )
    }

    /// p-th root inside F_p(T): exists iff numerator and denominator lie in F_p[T^p].
    pub fn chi_root(&self) -> Option<Self> {
        let n = self.num.frobenius_root(self.p)?;
        let d = self.den.frobenius_root(self.p)?;
        Some(RatFn::new(n, d, self.p))
    }

    pub fn sqrt(&self) -> Option<Self> {
        if self.p == 2 {
            return self.chi_root();
        }
        // den is monic; num = c * A^2 needs c a square, which FpPoly::sqrt checks via lead
        let n = self.num.sqrt(self.p)?;
        let d = self.den.sqrt(self.p)?;
        Some(RatFn::new(n, d, self.p))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.fmt_with("T");
        if self.den.0 == vec![1] {
            if self.num.0.iter().filter(|c| **c != 0).count() > 1 {
                write!(f, "({n})")
            } else {
                f.write_str(&n)
            }
        } else {
            write!(f, "({n})/({})", self.den.fmt_with("T"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_gcd_and_division() {
        let p = 3;
        let a = FpPoly::new(vec![2, 0, 1], p); // T^2 - 1
        let b = FpPoly::new(vec![2, 1], p); // T - 1
        assert_eq!(a.gcd(&b, p), b);
        let (q, r) = a.divrem(&b, p);
        assert!(r.is_zero());
        assert_eq!(q, FpPoly::new(vec![1, 1], p));
    }

    #[test]
    fn frobenius_round_trip() {
        let p = 3;
        let a = RatFn::new(FpPoly::new(vec![1, 2, 1], p), FpPoly::new(vec![0, 1], p), p);
        assert_eq!(a.frobenius().chi_root().unwrap(), a);
        assert!(RatFn::generator(p).chi_root().is_none());
    }

    #[test]
    fn valuation_is_ord_t() {
        let p = 5;
        let a = RatFn::new(
            FpPoly::new(vec![0, 0, 3], p),
            FpPoly::new(vec![0, 1, 1], p),
            p,
        );
        assert_eq!(a.valuation(), Some(1));
    }

    #[test]
    fn square_roots() {
        let p = 5;
        let a = FpPoly::new(vec![1, 2, 1], p); // (1+T)^2
        assert_eq!(a.sqrt(p).unwrap().mul(&a.sqrt(p).unwrap(), p), a);
        assert!(FpPoly::new(vec![0, 1], p).sqrt(p).is_none());
        assert_eq!(fp_sqrt(4, 5), Some(2));
        assert_eq!(fp_sqrt(2, 5), None);
    }
}
