//! Base coefficient fields: the rationals (p-adically valued) and F_p(T) (T-adically valued).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fp::{FpPoly, RatFn};
use crate::exactnum::scalar::fmt_scalar;
use crate::exactnum::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Q(BigRational),
    F(RatFn),
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn rat_valuation(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rat_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Base {
    pub fn is_zero(&self) -> bool {
        match self {
            Base::Q(q) => q.is_zero(),
            Base::F(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Base::Q(q) => q.is_one(),
            Base::F(f) => f.num.0 == vec![1] && f.den.0 == vec![1],
        }
    }

    pub fn zero_like(&self) -> Base {
        match self {
            Base::Q(_) => Base::Q(BigRational::zero()),
            Base::F(f) => Base::F(RatFn::from_int(0, f.p)),
        }
    }

    pub fn one_like(&self) -> Base {
        match self {
            Base::Q(_) => Base::Q(BigRational::one()),
            Base::F(f) => Base::F(RatFn::from_int(1, f.p)),
        }
    }

    pub fn add(&self, o: &Base) -> Base {
        match (self, o) {
            (Base::Q(a), Base::Q(b)) => Base::Q(a + b),
            (Base::F(a), Base::F(b)) => Base::F(a.add(b)),
            _ => panic!("mixed base fields"),
        }
    }

    pub fn sub(&self, o: &Base) -> Base {
        match (self, o) {
            (Base::Q(a), Base::Q(b)) => Base::Q(a - b),
            (Base::F(a), Base::F(b)) => Base::F(a.sub(b)),
            _ => panic!("mixed base fields"),
        }
    }

    pub fn mul(&self, o: &Base) -> Base {
        match (self, o) {
            (Base::Q(a), Base::Q(b)) => Base::Q(a * b),
            (Base::F(a), Base::F(b)) => Base::F(a.mul(b)),
            _ => panic!("mixed base fields"),
        }
    }

    pub fn neg(&self) -> Base {
        match self {
            Base::Q(a) => Base::Q(-a),
            Base::F(a) => Base::F(a.neg()),
        }
    }

    pub fn inv(&self) -> Option<Base> {
        match self {
            Base::Q(a) if a.is_zero() => None,
            Base::Q(a) => Some(Base::Q(a.recip())),
            Base::F(a) => a.inv().map(Base::F),
        }
    }

    /// Scalar multiple by an integer (image of Z in the base field).
    pub fn mul_int(&self, n: i64) -> Base {
        match self {
            Base::Q(a) => Base::Q(a * BigRational::from_integer(n.into())),
            Base::F(a) => Base::F(a.mul(&RatFn::from_int(n, a.p))),
        }
    }

    /// Valuation: p-adic on Q, T-adic on F_p(T). `None` means +infinity.
    pub fn valuation(&self, p: u64) -> Option<Scalar> {
        match self {
            Base::Q(a) => rat_valuation(a, p).map(|v| Scalar::from_integer(v.into())),
            Base::F(a) => a.valuation().map(|v| Scalar::from_integer(v.into())),
        }
    }

    /// Inverse Frobenius; the identity in characteristic 0.
    pub fn chi_root(&self) -> Option<Base> {
        match self {
            Base::Q(_) => Some(self.clone()),
            Base::F(a) => a.chi_root().map(Base::F),
        }
    }

    pub fn frobenius(&self) -> Base {
        match self {
            Base::Q(_) => self.clone(),
            Base::F(a) => Base::F(a.frobenius()),
        }
    }

    pub fn sqrt(&self) -> Option<Base> {
        match self {
            Base::Q(a) => rat_sqrt(a).map(Base::Q),
            Base::F(a) => a.sqrt().map(Base::F),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Base::Q(a) => Some(a),
            Base::F(_) => None,
        }
    }

    pub fn is_negative_literal(&self) -> bool {
        matches!(self, Base::Q(a) if a.is_negative())
    }

    /// The function-field variable T of F_p(T).
    pub fn t_generator(p: u64) -> Base {
        Base::F(RatFn::new(
            FpPoly::new(vec![0, 1], p),
            FpPoly::constant(1, p),
            p,
        ))
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Q(a) => f.write_str(&fmt_scalar(a)),
            Base::F(a) => write!(f, "{a}"),
        }
    }
}

/// Determinant and linear solves over a base field, by Gaussian elimination.
pub(crate) fn det(mut m: Vec<Vec<Base>>) -> Base {
    let n = m.len();
    let one = m[0][0].one_like();
    let mut acc = one;
    for col in 0..n {
        let Some(piv) = (col..n).find(|r| !m[*r][col].is_zero()) else {
            return m[0][0].zero_like();
        };
        if piv != col {
            m.swap(piv, col);
            acc = acc.neg();
        }
        let pv = m[col][col].clone();
        acc = acc.mul(&pv);
        let inv = pv.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            for c in col..n {
                let t = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    acc
}

/// Solves `m · x = rhs`; `None` when `m` is singular.
pub(crate) fn solve(mut m: Vec<Vec<Base>>, mut rhs: Vec<Base>) -> Option<Vec<Base>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(piv, col);
        rhs.swap(piv, col);
        let inv = m[col][col].inv()?;
        for c in col..n {
            m[col][c] = m[col][c].mul(&inv);
        }
        rhs[col] = rhs[col].mul(&inv);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..n {
                let t = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
            let t = factor.mul(&rhs[col]);
            rhs[r] = rhs[r].sub(&t);
        }
    }
    Some(rhs)
}
