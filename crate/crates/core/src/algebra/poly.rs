use std::fmt;

use num_rational::BigRational;

use super::field::{Field, FieldElem};
use super::AlgebraError;

/// Dense univariate polynomial in `x`, lowest degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        let field = c.field().clone();
        Poly::new(&field, vec![c])
    }

    pub fn one(field: &Field) -> Self {
        Poly::constant(FieldElem::one(field))
    }

    pub fn x(field: &Field) -> Self {
        Poly::monomial(FieldElem::one(field), 1)
    }

    pub fn monomial(c: FieldElem, n: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![FieldElem::zero(&field); n];
        coeffs.push(c);
        Poly::new(&field, coeffs)
    }

    pub fn from_ints(field: &Field, cs: &[i64]) -> Self {
        Poly::new(
            field,
            cs.iter().map(|c| FieldElem::from_int(field, *c)).collect(),
        )
    }

    pub fn from_rationals(field: &Field, cs: &[BigRational]) -> Result<Self, AlgebraError> {
        let coeffs = cs
            .iter()
            .map(|c| FieldElem::from_rational(field, c))
            .collect::<Result<_, _>>()?;
        Ok(Poly::new(field, coeffs))
    }

    /// `x - c`.
    pub fn linear(c: &FieldElem) -> Self {
        let f = c.field().clone();
        Poly::new(&f, vec![-c, FieldElem::one(&f)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(&self.field))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0 (for max-degree bookkeeping).
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            &self.field,
            (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            &self.field,
            (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![FieldElem::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElem::zero(&self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(&self.field, coeffs)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        let dl = d.lead().ok_or(AlgebraError::ZeroPolynomial)?;
        let inv = dl.inv().ok_or(AlgebraError::ZeroPolynomial)?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut q = vec![FieldElem::zero(&self.field); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = &r[idx] - &(&c * dc);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(&self.field, q), Poly::new(&self.field, r)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative; coefficients of exponents divisible by the characteristic vanish.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * &FieldElem::from_int(&self.field, (i + 1) as i64))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Resultant by the Euclidean recurrence.
    pub fn resultant(&self, o: &Poly) -> FieldElem {
        let zero = FieldElem::zero(&self.field);
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return zero;
        };
        if n == 0 {
            return o.coeffs[0].pow(m as u64);
        }
        if m == 0 {
            return self.coeffs[0].pow(n as u64);
        }
        let (_, r) = self.divrem(o).expect("nonzero divisor");
        let Some(k) = r.degree() else { return zero };
        let mut res = o.lead().unwrap().pow((m - k) as u64);
        if (m * n) % 2 == 1 {
            res = -&res;
        }
        &res * &o.resultant(&r)
    }

    /// `Some(M)` with `self = M(x^e)` when every exponent in use is divisible by `e`.
    pub fn deflate(&self, e: usize) -> Option<Poly> {
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % e != 0 && !c.is_zero())
        {
            return None;
        }
        Some(Poly::new(
            &self.field,
            self.coeffs.iter().step_by(e).cloned().collect(),
        ))
    }

    /// `self(x^e)`.
    pub fn inflate(&self, e: usize) -> Poly {
        let mut coeffs = vec![FieldElem::zero(&self.field); self.degree_or_zero() * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c.clone();
        }
        Poly::new(&self.field, coeffs)
    }

    /// Coefficientwise χ-th root.
    pub fn chi_root(&self) -> Result<Poly, AlgebraError> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.chi_root().ok_or(AlgebraError::NotAChiPower(i)))
            .collect::<Result<_, _>>()?;
        Ok(Poly::new(&self.field, coeffs))
    }

    /// Coefficientwise Frobenius `a ↦ a^χ`.
    pub fn frobenius_coeffs(&self) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(FieldElem::frobenius).collect(),
        )
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let sum = cs[1..].contains(['+', '-']);
            let compound = sum || cs.contains('/');
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let term = if mono.is_empty() {
                if sum && !out.is_empty() {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if compound {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
