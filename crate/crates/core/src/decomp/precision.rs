//! Polynomials with p-adic approximate coefficients, enough to evaluate the
//! Condition (M) clauses when critical points are only known to finite precision.

use crate::algebra::{PAdic, Poly};

/// Coefficients lowest degree first; trailing entries may be indistinguishable from zero.
#[derive(Clone, Debug)]
pub(crate) struct PPoly(pub Vec<PAdic>);

impl PPoly {
    /// Lifts a polynomial with rational coefficients.
    pub fn from_poly(a: &Poly, p: u64, prec: i64) -> PPoly {
        PPoly(
            a.coeffs()
                .iter()
                .map(|c| {
                    PAdic::from_rational(&c.as_rational().expect("rational coefficients"), p, prec)
                })
                .collect(),
        )
    }

    fn get(&self, i: usize, p: u64, prec: i64) -> PAdic {
        self.0
            .get(i)
            .cloned()
            .unwrap_or_else(|| PAdic::zero(p, prec))
    }

    pub fn sub(&self, o: &PPoly, p: u64, prec: i64) -> PPoly {
        let n = self.0.len().max(o.0.len());
        PPoly(
            (0..n)
                .map(|i| self.get(i, p, prec).sub(&o.get(i, p, prec)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &PAdic) -> PPoly {
        PPoly(self.0.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, o: &PPoly, p: u64, prec: i64) -> PPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return PPoly(vec![]);
        }
        let mut out = vec![PAdic::zero(p, prec); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        PPoly(out)
    }

    /// Degree counting every stored coefficient, approximate zeros included.
    pub fn formal_degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&PAdic> {
        self.0.last()
    }

    pub fn eval(&self, x: &PAdic, p: u64, prec: i64) -> PAdic {
        self.0
            .iter()
            .rev()
            .fold(PAdic::zero(p, prec), |acc, c| acc.mul(x).add(c))
    }
}

/// Evaluates a rational-coefficient polynomial at an approximation.
pub(crate) fn eval_poly(a: &Poly, x: &PAdic) -> PAdic {
    PPoly::from_poly(a, x.prime(), x.precision()).eval(x, x.prime(), x.precision())
}

/// Determinant by elimination, pivoting on the smallest provable valuation.
fn det(mut m: Vec<Vec<PAdic>>, p: u64, prec: i64) -> PAdic {
    let n = m.len();
    let mut acc = PAdic::new(p, 1.into(), 0, prec);
    for col in 0..n {
        let pivot = (col..n)
            .filter_map(|r| m[r][col].valuation().map(|v| (v, r)))
            .min()
            .map(|(_, r)| r);
        let Some(r) = pivot else {
            return PAdic::zero(p, prec);
        };
        if r != col {
            m.swap(r, col);
            acc = acc.neg();
        }
        let inv = m[col][col].inv().expect("pivot is provably nonzero");
        acc = acc.mul(&m[col][col]);
        for row in col + 1..n {
            let f = m[row][col].mul(&inv);
            for c in col..n {
                let t = f.mul(&m[col][c]);
                m[row][c] = m[row][c].sub(&t);
            }
        }
    }
    acc
}

/// Sylvester resultant with respect to the formal degrees of both inputs.
///
/// When the true degree of `b` is lower, the result differs from the true
/// resultant by a power of `lead(a)`, so nonvanishing transfers whenever
/// `lead(a)` is provably nonzero.
pub(crate) fn resultant(a: &PPoly, b: &PPoly, p: u64, prec: i64) -> PAdic {
    let (Some(m), Some(n)) = (a.formal_degree(), b.formal_degree()) else {
        return PAdic::zero(p, prec);
    };
    if m == 0 && n == 0 {
        return PAdic::new(p, 1.into(), 0, prec);
    }
    let size = m + n;
    let zero = PAdic::zero(p, prec);
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in a.0.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in b.0.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    det(rows, p, prec)
}
