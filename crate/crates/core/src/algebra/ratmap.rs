use std::fmt;

use super::field::{Field, FieldElem};
use super::poly::Poly;
use super::AlgebraError;

/// Which side of `P(f) = Q(g)` a rational map plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    P,
    Q,
}

/// Reduced rational map `num/den` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMap {
    num: Poly,
    den: Poly,
    role: Role,
    lead_ratio: Option<FieldElem>,
}

impl RatMap {
    /// Cancels the gcd and makes the denominator monic. In the Q role a
    /// numerator that cannot also be monic keeps its leading coefficient,
    /// which is recorded as [`RatMap::lead_ratio`].
    pub fn normalize(num: Poly, den: Poly, role: Role) -> Result<RatMap, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let inv = den.lead().unwrap().inv().unwrap();
        num = num.scale(&inv);
        den = den.scale(&inv);
        let lead_ratio = match (role, num.lead()) {
            (Role::Q, Some(l)) if !l.is_one() => Some(l.clone()),
            _ => None,
        };
        Ok(RatMap {
            num,
            den,
            role,
            lead_ratio,
        })
    }

    pub fn polynomial(num: Poly, role: Role) -> Result<RatMap, AlgebraError> {
        let one = Poly::one(num.field());
        RatMap::normalize(num, one, role)
    }

    pub fn identity(field: &Field) -> RatMap {
        RatMap::polynomial(Poly::x(field), Role::P).unwrap()
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Leading coefficient of the numerator when it is not 1 (Q role only).
    pub fn lead_ratio(&self) -> Option<&FieldElem> {
        self.lead_ratio.as_ref()
    }

    pub fn num_degree(&self) -> usize {
        self.num.degree_or_zero()
    }

    pub fn den_degree(&self) -> usize {
        self.den.degree_or_zero()
    }

    pub fn degree(&self) -> usize {
        self.num_degree().max(self.den_degree())
    }

    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem, AlgebraError> {
        let d = self.den.eval(x);
        let inv = d
            .inv()
            .ok_or_else(|| AlgebraError::PoleAtPoint(x.to_string()))?;
        Ok(&self.num.eval(x) * &inv)
    }

    /// Numerator `num'·den − num·den'` of the derivative (before any cancellation).
    pub fn derivative_numerator(&self) -> Poly {
        self.num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }
}

impl fmt::Display for RatMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;
    use crate::exactnum::scalar::frac;

    #[test]
    fn cancels_common_factor() {
        let q = FieldSpec::rationals(5).unwrap();
        let m = RatMap::normalize(
            Poly::from_ints(&q, &[-1, 0, 1]),
            Poly::from_ints(&q, &[-1, 1]),
            Role::P,
        )
        .unwrap();
        assert_eq!(m.num(), &Poly::from_ints(&q, &[1, 1]));
        assert!(m.den().is_one());
    }

    #[test]
    fn scalar_multiples_reduce_to_degree_one() {
        let q = FieldSpec::rationals(5).unwrap();
        let m = RatMap::normalize(
            Poly::from_ints(&q, &[0, 0, 2]),
            Poly::from_ints(&q, &[0, 0, 0, 2]),
            Role::P,
        )
        .unwrap();
        assert!(m.num().is_one());
        assert_eq!(m.den(), &Poly::x(&q));
        assert_eq!(m.degree(), 1);
    }

    #[test]
    fn monic_q_pair_unchanged() {
        let q = FieldSpec::rationals(5).unwrap();
        let v = Poly::from_ints(&q, &[0, 0, 1]);
        let w = Poly::from_ints(&q, &[1, 1, 1]);
        let m = RatMap::normalize(v.clone(), w.clone(), Role::Q).unwrap();
        assert_eq!((m.num(), m.den()), (&v, &w));
        assert!(m.lead_ratio().is_none());
        let at = |n, d| {
            m.eval(&FieldElem::from_rational(&q, &frac(n, d)).unwrap())
                .unwrap()
        };
        assert_eq!(at(1, 1), FieldElem::from_rational(&q, &frac(1, 3)).unwrap());
        assert_eq!(
            at(-2, 7),
            FieldElem::from_rational(&q, &frac(4, 39)).unwrap()
        );
    }

    #[test]
    fn non_monic_q_records_ratio() {
        let q = FieldSpec::rationals(5).unwrap();
        let m = RatMap::normalize(
            Poly::from_ints(&q, &[0, 0, 3]),
            Poly::from_ints(&q, &[1, 0, 1]),
            Role::Q,
        )
        .unwrap();
        assert_eq!(m.lead_ratio(), Some(&FieldElem::from_int(&q, 3)));
    }

    #[test]
    fn zero_denominator_and_pole() {
        let q = FieldSpec::rationals(5).unwrap();
        assert_eq!(
            RatMap::normalize(Poly::x(&q), Poly::zero(&q), Role::P),
            Err(AlgebraError::ZeroDenominator)
        );
        let m = RatMap::normalize(Poly::one(&q), Poly::x(&q), Role::P).unwrap();
        assert!(matches!(
            m.eval(&FieldElem::zero(&q)),
            Err(AlgebraError::PoleAtPoint(_))
        ));
    }
}
