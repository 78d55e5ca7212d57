use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::base::{det, rat_valuation, solve, Base};
use super::fp::{fp_sqrt, RatFn};
use super::AlgebraError;
use crate::exactnum::hull::{hull_slopes, lower_hull};
use crate::exactnum::scalar::{fmt_scalar, parse_scalar};
use crate::exactnum::Scalar;

/// Simple algebraic extension of the base by a root of a monic minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Extension {
    pub gen: String,
    /// Monic, lowest degree first.
    pub minpoly: Vec<Base>,
    /// Declared valuation of the generator.
    pub val: Scalar,
    pub declared_irreducible: bool,
}

/// A computable valued coefficient field.
///
/// Characteristic 0: the rationals with the p-adic valuation, optionally
/// extended by one generator. Characteristic p: F_p(T) with the T-adic
/// valuation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
    prime: u64,
    ext: Option<Extension>,
}

pub type Field = Arc<FieldSpec>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn rationals(p: u64) -> Result<Field, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::Field(format!("{p} is not prime")));
        }
        Ok(Arc::new(FieldSpec {
            characteristic: 0,
            prime: p,
            ext: None,
        }))
    }

    pub fn function_field(p: u64) -> Result<Field, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::Field(format!("{p} is not prime")));
        }
        Ok(Arc::new(FieldSpec {
            characteristic: p,
            prime: p,
            ext: None,
        }))
    }

    /// Q(gen) with `gen` a root of `minpoly` (rational coefficients, lowest degree first).
    pub fn rational_extension(
        p: u64,
        gen: &str,
        minpoly: Vec<BigRational>,
        val: Scalar,
        declared_irreducible: bool,
    ) -> Result<Field, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::Field(format!("{p} is not prime")));
        }
        let mut minpoly = minpoly;
        while minpoly.last().is_some_and(|c| c.is_zero()) {
            minpoly.pop();
        }
        let n = minpoly.len().saturating_sub(1);
        if n < 2 {
            return Err(AlgebraError::Field(
                "minimal polynomial must have degree at least 2".into(),
            ));
        }
        if !minpoly[n].is_one() {
            return Err(AlgebraError::Field(
                "minimal polynomial must be monic".into(),
            ));
        }
        if gen.is_empty()
            || gen == "x"
            || gen == "T"
            || !gen.chars().all(|c| c.is_ascii_alphabetic())
        {
            return Err(AlgebraError::Field(format!(
                "invalid generator name {gen:?}"
            )));
        }
        if n <= 3 {
            if !super::roots::rational_roots(&minpoly).is_empty() {
                return Err(AlgebraError::Field(
                    "minimal polynomial has a rational root".into(),
                ));
            }
        } else if !declared_irreducible {
            return Err(AlgebraError::Field(
                "irreducibility is only checked up to degree 3; declare it for higher degrees"
                    .into(),
            ));
        }
        let pts: Vec<(i64, Scalar)> = minpoly
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                rat_valuation(c, p).map(|v| (i as i64, Scalar::from_integer(v.into())))
            })
            .collect();
        let slopes = hull_slopes(&lower_hull(&pts));
        if !slopes.iter().any(|(s, _)| -s == val) {
            return Err(AlgebraError::Field(format!(
                "declared generator valuation {} is not a root valuation of the minimal polynomial",
                fmt_scalar(&val)
            )));
        }
        if n == 2 && p != 2 && quadratic_splits_p_adically(&minpoly, p) {
            return Err(AlgebraError::Field(format!(
                "the minimal polynomial splits over Q_{p}; the valuation on the extension is not unique"
            )));
        }
        let ext = Extension {
            gen: gen.to_string(),
            minpoly: minpoly.into_iter().map(Base::Q).collect(),
            val,
            declared_irreducible,
        };
        Ok(Arc::new(FieldSpec {
            characteristic: 0,
            prime: p,
            ext: Some(ext),
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Residue prime used as valuation base.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Characteristic exponent: the characteristic if positive, else 1.
    pub fn chi(&self) -> u64 {
        if self.characteristic == 0 {
            1
        } else {
            self.characteristic
        }
    }

    pub fn extension(&self) -> Option<&Extension> {
        self.ext.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.ext.as_ref().map_or(1, |e| e.minpoly.len() - 1)
    }

    fn base_zero(&self) -> Base {
        if self.characteristic == 0 {
            Base::Q(BigRational::zero())
        } else {
            Base::F(RatFn::from_int(0, self.characteristic))
        }
    }

    fn base_int(&self, n: i64) -> Base {
        if self.characteristic == 0 {
            Base::Q(BigRational::from_integer(n.into()))
        } else {
            Base::F(RatFn::from_int(n, self.characteristic))
        }
    }
}

/// `x^2 + b x + c` has a root in Q_p (p odd) iff its discriminant is a square there.
fn quadratic_splits_p_adically(minpoly: &[BigRational], p: u64) -> bool {
    let b = &minpoly[1];
    let c = &minpoly[0];
    let disc = b * b - BigRational::from_integer(4.into()) * c;
    let Some(v) = rat_valuation(&disc, p) else {
        return true;
    };
    if v % 2 != 0 {
        return false;
    }
    let pb = num_bigint::BigInt::from(p);
    let scale = BigRational::from_integer(pb.pow(v.unsigned_abs() as u32));
    let unit = if v >= 0 { &disc / scale } else { &disc * scale };
    let modp = |n: &num_bigint::BigInt| -> u64 {
        let r = n % &pb;
        let r = if r < num_bigint::BigInt::zero() {
            r + &pb
        } else {
            r
        };
        r.try_into().unwrap()
    };
    let u = modp(unit.numer()) * super::fp::mod_inv(modp(unit.denom()), p) % p;
    fp_sqrt(u, p).is_some()
}

/// JSON form of a field: `{"char": 0, "p": 5, "ext": {"gen": "s", "minpoly": "x^2-3", "val": "0"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    #[serde(rename = "char", default)]
    pub characteristic: u64,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext: Option<ExtensionConfig>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionConfig {
    pub gen: String,
    pub minpoly: String,
    #[serde(default = "default_val")]
    pub val: String,
    #[serde(default)]
    pub irreducible: bool,
}

fn default_val() -> String {
    "0".into()
}

impl FieldConfig {
    pub fn build(&self) -> Result<Field, AlgebraError> {
        match (self.characteristic, &self.ext) {
            (0, None) => FieldSpec::rationals(self.p),
            (0, Some(e)) => {
                let base = FieldSpec::rationals(self.p)?;
                let m = super::parse::parse_poly(&e.minpoly, &base)?;
                let coeffs = m
                    .coeffs()
                    .iter()
                    .map(|c| {
                        c.as_rational()
                            .ok_or_else(|| AlgebraError::Field("minpoly must be rational".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let val =
                    parse_scalar(&e.val).map_err(|err| AlgebraError::Field(err.to_string()))?;
                FieldSpec::rational_extension(self.p, &e.gen, coeffs, val, e.irreducible)
            }
            (c, None) => {
                if c != self.p {
                    return Err(AlgebraError::Field(format!(
                        "in characteristic {c} the valuation prime must equal the characteristic"
                    )));
                }
                FieldSpec::function_field(c)
            }
            (_, Some(_)) => Err(AlgebraError::Field(
                "extensions are only supported in characteristic 0".into(),
            )),
        }
    }
}

/// Element of a [`FieldSpec`], stored as coordinates in the power basis of the generator.
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    coords: Vec<Base>,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for FieldElem {}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldElem {
    pub fn zero(field: &Field) -> Self {
        let coords = vec![field.base_zero(); field.degree()];
        FieldElem {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = field.base_int(n);
        e
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_base(field: &Field, b: Base) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = b;
        e
    }

    /// Rational constant; in characteristic p the image of numerator/denominator in F_p.
    pub fn from_rational(field: &Field, q: &BigRational) -> Result<Self, AlgebraError> {
        if field.characteristic == 0 {
            return Ok(Self::from_base(field, Base::Q(q.clone())));
        }
        let n = Self::from_bigint(field, q.numer());
        let d = Self::from_bigint(field, q.denom());
        n.checked_div(&d)
            .ok_or_else(|| AlgebraError::Field("denominator vanishes in characteristic p".into()))
    }

    fn from_bigint(field: &Field, n: &num_bigint::BigInt) -> Self {
        let p = num_bigint::BigInt::from(field.characteristic);
        let r = ((n % &p) + &p) % &p;
        Self::from_int(field, i64::try_from(r).unwrap())
    }

    /// The extension generator, if the field has one.
    pub fn generator(field: &Field) -> Option<Self> {
        let ext = field.ext.as_ref()?;
        let mut e = Self::zero(field);
        e.coords[1] = ext.minpoly[0].one_like();
        Some(e)
    }

    /// The variable T of F_p(T).
    pub fn t_var(field: &Field) -> Option<Self> {
        if field.characteristic == 0 {
            return None;
        }
        Some(Self::from_base(
            field,
            Base::t_generator(field.characteristic),
        ))
    }

    pub fn from_coords(field: &Field, coords: Vec<Base>) -> Self {
        assert_eq!(coords.len(), field.degree());
        FieldElem {
            field: field.clone(),
            coords,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Base] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Base::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Base::is_zero)
    }

    /// The element as a base-field value, when it has no generator component.
    pub fn in_base(&self) -> Option<&Base> {
        if self.coords[1..].iter().all(Base::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.in_base()?.as_rational().cloned()
    }

    fn reduce(&self, mut prod: Vec<Base>) -> Vec<Base> {
        let n = self.field.degree();
        if let Some(ext) = &self.field.ext {
            for k in (n..prod.len()).rev() {
                let c = prod[k].clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = c.mul(&ext.minpoly[j]);
                    prod[k - n + j] = prod[k - n + j].sub(&t);
                }
            }
        }
        prod.truncate(n);
        prod
    }

    fn mul_impl(&self, o: &FieldElem) -> FieldElem {
        let n = self.coords.len();
        if n == 1 {
            return FieldElem {
                field: self.field.clone(),
                coords: vec![self.coords[0].mul(&o.coords[0])],
            };
        }
        let z = self.field.base_zero();
        let mut prod = vec![z; 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        FieldElem {
            field: self.field.clone(),
            coords: self.reduce(prod),
        }
    }

    /// Matrix of multiplication by `self` in the power basis (columns are images).
    fn mult_matrix(&self) -> Vec<Vec<Base>> {
        let n = self.coords.len();
        let mut cols = Vec::with_capacity(n);
        let mut basis = FieldElem::one(&self.field);
        let gen = FieldElem::generator(&self.field);
        for _ in 0..n {
            cols.push(self.mul_impl(&basis).coords);
            if let Some(g) = &gen {
                basis = basis.mul_impl(g);
            }
        }
        (0..n)
            .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
            .collect()
    }

    pub fn norm(&self) -> Base {
        if self.coords.len() == 1 {
            return self.coords[0].clone();
        }
        det(self.mult_matrix())
    }

    pub fn trace(&self) -> Base {
        let m = self.mult_matrix();
        let mut acc = self.field.base_zero();
        for (i, row) in m.iter().enumerate() {
            acc = acc.add(&row[i]);
        }
        acc
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        if self.coords.len() == 1 {
            return Some(FieldElem {
                field: self.field.clone(),
                coords: vec![self.coords[0].inv()?],
            });
        }
        let rhs = FieldElem::one(&self.field).coords;
        let sol = solve(self.mult_matrix(), rhs)?;
        Some(FieldElem {
            field: self.field.clone(),
            coords: sol,
        })
    }

    pub fn checked_div(&self, o: &FieldElem) -> Option<FieldElem> {
        Some(self * &o.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Valuation normalized so that the base prime (or T) has valuation 1; `None` for zero.
    ///
    /// On an extension this is `v(N(x)) / [K : Q]`, which is the valuation
    /// whenever it extends uniquely (checked for quadratic generators).
    pub fn valuation(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let v = self.norm().valuation(self.field.prime)?;
        Some(v / Scalar::from_integer((self.coords.len() as i64).into()))
    }

    /// Coefficientwise inverse Frobenius: the unique χ-th root in the field, if present.
    pub fn chi_root(&self) -> Option<FieldElem> {
        if self.field.characteristic == 0 {
            return Some(self.clone());
        }
        let coords = self
            .coords
            .iter()
            .map(Base::chi_root)
            .collect::<Option<Vec<_>>>()?;
        Some(FieldElem {
            field: self.field.clone(),
            coords,
        })
    }

    /// `x ↦ x^χ`.
    pub fn frobenius(&self) -> FieldElem {
        if self.field.characteristic == 0 {
            return self.clone();
        }
        let coords = self.coords.iter().map(Base::frobenius).collect();
        FieldElem {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let field = &self.field;
        if let Some(b) = self.in_base() {
            if let Some(r) = b.sqrt() {
                return Some(FieldElem::from_base(field, r));
            }
        }
        if field.degree() != 2 || field.characteristic == 2 {
            return None;
        }
        let ext = field.ext.as_ref()?;
        let half = ext.minpoly[1].mul(&Base::Q(BigRational::new(1.into(), 2.into())));
        let gen = FieldElem::generator(field)?;
        // trace-zero generator w = s + c1/2 with w^2 = delta in the base
        let w = &gen + &FieldElem::from_base(field, half);
        let delta = (&w * &w).in_base()?.clone();
        if let Some(b) = self.in_base() {
            let alpha = b.mul(&delta.inv()?).sqrt()?;
            return Some(&FieldElem::from_base(field, alpha) * &w);
        }
        let norm_root = self.norm().sqrt()?;
        for n in [norm_root.clone(), norm_root.neg()] {
            let t2 = self.trace().add(&n.mul_int(2));
            if let Some(t) = t2.sqrt() {
                if t.is_zero() {
                    continue;
                }
                let y = &(self + &FieldElem::from_base(field, n))
                    * &FieldElem::from_base(field, t.inv()?);
                if &(&y * &y) == self {
                    return Some(y);
                }
            }
        }
        None
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a.add(b))
            .collect();
        FieldElem {
            field: self.field.clone(),
            coords,
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a.sub(b))
            .collect();
        FieldElem {
            field: self.field.clone(),
            coords,
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        self.mul_impl(o)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            coords: self.coords.iter().map(Base::neg).collect(),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = self
            .field
            .ext
            .as_ref()
            .map(|e| e.gen.as_str())
            .unwrap_or("");
        let mut out = String::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => gen.to_string(),
                _ => format!("{gen}^{i}"),
            };
            let cs = c.to_string();
            let term = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
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
