use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::base::{rat_valuation, Base};
use super::field::FieldElem;
use super::padic::{inv_mod, PAdic};
use super::poly::Poly;
use super::roots::{rational_roots, ApproxRoot, RootSet};
use super::AlgebraError;
use crate::exactnum::hull::{hull_slopes, lower_hull};
use crate::exactnum::Scalar;

const MAX_RESIDUE_PRIME: u64 = 1 << 16;

fn eval_mod(h: &[BigInt], y: &BigInt, m: &BigInt) -> BigInt {
    h.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * y + c).mod_floor(m))
}

fn derivative(h: &[BigInt]) -> Vec<BigInt> {
    h.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// `h(r + p·y)` with integer coefficients.
fn taylor_shift(h: &[BigInt], r: &BigInt, p: &BigInt) -> Vec<BigInt> {
    // Horner in the polynomial ring: acc = acc·(r + p y) + c
    let mut acc: Vec<BigInt> = Vec::new();
    for c in h.iter().rev() {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] += a * r;
            next[i + 1] += a * p;
        }
        next[0] += c;
        acc = next;
    }
    acc
}

fn int_val(n: &BigInt, p: &BigInt) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// All roots in Z_p of a primitive integer polynomial, modulo `p^digits`.
fn zp_roots(
    h: &[BigInt],
    p: u64,
    digits: u32,
    units_only: bool,
) -> Result<Vec<BigInt>, AlgebraError> {
    let pb = BigInt::from(p);
    let modulus = Pow::pow(&pb, digits);
    let dh = derivative(h);
    let mut out = Vec::new();
    let start = if units_only { 1 } else { 0 };
    for r in start..p {
        let r = BigInt::from(r);
        if !eval_mod(h, &r, &pb).is_zero() {
            continue;
        }
        if !eval_mod(&dh, &r, &pb).is_zero() {
            // simple residue: Newton iteration converges
            let mut y = r.clone();
            for _ in 0..=(64 - digits.leading_zeros()) + 1 {
                let fy = eval_mod(h, &y, &modulus);
                if fy.is_zero() {
                    break;
                }
                let dy = eval_mod(&dh, &y, &modulus);
                let inv = inv_mod(&dy, &modulus).expect("unit derivative");
                y = (y - fy * inv).mod_floor(&modulus);
            }
            out.push(y);
            continue;
        }
        if digits <= 1 {
            return Err(AlgebraError::PrecisionExhausted);
        }
        let shifted = taylor_shift(h, &r, &pb);
        let c = shifted
            .iter()
            .filter_map(|a| int_val(a, &pb))
            .min()
            .unwrap_or(0);
        let scale = Pow::pow(&pb, c);
        let h2: Vec<BigInt> = shifted.iter().map(|a| a / &scale).collect();
        for y in zp_roots(&h2, p, digits - 1, false)? {
            out.push((&r + &pb * y).mod_floor(&modulus));
        }
    }
    Ok(out)
}

/// Roots of a squarefree polynomial over Q: rational roots exactly, the
/// remaining roots of Q_p as p-adic approximations with `precision` digits.
///
/// Requires integer root valuations (a fractional Newton slope means a
/// ramified root, reported as `NeedsExtension`). Roots living only in a
/// residue field extension leave `complete = false`.
pub fn roots_hensel(a: &Poly, precision: u32) -> Result<RootSet, AlgebraError> {
    let field = a.field().clone();
    if field.characteristic() != 0 || field.extension().is_some() {
        return Err(AlgebraError::Unsupported(
            "Hensel lifting needs rational coefficients".into(),
        ));
    }
    if a.degree().is_none() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !a.gcd(&a.derivative()).is_constant() {
        return Err(AlgebraError::Unsupported(
            "Hensel lifting needs a squarefree polynomial".into(),
        ));
    }
    let p = field.prime();
    if p > MAX_RESIDUE_PRIME {
        return Err(AlgebraError::Unsupported(format!(
            "residue search for p = {p} is too large"
        )));
    }
    let mut set = RootSet {
        exact_roots: vec![],
        approx_roots: vec![],
        unresolved: vec![],
        complete: true,
    };
    let qs: Vec<BigRational> = a
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap())
        .collect();
    let mut g = a.monic();
    for r in rational_roots(&qs) {
        let e = FieldElem::from_base(&field, Base::Q(r));
        g = g.exact_div(&Poly::linear(&e)).unwrap();
        set.exact_roots.push((e, 1));
    }
    let Some(deg) = g.degree().filter(|d| *d > 0) else {
        return Ok(set);
    };
    let cs: Vec<BigRational> = g
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap())
        .collect();
    let pts: Vec<(i64, Scalar)> = cs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            rat_valuation(c, p).map(|v| (i as i64, Scalar::from_integer(v.into())))
        })
        .collect();
    let mut found = 0usize;
    for (slope, len) in hull_slopes(&lower_hull(&pts)) {
        let rv = -slope;
        if !rv.is_integer() {
            return Err(AlgebraError::NeedsExtension(format!(
                "a root of valuation {rv}"
            )));
        }
        let m: i64 = rv
            .to_integer()
            .try_into()
            .map_err(|_| AlgebraError::Unsupported("huge valuation".into()))?;
        // h(y) = g(p^m y), rescaled to a primitive integer polynomial
        let pm = if m >= 0 {
            BigRational::from_integer(Pow::pow(&BigInt::from(p), m as u64))
        } else {
            BigRational::new(BigInt::one(), Pow::pow(&BigInt::from(p), (-m) as u64))
        };
        let mut b: Vec<BigRational> = Vec::with_capacity(cs.len());
        let mut pw = BigRational::one();
        for c in &cs {
            b.push(c * &pw);
            pw *= &pm;
        }
        let vmin = b.iter().filter_map(|c| rat_valuation(c, p)).min().unwrap();
        let pb = BigInt::from(p);
        let sc = if vmin >= 0 {
            BigRational::new(BigInt::one(), Pow::pow(&pb, vmin as u64))
        } else {
            BigRational::from_integer(Pow::pow(&pb, (-vmin) as u64))
        };
        let l = b
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm((c * &sc).denom()));
        let h: Vec<BigInt> = b
            .iter()
            .map(|c| (c * &sc * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let roots = zp_roots(&h, p, precision, true)?;
        found += roots.len();
        if roots.len() < len as usize {
            set.complete = false;
        }
        for y in roots {
            set.approx_roots.push(ApproxRoot {
                value: PAdic::new(p, y, m, m + precision as i64),
                multiplicity: 1,
            });
        }
    }
    if found < deg {
        set.complete = false;
        set.unresolved.push((g, 1));
    }
    Ok(set)
}
