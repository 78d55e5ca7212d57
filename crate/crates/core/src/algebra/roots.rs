use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::base::Base;
use super::field::FieldElem;
use super::padic::PAdic;
use super::poly::Poly;
use super::AlgebraError;

/// One factor of a squarefree decomposition: `poly(x^(χ^twist))^multiplicity`.
///
/// `poly` is monic and squarefree, so each of its roots β contributes the
/// single point β^(1/χ^twist), with multiplicity `multiplicity · χ^twist`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqfFactor {
    pub poly: Poly,
    pub multiplicity: u32,
    pub twist: u32,
}

impl SqfFactor {
    pub fn root_multiplicity(&self) -> u32 {
        let chi = self.poly.field().chi() as u32;
        self.multiplicity * chi.pow(self.twist)
    }
}

/// Squarefree decomposition, valid over the imperfect fields F_p(T) as well.
pub fn squarefree(a: &Poly) -> Result<Vec<SqfFactor>, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    sqf_into(&a.monic(), 1, 0, &mut out);
    Ok(out)
}

fn sqf_into(f: &Poly, mult: u32, twist: u32, out: &mut Vec<SqfFactor>) {
    if f.is_constant() {
        return;
    }
    let chi = f.field().chi() as usize;
    let d = f.derivative();
    let mut c = if d.is_zero() { f.clone() } else { f.gcd(&d) };
    if !d.is_zero() {
        let mut w = f.exact_div(&c).unwrap();
        let mut i = 1;
        while !w.is_constant() {
            let y = w.gcd(&c);
            let z = w.exact_div(&y).unwrap();
            if !z.is_constant() {
                out.push(SqfFactor {
                    poly: z,
                    multiplicity: mult * i,
                    twist,
                });
            }
            i += 1;
            w = y;
            c = c.exact_div(&w).unwrap();
        }
    }
    if !c.is_constant() {
        // what is left has zero derivative: c = M(x^χ)
        let m = c
            .deflate(chi)
            .expect("zero-derivative part is a polynomial in x^chi");
        sqf_into(&m, mult, twist + 1, out);
    }
}

/// Number of distinct zeros in the algebraic closure.
pub fn distinct_zero_count(a: &Poly) -> Result<usize, AlgebraError> {
    Ok(squarefree(a)?.iter().map(|f| f.poly.degree_or_zero()).sum())
}

fn integer_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &d * &d <= n && d <= limit {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    // a large leftover cofactor is treated as prime; a missed composite only loses candidates
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in primes {
        let mut next = Vec::new();
        for dv in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pw);
                pw *= &q;
            }
        }
        divs = next;
    }
    divs
}

fn horner(cs: &[BigRational], x: &BigRational) -> BigRational {
    cs.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Distinct rational roots of a polynomial with rational coefficients (lowest degree first).
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut cs: Vec<BigRational> = coeffs.to_vec();
    while cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
    let mut roots = Vec::new();
    if cs.len() < 2 {
        return roots;
    }
    let lead_zeros = cs.iter().position(|c| !c.is_zero()).unwrap();
    if lead_zeros > 0 {
        roots.push(BigRational::zero());
        cs.drain(..lead_zeros);
    }
    if cs.len() < 2 {
        return roots;
    }
    let l = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let num_divs = integer_divisors(&ints[0]);
    let den_divs = integer_divisors(ints.last().unwrap());
    let mut seen = std::collections::BTreeSet::new();
    for a in &num_divs {
        for b in &den_divs {
            for sign in [1, -1] {
                let cand = BigRational::new(a * sign, b.clone());
                if seen.insert(cand.clone()) && horner(&cs, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// A root known only to finite p-adic precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxRoot {
    pub value: PAdic,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub exact_roots: Vec<(FieldElem, u32)>,
    pub approx_roots: Vec<ApproxRoot>,
    /// Monic factors whose roots were not found, with their multiplicity in the input.
    pub unresolved: Vec<(Poly, u32)>,
    pub complete: bool,
}

impl RootSet {
    pub fn distinct_count(&self) -> usize {
        self.exact_roots.len() + self.approx_roots.len()
    }

    pub fn multiplicity_sum(&self) -> u32 {
        self.exact_roots.iter().map(|r| r.1).sum::<u32>()
            + self
                .approx_roots
                .iter()
                .map(|r| r.multiplicity)
                .sum::<u32>()
    }
}

fn fp_constant(c: &FieldElem) -> Option<u64> {
    match c.in_base()? {
        Base::F(r) if r.den.0 == vec![1] && r.num.0.len() <= 1 => {
            Some(r.num.0.first().copied().unwrap_or(0))
        }
        _ => None,
    }
}

/// Tries to split off one exact root of a monic squarefree polynomial of degree ≥ 2.
fn find_one_root(g: &Poly, hints: &[FieldElem]) -> Option<FieldElem> {
    let field = g.field().clone();
    if g.coeff(0).is_zero() {
        return Some(FieldElem::zero(&field));
    }
    if let Some(h) = hints.iter().find(|h| g.eval(h).is_zero()) {
        return Some(h.clone());
    }
    if field.characteristic() == 0 {
        if let Some(qs) = g
            .coeffs()
            .iter()
            .map(FieldElem::as_rational)
            .collect::<Option<Vec<_>>>()
        {
            if let Some(r) = rational_roots(&qs).into_iter().next() {
                return Some(FieldElem::from_base(&field, Base::Q(r)));
            }
        }
    } else if g.coeffs().iter().all(|c| fp_constant(c).is_some())
        && field.characteristic() <= 1 << 16
    {
        for a in 0..field.characteristic() {
            let x = FieldElem::from_int(&field, a as i64);
            if g.eval(&x).is_zero() {
                return Some(x);
            }
        }
    }
    None
}

enum Quadratic {
    Split(FieldElem, FieldElem),
    NoSqrt(FieldElem),
    Unsupported,
}

fn solve_quadratic(g: &Poly) -> Quadratic {
    let field = g.field().clone();
    if field.characteristic() == 2 {
        return Quadratic::Unsupported;
    }
    let (c, b, a) = (g.coeff(0), g.coeff(1), g.coeff(2));
    let four = FieldElem::from_int(&field, 4);
    let disc = &(&b * &b) - &(&four * &(&a * &c));
    let Some(r) = disc.sqrt() else {
        return Quadratic::NoSqrt(disc);
    };
    let inv2a = (&FieldElem::from_int(&field, 2) * &a).inv().unwrap();
    let nb = -&b;
    Quadratic::Split(&(&nb + &r) * &inv2a, &(&nb - &r) * &inv2a)
}

/// Exact roots of the squarefree part of `a`, splitting off known roots and
/// solving quadratics in the field; what cannot be split stays in `unresolved`.
pub fn roots_partial(
    a: &Poly,
    hints: &[FieldElem],
) -> Result<(RootSet, Vec<FieldElem>), AlgebraError> {
    let mut set = RootSet {
        exact_roots: vec![],
        approx_roots: vec![],
        unresolved: vec![],
        complete: true,
    };
    let mut missing_sqrt = Vec::new();
    for fac in squarefree(a)? {
        let mult = fac.root_multiplicity();
        let mut found = Vec::new();
        let mut rest = Vec::new();
        let mut stack = vec![fac.poly.clone()];
        while let Some(g) = stack.pop() {
            match g.degree() {
                None | Some(0) => {}
                Some(1) => found.push(-&g.coeff(0)),
                Some(d) => {
                    if let Some(r) = find_one_root(&g, hints) {
                        stack.push(g.exact_div(&Poly::linear(&r)).unwrap());
                        found.push(r);
                    } else if d == 2 {
                        match solve_quadratic(&g) {
                            Quadratic::Split(r1, r2) => found.extend([r1, r2]),
                            Quadratic::NoSqrt(disc) => {
                                missing_sqrt.push(disc);
                                rest.push(g);
                            }
                            Quadratic::Unsupported => rest.push(g),
                        }
                    } else {
                        rest.push(g);
                    }
                }
            }
        }
        for mut r in found {
            let mut ok = true;
            for _ in 0..fac.twist {
                match r.chi_root() {
                    Some(s) => r = s,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                set.exact_roots.push((r, mult));
            } else {
                let lin = Poly::linear(&r).inflate(a.field().chi().pow(fac.twist) as usize);
                set.unresolved.push((lin, fac.multiplicity));
            }
        }
        let e = a.field().chi().pow(fac.twist) as usize;
        for g in rest {
            set.unresolved.push((g.inflate(e), fac.multiplicity));
        }
    }
    set.complete = set.unresolved.is_empty();
    Ok((set, missing_sqrt))
}

/// Exact roots with multiplicities.
///
/// Fails with `NeedsExtension` when a quadratic factor's discriminant has
/// no square root in the field; higher-degree leftovers are reported as
/// unresolved with `complete = false`.
pub fn roots_exact(a: &Poly, hints: &[FieldElem]) -> Result<RootSet, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let (set, missing) = roots_partial(a, hints)?;
    if let Some(disc) = missing.first() {
        return Err(AlgebraError::NeedsExtension(format!("sqrt({disc})")));
    }
    Ok(set)
}
