use super::newton::newton_polygon;
use super::trunc::TruncSeries;
use super::SeriesError;
use crate::algebra::roots::squarefree;
use crate::algebra::{Field, Poly, RatMap};
use crate::exactnum::{End, Scalar};

/// `x^x_power · num/den` with `num(0), den(0) ≠ 0`, living on the disk of
/// log-radius `domain_end` (`Infinite` for the whole field).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeroRep {
    num: TruncSeries,
    den: TruncSeries,
    x_power: i64,
    domain_end: End,
}

/// Points sharing one absolute value and one multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorEntry {
    /// `log_p |α|`.
    pub log_abs: Scalar,
    /// Signed multiplicity of each point: positive for zeros, negative for poles.
    pub multiplicity: i64,
    /// Number of distinct points in the entry.
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub entries: Vec<DivisorEntry>,
    pub certified_t: End,
    /// Order of the zero (positive) or pole (negative) at the origin.
    pub origin_order: i64,
    /// False when entries come from truncated series, where coinciding
    /// points cannot be told apart; entries then count points as simple.
    pub multiplicity_certified: bool,
}

impl Divisor {
    pub fn new(mut entries: Vec<DivisorEntry>, certified_t: End) -> Result<Divisor, SeriesError> {
        for e in &entries {
            if e.multiplicity == 0 || e.points == 0 {
                return Err(SeriesError::Invalid(
                    "divisor entries need nonzero multiplicity and points".into(),
                ));
            }
            if !certified_t.contains_below(&e.log_abs) {
                return Err(SeriesError::Invalid(format!(
                    "entry at {} lies beyond the certified radius",
                    e.log_abs
                )));
            }
        }
        entries.sort_by(|a, b| (&a.log_abs, a.multiplicity).cmp(&(&b.log_abs, b.multiplicity)));
        Ok(Divisor {
            entries,
            certified_t,
            origin_order: 0,
            multiplicity_certified: true,
        })
    }

    pub fn empty() -> Divisor {
        Divisor {
            entries: vec![],
            certified_t: End::Infinite,
            origin_order: 0,
            multiplicity_certified: true,
        }
    }

    pub fn zero_count(&self) -> i64 {
        self.entries
            .iter()
            .filter(|e| e.multiplicity > 0)
            .map(|e| e.multiplicity * e.points as i64)
            .sum()
    }

    pub fn pole_count(&self) -> i64 {
        self.entries
            .iter()
            .filter(|e| e.multiplicity < 0)
            .map(|e| -e.multiplicity * e.points as i64)
            .sum()
    }
}

fn leading_zeros(s: &TruncSeries) -> Result<usize, SeriesError> {
    s.coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(SeriesError::AllZeroUpToOrder)
}

impl MeroRep {
    /// Factors the powers of `x` out of `num` and `den`.
    pub fn new(
        num: TruncSeries,
        den: TruncSeries,
        domain_end: End,
    ) -> Result<MeroRep, SeriesError> {
        let kn = leading_zeros(&num)?;
        let kd =
            leading_zeros(&den).map_err(|_| SeriesError::Invalid("zero denominator".into()))?;
        let num = num.unshift(kn)?;
        let den = den.unshift(kd)?;
        Ok(MeroRep {
            num,
            den,
            x_power: kn as i64 - kd as i64,
            domain_end,
        })
    }

    /// A rational function on the whole field.
    pub fn from_ratmap(l: &RatMap) -> Result<MeroRep, SeriesError> {
        MeroRep::new(
            TruncSeries::from_poly(l.num()),
            TruncSeries::from_poly(l.den()),
            End::Infinite,
        )
    }

    pub fn from_series(f: TruncSeries) -> Result<MeroRep, SeriesError> {
        let one = TruncSeries::from_poly(&Poly::one(f.field()));
        let end = match f.tail() {
            Some(t) => End::Finite(t.slope.clone()),
            None => End::Infinite,
        };
        MeroRep::new(f, one, end)
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &TruncSeries {
        &self.num
    }

    pub fn den(&self) -> &TruncSeries {
        &self.den
    }

    pub fn x_power(&self) -> i64 {
        self.x_power
    }

    pub fn domain_end(&self) -> &End {
        &self.domain_end
    }

    pub fn is_exact(&self) -> bool {
        self.num.is_exact() && self.den.is_exact()
    }

    pub fn certified_t(&self) -> Result<End, SeriesError> {
        let a = newton_polygon(&self.num)?.certified_up_to;
        let b = newton_polygon(&self.den)?.certified_up_to;
        Ok(a.min(&b).min(&self.domain_end))
    }

    /// Whether `num` and `den` are constants as far as known.
    pub fn is_constant_known(&self) -> bool {
        self.x_power == 0
            && self.num.known_poly().is_constant()
            && self.den.known_poly().is_constant()
    }

    /// `self − c` for a field constant.
    pub fn sub_constant(&self, c: &crate::algebra::FieldElem) -> Result<MeroRep, SeriesError> {
        let (num, den) = self.fraction();
        let num = num.sub(&den.scale(c));
        MeroRep::new(num, den, self.domain_end.clone())
    }

    /// `(A, B)` with `self = A/B`, the power of `x` folded back in.
    pub fn fraction(&self) -> (TruncSeries, TruncSeries) {
        if self.x_power >= 0 {
            (self.num.shift(self.x_power as usize), self.den.clone())
        } else {
            (self.num.clone(), self.den.shift((-self.x_power) as usize))
        }
    }
}

fn entries_of(
    s: &TruncSeries,
    sign: i64,
    cert: &End,
) -> Result<(Vec<DivisorEntry>, bool), SeriesError> {
    let mut out = Vec::new();
    if let Some(p) = s.as_poly() {
        let chi = p.field().chi() as i64;
        for fac in squarefree(&p).map_err(|_| SeriesError::AllZeroUpToOrder)? {
            let np = newton_polygon(&TruncSeries::from_poly(&fac.poly))?;
            let scale = Scalar::from_integer(chi.pow(fac.twist).into());
            for (slope, len) in np.slopes {
                let log_abs = slope / &scale;
                if cert.contains_below(&log_abs) {
                    let multiplicity = sign * fac.root_multiplicity() as i64;
                    out.push(DivisorEntry {
                        log_abs,
                        multiplicity,
                        points: len,
                    });
                }
            }
        }
        return Ok((out, true));
    }
    for (slope, len) in newton_polygon(s)?.slopes {
        if cert.contains_below(&slope) {
            out.push(DivisorEntry {
                log_abs: slope,
                multiplicity: sign,
                points: len,
            });
        }
    }
    Ok((out, false))
}

/// Zeros and poles of `f` below its certified radius.
///
/// Zeros of the numerator and of the denominator are listed separately even
/// when they share an absolute value.
pub fn mero_divisor(f: &MeroRep) -> Result<Divisor, SeriesError> {
    let cert = f.certified_t()?;
    let (mut entries, c1) = entries_of(&f.num, 1, &cert)?;
    let (poles, c2) = entries_of(&f.den, -1, &cert)?;
    entries.extend(poles);
    let mut d = Divisor::new(entries, cert)?;
    d.origin_order = f.x_power;
    d.multiplicity_certified = c1 && c2;
    Ok(d)
}

/// Result of χ-root reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ramification {
    pub index: u32,
    pub reduced: MeroRep,
    /// For truncated input: the derivative test only saw this many coefficients.
    pub checked_to_order: Option<usize>,
}

/// Largest t such that f is a χ^t-th power, with the reduced representative.
pub fn ramification_index(f: &MeroRep) -> Result<Ramification, SeriesError> {
    let chi = f.field().chi();
    let mut cur = f.clone();
    let mut index = 0;
    if chi == 1 {
        return Ok(Ramification {
            index,
            reduced: cur,
            checked_to_order: None,
        });
    }
    loop {
        if cur.is_constant_known() {
            if cur.is_exact() {
                return Err(SeriesError::Invalid(
                    "a constant has no finite ramification index".into(),
                ));
            }
            break;
        }
        let divisible = cur.x_power % chi as i64 == 0;
        if !(divisible && cur.num.derivative_vanishes() && cur.den.derivative_vanishes()) {
            break;
        }
        // x^χ − T is inseparable yet no χ-th power: the index stops here
        let (Ok(num), Ok(den)) = (cur.num.chi_root(), cur.den.chi_root()) else {
            break;
        };
        cur = MeroRep {
            num,
            den,
            x_power: cur.x_power / chi as i64,
            domain_end: cur.domain_end.clone(),
        };
        index += 1;
    }
    let checked_to_order = match (cur.num.order(), cur.den.order()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX))),
    };
    Ok(Ramification {
        index,
        reduced: cur,
        checked_to_order,
    })
}

/// `L(f)` as the pair `Σ l_i A^i B^(n−i) / Σ m_i A^i B^(n−i)`, `n = deg L`.
pub fn compose_ratmap(l: &RatMap, f: &MeroRep) -> Result<MeroRep, SeriesError> {
    let n = l.degree();
    if n == 0 {
        return Err(SeriesError::Invalid(
            "composition needs a non-constant map".into(),
        ));
    }
    let (a, b) = f.fraction();
    let homogenize = |p: &Poly| -> TruncSeries {
        let mut acc = TruncSeries::from_poly(&Poly::zero(p.field()));
        let mut apow = TruncSeries::from_poly(&Poly::one(p.field()));
        let bpows: Vec<TruncSeries> = {
            let mut v = vec![TruncSeries::from_poly(&Poly::one(p.field()))];
            for _ in 0..n {
                let next = v.last().unwrap().mul(&b);
                v.push(next);
            }
            v
        };
        for i in 0..=n {
            let c = p.coeff(i);
            if !c.is_zero() {
                acc = acc.add(&apow.mul(&bpows[n - i]).scale(&c));
            }
            apow = apow.mul(&a);
        }
        acc
    };
    let mut num = homogenize(l.num());
    let mut den = homogenize(l.den());
    if num.is_zero_known() && den.is_zero_known() {
        return Err(SeriesError::DegenerateComposition);
    }
    if let (Some(pn), Some(pd)) = (num.as_poly(), den.as_poly()) {
        let g = pn.gcd(&pd);
        if !g.is_constant() {
            num = TruncSeries::from_poly(&pn.exact_div(&g).unwrap());
            den = TruncSeries::from_poly(&pd.exact_div(&g).unwrap());
        }
    }
    if num.is_zero_known() || den.is_zero_known() {
        return Err(SeriesError::DegenerateComposition);
    }
    MeroRep::new(num, den, f.domain_end.clone())
}
