//! Text grammar for field elements, polynomials and rational maps in `x`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/')? factor)*     juxtaposition multiplies
//! factor  := ('-' | '+') factor | atom ('^' '-'? int)?
//! atom    := int | 'x' | generator | 'T' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Field, FieldElem};
use super::poly::Poly;
use super::ratmap::{RatMap, Role};
use super::AlgebraError;

/// A rational function in `x`, not necessarily reduced.
#[derive(Clone, Debug)]
struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    fn constant(c: FieldElem) -> Frac {
        let f = c.field().clone();
        Frac {
            num: Poly::constant(c),
            den: Poly::one(&f),
        }
    }
    fn add(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }
    fn neg(&self) -> Frac {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }
    fn inv(&self) -> Option<Frac> {
        (!self.num.is_zero()).then(|| Frac {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let cs: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let (pos, c) = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < cs.len() && cs[j].1.is_ascii_digit() {
                j += 1;
            }
            let text: String = cs[i..j].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Int(text.parse().unwrap())));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < cs.len() && cs[j].1.is_ascii_alphabetic() {
                j += 1;
            }
            out.push((pos, Tok::Ident(cs[i..j].iter().map(|x| x.1).collect())));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(AlgebraError::Parse {
                pos,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Frac, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let t = self.term()?;
            acc = if c == '+' {
                acc.add(&t)
            } else {
                acc.add(&t.neg())
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Op('*')) => {
                    self.at += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Op('/')) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.factor()?;
                    let inv = d.inv().ok_or(AlgebraError::Parse {
                        pos,
                        msg: "division by zero".into(),
                    })?;
                    acc = acc.mul(&inv);
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::Op('(')) => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Frac, AlgebraError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(self.factor()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() != Some(&Tok::Op('^')) {
                    return Ok(base);
                }
                self.at += 1;
                let neg = if self.peek() == Some(&Tok::Op('-')) {
                    self.at += 1;
                    true
                } else {
                    false
                };
                let Some(Tok::Int(n)) = self.peek().cloned() else {
                    return self.err("expected an integer exponent");
                };
                let Ok(n) = u32::try_from(n) else {
                    return self.err("exponent too large");
                };
                self.at += 1;
                let mut acc = Frac::constant(FieldElem::one(self.field));
                for _ in 0..n {
                    acc = acc.mul(&base);
                }
                if neg {
                    match acc.inv() {
                        Some(a) => Ok(a),
                        None => self.err("zero to a negative power"),
                    }
                } else {
                    Ok(acc)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Frac, AlgebraError> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let e = FieldElem::from_rational(f, &BigRational::from_integer(n))?;
                Ok(Frac::constant(e))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let val = if name == "x" {
                    Some(Frac {
                        num: Poly::x(f),
                        den: Poly::one(f),
                    })
                } else if name == "T" {
                    FieldElem::t_var(f).map(Frac::constant)
                } else if f.extension().is_some_and(|e| e.gen == name) {
                    FieldElem::generator(f).map(Frac::constant)
                } else {
                    None
                };
                match val {
                    Some(v) => {
                        self.at += 1;
                        Ok(v)
                    }
                    None => self.err(format!("unknown symbol {name:?}")),
                }
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_frac(s: &str, field: &Field) -> Result<Frac, AlgebraError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len(),
        field,
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// A rational map `num/den` in `x`, normalized for its role.
pub fn parse_ratmap(s: &str, field: &Field, role: Role) -> Result<RatMap, AlgebraError> {
    let f = parse_frac(s, field)?;
    RatMap::normalize(f.num, f.den, role)
}

pub fn parse_poly(s: &str, field: &Field) -> Result<Poly, AlgebraError> {
    let f = parse_frac(s, field)?;
    let (q, r) = f.num.divrem(&f.den)?;
    if !r.is_zero() {
        return Err(AlgebraError::Parse {
            pos: 0,
            msg: format!("{s:?} is not a polynomial"),
        });
    }
    Ok(q)
}

/// A field element (an expression free of `x`).
pub fn parse_elem(s: &str, field: &Field) -> Result<FieldElem, AlgebraError> {
    let p = parse_poly(s, field)?;
    if !p.is_constant() {
        return Err(AlgebraError::Parse {
            pos: 0,
            msg: format!("{s:?} depends on x"),
        });
    }
    Ok(p.coeff(0))
}
