//! Function and divisor literals.
//!
//! * rational expression: `1/(1 - x)^2`
//! * exact series: `[1, 1, 5]`
//! * truncated series: `[1, 5, 25] @ 3, tail(0, 1)`; `@ n` defaults to `--order`,
//!   the tail to the smallest known coefficient valuation with slope 0
//! * divisor: `zero@0 x2; pole@-1/2 *3` (multiplicity `x`, point count `*`), or `empty`

use anyhow::{anyhow, bail, Context, Result};
use ultranev::algebra::parse::{parse_elem, parse_ratmap};
use ultranev::algebra::{Field, FieldElem, Role};
use ultranev::exactnum::scalar::parse_scalar;
use ultranev::exactnum::{End, Scalar};
use ultranev::series::{Divisor, DivisorEntry, MeroRep, TailBound, TruncSeries};

pub enum Literal {
    Divisor(Divisor),
    Function(MeroRep),
}

pub fn is_divisor(s: &str) -> bool {
    let s = s.trim();
    s.is_empty() || s == "empty" || s.contains("zero@") || s.contains("pole@")
}

pub fn parse_literal(s: &str, field: &Field, order: usize) -> Result<Literal> {
    if is_divisor(s) {
        parse_divisor(s).map(Literal::Divisor)
    } else {
        parse_function(s, field, order).map(Literal::Function)
    }
}

pub fn parse_function(s: &str, field: &Field, order: usize) -> Result<MeroRep> {
    let s = s.trim();
    if s.starts_with('[') {
        let series = parse_series(s, field, order)?;
        return MeroRep::from_series(series).map_err(|e| anyhow!(e));
    }
    let map = parse_ratmap(s, field, Role::P).map_err(|e| anyhow!(e))?;
    MeroRep::from_ratmap(&map).map_err(|e| anyhow!(e))
}

/// Splits on `sep` outside brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut last = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[last..i]);
                last = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[last..]);
    out
}

pub fn parse_series(s: &str, field: &Field, order: usize) -> Result<TruncSeries> {
    let close = s
        .find(']')
        .ok_or_else(|| anyhow!("unclosed '[' in series"))?;
    let body = &s[1..close];
    let coeffs: Vec<FieldElem> = if body.trim().is_empty() {
        vec![]
    } else {
        split_top(body, ',')
            .into_iter()
            .map(|c| parse_elem(c.trim(), field).map_err(|e| anyhow!("coefficient {c:?}: {e}")))
            .collect::<Result<_>>()?
    };
    let rest = s[close + 1..].trim();
    if rest.is_empty() {
        return Ok(TruncSeries::from_poly(&ultranev::algebra::Poly::new(
            field, coeffs,
        )));
    }
    let mut n = order;
    let mut tail = None;
    let rest = rest.strip_prefix(',').unwrap_or(rest).trim();
    for part in split_top(rest, ',') {
        let part = part.trim();
        if let Some(m) = part.strip_prefix('@') {
            n = m
                .trim()
                .parse()
                .with_context(|| format!("order in {part:?}"))?;
        } else if let Some(args) = part.strip_prefix("tail(").and_then(|a| a.strip_suffix(')')) {
            let (b, g) = args
                .split_once(',')
                .ok_or_else(|| anyhow!("tail needs two arguments"))?;
            tail = Some(TailBound {
                intercept: scalar(b)?,
                slope: scalar(g)?,
            });
        } else if !part.is_empty() {
            bail!("unexpected {part:?} after series coefficients");
        }
    }
    let series = match tail {
        Some(t) => TruncSeries::with_tail(field, coeffs, n, t),
        None => TruncSeries::truncated(field, coeffs, n),
    };
    series.map_err(|e| anyhow!(e))
}

fn scalar(s: &str) -> Result<Scalar> {
    parse_scalar(s.trim()).map_err(|e| anyhow!(e))
}

pub fn parse_divisor(s: &str) -> Result<Divisor> {
    let s = s.trim();
    if s.is_empty() || s == "empty" {
        return Ok(Divisor::empty());
    }
    let mut entries = Vec::new();
    for item in s.split([';', ',']) {
        let mut words = item.split_whitespace();
        let Some(head) = words.next() else { continue };
        let (kind, at) = head
            .split_once('@')
            .ok_or_else(|| anyhow!("divisor entry {head:?} needs zero@t or pole@t"))?;
        let sign = match kind {
            "zero" => 1,
            "pole" => -1,
            _ => bail!("divisor entry kind {kind:?} is neither zero nor pole"),
        };
        let mut multiplicity = 1i64;
        let mut points = 1u64;
        for w in words {
            if let Some(m) = w.strip_prefix('x') {
                multiplicity = m.parse().with_context(|| format!("multiplicity {w:?}"))?;
            } else if let Some(k) = w.strip_prefix('*') {
                points = k.parse().with_context(|| format!("point count {w:?}"))?;
            } else {
                bail!("unexpected {w:?} in divisor entry");
            }
        }
        entries.push(DivisorEntry {
            log_abs: scalar(at)?,
            multiplicity: sign * multiplicity,
            points,
        });
    }
    Divisor::new(entries, End::Infinite).map_err(|e| anyhow!(e))
}

pub fn parse_alphas(s: &str, field: &Field) -> Result<Vec<FieldElem>> {
    split_top(s, ',')
        .into_iter()
        .map(|a| parse_elem(a.trim(), field).map_err(|e| anyhow!("target {a:?}: {e}")))
        .collect()
}
