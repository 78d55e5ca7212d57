//! `--field` values: a JSON object, a path to one, or an inline form.
//!
//! Inline forms are `Q`, `Q[s]/(s^2 - 3)` and `F3(T)`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ultranev::algebra::field::ExtensionConfig;
use ultranev::algebra::{Field, FieldConfig};

pub fn parse_field(spec: &str, p: Option<u64>) -> Result<Field> {
    let spec = spec.trim();
    let mut config = if spec.starts_with('{') {
        serde_json::from_str::<FieldConfig>(spec).context("field JSON")?
    } else if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        serde_json::from_str::<FieldConfig>(&text)
            .with_context(|| format!("field JSON in {spec}"))?
    } else {
        inline(spec, p)?
    };
    if let Some(p) = p {
        if config.characteristic != 0 && config.characteristic != p {
            bail!(
                "--p {p} disagrees with characteristic {}",
                config.characteristic
            );
        }
        config.p = p;
    }
    if config.p == 0 {
        bail!("no valuation prime: pass --p");
    }
    config.build().map_err(|e| anyhow!(e))
}

fn inline(spec: &str, p: Option<u64>) -> Result<FieldConfig> {
    let p0 = p.unwrap_or(0);
    if spec == "Q" {
        return Ok(FieldConfig {
            characteristic: 0,
            p: p0,
            ext: None,
        });
    }
    if let Some(rest) = spec.strip_prefix("Q[") {
        let (gen, rest) = rest
            .split_once(']')
            .ok_or_else(|| anyhow!("expected Q[gen]/(minpoly)"))?;
        let minpoly = rest
            .trim()
            .strip_prefix("/(")
            .and_then(|m| m.strip_suffix(')'))
            .ok_or_else(|| anyhow!("expected Q[gen]/(minpoly)"))?;
        let gen = gen.trim();
        if gen.is_empty() || !gen.chars().all(|c| c.is_ascii_alphabetic()) {
            bail!("generator name {gen:?} must be alphabetic");
        }
        return Ok(FieldConfig {
            characteristic: 0,
            p: p0,
            ext: Some(ExtensionConfig {
                gen: gen.to_string(),
                minpoly: rename_variable(minpoly, gen, "x"),
                val: "0".into(),
                irreducible: false,
            }),
        });
    }
    if let Some(ch) = spec.strip_prefix('F').and_then(|r| r.strip_suffix("(T)")) {
        let ch: u64 = ch
            .parse()
            .with_context(|| format!("characteristic in {spec}"))?;
        return Ok(FieldConfig {
            characteristic: ch,
            p: ch,
            ext: None,
        });
    }
    bail!("unrecognised field {spec:?}: use Q, Q[s]/(minpoly), Fp(T) or JSON")
}

/// Replaces whole identifiers equal to `from`.
fn rename_variable(expr: &str, from: &str, to: &str) -> String {
    let mut out = String::with_capacity(expr.len());
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        out.push_str(if word == from { to } else { word });
        word.clear();
    };
    for c in expr.chars() {
        if c.is_ascii_alphabetic() {
            word.push(c);
        } else {
            flush(&mut word, &mut out);
            out.push(c);
        }
    }
    flush(&mut word, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_forms() {
        assert_eq!(parse_field("Q", Some(5)).unwrap().characteristic(), 0);
        let k = parse_field("Q[s]/(s^2 - 3)", Some(5)).unwrap();
        assert_eq!(k.degree(), 2);
        let k = parse_field("F3(T)", None).unwrap();
        assert_eq!(k.characteristic(), 3);
        assert!(parse_field("F3(T)", Some(5)).is_err());
        assert!(parse_field("Q", None).is_err());
        assert!(parse_field("R", Some(5)).is_err());
    }

    #[test]
    fn json_form() {
        let k = parse_field(
            r#"{"char": 0, "p": 7, "ext": {"gen": "s", "minpoly": "x^2 - 3"}}"#,
            None,
        )
        .unwrap();
        assert_eq!(k.prime(), 7);
    }

    #[test]
    fn renaming_respects_words() {
        assert_eq!(rename_variable("s^2 - 3s + ss", "s", "x"), "x^2 - 3x + ss");
    }
}
