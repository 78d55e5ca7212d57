mod field_arg;
mod literal;
mod output;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use ultranev::algebra::parse::{parse_elem, parse_ratmap};
use ultranev::algebra::{Field, FieldElem, Role};
use ultranev::decomp::{all_verdicts, check_condition_m, Conclusion, Satisfied, Setting, Verdict};
use ultranev::exactnum::scalar::{fmt_scalar, parse_scalar};
use ultranev::exactnum::Scalar;
use ultranev::nevanlinna::{check_second_main_theorem, nev_from_divisor, nev_of, SlopeVerdict};
use ultranev::series::{count_zeros_disk, newton_polygon, Boundary, TruncSeries};

use field_arg::parse_field;
use literal::{parse_alphas, parse_literal, parse_series, Literal};
use output::{emit, plfun_rows, plot_header, Format, Report};

#[derive(Parser)]
#[command(
    name = "ultranev",
    version,
    about = "Exact non-archimedean value-distribution checks"
)]
struct Cli {
    /// Field: `Q`, `Q[s]/(s^2-3)`, `F3(T)`, a JSON object or a JSON file.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Valuation prime.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Truncation order for series literals without `@ n`.
    #[arg(long, global = true, default_value_t = 64)]
    order: usize,
    /// p-adic digits for critical points that are not in the field.
    #[arg(long, global = true, default_value_t = 24)]
    precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Log-radius at which to evaluate (nev) or count zeros (zeros).
    #[arg(long, global = true, allow_hyphen_values = true)]
    at: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Condition (M) for a pair P, Q. Exit 0 = Yes, 1 = No, 2 = otherwise.
    CheckM {
        p_expr: String,
        q_expr: String,
        /// JSON array of field elements that are candidate critical points.
        #[arg(long)]
        hints: Option<String>,
    },
    /// Non-existence verdicts for P(f) = Q(g). Exit 0 = some setting ruled out, 2 = none.
    Verdict {
        p_expr: String,
        q_expr: String,
        #[arg(long, value_enum, default_value_t = SettingArg::All)]
        setting: SettingArg,
    },
    /// Counting functions of a function or divisor literal.
    Nev { literal: String },
    /// Second main theorem check for f and comma-separated targets.
    /// Exit 0 = holds eventually, 1 = violated, 2 = inconclusive.
    #[command(name = "theorem-n")]
    SecondMain {
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
    },
    /// Zeros of a series in the disk log|x| ≤ t (needs --at).
    Zeros {
        series: String,
        /// Count in the open disk instead.
        #[arg(long)]
        open: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SettingArg {
    All,
    Entire,
    Disk,
    MeroK,
    MeroDisk,
    CriticalValues,
    CriticalCount,
}

impl SettingArg {
    fn matches(self, s: Setting) -> bool {
        match self {
            SettingArg::All => true,
            SettingArg::Entire => s == Setting::EntireOnK,
            SettingArg::Disk => s == Setting::AnalyticUnboundedDisk,
            SettingArg::MeroK => s == Setting::MeroOnK,
            SettingArg::MeroDisk => s == Setting::MeroUnboundedDisk,
            SettingArg::CriticalValues => s == Setting::AnalyticOnKCriticalValues,
            SettingArg::CriticalCount => s == Setting::AnalyticOnKCriticalCount,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => match emit(&report, cli.format, &mut std::io::stdout().lock()) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn at(cli: &Cli) -> Result<Option<Scalar>> {
    cli.at
        .as_deref()
        .map(|t| parse_scalar(t).map_err(|e| anyhow!("--at: {e}")))
        .transpose()
}

fn run(cli: &Cli) -> Result<(Report, u8)> {
    if cli.order < 4 {
        bail!("--order must be at least 4");
    }
    if cli.precision == 0 {
        bail!("--precision must be positive");
    }
    let field = parse_field(&cli.field, cli.p)?;
    match &cli.command {
        Command::CheckM {
            p_expr,
            q_expr,
            hints,
        } => {
            let (p, q) = pair(&field, p_expr, q_expr)?;
            let hints = match hints {
                Some(path) => read_hints(path, &field)?,
                None => vec![],
            };
            let r = check_condition_m(&p, &q, &hints, cli.precision);
            let code = match r.satisfied {
                Satisfied::Yes => 0,
                Satisfied::No(_) => 1,
                _ => 2,
            };
            Ok((Report::new(serde_json::to_value(&r)?), code))
        }
        Command::Verdict {
            p_expr,
            q_expr,
            setting,
        } => {
            let (p, q) = pair(&field, p_expr, q_expr)?;
            let verdicts: Vec<Verdict> = all_verdicts(&p, &q, &[], cli.precision)
                .into_iter()
                .filter(|v| setting.matches(v.setting))
                .collect();
            let code = if verdicts
                .iter()
                .any(|v| v.conclusion == Conclusion::RuledOut)
            {
                0
            } else {
                2
            };
            let json = if verdicts.len() == 1 {
                serde_json::to_value(&verdicts[0])?
            } else {
                serde_json::to_value(&verdicts)?
            };
            Ok((Report::new(json), code))
        }
        Command::Nev { literal } => {
            let bundle = match parse_literal(literal, &field, cli.order)? {
                Literal::Divisor(d) => nev_from_divisor(&d, 1)?,
                Literal::Function(f) => nev_of(&f)?,
            };
            let mut json = serde_json::to_value(&bundle)?;
            let named = [
                ("Z", &bundle.z),
                ("N", &bundle.n),
                ("T", &bundle.t),
                ("Zt", &bundle.z_tilde),
                ("Nt", &bundle.n_tilde),
            ];
            if let Some(t) = at(cli)? {
                let mut values = serde_json::Map::new();
                values.insert("t".into(), Value::String(fmt_scalar(&t)));
                for (name, f) in named {
                    values.insert(name.into(), Value::String(fmt_scalar(&f.eval(&t)?)));
                }
                json["at"] = Value::Object(values);
            }
            let rows = named
                .iter()
                .flat_map(|(name, f)| plfun_rows(name, f))
                .collect();
            Ok((
                Report {
                    json,
                    table: Some((plot_header(), rows)),
                },
                0,
            ))
        }
        Command::SecondMain { f, alphas } => {
            let f = literal::parse_function(f, &field, cli.order)?;
            let alphas = parse_alphas(alphas, &field)?;
            let r = check_second_main_theorem(&f, &alphas)?;
            let code = match r.verdict {
                SlopeVerdict::HoldsEventually => 0,
                SlopeVerdict::ViolatedEventually => 1,
                SlopeVerdict::InconclusiveWithinCertifiedRadius => 2,
            };
            Ok((Report::new(serde_json::to_value(&r)?), code))
        }
        Command::Zeros { series, open } => {
            let t = at(cli)?.ok_or_else(|| anyhow!("zeros needs --at <t>"))?;
            let s = series_or_poly(series, &field, cli.order)?;
            let boundary = if *open {
                Boundary::Open
            } else {
                Boundary::Closed
            };
            let count = count_zeros_disk(&s, &t, boundary)?;
            let polygon = newton_polygon(&s)?;
            let json = json!({
                "t": fmt_scalar(&t),
                "boundary": if *open { "open" } else { "closed" },
                "count": count,
                "certified_up_to": polygon.certified_up_to.to_string(),
                "slopes": polygon
                    .slopes
                    .iter()
                    .map(|(v, m)| json!({"log_abs": fmt_scalar(v), "count": m}))
                    .collect::<Vec<_>>(),
            });
            Ok((Report::new(json), 0))
        }
    }
}

fn pair(
    field: &Field,
    p: &str,
    q: &str,
) -> Result<(ultranev::algebra::RatMap, ultranev::algebra::RatMap)> {
    let p = parse_ratmap(p, field, Role::P).map_err(|e| anyhow!("P: {e}"))?;
    let q = parse_ratmap(q, field, Role::Q).map_err(|e| anyhow!("Q: {e}"))?;
    Ok((p, q))
}

fn read_hints(path: &str, field: &Field) -> Result<Vec<FieldElem>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let items: Vec<String> =
        serde_json::from_str(&text).context("hints must be a JSON array of strings")?;
    items
        .iter()
        .map(|s| parse_elem(s, field).map_err(|e| anyhow!("hint {s:?}: {e}")))
        .collect()
}

fn series_or_poly(s: &str, field: &Field, order: usize) -> Result<TruncSeries> {
    if s.trim_start().starts_with('[') {
        parse_series(s.trim(), field, order)
    } else {
        let p = ultranev::algebra::parse::parse_poly(s, field).map_err(|e| anyhow!(e))?;
        Ok(TruncSeries::from_poly(&p))
    }
}
