//! Command-line front end for the `mac` binary.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cell_oracle::{build_with_limit, DEFAULT_CELL_LIMIT};
use crate::classifier::{classify, RationalTypeVerdict};
use crate::cohomology::{exhaustive_products, no_disjoint_supports, HochsterTable, RingCertificate, RingTriviality};
use crate::complex::SimplicialComplex;
use crate::error::{MacError, Result};
use crate::generate::{generate, Family};
use crate::loopspace::{
    free_lie_ranks, growth_certificate, product_ranks, wedge_model, GrowthCertificate, SphereModel, DEFAULT_DELTA,
    DEFAULT_TRUNCATION,
};
use crate::nonface::minimal_nonfaces;
use crate::vertex_set::MAX_VERTICES;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "mac", version, about = "Rational type of moment-angle complexes Z(K; (D², S¹))")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Complex JSON: a file path or an inline `{"n":..,"facets":..}` object. Reads stdin when absent.
    #[arg(long, global = true)]
    pub input: Option<String>,

    /// Largest vertex count accepted before any enumeration starts.
    #[arg(long, global = true, default_value_t = 24)]
    pub limit_n: usize,

    /// Largest cell count for the cellular oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_CELL_LIMIT)]
    pub limit_cells: usize,

    /// Seed for `generate random`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elliptic model or hyperbolic witness.
    Classify,
    /// Minimal non-faces.
    Nonfaces,
    /// Betti numbers of Z(K) from full-subcomplex cohomology.
    Betti,
    /// Betti numbers of Z(K) from the product cell structure.
    OracleBetti {
        /// Include the cellular chain complex in the output.
        #[arg(long)]
        dump: bool,
    },
    /// Whether all products of positive-degree classes vanish.
    Ring,
    /// Rational homotopy ranks of the elliptic model or the witness wedge.
    LoopRanks {
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
    },
    /// Compare both cohomology engines.
    Crosscheck,
    /// Emit a named or random complex.
    Generate {
        #[arg(value_enum)]
        family: Family,
        /// Dimension, length, factor count or vertex count depending on the family.
        #[arg(long)]
        size: usize,
    },
}

/// Exit status for an error: 2 for bad input, 3 for resource limits.
pub fn exit_code(err: &MacError) -> i32 {
    match err {
        MacError::Input(_) | MacError::GhostVertex { .. } => 2,
        MacError::Resource(_) => 3,
        MacError::NotApplicable(_) => 1,
    }
}

/// Parses the `--input` value, reading a file unless it looks like inline JSON.
pub fn load_complex(input: Option<&str>, stdin: impl FnOnce() -> std::io::Result<String>) -> Result<SimplicialComplex> {
    let text = match input {
        Some(s) if s.trim_start().starts_with('{') => s.to_string(),
        Some(path) => {
            std::fs::read_to_string(Path::new(path)).map_err(|e| MacError::Input(format!("cannot read {path}: {e}")))?
        }
        None => stdin().map_err(|e| MacError::Input(format!("cannot read stdin: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| MacError::Input(format!("invalid complex JSON: {e}")))
}

fn check_n(k: &SimplicialComplex, limit: usize) -> Result<()> {
    let limit = limit.min(MAX_VERTICES);
    if k.vertex_count() > limit {
        return Err(MacError::Resource(format!("n = {} exceeds --limit-n {limit}", k.vertex_count())));
    }
    Ok(())
}

#[derive(Serialize)]
struct LoopReport {
    ranks: Vec<u128>,
    #[serde(flatten)]
    growth: GrowthCertificate,
    model: SphereModel,
}

/// Executes one command and renders the report.
pub fn run(config: &RunConfig, stdin: impl FnOnce() -> std::io::Result<String>) -> Result<String> {
    let value = match &config.command {
        Command::Generate { family, size } => {
            let k = generate(*family, *size, config.seed)?;
            to_json(&k)?
        }
        command => {
            let k = load_complex(config.input.as_deref(), stdin)?;
            check_n(&k, config.limit_n)?;
            execute(command, &k, config)?
        }
    };
    Ok(render(&value, config.format))
}

fn execute(command: &Command, k: &SimplicialComplex, config: &RunConfig) -> Result<Value> {
    Ok(match command {
        Command::Classify => to_json(&classify(k)?.report())?,
        Command::Nonfaces => to_json(&minimal_nonfaces(k)?)?,
        Command::Betti => to_json(&HochsterTable::build(k, false, config.limit_n)?.report())?,
        Command::OracleBetti { dump } => {
            let cx = build_with_limit(k, config.limit_cells)?;
            let mut v = json!({ "betti": cx.betti() });
            if *dump {
                v["chain"] = to_json(&cx.dump())?;
            }
            v
        }
        Command::Ring => to_json(&ring(k, config.limit_n)?)?,
        Command::LoopRanks { truncation, delta } => to_json(&loop_ranks(k, *truncation, *delta)?)?,
        Command::Crosscheck => {
            let hochster = HochsterTable::build(k, false, config.limit_n)?.betti().to_vec();
            let oracle = build_with_limit(k, config.limit_cells)?.betti();
            json!({ "hochster": hochster, "oracle": oracle, "equal": hochster == oracle })
        }
        Command::Generate { .. } => unreachable!("handled by run"),
    })
}

fn ring(k: &SimplicialComplex, limit_n: usize) -> Result<RingTriviality> {
    let dims = HochsterTable::build(k, false, limit_n)?;
    if no_disjoint_supports(&dims) {
        return Ok(RingTriviality { trivial: true, certificate: RingCertificate::NoDisjointSupports });
    }
    exhaustive_products(&HochsterTable::build(k, true, limit_n)?)
}

fn loop_ranks(k: &SimplicialComplex, truncation: usize, delta: f64) -> Result<LoopReport> {
    let series = match classify(k)? {
        RationalTypeVerdict::Elliptic { sphere_dims, .. } => {
            product_ranks(&SphereModel::product(sphere_dims)?, truncation)?
        }
        RationalTypeVerdict::Hyperbolic { witness_i, .. } => {
            free_lie_ranks(&wedge_model(&k.full_subcomplex(witness_i))?, truncation)?
        }
    };
    let (growth, _) = growth_certificate(&series, delta)?;
    Ok(LoopReport { ranks: series.ranks, growth, model: series.model })
}

/// Ranks are `u128`; values past `u64::MAX` have no JSON number form here.
fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| MacError::Resource(format!("report does not fit in JSON numbers: {e}")))
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(value).expect("value serializes"),
        Format::Text => {
            let mut out = String::new();
            render_text(&mut out, "", value);
            out.trim_end().to_string()
        }
    }
}

fn render_text(out: &mut String, prefix: &str, value: &Value) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                render_text(out, &path, v);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object()) => {
            let parts: Vec<String> = items.iter().map(compact).collect();
            let _ = writeln!(out, "{prefix}: {}", parts.join(" "));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                render_text(out, &format!("{prefix}[{i}]"), v);
            }
        }
        other => {
            let _ = writeln!(out, "{prefix}: {}", compact(other));
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("{{{}}}", items.iter().map(compact).collect::<Vec<_>>().join(",")),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        RunConfig::parse_from(std::iter::once("mac").chain(args.iter().copied()))
    }

    fn no_stdin() -> std::io::Result<String> {
        Err(std::io::Error::other("no stdin in tests"))
    }

    #[test]
    fn classify_c4_inline() {
        let c = cfg(&["classify", "--input", r#"{"n":4,"facets":[[1,2],[2,3],[3,4],[1,4]]}"#]);
        assert_eq!(run(&c, no_stdin).unwrap(), r#"{"kind":"elliptic","spheres":[3,3],"disk":0}"#);
    }

    #[test]
    fn errors_map_to_exit_codes() {
        let c = cfg(&["classify", "--input", r#"{"n":3,"facets":[[1,2]]}"#]);
        let err = run(&c, no_stdin).unwrap_err();
        assert_eq!(exit_code(&err), 2);
        assert!(err.to_string().contains("vertex 3"));

        let c = cfg(&["classify", "--input", r#"{"n":3,"facets":[[1,5]]}"#]);
        let err = run(&c, no_stdin).unwrap_err();
        assert_eq!(exit_code(&err), 2);
        assert!(err.to_string().contains("[1, 5]"));

        let c = cfg(&["oracle-betti", "--limit-cells", "10", "--input", r#"{"n":3,"facets":[[1,2,3]]}"#]);
        assert_eq!(exit_code(&run(&c, no_stdin).unwrap_err()), 3);

        let c = cfg(&["betti", "--limit-n", "3", "--input", r#"{"n":4,"facets":[[1,2,3,4]]}"#]);
        assert_eq!(exit_code(&run(&c, no_stdin).unwrap_err()), 3);
    }

    #[test]
    fn stdin_is_used_without_input_flag() {
        let c = cfg(&["nonfaces"]);
        let out = run(&c, || Ok(r#"{"n":2,"facets":[[1],[2]]}"#.to_string())).unwrap();
        assert_eq!(out, r#"{"n":2,"members":[[1,2]]}"#);
    }

    #[test]
    fn text_format() {
        let c = cfg(&["classify", "--format", "text", "--input", r#"{"n":2,"facets":[[1],[2]]}"#]);
        let out = run(&c, no_stdin).unwrap();
        assert!(out.contains("kind: elliptic"));
        assert!(out.contains("spheres: 3"));
    }

    #[test]
    fn oversized_ranks_are_a_resource_error() {
        let c = cfg(&[
            "loop-ranks",
            "--truncation",
            "400",
            "--input",
            r#"{"n":5,"facets":[[1,2],[2,3],[3,4],[4,5],[1,5]]}"#,
        ]);
        assert_eq!(exit_code(&run(&c, no_stdin).unwrap_err()), 3);
    }
}
