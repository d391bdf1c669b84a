//! `ldp12`: verify the twelve-point identity from the command line.
//!
//! Exit status is 0 when every check passes, 1 when an identity check
//! fails, and 2 on bad input.

mod svg;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ldp12::corpus::{random_ldp, reflexive_catalogue};
use ldp12::dedekind::dedekind_sum_fast;
use ldp12::identity::{verify_cone, verify_polygon};
use ldp12::io::{read_json_stream, write_ndjson};
use ldp12::reduction::{reduction_chain, verify_step};
use ldp12::{Cone, LatticePoint, LatticePolygon, Rational};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ldp12",
    version,
    about = "Exact checks of 12·Σ(κ+1)² = nvol(Δ) + nvol(Δ*)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify polygons read as JSON (one object, or one per line).
    Verify {
        /// Input file; `-` or nothing reads stdin.
        file: Option<PathBuf>,
        /// Include the per-cone breakdown.
        #[arg(long)]
        per_cone: bool,
    },
    /// Invariants, sail and both sides of the cone-wise identity.
    #[command(allow_negative_numbers = true)]
    Cone {
        /// First generator, as `x,y`.
        #[arg(value_parser = parse_point, allow_hyphen_values = true)]
        u1: LatticePoint,
        /// Second generator, counterclockwise from the first.
        #[arg(value_parser = parse_point, allow_hyphen_values = true)]
        u2: LatticePoint,
        /// Append the reduction chain with its per-step deltas.
        #[arg(long)]
        trace_reduction: bool,
    },
    /// Generate random LDP polygons and verify them all.
    Batch {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: u64,
        /// Coordinates are drawn from `[-bound, bound]`.
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        /// Also write the generated polygons as newline-delimited JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Dedekind sum s(h, k).
    #[command(allow_negative_numbers = true)]
    Dedekind { h: i64, k: i64 },
    /// Draw the first polygon of a file as SVG.
    Svg {
        file: PathBuf,
        #[arg(value_enum)]
        what: svg::Figure,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the sixteen reflexive polygons, one per line.
    Catalogue {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `x,y`, optionally wrapped in parentheses or brackets.
fn parse_point(s: &str) -> Result<LatticePoint, String> {
    let inner = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(LatticePoint::new(parse(x)?, parse(y)?))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Pass = 0,
    Violation = 1,
    BadInput = 2,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

fn input_error(msg: impl std::fmt::Display) -> Status {
    eprintln!("error: {msg}");
    Status::BadInput
}

fn print_line<T: Serialize + ?Sized>(v: &T) {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let _ = serde_json::to_writer(&mut out, v);
    let _ = out.write_all(b"\n");
}

fn open_input(file: Option<&Path>) -> io::Result<Box<dyn Read>> {
    match file {
        None => Ok(Box::new(io::stdin().lock())),
        Some(p) if p == Path::new("-") => Ok(Box::new(io::stdin().lock())),
        Some(p) => Ok(Box::new(BufReader::new(File::open(p)?))),
    }
}

fn verify(file: Option<&Path>, per_cone: bool) -> Status {
    let reader = match open_input(file) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let mut status = Status::Pass;
    let mut seen = 0usize;
    for (index, item) in read_json_stream::<LatticePolygon, _>(reader).enumerate() {
        seen += 1;
        let outcome = item.and_then(|p| verify_polygon(&p));
        match outcome {
            Ok(report) => {
                if !report.passed() {
                    status = status.max(Status::Violation);
                }
                if per_cone {
                    print_line(&report);
                } else {
                    print_line(&report.without_cones());
                }
            }
            Err(e) => {
                print_line(&json!({ "index": index, "error": e.to_string() }));
                let malformed = matches!(e, ldp12::Error::Parse(_));
                status = status.max(input_error(e));
                if malformed {
                    break;
                }
            }
        }
    }
    if seen == 0 {
        return input_error("no polygon in input");
    }
    status
}

fn cone(u1: LatticePoint, u2: LatticePoint, trace: bool) -> Status {
    let c = match Cone::new(u1, u2) {
        Ok(c) => c,
        Err(e) => {
            print_line(&json!({ "error": e.to_string() }));
            return input_error(e);
        }
    };
    let report = verify_cone(&c);
    let sail = c.sail();
    let mut ok = report.ok;
    let mut v = serde_json::to_value(&c).expect("cone serializes");
    let extra = json!({
        "sail": sail.boundary(),
        "m_sigma": sail.m_sigma(),
        "functionals": sail.functionals(),
        "lhs_direct": report.lhs_direct,
        "lhs_closed_form": report.lhs_closed_form,
        "rhs": report.rhs,
        "sail_complement": report.sail_complement,
        "triangles": report.triangles,
        "ok": report.ok,
    });
    if let (Value::Object(base), Value::Object(more)) = (&mut v, extra) {
        base.extend(more);
    }
    if trace {
        let steps = reduction_chain(&c);
        let mut trace = Vec::with_capacity(steps.len());
        for s in &steps {
            let check = verify_step(s);
            ok &= check.ok();
            let mut entry: Value = serde_json::to_value(s).expect("step serializes");
            entry["ok"] = Value::Bool(check.ok());
            trace.push(entry);
        }
        v["reduction"] = Value::Array(trace);
    }
    print_line(&v);
    if ok {
        Status::Pass
    } else {
        Status::Violation
    }
}

fn batch(seed: u64, count: u64, bound: i64, max_vertices: usize, out: Option<&Path>) -> Status {
    if bound < 1 || max_vertices < 3 {
        return input_error(format!(
            "need bound ≥ 1 and max-vertices ≥ 3, got {bound} and {max_vertices}"
        ));
    }
    let polygons: Result<Vec<LatticePolygon>, _> = (0..count)
        .into_par_iter()
        .map(|i| random_ldp(seed.wrapping_add(i), bound, max_vertices))
        .collect();
    let polygons = match polygons {
        Ok(ps) => ps,
        Err(e) => return input_error(e),
    };
    if let Some(path) = out {
        let written = File::create(path).and_then(|f| write_ndjson(BufWriter::new(f), &polygons));
        if let Err(e) = written {
            return input_error(format!("{}: {e}", path.display()));
        }
    }
    let results: Vec<Option<Rational>> = polygons
        .par_iter()
        .map(|p| match verify_polygon(p) {
            Ok(r) if r.passed() => Some(r.rhs),
            _ => None,
        })
        .collect();
    let pass = results.iter().flatten().count();
    let fail = results.len() - pass;
    let mut summary = json!({ "pass": pass, "fail": fail });
    if let (Some(min), Some(max)) = (results.iter().flatten().min(), results.iter().flatten().max()) {
        summary["min_rhs"] = json!(min);
        summary["max_rhs"] = json!(max);
    }
    print_line(&summary);
    if fail == 0 {
        Status::Pass
    } else {
        Status::Violation
    }
}

fn dedekind(h: i64, k: i64) -> Status {
    match dedekind_sum_fast(h, k) {
        Ok(s) => {
            println!("{s}");
            Status::Pass
        }
        Err(e) => input_error(e),
    }
}

fn draw(file: &Path, what: svg::Figure, out: &Path) -> Status {
    let reader = match File::open(file) {
        Ok(f) => BufReader::new(f),
        Err(e) => return input_error(format!("{}: {e}", file.display())),
    };
    let polygon = match read_json_stream::<LatticePolygon, _>(reader).next() {
        Some(Ok(p)) => p,
        Some(Err(e)) => return input_error(e),
        None => return input_error("no polygon in input"),
    };
    let text = match svg::render(&polygon, what) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    match std::fs::write(out, text) {
        Ok(()) => Status::Pass,
        Err(e) => input_error(format!("{}: {e}", out.display())),
    }
}

fn catalogue(out: Option<&Path>) -> Status {
    let cat = reflexive_catalogue();
    let written = match out {
        Some(path) => File::create(path).and_then(|f| write_ndjson(BufWriter::new(f), &cat)),
        None => write_ndjson(io::stdout().lock(), &cat),
    };
    match written {
        Ok(()) => Status::Pass,
        Err(e) => input_error(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Verify { file, per_cone } => verify(file.as_deref(), per_cone),
        Command::Cone {
            u1,
            u2,
            trace_reduction,
        } => cone(u1, u2, trace_reduction),
        Command::Batch {
            seed,
            count,
            bound,
            max_vertices,
            out,
        } => batch(seed, count, bound, max_vertices, out.as_deref()),
        Command::Dedekind { h, k } => dedekind(h, k),
        Command::Svg { file, what, out } => draw(&file, what, &out),
        Command::Catalogue { out } => catalogue(out.as_deref()),
    };
    status.into()
}
