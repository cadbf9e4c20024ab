//! Command-line surface: every library operation behind a subcommand, with
//! exact rationals serialized as strings (floats are lossy companions) and
//! CSV for the table-shaped outputs.
//!
//! Exit codes: 0 success, 2 input error, 3 resource error, 64 unknown
//! subcommand.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::action::{self, SMatrix, TorusPoint};
use crate::circle::{self, Character, CirclePoint, Level};
use crate::error::{Error, Result};
use crate::geometry::{Exponents, SPoint};
use crate::measure;
use crate::padic::{crt_solve, parse_rational, rational_to_f64, PrimeSet};
use crate::solenoid::{self, SolenoidPoint};

const BIT_LIMIT_ENV: &str = "SOLENOID_BIT_LIMIT";

#[derive(Parser)]
#[command(
    name = "solenoid",
    version,
    about = "Exact arithmetic on p-adic solenoids",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Comma-separated primes, strictly increasing (e.g. 2,3)
    #[arg(long)]
    primes: String,

    /// Comma-separated positive snowflake exponents; defaults to all ones
    #[arg(long)]
    exponents: Option<String>,

    /// Output format (scalar commands default to json, tables to csv)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Snowflake distance between two ambient points
    Dist {
        #[command(flatten)]
        common: Common,
        /// First point, coordinates separated by ';' (p-adic first, real last)
        #[arg(long)]
        a: String,
        /// Second point
        #[arg(long)]
        b: String,
    },
    /// Quotient (solenoid) distance between the cosets of two points
    Qdist {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Canonical fundamental-domain representative and audit shift
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
    },
    /// Do two points lie in the same coset?
    CosetEq {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Haar measure of a closed metric ball
    BallMeasure {
        #[command(flatten)]
        common: Common,
        /// Ball radius, a positive rational
        #[arg(long)]
        rho: String,
    },
    /// Measure-scaling factor of coordinatewise multiplication by a point
    Mu {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
    },
    /// Hausdorff dimension for the configured snowflake exponents
    Dim {
        #[command(flatten)]
        common: Common,
    },
    /// Covering numbers of the fundamental box at one or more radii
    Boxcount {
        #[command(flatten)]
        common: Common,
        /// Comma-separated radii in (0, 1), e.g. 1/8,1/64
        #[arg(long)]
        rho: String,
    },
    /// Draw a Haar-uniform point of the fundamental domain
    Sample {
        #[command(flatten)]
        common: Common,
        /// Digits per p-adic coordinate and bits of the real coordinate
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Iterate a matrix action on a torus point
    Orbit {
        #[command(flatten)]
        common: Common,
        /// Matrix rows separated by ';', entries by ',' (e.g. "1,1;0,1")
        #[arg(long)]
        matrix: String,
        /// Torus point: one ambient point per component, separated by '|'
        #[arg(long)]
        a: String,
        #[arg(long)]
        steps: usize,
    },
    /// Classify a matrix by its determinant
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: String,
    },
    /// Image and preimages of a level-circle point under an integer multiplier
    CircleMap {
        #[command(flatten)]
        common: Common,
        /// 1x1 integer matrix, e.g. "3"
        #[arg(long)]
        matrix: String,
        /// Comma-separated levels, one per prime
        #[arg(long)]
        level: String,
        /// Circle point in [0, p^l)
        #[arg(long)]
        point: String,
    },
    /// Residues of a point's canonical representative at a level
    PiL {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        #[arg(long)]
        level: String,
    },
    /// Exact character phase at a level and frequency
    Char {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        #[arg(long)]
        level: String,
        #[arg(long)]
        freq: i64,
    },
    /// Approximate a coset by a point of the real line
    ApproxLine {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        /// Tolerance, a positive rational
        #[arg(long)]
        eps: String,
    },
    /// Chinese remainder solve for residue;modulus pairs
    Crt {
        /// Pairs "z,m" separated by ';', e.g. "1,2;2,3"
        #[arg(long)]
        pairs: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

struct Context {
    primes: PrimeSet,
    exponents: Exponents,
    format: Option<Format>,
}

impl Context {
    fn from_common(common: &Common) -> Result<Self> {
        let primes = PrimeSet::parse(&common.primes)?;
        let exponents = match &common.exponents {
            Some(text) => Exponents::parse(text)?,
            None => Exponents::ones(primes.len()),
        };
        if exponents.len() != primes.len() {
            return Err(Error::LengthMismatch {
                expected: primes.len(),
                got: exponents.len(),
            });
        }
        Ok(Context {
            primes,
            exponents,
            format: common.format,
        })
    }

    fn point(&self, text: &str) -> Result<SPoint> {
        SPoint::parse(text, &self.primes)
    }

    fn reduced(&self, text: &str) -> Result<SolenoidPoint> {
        Ok(solenoid::reduce(&self.point(text)?))
    }

    fn torus_point(&self, text: &str) -> Result<TorusPoint> {
        let components = text
            .split('|')
            .map(|part| self.reduced(part))
            .collect::<Result<Vec<_>>>()?;
        TorusPoint::new(components)
    }
}

#[derive(Debug)]
enum Output {
    Record(Vec<(&'static str, Value)>),
    Table {
        columns: Vec<&'static str>,
        rows: Vec<Vec<String>>,
    },
}

fn json_record(fields: &[(&'static str, Value)]) -> String {
    let parts: Vec<String> = fields
        .iter()
        .map(|(k, v)| {
            format!(
                "{}:{}",
                serde_json::to_string(k).expect("plain key"),
                serde_json::to_string(v).expect("plain value")
            )
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

impl Output {
    fn render(&self, format: Format) -> String {
        match (self, format) {
            (Output::Record(fields), Format::Json) => json_record(fields),
            (Output::Record(fields), Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(fields.iter().map(|(k, _)| k.to_string()))
                    .expect("csv write");
                w.write_record(fields.iter().map(|(_, v)| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                }))
                .expect("csv write");
                String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
            }
            (Output::Table { columns, rows }, Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(columns.iter().map(|c| c.to_string()))
                    .expect("csv write");
                for row in rows {
                    w.write_record(row).expect("csv write");
                }
                String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
            }
            (Output::Table { columns, rows }, Format::Json) => {
                let objects: Vec<String> = rows
                    .iter()
                    .map(|row| {
                        let fields: Vec<String> = columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| {
                                format!(
                                    "{}:{}",
                                    serde_json::to_string(c).expect("plain key"),
                                    serde_json::to_string(v).expect("plain value")
                                )
                            })
                            .collect();
                        format!("{{{}}}", fields.join(","))
                    })
                    .collect();
                format!("[{}]", objects.join(","))
            }
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Output::Record(_) => Format::Json,
            Output::Table { .. } => Format::Csv,
        }
    }
}

fn exact(value: impl ToString) -> Value {
    Value::String(value.to_string())
}

fn float(value: f64) -> Value {
    serde_json::Number::from_f64(value)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn parse_crt_pairs(text: &str) -> Result<Vec<(num_bigint::BigInt, num_bigint::BigInt)>> {
    text.split(';')
        .map(|pair| {
            let mut it = pair.split(',').map(str::trim);
            let (z, m) = match (it.next(), it.next(), it.next()) {
                (Some(z), Some(m), None) => (z, m),
                _ => {
                    return Err(Error::Parse {
                        what: "residue,modulus pair",
                        token: pair.to_string(),
                    })
                }
            };
            let parse_int = |t: &str| {
                t.parse::<num_bigint::BigInt>().map_err(|_| Error::Parse {
                    what: "integer",
                    token: t.to_string(),
                })
            };
            Ok((parse_int(z)?, parse_int(m)?))
        })
        .collect()
}

fn orbit_bit_limit() -> Result<u64> {
    match std::env::var(BIT_LIMIT_ENV) {
        Ok(text) => text.parse::<u64>().map_err(|_| Error::Parse {
            what: "bit limit",
            token: text,
        }),
        Err(_) => Ok(action::DEFAULT_ORBIT_BIT_LIMIT),
    }
}

fn execute(command: &Command) -> Result<(Output, Option<Format>)> {
    match command {
        Command::Dist { common, a, b } => {
            let ctx = Context::from_common(common)?;
            let d = ctx.point(a)?.snowflake_dist(&ctx.point(b)?, &ctx.exponents)?;
            Ok((
                Output::Record(vec![("distance", exact(&d)), ("float", float(d.to_f64()))]),
                ctx.format,
            ))
        }
        Command::Qdist { common, a, b } => {
            let ctx = Context::from_common(common)?;
            let d = solenoid::quotient_dist(&ctx.point(a)?, &ctx.point(b)?, &ctx.exponents)?;
            Ok((
                Output::Record(vec![("distance", exact(&d)), ("float", float(d.to_f64()))]),
                ctx.format,
            ))
        }
        Command::Reduce { common, a } => {
            let ctx = Context::from_common(common)?;
            let out = ctx.reduced(a)?;
            Ok((
                Output::Record(vec![
                    ("rep", exact(out.rep())),
                    ("shift", exact(out.shift())),
                ]),
                ctx.format,
            ))
        }
        Command::CosetEq { common, a, b } => {
            let ctx = Context::from_common(common)?;
            let equal = solenoid::coset_eq(&ctx.point(a)?, &ctx.point(b)?)?;
            Ok((
                Output::Record(vec![("equal", Value::Bool(equal))]),
                ctx.format,
            ))
        }
        Command::BallMeasure { common, rho } => {
            let ctx = Context::from_common(common)?;
            let m = measure::ball_measure(&parse_rational(rho)?, &ctx.primes, &ctx.exponents)?;
            Ok((
                Output::Record(vec![
                    ("measure", exact(&m)),
                    ("float", float(rational_to_f64(&m))),
                ]),
                ctx.format,
            ))
        }
        Command::Mu { common, a } => {
            let ctx = Context::from_common(common)?;
            let mu = measure::scaling_factor(&ctx.point(a)?)?;
            Ok((
                Output::Record(vec![
                    ("mu", exact(&mu)),
                    ("float", float(rational_to_f64(&mu))),
                ]),
                ctx.format,
            ))
        }
        Command::Dim { common } => {
            let ctx = Context::from_common(common)?;
            let dim = measure::hausdorff_dimension(&ctx.primes, &ctx.exponents)?;
            Ok((
                Output::Record(vec![("dimension", exact(&dim))]),
                ctx.format,
            ))
        }
        Command::Boxcount { common, rho } => {
            let ctx = Context::from_common(common)?;
            let target = measure::hausdorff_dimension(&ctx.primes, &ctx.exponents)?;
            let mut rows = Vec::new();
            for token in rho.split(',') {
                let radius = parse_rational(token)?;
                let (count, estimate) =
                    measure::box_count(&radius, &ctx.primes, &ctx.exponents)?;
                let ball = measure::ball_measure(&radius, &ctx.primes, &ctx.exponents)?;
                rows.push(vec![
                    radius.to_string(),
                    count.to_string(),
                    ball.to_string(),
                    estimate.to_string(),
                    target.to_string(),
                ]);
            }
            Ok((
                Output::Table {
                    columns: vec!["rho", "N", "measure", "estimate", "target_dim"],
                    rows,
                },
                ctx.format,
            ))
        }
        Command::Sample {
            common,
            depth,
            seed,
        } => {
            let ctx = Context::from_common(common)?;
            let out = measure::sample_haar(&ctx.primes, *depth, *seed)?;
            Ok((
                Output::Record(vec![
                    ("rep", exact(out.rep())),
                    ("shift", exact(out.shift())),
                ]),
                ctx.format,
            ))
        }
        Command::Orbit {
            common,
            matrix,
            a,
            steps,
        } => {
            let ctx = Context::from_common(common)?;
            let t = SMatrix::parse(matrix, &ctx.primes)?;
            let x = ctx.torus_point(a)?;
            let points = action::orbit(&t, &x, *steps, orbit_bit_limit()?)?;
            let rows = points
                .iter()
                .enumerate()
                .flat_map(|(step, point)| {
                    point.components().iter().enumerate().map(move |(c, comp)| {
                        vec![
                            step.to_string(),
                            c.to_string(),
                            comp.rep().to_string(),
                            rational_to_f64(comp.rep().real_coord()).to_string(),
                        ]
                    })
                })
                .collect();
            Ok((
                Output::Table {
                    columns: vec!["step", "component", "rep", "real_float"],
                    rows,
                },
                ctx.format,
            ))
        }
        Command::Classify { common, matrix } => {
            let ctx = Context::from_common(common)?;
            let t = SMatrix::parse(matrix, &ctx.primes)?;
            Ok((
                Output::Record(vec![
                    ("det", exact(t.det())),
                    ("class", exact(t.classify())),
                ]),
                ctx.format,
            ))
        }
        Command::CircleMap {
            common,
            matrix,
            level,
            point,
        } => {
            let ctx = Context::from_common(common)?;
            let t = SMatrix::parse(matrix, &ctx.primes)?;
            let level = Level::parse(level, &ctx.primes)?;
            let s = CirclePoint::new(parse_rational(point)?, &level)?;
            let out = action::induced_circle_map(&t, &level, &s)?;
            let preimages =
                Value::Array(out.preimages.iter().map(exact).collect::<Vec<Value>>());
            Ok((
                Output::Record(vec![
                    ("image", exact(&out.image)),
                    ("float", float(rational_to_f64(&out.image))),
                    ("preimages", preimages),
                ]),
                ctx.format,
            ))
        }
        Command::PiL { common, a, level } => {
            let ctx = Context::from_common(common)?;
            let level = Level::parse(level, &ctx.primes)?;
            let out = circle::project(&ctx.reduced(a)?, &level)?;
            let residues =
                Value::Array(out.residues().iter().map(exact).collect::<Vec<Value>>());
            Ok((
                Output::Record(vec![
                    ("residues", residues),
                    ("real", exact(out.real_coord())),
                ]),
                ctx.format,
            ))
        }
        Command::Char {
            common,
            a,
            level,
            freq,
        } => {
            let ctx = Context::from_common(common)?;
            let level = Level::parse(level, &ctx.primes)?;
            let chi = Character::new(level, *freq);
            let phase = chi.eval(&ctx.reduced(a)?)?;
            Ok((
                Output::Record(vec![
                    ("phase", exact(&phase)),
                    ("float", float(rational_to_f64(&phase))),
                ]),
                ctx.format,
            ))
        }
        Command::ApproxLine { common, a, eps } => {
            let ctx = Context::from_common(common)?;
            let witness =
                circle::line_approximation(&ctx.reduced(a)?, &parse_rational(eps)?, &ctx.exponents)?;
            Ok((
                Output::Record(vec![
                    ("s", exact(&witness.s)),
                    ("level", exact(&witness.level)),
                    ("distance", exact(&witness.distance)),
                    ("float", float(witness.distance.to_f64())),
                ]),
                ctx.format,
            ))
        }
        Command::Crt { pairs, format } => {
            let pairs = parse_crt_pairs(pairs)?;
            let solution = crt_solve(&pairs)?;
            let modulus: num_bigint::BigInt = pairs.iter().map(|(_, m)| m).product();
            Ok((
                Output::Record(vec![
                    ("solution", exact(&solution)),
                    ("modulus", exact(&modulus)),
                ]),
                *format,
            ))
        }
    }
}

/// Parse `args` and run one subcommand; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand => 64,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((output, format)) => {
            let format = format.unwrap_or_else(|| output.default_format());
            let rendered = output.render(format);
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", rendered.trim_end_matches('\n'));
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_resource() {
                3
            } else {
                2
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let mut full = vec!["solenoid"];
        full.extend_from_slice(args);
        let cli = Cli::try_parse_from(&full).expect("parse");
        let (output, format) = execute(&cli.command).expect("execute");
        let format = format.unwrap_or_else(|| output.default_format());
        output.render(format).trim_end_matches('\n').to_string()
    }

    #[test]
    fn dist_matches_spec_shape() {
        let out = run_ok(&["dist", "--primes", "2,3", "--a", "1/2;1;0", "--b", "0;0;0"]);
        assert_eq!(out, r#"{"distance":"2","float":2.0}"#);
    }

    #[test]
    fn dim_matches_spec_shape() {
        let out = run_ok(&["dim", "--primes", "2,3", "--exponents", "2,2"]);
        assert_eq!(out, r#"{"dimension":"2"}"#);
    }

    #[test]
    fn qdist_matches_spec_shape() {
        let out = run_ok(&["qdist", "--primes", "2", "--a", "0;9/10", "--b", "0;0"]);
        assert_eq!(out, r#"{"distance":"9/10","float":0.9}"#);
    }

    #[test]
    fn reduce_emits_rep_and_shift() {
        let out = run_ok(&["reduce", "--primes", "2,3", "--a", "3/4;0;0"]);
        assert_eq!(out, r#"{"rep":"1;1/4;1/4","shift":"-1/4"}"#);
    }

    #[test]
    fn crt_without_primes_flag() {
        let out = run_ok(&["crt", "--pairs", "3,8;7,9"]);
        assert_eq!(out, r#"{"solution":"43","modulus":"72"}"#);
    }

    #[test]
    fn boxcount_emits_csv_table() {
        let out = run_ok(&["boxcount", "--primes", "2", "--rho", "1/8"]);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("rho,N,measure,estimate,target_dim"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("1/8,32,1/32,1.666666"));
        assert!(row.ends_with(",2"));
    }

    #[test]
    fn record_as_csv_when_requested() {
        let out = run_ok(&[
            "dim",
            "--primes",
            "2,3",
            "--exponents",
            "2,2",
            "--format",
            "csv",
        ]);
        assert_eq!(out, "dimension\n2");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["solenoid", "no-such-command"]), 64);
        assert_eq!(run(["solenoid", "dim", "--primes", "2,x"]), 2);
        assert_eq!(run(["solenoid", "dim"]), 2); // missing required flag
    }

    #[test]
    fn malformed_tokens_name_the_offender() {
        let cli = Cli::try_parse_from(["solenoid", "dist", "--primes", "2", "--a", "1/0;0", "--b", "0;0"])
            .unwrap();
        let err = execute(&cli.command).unwrap_err();
        assert!(err.to_string().contains("1/0"));
    }
}
