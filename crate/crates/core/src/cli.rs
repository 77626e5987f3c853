//! Command-line front end: build curve files, sample and combine points,
//! run the oracle cross-checks and the operation-count benchmark.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cantor::{cantor_add, cantor_neg, from_point_eq, random_mumford, to_subspace};
use crate::curve::{CurveModel, HyperellipticCurve, HyperellipticSpec, ModelKind};
use crate::error::{Error, Result};
use crate::jacobian::{
    add, addflip, addflip_general, equal, equal_dim, membership_point, negate, random_point, sub, zero, JacobianPoint,
    PointFile,
};
use crate::linalg::Subspace;
use crate::poly::Poly;

#[derive(Parser, Debug)]
#[command(name = "kmjac", version, about = "Jacobian arithmetic by linear algebra on section spaces")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a hyperelliptic curve model y^2 = f(x) and write it as JSON.
    New {
        #[arg(long)]
        p: u64,
        /// Coefficients of f, constant term first (x^5 + 3x + 1 is 1,3,0,0,0,1).
        #[arg(long, value_delimiter = ',', required = true)]
        f_coeffs: Vec<u64>,
        #[arg(long, default_value = "large", value_parser = parse_model)]
        model: ModelKind,
        /// Extra multiplication tables as m:n pairs, e.g. 3:6.
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        extra_tables: Vec<(u32, u32)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a random point supported on rational points.
    Random {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, env = "KMJAC_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a group operation or test to point files.
    Op {
        op: OpKind,
        #[arg(long)]
        curve: PathBuf,
        points: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Median field-operation counts and wall time per operation and genus.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "2,4,6,8")]
        genus_list: Vec<u32>,
        #[arg(long, default_value_t = 101)]
        p: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_value = "large,medium,small", value_parser = parse_model)]
        models: Vec<ModelKind>,
        #[arg(long, env = "KMJAC_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Cross-check a curve file against Cantor's algorithm.
    Verify {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, env = "KMJAC_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    Add,
    Sub,
    Neg,
    Addflip,
    Eq,
    Member,
}

fn parse_model(s: &str) -> std::result::Result<ModelKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pair(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected m:n, got '{s}'"))?;
    let a = a.trim().parse().map_err(|_| format!("bad index '{a}'"))?;
    let b = b.trim().parse().map_err(|_| format!("bad index '{b}'"))?;
    Ok((a, b))
}

/// Runs the CLI on `args` (including the program name), writing normal
/// output to `out`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                eprint!("{e}");
                Ok(())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::New {
            p,
            f_coeffs,
            model,
            extra_tables,
            out: path,
        } => {
            let curve = HyperellipticCurve::new(&HyperellipticSpec::new(p, f_coeffs))?;
            let c = curve.model_with_tables(model, &extra_tables)?;
            emit(out, path.as_deref(), &c.to_json())?;
            say(
                out,
                &format!(
                    "genus={} d0={} N={} dimV={}",
                    c.genus(),
                    c.d0(),
                    c.degree_n(),
                    c.dim_v()
                ),
                path.is_some(),
            )?;
            Ok(true)
        }
        Command::Random { curve, seed, out: path } => {
            let c = load_curve(&curve)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, _) = random_point(&c, &mut rng)?;
            emit(out, path.as_deref(), &point_json(&c, &x))?;
            Ok(true)
        }
        Command::Op {
            op,
            curve,
            points,
            out: path,
        } => {
            let c = load_curve(&curve)?;
            let arity = match op {
                OpKind::Neg | OpKind::Member => 1,
                _ => 2,
            };
            if points.len() != arity {
                return Err(Error::Format(format!(
                    "{op:?} takes {arity} point file(s), got {}",
                    points.len()
                )));
            }
            if op == OpKind::Member {
                let w = load_subspace(&c, &points[0])?;
                writeln!(out, "{}", membership_point(&c, &w)?).map_err(io)?;
                return Ok(true);
            }
            let xs = points.iter().map(|p| load_point(&c, p)).collect::<Result<Vec<_>>>()?;
            let result = match op {
                OpKind::Add => add(&c, &xs[0], &xs[1])?,
                OpKind::Sub => sub(&c, &xs[0], &xs[1])?,
                OpKind::Addflip => addflip(&c, &xs[0], &xs[1])?,
                OpKind::Neg => negate(&c, &xs[0])?,
                OpKind::Eq => {
                    writeln!(out, "{}", equal(&c, &xs[0], &xs[1])?).map_err(io)?;
                    return Ok(true);
                }
                OpKind::Member => unreachable!(),
            };
            emit(out, path.as_deref(), &point_json(&c, &result))?;
            Ok(true)
        }
        Command::Bench {
            genus_list,
            p,
            trials,
            models,
            seed,
            csv,
        } => {
            let rows = bench(&genus_list, p, trials, &models, seed)?;
            let text = to_csv(&rows);
            emit(out, csv.as_deref(), &text)?;
            for model in &models {
                for op in BENCH_OPS {
                    let pts: Vec<(f64, f64)> = rows
                        .iter()
                        .filter(|r| r.model == *model && r.op == op)
                        .map(|r| (r.genus as f64, r.field_ops_median as f64))
                        .collect();
                    if pts.len() >= 2 {
                        writeln!(out, "# slope model={model} op={op} {:.3}", loglog_slope(&pts)).map_err(io)?;
                    }
                }
            }
            Ok(true)
        }
        Command::Verify { curve, trials, seed } => {
            let c = match load_curve(&curve) {
                Ok(c) => c,
                Err(Error::Validation(msg)) => {
                    writeln!(out, "FAIL tables: {msg}").map_err(io)?;
                    return Ok(false);
                }
                Err(e) => return Err(e),
            };
            let report = verify(&c, trials, seed)?;
            for line in &report.lines {
                writeln!(out, "{line}").map_err(io)?;
            }
            writeln!(
                out,
                "{} ({} checks, {} failed)",
                if report.passed() { "PASS" } else { "FAIL" },
                report.checks,
                report.failures
            )
            .map_err(io)?;
            Ok(report.passed())
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Format(e.to_string())
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn say(out: &mut dyn Write, line: &str, to_stdout: bool) -> Result<()> {
    if to_stdout {
        writeln!(out, "{line}").map_err(io)
    } else {
        eprintln!("{line}");
        Ok(())
    }
}

/// Reads a curve file and runs the table checks on it.
pub fn load_curve(path: &Path) -> Result<CurveModel> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    let c = CurveModel::from_json(&text)?;
    c.validate().into_result()?;
    Ok(c)
}

fn read_point_file(path: &Path) -> Result<PointFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn load_point(c: &CurveModel, path: &Path) -> Result<JacobianPoint> {
    JacobianPoint::from_file(c, &read_point_file(path)?)
}

fn load_subspace(c: &CurveModel, path: &Path) -> Result<Subspace> {
    let file = read_point_file(path)?;
    if file.kind != c.kind() {
        return Err(Error::ModelMismatch(format!("point is for the {} model", file.kind)));
    }
    let m = crate::linalg::Matrix::from_rows(c.field(), c.dim_v(), &file.basis)?;
    Subspace::from_rref(m)
}

pub fn point_json(c: &CurveModel, x: &JacobianPoint) -> String {
    let mut s = serde_json::to_string(&x.to_file(c)).expect("serializable");
    s.push('\n');
    s
}

/// `addflip_general` is the large-model addflip without the intersection
/// shortcut; in the other models it is the same as `addflip`.
pub const BENCH_OPS: [&str; 4] = ["addflip", "addflip_general", "add", "eq"];

pub const CSV_HEADER: &str = "genus,model,op,field_ops_median,wall_ms_median";

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub genus: u32,
    pub model: ModelKind,
    pub op: &'static str,
    pub field_ops_median: u64,
    pub wall_ms_median: f64,
}

/// `y^2 = x^(2g+1) + c1 x + c0` with the smallest `(c1, c0)` making it squarefree.
pub fn bench_curve(genus: u32, p: u64) -> Result<HyperellipticCurve> {
    for c1 in 1..p {
        for c0 in 1..p {
            let mut f = vec![0u64; (2 * genus + 2) as usize];
            f[0] = c0;
            f[1] = c1;
            f[(2 * genus + 1) as usize] = 1;
            match HyperellipticCurve::new(&HyperellipticSpec::new(p, f)) {
                Ok(c) => return Ok(c),
                Err(Error::SingularCurve) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Err(Error::SingularCurve)
}

fn median_u64(v: &mut [u64]) -> u64 {
    v.sort_unstable();
    v[v.len() / 2]
}

fn median_f64(v: &mut [f64]) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    v[v.len() / 2]
}

/// Counts field operations of addflip, add and eq on random point pairs.
pub fn bench(genus_list: &[u32], p: u64, trials: usize, models: &[ModelKind], seed: u64) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    if trials == 0 {
        return Ok(rows);
    }
    for &g in genus_list {
        let curve = bench_curve(g, p)?;
        for &kind in models {
            let c = curve.model(kind)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((g as u64) << 8) ^ kind as u64);
            let inputs: Vec<(JacobianPoint, JacobianPoint)> = (0..trials)
                .map(|_| Ok((random_point(&c, &mut rng)?.0, random_point(&c, &mut rng)?.0)))
                .collect::<Result<_>>()?;
            for op in BENCH_OPS {
                let mut counts = Vec::with_capacity(trials);
                let mut times = Vec::with_capacity(trials);
                for (x, y) in &inputs {
                    c.field().reset_count();
                    let start = Instant::now();
                    match op {
                        "addflip" => {
                            addflip(&c, x, y)?;
                        }
                        "addflip_general" => {
                            addflip_general(&c, x, y)?;
                        }
                        "add" => {
                            add(&c, x, y)?;
                        }
                        _ => {
                            equal(&c, x, y)?;
                        }
                    }
                    times.push(start.elapsed().as_secs_f64() * 1e3);
                    counts.push(c.field().op_count());
                }
                rows.push(BenchRow {
                    genus: g,
                    model: kind,
                    op,
                    field_ops_median: median_u64(&mut counts),
                    wall_ms_median: median_f64(&mut times),
                });
            }
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{:.3}\n",
            r.genus, r.model, r.op, r.field_ops_median, r.wall_ms_median
        ));
    }
    s
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Format("missing benchmark CSV header".into()));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 5 {
                return Err(Error::Format(format!("bad CSV row '{l}'")));
            }
            let bad = |_| Error::Format(format!("bad CSV row '{l}'"));
            let op = BENCH_OPS
                .iter()
                .find(|o| **o == f[2])
                .ok_or_else(|| Error::Format(format!("unknown op '{}'", f[2])))?;
            Ok(BenchRow {
                genus: f[0].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                model: f[1].parse()?,
                op,
                field_ops_median: f[3].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                wall_ms_median: f[4].parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            })
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Outcome of [`verify`]: one line per battery.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub lines: Vec<String>,
    pub checks: usize,
    pub failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn battery(&mut self, name: &str, results: Vec<Result<bool>>) {
        let total = results.len();
        let mut bad = Vec::new();
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(true) => {}
                Ok(false) => bad.push(format!("trial {i}")),
                Err(e) => bad.push(format!("trial {i}: {e}")),
            }
        }
        self.checks += total;
        self.failures += bad.len();
        if bad.is_empty() {
            self.lines.push(format!("PASS {name} ({total}/{total})"));
        } else {
            self.lines
                .push(format!("FAIL {name} ({}/{total}): {}", total - bad.len(), bad.join("; ")));
        }
    }
}

/// Bridge homomorphism, group axioms and membership batteries against the
/// Cantor oracle on the model's own curve.
pub fn verify(c: &CurveModel, trials: usize, seed: u64) -> Result<VerifyReport> {
    let curve = c
        .hyperelliptic()
        .ok_or_else(|| Error::InvalidCurve("verification needs the curve equation".into()))?
        .clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::default();
    let mut samples = Vec::with_capacity(trials);
    for _ in 0..trials {
        let xs = [
            random_mumford(&curve, &mut rng)?,
            random_mumford(&curve, &mut rng)?,
            random_mumford(&curve, &mut rng)?,
        ];
        samples.push(xs);
    }
    let pt = |m| to_subspace(c, m);
    let eq_ok = |a: &JacobianPoint, b: &JacobianPoint| -> Result<bool> {
        let d = equal_dim(c, a, b)?;
        if d > 1 {
            return Err(Error::Inconsistent(format!("equality space of dimension {d}")));
        }
        Ok(d == 1)
    };

    report.battery(
        "bridge add",
        samples
            .iter()
            .map(|[x, y, _]| from_point_eq(c, &add(c, &pt(x)?, &pt(y)?)?, &cantor_add(&curve, x, y)?))
            .collect(),
    );
    report.battery(
        "bridge neg",
        samples
            .iter()
            .map(|[x, _, _]| from_point_eq(c, &negate(c, &pt(x)?)?, &cantor_neg(&curve, x)?))
            .collect(),
    );
    report.battery(
        "bridge addflip",
        samples
            .iter()
            .map(|[x, y, _]| {
                let expect = cantor_neg(&curve, &cantor_add(&curve, x, y)?)?;
                from_point_eq(c, &addflip(c, &pt(x)?, &pt(y)?)?, &expect)
            })
            .collect(),
    );
    report.battery(
        "bridge sub",
        samples
            .iter()
            .map(|[x, y, _]| {
                let expect = cantor_add(&curve, x, &cantor_neg(&curve, y)?)?;
                from_point_eq(c, &sub(c, &pt(x)?, &pt(y)?)?, &expect)
            })
            .collect(),
    );
    let z = zero(c);
    report.battery(
        "associativity",
        samples
            .iter()
            .map(|[x, y, w]| {
                let (x, y, w) = (pt(x)?, pt(y)?, pt(w)?);
                let left = add(c, &add(c, &x, &y)?, &w)?;
                let right = add(c, &x, &add(c, &y, &w)?)?;
                eq_ok(&left, &right)
            })
            .collect(),
    );
    report.battery(
        "commutativity",
        samples
            .iter()
            .map(|[x, y, _]| {
                let (x, y) = (pt(x)?, pt(y)?);
                eq_ok(&add(c, &x, &y)?, &add(c, &y, &x)?)
            })
            .collect(),
    );
    report.battery(
        "identity",
        samples
            .iter()
            .map(|[x, _, _]| {
                let x = pt(x)?;
                eq_ok(&add(c, &x, &z)?, &x)
            })
            .collect(),
    );
    report.battery(
        "inverse",
        samples
            .iter()
            .map(|[x, _, _]| {
                let x = pt(x)?;
                eq_ok(&add(c, &x, &negate(c, &x)?)?, &z)
            })
            .collect(),
    );
    report.battery(
        "membership accepts points",
        samples
            .iter()
            .map(|[x, _, _]| membership_point(c, pt(x)?.w()))
            .collect(),
    );
    let d0 = c.d0() as usize;
    let randoms: Vec<Subspace> = (0..trials)
        .map(|_| Subspace::random(c.field(), c.dim_v(), c.dim_v() - d0, &mut rng))
        .collect();
    report.battery(
        "membership rejects random subspaces",
        randoms.iter().map(|w| membership_point(c, w).map(|b| !b)).collect(),
    );
    // rational-point sampling agrees with the oracle class of the same points
    report.battery(
        "rational point sampling",
        (0..trials)
            .map(|_| {
                let seed = rng.gen();
                let (x, pts) = random_point(c, &mut ChaCha8Rng::seed_from_u64(seed))?;
                let mut m = crate::cantor::MumfordDivisor::identity(&curve);
                for (px, py) in pts {
                    let q = crate::cantor::MumfordDivisor {
                        a: Poly::linear_root(curve.field(), px),
                        b: Poly::constant(curve.field(), py),
                    };
                    m = cantor_add(&curve, &m, &q)?;
                }
                from_point_eq(c, &x, &m)
            })
            .collect(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [2.0f64, 4.0, 6.0, 8.0].iter().map(|&g| (g, 7.0 * g.powi(4))).collect();
        assert!((loglog_slope(&pts) - 4.0).abs() < 1e-9);
    }

    #[test]
    fn csv_roundtrip() {
        let rows = vec![
            BenchRow {
                genus: 2,
                model: ModelKind::Large,
                op: "addflip",
                field_ops_median: 12345,
                wall_ms_median: 1.5,
            },
            BenchRow {
                genus: 4,
                model: ModelKind::Small,
                op: "eq",
                field_ops_median: 99,
                wall_ms_median: 0.25,
            },
        ];
        let text = to_csv(&rows);
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(parse_csv(&text).unwrap(), rows);
        assert_eq!(to_csv(&parse_csv(&text).unwrap()), text);
    }

    #[test]
    fn bench_curves_are_squarefree() {
        for g in [1, 2, 4, 6, 8] {
            let c = bench_curve(g, 101).unwrap();
            assert_eq!(c.genus(), g);
        }
    }
}
