//! `genproj`: class enumeration, CRT lifting and SL lifting from the shell.
//!
//! Every invocation prints one JSON document on stdout. Domain errors exit
//! with status 1 and an `{"error": {"kind", "message"}}` document; usage
//! errors exit with status 2.

mod parse;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use genproj_core::acceptance::{self, CriterionReport};
use genproj_core::crt_proj::{crt_bijectivity_check, crt_lift, crt_reduce, CoMaximalSystem};
use genproj_core::matrix::IntMatrix;
use genproj_core::projspace::{
    admissible_count, canonicalize, class_size, cross_relation_eq, eq, eq_witness, ClassTable, ExponentVector, DEFAULT_MAX_TUPLES,
};
use genproj_core::sl_lift::{sl2_lift, sl_lift_general, sl_lift_sigma, RowTargetSystem};
use genproj_core::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::parse::{ideal_from, ExpList, ExpMatrix, List, PointArg};

#[derive(Parser, Debug)]
#[command(name = "genproj", version, about = "Generalized projective spaces over ideals of the integers")]
struct Cli {
    /// Add wall-clock timings ("elapsed_ms") to the output.
    #[arg(long, global = true)]
    timing: bool,

    /// Largest number of residue tuples an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TUPLES)]
    max_tuples: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every class of PF^{k,m} over (n) with its size.
    Classes {
        #[arg(long = "mod")]
        modulus: BigInt,
        #[arg(long)]
        dim: usize,
        /// Exponents m_0..m_k, default all ones.
        #[arg(long)]
        exp: Option<ExpList>,
    },
    /// Count the classes of PF^{k,m} over (n).
    Count {
        #[arg(long = "mod")]
        modulus: BigInt,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        exp: Option<ExpList>,
    },
    /// Canonical representative of a point.
    Canon {
        point: PointArg,
        #[arg(long)]
        exp: Option<ExpList>,
    },
    /// Decide whether two points are the same class.
    Eq {
        p: PointArg,
        q: PointArg,
        #[arg(long)]
        exp: Option<ExpList>,
    },
    /// Lift classes over pairwise coprime ideals to their product.
    CrtLift {
        #[arg(long, num_args = 1.., required = true)]
        targets: Vec<PointArg>,
        #[arg(long)]
        exp: Option<ExpList>,
    },
    /// Check that reduction to coprime factors is a bijection on classes.
    CrtCheck {
        /// Pairwise coprime generators, e.g. 3,5.
        #[arg(long)]
        factors: List<BigInt>,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        exp: Option<ExpList>,
    },
    /// Determinant-one integer matrix whose rows lie in the target classes.
    SlLift {
        #[arg(long, num_args = 1.., required = true)]
        targets: Vec<PointArg>,
        /// One exponent row per target, e.g. "1,2;2,1". Default all ones.
        #[arg(long)]
        exps: Option<ExpMatrix>,
        /// Permutation with exponent 1 at (i, sigma(i)), e.g. 1,0.
        #[arg(long)]
        sigma: Option<List<usize>>,
    },
    /// Two-row lift for one-dimensional classes with arbitrary exponents.
    Sl2Lift {
        #[arg(long)]
        t1: PointArg,
        #[arg(long)]
        t2: PointArg,
        #[arg(long)]
        exp1: Option<ExpList>,
        #[arg(long)]
        exp2: Option<ExpList>,
    },
    /// Run the oracle agreement suite and the acceptance criteria.
    Verify {
        /// Suites to run by number (0 is the oracle agreement suite). Default all.
        #[arg(long)]
        criteria: Option<List<u8>>,
    },
}

struct Output {
    inputs: Value,
    result: Value,
    verified: bool,
}

fn exponents(exp: &Option<ExpList>, width: usize) -> Result<ExponentVector> {
    match exp {
        Some(e) => e.vector(),
        None => Ok(ExponentVector::ones(width)),
    }
}

fn rep_string(rep: &[u64]) -> String {
    let cells: Vec<String> = rep.iter().map(u64::to_string).collect();
    format!("({})", cells.join(","))
}

fn tuple_string(v: &[BigInt], modulus: &impl std::fmt::Display) -> String {
    let cells: Vec<String> = v.iter().map(BigInt::to_string).collect();
    format!("[{}] mod {modulus}", cells.join(":"))
}

fn matrix_json(m: &IntMatrix) -> Value {
    json!(m.to_strings())
}

fn point_width(points: &[&PointArg], fallback: usize) -> usize {
    points.iter().find_map(|p| p.width()).unwrap_or(fallback)
}

fn classes(modulus: &BigInt, dim: usize, exp: &Option<ExpList>, max_tuples: u64, list: bool) -> Result<Output> {
    let ideal = ideal_from(modulus)?;
    let m = exponents(exp, dim + 1)?;
    let table = ClassTable::build(ideal, dim, &m, max_tuples)?;
    let n = ideal.generator();
    let admissible = if ideal.is_unit() { 1 } else { admissible_count(n, dim) };
    let total: u64 = table.sizes().iter().sum();
    let mut result = json!({ "count": table.class_count(), "admissible_tuples": admissible });
    if list {
        result["representatives"] = json!(table.representatives().iter().map(|r| rep_string(r)).collect::<Vec<_>>());
        result["sizes"] = json!(table.sizes());
    }
    Ok(Output { inputs: json!({ "mod": n, "dim": dim, "exp": m.as_slice() }), result, verified: total == admissible })
}

fn canon(point: &PointArg, exp: &Option<ExpList>) -> Result<Output> {
    let m = exponents(exp, point_width(&[point], 1))?;
    let p = point.to_point(&m)?;
    let c = canonicalize(&p);
    Ok(Output {
        inputs: json!({ "point": p.to_string(), "exp": m.as_slice() }),
        result: json!({ "canonical": c.to_string(), "rep": c.rep(), "class_size": class_size(&c) }),
        verified: eq(&p, &c)?,
    })
}

fn equal(p: &PointArg, q: &PointArg, exp: &Option<ExpList>) -> Result<Output> {
    let m = exponents(exp, point_width(&[p, q], 1))?;
    let (a, b) = (p.to_point(&m)?, q.to_point(&m)?);
    if a.ideal() != b.ideal() {
        return Err(Error::InvalidInput(format!("{a} and {b} are over different ideals")));
    }
    let witness = eq_witness(&a, &b)?;
    let canonical_match = canonicalize(&a).rep() == canonicalize(&b).rep();
    let mut result = json!({ "equal": witness.is_some(), "witness": witness });
    let mut verified = canonical_match == witness.is_some();
    if m.as_slice().iter().all(|&e| e == 1) && !a.is_singleton() {
        let (u, v): (Vec<BigInt>, Vec<BigInt>) =
            (a.rep().iter().map(|&x| x.into()).collect(), b.rep().iter().map(|&x| x.into()).collect());
        let cross = cross_relation_eq(&u, &v, a.ideal())?;
        result["cross_relation"] = json!(cross);
        verified &= cross == witness.is_some();
    }
    Ok(Output { inputs: json!({ "p": a.to_string(), "q": b.to_string(), "exp": m.as_slice() }), result, verified })
}

fn crt_lift_cmd(targets: &[PointArg], exp: &Option<ExpList>) -> Result<Output> {
    let m = exponents(exp, point_width(&targets.iter().collect::<Vec<_>>(), 1))?;
    let points = targets.iter().map(|t| t.to_point(&m)).collect::<Result<Vec<_>>>()?;
    let sys = CoMaximalSystem::new(points.iter().map(|p| *p.ideal()).collect())?;
    let lift = crt_lift(&points, &sys, &m)?;
    let back = crt_reduce(&lift.point, &sys)?;
    let verified = back.iter().zip(&points).map(|(b, t)| eq(b, t)).collect::<Result<Vec<_>>>()?.into_iter().all(|x| x);
    Ok(Output {
        inputs: json!({ "targets": points.iter().map(ToString::to_string).collect::<Vec<_>>(), "exp": m.as_slice() }),
        result: json!({
            "representative": tuple_string(&lift.representative, &sys.product().generator()),
            "canonical": lift.point.to_string(),
        }),
        verified,
    })
}

fn crt_check(factors: &[BigInt], dim: usize, exp: &Option<ExpList>, max_tuples: u64) -> Result<Output> {
    let m = exponents(exp, dim + 1)?;
    let ideals = factors.iter().map(ideal_from).collect::<Result<Vec<_>>>()?;
    let sys = CoMaximalSystem::new(ideals)?;
    let report = crt_bijectivity_check(&sys, dim, &m, max_tuples)?;
    let product: usize = report.factor_counts.iter().product();
    let verified = report.bijective && report.lift_inverts && report.product_count == product;
    Ok(Output {
        inputs: json!({
            "factors": sys.ideals().iter().map(|i| i.generator()).collect::<Vec<_>>(),
            "dim": dim,
            "exp": m.as_slice(),
        }),
        result: serde_json::to_value(&report).map_err(|e| Error::InvalidInput(e.to_string()))?,
        verified,
    })
}

fn sl_lift_cmd(targets: &[PointArg], exps: &Option<ExpMatrix>, sigma: &Option<List<usize>>) -> Result<Output> {
    let size = targets.len();
    let rows: Vec<ExponentVector> = match exps {
        Some(ExpMatrix(rows)) => {
            if rows.len() != size {
                return Err(Error::InvalidInput(format!("{} exponent rows for {size} targets", rows.len())));
            }
            rows.iter().map(ExpList::vector).collect::<Result<_>>()?
        }
        None => vec![ExponentVector::ones(size); size],
    };
    let points = targets.iter().zip(&rows).map(|(t, m)| t.to_point(m)).collect::<Result<Vec<_>>>()?;
    let sys = RowTargetSystem::new(points)?;
    let (matrix, method) = match sigma {
        Some(List(s)) => (sl_lift_sigma(&sys, s)?, "sigma"),
        None => (sl_lift_general(&sys)?, "general"),
    };
    let verified = sys.verify(&matrix).is_ok();
    Ok(Output {
        inputs: json!({
            "targets": sys.targets().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "exps": sys.exponent_matrix(),
            "sigma": sigma.as_ref().map(|List(s)| s.clone()),
        }),
        result: json!({ "matrix": matrix_json(&matrix), "determinant": matrix.det().to_string(), "method": method }),
        verified,
    })
}

fn sl2_lift_cmd(t1: &PointArg, t2: &PointArg, exp1: &Option<ExpList>, exp2: &Option<ExpList>) -> Result<Output> {
    let p1 = t1.to_point(&exponents(exp1, 2)?)?;
    let p2 = t2.to_point(&exponents(exp2, 2)?)?;
    let matrix = sl2_lift(&p1, &p2)?;
    let sys = RowTargetSystem::new(vec![p1.clone(), p2.clone()])?;
    Ok(Output {
        inputs: json!({ "t1": p1.to_string(), "t2": p2.to_string() }),
        result: json!({ "matrix": matrix_json(&matrix), "determinant": matrix.det().to_string() }),
        verified: sys.verify(&matrix).is_ok(),
    })
}

fn report_json(r: &CriterionReport, timing: bool) -> Value {
    let mut v = json!({
        "id": r.id,
        "title": r.title,
        "passed": r.passed(),
        "cases": r.cases,
        "failure_count": r.failure_count,
        "failures": r.failures,
        "limit_s": r.limit.as_secs(),
    });
    if timing {
        v["elapsed_ms"] = json!(r.elapsed.as_millis() as u64);
    }
    v
}

fn verify(criteria: &Option<List<u8>>, timing: bool) -> Result<Output> {
    let mut suites: Vec<fn() -> CriterionReport> = vec![acceptance::oracle_agreement];
    suites.extend(acceptance::CRITERIA);
    let selected: Vec<u8> = match criteria {
        Some(List(ids)) => ids.clone(),
        None => (0..suites.len() as u8).collect(),
    };
    if let Some(bad) = selected.iter().find(|&&id| id as usize >= suites.len()) {
        return Err(Error::InvalidInput(format!("no suite numbered {bad}; suites are 0..={}", suites.len() - 1)));
    }
    let mut reports = Vec::new();
    for &id in &selected {
        let report = suites[id as usize]();
        eprintln!("{report}");
        reports.push(report);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    Ok(Output {
        inputs: json!({ "criteria": selected }),
        result: json!({
            "suites": reports.iter().map(|r| report_json(r, timing)).collect::<Vec<_>>(),
            "passed": reports.len() - failed,
            "failed": failed,
        }),
        verified: failed == 0,
    })
}

fn name(command: &Command) -> &'static str {
    match command {
        Command::Classes { .. } => "classes",
        Command::Count { .. } => "count",
        Command::Canon { .. } => "canon",
        Command::Eq { .. } => "eq",
        Command::CrtLift { .. } => "crt-lift",
        Command::CrtCheck { .. } => "crt-check",
        Command::SlLift { .. } => "sl-lift",
        Command::Sl2Lift { .. } => "sl2-lift",
        Command::Verify { .. } => "verify",
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Classes { modulus, dim, exp } => classes(modulus, *dim, exp, cli.max_tuples, true),
        Command::Count { modulus, dim, exp } => classes(modulus, *dim, exp, cli.max_tuples, false),
        Command::Canon { point, exp } => canon(point, exp),
        Command::Eq { p, q, exp } => equal(p, q, exp),
        Command::CrtLift { targets, exp } => crt_lift_cmd(targets, exp),
        Command::CrtCheck { factors: List(f), dim, exp } => crt_check(f, *dim, exp, cli.max_tuples),
        Command::SlLift { targets, exps, sigma } => sl_lift_cmd(targets, exps, sigma),
        Command::Sl2Lift { t1, t2, exp1, exp2 } => sl2_lift_cmd(t1, t2, exp1, exp2),
        Command::Verify { criteria } => verify(criteria, cli.timing),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let command = name(&cli.command);
    let (mut doc, code) = match run(&cli) {
        Ok(out) => {
            let code = if out.verified { ExitCode::SUCCESS } else { ExitCode::from(1) };
            (json!({ "command": command, "inputs": out.inputs, "result": out.result, "verified": out.verified }), code)
        }
        Err(e) => (json!({ "command": command, "error": { "kind": e.kind(), "message": e.to_string() } }), ExitCode::from(1)),
    };
    if cli.timing {
        doc["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values always serialize"));
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
