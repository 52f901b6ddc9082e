//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Every command prints one JSON document. Exit codes: 0 when every requested
//! check passes, 1 when a verification fails, 2 when the input is invalid.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{AlgebraMap, Element};
use crate::bd::{build_bd_rmatrix, verify_rmatrix, AdmissibleQuadruple, RMatrix};
use crate::bialgebra::cobracket_from_r;
use crate::chevalley::{omega_is_invariant, ChevalleyAlgebra, TorusElement};
use crate::descent::{
    descend_cobracket, fixed_points, pfields_decide, round_trip_matches, sl_realization, unitary_cocycle, AlphaClass,
};
use crate::error::{Error, Result};
use crate::rootsys::{
    diagram_automorphisms, enumerate_admissible_triples, AdmissibleTriple, DiagramAutomorphism, RootSystem, TripleJson,
    TypeLabel,
};
use crate::scalars::{rat, Rational, Scalar};
use crate::tensors::Tensor2;
use crate::twist::{
    build_twist_cocycle, find_pi, hat_map, in_a_gamma_q, in_centralizer_cbd, lift_rmatrix, taut_membership, CaseTag,
    TwistedCocycleClass,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "BDFORGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bdforge", version, about = "Exact Belavin-Drinfeld r-matrices and Lie bialgebra checks")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct AlgebraArgs {
    /// Root system type: A, B, C, D or G.
    #[arg(long = "type")]
    pub type_label: String,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Args, Clone)]
pub struct QuadrupleArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Admissible triple as JSON (1-based simple roots), or `@file`. Defaults to the trivial triple.
    #[arg(long)]
    pub triple: Option<String>,
    /// Cartan part as a tensor JSON, or `@file`. Defaults to the canonical solution.
    #[arg(long)]
    pub rh: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct TensorArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Tensor as `[[i, j, "p/q"], ...]` over 0-based basis indices, or `@file`.
    #[arg(long)]
    pub r: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List all admissible triples.
    Enumerate(AlgebraArgs),
    /// Belavin-Drinfeld r-matrices.
    Bd {
        #[command(subcommand)]
        command: BdCommand,
    },
    /// Check the r-matrix axioms for a tensor.
    Verify(TensorArgs),
    /// Lie bialgebra checks.
    Bialg {
        #[command(subcommand)]
        command: BialgCommand,
    },
    /// Diagram automorphisms and Galois cocycles.
    Twist {
        #[command(subcommand)]
        command: TwistCommand,
    },
    /// Galois descent.
    Descend {
        #[command(subcommand)]
        command: DescendCommand,
    },
    /// Every check on every admissible quadruple of one type.
    FullSuite(FullSuiteArgs),
}

#[derive(Debug, Subcommand)]
pub enum BdCommand {
    Build(QuadrupleArgs),
}

#[derive(Debug, Subcommand)]
pub enum BialgCommand {
    /// Anti-symmetry, co-Jacobi and cocycle condition for the coboundary of `r`.
    Verify(TensorArgs),
}

#[derive(Debug, Subcommand)]
pub enum TwistCommand {
    FindPi(QuadrupleArgs),
    Cocycle(CocycleArgs),
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    #[command(flatten)]
    pub quadruple: QuadrupleArgs,
    #[arg(long)]
    pub d: i64,
    /// Diagram automorphism as `{"1": "2", ...}` (1-based). Defaults to the result of find-pi.
    #[arg(long)]
    pub pi: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum DescendCommand {
    /// The special unitary form of sl_n over Q(√d).
    Sun {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
    },
}

#[derive(Debug, Args)]
pub struct FullSuiteArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Seed for the sampled torus elements.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random torus elements per diagram automorphism and quadruple.
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    /// Discriminant for the twisted cocycle checks.
    #[arg(long, default_value_t = 5)]
    pub d: i64,
}

/// Exit code and report of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn pass_if(pass: bool, report: Value) -> Self {
        Outcome { code: if pass { EXIT_OK } else { EXIT_FAILED }, report }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UnsupportedType(..)
        | Error::UnsupportedRank(_)
        | Error::InvalidDiscriminant(_)
        | Error::Parse(_)
        | Error::Invalid(_) => EXIT_INVALID,
        _ => EXIT_FAILED,
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Bd { command: BdCommand::Build(q) } => bd_build(q),
        Command::Verify(t) => verify(t),
        Command::Bialg { command: BialgCommand::Verify(t) } => bialg_verify(t),
        Command::Twist { command: TwistCommand::FindPi(q) } => twist_find_pi(q),
        Command::Twist { command: TwistCommand::Cocycle(c) } => twist_cocycle(c),
        Command::Descend { command: DescendCommand::Sun { n, d } } => descend_sun(*n, *d),
        Command::FullSuite(f) => full_suite(f),
    };
    result.unwrap_or_else(|e| Outcome { code: exit_code_for(&e), report: json!({ "error": e.to_string() }) })
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code with the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let out = execute(&cli);
    let text = serde_json::to_string_pretty(&out.report).expect("report serializes") + "\n";
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (out.code, String::new()),
            Err(e) => (EXIT_INVALID, format!("{{\"error\": \"cannot write {}: {e}\"}}\n", path.display())),
        },
        None => (out.code, text),
    }
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn algebra(a: &AlgebraArgs) -> Result<ChevalleyAlgebra> {
    Ok(ChevalleyAlgebra::new(RootSystem::new(TypeLabel::parse(&a.type_label)?, a.rank)?))
}

fn scalar_from_value<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::String(s) => S::parse_scalar(s),
        Value::Number(n) => S::parse_scalar(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a scalar string, found {v}"))),
    }
}

/// `[[i, j, "c"], ...]` with `i, j < dim`.
pub fn tensor_from_json<S: Scalar>(text: &str, dim: usize) -> Result<Tensor2<S>> {
    let rows: Vec<(usize, usize, Value)> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("tensor JSON: {e}")))?;
    let mut t = Tensor2::zero();
    for (i, j, c) in rows {
        if i >= dim || j >= dim {
            return Err(Error::Invalid(format!("basis index ({i}, {j}) out of range for dimension {dim}")));
        }
        t.add_term(i, j, scalar_from_value(&c)?);
    }
    Ok(t)
}

pub fn tensor_to_json<S: Scalar>(t: &Tensor2<S>) -> Value {
    Value::Array(t.iter().map(|((i, j), c)| json!([i, j, c.to_string()])).collect())
}

pub fn element_to_json<S: Scalar>(x: &Element<S>) -> Value {
    Value::Array(x.iter().map(|(i, c)| json!([i, c.to_string()])).collect())
}

pub fn map_to_json<S: Scalar>(m: &AlgebraMap<S>) -> Value {
    Value::Array(m.images().iter().map(element_to_json).collect())
}

fn pi_to_json(pi: &DiagramAutomorphism) -> Value {
    let m: serde_json::Map<String, Value> =
        pi.perm().iter().enumerate().map(|(i, &j)| ((i + 1).to_string(), Value::String((j + 1).to_string()))).collect();
    Value::Object(m)
}

fn pi_from_json(rs: &RootSystem, text: &str) -> Result<DiagramAutomorphism> {
    let m: std::collections::BTreeMap<String, String> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("pi JSON: {e}")))?;
    let n = rs.rank();
    let index = |s: &str| -> Result<usize> {
        let v: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad index {s:?}")))?;
        v.checked_sub(1).filter(|&v| v < n).ok_or_else(|| Error::Invalid(format!("index {s} out of range")))
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for (a, b) in &m {
        perm[index(a)?] = index(b)?;
    }
    DiagramAutomorphism::new(rs, perm)
}

fn basis_labels(g: &ChevalleyAlgebra) -> Value {
    Value::Array((0..g.dim()).map(|i| Value::String(g.basis_label(i))).collect())
}

fn quadruple(g: &ChevalleyAlgebra, q: &QuadrupleArgs) -> Result<AdmissibleQuadruple> {
    let triple = match &q.triple {
        Some(s) => {
            let j: TripleJson =
                serde_json::from_str(&read_arg(s)?).map_err(|e| Error::Parse(format!("triple JSON: {e}")))?;
            AdmissibleTriple::from_json(g.root_system(), &j)?
        }
        None => AdmissibleTriple::trivial(),
    };
    match &q.rh {
        Some(s) => AdmissibleQuadruple::new(g, triple, tensor_from_json(&read_arg(s)?, g.dim())?),
        None => AdmissibleQuadruple::canonical(g, triple),
    }
}

fn enumerate(a: &AlgebraArgs) -> Result<Outcome> {
    let g = RootSystem::new(TypeLabel::parse(&a.type_label)?, a.rank)?;
    let triples = enumerate_admissible_triples(&g);
    let list: Vec<TripleJson> = triples.iter().map(AdmissibleTriple::to_json).collect();
    Ok(Outcome::pass_if(
        true,
        json!({ "type": g.label().to_string(), "rank": g.rank(), "count": list.len(), "triples": list }),
    ))
}

fn bd_build(q: &QuadrupleArgs) -> Result<Outcome> {
    let g = algebra(&q.algebra)?;
    let quad = quadruple(&g, q)?;
    let r = build_bd_rmatrix(&g, &quad)?;
    Ok(Outcome::pass_if(
        true,
        json!({
            "triple": quad.triple().to_json(),
            "r_h": tensor_to_json(quad.r_h()),
            "r": tensor_to_json(r.r()),
            "lambda": r.lambda().to_string(),
            "basis": basis_labels(&g),
            "verified": true,
        }),
    ))
}

fn verify(t: &TensorArgs) -> Result<Outcome> {
    let g = algebra(&t.algebra)?;
    let r: Tensor2<Rational> = tensor_from_json(&read_arg(&t.r)?, g.dim())?;
    Ok(match verify_rmatrix(&g, &r) {
        Ok(l) => Outcome::pass_if(true, json!({ "verdict": "ok", "lambda": l.to_string() })),
        Err(rej) => Outcome::pass_if(false, json!({ "verdict": rej.to_string(), "lambda": null })),
    })
}

fn bialg_verify(t: &TensorArgs) -> Result<Outcome> {
    let g = algebra(&t.algebra)?;
    let r: Tensor2<Rational> = tensor_from_json(&read_arg(&t.r)?, g.dim())?;
    let report = cobracket_from_r(g.table(), &r).report(g.table());
    Ok(Outcome::pass_if(report.all(), serde_json::to_value(report).expect("report serializes")))
}

fn twist_find_pi(q: &QuadrupleArgs) -> Result<Outcome> {
    let g = algebra(&q.algebra)?;
    let quad = quadruple(&g, q)?;
    let r = build_bd_rmatrix(&g, &quad)?;
    let pi = find_pi(&g, &quad, &r);
    Ok(Outcome::pass_if(true, json!({ "pi": pi.as_ref().map(pi_to_json) })))
}

fn twist_cocycle(c: &CocycleArgs) -> Result<Outcome> {
    let g = algebra(&c.quadruple.algebra)?;
    let quad = quadruple(&g, &c.quadruple)?;
    let r = build_bd_rmatrix(&g, &quad)?;
    let pi = match &c.pi {
        Some(s) => pi_from_json(g.root_system(), &read_arg(s)?)?,
        None => match find_pi(&g, &quad, &r) {
            Some(p) => p,
            None => return Ok(Outcome::pass_if(false, json!({ "pi": null, "u": null }))),
        },
    };
    let cocycle = build_twist_cocycle(&g, &quad, &pi, c.d)?;
    let class = TwistedCocycleClass::new(cocycle.clone(), lift_rmatrix(&g, &r), CaseTag::Case2AlphaSquaredNonsquare);
    let case2 = class.is_ok();
    let hat_trivial = class.map(|cl| hat_map(&g, &cl, &pi).map(|m| m.is_identity())).ok().transpose()?;
    Ok(Outcome::pass_if(
        case2,
        json!({
            "d": c.d,
            "pi": pi_to_json(&pi),
            "u": map_to_json(cocycle.u()),
            "case2": case2,
            "hat_is_identity": hat_trivial,
        }),
    ))
}

fn descend_sun(n: usize, d: i64) -> Result<Outcome> {
    let real = sl_realization(n)?;
    let g = real.algebra();
    let u = unitary_cocycle(&real, d)?;
    let r = build_bd_rmatrix(g, &AdmissibleQuadruple::drinfeld_jimbo(g))?;
    let case = pfields_decide(&r, &u, AlphaClass::SqrtDMultiple);
    let mut form = fixed_points(g, &u)?;
    let delta = descend_cobracket(g, &r, &mut form, AlphaClass::SqrtDMultiple)?;
    let report = delta.report(form.table());
    let round_trip = round_trip_matches(g, &r, &form, AlphaClass::SqrtDMultiple);
    let mut brackets = Vec::new();
    for i in 0..form.dim() {
        for j in i + 1..form.dim() {
            let b = form.table().bracket_basis(i, j);
            if !b.is_zero() {
                brackets.push(json!([i, j, element_to_json(b)]));
            }
        }
    }
    Ok(Outcome::pass_if(
        report.all() && round_trip,
        json!({
            "n": n,
            "d": d,
            "dim": form.dim(),
            "case": case,
            "basis": form.basis().iter().map(element_to_json).collect::<Vec<_>>(),
            "brackets": brackets,
            "delta": delta.values().iter().map(tensor_to_json).collect::<Vec<_>>(),
            "axioms": report,
            "round_trip": round_trip,
        }),
    ))
}

fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}

/// A random nonzero rational `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-5..=5);
        if p != 0 {
            return rat(p, rng.gen_range(1..=4));
        }
    }
}

/// Random torus elements followed by a constant one, which always centralizes `r_BD`.
pub fn sample_torus(rank: usize, count: usize, seed: u64) -> Vec<TorusElement<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<_> = (0..count)
        .map(|_| TorusElement::new((0..rank).map(|_| small_rational(&mut rng)).collect()).expect("nonzero entries"))
        .collect();
    let c = small_rational(&mut rng);
    out.push(TorusElement::new(vec![c; rank]).expect("nonzero entries"));
    out
}

fn check_quadruple(g: &ChevalleyAlgebra, triple: AdmissibleTriple, args: &FullSuiteArgs, seed: u64) -> Result<Value> {
    let quad = AdmissibleQuadruple::canonical(g, triple)?;
    let r: RMatrix<Rational> = build_bd_rmatrix(g, &quad)?;
    let axioms = cobracket_from_r(g.table(), r.r()).report(g.table());
    let pi = find_pi(g, &quad, &r);
    let mut taut_true = 0usize;
    let mut taut_total = 0usize;
    for (k, p) in diagram_automorphisms(g.root_system()).iter().enumerate() {
        for t in sample_torus(g.rank(), args.samples, seed.wrapping_add(k as u64)) {
            if taut_membership(g, p, &t, &quad, &r) {
                taut_true += 1;
                debug_assert!(in_centralizer_cbd(g, &t, &r) && in_a_gamma_q(g, p, &quad));
            }
            taut_total += 1;
        }
    }
    let twist = match &pi {
        Some(p) => {
            let cocycle = build_twist_cocycle(g, &quad, p, args.d)?;
            let class = TwistedCocycleClass::new(cocycle, lift_rmatrix(g, &r), CaseTag::Case2AlphaSquaredNonsquare)?;
            Some(hat_map(g, &class, p)?.is_identity())
        }
        None => None,
    };
    let pass = axioms.all() && twist != Some(false);
    Ok(json!({
        "triple": quad.triple().to_json(),
        "rmatrix": true,
        "bialgebra": axioms,
        "pi": pi.as_ref().map(pi_to_json),
        "taut_samples": taut_total,
        "taut_members": taut_true,
        "twist_base_point_trivial": twist,
        "pass": pass,
    }))
}

fn full_suite(args: &FullSuiteArgs) -> Result<Outcome> {
    let g = algebra(&args.algebra)?;
    crate::scalars::check_discriminant(args.d)?;
    let jacobi = g.jacobi_violation().is_none();
    let killing = g.killing_is_invariant();
    let omega = omega_is_invariant(&g);
    let triples = enumerate_admissible_triples(g.root_system());
    let results: Vec<Value> = thread_pool().install(|| {
        triples
            .par_iter()
            .enumerate()
            .map(|(i, t)| {
                let seed = args.seed.wrapping_mul(1_000_003).wrapping_add(i as u64 * 7919);
                match catch_unwind(AssertUnwindSafe(|| check_quadruple(&g, t.clone(), args, seed))) {
                    Ok(Ok(v)) => v,
                    Ok(Err(e)) => json!({ "triple": t.to_json(), "pass": false, "error": e.to_string() }),
                    Err(p) => {
                        let msg = p
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_else(|| "panic".into());
                        json!({ "triple": t.to_json(), "pass": false, "error": msg })
                    }
                }
            })
            .collect()
    });
    let pass = jacobi && killing && omega && results.iter().all(|v| v["pass"] == json!(true));
    Ok(Outcome::pass_if(
        pass,
        json!({
            "type": g.root_system().label().to_string(),
            "rank": g.rank(),
            "dim": g.dim(),
            "jacobi": jacobi,
            "killing_invariant": killing,
            "omega_invariant": omega,
            "diagram_automorphisms": diagram_automorphisms(g.root_system()).len(),
            "triple_count": triples.len(),
            "quadruples": results,
            "pass": pass,
        }),
    ))
}
