use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use novikov_core::complex::{collapse, BasedChainComplex, CollapseWitness, TowerComplex};
use novikov_core::cut_system::{build_complex, cascade_collapse, CascadeOptions};
use novikov_core::dirichlet::{is_algebraic_integer, is_dirichlet_unit, AlgebraicNumber, MinimalPolynomialCandidate};
use novikov_core::group_ring::{CohomologyClass, GroupRingElement};
use novikov_core::invariants::{
    bundle_homology_dims, check_novikov_inequalities, generic_betti_and_jumps, is_xi_generic, mapping_torus,
    morse_type_inequalities, novikov_numbers_for_class, novikov_numbers_over_r, NovikovNumbers, Verdict,
};
use novikov_core::json::{self as codec, AnyComplex, JsonRing};
use novikov_core::matrix::MatrixInverse;
use novikov_core::tower::{MonodromyRep, RepresentationDescriptor};
use novikov_core::AlgebraError;

#[derive(Parser)]
#[command(name = "novikov-forge", version, about = "Exact Morse-Novikov computations on JSON chain complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file, `-` for stdout.
    #[arg(short, long, global = true, default_value = "-")]
    output: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check shapes and d^2 = 0.
    Validate { complex: String },
    /// Cancel the D'/D blocks of a partitioned complex.
    Collapse {
        complex: String,
        partition: String,
        #[command(flatten)]
        ring: RingFlags,
    },
    /// Chain complex of a cut system over Z[H].
    BuildCutSystem { cut_system: String },
    /// Run the full cascade of collapses after base change.
    Cascade {
        cut_system: String,
        #[command(flatten)]
        ring: RingFlags,
        /// Accept non-simple early collapses.
        #[arg(long)]
        relaxed: bool,
    },
    /// Free and torsion Novikov numbers.
    NovikovNumbers {
        complex: String,
        /// Class weights, e.g. `1,3/2`; defaults to 1 in rank one.
        #[arg(long)]
        xi: Option<String>,
    },
    /// Novikov inequalities against a novikov-numbers report, or Morse-type
    /// inequalities against a bundle-homology report.
    Inequalities {
        report: String,
        /// Critical point counts per degree, e.g. `1,1`.
        #[arg(long)]
        counts: String,
    },
    /// Homology dimensions with coefficients in a^xi tensor E.
    BundleHomology {
        complex: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        bundle: Option<String>,
        #[arg(long)]
        xi: Option<String>,
    },
    /// Generic twisted Betti numbers and jump polynomials.
    JumpPoints {
        complex: String,
        #[arg(long)]
        bundle: Option<String>,
        #[arg(long)]
        xi: Option<String>,
    },
    /// Algebraic mapping torus of an integer chain self-map.
    MappingTorus { complex: String, chain_map: String },
    /// Algebraic-integer and Dirichlet-unit test.
    DirichletCheck {
        /// Integer coefficients, highest degree first.
        #[arg(long, conflicts_with = "number", required_unless_present = "number", allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        number: Option<String>,
        /// Assert irreducibility above degree four.
        #[arg(long)]
        irreducible: bool,
    },
    /// Compare homology over k(H) tensor E with the trivial line bundle.
    XiGeneric {
        complex: String,
        #[arg(long)]
        bundle: Option<String>,
        #[arg(long = "char")]
        characteristic: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RingChoice {
    Novikov,
    #[value(name = "R")]
    R,
    Scalar,
    Ratfield,
}

#[derive(Args)]
struct RingFlags {
    /// Target ring of the base change.
    #[arg(long, value_enum)]
    ring: Option<RingChoice>,
    #[arg(long, allow_hyphen_values = true)]
    cutoff: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long = "char")]
    characteristic: Option<u64>,
}

impl RingFlags {
    fn descriptor(&self, xi: &CohomologyClass) -> Result<Option<RepresentationDescriptor>, AlgebraError> {
        let need = |v: &Option<String>, flag: &str| {
            v.as_deref().ok_or_else(|| AlgebraError::Precondition(format!("--{flag} is required for this ring"))).and_then(codec::parse_rational)
        };
        Ok(match self.ring {
            None => None,
            Some(RingChoice::Novikov) => Some(RepresentationDescriptor::Novikov { xi: xi.clone(), cutoff: need(&self.cutoff, "cutoff")? }),
            Some(RingChoice::R) => Some(RepresentationDescriptor::RationalFnR { xi: xi.clone() }),
            Some(RingChoice::Scalar) => Some(RepresentationDescriptor::Scalar { a: need(&self.a, "a")?, xi: xi.clone() }),
            Some(RingChoice::Ratfield) => {
                Some(RepresentationDescriptor::RationalField { basis: Vec::new(), characteristic: self.characteristic })
            }
        })
    }
}

enum Outcome {
    Pass(Value),
    Fail(Value),
}

fn read_input(path: &str) -> Result<String, AlgebraError> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut s).map_err(|e| AlgebraError::Parse(format!("stdin: {e}")))?;
    } else {
        s = fs::read_to_string(path).map_err(|e| AlgebraError::Parse(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn read_doc(path: &str) -> Result<Value, AlgebraError> {
    codec::parse_text(&read_input(path)?).map_err(|e| match e {
        AlgebraError::Parse(m) => AlgebraError::Parse(format!("{path}: {m}")),
        other => other,
    })
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T, AlgebraError>) -> Result<Vec<T>, AlgebraError> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| f(x.trim())).collect()
}

fn parse_usize(s: &str) -> Result<usize, AlgebraError> {
    s.parse().map_err(|_| AlgebraError::Parse(format!("{s:?} is not a count")))
}

fn class_or_default(xi: &Option<String>, rank: usize) -> Result<CohomologyClass, AlgebraError> {
    match xi {
        Some(s) => Ok(CohomologyClass::new(parse_list(s, codec::parse_rational)?)),
        None if rank == 1 => Ok(CohomologyClass::from_integers(&[1])),
        None => Err(AlgebraError::Precondition(format!("--xi is required for rank {rank}"))),
    }
}

fn bundle_or_trivial(path: &Option<String>, rank: usize) -> Result<MonodromyRep, AlgebraError> {
    match path {
        Some(p) => codec::monodromy_from_json(&read_doc(p)?),
        None => Ok(MonodromyRep::trivial(rank)),
    }
}

fn group_ring_complex(path: &str) -> Result<BasedChainComplex<GroupRingElement>, AlgebraError> {
    codec::complex_from_json(&read_doc(path)?)
}

fn witness_to_json<R: JsonRing>(w: &CollapseWitness<R>) -> Value {
    let ms = |v: &[novikov_core::matrix::RingMatrix<R>]| v.iter().map(codec::matrix_to_json).collect::<Vec<_>>();
    json!({ "f": ms(&w.f), "g": ms(&w.g), "h": ms(&w.h), "simple": w.simple })
}

fn collapse_in<R: MatrixInverse + JsonRing>(
    x: &BasedChainComplex<R>,
    p: &novikov_core::complex::BlockPartition,
) -> Result<Value, AlgebraError> {
    let (c, w) = collapse(x, p)?;
    Ok(json!({ "complex": codec::complex_to_json(&c), "witness": witness_to_json(&w) }))
}

fn collapse_tower(x: &TowerComplex, p: &novikov_core::complex::BlockPartition) -> Result<Value, AlgebraError> {
    match x {
        TowerComplex::Novikov(c) => collapse_in(c, p),
        TowerComplex::R(c) => collapse_in(c, p),
        TowerComplex::Rational(c) => collapse_in(c, p),
        TowerComplex::RatFnQ(c) => collapse_in(c, p),
        TowerComplex::RatFnFp(c) => collapse_in(c, p),
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::NotComputed => "not-computed",
    }
}

fn numbers_report(n: &NovikovNumbers) -> Value {
    json!({ "b": n.b, "q": n.q })
}

fn run(cli: &Cli) -> Result<Outcome, AlgebraError> {
    Ok(match &cli.command {
        Command::Validate { complex } => {
            let x = codec::any_complex_from_json(&read_doc(complex)?)?;
            let result = match &x {
                AnyComplex::GroupRing(c) => c.validate(),
                AnyComplex::Integer(c) => c.validate(),
                AnyComplex::Tower(t) => t.validate(),
            };
            match result {
                Ok(()) => Outcome::Pass(json!({ "valid": true })),
                Err(v) => Outcome::Fail(json!({ "valid": false, "violation": v, "message": v.to_string() })),
            }
        }
        Command::Collapse { complex, partition, ring } => {
            let doc = read_doc(complex)?;
            let p = codec::partition_from_json(&read_doc(partition)?)?;
            let x = codec::any_complex_from_json(&doc)?;
            let report = match x {
                AnyComplex::GroupRing(c) => {
                    let xi = class_or_default(&None, *c.ctx()).ok();
                    match xi.map(|xi| ring.descriptor(&xi)).transpose()?.flatten() {
                        Some(rho) => collapse_tower(&novikov_core::complex::base_change(&c, &rho)?, &p)?,
                        None => collapse_in(&c, &p)?,
                    }
                }
                AnyComplex::Integer(c) => collapse_in(&c.map_entries((), |n| Ok(BigRational::from_integer(n.clone())))?, &p)?,
                AnyComplex::Tower(t) => collapse_tower(&t, &p)?,
            };
            Outcome::Pass(report)
        }
        Command::BuildCutSystem { cut_system } => {
            let cs = codec::cut_system_from_json(&read_doc(cut_system)?)?;
            Outcome::Pass(codec::complex_to_json(&build_complex(&cs)?.complex))
        }
        Command::Cascade { cut_system, ring, relaxed } => {
            let cs = codec::cut_system_from_json(&read_doc(cut_system)?)?;
            let rho = ring
                .descriptor(&cs.xi)?
                .ok_or_else(|| AlgebraError::Precondition("--ring is required for cascade".into()))?;
            let cc = build_complex(&cs)?;
            let out = cascade_collapse(&cc, &rho, CascadeOptions { require_simple: !relaxed })?;
            let steps: Vec<Value> = out
                .steps
                .iter()
                .map(|s| json!({ "j": s.j, "cancelled_pairs": s.cancelled_pairs, "simple": s.simple }))
                .collect();
            Outcome::Pass(json!({
                "ring": out.final_complex.ring_name(),
                "counts": out.final_complex.basis_counts(),
                "internal_counts": out.internal_counts,
                "steps": out.steps.len(),
                "simple_flags": out.simple_flags(),
                "witnesses": steps,
                "complex": codec::tower_complex_to_json(&out.final_complex),
            }))
        }
        Command::NovikovNumbers { complex, xi } => {
            let n = match codec::any_complex_from_json(&read_doc(complex)?)? {
                AnyComplex::GroupRing(c) => novikov_numbers_for_class(&c, &class_or_default(xi, *c.ctx())?)?,
                AnyComplex::Tower(TowerComplex::R(c)) => novikov_numbers_over_r(&c)?,
                _ => return Err(AlgebraError::Precondition("novikov-numbers needs a group_ring or R complex".into())),
            };
            Outcome::Pass(numbers_report(&n))
        }
        Command::Inequalities { report, counts } => {
            let doc = read_doc(report)?;
            let c = parse_list(counts, parse_usize)?;
            let list = |key: &str| -> Result<Option<Vec<usize>>, AlgebraError> {
                doc.get(key)
                    .filter(|v| !v.is_null())
                    .map(|v| serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Parse(format!("$.{key}: {e}"))))
                    .transpose()
            };
            if let Some(dims) = list("dims")? {
                let dim_e = doc.get("bundle_dim").and_then(Value::as_u64).unwrap_or(1) as usize;
                let rows = morse_type_inequalities(&c, &dims, dim_e)?;
                let table: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "degree": r.degree,
                            "single_slack": codec::rational_to_json(&r.single_slack),
                            "alternating_slack": codec::rational_to_json(&r.alternating_slack),
                            "verdict": verdict_name(r.verdict),
                        })
                    })
                    .collect();
                let pass = rows.iter().all(|r| r.verdict != Verdict::Fail);
                let v = json!({ "kind": "morse-type", "degrees": table, "verdict": if pass { "pass" } else { "fail" } });
                if pass { Outcome::Pass(v) } else { Outcome::Fail(v) }
            } else {
                let b = list("b")?.ok_or_else(|| AlgebraError::Parse("$: report needs \"b\" or \"dims\"".into()))?;
                let numbers = NovikovNumbers { b, q: list("q")? };
                let rows = check_novikov_inequalities(&c, &numbers);
                let table: Vec<Value> = rows
                    .iter()
                    .map(|r| json!({ "degree": r.degree, "c": r.c, "bound": r.bound, "slack": r.slack, "verdict": verdict_name(r.verdict) }))
                    .collect();
                let fail = rows.iter().any(|r| r.verdict == Verdict::Fail);
                let overall = if fail {
                    "fail"
                } else if rows.iter().any(|r| r.verdict == Verdict::NotComputed) {
                    "not-computed"
                } else {
                    "pass"
                };
                let v = json!({ "kind": "novikov", "degrees": table, "verdict": overall });
                if fail { Outcome::Fail(v) } else { Outcome::Pass(v) }
            }
        }
        Command::BundleHomology { complex, a, bundle, xi } => {
            let x = group_ring_complex(complex)?;
            let rank = *x.ctx();
            let e = bundle_or_trivial(bundle, rank)?;
            let dims = bundle_homology_dims(&x, &codec::parse_rational(a)?, &e, &class_or_default(xi, rank)?)?;
            Outcome::Pass(json!({ "a": a, "bundle_dim": e.dim(), "dims": dims }))
        }
        Command::JumpPoints { complex, bundle, xi } => {
            let x = group_ring_complex(complex)?;
            let rank = *x.ctx();
            let r = generic_betti_and_jumps(&x, &bundle_or_trivial(bundle, rank)?, &class_or_default(xi, rank)?)?;
            let polys: Vec<Value> = r
                .jump_polynomials
                .iter()
                .map(|p| match p {
                    Some(p) => json!(p.high_first().iter().map(codec::int_to_json).collect::<Vec<_>>()),
                    None => Value::Null,
                })
                .collect();
            let roots: Vec<Vec<Value>> = r
                .jump_polynomials
                .iter()
                .map(|p| p.as_ref().map(|p| p.rational_roots().iter().map(codec::rational_to_json).collect()).unwrap_or_default())
                .collect();
            Outcome::Pass(json!({ "generic_betti": r.generic_betti, "jump_polynomials": polys, "rational_roots": roots }))
        }
        Command::MappingTorus { complex, chain_map } => {
            let c: BasedChainComplex<BigInt> = codec::complex_from_json(&read_doc(complex)?)?;
            let h = codec::chain_map_from_json(&read_doc(chain_map)?, &c.basis_counts())?;
            Outcome::Pass(codec::complex_to_json(&mapping_torus(&c, &h)?))
        }
        Command::DirichletCheck { poly, number, irreducible } => {
            let x = match (poly, number) {
                (Some(p), _) => {
                    let coeffs = parse_list(p, |s| s.parse::<BigInt>().map_err(|_| AlgebraError::Parse(format!("{s:?} is not an integer"))))?;
                    AlgebraicNumber::Polynomial(MinimalPolynomialCandidate::new(&coeffs, *irreducible)?)
                }
                (None, Some(n)) => AlgebraicNumber::Rational(codec::parse_rational(n)?),
                (None, None) => return Err(AlgebraError::Precondition("one of --poly or --number is required".into())),
            };
            let unit = is_dirichlet_unit(&x)?;
            let v = json!({ "algebraic_integer": is_algebraic_integer(&x)?, "dirichlet_unit": unit });
            if unit { Outcome::Pass(v) } else { Outcome::Fail(v) }
        }
        Command::XiGeneric { complex, bundle, characteristic } => {
            let x = group_ring_complex(complex)?;
            let r = is_xi_generic(&x, &bundle_or_trivial(bundle, *x.ctx())?, *characteristic)?;
            let v = json!({ "generic_dims": r.generic_dims, "trivial_dims": r.trivial_dims, "xi_generic": r.xi_generic });
            if r.xi_generic { Outcome::Pass(v) } else { Outcome::Fail(v) }
        }
    })
}

fn emit(path: &str, v: &Value) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(&codec::with_schema(v.clone())).expect("json values serialize");
    text.push('\n');
    if path == "-" {
        io::stdout().lock().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, value) = match run(&cli) {
        Ok(Outcome::Pass(v)) => (0, v),
        Ok(Outcome::Fail(v)) => (1, v),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli.output, &value) {
        eprintln!("error: {}: {e}", cli.output);
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
