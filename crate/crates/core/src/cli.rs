//! The `mendo` command line: JSON in, canonical JSON out.
//!
//! Exit codes: 0 success, 1 negative verdict (the JSON still goes to stdout),
//! 2 usage or input error (diagnostics on stderr).

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::ffworld::{self, ExponentFamily, FieldElem, FiniteFieldCtx, DEFAULT_DLOG_LIMIT};
use crate::homext::{self, GroupHom, Relation};
use crate::intlinalg::{self, IntMatrix, Lattice};
use crate::json::{self, canonical};
use crate::msystems::{self, CompleteSystem};
use crate::numtheory::divisors;
use crate::poly::IntPoly;
use crate::symgroup::{self, DivSubgroup, SymElement};
use crate::szmielew::{self, SzmielewInvariants};
use crate::termlang::{self, Term};

/// Environment variable overriding the discrete-log table bound.
pub const DLOG_LIMIT_VAR: &str = "MENDO_DLOG_LIMIT";

#[derive(Parser, Debug)]
#[command(name = "mendo", version, about = "Exact computations with multiplicative endomorphisms of fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Top,
}

#[derive(Subcommand, Debug)]
enum Top {
    /// Integer linear algebra.
    #[command(subcommand)]
    Lin(LinCmd),
    /// The symbolic multiplicative group.
    #[command(subcommand)]
    Grp(GrpCmd),
    /// Complete systems of minimal equations.
    #[command(subcommand)]
    Msystem(MsCmd),
    /// Homomorphisms and their extensions.
    #[command(subcommand)]
    Hom(HomCmd),
    /// Terms with θ.
    #[command(subcommand)]
    Term(TermCmd),
    /// Finite levels of the algebraic closure of F_p.
    #[command(subcommand)]
    Ff(FfCmd),
    /// The pseudofinite-cyclic criterion.
    #[command(subcommand)]
    Psfc(PsfcCmd),
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Input JSON file; stdin when omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum LinCmd {
    /// Row Hermite normal form of a matrix.
    Hnf(Input),
    /// Smith normal form of a matrix.
    Snf(Input),
    /// Integer solution of x·A = b; input {"a": matrix, "b": [..]}.
    Solve(Input),
    /// Saturation of a lattice; input {"ambient_rank": n, "generators": [[..]]}.
    Saturate(Input),
}

#[derive(Subcommand, Debug)]
enum GrpCmd {
    /// Order of b over ⟨C a⟩; input {"C", "a", "b"}.
    Order(Input),
    /// Membership in C; input {"C", "x"}.
    Member(Input),
    /// Independence over C; input {"C", "a"}.
    Independent(Input),
    /// Canonical n-th root; input {"x", "n"}.
    Root(Input),
}

#[derive(Subcommand, Debug)]
enum MsCmd {
    /// Complete system of b over ⟨C a⟩; input {"C", "a", "b"}.
    Compute(Input),
    /// Check a system at a tuple; input {"system", "C", "a", "b"}.
    Verify(Input),
    /// Apply a homomorphism to every constant; input {"system", "hom"}.
    Transport(Input),
    /// Successive minimal presentation; input {"system", "C", "a", "b"}.
    Present(Input),
    /// (N, M) for leading coefficients k and exponents l.
    Nm {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k: Vec<BigInt>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        l: Vec<BigInt>,
    },
    /// System attached to P_i(θ)(z_i) = δ_i; input {"polys", "deltas"}.
    Alpha(Input),
}

#[derive(Subcommand, Debug)]
enum HomCmd {
    /// Image of x; input {"hom", "x"}.
    Apply(Input),
    /// Extend along a system (input {"hom", "system", "a", "b", "a_img", "b_img"})
    /// or over independent elements (omit "system" and "b").
    Extend(Input),
    /// Product extension; input {"A", "B", "D"}.
    Product(Input),
    /// Send new symbols to 1; input {"hom", "symbols"}.
    Trivial(Input),
    /// Check relations; input {"hom", "relations"}.
    Verify(Input),
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, alias = "level")]
    k: u32,
}

#[derive(Args, Debug, Clone)]
struct EndoArgs {
    /// Exponent family JSON file.
    #[arg(long)]
    endo: Option<PathBuf>,
    /// Use the power map x ↦ x^s at every level dividing k.
    #[arg(long, allow_hyphen_values = true)]
    power: Option<BigInt>,
}

#[derive(Subcommand, Debug)]
enum TermCmd {
    /// Rewrite t = 0 into θ-free equations.
    Linearise { src: String },
    /// Evaluate a term in F_{p^k}.
    Eval {
        src: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        endo: EndoArgs,
        /// Assignment JSON, e.g. {"x": "g^3", "$c": "1"}; a file path or inline.
        #[arg(long)]
        assign: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum FfCmd {
    /// Build the field and report modulus and generator.
    Build {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Kernel of P(θ) at level k.
    Kernel {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(long)]
        poly: IntPoly,
    },
    /// Coverage of ker P(θ) + ker Q(θ).
    Coverage {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        endo: EndoArgs,
        /// Given twice: P then Q.
        #[arg(long = "poly", required = true)]
        polys: Vec<IntPoly>,
    },
    /// b with θ(b) generating μ_n and θ(bⁿ) = 1.
    Witness {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(long)]
        n: u64,
    },
    /// Multiplicative freeness of a point set; input {"points": [[..]]}.
    Freeness {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Character equations of a lattice mod m; input {"modulus", "generators"}.
    Characters(Input),
    /// m-fold products of a set containing 1; input {"set": [..]}.
    Closure {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Degree of the θ-closure of elements of the given degrees.
    Cltheta {
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u64>,
    },
    /// A random compatible exponent family.
    RandomEndo {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// First point with P_i(θ)(a_i) = δ_i; input {"polys", "deltas", and "points" or "line"}.
    Probe {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        endo: EndoArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Genericity scorecard; the config may carry "p", "k" and "endo".
    Audit {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also write the scorecard to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, alias = "level")]
        k: Option<u32>,
        #[command(flatten)]
        endo: EndoArgs,
    },
}

#[derive(Subcommand, Debug)]
enum PsfcCmd {
    /// |G[p]| = |G/pG| ≤ p at every prime.
    Check(Input),
    /// Local types, P, Q and ε.
    Classify(Input),
    /// Order of the n-th cyclic witness factor.
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: u32,
    },
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// JSON output and whether the verdict is positive.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }

    fn verdict(value: Value, ok: bool) -> Self {
        Outcome { value, ok }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(x)?)
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read(&mut self, input: &Input) -> Result<String, CliError> {
        read_source(input.input.as_deref(), self.stdin)
    }

    fn parse<T: DeserializeOwned>(&mut self, input: &Input) -> Result<T, CliError> {
        let text = self.read(input)?;
        serde_json::from_str(&text).map_err(|e| CliError(format!("invalid input: {e}")))
    }
}

fn read_source(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_json_file<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_source(Some(path), &mut std::io::empty())?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn dlog_limit() -> Result<u64, CliError> {
    match std::env::var(DLOG_LIMIT_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError(format!("{DLOG_LIMIT_VAR} must be a positive integer"))),
        Err(_) => Ok(DEFAULT_DLOG_LIMIT),
    }
}

fn build_field(f: &FieldArgs) -> Result<FiniteFieldCtx, CliError> {
    Ok(FiniteFieldCtx::build(f.p, f.k, dlog_limit()?)?)
}

fn build_endo(e: &EndoArgs, p: u64, k: u32) -> Result<ExponentFamily, CliError> {
    match (&e.endo, &e.power) {
        (Some(path), None) => read_json_file(path),
        (None, Some(s)) => {
            let levels: Vec<u32> = divisors(k as u64).into_iter().map(|d| d as u32).collect();
            Ok(ExponentFamily::power_map(p, &levels, s.clone())?)
        }
        _ => Err(CliError("give exactly one of --endo and --power".into())),
    }
}

fn parse_elems(ctx: &FiniteFieldCtx, xs: &[String]) -> Result<Vec<FieldElem>, CliError> {
    xs.iter().map(|s| ctx.parse(s).map_err(CliError::from)).collect()
}

fn fmt_elems(ctx: &FiniteFieldCtx, xs: &[FieldElem]) -> Vec<String> {
    xs.iter().map(|&x| ctx.format(x)).collect()
}

fn run(cli: Cli, io: &mut Io<'_>) -> Result<Outcome, CliError> {
    match cli.cmd {
        Top::Lin(c) => run_lin(c, io),
        Top::Grp(c) => run_grp(c, io),
        Top::Msystem(c) => run_ms(c, io),
        Top::Hom(c) => run_hom(c, io),
        Top::Term(c) => run_term(c),
        Top::Ff(c) => run_ff(c, io),
        Top::Psfc(c) => run_psfc(c, io),
    }
}

fn run_lin(c: LinCmd, io: &mut Io<'_>) -> Result<Outcome, CliError> {
    match c {
        LinCmd::Hnf(i) => {
            let a: IntMatrix = io.parse(&i)?;
            let (h, u) = intlinalg::hnf(&a);
            Ok(Outcome::ok(json!({"h": to_value(&h)?, "u": to_value(&u)?})))
        }
        LinCmd::Snf(i) => {
            let a: IntMatrix = io.parse(&i)?;
            let (d, u, v) = intlinalg::snf(&a);
            let invariants: Vec<String> =
                (0..d.rows().min(d.cols())).map(|i| d[(i, i)].to_string()).collect();
            Ok(Outcome::ok(json!({"d": to_value(&d)?, "u": to_value(&u)?, "v": to_value(&v)?, "invariants": invariants})))
        }
        LinCmd::Solve(i) => {
            #[derive(Deserialize)]
            struct In {
                a: IntMatrix,
                #[serde(with = "json::int_vec")]
                b: Vec<BigInt>,
            }
            let inp: In = io.parse(&i)?;
            let sol = intlinalg::solve_integral(&inp.a, &inp.b)?;
            let found = sol.is_some();
            let value = sol.map(|x| x.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            Ok(Outcome::verdict(json!({ "solution": value }), found))
        }
        LinCmd::Saturate(i) => {
            #[derive(Deserialize)]
            struct In {
                ambient_rank: usize,
                generators: Vec<Vec<json::Int>>,
            }
            let inp: In = io.parse(&i)?;
            let gens: Vec<Vec<BigInt>> =
                inp.generators.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
            let lat = Lattice::from_vectors(inp.ambient_rank, &gens)?;
            let sat = lat.saturate();
            let saturated = sat == lat;
            Ok(Outcome::ok(json!({"lattice": to_value(&lat)?, "saturation": to_value(&sat)?, "saturated": saturated})))
        }
    }
}

#[derive(Deserialize)]
struct GroupInput {
    #[serde(rename = "C")]
    c: Option<DivSubgroup>,
    #[serde(default)]
    a: Vec<SymElement>,
    b: Option<Value>,
    x: Option<SymElement>,
    n: Option<json::Int>,
    system: Option<CompleteSystem>,
}

impl GroupInput {
    fn base(&self) -> Result<DivSubgroup, CliError> {
        self.c.clone().ok_or_else(|| CliError("missing \"C\"".into()))
    }

    fn b_list(&self) -> Result<Vec<SymElement>, CliError> {
        match &self.b {
            Some(v @ Value::Array(_)) => Ok(serde_json::from_value(v.clone())?),
            Some(v) => Ok(vec![serde_json::from_value(v.clone())?]),
            None => Ok(Vec::new()),
        }
    }

    fn b_single(&self) -> Result<SymElement, CliError> {
        match &self.b {
            Some(v) => Ok(serde_json::from_value(v.clone())?),
            None => Err(CliError("missing \"b\"".into())),
        }
    }

    fn system(&self) -> Result<&CompleteSystem, CliError> {
        self.system.as_ref().ok_or_else(|| CliError("missing \"system\"".into()))
    }
}

fn run_grp(c: GrpCmd, io: &mut Io<'_>) -> Result<Outcome, CliError> {
    match c {
        GrpCmd::Order(i) => {
            let inp: GroupInput = io.parse(&i)?;
            let o = symgroup::order_over(&inp.base()?, &inp.a, &inp.b_single()?)?;
            let l: Vec<json::Num> = o.l.into_iter().map(json::Num).collect();
            Ok(Outcome::ok(json!({"n": to_value(&json::Num(o.n))?, "l": to_value(&l)?, "c": to_value(&o.cpart)?})))
        }
        GrpCmd::Member(i) => {
            let inp: GroupInput = io.parse(&i)?;
            let x = inp.x.clone().ok_or_else(|| CliError("missing \"x\"".into()))?;
            let m = inp.base()?.is_member(&x)?;
            Ok(Outcome::verdict(json!({ "member": m }), m))
        }
        GrpCmd::Independent(i) => {
            let inp: GroupInput = io.parse(&i)?;
            let m = inp.base()?.is_independent(&inp.a)?;
            Ok(Outcome::verdict(json!({ "independent": m }), m))
        }
        GrpCmd::Root(i) => {
            let inp: GroupInput = io.parse(&i)?;
            let x = inp.x.clone().ok_or_else(|| CliError("missing \"x\"".into()))?;
            let n = inp.n.clone().ok_or_else(|| CliError("missing \"n\"".into()))?.0;
            let (root, count) = x.canonical_nth_root(&n)?;
            Ok(Outcome::ok(json!({"root": to_value(&root)?, "count": count.to_string()})))
        }
    }
}

fn run_ms(c: MsCmd, io: &mut Io<'_>) -> Result<Outcome, CliError> {
    match c {
        MsCmd::Compute(i) => {
            let inp: GroupInput = io.parse(&i)?;
            let tau = msystems::compute_system(&inp.base()?, &inp.a, &inp.b_list()?)?;
            Ok(Outcome::ok(to_value(&tau)?))
        }
        MsCmd::Verify(i) => {
            let inp: GroupInput = io.parse(&i)?;
            let holds = msystems::verify_system(inp.system()?, &inp.base()?, &inp.a, &inp.b_list()?)?;
            Ok(Outcome::verdict(json!({ "holds": holds }), holds))
        }
        MsCmd::Transport(i) => {
            #[derive(Deserialize)]
            struct In {
                system: CompleteSystem,
                hom: GroupHom,
            }
            let inp: In = io.parse(&i)?;
            Ok(Outcome::ok(to_value(&msystems::transport(&inp.system, &inp.hom)?)?))
        }
        MsCmd::Present(i) => {
            let inp: GroupInput = io.parse(&i)?;
            let pres = msystems::minimal_presentation(inp.system()?, &inp.base()?, &inp.a, &inp.b_list()?)?;
            Ok(Outcome::ok(json!({ "equations": to_value(&pres)? })))
        }
        MsCmd::Nm { k, l } => {
            let (n, m) = msystems::compute_nm(&k, &l)?;
            let m: Vec<json::Num> = m.into_iter().map(json::Num).collect();
            Ok(Outcome::ok(json!({"N": to_value(&json::Num(n))?, "M": to_value(&m)?})))
        }
        MsCmd::Alpha(i) => {
            #[derive(Deserialize)]
            struct In {
                polys: Vec<IntPoly>,
                deltas: Vec<SymElement>,
            }
            let inp: In = io.parse(&i)?;
            Ok(Outcome::ok(to_value(&msystems::assemble_alpha_system(&inp.polys, &inp.deltas)?)?))
        }
    }
}

fn run_hom(c: HomCmd, io: &mut Io<'_>) -> Result<Outcome, CliError> {
    #[derive(Deserialize)]
    struct In {
        hom: Option<GroupHom>,
        x: Option<SymElement>,
        system: Option<CompleteSystem>,
        #[serde(default)]
        a: Vec<SymElement>,
        #[serde(default)]
        b: Vec<SymElement>,
        #[serde(default)]
        a_img: Vec<SymElement>,
        #[serde(default)]
        b_img: Vec<SymElement>,
        #[serde(rename = "A")]
        ha: Option<GroupHom>,
        #[serde(rename = "B")]
        hb: Option<GroupHom>,
        #[serde(rename = "D")]
        d: Option<DivSubgroup>,
        #[serde(default)]
        symbols: Vec<String>,
        #[serde(default)]
        relations: Vec<Relation>,
    }
    fn need<T>(x: Option<T>, name: &str) -> Result<T, CliError> {
        x.ok_or_else(|| CliError(format!("missing \"{name}\"")))
    }
    let input = match &c {
        HomCmd::Apply(i) | HomCmd::Extend(i) | HomCmd::Product(i) | HomCmd::Trivial(i) | HomCmd::Verify(i) => i.clone(),
    };
    let inp: In = io.parse(&input)?;
    match c {
        HomCmd::Apply(_) => {
            let img = need(inp.hom, "hom")?.apply(&need(inp.x, "x")?)?;
            Ok(Outcome::ok(json!({ "image": to_value(&img)? })))
        }
        HomCmd::Extend(_) => {
            let theta = need(inp.hom, "hom")?;
            let res = match &inp.system {
                Some(tau) => homext::extend_by_system(&theta, tau, &inp.a, &inp.b, &inp.a_img, &inp.b_img),
                None => homext::extend_over_independent(&theta, &inp.a, &inp.a_img),
            };
            match res {
                Ok(h) => Ok(Outcome::ok(json!({ "extended": true, "hom": to_value(&h)? }))),
                Err(homext::HomError::SystemViolated) => Ok(Outcome::verdict(
                    json!({ "extended": false, "reason": homext::HomError::SystemViolated.to_string() }),
                    false,
                )),
                Err(e) => Err(e.into()),
            }
        }
        HomCmd::Product(_) => {
            let h = homext::product_extension(&need(inp.ha, "A")?, &need(inp.hb, "B")?, &need(inp.d, "D")?)?;
            Ok(Outcome::ok(to_value(&h)?))
        }
        HomCmd::Trivial(_) => {
            let h = homext::extend_trivial(&need(inp.hom, "hom")?, &inp.symbols)?;
            Ok(Outcome::ok(to_value(&h)?))
        }
        HomCmd::Verify(_) => {
            let holds = homext::verify_hom(&need(inp.hom, "hom")?, &inp.relations)?;
            Ok(Outcome::verdict(json!({ "holds": holds }), holds))
        }
    }
}

fn run_term(c: TermCmd) -> Result<Outcome, CliError> {
    match c {
        TermCmd::Linearise { src } => {
            let t = termlang::parse_term(&src)?;
            Ok(Outcome::ok(to_value(&termlang::linearise(&t))?))
        }
        TermCmd::Eval { src, field, endo, assign } => {
            let t: Term = termlang::parse_term(&src)?;
            let ctx = build_field(&field)?;
            let e = build_endo(&endo, field.p, field.k)?;
            let raw: BTreeMap<String, String> = match assign {
                None => BTreeMap::new(),
                Some(s) if s.trim_start().starts_with('{') => serde_json::from_str(&s)?,
                Some(path) => read_json_file(Path::new(&path))?,
            };
            let env = raw
                .into_iter()
                .map(|(k, v)| Ok((k, ctx.parse(&v)?)))
                .collect::<Result<BTreeMap<_, _>, CliError>>()?;
            let v = termlang::eval_term(&t, &env, &ctx, &e)?;
            Ok(Outcome::ok(json!({ "value": ctx.format(v) })))
        }
    }
}

fn run_ff(c: FfCmd, io: &mut Io<'_>) -> Result<Outcome, CliError> {
    match c {
        FfCmd::Build { field } => {
            let ctx = build_field(&field)?;
            Ok(Outcome::ok(json!({
                "p": ctx.p(),
                "k": ctx.k(),
                "q": ctx.size(),
                "group_order": ctx.group_order(),
                "modulus": ctx.modulus(),
                "generator": ctx.generator().0,
            })))
        }
        FfCmd::Kernel { field, endo, poly } => {
            let e = build_endo(&endo, field.p, field.k)?;
            Ok(Outcome::ok(to_value(&ffworld::kernel_order(&e, &poly, field.k)?)?))
        }
        FfCmd::Coverage { field, endo, polys } => {
            if polys.len() != 2 {
                return Err(CliError("--poly must be given exactly twice".into()));
            }
            let ctx = build_field(&field)?;
            let e = build_endo(&endo, field.p, field.k)?;
            Ok(Outcome::ok(to_value(&ffworld::kernel_sum_coverage(&e, &ctx, &polys[0], &polys[1])?)?))
        }
        FfCmd::Witness { field, endo, n } => {
            let ctx = build_field(&field)?;
            let e = build_endo(&endo, field.p, field.k)?;
            match ffworld::torsion_witness(&e, &ctx, n)? {
                Some(w) => Ok(Outcome::ok(json!({
                    "zeta": ctx.format(w.zeta),
                    "b": ctx.format(w.b),
                    "a": ctx.format(w.a),
                }))),
                None => Ok(Outcome::verdict(json!({ "witness": null }), false)),
            }
        }
        FfCmd::Freeness { field, input } => {
            #[derive(Deserialize)]
            struct In {
                points: Vec<Vec<String>>,
            }
            let ctx = build_field(&field)?;
            let inp: In = io.parse(&input)?;
            let pts = inp.points.iter().map(|p| parse_elems(&ctx, p)).collect::<Result<Vec<_>, _>>()?;
            let f = ffworld::freeness_at_level(&ctx, &pts)?;
            let w = f.witness.map(|k| k.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            Ok(Outcome::verdict(json!({ "free": f.free, "witness": w }), f.free))
        }
        FfCmd::Characters(i) => {
            #[derive(Deserialize)]
            struct In {
                modulus: json::Int,
                generators: Vec<Vec<json::Int>>,
            }
            let inp: In = io.parse(&i)?;
            let n = inp.generators.first().map_or(0, Vec::len);
            let gens: Vec<Vec<BigInt>> =
                inp.generators.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
            let lat = Lattice::from_vectors(n, &gens)?;
            let chars = ffworld::subgroup_characters(&lat, &inp.modulus.0)?;
            let out: Vec<Vec<String>> = chars.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            Ok(Outcome::ok(json!({ "characters": out })))
        }
        FfCmd::Closure { field, m, input } => {
            #[derive(Deserialize)]
            struct In {
                set: Vec<String>,
            }
            let ctx = build_field(&field)?;
            let inp: In = io.parse(&input)?;
            let xs = parse_elems(&ctx, &inp.set)?;
            let prod = ffworld::pi_m_closure(&ctx, &xs, m)?;
            let (stable, sub) = ffworld::pi_stabilization(&ctx, &xs)?;
            Ok(Outcome::ok(json!({
                "m": m,
                "product": fmt_elems(&ctx, &prod),
                "stabilizes_at": stable,
                "subgroup": fmt_elems(&ctx, &sub),
            })))
        }
        FfCmd::Cltheta { degrees } => Ok(Outcome::ok(json!({ "degree": ffworld::cl_theta_degree(&degrees) }))),
        FfCmd::RandomEndo { p, levels, seed } => Ok(Outcome::ok(to_value(&ffworld::random_endo(p, &levels, seed)?)?)),
        FfCmd::Probe { field, endo, input } => {
            #[derive(Deserialize)]
            struct In {
                polys: Vec<IntPoly>,
                deltas: Vec<String>,
                points: Option<Vec<Vec<String>>>,
                line: Option<String>,
            }
            let ctx = build_field(&field)?;
            let e = build_endo(&endo, field.p, field.k)?;
            let inp: In = io.parse(&input)?;
            let pts = match (&inp.points, &inp.line) {
                (Some(ps), None) => ps.iter().map(|p| parse_elems(&ctx, p)).collect::<Result<Vec<_>, _>>()?,
                (None, Some(b)) => ffworld::line_points(&ctx, ctx.parse(b)?),
                _ => return Err(CliError("give exactly one of \"points\" and \"line\"".into())),
            };
            let deltas = parse_elems(&ctx, &inp.deltas)?;
            match ffworld::generic_kernel_probe(&ctx, &e, &pts, &inp.polys, &deltas)? {
                Some(pt) => Ok(Outcome::ok(json!({ "point": fmt_elems(&ctx, &pt) }))),
                None => Ok(Outcome::verdict(json!({ "point": null }), false)),
            }
        }
        FfCmd::Audit { config, report, p, k, endo } => {
            let text = read_source(config.as_deref(), io.stdin)?;
            let cfg: ffworld::AuditConfig =
                serde_json::from_str(&text).map_err(|e| CliError(format!("invalid config: {e}")))?;
            let p = p.or(cfg.p).ok_or_else(|| CliError("missing p".into()))?;
            let k = k.or(cfg.k).ok_or_else(|| CliError("missing k".into()))?;
            let e = match (&endo.endo, &endo.power, &cfg.endo) {
                (None, None, Some(e)) => e.clone(),
                _ => build_endo(&endo, p, k)?,
            };
            let ctx = build_field(&FieldArgs { p, k })?;
            let card = ffworld::genericity_audit(&e, &ctx, &cfg)?;
            let value = to_value(&card)?;
            if let Some(path) = report {
                std::fs::write(&path, canonical(&value)?).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            }
            Ok(Outcome::ok(value))
        }
    }
}

fn run_psfc(c: PsfcCmd, io: &mut Io<'_>) -> Result<Outcome, CliError> {
    match c {
        PsfcCmd::Check(i) => {
            let g: SzmielewInvariants = io.parse(&i)?;
            let v = szmielew::psfc_check(&g);
            Ok(Outcome::verdict(to_value(&v)?, v.passes))
        }
        PsfcCmd::Classify(i) => {
            let g: SzmielewInvariants = io.parse(&i)?;
            match szmielew::classify(&g) {
                Ok(c) => Ok(Outcome::ok(to_value(&c)?)),
                Err(szmielew::SzError::CriterionFails(_)) => {
                    Ok(Outcome::verdict(to_value(&szmielew::psfc_check(&g))?, false))
                }
                Err(e) => Err(e.into()),
            }
        }
        PsfcCmd::Witness { input, n } => {
            let g: SzmielewInvariants = io.parse(&input)?;
            Ok(Outcome::ok(to_value(&szmielew::witness_factors(&g, n)?)?))
        }
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn dispatch<S: AsRef<str>>(argv: &[S], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let args: Vec<&str> = argv.iter().map(|s| s.as_ref()).collect();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
        }
    };
    let mut io = Io { stdin };
    match run(cli, &mut io) {
        Ok(out) => match canonical(&out.value) {
            Ok(text) => {
                let _ = stdout.write_all(text.as_bytes());
                if out.ok {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                2
            }
        },
        Err(CliError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut argv = vec!["mendo"];
        argv.extend_from_slice(args);
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = dispatch(&argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_subcommand() {
        let (code, out, err) = call(&["nosuch"], "");
        assert_eq!(code, 2);
        assert!(out.is_empty() && !err.is_empty());
    }

    #[test]
    fn kernel_order_via_cli() {
        let (code, out, _) = call(&["ff", "kernel", "--p", "2", "--k", "4", "--power", "3", "--poly", "X"], "");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], 3);
    }

    #[test]
    fn psfc_exit_codes() {
        let z8 = r#"{"primes":{"2":{"finite":[[3,1]],"lambda":0,"nu":0}},"epsilon":"omega"}"#;
        assert_eq!(call(&["psfc", "check"], z8).0, 0);
        let bad = r#"{"primes":{"2":{"finite":[[1,2]]}}}"#;
        let (code, out, _) = call(&["psfc", "check"], bad);
        assert_eq!(code, 1);
        assert!(out.contains("\"failing_prime\": 2"));
        assert_eq!(call(&["psfc", "check"], "{").0, 2);
    }

    #[test]
    fn negative_nm_values_parse() {
        let (code, out, _) = call(&["msystem", "nm", "--k", "2,3", "--l", "-1,1"], "");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["N"], 6);
        assert_eq!(v["M"], json!([-3, 2]));
    }
}
