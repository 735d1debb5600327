//! `weyltrunc`: describe root systems, export truncation posets, and run the
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 resource cap exceeded.

mod config;
mod ranges;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weyltrunc_core::export::{hasse_dot, to_json, truncation_csv, TruncationExport};
use weyltrunc_core::limits::DEFAULT_RANK_CAP;
use weyltrunc_core::verify::{explore_point, verify_full_suite_with, ExploreRow};
use weyltrunc_core::{
    is_prime, relation_on, AffineContext, Error, ExcellentReading, Limits, OrderKind, OrderTag,
    PRegime, PositiveRoot, RootSystem, RootSystemSpec, TruncationPair, VerificationReport, Weight,
    WeightSet,
};

use ranges::Spec;

const DOT_CONVENTION: &str = "dot action w.y = w(y + rho) - rho, following Jantzen's convention \
     (Borel subgroup attached to the negative roots)";

#[derive(Parser)]
#[command(
    name = "weyltrunc",
    version,
    about = "Truncated weight posets of reductive groups in characteristic p",
    after_help = "The dot action is w.y = w(y + rho) - rho, following Jantzen's convention.\n\
                  Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 resource cap."
)]
struct Cli {
    /// Flat key=value file of flag defaults; command-line flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan matrix, positive roots, ρ, α₀, h and |W| as JSON.
    #[command(args_override_self = true)]
    Describe {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write Λ_m, Λ_m ∩ pY, Γ_m and the pairing table.
    #[command(args_override_self = true)]
    Truncate {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification suite for each m.
    #[command(args_override_self = true)]
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        p: i64,
        /// A single m or an inclusive range a..b.
        #[arg(long, value_parser = ranges::parse_m, default_value = "1")]
        m: Spec,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock times; otherwise elapsed_ms is 0.
        #[arg(long)]
        timings: bool,
        /// Scope of the Bruhat clause in the excellent order.
        #[arg(long, value_enum, default_value_t = Reading::SameOrbit)]
        reading: Reading,
    },
    /// Order relation on one of the sets, with its cover relation.
    #[command(args_override_self = true)]
    Poset {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep (p, m) and record which statements hold, without asserting.
    #[command(args_override_self = true)]
    Explore {
        #[command(flatten)]
        sys: SystemArgs,
        /// Explicit list `5,7` or range `5..13` (primes in the range).
        #[arg(long, value_parser = ranges::parse_spec)]
        p: Spec,
        #[arg(long, value_parser = ranges::parse_m, default_value = "1")]
        m: Spec,
        /// Admit h < p <= 2h - 2.
        #[arg(long)]
        allow_small_p: bool,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SystemArgs {
    /// Cartan type letter, A to G.
    #[arg(long = "type", value_name = "LETTER")]
    type_letter: String,
    #[arg(long)]
    rank: usize,
    /// Raise the rank cap (default 4, at most 6).
    #[arg(long)]
    rank_cap: Option<usize>,
    /// Largest weight box, in lattice points, that may be scanned.
    #[arg(long, env = "WEYLTRUNC_CAP", default_value_t = Limits::default().box_cap)]
    cap: u64,
}

#[derive(Args)]
struct PosetArgs {
    #[arg(long)]
    p: i64,
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    m: i64,
    #[arg(long, value_parser = parse_order, default_value = "excellent")]
    order: OrderTag,
    /// Set whose Hasse diagram is drawn.
    #[arg(long, value_enum, default_value_t = SetName::Lambda)]
    set: SetName,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reading {
    /// Compare minimal elements only within one W-orbit.
    SameOrbit,
    /// Compare minimal elements across orbits as well.
    CrossOrbit,
}

impl From<Reading> for ExcellentReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::SameOrbit => ExcellentReading::SameOrbit,
            Reading::CrossOrbit => ExcellentReading::CrossOrbit,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SetName {
    Lambda,
    LambdaPy,
    Gamma,
}

fn parse_order(s: &str) -> Result<OrderTag, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = OrderTag::ALL.iter().map(|t| t.as_str()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource() {
            3
        } else if e.is_config() {
            2
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<bool, Failure>;

impl SystemArgs {
    fn build(&self) -> Result<Arc<RootSystem>, Failure> {
        let spec = RootSystemSpec::parse(&self.type_letter, self.rank)?;
        let limits = Limits::default()
            .with_rank_cap(self.rank_cap.unwrap_or(DEFAULT_RANK_CAP))?
            .with_box_cap(self.cap);
        Ok(Arc::new(RootSystem::build_with(spec, limits)?))
    }

    fn context(&self, p: i64) -> Result<AffineContext, Failure> {
        Ok(AffineContext::new(self.build()?, p)?)
    }
}

fn require_emit(emit: Emit, allowed: &[Emit], command: &str) -> Result<(), Failure> {
    if allowed.contains(&emit) {
        Ok(())
    } else {
        let name = emit.to_possible_value().map(|v| v.get_name().to_string());
        Err(Failure::usage(format!(
            "{command} cannot emit {}",
            name.unwrap_or_default()
        )))
    }
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Description<'a> {
    #[serde(rename = "type")]
    type_name: String,
    rank: usize,
    cartan: &'a [Vec<i64>],
    positive_roots: &'a [PositiveRoot],
    rho: &'a Weight,
    alpha0: &'a Weight,
    coxeter_number: i64,
    weyl_order: u64,
    convention: &'static str,
}

fn describe(sys: &SystemArgs, emit: Emit, out: &Option<PathBuf>) -> Outcome {
    require_emit(emit, &[Emit::Json], "describe")?;
    let rs = sys.build()?;
    let d = Description {
        type_name: rs.spec().to_string(),
        rank: rs.rank(),
        cartan: rs.cartan(),
        positive_roots: rs.positive_roots(),
        rho: rs.rho(),
        alpha0: rs.alpha0(),
        coxeter_number: rs.coxeter_number(),
        weyl_order: rs.weyl_order(),
        convention: DOT_CONVENTION,
    };
    write_out(out, &to_json(&d)?)?;
    Ok(true)
}

fn chosen_set(pair: &TruncationPair, set: SetName) -> WeightSet {
    match set {
        SetName::Lambda => pair.lambda.clone(),
        SetName::LambdaPy => pair.lambda_py(),
        SetName::Gamma => pair.gamma.clone(),
    }
}

fn truncate(sys: &SystemArgs, args: &PosetArgs, emit: Emit, out: &Option<PathBuf>) -> Outcome {
    let ctx = sys.context(args.p)?;
    let pair = TruncationPair::build(&ctx, args.m)?;
    let text = match emit {
        Emit::Json => to_json(&TruncationExport::new(&pair))?,
        Emit::Csv => truncation_csv(&pair)?,
        Emit::Dot => {
            let elems = chosen_set(&pair, args.set);
            let rel = relation_on(&OrderKind::from_tag(args.order, &ctx), ctx.rs(), &elems)?;
            hasse_dot(&dot_name(&ctx, args), &elems, &rel)
        }
    };
    write_out(out, &text)?;
    Ok(true)
}

fn dot_name(ctx: &AffineContext, args: &PosetArgs) -> String {
    let set = serde_json::to_value(args.set).ok();
    let set = set.as_ref().and_then(|v| v.as_str()).unwrap_or("set");
    format!(
        "{}-p{}-m{}-{set}-{}",
        ctx.rs().spec(),
        ctx.p(),
        args.m,
        args.order
    )
}

#[derive(Serialize)]
struct PosetReport {
    #[serde(rename = "type")]
    type_name: String,
    p: i64,
    m: i64,
    order: OrderTag,
    set: SetName,
    elements: WeightSet,
    covers: Vec<(usize, usize)>,
    reflexive: bool,
    antisymmetric: bool,
    transitive: bool,
}

fn poset(sys: &SystemArgs, args: &PosetArgs, emit: Emit, out: &Option<PathBuf>) -> Outcome {
    require_emit(emit, &[Emit::Json, Emit::Dot], "poset")?;
    let ctx = sys.context(args.p)?;
    let pair = TruncationPair::build(&ctx, args.m)?;
    let elems = chosen_set(&pair, args.set);
    let rel = relation_on(&OrderKind::from_tag(args.order, &ctx), ctx.rs(), &elems)?;
    let report = PosetReport {
        type_name: ctx.rs().spec().to_string(),
        p: ctx.p(),
        m: args.m,
        order: args.order,
        set: args.set,
        covers: rel.covers(),
        reflexive: rel.is_reflexive(),
        antisymmetric: rel.is_antisymmetric(),
        transitive: rel.is_transitive(),
        elements: elems.clone(),
    };
    let ok = report.reflexive && report.antisymmetric && report.transitive;
    let text = match emit {
        Emit::Dot => hasse_dot(&dot_name(&ctx, args), &elems, &rel),
        _ => to_json(&report)?,
    };
    write_out(out, &text)?;
    Ok(ok)
}

struct VerifyOpts {
    timings: bool,
    reading: Reading,
}

fn verify(
    sys: &SystemArgs,
    p: i64,
    m: &Spec,
    emit: Emit,
    out: &Option<PathBuf>,
    opts: VerifyOpts,
) -> Outcome {
    require_emit(emit, &[Emit::Json], "verify")?;
    let started = std::time::Instant::now();
    let ctx = sys.context(p)?;
    let suites = m
        .values()
        .into_iter()
        .map(|m| {
            log::info!("verifying {} p={p} m={m}", ctx.rs().spec());
            verify_full_suite_with(&ctx, m, opts.reading.into())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut report =
        VerificationReport::aggregate(format!("verify-{}-p{p}", ctx.rs().spec()), suites, started);
    if !opts.timings {
        report.clear_timings();
    }
    write_out(out, &to_json(&report)?)?;
    Ok(report.passed)
}

#[derive(Serialize)]
struct Skipped {
    p: i64,
    reason: String,
}

#[derive(Serialize)]
struct Exploration {
    #[serde(rename = "type")]
    type_name: String,
    coxeter_number: i64,
    /// Primes with h < p <= 2h - 2.
    boundary_window: Vec<i64>,
    note: String,
    skipped: Vec<Skipped>,
    rows: Vec<ExploreRow>,
}

fn explore(
    sys: &SystemArgs,
    p: &Spec,
    m: &Spec,
    allow_small_p: bool,
    emit: Emit,
    out: &Option<PathBuf>,
) -> Outcome {
    require_emit(emit, &[Emit::Json, Emit::Csv], "explore")?;
    let rs = sys.build()?;
    let h = rs.coxeter_number();
    let window: Vec<i64> = (h + 1..=2 * h - 2).filter(|&q| is_prime(q)).collect();
    let mut skipped = Vec::new();
    let mut rows = Vec::new();
    for q in p.p_values() {
        if q <= h {
            skipped.push(Skipped {
                p: q,
                reason: format!("p <= h = {h}"),
            });
            continue;
        }
        let ctx = AffineContext::new(rs.clone(), q)?;
        if ctx.regime() == PRegime::Boundary && !allow_small_p {
            return Err(Failure::usage(format!(
                "p = {q} lies in h < p <= 2h - 2 = {}; pass --allow-small-p to include it",
                2 * h - 2
            )));
        }
        for mv in m.values() {
            rows.push(explore_point(&ctx, mv)?);
        }
    }
    let note = if window.is_empty() {
        format!(
            "empty boundary window: no prime p with {h} < p <= {}",
            2 * h - 2
        )
    } else {
        format!(
            "primes with {h} < p <= {}: {window:?}; outcomes there are observational",
            2 * h - 2
        )
    };
    let text = match emit {
        Emit::Csv => {
            let mut s = String::from("p,m,regime,h1,h2,bijection,cardinality,lambda_py,gamma\n");
            for r in &rows {
                let regime = match r.regime {
                    PRegime::Boundary => "boundary",
                    PRegime::Stable => "stable",
                };
                s.push_str(&format!(
                    "{},{},{regime},{},{},{},{},{},{}\n",
                    r.p, r.m, r.h1, r.h2, r.bijection, r.cardinality, r.lambda_py, r.gamma
                ));
            }
            s
        }
        _ => to_json(&Exploration {
            type_name: rs.spec().to_string(),
            coxeter_number: h,
            boundary_window: window,
            note,
            skipped,
            rows,
        })?,
    };
    write_out(out, &text)?;
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Describe { sys, emit, out } => describe(sys, *emit, out),
        Command::Truncate {
            sys,
            poset,
            emit,
            out,
        } => truncate(sys, poset, *emit, out),
        Command::Poset {
            sys,
            poset: args,
            emit,
            out,
        } => poset(sys, args, *emit, out),
        Command::Verify {
            sys,
            p,
            m,
            emit,
            out,
            timings,
            reading,
        } => {
            let opts = VerifyOpts {
                timings: *timings,
                reading: *reading,
            };
            verify(sys, *p, m, *emit, out, opts)
        }
        Command::Explore {
            sys,
            p,
            m,
            allow_small_p,
            emit,
            out,
        } => explore(sys, p, m, *allow_small_p, *emit, out),
    }
}

fn main() -> ExitCode {
    let args = match config::layer(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
