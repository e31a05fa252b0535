//! Batch command-line front end.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::braiding::RMATRIX_KINDS;
use crate::coeffmodel::verify_z_relations;
use crate::error::{Error, Result};
use crate::flagcalc::{binomial, Calculus, FlagContext};
use crate::repkit::build_irrep;
use crate::report::Check;
use crate::rootdata::{format_weight, LieType, RootSystem};

/// Default guard for `QFLAG_MAX_RANK`.
pub const DEFAULT_MAX_RANK: usize = 8;

pub const SUITES: [&str; 10] = [
    "ybe",
    "crels",
    "triangularity",
    "spectrum",
    "dims",
    "zrel",
    "central",
    "graded",
    "volume",
    "restricted",
];

#[derive(Parser, Debug)]
#[command(name = "qflag", version, about = "Exact algebra for quantized irreducible flag manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Append elapsed milliseconds to verdicts.
    #[arg(long, global = true)]
    pub timings: bool,
    /// Run independent suites concurrently.
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Record,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    #[arg(long = "type")]
    pub lie_type: String,
    #[arg(long)]
    pub rank: usize,
    /// Crossed node s (1-based).
    #[arg(long)]
    pub node: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis and weights of V(omega_s).
    Irrep {
        #[command(flatten)]
        target: Target,
        /// Highest weight in fundamental weight coordinates, e.g. 1,0.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Option<Vec<i64>>,
    },
    /// One matrix of the R-matrix family as a coordinate list.
    Rmatrix {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "rh")]
        kind: String,
    },
    /// Graded dimensions of a fiber algebra.
    Dims {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "d")]
        calculus: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        target: Target,
        /// Comma separated subset of the suites; all when omitted.
        #[arg(long, value_delimiter = ',')]
        suite: Option<Vec<String>>,
    },
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub lie_type: LieType,
    pub rank: usize,
    pub node: usize,
    pub format: Format,
    pub timings: bool,
    pub parallel: bool,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_target(t: &Target, cli: &Cli) -> Result<Self> {
        let lie_type: LieType = t.lie_type.parse()?;
        let max = match std::env::var("QFLAG_MAX_RANK") {
            Ok(v) => v
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("QFLAG_MAX_RANK={v}")))?,
            Err(_) => DEFAULT_MAX_RANK,
        };
        if t.rank > max {
            return Err(Error::InvalidArgument(format!(
                "rank {} exceeds QFLAG_MAX_RANK={max}",
                t.rank
            )));
        }
        Ok(RunConfig {
            lie_type,
            rank: t.rank,
            node: t.node,
            format: cli.format,
            timings: cli.timings,
            parallel: cli.parallel,
            output: cli.output.clone(),
        })
    }

    fn context(&self) -> Result<FlagContext> {
        FlagContext::new(self.lie_type, self.rank, self.node)
    }

    fn context_label(&self) -> String {
        format!("{}{},{}", self.lie_type, self.rank, self.node)
    }
}

/// Outcome of a command: rendered text and exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

pub fn cmd_irrep(cfg: &RunConfig, weight: Option<&[i64]>) -> Result<Outcome> {
    let rs = std::sync::Arc::new(RootSystem::new(cfg.lie_type, cfg.rank)?);
    let mu = match weight {
        Some(w) => w.to_vec(),
        None => {
            rs.parabolic(cfg.node)?;
            rs.fundamental_weight(cfg.node - 1)
        }
    };
    let v = build_irrep(&rs, &mu)?;
    let mut text = String::new();
    match cfg.format {
        Format::Table => {
            let _ = writeln!(
                text,
                "# V({}) of {}{} dim {}",
                format_weight(&mu),
                cfg.lie_type,
                cfg.rank,
                v.dim()
            );
            for b in 0..v.dim() {
                let _ = writeln!(text, "{}\t{}\t{}", b + 1, v.labels()[b], format_weight(v.weight(b)));
            }
        }
        Format::Record => {
            for b in 0..v.dim() {
                let _ = writeln!(
                    text,
                    "basis\tindex={}\tlabel={}\tweight={}",
                    b + 1,
                    v.labels()[b],
                    format_weight(v.weight(b))
                );
            }
        }
    }
    Ok(Outcome { text, code: 0 })
}

pub fn cmd_rmatrix(cfg: &RunConfig, kind: &str) -> Result<Outcome> {
    if !RMATRIX_KINDS.contains(&kind) {
        return Err(Error::InvalidArgument(format!(
            "unknown kind '{kind}' ({})",
            RMATRIX_KINDS.join("|")
        )));
    }
    let ctx = cfg.context()?;
    let m = ctx.fam.get(kind).expect("kind checked");
    let n = ctx.n;
    let mut text = String::new();
    if cfg.format == Format::Table {
        let _ = writeln!(
            text,
            "# {kind} for {}: entry M^(k,l)_(i,j), row (k,l), column (i,j), indices 1..{n}, v_{n} highest",
            ctx.label()
        );
    }
    for (r, c, x) in m.entries() {
        let (k, l, i, j) = (r / n + 1, r % n + 1, c / n + 1, c % n + 1);
        match cfg.format {
            Format::Table => {
                let _ = writeln!(text, "({k},{l},{i},{j}) -> {x}");
            }
            Format::Record => {
                let _ = writeln!(text, "entry\tkind={kind}\tk={k}\tl={l}\ti={i}\tj={j}\tvalue={x}");
            }
        }
    }
    Ok(Outcome { text, code: 0 })
}

pub fn cmd_dims(cfg: &RunConfig, calculus: &str, max_degree: Option<usize>) -> Result<Outcome> {
    let which: Calculus = calculus.parse()?;
    let ctx = cfg.context()?;
    let top = if which == Calculus::D { 2 * ctx.m() } else { ctx.m() };
    let rep = ctx.derham_dims(which, max_degree.unwrap_or(top + 1))?;
    let text = match cfg.format {
        Format::Table => rep.to_string(),
        Format::Record => rep
            .dims
            .iter()
            .enumerate()
            .map(|(k, d)| format!("dims\tcontext={}\tcalculus={which}\tk={k}\td={d}\n", cfg.context_label()))
            .collect(),
    };
    Ok(Outcome { text, code: 0 })
}

fn run_suite(ctx: &FlagContext, suite: &str) -> Result<Vec<Check>> {
    Ok(match suite {
        "ybe" => ctx.verify_ybe(),
        "crels" => ctx.verify_crels(),
        "triangularity" => ctx.verify_triangularity(),
        "spectrum" => ctx.verify_spectrum(),
        "dims" => {
            let m = ctx.m();
            let mut out = Vec::new();
            for (which, total) in [(Calculus::Del, m), (Calculus::Delbar, m), (Calculus::D, 2 * m)] {
                let rep = ctx.derham_dims(which, total + 1)?;
                let want: Vec<usize> = (0..=total + 1).map(|k| binomial(total, k)).collect();
                out.push(Check::from_bool(format!("dims {which}"), rep.dims == want, || {
                    format!("got {:?}", rep.dims)
                }));
            }
            out
        }
        "zrel" => {
            let rels = ctx.coordinate_relations();
            let mut out = vec![rels.epsilon_check()];
            out.extend(verify_z_relations(ctx)?);
            out
        }
        "central" => {
            let (alg, c) = ctx.mixed_algebra()?;
            let mut bad = Vec::new();
            for g in 0..alg.generators() {
                if !alg.central_degree3_check(&c, g)? {
                    bad.push(alg.labels()[g].clone());
                }
            }
            vec![Check::from_bool("central c", bad.is_empty(), || {
                format!("fails for {}", bad.join(","))
            })]
        }
        "graded" => {
            let mut out = Vec::new();
            for which in [Calculus::Del, Calculus::Delbar, Calculus::D] {
                out.extend(ctx.graded_commutation_check(which)?);
            }
            for which in [Calculus::Del, Calculus::Delbar, Calculus::D] {
                out.extend(ctx.graded_commutation_mirrored(which)?);
            }
            out
        }
        "volume" => ctx.volume_form_check()?,
        "restricted" => ctx
            .restricted_check()?
            .into_iter()
            .map(|(name, r)| {
                Check::from_bool(format!("restricted {name} q^{}", r.exponent), r.pass, || {
                    "identity fails".into()
                })
            })
            .collect(),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite '{other}' ({})",
                SUITES.join("|")
            )))
        }
    })
}

pub fn cmd_verify(cfg: &RunConfig, suites: &[String]) -> Result<Outcome> {
    for s in suites {
        if !SUITES.contains(&s.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "unknown suite '{s}' ({})",
                SUITES.join("|")
            )));
        }
    }
    let ctx = cfg.context()?;
    let timed = |s: &str| {
        let t0 = Instant::now();
        let r = run_suite(&ctx, s);
        (r, t0.elapsed().as_millis())
    };
    let results: Vec<(Result<Vec<Check>>, u128)> = if cfg.parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = suites.iter().map(|s| scope.spawn(|| timed(s))).collect();
            handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
        })
    } else {
        suites.iter().map(|s| timed(s)).collect()
    };
    let context = cfg.context_label();
    let mut text = String::new();
    let mut code = 0;
    for (suite, (res, ms)) in suites.iter().zip(results) {
        let checks = match res {
            Ok(c) => c,
            Err(e) => vec![Check::fail(suite.clone(), e.to_string())],
        };
        for c in checks {
            if !c.pass {
                code = 1;
            }
            let verdict = if c.pass { "pass" } else { "FAIL" };
            let witness = c.witness.clone().unwrap_or_default();
            match cfg.format {
                Format::Table => {
                    let _ = write!(text, "{suite}\t{context}\t{}\t{verdict}", c.name);
                    if !witness.is_empty() {
                        let _ = write!(text, "\t{witness}");
                    }
                    if cfg.timings {
                        let _ = write!(text, "\t{ms}ms");
                    }
                    text.push('\n');
                }
                Format::Record => {
                    let _ = write!(
                        text,
                        "verdict\tsuite={suite}\tcontext={context}\tcheck={}\tverdict={verdict}\twitness={witness}",
                        c.name
                    );
                    if cfg.timings {
                        let _ = write!(text, "\telapsed-ms={ms}");
                    }
                    text.push('\n');
                }
            }
        }
    }
    Ok(Outcome { text, code })
}

/// Parses arguments, dispatches and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = dispatch(&cli);
    match result {
        Ok((out, cfg)) => {
            if let Err(e) = emit(&out.text, cfg.output.as_ref()) {
                eprintln!("error: {e}");
                return 2;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Outcome, RunConfig)> {
    match &cli.command {
        Command::Irrep { target, weight } => {
            let cfg = RunConfig::from_target(target, cli)?;
            Ok((cmd_irrep(&cfg, weight.as_deref())?, cfg))
        }
        Command::Rmatrix { target, kind } => {
            let cfg = RunConfig::from_target(target, cli)?;
            Ok((cmd_rmatrix(&cfg, kind)?, cfg))
        }
        Command::Dims {
            target,
            calculus,
            max_degree,
        } => {
            let cfg = RunConfig::from_target(target, cli)?;
            Ok((cmd_dims(&cfg, calculus, *max_degree)?, cfg))
        }
        Command::Verify { target, suite } => {
            let cfg = RunConfig::from_target(target, cli)?;
            let suites: Vec<String> = match suite {
                Some(s) => s.clone(),
                None => SUITES.iter().map(|s| s.to_string()).collect(),
            };
            Ok((cmd_verify(&cfg, &suites)?, cfg))
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
