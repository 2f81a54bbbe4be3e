//! `swancond`: Swan conductors of Artin–Schreier–Witt characters and the
//! symmetric-power conductor checks, from the command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure or
//! an uncertified result under `--strict`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use swancond::algebra::{LaurentPoly, SFraction};
use swancond::asw::{rsw_class, swan_conductor, AswCharacter};
use swancond::format::{certificate_json, form_json, parse_witt, Render};
use swancond::sympow::{min_degree_bound, ProductChart, SymmetricChart, DEFAULT_ARITY_CAP};
use swancond::verify::{self, Suite, VerifyConfig};
use swancond::witt::{cache, UniversalKind, WittContext, WittVector, DEFAULT_LENGTH_CAP};

#[derive(Parser, Debug)]
#[command(name = "swancond", version, about = "Swan conductors of Artin-Schreier-Witt characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Treat uncertified results as failures (exit 2).
    #[arg(long, global = true)]
    strict: bool,
    /// Directory for cached universal Witt polynomials.
    #[arg(long, global = true, env = cache::CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Largest supported Witt length m + 1.
    #[arg(long, global = true, default_value_t = DEFAULT_LENGTH_CAP)]
    length_cap: usize,
    /// Largest supported symmetric-power arity d.
    #[arg(long, global = true, default_value_t = DEFAULT_ARITY_CAP)]
    arity_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct WittArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 0)]
    m: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified Swan conductor of δ(α).
    Swan {
        #[command(flatten)]
        w: WittArgs,
        /// Witt vector payload, e.g. "[[[-2,1]]]".
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Refined Swan conductor class F^m d of the reduced representative.
    Rsw {
        #[command(flatten)]
        w: WittArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// λ(α) on the d-th symmetric power, in S_1..S_d.
    Lambda {
        #[command(flatten)]
        w: WittArgs,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Swan conductor of χ^(d) at the exceptional divisor over dP.
    SympowSwan {
        #[command(flatten)]
        w: WittArgs,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Swan conductor of χ_1 ⊠ χ_2 on the blow-up of X × Y along D × E.
    BlprodSwan {
        #[command(flatten)]
        w: WittArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha1: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha2: String,
    },
    /// ω_i in the basis dS_k/S_d.
    OmegaBasis {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
    },
    /// max{2g − 1 + deg m, deg m}.
    MinDegree {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        deg_mod: i64,
    },
    /// Run a verification suite (or "all").
    Verify {
        suite: String,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<u32>>,
        /// Largest m of the grid.
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated arities.
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<usize>>,
        #[arg(long)]
        max_sw: Option<i64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
    /// Manage the universal polynomial cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Build {
        #[command(flatten)]
        w: WittArgs,
    },
    Inspect {
        #[command(flatten)]
        w: WittArgs,
    },
    Clear,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] swancond::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(swancond::Error::Internal(_)) => 2,
            _ => 1,
        }
    }
}

/// What a command printed and whether it counts as success.
struct Outcome {
    json: Value,
    table: String,
    ok: bool,
}

impl Outcome {
    fn new(json: Value, table: String) -> Self {
        Outcome { json, table, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let g = &cli.global;
    let out = match &cli.command {
        Command::Verify { suite, p, m, d, max_sw, samples, seed } => {
            let suites = Suite::parse_list(suite).map_err(|e| CliError::Usage(e.to_string()))?;
            let config = VerifyConfig {
                primes: p.clone(),
                m: *m,
                ds: d.clone(),
                max_sw: *max_sw,
                samples: *samples,
                seed: *seed,
                length_cap: g.length_cap,
                cache_dir: g.cache_dir.clone(),
            };
            let report = verify::run(&suites, &config)?;
            let text = match g.format {
                Format::Json => report.to_json_lines(),
                Format::Table => report.to_table(),
            };
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            return Ok(if report.passed(g.strict) { 0 } else { 2 });
        }
        Command::Cache { action } => cache_command(g, action)?,
        other => compute(g, other)?,
    };
    match g.format {
        Format::Json => println!("{}", out.json),
        Format::Table => print!("{}", out.table),
    }
    Ok(if out.ok { 0 } else { 2 })
}

fn context(g: &Global, w: &WittArgs) -> Result<Arc<WittContext>, CliError> {
    Ok(WittContext::shared_with(w.p, w.m, g.length_cap, g.cache_dir.as_deref())?)
}

fn witt_payload(ctx: &Arc<WittContext>, flag: &str, text: &str) -> Result<WittVector<LaurentPoly>, CliError> {
    let comps = parse_witt(ctx.p(), text).map_err(|e| match e {
        swancond::Error::Parse { pos, msg } => CliError::Usage(format!("--{flag}: invalid payload at byte {pos}: {msg}")),
        other => CliError::Lib(other),
    })?;
    if comps.len() != ctx.length() {
        return Err(CliError::Usage(format!(
            "--{flag}: expected {} Witt components for m = {}, found {}",
            ctx.length(),
            ctx.m(),
            comps.len()
        )));
    }
    Ok(WittVector::new(ctx.clone(), comps)?)
}

fn chart(g: &Global, w: &WittArgs, d: usize) -> Result<SymmetricChart, CliError> {
    Ok(SymmetricChart::with_caps(w.p, w.m, d, g.length_cap, g.arity_cap, g.cache_dir.as_deref())?)
}

fn compute(g: &Global, cmd: &Command) -> Result<Outcome, CliError> {
    Ok(match cmd {
        Command::Swan { w, alpha } => {
            let ctx = context(g, w)?;
            let chi = AswCharacter::from_witt(witt_payload(&ctx, "alpha", alpha)?);
            let cert = swan_conductor(&chi)?;
            let mut json = certificate_json(&cert);
            rename_n(&mut json, "swan");
            let table = format!(
                "Sw = {}{}\nreduced = ({})\nwitness = {}\n",
                cert.n,
                certified_note(cert.certified, cert.bounds),
                join_rendered(cert.reduced.components()),
                json["witness"]["text"].as_str().unwrap_or_default()
            );
            Outcome { json, table, ok: cert.certified || !g.strict }
        }
        Command::Rsw { w, alpha } => {
            let ctx = context(g, w)?;
            let chi = AswCharacter::from_witt(witt_payload(&ctx, "alpha", alpha)?);
            let (n, omega) = rsw_class(&chi)?;
            let rsw = form_json(&omega);
            let table = format!("Sw = {n}\nrsw = {}\n", rsw["text"].as_str().unwrap_or_default());
            Outcome::new(json!({"swan": n, "rsw": rsw}), table)
        }
        Command::Lambda { w, d, alpha } => {
            let c = chart(g, w, *d)?;
            let a = witt_payload(c.ctx(), "alpha", alpha)?;
            let l = c.lambda_pushforward(&a)?;
            let comps: Vec<String> = l.components().iter().map(Render::render).collect();
            let v = l.v_witt(SFraction::v_exceptional);
            let table = format!("λα = ({})\nv = {v}\n", comps.join(", "));
            Outcome::new(json!({"lambda": comps, "v_exceptional": v}), table)
        }
        Command::SympowSwan { w, d, alpha } => {
            let c = chart(g, w, *d)?;
            let a = witt_payload(c.ctx(), "alpha", alpha)?;
            let r = c.sympow_swan(&AswCharacter::from_witt(a))?;
            let ex = &r.exceptional;
            let lambda: Vec<String> = ex.reduced.components().iter().map(Render::render).collect();
            let json = json!({
                "upstairs": r.upstairs.n,
                "exceptional": ex.n,
                "expected": r.expected,
                "certified": ex.certified,
                "bounds": [ex.bounds.0, ex.bounds.1],
                "lambda_bound_holds": r.lambda_bound_holds,
                "lambda": lambda,
                "witness": form_json(&ex.witness),
            });
            let table = format!(
                "Sw upstairs = {}\nSw exceptional = {}{}\nexpected ⌊n/d⌋ = {}\nλα = ({})\n",
                r.upstairs.n,
                ex.n,
                certified_note(ex.certified, ex.bounds),
                r.expected,
                lambda.join(", ")
            );
            let ok = r.lambda_bound_holds && (!ex.certified || ex.n == r.expected) && (ex.certified || !g.strict);
            Outcome { json, table, ok }
        }
        Command::BlprodSwan { w, alpha1, alpha2 } => {
            let ctx = context(g, w)?;
            let chart = ProductChart::from_context(ctx.clone());
            let chi1 = AswCharacter::from_witt(witt_payload(&ctx, "alpha1", alpha1)?);
            let chi2 = AswCharacter::from_witt(witt_payload(&ctx, "alpha2", alpha2)?);
            let r = chart.blprod_swan(&chi1, &chi2)?;
            let mut json = certificate_json(&r.product);
            rename_n(&mut json, "swan");
            json["n1"] = r.first.n.into();
            json["n2"] = r.second.n.into();
            json["witness_splits"] = r.witness_splits.into();
            let table = format!(
                "Sw_R1 = {}, Sw_R2 = {}\nSw_R3 = {}{}\n",
                r.first.n,
                r.second.n,
                r.product.n,
                certified_note(r.product.certified, r.product.bounds)
            );
            let ok = r.witness_splits && (r.product.certified || !g.strict);
            Outcome { json, table, ok }
        }
        Command::OmegaBasis { p, d, i } => {
            let c = SymmetricChart::with_caps(*p, 0, *d, g.length_cap, g.arity_cap, g.cache_dir.as_deref())?;
            let omega = c.omega_basis(*i)?;
            let form = form_json(&omega);
            let table = format!("ω_{i} = {}\n", form["text"].as_str().unwrap_or_default());
            Outcome::new(json!({"i": i, "d": d, "omega": form}), table)
        }
        Command::MinDegree { genus, deg_mod } => {
            let b = min_degree_bound(*genus, *deg_mod).map_err(|e| CliError::Usage(e.to_string()))?;
            Outcome::new(json!(b), format!("{b}\n"))
        }
        Command::Verify { .. } | Command::Cache { .. } => unreachable!("dispatched in run"),
    })
}

fn rename_n(json: &mut Value, key: &str) {
    if let Some(obj) = json.as_object_mut() {
        if let Some(n) = obj.remove("n") {
            obj.insert(key.into(), n);
        }
    }
}

fn certified_note(certified: bool, bounds: (i64, i64)) -> String {
    if certified {
        " (certified)".into()
    } else {
        format!(" (uncertified, bounds [{}, {}])", bounds.0, bounds.1)
    }
}

fn join_rendered<R: Render>(xs: &[R]) -> String {
    xs.iter().map(Render::render).collect::<Vec<_>>().join(", ")
}

fn cache_dir(g: &Global) -> Result<&Path, CliError> {
    g.cache_dir
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("no cache directory: pass --cache-dir or set {}", cache::CACHE_ENV)))
}

const INLINE_TERMS: usize = 12;

fn cache_command(g: &Global, action: &CacheAction) -> Result<Outcome, CliError> {
    let dir = cache_dir(g)?;
    Ok(match action {
        CacheAction::Build { w } => {
            let ctx = cache::load_or_build(dir, w.p, w.m, g.length_cap)?;
            let path = cache::cache_file(dir, ctx.p(), ctx.length());
            let table = format!("wrote {}\n", path.display());
            Outcome::new(json!({"path": path.display().to_string(), "p": w.p, "m": w.m}), table)
        }
        CacheAction::Inspect { w } => {
            let ctx = cache::load(dir, w.p, w.m)?.ok_or_else(|| {
                CliError::Usage(format!("no cache for p = {}, m = {} in {}; run `cache build`", w.p, w.m, dir.display()))
            })?;
            let mut records = Vec::new();
            let mut table = String::new();
            for kind in [UniversalKind::Sum, UniversalKind::Product, UniversalKind::Negation] {
                let names = ctx.variable_names(kind);
                for (k, u) in ctx.polys(kind).iter().enumerate() {
                    let poly = u.poly();
                    let label = format!("{}_{k}", kind.letter());
                    let text = (poly.num_terms() <= INLINE_TERMS).then(|| poly.display_with(&names).to_string());
                    match &text {
                        Some(t) => table += &format!("{label} = {t}\n"),
                        None => table += &format!("{label}: {} terms, degree {}\n", poly.num_terms(), poly.degree()),
                    }
                    records.push(json!({
                        "poly": label,
                        "terms": poly.num_terms(),
                        "degree": poly.degree(),
                        "text": text,
                    }));
                }
            }
            Outcome::new(json!({"p": w.p, "m": w.m, "polys": records}), table)
        }
        CacheAction::Clear => {
            let n = cache::clear(dir)?;
            Outcome::new(json!({"removed": n}), format!("removed {n} cache files\n"))
        }
    })
}
