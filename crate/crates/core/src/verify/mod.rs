//! Deterministic verification suites over seeded grids.
//!
//! Every suite expands into an ordered list of cases. Cases run in parallel,
//! each with its own ChaCha stream derived from the run seed, and rows are
//! reported in case order, so a `(suite, config, seed)` triple always yields
//! the same report.

pub mod sample;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::LaurentPoly;
use crate::asw::{fmd, reduce_representative, AswCharacter, LogDifferential};
use crate::sympow::{ProductChart, SymmetricChart};
use crate::witt::{ghost_components, WittContext, DEFAULT_LENGTH_CAP};
use crate::{Error, Result, Valuation};

pub const DEFAULT_SEED: u64 = 20240229;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WittRing,
    FmdHom,
    ThmWitt,
    CorWitt2,
    Anbasis,
    Blprod,
    Dprod,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::WittRing,
        Suite::FmdHom,
        Suite::ThmWitt,
        Suite::CorWitt2,
        Suite::Anbasis,
        Suite::Blprod,
        Suite::Dprod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::WittRing => "witt-ring",
            Suite::FmdHom => "fmd-hom",
            Suite::ThmWitt => "thm-witt",
            Suite::CorWitt2 => "cor-witt2",
            Suite::Anbasis => "anbasis",
            Suite::Blprod => "blprod",
            Suite::Dprod => "dprod",
        }
    }

    /// `"all"` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Self::ALL.to_vec());
        }
        Self::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|x| vec![*x])
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

/// Grid parameters; `None` selects the suite's own default.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub primes: Option<Vec<u32>>,
    /// Largest Witt length index `m`; the grid runs over `0..=m`.
    pub m: Option<usize>,
    pub ds: Option<Vec<usize>>,
    pub max_sw: Option<i64>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub length_cap: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            primes: None,
            m: None,
            ds: None,
            max_sw: None,
            samples: None,
            seed: DEFAULT_SEED,
            length_cap: DEFAULT_LENGTH_CAP,
            cache_dir: None,
        }
    }
}

impl VerifyConfig {
    fn primes(&self, default: &[u32]) -> Vec<u32> {
        self.primes.clone().unwrap_or_else(|| default.to_vec())
    }

    fn ms(&self, default: usize) -> Vec<usize> {
        (0..=self.m.unwrap_or(default)).collect()
    }

    fn ds(&self) -> Vec<usize> {
        self.ds.clone().unwrap_or_else(|| vec![2, 3])
    }

    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn ctx(&self, p: u32, m: usize) -> Result<Arc<WittContext>> {
        WittContext::shared_with(p, m, self.length_cap, self.cache_dir.as_deref())
    }

    fn chart(&self, p: u32, m: usize, d: usize) -> Result<SymmetricChart> {
        SymmetricChart::with_caps(p, m, d, self.length_cap, d.max(crate::sympow::DEFAULT_ARITY_CAP), self.cache_dir.as_deref())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Uncertified,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Uncertified => "UNCERTIFIED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub suite: &'static str,
    pub case: String,
    pub expected: String,
    pub computed: String,
    pub certified: bool,
    pub status: Status,
}

impl Row {
    fn check(suite: Suite, case: String, expected: impl ToString, computed: impl ToString, ok: bool) -> Row {
        Row {
            suite: suite.name(),
            case,
            expected: expected.to_string(),
            computed: computed.to_string(),
            certified: true,
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }

    fn error(suite: Suite, case: String, expected: impl ToString, err: Error) -> Row {
        Row {
            suite: suite.name(),
            case,
            expected: expected.to_string(),
            computed: format!("error: {err}"),
            certified: false,
            status: Status::Fail,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub uncertified: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.rows {
            match r.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Uncertified => t.uncertified += 1,
            }
        }
        t
    }

    pub fn passed(&self, strict: bool) -> bool {
        let t = self.tally();
        t.fail == 0 && !(strict && t.uncertified > 0)
    }

    /// Line-delimited JSON: a header, one record per row, a summary.
    pub fn to_json_lines(&self) -> String {
        let names: Vec<&str> = self.suites.iter().map(|s| s.name()).collect();
        let mut out = String::new();
        let header = serde_json::json!({"record": "header", "suites": names, "seed": self.seed});
        writeln!(out, "{header}").unwrap();
        for r in &self.rows {
            let mut v = serde_json::to_value(r).expect("row serializes");
            v["record"] = "row".into();
            writeln!(out, "{v}").unwrap();
        }
        let mut summary = serde_json::to_value(self.tally()).expect("tally serializes");
        summary["record"] = "summary".into();
        writeln!(out, "{summary}").unwrap();
        out
    }

    pub fn to_table(&self) -> String {
        let names: Vec<&str> = self.suites.iter().map(|s| s.name()).collect();
        let mut out = format!("# suites: {}  seed: {}\n", names.join(","), self.seed);
        let heads = ["suite", "case", "expected", "computed", "certified", "status"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.suite.to_string(),
                    r.case.clone(),
                    r.expected.clone(),
                    r.computed.clone(),
                    r.certified.to_string(),
                    r.status.label().to_string(),
                ]
            })
            .collect();
        let mut widths = heads.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cols: Vec<&str>| {
            let padded: Vec<String> = cols.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out += &line(heads.to_vec());
        for row in &cells {
            out += &line(row.iter().map(String::as_str).collect());
        }
        let t = self.tally();
        writeln!(out, "# pass {}  fail {}  uncertified {}", t.pass, t.fail, t.uncertified).unwrap();
        out
    }
}

fn case_rng(seed: u64, suite: Suite, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | index as u64);
    rng
}

type Case = Box<dyn Fn(&mut ChaCha8Rng) -> Row + Send + Sync>;

pub fn run(suites: &[Suite], config: &VerifyConfig) -> Result<Report> {
    let mut rows = Vec::new();
    for &suite in suites {
        let cases = cases(suite, config)?;
        let seed = config.seed;
        let mut suite_rows: Vec<Row> = cases
            .par_iter()
            .enumerate()
            .map(|(i, case)| case(&mut case_rng(seed, suite, i)))
            .collect();
        rows.append(&mut suite_rows);
    }
    Ok(Report { suites: suites.to_vec(), seed: config.seed, rows })
}

fn cases(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Case>> {
    match suite {
        Suite::WittRing => witt_ring(cfg),
        Suite::FmdHom => fmd_hom(cfg),
        Suite::ThmWitt => thm_witt(cfg),
        Suite::CorWitt2 => cor_witt2(cfg),
        Suite::Anbasis => anbasis(cfg),
        Suite::Blprod => blprod(cfg),
        Suite::Dprod => dprod(cfg),
    }
}

fn witt_ring(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let samples = cfg.samples(200);
    let mut out: Vec<Case> = Vec::new();
    for p in cfg.primes(&[2, 3, 5]) {
        for m in cfg.ms(2) {
            let ctx = cfg.ctx(p, m)?;
            out.push(Box::new(move |rng| {
                let mut agree = 0;
                for _ in 0..samples {
                    let a = sample::integer_vector(rng, &ctx, 30);
                    let b = sample::integer_vector(rng, &ctx, 30);
                    let (ga, gb) = (ghost_components(&a), ghost_components(&b));
                    let sum = ghost_components(&a.add(&b).expect("same context"));
                    let prod = ghost_components(&a.mul(&b).expect("same context"));
                    let ok = (0..ctx.length()).all(|k| sum[k] == &ga[k] + &gb[k] && prod[k] == &ga[k] * &gb[k]);
                    agree += ok as usize;
                }
                Row::check(
                    Suite::WittRing,
                    format!("p={p} m={m} ghost(+,×)"),
                    format!("{samples}/{samples}"),
                    format!("{agree}/{samples}"),
                    agree == samples,
                )
            }));
        }
    }
    Ok(out)
}

fn fmd_hom(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let samples = cfg.samples(100);
    let mut out: Vec<Case> = Vec::new();
    for p in cfg.primes(&[2, 3, 5]) {
        for m in cfg.ms(2) {
            let ctx = cfg.ctx(p, m)?;
            out.push(Box::new(move |rng| {
                let (mut additive, mut filtered) = (0, 0);
                for _ in 0..samples {
                    let (ba, bb) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
                    let a = sample::witt_in_fil(rng, &ctx, ba, 2);
                    let b = sample::witt_in_fil(rng, &ctx, bb, 2);
                    let s = a.add(&b).expect("same context");
                    additive += (fmd(&s) == fmd(&a).add(&fmd(&b))) as usize;
                    filtered += [&a, &b, &s]
                        .iter()
                        .all(|x| x.v_witt(LaurentPoly::ord_t) <= fmd(x).v_log())
                        as usize;
                }
                let ok = additive == samples && filtered == samples;
                Row::check(
                    Suite::FmdHom,
                    format!("p={p} m={m} additive,v_witt≤v_log"),
                    format!("{samples},{samples}"),
                    format!("{additive},{filtered}"),
                    ok,
                )
            }));
        }
    }
    Ok(out)
}

fn thm_witt(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let samples = cfg.samples(100);
    let max_sw = cfg.max_sw.unwrap_or(8);
    let mut out: Vec<Case> = Vec::new();
    for p in cfg.primes(&[2, 3, 5]) {
        for d in cfg.ds() {
            for m in cfg.ms(2) {
                let chart = cfg.chart(p, m, d)?;
                out.push(Box::new(move |rng| {
                    let case = format!("lambda-bound p={p} d={d} m={m}");
                    let expected = "v(λα) ≥ -⌊n/d⌋";
                    let mut violations = 0;
                    let mut worst = i64::MAX;
                    for _ in 0..samples {
                        let bound = rng.gen_range(1..=max_sw);
                        let raw = sample::witt_in_fil(rng, chart.ctx(), bound, 1);
                        let reduced = match reduce_representative(&raw) {
                            Ok(r) => r.reduced,
                            Err(e) => return Row::error(Suite::ThmWitt, case, expected, e),
                        };
                        let n = reduced.v_witt(LaurentPoly::ord_t).conductor_bound();
                        let lambda = match chart.lambda_pushforward(&reduced) {
                            Ok(l) => l,
                            Err(e) => return Row::error(Suite::ThmWitt, case, expected, e),
                        };
                        let target = -n.div_euclid(d as i64);
                        match lambda.v_witt(crate::algebra::SFraction::v_exceptional) {
                            Valuation::Finite(v) => {
                                worst = worst.min(v - target);
                                violations += (v < target) as usize;
                            }
                            Valuation::Infinity => {}
                        }
                    }
                    let slack = if worst == i64::MAX { "inf".to_string() } else { worst.to_string() };
                    Row::check(
                        Suite::ThmWitt,
                        case,
                        expected,
                        format!("violations {violations}/{samples}, min slack {slack}"),
                        violations == 0,
                    )
                }));
            }
        }
    }
    let forms = cfg.samples(100).min(10);
    for p in cfg.primes(&[2, 3, 5]) {
        for d in cfg.ds() {
            let chart = cfg.chart(p, 0, d)?;
            for e in 1..=max_sw {
                let chart = chart.clone();
                let j = e.div_euclid(d as i64);
                let tag = if e % d as i64 == 0 { "mu-level boundary" } else { "mu-level" };
                out.push(Box::new(move |rng| {
                    let case = format!("{tag} p={p} d={d} e={e}");
                    let mut hits = 0;
                    let mut seen = Vec::new();
                    for _ in 0..forms {
                        let omega = sample::form_with_level(rng, p, e, 2);
                        match chart.mu_pushforward(&omega) {
                            Ok(mu) => {
                                let v = SymmetricChart::v_log_exceptional(&mu);
                                hits += (v == Valuation::Finite(-j)) as usize;
                                if !seen.contains(&v) {
                                    seen.push(v);
                                }
                            }
                            Err(err) => return Row::error(Suite::ThmWitt, case, -j, err),
                        }
                    }
                    seen.sort();
                    let vs: Vec<String> = seen.iter().map(Valuation::to_string).collect();
                    Row::check(Suite::ThmWitt, case, -j, vs.join(","), hits == forms)
                }));
            }
        }
    }
    Ok(out)
}

fn cor_witt2(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let samples = cfg.samples(3);
    let max_sw = cfg.max_sw.unwrap_or(7);
    let mut out: Vec<Case> = Vec::new();
    for p in cfg.primes(&[2, 3]) {
        for d in cfg.ds() {
            for m in cfg.ms(1) {
                let chart = cfg.chart(p, m, d)?;
                for n in 0..=max_sw {
                    if !sample::conductor_attainable(p, m, n) {
                        continue;
                    }
                    for s in 0..samples {
                        let chart = chart.clone();
                        out.push(Box::new(move |rng| {
                            let case = format!("p={p} d={d} m={m} n={n} #{s}");
                            let expected = n.div_euclid(d as i64);
                            let alpha = sample::witt_with_conductor(rng, chart.ctx(), n, 1).expect("attainable");
                            match chart.sympow_swan(&AswCharacter::from_witt(alpha)) {
                                Ok(c) => sympow_row(case, n, d, &c),
                                Err(e) => Row::error(Suite::CorWitt2, case, expected, e),
                            }
                        }));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn sympow_row(case: String, n: i64, d: usize, c: &crate::sympow::SympowCertificate) -> Row {
    let ex = &c.exceptional;
    let expected = c.upstairs.n.div_euclid(d as i64);
    let status = if c.upstairs.n != n || !c.lambda_bound_holds {
        Status::Fail
    } else if !ex.certified {
        Status::Uncertified
    } else if ex.n == expected {
        Status::Pass
    } else {
        Status::Fail
    };
    let computed = if ex.certified { ex.n.to_string() } else { format!("[{}, {}]", ex.bounds.0, ex.bounds.1) };
    Row { suite: Suite::CorWitt2.name(), case, expected: expected.to_string(), computed, certified: ex.certified, status }
}

fn anbasis(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let mut out: Vec<Case> = Vec::new();
    for p in cfg.primes(&[2, 3, 5]) {
        for d in cfg.ds() {
            let chart = cfg.chart(p, 0, d)?;
            for j in -2..=2 {
                let chart = chart.clone();
                out.push(Box::new(move |_| {
                    let case = format!("p={p} d={d} j={j}");
                    match chart.anbasis_check(j) {
                        Ok(r) => Row::check(
                            Suite::Anbasis,
                            case,
                            "basis, v(det)=0",
                            format!(
                                "integral={} v(det)={} routes={}",
                                r.entries_integral, r.det_valuation, r.routes_agree
                            ),
                            r.pass,
                        ),
                        Err(e) => Row::error(Suite::Anbasis, case, "basis, v(det)=0", e),
                    }
                }));
            }
        }
    }
    Ok(out)
}

fn blprod(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let max_sw = cfg.max_sw.unwrap_or(5);
    let mut out: Vec<Case> = Vec::new();
    for p in cfg.primes(&[2, 3]) {
        for m in cfg.ms(1) {
            let chart = ProductChart::from_context(cfg.ctx(p, m)?);
            for n1 in 0..=max_sw {
                for n2 in 0..=max_sw {
                    if !sample::conductor_attainable(p, m, n1) || !sample::conductor_attainable(p, m, n2) {
                        continue;
                    }
                    let chart = chart.clone();
                    out.push(Box::new(move |rng| {
                        let case = format!("p={p} m={m} n1={n1} n2={n2}");
                        let expected = n1.max(n2);
                        let a1 = sample::witt_with_conductor(rng, chart.ctx(), n1, 1).expect("attainable");
                        let a2 = sample::witt_with_conductor(rng, chart.ctx(), n2, 1).expect("attainable");
                        let r = match chart.blprod_swan(&AswCharacter::from_witt(a1), &AswCharacter::from_witt(a2)) {
                            Ok(r) => r,
                            Err(e) => return Row::error(Suite::Blprod, case, expected, e),
                        };
                        let pr = &r.product;
                        let status = if (r.first.n, r.second.n) != (n1, n2) || !r.witness_splits {
                            Status::Fail
                        } else if !pr.certified {
                            Status::Uncertified
                        } else if pr.n == expected {
                            Status::Pass
                        } else {
                            Status::Fail
                        };
                        let computed =
                            if pr.certified { pr.n.to_string() } else { format!("[{}, {}]", pr.bounds.0, pr.bounds.1) };
                        Row {
                            suite: Suite::Blprod.name(),
                            case,
                            expected: expected.to_string(),
                            computed,
                            certified: pr.certified,
                            status,
                        }
                    }));
                }
            }
        }
    }
    Ok(out)
}

fn dprod(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let samples = cfg.samples(20);
    let mut out: Vec<Case> = Vec::new();
    for p in cfg.primes(&[2, 3, 5]) {
        out.push(Box::new(move |rng| {
            let mut good = 0;
            for _ in 0..samples {
                let f = sample::bivariate(rng, p, -5, 3, 4);
                let g = sample::bivariate(rng, p, -5, 3, 4);
                let omega = LogDifferential::new(crate::asw::LogBasis::DlogVars { n: 2 }, vec![f.clone(), g.clone()])
                    .expect("rank 2");
                let Ok(split) = ProductChart::dprod_decompose(&omega) else { continue };
                // Joint level straight from the monomials of both coefficients.
                let joint = f.terms().chain(g.terms()).map(|(e, _)| -e.iter().sum::<i64>()).max();
                good += (split.recombine() == omega && split.level == joint) as usize;
            }
            Row::check(
                Suite::Dprod,
                format!("p={p} round-trip, joint level"),
                format!("{samples}/{samples}"),
                format!("{good}/{samples}"),
                good == samples,
            )
        }));
    }
    Ok(out)
}
