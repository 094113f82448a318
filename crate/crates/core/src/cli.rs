//! Command-line front end: `cl1`, `wh`, `deflate`, `verify` and `oracle`.
//!
//! Reports go to standard output as text or JSON, progress goes to standard
//! error. [`run`] returns the process exit code.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cl1::{
    self, build_gamma, deflation_of, witness_w, AbelianInvariants, Cl1Computation, Cl1Options, WhiteheadSummary,
};
use crate::constructors::GroupSpec;
use crate::error::{Error, Result};
use crate::formulas::{self, Family};
use crate::genetic::BasisPath;
use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER, DEFAULT_SEED};
use crate::subgroups::Subgroup;
use crate::sympoly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Malformed command line (clap's own code).
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_SIZE: i32 = 4;
pub const EXIT_PRIME: i32 = 5;
pub const EXIT_ERROR: i32 = 6;

/// Orders from which relation assembly reports progress.
const PROGRESS_FROM: usize = 243;

#[derive(Debug, Parser)]
#[command(name = "whitehead", version, about = "Cl1(ZP) and Whitehead groups of odd-order p-groups")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest group order that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Worker threads for relation assembly (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Invariant factors of Cl1(ZP).
    Cl1 { spec: String },
    /// Free rank and torsion of Wh(P).
    Wh { spec: String },
    /// Deflation along a characteristic subgroup and its kernel.
    Deflate { spec: String, selector: Selector },
    /// Run a named check suite.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Largest rank for the elementary abelian suite.
        #[arg(long)]
        max_k: Option<u32>,
        /// Rank for the oracle suite.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Compare the relations of (C_p)^k with the symmetric-power oracle.
    Oracle { p: u64, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selector {
    Frattini,
    Center,
    Derived,
}

impl Selector {
    fn subgroup(self, g: &FiniteGroup) -> Subgroup {
        match self {
            Selector::Frattini => g.frattini().clone(),
            Selector::Center => g.center().clone(),
            Selector::Derived => g.derived_subgroup().clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremA,
    ElementaryAbelian,
    Oracle,
    Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Everything a command needs besides its own arguments.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub max_order: usize,
    pub workers: Option<usize>,
    pub seed: u64,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: cli.command,
            format: if cli.json { OutputFormat::Json } else { OutputFormat::Text },
            max_order: cli.max_order,
            workers: cli.workers,
            seed: cli.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusCount {
    pub modulus: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSummary {
    pub path: BasisPath,
    pub entries: usize,
    /// Number of entries per order of `N_P(S)/S`.
    pub quotient_orders: Vec<ModulusCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cl1Report {
    pub spec: String,
    pub order: String,
    pub basis: BasisSummary,
    pub gamma_moduli: Vec<u64>,
    pub relations: usize,
    pub invariants: AbelianInvariants,
    pub expected: Option<AbelianInvariants>,
    pub matches: Option<bool>,
}

impl Cl1Report {
    pub fn passed(&self) -> bool {
        self.matches != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhReport {
    pub spec: String,
    pub free_rank: u64,
    pub expected_free_rank: u64,
    pub torsion: AbelianInvariants,
    pub expected_torsion: Option<AbelianInvariants>,
    pub sk1_equals_cl1: bool,
}

impl WhReport {
    pub fn passed(&self) -> bool {
        self.free_rank == self.expected_free_rank && self.expected_torsion.as_ref().map_or(true, |t| *t == self.torsion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeflateReport {
    pub spec: String,
    pub selector: Selector,
    pub normal_order: usize,
    pub quotient_order: usize,
    pub cl1: AbelianInvariants,
    pub cl1_quotient: AbelianInvariants,
    /// `Cl₁` of the quotient computed from its own basis.
    pub cl1_quotient_direct: AbelianInvariants,
    pub kernel: AbelianInvariants,
    pub expected_kernel_order: Option<u64>,
    pub relations_map_into: bool,
    pub surjective: bool,
    pub order_law: bool,
}

impl DeflateReport {
    pub fn passed(&self) -> bool {
        self.relations_map_into
            && self.surjective
            && self.order_law
            && self.cl1_quotient == self.cl1_quotient_direct
            && self.expected_kernel_order.map_or(true, |o| self.kernel.order() == Some(o as u128))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            passed: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub p: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.passed_count() == self.checks.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCliReport {
    pub comparison: sympoly::OracleReport,
    pub span_rank_all_pairs: usize,
}

impl OracleCliReport {
    pub fn passed(&self) -> bool {
        self.comparison.passed() && self.span_rank_all_pairs == self.comparison.expected_rank
    }
}

/// One report per command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Cl1(Cl1Report),
    Wh(WhReport),
    Deflate(DeflateReport),
    Verify(VerifyReport),
    Oracle(OracleCliReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Cl1(r) => r.passed(),
            Report::Wh(r) => r.passed(),
            Report::Deflate(r) => r.passed(),
            Report::Verify(r) => r.passed(),
            Report::Oracle(r) => r.passed(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Cl1(r) => {
                s += &format!("group          {} (order {})\n", r.spec, r.order);
                let orders: Vec<String> = r.basis.quotient_orders.iter().map(|m| format!("{}x{}", m.count, m.modulus)).collect();
                s += &format!(
                    "genetic basis  {} entries ({:?} path), quotient orders {}\n",
                    r.basis.entries,
                    r.basis.path,
                    orders.join(", ")
                );
                s += &format!("gamma moduli   {}\n", compress(&r.gamma_moduli));
                s += &format!("relations      {}\n", r.relations);
                s += &format!("Cl1            {}\n", r.invariants);
                s += &format!("invariants     {:?}\n", r.invariants.factors());
                match (&r.expected, r.matches) {
                    (Some(e), Some(true)) => s += &format!("closed form    {e} (match)\n"),
                    (Some(e), _) => s += &format!("closed form    {e} (MISMATCH)\n"),
                    _ => s += "closed form    none for this family\n",
                }
            }
            Report::Wh(r) => {
                s += &format!("group          {}\n", r.spec);
                s += &format!("free rank      {} (closed form {})\n", r.free_rank, r.expected_free_rank);
                s += &format!("torsion        {}\n", r.torsion);
                s += &format!("SK1 = Cl1      {}\n", r.sk1_equals_cl1);
            }
            Report::Deflate(r) => {
                s += &format!("group          {}\n", r.spec);
                s += &format!("N              {}, order {}\n", value_name(r.selector), r.normal_order);
                s += &format!("Cl1(P)         {}\n", r.cl1);
                s += &format!("Cl1(P/N)       {} (direct {})\n", r.cl1_quotient, r.cl1_quotient_direct);
                s += &format!("K              {}\n", r.kernel);
                if let Some(o) = r.expected_kernel_order {
                    s += &format!("expected |K|   {o}\n");
                }
                s += &format!("R maps into R~ {}\n", r.relations_map_into);
                s += &format!("surjective     {}\n", r.surjective);
                s += &format!("order law      {}\n", r.order_law);
            }
            Report::Verify(r) => {
                s += &format!("verify {} (p = {})\n", value_name(r.suite), r.p);
                for c in &r.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    s += &format!("  {tag}  {:<34} expected {:<22} got {}\n", c.name, c.expected, c.actual);
                }
                s += &format!("{}/{} pass\n", r.passed_count(), r.checks.len());
            }
            Report::Oracle(r) => {
                let c = &r.comparison;
                s += &format!("oracle p = {}, k = {}\n", c.p, c.k);
                s += &format!("relation rank        {}\n", c.relation_rank);
                s += &format!("rank of r            {}\n", c.r_rank);
                s += &format!("expected C(p+k-1,p)  {}\n", c.expected_rank);
                s += &format!("same row space       {}\n", c.same_space);
                s += &format!("all-pairs span       {}\n", r.span_rank_all_pairs);
                s += &format!("{}\n", if r.passed() { "PASS" } else { "FAIL" });
            }
        }
        s
    }
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value().map_or_else(String::new, |v| v.get_name().to_string())
}

/// `[1, 3, 3, 9]` as `1, 3^2, 9`.
fn compress(moduli: &[u64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < moduli.len() {
        let j = moduli[i..].iter().take_while(|&&m| m == moduli[i]).count();
        parts.push(if j == 1 { moduli[i].to_string() } else { format!("{}^{}", moduli[i], j) });
        i += j;
    }
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::SizeExceeded { .. } => EXIT_SIZE,
        Error::UnsupportedPrime(_) => EXIT_PRIME,
        _ => EXIT_ERROR,
    }
}

fn options(order: usize) -> Cl1Options {
    let mut opts = Cl1Options::default();
    if order >= PROGRESS_FROM {
        let last = Arc::new(AtomicUsize::new(0));
        opts.progress = Some(Arc::new(move |done, total| {
            let step = (done * 10 / total.max(1)) as usize;
            if last.fetch_max(step, Ordering::Relaxed) < step || done == total {
                eprintln!("relations {done}/{total}");
            }
        }));
    }
    opts
}

fn build(spec: &GroupSpec, cfg: &RunConfig) -> Result<FiniteGroup> {
    let g = spec.build_bounded(cfg.max_order)?;
    let diag = g.validate_with_seed(cfg.seed);
    if !diag.passed() {
        return Err(Error::Internal(format!("{spec} failed validation: {}", diag.failures.join("; "))));
    }
    Ok(g)
}

fn expected_invariants(family: &Family) -> Option<AbelianInvariants> {
    family.expected_cl1().map(AbelianInvariants::from_cyclic_orders)
}

fn cl1_report(spec: &GroupSpec, g: &FiniteGroup, comp: &Cl1Computation) -> Cl1Report {
    let gamma = build_gamma(&comp.basis);
    let mut quotient_orders: Vec<ModulusCount> = Vec::new();
    let mut moduli = comp.basis.moduli();
    moduli.sort_unstable();
    for m in moduli {
        match quotient_orders.last_mut() {
            Some(last) if last.modulus == m => last.count += 1,
            _ => quotient_orders.push(ModulusCount { modulus: m, count: 1 }),
        }
    }
    let expected = expected_invariants(&spec.family());
    Cl1Report {
        spec: spec.to_string(),
        order: format!("{}^{}", g.prime(), g.log_order()),
        basis: BasisSummary {
            path: comp.basis.path,
            entries: comp.basis.len(),
            quotient_orders,
        },
        gamma_moduli: gamma.moduli(),
        relations: comp.relations.len(),
        matches: expected.as_ref().map(|e| *e == comp.invariants),
        expected,
        invariants: comp.invariants.clone(),
    }
}

pub fn cmd_cl1(spec: &str, cfg: &RunConfig) -> Result<Cl1Report> {
    let spec: GroupSpec = spec.parse()?;
    let g = build(&spec, cfg)?;
    let comp = cl1::cl1_compute(&g, &options(g.order()))?;
    Ok(cl1_report(&spec, &g, &comp))
}

pub fn cmd_whitehead(spec: &str, cfg: &RunConfig) -> Result<WhReport> {
    let spec: GroupSpec = spec.parse()?;
    let g = build(&spec, cfg)?;
    let WhiteheadSummary {
        free_rank,
        torsion,
        sk1_equals_cl1,
    } = cl1::whitehead_summary(&g, &options(g.order()))?;
    let family = spec.family();
    Ok(WhReport {
        spec: spec.to_string(),
        free_rank,
        expected_free_rank: family.expected_free_rank(),
        torsion,
        expected_torsion: expected_invariants(&family),
        sk1_equals_cl1,
    })
}

pub fn cmd_deflate(spec: &str, selector: Selector, cfg: &RunConfig) -> Result<DeflateReport> {
    let spec: GroupSpec = spec.parse()?;
    let g = build(&spec, cfg)?;
    let opts = options(g.order());
    let n = selector.subgroup(&g);
    let d = deflation_of(&g, cl1::cl1_compute(&g, &opts)?, &n, &opts)?;
    let p = g.prime() as u64;
    Ok(DeflateReport {
        spec: spec.to_string(),
        selector,
        normal_order: n.order(),
        quotient_order: g.order() / n.order(),
        order_law: d.order_law_holds(p),
        cl1: d.source.invariants.clone(),
        cl1_quotient: d.target.invariants.clone(),
        cl1_quotient_direct: d.independent_target.clone(),
        kernel: d.kernel.clone(),
        expected_kernel_order: match selector {
            Selector::Frattini => spec.family().expected_kernel_order(),
            _ => None,
        },
        relations_map_into: d.relations_map_into,
        surjective: d.surjective,
    })
}

fn special_group_checks(p: u64, cfg: &RunConfig, checks: &mut Vec<Check>) -> Result<()> {
    let p32 = u32::try_from(p).map_err(|_| Error::UnsupportedPrime(p))?;
    let specs = [
        GroupSpec::ExtraSpecial { p: p32, r: 2, exponent_p2: false },
        GroupSpec::ExtraSpecial { p: p32, r: 2, exponent_p2: true },
        GroupSpec::AlmostExtraSpecial { p: p32, r: 2 },
    ];
    for spec in specs {
        let g = build(&spec, cfg)?;
        eprintln!("{spec}: order {}", g.order());
        let opts = options(g.order());
        let comp = cl1::cl1_compute(&g, &opts)?;
        let family = spec.family();
        let expected = expected_invariants(&family).expect("closed form covers extra-special families");
        checks.push(Check::new(format!("{spec} Cl1"), &expected, &comp.invariants));
        let d = deflation_of(&g, comp, g.frattini(), &opts)?;
        let k_order = d.kernel.order().map_or("overflow".into(), |o| o.to_string());
        checks.push(Check::new(
            format!("{spec} |K|"),
            family.expected_kernel_order().expect("r >= 2"),
            k_order,
        ));
        let m = d.source.invariants.log_order(p) - d.kernel.log_order(p);
        checks.push(Check::new(
            format!("{spec} M"),
            formulas::complement_rank(p, g.log_order() as u64),
            m,
        ));
        checks.push(Check::new(format!("{spec} deflation consistent"), true, d.consistent(p)));
    }
    Ok(())
}

fn elementary_abelian_checks(p: u64, max_k: u32, cfg: &RunConfig, checks: &mut Vec<Check>) -> Result<()> {
    let p32 = u32::try_from(p).map_err(|_| Error::UnsupportedPrime(p))?;
    for k in 1..=max_k {
        let spec = GroupSpec::ElementaryAbelian { p: p32, k };
        let g = build(&spec, cfg)?;
        let comp = cl1::cl1_compute(&g, &options(g.order()))?;
        let expected = AbelianInvariants::from_cyclic_orders(vec![p; formulas::ea_n(p, k as u64) as usize]);
        checks.push(Check::new(format!("{spec} Cl1"), expected, &comp.invariants));
    }
    Ok(())
}

fn oracle_report(p: u64, k: usize) -> Result<OracleCliReport> {
    Ok(OracleCliReport {
        comparison: sympoly::compare_with_relations(p, k)?,
        span_rank_all_pairs: sympoly::span_rank_all_pairs(p, k)?,
    })
}

fn oracle_checks(p: u64, k: usize, checks: &mut Vec<Check>) -> Result<()> {
    let r = oracle_report(p, k)?;
    let c = &r.comparison;
    let e = c.expected_rank;
    checks.push(Check::new(format!("(C{p})^{k} relation rank"), e, c.relation_rank));
    checks.push(Check::new(format!("(C{p})^{k} rank of r"), e, c.r_rank));
    checks.push(Check::new(format!("(C{p})^{k} relation span = Im r"), true, c.same_space));
    checks.push(Check::new(format!("(C{p})^{k} all-pairs span"), e, r.span_rank_all_pairs));
    Ok(())
}

fn witness_checks(p: u64, cfg: &RunConfig, checks: &mut Vec<Check>) -> Result<()> {
    let p32 = u32::try_from(p).map_err(|_| Error::UnsupportedPrime(p))?;
    let es = GroupSpec::ExtraSpecial { p: p32, r: 2, exponent_p2: true };
    let g = build(&es, cfg)?;
    let w = witness_w(&g, &Cl1Options::default())?;
    checks.push(Check::new(format!("{es} hyperplane components"), "all 0", if w.hyperplanes_vanish { "all 0" } else { "nonzero" }));
    checks.push(Check::new(format!("{es} w_Y = log g^p"), w.expected_w_y, w.w_y));
    checks.push(Check::new(format!("{es} order of w_Y = |Z|"), g.center().order(), w.w_y_order));

    let aes = GroupSpec::AlmostExtraSpecial { p: p32, r: 2 };
    let g = build(&aes, cfg)?;
    let w = witness_w(&g, &Cl1Options::default())?;
    checks.push(Check::new(format!("{aes} w_Y = log g^p"), w.expected_w_y, w.w_y));
    checks.push(Check::new(format!("{aes} order of w_Y"), p, w.w_y_order));
    checks.push(Check::new(format!("{aes} modulus of Y"), p * p, w.y_modulus));
    Ok(())
}

pub fn cmd_verify(suite: Suite, p: u64, max_k: Option<u32>, k: usize, cfg: &RunConfig) -> Result<VerifyReport> {
    if p < 3 || !formulas::is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let mut checks = Vec::new();
    match suite {
        Suite::TheoremA => special_group_checks(p, cfg, &mut checks)?,
        Suite::ElementaryAbelian => {
            let max_k = max_k.unwrap_or(if p == 3 { 4 } else { 3 });
            elementary_abelian_checks(p, max_k, cfg, &mut checks)?
        }
        Suite::Oracle => oracle_checks(p, k, &mut checks)?,
        Suite::Witness => witness_checks(p, cfg, &mut checks)?,
    }
    Ok(VerifyReport { suite, p, checks })
}

pub fn cmd_oracle(p: u64, k: usize) -> Result<OracleCliReport> {
    oracle_report(p, k)
}

/// Runs one command under the configured worker pool.
pub fn execute(cfg: &RunConfig) -> Result<Report> {
    let work = || match &cfg.command {
        Command::Cl1 { spec } => cmd_cl1(spec, cfg).map(Report::Cl1),
        Command::Wh { spec } => cmd_whitehead(spec, cfg).map(Report::Wh),
        Command::Deflate { spec, selector } => cmd_deflate(spec, *selector, cfg).map(Report::Deflate),
        Command::Verify { suite, p, max_k, k } => cmd_verify(*suite, *p, *max_k, *k, cfg).map(Report::Verify),
        Command::Oracle { p, k } => cmd_oracle(*p, *k).map(Report::Oracle),
    };
    match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Parses `args`, runs the command, writes the report and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let cfg = RunConfig::from(cli);
    match execute(&cfg) {
        Ok(report) => {
            let text = match cfg.format {
                OutputFormat::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
                OutputFormat::Text => report.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
