//! Command-line front end.
//!
//! Every command returns its rendered output as a string so the binary and
//! the tests share one code path. Exit codes: 0 success, 1 other failure,
//! 2 parse error, 3 size cap exceeded, 4 prior not conjugation invariant,
//! 5 character table did not converge.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartable::{CharacterTable, DEFAULT_ATTEMPTS, DEFAULT_SEED};
use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::group::{Builder, Group, DEFAULT_SIZE_CAP};
use crate::lattice::SubgroupLattice;
use crate::linalg::OperatorDump;
use crate::measure::{
    build_plan, hsp_ensemble, ip_measurement, pgm, povm_from_plan, MeasurementPlan, Method, Povm,
    Prior,
};
use crate::verify::{closed_form_success, verify, Tolerances, VerificationReport};

/// Version of the CSV summary layout.
pub const CSV_SCHEMA_VERSION: u32 = 1;

/// Environment variable overriding the default size cap.
pub const CAP_ENV: &str = "HSP_SIZE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "hsp",
    version,
    about = "Hidden subgroup state discrimination: PGM, Ip and optimal measurements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Order, abelian flag, class and subgroup counts.
    Info,
    /// Conjugacy classes of subgroups.
    Subgroups,
    /// Conjugacy classes and irreducible characters.
    Chartable,
    /// Build measurements and print plan summaries.
    Measure,
    /// Build measurements and certify them.
    Verify,
    /// One summary row per method for a single group.
    Compare,
    /// Summary rows for a comma-separated list of groups.
    Sweep,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Group descriptor, e.g. `dihedral:4` or `product:cyclic:2,cyclic:2`.
    #[arg(long, global = true)]
    pub group: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = MethodSelector::All)]
    pub method: MethodSelector,

    /// `uniform` or `class-weights:@file.json`.
    #[arg(long, global = true, default_value = "uniform")]
    pub prior: String,

    /// Defaults to csv for compare and sweep, json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for the character-table solver.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Maximum group order.
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_SIZE_CAP)]
    pub cap: usize,

    /// Certification tolerance for validity and optimality checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Include every measurement operator in JSON output.
    #[arg(long, global = true)]
    pub dump_operators: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodSelector {
    Pgm,
    Ip,
    Optimal,
    All,
}

impl MethodSelector {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodSelector::Pgm => vec![Method::Pgm],
            MethodSelector::Ip => vec![Method::Ip],
            MethodSelector::Optimal => vec![Method::Optimal],
            MethodSelector::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PriorSpec {
    Uniform,
    ClassWeights(PathBuf),
}

impl std::str::FromStr for PriorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "uniform" {
            Ok(PriorSpec::Uniform)
        } else if let Some(path) = s.strip_prefix("class-weights:@") {
            Ok(PriorSpec::ClassWeights(PathBuf::from(path)))
        } else {
            Err(Error::Parse {
                input: s.to_string(),
                reason: "expected `uniform` or `class-weights:@file.json`".into(),
            })
        }
    }
}

impl std::fmt::Display for PriorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PriorSpec::Uniform => f.write_str("uniform"),
            PriorSpec::ClassWeights(p) => write!(f, "class-weights:@{}", p.display()),
        }
    }
}

/// Class-weight prior file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassWeightFile {
    pub weights: Vec<ClassWeight>,
}

/// Per-subgroup probability `p` for every member of class `class_index`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassWeight {
    /// Order of the class representative; checked when present.
    #[serde(default)]
    pub class_rep_order: Option<usize>,
    pub class_index: usize,
    pub p: f64,
}

/// Per-subgroup probabilities may be off from a total of one by this much
/// before renormalization.
const PRIOR_FILE_SUM_TOL: f64 = 1e-9;

impl ClassWeightFile {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// Expands to a per-subgroup prior. Classes not listed get probability
    /// zero; a class listed twice with different values is not invariant.
    pub fn to_prior(&self, lat: &SubgroupLattice) -> Result<Prior> {
        let classes = lat.classes();
        let mut per_class: Vec<Option<f64>> = vec![None; classes.len()];
        for w in &self.weights {
            let class = classes.get(w.class_index).ok_or_else(|| {
                Error::InvalidPrior(format!("class index {} out of range", w.class_index))
            })?;
            let order = lat.subgroup(class.representative()).order();
            if let Some(expected) = w.class_rep_order {
                if expected != order {
                    return Err(Error::InvalidPrior(format!(
                        "class {} has representative order {order}, file says {expected}",
                        w.class_index
                    )));
                }
            }
            match per_class[w.class_index] {
                Some(p) if (p - w.p).abs() > 1e-12 => return Err(Error::NonInvariantPrior),
                _ => per_class[w.class_index] = Some(w.p),
            }
        }
        let probs: Vec<f64> = (0..lat.len())
            .map(|i| per_class[lat.class_of(i)].unwrap_or(0.0))
            .collect();
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PRIOR_FILE_SUM_TOL {
            return Err(Error::InvalidPrior(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Prior::new(probs.into_iter().map(|p| p / total).collect())
    }
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub groups: Vec<Descriptor>,
    pub methods: Vec<Method>,
    pub prior: PriorSpec,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub cap: usize,
    pub tolerances: Tolerances,
    pub dump_operators: bool,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let g = &cli.global;
        let parse_err = |reason: &str| Error::Parse {
            input: String::new(),
            reason: reason.into(),
        };
        let text = g
            .group
            .as_deref()
            .ok_or_else(|| parse_err("--group is required"))?;
        let groups = if cli.command == Command::Sweep {
            Descriptor::parse_list(text)?
        } else {
            vec![text.parse()?]
        };
        if g.cap == 0 {
            return Err(parse_err("--cap must be positive"));
        }
        if g.seed == 0 {
            return Err(parse_err("--seed must be positive"));
        }
        let tolerances = match g.tol {
            Some(t) if !(t.is_finite() && t > 0.0) => {
                return Err(parse_err("--tol must be positive"))
            }
            Some(t) => Tolerances::uniform(t),
            None => Tolerances::default(),
        };
        let format = g.format.unwrap_or(match cli.command {
            Command::Compare | Command::Sweep => Format::Csv,
            _ => Format::Json,
        });
        Ok(Self {
            command: cli.command,
            groups,
            methods: g.method.methods(),
            prior: g.prior.parse()?,
            format,
            out: g.out.clone(),
            seed: g.seed,
            cap: g.cap,
            tolerances,
            dump_operators: g.dump_operators,
        })
    }
}

/// Rendered command output plus the first error hit by a command that keeps
/// going past per-group failures.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub error: Option<Error>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 2,
        Error::CapExceeded { .. } => 3,
        Error::NonInvariantPrior => 4,
        Error::Convergence { .. } => 5,
        _ => 1,
    }
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let cfg = RunConfig::from_cli(cli)?;
    let done = |text: String| Ok(Output { text, error: None });
    match cfg.command {
        Command::Info => done(cmd_info(&cfg)?),
        Command::Subgroups => done(cmd_subgroups(&cfg)?),
        Command::Chartable => done(cmd_chartable(&cfg)?),
        Command::Measure => done(cmd_measure(&cfg)?),
        Command::Verify => done(cmd_verify(&cfg)?),
        Command::Compare | Command::Sweep => Ok(cmd_sweep(&cfg)),
    }
}

/// A group with its lattice, ready for measurement work.
struct Context {
    descriptor: String,
    group: Group,
    lattice: SubgroupLattice,
}

impl Context {
    fn new(desc: &Descriptor, cfg: &RunConfig) -> Result<Self> {
        let group = desc.build(&Builder::with_cap(cfg.cap))?;
        let lattice = SubgroupLattice::enumerate(&group)?;
        Ok(Self {
            descriptor: desc.to_string(),
            group,
            lattice,
        })
    }

    fn character_table(&self, cfg: &RunConfig) -> Result<CharacterTable> {
        CharacterTable::compute_seeded(&self.group, cfg.seed, DEFAULT_ATTEMPTS)
    }

    fn prior(&self, cfg: &RunConfig) -> Result<Prior> {
        match &cfg.prior {
            PriorSpec::Uniform => Ok(Prior::uniform(&self.lattice)),
            PriorSpec::ClassWeights(path) => ClassWeightFile::load(path)?.to_prior(&self.lattice),
        }
    }
}

struct Built {
    povm: Povm,
    plan: Option<MeasurementPlan>,
}

fn build_measurement(
    ctx: &Context,
    ct: &CharacterTable,
    prior: &Prior,
    method: Method,
) -> Result<Built> {
    let (g, lat) = (&ctx.group, &ctx.lattice);
    Ok(match method {
        Method::Pgm => Built {
            povm: pgm(&hsp_ensemble(g, lat, prior)?)?,
            plan: None,
        },
        Method::Ip => Built {
            povm: ip_measurement(g, lat),
            plan: None,
        },
        Method::Optimal => {
            let plan = build_plan(lat, ct, prior)?;
            Built {
                povm: povm_from_plan(g, lat, ct, &plan),
                plan: Some(plan),
            }
        }
    })
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_text<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::InvalidArgument(
        format!("{format:?} output is not available for `{command}`").to_lowercase(),
    )
}

#[derive(Debug, Serialize)]
pub struct InfoReport {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    pub element_classes: usize,
    pub subgroups: usize,
    pub subgroup_classes: usize,
}

pub fn cmd_info(cfg: &RunConfig) -> Result<String> {
    let ctx = Context::new(&cfg.groups[0], cfg)?;
    let report = InfoReport {
        group: ctx.descriptor.clone(),
        order: ctx.group.order(),
        abelian: ctx.group.is_abelian(),
        element_classes: crate::chartable::element_classes(&ctx.group).num_classes(),
        subgroups: ctx.lattice.len(),
        subgroup_classes: ctx.lattice.classes().len(),
    };
    match cfg.format {
        Format::Json => json(&report),
        Format::Csv => csv_text(&[report]),
        Format::Pretty => Ok(format!(
            "group:            {}\norder:            {}\nabelian:          {}\nelement classes:  {}\nsubgroups:        {}\nsubgroup classes: {}\n",
            report.group,
            report.order,
            report.abelian,
            report.element_classes,
            report.subgroups,
            report.subgroup_classes
        )),
    }
}

#[derive(Debug, Serialize)]
pub struct SubgroupClassEntry {
    pub rep: Vec<usize>,
    pub size: usize,
    pub order: usize,
}

#[derive(Debug, Serialize)]
pub struct SubgroupsReport {
    pub count: usize,
    pub classes: Vec<SubgroupClassEntry>,
}

pub fn cmd_subgroups(cfg: &RunConfig) -> Result<String> {
    let ctx = Context::new(&cfg.groups[0], cfg)?;
    let lat = &ctx.lattice;
    let report = SubgroupsReport {
        count: lat.len(),
        classes: lat
            .classes()
            .iter()
            .map(|c| {
                let rep = lat.subgroup(c.representative());
                SubgroupClassEntry {
                    rep: rep.elements().to_vec(),
                    size: c.size(),
                    order: rep.order(),
                }
            })
            .collect(),
    };
    match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                class_index: usize,
                order: usize,
                size: usize,
                rep: String,
            }
            let rows: Vec<Row> = report
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| Row {
                    class_index: i,
                    order: c.order,
                    size: c.size,
                    rep: join(&c.rep, " "),
                })
                .collect();
            csv_text(&rows)
        }
        Format::Pretty => {
            let mut out = format!(
                "{} subgroups in {} conjugacy classes\n",
                report.count,
                report.classes.len()
            );
            for (i, c) in report.classes.iter().enumerate() {
                let labels: Vec<&str> = c.rep.iter().map(|&x| ctx.group.label(x)).collect();
                writeln!(
                    out,
                    "  class {i}: order {}, size {}, rep {{{}}}",
                    c.order,
                    c.size,
                    labels.join(", ")
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

fn join(xs: &[usize], sep: &str) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

#[derive(Debug, Serialize)]
pub struct IrrepEntry {
    pub dim: usize,
    pub chi: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct CharTableReport {
    pub classes: Vec<usize>,
    pub irreps: Vec<IrrepEntry>,
}

pub fn cmd_chartable(cfg: &RunConfig) -> Result<String> {
    let ctx = Context::new(&cfg.groups[0], cfg)?;
    let ct = ctx.character_table(cfg)?;
    let report = CharTableReport {
        classes: ct.class_data().sizes.clone(),
        irreps: (0..ct.num_irreps())
            .map(|mu| IrrepEntry {
                dim: ct.dim(mu),
                chi: ct.row(mu).iter().map(|z| [z.re, z.im]).collect(),
            })
            .collect(),
    };
    match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                irrep: usize,
                dim: usize,
                class: usize,
                class_size: usize,
                re: f64,
                im: f64,
            }
            let mut rows = Vec::new();
            for (mu, irrep) in report.irreps.iter().enumerate() {
                for (k, z) in irrep.chi.iter().enumerate() {
                    rows.push(Row {
                        irrep: mu,
                        dim: irrep.dim,
                        class: k,
                        class_size: report.classes[k],
                        re: z[0],
                        im: z[1],
                    });
                }
            }
            csv_text(&rows)
        }
        Format::Pretty => {
            let mut out = format!("class sizes: {}\n", join(&report.classes, " "));
            for (mu, irrep) in report.irreps.iter().enumerate() {
                let vals: Vec<String> = irrep
                    .chi
                    .iter()
                    .map(|z| {
                        if z[1].abs() < 5e-7 {
                            fmt6(z[0])
                        } else {
                            format!("{}{:+.6}i", fmt6(z[0]), z[1])
                        }
                    })
                    .collect();
                writeln!(out, "  irrep {mu} (dim {}): {}", irrep.dim, vals.join("  ")).unwrap();
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PlanEntry {
    pub irrep: usize,
    pub dim: usize,
    pub chosen_class: usize,
    pub chosen_rep: Vec<usize>,
    pub class_order: usize,
    pub class_size: usize,
    pub s: Vec<f64>,
    pub c: Vec<f64>,
    pub e: f64,
}

#[derive(Debug, Serialize)]
pub struct OperatorEntry {
    pub subgroup: usize,
    pub elements: Vec<usize>,
    pub operator: OperatorDump,
}

#[derive(Debug, Serialize)]
pub struct MeasurementEntry {
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<Vec<PlanEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<OperatorEntry>>,
}

#[derive(Debug, Serialize)]
pub struct MeasureReport {
    pub group: String,
    pub order: usize,
    pub n_subgroups: usize,
    pub prior: String,
    pub measurements: Vec<MeasurementEntry>,
}

fn plan_entries(plan: &MeasurementPlan, lat: &SubgroupLattice) -> Vec<PlanEntry> {
    plan.irreps
        .iter()
        .map(|ip| {
            let rep = lat.classes()[ip.chosen_class].representative();
            PlanEntry {
                irrep: ip.irrep,
                dim: ip.dim,
                chosen_class: ip.chosen_class,
                chosen_rep: lat.subgroup(rep).elements().to_vec(),
                class_order: plan.class_orders[ip.chosen_class],
                class_size: plan.class_sizes[ip.chosen_class],
                s: ip.s.clone(),
                c: ip.c.clone(),
                e: ip.e,
            }
        })
        .collect()
}

pub fn cmd_measure(cfg: &RunConfig) -> Result<String> {
    let ctx = Context::new(&cfg.groups[0], cfg)?;
    let ct = ctx.character_table(cfg)?;
    let prior = ctx.prior(cfg)?;
    let mut measurements = Vec::new();
    for &method in &cfg.methods {
        let built = build_measurement(&ctx, &ct, &prior, method)?;
        let operators = cfg.dump_operators.then(|| {
            built
                .povm
                .operators
                .iter()
                .enumerate()
                .map(|(i, e)| OperatorEntry {
                    subgroup: i,
                    elements: ctx.lattice.subgroup(i).elements().to_vec(),
                    operator: e.dump(),
                })
                .collect()
        });
        measurements.push(MeasurementEntry {
            method,
            plan: built.plan.as_ref().map(|p| plan_entries(p, &ctx.lattice)),
            operators,
        });
    }
    let report = MeasureReport {
        group: ctx.descriptor.clone(),
        order: ctx.group.order(),
        n_subgroups: ctx.lattice.len(),
        prior: cfg.prior.to_string(),
        measurements,
    };
    match cfg.format {
        Format::Json => json(&report),
        Format::Csv => Err(unsupported(cfg.format, "measure")),
        Format::Pretty => {
            let mut out = format!(
                "{} (order {}, {} subgroups, prior {})\n",
                report.group, report.order, report.n_subgroups, report.prior
            );
            for m in &report.measurements {
                writeln!(out, "{}:", m.method).unwrap();
                match &m.plan {
                    Some(plan) => {
                        for p in plan {
                            let labels: Vec<&str> =
                                p.chosen_rep.iter().map(|&x| ctx.group.label(x)).collect();
                            writeln!(
                                out,
                                "  irrep {} (dim {}): class {} (order {}, size {}) rep {{{}}} e = {}",
                                p.irrep,
                                p.dim,
                                p.chosen_class,
                                p.class_order,
                                p.class_size,
                                labels.join(", "),
                                fmt6(p.e)
                            )
                            .unwrap();
                        }
                    }
                    None => writeln!(out, "  {} operators", report.n_subgroups).unwrap(),
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MethodReport {
    pub method: Method,
    pub report: VerificationReport,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub order: usize,
    pub n_subgroups: usize,
    pub prior: String,
    pub reports: Vec<MethodReport>,
}

fn verify_method(
    ctx: &Context,
    ct: &CharacterTable,
    prior: &Prior,
    method: Method,
    tolerances: Tolerances,
) -> Result<VerificationReport> {
    let built = build_measurement(ctx, ct, prior, method)?;
    let states = hsp_ensemble(&ctx.group, &ctx.lattice, prior)?;
    let closed = built
        .plan
        .as_ref()
        .map(|plan| closed_form_success(plan, &ctx.lattice, ct, prior));
    verify(&built.povm, &states, tolerances, closed)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<String> {
    let ctx = Context::new(&cfg.groups[0], cfg)?;
    let ct = ctx.character_table(cfg)?;
    let prior = ctx.prior(cfg)?;
    let reports = cfg
        .methods
        .iter()
        .map(|&method| {
            Ok(MethodReport {
                method,
                report: verify_method(&ctx, &ct, &prior, method, cfg.tolerances)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = VerifyReport {
        group: ctx.descriptor.clone(),
        order: ctx.group.order(),
        n_subgroups: ctx.lattice.len(),
        prior: cfg.prior.to_string(),
        reports,
    };
    match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            let rows: Vec<SummaryRow> = report
                .reports
                .iter()
                .map(|r| SummaryRow::from_report(&ctx, r.method, &r.report))
                .collect();
            csv_text(&rows)
        }
        Format::Pretty => {
            let mut out = format!(
                "{} (order {}, {} subgroups)\n",
                report.group, report.order, report.n_subgroups
            );
            for r in &report.reports {
                let v = &r.report;
                writeln!(
                    out,
                    "{}: p_succ {}  valid {}  certified {}  min eig {}  completeness {:.3e}  commutation {:.3e}  min margin {}",
                    r.method,
                    fmt6(v.success_probability),
                    v.verdict.valid,
                    v.verdict.certified_optimal,
                    fmt6(v.validity.min_eigenvalue()),
                    v.validity.completeness_residual,
                    v.commutation_residual,
                    fmt6(v.optimality_margins.iter().copied().fold(f64::INFINITY, f64::min)),
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

/// One CSV line of `compare` / `sweep` output.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub schema_version: u32,
    pub group: String,
    pub order: Option<usize>,
    pub n_subgroups: Option<usize>,
    pub method: Method,
    pub valid: Option<bool>,
    pub certified_optimal: Option<bool>,
    pub p_succ: Option<f64>,
    pub error: String,
}

impl SummaryRow {
    fn from_report(ctx: &Context, method: Method, report: &VerificationReport) -> Self {
        Self {
            schema_version: CSV_SCHEMA_VERSION,
            group: ctx.descriptor.clone(),
            order: Some(ctx.group.order()),
            n_subgroups: Some(ctx.lattice.len()),
            method,
            valid: Some(report.verdict.valid),
            certified_optimal: Some(report.verdict.certified_optimal),
            p_succ: Some(report.success_probability),
            error: String::new(),
        }
    }

    fn failed(group: String, ctx: Option<&Context>, method: Method, err: &Error) -> Self {
        Self {
            schema_version: CSV_SCHEMA_VERSION,
            group,
            order: ctx.map(|c| c.group.order()),
            n_subgroups: ctx.map(|c| c.lattice.len()),
            method,
            valid: None,
            certified_optimal: None,
            p_succ: None,
            error: err.to_string(),
        }
    }
}

/// Rows for one group; errors are recorded per row rather than aborting.
fn summarize(desc: &Descriptor, cfg: &RunConfig) -> (Vec<SummaryRow>, Option<Error>) {
    let name = desc.to_string();
    let fail_all = |ctx: Option<&Context>, err: Error| {
        let rows = cfg
            .methods
            .iter()
            .map(|&m| SummaryRow::failed(name.clone(), ctx, m, &err))
            .collect();
        (rows, Some(err))
    };
    let ctx = match Context::new(desc, cfg) {
        Ok(ctx) => ctx,
        Err(e) => return fail_all(None, e),
    };
    let ct = match ctx.character_table(cfg) {
        Ok(ct) => ct,
        Err(e) => return fail_all(Some(&ctx), e),
    };
    let prior = match ctx.prior(cfg) {
        Ok(p) => p,
        Err(e) => return fail_all(Some(&ctx), e),
    };
    let mut first_error = None;
    let rows = cfg
        .methods
        .iter()
        .map(
            |&method| match verify_method(&ctx, &ct, &prior, method, cfg.tolerances) {
                Ok(report) => SummaryRow::from_report(&ctx, method, &report),
                Err(e) => {
                    let row = SummaryRow::failed(name.clone(), Some(&ctx), method, &e);
                    first_error.get_or_insert(e);
                    row
                }
            },
        )
        .collect();
    (rows, first_error)
}

pub fn cmd_sweep(cfg: &RunConfig) -> Output {
    let results: Vec<(Vec<SummaryRow>, Option<Error>)> =
        cfg.groups.par_iter().map(|d| summarize(d, cfg)).collect();
    let mut rows = Vec::new();
    let mut error = None;
    for (r, e) in results {
        rows.extend(r);
        if error.is_none() {
            error = e;
        }
    }
    let rendered = match cfg.format {
        Format::Csv => csv_text(&rows),
        Format::Json => json(&rows),
        Format::Pretty => {
            let mut out = format!(
                "{:<32} {:>5} {:>5} {:<8} {:<6} {:<10} {:>9}\n",
                "group", "order", "subs", "method", "valid", "certified", "p_succ"
            );
            for r in &rows {
                let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "{:<32} {:>5} {:>5} {:<8} {:<6} {:<10} {:>9}{}",
                    r.group,
                    opt(r.order.map(|x| x.to_string())),
                    opt(r.n_subgroups.map(|x| x.to_string())),
                    r.method.to_string(),
                    opt(r.valid.map(|x| x.to_string())),
                    opt(r.certified_optimal.map(|x| x.to_string())),
                    opt(r.p_succ.map(fmt6)),
                    if r.error.is_empty() {
                        String::new()
                    } else {
                        format!("  error: {}", r.error)
                    },
                )
                .unwrap();
            }
            Ok(out)
        }
    };
    match rendered {
        Ok(text) => Output { text, error },
        Err(e) => Output {
            text: String::new(),
            error: Some(e),
        },
    }
}
