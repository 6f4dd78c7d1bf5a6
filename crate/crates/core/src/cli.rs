//! Command-line front end: argument parsing, orchestration and output.
//!
//! Exit codes: 0 success, 1 a verified property failed, 2 usage or limit
//! error.

use std::collections::HashSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bellpoly::{
    classify_orbits, enumerate_functions, polynomial_of, DitFunction, SymmetryGroup,
};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::params::{Params, DEFAULT_ENUMERATION_LIMIT, DEFAULT_MATRIX_DIM_LIMIT};
use crate::polytope::{self, Convention, CorrelationVector, Strategy, Verdict};
use crate::quantum::{self, StateVector};
use crate::report::{self, *};
use crate::{dft, Cyclotomic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Raw,
    Regauged,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Raw => Convention::Raw,
            ConventionArg::Regauged => Convention::Regauged,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    /// Party transpositions, per-party shifts, simultaneous swap, phase.
    Census,
    /// Adds independent per-party swaps and conjugation.
    Full,
}

impl GroupArg {
    fn build(self, params: Params) -> SymmetryGroup {
        match self {
            GroupArg::Census => SymmetryGroup::census(params),
            GroupArg::Full => SymmetryGroup::full(params),
        }
    }

    fn name(self) -> &'static str {
        match self {
            GroupArg::Census => "census",
            GroupArg::Full => "full",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Records {
    None,
    Representatives,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    /// `H_d^{⊗n}` with entries `ω^(r·s)`.
    Dft,
    /// The quantum operator `Q_f`.
    Q,
}

#[derive(Debug, Parser)]
#[command(name = "ditbell", version, about = "Homogeneous Bell inequalities for d-valued observables")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Outcomes per observable.
    #[arg(long, global = true, default_value_t = 3)]
    pub d: u32,
    /// Number of parties.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: u32,
    /// Largest d^(d^n) allowed for full scans.
    #[arg(long, global = true, env = "DITBELL_ENUMERATION_LIMIT", default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    pub enumeration_limit: u64,
    /// Largest matrix side length.
    #[arg(long, global = true, env = "DITBELL_MATRIX_DIM_LIMIT", default_value_t = DEFAULT_MATRIX_DIM_LIMIT)]
    pub matrix_dim_limit: usize,
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Raw)]
    pub convention: ConventionArg,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub parallelism: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Default)]
pub struct FunctionArg {
    /// Exponents of f, comma separated, in rank order.
    #[arg(long, value_delimiter = ',', conflicts_with = "index")]
    pub exponents: Option<Vec<u32>>,
    /// Index of f in lexicographic order.
    #[arg(long)]
    pub index: Option<u64>,
}

impl FunctionArg {
    fn resolve(&self, params: Params) -> Result<Option<DitFunction>> {
        match (&self.exponents, self.index) {
            (Some(e), _) => DitFunction::new(params, e.clone()).map(Some),
            (None, Some(k)) => DitFunction::from_index(params, k).map(Some),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// List Bell polynomials, or a single one.
    Enumerate {
        #[command(flatten)]
        function: FunctionArg,
    },
    /// Orbit census under a symmetry group.
    Classify {
        #[arg(long, value_enum, default_value_t = GroupArg::Census)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = Records::None)]
        records: Records,
    },
    /// Optimal quantum values of every inequality, best per orbit.
    Violations {
        #[arg(long)]
        top: Option<usize>,
        #[arg(long, value_enum, default_value_t = GroupArg::Census)]
        group: GroupArg,
        #[command(flatten)]
        function: FunctionArg,
    },
    /// Run the cross-module property suite.
    Verify {
        /// Random samples per check when a full scan is too large.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Locate a correlation vector relative to the local polytope.
    Membership {
        /// JSON array of D `[re, im]` pairs; `-` reads stdin.
        #[arg(long)]
        input: PathBuf,
    },
    /// Print a matrix.
    Matrix {
        #[arg(value_enum)]
        kind: MatrixKind,
        #[command(flatten)]
        function: FunctionArg,
    },
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params,
    pub command: Command,
    pub enumeration_limit: u64,
    pub matrix_dim_limit: usize,
    pub convention: Convention,
    pub output: OutputFormat,
    pub parallelism: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let c = cli.common;
        let params = Params::new(c.d, c.n)?;
        if c.enumeration_limit == 0 || c.matrix_dim_limit == 0 {
            return Err(Error::InvalidArgument("limits must be positive".into()));
        }
        if c.parallelism == 0 {
            return Err(Error::InvalidArgument("parallelism must be at least 1".into()));
        }
        let convention = Convention::from(c.convention);
        if convention == Convention::Regauged && c.d != 3 {
            return Err(Error::InvalidArgument(
                "--convention regauged requires --d 3".into(),
            ));
        }
        Ok(RunConfig {
            params,
            command: cli.command,
            enumeration_limit: c.enumeration_limit,
            matrix_dim_limit: c.matrix_dim_limit,
            convention,
            output: c.output,
            parallelism: c.parallelism,
            seed: c.seed,
        })
    }
}

/// Parses `args`, runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| run(&config, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs one command on a dedicated thread pool.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut buffer = Vec::new();
    let code = pool.install(|| dispatch(config, &mut buffer))?;
    out.write_all(&buffer).map_err(io_error)?;
    Ok(code)
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn dispatch(config: &RunConfig, out: &mut Vec<u8>) -> Result<i32> {
    match &config.command {
        Command::Enumerate { function } => cmd_enumerate(config, function, out),
        Command::Classify { group, records } => cmd_classify(config, *group, *records, out),
        Command::Violations {
            top,
            group,
            function,
        } => cmd_violations(config, *top, *group, function, out),
        Command::Verify { samples } => cmd_verify(config, *samples, out),
        Command::Membership { input } => {
            let text = if input.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Parse(e.to_string()))?
            } else {
                std::fs::read_to_string(input)
                    .map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?
            };
            cmd_membership(config, &text, out)
        }
        Command::Matrix { kind, function } => cmd_matrix(config, *kind, function, out),
    }
}

fn json_line<T: serde::Serialize>(out: &mut Vec<u8>, value: &T) {
    serde_json::to_writer(&mut *out, value).expect("records serialize");
    out.push(b'\n');
}

fn line(out: &mut Vec<u8>, text: impl AsRef<str>) {
    out.extend_from_slice(text.as_ref().as_bytes());
    out.push(b'\n');
}

fn coeff_pairs(rec: &PolynomialRecord, f: &DitFunction) -> String {
    let zs: Vec<Complex64> = match &rec.coeffs {
        Some(_) => f.spectrum().map(|h| h.iter().map(CycNum::to_complex).collect()),
        None => Ok(f.spectrum_complex()),
    }
    .unwrap_or_default();
    report::csv_pairs(&zs)
}

fn polynomial_text(f: &DitFunction) -> String {
    match polynomial_of(f) {
        Ok(p) => p.to_string(),
        Err(_) => format!("{:?}", f.spectrum_complex()),
    }
}

fn emit_polynomial(
    config: &RunConfig,
    out: &mut Vec<u8>,
    f: &DitFunction,
    rec: PolynomialRecord,
    header: &mut bool,
) {
    match config.output {
        OutputFormat::Json => json_line(out, &rec),
        OutputFormat::Csv => {
            if !*header {
                let cols: Vec<String> = (0..config.params.dim())
                    .map(|r| format!("c{r}_re,c{r}_im"))
                    .collect();
                line(out, format!("index,f_exponents,real,orbit_id,orbit_size,{}", cols.join(",")));
                *header = true;
            }
            line(
                out,
                format!(
                    "{},{},{},{},{},{}",
                    f.index(),
                    exponents_field(&rec.f_exponents),
                    rec.real,
                    rec.orbit_id.map(|x| x.to_string()).unwrap_or_default(),
                    rec.orbit_size.map(|x| x.to_string()).unwrap_or_default(),
                    coeff_pairs(&rec, f)
                ),
            );
        }
        OutputFormat::Pretty => {
            let orbit = rec
                .orbit_id
                .map(|id| format!("  orbit {id} (size {})", rec.orbit_size.unwrap_or(0)))
                .unwrap_or_default();
            line(
                out,
                format!(
                    "f = [{}]{}{}\n    {}",
                    exponents_field(&rec.f_exponents),
                    if rec.real { "  real" } else { "" },
                    orbit,
                    polynomial_text(f)
                ),
            );
        }
    }
}

pub fn cmd_enumerate(config: &RunConfig, function: &FunctionArg, out: &mut Vec<u8>) -> Result<i32> {
    let mut header = false;
    if let Some(f) = function.resolve(config.params)? {
        emit_polynomial(config, out, &f, PolynomialRecord::new(&f), &mut header);
        return Ok(EXIT_OK);
    }
    let fs: Vec<DitFunction> = enumerate_functions(config.params, config.enumeration_limit)?.collect();
    let records: Vec<PolynomialRecord> = fs.par_iter().map(PolynomialRecord::new).collect();
    for (f, rec) in fs.iter().zip(records) {
        emit_polynomial(config, out, f, rec, &mut header);
    }
    Ok(EXIT_OK)
}

pub fn cmd_classify(
    config: &RunConfig,
    group_arg: GroupArg,
    records: Records,
    out: &mut Vec<u8>,
) -> Result<i32> {
    let params = config.params;
    let group = group_arg.build(params);
    let table = classify_orbits(&group, config.enumeration_limit)?;
    let summary = table.summary(&group)?;
    let order = group.order().ok();
    let mut header = false;
    let listed: Vec<u64> = match records {
        Records::None => Vec::new(),
        Records::Representatives => table.orbits().iter().map(|o| o.representative).collect(),
        Records::All => (0..table.len() as u64).collect(),
    };
    for k in listed {
        let f = DitFunction::from_index(params, k)?;
        let orbit = table.orbit_of(k);
        let rec = PolynomialRecord::new(&f).with_orbit(orbit.id, orbit.size);
        emit_polynomial(config, out, &f, rec, &mut header);
    }
    let rec = ClassifyRecord::new(&params, group_arg.name(), order, &summary);
    match config.output {
        OutputFormat::Json => json_line(out, &rec),
        OutputFormat::Csv => {
            line(out, "d,n,group,group_order,total,orbits,real,real_orbits,real_orbits_restricted");
            line(
                out,
                format!(
                    "{},{},{},{},{},{},{},{},{}",
                    rec.d,
                    rec.n,
                    rec.group,
                    rec.group_order.map(|x| x.to_string()).unwrap_or_default(),
                    rec.total,
                    rec.orbits,
                    rec.real,
                    rec.real_orbits,
                    rec.real_orbits_restricted
                ),
            );
        }
        OutputFormat::Pretty => {
            line(out, format!("(d, n) = ({}, {}), {} group of order {}", rec.d, rec.n, rec.group,
                rec.group_order.map(|x| x.to_string()).unwrap_or_else(|| "?".into())));
            line(out, format!("  polynomials          {}", rec.total));
            line(out, format!("  orbits               {}", rec.orbits));
            line(out, format!("  real polynomials     {}", rec.real));
            line(out, format!("  orbits meeting reals {}", rec.real_orbits));
            line(out, format!("  real classes         {}", rec.real_orbits_restricted));
        }
    }
    Ok(EXIT_OK)
}

fn emit_violation(config: &RunConfig, out: &mut Vec<u8>, rec: &ViolationRecord, header: &mut bool) {
    match config.output {
        OutputFormat::Json => json_line(out, rec),
        OutputFormat::Csv => {
            if !*header {
                let cols: Vec<String> = (0..rec.optimal_state.len())
                    .map(|i| format!("psi{i}_re,psi{i}_im"))
                    .collect();
                line(
                    out,
                    format!(
                        "f_exponents,convention,bound,saturating_facet_value,orbit_id,orbit_size,{}",
                        cols.join(",")
                    ),
                );
                *header = true;
            }
            let psi: Vec<Complex64> = rec
                .optimal_state
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect();
            line(
                out,
                format!(
                    "{},{},{},{},{},{},{}",
                    exponents_field(&rec.f_exponents),
                    rec.convention,
                    sig12(rec.bound),
                    sig12(rec.saturating_facet_value),
                    rec.orbit_id.map(|x| x.to_string()).unwrap_or_default(),
                    rec.orbit_size.map(|x| x.to_string()).unwrap_or_default(),
                    csv_pairs(&psi)
                ),
            );
        }
        OutputFormat::Pretty => {
            let orbit = rec
                .orbit_id
                .map(|id| format!("  orbit {id:>4} (size {:>3})", rec.orbit_size.unwrap_or(0)))
                .unwrap_or_default();
            line(
                out,
                format!(
                    "{:>12.8}  f = [{}]{}",
                    rec.bound,
                    exponents_field(&rec.f_exponents),
                    orbit
                ),
            );
        }
    }
}

pub fn cmd_violations(
    config: &RunConfig,
    top: Option<usize>,
    group_arg: GroupArg,
    function: &FunctionArg,
    out: &mut Vec<u8>,
) -> Result<i32> {
    let params = config.params;
    let mut header = false;
    if let Some(f) = function.resolve(params)? {
        let rep = quantum::violation_bound(&f, config.convention, config.matrix_dim_limit)?;
        emit_violation(config, out, &ViolationRecord::new(&rep), &mut header);
        return Ok(EXIT_OK);
    }
    polytope::normalization(&params, config.convention)?;
    params.check_matrix_dim(config.matrix_dim_limit)?;
    let group = group_arg.build(params);
    let table = classify_orbits(&group, config.enumeration_limit)?;
    let count = table.len() as u64;
    let bounds: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|k| {
            let f = DitFunction::from_index(params, k)?;
            violation_top(&f, config)
        })
        .collect::<Result<_>>()?;
    let max_bound = bounds.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let maximizers = bounds.iter().filter(|&&b| b >= max_bound - 1e-9).count() as u64;
    let violating = bounds.iter().filter(|&&b| b > 1.0 + 1e-9).count() as u64;

    // best member per orbit, smallest index on ties
    let mut best: Vec<Option<(f64, u64)>> = vec![None; table.orbits().len()];
    for (k, &b) in bounds.iter().enumerate() {
        let slot = &mut best[table.orbit_of(k as u64).id];
        if slot.is_none_or(|(v, _)| b > v) {
            *slot = Some((b, k as u64));
        }
    }
    let mut ranked: Vec<(f64, u64, usize)> = best
        .iter()
        .enumerate()
        .map(|(id, s)| {
            let (v, k) = s.expect("orbits are non-empty");
            (v, k, id)
        })
        .collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let shown = top.unwrap_or(ranked.len()).min(ranked.len());
    let rows: Vec<ViolationRecord> = ranked[..shown]
        .par_iter()
        .map(|&(_, k, id)| {
            let f = DitFunction::from_index(params, k)?;
            let rep = quantum::violation_bound(&f, config.convention, config.matrix_dim_limit)?;
            let mut rec = ViolationRecord::new(&rep);
            rec.orbit_id = Some(id);
            rec.orbit_size = Some(table.orbits()[id].size);
            Ok(rec)
        })
        .collect::<Result<_>>()?;
    for rec in &rows {
        emit_violation(config, out, rec, &mut header);
    }
    let summary = ViolationSummary {
        d: params.d(),
        n: params.n(),
        convention: config.convention.name().into(),
        functions: count,
        orbits: table.orbits().len(),
        max_bound,
        maximizers,
        violating,
    };
    match config.output {
        OutputFormat::Json => json_line(out, &summary),
        OutputFormat::Csv => {}
        OutputFormat::Pretty => line(
            out,
            format!(
                "max {:.8} reached by {} of {} functions; {} functions violate",
                summary.max_bound, summary.maximizers, summary.functions, summary.violating
            ),
        ),
    }
    Ok(EXIT_OK)
}

fn violation_top(f: &DitFunction, config: &RunConfig) -> Result<f64> {
    let c = polytope::normalization(f.params(), config.convention)?;
    let q = quantum::build_q(f, config.matrix_dim_limit)?;
    Ok(quantum::hermitian_eigs(&q.scale(c).hermitian_part())?.values[0])
}

pub fn cmd_membership(config: &RunConfig, text: &str, out: &mut Vec<u8>) -> Result<i32> {
    let params = config.params;
    let entries = report::parse_correlations(text)?;
    let xi = CorrelationVector::new(params, entries)?;
    let m = polytope::membership(&xi, config.convention, config.enumeration_limit)?;
    let facet = polytope::facet_vector(&m.worst_facet, config.convention)?;
    let rec = FacetRecord::new(&facet, &m);
    match config.output {
        OutputFormat::Json => json_line(out, &rec),
        OutputFormat::Csv => {
            line(out, "verdict,value,f_exponents");
            line(out, format!("{},{},{}", rec.verdict, sig12(rec.value), exponents_field(&rec.f_exponents)));
        }
        OutputFormat::Pretty => line(
            out,
            format!(
                "{}: worst facet f = [{}] with value {:.12}",
                rec.verdict,
                exponents_field(&rec.f_exponents),
                rec.value
            ),
        ),
    }
    Ok(EXIT_OK)
}

pub fn cmd_matrix(
    config: &RunConfig,
    kind: MatrixKind,
    function: &FunctionArg,
    out: &mut Vec<u8>,
) -> Result<i32> {
    let params = config.params;
    let (f, exact, float) = match kind {
        MatrixKind::Dft => {
            params.check_matrix_dim(config.matrix_dim_limit)?;
            let exact = dft::build_matrix(&params, config.matrix_dim_limit).ok();
            let roots = dft::root_table(params.d());
            let table = params.dot_table();
            let dim = params.dim();
            let float = quantum::ComplexMatrix::from_fn(dim, |r, s| roots[table[r * dim + s] as usize]);
            (None, exact, float)
        }
        MatrixKind::Q => {
            let f = function.resolve(params)?.ok_or_else(|| {
                Error::InvalidArgument("matrix q needs --exponents or --index".into())
            })?;
            let exact = quantum::build_q_exact(&f, config.matrix_dim_limit).ok();
            let float = quantum::build_q(&f, config.matrix_dim_limit)?;
            (Some(f), exact, float)
        }
    };
    let dim = float.dim();
    let rows: Vec<Vec<Complex64>> = (0..dim)
        .map(|i| (0..dim).map(|j| float.get(i, j)).collect())
        .collect();
    match config.output {
        OutputFormat::Json => json_line(
            out,
            &MatrixRecord {
                d: params.d(),
                n: params.n(),
                kind: match kind {
                    MatrixKind::Dft => "dft".into(),
                    MatrixKind::Q => "q".into(),
                },
                f_exponents: f.as_ref().map(|f| f.exponents().to_vec()),
                exact: exact
                    .as_ref()
                    .map(|m| m.rows().map(report::exact_coeffs).collect()),
                entries: rows.iter().map(|r| report::pairs(r)).collect(),
            },
        ),
        OutputFormat::Csv => {
            for r in &rows {
                line(out, csv_pairs(r));
            }
        }
        OutputFormat::Pretty => match exact {
            Some(m) => line(out, m.to_string().trim_end()),
            None => {
                for r in &rows {
                    let cells: Vec<String> =
                        r.iter().map(|z| format!("{:>8.4}{:+.4}i", z.re, z.im)).collect();
                    line(out, format!("[ {} ]", cells.join("  ")));
                }
            }
        },
    }
    Ok(EXIT_OK)
}

struct Suite {
    checks: Vec<CheckRecord>,
}

impl Suite {
    fn record(&mut self, name: &str, outcome: Result<Option<String>>) {
        let (status, detail) = match outcome {
            Ok(None) => ("pass", String::new()),
            Ok(Some(witness)) => ("fail", witness),
            Err(Error::OrderTooSmall(d)) => ("skip", format!("needs d >= 3, got d = {d}")),
            Err(Error::CompositeOrder(d)) => ("skip", format!("exact check needs prime d, got d = {d}")),
            Err(e) => ("fail", e.to_string()),
        };
        self.checks.push(CheckRecord {
            check: name.into(),
            status: status.into(),
            detail,
        });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.checks.push(CheckRecord {
            check: name.into(),
            status: "skip".into(),
            detail: why.into(),
        });
    }
}

/// Every function when enumerable, otherwise `samples` random ones.
fn sample_functions(params: Params, limit: u64, samples: usize, rng: &mut ChaCha8Rng) -> Vec<DitFunction> {
    match enumerate_functions(params, limit) {
        Ok(it) => it.collect(),
        Err(_) => (0..samples)
            .map(|_| {
                let e = (0..params.dim()).map(|_| rng.gen_range(0..params.d())).collect();
                DitFunction::new(params, e).expect("exponents in range")
            })
            .collect(),
    }
}

fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let amps = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    StateVector::new(amps).unwrap_or_else(|_| StateVector::new(vec![Complex64::new(1.0, 0.0); dim]).unwrap())
}

fn witness(f: &DitFunction, what: impl std::fmt::Display) -> Option<String> {
    Some(format!("f = {:?}: {what}", f.exponents()))
}

pub fn cmd_verify(config: &RunConfig, samples: usize, out: &mut Vec<u8>) -> Result<i32> {
    let params = config.params;
    let d = params.d();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let fs = sample_functions(params, config.enumeration_limit, samples, &mut rng);
    let exhaustive = params.check_enumerable(config.enumeration_limit).is_ok();
    let mut suite = Suite { checks: Vec::new() };

    suite.record("dft_matrix_unitarity", (|| {
        let h = dft::build_matrix(&params, config.matrix_dim_limit)?;
        let ring = Cyclotomic::new(d)?;
        let expected = crate::CycMatrix::identity(ring, params.dim()).scale(&ring.int(params.dim() as i64));
        Ok((h.adjoint().checked_mul(&h)? != expected).then(|| "H*H != D I".to_string()))
    })());

    suite.record("dft_roundtrip", (|| {
        for f in &fs {
            let values = f.values()?;
            let hat = dft::dft(&values, &params)?;
            if dft::idft(&hat, &params)? != values {
                return Ok(witness(f, "idft(dft(f)) != f"));
            }
            if dft::dft_fast(&values, &params)? != hat {
                return Ok(witness(f, "fast transform disagrees"));
            }
        }
        Ok(None)
    })());

    suite.record("transform_rules", (|| {
        let sigma: Vec<usize> = (0..params.n() as usize).rev().collect();
        for f in fs.iter().take(samples) {
            let v = f.values()?;
            let hat = dft::dft(&v, &params)?;
            let delta = params.decode(rng.gen_range(0..params.dim()));
            let neg = dft::dft(&dft::rules::negate(&v, &params)?, &params)?;
            let conj = dft::dft(&dft::rules::conj(&v, &params)?, &params)?;
            let shift = dft::dft(&dft::rules::shift(&v, &delta, &params)?, &params)?;
            let modu = dft::dft(&dft::rules::modulate(&v, &delta, &params)?, &params)?;
            let perm = dft::dft(&dft::rules::permute(&v, &sigma, &params)?, &params)?;
            for r in 0..params.dim() {
                let rr = params.decode(r);
                let ok = neg[r] == hat[params.negate_rank(r)]
                    && conj[r] == hat[r].conj()
                    && shift[r] == hat[r].mul_root(-(rr.dot_mod(&delta) as i64))
                    && modu[r] == hat[rr.add(&delta).rank()]
                    && perm[r] == hat[dft::rules::permute_rank(&params, r, &sigma)];
                if !ok {
                    return Ok(witness(f, format!("rule fails at r = {r}, δ = {:?}", delta.digits())));
                }
            }
        }
        Ok(None)
    })());

    suite.record("parseval", (|| {
        let dim = params.dim();
        for _ in 0..samples.min(100) {
            let b: Vec<Complex64> = (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let g: Vec<Complex64> = (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let lhs = dft::pairing(&dft::dft_complex(&b, &params)?, &dft::dft_complex(&g, &params)?);
            let rhs = dft::pairing(&b, &g) * dim as f64;
            if (lhs - rhs).norm() > 1e-9 * (1.0 + rhs.norm()) {
                return Ok(Some(format!("⟨Fβ, Fγ⟩ = {lhs}, D⟨β, γ⟩ = {rhs}")));
            }
        }
        Ok(None)
    })());

    if exhaustive {
        suite.record("polynomial_bijection", (|| {
            let distinct: HashSet<Vec<CycNum>> = fs
                .iter()
                .map(|f| f.spectrum())
                .collect::<Result<_>>()?;
            Ok((distinct.len() != fs.len()).then(|| format!("{} distinct of {}", distinct.len(), fs.len())))
        })());
    } else {
        suite.skip("polynomial_bijection", "family too large for a full scan");
    }

    suite.record("symmetry_closure", (|| {
        let group = SymmetryGroup::full(params);
        for f in fs.iter().take(samples.max(1)) {
            let poly = polynomial_of(f)?;
            for g in group.generators() {
                if g.apply(&poly)?.generating_function().is_err() {
                    return Ok(witness(f, format!("image under {g:?} leaves the family")));
                }
            }
        }
        Ok(None)
    })());

    if exhaustive {
        suite.record("orbit_partition", (|| {
            let group = SymmetryGroup::census(params);
            let table = classify_orbits(&group, config.enumeration_limit)?;
            let order = group.order()?;
            let total: u64 = table.orbits().iter().map(|o| o.size).sum();
            if total != table.len() as u64 {
                return Ok(Some(format!("orbit sizes sum to {total}")));
            }
            Ok(table
                .orbits()
                .iter()
                .find(|o| order % o.size != 0)
                .map(|o| format!("orbit {} has size {} not dividing {order}", o.id, o.size)))
        })());
    } else {
        suite.skip("orbit_partition", "family too large for a full scan");
    }

    if d < 3 {
        for name in ["facet_soundness_tightness", "lhv_closure", "dft_duality", "quantum_consistency", "violation_dominance"] {
            suite.skip(name, "facet normalization is singular for d = 2");
        }
        suite.record("dichotomic_bound", (|| {
            let vs = polytope::vertices(&params, config.matrix_dim_limit)?;
            let vecs: Vec<CorrelationVector> = vs.iter().map(|v| v.vector(&params)).collect();
            for f in &fs {
                let mut best = f64::NEG_INFINITY;
                for xi in &vecs {
                    best = best.max(polytope::werner_wolf_value(f, xi)?);
                }
                if (best - 1.0).abs() > 1e-9 {
                    return Ok(witness(f, format!("max over vertices {best}")));
                }
            }
            Ok(None)
        })());
    } else {
        suite.record("facet_soundness_tightness", (|| {
            let vs = polytope::vertices(&params, config.matrix_dim_limit)?;
            let vecs: Vec<CorrelationVector> = vs.iter().map(|v| v.vector(&params)).collect();
            let bad = fs
                .par_iter()
                .map(|f| -> Result<Option<String>> {
                    let facet = polytope::facet_vector(f, Convention::Raw)?;
                    let mut best = f64::NEG_INFINITY;
                    let mut saturated = 0;
                    for xi in &vecs {
                        let v = facet.evaluate(xi)?;
                        best = best.max(v);
                        if (v - 1.0).abs() <= 1e-9 {
                            saturated += 1;
                        }
                    }
                    Ok(if (best - 1.0).abs() > 1e-9 {
                        witness(f, format!("max over vertices {best}"))
                    } else if saturated != 2 * params.dim() {
                        witness(f, format!("saturated by {saturated} vertices"))
                    } else {
                        None
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(bad.into_iter().flatten().next())
        })());

        suite.record("lhv_closure", (|| {
            let n = params.n() as usize;
            for _ in 0..samples.min(100) {
                let k = rng.gen_range(1..=4);
                let mut weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
                let total: f64 = weights.iter().sum();
                weights.iter_mut().for_each(|w| *w /= total);
                let fix = 1.0 - weights.iter().sum::<f64>();
                weights[0] += fix;
                let strategies: Vec<Strategy> = weights
                    .into_iter()
                    .map(|weight| Strategy {
                        a: (0..n).map(|_| rng.gen_range(0..d)).collect(),
                        b: (0..n).map(|_| rng.gen_range(0..d)).collect(),
                        weight,
                    })
                    .collect();
                let xi = polytope::lhv_sample(&params, &strategies)?;
                let m = polytope::membership(&xi, Convention::Raw, config.enumeration_limit)?;
                if m.verdict == Verdict::Outside {
                    return Ok(witness(&m.worst_facet, format!("local mixture evaluates to {}", m.worst_value)));
                }
            }
            Ok(None)
        })());

        suite.record("dft_duality", (|| {
            for f in &fs {
                let res = polytope::duality_residual(f)?;
                if res > 1e-12 {
                    return Ok(witness(f, format!("residual {res:e}")));
                }
            }
            Ok(None)
        })());

        suite.record("quantum_consistency", (|| {
            params.check_matrix_dim(config.matrix_dim_limit)?;
            let state = random_state(params.dim(), &mut rng);
            let xi = quantum::correlation_vector_of_state(&state, &params)?;
            for f in fs.iter().take(samples) {
                let facet = polytope::facet_vector(f, Convention::Raw)?;
                let q = quantum::build_q(f, config.matrix_dim_limit)?;
                let direct = quantum::expectation(&state, &q, facet.normalization())?;
                let via = facet.evaluate(&xi)?;
                if (direct - via).abs() > 1e-10 {
                    return Ok(witness(f, format!("{direct} vs {via}")));
                }
            }
            Ok(None)
        })());

        suite.record("violation_dominance", (|| {
            params.check_matrix_dim(config.matrix_dim_limit)?;
            let states: Vec<StateVector> = (0..20).map(|_| random_state(params.dim(), &mut rng)).collect();
            for f in fs.iter().take(samples.min(50)) {
                let rep = quantum::violation_bound(f, Convention::Raw, config.matrix_dim_limit)?;
                let q = quantum::build_q(f, config.matrix_dim_limit)?;
                let c = polytope::normalization(&params, Convention::Raw)?;
                for s in &states {
                    let e = quantum::expectation(s, &q, c)?;
                    if e > rep.bound + 1e-9 {
                        return Ok(witness(f, format!("state reaches {e} above bound {}", rep.bound)));
                    }
                }
            }
            Ok(None)
        })());
    }

    suite.record("pauli_identities", (|| {
        let (x, z) = (quantum::pauli_x(d), quantum::pauli_z(d));
        let w = dft::root_table(d)[1];
        if z.matmul(&x).max_abs_diff(&x.matmul(&z).scale(w)) > 1e-12 {
            return Ok(Some("ZX != ωXZ".into()));
        }
        let id = quantum::ComplexMatrix::identity(d as usize);
        if x.pow(d).max_abs_diff(&id) > 1e-12 || z.pow(d).max_abs_diff(&id) > 1e-12 {
            return Ok(Some("X or Z does not have order d".into()));
        }
        for k in 0..d {
            if let Some(e) = (0..d).find(|&e| !quantum::pauli_power_identity(d, k, e)) {
                return Ok(Some(format!("power identity fails at k = {k}, e = {e}")));
            }
            let m = x.matmul(&z.pow(k));
            let eig = quantum::hermitian_eigs(&m.hermitian_part())?;
            let claimed = quantum::xz_eigenvalues(d, k);
            let mut claimed_re: Vec<f64> = claimed.iter().map(|z| z.re).collect();
            claimed_re.sort_by(|a, b| b.total_cmp(a));
            // XZ^k is normal, so its Hermitian part has the real parts as spectrum
            if eig.values.iter().zip(&claimed_re).any(|(a, b)| (a - b).abs() > 1e-9) {
                return Ok(Some(format!("spectrum of XZ^{k} differs")));
            }
            for lambda in &claimed {
                if !quantum::eigenvalue_certificate(&m, *lambda) {
                    return Ok(Some(format!("{lambda} is not an eigenvalue of XZ^{k}")));
                }
            }
        }
        if crate::params::is_prime(d) {
            for r in 0..d {
                if !quantum::measurement_plan(d, r)?.is_correct()? {
                    return Ok(Some(format!("measurement plan wrong for r = {r}")));
                }
            }
        }
        Ok(None)
    })());

    let failed = suite.checks.iter().filter(|c| c.status == "fail").count();
    let passed = suite.checks.iter().filter(|c| c.status == "pass").count();
    let skipped = suite.checks.len() - failed - passed;
    match config.output {
        OutputFormat::Json => {
            for c in &suite.checks {
                json_line(out, c);
            }
            json_line(
                out,
                &serde_json::json!({"d": d, "n": params.n(), "passed": passed, "failed": failed, "skipped": skipped}),
            );
        }
        OutputFormat::Csv => {
            line(out, "check,status,detail");
            for c in &suite.checks {
                line(out, format!("{},{},\"{}\"", c.check, c.status, c.detail.replace('"', "'")));
            }
        }
        OutputFormat::Pretty => {
            for c in &suite.checks {
                let detail = if c.detail.is_empty() { String::new() } else { format!("  ({})", c.detail) };
                line(out, format!("{:<6} {}{}", c.status.to_uppercase(), c.check, detail));
            }
            line(out, format!("{passed} passed, {failed} failed, {skipped} skipped"));
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_PROPERTY })
}
