//! Command-line front end for `lucoset`.

pub mod error;
pub mod matrix_file;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lucoset::linalg::{haar_unitary, ComplexMatrix, DensityMatrix};
use lucoset::lu::{
    certify_lu_equivalence, probe_lambda, same_double_coset, EquivalenceVerdict, OptimizerConfig, VerdictTag,
    COSET_UNITARY_TOL,
};
use lucoset::partitions::{enumerate_partitions, partition_count};
use lucoset::spectral::{spectral_type, DEFAULT_CLUSTER_TOL};
use lucoset::werner::werner_scan;
use lucoset::young::{LocalStructure, Partition};

use crate::error::{exit, CliError};
use crate::matrix_file::{number, MatrixFile};

#[derive(Parser, Debug)]
#[command(name = "lucoset", version, about = "Local unitary equivalence of density matrices via double cosets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the spectral type of a density matrix.
    Classify {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
    },
    /// Decide local unitary equivalence of two density matrices.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Decide whether two unitaries lie in the same double coset U_n g U_lambda.
    Coset {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long = "lambda")]
        lambda: String,
        #[arg(long)]
        dims: Option<String>,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Scan the Werner family over a grid and write its strata as CSV.
    WernerScan {
        #[arg(long, default_value_t = 50)]
        grid_e: usize,
        #[arg(long, default_value_t = 50)]
        grid_f: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the partitions of n, or count them.
    Partitions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Write a random density matrix g Lambda g^dagger of the given type.
    RandomState {
        #[arg(long)]
        n: usize,
        #[arg(long = "lambda")]
        lambda: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dims: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct OptimizerArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    /// Success threshold on the squared Frobenius residual.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 1e-7)]
    screen_tol: f64,
    #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
    cluster_tol: f64,
    #[arg(long, default_value_t = 0.1)]
    step_init: f64,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OptimizerArgs {
    fn config(&self) -> Result<OptimizerConfig, CliError> {
        let cfg = OptimizerConfig {
            restarts: self.restarts,
            max_iters: self.max_iters,
            tol_success: self.tol,
            step_init: self.step_init,
            seed: self.seed,
            screen_tol: self.screen_tol,
            cluster_tol: self.cluster_tol,
        };
        cfg.validate().map_err(|e| CliError::BadArgument(e.to_string()))?;
        Ok(cfg)
    }
}

/// Output of a successful command: text for stdout and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::BAD_ARGUMENT } else { exit::SUCCESS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return exit::IO_FAILURE;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Classify { input, cluster_tol } => classify(input, *cluster_tol),
        Command::Equiv { a, b, opt } => equiv(a, b, opt),
        Command::Coset { g1, g2, lambda, dims, opt } => coset(g1, g2, lambda, dims.as_deref(), opt),
        Command::WernerScan { grid_e, grid_f, tol, out } => scan(*grid_e, *grid_f, *tol, out.as_deref()),
        Command::Partitions { n, count_only } => partitions(*n, *count_only),
        Command::RandomState { n, lambda, seed, dims, out } => {
            random_state(*n, lambda, *seed, dims.as_deref(), out.as_deref())
        }
    }
}

fn success(stdout: String) -> Outcome {
    Outcome { stdout, code: exit::SUCCESS }
}

fn read_density(path: &Path) -> Result<(LocalStructure, DensityMatrix), CliError> {
    let file = MatrixFile::read(path)?;
    let rho = DensityMatrix::new(file.matrix).map_err(|e| {
        let why = match e {
            lucoset::Error::InvalidDensity(v) => v.to_string(),
            other => other.to_string(),
        };
        CliError::InvalidDensity(format!("{}: {why}", path.display()))
    })?;
    Ok((file.dims, rho))
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    s.parse().map_err(|e: lucoset::Error| CliError::BadArgument(e.to_string()))
}

fn parse_dims(s: &str) -> Result<LocalStructure, CliError> {
    s.parse().map_err(|e: lucoset::Error| CliError::BadArgument(e.to_string()))
}

fn classify(input: &Path, cluster_tol: f64) -> Result<Outcome, CliError> {
    let (_, rho) = read_density(input)?;
    let ty = spectral_type(&rho, cluster_tol).map_err(|e| CliError::BadArgument(e.to_string()))?;
    let values: Vec<String> = ty.distinct_values().iter().map(|&v| number(v)).collect();
    let mults: Vec<String> = ty.multiplicities().iter().map(usize::to_string).collect();
    Ok(success(format!(
        "partition: {}\ndistinct_values: {}\nmultiplicities: {}\ncluster_tol: {}\n",
        ty.partition(),
        values.join(","),
        mults.join(","),
        number(cluster_tol)
    )))
}

fn verdict_code(verdict: &EquivalenceVerdict) -> i32 {
    match verdict.tag {
        VerdictTag::Equivalent => exit::EQUIVALENT,
        VerdictTag::Inequivalent => exit::INEQUIVALENT,
        VerdictTag::Inconclusive => exit::INCONCLUSIVE,
    }
}

fn map_core_error(e: lucoset::Error) -> CliError {
    match e {
        lucoset::Error::DimensionMismatch(m) => CliError::DimsMismatch(m),
        lucoset::Error::NotUnitary { .. } => CliError::NotUnitary(e.to_string()),
        lucoset::Error::InvalidConfig(m) => CliError::BadArgument(m),
        other => CliError::BadArgument(other.to_string()),
    }
}

fn finish_report(report: String, out: Option<&Path>, verdict: &EquivalenceVerdict) -> Result<Outcome, CliError> {
    if let Some(path) = out {
        write_output(path, &report)?;
    }
    Ok(Outcome { stdout: report, code: verdict_code(verdict) })
}

fn equiv(a: &Path, b: &Path, opt: &OptimizerArgs) -> Result<Outcome, CliError> {
    let cfg = opt.config()?;
    let (dims_a, rho_a) = read_density(a)?;
    let (dims_b, rho_b) = read_density(b)?;
    if dims_a != dims_b {
        return Err(CliError::DimsMismatch(format!("{} declares dims {dims_a}, {} declares {dims_b}", a.display(), b.display())));
    }
    let verdict = certify_lu_equivalence(&rho_a, &rho_b, &dims_a, &cfg).map_err(map_core_error)?;
    let report = report::verdict_report("equiv", &verdict, &dims_a, &cfg, None);
    finish_report(report, opt.out.as_deref(), &verdict)
}

fn read_unitary(path: &Path) -> Result<MatrixFile, CliError> {
    let file = MatrixFile::read(path)?;
    file.matrix
        .check_unitary(COSET_UNITARY_TOL)
        .map_err(|e| CliError::NotUnitary(format!("{}: {e}", path.display())))?;
    Ok(file)
}

fn coset(g1: &Path, g2: &Path, lambda: &str, dims: Option<&str>, opt: &OptimizerArgs) -> Result<Outcome, CliError> {
    let cfg = opt.config()?;
    let lambda = parse_partition(lambda)?;
    let dims_flag = dims.map(parse_dims).transpose()?;
    let f1 = read_unitary(g1)?;
    let f2 = read_unitary(g2)?;
    let dims = match dims_flag {
        Some(d) => d,
        None if f1.dims == f2.dims => f1.dims.clone(),
        None => {
            return Err(CliError::DimsMismatch(format!(
                "{} declares dims {}, {} declares {}",
                g1.display(),
                f1.dims,
                g2.display(),
                f2.dims
            )))
        }
    };
    for f in [&f1, &f2] {
        if f.matrix.rows() != dims.total() {
            return Err(CliError::DimsMismatch(format!(
                "dims {dims} do not match a {0}x{0} unitary",
                f.matrix.rows()
            )));
        }
    }
    if lambda.n() != dims.total() {
        return Err(CliError::BadArgument(format!("{lambda} is not a partition of {}", dims.total())));
    }
    let verdict = same_double_coset(&f1.matrix, &f2.matrix, &lambda, &dims, &cfg).map_err(map_core_error)?;
    let report =
        report::verdict_report("coset", &verdict, &dims, &cfg, Some(("lambda", lambda.to_string().into())));
    finish_report(report, opt.out.as_deref(), &verdict)
}

/// The CSV written by `werner-scan`.
pub fn werner_csv(grid_e: usize, grid_f: usize, tol: f64) -> Result<String, CliError> {
    let records = werner_scan(grid_e, grid_f, tol).map_err(|e| CliError::BadArgument(e.to_string()))?;
    let mut csv = String::from("e,f,partition,partition_numeric,agree\n");
    for r in &records {
        csv.push_str(&format!("{:.6},{:.6},{},{},{}\n", r.e, r.f, r.partition, r.partition_numeric, r.agree()));
    }
    Ok(csv)
}

fn scan(grid_e: usize, grid_f: usize, tol: f64, out: Option<&Path>) -> Result<Outcome, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::BadArgument(format!("tolerance must be positive, got {tol}")));
    }
    let csv = werner_csv(grid_e, grid_f, tol)?;
    match out {
        Some(path) => {
            write_output(path, &csv)?;
            Ok(success(String::new()))
        }
        None => Ok(success(csv)),
    }
}

fn partitions(n: usize, count_only: bool) -> Result<Outcome, CliError> {
    if count_only {
        let p = partition_count(n).map_err(|e| CliError::BadArgument(e.to_string()))?;
        return Ok(success(format!("{p}\n")));
    }
    let list = enumerate_partitions(n).map_err(|e| CliError::BadArgument(e.to_string()))?;
    let mut text = String::new();
    for p in &list.items {
        text.push_str(&p.to_string());
        text.push('\n');
    }
    Ok(success(text))
}

/// `g Lambda* g^dagger` with Haar `g` and the probe spectrum of `lambda`.
pub fn random_state_matrix(lambda: &Partition, seed: u64) -> ComplexMatrix {
    let n = lambda.n();
    if lambda.len() == 1 {
        // a single block is the scalar I/n whatever g is
        return ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
    }
    let g = haar_unitary(n, seed);
    ComplexMatrix::from_real_diag(&probe_lambda(lambda)).conjugate_by(&g).hermitian_part()
}

fn random_state(n: usize, lambda: &str, seed: u64, dims: Option<&str>, out: Option<&Path>) -> Result<Outcome, CliError> {
    let lambda = parse_partition(lambda)?;
    if lambda.n() != n || n == 0 {
        return Err(CliError::BadArgument(format!("{lambda} is not a partition of {n}")));
    }
    let dims = match dims {
        Some(d) => parse_dims(d)?,
        None => LocalStructure::global(n).map_err(|e| CliError::BadArgument(e.to_string()))?,
    };
    if dims.total() != n {
        return Err(CliError::BadArgument(format!("dims {dims} do not multiply to {n}")));
    }
    let file = MatrixFile { dims, matrix: random_state_matrix(&lambda, seed) };
    match out {
        Some(path) => {
            file.write(path)?;
            Ok(success(String::new()))
        }
        None => Ok(success(file.to_json())),
    }
}
