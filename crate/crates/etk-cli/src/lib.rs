//! Command-line front end: single solves, φ reports, classification,
//! reference-oracle runs and figure sweeps with CSV/JSON output.

pub mod config;
pub mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};

use config::FileConfig;
use etk::experiments::{self, MixFamily, SweepSettings};
use etk::improvement;
use etk::oracle::{self, GaussianBasisConfig};
use etk::potentials::{bv_curvature_sign, classify_character, default_curvature_grid};
use etk::solver;
use etk::{Kinematics, Potential, QuantumNumbers, SystemSpec};

#[derive(Debug, Parser)]
#[command(
    name = "etk",
    version,
    about = "Envelope-theory solver for N-body pairwise Hamiltonians",
    after_help = "Figure sweeps: `etk sweep --figure npp|tcoulomb|exciton|cubic-linear|cubic-log|cubic-gauss`.\n\
                  ETK_THREADS caps worker parallelism. Exit codes: 0 ok, 1 computation/I-O error, 2 usage."
)]
struct Cli {
    /// JSON config file holding the same keys as the flags (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// Solve the compact equations (classical at φ=2, or a pinned φ).
    Solve(SolveArgs),
    /// Compute φ from the dominantly-orbital coupling and solve with it.
    Improve(ProblemArgs),
    /// Report the φ computation only.
    Phi(ProblemArgs),
    /// Concavity of b_T and b_V and the resulting variational character.
    Classify(ProblemArgs),
    /// High-accuracy variational reference energy (three bosons).
    Oracle(OracleArgs),
    /// Reproduce one accuracy-study figure as a CSV/JSON table.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Default, Args)]
struct ProblemArgs {
    /// Family: power, trunc-coulomb, exciton, linear, cubic, log, gauss,
    /// cubic-linear, cubic-log, cubic-gauss.
    #[arg(long)]
    potential: Option<String>,
    /// Power-law strength G.
    #[arg(long = "G")]
    g: Option<f64>,
    /// Power-law exponent, or linear/log/gauss amplitude in the blends.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Cubic amplitude.
    #[arg(long)]
    alpha: Option<f64>,
    /// Coulomb-type strength.
    #[arg(long)]
    c: Option<f64>,
    /// Truncation/smoothing distance.
    #[arg(long)]
    d: Option<f64>,
    /// Blend parameter C in [0, 1].
    #[arg(long = "C")]
    mix: Option<f64>,
    /// Particle count.
    #[arg(long = "N")]
    n: Option<u32>,
    /// Particle mass.
    #[arg(long)]
    m: Option<f64>,
    /// Spatial dimension.
    #[arg(long = "D")]
    dim: Option<u32>,
    /// `bgs` or explicit pairs `n,l;n,l;...` (N-1 of them).
    #[arg(long)]
    state: Option<String>,
    /// Output format: text (default) or json.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Pinned global-quantum-number deformation (default 2 = classical).
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
struct OracleKnobs {
    /// Relative convergence tolerance of the basis refinement.
    #[arg(long = "tol-rel")]
    tol_rel: Option<f64>,
    /// Overlap conditioning threshold.
    #[arg(long = "cond-cap")]
    cond_cap: Option<f64>,
    /// Base width-grid size per Jacobi coordinate.
    #[arg(long)]
    na: Option<usize>,
    #[arg(long)]
    nb: Option<usize>,
    /// Refinement stops before the basis would exceed this.
    #[arg(long = "max-basis")]
    max_basis: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
struct OracleArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    knobs: OracleKnobs,
}

#[derive(Debug, Clone, Default, Args)]
struct SweepArgs {
    /// npp, tcoulomb, exciton, cubic-linear, cubic-log or cubic-gauss.
    #[arg(long)]
    figure: Option<String>,
    /// Override the default grid as `min,max,step`.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// CSV destination (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Optional JSON summary destination (crossings, error extremes).
    #[arg(long)]
    summary: Option<PathBuf>,
    /// csv (default) or json for the main table.
    #[arg(long)]
    format: Option<String>,
    #[command(flatten)]
    knobs: OracleKnobs,
}

/// Usage problems exit with 2, computation/I-O failures with 1.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Run(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Run(e)
    }
}

impl From<etk::Error> for Failure {
    fn from(e: etk::Error) -> Self {
        Failure::Run(anyhow!(e))
    }
}

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    cap_threads();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

/// ETK_THREADS caps the global worker pool (best effort; the pool may
/// already be running).
fn cap_threads() {
    if let Ok(v) = std::env::var("ETK_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn dispatch(cli: Cli) -> std::result::Result<(), Failure> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(Failure::Run)?,
        None => FileConfig::default(),
    };
    let command = match cli.command {
        Some(c) => c,
        None => match file.command.as_deref() {
            Some("solve") => Command::Solve(SolveArgs::default()),
            Some("improve") => Command::Improve(ProblemArgs::default()),
            Some("phi") => Command::Phi(ProblemArgs::default()),
            Some("classify") => Command::Classify(ProblemArgs::default()),
            Some("oracle") => Command::Oracle(OracleArgs::default()),
            Some("sweep") => Command::Sweep(SweepArgs::default()),
            Some(other) => return usage(format!("unknown command `{other}` in config file")),
            None => return usage("no command given (flag or config file)"),
        },
    };
    match command {
        Command::Solve(args) => cmd_solve(args, &file),
        Command::Improve(args) => cmd_improve(args, &file),
        Command::Phi(args) => cmd_phi(args, &file),
        Command::Classify(args) => cmd_classify(args, &file),
        Command::Oracle(args) => cmd_oracle(args, &file),
        Command::Sweep(args) => cmd_sweep(args, &file),
    }
}

/// Effective problem definition after merging flags over the config file
/// and the paper-setup defaults (N=3, m=1, D=3, ground state).
struct Problem {
    spec: SystemSpec,
    format: Format,
}

#[derive(PartialEq, Clone, Copy)]
enum Format {
    Text,
    Json,
}

fn parse_format(s: Option<&str>) -> std::result::Result<Format, Failure> {
    match s {
        None | Some("text") => Ok(Format::Text),
        Some("json") => Ok(Format::Json),
        Some(other) => usage(format!("unknown format `{other}` (use text or json)")),
    }
}

fn parse_state(s: &str, coordinates: usize) -> std::result::Result<QuantumNumbers, Failure> {
    if s == "bgs" {
        return QuantumNumbers::ground(coordinates).map_err(Into::into);
    }
    let mut pairs = Vec::new();
    for chunk in s.split(';') {
        let mut it = chunk.split(',');
        let (Some(n), Some(l), None) = (it.next(), it.next(), it.next()) else {
            return usage(format!("malformed state chunk `{chunk}` (want `n,l`)"));
        };
        let n: u32 = match n.trim().parse() {
            Ok(v) => v,
            Err(_) => return usage(format!("bad radial quantum number `{n}`")),
        };
        let l: u32 = match l.trim().parse() {
            Ok(v) => v,
            Err(_) => return usage(format!("bad orbital quantum number `{l}`")),
        };
        pairs.push((n, l));
    }
    QuantumNumbers::new(pairs).map_err(Into::into)
}

fn build_potential(args: &ProblemArgs, file: &FileConfig) -> std::result::Result<Potential, Failure> {
    let family = args
        .potential
        .clone()
        .or_else(|| file.potential.clone())
        .ok_or_else(|| Failure::Usage("no potential family selected".into()))?;
    let g = args.g.or(file.g);
    let beta = args.beta.or(file.beta);
    let alpha = args.alpha.or(file.alpha);
    let c = args.c.or(file.c);
    let d = args.d.or(file.d);
    let mix = args.mix.or(file.mix);

    let need = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| Failure::Usage(format!("family `{family}` needs --{name}")))
    };
    let pot = match family.as_str() {
        "power" => Potential::power(g.unwrap_or(1.0), need("beta", beta)?),
        "trunc-coulomb" => Potential::trunc_coulomb(c.unwrap_or(1.0), need("d", d)?),
        "exciton" => Potential::exciton(c.unwrap_or(1.0), need("d", d)?),
        "linear" => Potential::linear(beta.unwrap_or(1.0)),
        "cubic" => Potential::cubic(alpha.unwrap_or(1.0)),
        "log" => Potential::log(beta.unwrap_or(1.0)),
        "gauss" => Potential::gauss(need("beta", beta)?),
        "cubic-linear" => {
            Potential::cubic_linear(alpha.unwrap_or(1.0), beta.unwrap_or(1.0), need("C", mix)?)
        }
        "cubic-log" => {
            Potential::cubic_log(alpha.unwrap_or(1.0), beta.unwrap_or(1.0), need("C", mix)?)
        }
        "cubic-gauss" => {
            Potential::cubic_gauss(alpha.unwrap_or(1.0), beta.unwrap_or(10.0), need("C", mix)?)
        }
        other => return usage(format!("unknown potential family `{other}`")),
    };
    pot.map_err(Into::into)
}

fn build_problem(args: &ProblemArgs, file: &FileConfig) -> std::result::Result<Problem, Failure> {
    let potential = build_potential(args, file)?;
    let n = args.n.or(file.n).unwrap_or(3);
    let m = args.m.or(file.m).unwrap_or(1.0);
    let dim = args.dim.or(file.dim).unwrap_or(3);
    if n < 2 {
        return usage(format!("need at least 2 particles, got {n}"));
    }
    let state_text = args.state.clone().or_else(|| file.state.clone());
    let state = parse_state(state_text.as_deref().unwrap_or("bgs"), (n - 1) as usize)?;
    let spec = SystemSpec::new(n, m, dim, Kinematics::NonRelativistic, potential, state)?;
    let format = parse_format(
        args.format.as_deref().or(file.format.as_deref()),
    )?;
    Ok(Problem { spec, format })
}

fn print_solution(sol: &etk::EnvelopeSolution, format: Format) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(sol)?),
        Format::Text => {
            println!("E           = {:.12e}", sol.energy);
            println!("p0          = {:.12e}", sol.p0);
            println!("rho0        = {:.12e}", sol.rho0);
            println!("Q           = {:.12e}", sol.q_used);
            println!("phi         = {:.12e}", sol.phi_used);
            println!("character   = {}", sol.character);
            println!("roots       = {}", sol.root_count);
            println!("residual    = {:.3e}", sol.residual_rel);
        }
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs, file: &FileConfig) -> std::result::Result<(), Failure> {
    let problem = build_problem(&args.problem, file)?;
    let phi = args.phi.or(file.phi).unwrap_or(2.0);
    let sol = solver::solve_compact(&problem.spec, phi)?;
    print_solution(&sol, problem.format).map_err(Failure::Run)
}

fn cmd_improve(args: ProblemArgs, file: &FileConfig) -> std::result::Result<(), Failure> {
    let problem = build_problem(&args, file)?;
    let report = improvement::compute_phi(&problem.spec)?;
    let sol = solver::solve_compact(&problem.spec, report.phi)?;
    match problem.format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Payload<'a> {
                phi_report: &'a etk::PhiReport,
                solution: &'a etk::EnvelopeSolution,
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&Payload {
                    phi_report: &report,
                    solution: &sol
                })
                .map_err(|e| Failure::Run(e.into()))?
            );
        }
        Format::Text => {
            println!("phi         = {:.12e}", report.phi);
            print_solution(&sol, Format::Text).map_err(Failure::Run)?;
        }
    }
    Ok(())
}

fn cmd_phi(args: ProblemArgs, file: &FileConfig) -> std::result::Result<(), Failure> {
    let problem = build_problem(&args, file)?;
    let report = improvement::compute_phi(&problem.spec)?;
    match problem.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Run(e.into()))?
        ),
        Format::Text => {
            println!("phi         = {:.12e}", report.phi);
            println!("lambda      = {:.12e}", report.lambda);
            println!("p~0         = {:.12e}", report.p_tilde);
            println!("rho~0       = {:.12e}", report.rho_tilde);
            println!("mu          = {:.12e}", report.mu);
            println!("k           = {:.12e}", report.k);
        }
    }
    Ok(())
}

fn cmd_classify(args: ProblemArgs, file: &FileConfig) -> std::result::Result<(), Failure> {
    let problem = build_problem(&args, file)?;
    let spec = &problem.spec;
    let bt = spec.kinematics().bt_curvature();
    let bv = spec.potential().bv_curvature();
    let sampled = bv_curvature_sign(spec.potential(), &default_curvature_grid())?;
    let character = classify_character(spec.kinematics(), spec.potential());
    match problem.format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Payload {
                b_t: String,
                b_v: String,
                b_v_sampled: String,
                character: etk::VariationalCharacter,
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&Payload {
                    b_t: bt.to_string(),
                    b_v: bv.to_string(),
                    b_v_sampled: sampled.to_string(),
                    character,
                })
                .map_err(|e| Failure::Run(e.into()))?
            );
        }
        Format::Text => {
            println!("b_T         = {bt}");
            println!("b_V         = {bv}");
            println!("b_V sampled = {sampled}");
            println!("character   = {character}");
        }
    }
    Ok(())
}

fn oracle_config(knobs: &OracleKnobs, file: &FileConfig) -> GaussianBasisConfig {
    let mut cfg = GaussianBasisConfig::default();
    if let Some(v) = knobs.tol_rel.or(file.tol_rel) {
        cfg.tol_rel = v;
    }
    if let Some(v) = knobs.cond_cap.or(file.cond_cap) {
        cfg.cond_cap = v;
    }
    if let Some(v) = knobs.na.or(file.na) {
        cfg.n_a = v;
    }
    if let Some(v) = knobs.nb.or(file.nb) {
        cfg.n_b = v;
    }
    if let Some(v) = knobs.max_basis.or(file.max_basis) {
        cfg.max_basis = v;
    }
    cfg
}

fn cmd_oracle(args: OracleArgs, file: &FileConfig) -> std::result::Result<(), Failure> {
    let problem = build_problem(&args.problem, file)?;
    let classical = solver::solve_compact(&problem.spec, 2.0)?;
    let cfg = oracle_config(&args.knobs, file).scaled_to(classical.rho0);
    let result = oracle::oracle_ground_energy(&problem.spec, &cfg)?;
    match problem.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&result).map_err(|e| Failure::Run(e.into()))?
        ),
        Format::Text => {
            println!("E           = {:.12e}", result.energy);
            println!("basis       = {}", result.basis_size);
            println!("converged   = {}", result.converged);
            println!("delta_last  = {:.3e}", result.delta_last);
        }
    }
    Ok(())
}

fn parse_grid(text: &str) -> std::result::Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return usage(format!("malformed grid `{text}` (want `min,max,step`)"));
    }
    let mut vals = [0.0f64; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = match part.trim().parse() {
            Ok(v) => v,
            Err(_) => return usage(format!("bad grid number `{part}`")),
        };
    }
    let (min, max, step) = (vals[0], vals[1], vals[2]);
    if !(step > 0.0) || max < min {
        return usage(format!("malformed grid `{text}` (want min <= max, step > 0)"));
    }
    let count = ((max - min) / step).round() as usize;
    let grid: Vec<f64> = (0..=count)
        .map(|i| min + step * i as f64)
        .filter(|&v| v <= max + 1e-12 * step)
        .collect();
    Ok(grid)
}

fn cmd_sweep(args: SweepArgs, file: &FileConfig) -> std::result::Result<(), Failure> {
    let figure = args
        .figure
        .clone()
        .or_else(|| file.figure.clone())
        .ok_or_else(|| Failure::Usage("sweep needs --figure".into()))?;
    let grid_text = args.grid.clone().or_else(|| file.grid.clone());
    let grid = grid_text.as_deref().map(parse_grid).transpose()?;

    let settings = SweepSettings {
        oracle: oracle_config(&args.knobs, file),
        solver: Default::default(),
    };
    let table = match figure.as_str() {
        "npp" => experiments::sweep_npp_with(
            &grid.unwrap_or_else(experiments::default_npp_grid),
            &settings,
        ),
        "tcoulomb" => experiments::sweep_trunc_coulomb_with(
            &grid.unwrap_or_else(experiments::default_trunc_coulomb_grid),
            &settings,
        ),
        "exciton" => experiments::sweep_exciton_with(
            &grid.unwrap_or_else(experiments::default_exciton_grid),
            &settings,
        ),
        "cubic-linear" => experiments::sweep_mix_with(
            MixFamily::CubicLinear,
            &grid.unwrap_or_else(experiments::default_mix_grid),
            &settings,
        ),
        "cubic-log" => experiments::sweep_mix_with(
            MixFamily::CubicLog,
            &grid.unwrap_or_else(experiments::default_mix_grid),
            &settings,
        ),
        "cubic-gauss" => experiments::sweep_mix_with(
            MixFamily::CubicGauss,
            &grid.unwrap_or_else(experiments::default_mix_grid),
            &settings,
        ),
        other => return usage(format!("unknown figure `{other}`")),
    }?;

    let summary = experiments::summarize(&table);
    let format = args.format.as_deref().or(file.format.as_deref());
    let rendered = match format {
        None | Some("csv") => output::render_csv(&table).map_err(Failure::Run)?,
        Some("json") => output::render_json(&table, &summary).map_err(Failure::Run)?,
        Some(other) => return usage(format!("unknown format `{other}` (use csv or json)")),
    };

    let output_path = args
        .output
        .clone()
        .or_else(|| file.output.clone().map(PathBuf::from));
    match output_path {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| Failure::Run(anyhow!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }

    let summary_path = args
        .summary
        .clone()
        .or_else(|| file.summary.clone().map(PathBuf::from));
    if let Some(path) = summary_path {
        let text = serde_json::to_string_pretty(&summary).map_err(|e| Failure::Run(e.into()))?;
        std::fs::write(&path, text + "\n")
            .map_err(|e| Failure::Run(anyhow!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0,1,0.5").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("1,1,0.5").unwrap(), vec![1.0]);
        assert!(parse_grid("1,0,0.5").is_err());
        assert!(parse_grid("0,1").is_err());
        assert!(parse_grid("0,1,x").is_err());
        // floating step accumulates without dropping the endpoint
        assert_eq!(parse_grid("-1.5,-0.1,0.05").unwrap().len(), 29);
    }

    #[test]
    fn state_parsing() {
        let s = parse_state("bgs", 2).unwrap();
        assert!(s.is_ground());
        let s = parse_state("1,0;0,2", 2).unwrap();
        assert_eq!(s.pairs(), &[(1, 0), (0, 2)]);
        assert!(parse_state("1;2", 2).is_err());
        assert!(parse_state("1,a", 2).is_err());
    }

    #[test]
    fn potential_defaults_mirror_the_figures() {
        let file = FileConfig::default();
        let mut args = ProblemArgs::default();
        args.potential = Some("cubic-gauss".into());
        args.mix = Some(0.5);
        let pot = build_potential(&args, &file).unwrap();
        assert!(matches!(
            pot,
            Potential::CubicGauss { alpha, beta, mix }
                if alpha == 1.0 && beta == 10.0 && mix == 0.5
        ));
    }

    #[test]
    fn flags_override_config_file() {
        let file: FileConfig =
            serde_json::from_str(r#"{"potential": "power", "beta": -1.0, "G": 2.0}"#).unwrap();
        let mut args = ProblemArgs::default();
        args.beta = Some(-0.5);
        let pot = build_potential(&args, &file).unwrap();
        assert!(matches!(
            pot,
            Potential::Power { g, beta } if g == 2.0 && beta == -0.5
        ));
    }
}
