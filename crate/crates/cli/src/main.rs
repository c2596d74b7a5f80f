use std::f64::consts::{PI, TAU};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use discord_scope::commands::{self, ScanPoint};

#[derive(Parser)]
#[command(
    name = "discord-scope",
    version,
    about = "Visibility landscapes, zero-visibility lines, and discord quantifiers for separable two-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap the worker thread count (default: one per logical CPU).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Interpret command-line angles (--alpha, --beta, --phi-a, --phi-b,
    /// --phases) in degrees. Spec files always use radians.
    #[arg(long, global = true)]
    degrees: bool,

    /// Output directory (default: <root>/<command>/<timestamp>/ where the
    /// root is $DISCORD_SCOPE_OUT or "out").
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct PointArgs {
    /// Fixed A mixing angle.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Fixed B mixing angle.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Fixed A loop phase.
    #[arg(long = "phi-a", default_value_t = 0.0)]
    phi_a: f64,
    /// Fixed B loop phase.
    #[arg(long = "phi-b", default_value_t = 0.0)]
    phi_b: f64,
}

impl PointArgs {
    fn scan_point(&self, degrees: bool) -> ScanPoint {
        let c = if degrees { PI / 180.0 } else { 1.0 };
        ScanPoint {
            alpha: self.alpha * c,
            beta: self.beta * c,
            phi_a: self.phi_a * c,
            phi_b: self.phi_b * c,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample the visibility over a 2D grid of scan parameters.
    Landscape {
        /// State spec JSON file.
        #[arg(long)]
        spec: PathBuf,
        /// Two comma-separated axes out of alpha, beta, phi_a, phi_b.
        #[arg(long, default_value = "alpha,beta")]
        axes: String,
        /// Grid resolution per axis.
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Trace the zero-visibility lines over the B mixing angle.
    Zerolines {
        #[arg(long)]
        spec: PathBuf,
        /// Number of uniform beta samples over [0, 2pi).
        #[arg(long = "beta-grid", default_value_t = 512)]
        beta_grid: usize,
        /// Fixed B loop phase.
        #[arg(long = "phi-b", default_value_t = 0.0)]
        phi_b: f64,
    },
    /// Evaluate the landscape quantifiers and the combined witness.
    Quantify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "beta-grid", default_value_t = 512)]
        beta_grid: usize,
    },
    /// Compute exact discord by measurement minimization.
    Discord {
        #[arg(long)]
        spec: PathBuf,
        /// Coarse-grid resolution of the measurement-axis scan.
        #[arg(long = "grid-n", default_value_t = 64)]
        grid_n: usize,
        /// Pattern-search termination step, radians.
        #[arg(long = "refine-tol", default_value_t = 1e-8)]
        refine_tol: f64,
    },
    /// Monte-Carlo shot simulation and fringe fit over a phase sweep.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated detection phases (default: 16 uniform).
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        phases: Option<Vec<f64>>,
        /// Shots per phase point.
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Sweep a parameterized family and tabulate discord vs quantifiers.
    Compare {
        /// Family JSON file (spec template plus sweep block).
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "beta-grid", default_value_t = 512)]
        beta_grid: usize,
        #[arg(long = "grid-n", default_value_t = 64)]
        grid_n: usize,
        #[arg(long = "refine-tol", default_value_t = 1e-8)]
        refine_tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
        {
            eprintln!("discord-scope: could not configure thread pool: {e}");
        }
    }

    let degrees = cli.degrees;
    let out = cli.out.as_deref();
    let result = match &cli.command {
        Command::Landscape {
            spec,
            axes,
            resolution,
            point,
        } => commands::cmd_landscape(spec, axes, *resolution, point.scan_point(degrees), out),
        Command::Zerolines {
            spec,
            beta_grid,
            phi_b,
        } => {
            let phi_b = if degrees { phi_b * PI / 180.0 } else { *phi_b };
            commands::cmd_zerolines(spec, *beta_grid, phi_b, out)
        }
        Command::Quantify { spec, beta_grid } => commands::cmd_quantify(spec, *beta_grid, out),
        Command::Discord {
            spec,
            grid_n,
            refine_tol,
        } => commands::cmd_discord(spec, *grid_n, *refine_tol, out),
        Command::Simulate {
            spec,
            phases,
            shots,
            seed,
            point,
        } => {
            let c = if degrees { PI / 180.0 } else { 1.0 };
            let phases: Vec<f64> = match phases {
                Some(list) => list.iter().map(|p| p * c).collect(),
                None => (0..16).map(|i| TAU * i as f64 / 16.0).collect(),
            };
            commands::cmd_simulate(spec, &phases, *shots, *seed, point.scan_point(degrees), out)
        }
        Command::Compare {
            spec,
            beta_grid,
            grid_n,
            refine_tol,
        } => commands::cmd_compare(spec, *beta_grid, *grid_n, *refine_tol, out),
    };

    match result {
        Ok(dir) => {
            println!("{}", dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("discord-scope: {e}");
            ExitCode::from(e.exit_code)
        }
    }
}
