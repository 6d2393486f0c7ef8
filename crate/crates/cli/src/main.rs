mod commands;
mod dispatch;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact Temperley-Lieb-Jones computations.
#[derive(Debug, Parser)]
#[command(name = "tlj", version)]
struct Cli {
    /// Work at q = e^{πi/R} instead of generic q (2 ≤ R ≤ 12).
    #[arg(long, global = true, value_name = "R")]
    root: Option<u32>,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The Jones-Wenzl projector p_n in the diagram basis.
    Jw {
        #[arg(long)]
        n: usize,
    },
    /// The theta net value θ(a, b, c).
    Theta {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
    },
    /// Closed trivalent nets.
    Net {
        #[command(subcommand)]
        action: NetAction,
    },
    /// Decomposition coefficients of p_a ⊗ p_b.
    Fuse {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// The 6j symbol {a b i; c d j}.
    Sixj(SixjArgs),
    /// Skein modules of spines (requires --root).
    Skein {
        #[command(subcommand)]
        action: SkeinAction,
    },
    /// Replay the identity checks over parameter grids.
    Verify(verify::VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum NetAction {
    /// Evaluate a closed net file.
    Eval { file: std::path::PathBuf },
}

#[derive(Debug, Args)]
struct SixjArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    j: usize,
}

#[derive(Debug, Subcommand)]
enum SkeinAction {
    /// Number of admissible colorings.
    Dim {
        file: std::path::PathBuf,
        /// Sum over every assignment of boundary labels instead of using
        /// the labels stored in the file.
        #[arg(long)]
        sum_boundary: bool,
    },
    /// The colorings, in basis order.
    Basis { file: std::path::PathBuf },
    /// The matrix of one HI move.
    Hi {
        file: std::path::PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, default_value_t = 0)]
        orient: u8,
    },
    /// The composite matrix of a sequence of HI moves.
    Transport {
        file: std::path::PathBuf,
        /// JSON list of {"edge": E, "orientation": O}.
        #[arg(long)]
        moves: std::path::PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Prints the command's output; `Ok(false)` means a check failed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let root = dispatch::check_root(cli.root)?;
    let out = match cli.command {
        Command::Jw { n } => commands::jw(root, n)?,
        Command::Theta { a, b, c } => commands::theta(root, a, b, c)?,
        Command::Net { action: NetAction::Eval { file } } => commands::net_eval(root, &file)?,
        Command::Fuse { a, b } => commands::fuse(root, a, b)?,
        Command::Sixj(s) => commands::sixj(root, [s.a, s.b, s.i, s.c, s.d, s.j])?,
        Command::Skein { action } => {
            let root = root.ok_or_else(|| anyhow::anyhow!("skein commands need --root"))?;
            match action {
                SkeinAction::Dim { file, sum_boundary } => commands::skein_dim(root, &file, sum_boundary)?,
                SkeinAction::Basis { file } => commands::skein_basis(root, &file)?,
                SkeinAction::Hi { file, edge, orient } => commands::skein_hi(root, &file, edge, orient)?,
                SkeinAction::Transport { file, moves } => commands::skein_transport(root, &file, &moves)?,
            }
        }
        Command::Verify(args) => verify::run(root, &args)?,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out.json)?);
    } else {
        print!("{}", out.text);
    }
    Ok(out.passed)
}
