use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use frobrec_cli::format::Format;
use frobrec_cli::{run, Command, RunConfig};

#[derive(Parser)]
#[command(name = "frobrec", version, about = "Genus-zero Frobenius potentials of orbifold projective lines")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reconstruct the potential and print its coefficients
    Compute(Common),
    /// Run the WDVV residual sweep and the audits
    Verify(Common),
    /// Print coefficients together with the Gromov-Witten invariants
    Invariants(Common),
    /// Print the limit algebra and check its presentation
    Algebra(Common),
}

#[derive(Args)]
struct Common {
    /// Orbifold orders a1,a2,a3 with 1 <= a1 <= a2 <= a3
    #[arg(long = "a", value_name = "A1,A2,A3", value_parser = parse_triple)]
    a: [i64; 3],
    /// Highest power of e^{t_mu}; defaults to the natural bound when chi > 0
    #[arg(long)]
    max_m: Option<u32>,
    /// Highest total degree |alpha| in the twisted coordinates
    #[arg(long)]
    max_len: Option<u32>,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write the result here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for cached potentials (FROBREC_CACHE takes precedence)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Skip the residual sweep in `compute`; output is marked unverified
    #[arg(long)]
    no_verify: bool,
}

fn parse_triple(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated integers, got '{s}'"));
    }
    let mut out = [0i64; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.trim().parse().map_err(|_| format!("'{part}' is not an integer"))?;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, c) = match cli.command {
        Cmd::Compute(c) => (Command::Compute, c),
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::Invariants(c) => (Command::Invariants, c),
        Cmd::Algebra(c) => (Command::Algebra, c),
    };
    let config = RunConfig {
        a: c.a,
        max_m: c.max_m,
        max_len: c.max_len,
        command,
        format: c.format,
        out_path: c.out,
        cache_dir: c.cache_dir,
        verify: !c.no_verify,
    };
    let code = run(&config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
