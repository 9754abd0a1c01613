use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flathom::cli::{self, FrameChoice, Options, OutputFormat};

#[derive(Parser)]
#[command(name = "flathom", version, about = "Exact analysis of affine isometry groups of flat pseudo-Riemannian spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check generators and pair relations
    Validate(Common),
    /// Full report: validation, frame, blocks, fixed points, centralizer, classification, diagnostic
    Analyze(Common),
    /// Commutator fixed-point criteria and a bounded word scan
    FixedPoints(Common),
    /// Centralizer algebra and homogeneity verdict
    Centralizer(Common),
    /// Low-dimensional classification
    Classify(Common),
    /// Build a group file from constructor parameters or a Lie algebra file
    Construct {
        /// Parameter file; `-` or absent reads standard input
        input: Option<PathBuf>,
        /// Write the group file here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Group file; `-` or absent reads standard input
    input: Option<PathBuf>,
    /// Longest word enumerated by the freeness scan
    #[arg(long, default_value_t = 4)]
    max_word_len: usize,
    /// Treat the generators as a Malcev basis
    #[arg(long)]
    assert_malcev: bool,
    /// Witt frame for the block data: computed from U₀, or the coordinate basis
    #[arg(long, value_enum, default_value_t = FrameArg::Auto)]
    frame: FrameArg,
    /// Plain text or versioned JSON
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameArg {
    Auto,
    Given,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            max_word_len: self.max_word_len,
            assert_malcev: self.assert_malcev,
            frame: match self.frame {
                FrameArg::Auto => FrameChoice::Auto,
                FrameArg::Given => FrameChoice::Given,
            },
            format: match self.format {
                FormatArg::Text => OutputFormat::Text,
                FormatArg::Structured => OutputFormat::Structured,
            },
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (input, output) = match &cli.command {
        Command::Validate(c)
        | Command::Analyze(c)
        | Command::FixedPoints(c)
        | Command::Centralizer(c)
        | Command::Classify(c) => (&c.input, None),
        Command::Construct { input, output } => (input, output.as_ref()),
    };
    let text = match read_input(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Validate(c) => cli::cmd_validate(&text, &c.options()),
        Command::Analyze(c) => cli::cmd_analyze(&text, &c.options()),
        Command::FixedPoints(c) => cli::cmd_fixed_points(&text, &c.options()),
        Command::Centralizer(c) => cli::cmd_centralizer(&text, &c.options()),
        Command::Classify(c) => cli::cmd_classify(&text, &c.options()),
        Command::Construct { .. } => cli::cmd_construct(&text),
    };
    let code = cli::exit_code(&result);
    match result {
        Ok(out) => {
            if let Some(path) = output {
                if let Err(e) = std::fs::write(path, out) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{out}");
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}
