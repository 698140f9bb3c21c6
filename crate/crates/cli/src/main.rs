use std::io::{IsTerminal, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use glt_core::scalars::{FieldTag, GaloisField, Rationals};
use serde_json::{json, Value};

mod commands;

use commands::{CliError, Context};

#[derive(Parser, Debug)]
#[command(name = "glt", version, about = "Exact computations in Rep(GL_t), modular gl_n and Yangians")]
struct Cli {
    /// Coefficient field: `q`, `fp:<p>` or `fp:<p>:<m>`.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Series truncation order.
    #[arg(long, global = true, env = "GLT_TRUNC", default_value_t = glt_core::scalars::DEFAULT_TRUNCATION)]
    trunc: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Diagram count and gl_n oracle rank of a Hom space.
    HomDim { input: Option<String> },
    /// Composes two diagram combinations `g ∘ f`.
    Compose { input: Option<String> },
    /// Closure trace of an endomorphism.
    Trace { input: Option<String> },
    /// Gram determinant of the walled Brauer algebra and its integrality witness.
    GramDet { input: Option<String> },
    /// Dimension polynomial by Young symmetrizer and by interpolation.
    DimPoly { input: Option<String> },
    /// Builds a gl_n module and tests irreducibility.
    WeylMod { input: Option<String> },
    /// Irreducibility scan over weights and primes.
    BoundScan { input: Option<String> },
    /// Yangian modules.
    Yangian {
        #[command(subcommand)]
        op: YangianOp,
    },
    /// Highest weights and Drinfeld polynomials in complex rank.
    Drinfeld {
        #[command(subcommand)]
        op: DrinfeldOp,
    },
    /// Residues of an integer polynomial modulo small primes.
    WitnessPrimes { input: Option<String> },
    /// Runs the acceptance suite.
    Selftest {
        /// Criteria to run (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum YangianOp {
    Build { input: Option<String> },
    Tensor { input: Option<String> },
    Verify { input: Option<String> },
    Weight { input: Option<String> },
    Irreducible { input: Option<String> },
    Qdet { input: Option<String> },
    Drinfeld { input: Option<String> },
}

#[derive(Subcommand, Debug, Clone)]
pub enum DrinfeldOp {
    WeightToPoly { input: Option<String> },
    PolyToWeight { input: Option<String> },
    Normalize { input: Option<String> },
    Restrict { input: Option<String> },
    /// Validates a `(P, f)` label.
    Label { input: Option<String> },
}

impl Command {
    pub(crate) fn name(&self) -> String {
        match self {
            Command::HomDim { .. } => "hom-dim".into(),
            Command::Compose { .. } => "compose".into(),
            Command::Trace { .. } => "trace".into(),
            Command::GramDet { .. } => "gram-det".into(),
            Command::DimPoly { .. } => "dim-poly".into(),
            Command::WeylMod { .. } => "weyl-mod".into(),
            Command::BoundScan { .. } => "bound-scan".into(),
            Command::WitnessPrimes { .. } => "witness-primes".into(),
            Command::Selftest { .. } => "selftest".into(),
            Command::Yangian { op } => format!("yangian-{}", op.name()),
            Command::Drinfeld { op } => format!("drinfeld-{}", op.name()),
        }
    }

    fn input(&self) -> Option<Option<&String>> {
        match self {
            Command::HomDim { input }
            | Command::Compose { input }
            | Command::Trace { input }
            | Command::GramDet { input }
            | Command::DimPoly { input }
            | Command::WeylMod { input }
            | Command::BoundScan { input }
            | Command::WitnessPrimes { input } => Some(input.as_ref()),
            Command::Yangian { op } => Some(op.input()),
            Command::Drinfeld { op } => Some(op.input()),
            Command::Selftest { .. } => None,
        }
    }
}

impl YangianOp {
    fn name(&self) -> &'static str {
        match self {
            YangianOp::Build { .. } => "build",
            YangianOp::Tensor { .. } => "tensor",
            YangianOp::Verify { .. } => "verify",
            YangianOp::Weight { .. } => "weight",
            YangianOp::Irreducible { .. } => "irreducible",
            YangianOp::Qdet { .. } => "qdet",
            YangianOp::Drinfeld { .. } => "drinfeld",
        }
    }

    fn input(&self) -> Option<&String> {
        match self {
            YangianOp::Build { input }
            | YangianOp::Tensor { input }
            | YangianOp::Verify { input }
            | YangianOp::Weight { input }
            | YangianOp::Irreducible { input }
            | YangianOp::Qdet { input }
            | YangianOp::Drinfeld { input } => input.as_ref(),
        }
    }
}

impl DrinfeldOp {
    fn name(&self) -> &'static str {
        match self {
            DrinfeldOp::WeightToPoly { .. } => "weight-to-poly",
            DrinfeldOp::PolyToWeight { .. } => "poly-to-weight",
            DrinfeldOp::Normalize { .. } => "normalize",
            DrinfeldOp::Restrict { .. } => "restrict",
            DrinfeldOp::Label { .. } => "label",
        }
    }

    fn input(&self) -> Option<&String> {
        match self {
            DrinfeldOp::WeightToPoly { input }
            | DrinfeldOp::PolyToWeight { input }
            | DrinfeldOp::Normalize { input }
            | DrinfeldOp::Restrict { input }
            | DrinfeldOp::Label { input } => input.as_ref(),
        }
    }
}

/// Inline JSON, a file path, `-` or nothing (standard input).
fn read_input(arg: Option<&String>) -> Result<Value, CliError> {
    let text = match arg.map(String::as_str) {
        Some(s) if s.trim_start().starts_with(['{', '[']) => s.to_string(),
        Some("-") | None => {
            let mut buf = String::new();
            let stdin = std::io::stdin();
            if stdin.is_terminal() {
                return Err(CliError::Usage("no input given (pass JSON, a file path, or pipe to stdin)".into()));
            }
            stdin
                .lock()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            buf
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| CliError::MalformedJson(e.to_string()))
}

fn emit(v: &Value, pretty: bool) {
    let s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    println!("{}", s.expect("JSON values serialize"));
}

fn error_envelope(command: &str, e: &CliError) -> Value {
    json!({
        "schema": "glt.result.v1",
        "command": command,
        "status": "error",
        "error": {"code": e.code(), "message": e.to_string()},
        "diagnostics": [],
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let code = if e.kind() == ErrorKind::InvalidSubcommand {
                CliError::UnknownCommand(e.to_string())
            } else {
                CliError::Usage(e.to_string())
            };
            eprint!("{e}");
            emit(&error_envelope("", &code), false);
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    let result = run(&cli);
    match result {
        Ok((payload, diagnostics, ok)) => {
            emit(
                &json!({
                    "schema": "glt.result.v1",
                    "command": name,
                    "status": "ok",
                    "payload": payload,
                    "diagnostics": diagnostics,
                }),
                cli.pretty,
            );
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("glt {name}: {e}");
            emit(&error_envelope(&name, &e), cli.pretty);
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(Value, Vec<String>, bool), CliError> {
    let tag: FieldTag = cli.field.parse().map_err(|e: glt_core::Error| CliError::Usage(e.to_string()))?;
    if let Command::Selftest { only } = &cli.command {
        return commands::selftest(only, cli.seed, cli.trunc);
    }
    let input = read_input(cli.command.input().flatten())?;
    let ctx = Context { trunc: cli.trunc };
    let payload = match tag {
        FieldTag::Rational => commands::run(&Rationals, &cli.command, &input, &ctx)?,
        FieldTag::Finite { p, m } => {
            let field = GaloisField::new(p, m).map_err(|e| CliError::Usage(e.to_string()))?;
            commands::run(&field, &cli.command, &input, &ctx)?
        }
    };
    Ok((payload, Vec::new(), true))
}
