//! `frobskew [--json] [SCRIPT]`: runs one declaration script. The script is
//! read from the file argument, or from stdin when none is given.

mod report;
mod script;
mod session;

use std::io::Read;
use std::process::ExitCode;

use frobskew::Error;
use thiserror::Error as ThisError;

const USAGE: &str = "usage: frobskew [--json] [SCRIPT]

Runs a script of declarations followed by one command. Reads stdin when
SCRIPT is omitted.

declarations:
  ring p=<prime> vars=<csv> [order=lex|grevlex]
  quotient <poly csv> [equidim]
  ideal <name> = <poly csv>
  sop <poly csv>
  module [<name>] finite summands=(..);(..) [frobenius|zero]
  module [<name>] cyclic-tower ideal=(..) [closure=<n>] [levels=<n>]

commands:
  frobpow <ideal> e=<n>
  frobclosure <ideal> [bound=<n>]                      bound defaults to 3
  grann [module=<m>] elem=<poly vector> [bound=<n>] [level=<n>]
  lattice [module=<m>] [bound=<n>] [gens=(..);(..)]
  hsl [module=<m>]
  tc elem=<poly> [j=<n>] [bound=<n>] [mode=chain|test:<c>,<w0>]
  enescu samples=<csv> [bound=<n>]
  ga4 [module=<m>] b=(..);(..) U=<indices>

chain bounds default to 4.
exit status: 0 success, 1 refusal, 2 parse, resource or other error";

#[derive(Debug, ThisError)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}\n\n{USAGE}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Refused(_)) => 1,
            _ => 2,
        }
    }
}

struct Options {
    json: bool,
    path: Option<String>,
}

fn options() -> Result<Option<Options>, CliError> {
    let mut opts = Options {
        json: false,
        path: None,
    };
    for arg in std::env::args().skip(1) {
        match arg.as_str() {
            "--json" => opts.json = true,
            "-h" | "--help" => return Ok(None),
            s if s.starts_with('-') && s != "-" => return Err(CliError::Usage(format!("unknown option '{s}'"))),
            _ if opts.path.is_some() => return Err(CliError::Usage("at most one script".into())),
            _ => opts.path = Some(arg),
        }
    }
    Ok(Some(opts))
}

fn read_script(path: Option<&str>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        None | Some("-") => std::io::stdin().read_to_string(&mut text).map(|_| text),
        Some(p) => std::fs::read_to_string(p),
    }
    .map_err(|source| CliError::Io {
        path: path.unwrap_or("stdin").to_string(),
        source,
    })
}

fn run() -> Result<(), CliError> {
    let Some(opts) = options()? else {
        println!("{USAGE}");
        return Ok(());
    };
    let script = read_script(opts.path.as_deref())?;
    let report = session::run(&script)?;
    if opts.json {
        print!("{}", report.pretty_json());
    } else {
        print!("{}", report.text());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(Error::Resource(_)) = e {
                eprintln!("note: no partial results are reported; raise the bound or shrink the input");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
