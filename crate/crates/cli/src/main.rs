use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hfk_cli::commands;
use hfk_cli::knot::{resolve, Knot, KnotRef};
use hfk_cli::{check, plot, CliError, Corpus, Output};

#[derive(Parser)]
#[command(name = "hfk", version, about = "Knot Floer invariants from planar diagrams")]
struct Cli {
    /// Structured JSON output instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    /// Corpus file used to resolve knot names (default: the bundled corpus).
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct KnotArgs {
    /// Corpus name or `T(p,q)`.
    name: Option<String>,
    /// Inline PD code, e.g. "X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)".
    #[arg(long)]
    pd: Option<String>,
    /// Inline braid word, e.g. "[1,1,1]".
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    #[arg(long)]
    strands: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Kauffman states with their gradings.
    States {
        #[command(flatten)]
        knot: KnotArgs,
        /// Marked edge on the unbounded region.
        #[arg(long)]
        edge: Option<usize>,
    },
    /// Knot Floer homology by a certified route.
    Hfk {
        #[command(flatten)]
        knot: KnotArgs,
        /// Assert the knot is an L-space knot.
        #[arg(long)]
        lspace: bool,
    },
    Tau {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        lspace: bool,
    },
    Genus {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        lspace: bool,
    },
    Alexander {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        edge: Option<usize>,
    },
    Det {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        edge: Option<usize>,
    },
    /// Correction terms of the lens space L(p, q).
    Dinv { p: i64, q: i64 },
    /// Test a negative-definite form against correction terms.
    Obstruct {
        /// JSON Gram matrix.
        gram: PathBuf,
        /// JSON file of correction terms, or inline values such as `d=0`.
        d: String,
    },
    /// Run every invariant suite over a corpus.
    Check {
        /// Corpus file (default: the bundled corpus).
        file: Option<PathBuf>,
    },
    /// SVG dot plot of the knot Floer group.
    Plot {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        lspace: bool,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Homology of a chain complex over Z[U] given as JSON.
    Homology {
        file: PathBuf,
        /// Work over Z/2.
        #[arg(long)]
        mod2: bool,
        /// Truncation depth (default: smallest stable depth).
        #[arg(long)]
        depth: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn knot(corpus: &Corpus, a: KnotArgs) -> Result<Knot, CliError> {
    resolve(corpus, &KnotRef { name: a.name, pd: a.pd, braid: a.braid, strands: a.strands })
}

fn run(cli: Cli) -> Result<(Output, bool), CliError> {
    let corpus = match &cli.corpus {
        Some(p) => Corpus::load(p)?,
        None => Corpus::bundled(),
    };
    let out = match cli.command {
        Command::States { knot: k, edge } => commands::states(&knot(&corpus, k)?, edge)?,
        Command::Hfk { knot: k, lspace } => commands::hfk(&knot(&corpus, k)?, lspace)?,
        Command::Tau { knot: k, lspace } => commands::tau(&knot(&corpus, k)?, lspace)?,
        Command::Genus { knot: k, lspace } => commands::genus(&knot(&corpus, k)?, lspace)?,
        Command::Alexander { knot: k, edge } => commands::alexander(&knot(&corpus, k)?, edge)?,
        Command::Det { knot: k, edge } => commands::det(&knot(&corpus, k)?, edge)?,
        Command::Dinv { p, q } => commands::dinv(p, q)?,
        Command::Obstruct { gram, d } => {
            let q = commands::parse_gram(&read(&gram)?)?;
            let path = Path::new(&d);
            let text = if path.is_file() { read(path)? } else { d.clone() };
            commands::obstruct(&q, &commands::parse_d_values(&text)?)?
        }
        Command::Check { file } => {
            let c = match file {
                Some(p) => Corpus::load(&p)?,
                None => corpus,
            };
            let report = check::run(&c);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let passed = report.passed();
            return Ok((Output { text: report.text(), json: report.json() }, passed));
        }
        Command::Plot { knot: k, lspace, output } => {
            let k = knot(&corpus, k)?;
            let (g, _) = commands::certified_group(&k, lspace)?;
            let svg = plot::svg(&g, &k.name);
            match output {
                Some(p) => {
                    std::fs::write(&p, &svg).map_err(|e| CliError::io(&p, e))?;
                    let text = format!("wrote {}\n", p.display());
                    Output { text, json: serde_json::json!({ "knot": k.name, "path": p.display().to_string() }) }
                }
                None => Output { text: svg.clone(), json: serde_json::json!({ "knot": k.name, "svg": svg }) },
            }
        }
        Command::Homology { file, mod2, depth } => {
            let c = commands::parse_complex(&read(&file)?, mod2)?;
            commands::homology(&c, depth)?
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok((out, ok)) => {
            let _ = std::io::stdout().write_all(out.render(json).as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
