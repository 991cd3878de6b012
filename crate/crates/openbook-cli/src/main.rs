//! Command line front end for the openbook toolkit.
//!
//! Exit codes: 0 success (or EQUAL), 1 verified-false (NOT EQUAL), 2 usage
//! or input error, 3 resource cap exceeded. Output is deterministic: field
//! order is fixed and nothing depends on time or thread count.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use openbook::mcg::{self, McgError};
use openbook::search::{SearchError, SearchOptions};
use openbook::word::DEFAULT_WORD_CAP;
use openbook::{
    abelianization, canonical_monodromy, fibration_homology, invariant_table, solve_extension,
    st_star_presentation, surface_homology_mod_m, Configuration, Factorization, InvariantTable,
};

#[derive(Parser)]
#[command(name = "openbook", version, about = "Planar open book monodromy toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct FormatArg {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical monodromy factorization for the page with 2k+2
    /// boundary components
    Monodromy {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Multiplicity and joint-multiplicity table of a factorization
    Invariants {
        /// Factorization JSON file; defaults to the canonical monodromy of --k
        #[arg(long, conflicts_with = "k")]
        input: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Enumerate all configurations compatible with an invariant table
    Search {
        /// Classify against the reference table of this k
        #[arg(long, conflicts_with = "table")]
        k: Option<usize>,
        /// Invariant table JSON file to search against
        #[arg(long)]
        table: Option<PathBuf>,
        /// Backtracking node budget
        #[arg(long, default_value_t = 100_000_000)]
        node_limit: u64,
        /// Worker threads; affects wall time only, never output
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compare the mapping classes of two factorization files
    Verify {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Word length cap for twist composition
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        word_cap: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Homology computations: fibration totals, boundary presentations and
    /// the coefficient homology solver
    Homology {
        /// Fibration homology of the canonical monodromy of this k
        #[arg(long)]
        k: Option<usize>,
        /// Fibration homology of a factorization JSON file
        #[arg(long, conflicts_with = "k")]
        input: Option<PathBuf>,
        /// Named boundary group: `stn` for the unit circle bundle
        #[arg(long, value_name = "GROUP")]
        group: Option<String>,
        /// Coefficient order m for the surface homology (0 = integral)
        #[arg(long, value_name = "M", conflicts_with = "group")]
        r#mod: Option<u64>,
        /// Solve for all m up to --m-max with trivial extension homology
        #[arg(long, conflicts_with_all = ["group", "mod"])]
        solve_m: bool,
        #[arg(long, default_value_t = 100)]
        m_max: u64,
        #[command(flatten)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Resource(m) => write!(f, "{m}"),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<McgError> for CliError {
    fn from(e: McgError) -> Self {
        match e {
            McgError::WordTooLong { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Monodromy { k, format } => {
            let f = canonical_monodromy(k).map_err(input_err)?;
            match format.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&f).unwrap()),
                Format::Text => {
                    println!("canonical monodromy, k = {k}, {} twists", f.len());
                    for (i, c) in f.curves().iter().enumerate() {
                        println!("V{i}: holes {} word {}", c, c.word().dotted());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Invariants { input, k, format } => {
            let table = match (input, k) {
                (Some(path), _) => invariant_table(&read_factorization(&path)?),
                (None, Some(k)) => invariant_table(&canonical_monodromy(k).map_err(input_err)?),
                (None, None) => {
                    return Err(CliError::Input("pass --input FILE or --k K".into()))
                }
            };
            match format.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&table).unwrap()),
                Format::Text => print!("{}", table.render_text()),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Search { k, table, node_limit, workers, format } => {
            let opts = SearchOptions { node_limit, workers };
            match (k, table) {
                (Some(k), None) => {
                    let report = openbook::search::classify_with(k, &opts)?;
                    match format.format {
                        Format::Json => {
                            println!("{}", serde_json::to_string_pretty(&report).unwrap())
                        }
                        Format::Text => {
                            println!(
                                "k = {}: {} configuration(s) match the reference table",
                                report.k, report.count
                            );
                            for c in &report.configurations {
                                let subsets: Vec<String> = c
                                    .subsets
                                    .iter()
                                    .map(|s| {
                                        let e: Vec<String> =
                                            s.iter().map(|h| h.to_string()).collect();
                                        format!("{{{}}}", e.join(","))
                                    })
                                    .collect();
                                println!(
                                    "- [{}]{} H1 = {}, H2 = {} ({})",
                                    subsets.join(" "),
                                    if c.canonical { " canonical" } else { "" },
                                    c.h1,
                                    c.h2,
                                    c.realizability
                                );
                            }
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                (None, Some(path)) => {
                    let raw = fs::read_to_string(&path)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    let table: InvariantTable = serde_json::from_str(&raw).map_err(input_err)?;
                    let found = openbook::search::enumerate_configurations_with(&table, &opts)?;
                    match format.format {
                        Format::Json => {
                            println!("{}", serde_json::to_string_pretty(&found).unwrap())
                        }
                        Format::Text => {
                            println!("{} configuration(s)", found.len());
                            for c in &found {
                                println!("- {}", c.render_text());
                            }
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                _ => Err(CliError::Input("pass exactly one of --k or --table".into())),
            }
        }

        Command::Verify { file_a, file_b, word_cap, format } => {
            let a = read_factorization(&file_a)?;
            let b = read_factorization(&file_b)?;
            let ra = mcg::realize_with_cap(&a, word_cap)?;
            let rb = mcg::realize_with_cap(&b, word_cap)?;
            let eq = mcg::equal(&ra, &rb)?;
            match format.format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "equal": eq,
                        "left": ra.to_json(),
                        "right": rb.to_json(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Text => println!("{}", if eq { "EQUAL" } else { "NOT EQUAL" }),
            }
            Ok(if eq { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Homology { k, input, group, r#mod, solve_m, m_max, format } => {
            let is_json = format.format == Format::Json;
            match (input, group, r#mod, solve_m, k) {
                (Some(path), None, None, false, _) => {
                    let f = read_factorization(&path)?;
                    print_fibration(&Configuration::from_factorization(&f), is_json);
                    Ok(ExitCode::SUCCESS)
                }
                (None, Some(name), None, false, Some(k)) => {
                    if name != "stn" {
                        return Err(CliError::Input(format!(
                            "unknown group `{name}`; supported: stn"
                        )));
                    }
                    let p = st_star_presentation(k).map_err(input_err)?;
                    let h = abelianization(&p);
                    if is_json {
                        let doc = serde_json::json!({"group": "stn", "k": k, "h1": h});
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    } else {
                        println!("{h}");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                (None, None, Some(m), false, Some(k)) => {
                    let h = surface_homology_mod_m(k, m).map_err(input_err)?;
                    if is_json {
                        let doc = serde_json::json!({"k": k, "mod": m, "h1": h});
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    } else {
                        println!("{h}");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                (None, None, None, true, Some(k)) => {
                    let ms = solve_extension(k, m_max).map_err(input_err)?;
                    if is_json {
                        let doc = serde_json::json!({"k": k, "m_max": m_max, "solutions": ms});
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    } else {
                        println!("{ms:?}");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                (None, None, None, false, Some(k)) => {
                    let f = canonical_monodromy(k).map_err(input_err)?;
                    print_fibration(&Configuration::from_factorization(&f), is_json);
                    Ok(ExitCode::SUCCESS)
                }
                _ => Err(CliError::Input(
                    "pass one of: --k, --input FILE, --group stn --k K, --mod M --k K, \
                     --solve-m --k K"
                        .into(),
                )),
            }
        }
    }
}

fn print_fibration(cfg: &Configuration, json: bool) {
    let (h1, h2) = fibration_homology(cfg);
    if json {
        let doc = serde_json::json!({"k": cfg.k(), "h1": h1, "h2": h2});
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("H1 = {h1}, H2 = {h2}");
    }
}

fn read_factorization(path: &PathBuf) -> Result<Factorization, CliError> {
    let raw = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
