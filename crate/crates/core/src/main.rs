use std::fs;
use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use supercoind::enveloping::{Enveloping, Mode};
use supercoind::harness::{
    all_passed, catalog, catalog_entry, export_table, parse_definition, parse_selection, render_json, render_text,
    run_checks, CheckOptions, Definition, Table,
};

#[derive(Parser)]
#[command(name = "supercoind", version, about = "Exact checks for induced and coinduced modules of restricted Lie superalgebras")]
struct Cli {
    /// Reject definitions whose prime exceeds this bound.
    #[arg(long, global = true, env = "SUPERCOIND_MAX_PRIME", default_value_t = 13)]
    max_prime: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a definition (a path, `-` for stdin, or a catalog name).
    Validate { file: String },
    /// Run theorem checks on every instance of a definition.
    Check {
        file: String,
        /// Comma-separated check names; all checks when omitted.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest level r for the unrestricted checks.
        #[arg(long, default_value_t = 0)]
        level: u32,
        /// Random samples per level for the level-r lemmas.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Check the Berezinian isomorphism against the wrong sign of strad.
        #[arg(long)]
        negative_control: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<String>,
    },
    /// List the built-in definitions or print one of them.
    Catalog {
        #[arg(long, conflicts_with = "dump")]
        list: bool,
        #[arg(long)]
        dump: Option<String>,
    },
    /// Print a multiplication, coproduct, phi-matrix or psi-gram table.
    Export {
        file: String,
        #[arg(long)]
        what: String,
        #[arg(long)]
        split: Option<String>,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        output: Option<String>,
    },
}

fn load(source: &str, max_prime: u32) -> Result<Definition, String> {
    let def = if source == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| format!("stdin: {e}"))?;
        parse_definition(&text).map_err(|e| format!("<stdin>: {e}"))?
    } else if Path::new(source).exists() {
        let text = fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?;
        parse_definition(&text).map_err(|e| format!("{source}: {e}"))?
    } else {
        catalog_entry(source).map_err(|e| format!("{source}: not a file; {e}"))?
    };
    if def.p > max_prime {
        return Err(format!("p = {} exceeds the prime cap {max_prime}", def.p));
    }
    Ok(def)
}

fn emit(text: &str, output: Option<&str>) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Validate { file } => {
            let def = load(&file, cli.max_prime)?;
            let (alg, instances) = def.build().map_err(|e| e.to_string())?;
            if alg.is_restricted() {
                let env = Enveloping::new(alg.clone(), Mode::Restricted).map_err(|e| e.to_string())?;
                if let Some((i, k)) = env.p_relations_central() {
                    return Err(format!("{0}^p - {0}^[p] does not commute with {1}", alg.name(i), alg.name(k)));
                }
            }
            println!(
                "ok {}: p = {}, dim = {} ({} even, {} odd), {} instances",
                def.name,
                def.p,
                alg.dim(),
                alg.even_dim(),
                alg.odd_dim(),
                instances.len()
            );
            Ok(true)
        }
        Command::Check { file, only, seed, level, samples, negative_control, format, output } => {
            let def = load(&file, cli.max_prime)?;
            let only = only.map(|s| parse_selection(&s)).transpose().map_err(|e| e.to_string())?;
            let opts = CheckOptions { seed, level, samples, negative_control };
            let reports = run_checks(&def, only.as_deref(), &opts).map_err(|e| e.to_string())?;
            let text = match format {
                Format::Text => render_text(&reports),
                Format::Json => render_json(&reports) + "\n",
            };
            emit(&text, output.as_deref())?;
            Ok(all_passed(&reports))
        }
        Command::Catalog { dump: Some(name), .. } => {
            let def = catalog_entry(&name).map_err(|e| e.to_string())?;
            print!("{}", def.dump());
            Ok(true)
        }
        Command::Catalog { .. } => {
            for def in catalog() {
                println!("{}\tp={}\tdim={}\tsplits={}", def.name, def.p, def.basis.len(), def.splits.len());
            }
            Ok(true)
        }
        Command::Export { file, what, split, rep, output } => {
            let def = load(&file, cli.max_prime)?;
            let table: Table = what.parse().map_err(|e: supercoind::Error| e.to_string())?;
            let text = export_table(&def, table, split.as_deref(), rep.as_deref()).map_err(|e| e.to_string())?;
            emit(&text, output.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
