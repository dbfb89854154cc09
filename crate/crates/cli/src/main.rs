//! `coordlens`: catalog browsing, group analysis, reduced products, formula
//! tooling, graph-product words and the verification runner.
//!
//! Exit status: 0 success or PASS, 1 FAIL or counterexample found, 2 usage
//! or input error.

mod commands;
mod error;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coordlens_core::verify::Scale;

use crate::output::Output;

#[derive(Parser)]
#[command(name = "coordlens", version, about = "Finite model theory and recognizing-coordinates toolkit")]
struct Cli {
    /// Machine-readable output (schema 1, deterministic).
    #[arg(long, global = true)]
    json: bool,
    /// Keep wall-clock fields in JSON output.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Named groups and structures.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Group invariants and criteria.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Recognizing-coordinates verdicts.
    #[command(subcommand)]
    Criteria(CriteriaCmd),
    /// Reduced products over a finite index set.
    #[command(subcommand)]
    Reduced(ReducedCmd),
    /// Parsing, h-classification and equivalence of formulas.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Graph products of finite groups.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Run registered checks.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
pub enum CatalogCmd {
    /// The default listing with expected outcomes.
    List,
    /// One entry.
    Show {
        name: String,
        /// Include the full tables.
        #[arg(long)]
        tables: bool,
    },
}

#[derive(Subcommand)]
pub enum GroupCmd {
    /// Classes, center, series, decomposability and criteria.
    Analyze {
        /// Catalog name or group table file.
        group: String,
        /// Refuse groups larger than this.
        #[arg(long, default_value_t = coordlens_core::groups::CLASS_BOUND)]
        bound: usize,
    },
}

#[derive(Subcommand)]
pub enum CriteriaCmd {
    /// Verdict for a class of catalog entries, comma separated.
    Verdict {
        names: String,
        /// Seconds before the verdict is reported open.
        #[arg(long, default_value_t = 60)]
        timeout: u64,
    },
}

#[derive(Args, Clone)]
pub struct ProductArgs {
    /// Comma-separated factors (catalog names or files).
    #[arg(long, required = true)]
    pub factors: String,
    /// Ideal as JSON `{ "indices": k, "generators": [[0],[1,2]] }`, or a file;
    /// `indices` defaults to the number of factors.
    #[arg(long, default_value = "{}")]
    pub ideal: String,
}

#[derive(Subcommand)]
pub enum ReducedCmd {
    /// Build the product and summarise it.
    Build {
        #[command(flatten)]
        product: ProductArgs,
        /// Also print the support of this formula at `--elem`.
        #[arg(long)]
        supp: Option<String>,
        /// One element per free variable (sorted by name); coordinates comma separated.
        #[arg(long)]
        elem: Vec<String>,
    },
    /// Truth of a formula in the product.
    Eval {
        #[command(flatten)]
        product: ProductArgs,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        elem: Vec<String>,
    },
    /// The support class of a formula at given elements.
    Supp {
        #[command(flatten)]
        product: ProductArgs,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        elem: Vec<String>,
    },
    /// Transfer check for an h-formula: at `--elem`, or over all assignments.
    Los {
        #[command(flatten)]
        product: ProductArgs,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        elem: Vec<String>,
    },
}

#[derive(Subcommand)]
pub enum FormulaCmd {
    /// Parse and print in normal notation.
    Parse {
        formula: String,
        /// group, pure, magma or order.
        #[arg(long, default_value = "group")]
        sig: String,
    },
    /// Certify as an h-formula or point at the offending node.
    Classify {
        formula: String,
        #[arg(long, default_value = "group")]
        sig: String,
        /// Discharge the side obligations in this structure (its signature is used).
        #[arg(long = "in", value_name = "STRUCTURE")]
        structure: Option<String>,
    },
    /// Equivalence in one finite structure.
    Equiv {
        phi: String,
        psi: String,
        /// Catalog name or structure file.
        #[arg(long = "in", value_name = "STRUCTURE")]
        structure: String,
    },
}

#[derive(Subcommand)]
pub enum GraphCmd {
    /// Recognizing-coordinates classification from the graph.
    Classify {
        /// Graph file or inline JSON `{vertices, edges, groups}`.
        graph: String,
    },
    /// Canonical normal form, heads and tails of a word.
    NormalForm {
        graph: String,
        /// Syllables `vertex:label` separated by spaces.
        word: String,
    },
    /// A conjugator moving the word onto one vertex.
    Conjugate {
        graph: String,
        word: String,
        #[arg(long)]
        vertex: String,
    },
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Check name.
    #[arg(required_unless_present_any = ["all", "list"], conflicts_with_all = ["all", "list"])]
    pub name: Option<String>,
    /// Every registered check.
    #[arg(long)]
    pub all: bool,
    /// List check names.
    #[arg(long, conflicts_with = "all")]
    pub list: bool,
    #[arg(long, default_value = "ci", value_parser = parse_scale)]
    pub scale: Scale,
}

fn parse_scale(s: &str) -> Result<Scale, String> {
    s.parse::<Scale>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    coordlens_core::init_threads_from_env();
    let out = Output { json: cli.json, timings: cli.timings };
    let result = match cli.command {
        Command::Catalog(c) => commands::catalog(c, out),
        Command::Group(c) => commands::group(c, out),
        Command::Criteria(c) => commands::criteria(c, out),
        Command::Reduced(c) => commands::reduced(c, out),
        Command::Formula(c) => commands::formula(c, out),
        Command::Graph(c) => commands::graph(c, out),
        Command::Verify(a) => commands::verify(a, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
