mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hwenv::format::{parse_algebra_with_default, parse_field};
use hwenv::homalg::DEFAULT_RESOLUTION_CAP;
use hwenv::hw::{SearchOptions, WeightPoset};
use hwenv::rep::IsoOptions;
use hwenv::{catalog, Field};

use report::{Format, Report};

/// Environment variable naming the field used by algebra files without a `field` line.
const DEFAULT_FIELD_VAR: &str = "HWENV_DEFAULT_FIELD";

#[derive(Parser)]
#[command(
    name = "hwenv",
    version,
    about = "Highest weight structures on bound quiver algebras"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Node budget of the filtration search.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    budget: usize,
    /// Maximal length of projective resolutions.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION_CAP, global = true)]
    resolution_cap: usize,
    /// Largest `|k|^dim Hom` for which isomorphisms are enumerated exhaustively.
    #[arg(long, default_value_t = IsoOptions::default().enumeration_cap, global = true)]
    iso_cap: u64,
    /// Replaces the weight order of the algebra file, e.g. "2 < 1, 2 < 3".
    #[arg(long, global = true)]
    order: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Checks the highest weight axioms for every weight.
    CheckHw { algebra: String },
    /// Prints the standard modules (or one of them).
    Standard { algebra: String, weight: Option<String> },
    /// Prints the costandard modules (or one of them).
    Costandard { algebra: String, weight: Option<String> },
    /// Builds the characteristic tilting module.
    Tilting { algebra: String },
    /// Builds the Ringel dual and checks it is highest weight.
    RingelDual { algebra: String },
    /// Takes the Ringel dual twice and compares Cartan matrices.
    DoubleDual { algebra: String },
    /// Computes the canonical poset of the standard modules.
    CanonicalPoset { algebra: String },
    /// Decides whether a module has a Δ-filtration.
    Membership {
        algebra: String,
        module: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Builds the left or right envelope of the standard or costandard modules.
    Envelope {
        algebra: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = CollectionArg::Standard)]
        collection: CollectionArg,
    },
    /// Builds the recollement of a lower ideal of weights.
    Recollement {
        algebra: String,
        /// Comma-separated weights forming a lower ideal.
        #[arg(long)]
        ideal: String,
        /// Compares subquotient dimensions over pairs of ideals meeting in the given one.
        #[arg(long)]
        strictness: bool,
    },
    /// Compares the highest weight structure of the file with another order.
    HwEquivalent {
        algebra: String,
        #[arg(long)]
        other: String,
    },
    /// Lists the built-in examples, or prints one.
    Catalog { name: Option<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Filtration,
    Ext,
    Counit,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CollectionArg {
    Standard,
    Costandard,
}

/// A loaded algebra with its weight order.
pub struct Loaded {
    pub algebra: std::sync::Arc<hwenv::Algebra>,
    pub poset: WeightPoset,
}

pub struct Settings {
    pub search: SearchOptions,
    pub resolution_cap: usize,
    order: Option<String>,
    default_field: Option<Field>,
}

impl Settings {
    pub fn load(&self, source: &str) -> Result<Loaded> {
        let text = match source.strip_prefix("catalog:") {
            Some(name) => catalog_source(name)?.to_string(),
            None if !source.contains('/') && !source.ends_with(".alg") && catalog::source(source).is_some() => {
                catalog::source(source).unwrap_or_default().to_string()
            }
            None => std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?,
        };
        let file = parse_algebra_with_default(&text, self.default_field).with_context(|| format!("in {source}"))?;
        let algebra = file.build()?;
        let poset = match &self.order {
            Some(o) => parse_order(algebra.vertices(), o)?,
            None => file.poset()?,
        };
        Ok(Loaded { algebra, poset })
    }
}

fn catalog_source(name: &str) -> Result<&'static str> {
    catalog::source(name).ok_or_else(|| anyhow!("no catalog entry `{name}`"))
}

/// Parses `a < b, c < d < e` over the given labels; the empty string is the discrete order.
pub fn parse_order(labels: &[String], text: &str) -> Result<WeightPoset> {
    let index = |s: &str| {
        labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| anyhow!("unknown weight `{s}`"))
    };
    let mut less = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let chain: Vec<usize> = part.split('<').map(|s| index(s.trim())).collect::<Result<_>>()?;
        if chain.len() < 2 {
            bail!("`{part}` is not of the form `a < b`");
        }
        less.extend(chain.windows(2).map(|w| (w[0], w[1])));
    }
    Ok(WeightPoset::new(labels.to_vec(), &less)?)
}

fn run(cli: Cli) -> Result<Report> {
    let default_field = match std::env::var(DEFAULT_FIELD_VAR) {
        Ok(v) => Some(parse_field(v.trim()).ok_or_else(|| anyhow!("{DEFAULT_FIELD_VAR}: unknown field `{v}`"))?),
        Err(_) => None,
    };
    let settings = Settings {
        search: SearchOptions {
            budget: cli.budget,
            iso: IsoOptions {
                enumeration_cap: cli.iso_cap,
                ..IsoOptions::default()
            },
            ..SearchOptions::default()
        },
        resolution_cap: cli.resolution_cap,
        order: cli.order,
        default_field,
    };
    let s = &settings;
    match cli.command {
        Command::CheckHw { algebra } => commands::check_hw(&s.load(&algebra)?, s),
        Command::Standard { algebra, weight } => commands::standard(&s.load(&algebra)?, weight.as_deref(), false),
        Command::Costandard { algebra, weight } => commands::standard(&s.load(&algebra)?, weight.as_deref(), true),
        Command::Tilting { algebra } => commands::tilting(&s.load(&algebra)?, s),
        Command::RingelDual { algebra } => commands::ringel_dual(&s.load(&algebra)?, s),
        Command::DoubleDual { algebra } => commands::double_dual(&s.load(&algebra)?, s),
        Command::CanonicalPoset { algebra } => commands::canonical_poset(&s.load(&algebra)?, s),
        Command::Membership {
            algebra,
            module,
            method,
        } => {
            let a = s.load(&algebra)?;
            let text = std::fs::read_to_string(&module).with_context(|| format!("reading {}", module.display()))?;
            let m =
                hwenv::format::parse_module(&a.algebra, &text).with_context(|| format!("in {}", module.display()))?;
            commands::membership(&a, &m, method, s)
        }
        Command::Envelope {
            algebra,
            side,
            collection,
        } => commands::envelope(&s.load(&algebra)?, side, collection, s),
        Command::Recollement {
            algebra,
            ideal,
            strictness,
        } => commands::recollement(&s.load(&algebra)?, &ideal, strictness),
        Command::HwEquivalent { algebra, other } => commands::hw_equivalent(&s.load(&algebra)?, &other, s),
        Command::Catalog { name } => match name {
            Some(n) => {
                let mut r = Report::new(format!("catalog entry {n}"));
                r.set("source", catalog_source(&n)?);
                Ok(r)
            }
            None => {
                let mut r = Report::new("catalog");
                let names: Vec<&str> = catalog::ENTRIES.iter().map(|(n, _)| *n).collect();
                r.set("entries", names);
                Ok(r)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            match report.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            if format == Format::Machine {
                let mut r = Report::new("error");
                r.set("error", format!("{e:#}"));
                print!("{}", r.render(format));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
