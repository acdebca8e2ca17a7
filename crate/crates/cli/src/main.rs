//! Command-line front end: classification, extension construction, family
//! enumeration, statement verification, and poset generation.
//!
//! Results go to stdout as JSON (one value, or one document per line for
//! `gen`); diagnostics go to stderr. Exit codes: 0 success/pass, 1 for "no
//! extension" or a failed verification, 2 for input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use isoext::classify;
use isoext::extension::{self, ExtendError};
use isoext::oracle::{self, EnumMode, TheoremCaps, TheoremId};
use isoext::poset::PosetError;
use isoext::{MapDoc, MonotoneMap, Poset, PosetDoc, PosetRef};

#[derive(Parser)]
#[command(
    name = "isoext",
    version,
    about = "Finite poset toolkit: order classes, isotone extensions, exhaustive verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a poset document and print the report with witnesses
    Classify {
        /// Poset JSON file: {"elements": [..], "covers": [[a,b], ..]}
        file: PathBuf,
    },
    /// Construct one isotone extension of a partial map
    Extend {
        /// Map JSON file: {"domain": .., "codomain": .., "map": {..}};
        /// domain/codomain may be inline documents or file paths
        map: PathBuf,
        /// Override the domain poset file
        #[arg(long)]
        domain: Option<PathBuf>,
        /// Override the codomain poset file
        #[arg(long)]
        codomain: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: ExtendMode,
        /// Greedy processing order: comma-separated element labels
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    /// List every isotone extension with the family's bottom and top
    Enumerate {
        map: PathBuf,
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long)]
        codomain: Option<PathBuf>,
        /// Cap on raw assignments |Y|^|X\A|
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
    },
    /// Check one registry statement exhaustively over its capped universe
    Verify {
        /// One of: t4, c2.11, c6, t5, l6, l3, t10, s43, t46, t53
        #[arg(long)]
        theorem: String,
        /// Override the main universe size knob
        #[arg(long)]
        max_size: Option<usize>,
        /// Thin the heavyweight sub-checks to one in this many instances
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Emit poset documents, one JSON document per line
    Gen {
        #[arg(long)]
        n: usize,
        /// How many documents (random mode defaults to 1, exhaustive to all)
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GenMode::Random)]
        mode: GenMode,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtendMode {
    /// Pointwise least extension (complete-lattice codomain)
    Lower,
    /// Pointwise greatest extension (complete-lattice codomain)
    Upper,
    /// One-pass greedy assignment; may fail where a search would not
    Greedy,
    /// Complete search; "none" is a proof of non-extendability
    Any,
    /// Extension confined to the image interval of A's extremes
    Extremes,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenMode {
    Random,
    Exhaustive,
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Failure {
        Failure {
            kind,
            message: message.to_string(),
        }
    }
}

fn poset_error_kind(e: &PosetError) -> &'static str {
    match e {
        PosetError::DuplicateLabel(_) => "DuplicateLabel",
        PosetError::UnknownLabel(_) => "UnknownLabel",
        PosetError::CycleDetected(..) => "CycleDetected",
        PosetError::EmptySubset => "EmptySubset",
        PosetError::SizeCapExceeded { .. } => "CapExceeded",
        PosetError::NotIsotone => "InputNotIsotone",
    }
}

fn extend_error_kind(e: &ExtendError) -> &'static str {
    match e {
        ExtendError::InputNotIsotone => "InputNotIsotone",
        ExtendError::CodomainNotCompleteLattice => "CodomainNotCompleteLattice",
        ExtendError::NoExtremesInA => "NoExtremesInA",
        ExtendError::ComponentNotChain => "ComponentNotChain",
        ExtendError::EmptyA => "EmptyA",
        ExtendError::FallbackOutsideSubset => "FallbackOutsideSubset",
        ExtendError::NotIdentityOnSubset => "NotIdentityOnSubset",
        ExtendError::InvalidOrder(_) => "InvalidOrder",
        ExtendError::CapExceeded { .. } => "CapExceeded",
    }
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Failure {
        Failure::new(poset_error_kind(&e), e)
    }
}

impl From<ExtendError> for Failure {
    fn from(e: ExtendError) -> Failure {
        Failure::new(extend_error_kind(&e), e)
    }
}

impl From<oracle::OracleError> for Failure {
    fn from(e: oracle::OracleError) -> Failure {
        let kind = match e {
            oracle::OracleError::UnknownTheoremId(_) => "UnknownTheoremId",
            _ => "CapExceeded",
        };
        Failure::new(kind, e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}: {}", f.kind, f.message);
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Failure> {
    match cmd {
        Cmd::Classify { file } => {
            let poset = load_poset(&file)?;
            let report = classify::classify(&poset);
            println!("{}", serde_json::to_string(&report).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Extend {
            map,
            domain,
            codomain,
            mode,
            order,
        } => {
            let f = load_map(&map, domain.as_deref(), codomain.as_deref())?;
            let outcome = match mode {
                ExtendMode::Lower => Some(extension::lower_extension(&f)?),
                ExtendMode::Upper => Some(extension::upper_extension(&f)?),
                ExtendMode::Greedy => {
                    let order_idx = order
                        .map(|labels| resolve_order(f.domain(), &labels))
                        .transpose()?;
                    extension::extend_greedy(&f, order_idx.as_deref())?
                }
                ExtendMode::Any => extension::extend_exists(&f)?,
                ExtendMode::Extremes => extension::extend_preserving_extremes(&f)?,
            };
            match outcome {
                Some(g) => {
                    println!(
                        "{}",
                        serde_json::to_string(&new_assignments(&f, &g)).expect("serializable")
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("\"none\"");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Enumerate {
            map,
            domain,
            codomain,
            cap,
        } => {
            let f = load_map(&map, domain.as_deref(), codomain.as_deref())?;
            let family = extension::enumerate_extensions(&f, cap)?;
            let to_map = |i: usize| family.member_label_map(i);
            let doc = serde_json::json!({
                "members": (0..family.len()).map(to_map).collect::<Vec<_>>(),
                "bottom": family.bottom().map(to_map),
                "top": family.top().map(to_map),
            });
            println!("{doc}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            theorem,
            max_size,
            cap,
            seed,
        } => {
            let id = TheoremId::from_str(&theorem)?;
            let caps = TheoremCaps {
                max_size,
                sample: cap,
                seed,
            };
            let result = oracle::check_theorem(id, &caps)?;
            println!("{}", serde_json::to_string(&result).expect("serializable"));
            Ok(if result.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Gen {
            n,
            count,
            seed,
            mode,
        } => {
            let docs: Vec<PosetDoc> = match mode {
                GenMode::Exhaustive => {
                    let stream = oracle::enumerate_posets(n, EnumMode::Labeled)?;
                    let all = stream.map(|p| p.to_doc());
                    match count {
                        Some(k) => all.take(k).collect(),
                        None => all.collect(),
                    }
                }
                GenMode::Random => {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    (0..count.unwrap_or(1))
                        .map(|_| oracle::random_poset(n, &mut rng).to_doc())
                        .collect()
                }
            };
            for doc in docs {
                println!("{}", serde_json::to_string(&doc).expect("serializable"));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Only the elements the extension newly assigns, keyed in domain order.
fn new_assignments(f: &MonotoneMap, g: &MonotoneMap) -> serde_json::Map<String, serde_json::Value> {
    let mut out = serde_json::Map::new();
    for i in 0..f.domain().len() {
        if f.value(i).is_none() {
            out.insert(
                f.domain().label(i).to_string(),
                g.codomain().label(g.value(i).expect("total")).into(),
            );
        }
    }
    out
}

fn resolve_order(domain: &Poset, labels: &[String]) -> Result<Vec<usize>, Failure> {
    labels
        .iter()
        .map(|l| {
            domain
                .index_of(l)
                .ok_or_else(|| Failure::from(PosetError::UnknownLabel(l.clone())))
        })
        .collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new("IoError", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new("ParseError", format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    let doc: PosetDoc = read_json(path)?;
    Ok(Poset::from_doc(&doc)?)
}

fn resolve_ref(base: &Path, r: &PosetRef) -> Result<Poset, Failure> {
    match r {
        PosetRef::Inline(doc) => Ok(Poset::from_doc(doc)?),
        PosetRef::Path(p) => {
            let dir = base.parent().unwrap_or_else(|| Path::new("."));
            load_poset(&dir.join(p))
        }
    }
}

fn load_map(
    path: &Path,
    domain_override: Option<&Path>,
    codomain_override: Option<&Path>,
) -> Result<MonotoneMap, Failure> {
    let doc: MapDoc = read_json(path)?;
    let domain = match domain_override {
        Some(p) => load_poset(p)?,
        None => resolve_ref(path, &doc.domain)?,
    };
    let codomain = match codomain_override {
        Some(p) => load_poset(p)?,
        None => resolve_ref(path, &doc.codomain)?,
    };
    Ok(MonotoneMap::from_label_map(
        Arc::new(domain),
        Arc::new(codomain),
        &doc.map,
    )?)
}
