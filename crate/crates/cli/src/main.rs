use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use elder_core::fiber::{self, ContainmentPoset};
use elder_core::{
    barcode_of_sequence, chiral_elder_map, cmt_to_sequence, elder_rule, merge_tree_of_sequence, oracle, rank,
    AnyTree, Barcode, BarcodeFlags, BarcodeJson, ChiralMergeTree, FunctionJson, Height,
};
use serde_json::{json, Value};

/// Persistence of functions on the interval and the fibers of the persistence map.
#[derive(Parser, Debug)]
#[command(name = "elder", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Barcode of a function.
    Barcode { function: PathBuf },
    /// Chiral merge tree of a function, as JSON or Graphviz DOT.
    Tree {
        function: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Barcode of a merge tree or chiral merge tree by the Elder rule.
    Elder { tree: PathBuf },
    /// Size of the fiber over a barcode.
    Count {
        barcode: PathBuf,
        #[command(flatten)]
        mode: Mode,
    },
    /// Every element of the fiber over a barcode, in a fixed order.
    Enumerate {
        barcode: PathBuf,
        #[command(flatten)]
        mode: Mode,
        /// Worker threads; output does not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Function realising a chiral merge tree, with evenly spaced breakpoints.
    Reconstruct { tree: PathBuf },
    /// Rank of the map between sublevel sets at levels r <= t.
    #[command(allow_negative_numbers = true)]
    Rank {
        function: PathBuf,
        #[arg(long = "r")]
        r: f64,
        #[arg(long = "t")]
        t: f64,
    },
    /// Whether two barcodes have isomorphic containment posets.
    Strata { first: PathBuf, second: PathBuf },
    /// Cross-check every count against exhaustive search.
    Verify { barcode: PathBuf },
}

#[derive(Args, Debug, Clone, Copy)]
#[group(multiple = false)]
struct Mode {
    /// Chiral merge trees (default).
    #[arg(long)]
    chiral: bool,
    /// Graph-equivalence classes of functions.
    #[arg(long)]
    functions: bool,
    /// Merge trees.
    #[arg(long)]
    merge_trees: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Chiral,
    Functions,
    MergeTrees,
}

impl Mode {
    fn target(self) -> Target {
        if self.functions {
            Target::Functions
        } else if self.merge_trees {
            Target::MergeTrees
        } else {
            Target::Chiral
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("IoError: reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("IoError: reading {}", path.display()))
    }
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| anyhow!("BadJson: {}: {e}", path.display()))
}

fn read_function(path: &Path) -> Result<elder_core::CriticalSequence> {
    Ok(parse::<FunctionJson>(path)?.resolve()?)
}

fn read_barcode(path: &Path, flags: BarcodeFlags) -> Result<Barcode> {
    Ok(parse::<BarcodeJson>(path)?.validate(flags)?)
}

fn read_tree(path: &Path) -> Result<AnyTree> {
    Ok(AnyTree::from_json_value(parse::<Value>(path)?)?)
}

fn read_chiral(path: &Path) -> Result<ChiralMergeTree> {
    match read_tree(path)? {
        AnyTree::Chiral(t) => Ok(t),
        AnyTree::Unordered(_) => Err(anyhow!("KindMismatch: expected a chiral tree with left/right children")),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable output")
}

fn poset_json(p: &ContainmentPoset) -> Value {
    json!(p.relations().iter().map(|&(j, k)| [j, k]).collect::<Vec<_>>())
}

fn run(cli: Cli) -> Result<String> {
    Ok(match cli.command {
        Command::Barcode { function } => {
            let f = read_function(&function)?;
            to_json(&barcode_of_sequence(&f).barcode.to_json())
        }
        Command::Tree { function, dot } => {
            let t = merge_tree_of_sequence(&read_function(&function)?);
            if dot {
                return Ok(elder_core::elder::chiral_to_dot(&t).trim_end().to_string());
            }
            to_json(&t.to_json())
        }
        Command::Elder { tree } => {
            let barcode = match read_tree(&tree)? {
                AnyTree::Chiral(t) => chiral_elder_map(&t),
                AnyTree::Unordered(t) => elder_rule(&t).0,
            };
            to_json(&barcode.to_json())
        }
        Command::Count { barcode, mode } => {
            let target = mode.target();
            let flags = if target == Target::Functions { BarcodeFlags::MORSE } else { BarcodeFlags::GENERIC };
            let b = read_barcode(&barcode, flags)?;
            let count = match target {
                Target::MergeTrees => fiber::count_merge_trees(&b)?,
                Target::Chiral => fiber::count_cmts(&b)?,
                Target::Functions => {
                    if b.len() < 2 {
                        return Err(elder_core::FiberError::DegenerateBarcode.into());
                    }
                    fiber::count_cmts(&b)?
                }
            };
            count.to_string()
        }
        Command::Enumerate { barcode, mode, jobs } => {
            let target = mode.target();
            let flags = if target == Target::Functions { BarcodeFlags::MORSE } else { BarcodeFlags::GENERIC };
            let b = read_barcode(&barcode, flags)?;
            let jobs = jobs.max(1);
            match target {
                Target::Chiral => {
                    let trees = fiber::enumerate_cmts_with_jobs(&b, jobs)?;
                    to_json(&trees.iter().map(ChiralMergeTree::to_json).collect::<Vec<_>>())
                }
                Target::MergeTrees => {
                    let trees = fiber::enumerate_merge_trees_with_jobs(&b, jobs)?;
                    to_json(&trees.iter().map(|t| t.to_json()).collect::<Vec<_>>())
                }
                Target::Functions => to_json(&fiber::enumerate_functions_with_jobs(&b, jobs)?),
            }
        }
        Command::Reconstruct { tree } => {
            let f = cmt_to_sequence(&read_chiral(&tree)?)?;
            let breakpoints: Vec<[Height; 2]> = f
                .breakpoints()
                .into_iter()
                .map(|(x, y)| [Height::new(x).expect("x in [0, 1]"), y])
                .collect();
            to_json(&json!({ "critical_values": f.values(), "breakpoints": breakpoints }))
        }
        Command::Rank { function, r, t } => {
            let f = read_function(&function)?;
            let r = Height::new(r)?;
            let t = Height::new(t)?;
            rank(&f, r, t)?.to_string()
        }
        Command::Strata { first, second } => {
            let a = read_barcode(&first, BarcodeFlags::GENERIC)?;
            let b = read_barcode(&second, BarcodeFlags::GENERIC)?;
            let (pa, pb) = (fiber::containment_poset(&a)?, fiber::containment_poset(&b)?);
            to_json(&json!({
                "same_stratum": pa.is_isomorphic(&pb),
                "poset1": poset_json(&pa),
                "poset2": poset_json(&pb),
            }))
        }
        Command::Verify { barcode } => {
            let b = read_barcode(&barcode, BarcodeFlags::MORSE)?;
            to_json(&oracle::verify(&b)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
