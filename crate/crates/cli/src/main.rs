//! `agg`: command-line front end for finite Γ-AG-groupoids.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 negative finding (counterexample, missing witness), 2 bad input,
//! 3 capacity or budget exhausted.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agg_core::crisp::{classify_subset, enumerate_ideals, intra_regular_witness, is_intra_regular};
use agg_core::finder::{self, IsoMode, Property, SearchSpec};
use agg_core::fuzzy::{classify_fuzzy, gamma_product};
use agg_core::theorems::{self, Status, DEFAULT_BUDGET};
use agg_core::{
    check_laws, corpus, CrispSubset, Error, FuzzySubset, GammaMagma, IdealKind, Lattice, Law, LawWitness, Mode,
    VerifyOptions,
};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(
    name = "agg",
    version,
    about = "Finite Γ-AG-groupoids: laws, ideals, fuzzy ideals, theorem checks, model search"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide every structural law and intra-regularity.
    Check {
        /// Structure JSON file, or a corpus name (`ag9`, `ir5`).
        structure: String,
    },
    /// List all crisp ideals of one kind.
    Ideals {
        structure: String,
        #[arg(long)]
        kind: IdealKind,
        /// Print element names instead of indices.
        #[arg(long)]
        names: bool,
    },
    /// Classify a crisp subset, given as a JSON array of elements.
    Classify { structure: String, subset: String },
    /// Lexicographically least intra-regularity witness for one element.
    Witness {
        structure: String,
        /// Element index or name.
        #[arg(long)]
        element: String,
    },
    /// Fuzzy subset operations.
    Fuzzy {
        #[command(subcommand)]
        op: FuzzyOp,
    },
    /// Verify one registered statement, or all of them.
    Verify {
        structure: String,
        /// Statement id, or `all`.
        #[arg(long)]
        theorem: String,
        /// Denominator d of the value grid {0, 1/d, ..., 1}.
        #[arg(long, default_value_t = 1)]
        lattice: u64,
        /// `exhaustive` or `sampled:<seed>:<n>`.
        #[arg(long, default_value = "exhaustive")]
        mode: Mode,
        /// Tuple budget for exhaustive checks.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Semilattice structure of the fuzzy two-sided ideals.
    Semilattice {
        structure: String,
        #[arg(long, default_value_t = 1)]
        lattice: u64,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// List the registered statements.
    Theorems,
    /// Enumerate models up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 1)]
        gamma: usize,
        /// Required law; repeat or comma-separate.
        #[arg(long = "laws", value_delimiter = ',')]
        laws: Vec<Law>,
        #[arg(long)]
        intra_regular: bool,
        #[arg(long, default_value = "elements_only")]
        iso: IsoMode,
        /// Print only the number of models.
        #[arg(long, conflicts_with = "emit")]
        count: bool,
        /// Write each model to DIR/<sha256 of its table>.json.
        #[arg(long, value_name = "DIR")]
        emit: Option<PathBuf>,
        /// Search node budget (default: $AGG_BUDGET or built-in).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Smallest single-label Γ-AG-groupoid with a property.
    Find {
        property: Property,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum FuzzyOp {
    /// Γ-product f ∘ g.
    Product { structure: String, f: PathBuf, g: PathBuf },
    /// Every fuzzy kind f belongs to.
    Classify { structure: String, f: PathBuf },
}

/// Result of a command: JSON to print and the exit code.
struct Outcome {
    out: Value,
    code: u8,
}

impl Outcome {
    fn ok(out: Value) -> Self {
        Outcome { out, code: 0 }
    }

    fn finding(out: Value, negative: bool) -> Self {
        Outcome {
            out,
            code: u8::from(negative),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("agg: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Outcome { out, code }) => {
            let text = serde_json::to_string_pretty(&out).expect("JSON values serialize");
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("agg: {e}");
            if let Error::BudgetExhausted(partial) = &e {
                eprintln!("agg: {} models found before the budget ran out", partial.found.len());
            }
            ExitCode::from(if e.is_capacity() { 3 } else { 2 })
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn load(arg: &str) -> Result<GammaMagma, Error> {
    let path = Path::new(arg);
    if path.exists() {
        return GammaMagma::load(path);
    }
    corpus::by_name(arg).map_err(|_| Error::InvalidArgument(format!("no structure file or corpus entry named `{arg}`")))
}

fn load_fuzzy(path: &Path) -> Result<FuzzySubset, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    FuzzySubset::from_json(&text)
}

fn env_budget() -> Result<Option<u64>, Error> {
    match std::env::var("AGG_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidArgument(format!("AGG_BUDGET must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

/// Search node budget: the flag, else `$AGG_BUDGET`, else the default.
fn node_budget(flag: Option<u64>) -> Result<u64, Error> {
    Ok(match flag {
        Some(b) => b,
        None => env_budget()?.unwrap_or(finder::DEFAULT_BUDGET),
    })
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Check { structure } => check(&load(&structure)?),
        Command::Ideals { structure, kind, names } => {
            let m = load(&structure)?;
            let ideals = enumerate_ideals(&m, kind)?;
            let out: Vec<Value> = ideals
                .iter()
                .map(|a| {
                    if names {
                        json!(a.iter().map(|x| m.element_name(x)).collect::<Vec<_>>())
                    } else {
                        to_value(a)
                    }
                })
                .collect();
            Ok(Outcome::ok(json!(out)))
        }
        Command::Classify { structure, subset } => {
            let m = load(&structure)?;
            let elements: Vec<Value> = serde_json::from_str(&subset)?;
            let elements = elements
                .iter()
                .map(|v| match v {
                    Value::Number(n) => n
                        .as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| Error::InvalidArgument(format!("bad element {n}"))),
                    Value::String(s) => m.parse_element(s),
                    other => Err(Error::InvalidArgument(format!("bad element {other}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let a = CrispSubset::from_elements(m.order(), elements)?;
            let kinds = classify_subset(&m, &a)?;
            Ok(Outcome::ok(json!({ "subset": a, "kinds": to_value(&kinds) })))
        }
        Command::Witness { structure, element } => {
            let m = load(&structure)?;
            let a = m.parse_element(&element)?;
            match intra_regular_witness(&m, a)? {
                Some(w) => Ok(Outcome::ok(json!({
                    "element": w.element,
                    "x": w.x,
                    "y": w.y,
                    "beta": m.labels()[w.beta],
                    "xi": m.labels()[w.xi],
                    "gamma": m.labels()[w.gamma],
                    "rendered": format!(
                        "{a} = ({x} {b} ({a} {xi} {a})) {g} {y}",
                        a = m.element_name(w.element),
                        x = m.element_name(w.x),
                        y = m.element_name(w.y),
                        b = m.labels()[w.beta],
                        xi = m.labels()[w.xi],
                        g = m.labels()[w.gamma],
                    ),
                }))),
                None => Ok(Outcome::finding(json!("none"), true)),
            }
        }
        Command::Fuzzy { op } => match op {
            FuzzyOp::Product { structure, f, g } => {
                let m = load(&structure)?;
                let p = gamma_product(&m, &load_fuzzy(&f)?, &load_fuzzy(&g)?)?;
                Ok(Outcome::ok(to_value(&p)))
            }
            FuzzyOp::Classify { structure, f } => {
                let m = load(&structure)?;
                let kinds = classify_fuzzy(&m, &load_fuzzy(&f)?)?;
                Ok(Outcome::ok(json!({ "kinds": to_value(&kinds) })))
            }
        },
        Command::Verify {
            structure,
            theorem,
            lattice,
            mode,
            budget,
        } => {
            let m = load(&structure)?;
            let lattice = Lattice::new(lattice)?;
            let opts = VerifyOptions {
                budget: budget.unwrap_or(DEFAULT_BUDGET),
            };
            if theorem == "all" {
                return Ok(verify_all(&m, &structure, lattice, mode, opts));
            }
            let v = theorems::verify(&m, &theorem, lattice, mode, opts)?;
            let negative = v.status == Status::Counterexample;
            Ok(Outcome::finding(to_value(&v), negative))
        }
        Command::Semilattice {
            structure,
            lattice,
            budget,
        } => {
            let m = load(&structure)?;
            let opts = VerifyOptions {
                budget: budget.unwrap_or(DEFAULT_BUDGET),
            };
            let r = theorems::semilattice_report(&m, Lattice::new(lattice)?, opts)?;
            Ok(Outcome::finding(to_value(&r), !r.is_semilattice()))
        }
        Command::Theorems => {
            let list: Vec<Value> = theorems::catalogue()
                .map(|s| json!({ "id": s.id, "summary": s.summary, "hypotheses": s.hypotheses }))
                .collect();
            Ok(Outcome::ok(json!(list)))
        }
        Command::Enumerate {
            order,
            gamma,
            laws,
            intra_regular,
            iso,
            count,
            emit,
            budget,
        } => {
            let spec = SearchSpec {
                order,
                gamma_count: gamma,
                laws,
                intra_regular,
                iso,
                budget: node_budget(budget)?,
            };
            let models = finder::enumerate_models(&spec)?;
            match emit {
                Some(dir) if !count => emit_models(&dir, &models),
                _ => Ok(Outcome::ok(json!(models.len()))),
            }
        }
        Command::Find {
            property,
            max_order,
            budget,
        } => match finder::find_counterexample_structure(property, max_order, node_budget(budget)?)? {
            Some(m) => Ok(Outcome::ok(to_value(&m.to_file()))),
            None => Ok(Outcome::finding(Value::Null, true)),
        },
    }
}

fn check(m: &GammaMagma) -> Result<Outcome, Error> {
    let report = check_laws(m);
    let mut laws = serde_json::Map::new();
    let mut witnesses = serde_json::Map::new();
    for (law, w) in report.iter() {
        laws.insert(law.key().into(), json!(w.is_none()));
        if let Some(w) = w {
            let mut entry = to_value(w);
            if let LawWitness::Instance { elements, labels, .. } = w {
                entry["rendered"] = json!(law.render(m, elements, labels)?);
                entry["element_names"] = json!(elements.iter().map(|&x| m.element_name(x)).collect::<Vec<_>>());
                entry["label_names"] = json!(labels.iter().map(|&g| m.labels()[g].clone()).collect::<Vec<_>>());
            }
            witnesses.insert(law.key().into(), entry);
        }
    }
    Ok(Outcome::ok(json!({
        "order": m.order(),
        "gamma": m.labels(),
        "laws": laws,
        "witnesses": witnesses,
        "intra_regular": is_intra_regular(m),
        "every_element_factorizable": m.every_element_factorizable(),
    })))
}

fn verify_all(m: &GammaMagma, structure: &str, lattice: Lattice, mode: Mode, opts: VerifyOptions) -> Outcome {
    let mut results = BTreeMap::new();
    let mut negative = false;
    for (id, v) in theorems::verify_all(m, lattice, mode, opts) {
        let entry = match v {
            Ok(v) => {
                negative |= v.status == Status::Counterexample;
                to_value(&v)
            }
            Err(e) => json!({
                "status": if e.is_capacity() { "capacity" } else { "error" },
                "error": e.to_string(),
            }),
        };
        results.insert(id, entry);
    }
    Outcome::finding(
        json!({ "structure": structure, "lattice": lattice.den(), "mode": mode.to_string(), "results": results }),
        negative,
    )
}

fn emit_models(dir: &Path, models: &[GammaMagma]) -> Result<Outcome, Error> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write to {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut files = Vec::with_capacity(models.len());
    for m in models {
        let mut hasher = Sha256::new();
        hasher.update(format!("{}:{}:", m.order(), m.gamma_count()));
        for v in m.flat() {
            hasher.update((*v as u32).to_le_bytes());
        }
        let name = format!("{:x}.json", hasher.finalize());
        fs::write(dir.join(&name), m.to_json() + "\n").map_err(io)?;
        files.push(name);
    }
    Ok(Outcome::ok(json!({ "count": models.len(), "files": files })))
}
