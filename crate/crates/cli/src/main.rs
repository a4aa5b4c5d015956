use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lambda_pack_core::claims::{
    check_claims, check_properties, gen_corpus, sweep, ClaimId, Status,
};
use lambda_pack_core::constructions::{build_r, triangle_expand, Recipe};
use lambda_pack_core::graph::{
    classify, from_dot, parse_graph6, parse_sparse6, serialize_graph6, serialize_sparse6, to_dot,
    Graph,
};
use lambda_pack_core::packing::{enumerate_factors, max_lambda_packing, solve_factor, FactorQuery};
use lambda_pack_core::structure::{enumerate_blockades, min_blockade};
use lambda_pack_core::verify::{run_suite, Suite, SuiteOptions};

const SCHEMA: u32 = 1;
const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "lambda-pack",
    version,
    about = "Exact 3-vertex path packings of cubic graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Where a violation's witness bundle is saved.
    #[arg(long, global = true, default_value = "lambda-pack-witness.json")]
    witness: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Inline graph6 (or sparse6 with a leading ':').
    #[arg(long)]
    g6: Option<String>,
    /// File of graph6/sparse6 lines, or a DOT file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum Λ-packing with a witness.
    Solve {
        #[command(flatten)]
        input: Input,
    },
    /// Constrained Λ-factor query.
    Factor {
        #[command(flatten)]
        input: Input,
        /// FactorQuery as JSON, e.g. '{"deleted_vertices":[0]}'.
        #[arg(long)]
        query: Option<String>,
        /// Also count factors up to the cap.
        #[arg(long)]
        count: bool,
        /// Enumeration cap; defaults to LAMBDA_PACK_CAP or 10^6.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
    },
    /// Structure, blockades and cyclic connectivity.
    Analyze {
        #[command(flatten)]
        input: Input,
    },
    /// Emit the graph6 of a construction.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Run the claim battery and property checks on one graph.
    Claims {
        #[command(flatten)]
        input: Input,
        /// Comma-separated claim ids; all by default.
        #[arg(long, value_delimiter = ',')]
        claim: Vec<ClaimId>,
    },
    /// Run claims over a corpus.
    Sweep {
        /// Corpus file of graph6 lines.
        #[arg(long = "in", conflicts_with = "n", required_unless_present = "n")]
        input: Option<PathBuf>,
        /// Generate the built-in corpus of this order instead.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        claim: Vec<ClaimId>,
        /// Worker threads; 1 (the default) runs serially.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Run verification suites by name or numeric alias, or `all`.
    Verify {
        suite: String,
        /// Parameter of the R_s family.
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Largest γ product cross-checked by enumeration.
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Convert between graph6, sparse6 and DOT.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        to: Format,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The R_s family.
    R {
        #[arg(long)]
        s: usize,
    },
    /// Replace every vertex of a cubic frame by a triangle.
    TriangleExpand {
        #[command(flatten)]
        input: Input,
    },
    /// A JSON recipe (splice, compose, y, h, r, edge_link, r2, triangle_expand).
    Recipe {
        /// Recipe JSON inline.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        json: Option<String>,
        /// Recipe JSON file.
        #[arg(long = "in")]
        file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Sparse6,
    Dot,
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Usage(e.to_string())
    }
}

/// A report and, when a property was violated, the witness bundle.
struct Outcome {
    report: Value,
    violation: Option<Value>,
}

impl Outcome {
    fn ok(report: Value) -> Outcome {
        Outcome {
            report,
            violation: None,
        }
    }
}

fn read_graphs(input: &Input) -> Result<Vec<Graph>, Failure> {
    if let Some(s) = &input.g6 {
        return Ok(vec![parse_line(s.trim())?]);
    }
    let path = input.input.as_ref().expect("clap enforces one input");
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if text.trim_start().starts_with("graph") || text.trim_start().starts_with("strict") {
        return Ok(vec![from_dot(&text)?]);
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(parse_line(t).map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?);
    }
    Ok(out)
}

fn parse_line(s: &str) -> lambda_pack_core::Result<Graph> {
    if s.starts_with(':') {
        parse_sparse6(s)
    } else {
        parse_graph6(s)
    }
}

fn one_graph(input: &Input) -> Result<Graph, Failure> {
    let mut gs = read_graphs(input)?;
    match gs.len() {
        1 => Ok(gs.remove(0)),
        n => Err(Failure::Usage(format!(
            "expected exactly one graph, found {n}"
        ))),
    }
}

fn env_cap() -> Result<u64, Failure> {
    match std::env::var("LAMBDA_PACK_CAP") {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Failure::Usage(format!(
                "LAMBDA_PACK_CAP must be a positive integer, got {s:?}"
            ))),
        },
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn graph_fields(g: &Graph) -> Value {
    json!({
        "graph6": serialize_graph6(g),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
    })
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Solve { input } => {
            let g = one_graph(&input)?;
            let (lambda, packing) = max_lambda_packing(&g);
            Ok(Outcome::ok(json!({
                "graph": graph_fields(&g),
                "lambda": lambda,
                "is_factor": 3 * lambda == g.vertex_count(),
                "packing": packing,
            })))
        }
        Command::Factor {
            input,
            query,
            count,
            cap,
        } => {
            let g = one_graph(&input)?;
            let q: FactorQuery = match query {
                Some(s) => serde_json::from_str(&s).map_err(|e| format!("--query: {e}"))?,
                None => FactorQuery::new(),
            };
            let factor = solve_factor(&g, &q)?;
            let mut report = json!({
                "graph": graph_fields(&g),
                "query": q,
                "factor": factor,
            });
            if count {
                let cap = match cap {
                    Some(c) => c,
                    None => env_cap()?,
                };
                let e = enumerate_factors(&g, &q, cap)?;
                report["enumeration"] = json!({
                    "cap": cap,
                    "count": e.count,
                    "exhausted": e.exhausted,
                });
            }
            Ok(Outcome::ok(report))
        }
        Command::Analyze { input } => {
            let g = one_graph(&input)?;
            let structure = classify(&g);
            let (lambda, _) = max_lambda_packing(&g);
            let mut report = json!({
                "graph": graph_fields(&g),
                "structure": structure,
                "lambda": lambda,
            });
            if structure.is_cubic && structure.component_count == 1 {
                report["three_blockades"] = json!(enumerate_blockades(&g, 3));
                match min_blockade(&g) {
                    Ok((c, k)) => {
                        report["cyclic_connectivity"] = json!(c);
                        report["min_blockade"] = json!(k);
                    }
                    Err(_) => report["cyclic_connectivity"] = Value::Null,
                }
            }
            Ok(Outcome::ok(report))
        }
        Command::Construct { what } => {
            let (recipe, g) = match what {
                Construct::R { s } => (json!({"kind": "r", "s": s}), build_r(s)?.graph),
                Construct::TriangleExpand { input } => {
                    let frame = one_graph(&input)?;
                    let g = triangle_expand(&frame)?.result;
                    (
                        json!({"kind": "triangle_expand", "frame": serialize_graph6(&frame)}),
                        g,
                    )
                }
                Construct::Recipe { json, file } => {
                    let text = match (json, file) {
                        (Some(s), _) => s,
                        (None, Some(p)) => {
                            fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?
                        }
                        (None, None) => unreachable!("clap enforces one source"),
                    };
                    let r: Recipe =
                        serde_json::from_str(&text).map_err(|e| format!("recipe: {e}"))?;
                    let g = r.build()?;
                    (serde_json::to_value(&r)?, g)
                }
            };
            Ok(Outcome::ok(
                json!({ "recipe": recipe, "graph": graph_fields(&g) }),
            ))
        }
        Command::Claims { input, claim } => {
            let g = one_graph(&input)?;
            let ids = if claim.is_empty() {
                ClaimId::ALL.to_vec()
            } else {
                claim
            };
            let outcomes = check_claims(&g, &ids)?;
            let properties = check_properties(&g)?;
            let g6 = serialize_graph6(&g);
            let mut bundle = Vec::new();
            for o in outcomes.iter().filter(|o| o.status == Status::Fails) {
                bundle.push(json!({ "graph6": g6, "claim": o.claim, "witness": o.witness }));
            }
            let props = serde_json::to_value(&properties)?;
            for (name, v) in props.as_object().into_iter().flatten() {
                if v.get("status") == Some(&json!("fails")) {
                    bundle.push(json!({ "graph6": g6, "property": name, "detail": v["detail"] }));
                }
            }
            Ok(Outcome {
                report: json!({
                    "graph": graph_fields(&g),
                    "outcomes": outcomes,
                    "properties": props,
                }),
                violation: (!bundle.is_empty()).then(|| json!(bundle)),
            })
        }
        Command::Sweep {
            input,
            n,
            claim,
            parallel,
        } => {
            let corpus = match (input, n) {
                (Some(p), _) => read_graphs(&Input {
                    g6: None,
                    input: Some(p),
                })?,
                (None, Some(n)) => gen_corpus(n)?,
                (None, None) => unreachable!("clap enforces one source"),
            };
            let ids = if claim.is_empty() {
                ClaimId::ALL.to_vec()
            } else {
                claim
            };
            let threads = (parallel > 1).then_some(parallel);
            let r = sweep(&corpus, &ids, threads)?;
            let bundle: Vec<Value> = r
                .failures()
                .into_iter()
                .map(|(g6, o)| json!({ "graph6": g6, "claim": o.claim, "witness": o.witness }))
                .collect();
            Ok(Outcome {
                report: serde_json::to_value(&r)?,
                violation: (!bundle.is_empty()).then(|| json!(bundle)),
            })
        }
        Command::Verify {
            suite,
            s,
            cap,
            samples,
            seed,
        } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            let o = SuiteOptions {
                s,
                cap,
                samples,
                seed,
            };
            let mut reports = Vec::new();
            let mut bundle = Vec::new();
            for suite in suites {
                let r = run_suite(suite, &o)?;
                for c in r.checks.iter().filter(|c| !c.passed) {
                    bundle.push(json!({ "suite": suite, "check": c.name, "witness": c.witness }));
                }
                reports.push(r);
            }
            let passed = bundle.is_empty();
            Ok(Outcome {
                report: json!({ "passed": passed, "suites": reports }),
                violation: (!passed).then(|| json!(bundle)),
            })
        }
        Command::Convert { input, to } => {
            let g = one_graph(&input)?;
            let text = match to {
                Format::Graph6 => serialize_graph6(&g),
                Format::Sparse6 => serialize_sparse6(&g),
                Format::Dot => to_dot(&g),
            };
            Ok(Outcome::ok(
                json!({ "graph": graph_fields(&g), "output": text }),
            ))
        }
    }
}

fn with_schema(report: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    match report {
        Value::Object(o) => m.extend(o),
        other => {
            m.insert("report".into(), other);
        }
    }
    Value::Object(m)
}

fn write_json(path: Option<&Path>, v: &Value) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(cli.command) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write_json(cli.out.as_deref(), &with_schema(outcome.report)) {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    match outcome.violation {
        None => ExitCode::SUCCESS,
        Some(bundle) => {
            let bundle = with_schema(json!({ "violations": bundle }));
            if let Err(e) = write_json(Some(&cli.witness), &bundle) {
                eprintln!("error: writing witness: {e}");
                return ExitCode::from(2);
            }
            eprintln!(
                "violation found; witness saved to {}",
                cli.witness.display()
            );
            ExitCode::from(1)
        }
    }
}
