//! Command-line interface: deterministic text/JSON access to the
//! partition posets, building sets, nested sets, admissible bases,
//! model Poincaré polynomials, permutation statistics, the forest
//! bijection, and the generating-function identities.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use wonder::buildingset::{
    building_order_failure, building_set, enumerate_nested_sets, is_building_elements,
    is_building_order, order_by_inclusion, order_toric_style, AmbientKind, BuildingElement,
};
use wonder::cohomology::{
    enumerate_admissible, poincare_hyperplane, poincare_toric, verify_model_iso,
};
use wonder::forests::{
    enumerate_special_forests, forest_from_json, special_forest_from_json,
    special_forest_to_triple, triple_to_special_forest,
};
use wonder::graphs::{enumerate_graphs, graph_from_json, parse_graph, Graph};
use wonder::linoracle::verify_lattice_iso;
use wonder::partitions::enumerate_connected_partitions;
use wonder::permstats::{eulerian_poly, hook_factorization, lec, NumberList};
use wonder::qpoly::QPoly;
use wonder::series::{extract_lec_identity, phi_hyper, phi_toric};

/// Exhaustive enumeration is exponential; sweeps past this size need
/// an explicit opt-in.
const MAX_SAFE_N: usize = 9;

#[derive(Parser)]
#[command(
    name = "wonder",
    version,
    about = "Exact combinatorics of wonderful models of graphic arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Exactly one way to feed a graph in.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Family string: complete:N, path:N, cycle:N, edgeless:N,
    /// disjoint-complete:N,M, cone:<family>
    #[arg(long)]
    family: Option<String>,
    /// Inline graph JSON: {"n": N, "edges": [[i, j], ...]}
    #[arg(long)]
    inline: Option<String>,
    /// Path to a file holding graph JSON
    #[arg(long)]
    file: Option<PathBuf>,
}

impl GraphSource {
    fn load(&self) -> Result<Graph, String> {
        if let Some(text) = &self.family {
            return parse_graph(text).map_err(|e| e.to_string());
        }
        let text = if let Some(inline) = &self.inline {
            inline.clone()
        } else {
            let path = self.file.as_ref().expect("clap guarantees one source");
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
        };
        let value: Value = serde_json::from_str(&text).map_err(|e| format!("bad JSON: {e}"))?;
        graph_from_json(&value).map_err(|e| e.to_string())
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Side {
    Toric,
    Hyper,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the connected partitions of a graph
    Poset {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        json: bool,
        /// Lift the vertex-count safety bound
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Print the one-block building set of a graph
    Building {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the nested sets of the building set
    Nested {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        json: bool,
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Enumerate the admissible functions (the monomial basis)
    Admissible {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        json: bool,
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Poincaré polynomial of the toric and/or linear wonderful model
    Poincare {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, value_enum, default_value = "both")]
        side: Side,
        /// Report cohomological degrees (powers of t, with t^2 = q)
        #[arg(long)]
        cohomological: bool,
        #[arg(long)]
        json: bool,
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Check that the toric model of Γ and the linear model of cone(Γ)
    /// have the same Poincaré polynomial
    VerifyIso {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        json: bool,
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Eulerian polynomial A_l(q)
    Eulerian {
        #[arg(long)]
        l: usize,
        /// Print A_l(q)/q instead
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        json: bool,
    },
    /// lec statistic of an ordered list of distinct numbers
    Lec {
        /// Comma-separated list, e.g. 3,1,2
        list: String,
        #[arg(long)]
        json: bool,
    },
    /// Hook factorization of an ordered list of distinct numbers
    Hooks {
        /// Comma-separated list, e.g. 2,4,1,3
        list: String,
        #[arg(long)]
        json: bool,
    },
    /// Map a triple (forest, forest, permutation) to a special
    /// admissible forest, or invert the map
    Bijection {
        /// First admissible forest as JSON (forward direction)
        #[arg(long, requires = "f2", requires = "perm", conflicts_with = "special")]
        f1: Option<String>,
        /// Second admissible forest as JSON (forward direction)
        #[arg(long, requires = "f1")]
        f2: Option<String>,
        /// Permutation in one-line notation, e.g. 1,5,6,7,3,8,2,4
        #[arg(long, requires = "f1")]
        perm: Option<String>,
        /// Special admissible forest as JSON (inverse direction)
        #[arg(long)]
        special: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate special admissible forests of type (n, m)
    SpecialForests {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        json: bool,
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Generating-function cells: the toric and linear-model series,
    /// optionally cross-checked against each other and the Eulerian
    /// identity
    Series {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        /// Compare the two series cellwise and extract the
        /// lec-Eulerian identity
        #[arg(long)]
        check: bool,
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Validate blow-up orders on the building set
    CheckOrder {
        #[command(flatten)]
        graph: GraphSource,
        /// A custom order as a JSON list of blocks, e.g. [[0,1,2],[0,1]]
        #[arg(long)]
        custom: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
    /// Run every verifier over all graphs up to a vertex count
    VerifyAll {
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long = "unsafe")]
        unchecked: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// The natural ambient for a graph: coned if it has the apex vertex 0.
fn ambient_for(g: &Graph) -> AmbientKind {
    if g.has_label(0) {
        AmbientKind::ConedLinear(g.vertex_count() - 1)
    } else {
        AmbientKind::Torus(g.vertex_count())
    }
}

/// Underlying size (cone apex excluded) against the safety bound.
fn guard_size(g: &Graph, unchecked: bool) -> Result<(), String> {
    let n = g.vertex_count() - usize::from(g.has_label(0));
    if n > MAX_SAFE_N && !unchecked {
        return Err(format!(
            "graph size {n} exceeds the safety bound {MAX_SAFE_N}; pass --unsafe to proceed"
        ));
    }
    Ok(())
}

fn parse_list(text: &str) -> Result<NumberList, String> {
    NumberList::parse(text).map_err(|e| e.to_string())
}

fn poly_text(p: &QPoly, cohomological: bool) -> String {
    if !cohomological {
        return p.to_string();
    }
    // Same ascending layout as the q form, with exponents doubled.
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c == &0.into() {
            continue;
        }
        let coeff = if c == &1.into() && k > 0 { String::new() } else { c.to_string() };
        match k {
            0 => parts.push(c.to_string()),
            _ => parts.push(format!("{coeff}t^{}", 2 * k)),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Poset { graph, json, unchecked } => {
            let g = graph.load()?;
            guard_size(&g, unchecked)?;
            let parts = enumerate_connected_partitions(&g);
            if json {
                let items: Vec<Value> = parts
                    .iter()
                    .map(|p| json!({"blocks": p.to_json_value(), "codim": p.codim()}))
                    .collect();
                println!("{}", json!({"count": parts.len(), "partitions": items}));
            } else {
                for p in &parts {
                    println!("{}  codim={}", p.to_json_value(), p.codim());
                }
            }
            Ok(0)
        }
        Command::Building { graph, json } => {
            let g = graph.load()?;
            let bs = building_set(&g, ambient_for(&g)).map_err(|e| e.to_string())?;
            if json {
                let items: Vec<Value> = bs.iter().map(|e| e.to_json_value()).collect();
                println!("{}", json!({"count": bs.len(), "elements": items}));
            } else {
                for e in &bs {
                    println!("{}", e.to_json_value());
                }
            }
            Ok(0)
        }
        Command::Nested { graph, json, unchecked } => {
            let g = graph.load()?;
            guard_size(&g, unchecked)?;
            let bs = building_set(&g, ambient_for(&g)).map_err(|e| e.to_string())?;
            let sets = enumerate_nested_sets(&bs);
            if json {
                let items: Vec<Value> = sets
                    .iter()
                    .map(|s| Value::Array(s.elements().iter().map(|e| e.to_json_value()).collect()))
                    .collect();
                println!("{}", json!({"count": sets.len(), "nested_sets": items}));
            } else {
                for s in &sets {
                    let blocks: Vec<String> =
                        s.elements().iter().map(|e| e.to_json_value().to_string()).collect();
                    println!("[{}]", blocks.join(", "));
                }
            }
            Ok(0)
        }
        Command::Admissible { graph, json, unchecked } => {
            let g = graph.load()?;
            guard_size(&g, unchecked)?;
            let amb = ambient_for(&g);
            let bs = building_set(&g, amb).map_err(|e| e.to_string())?;
            let fns = enumerate_admissible(&bs, amb).map_err(|e| e.to_string())?;
            if json {
                let items: Vec<Value> = fns.iter().map(|f| f.to_json_value()).collect();
                println!("{}", json!({"count": fns.len(), "functions": items}));
            } else {
                for f in &fns {
                    println!("{f}  degree={}", f.degree());
                }
            }
            Ok(0)
        }
        Command::Poincare { graph, side, cohomological, json, unchecked } => {
            let g = graph.load()?;
            guard_size(&g, unchecked)?;
            let amb = ambient_for(&g);
            let compute = |side: Side| -> Result<QPoly, String> {
                let bs = building_set(&g, amb).map_err(|e| e.to_string())?;
                match side {
                    Side::Toric => poincare_toric(&g, &bs).map_err(|e| e.to_string()),
                    Side::Hyper => poincare_hyperplane(&g, &bs).map_err(|e| e.to_string()),
                    Side::Both => unreachable!(),
                }
            };
            match side {
                Side::Toric | Side::Hyper => {
                    let p = compute(side)?;
                    if json {
                        println!("{}", p.to_json_value());
                    } else {
                        println!("{}", poly_text(&p, cohomological));
                    }
                    Ok(0)
                }
                Side::Both => {
                    let report = verify_model_iso(&g).map_err(|e| e.to_string())?;
                    if json {
                        println!(
                            "{}",
                            json!({
                                "toric": report.toric.to_json_value(),
                                "hyper": report.hyper.to_json_value(),
                                "equal": report.equal,
                            })
                        );
                    } else {
                        println!("toric: {}", poly_text(&report.toric, cohomological));
                        println!("hyper: {}", poly_text(&report.hyper, cohomological));
                    }
                    Ok(u8::from(!report.equal))
                }
            }
        }
        Command::VerifyIso { graph, json, unchecked } => {
            let g = graph.load()?;
            guard_size(&g, unchecked)?;
            let report = verify_model_iso(&g).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    json!({
                        "toric": report.toric.to_json_value(),
                        "hyper": report.hyper.to_json_value(),
                        "equal": report.equal,
                        "graph": g.to_json_value().map_err(|e| e.to_string())?,
                    })
                );
            } else if report.equal {
                println!("EQUAL {}", report.toric);
            } else {
                println!("UNEQUAL");
                println!("toric: {}", report.toric);
                println!("hyper: {}", report.hyper);
                println!("graph: {}", g.to_json_value().map_err(|e| e.to_string())?);
            }
            Ok(u8::from(!report.equal))
        }
        Command::Eulerian { l, reduced, json } => {
            if l == 0 {
                return Err("l must be at least 1".into());
            }
            let poly = if reduced {
                eulerian_poly(l).div_q().map_err(|e| e.to_string())?
            } else {
                eulerian_poly(l)
            };
            if json {
                println!("{}", json!({"l": l, "reduced": reduced, "poly": poly.to_json_value()}));
            } else {
                println!("{poly}");
            }
            Ok(0)
        }
        Command::Lec { list, json } => {
            let w = parse_list(&list)?;
            let fact = hook_factorization(&w);
            let hooks: Vec<Value> = fact.hooks.iter().map(|h| h.to_json_value()).collect();
            if json {
                println!(
                    "{}",
                    json!({"list": w.to_json_value(), "lec": lec(&w), "hooks": hooks})
                );
            } else {
                println!("lec = {}", lec(&w));
                println!("hooks = {}", Value::Array(hooks));
            }
            Ok(0)
        }
        Command::Hooks { list, json } => {
            let w = parse_list(&list)?;
            let fact = hook_factorization(&w);
            let hooks: Vec<Value> = fact.hooks.iter().map(|h| h.to_json_value()).collect();
            let inversions: Vec<usize> =
                fact.hooks.iter().map(|h| h.inversion_count()).collect();
            if json {
                println!(
                    "{}",
                    json!({
                        "prefix": fact.prefix.to_json_value(),
                        "hooks": hooks,
                        "inversions": inversions,
                        "lec": lec(&w),
                    })
                );
            } else {
                println!("prefix = {}", fact.prefix.to_json_value());
                for (h, i) in fact.hooks.iter().zip(&inversions) {
                    println!("hook = {}  inversions = {i}", h.to_json_value());
                }
                println!("lec = {}", lec(&w));
            }
            Ok(0)
        }
        Command::Bijection { f1, f2, perm, special, json } => match (f1, f2, perm, special) {
            (Some(f1), Some(f2), Some(perm), None) => {
                let parse_forest = |text: &str| -> Result<_, String> {
                    let v: Value =
                        serde_json::from_str(text).map_err(|e| format!("bad JSON: {e}"))?;
                    forest_from_json(&v).map_err(|e| e.to_string())
                };
                let f1 = parse_forest(&f1)?;
                let f2 = parse_forest(&f2)?;
                let s = parse_list(&perm)?;
                let sf = triple_to_special_forest(&f1, &f2, &s).map_err(|e| e.to_string())?;
                if json {
                    println!(
                        "{}",
                        json!({"special": sf.to_json_value(), "degree": sf.degree()})
                    );
                } else {
                    println!("{}", sf.to_json_value());
                    println!("degree = {}", sf.degree());
                }
                Ok(0)
            }
            (None, None, None, Some(special)) => {
                let v: Value =
                    serde_json::from_str(&special).map_err(|e| format!("bad JSON: {e}"))?;
                let sf = special_forest_from_json(&v).map_err(|e| e.to_string())?;
                let (f1, f2, s) = special_forest_to_triple(&sf).map_err(|e| e.to_string())?;
                let out = json!({
                    "f1": f1.to_json_value(),
                    "f2": f2.to_json_value(),
                    "perm": s.to_json_value(),
                });
                if json {
                    println!("{out}");
                } else {
                    println!("f1 = {}", f1.to_json_value());
                    println!("f2 = {}", f2.to_json_value());
                    println!("perm = {}", s.to_json_value());
                }
                Ok(0)
            }
            _ => Err("pass either --f1/--f2/--perm (forward) or --special (inverse)".into()),
        },
        Command::SpecialForests { n, m, json, unchecked } => {
            if (n + m) as usize > MAX_SAFE_N && !unchecked {
                return Err(format!(
                    "n + m = {} exceeds the safety bound {MAX_SAFE_N}; pass --unsafe to proceed",
                    n + m
                ));
            }
            let forests = enumerate_special_forests(n, m).map_err(|e| e.to_string())?;
            let mut degrees = QPoly::zero();
            for sf in &forests {
                degrees += &QPoly::one().shift_up(sf.degree());
            }
            if json {
                let items: Vec<Value> = forests.iter().map(|sf| sf.to_json_value()).collect();
                println!(
                    "{}",
                    json!({
                        "n": n,
                        "m": m,
                        "count": forests.len(),
                        "degrees": degrees.to_json_value(),
                        "forests": items,
                    })
                );
            } else {
                for sf in &forests {
                    println!("{}", sf.to_json_value());
                }
                println!("count = {}", forests.len());
                println!("degrees = {degrees}");
            }
            Ok(0)
        }
        Command::Series { nx, ny, check, unchecked } => {
            if nx == 0 || ny == 0 {
                return Err("orders must be at least 1".into());
            }
            if nx + ny > MAX_SAFE_N && !unchecked {
                return Err(format!(
                    "nx + ny = {} exceeds the safety bound {MAX_SAFE_N}; pass --unsafe to proceed",
                    nx + ny
                ));
            }
            let toric = phi_toric(nx, ny).map_err(|e| e.to_string())?;
            let hyper = phi_hyper(nx, ny).map_err(|e| e.to_string())?;
            let mut out = serde_json::Map::new();
            out.insert("toric".into(), toric.to_json_value());
            out.insert("hyper".into(), hyper.to_json_value());
            let mut failed = false;
            if check {
                let equal = toric == hyper;
                failed |= !equal;
                let mut identity = Vec::new();
                for (k, (lhs, rhs)) in extract_lec_identity(nx + ny)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .enumerate()
                {
                    let l = k + 2;
                    let eulerian = eulerian_poly(l).div_q().map_err(|e| e.to_string())?;
                    let ok = lhs == rhs && lhs == eulerian;
                    failed |= !ok;
                    identity.push(json!({
                        "l": l,
                        "from_toric": lhs.to_json_value(),
                        "from_hyper": rhs.to_json_value(),
                        "eulerian": eulerian.to_json_value(),
                        "equal": ok,
                    }));
                }
                out.insert("equal".into(), Value::Bool(equal));
                out.insert("lec_identity".into(), Value::Array(identity));
            }
            println!("{}", Value::Object(out));
            Ok(u8::from(failed))
        }
        Command::CheckOrder { graph, custom, json, unchecked } => {
            let g = graph.load()?;
            guard_size(&g, unchecked)?;
            let amb = ambient_for(&g);
            let bs = building_set(&g, amb).map_err(|e| e.to_string())?;
            let mut results = Vec::new();
            let mut failed = false;
            for (name, order) in [
                ("inclusion", order_by_inclusion(&bs)),
                ("toric-style", order_toric_style(&bs)),
            ] {
                let ok = is_building_order(&order, &g).map_err(|e| e.to_string())?;
                failed |= !ok;
                results.push(json!({"order": name, "ok": ok}));
            }
            if let Some(text) = custom {
                let v: Value = serde_json::from_str(&text).map_err(|e| format!("bad JSON: {e}"))?;
                let blocks = v.as_array().ok_or("custom order must be a JSON array")?;
                let mut order = Vec::new();
                for b in blocks {
                    let labels: Vec<u32> = serde_json::from_value(b.clone())
                        .map_err(|e| format!("bad block: {e}"))?;
                    order.push(BuildingElement::new(&labels, amb).map_err(|e| e.to_string())?);
                }
                let failure = building_order_failure(&order, &g).map_err(|e| e.to_string())?;
                failed |= failure.is_some();
                results.push(json!({
                    "order": "custom",
                    "ok": failure.is_none(),
                    "failed_at": failure,
                }));
            }
            if json {
                println!("{}", Value::Array(results.clone()));
            } else {
                for r in &results {
                    let name = r["order"].as_str().unwrap();
                    if r["ok"].as_bool().unwrap() {
                        println!("{name}: OK");
                    } else if let Some(at) = r.get("failed_at").and_then(Value::as_u64) {
                        println!("{name}: FAIL at position {at}");
                    } else {
                        println!("{name}: FAIL");
                    }
                }
            }
            Ok(u8::from(failed))
        }
        Command::VerifyAll { max_n, jobs, unchecked } => {
            if max_n > 5 && !unchecked {
                return Err(format!(
                    "max-n = {max_n} exceeds the safety bound 5; pass --unsafe to proceed"
                ));
            }
            if max_n < 2 {
                return Err("max-n must be at least 2".into());
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| e.to_string())?;
            let mut failed = false;
            for n in 2..=max_n {
                let graphs = enumerate_graphs(n);
                let lines: Vec<(&str, Option<String>)> = pool.install(|| {
                    let iso: Option<String> = graphs
                        .par_iter()
                        .filter_map(|g| {
                            let r = verify_model_iso(g).map_err(|e| e.to_string());
                            match r {
                                Ok(r) if r.equal && r.toric.is_palindromic() => None,
                                Ok(r) => Some(format!(
                                    "toric {} vs hyper {} on {}",
                                    r.toric,
                                    r.hyper,
                                    g.to_json_value().unwrap()
                                )),
                                Err(e) => Some(e),
                            }
                        })
                        .find_first(|_| true);
                    let lattice: Option<String> = graphs
                        .par_iter()
                        .filter_map(|g| {
                            let r = verify_lattice_iso(g);
                            if r.ok {
                                None
                            } else {
                                Some(format!(
                                    "{} on {}",
                                    r.failure.unwrap_or_default(),
                                    g.to_json_value().unwrap()
                                ))
                            }
                        })
                        .find_first(|_| true);
                    let building: Option<String> = graphs
                        .par_iter()
                        .filter_map(|g| {
                            let amb = AmbientKind::Torus(n as usize);
                            match is_building_elements(&building_set(g, amb).ok()?, g) {
                                Ok(true) => None,
                                Ok(false) => {
                                    Some(format!("not building on {}", g.to_json_value().unwrap()))
                                }
                                Err(e) => Some(e.to_string()),
                            }
                        })
                        .find_first(|_| true);
                    vec![
                        ("model-iso+palindromic", iso),
                        ("lattice-oracle", lattice),
                        ("building-set", building),
                    ]
                });
                for (check, failure) in lines {
                    match failure {
                        None => println!("{check} n={n}: PASS ({} graphs)", graphs.len()),
                        Some(msg) => {
                            failed = true;
                            println!("{check} n={n}: FAIL — {msg}");
                        }
                    }
                }
            }
            Ok(u8::from(failed))
        }
    }
}
