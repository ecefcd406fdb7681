use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sgrid::derived::{self, ColoredGrid};
use sgrid::oracle::{self, EnumerationBudget};
use sgrid::smap::{parse_smap, write_canonical_smap, write_smap};
use sgrid::synthesis::{dual_circuit_classes, forced_euler, recover_plan, synthesize, SubdivisionPlan};
use sgrid::transverse::{decompose, extract_skeleton};
use sgrid::{fixtures, EmbeddedMap, Error, Graph};

/// Grids, skeleton grids and their derived maps on closed surfaces.
#[derive(Parser)]
#[command(name = "sgrid", version)]
struct Cli {
    /// Write the main output here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Counts, surface, degree and curvature sequences.
    Stats {
        map: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Facial walks as dart sequences.
    Faces { map: PathBuf },
    /// The dual map.
    Dual { map: PathBuf },
    /// Transverse walks and circuits.
    Decompose { map: PathBuf },
    /// The skeleton grid of a grid.
    Skeleton {
        map: PathBuf,
        /// Also write the recovered subdivision plan.
        #[arg(long)]
        plan_out: Option<PathBuf>,
    },
    /// Edge classes of a skeleton grid, as a plan with zero counts.
    Classes { map: PathBuf },
    /// Builds a grid from a skeleton grid and per-class counts.
    Synthesize {
        skeleton: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Count override `k=n` for class `k`; may be repeated.
        #[arg(long = "count", value_parser = parse_count)]
        counts: Vec<(usize, usize)>,
    },
    /// The radial grid, with a colour block.
    Radial { map: PathBuf },
    /// The medial map.
    Medial { map: PathBuf },
    /// The overlay grid, with a colour block.
    Overlay { map: PathBuf },
    /// Decides whether a grid is a radial grid.
    CheckRadial {
        map: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decides whether a grid is an overlay grid.
    CheckOverlay {
        map: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exit 0 if the two maps are isomorphic, 1 otherwise.
    Iso { a: PathBuf, b: PathBuf },
    /// The canonical representative of a map.
    Canon { map: PathBuf },
    /// All embeddings of a graph up to isomorphism.
    Enumerate {
        graph: PathBuf,
        #[command(flatten)]
        filter: SurfaceArgs,
        #[arg(long)]
        grid_only: bool,
    },
    /// Quadrangular immersions of a graph with up to a few crossings.
    Search {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_crossings: usize,
        #[command(flatten)]
        filter: SurfaceArgs,
    },
    /// The Euler characteristic forced on quadrangular immersions.
    ForcedEuler { graph: PathBuf },
    /// Prints a bundled fixture map.
    Fixture {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, default_value_t = 14)]
    max_edges: usize,
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<i64>,
    #[arg(long, conflicts_with = "non_orientable")]
    orientable: bool,
    #[arg(long)]
    non_orientable: bool,
}

impl SurfaceArgs {
    fn budget(&self) -> EnumerationBudget {
        EnumerationBudget {
            max_edges: self.max_edges,
            chi: self.chi,
            orientable: if self.orientable {
                Some(true)
            } else if self.non_orientable {
                Some(false)
            } else {
                None
            },
            ..EnumerationBudget::default()
        }
    }
}

fn parse_count(s: &str) -> Result<(usize, usize), String> {
    let (k, n) = s.split_once('=').ok_or("expected k=n")?;
    Ok((k.trim().parse().map_err(|_| "bad class")?, n.trim().parse().map_err(|_| "bad count")?))
}

enum Failure {
    /// A negative answer; the report is still written.
    Verdict(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<String, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_map(path: &Path) -> Result<EmbeddedMap, Failure> {
    parse_smap(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Reads an edge list, or the underlying graph of an SMAP document.
fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    let parsed = if first.is_some_and(|l| l.starts_with("smap")) {
        parse_smap(&text).map(|m| Graph::from_map(&m))
    } else {
        Graph::parse(&text)
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// `3x8 5x2` style multiset.
fn grouped(seq: &[usize]) -> String {
    let mut out = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let j = seq[i..].iter().take_while(|&&d| d == seq[i]).count();
        out.push(format!("{}x{j}", seq[i]));
        i += j;
    }
    if out.is_empty() {
        "none".into()
    } else {
        out.join(" ")
    }
}

fn render(fields: Map<String, Value>, json: bool) -> String {
    if json {
        return serde_json::to_string(&Value::Object(fields)).expect("json values serialize") + "\n";
    }
    let mut out = String::new();
    for (k, v) in fields {
        let text = match v {
            Value::String(s) => s,
            Value::Array(items) => items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
            other => other.to_string(),
        };
        out.push_str(&format!("{k}: {text}\n"));
    }
    out
}

fn stats(m: &EmbeddedMap, json: bool) -> String {
    let identity = match m.check_curvature_identity() {
        Ok(true) => "ok",
        Ok(false) => "failed",
        Err(_) => "not-a-grid",
    };
    let mut f = Map::new();
    f.insert("vertices".into(), json!(m.vertex_count()));
    f.insert("edges".into(), json!(m.edge_count()));
    f.insert("faces".into(), json!(m.face_count()));
    f.insert("euler_characteristic".into(), json!(m.euler_characteristic()));
    f.insert("orientable".into(), json!(m.is_orientable()));
    f.insert("grid".into(), json!(m.is_grid()));
    if json {
        f.insert("degree_sequence".into(), json!(m.degree_sequence()));
        f.insert("curvature_sequence".into(), json!(m.curvature_sequence()));
    } else {
        f.insert("degree_sequence".into(), json!(grouped(&m.degree_sequence())));
        f.insert("curvature_sequence".into(), json!(grouped(&m.curvature_sequence())));
    }
    f.insert("curvature_identity".into(), json!(identity));
    render(f, json)
}

fn colored(c: &ColoredGrid) -> String {
    write_smap(&c.map) + &c.color_block()
}

fn check_radial(m: &EmbeddedMap, json: bool) -> Run {
    let v = derived::check_radial_form(m)?;
    let mut f = Map::new();
    f.insert("radial".into(), json!(v.is_radial));
    f.insert("bipartite".into(), json!(v.is_radial));
    let mut out = render(f, json);
    if let (false, Some((h, h_dual))) = (json, &v.recovered) {
        out.push_str(&format!("# map\n{}---\n# dual map\n{}", write_smap(h), write_smap(h_dual)));
    }
    if v.is_radial {
        Ok(out)
    } else {
        Err(Failure::Verdict(out))
    }
}

fn check_overlay(m: &EmbeddedMap, json: bool) -> Run {
    let v = derived::check_overlay_form(m)?;
    let mut f = Map::new();
    f.insert("overlay".into(), json!(v.is_overlay));
    f.insert("bipartite".into(), json!(v.bipartite));
    f.insert("degree4_classes".into(), json!(v.degree4_classes));
    f.insert("white_class".into(), v.white_class.map_or(Value::Null, |c| json!(c)));
    let mut out = render(f, json);
    if let (false, Some((h, h_dual))) = (json, &v.recovered) {
        out.push_str(&format!("# red map\n{}---\n# blue map\n{}", write_smap(h), write_smap(h_dual)));
    }
    if v.is_overlay {
        Ok(out)
    } else {
        Err(Failure::Verdict(out))
    }
}

fn faces(m: &EmbeddedMap) -> String {
    let mut out = String::new();
    for (i, face) in m.faces().iter().enumerate() {
        let steps: Vec<String> =
            face.steps.iter().map(|g| format!("{}{}", m.dart_name(g.dart()), g.side().symbol())).collect();
        out.push_str(&format!("face {i} ({}): {}\n", face.len(), steps.join(" ")));
    }
    out
}

fn synthesize_cmd(skeleton: &Path, plan_path: Option<&Path>, overrides: &[(usize, usize)]) -> Run {
    let s = read_map(skeleton)?;
    let classes = dual_circuit_classes(&s)?;
    let mut plan = match plan_path {
        Some(p) => SubdivisionPlan::parse_counts(&read_text(p)?, &s, &classes)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => classes,
    };
    for &(k, n) in overrides {
        if k >= plan.counts.len() {
            return Err(Failure::Input(format!("class {k} does not exist ({} classes)", plan.counts.len())));
        }
        plan.counts[k] = n;
    }
    Ok(write_smap(&synthesize(&s, &plan.counts)?))
}

fn stream(maps: impl IntoIterator<Item = (String, EmbeddedMap)>) -> String {
    maps.into_iter()
        .map(|(header, m)| header + &write_smap(&m))
        .collect::<Vec<_>>()
        .join("---\n")
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Stats { map, json } => Ok(stats(&read_map(map)?, *json)),
        Command::Faces { map } => Ok(faces(&read_map(map)?)),
        Command::Dual { map } => Ok(write_smap(&read_map(map)?.dual())),
        Command::Decompose { map } => {
            let m = read_map(map)?;
            Ok(decompose(&m).to_text(&m))
        }
        Command::Skeleton { map, plan_out } => {
            let r = extract_skeleton(&read_map(map)?)?;
            if let Some(path) = plan_out {
                let plan = recover_plan(&r)?;
                fs::write(path, plan.to_text(&r.skeleton))
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            Ok(write_smap(&r.skeleton))
        }
        Command::Classes { map } => {
            let m = read_map(map)?;
            Ok(dual_circuit_classes(&m)?.to_text(&m))
        }
        Command::Synthesize { skeleton, plan, counts } => synthesize_cmd(skeleton, plan.as_deref(), counts),
        Command::Radial { map } => Ok(colored(&derived::radial(&read_map(map)?))),
        Command::Medial { map } => Ok(write_smap(&derived::medial(&read_map(map)?))),
        Command::Overlay { map } => Ok(colored(&derived::overlay(&read_map(map)?))),
        Command::CheckRadial { map, json } => check_radial(&read_map(map)?, *json),
        Command::CheckOverlay { map, json } => check_overlay(&read_map(map)?, *json),
        Command::Iso { a, b } => {
            if read_map(a)?.is_isomorphic(&read_map(b)?) {
                Ok("isomorphic\n".into())
            } else {
                Err(Failure::Verdict("not isomorphic\n".into()))
            }
        }
        Command::Canon { map } => Ok(write_canonical_smap(&read_map(map)?)),
        Command::Enumerate { graph, filter, grid_only } => {
            let budget = EnumerationBudget { grid_only: *grid_only, ..filter.budget() };
            let maps = oracle::enumerate_embeddings(&read_graph(graph)?, &budget)?;
            Ok(stream(maps.into_iter().map(|m| (String::new(), m))))
        }
        Command::Search { graph, max_crossings, filter } => {
            let budget = EnumerationBudget { max_crossings: *max_crossings, ..filter.budget() };
            let report = oracle::search_quadrangular(&read_graph(graph)?, &budget)?;
            let mut out = format!(
                "# forced euler characteristic: {}\n# immersions: {}\n# non-quadrangular embeddings: {}\n",
                report.forced_chi,
                report.immersions.len(),
                report.non_quadrangular
            );
            if let Some(k) = report.truncated_at {
                out.push_str(&format!("# skipped from {k} crossings: edge budget\n"));
            }
            if !report.immersions.is_empty() {
                out.push_str("---\n");
            }
            out.push_str(&stream(
                report.immersions.into_iter().map(|im| (format!("# crossings: {}\n", im.crossings), im.map)),
            ));
            Ok(out)
        }
        Command::ForcedEuler { graph } => {
            let f = forced_euler(&read_graph(graph)?)?;
            let out = format!("chi: {}\nfeasible: {}\n", f.chi, f.feasible);
            if f.feasible {
                Ok(out)
            } else {
                        Err(Failure::Verdict(out))
            }
        }
        Command::Fixture { name, list } => {
            let all = fixtures::all();
            if *list {
                return Ok(all.iter().map(|(n, _)| format!("{n}\n")).collect());
            }
            let name = name.as_deref().unwrap_or_default();
            let (_, m) = all
                .into_iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| Failure::Input(format!("unknown fixture `{name}`")))?;
            Ok(write_smap(&m))
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let (out, code) = match run(&cli) {
        Ok(out) => (out, 0),
        Err(Failure::Verdict(out)) => (out, 1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, out) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{out}"),
    }
    ExitCode::from(code)
}
