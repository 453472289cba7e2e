mod draw;

use clap::{Parser, Subcommand, ValueEnum};
use edgecone::deformation::CrosscutContext;
use edgecone::lattice;
use edgecone::oracle::{self, Side};
use edgecone::{
    build_edge_cone, classify_family, rigidity_verdict, BipartiteGraph, Cone, EdgeConePair, Error, MVector,
};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_ORACLE_LIMIT: usize = 10;

#[derive(Parser)]
#[command(name = "edgecone", version, about = "Edge cones of bipartite graphs and their first-order deformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Graph summary and the first independent sets with their rays.
    Info { input: PathBuf },
    /// Faces of the edge cone of a given dimension.
    Faces {
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        dim: u8,
    },
    /// Every pair of rays with its shape and whether it spans a 2-face.
    Pairs { input: PathBuf },
    /// Heights, crosscut counts, dim V(R) and dim T^1(-R).
    T1 {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        degree: Vec<i64>,
    },
    /// The compact part of Q(R), optionally drawn.
    Crosscut {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        degree: Vec<i64>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Rigidity verdict.
    Rigidity {
        input: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
        search_bound: i64,
    },
    /// Cross-validates the graph machinery against the polyhedral oracle.
    OracleCheck { input: PathBuf },
    /// The edge cone (or its dual) as cone JSON.
    ExportCone {
        input: PathBuf,
        #[arg(long)]
        dual: bool,
    },
}

enum Failure {
    Usage(String),
    Precondition(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::LengthMismatch { .. }
            | Error::VertexOutOfRange(_)
            | Error::InvalidEdge(..)
            | Error::DuplicateEdge(..)
            | Error::EmptyInput => Failure::Usage(e.to_string()),
            Error::CrossCheck(_) | Error::NoCaseTag(_) => Failure::Internal(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type CmdResult = Result<Value, Failure>;

enum Input {
    Graph(BipartiteGraph),
    Cone(Cone),
}

fn read_input(path: &PathBuf) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        if v.get("ambient_dim").is_some() {
            return Ok(Input::Cone(Cone::from_json(&text)?));
        }
    }
    Ok(Input::Graph(BipartiteGraph::parse(&text)?))
}

fn read_graph(path: &PathBuf) -> Result<BipartiteGraph, Failure> {
    match read_input(path)? {
        Input::Graph(g) => Ok(g),
        Input::Cone(_) => Err(Failure::Usage("this command needs a graph, not a cone".into())),
    }
}

fn edge_cone(path: &PathBuf) -> Result<EdgeConePair, Failure> {
    Ok(build_edge_cone(&read_graph(path)?)?)
}

fn sources(e: &EdgeConePair) -> Vec<String> {
    e.fis.iter().map(|f| f.to_string()).collect()
}

/// The primal cone, a label per ray, and the degree as an element of `M`.
fn cone_and_degree(path: &PathBuf, degree: &[i64]) -> Result<(Cone, Vec<String>, MVector), Failure> {
    let (cone, labels) = match read_input(path)? {
        Input::Graph(g) => {
            let e = build_edge_cone(&g)?;
            let labels = sources(&e);
            (e.primal_cone, labels)
        }
        Input::Cone(c) => {
            let labels = (0..c.rays().len()).map(|i| format!("a{}", i + 1)).collect();
            (c, labels)
        }
    };
    let r = MVector::from_i64(degree, cone.ctx())?;
    Ok((cone, labels, r))
}

fn cmd_info(path: &PathBuf) -> CmdResult {
    let g = read_graph(path)?;
    let e = build_edge_cone(&g)?;
    let rays: Vec<Value> = e
        .fis
        .iter()
        .enumerate()
        .map(|(i, f)| json!({"index": i, "source": f.to_string(), "ray": e.rays_full_i64()[i]}))
        .collect();
    Ok(json!({
        "m": g.m(),
        "n": g.n(),
        "edges": g.edges().len(),
        "dual_dim": e.dual_cone.dim(),
        "rays": rays,
    }))
}

fn cmd_faces(path: &PathBuf, dim: usize) -> CmdResult {
    let e = edge_cone(path)?;
    let src = sources(&e);
    let tagged = e.nonsimplicial_three_faces()?;
    let mut faces = Vec::new();
    for f in e.primal_cone.faces_of_dim(dim) {
        if e.spans_face(&f.ray_indices).is_none() && f.is_simplicial() {
            return Err(Failure::Internal(format!("graph and oracle disagree on face {:?}", f.ray_indices)));
        }
        let mut o = json!({
            "rays": f.ray_indices,
            "sources": f.ray_indices.iter().map(|&i| src[i].clone()).collect::<Vec<_>>(),
            "simplicial": f.is_simplicial(),
        });
        if dim == 2 {
            let rays: Vec<_> = f.ray_indices.iter().map(|&i| e.ray(i)).collect();
            o["smooth"] = json!(lattice::is_smooth_ray_set(&rays, e.ctx())?);
        }
        if let Some(t) = tagged.iter().find(|t| t.four_rays == f.ray_indices) {
            o["case_tag"] = json!(t.case_tag.map(|c| c.to_string()));
        }
        faces.push(o);
    }
    Ok(json!({"dim": dim, "count": faces.len(), "faces": faces}))
}

fn cmd_pairs(path: &PathBuf) -> CmdResult {
    let e = edge_cone(path)?;
    let src = sources(&e);
    let pairs: Vec<Value> = e
        .all_pairs()
        .into_iter()
        .map(|p| {
            let [a, b] = p.members;
            json!({
                "rays": [a, b],
                "sources": [src[a].clone(), src[b].clone()],
                "shape": format!("{:?}", p.shape),
                "cc_type": p.cc_type,
                "two_face": p.is_two_face,
            })
        })
        .collect();
    Ok(json!({"pairs": pairs}))
}

fn cmd_t1(path: &PathBuf, degree: &[i64]) -> CmdResult {
    let (cone, labels, r) = cone_and_degree(path, degree)?;
    let cx = CrosscutContext::new(&cone)?;
    let heights: Vec<i64> = lattice_heights(&cx, &r)?;
    let q = cx.crosscut(&r)?;
    let t = cx.t1(&r)?;
    Ok(json!({
        "degree": degree,
        "heights": heights.iter().zip(&labels).map(|(h, l)| json!({"ray": l, "height": h})).collect::<Vec<_>>(),
        "compact_edges": q.compact_edges.len(),
        "compact_two_faces": q.compact_two_faces.len(),
        "v_dim": t.v_dim,
        "constrained_dim": t.constrained_dim,
        "t1_dim": t.t1_dim,
    }))
}

fn lattice_heights(cx: &CrosscutContext, r: &MVector) -> Result<Vec<i64>, Failure> {
    let h = cx.heights(r)?;
    h.iter().map(|x| i64::try_from(x).map_err(|_| Failure::Internal("height exceeds i64".into()))).collect()
}

fn cmd_crosscut(path: &PathBuf, degree: &[i64], svg: Option<&PathBuf>, dot: Option<&PathBuf>) -> CmdResult {
    let (cone, labels, r) = cone_and_degree(path, degree)?;
    let cx = CrosscutContext::new(&cone)?;
    let q = cx.crosscut(&r)?;
    let write = |p: &PathBuf, s: String| {
        std::fs::write(p, s).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
    };
    if let Some(p) = svg {
        write(p, draw::svg(&q, &labels))?;
    }
    if let Some(p) = dot {
        write(p, draw::dot(&q, &labels))?;
    }
    let vertices: Vec<Value> = q
        .vertices
        .iter()
        .map(|v| {
            json!({
                "ray": labels[v.ray],
                "height": i64::try_from(&v.height).unwrap_or(i64::MAX),
                "lattice": v.lattice,
                "point": v.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let edges: Vec<Value> = q.compact_edges.iter().map(|e| json!([labels[e.rays[0]], labels[e.rays[1]]])).collect();
    let faces: Vec<Value> = q
        .compact_two_faces
        .iter()
        .map(|c| json!({"boundary": c.face.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(), "signs": c.signs}))
        .collect();
    Ok(json!({
        "degree": degree,
        "vertices": vertices,
        "compact_edges": edges,
        "compact_two_faces": faces,
        "unbounded_rays": q.unbounded_rays.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
        "empty": q.vertices.is_empty(),
    }))
}

fn cmd_rigidity(path: &PathBuf, bound: i64) -> CmdResult {
    let e = edge_cone(path)?;
    let v = rigidity_verdict(&e, bound)?;
    let mut out = serde_json::to_value(&v).expect("verdict serializes");
    out["family"] = serde_json::to_value(classify_family(&e.graph)?).expect("family serializes");
    Ok(out)
}

fn oracle_limit() -> Result<usize, Failure> {
    match std::env::var("EDGECONE_ORACLE_LIMIT") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("EDGECONE_ORACLE_LIMIT={s} is not a number"))),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

fn cmd_oracle_check(path: &PathBuf) -> CmdResult {
    let g = read_graph(path)?;
    let limit = oracle_limit()?;
    if g.m() + g.n() > limit {
        return Err(Failure::Precondition(format!(
            "m+n = {} exceeds the oracle limit {limit} (set EDGECONE_ORACLE_LIMIT)",
            g.m() + g.n()
        )));
    }
    let e = build_edge_cone(&g)?;
    let mut checks = Vec::new();

    let from_graph: BTreeSet<Vec<i64>> = e.fis.iter().map(|f| lattice_i64(&f.ray(&g).coords)).collect();
    let dual_of_dual = oracle::dualize(&e.dual_cone)?;
    let from_oracle: BTreeSet<Vec<i64>> = (0..dual_of_dual.rays().len())
        .map(|i| lattice_i64(&dual_of_dual.ray_full(i)))
        .collect();
    checks.push(("ray_bijection", from_graph == from_oracle && from_graph.len() == e.fis.len()));

    let k = e.ray_count();
    let mut faces_ok = true;
    let mut subsets: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
    for i in 0..k {
        for j in i + 1..k {
            subsets.push(vec![i, j]);
            for l in j + 1..k {
                subsets.push(vec![i, j, l]);
            }
        }
    }
    for s in &subsets {
        let f = e.primal_cone.minimal_face_containing(s);
        let oracle_says = (f.dim == s.len() && &f.ray_indices == s).then_some(f.dim);
        faces_ok &= e.spans_face(s) == oracle_says;
    }
    checks.push(("face_agreement", faces_ok));
    checks.push(("smooth_codim2", e.smoothness_codim2_report()?.smooth));
    let gens: Vec<MVector> = (0..e.dual_cone.rays().len()).map(|i| e.dual_cone.ray_m(i)).collect();
    checks.push(("hilbert_basis", oracle::hilbert_basis_check(&gens, 3)?));
    checks.push(("dual_dimension", e.dual_cone.dim() == g.m() + g.n() - 1));
    let tags_ok = e.nonsimplicial_three_faces()?.iter().all(|f| f.four_rays.len() == 4 && e.verify_construction(f));
    checks.push(("three_face_tags", tags_ok));

    let all = checks.iter().all(|(_, ok)| *ok);
    let out = json!({
        "checks": checks.iter().map(|(n, ok)| json!({"property": n, "pass": ok})).collect::<Vec<_>>(),
        "pass": all,
    });
    if !all {
        return Err(Failure::Internal(serde_json::to_string_pretty(&out).expect("json")));
    }
    Ok(out)
}

fn lattice_i64(v: &[edgecone::linalg::Int]) -> Vec<i64> {
    edgecone::linalg::to_i64(v).expect("small coordinates")
}

fn cmd_export_cone(path: &PathBuf, dual: bool) -> CmdResult {
    let e = edge_cone(path)?;
    let c = if dual { &e.dual_cone } else { &e.primal_cone };
    debug_assert_eq!(c.side(), if dual { Side::M } else { Side::N });
    Ok(serde_json::from_str(&c.to_json()).expect("cone json"))
}

fn table(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) => format!("{pad}{k}:\n{}", table(x, indent + 2)),
                Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                    let rows: Vec<String> = items.iter().map(|i| format!("{pad}  - {}", flat(i))).collect();
                    format!("{pad}{k}:\n{}", rows.join("\n"))
                }
                _ => format!("{pad}{k}: {}", flat(x)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => format!("{pad}{}", flat(v)),
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(map) => map.iter().map(|(k, x)| format!("{k}={}", flat(x))).collect::<Vec<_>>().join("  "),
        other => other.to_string(),
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Info { input } => cmd_info(input),
        Command::Faces { input, dim } => cmd_faces(input, *dim as usize),
        Command::Pairs { input } => cmd_pairs(input),
        Command::T1 { input, degree } => cmd_t1(input, degree),
        Command::Crosscut { input, degree, svg, dot } => cmd_crosscut(input, degree, svg.as_ref(), dot.as_ref()),
        Command::Rigidity { input, search_bound } => cmd_rigidity(input, *search_bound),
        Command::OracleCheck { input } => cmd_oracle_check(input),
        Command::ExportCone { input, dual } => cmd_export_cone(input, *dual),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(v) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("json"),
                Format::Table => table(&v, 0),
            };
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Precondition(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal cross-check failure: {m}");
            ExitCode::from(3)
        }
    }
}
