use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use symgraph::catalog::{catalog_group, Family, GroupRecipe};
use symgraph::forge::{Graph, GraphDocument};
use symgraph::lab::{analyze, AnalysisOptions, NamedGroup, DEFAULT_AUT_VERTEX_CAP};
use symgraph::perm::{GroupDocument, PermGroup, DEFAULT_ELEMENT_CAP};
use symgraph::verify::{verify_example, write_construction, ConstructOptions, VerifyOptions};

#[derive(Parser)]
#[command(name = "symgraph", version, about = "Build symmetric graphs and analyze their symmetry")]
struct Cli {
    /// Largest group order that may be enumerated element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap_elements: u128,
    /// Largest vertex count for the exact automorphism-group search.
    #[arg(long, global = true, default_value_t = DEFAULT_AUT_VERTEX_CAP)]
    cap_aut_vertices: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a built-in example or a catalog group and write interchange files.
    Construct(ConstructArgs),
    /// Analyze a graph under a group action and write a report.
    Analyze(AnalyzeArgs),
    /// Construct, analyze and check a built-in example.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Example id (ex-5.1.1, ex-5.1.2, ex-5.1.3, ex-5.2.1, ex-5.2.2, complete-<n>).
    #[arg(long, conflicts_with = "family")]
    example: Option<String>,
    /// Catalog family (psl2, pgl2, pgammal2, psl2-ext, sym, alt, cyclic, dihedral, elem-abelian, regular).
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Comma-separated cyclic factor orders for `regular`.
    #[arg(long, value_delimiter = ',')]
    moduli: Vec<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    group: PathBuf,
    /// Normal subgroup to classify; may be repeated.
    #[arg(long)]
    normal: Vec<PathBuf>,
    /// Report path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    example: String,
    /// Also check every valid choice of subgroups and `x`, up to `--choice-limit`.
    #[arg(long)]
    enumerate_choices: bool,
    #[arg(long, default_value_t = 16)]
    choice_limit: usize,
    /// Directory for construction files, `report.json` and `outcome.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

fn load_group(path: &Path) -> Result<NamedGroup> {
    let doc: GroupDocument = read_json(path)?;
    let group = PermGroup::from_document(&doc).with_context(|| format!("group in {}", path.display()))?;
    Ok(NamedGroup::new(doc.name.clone().unwrap_or_else(|| stem(path)), group))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn recipe(a: &ConstructArgs, family: &str) -> Result<GroupRecipe> {
    let f = Family::parse(family)?;
    let need = |v: Option<usize>, flag: &str| v.with_context(|| format!("family {family} needs --{flag}"));
    Ok(match f {
        Family::Psl2 | Family::Pgl2 | Family::PGammaL2 | Family::Psl2ExtByFieldAut => GroupRecipe::Projective {
            family: f,
            q: need(a.q.map(|q| q as usize), "q")? as u32,
        },
        Family::Sym | Family::Alt | Family::Cyclic | Family::Dihedral => GroupRecipe::Degree {
            family: f,
            n: need(a.n, "n")?,
        },
        Family::ElemAbelian => GroupRecipe::ElemAbelian {
            p: need(a.p.map(|p| p as usize), "p")? as u32,
            k: need(a.k.map(|k| k as usize), "k")? as u32,
        },
        Family::RegularRep => {
            if a.moduli.is_empty() {
                bail!("family {family} needs --moduli");
            }
            GroupRecipe::AbelianRegular {
                moduli: a.moduli.clone(),
            }
        }
    })
}

fn construct(cli: &Cli, a: &ConstructArgs) -> Result<ExitCode> {
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    if let Some(id) = &a.example {
        let spec = symgraph::verify::example_spec(id)?;
        let opts = ConstructOptions {
            element_cap: cli.cap_elements,
            ..ConstructOptions::default()
        };
        let c = symgraph::verify::construct_example(&spec, &opts)?;
        let files = write_construction(&c, &a.out)?;
        println!(
            "{id}: {} vertices, {} edges; wrote {}",
            c.graph.vertex_count(),
            c.graph.edge_count(),
            files.join(", ")
        );
        return Ok(ExitCode::SUCCESS);
    }
    let Some(family) = &a.family else {
        bail!("construct needs --example or --family");
    };
    let r = recipe(a, family)?;
    let g = catalog_group(&r)?;
    let name = match (a.q, a.n) {
        (Some(q), _) => format!("{family}({q})"),
        (_, Some(n)) => format!("{family}({n})"),
        _ => family.clone(),
    };
    let doc = g.to_document(Some(name.clone()));
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    write_file(&a.out.join("group.json"), &text)?;
    println!("{name}: degree {}, order {}; wrote group.json", g.degree(), g.order());
    Ok(ExitCode::SUCCESS)
}

fn analyze_cmd(cli: &Cli, a: &AnalyzeArgs) -> Result<ExitCode> {
    let raw: Value = read_json(&a.graph)?;
    let doc: GraphDocument =
        serde_json::from_value(raw).with_context(|| format!("graph document {}", a.graph.display()))?;
    let graph = Graph::from_document(&doc).with_context(|| format!("graph in {}", a.graph.display()))?;
    let g = load_group(&a.group)?;
    let normals = a.normal.iter().map(|p| load_group(p)).collect::<Result<Vec<_>>>()?;
    let opts = AnalysisOptions {
        element_cap: cli.cap_elements,
        aut_vertex_cap: cli.cap_aut_vertices,
    };
    let name = doc.name.clone().unwrap_or_else(|| stem(&a.graph));
    let report = analyze(&name, &graph, &g, &normals, &opts)?;
    match &a.out {
        Some(p) => write_file(p, &report.to_json())?,
        None => print!("{}", report.to_json()),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(cli: &Cli, a: &VerifyArgs) -> Result<ExitCode> {
    let opts = VerifyOptions {
        construct: ConstructOptions {
            element_cap: cli.cap_elements,
            ..ConstructOptions::default()
        },
        analysis: AnalysisOptions {
            element_cap: cli.cap_elements,
            aut_vertex_cap: cli.cap_aut_vertices,
        },
    };
    let v = verify_example(&a.example, &opts, a.enumerate_choices.then_some(a.choice_limit))?;
    let o = &v.outcome;
    println!(
        "{}: group order {}, {} vertices, {} edges",
        o.id, o.digests.group_order, o.digests.vertex_count, o.digests.edge_count
    );
    if let Some(c) = &o.choice {
        println!("choice {} ({} qualifying x)", c.context, c.qualifying_x);
    }
    for c in &o.claims {
        let status = if c.pass { "PASS" } else { "FAIL" };
        println!("{status} {}: expected {}, observed {}", c.claim, c.expected, c.observed);
    }
    if let Some(e) = &o.enumeration {
        println!(
            "{} choice tuples{}; outcomes {}",
            e.tuples,
            if e.truncated { " (truncated)" } else { "" },
            if e.agree { "agree" } else { "DISAGREE" }
        );
    }
    println!("{} in {:.2?}", if o.pass { "PASS" } else { "FAIL" }, o.timing);
    if let Some(dir) = &a.out {
        write_construction(&v.construction, dir)?;
        write_file(&dir.join("report.json"), &v.report.to_json())?;
        write_file(&dir.join("outcome.json"), &o.to_json())?;
    }
    Ok(if o.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => construct(&cli, a),
        Command::Analyze(a) => analyze_cmd(&cli, a),
        Command::Verify(a) => verify_cmd(&cli, a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
