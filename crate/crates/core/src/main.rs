use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use edgering::analysis::{self, AnalysisReport, AnalyzeOptions, SweepRow, VerdictStatus};
use edgering::{make_family, parse_graph, FamilySpec, Result};

#[derive(Parser)]
#[command(name = "edgering", version, about = "Regularity of edge rings versus matching numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every invariant of one graph.
    Analyze(AnalyzeArgs),
    /// Check reg K[G] <= mat(G) (resp. mat(G) - 1) on all small connected graphs.
    VerifyTheorem {
        #[arg(long = "nmax")]
        n_max: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sweep the complete / complete bipartite / two-triangle families.
    Families {
        #[arg(long = "rmax")]
        r_max: usize,
        #[arg(long = "lmax")]
        l_max: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Largest regularities among connected graphs with matching number m.
    Q5 {
        #[arg(long)]
        m: usize,
        #[arg(long = "nmax")]
        n_max: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Edge-list file ("d m" header, then m lines "i j").
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    input: Option<PathBuf>,
    /// Family, e.g. `two_triangles_path(2)` or `attach_path(complete(4),1,2)`.
    #[arg(long)]
    family: Option<FamilySpec>,
    /// Search toric ideal generators for non-normal graphs.
    #[arg(long)]
    toric: bool,
    /// Degree bound for the generator search.
    #[arg(long = "qmax")]
    q_max: Option<u32>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn print_report(rep: &AnalysisReport) {
    let g = &rep.graph;
    println!("graph        d = {}, |E| = {}, bipartite = {}, connected = {}", g.d, g.edges, g.bipartite, g.connected);
    println!("mat          {}", rep.mat);
    println!("mu           {} (d - mat = {})", rep.mu, rep.d_minus_mat);
    println!("normal       {}", rep.normal);
    println!("dim P        {} ({} facets)", rep.dim, rep.facet_count);
    println!("min int. q   {}", opt(&rep.min_interior_q));
    println!("h*           {}", rep.h_star.as_ref().map_or("-".into(), |h| format!("{h:?}")));
    let reg = &rep.regularity;
    match reg.certified_up_to {
        Some(q) if reg.value.is_some() => {
            println!("reg          {} (single generator found; certified up to degree {q})", opt(&reg.value))
        }
        Some(q) => println!("reg          unknown (not principal up to degree {q})"),
        None => println!("reg          {}", reg.value.map_or("unknown".into(), |v| v.to_string())),
    }
    if let Some(p) = &rep.generators {
        println!("generators   degrees {:?} (searched up to {})", p.degrees, p.complete_up_to);
    }
    let v = &rep.theorem1;
    match (v.bound_kind, v.bound) {
        (Some(kind), Some(b)) => println!("bound        {} (reg <= {kind} = {b})", v.status),
        _ => println!("bound        {}", v.status),
    }
}

fn print_rows(rows: &[SweepRow]) {
    println!("{:<26}{:<14}{:>4}{:>6}{:>5}{:>5}{:>8}{:>5}{:>5}{:>9}  {:<16}match", "family", "params", "d", "edges", "mat", "mu", "normal", "dim", "reg", "expected", "verdict");
    for r in rows {
        let expected = match (r.expected_reg, r.expected_mat) {
            (Some(e), Some(m)) => format!("{e}/{m}"),
            _ => "-".into(),
        };
        println!(
            "{:<26}{:<14}{:>4}{:>6}{:>5}{:>5}{:>8}{:>5}{:>5}{:>9}  {:<16}{}",
            r.family,
            r.params,
            r.d,
            r.edges,
            r.mat,
            r.mu,
            r.normal,
            r.dim,
            opt(&r.reg),
            expected,
            r.verdict.to_string(),
            r.matched
        );
    }
}

fn write_rows_csv(path: &Option<PathBuf>, rows: &[SweepRow]) -> Result<()> {
    if let Some(path) = path {
        analysis::write_csv(rows, BufWriter::new(File::create(path)?))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze(args) => {
            let (g, default_q) = match (&args.input, &args.family) {
                (Some(path), _) => (parse_graph(&std::fs::read_to_string(path)?)?, None),
                (None, Some(spec)) => {
                    let q = match spec {
                        FamilySpec::TwoTrianglesPath(l) => Some(*l as u32 + 4),
                        _ => None,
                    };
                    (make_family(spec)?, q)
                }
                (None, None) => unreachable!("clap requires --input or --family"),
            };
            let options = AnalyzeOptions { toric: args.toric, q_max: args.q_max.or(default_q), ..AnalyzeOptions::default() };
            let rep = analysis::analyze(&g, &options)?;
            print_report(&rep);
            if let Some(path) = &args.json {
                write_json(path, &rep)?;
            }
            if rep.theorem1.status == VerdictStatus::Violated {
                eprintln!("violation: reg = {} exceeds the bound {}", opt(&rep.regularity.value), opt(&rep.theorem1.bound));
                return Ok(false);
            }
            Ok(true)
        }
        Command::VerifyTheorem { n_max, json } => {
            let summary = analysis::verify_theorem(n_max)?;
            println!(
                "checked {} connected graphs with d <= {}: {} normal ({} bipartite), {} non-normal skipped",
                summary.graphs, n_max, summary.normal, summary.bipartite, summary.non_normal
            );
            println!("violations: {}", summary.violations.len());
            for v in &summary.violations {
                eprintln!("violation: d = {}, mat = {}, reg = {}, bound = {}, edges {:?}", v.d, v.mat, opt(&v.reg), opt(&v.bound), v.edge_list);
            }
            for e in &summary.errors {
                eprintln!("error: {e}");
            }
            if let Some(path) = &json {
                write_json(path, &summary)?;
            }
            Ok(summary.passed())
        }
        Command::Families { r_max, l_max, csv } => {
            let rows = analysis::run_families(r_max, l_max)?;
            print_rows(&rows);
            write_rows_csv(&csv, &rows)?;
            let bad: Vec<&SweepRow> = rows.iter().filter(|r| !r.matched || r.verdict == VerdictStatus::Violated).collect();
            for r in &bad {
                eprintln!("mismatch: {} {} reg {} mat {}", r.family, r.params, opt(&r.reg), r.mat);
            }
            Ok(bad.is_empty())
        }
        Command::Q5 { m, n_max, csv } => {
            let s = analysis::question5_sweep(m, n_max)?;
            println!("matching number {m}, d <= {n_max} ({})", s.scope);
            println!("graphs                 {}", s.graphs);
            println!("normal                 {} (max reg {})", s.normal, opt(&s.max_reg_normal));
            println!("principal non-normal   {} (max reg {})", s.principal, opt(&s.max_reg_principal));
            println!("unresolved             {}", s.unknown);
            write_rows_csv(&csv, &s.rows)?;
            let violated = s.rows.iter().any(|r| r.verdict == VerdictStatus::Violated);
            Ok(!violated)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            let _ = writeln!(io::stderr(), "error: {e}");
            ExitCode::from(2)
        }
    }
}
