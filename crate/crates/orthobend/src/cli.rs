//! Command-line front end: parse a graph, decide the bend budget, and emit
//! the representation as JSON and the drawing as SVG. Exit codes: 0 when a
//! representation within the budget exists, 1 when it does not (or the graph
//! is not planar), 2 for usage or input errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::gen;
use crate::graph::{Format, Graph};
use crate::oracle::brute_force_bend_min_with_guard;
use crate::planar::PlanarError;
use crate::render::{compact, Drawing};
use crate::solver::{bend_minimum_solution, solve, Solution};

#[derive(Parser)]
#[command(name = "orthobend", version, about = "Bend-minimum planar orthogonal drawings")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it as graph JSON.
    Gen(GenArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Graph file to read.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Bend budget; defaults to a bound no representation exceeds.
    #[arg(long, conflicts_with = "rectilinear")]
    bends: Option<usize>,
    /// Allow no bends at all (same as --bends 0).
    #[arg(long)]
    rectilinear: bool,
    /// Write the representation JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write an SVG drawing here.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Pixels per grid unit in the SVG.
    #[arg(long, default_value_t = 20)]
    scale: u32,
    /// Cross-check the bend count against the exhaustive oracle.
    #[arg(long)]
    oracle: bool,
    /// Largest vertex count the oracle accepts.
    #[arg(long, default_value_t = 10)]
    max_oracle_n: usize,
    /// Machine-readable JSON on stdout and stderr.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Vertex count of the random instance.
    #[arg(long, default_value_t = 8, conflicts_with = "ladder")]
    n: usize,
    /// Edge target of the random instance.
    #[arg(long, default_value_t = 10, conflicts_with = "ladder")]
    edges: usize,
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep the instance connected.
    #[arg(long)]
    connected: bool,
    /// Emit the m-rung ladder instead of a random instance.
    #[arg(long)]
    ladder: Option<usize>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

pub fn run_cli(args: &[String]) -> i32 {
    let argv = std::iter::once("orthobend".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.command {
        Some(Command::Gen(g)) => run_gen(&g),
        None => run_solve(&cli.run),
    }
}

fn complain(json: bool, msg: &str) -> i32 {
    if json {
        eprintln!("{}", json!({ "error": msg }));
    } else {
        eprintln!("error: {msg}");
    }
    2
}

fn run_gen(a: &GenArgs) -> i32 {
    let g = match a.ladder {
        Some(m) if m < 2 => return complain(false, "a ladder needs at least 2 rungs"),
        Some(m) => gen::ladder(m),
        None if a.connected => gen::random_connected_planar(a.n, a.edges, a.seed),
        None => gen::random_planar(a.n, a.edges, a.seed),
    };
    let text = g.to_json();
    match &a.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                return complain(false, &format!("cannot write {}: {e}", path.display()));
            }
        }
        None => println!("{text}"),
    }
    0
}

fn run_solve(a: &RunArgs) -> i32 {
    let Some(input) = &a.input else {
        return complain(a.json, "--input is required (or use the gen subcommand)");
    };
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => return complain(a.json, &format!("cannot read {}: {e}", input.display())),
    };
    let format = match a.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Dot) => Format::Dot,
        None if input.extension().is_some_and(|x| x == "dot" || x == "gv") => Format::Dot,
        None => Format::Json,
    };
    let g = match Graph::parse(&text, format) {
        Ok(g) => g,
        Err(e) => return complain(a.json, &format!("bad input graph: {e}")),
    };
    // With an explicit budget this is a decision problem; without one, ramp
    // the budget up from zero to find the unconstrained minimum cheaply.
    let constrained = match (a.bends, a.rectilinear) {
        (Some(b), _) => Some(b),
        (None, true) => Some(0),
        (None, false) => None,
    };
    let solved = match constrained {
        Some(b) => solve(&g, b),
        None => bend_minimum_solution(&g),
    };
    let outcome = match solved {
        Ok(o) => o,
        Err(PlanarError::NotPlanar) => {
            report(a.json, &json!({ "status": "not-planar" }), "the graph is not planar");
            return 1;
        }
        Err(e) => return complain(a.json, &format!("solver rejected the input: {e}")),
    };
    let budget = constrained
        .or(outcome.as_ref().map(|s| s.total_bends))
        .unwrap_or(2 * g.edge_count() + 8);

    let oracle_bends = if a.oracle {
        match brute_force_bend_min_with_guard(&g, budget, a.max_oracle_n) {
            Ok(o) => Some(o),
            Err(PlanarError::TooLarge { n, max }) => {
                return complain(a.json, &format!("oracle is limited to {max} vertices, got {n}"));
            }
            Err(e) => return complain(a.json, &format!("oracle failed: {e}")),
        }
    } else {
        None
    };
    if let Some(ob) = &oracle_bends {
        let sb = outcome.as_ref().map(|s| s.total_bends);
        if *ob != sb {
            return complain(a.json, &format!("solver found {sb:?} bends but the oracle {ob:?}"));
        }
    }

    let Some(sol) = outcome else {
        report(
            a.json,
            &json!({ "status": "over-budget", "budget": budget }),
            &format!("no representation within {budget} bends"),
        );
        return 1;
    };

    if let Some(path) = &a.out {
        let comps: Vec<Value> = sol
            .components
            .iter()
            .map(|c| {
                json!({
                    "vertices": c.vertices,
                    "bends": c.bends,
                    "representation": c.rep.as_ref().map(|(rep, _)| rep.to_json()),
                })
            })
            .collect();
        let doc = json!({ "bends": sol.total_bends, "components": comps });
        let rendered = serde_json::to_string_pretty(&doc).expect("value serializes");
        if let Err(e) = std::fs::write(path, rendered + "\n") {
            return complain(a.json, &format!("cannot write {}: {e}", path.display()));
        }
    }
    if let Some(path) = &a.svg {
        let svg = render_svg(&sol, a.scale.max(1));
        if let Err(e) = std::fs::write(path, svg) {
            return complain(a.json, &format!("cannot write {}: {e}", path.display()));
        }
    }

    let mut summary = json!({
        "status": "ok",
        "bends": sol.total_bends,
        "budget": budget,
        "components": sol.components.iter().map(|c| json!({
            "vertices": c.vertices,
            "bends": c.bends,
        })).collect::<Vec<_>>(),
    });
    if let Some(Some(ob)) = oracle_bends {
        summary["oracle_bends"] = json!(ob);
    }
    report(
        a.json,
        &summary,
        &format!("bend minimum {} within budget {budget}", sol.total_bends),
    );
    0
}

fn report(machine: bool, doc: &Value, human: &str) {
    if machine {
        println!("{doc}");
    } else {
        println!("{human}");
    }
}

/// All components side by side on one grid, two units apart.
fn placed_drawings(sol: &Solution) -> Vec<(Drawing, Vec<usize>)> {
    let mut out = Vec::new();
    let mut dx = 0i64;
    for c in &sol.components {
        let (mut dr, labels) = match &c.rep {
            Some((rep, _)) => (compact(rep), c.vertices.clone()),
            None => (
                Drawing { points: vec![(0, 0)], polylines: Vec::new() },
                c.vertices.clone(),
            ),
        };
        let (w, _) = dr.bbox();
        dr.translate(dx, 0);
        dx += w + 2;
        out.push((dr, labels));
    }
    out
}

fn render_svg(sol: &Solution, scale: u32) -> String {
    let placed = placed_drawings(sol);
    let s = scale as i64;
    let (mut gw, mut gh) = (0i64, 0i64);
    for (dr, _) in &placed {
        let (w, h) = dr.bbox();
        gw = gw.max(w);
        gh = gh.max(h);
    }
    // One grid unit of margin on every side; y grows upward on the grid.
    let px = |x: i64| (x + 1) * s;
    let py = |y: i64| (gh - y + 1) * s;
    let mut body = String::new();
    for (dr, labels) in &placed {
        for pl in &dr.polylines {
            let pts: Vec<String> = pl.iter().map(|p| format!("{},{}", px(p.0), py(p.1))).collect();
            body.push_str(&format!(
                "  <polyline fill=\"none\" stroke=\"#333\" stroke-width=\"2\" points=\"{}\"/>\n",
                pts.join(" ")
            ));
        }
        for (i, p) in dr.points.iter().enumerate() {
            body.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#0a62c9\"/>\n",
                px(p.0),
                py(p.1),
                (s / 5).max(3)
            ));
            body.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"#555\">{}</text>\n",
                px(p.0) + s / 4,
                py(p.1) - s / 4,
                (s / 2).max(8),
                labels[i]
            ));
        }
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n{}</svg>\n",
        (gw + 2) * s,
        (gh + 2) * s,
        (gw + 2) * s,
        (gh + 2) * s,
        body
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_cli(&["--bends".into(), "3".into()]), 2);
        assert_eq!(run_cli(&["--input".into(), "/no/such/file".into()]), 2);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run_cli(&["--help".into()]), 0);
    }
}
