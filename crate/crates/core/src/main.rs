use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use ncstar::classify::ncstar_connected;
use ncstar::graph::{discretize, TopoGraph};
use ncstar::hyperspace::{discrete_hyperspace, noncompactness_certificate};
use ncstar::classify::ncstar_compact;
use ncstar::path::{ft_path, tangle_path, verify_path};
use ncstar::region::{region_from_subgraph, Region, RegionJson};
use ncstar::report::{atlas_run, classification_report, export, parse_graph_file, Format, Report};
use ncstar::subgraph::Subgraph;
use ncstar::{Error, Result};

#[derive(Parser)]
#[command(name = "ncstar", version, about = "Non-cut subcontinua of finite graphs")]
struct Cli {
    /// Output format: json, dot, or text.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership in the family and report its form.
    Classify { file: PathBuf },
    /// Build the discrete hyperspace and compare with the classifier.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        subdivide: usize,
    },
    /// Grow a start region to the whole graph through non-cut subcontinua.
    Path {
        file: PathBuf,
        /// Region JSON over the smoothed graph, aligned to the 1/k grid.
        #[arg(long)]
        start: PathBuf,
        /// Fine vertex to keep out until the final keyframe (tangles only).
        #[arg(long)]
        avoid: Option<usize>,
        #[arg(long, default_value_t = 2)]
        subdivide: usize,
    },
    /// Search for a sequence of non-cut subcontinua with a cut limit.
    Certificate {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        subdivide: usize,
    },
    /// Run every check over all small connected multigraphs.
    Atlas {
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        subdivide: Vec<usize>,
    },
}

/// Fine subgraph whose realization is exactly `region`.
fn subgraph_of_region(g: &TopoGraph, k: usize, region: &Region) -> Result<Subgraph> {
    let d = discretize(g, k)?;
    let mut s = Subgraph::default();
    for v in 0..d.fine.vertex_count() {
        if region.contains(&d.map.vertex_point(v)) {
            s = s.with_vertex(v);
        }
    }
    for e in 0..d.fine.edge_count() {
        let (u, v) = d.fine.endpoints(e);
        if !(s.has_vertex(u) && s.has_vertex(v)) {
            continue;
        }
        let piece = Subgraph::from_ids(&[u, v], &[e]);
        let r = region_from_subgraph(&d.coarse, &d.map, &piece)?;
        if region.union(&d.coarse, &r) == *region {
            s = s.with_edge(e);
        }
    }
    if region_from_subgraph(&d.coarse, &d.map, &s)? != *region {
        return Err(Error::InvalidStart(format!("region is not aligned to the 1/{k} grid")));
    }
    Ok(s)
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Classify { file } => Ok(classification_report(&parse_graph_file(&file)?)),
        Command::Oracle { file, subdivide } => {
            let g = parse_graph_file(&file)?;
            if subdivide < 2 {
                return Err(Error::SubdivisionTooCoarse(subdivide));
            }
            let (_, hyperspace) = discrete_hyperspace(&g, subdivide)?;
            Ok(Report::Oracle {
                k: subdivide,
                hyperspace,
                classifier_connected: ncstar_connected(&g),
            })
        }
        Command::Path {
            file,
            start,
            avoid,
            subdivide,
        } => {
            let g = parse_graph_file(&file)?;
            let text = std::fs::read_to_string(&start)
                .map_err(|e| Error::Io(format!("{}: {e}", start.display())))?;
            let json: RegionJson = serde_json::from_str(&text).map_err(|e| Error::ParseError {
                line: e.line(),
                message: e.to_string(),
            })?;
            let coarse = discretize(&g, subdivide)?.coarse;
            let region = Region::from_json(&coarse, &json)?;
            let a = subgraph_of_region(&g, subdivide, &region)?;
            let path = match avoid {
                Some(p) => tangle_path(&g, subdivide, &a, p)?,
                None => ft_path(&g, subdivide, &a)?,
            };
            let verification = verify_path(&g, subdivide, &path);
            Ok(Report::Path { path, verification })
        }
        Command::Certificate { file, subdivide } => {
            let g = parse_graph_file(&file)?;
            Ok(Report::Certificate {
                k: subdivide,
                compact: ncstar_compact(&g),
                certificate: noncompactness_certificate(&g, subdivide)?,
            })
        }
        Command::Atlas {
            max_edges,
            subdivide,
        } => Ok(Report::Atlas(atlas_run(max_edges, &subdivide)?)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = cli
        .format
        .parse::<Format>()
        .and_then(|format| run(cli.command).map(|r| (format, r)))
        .and_then(|(format, report)| export(&report, format).map(|bytes| (report, bytes)));
    match outcome {
        Ok((report, bytes)) => {
            let _ = std::io::stdout().write_all(&bytes);
            if report.disagreement() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ Error::InternalInvariantViolation(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
