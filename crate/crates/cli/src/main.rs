use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use domchrom_core::closed_forms::star;
use domchrom_core::coloring::{verify_dominator, Coloring};
use domchrom_core::generators::{self, CaterpillarSpec, GsScheme, GsSpec};
use domchrom_core::harness::{
    self, CampaignOptions, CaterpillarRanges, ExperimentReport, OrientationSweep,
};
use domchrom_core::io;
use domchrom_core::{solve_exact, Error, OrientedTree, SolveOptions};

#[derive(Parser)]
#[command(
    name = "domchrom",
    version,
    about = "Minimum dominator colorings of oriented trees"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads for campaigns.
    #[arg(long, global = true, env = "DOMCHROM_JOBS", default_value_t = 1,
          value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search-node budget per solve.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Edges,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimum number of colors and a certificate.
    Solve { tree: PathBuf },
    /// Check a coloring file against a tree file.
    Verify { tree: PathBuf, coloring: PathBuf },
    /// Generate a tree.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Emit::Edges, global = true)]
        emit: Emit,
    },
    /// Solve every orientation of a tree's underlying graph.
    #[command(group(ArgGroup::new("sweep").required(true).args(["min", "max", "all"])))]
    Orientations {
        tree: PathBuf,
        #[arg(long)]
        min: bool,
        #[arg(long)]
        max: bool,
        #[arg(long)]
        all: bool,
    },
    /// Compare each orientation with its reversal.
    Invariance {
        #[arg(long)]
        max_n: usize,
    },
    /// Leaf-deletion checks.
    Leafdel {
        #[arg(long)]
        max_n: usize,
    },
    /// Extremal values over all orientations of generalized stars.
    Conjecture {
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long, default_value_t = 10)]
        n_cap: usize,
    },
    /// Every orientation of stars.
    Star {
        #[arg(long)]
        m_max: usize,
    },
    /// Bounds on seeded random caterpillars.
    Caterpillar {
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        spine_min: usize,
        #[arg(long, default_value_t = 9)]
        spine_max: usize,
    },
    /// Minimum over all orientations of each path.
    Paths {
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// Rooted trees against n - l + 1.
    Rooted {
        #[arg(long)]
        max_n: usize,
    },
    /// Branch-and-bound against brute force.
    Oracle {
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Path 0 -> 1 -> ... with optional arc flips.
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        mask: u64,
    },
    /// Star with center 0; mask bit i points leaf i+1 at the center.
    Star {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        mask: u64,
    },
    /// Generalized star: m branches of length k.
    Gs {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// out, in, layered, or an arc-flip mask.
        #[arg(long, default_value = "out", value_parser = parse_scheme)]
        scheme: GsScheme,
    },
    /// Caterpillar from a spine length and legs.
    Caterpillar {
        #[arg(long)]
        spine_len: usize,
        /// Comma-separated `index:count` pairs.
        #[arg(long, default_value = "", value_parser = parse_legs)]
        legs: Legs,
        #[arg(long, default_value_t = 0)]
        spine_mask: u64,
        #[arg(long, default_value_t = 0)]
        leg_mask: u64,
    },
    /// Uniform random labeled tree from the global seed.
    Random {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone)]
struct Legs(Vec<(usize, usize)>);

fn parse_scheme(s: &str) -> Result<GsScheme, String> {
    match s {
        "out" => Ok(GsScheme::OutRootCenter),
        "in" => Ok(GsScheme::InRootCenter),
        "layered" => Ok(GsScheme::Layered),
        mask => mask
            .parse()
            .map(GsScheme::Mask)
            .map_err(|_| format!("expected out, in, layered or a mask, found {mask:?}")),
    }
}

fn parse_legs(s: &str) -> Result<Legs, String> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|pair| {
            let (i, c) = pair
                .split_once(':')
                .ok_or_else(|| format!("expected index:count, found {pair:?}"))?;
            let i = i
                .trim()
                .parse()
                .map_err(|_| format!("bad index in {pair:?}"))?;
            let c = c
                .trim()
                .parse()
                .map_err(|_| format!("bad count in {pair:?}"))?;
            Ok((i, c))
        })
        .collect::<Result<_, _>>()
        .map(Legs)
}

/// What a successful command produced.
struct Outcome {
    text: String,
    ok: bool,
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(fs::read_to_string(path)?)
}

fn render_report(report: &ExperimentReport, format: Format) -> Result<Outcome, Error> {
    let text = match format {
        Format::Json => io::report_to_json(report)?,
        Format::Csv => io::report_to_csv(report)?,
    };
    Ok(Outcome {
        text,
        ok: report.summary.holds_at_this_scale && report.revalidate_witnesses().is_empty(),
    })
}

fn pretty(value: &serde_json::Value) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    let solve = SolveOptions {
        node_budget: g.budget,
        ..SolveOptions::default()
    };
    let opts = CampaignOptions {
        jobs: g.jobs as usize,
        solve,
    };
    let report = match cli.command {
        Command::Solve { tree } => {
            let t = io::parse_tree_file(&read(&tree)?)?;
            let result = solve_exact(&t, &solve)?;
            let text = match g.format {
                Format::Json => pretty(&json!({ "instance": t, "result": result }))?,
                Format::Csv => {
                    let mut text = String::from("vertex,color\n");
                    for (v, c) in result.certificate.coloring.as_slice().iter().enumerate() {
                        text.push_str(&format!("{v},{c}\n"));
                    }
                    text + &format!("# instance: {t}\n# chi: {}\n", result.chi)
                }
            };
            return Ok(Outcome { text, ok: true });
        }
        Command::Verify { tree, coloring } => {
            let t = io::parse_tree_file(&read(&tree)?)?;
            let raw = io::parse_coloring_file(&read(&coloring)?, t.n())?;
            let c = Coloring::from_assignment(&raw);
            let (value, ok) = match verify_dominator(&t, &c) {
                Ok(cert) => (
                    json!({ "valid": true, "colors": cert.num_colors(), "certificate": cert }),
                    true,
                ),
                Err(rejection) => {
                    let messages: Vec<String> = rejection
                        .violations()
                        .iter()
                        .map(|v| v.to_string())
                        .collect();
                    (json!({ "valid": false, "violations": messages }), false)
                }
            };
            return Ok(Outcome {
                text: pretty(&value)?,
                ok,
            });
        }
        Command::Gen { family, emit } => {
            let t = generate(family, g.seed)?;
            let text = match emit {
                Emit::Edges => io::write_tree_file(&t),
                Emit::Dot => io::to_dot(&t, None),
            };
            return Ok(Outcome { text, ok: true });
        }
        Command::Orientations { tree, min, max, .. } => {
            let t = io::parse_tree_file(&read(&tree)?)?;
            let sweep = if min {
                OrientationSweep::Min
            } else if max {
                OrientationSweep::Max
            } else {
                OrientationSweep::All
            };
            harness::sweep_orientations(&t, sweep, &opts)?
        }
        Command::Invariance { max_n } => harness::check_reversal_invariance(max_n, &opts)?,
        Command::Leafdel { max_n } => harness::check_leaf_deletion(max_n, &opts)?,
        Command::Conjecture {
            m_max,
            k_max,
            n_cap,
        } => harness::explore_conjecture_gs(m_max, k_max, n_cap, &opts)?,
        Command::Star { m_max } => harness::check_star_proposition(m_max, &opts)?,
        Command::Caterpillar {
            samples,
            spine_min,
            spine_max,
        } => {
            let ranges = CaterpillarRanges {
                spine_min,
                spine_max,
                ..CaterpillarRanges::default()
            };
            harness::check_caterpillar_bounds(samples, g.seed, &ranges, &opts)?
        }
        Command::Paths { min_n, max_n } => harness::check_path_minimum(min_n, max_n, &opts)?,
        Command::Rooted { max_n } => harness::check_rooted_formula(max_n, &opts)?,
        Command::Oracle { max_n } => harness::check_oracle(max_n, &opts)?,
    };
    render_report(&report, g.format)
}

fn generate(family: Family, seed: u64) -> Result<OrientedTree, Error> {
    Ok(match family {
        Family::Path { n, mask } => {
            if n == 0 {
                return Err(Error::SpecInvalid("a path needs n >= 1".into()));
            }
            if n - 1 < 64 && mask >> (n - 1) != 0 {
                return Err(Error::SpecInvalid(format!(
                    "mask {mask} has bits beyond {} arcs",
                    n - 1
                )));
            }
            generators::orient(&generators::path(n), mask)
        }
        Family::Star { m, mask } => {
            if m >= 64 || mask >> m != 0 {
                return Err(Error::SpecInvalid(format!(
                    "mask {mask} does not fit {m} leaves"
                )));
            }
            star(m, mask)
        }
        Family::Gs { m, k, scheme } => generators::gs(&GsSpec::new(m, k, scheme))?,
        Family::Caterpillar {
            spine_len,
            legs,
            spine_mask,
            leg_mask,
        } => generators::caterpillar(&CaterpillarSpec {
            spine_len,
            legs: legs.0,
            spine_mask,
            leg_mask,
        })?,
        Family::Random { n } => {
            if n == 0 {
                return Err(Error::SpecInvalid("a tree needs n >= 1".into()));
            }
            generators::random_tree(n, seed)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.global.output.clone();
    match run(cli) {
        Ok(outcome) => {
            let written = match &output {
                Some(path) => fs::write(path, &outcome.text),
                None => std::io::stdout().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
