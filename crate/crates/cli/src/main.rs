//! `affaut`: build and check Shi-arrangement automata and Kazhdan-Lusztig
//! cells of affine Weyl groups from the command line.
//!
//! Exit status: 0 on success or acceptance, 1 on rejection or a failed
//! check, 2 on a usage error.

mod config;
mod svg;

use std::fs;
use std::process::ExitCode;

use affine_automata::alcove::{format_word, parse_word};
use affine_automata::arrangement::{enumerate_regions, regions_to_json};
use affine_automata::automaton::Automaton;
use affine_automata::cells::{all_cell_regions, cell_automaton_from, CellsReport};
use affine_automata::kl::{cells_stabilized, degree, KlTable, Side};
use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use config::{usage, CommonArgs, Format, RunConfig, UsageError};

#[derive(Debug, Parser)]
#[command(
    name = "affaut",
    version,
    about = "Automata for reduced words and cells of affine Weyl groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the arrangement automaton and print per-length word counts.
    Automaton(CommonArgs),
    /// Exit 0 if the word is reduced (accepted), 1 otherwise.
    Accept {
        #[command(flatten)]
        common: CommonArgs,
        /// Generators as space-separated integers; empty for the identity.
        #[arg(num_args = 0.., allow_hyphen_values = false)]
        word: Vec<String>,
    },
    /// List the regions of the arrangement.
    Regions(CommonArgs),
    /// Kazhdan-Lusztig polynomials on the ball of radius --max-len.
    Kl(CommonArgs),
    /// Left or right W-graph on the ball of radius --max-len.
    Wgraph {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = WSide::Left)]
        side: WSide,
    },
    /// Stabilized left cells, their regions, and their automata.
    Cells(CommonArgs),
    /// Rank-2 picture of the arrangement and the alcoves up to --max-len.
    Svg {
        #[command(flatten)]
        common: CommonArgs,
        /// Fill alcoves by stable left cell.
        #[arg(long)]
        color_cells: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WSide {
    Left,
    Right,
}

/// Writes the artifact to `--out`, or to stdout when no path is given.
fn emit(cfg: &RunConfig, artifact: &str) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => {
            fs::write(path, artifact).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{artifact}");
            Ok(())
        }
    }
}

/// Summary lines go to stdout unless the artifact itself does.
fn report(cfg: &RunConfig, text: &str) {
    if cfg.out.is_none() && cfg.format != Format::Text {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
}

fn cmd_automaton(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    cfg.require_format(&[Format::Text, Format::Json, Format::Dot], "automaton")?;
    let aut = Automaton::from_arrangement(&cfg.group, &cfg.spec);
    let mut text = format!(
        "automaton for {} {}: {} states, alphabet {}\nlength\twords\n",
        cfg.root_system().name(),
        cfg.spec,
        aut.num_states(),
        aut.alphabet_size()
    );
    for (l, c) in aut.count_words(cfg.max_len).iter().enumerate() {
        text.push_str(&format!("{l}\t{c}\n"));
    }
    match cfg.format {
        Format::Json => emit(cfg, &aut.to_json()?)?,
        Format::Dot => emit(cfg, &aut.to_dot())?,
        _ => {}
    }
    report(cfg, &text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_accept(cfg: &RunConfig, word: &[String]) -> anyhow::Result<ExitCode> {
    cfg.require_format(&[Format::Text], "accept")?;
    let word = parse_word(&word.join(" ")).map_err(|e| usage(format!("bad word: {e}")))?;
    let aut = Automaton::from_arrangement(&cfg.group, &cfg.spec);
    let accepted = aut.accepts(&word).map_err(|e| usage(e.to_string()))?;
    println!("{}", if accepted { "accept" } else { "reject" });
    Ok(if accepted {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_regions(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    cfg.require_format(&[Format::Text, Format::Json], "regions")?;
    let regions = enumerate_regions(&cfg.group, &cfg.spec);
    if cfg.format == Format::Json {
        emit(cfg, &regions_to_json(&cfg.group, &regions)?)?;
    } else {
        let mut text = format!(
            "{} regions for {} {}\n",
            regions.len(),
            cfg.root_system().name(),
            cfg.spec
        );
        for r in &regions {
            text.push_str(&format!(
                "{:?}\t{}\n",
                r.strips,
                format_word(&cfg.group.word_of(&r.witness))
            ));
        }
        emit(cfg, &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kl(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    cfg.require_format(&[Format::Text, Format::Json], "kl")?;
    let table = KlTable::new(&cfg.group, cfg.max_len);
    let entries = table.entries().count();
    let max_degree = table
        .entries()
        .filter_map(|(_, _, p)| degree(p))
        .max()
        .unwrap_or(0);
    let mu_pairs: usize = (0..table.ball().len())
        .map(|w| table.mu_pairs(w).len())
        .sum();
    let text = format!(
        "{} ball of radius {}: {} elements, {entries} nonzero polynomials, max degree {max_degree}, {mu_pairs} mu pairs\n",
        cfg.root_system().name(),
        cfg.max_len,
        table.ball().len()
    );
    if cfg.format == Format::Json {
        emit(cfg, &table.to_json()?)?;
    }
    report(cfg, &text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_wgraph(cfg: &RunConfig, side: WSide) -> anyhow::Result<ExitCode> {
    cfg.require_format(&[Format::Text, Format::Dot], "wgraph")?;
    let table = KlTable::new(&cfg.group, cfg.max_len);
    let side = match side {
        WSide::Left => Side::Left,
        WSide::Right => Side::Right,
    };
    let graph = table.w_graph(side);
    let edges: usize = graph.edges.iter().map(Vec::len).sum();
    let text = format!(
        "{:?} W-graph of {} radius {}: {} vertices, {edges} edges\n",
        side,
        cfg.root_system().name(),
        cfg.max_len,
        graph.num_vertices()
    );
    if cfg.format == Format::Dot {
        emit(cfg, &graph.to_dot(table.ball()))?;
    }
    report(cfg, &text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_cells(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    cfg.require_format(&[Format::Text, Format::Json], "cells")?;
    let table = KlTable::new(&cfg.group, cfg.stability_len);
    let cells = cells_stabilized(&table, cfg.max_len, Side::Left)?;
    let reports = all_cell_regions(&cells, &cfg.spec, table.ball());
    let full = Automaton::from_arrangement(&cfg.group, &cfg.spec);

    let mut text = format!(
        "left cells of {} on radius {} (checked against {}), {}\nlabel\tsize\tregions\tstable\texact\tstates\tname\n",
        cfg.root_system().name(),
        cfg.max_len,
        cfg.stability_len,
        cfg.spec
    );
    for r in &reports {
        let states = if r.stable && r.exact_on_ball {
            cell_automaton_from(&full, r)?
                .minimize()
                .num_states()
                .to_string()
        } else {
            "-".to_string()
        };
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{states}\t{}\n",
            r.label,
            r.size_in_ball,
            r.regions.len(),
            r.stable,
            r.exact_on_ball,
            format_word(&r.name)
        ));
    }
    let unstable = reports.iter().filter(|r| !r.stable).count();
    let inexact = reports
        .iter()
        .filter(|r| r.stable && !r.exact_on_ball)
        .count();
    let stable = reports.len() - unstable;
    text.push_str(&format!(
        "{} of {stable} stable cells are unions of regions; {unstable} unstable fragments\n",
        stable - inexact
    ));

    if cfg.format == Format::Json {
        emit(
            cfg,
            &CellsReport::new(&cells, &reports, table.ball()).to_json()?,
        )?;
        report(cfg, &text);
    } else {
        emit(cfg, &text)?;
    }

    if unstable > 0 && !cfg.allow_unstable {
        eprintln!("{unstable} cell fragments did not stabilize; raise --stability-len or pass --allow-unstable");
        return Ok(ExitCode::from(1));
    }
    if inexact > 0 {
        eprintln!(
            "{inexact} stable cells are not unions of regions for {}",
            cfg.spec
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_svg(cfg: &RunConfig, color_cells: bool) -> anyhow::Result<ExitCode> {
    cfg.require_format(&[Format::Text, Format::Svg], "svg")?;
    if cfg.root_system().rank() != 2 {
        return Err(usage(format!(
            "pictures are only supported in rank 2, not {}",
            cfg.root_system().name()
        )));
    }
    let picture = if color_cells {
        let table = KlTable::new(&cfg.group, cfg.stability_len);
        let cells = cells_stabilized(&table, cfg.max_len, Side::Left)?;
        let ball = cfg.group.ball(cfg.max_len);
        let mut colouring = vec![None; ball.len()];
        for f in cells.stable_fragments() {
            for &x in &f.members {
                colouring[x] = Some(f.label);
            }
        }
        svg::render(&ball, &cfg.spec, Some(&colouring))
    } else {
        svg::render(&cfg.group.ball(cfg.max_len), &cfg.spec, None)
    };
    emit(cfg, &picture)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Automaton(args) => cmd_automaton(&RunConfig::from_args(args)?),
        Command::Accept { common, word } => cmd_accept(&RunConfig::from_args(common)?, word),
        Command::Regions(args) => cmd_regions(&RunConfig::from_args(args)?),
        Command::Kl(args) => cmd_kl(&RunConfig::from_args(args)?),
        Command::Wgraph { common, side } => cmd_wgraph(&RunConfig::from_args(common)?, *side),
        Command::Cells(args) => cmd_cells(&RunConfig::from_args(args)?),
        Command::Svg {
            common,
            color_cells,
        } => cmd_svg(&RunConfig::from_args(common)?, *color_cells),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
