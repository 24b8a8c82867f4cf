//! `loopcosets`: command-line tools over the loop-coset library.
//!
//! Subcommands validate loop tables, list cosets and their
//! meet-semilattices, extract and realize coset block designs, compute
//! orbits of relative right translations, enumerate every action table
//! such translations can have on one orbit, and test coset-intersection
//! structure.
//!
//! Exit codes: 0 on success, 1 for domain errors (bad tables, failed
//! preconditions, missing files), 2 for usage errors. All diagnostics go
//! to stderr; stdout and report files are byte-identical across runs
//! with the same inputs and thread count.

mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loopcosets::loops::Side;

#[derive(Parser)]
#[command(name = "loopcosets", version, about = "Coset incidence structures in finite loops")]
struct Cli {
    /// Print wall-clock timing to stderr when done. Timing never goes to
    /// stdout or report files, so those stay reproducible.
    #[arg(long, global = true)]
    timing: bool,

    /// Reserved for future use; every command is deterministic and
    /// ignores it.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

/// A loop plus a subloop named by generators.
#[derive(Args)]
struct SubloopArgs {
    /// Loop table: a file path, a catalog name, or `catalog:NAME`.
    loop_spec: String,

    /// Comma-separated subloop generators; the set is closed
    /// automatically.
    #[arg(long, value_delimiter = ',', required = true, value_name = "ELEMS")]
    subloop: Vec<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(side: SideArg) -> Side {
        match side {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a loop table and check every loop axiom.
    Validate {
        /// Loop table: a file path, a catalog name, or `catalog:NAME`.
        loop_spec: String,
    },

    /// Report which standard identities a loop satisfies.
    Props {
        /// Loop table: a file path, a catalog name, or `catalog:NAME`.
        loop_spec: String,
        /// Emit a JSON report instead of the aligned table.
        #[arg(long)]
        json: bool,
    },

    /// List the cosets of a subloop on one side.
    Cosets {
        #[command(flatten)]
        target: SubloopArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Collapse repeated cosets, keeping first representatives.
        #[arg(long)]
        distinct: bool,
        /// Also print the meet-semilattice the cosets generate.
        #[arg(long)]
        semilattice: bool,
        /// Compare the left and right coset semilattices for isomorphism.
        #[arg(long)]
        compare_lr: bool,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },

    /// Print the intersection-closed family generated by the cosets,
    /// one set per line, smallest first.
    Semilattice {
        #[command(flatten)]
        target: SubloopArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Compare the left and right coset semilattices for isomorphism.
        #[arg(long)]
        compare_lr: bool,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },

    /// Row-partition analysis of a rectangle dump file.
    Partition {
        /// Rectangle file as written by `bol-orbits --dump-rects`.
        rect_file: PathBuf,
    },

    /// Extract, inspect, realize, and compare coset block designs.
    Design {
        #[command(subcommand)]
        action: DesignCommand,
    },

    /// Orbits of the subloop's right translations on the whole loop.
    Orbits {
        #[command(flatten)]
        target: SubloopArgs,
        /// Report per-orbit divisibility and disjoint coset covers.
        #[arg(long)]
        lagrange: bool,
        /// Check each orbit's action table against enumerated rectangles
        /// (a dump directory or a single rectangle file). The rectangles
        /// must come from an enumeration of this subloop's own table;
        /// export it with --dump-subloop.
        #[arg(long, value_name = "PATH")]
        check_against: Option<PathBuf>,
        /// Write the subloop's table, relabeled to 0..m, as a loop file
        /// ready for `bol-orbits --subloop`.
        #[arg(long, value_name = "FILE")]
        dump_subloop: Option<PathBuf>,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },

    /// Enumerate every action table the right translations of a right
    /// Bol subloop can have on a single orbit.
    BolOrbits {
        /// The subloop's own table: a file path, a catalog name, or
        /// `catalog:NAME`.
        #[arg(long, value_name = "LOOP")]
        subloop: String,
        /// Prune branches that would grow beyond this many symbols.
        #[arg(long, value_name = "N")]
        max_symbols: Option<usize>,
        /// Keep at most this many rectangles.
        #[arg(long, value_name = "N")]
        max_rects: Option<usize>,
        /// Worker threads for the search; the output does not depend on
        /// the count.
        #[arg(long, value_name = "N", default_value_t = 1)]
        threads: usize,
        /// Write each rectangle to this directory as `rect-NNNN.rect`.
        #[arg(long, value_name = "DIR")]
        dump_rects: Option<PathBuf>,
        /// Write a JSON summary report to this file.
        #[arg(long, value_name = "FILE")]
        summary: Option<PathBuf>,
    },

    /// Intersections of coset pairs and their shift permutations.
    Intersect {
        #[command(flatten)]
        target: SubloopArgs,
        /// Only this pair of coset representatives.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        pair: Option<Vec<usize>>,
        /// Every representative pair x <= y (the default).
        #[arg(long, conflicts_with = "pair")]
        all_pairs: bool,
        /// Write the records as a JSON report to this file.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// Emit the JSON report on stdout instead of text.
        #[arg(long)]
        json: bool,
    },

    /// Built-in loop tables.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum DesignCommand {
    /// The design whose blocks are the cosets of elements outside the
    /// subloop.
    Extract {
        #[command(flatten)]
        target: SubloopArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Write the design to this file, points renumbered to 0..v.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },

    /// Parameters of a design file: block size, replication, t-design
    /// levels.
    Params {
        design_file: PathBuf,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },

    /// Build a loop whose coset design is the given symmetric design.
    Realize {
        design_file: PathBuf,
        /// Inner subloop: `cyclic` for the cyclic group of the block
        /// size, or any loop source.
        #[arg(long, default_value = "cyclic", value_name = "LOOP")]
        inner: String,
        /// Write the realized loop table to this file instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },

    /// Decide whether two design files are isomorphic.
    Isomorphic {
        design_a: PathBuf,
        design_b: PathBuf,
    },

    /// Search for k-subsets whose left translates form a t-design.
    TranslateSearch {
        /// Loop table: a file path, a catalog name, or `catalog:NAME`.
        loop_spec: String,
        /// Block size of the candidate base sets.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        /// Stop after this many hits.
        #[arg(long, value_name = "N")]
        max_results: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names the loop source resolver accepts.
    List,
    /// Print one catalog table in loop file format.
    Show { name: String },
}

fn main() -> ExitCode {
    // die quietly when stdout is a closed pipe, like other text tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if cli.seed.is_some() {
        eprintln!("note: --seed is reserved; every command is deterministic");
    }
    let started = Instant::now();
    let outcome = commands::run(cli.command);
    if cli.timing {
        eprintln!("elapsed: {:.3?}", started.elapsed());
    }
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
