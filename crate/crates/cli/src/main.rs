use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use laman_cli::{parse_instance, run, CliError, Format, Mode, RunOptions};
use laman_core::enumeration::ParentCheck;

/// Enumerate every non-crossing Laman framework on a planar point set that
/// contains a given set of constraint bars.
#[derive(Parser, Debug)]
#[command(name = "laman", version)]
struct Args {
    /// Instance file: n, n coordinate lines, m, m constraint lines `u v`.
    input: PathBuf,
    /// One JSON object per line instead of `L k: (u,v)...`.
    #[arg(long)]
    json: bool,
    /// Print only the number of frameworks.
    #[arg(long, conflicts_with_all = ["root_only", "verify"])]
    count_only: bool,
    /// Print only the root framework.
    #[arg(long, conflicts_with_all = ["verify", "max_outputs", "slow_parent_check"])]
    root_only: bool,
    /// Write one SVG per framework into this directory.
    #[arg(long, value_name = "DIR")]
    svg_dir: Option<PathBuf>,
    /// Check the output against brute force (at most 8 points).
    #[arg(long)]
    verify: bool,
    /// Decide children by computing their parents.
    #[arg(long)]
    slow_parent_check: bool,
    /// Stop after K frameworks.
    #[arg(long, value_name = "K")]
    max_outputs: Option<u64>,
    /// Add search-tree depth and the exchanged edge pair to each record.
    #[arg(long)]
    tree: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = RunOptions {
        mode: if args.count_only {
            Mode::CountOnly
        } else if args.root_only {
            Mode::RootOnly
        } else if args.verify {
            Mode::Verify
        } else {
            Mode::Enumerate
        },
        format: if args.json { Format::Json } else { Format::Text },
        svg_dir: args.svg_dir,
        parent_check: if args.slow_parent_check {
            ParentCheck::Definitional
        } else {
            ParentCheck::Fast
        },
        max_outputs: args.max_outputs,
        tree: args.tree,
    };
    let result = parse_instance(&args.input).and_then(|inst| run(&inst, &opts, &mut io::stdout().lock()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe is not an error for a streaming tool.
        Err(CliError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("laman: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
