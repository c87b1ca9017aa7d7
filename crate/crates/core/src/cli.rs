//! Command-line front end.
//!
//! Exit status 0 means success, 1 means a mathematical property failed
//! (a second minimal element, a stuck reduction), 2 means bad usage or
//! input. Reports are plain line-oriented ASCII on stdout.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::canon::{aut_order, canonical_code, is_asymmetric};
use crate::enumerate::{all_trees, coded_asymmetric_trees, count_report, count_report_tsv};
use crate::error::TreeError;
use crate::poset::{self, TieBreak};
use crate::special_leaf::find_special_leaf;
use crate::tree::Tree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exit status plus captured output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandOutcome {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "asymtree",
    version,
    about = "Asymmetric trees and the E7 leaf-deletion poset"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print structure, centers, |Aut| and the canonical code of a tree file.
    Check { file: PathBuf },
    /// Find a special leaf with respect to a root vertex.
    SpecialLeaf {
        file: PathBuf,
        #[arg(long)]
        root: usize,
    },
    /// Reduce an asymmetric tree to E7 by safe leaf deletions.
    Reduce {
        file: PathBuf,
        #[arg(long, value_name = "SEED")]
        random_tiebreak: Option<u64>,
    },
    /// List one tree per isomorphism class on N vertices.
    Enumerate {
        n: usize,
        #[arg(long)]
        asymmetric: bool,
        /// Print the per-n count table for 1..=N instead of trees.
        #[arg(long)]
        count_only: bool,
    },
    /// Check that E7 is the only minimal element up to N vertices and that
    /// every asymmetric tree reduces to it.
    Verify {
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// Write the Hasse diagram up to N vertices as Graphviz DOT.
    Hasse {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write the cover edges as TSV.
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if status == EXIT_OK {
                CommandOutcome::ok(text)
            } else {
                CommandOutcome::usage(text)
            };
        }
    };
    match cli.command {
        Command::Check { file } => cmd_check(&file),
        Command::SpecialLeaf { file, root } => cmd_special_leaf(&file, root),
        Command::Reduce {
            file,
            random_tiebreak,
        } => cmd_reduce(&file, random_tiebreak),
        Command::Enumerate {
            n,
            asymmetric,
            count_only,
        } => cmd_enumerate(n, asymmetric, count_only),
        Command::Verify { max_n } => cmd_verify(max_n),
        Command::Hasse { max_n, out, tsv } => cmd_hasse(max_n, &out, tsv.as_deref()),
    }
}

fn read_tree(path: &Path) -> Result<Tree, CommandOutcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| CommandOutcome::usage(format!("cannot read {}: {e}", path.display())))?;
    text.parse()
        .map_err(|e: TreeError| CommandOutcome::usage(format!("{}: {e}", path.display())))
}

fn join(ids: impl IntoIterator<Item = usize>) -> String {
    ids.into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_check(path: &Path) -> CommandOutcome {
    let t = match read_tree(path) {
        Ok(t) => t,
        Err(outcome) => return outcome,
    };
    let info = t.center_info();
    let asymmetric = is_asymmetric(&t).unwrap_or(false);
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", t.n());
    let _ = writeln!(out, "degrees: {}", join(t.degree_sequence()));
    let _ = writeln!(out, "centers: {}", join(info.centers.iter().copied()));
    let _ = writeln!(out, "radius: {}", info.radius);
    let _ = writeln!(out, "|Aut|={}", aut_order(&t));
    let _ = writeln!(out, "asymmetric: {}", if asymmetric { "yes" } else { "no" });
    let _ = writeln!(out, "code: {}", canonical_code(&t));
    CommandOutcome::ok(out)
}

pub fn cmd_special_leaf(path: &Path, root: usize) -> CommandOutcome {
    let t = match read_tree(path) {
        Ok(t) => t,
        Err(outcome) => return outcome,
    };
    match find_special_leaf(&t, root) {
        Ok(cert) => CommandOutcome::ok(cert.to_string()),
        Err(e) => CommandOutcome::usage(e.to_string()),
    }
}

pub fn cmd_reduce(path: &Path, seed: Option<u64>) -> CommandOutcome {
    let t = match read_tree(path) {
        Ok(t) => t,
        Err(outcome) => return outcome,
    };
    let tie_break = seed.map_or(TieBreak::Smallest, TieBreak::Random);
    match poset::reduce_to_e7_with(&t, tie_break) {
        Ok(trace) => CommandOutcome::ok(trace.to_text()),
        Err(e @ TreeError::StuckNotAtE7 { .. }) => CommandOutcome {
            status: EXIT_VIOLATION,
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
        Err(e) => CommandOutcome::usage(e.to_string()),
    }
}

pub fn cmd_enumerate(n: usize, asymmetric: bool, count_only: bool) -> CommandOutcome {
    if count_only {
        return match count_report(n) {
            Ok(rows) => CommandOutcome::ok(count_report_tsv(&rows)),
            Err(e) => CommandOutcome::usage(e.to_string()),
        };
    }
    let records = if asymmetric {
        coded_asymmetric_trees(n)
    } else {
        all_trees(n).map(|s| s.with_codes().collect())
    };
    match records {
        Ok(records) => {
            let mut out = String::new();
            for (code, t) in records {
                let _ = writeln!(out, "{code}\t{}", t.edge_list_string());
            }
            CommandOutcome::ok(out)
        }
        Err(e) => CommandOutcome::usage(e.to_string()),
    }
}

pub fn cmd_verify(max_n: usize) -> CommandOutcome {
    let mut out = String::new();
    let report = poset::verify(max_n, |level| {
        let _ = writeln!(
            out,
            "n={} classes={} minimal={} reductions={}/{} time={:.3}s",
            level.n,
            level.classes,
            level.minimal.len(),
            level.reductions_ok,
            level.classes,
            level.elapsed.as_secs_f64()
        );
    });
    let report = match report {
        Ok(r) => r,
        Err(e) => return CommandOutcome::usage(e.to_string()),
    };
    let minimal = report.minimal_elements();
    let _ = writeln!(out, "minimal elements: {}", minimal.len());
    for code in &minimal {
        let _ = writeln!(out, "minimal {code}");
    }
    for level in &report.levels {
        for (code, err) in &level.failures {
            let _ = writeln!(out, "reduction failed {code}: {err}");
        }
    }
    let _ = writeln!(out, "elapsed: {:.3}s", report.elapsed.as_secs_f64());
    let passed = report.passed();
    let _ = writeln!(out, "result: {}", if passed { "ok" } else { "VIOLATION" });
    CommandOutcome {
        status: if passed { EXIT_OK } else { EXIT_VIOLATION },
        stdout: out,
        stderr: String::new(),
    }
}

pub fn cmd_hasse(max_n: usize, out_path: &Path, tsv_path: Option<&Path>) -> CommandOutcome {
    let hasse = match poset::build_hasse(max_n) {
        Ok(h) => h,
        Err(e) => return CommandOutcome::usage(e.to_string()),
    };
    if let Err(e) = fs::write(out_path, hasse.to_dot()) {
        return CommandOutcome::usage(format!("cannot write {}: {e}", out_path.display()));
    }
    if let Some(tsv) = tsv_path {
        if let Err(e) = fs::write(tsv, hasse.to_tsv()) {
            return CommandOutcome::usage(format!("cannot write {}: {e}", tsv.display()));
        }
    }
    let mut out = String::new();
    for level in &hasse.levels {
        let _ = writeln!(out, "level {}: {}", level.n, level.nodes.len());
    }
    let _ = writeln!(out, "nodes: {}", hasse.node_count());
    let _ = writeln!(out, "edges: {}", hasse.covers.len());
    CommandOutcome::ok(out)
}
