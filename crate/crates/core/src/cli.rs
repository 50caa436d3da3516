//! Command-line front end.
//!
//! Failures print one line `ERROR <code>: <message>` to stderr and exit
//! with status 2. `verify` exits with 1 when the code is not perfect.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::codes::Code;
use crate::concat::{self, check_published_vectors, concatenate, ConcatInput, Permutation};
use crate::constructions::{extract_cpp, hamming_code, mds_partition, simplex_code, space_partition, trivial_mds};
use crate::error::{Error, Result};
use crate::format::{parse_word, read_code_file, read_partition, write_code_file, write_partition};
use crate::perfect::{admissible_m, decompose, find_dual_word};
use crate::report::{self, to_sorted_json};

#[derive(Debug, Parser)]
#[command(name = "qperfect", version, about = "Build and verify q-ary 1-perfect codes")]
struct Cli {
    /// Worker threads for the parallel engines; output does not depend on it.
    #[arg(long, global = true, env = "QPERFECT_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the Hamming code with parameters (q, m).
    Hamming {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the simplex code with parameters (q, m).
    Simplex {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the sum-zero code of length n.
    Mds {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the [q^m, q^m - m - 1, 3] subcode cut out by the canonical dual word.
    Cpp {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a coset partition directory.
    Partition {
        #[arg(long, value_enum)]
        kind: PartitionKind,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check perfection and the dual/split structure; exit 0 iff perfect.
    Verify {
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the rank of a code.
    Rank { file: PathBuf },
    /// Write the dual of the linear span of a code.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the weight distribution as `weight count` lines.
    Weights { file: PathBuf },
    /// Split a code along a dual word of weight q^(m-1).
    Decompose {
        file: PathBuf,
        /// Dual word; defaults to the smallest one of the right weight.
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Assemble C_alpha from two partition directories.
    Concat {
        #[arg(long)]
        p1: PathBuf,
        #[arg(long)]
        p2: PathBuf,
        /// Comma-separated images alpha(0),alpha(1),...
        #[arg(long)]
        alpha: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rank of C_alpha for every zero-aligned permutation.
    Sweep {
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build and verify a ternary perfect code of length 13 and rank 12.
    Ternary13 {
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PartitionKind {
    Space,
    Mds,
}

/// Runs the tool with process stdio; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "ERROR Usage: {first}");
            return 2;
        }
    };
    let result = match cli.threads {
        Some(0) => Err(Error::InvalidParameter("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            // the pool needs a Send closure, so buffer stdout and flush after
            Ok(pool) => {
                let mut buf = Vec::new();
                let r = pool.install(|| dispatch(cli.command, &mut buf));
                let _ = out.write_all(&buf);
                r
            }
            Err(e) => Err(Error::InvalidParameter(e.to_string())),
        },
        None => dispatch(cli.command, out),
    };
    match result {
        Ok(status) => status,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "ERROR {}: {msg}", e.code());
            2
        }
    }
}

fn write_report(path: &Path, json: &str) -> Result<()> {
    std::fs::write(path, json).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(out: &mut dyn Write, report: Option<&Path>, json: &str) -> Result<()> {
    match report {
        Some(p) => write_report(p, json),
        None => {
            let _ = out.write_all(json.as_bytes());
            Ok(())
        }
    }
}

fn save(out: &mut dyn Write, path: &Path, code: &Code) -> Result<i32> {
    write_code_file(path, code)?;
    let _ = writeln!(out, "wrote {} (q={} n={} count={})", path.display(), code.field().q(), code.n(), code.len());
    Ok(0)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Hamming { q, m, output } => save(out, &output, &hamming_code(q, m)?.to_code()?),
        Command::Simplex { q, m, output } => save(out, &output, &simplex_code(q, m)?.to_code()?),
        Command::Mds { q, n, output } => save(out, &output, &trivial_mds(q, n)?.to_code()?),
        Command::Cpp { q, m, output } => save(out, &output, &extract_cpp(q, m)?.to_code()?),
        Command::Partition { kind, q, m, output } => {
            let p = match kind {
                PartitionKind::Space => space_partition(q, m)?,
                PartitionKind::Mds => mds_partition(q, m)?,
            };
            write_partition(&output, &p)?;
            let _ = writeln!(out, "wrote {} ({} parts)", output.display(), p.len());
            Ok(0)
        }
        Command::Verify { file, report } => {
            let code = read_code_file(&file)?;
            let r = report::verify(&code)?;
            emit(out, report.as_deref(), &to_sorted_json(&r))?;
            Ok(if r.perfect { 0 } else { 1 })
        }
        Command::Rank { file } => {
            let code = read_code_file(&file)?;
            let _ = writeln!(out, "{}", code.rank());
            Ok(0)
        }
        Command::Dual { file, output } => {
            let code = read_code_file(&file)?;
            save(out, &output, &code.orthogonal().to_code()?)
        }
        Command::Weights { file } => {
            let code = read_code_file(&file)?;
            for (w, c) in code.weight_distribution().histogram() {
                let _ = writeln!(out, "{w} {c}");
            }
            Ok(0)
        }
        Command::Decompose { file, w, report } => {
            let code = read_code_file(&file)?;
            let (q, n) = (code.field().q(), code.n());
            let m = admissible_m(q, n).ok_or(Error::LengthNotAdmissible { q, n })?;
            let w = match w {
                Some(s) => parse_word(q, &s)?,
                None => find_dual_word(&code, q.pow(m as u32 - 1))
                    .ok_or_else(|| Error::NotDualWord("no dual word of weight q^(m-1)".into()))?,
            };
            let dec = decompose(&code, &w)?;
            let split = dec.check();
            let json = to_sorted_json(&serde_json::json!({
                "dual_word": crate::codes::word_to_string(q, &dec.w),
                "inner_codes": split.inner_codes,
                "inner_perfect": split.inner_perfect,
                "inner_total": dec.inner_total(),
                "outer_codes": split.outer_codes,
                "outer_ok": split.outer_ok,
                "outer_total": dec.outer_total(),
                "defect": split.defect,
            }));
            emit(out, report.as_deref(), &json)?;
            Ok(if split.all_ok() { 0 } else { 1 })
        }
        Command::Concat { p1, p2, alpha, output } => {
            let alpha: Permutation = alpha.parse()?;
            let input = ConcatInput {
                p1: read_partition(&p1)?,
                p2: read_partition(&p2)?,
                alpha,
            };
            save(out, &output, &concatenate(&input)?)
        }
        Command::Sweep { q, m, report } => {
            let survey = concat::sweep(q, m)?;
            emit(out, report.as_deref(), &to_sorted_json(&report::SweepReport::from(&survey)))?;
            Ok(0)
        }
        Command::Ternary13 { output, report } => {
            let witness = concat::search_rank12(3, 2)?;
            let vectors = check_published_vectors(&witness.input.p1, &witness.input.p2)?;
            let r = report::ternary13(&witness, &vectors)?;
            write_code_file(&output, &witness.code)?;
            emit(out, report.as_deref(), &to_sorted_json(&r))?;
            let ok = r.perfect && r.rank == 12 && r.theorem1_ok && r.published_vectors.independent;
            Ok(if ok { 0 } else { 1 })
        }
    }
}
