//! Command-line front end. Every subcommand is a thin wrapper around one
//! library call; `run` returns the process exit code.
//!
//! Exit codes: 0 success, 1 empty or inadmissible prescription (or a twist
//! hitting a saddle connection), 2 bad input.

use crate::balance::solve_balance;
use crate::builder::{build_one_cone, build_surface, BuildError};
use crate::constraints::{
    check_existence, check_refined, enumerate_ratios, AngleVector, ConstraintError, Existence,
    TypePartition,
};
use crate::dataset::DataSet;
use crate::deform::{split, twist, DeformError};
use crate::io::{export_dot, export_profile_csv, load_path, save};
use crate::metric::warped_profile;
use crate::moduli::{dimension, dimension_refined};
use crate::rational::{fmt_q, parse_q, parse_q_list, QList};
use crate::Q;
use clap::{Parser, Subcommand};
use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "hcmu", version, about = "HCMU surfaces from weighted mixed angulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Prescription {
    #[arg(long)]
    genus: u32,
    /// Cone angles divided by 2 pi, comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    angles: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load and validate a data set document.
    Validate { file: PathBuf },
    /// Decide whether the moduli space is nonempty.
    Check {
        #[command(flatten)]
        p: Prescription,
        /// 1-based positions of saddles in the sorted angle list.
        #[arg(long)]
        saddles: Option<String>,
    },
    /// Construct a data set for a nonempty prescription.
    Build {
        #[command(flatten)]
        p: Prescription,
        #[arg(long)]
        saddles: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Surface with one saddle, p smooth maxima and q smooth minima.
    OneCone {
        #[arg(long)]
        genus: u32,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        q: u64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Admissible ratios and smooth-point counts for each type partition.
    Ratios {
        #[command(flatten)]
        p: Prescription,
        #[arg(long)]
        saddles: String,
        /// 1-based positions of minima; other non-saddles become maxima.
        #[arg(long)]
        minima: Option<String>,
    },
    /// Dimension of the moduli space.
    Dim {
        #[command(flatten)]
        p: Prescription,
        #[arg(long)]
        saddles: Option<String>,
    },
    /// Solve the balance equations of a data set for its own cone angles.
    Solve { file: PathBuf },
    /// Sample the curvature profile of the character line element.
    Profile {
        #[arg(long)]
        k0: f64,
        #[arg(long)]
        ratio: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Twist along a level circle.
    Twist {
        file: PathBuf,
        #[arg(long)]
        level: String,
        /// 0-based index into the circles at that level.
        #[arg(long)]
        circle: usize,
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Split an extremal vertex of integer angle into a saddle.
    Split {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        offset: String,
        #[arg(long)]
        level: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Print the angulation as a DOT graph.
    ExportDot {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

/// Outcome of a failed command: the exit code and a message for stderr.
struct Failure(i32, String);

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure(2, e.to_string())
}

fn infeasible<E: std::fmt::Display>(e: E) -> Failure {
    Failure(1, e.to_string())
}

fn constraint(e: ConstraintError) -> Failure {
    match e {
        ConstraintError::EmptySpace => infeasible(e),
        _ => input(e),
    }
}

fn build_failure(e: BuildError) -> Failure {
    match e {
        BuildError::EmptySpace | BuildError::Inadmissible(_) | BuildError::NotCoprime => {
            infeasible(e)
        }
        BuildError::Constraint(c) => constraint(c),
        _ => input(e),
    }
}

fn deform_failure(e: DeformError) -> Failure {
    match e {
        DeformError::NonGeneric { .. } => infeasible(e),
        _ => input(e),
    }
}

fn angles(p: &Prescription) -> Result<AngleVector, Failure> {
    let list = parse_q_list(&p.angles).map_err(input)?;
    AngleVector::new(list).map_err(input)
}

/// Parses 1-based positions into a 0-based set.
fn positions(text: &str) -> Result<BTreeSet<usize>, Failure> {
    let mut out = BTreeSet::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| input(format!("bad position {part}")))?;
        if i == 0 {
            return Err(input("positions are 1-based"));
        }
        out.insert(i - 1);
    }
    Ok(out)
}

fn rational(text: &str) -> Result<Q, Failure> {
    parse_q(text).map_err(input)
}

fn emit(out: &mut dyn Write, target: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match target {
        Some(path) => std::fs::write(path, text).map_err(input),
        None => out.write_all(text.as_bytes()).map_err(input),
    }
}

fn line(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(input)
}

fn load(file: &Path) -> Result<DataSet, Failure> {
    load_path(file).map_err(input)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Validate { file } => {
            let d = load(&file)?;
            let a = d.angulation();
            line(
                out,
                format!(
                    "valid: genus {}, {} vertices, {} arcs, {} faces",
                    d.genus(),
                    a.num_vertices(),
                    a.num_arcs(),
                    a.num_faces()
                ),
            )
        }
        Command::Check { p, saddles } => {
            let alpha = angles(&p)?;
            let e = match saddles {
                Some(s) => check_refined(p.genus, &alpha, &positions(&s)?),
                None => check_existence(p.genus, &alpha),
            }
            .map_err(constraint)?;
            line(out, e)?;
            match e {
                Existence::Empty => Err(Failure(1, String::new())),
                Existence::Nonempty(_) => Ok(()),
            }
        }
        Command::Build { p, saddles, o } => {
            let alpha = angles(&p)?;
            let d = build_surface(p.genus, &alpha, &positions(&saddles)?).map_err(build_failure)?;
            emit(out, &o, &save(&d))
        }
        Command::OneCone { genus, p, q, o } => {
            let d = build_one_cone(genus, p, q).map_err(build_failure)?;
            emit(out, &o, &save(&d))
        }
        Command::Ratios { p, saddles, minima } => {
            let alpha = angles(&p)?;
            let z = positions(&saddles)?;
            alpha.check_saddles(&z).map_err(input)?;
            let partitions = match minima {
                Some(m) => {
                    let minima = positions(&m)?;
                    let maxima = (0..alpha.len())
                        .filter(|i| !z.contains(i) && !minima.contains(i))
                        .collect();
                    vec![TypePartition {
                        saddles: z,
                        maxima,
                        minima,
                    }]
                }
                None => TypePartition::enumerate(&alpha, &z),
            };
            let one_based = |s: &BTreeSet<usize>| {
                s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
            };
            let mut any = false;
            for t in &partitions {
                let choices = match enumerate_ratios(p.genus, &alpha, t) {
                    Ok(c) => c,
                    Err(ConstraintError::EmptySpace) => continue,
                    Err(e) => return Err(input(e)),
                };
                for c in choices {
                    any = true;
                    line(
                        out,
                        format!(
                            "maxima [{}] minima [{}]: R = {}, m+ = {}, m- = {}",
                            one_based(&t.maxima),
                            one_based(&t.minima),
                            fmt_q(&c.ratio),
                            c.m_plus,
                            c.m_minus
                        ),
                    )?;
                }
            }
            if any {
                Ok(())
            } else {
                line(out, "empty")?;
                Err(Failure(1, String::new()))
            }
        }
        Command::Dim { p, saddles } => {
            let alpha = angles(&p)?;
            let d = match saddles {
                Some(s) => dimension_refined(p.genus, &alpha, &positions(&s)?),
                None => dimension(p.genus, &alpha),
            }
            .map_err(constraint)?;
            match d {
                Some(n) => line(out, n),
                None => {
                    line(out, "empty")?;
                    Err(Failure(1, String::new()))
                }
            }
        }
        Command::Solve { file } => {
            let d = load(&file)?;
            let a = d.angulation();
            let beta: Vec<Q> = (0..a.num_vertices()).map(|v| d.vertex_angle(v)).collect();
            let space = solve_balance(a, d.ratio(), &beta).map_err(infeasible)?;
            line(out, format!("particular: {}", QList(&space.particular)))?;
            if let Some(w) = &space.positive_witness {
                line(out, format!("positive: {}", QList(w)))?;
            }
            line(out, format!("kernel dimension: {}", space.kernel.len()))
        }
        Command::Profile {
            k0,
            ratio,
            samples,
            o,
        } => {
            let profile = warped_profile(k0, rational(&ratio)?, samples).map_err(input)?;
            emit(out, &o, &export_profile_csv(&profile))
        }
        Command::Twist {
            file,
            level,
            circle,
            psi,
            o,
        } => {
            let d = load(&file)?;
            let t = twist(&d, rational(&level)?, circle, rational(&psi)?).map_err(deform_failure)?;
            emit(out, &o, &save(&t))
        }
        Command::Split {
            file,
            vertex,
            offset,
            level,
            o,
        } => {
            let d = load(&file)?;
            let s = split(&d, vertex, rational(&offset)?, rational(&level)?)
                .map_err(deform_failure)?;
            emit(out, &o, &save(&s))
        }
        Command::ExportDot { file, o } => emit(out, &o, &export_dot(&load(&file)?)),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure(code, message)) => {
            if !message.is_empty() {
                // Infeasibility is an answer, so it goes to stdout.
                let sink: &mut dyn Write = if code == 1 { out } else { err };
                let _ = writeln!(sink, "{message}");
            }
            code
        }
    }
}
