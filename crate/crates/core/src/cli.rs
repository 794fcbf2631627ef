//! The `qsym` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dag::compare_representations;
use crate::encode::{entry_count_bounds, flat_encode, tensor_encode, SparseEncoding};
use crate::error::{Error, Result};
use crate::group::{build_graph, detect, Detection, Representation};
use crate::io::{
    describe_mismatch, write_dot, write_dreadnaut, write_group_json, write_problem, DotNames,
    ProblemSource,
};
use crate::model::{format_number, normalize, Permutation, Problem};
use crate::oracle::{check_containment, enumerate_feasible, symmetry_group_bruteforce};
use crate::relax::{mccormick_relax, relax_subset};

#[derive(Parser, Debug)]
#[command(
    name = "qsym",
    version,
    about = "Formulation symmetry detection for QCQPs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the McCormick linearization of a problem.
    Relax {
        file: PathBuf,
        /// Linearize only these monomials, e.g. `x1*x1,x2*x3`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Print the sparse (M, I, J, K) encoding.
    Encode {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "tensor")]
        method: Method,
        /// Emit `K,I,J,M` rows instead.
        #[arg(long)]
        csv: bool,
    },
    /// Write the coloured graph of a representation.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "blg2")]
        rep: Rep,
        #[arg(long, value_enum, default_value = "dot")]
        out: Format,
        /// Write to this file instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Detect and verify the formulation group.
    Detect {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "blg2")]
        rep: Rep,
        /// Emit JSON, to stdout or to the given file.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
        /// Include wall-clock timings in the JSON (makes output non-deterministic).
        #[arg(long)]
        timings: bool,
        /// Report only the action on the original (non-auxiliary) variables.
        #[arg(long)]
        original_only: bool,
    },
    /// Enumerate the feasible set and the symmetry group of a small integer problem.
    Oracle { file: PathBuf },
    /// Compare graph sizes and groups across representations.
    Compare { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Tensor,
    Flat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rep {
    Blg1,
    Blg2,
    Dag,
}

impl From<Rep> for Representation {
    fn from(r: Rep) -> Self {
        match r {
            Rep::Blg1 => Representation::Blg1,
            Rep::Blg2 => Representation::Blg2,
            Rep::Dag => Representation::Dag,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Dre,
}

/// Runs the CLI, writing reports to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path) -> Result<Problem> {
    ProblemSource::from_path(path)?.parse()
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Io(e.to_string()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Relax { file, only } => {
            let problem = load(&file)?;
            let lin = if only.is_empty() {
                mccormick_relax(&problem)?
            } else {
                let monomials = only
                    .iter()
                    .map(|m| parse_monomial(&problem, m))
                    .collect::<Result<Vec<_>>>()?;
                relax_subset(&problem, &monomials)?
            };
            emit(out, &write_problem(&lin.problem))?;
            Ok(0)
        }
        Command::Encode { file, method, csv } => {
            let problem = load(&file)?;
            let enc = match method {
                Method::Tensor => tensor_encode(&problem)?,
                Method::Flat => flat_encode(&problem)?,
            };
            let text = if csv {
                enc.to_csv()
            } else {
                format_encoding(&enc)
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Graph {
            file,
            rep,
            out: format,
            output,
        } => {
            let problem = load(&file)?;
            let (target, graph) = build_graph(&problem, rep.into())?;
            let text = match format {
                Format::Dre => write_dreadnaut(&graph),
                Format::Dot => {
                    let vars = target.names();
                    let cons = target.constraint_labels();
                    write_dot(
                        &graph,
                        &DotNames {
                            variables: &vars,
                            constraints: &cons,
                        },
                    )
                }
            };
            match output {
                Some(path) => write_file(&path, &text)?,
                None => emit(out, &text)?,
            }
            Ok(0)
        }
        Command::Detect {
            file,
            rep,
            json,
            timings,
            original_only,
        } => {
            let problem = load(&file)?;
            let mut found = detect(&problem, rep.into())?;
            if original_only {
                let n = problem.num_vars();
                // Verification stays on the full generators.
                found.group = found.group.restrict(n)?;
            }
            let report = format_detection(&found);
            match json.as_deref() {
                Some("-") => emit(out, &write_group_json(&found, timings))?,
                Some(path) => {
                    write_file(Path::new(path), &write_group_json(&found, timings))?;
                    emit(out, &report)?;
                }
                None => emit(out, &report)?,
            }
            if found.report.all_verified() {
                Ok(0)
            } else {
                Ok(3)
            }
        }
        Command::Oracle { file } => {
            let problem = load(&file)?;
            emit(out, &format_oracle(&problem)?)?;
            Ok(0)
        }
        Command::Compare { file } => {
            let problem = load(&file)?;
            emit(out, &format_comparison(&problem)?)?;
            Ok(0)
        }
    }
}

fn parse_monomial(problem: &Problem, text: &str) -> Result<(usize, usize)> {
    let bad = || Error::MonomialNotPresent(text.to_string());
    let (a, b) = match text.split_once('*') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => {
            let base = text.trim().strip_suffix("^2").ok_or_else(bad)?;
            (base, base)
        }
    };
    let i = problem.var_index(a).ok_or_else(bad)?;
    let j = problem.var_index(b).ok_or_else(bad)?;
    Ok((i, j))
}

fn join_numbers<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn format_encoding(enc: &SparseEncoding) -> String {
    let (a, b, c) = enc.shape();
    let shape = match enc.kind {
        crate::encode::EncodingKind::Tensor => format!("{a}x{b}x{c}"),
        crate::encode::EncodingKind::Flat => format!("{a}x{b}"),
    };
    let values: Vec<String> = enc.m.iter().map(format_number).collect();
    format!(
        "kind: {}\nshape: {shape}\nentries: {}\nM: {}\nI: {}\nJ: {}\nK: {}\n",
        enc.kind.name(),
        enc.len(),
        values.join(" "),
        join_numbers(&enc.i),
        join_numbers(&enc.j),
        join_numbers(&enc.k),
    )
}

fn cycles(perms: &[Permutation], names: &[&str]) -> String {
    if perms.is_empty() {
        return "none".to_string();
    }
    perms
        .iter()
        .map(|p| p.to_cycle_string(names))
        .collect::<Vec<_>>()
        .join(", ")
}

fn format_detection(found: &Detection) -> String {
    let names = found.problem.names();
    let labels = found.problem.constraint_labels();
    let orbits: Vec<String> = found
        .orbits()
        .into_iter()
        .filter(|o| o.len() > 1)
        .map(|o| {
            let members: Vec<&str> = o.iter().map(|&i| names[i]).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let verdicts: Vec<String> = found
        .report
        .checks
        .iter()
        .map(|c| match &c.outcome {
            Ok(sigma) => format!("σ={}", sigma.to_cycle_string(&labels)),
            Err(m) => format!(
                "{} fails: {}",
                c.generator.to_cycle_string(&names),
                describe_mismatch(found, m)
            ),
        })
        .collect();
    let verified = match (found.report.all_verified(), verdicts.is_empty()) {
        (true, true) => "yes".to_string(),
        (true, false) => format!("yes ({})", verdicts.join(", ")),
        (false, _) => format!("no ({})", verdicts.join(", ")),
    };
    format!(
        "representation: {}\ngraph: {} vertices, {} edges, {} layers\ngenerators: {}\norder: {}\norbits: {}\nverified: {verified}\n",
        found.representation,
        found.graph_vertices,
        found.graph_edges,
        found.graph_layers,
        cycles(found.group.generators(), &names),
        found.order(),
        if orbits.is_empty() { "none".to_string() } else { orbits.join(",") },
    )
}

fn format_oracle(problem: &Problem) -> Result<String> {
    let names = problem.names();
    let feasible = enumerate_feasible(problem)?;
    let symmetry = symmetry_group_bruteforce(problem)?;
    let formulation = detect(&normalize(problem)?, Representation::Dag)?.group;
    let contained = check_containment(&formulation, &symmetry)?;
    let mut out = format!("feasible points: {}\n", feasible.len());
    for p in &feasible.points {
        out.push_str(&format!("  ({})\n", join_numbers(p)));
    }
    out.push_str(&format!(
        "symmetry group order: {}\nsymmetry generators: {}\nformulation generators: {}\nformulation group contained: {}\n",
        symmetry.order(),
        cycles(symmetry.generators(), &names),
        cycles(formulation.generators(), &names),
        if contained { "yes" } else { "no" },
    ));
    Ok(out)
}

fn format_comparison(problem: &Problem) -> Result<String> {
    let report = compare_representations(problem)?;
    let names = problem.names();
    let mut out = String::new();
    if report.rows.is_empty() {
        out.push_str("no variables\n");
    } else {
        out.push_str(&format!(
            "{:<6} {:>8} {:>6} {:>6}  generators\n",
            "rep", "vertices", "edges", "order"
        ));
        for row in &report.rows {
            out.push_str(&format!(
                "{:<6} {:>8} {:>6} {:>6}  {}{}\n",
                row.representation.name(),
                row.vertices,
                row.edges,
                row.order,
                cycles(row.group.generators(), &names),
                if row.verified { "" } else { " (unverified)" },
            ));
        }
        out.push_str(&format!(
            "groups agree: {}\n",
            if report.groups_agree() { "yes" } else { "no" }
        ));
    }
    let counts = entry_count_bounds(report.num_vars as u64, report.num_constraints as u64);
    out.push_str(&format!(
        "entry bounds (n={}, m={}): flat {}, tensor {}, crossover {}\n",
        report.num_vars,
        report.num_constraints,
        counts.flat_worst,
        counts.tensor_worst,
        if counts.crossover { "yes" } else { "no" },
    ));
    Ok(out)
}
