//! `posetkit` command-line tool.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict, 2 usage or precondition
//! failure, 3 unreadable or malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use posetkit::census::{run_census, Verify, MAX_CENSUS_N};
use posetkit::io::{format_map, format_poset, parse_map, parse_poset, render_dot, ParseError};
use posetkit::realizability::{
    add_bottom, add_top, check_local_ufd, check_nonlocal_ufd, dim_plus_one, extension_poset,
    RealizabilityReport,
};
use posetkit::surgery::{attach_below, glue, reduce_to_point, retract, split};
use posetkit::{MapProperty, MapViolation, NodeId, Poset, PosetError};

#[derive(Parser)]
#[command(
    name = "posetkit",
    version,
    about = "Finite poset surgery and realizability checks"
)]
struct Cli {
    /// Reject poset files whose `rel:` lines are not all cover pairs.
    #[arg(long, global = true)]
    strict_covers: bool,

    /// Write output to FILE instead of standard output.
    #[arg(short = 'o', long = "output", value_name = "FILE", global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a poset can occur as a prime spectrum of a UFD.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Local)]
        mode: Mode,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Glue, retract, split, attach or reduce, printing the resulting poset file(s).
    Surgery {
        #[arg(value_enum)]
        op: SurgeryOp,
        file: PathBuf,
        /// Nodes to glue (comma- or space-separated).
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        nodes: Vec<String>,
        /// Node to retract, split or attach below.
        #[arg(long)]
        node: Option<String>,
        /// Number of nodes to attach.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Build a larger poset together with its canonical map.
    Construct {
        #[arg(value_enum)]
        which: ConstructionKind,
        file: PathBuf,
    },
    /// Check a property of a map between two posets.
    MapCheck {
        domain: PathBuf,
        codomain: PathBuf,
        map: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Codomain nodes for the coheight check (defaults to its minimal nodes).
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        along: Option<Vec<String>>,
        /// Print the first violation.
        #[arg(long)]
        explain: bool,
    },
    /// Print the Hasse diagram in Graphviz DOT.
    Render { file: PathBuf },
    /// Enumerate all posets up to a size and run population-wide checks.
    Census {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        #[arg(long, value_enum, default_value_t = VerifyArg::None)]
        verify: VerifyArg,
        #[arg(long, default_value_t = 1000)]
        random_trials: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    Local,
    Nonlocal,
}

#[derive(Copy, Clone, ValueEnum)]
enum SurgeryOp {
    Glue,
    Retract,
    Split,
    Reduce,
    Attach,
}

#[derive(Copy, Clone, ValueEnum)]
enum ConstructionKind {
    AddTop,
    AddBottom,
    DimPlusOne,
    Extension,
}

#[derive(Copy, Clone, ValueEnum)]
enum Property {
    Map,
    Embedding,
    Saturated,
    Dim,
    Coheight,
}

#[derive(Copy, Clone, ValueEnum)]
enum VerifyArg {
    None,
    Reduce,
    Lemmas,
    All,
}

enum Failure {
    Precondition(String),
    Input(String),
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(message) => {
                    eprintln!("error: {message}");
                    ExitCode::from(3)
                }
            }
        }
        Err(Failure::Precondition(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn load(path: &Path, strict: bool) -> Result<Poset, Failure> {
    let parsed = parse_poset(&read(path)?).map_err(|e| parse_failure(path, e))?;
    if strict {
        if let Some((line, a, b)) = parsed.non_cover_generators().first() {
            return Err(Failure::Input(format!(
                "{}: line {line}: `rel: {a} {b}` is not a cover pair",
                path.display()
            )));
        }
    }
    Ok(parsed.poset)
}

fn node(p: &Poset, label: Option<&str>) -> Result<NodeId, Failure> {
    let label = label.ok_or_else(|| Failure::Precondition("--node is required".into()))?;
    Ok(p.require(label)?)
}

fn run(cli: &Cli) -> Outcome {
    let strict = cli.strict_covers;
    match &cli.command {
        Command::Check { file, mode, json } => {
            let p = load(file, strict)?;
            let (name, report) = match mode {
                Mode::Local => ("local", check_local_ufd(&p)),
                Mode::Nonlocal => ("non-local", check_nonlocal_ufd(&p)),
            };
            let text = if *json {
                report.to_json() + "\n"
            } else {
                describe(name, &report)
            };
            Ok((text, if report.verdict { 0 } else { 1 }))
        }
        Command::Surgery {
            op,
            file,
            nodes,
            node: at,
            count,
        } => {
            let p = load(file, strict)?;
            Ok((surgery(&p, *op, nodes, at.as_deref(), *count)?, 0))
        }
        Command::Construct { which, file } => Ok((construct(&load(file, strict)?, *which)?, 0)),
        Command::MapCheck {
            domain,
            codomain,
            map,
            property,
            along,
            explain,
        } => {
            let dom = load(domain, strict)?;
            let cod = load(codomain, strict)?;
            let f = parse_map(&read(map)?, &dom, &cod).map_err(|e| parse_failure(map, e))?;
            let targets = along
                .as_ref()
                .map(|labels| {
                    labels
                        .iter()
                        .map(|l| cod.require(l))
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?;
            let prop = match property {
                Property::Map => MapProperty::Map,
                Property::Embedding => MapProperty::Embedding,
                Property::Saturated => MapProperty::Saturated,
                Property::Dim => MapProperty::DimensionPreserving,
                Property::Coheight => MapProperty::Coheight,
            };
            let violation = f.violation_along(prop, targets.as_deref());
            let name = property
                .to_possible_value()
                .expect("listed")
                .get_name()
                .to_string();
            let mut text = format!(
                "{name}: {}\n",
                if violation.is_none() {
                    "holds"
                } else {
                    "fails"
                }
            );
            if let (Some(v), true) = (&violation, explain) {
                text.push_str(&explain_violation(v));
            }
            Ok((text, violation.is_some() as u8))
        }
        Command::Render { file } => Ok((render_dot(&load(file, strict)?), 0)),
        Command::Census {
            max_n,
            seed,
            jobs,
            verify,
            random_trials,
            json,
        } => {
            if *max_n == 0 {
                return Err(Failure::Precondition(format!(
                    "--max-n must be between 1 and {MAX_CENSUS_N}"
                )));
            }
            let verify = match verify {
                VerifyArg::None => Verify::None,
                VerifyArg::Reduce => Verify::Reduce,
                VerifyArg::Lemmas => Verify::Lemmas,
                VerifyArg::All => Verify::All,
            };
            let report = run_census(*max_n, verify, *seed, *random_trials, *jobs as usize)?;
            let text = if *json {
                report.to_json()
            } else {
                report.render_text()
            };
            Ok((text, (report.violations > 0) as u8))
        }
    }
}

fn describe(name: &str, report: &RealizabilityReport) -> String {
    let verdict = if report.verdict {
        "realizable"
    } else {
        "NOT realizable"
    };
    let mut out = format!("{name} check: {verdict}\n");
    for v in &report.violations {
        let witnesses: Vec<String> = v
            .nodes
            .iter()
            .zip(&v.heights)
            .map(|(n, h)| format!("{n} (height {h})"))
            .collect();
        out.push_str(&format!("  {:?}: {}\n", v.kind, witnesses.join(" -> ")));
    }
    out
}

fn explain_violation(v: &MapViolation) -> String {
    let pair = match v {
        MapViolation::NotOrderPreserving { x, y }
        | MapViolation::NotOrderReflecting { x, y }
        | MapViolation::CoverNotPreserved { x, y } => format!("violating pair: ({x}, {y})\n"),
        _ => String::new(),
    };
    format!("{pair}reason: {v}\n")
}

fn surgery(
    p: &Poset,
    op: SurgeryOp,
    nodes: &[String],
    at: Option<&str>,
    count: usize,
) -> Result<String, Failure> {
    match op {
        SurgeryOp::Glue => {
            if nodes.is_empty() {
                return Err(Failure::Precondition("--nodes is required".into()));
            }
            let subset = nodes
                .iter()
                .map(|l| p.require(l))
                .collect::<Result<Vec<_>, _>>()?;
            let result = glue(p, &subset)?;
            let comment = format!(
                "glued {} into {}",
                nodes.join(" "),
                result.quotient.label(result.glued_node())
            );
            Ok(format_poset(&result.quotient, &[comment]))
        }
        SurgeryOp::Retract => {
            let x = node(p, at)?;
            let out = retract(p, x)?;
            Ok(format_poset(&out, &[format!("retracted {}", p.label(x))]))
        }
        SurgeryOp::Split => {
            let u = node(p, at)?;
            let s = split(p, u)?;
            let names: Vec<&str> = s.glued.iter().map(|&g| s.poset.label(g)).collect();
            let comment = format!("split {} into {}", p.label(u), names.join(" "));
            Ok(format_poset(&s.poset, &[comment]))
        }
        SurgeryOp::Attach => {
            let x = node(p, at)?;
            let out = attach_below(p, x, count)?;
            let comment = format!("attached {count} below {}", p.label(x));
            Ok(format_poset(&out, &[comment]))
        }
        SurgeryOp::Reduce => {
            let seq = reduce_to_point(p)?;
            let last = seq.posets.len() - 1;
            let mut out = String::new();
            for (stage, i) in (0..=last).rev().enumerate() {
                let note = if stage == 0 {
                    format!("stage 0 of {}: input", seq.steps.len())
                } else {
                    format!("stage {stage} of {}: {}", seq.steps.len(), seq.steps[i])
                };
                if stage > 0 {
                    out.push('\n');
                }
                out.push_str(&format_poset(&seq.posets[i], &[note]));
            }
            Ok(out)
        }
    }
}

fn construct(p: &Poset, which: ConstructionKind) -> Result<String, Failure> {
    let (poset, map, comments) =
        match which {
            ConstructionKind::AddTop => {
                let c = add_top(p);
                (c.poset, c.inclusion, vec!["inclusion".to_string()])
            }
            ConstructionKind::AddBottom => {
                let c = add_bottom(p);
                (c.poset, c.inclusion, vec!["inclusion".to_string()])
            }
            ConstructionKind::DimPlusOne => {
                let d = dim_plus_one(p);
                let risky: Vec<&str> = d.risky.iter().map(|&x| p.label(x)).collect();
                let risky = if risky.is_empty() {
                    "none".to_string()
                } else {
                    risky.join(" ")
                };
                let comments = vec!["inclusion".to_string(), format!("risky: {risky}")];
                (d.poset, d.inclusion, comments)
            }
            ConstructionKind::Extension => {
                let e = extension_poset(p)?;
                let mut comments =
                    vec!["collapse of the new minimal nodes onto the bottom".to_string()];
                comments.extend(e.pairing.iter().map(|&(new, old)| {
                    format!("pairing: {} {}", e.poset.label(new), p.label(old))
                }));
                (e.poset, e.collapse, comments)
            }
        };
    Ok(format!(
        "{}\n{}",
        format_poset(&poset, &comments),
        format_map(&map, &comments[..1])
    ))
}
