//! `modcat`: equivalence and classification of module categories over C(G, ω).

mod input;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modcat::cohomology::{global, Solution};
use modcat::format::{report_from_json, report_to_json, values_json, ReportJson};
use modcat::{
    coboundary, equivalent_pairs, restrict, subgroup_conjugacy_classes, subgroups, ClassifyOptions, Cochain, Group,
    Subgroup,
};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] modcat::Error),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
}

#[derive(Parser)]
#[command(
    name = "modcat",
    version,
    about = "Module categories over pointed fusion categories C(G, ω)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// More diagnostics on stderr (-v info, -vv debug).
    #[arg(short, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct GroupArg {
    /// `builtin:<spec>` (kp, cyclic:n, dihedral:n, klein, direct(A,B)) or a group JSON file.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct CategoryArgs {
    #[command(flatten)]
    group: GroupArg,
    /// `trivial`, `kp`, `cyclic:n:q` or `@file`; defaults to `kp` on builtin:kp and `trivial` otherwise.
    #[arg(long)]
    omega: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Order, element names, subgroups and their conjugacy classes.
    GroupInfo(GroupArg),
    /// Whether a cochain (default: the chosen ω) is a normalized cocycle.
    CocycleCheck {
        #[command(flatten)]
        category: CategoryArgs,
        /// Cochain JSON file to check instead of ω.
        #[arg(long)]
        cochain: Option<String>,
    },
    /// Find f with df = target, or report a nontrivial class.
    Solve {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        target: String,
    },
    /// Representatives of H²(H, Q/Z).
    H2 {
        #[command(flatten)]
        group: GroupArg,
        /// `full`, `trivial` or `[elements]`.
        #[arg(long, default_value = "full")]
        subgroup: String,
    },
    /// The 2-cochain Ω_g, optionally restricted to a subgroup.
    OmegaG {
        #[command(flatten)]
        category: CategoryArgs,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "full")]
        subgroup: String,
    },
    /// Decide whether two labels (H, ψ) give equivalent module categories.
    Equiv {
        #[command(flatten)]
        category: CategoryArgs,
        /// `full:zero`, `full:@file` or `H=[…];psi=zero|@file`.
        #[arg(long)]
        pair1: String,
        #[arg(long)]
        pair2: String,
    },
    /// Classify all labels up to equivalence.
    Classify {
        #[command(flatten)]
        category: CategoryArgs,
        #[arg(long, default_value_t = modcat::classify::DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Worker threads for the pairwise comparisons.
        #[arg(long)]
        threads: Option<usize>,
        /// Re-verify a saved JSON report against the category instead of classifying.
        #[arg(long)]
        verify: Option<String>,
    },
}

/// A command's result: the report and whether the answer was negative.
struct Outcome {
    text: String,
    json: Value,
    negative: bool,
}

impl Outcome {
    fn positive(text: String, json: Value) -> Outcome {
        Outcome {
            text,
            json,
            negative: false,
        }
    }
}

fn names(g: &Group, xs: &[usize]) -> String {
    xs.iter().map(|&x| g.name(x)).collect::<Vec<_>>().join(", ")
}

fn cochain_text(c: &Cochain) -> String {
    let g = c.parent();
    let mut out = String::new();
    let mut any = false;
    for (args, v) in c.nonzero_entries() {
        any = true;
        let _ = writeln!(out, "  ({}) = {v}", names(g, &args));
    }
    if !any {
        out.push_str("  0\n");
    }
    out
}

fn subgroup_json(h: &Subgroup) -> Value {
    json!(h.members())
}

fn group_info(group: &Group) -> Outcome {
    let subs = subgroups(group);
    let classes = subgroup_conjugacy_classes(group);
    let mut text = format!(
        "order {}, {}\n",
        group.order(),
        if group.is_abelian() { "abelian" } else { "nonabelian" }
    );
    let _ = writeln!(text, "elements: {}", group.names().join(", "));
    let _ = writeln!(text, "{} subgroups in {} conjugacy classes", subs.len(), classes.len());
    for class in &classes {
        let _ = writeln!(
            text,
            "  order {}: {}",
            class[0].order(),
            class
                .iter()
                .map(|h| format!("{{{}}}", names(group, h.members())))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    let json = json!({
        "order": group.order(),
        "names": group.names(),
        "abelian": group.is_abelian(),
        "subgroups": subs.iter().map(subgroup_json).collect::<Vec<_>>(),
        "conjugacy_classes": classes.iter().map(|c| c.iter().map(subgroup_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Outcome::positive(text, json)
}

fn cocycle_check(c: &Cochain) -> Outcome {
    let normalized = c.is_normalized();
    let violation = coboundary(c).nonzero_entries().next();
    let mut text = format!(
        "degree {}, {}\n",
        c.degree(),
        if normalized { "normalized" } else { "not normalized" }
    );
    match &violation {
        None => text.push_str("cocycle\n"),
        Some((t, v)) => {
            let _ = writeln!(text, "not a cocycle: d({}) = {v}", names(c.parent(), t));
        }
    }
    let json = json!({
        "degree": c.degree(),
        "normalized": normalized,
        "cocycle": violation.is_none(),
        "violation": violation.as_ref().map(|(t, v)| json!({"args": t, "val": v.to_string()})),
    });
    Outcome {
        text,
        json,
        negative: violation.is_some() || !normalized,
    }
}

fn solve(target: &Cochain) -> Result<Outcome, CliError> {
    Ok(match global().solve(target)? {
        Solution::Witness(f) => {
            let text = format!("coboundary; f =\n{}", cochain_text(&f));
            Outcome::positive(
                text,
                json!({"coboundary": true, "degree": f.degree(), "witness": values_json(&f)}),
            )
        }
        Solution::Obstructed { row, tuple } => {
            let g = target.parent();
            let text = format!(
                "nontrivial class (obstruction at row {row}, tuple ({}))\n",
                names(g, &tuple)
            );
            let json = json!({"coboundary": false, "obstruction": {"row": row, "tuple": tuple}});
            Outcome {
                text,
                json,
                negative: true,
            }
        }
    })
}

fn h2(h: &Subgroup) -> Result<Outcome, CliError> {
    let solver = global();
    let factors = solver.h2_factors(h);
    let reps = solver.h2_representatives(h)?;
    let mut text = format!("H² of {{{}}} has order {}", names(h.parent(), h.members()), reps.len());
    if !factors.is_empty() {
        let _ = write!(
            text,
            " ({})",
            factors.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join(" × ")
        );
    }
    text.push('\n');
    for (i, r) in reps.iter().enumerate() {
        let _ = write!(text, "class {i}:\n{}", cochain_text(r));
    }
    let json = json!({
        "subgroup": subgroup_json(h),
        "order": reps.len(),
        "factors": factors,
        "representatives": reps.iter().map(values_json).collect::<Vec<_>>(),
    });
    Ok(Outcome::positive(text, json))
}

fn omega_g(om: &Cochain, g: usize) -> Outcome {
    let grp = om.parent();
    let members = om.domain().members();
    let width = members
        .iter()
        .map(|&m| grp.name(m).chars().count())
        .max()
        .unwrap_or(1)
        .max(4);
    let mut text = format!("Ω_{} on {{{}}}\n", grp.name(g), names(grp, members));
    let _ = write!(text, "{:>width$}", "");
    for &b in members {
        let _ = write!(text, " {:>width$}", grp.name(b));
    }
    text.push('\n');
    for &a in members {
        let _ = write!(text, "{:>width$}", grp.name(a));
        for &b in members {
            let _ = write!(text, " {:>width$}", om.get(&[a, b]).to_string());
        }
        text.push('\n');
    }
    let json = json!({"g": g, "subgroup": subgroup_json(om.domain()), "values": values_json(om)});
    Outcome::positive(text, json)
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::GroupInfo(g) => Ok(group_info(&input::load_group(&g.group)?)),
        Command::CocycleCheck { category, cochain } => {
            let group = input::load_group(&category.group.group)?;
            let c = match cochain {
                Some(path) => input::load_cochain(path, &group)?,
                None => input::load_omega(category.omega.as_deref(), &category.group.group, &group)?.0,
            };
            Ok(cocycle_check(&c))
        }
        Command::Solve { group, target } => {
            let group = input::load_group(&group.group)?;
            solve(&input::load_cochain(target, &group)?)
        }
        Command::H2 { group, subgroup } => {
            let group = input::load_group(&group.group)?;
            h2(&input::subgroup(&group, subgroup)?)
        }
        Command::OmegaG { category, g, subgroup } => {
            let group = input::load_group(&category.group.group)?;
            let (cat, _) = input::load_category(category.omega.as_deref(), &category.group.group, &group)?;
            let g = input::element(&group, g)?;
            let h = input::subgroup(&group, subgroup)?;
            Ok(omega_g(&restrict(cat.big_omega(g), &h)?, g))
        }
        Command::Equiv { category, pair1, pair2 } => {
            let group = input::load_group(&category.group.group)?;
            let (cat, _) = input::load_category(category.omega.as_deref(), &category.group.group, &group)?;
            let a = input::pair(&cat, pair1)?;
            let b = input::pair(&cat, pair2)?;
            Ok(match equivalent_pairs(&a, &b)? {
                Some(w) => {
                    let text = format!("equivalent via g = {}; f =\n{}", group.name(w.g), cochain_text(&w.f));
                    let json = json!({"equivalent": true, "g": w.g, "f": values_json(&w.f)});
                    Outcome::positive(text, json)
                }
                None => Outcome {
                    text: "inequivalent\n".into(),
                    json: json!({"equivalent": false}),
                    negative: true,
                },
            })
        }
        Command::Classify {
            category,
            max_order,
            threads,
            verify,
        } => {
            let group = input::load_group(&category.group.group)?;
            let (cat, source) = input::load_category(category.omega.as_deref(), &category.group.group, &group)?;
            if let Some(path) = verify {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
                let j: ReportJson = serde_json::from_str(&text).map_err(modcat::Error::from)?;
                return Ok(match report_from_json(&j, &cat) {
                    Ok(r) => Outcome::positive(
                        format!(
                            "report verified: {} labels, {} classes\n",
                            r.pairs.len(),
                            r.class_count()
                        ),
                        json!({"verified": true, "class_count": r.class_count()}),
                    ),
                    Err(e) => Outcome {
                        text: format!("report rejected: {e}\n"),
                        json: json!({"verified": false, "reason": e.to_string()}),
                        negative: true,
                    },
                });
            }
            let opts = ClassifyOptions {
                max_order: *max_order,
                threads: *threads,
            };
            let report = modcat::classify_with(&cat, &opts)?;
            let mut text = format!("{} labels, {} classes\n", report.pairs.len(), report.class_count());
            for (k, class) in report.classes.iter().enumerate() {
                let rep = &report.pairs[class.representative];
                let psi = match rep.psi().nonzero_entries().count() {
                    0 => "0".to_string(),
                    n => format!("{n} nonzero values"),
                };
                let _ = writeln!(
                    text,
                    "class {k}: H = {{{}}}, ψ = {psi}, rank {}, members {:?}",
                    names(&group, rep.subgroup().members()),
                    rep.rank(),
                    class.members
                );
            }
            Ok(Outcome::positive(
                text,
                serde_json::to_value(report_to_json(&report, &source)).map_err(modcat::Error::from)?,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .init();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            if out.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
