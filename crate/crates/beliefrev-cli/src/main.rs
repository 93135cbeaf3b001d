//! `beliefrev`: belief-function revision from the command line.
//!
//! Subcommands: `bel`, `condition`, `jeffrey`, `check`, `compare`,
//! `provability`, `gen`. Exit codes: 0 success, 1 a requested constraint
//! check failed, 2 malformed input or a rule precondition failure.

mod docs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use beliefrev::alternatives::{
    dubois_prade_revision, find_c1_violation, ichihashi_tanaka, shafer_revision, IchihashiVariant,
    RuleKind,
};
use beliefrev::conditioning::{condition_dempster, condition_geometric, condition_unnormalized};
use beliefrev::constraints::{
    check_c1, check_c1_values, check_c2f_c3f, check_c2r_c3r, check_r1_r2, check_shafer_property,
    ConstraintId, ConstraintReport,
};
use beliefrev::generate::{random_mass, random_model, random_partition, random_subalgebra_mass};
use beliefrev::jeffrey::{
    atom_probabilities, jeffrey_dempster, jeffrey_geometric, FallbackPolicy, Revision,
};
use beliefrev::mass::{mass_from_belief, mobius_nonnegativity};
use beliefrev::{Frame, MassFunction, Partition, SetFunction, Weight};

use docs::{
    load_json, mass_from_doc, mass_to_doc, model_from_doc, model_to_doc, parse_event,
    partition_from_doc, partition_to_doc, set_function_to_doc, InstanceDoc, MassDoc, ModelDoc,
    PartitionDoc,
};
use report::{report_table, report_to_doc, ReportDoc};

#[derive(Parser)]
#[command(name = "beliefrev", version, about = "Belief-function revision toolkit")]
struct Cli {
    /// Use exact rational arithmetic; decimal strings are parsed exactly
    #[arg(long, global = true)]
    exact: bool,

    /// Tolerance for floating-mode sum checks and comparisons
    #[arg(long, global = true, env = "BELIEFREV_TOLERANCE", default_value_t = 1e-9)]
    tolerance: f64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,

    /// Frame document for mass/partition files that omit their frame field
    #[arg(long, global = true)]
    frame: Option<PathBuf>,

    /// Prior mass document (also the probability p1 for R1/R2 checks)
    #[arg(long, global = true)]
    m1: Option<PathBuf>,

    /// Update mass document on the subalgebra
    #[arg(long, global = true)]
    m2: Option<PathBuf>,

    /// Revised mass document (checked against the constraints)
    #[arg(long, global = true)]
    m3: Option<PathBuf>,

    /// Partition document (atoms of the subalgebra)
    #[arg(long, global = true)]
    partition: Option<PathBuf>,

    /// Conditioning event as comma-separated element names
    #[arg(long, global = true)]
    event: Option<String>,

    /// Conditioning or revision rule, per subcommand
    #[arg(long, global = true)]
    rule: Option<String>,

    /// Zero-denominator fallback: strict (paper literal) or least-commitment
    #[arg(long, global = true, default_value = "strict")]
    mode: String,

    /// Seed for every random draw
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Trial budget for the violation search
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Belief and plausibility of every subset of the frame
    Bel,
    /// Condition on a single event (--rule dempster|dempster-unnorm|geometric)
    Condition,
    /// Revise m1 by m2 on a subalgebra (--rule geometric|dempster)
    Jeffrey,
    /// Run constraint checkers against given mass functions
    Check {
        /// Comma-separated list: C1, C3F, C3R, R1R2, shafer
        #[arg(long, value_delimiter = ',')]
        constraints: Vec<String>,
    },
    /// Side-by-side rule comparison on one instance, or a seeded violation
    /// search with --search
    Compare {
        /// Comma-separated rule names; defaults to all
        #[arg(long, value_delimiter = ',')]
        rules: Vec<String>,
        /// Search seeded random instances for C1 violations instead of
        /// comparing on given files
        #[arg(long)]
        search: bool,
        /// Frame size for the violation search
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
    /// Probability-of-provability model operations
    Provability {
        /// Model document
        #[arg(long, global = true)]
        model: Option<PathBuf>,
        #[command(subcommand)]
        op: ProvabilityOp,
    },
    /// Emit seeded random instances
    Gen {
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 3)]
        focal_m1: usize,
        #[arg(long, default_value_t = 2)]
        focal_m2: usize,
        #[arg(long, default_value_t = 4)]
        hypotheses: usize,
        #[arg(long, value_enum, default_value_t = EmitKind::Instance)]
        emit: EmitKind,
    },
}

#[derive(Subcommand)]
enum ProvabilityOp {
    /// The induced basic belief assignment
    Bba,
    /// P(provable) of --event
    Prob,
    /// Intersect every hypothesis image with --event
    DataCondition,
    /// Conditional provability given --event
    SourceCondition,
    /// Does the model collapse to a probability model?
    Collapse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitKind {
    Instance,
    M1,
    M2,
    Partition,
    Model,
}

#[derive(Serialize, Deserialize)]
struct FrameDoc {
    frame: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = if cli.exact {
        run::<BigRational>(&cli)
    } else {
        run::<f64>(&cli)
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn tolerance_of<T: Weight>(cli: &Cli) -> T {
    if T::EXACT {
        T::default_tolerance()
    } else {
        T::parse_decimal(&format!("{}", cli.tolerance)).unwrap_or_else(|_| T::default_tolerance())
    }
}

struct Inputs<'c> {
    cli: &'c Cli,
    frame: Option<Frame>,
}

impl<'c> Inputs<'c> {
    fn new(cli: &'c Cli) -> Result<Self, String> {
        let frame = match &cli.frame {
            Some(path) => {
                let doc: FrameDoc = load_json(path)?;
                Some(Frame::new(doc.frame).map_err(|e| format!("--frame: {e}"))?)
            }
            None => None,
        };
        Ok(Inputs { cli, frame })
    }

    fn mass<T: Weight>(
        &self,
        path: &Option<PathBuf>,
        flag: &str,
        tolerance: &T,
    ) -> Result<MassFunction<T>, String> {
        let path = path
            .as_ref()
            .ok_or_else(|| format!("missing {flag} <file>"))?;
        let doc: MassDoc = load_json(path)?;
        mass_from_doc(&doc, self.frame.as_ref(), tolerance, &format!("{flag} ({})", path.display()))
    }

    fn partition(&self) -> Result<(Frame, Partition), String> {
        let path = self
            .cli
            .partition
            .as_ref()
            .ok_or_else(|| "missing --partition <file>".to_string())?;
        let doc: PartitionDoc = load_json(path)?;
        partition_from_doc(&doc, self.frame.as_ref(), &format!("--partition ({})", path.display()))
    }

    fn event(&self, frame: &Frame) -> Result<beliefrev::SubsetMask, String> {
        let text = self
            .cli
            .event
            .as_ref()
            .ok_or_else(|| "missing --event <elements>".to_string())?;
        parse_event(frame, text).map_err(|e| format!("--event: {e}"))
    }

    fn policy(&self) -> Result<FallbackPolicy, String> {
        FallbackPolicy::from_str(&self.cli.mode)
            .map_err(|_| format!("--mode: expected strict or least-commitment, got `{}`", self.cli.mode))
    }

    fn rule(&self) -> Result<&str, String> {
        self.cli
            .rule
            .as_deref()
            .ok_or_else(|| "missing --rule".to_string())
    }
}

fn emit<D: Serialize>(cli: &Cli, doc: &D, table: String) {
    match cli.output {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(doc).expect("serializable"))
        }
        OutputFormat::Table => print!("{table}"),
    }
}

fn mass_table<T: Weight>(mass: &MassFunction<T>) -> String {
    let frame = mass.frame();
    let mut out = String::new();
    for (set, value) in mass.focal() {
        out.push_str(&format!("{:<16} {}\n", frame.render_mask(set), value.render()));
    }
    if !mass.is_normal() {
        out.push_str(&format!("status           subnormal (total {})\n", mass.total().render()));
    }
    out
}

fn print_revision_warnings<T: Weight>(revision: &Revision<T>, frame: &Frame) {
    for orphan in &revision.orphaned {
        let action = if orphan.reassigned {
            "reassigned to the set itself"
        } else {
            "dropped (output subnormal)"
        };
        eprintln!(
            "warning: update mass {} on {} has no prior support ({:?}); {action}",
            orphan.mass.render(),
            frame.render_mask(orphan.set),
            orphan.reason,
        );
    }
}

fn run<T: Weight>(cli: &Cli) -> Result<u8, String> {
    let inputs = Inputs::new(cli)?;
    let tolerance: T = tolerance_of::<T>(cli);
    match &cli.command {
        Command::Bel => {
            let m: MassFunction<T> = inputs.mass(&cli.m1, "--m1", &tolerance)?;
            let belief = m.belief();
            let plausibility = m.plausibility();
            let frame = m.frame();
            let doc = serde_json::json!({
                "frame": frame.labels(),
                "values": belief.iter().map(|(set, bel)| serde_json::json!({
                    "set": frame.mask_labels(set),
                    "bel": bel.render(),
                    "pl": plausibility.value(set).render(),
                })).collect::<Vec<_>>(),
            });
            let mut table = format!("{:<16} {:<24} {}\n", "set", "bel", "pl");
            for (set, bel) in belief.iter() {
                table.push_str(&format!(
                    "{:<16} {:<24} {}\n",
                    frame.render_mask(set),
                    bel.render(),
                    plausibility.value(set).render(),
                ));
            }
            emit(cli, &doc, table);
            Ok(0)
        }

        Command::Condition => {
            let m: MassFunction<T> = inputs.mass(&cli.m1, "--m1", &tolerance)?;
            let event = inputs.event(m.frame())?;
            let conditioned = match inputs.rule()? {
                "dempster" => condition_dempster(&m, event),
                "dempster-unnorm" => condition_unnormalized(&m, event),
                "geometric" => condition_geometric(&m, event),
                other => return Err(format!("--rule: unknown conditioning rule `{other}`")),
            }
            .map_err(|e| e.to_string())?;
            emit(cli, &mass_to_doc(&conditioned, true), mass_table(&conditioned));
            Ok(0)
        }

        Command::Jeffrey => {
            let m1: MassFunction<T> = inputs.mass(&cli.m1, "--m1", &tolerance)?;
            let m2: MassFunction<T> = inputs.mass(&cli.m2, "--m2", &tolerance)?;
            let (_, partition) = inputs.partition()?;
            let policy = inputs.policy()?;
            let revision = match inputs.rule()? {
                "geometric" => jeffrey_geometric(&m1, &partition, &m2, policy),
                "dempster" => jeffrey_dempster(&m1, &partition, &m2, policy),
                other => return Err(format!("--rule: unknown Jeffrey rule `{other}`")),
            }
            .map_err(|e| e.to_string())?;
            print_revision_warnings(&revision, m1.frame());
            emit(cli, &mass_to_doc(&revision.mass, true), mass_table(&revision.mass));
            Ok(0)
        }

        Command::Check { constraints } => {
            if constraints.is_empty() {
                return Err("missing --constraints (C1, C3F, C3R, R1R2, shafer)".to_string());
            }
            let (frame, partition) = inputs.partition()?;
            let mut reports: Vec<ConstraintReport<T>> = Vec::new();
            for name in constraints {
                let id = ConstraintId::from_str(name)
                    .map_err(|_| format!("--constraints: unknown constraint `{name}`"))?;
                let report = match id {
                    ConstraintId::C1 => {
                        let m3: MassFunction<T> = inputs.mass(&cli.m3, "--m3", &tolerance)?;
                        let m2: MassFunction<T> = inputs.mass(&cli.m2, "--m2", &tolerance)?;
                        check_c1(&m3, &m2, &partition, &tolerance)
                    }
                    ConstraintId::C2fC3f => {
                        let m1: MassFunction<T> = inputs.mass(&cli.m1, "--m1", &tolerance)?;
                        let m3: MassFunction<T> = inputs.mass(&cli.m3, "--m3", &tolerance)?;
                        check_c2f_c3f(&m1, &m3, &partition, &tolerance)
                    }
                    ConstraintId::C2rC3r => {
                        let m1: MassFunction<T> = inputs.mass(&cli.m1, "--m1", &tolerance)?;
                        let m3: MassFunction<T> = inputs.mass(&cli.m3, "--m3", &tolerance)?;
                        check_c2r_c3r(&m1, &m3, &partition, &tolerance)
                    }
                    ConstraintId::R1R2 => {
                        let p1: MassFunction<T> = inputs.mass(&cli.m1, "--m1", &tolerance)?;
                        let p3: MassFunction<T> = inputs.mass(&cli.m3, "--m3", &tolerance)?;
                        let m2: MassFunction<T> = inputs.mass(&cli.m2, "--m2", &tolerance)?;
                        let update = atom_probabilities(&m2, &partition).map_err(|e| e.to_string())?;
                        check_r1_r2(&p1, &p3, &partition, &update, &tolerance)
                    }
                    ConstraintId::ShaferInvariance => {
                        let m1: MassFunction<T> = inputs.mass(&cli.m1, "--m1", &tolerance)?;
                        let m2: MassFunction<T> = inputs.mass(&cli.m2, "--m2", &tolerance)?;
                        check_shafer_property(&m1, &m2, &partition, &tolerance)
                    }
                }
                .map_err(|e| e.to_string())?;
                reports.push(report);
            }
            let failed = reports.iter().any(|r| !r.pass);
            let doc: Vec<ReportDoc> = reports.iter().map(|r| report_to_doc(&frame, r)).collect();
            let table: String = reports.iter().map(|r| report_table(&frame, r)).collect();
            emit(cli, &doc, table);
            Ok(if failed { 1 } else { 0 })
        }

        Command::Compare { rules, search, size } => {
            let names: Vec<RuleKind> = if rules.is_empty() {
                RuleKind::ALL.to_vec()
            } else {
                rules
                    .iter()
                    .map(|name| {
                        RuleKind::from_str(name)
                            .map_err(|_| format!("--rules: unknown rule `{name}`"))
                    })
                    .collect::<Result<_, _>>()?
            };
            if *search {
                run_search::<T>(cli, &names, *size)
            } else {
                run_compare::<T>(cli, &inputs, &names, &tolerance)
            }
        }

        Command::Provability { model, op } => {
            let path = model
                .as_ref()
                .ok_or_else(|| "missing --model <file>".to_string())?;
            let doc: ModelDoc = load_json(path)?;
            let model = model_from_doc::<T>(&doc, inputs.frame.as_ref(), "--model")?;
            match op {
                ProvabilityOp::Bba => {
                    let bba = model.induced_bba();
                    emit(cli, &mass_to_doc(&bba, true), mass_table(&bba));
                }
                ProvabilityOp::Prob => {
                    let event = inputs.event(model.frame())?;
                    let value = model
                        .provability_probability(event)
                        .map_err(|e| e.to_string())?;
                    emit(
                        cli,
                        &serde_json::json!({
                            "event": model.frame().mask_labels(event),
                            "provable": value.render(),
                        }),
                        format!("P(provable {}) = {}\n", model.frame().render_mask(event), value.render()),
                    );
                }
                ProvabilityOp::DataCondition => {
                    let event = inputs.event(model.frame())?;
                    let conditioned = model.data_condition(event).map_err(|e| e.to_string())?;
                    let doc = model_to_doc(&conditioned, true);
                    let mut table = String::new();
                    for h in conditioned.hypotheses() {
                        table.push_str(&format!(
                            "{:<8} {:<24} {}\n",
                            h.label,
                            h.probability.render(),
                            conditioned.frame().render_mask(h.image),
                        ));
                    }
                    emit(cli, &doc, table);
                }
                ProvabilityOp::SourceCondition => {
                    let event = inputs.event(model.frame())?;
                    let values = model.source_condition(event).map_err(|e| e.to_string())?;
                    let doc = set_function_to_doc(&values);
                    let mut table = String::new();
                    for (set, value) in values.iter() {
                        table.push_str(&format!(
                            "{:<16} {}\n",
                            model.frame().render_mask(set),
                            value.render(),
                        ));
                    }
                    emit(cli, &doc, table);
                }
                ProvabilityOp::Collapse => {
                    let collapses = model.is_probabilistic_collapse();
                    let bayesian = model.induced_bba().is_bayesian();
                    emit(
                        cli,
                        &serde_json::json!({
                            "collapses": collapses,
                            "induced_bba_bayesian": bayesian,
                        }),
                        format!("collapses to probability model: {collapses}\n"),
                    );
                }
            }
            Ok(0)
        }

        Command::Gen {
            size,
            focal_m1,
            focal_m2,
            hypotheses,
            emit: kind,
        } => {
            let frame = Frame::of_size(*size).map_err(|e| format!("--size: {e}"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let partition = random_partition(&mut rng, *size).map_err(|e| e.to_string())?;
            let m1: MassFunction<T> = random_mass(&mut rng, &frame, *focal_m1, false);
            let m2: MassFunction<T> = random_subalgebra_mass(&mut rng, &frame, &partition, *focal_m2);
            match kind {
                EmitKind::Instance => {
                    let doc = InstanceDoc {
                        frame: frame.labels().to_vec(),
                        partition: partition_to_doc(&frame, &partition, false),
                        m1: mass_to_doc(&m1, false),
                        m2: mass_to_doc(&m2, false),
                    };
                    let mut table = format!("frame: {}\n", frame.labels().join(","));
                    table.push_str(&format!(
                        "atoms: {}\n",
                        partition
                            .atoms()
                            .iter()
                            .map(|a| frame.render_mask(*a))
                            .collect::<Vec<_>>()
                            .join(" ")
                    ));
                    table.push_str("m1:\n");
                    table.push_str(&mass_table(&m1));
                    table.push_str("m2:\n");
                    table.push_str(&mass_table(&m2));
                    emit(cli, &doc, table);
                }
                EmitKind::M1 => emit(cli, &mass_to_doc(&m1, true), mass_table(&m1)),
                EmitKind::M2 => emit(cli, &mass_to_doc(&m2, true), mass_table(&m2)),
                EmitKind::Partition => {
                    let doc = partition_to_doc(&frame, &partition, true);
                    let table = partition
                        .atoms()
                        .iter()
                        .map(|a| frame.render_mask(*a))
                        .collect::<Vec<_>>()
                        .join(" ")
                        + "\n";
                    emit(cli, &doc, table);
                }
                EmitKind::Model => {
                    let model = random_model::<T, _>(&mut rng, &frame, *hypotheses, true);
                    let doc = model_to_doc(&model, true);
                    let mut table = String::new();
                    for h in model.hypotheses() {
                        table.push_str(&format!(
                            "{:<8} {:<24} {}\n",
                            h.label,
                            h.probability.render(),
                            frame.render_mask(h.image),
                        ));
                    }
                    emit(cli, &doc, table);
                }
            }
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct CompareRowDoc {
    rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1: Option<ReportDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c3f_pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c3r_pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_belief_function: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    masses: Option<MassDoc>,
}

fn run_compare<T: Weight>(
    cli: &Cli,
    inputs: &Inputs,
    rules: &[RuleKind],
    tolerance: &T,
) -> Result<u8, String> {
    let m1: MassFunction<T> = inputs.mass(&cli.m1, "--m1", tolerance)?;
    let m2: MassFunction<T> = inputs.mass(&cli.m2, "--m2", tolerance)?;
    let (frame, partition) = inputs.partition()?;
    let policy = inputs.policy()?;

    let mut rows = Vec::new();
    let mut failed = false;
    for rule in rules {
        let outcome: Result<(SetFunction<T>, Option<MassFunction<T>>), beliefrev::Error> =
            match rule {
                RuleKind::JeffreyGeometric => jeffrey_geometric(&m1, &partition, &m2, policy)
                    .map(|r| (r.mass.belief(), Some(r.mass))),
                RuleKind::JeffreyDempster => jeffrey_dempster(&m1, &partition, &m2, policy)
                    .map(|r| (r.mass.belief(), Some(r.mass))),
                RuleKind::Shafer => shafer_revision(&m1, &m2).map(|m| (m.belief(), Some(m))),
                RuleKind::DuboisPrade => {
                    dubois_prade_revision(&m1, &m2, &partition).map(|v| (v, None))
                }
                RuleKind::Ichihashi1 => {
                    ichihashi_tanaka(&m1, &m2, &partition, IchihashiVariant::One).map(|v| (v, None))
                }
                RuleKind::Ichihashi2 => {
                    ichihashi_tanaka(&m1, &m2, &partition, IchihashiVariant::Two).map(|v| (v, None))
                }
                RuleKind::Ichihashi3 => ichihashi_tanaka(&m1, &m2, &partition, IchihashiVariant::Three)
                    .map(|v| (v, None)),
            };
        let row = match outcome {
            Err(error) => CompareRowDoc {
                rule: rule.to_string(),
                error: Some(error.to_string()),
                c1: None,
                c3f_pass: None,
                c3r_pass: None,
                is_belief_function: None,
                masses: None,
            },
            Ok((belief, mass)) => {
                let c1 = check_c1_values(&belief, &m2, &partition, tolerance)
                    .map_err(|e| e.to_string())?;
                // Rival outputs only admit the C3 mass-ratio checks when they
                // are belief functions at all.
                let (mass, is_belief) = match mass {
                    Some(mass) => (Some(mass), Some(true)),
                    None => {
                        let mobius = mobius_nonnegativity(&belief, tolerance);
                        if mobius.is_belief_function {
                            (mass_from_belief(&belief).ok(), Some(true))
                        } else {
                            (None, Some(false))
                        }
                    }
                };
                let (c3f_pass, c3r_pass) = match &mass {
                    Some(m3) => (
                        Some(check_c2f_c3f(&m1, m3, &partition, tolerance).map_err(|e| e.to_string())?.pass),
                        Some(check_c2r_c3r(&m1, m3, &partition, tolerance).map_err(|e| e.to_string())?.pass),
                    ),
                    None => (None, None),
                };
                failed |= !c1.pass
                    || c3f_pass == Some(false) && matches!(rule, RuleKind::JeffreyGeometric)
                    || c3r_pass == Some(false) && matches!(rule, RuleKind::JeffreyDempster);
                failed |= !c1.pass;
                CompareRowDoc {
                    rule: rule.to_string(),
                    error: None,
                    c1: Some(report_to_doc(&frame, &c1)),
                    c3f_pass,
                    c3r_pass,
                    is_belief_function: is_belief,
                    masses: mass.as_ref().map(|m| mass_to_doc(m, false)),
                }
            }
        };
        rows.push(row);
    }

    let mut table = format!(
        "{:<20} {:<6} {:<14} {:<8} {:<8} {}\n",
        "rule", "C1", "max violation", "C3F", "C3R", "belief function"
    );
    for row in &rows {
        match &row.error {
            Some(error) => table.push_str(&format!("{:<20} error: {error}\n", row.rule)),
            None => {
                let c1 = row.c1.as_ref().expect("set when no error");
                let flag = |value: Option<bool>| match value {
                    Some(true) => "pass",
                    Some(false) => "fail",
                    None => "-",
                };
                table.push_str(&format!(
                    "{:<20} {:<6} {:<14} {:<8} {:<8} {}\n",
                    row.rule,
                    if c1.pass { "pass" } else { "fail" },
                    c1.max_violation,
                    flag(row.c3f_pass),
                    flag(row.c3r_pass),
                    flag(row.is_belief_function),
                ));
            }
        }
    }
    emit(cli, &rows, table);
    Ok(if failed { 1 } else { 0 })
}

#[derive(Serialize)]
struct SearchRowDoc {
    rule: String,
    trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation_at_trial: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<InstanceDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ReportDoc>,
}

fn run_search<T: Weight>(cli: &Cli, rules: &[RuleKind], size: usize) -> Result<u8, String> {
    let mut rows = Vec::new();
    let mut any_found = false;
    for rule in rules {
        let witness =
            find_c1_violation::<T>(*rule, cli.seed, cli.trials, size).map_err(|e| e.to_string())?;
        let row = match witness {
            None => SearchRowDoc {
                rule: rule.to_string(),
                trials: cli.trials,
                violation_at_trial: None,
                instance: None,
                report: None,
            },
            Some(violation) => {
                any_found = true;
                SearchRowDoc {
                    rule: rule.to_string(),
                    trials: cli.trials,
                    violation_at_trial: Some(violation.trial),
                    instance: Some(InstanceDoc {
                        frame: violation.frame.labels().to_vec(),
                        partition: partition_to_doc(&violation.frame, &violation.partition, false),
                        m1: mass_to_doc(&violation.m1, false),
                        m2: mass_to_doc(&violation.m2, false),
                    }),
                    report: Some(report_to_doc(&violation.frame, &violation.report)),
                }
            }
        };
        rows.push(row);
    }
    let mut table = format!("{:<20} {}\n", "rule", "C1 violation");
    for row in &rows {
        match row.violation_at_trial {
            Some(trial) => table.push_str(&format!("{:<20} found at trial {trial}\n", row.rule)),
            None => table.push_str(&format!(
                "{:<20} none found in {} trials\n",
                row.rule, row.trials
            )),
        }
    }
    emit(cli, &rows, table);
    Ok(if any_found { 1 } else { 0 })
}
