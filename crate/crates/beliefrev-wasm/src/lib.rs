//! Browser demo bindings: revise a belief state interactively and compare
//! the revision rules side by side.
//!
//! Each export takes and returns JSON strings so the page needs no generated
//! glue beyond wasm-bindgen itself. The underlying functions are plain Rust
//! and unit-tested on the host; arithmetic is `f64` here.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use beliefrev::alternatives::{rule_belief, RuleKind};
use beliefrev::conditioning::{condition_dempster, condition_geometric, condition_unnormalized};
use beliefrev::constraints::{check_c1_values, check_c2f_c3f, check_c2r_c3r};
use beliefrev::generate::{random_mass, random_partition, random_subalgebra_mass};
use beliefrev::jeffrey::{
    jeffrey_dempster, jeffrey_geometric, project_to_subalgebra, FallbackPolicy, Revision,
};
use beliefrev::mass::mobius_nonnegativity;
use beliefrev::{Frame, MassFunction, Partition};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOLERANCE: f64 = 1e-9;

#[derive(Deserialize)]
struct MassEntryIn {
    set: Vec<String>,
    mass: f64,
}

#[derive(Deserialize)]
struct ReviseRequest {
    frame: Vec<String>,
    atoms: Vec<Vec<String>>,
    m1: Vec<MassEntryIn>,
    m2: Vec<MassEntryIn>,
    #[serde(default)]
    mode: Option<String>,
}

#[derive(Deserialize)]
struct ConditionRequest {
    frame: Vec<String>,
    m1: Vec<MassEntryIn>,
    event: Vec<String>,
}

#[derive(Serialize)]
struct MassEntryOut {
    set: String,
    mass: f64,
}

#[derive(Serialize)]
struct OrphanOut {
    set: String,
    mass: f64,
    reassigned: bool,
}

#[derive(Serialize)]
struct RuleOut {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    masses: Option<Vec<MassEntryOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subnormal: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    orphaned: Vec<OrphanOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1_pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c3f_pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c3r_pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_belief_function: Option<bool>,
}

#[derive(Serialize)]
struct ReviseResponse {
    frame: Vec<String>,
    m1: Vec<MassEntryOut>,
    m1_projection: Vec<MassEntryOut>,
    m2: Vec<MassEntryOut>,
    rules: Vec<RuleOut>,
}

#[derive(Serialize)]
struct IntervalOut {
    set: String,
    bel: f64,
    pl: f64,
}

#[derive(Serialize)]
struct ConditionedOut {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    masses: Option<Vec<MassEntryOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    intervals: Option<Vec<IntervalOut>>,
}

#[derive(Serialize)]
struct ConditionResponse {
    frame: Vec<String>,
    event: String,
    prior_intervals: Vec<IntervalOut>,
    rules: Vec<ConditionedOut>,
}

fn fail(message: impl std::fmt::Display) -> String {
    serde_json::to_string(&serde_json::json!({ "error": message.to_string() }))
        .expect("error response serializes")
}

fn parse_mass(
    frame: &Frame,
    entries: &[MassEntryIn],
    what: &str,
) -> Result<MassFunction<f64>, String> {
    let mut parsed = Vec::with_capacity(entries.len());
    let mut total = 0.0;
    for entry in entries {
        let set = frame
            .subset(&entry.set)
            .map_err(|e| format!("{what}: {e}"))?;
        if !entry.mass.is_finite() || entry.mass < 0.0 {
            return Err(format!(
                "{what}: mass {} on {} must be a nonnegative number",
                entry.mass,
                frame.render_mask(set)
            ));
        }
        total += entry.mass;
        parsed.push((set, entry.mass));
    }
    // Hand-edited values are allowed to be slightly off; rescale to total 1.
    if (total - 1.0).abs() > 1e-3 {
        return Err(format!("{what}: masses sum to {total}, expected 1"));
    }
    let entries = parsed.into_iter().map(|(set, mass)| (set, mass / total));
    MassFunction::new(frame.clone(), entries).map_err(|e| format!("{what}: {e}"))
}

fn mass_out(mass: &MassFunction<f64>) -> Vec<MassEntryOut> {
    let frame = mass.frame();
    mass.focal()
        .map(|(set, value)| MassEntryOut {
            set: frame.render_mask(set),
            mass: *value,
        })
        .collect()
}

fn intervals_out(mass: &MassFunction<f64>) -> Vec<IntervalOut> {
    let frame = mass.frame();
    let belief = mass.belief();
    let plausibility = mass.plausibility();
    belief
        .iter()
        .filter(|(set, _)| !set.is_empty())
        .map(|(set, bel)| IntervalOut {
            set: frame.render_mask(set),
            bel: *bel,
            pl: *plausibility.value(set),
        })
        .collect()
}

fn revise_rule_row(
    rule: RuleKind,
    m1: &MassFunction<f64>,
    m2: &MassFunction<f64>,
    partition: &Partition,
    policy: FallbackPolicy,
) -> RuleOut {
    let mut row = RuleOut {
        name: rule.to_string(),
        error: None,
        masses: None,
        subnormal: None,
        orphaned: Vec::new(),
        c1_pass: None,
        c1_max: None,
        c3f_pass: None,
        c3r_pass: None,
        is_belief_function: None,
    };
    let frame = m1.frame();

    let jeffrey = |outcome: beliefrev::Result<Revision<f64>>, row: &mut RuleOut| match outcome {
        Err(error) => {
            row.error = Some(error.to_string());
            None
        }
        Ok(revision) => {
            row.subnormal = Some(!revision.mass.is_normal());
            row.orphaned = revision
                .orphaned
                .iter()
                .map(|o| OrphanOut {
                    set: frame.render_mask(o.set),
                    mass: o.mass,
                    reassigned: o.reassigned,
                })
                .collect();
            row.masses = Some(mass_out(&revision.mass));
            row.is_belief_function = Some(true);
            Some(revision.mass)
        }
    };

    let mass = match rule {
        RuleKind::JeffreyGeometric => jeffrey(jeffrey_geometric(m1, partition, m2, policy), &mut row),
        RuleKind::JeffreyDempster => jeffrey(jeffrey_dempster(m1, partition, m2, policy), &mut row),
        _ => None,
    };

    let belief = match (&mass, rule) {
        (Some(mass), _) => mass.belief(),
        (None, _) => match rule_belief(rule, m1, m2, partition) {
            Ok(values) => {
                let mobius = mobius_nonnegativity(&values, &TOLERANCE);
                row.is_belief_function = Some(mobius.is_belief_function);
                values
            }
            Err(error) => {
                row.error = Some(error.to_string());
                return row;
            }
        },
    };
    if row.error.is_some() {
        return row;
    }

    if let Ok(report) = check_c1_values(&belief, m2, partition, &TOLERANCE) {
        row.c1_pass = Some(report.pass);
        row.c1_max = Some(report.max_violation);
    }
    if let Some(mass) = &mass {
        if let Ok(report) = check_c2f_c3f(m1, mass, partition, &TOLERANCE) {
            row.c3f_pass = Some(report.pass);
        }
        if let Ok(report) = check_c2r_c3r(m1, mass, partition, &TOLERANCE) {
            row.c3r_pass = Some(report.pass);
        }
    }
    row
}

pub fn revise_json(request: &str) -> String {
    let request: ReviseRequest = match serde_json::from_str(request) {
        Ok(request) => request,
        Err(error) => return fail(format!("request: {error}")),
    };
    let frame = match Frame::new(request.frame.clone()) {
        Ok(frame) => frame,
        Err(error) => return fail(format!("frame: {error}")),
    };
    let mut atoms = Vec::with_capacity(request.atoms.len());
    for atom in &request.atoms {
        match frame.subset(atom) {
            Ok(mask) => atoms.push(mask),
            Err(error) => return fail(format!("atoms: {error}")),
        }
    }
    let partition = match Partition::new(frame.n(), atoms) {
        Ok(partition) => partition,
        Err(error) => return fail(format!("atoms: {error}")),
    };
    let m1 = match parse_mass(&frame, &request.m1, "m1") {
        Ok(mass) => mass,
        Err(error) => return fail(error),
    };
    let m2 = match parse_mass(&frame, &request.m2, "m2") {
        Ok(mass) => mass,
        Err(error) => return fail(error),
    };
    let policy = match request.mode.as_deref() {
        None | Some("strict") => FallbackPolicy::Strict,
        Some("least-commitment") => FallbackPolicy::LeastCommitment,
        Some(other) => return fail(format!("mode: expected strict or least-commitment, got `{other}`")),
    };

    let projection = match project_to_subalgebra(&m1, &partition) {
        Ok(mass) => mass,
        Err(error) => return fail(error.to_string()),
    };
    let rules = RuleKind::ALL
        .iter()
        .map(|rule| revise_rule_row(*rule, &m1, &m2, &partition, policy))
        .collect();
    let response = ReviseResponse {
        frame: request.frame,
        m1: mass_out(&m1),
        m1_projection: mass_out(&projection),
        m2: mass_out(&m2),
        rules,
    };
    serde_json::to_string(&response).expect("response serializes")
}

pub fn condition_json(request: &str) -> String {
    let request: ConditionRequest = match serde_json::from_str(request) {
        Ok(request) => request,
        Err(error) => return fail(format!("request: {error}")),
    };
    let frame = match Frame::new(request.frame.clone()) {
        Ok(frame) => frame,
        Err(error) => return fail(format!("frame: {error}")),
    };
    let m1 = match parse_mass(&frame, &request.m1, "m1") {
        Ok(mass) => mass,
        Err(error) => return fail(error),
    };
    let event = match frame.subset(&request.event) {
        Ok(mask) => mask,
        Err(error) => return fail(format!("event: {error}")),
    };

    let mut rules = Vec::new();
    let runs: [(&str, beliefrev::Result<MassFunction<f64>>); 3] = [
        ("dempster", condition_dempster(&m1, event)),
        ("dempster-unnorm", condition_unnormalized(&m1, event)),
        ("geometric", condition_geometric(&m1, event)),
    ];
    for (name, outcome) in runs {
        rules.push(match outcome {
            Ok(mass) => ConditionedOut {
                name: name.to_string(),
                error: None,
                intervals: Some(intervals_out(&mass)),
                masses: Some(mass_out(&mass)),
            },
            Err(error) => ConditionedOut {
                name: name.to_string(),
                error: Some(error.to_string()),
                masses: None,
                intervals: None,
            },
        });
    }
    let response = ConditionResponse {
        frame: request.frame,
        event: frame.render_mask(event),
        prior_intervals: intervals_out(&m1),
        rules,
    };
    serde_json::to_string(&response).expect("response serializes")
}

pub fn random_instance_json(seed: u32, size: u8, focal_m1: u8, focal_m2: u8) -> String {
    let n = (size as usize).clamp(2, 8);
    let frame = Frame::of_size(n).expect("size clamped to the supported range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
    let partition = random_partition(&mut rng, n).expect("valid size");
    let m1: MassFunction<f64> = random_mass(&mut rng, &frame, (focal_m1 as usize).max(1), false);
    let m2: MassFunction<f64> =
        random_subalgebra_mass(&mut rng, &frame, &partition, (focal_m2 as usize).max(1));
    let entry = |mass: &MassFunction<f64>| -> Vec<serde_json::Value> {
        mass.focal()
            .map(|(set, value)| {
                serde_json::json!({
                    "set": frame.mask_labels(set),
                    "mass": value,
                })
            })
            .collect()
    };
    serde_json::to_string(&serde_json::json!({
        "frame": frame.labels(),
        "atoms": partition
            .atoms()
            .iter()
            .map(|atom| frame.mask_labels(*atom))
            .collect::<Vec<_>>(),
        "m1": entry(&m1),
        "m2": entry(&m2),
    }))
    .expect("instance serializes")
}

#[wasm_bindgen]
pub fn revise(request: &str) -> String {
    revise_json(request)
}

#[wasm_bindgen]
pub fn condition(request: &str) -> String {
    condition_json(request)
}

#[wasm_bindgen(js_name = randomInstance)]
pub fn random_instance(seed: u32, size: u8, focal_m1: u8, focal_m2: u8) -> String {
    random_instance_json(seed, size, focal_m1, focal_m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = r#"{
        "frame": ["a","b","c","d"],
        "atoms": [["a","b"],["c","d"]],
        "m1": [
            {"set": ["a"], "mass": 0.3},
            {"set": ["a","b"], "mass": 0.2},
            {"set": ["b","c"], "mass": 0.3},
            {"set": ["c","d"], "mass": 0.2}
        ],
        "m2": [
            {"set": ["a","b"], "mass": 0.5},
            {"set": ["c","d"], "mass": 0.3},
            {"set": ["a","b","c","d"], "mass": 0.2}
        ]
    }"#;

    #[test]
    fn revise_worked_instance() {
        let response: serde_json::Value = serde_json::from_str(&revise_json(WORKED)).unwrap();
        let rules = response["rules"].as_array().unwrap();
        let geometric = &rules[0];
        assert_eq!(geometric["name"], "jeffrey-geometric");
        assert_eq!(geometric["c1_pass"], true);
        assert_eq!(geometric["c3f_pass"], true);
        assert_eq!(geometric["c3r_pass"], false);
        let masses = geometric["masses"].as_array().unwrap();
        let find = |set: &str| {
            masses
                .iter()
                .find(|m| m["set"] == set)
                .unwrap_or_else(|| panic!("missing {set}"))["mass"]
                .as_f64()
                .unwrap()
        };
        assert!((find("{a}") - 0.3).abs() < 1e-12);
        assert!((find("{b,c}") - 0.2).abs() < 1e-12);

        let shafer = rules.iter().find(|r| r["name"] == "shafer").unwrap();
        assert_eq!(shafer["c1_pass"], false);

        // Projection of the prior onto the subalgebra.
        let projection = response["m1_projection"].as_array().unwrap();
        assert_eq!(projection.len(), 3);
    }

    #[test]
    fn condition_worked_instance() {
        let request = r#"{
            "frame": ["a","b","c","d"],
            "m1": [
                {"set": ["a"], "mass": 0.3},
                {"set": ["a","b"], "mass": 0.2},
                {"set": ["b","c"], "mass": 0.3},
                {"set": ["c","d"], "mass": 0.2}
            ],
            "event": ["a","b"]
        }"#;
        let response: serde_json::Value = serde_json::from_str(&condition_json(request)).unwrap();
        assert_eq!(response["event"], "{a,b}");
        let rules = response["rules"].as_array().unwrap();
        assert_eq!(rules[0]["name"], "dempster");
        let masses = rules[0]["masses"].as_array().unwrap();
        let a = masses.iter().find(|m| m["set"] == "{a}").unwrap();
        assert!((a["mass"].as_f64().unwrap() - 0.375).abs() < 1e-12);
    }

    #[test]
    fn random_instances_are_loadable_and_deterministic() {
        let a = random_instance_json(7, 4, 3, 2);
        let b = random_instance_json(7, 4, 3, 2);
        assert_eq!(a, b);
        let instance: serde_json::Value = serde_json::from_str(&a).unwrap();
        let request = serde_json::json!({
            "frame": instance["frame"],
            "atoms": instance["atoms"],
            "m1": instance["m1"],
            "m2": instance["m2"],
            "mode": "least-commitment",
        });
        let response: serde_json::Value =
            serde_json::from_str(&revise_json(&request.to_string())).unwrap();
        assert!(response.get("error").is_none(), "{response}");
        assert_eq!(response["rules"][0]["c1_pass"], true);
    }

    #[test]
    fn errors_are_reported_as_json() {
        let response: serde_json::Value = serde_json::from_str(&revise_json("{}")).unwrap();
        assert!(response["error"].is_string());
        let bad_event = r#"{"frame": ["a"], "m1": [{"set": ["a"], "mass": 1.0}], "event": ["z"]}"#;
        let response: serde_json::Value =
            serde_json::from_str(&condition_json(bad_event)).unwrap();
        assert!(response["error"].as_str().unwrap().contains("unknown element"));
    }
}
