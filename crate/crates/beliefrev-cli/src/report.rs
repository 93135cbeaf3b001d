//! Rendering of constraint reports as JSON documents and plain-text tables.

use serde::Serialize;

use beliefrev::constraints::{ConstraintReport, Witness};
use beliefrev::{Frame, Weight};

#[derive(Serialize, Clone, Debug)]
pub struct WitnessDoc {
    pub x: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<Vec<String>>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct ReportDoc {
    pub constraint: String,
    pub pass: bool,
    pub max_violation: String,
    pub checked: usize,
    pub witnesses: Vec<WitnessDoc>,
}

fn labels(frame: &Frame, mask: beliefrev::SubsetMask) -> Vec<String> {
    frame.mask_labels(mask).iter().map(|s| s.to_string()).collect()
}

fn witness_to_doc<T: Weight>(frame: &Frame, witness: &Witness<T>) -> WitnessDoc {
    WitnessDoc {
        x: labels(frame, witness.x),
        y: witness.y.map(|y| labels(frame, y)),
        scope: witness.scope.map(|s| labels(frame, s)),
        lhs: witness.lhs.render(),
        rhs: witness.rhs.render(),
    }
}

pub fn report_to_doc<T: Weight>(frame: &Frame, report: &ConstraintReport<T>) -> ReportDoc {
    ReportDoc {
        constraint: report.id.to_string(),
        pass: report.pass,
        max_violation: report.max_violation.render(),
        checked: report.checked,
        witnesses: report
            .witnesses
            .iter()
            .map(|w| witness_to_doc(frame, w))
            .collect(),
    }
}

pub fn report_table<T: Weight>(frame: &Frame, report: &ConstraintReport<T>) -> String {
    let mut out = format!(
        "{}: {} (checked {}, max violation {})\n",
        report.id,
        if report.pass { "PASS" } else { "FAIL" },
        report.checked,
        report.max_violation.render(),
    );
    for witness in &report.witnesses {
        let pair = match witness.y {
            Some(y) => format!("{}, {}", frame.render_mask(witness.x), frame.render_mask(y)),
            None => frame.render_mask(witness.x),
        };
        let scope = match witness.scope {
            Some(scope) => format!(" in {}", frame.render_mask(scope)),
            None => String::new(),
        };
        out.push_str(&format!(
            "  {pair}{scope}: lhs {} != rhs {}\n",
            witness.lhs.render(),
            witness.rhs.render(),
        ));
    }
    out
}
