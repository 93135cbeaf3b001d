//! JSON document formats shared by every subcommand.
//!
//! Masses and probabilities are serialized as decimal strings (`"0.1875"`,
//! or `"p/q"` for non-terminating rationals) so exact-mode values survive a
//! round trip; plain JSON numbers are accepted on input. Sets and atoms are
//! lists of element names; the empty list is the empty set. Subsets are
//! always emitted in canonical bitmask order, so identical inputs produce
//! byte-identical documents.

use serde::{Deserialize, Serialize};

use beliefrev::provability::{Hypothesis, HypothesisModel};
use beliefrev::{Frame, MassFunction, Normalization, Partition, SetFunction, SubsetMask, Weight};

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum NumberLike {
    Text(String),
    Number(serde_json::Number),
}

impl NumberLike {
    pub fn as_text(&self) -> String {
        match self {
            NumberLike::Text(text) => text.clone(),
            NumberLike::Number(number) => number.to_string(),
        }
    }

    pub fn parse<T: Weight>(&self) -> Result<T, String> {
        T::parse_decimal(&self.as_text()).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MassEntryDoc {
    pub set: Vec<String>,
    pub mass: NumberLike,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MassDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    pub masses: Vec<MassEntryDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PartitionDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<String>>,
    pub atoms: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HypothesisDoc {
    pub label: String,
    pub p: NumberLike,
    pub image: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ModelDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<String>>,
    pub hypotheses: Vec<HypothesisDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct InstanceDoc {
    pub frame: Vec<String>,
    pub partition: PartitionDoc,
    pub m1: MassDoc,
    pub m2: MassDoc,
}

#[derive(Serialize, Clone, Debug)]
pub struct SetValueDoc {
    pub set: Vec<String>,
    pub value: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct SetFunctionDoc {
    pub frame: Vec<String>,
    pub values: Vec<SetValueDoc>,
}

/// Resolves the frame a document runs over: the document's own `frame` field
/// when present, otherwise the `--frame` file, with agreement enforced.
pub fn resolve_frame(
    doc_frame: Option<&Vec<String>>,
    flag_frame: Option<&Frame>,
    what: &str,
) -> Result<Frame, String> {
    match (doc_frame, flag_frame) {
        (Some(labels), Some(frame)) => {
            let doc = Frame::new(labels.clone()).map_err(|e| format!("{what}: {e}"))?;
            if &doc != frame {
                return Err(format!("{what}: frame disagrees with --frame"));
            }
            Ok(doc)
        }
        (Some(labels), None) => Frame::new(labels.clone()).map_err(|e| format!("{what}: {e}")),
        (None, Some(frame)) => Ok(frame.clone()),
        (None, None) => Err(format!("{what}: no frame given (add a \"frame\" field or pass --frame)")),
    }
}

pub fn mass_from_doc<T: Weight>(
    doc: &MassDoc,
    flag_frame: Option<&Frame>,
    tolerance: &T,
    what: &str,
) -> Result<MassFunction<T>, String> {
    let frame = resolve_frame(doc.frame.as_ref(), flag_frame, what)?;
    let mut entries = Vec::with_capacity(doc.masses.len());
    for entry in &doc.masses {
        let set = frame
            .subset(&entry.set)
            .map_err(|e| format!("{what}: {e}"))?;
        let mass: T = entry
            .mass
            .parse()
            .map_err(|e| format!("{what}: set {}: {e}", frame.render_mask(set)))?;
        entries.push((set, mass));
    }
    let subnormal = doc.status.as_deref() == Some("subnormal");
    let result = if subnormal {
        MassFunction::subnormal(frame, entries)
    } else {
        MassFunction::with_tolerance(frame, entries, tolerance)
    };
    result.map_err(|e| format!("{what}: {e}"))
}

pub fn mass_to_doc<T: Weight>(mass: &MassFunction<T>, embed_frame: bool) -> MassDoc {
    let frame = mass.frame();
    MassDoc {
        frame: embed_frame.then(|| frame.labels().to_vec()),
        status: match mass.status() {
            Normalization::Normal => None,
            Normalization::Subnormal => Some("subnormal".to_string()),
        },
        masses: mass
            .focal()
            .map(|(set, value)| MassEntryDoc {
                set: frame.mask_labels(set).iter().map(|s| s.to_string()).collect(),
                mass: NumberLike::Text(value.render()),
            })
            .collect(),
    }
}

pub fn partition_from_doc(
    doc: &PartitionDoc,
    flag_frame: Option<&Frame>,
    what: &str,
) -> Result<(Frame, Partition), String> {
    let frame = resolve_frame(doc.frame.as_ref(), flag_frame, what)?;
    let mut atoms = Vec::with_capacity(doc.atoms.len());
    for atom in &doc.atoms {
        atoms.push(frame.subset(atom).map_err(|e| format!("{what}: {e}"))?);
    }
    let partition = Partition::new(frame.n(), atoms).map_err(|e| format!("{what}: {e}"))?;
    Ok((frame, partition))
}

pub fn partition_to_doc(frame: &Frame, partition: &Partition, embed_frame: bool) -> PartitionDoc {
    PartitionDoc {
        frame: embed_frame.then(|| frame.labels().to_vec()),
        atoms: partition
            .atoms()
            .iter()
            .map(|atom| frame.mask_labels(*atom).iter().map(|s| s.to_string()).collect())
            .collect(),
    }
}

pub fn model_from_doc<T: Weight>(
    doc: &ModelDoc,
    flag_frame: Option<&Frame>,
    what: &str,
) -> Result<HypothesisModel<T>, String> {
    let frame = resolve_frame(doc.frame.as_ref(), flag_frame, what)?;
    let mut hypotheses = Vec::with_capacity(doc.hypotheses.len());
    for hypothesis in &doc.hypotheses {
        hypotheses.push(Hypothesis {
            label: hypothesis.label.clone(),
            probability: hypothesis
                .p
                .parse()
                .map_err(|e| format!("{what}: hypothesis {}: {e}", hypothesis.label))?,
            image: frame
                .subset(&hypothesis.image)
                .map_err(|e| format!("{what}: hypothesis {}: {e}", hypothesis.label))?,
        });
    }
    HypothesisModel::new(frame, hypotheses).map_err(|e| format!("{what}: {e}"))
}

pub fn model_to_doc<T: Weight>(model: &HypothesisModel<T>, embed_frame: bool) -> ModelDoc {
    let frame = model.frame();
    ModelDoc {
        frame: embed_frame.then(|| frame.labels().to_vec()),
        hypotheses: model
            .hypotheses()
            .iter()
            .map(|h| HypothesisDoc {
                label: h.label.clone(),
                p: NumberLike::Text(h.probability.render()),
                image: frame.mask_labels(h.image).iter().map(|s| s.to_string()).collect(),
            })
            .collect(),
    }
}

pub fn set_function_to_doc<T: Weight>(function: &SetFunction<T>) -> SetFunctionDoc {
    let frame = function.frame();
    SetFunctionDoc {
        frame: frame.labels().to_vec(),
        values: function
            .iter()
            .map(|(set, value)| SetValueDoc {
                set: frame.mask_labels(set).iter().map(|s| s.to_string()).collect(),
                value: value.render(),
            })
            .collect(),
    }
}

/// Parses a comma-separated element list; the empty string is the empty set.
pub fn parse_event(frame: &Frame, text: &str) -> Result<SubsetMask, String> {
    if text.trim().is_empty() {
        return Ok(SubsetMask::EMPTY);
    }
    let labels: Vec<&str> = text.split(',').map(str::trim).collect();
    frame.subset(&labels).map_err(|e| e.to_string())
}

pub fn load_json<D: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<D, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}
