//! JSON documents for instances and selections. Indices are 0-based.
//!
//! ```json
//! {"sets": [{"p": 1, "items": [[2, 5], [0, 3]]}], "forbidden": [[0, 0, 1, 1]]}
//! {"chosen": [[1], [0, 2]]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{validate_parts, CostInterval, Instance, ItemRef, ItemSet, Selection, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDoc {
    pub p: usize,
    /// `[lo, hi]` per item.
    pub items: Vec<[i64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub sets: Vec<SetDoc>,
    /// `[set, item, set, item]` per pair.
    #[serde(default)]
    pub forbidden: Vec<[usize; 4]>,
}

impl InstanceDoc {
    fn parts(&self) -> (Vec<ItemSet>, Vec<(ItemRef, ItemRef)>) {
        let sets = self
            .sets
            .iter()
            .map(|s| ItemSet::new(s.p, s.items.iter().map(|&[lo, hi]| CostInterval { lo, hi }).collect()))
            .collect();
        let pairs = self.forbidden.iter().map(|&[i, k, j, l]| (ItemRef::new(i, k), ItemRef::new(j, l))).collect();
        (sets, pairs)
    }

    /// Every problem with the document, errors and warnings.
    pub fn validate(&self) -> ValidationReport {
        let (sets, pairs) = self.parts();
        validate_parts(&sets, &pairs)
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let (sets, pairs) = self.parts();
        Instance::new(sets, pairs)
    }
}

impl From<&Instance> for InstanceDoc {
    fn from(inst: &Instance) -> Self {
        let sets = inst
            .sets()
            .iter()
            .map(|s| SetDoc { p: s.quota, items: s.items.iter().map(|iv| [iv.lo, iv.hi]).collect() })
            .collect();
        let forbidden = inst
            .forbidden()
            .iter()
            .map(|p| [p.a().set, p.a().item, p.b().set, p.b().item])
            .collect();
        Self { sets, forbidden }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionDoc {
    pub chosen: Vec<Vec<usize>>,
}

impl From<&Selection> for SelectionDoc {
    fn from(x: &Selection) -> Self {
        Self { chosen: x.chosen().to_vec() }
    }
}

impl From<SelectionDoc> for Selection {
    fn from(doc: SelectionDoc) -> Self {
        Selection::new(doc.chosen)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    serde_json::from_str::<InstanceDoc>(text)?.to_instance()
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceDoc::from(inst)).expect("instance documents always serialize")
}

/// Parses a selection and checks its shape against `inst`.
pub fn parse_selection(inst: &Instance, text: &str) -> Result<Selection> {
    let x: Selection = serde_json::from_str::<SelectionDoc>(text)?.into();
    x.check_well_formed(inst)?;
    Ok(x)
}

pub fn read_selection(inst: &Instance, path: impl AsRef<Path>) -> Result<Selection> {
    parse_selection(inst, &std::fs::read_to_string(path)?)
}

pub fn selection_to_json(x: &Selection) -> String {
    serde_json::to_string(&SelectionDoc::from(x)).expect("selection documents always serialize")
}
