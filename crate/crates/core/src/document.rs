//! The `krasner-structure/1` JSON document format.
//!
//! Grades travel as `"p/q"` strings so values stay exact. Every tuple of each table
//! must be listed exactly once; nothing is defaulted.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, EqualityMode, FuzzySubset};
use crate::scalar::Grade;
use crate::structure::KrasnerStructure;
use crate::table::{decode, tuple_count, HyperOperationTable};
use crate::{ExactStructure, Rational};

pub const FORMAT: &str = "krasner-structure/1";

/// One table entry: the argument labels and the listed positive grades.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub args: Vec<String>,
    pub value: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub format: String,
    pub carrier: Vec<String>,
    pub m: usize,
    pub n: usize,
    pub identity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_identity: Option<String>,
    pub negation: Vec<(String, String)>,
    pub equality_mode: EqualityMode,
    pub f: Vec<Entry>,
    pub g: Vec<Entry>,
}

impl StructureDocument {
    /// Parses document text, reporting syntax errors with line and column.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Canonical text: two-space indented JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents serialize");
        text.push('\n');
        text
    }

    /// Hex SHA-256 of the canonical text.
    pub fn digest(&self) -> String {
        Sha256::digest(self.to_text().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn from_structure(r: &ExactStructure) -> Self {
        let carrier = r.carrier();
        let entries = |table: &HyperOperationTable<Rational>| {
            let mut tuple = vec![0; table.arity()];
            (0..table.len())
                .map(|i| {
                    decode(i as u64, table.size(), &mut tuple);
                    Entry {
                        args: tuple
                            .iter()
                            .map(|&a| carrier.label(a).to_string())
                            .collect(),
                        value: table
                            .entry_at(i)
                            .entries()
                            .iter()
                            .map(|(a, g)| (carrier.label(*a).to_string(), g.to_fraction_string()))
                            .collect(),
                    }
                })
                .collect()
        };
        StructureDocument {
            format: FORMAT.into(),
            carrier: carrier.labels().to_vec(),
            m: r.m(),
            n: r.n(),
            identity: carrier.label(r.identity()).into(),
            scalar_identity: r.scalar_identity().map(|x| carrier.label(x).into()),
            negation: (0..r.size())
                .map(|a| (carrier.label(a).into(), carrier.label(r.negate(a)).into()))
                .collect(),
            equality_mode: r.mode(),
            f: entries(r.f()),
            g: entries(r.g()),
        }
    }

    /// Builds the structure the document describes. The axioms are not checked here.
    pub fn to_structure(&self) -> Result<ExactStructure> {
        if self.format != FORMAT {
            return Err(Error::Domain(format!(
                "unsupported format {:?}; expected {FORMAT:?}",
                self.format
            )));
        }
        if self.m < 2 || self.n < 2 {
            return Err(Error::Domain("arities must be at least 2".into()));
        }
        let carrier = Carrier::new(self.carrier.iter().cloned())?;
        let k = carrier.len();
        let lookup = |label: &str| {
            carrier
                .index_of(label)
                .ok_or_else(|| Error::Domain(format!("unknown element {label:?}")))
        };
        let table = |name: &str,
                     arity: usize,
                     entries: &[Entry]|
         -> Result<HyperOperationTable<Rational>> {
            let count = tuple_count(k, arity)
                .filter(|&c| c <= 1 << 26)
                .ok_or_else(|| Error::Domain(format!("table {name} is too large")))?
                as usize;
            let mut slots: Vec<Option<FuzzySubset<Rational>>> = vec![None; count];
            for entry in entries {
                if entry.args.len() != arity {
                    return Err(Error::Domain(format!(
                        "table {name}: entry ({}) has {} arguments, expected {arity}",
                        entry.args.join(","),
                        entry.args.len()
                    )));
                }
                let idx = entry
                    .args
                    .iter()
                    .try_fold(0usize, |acc, a| Ok::<_, Error>(acc * k + lookup(a)?))?;
                let mut pairs = Vec::with_capacity(entry.value.len());
                for (label, grade) in &entry.value {
                    let a = lookup(label)?;
                    let g = Grade::parse(grade)?;
                    if !g.is_positive() {
                        return Err(Error::Domain(format!(
                            "table {name}: entry ({}) lists {label} with grade 0",
                            entry.args.join(",")
                        )));
                    }
                    if pairs.iter().any(|(b, _)| *b == a) {
                        return Err(Error::Domain(format!(
                            "table {name}: entry ({}) lists {label} twice",
                            entry.args.join(",")
                        )));
                    }
                    pairs.push((a, g));
                }
                if slots[idx].is_some() {
                    return Err(Error::Domain(format!(
                        "table {name}: tuple ({}) listed twice",
                        entry.args.join(",")
                    )));
                }
                slots[idx] = Some(FuzzySubset::from_pairs(k, pairs));
            }
            let mut tuple = vec![0; arity];
            let mut values = Vec::with_capacity(count);
            for (i, slot) in slots.into_iter().enumerate() {
                match slot {
                    Some(v) => values.push(v),
                    None => {
                        decode(i as u64, k, &mut tuple);
                        return Err(Error::Totality {
                            table: name.into(),
                            tuple: carrier.format_tuple(&tuple),
                        });
                    }
                }
            }
            HyperOperationTable::new(k, arity, values)
        };
        let f = table("f", self.m, &self.f)?;
        let g = table("g", self.n, &self.g)?;
        let mut negation = vec![None; k];
        for (a, b) in &self.negation {
            let (a, b) = (lookup(a)?, lookup(b)?);
            if negation[a].replace(b).is_some() {
                return Err(Error::Domain(format!(
                    "negation of {} given twice",
                    carrier.label(a)
                )));
            }
        }
        let negation = negation
            .iter()
            .enumerate()
            .map(|(a, b)| {
                b.ok_or_else(|| Error::Totality {
                    table: "negation".into(),
                    tuple: carrier.label(a).into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let identity = lookup(&self.identity)?;
        let e_prime = self.scalar_identity.as_deref().map(lookup).transpose()?;
        let mode = self.equality_mode;
        KrasnerStructure::new(carrier, f, g, identity, negation)?
            .with_scalar_identity(e_prime)
            .map(|r| r.with_mode(mode))
    }
}

/// Parses document text straight to a structure.
pub fn parse_structure(text: &str) -> Result<ExactStructure> {
    StructureDocument::parse(text)?.to_structure()
}

pub fn serialize_structure(r: &ExactStructure) -> String {
    StructureDocument::from_structure(r).to_text()
}
