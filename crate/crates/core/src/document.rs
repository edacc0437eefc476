//! JSON documents describing a complex.
//!
//! ```json
//! {
//!   "name": "rht",
//!   "generators": [{"id": "a", "i": 0, "j": 1}, ...],
//!   "differential": [{"from": "b", "to": ["a", "c"]}]
//! }
//! ```
//!
//! Generators may carry an optional `"grading"`. The canonical writer sorts
//! generators by `(i, j, id)`, differential records by source and targets by
//! id, and omits generators with zero boundary.

use serde::{Deserialize, Serialize};

use crate::complex::{Bifiltration, GenId, Generator, KnotComplex};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub id: GenId,
    pub i: i64,
    pub j: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialRecord {
    pub from: GenId,
    pub to: Vec<GenId>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    pub generators: Vec<GeneratorRecord>,
    #[serde(default)]
    pub differential: Vec<DifferentialRecord>,
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Canonical document for `c`.
    pub fn from_complex(c: &KnotComplex) -> Self {
        let gens = c.generators();
        let generators = c
            .sorted_indices()
            .into_iter()
            .map(|p| {
                let g = &gens[p];
                GeneratorRecord { id: g.id.clone(), i: g.filt.i, j: g.filt.j, grading: g.grading }
            })
            .collect();
        let mut differential: Vec<DifferentialRecord> = (0..c.len())
            .filter(|&p| !c.targets(p).is_empty())
            .map(|p| {
                let mut to: Vec<GenId> = c.targets(p).iter().map(|&t| gens[t].id.clone()).collect();
                to.sort();
                DifferentialRecord { from: gens[p].id.clone(), to }
            })
            .collect();
        differential.sort_by(|a, b| a.from.cmp(&b.from));
        Self { name: c.name().to_string(), generators, differential }
    }

    pub fn to_complex(&self) -> Result<KnotComplex> {
        let generators = self
            .generators
            .iter()
            .map(|r| Generator { id: r.id.clone(), filt: Bifiltration::new(r.i, r.j), grading: r.grading })
            .collect();
        let arrows = self.differential.iter().flat_map(|d| d.to.iter().map(move |t| (d.from.clone(), t.clone())));
        KnotComplex::new(self.name.clone(), generators, arrows)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn write(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

pub fn read_complex(text: &str) -> Result<KnotComplex> {
    ComplexDocument::parse(text)?.to_complex()
}

pub fn write_complex(c: &KnotComplex) -> String {
    ComplexDocument::from_complex(c).write()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    const RHT: &str = r#"{
  "name": "rht",
  "generators": [
    {"id": "c", "i": 1, "j": 0},
    {"id": "a", "i": 0, "j": 1},
    {"id": "b", "i": 1, "j": 1}
  ],
  "differential": [{"from": "b", "to": ["c", "a"]}]
}"#;

    #[test]
    fn parse_and_canonicalize() {
        let c = read_complex(RHT).unwrap();
        assert_eq!(c.canonical_form(), models::rht().canonical_form());
        let out = write_complex(&c);
        assert_eq!(out, write_complex(&models::rht()));
        assert!(out.ends_with("}\n"));
        let first = out.find("\"a\"").unwrap();
        assert!(first < out.find("\"b\"").unwrap());
        assert_eq!(write_complex(&read_complex(&out).unwrap()), out);
    }

    #[test]
    fn pair_ids_round_trip() {
        let c = models::rht().tensor_product(&models::rht()).unwrap();
        let text = write_complex(&c);
        assert!(text.contains("\"(a,b)\""));
        let back = read_complex(&text).unwrap();
        assert_eq!(back.canonical_form(), c.canonical_form());
        assert_eq!(back.name(), "rht#rht");
    }

    #[test]
    fn optional_grading() {
        let text = r#"{"name":"u","generators":[{"id":"e","i":0,"j":0,"grading":0}],"differential":[]}"#;
        let c = read_complex(text).unwrap();
        assert_eq!(c.generators()[0].grading, Some(0));
        assert!(write_complex(&c).contains("\"grading\": 0"));
    }

    #[test]
    fn errors() {
        assert!(matches!(read_complex("{"), Err(Error::Parse(_))));
        let dup = r#"{"name":"x","generators":[{"id":"a","i":0,"j":0},{"id":"a","i":0,"j":0}],"differential":[]}"#;
        assert!(matches!(read_complex(dup), Err(Error::Parse(_))));
        let dangling = r#"{"name":"x","generators":[{"id":"a","i":0,"j":0}],"differential":[{"from":"a","to":["q"]}]}"#;
        assert!(matches!(read_complex(dangling), Err(Error::Parse(m)) if m.contains('q')));
        let extra = r#"{"name":"x","generators":[],"differential":[],"bogus":1}"#;
        assert!(read_complex(extra).is_err());
    }
}
