//! The shared poset file formats.
//!
//! JSON: an object with `n` (element count), optional `labels`, and `covers`
//! (pairs `[lower, upper]`); the full order is the reflexive-transitive
//! closure of the covers. DOT: the Hasse diagram drawn bottom-up, with rank
//! layers when the poset is graded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub covers: Vec<(usize, usize)>,
}

impl From<&FinitePoset> for PosetJson {
    fn from(p: &FinitePoset) -> Self {
        PosetJson {
            n: p.size(),
            labels: p.labels().map(|ls| ls.to_vec()),
            covers: p.covers(),
        }
    }
}

impl TryFrom<&PosetJson> for FinitePoset {
    type Error = Error;

    fn try_from(json: &PosetJson) -> Result<FinitePoset> {
        FinitePoset::from_covers(json.n, &json.covers, json.labels.clone())
    }
}

/// Serializes a poset to the canonical JSON text (pretty, sorted covers,
/// trailing newline) so identical posets give identical bytes.
pub fn poset_to_json(p: &FinitePoset) -> String {
    let mut text = serde_json::to_string_pretty(&PosetJson::from(p)).expect("plain data");
    text.push('\n');
    text
}

pub fn poset_from_json(text: &str) -> Result<FinitePoset> {
    let json: PosetJson =
        serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
    FinitePoset::try_from(&json)
}

/// Renders the Hasse diagram in DOT, edges pointing upward. Graded posets
/// get one `rank=same` layer per rank and the rank annotated on each node.
pub fn poset_to_dot(p: &FinitePoset) -> String {
    let ranks = p.rank_function();
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..p.size() {
        let name = p.label(i).map_or_else(|| i.to_string(), |l| l.to_string());
        let label = match &ranks {
            Some(d) => format!("{name}\\nrank {}", d.rank(i)),
            None => name,
        };
        out.push_str(&format!("  e{i} [label=\"{}\"];\n", escape(&label)));
    }
    for (lo, hi) in p.covers() {
        out.push_str(&format!("  e{lo} -> e{hi};\n"));
    }
    if let Some(d) = &ranks {
        for r in 1..=d.max_rank() {
            let layer: Vec<String> = (0..p.size())
                .filter(|&i| d.rank(i) == r)
                .map(|i| format!("e{i};"))
                .collect();
            if !layer.is_empty() {
                out.push_str(&format!("  {{ rank=same; {} }}\n", layer.join(" ")));
            }
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('"', "\\\"")
}
