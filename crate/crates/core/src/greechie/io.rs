//! JSON exchange format.
//!
//! ```json
//! {
//!   "dimension": 3,
//!   "atoms": [
//!     {"id": "c", "vector": [0.81649658092772603, 0.57735026918962573, 0.00000000000000000]},
//!     {"id": "a"}
//!   ],
//!   "blocks": [
//!     ["c", "a", "d"]
//!   ]
//! }
//! ```
//!
//! Vectors are optional per atom. Components are written in fixed-point
//! notation with 17 decimals (more for tiny magnitudes), so parsing reproduces
//! every component exactly.

use std::fmt::Write;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ray::Ray;

use super::{Atom, Diagram};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    dimension: usize,
    atoms: Vec<RawAtom>,
    blocks: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtom {
    id: String,
    #[serde(default)]
    vector: Option<Vec<f64>>,
}

pub fn parse(text: &str) -> Result<Diagram> {
    let raw: RawDiagram =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    if raw.dimension < 2 {
        return Err(Error::InvalidDimension(raw.dimension));
    }
    if raw.blocks.is_empty() {
        return Err(Error::Malformed("diagram has no blocks".into()));
    }
    let mut atoms = Vec::with_capacity(raw.atoms.len());
    for a in raw.atoms {
        let ray = match a.vector {
            None => None,
            Some(v) if v.len() != raw.dimension => {
                return Err(Error::VectorLength {
                    id: a.id,
                    found: v.len(),
                    expected: raw.dimension,
                })
            }
            Some(v) => Some(
                Ray::new(v)
                    .map_err(|e| Error::Malformed(format!("vector of atom `{}`: {e}", a.id)))?,
            ),
        };
        atoms.push(Atom { id: a.id, ray });
    }
    Diagram::new(raw.dimension, atoms, raw.blocks)
}

/// Serialize with a fixed layout: one atom per line, one block per line.
/// Block labels are positional and are not written.
pub fn serialize(diagram: &Diagram) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"dimension\": {},", diagram.dimension());
    out.push_str("  \"atoms\": [");
    for (i, atom) in diagram.atoms().iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        let _ = write!(out, "{{\"id\": {}", quote(&atom.id));
        if let Some(r) = &atom.ray {
            let comps: Vec<String> = r
                .components()
                .iter()
                .map(|&x| format_component(x))
                .collect();
            let _ = write!(out, ", \"vector\": [{}]", comps.join(", "));
        }
        out.push('}');
    }
    out.push_str(if diagram.atoms().is_empty() {
        "],\n"
    } else {
        "\n  ],\n"
    });
    out.push_str("  \"blocks\": [");
    for (i, block) in diagram.blocks().iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        let ids: Vec<String> = diagram.block_ids(block).into_iter().map(quote).collect();
        let _ = write!(out, "[{}]", ids.join(", "));
    }
    out.push_str(if diagram.blocks().is_empty() {
        "]\n"
    } else {
        "\n  ]\n"
    });
    out.push_str("}\n");
    out
}

/// Fixed point with 17 decimals, or the shortest exact form when 17
/// decimals would lose bits (tiny magnitudes).
fn format_component(x: f64) -> String {
    let fixed = format!("{x:.17}");
    if fixed.parse::<f64>() == Ok(x) {
        fixed
    } else {
        format!("{x}")
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greechie::{make_bug, make_star};

    #[test]
    fn bug_round_trip() {
        let text = serialize(&make_bug());
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed.atoms().len(), 13);
        assert_eq!(parsed.blocks().len(), 7);
        assert_eq!(serialize(&parsed), text);
        assert_eq!(parsed, make_bug());
    }

    #[test]
    fn optional_vectors() {
        let t = r#"{"dimension": 3, "atoms": [{"id": "x"}, {"id": "y"}, {"id": "z", "vector": [0, 0, -2]}],
                    "blocks": [["x", "y", "z"]]}"#;
        let d = parse(t).unwrap();
        assert!(d.atoms()[0].ray.is_none());
        assert_eq!(
            d.atoms()[2].ray.as_ref().unwrap().components(),
            &[0.0, 0.0, 1.0]
        );
        let again = serialize(&parse(&serialize(&d)).unwrap());
        assert_eq!(again, serialize(&d));
    }

    #[test]
    fn schema_errors() {
        let block_size =
            r#"{"dimension": 3, "atoms": [{"id": "c"}, {"id": "a"}], "blocks": [["c", "a"]]}"#;
        let err = parse(block_size).unwrap_err();
        assert!(err.to_string().starts_with("block size"), "{err}");

        let vector =
            r#"{"dimension": 3, "atoms": [{"id": "c", "vector": [1, 0]}], "blocks": [["c"]]}"#;
        assert!(matches!(parse(vector), Err(Error::VectorLength { .. })));

        let dup = r#"{"dimension": 3, "atoms": [{"id": "c"}, {"id": "c"}], "blocks": [["c"]]}"#;
        assert_eq!(parse(dup), Err(Error::DuplicateAtom("c".into())));

        let unknown = r#"{"dimension": 3, "atoms": [{"id": "c"}], "blocks": [["c", "p", "q"]]}"#;
        assert_eq!(parse(unknown), Err(Error::UnknownAtom("p".into())));

        assert!(matches!(parse("{"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse(r#"{"dimension": 3, "atoms": [], "blocks": []}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse(r#"{"dimension": 3, "atoms": [], "blocks": [], "extra": 1}"#),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn serialized_layout() {
        let text = serialize(&make_star(1).unwrap().strip_coordinates());
        assert_eq!(
            text,
            "{\n  \"dimension\": 3,\n  \"atoms\": [\n    {\"id\": \"c\"},\n    {\"id\": \"a1\"},\n    {\"id\": \"a1'\"}\n  ],\n  \"blocks\": [\n    [\"c\", \"a1\", \"a1'\"]\n  ]\n}\n"
        );
    }
}
