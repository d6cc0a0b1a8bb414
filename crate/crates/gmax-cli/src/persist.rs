//! Lossless structured-text persistence for construction artifacts.
//!
//! Tree schema (`gmax-tree/1`), one key per line, rationals as exact
//! "p/q" strings, lists space-separated:
//!
//! ```text
//! gmax-tree/1
//! alpha <p/q>
//! n <u32>
//! start <usize>
//! tau <p/q>
//! area_x <p/q>
//! area_sum <p/q>
//! epsilon_bound <p/q>
//! tvals <p/q> <p/q> ...
//! shifts <p/q> ...
//! ```
//!
//! Loading rejects unknown schema versions; malformed lines report their
//! location. Save -> load -> save is byte-identical.

use gmax_core::perron::PerronTree;
use gmax_core::scalar::{format_scalar, parse_scalar};
use gmax_core::Scalar;

pub const TREE_SCHEMA: &str = "gmax-tree/1";

/// The serializable content of a Perron tree; the triangles themselves
/// are reconstructible from the tangents and shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeDocument {
    pub alpha: Scalar,
    pub n: u32,
    pub start: usize,
    pub tau: Scalar,
    pub area_x: Scalar,
    pub area_sum: Scalar,
    pub epsilon_bound: Scalar,
    pub tvals: Vec<Scalar>,
    pub shifts: Vec<Scalar>,
}

impl From<&PerronTree> for TreeDocument {
    fn from(tree: &PerronTree) -> TreeDocument {
        TreeDocument {
            alpha: tree.scale.alpha.clone(),
            n: tree.scale.n,
            start: tree.scale.start,
            tau: tree.tau_slice.value.clone(),
            area_x: tree.area_x.clone(),
            area_sum: tree.area_sum.clone(),
            epsilon_bound: tree.epsilon_bound.clone(),
            tvals: tree.tvals.clone(),
            shifts: tree.shifts.shifts.clone(),
        }
    }
}

fn scalar_list(v: &[Scalar]) -> String {
    v.iter()
        .map(format_scalar)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn tree_to_text(doc: &TreeDocument) -> String {
    let mut out = String::new();
    out.push_str(TREE_SCHEMA);
    out.push('\n');
    out.push_str(&format!("alpha {}\n", format_scalar(&doc.alpha)));
    out.push_str(&format!("n {}\n", doc.n));
    out.push_str(&format!("start {}\n", doc.start));
    out.push_str(&format!("tau {}\n", format_scalar(&doc.tau)));
    out.push_str(&format!("area_x {}\n", format_scalar(&doc.area_x)));
    out.push_str(&format!("area_sum {}\n", format_scalar(&doc.area_sum)));
    out.push_str(&format!(
        "epsilon_bound {}\n",
        format_scalar(&doc.epsilon_bound)
    ));
    out.push_str(&format!("tvals {}\n", scalar_list(&doc.tvals)));
    out.push_str(&format!("shifts {}\n", scalar_list(&doc.shifts)));
    out
}

fn field<'a>(line: Option<(usize, &'a str)>, key: &str) -> Result<&'a str, String> {
    let (no, line) = line.ok_or_else(|| format!("missing line for key {key}"))?;
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| format!("line {}: expected key {key}, got {line:?}", no + 1))
}

fn parse_at(s: &str, line_no: usize) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| format!("line {}: {e}", line_no + 1))
}

fn parse_list(s: &str, line_no: usize) -> Result<Vec<Scalar>, String> {
    s.split(' ')
        .filter(|t| !t.is_empty())
        .map(|t| parse_at(t, line_no))
        .collect()
}

pub fn tree_from_text(text: &str) -> Result<TreeDocument, String> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or("empty document")?;
    if header != TREE_SCHEMA {
        return Err(format!(
            "unknown schema {header:?}; this reader understands {TREE_SCHEMA}"
        ));
    }
    let alpha = field(lines.next(), "alpha")?;
    let alpha = parse_at(alpha, 1)?;
    let n: u32 = field(lines.next(), "n")?
        .parse()
        .map_err(|e| format!("line 3: {e}"))?;
    let start: usize = field(lines.next(), "start")?
        .parse()
        .map_err(|e| format!("line 4: {e}"))?;
    let tau = parse_at(field(lines.next(), "tau")?, 4)?;
    let area_x = parse_at(field(lines.next(), "area_x")?, 5)?;
    let area_sum = parse_at(field(lines.next(), "area_sum")?, 6)?;
    let epsilon_bound = parse_at(field(lines.next(), "epsilon_bound")?, 7)?;
    let tvals = parse_list(field(lines.next(), "tvals")?, 8)?;
    let shifts = parse_list(field(lines.next(), "shifts")?, 9)?;
    if tvals.len() != shifts.len() + 1 {
        return Err(format!(
            "tvals has {} entries but shifts has {}; expected one more tangent than shifts",
            tvals.len(),
            shifts.len()
        ));
    }
    Ok(TreeDocument {
        alpha,
        n,
        start,
        tau,
        area_x,
        area_sum,
        epsilon_bound,
        tvals,
        shifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gmax_core::scalar::rat;

    fn synthetic(len: usize) -> TreeDocument {
        TreeDocument {
            alpha: rat(3, 4),
            n: 10,
            start: 7,
            tau: rat(10, 3),
            area_x: rat(1, 9),
            area_sum: rat(2, 9),
            epsilon_bound: rat(1, 2),
            tvals: (0..=len as i64).map(|k| rat(1, k + 1)).collect(),
            shifts: (0..len as i64).map(|k| rat(-k, 3 * k + 1)).collect(),
        }
    }

    #[test]
    fn round_trip_is_byte_identical_with_1024_shifts() {
        let doc = synthetic(1024);
        let text = tree_to_text(&doc);
        let back = tree_from_text(&text).unwrap();
        assert_eq!(doc, back);
        assert_eq!(text, tree_to_text(&back));
    }

    #[test]
    fn rejects_unknown_schema_and_malformed_lines() {
        let doc = synthetic(4);
        let text = tree_to_text(&doc);
        let bumped = text.replace("gmax-tree/1", "gmax-tree/2");
        assert!(tree_from_text(&bumped).unwrap_err().contains("schema"));
        let broken = text.replace("tau 10/3", "tau ten-thirds");
        assert!(tree_from_text(&broken).unwrap_err().contains("line"));
    }
}
