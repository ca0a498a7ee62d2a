//! Line-oriented instance files.
//!
//! ```text
//! c optional comments (lines starting with 'c' or '#')
//! p bmwis <n> <m> <B>
//! n <id> <weight> <cost> [L|R]
//! e <u> <v>
//! ```
//!
//! Ids are 1-based in files and 0-based in memory.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{BudgetedInstance, InstanceData, Side, VertexData};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(tok: &str, line: usize, what: &str) -> Result<u64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, format!("expected non-negative integer {what}, got `{tok}`")));
    }
    tok.parse::<u64>()
        .map_err(|_| syntax(line, format!("{what} `{tok}` is too large")))
}

fn signed(value: u64, line: usize, what: &str) -> Result<i64> {
    i64::try_from(value).map_err(|_| syntax(line, format!("{what} {value} is too large")))
}

fn is_comment(line: &str) -> bool {
    line.starts_with('#') || line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

pub fn parse_instance(text: &str) -> Result<BudgetedInstance> {
    let mut header: Option<(usize, usize, i64)> = None;
    let mut vertices: Vec<Option<VertexData>> = Vec::new();
    let mut vertex_lines = 0usize;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(syntax(line_no, "duplicate header line"));
                }
                if toks.len() != 5 || toks[1] != "bmwis" {
                    return Err(syntax(line_no, "header must read `p bmwis <n> <m> <B>`"));
                }
                let n = number(toks[2], line_no, "vertex count")?;
                let m = number(toks[3], line_no, "edge count")?;
                let b = signed(number(toks[4], line_no, "budget")?, line_no, "budget")?;
                let n = usize::try_from(n).map_err(|_| syntax(line_no, "vertex count too large"))?;
                let m = usize::try_from(m).map_err(|_| syntax(line_no, "edge count too large"))?;
                header = Some((n, m, b));
                vertices = vec![None; n];
            }
            "n" => {
                let (n, _, _) = header.ok_or_else(|| syntax(line_no, "vertex line before header"))?;
                if toks.len() != 4 && toks.len() != 5 {
                    return Err(syntax(line_no, "vertex line must read `n <id> <weight> <cost> [L|R]`"));
                }
                let id = number(toks[1], line_no, "vertex id")? as usize;
                if id == 0 || id > n {
                    return Err(syntax(line_no, format!("vertex id {id} outside 1..={n}")));
                }
                let weight = signed(number(toks[2], line_no, "weight")?, line_no, "weight")?;
                let cost = signed(number(toks[3], line_no, "cost")?, line_no, "cost")?;
                let side = match toks.get(4) {
                    None => None,
                    Some(&"L") => Some(Side::Left),
                    Some(&"R") => Some(Side::Right),
                    Some(other) => {
                        return Err(syntax(line_no, format!("side must be L or R, got `{other}`")))
                    }
                };
                if vertices[id - 1].is_some() {
                    return Err(syntax(line_no, format!("vertex {id} defined twice")));
                }
                vertices[id - 1] = Some(VertexData { weight, cost, side });
                vertex_lines += 1;
            }
            "e" => {
                let (n, _, _) = header.ok_or_else(|| syntax(line_no, "edge line before header"))?;
                if toks.len() != 3 {
                    return Err(syntax(line_no, "edge line must read `e <u> <v>`"));
                }
                let u = number(toks[1], line_no, "edge endpoint")? as usize;
                let v = number(toks[2], line_no, "edge endpoint")? as usize;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(syntax(line_no, format!("edge references undefined vertex {x}")));
                    }
                }
                if u == v {
                    return Err(syntax(line_no, format!("self-loop on vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(syntax(line_no, format!("unknown line type `{other}`"))),
        }
    }

    let (n, m, budget) = header.ok_or_else(|| syntax(0, "missing `p bmwis` header"))?;
    if vertex_lines != n {
        return Err(syntax(0, format!("header declares {n} vertices but {vertex_lines} were defined")));
    }
    if edges.len() != m {
        return Err(syntax(0, format!("header declares {m} edges but {} were given", edges.len())));
    }
    let data = InstanceData {
        vertices: vertices.into_iter().map(Option::unwrap).collect(),
        budget: Some(budget),
        edges,
    };
    BudgetedInstance::try_from(data)
}

/// Canonical text form, without a trailing newline.
pub fn serialize_instance(inst: &BudgetedInstance) -> String {
    serialize_with_comments(inst, &[])
}

pub fn serialize_with_comments(inst: &BudgetedInstance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = write!(
        out,
        "p bmwis {} {} {}",
        inst.vertex_count(),
        inst.edge_count(),
        inst.budget()
    );
    for v in 0..inst.vertex_count() {
        let _ = write!(out, "\nn {} {} {}", v + 1, inst.weight(v), inst.cost(v));
        if let Some(sides) = inst.sides() {
            out.push_str(match sides[v] {
                Side::Left => " L",
                Side::Right => " R",
            });
        }
    }
    for &(u, v) in inst.edges() {
        let _ = write!(out, "\ne {} {}", u + 1, v + 1);
    }
    out
}

/// Bodies of `c ...` comment lines, in file order.
pub fn read_comments(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| is_comment(l))
        .map(|l| l.trim_start_matches(['c', '#']).trim().to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex() {
        let inst = parse_instance("p bmwis 1 0 5\nn 1 7 3\n").unwrap();
        assert_eq!(inst.vertex_count(), 1);
        assert_eq!((inst.weight(0), inst.cost(0), inst.budget()), (7, 3, 5));
        assert_eq!(inst.edge_count(), 0);
        assert_eq!(serialize_instance(&inst), "p bmwis 1 0 5\nn 1 7 3");
    }

    #[test]
    fn empty_instance() {
        let inst = BudgetedInstance::new(vec![], vec![], 0, vec![], None).unwrap();
        assert_eq!(serialize_instance(&inst), "p bmwis 0 0 0");
        assert_eq!(parse_instance("p bmwis 0 0 0").unwrap(), inst);
    }

    #[test]
    fn edge_count_mismatch() {
        let err = parse_instance("p bmwis 2 2 1\nn 1 1 1\nn 2 1 1\ne 1 2\n").unwrap_err();
        assert!(err.to_string().contains("2 edges"), "{err}");
    }

    #[test]
    fn errors_report_line_numbers() {
        let err = parse_instance("c hi\np bmwis 2 0 1\nn 1 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_instance("p bmwis 2 1 1\nn 1 1 1\nn 2 1 1\ne 1 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = parse_instance("p bmwis 2 0 1\nn 1 1 1\nn 1 1 1\n").unwrap_err();
        assert!(err.to_string().contains("defined twice"), "{err}");
        let err = parse_instance("p bmwis 1 0 1\nq 1\n").unwrap_err();
        assert!(err.to_string().contains("unknown line type"), "{err}");
        let err = parse_instance("p bmwis 1 0 1\nn 1 -1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn comments_and_sides() {
        let text = "# generated\nc family star\np bmwis 2 1 3\nn 1 4 1 L\nn 2 2 2 R\ne 2 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.sides().unwrap(), &[Side::Left, Side::Right]);
        assert_eq!(inst.edges(), &[(0, 1)]);
        assert_eq!(read_comments(text), vec!["generated", "family star"]);
    }

    #[test]
    fn duplicate_edge_is_invalid() {
        let err = parse_instance("p bmwis 2 2 1\nn 1 1 1\nn 2 1 1\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Invalid(_)), "{err:?}");
    }
}
