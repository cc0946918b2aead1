//! The line-oriented `.fos` structure format.
//!
//! ```text
//! # a path on three vertices
//! vocab E/2
//! order 3
//! graph
//! E 0 1
//! E 1 2
//! ```
//!
//! `graph` is allowed only for a single binary symbol; each tuple line then
//! adds both orientations and loops are rejected.

use std::fmt::Write as _;

use super::{Structure, Vocabulary};
use crate::error::{Error, Result};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut vocab: Option<Vocabulary> = None;
    let mut structure: Option<Structure> = None;
    let mut graph = false;
    let mut saw_tuple = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().expect("non-empty line");
        let rest: Vec<&str> = words.collect();
        match head {
            "vocab" => {
                if vocab.is_some() {
                    return Err(perr(line_no, "duplicate vocab line"));
                }
                if rest.is_empty() {
                    return Err(perr(line_no, "vocab needs at least one symbol"));
                }
                vocab = Some(Vocabulary::parse(&rest.join(" ")).map_err(|e| perr(line_no, e.to_string()))?);
            }
            "order" => {
                let v = vocab.as_ref().ok_or_else(|| perr(line_no, "order before vocab"))?;
                if structure.is_some() {
                    return Err(perr(line_no, "duplicate order line"));
                }
                let [n] = rest[..] else {
                    return Err(perr(line_no, "order takes one argument"));
                };
                let n: usize = n.parse().map_err(|_| perr(line_no, format!("bad order `{n}`")))?;
                structure = Some(Structure::new(v.clone(), n).map_err(|e| perr(line_no, e.to_string()))?);
            }
            "graph" => {
                let v = vocab.as_ref().ok_or_else(|| perr(line_no, "graph before vocab"))?;
                if !rest.is_empty() {
                    return Err(perr(line_no, "graph takes no arguments"));
                }
                if structure.is_none() || saw_tuple || graph {
                    return Err(perr(line_no, "graph must follow order and precede tuples"));
                }
                if v.len() != 1 || v.symbols()[0].arity != 2 {
                    return Err(perr(line_no, "graph requires a single binary symbol"));
                }
                graph = true;
            }
            name => {
                let s = structure.as_mut().ok_or_else(|| perr(line_no, format!("`{name}` before order")))?;
                let sym = s.vocab().index_of(name).ok_or_else(|| perr(line_no, format!("unknown symbol `{name}`")))?;
                let arity = s.arity(sym);
                if rest.len() != arity {
                    return Err(perr(line_no, format!("`{name}` expects {arity} elements, got {}", rest.len())));
                }
                let mut t = Vec::with_capacity(arity);
                for w in rest {
                    let e: usize = w.parse().map_err(|_| perr(line_no, format!("bad element `{w}`")))?;
                    if e >= s.order() {
                        return Err(perr(line_no, format!("element {e} out of range for order {}", s.order())));
                    }
                    t.push(e);
                }
                if graph {
                    if t[0] == t[1] {
                        return Err(perr(line_no, "loop in graph mode"));
                    }
                    s.set(sym, &[t[1], t[0]], true);
                }
                s.set(sym, &t, true);
                saw_tuple = true;
            }
        }
    }
    if vocab.is_none() {
        return Err(perr(0, "missing vocab line"));
    }
    structure.ok_or_else(|| perr(0, "missing order line"))
}

/// Writes every present tuple explicitly.
pub fn write_structure(m: &Structure) -> String {
    let mut out = format!("vocab {}\norder {}\n", m.vocab(), m.order());
    for (s, sym) in m.vocab().symbols().iter().enumerate() {
        for t in m.tuples(s) {
            let _ = write!(out, "{}", sym.name);
            for e in t {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
    }
    out
}

/// Writes a graph using the `graph` directive, one line per edge.
pub fn write_structure_as_graph(m: &Structure) -> Result<String> {
    if !m.is_graph() {
        return Err(Error::Precondition("not a graph".into()));
    }
    let name = &m.vocab().symbols()[0].name;
    let mut out = format!("vocab {}\norder {}\ngraph\n", m.vocab(), m.order());
    for t in m.tuples(0) {
        if t[0] < t[1] {
            let _ = writeln!(out, "{name} {} {}", t[0], t[1]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_graph() {
        let m = parse_structure("# p3\nvocab E/2\norder 3\ngraph\nE 0 1\nE 1 2 # edge\n").unwrap();
        assert_eq!(m, Structure::graph(3, &[(0, 1), (1, 2)]).unwrap());
    }

    #[test]
    fn round_trip() {
        let v = Vocabulary::parse("R/2 P/1").unwrap();
        let m = Structure::from_tuples(v, 3, &[("R", vec![0, 0]), ("R", vec![2, 1]), ("P", vec![1])]).unwrap();
        assert_eq!(parse_structure(&write_structure(&m)).unwrap(), m);
        let g = Structure::graph(4, &[(0, 3), (1, 2)]).unwrap();
        assert_eq!(parse_structure(&write_structure_as_graph(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        let bad = [
            "order 3\n",
            "vocab E/2\n",
            "vocab E/2\norder 3\nE 0 3\n",
            "vocab E/2\norder 3\nE 0\n",
            "vocab E/2\norder 3\nF 0 1\n",
            "vocab E/2\norder 3\ngraph\nE 1 1\n",
            "vocab E/2 P/1\norder 3\ngraph\n",
            "vocab E/2\norder 3\nE 0 1\ngraph\n",
            "vocab E/2\norder x\n",
            "vocab E/2\norder 0\n",
            "vocab E/2\norder 2\norder 3\n",
        ];
        for b in bad {
            assert!(matches!(parse_structure(b), Err(Error::Parse { .. })), "accepted {b:?}");
        }
    }
}
