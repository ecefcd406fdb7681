//! The SMAP text format (version 1).
//!
//! ```text
//! smap 1
//! vertex <vid>: <dart> <dart> ...
//! edge <eid>: <dart> <dart> <+|->
//! ```
//!
//! `#` starts a comment and blank lines are ignored. Identifiers match
//! `[A-Za-z0-9_.-]+`. A rotation lists darts in cyclic order.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::map::{is_identifier, EmbeddedMap, MapBuilder, Sign};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn split_header<'a>(content: &'a str, keyword: &str, line: usize) -> Result<(&'a str, Vec<&'a str>)> {
    let (head, rest) = content
        .split_once(':')
        .ok_or_else(|| parse_err(line, format!("{keyword} line is missing `:`")))?;
    let mut head_tokens = head.split_whitespace();
    head_tokens.next();
    let id = match (head_tokens.next(), head_tokens.next()) {
        (Some(id), None) => id,
        _ => return Err(parse_err(line, format!("{keyword} line needs exactly one id before `:`"))),
    };
    if !is_identifier(id) {
        return Err(parse_err(line, format!("invalid {keyword} id `{id}`")));
    }
    let body: Vec<&str> = rest.split_whitespace().collect();
    for tok in &body {
        if !is_identifier(tok) && !(keyword == "edge" && (*tok == "+" || *tok == "-")) {
            return Err(parse_err(line, format!("invalid token `{tok}`")));
        }
    }
    Ok((id, body))
}

/// Parses one SMAP document. Every dart must appear exactly once among the
/// vertex lines and exactly once among the edge lines; the map must be
/// connected.
pub fn parse_smap(text: &str) -> Result<EmbeddedMap> {
    let mut builder = MapBuilder::new();
    let mut seen_header = false;
    let mut vertex_dart_line: HashMap<String, usize> = HashMap::new();
    let mut edge_dart_line: HashMap<String, usize> = HashMap::new();
    let mut vertex_ids: HashMap<String, usize> = HashMap::new();
    let mut edge_ids: HashMap<String, usize> = HashMap::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !seen_header {
            if content.split_whitespace().collect::<Vec<_>>() != ["smap", "1"] {
                return Err(parse_err(line, "expected header `smap 1`"));
            }
            seen_header = true;
            continue;
        }
        let keyword = content.split_whitespace().next().unwrap_or("");
        match keyword {
            "vertex" => {
                let (id, darts) = split_header(content, "vertex", line)?;
                if darts.is_empty() {
                    return Err(parse_err(line, format!("vertex `{id}` has an empty rotation")));
                }
                if let Some(prev) = vertex_ids.insert(id.to_string(), line) {
                    return Err(parse_err(line, format!("vertex `{id}` already defined on line {prev}")));
                }
                for d in &darts {
                    if let Some(prev) = vertex_dart_line.insert(d.to_string(), line) {
                        return Err(parse_err(line, format!("dart `{d}` already used by a vertex on line {prev}")));
                    }
                }
                builder.vertex(id, darts);
            }
            "edge" => {
                let (id, body) = split_header(content, "edge", line)?;
                let [a, b, s] = body.as_slice() else {
                    return Err(parse_err(line, "edge line needs two darts and a sign"));
                };
                let sign = match *s {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    other => return Err(parse_err(line, format!("invalid sign `{other}`"))),
                };
                if a == b {
                    return Err(parse_err(line, format!("edge `{id}` uses dart `{a}` twice")));
                }
                if let Some(prev) = edge_ids.insert(id.to_string(), line) {
                    return Err(parse_err(line, format!("edge `{id}` already defined on line {prev}")));
                }
                for d in [a, b] {
                    if let Some(prev) = edge_dart_line.insert(d.to_string(), line) {
                        return Err(parse_err(line, format!("dart `{d}` already used by an edge on line {prev}")));
                    }
                }
                builder.edge(id, *a, *b, sign);
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
    }
    if !seen_header {
        return Err(parse_err(last_line.max(1), "missing header `smap 1`"));
    }
    for (d, line) in &vertex_dart_line {
        if !edge_dart_line.contains_key(d) {
            return Err(parse_err(*line, format!("dart `{d}` belongs to no edge")));
        }
    }
    for (d, line) in &edge_dart_line {
        if !vertex_dart_line.contains_key(d) {
            return Err(parse_err(*line, format!("dart `{d}` belongs to no vertex")));
        }
    }
    builder.build()
}

/// Serializes vertices then edges in storage order.
pub fn write_smap(m: &EmbeddedMap) -> String {
    let mut out = String::from("smap 1\n");
    for v in 0..m.vertex_count() {
        out.push_str("vertex ");
        out.push_str(m.vertex_name(v));
        out.push(':');
        for &d in m.rotation(v) {
            out.push(' ');
            out.push_str(m.dart_name(d));
        }
        out.push('\n');
    }
    for e in 0..m.edge_count() {
        let (a, b) = (crate::Dart(2 * e as u32), crate::Dart(2 * e as u32 + 1));
        out.push_str(&format!(
            "edge {}: {} {} {}\n",
            m.edge_name(e),
            m.dart_name(a),
            m.dart_name(b),
            m.sign(e).symbol()
        ));
    }
    out
}

/// Serialization of the canonical representative: equal strings iff the
/// maps are isomorphic.
pub fn write_canonical_smap(m: &EmbeddedMap) -> String {
    write_smap(&m.canonical_map())
}

/// Splits a stream of SMAP documents separated by `---` lines.
pub fn parse_smap_stream(text: &str) -> Result<Vec<EmbeddedMap>> {
    let mut maps = Vec::new();
    let mut chunk = String::new();
    let mut offset = 0;
    let mut chunk_start = 0;
    for raw in text.lines() {
        offset += 1;
        if raw.trim() == "---" {
            if !chunk.trim().is_empty() {
                maps.push(parse_smap(&chunk).map_err(|e| shift(e, chunk_start))?);
            }
            chunk.clear();
            chunk_start = offset;
            continue;
        }
        chunk.push_str(raw);
        chunk.push('\n');
    }
    if !chunk.trim().is_empty() {
        maps.push(parse_smap(&chunk).map_err(|e| shift(e, chunk_start))?);
    }
    Ok(maps)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse { line: line + by, message },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const T1: &str = "smap 1\n# torus\nvertex x: a1 b1 a2 b2\n\nedge a: a1 a2 +\nedge b: b1 b2 + # loop\n";

    #[test]
    fn parses_torus() {
        let m = parse_smap(T1).unwrap();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.euler_characteristic(), 0);
        assert!(m.is_isomorphic(&fixtures::t1()));
    }

    #[test]
    fn write_then_parse_is_identity() {
        for (_, m) in fixtures::all().into_iter().filter(|(n, _)| *n != "v8_skeleton") {
            let text = write_smap(&m);
            assert_eq!(parse_smap(&text).unwrap(), m);
        }
    }

    #[test]
    fn canonical_text_is_a_fixed_point() {
        let text = write_canonical_smap(&fixtures::q3());
        assert_eq!(write_canonical_smap(&parse_smap(&text).unwrap()), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("vertex x: a\n", 1),
            ("smap 1\nvertex x: a1 a2\nedge a: a1 a2 *\n", 3),
            ("smap 1\nvertex x: a1 a2\nvertex y: a1\n", 3),
            ("smap 1\nvertex x: a1 a2\nedge a: a1 a2 +\nedge b: a2 a3 +\n", 4),
            ("smap 1\nvertex x: a1 a2 a3\nedge a: a1 a2 +\n", 2),
            ("smap 1\nvertex x a1\n", 2),
            ("smap 1\nvertex x: a1 a2\nedge a: a1 a2 +\nface f: a1\n", 4),
        ];
        for (text, line) in cases {
            match parse_smap(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn disconnected_is_rejected() {
        let text = "smap 1\nvertex x: a1 a2\nvertex y: b1 b2\nedge a: a1 a2 +\nedge b: b1 b2 +\n";
        assert!(matches!(parse_smap(text), Err(Error::Structural(_))));
    }

    #[test]
    fn stream_split() {
        let text = format!("{}---\n{}", write_smap(&fixtures::c4()), write_smap(&fixtures::t1()));
        let maps = parse_smap_stream(&text).unwrap();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[1], fixtures::t1());
    }
}
