//! Line-oriented text formats for posets and maps, and Graphviz output.
//!
//! ```text
//! poset v1
//! # comment
//! elements: m a b t
//! rel: m a
//! rel: a t
//! ```
//!
//! `rel: A B` lines generate the order (`A < B`); they need not be covers. Maps use a
//! `map v1` header followed by `pair: X Y` lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::PosetError;
use crate::maps::PosetMap;
use crate::poset::{NodeId, Poset};

pub const POSET_HEADER: &str = "poset v1";
pub const MAP_HEADER: &str = "map v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: PosetError },
    #[error("{0}")]
    Poset(#[from] PosetError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// A parsed poset file with its generator pairs and the lines they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPoset {
    pub poset: Poset,
    pub generators: Vec<(NodeId, NodeId)>,
    pub generator_lines: Vec<usize>,
}

impl ParsedPoset {
    /// Generator pairs that are not covers, with their line numbers.
    pub fn non_cover_generators(&self) -> Vec<(usize, &str, &str)> {
        self.generators
            .iter()
            .zip(&self.generator_lines)
            .filter(|((a, b), _)| !self.poset.covers(*a, *b))
            .map(|(&(a, b), &line)| (line, self.poset.label(a), self.poset.label(b)))
            .collect()
    }
}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.contains(':') && !label.chars().any(char::is_whitespace)
}

/// Lines with 1-based numbers, comments and blanks removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Splits `key: rest` and returns `rest`'s whitespace-separated tokens.
fn keyed<'a>(line: &'a str, key: &str) -> Option<Vec<&'a str>> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(':'))
        .map(|rest| rest.split_whitespace().collect())
}

pub fn parse_poset(text: &str) -> Result<ParsedPoset, ParseError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, POSET_HEADER)) => {}
        Some((n, other)) => {
            return Err(syntax(
                n,
                format!("expected `{POSET_HEADER}`, found `{other}`"),
            ))
        }
        None => return Err(syntax(1, format!("missing `{POSET_HEADER}` header"))),
    }
    let mut labels: Option<(usize, Vec<String>)> = None;
    let mut rels: Vec<(usize, String, String)> = Vec::new();
    for (n, line) in lines {
        if let Some(tokens) = keyed(line, "elements") {
            if labels.is_some() {
                return Err(syntax(n, "second `elements:` line"));
            }
            if let Some(bad) = tokens.iter().find(|t| !valid_label(t)) {
                return Err(syntax(n, format!("invalid label `{bad}`")));
            }
            labels = Some((n, tokens.into_iter().map(str::to_string).collect()));
        } else if let Some(tokens) = keyed(line, "rel") {
            let [a, b] = tokens[..] else {
                return Err(syntax(n, "`rel:` takes exactly two labels"));
            };
            rels.push((n, a.to_string(), b.to_string()));
        } else {
            return Err(syntax(n, format!("unrecognized line `{line}`")));
        }
    }
    let (label_line, labels) = labels.ok_or_else(|| syntax(1, "missing `elements:` line"))?;
    if labels.is_empty() {
        return Err(ParseError::Invalid {
            line: label_line,
            source: PosetError::EmptyPoset,
        });
    }
    let mut seen = std::collections::HashSet::new();
    for l in &labels {
        if !seen.insert(l.as_str()) {
            return Err(ParseError::Invalid {
                line: label_line,
                source: PosetError::DuplicateLabel(l.clone()),
            });
        }
    }
    let index = |line: usize, l: &str| {
        labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| ParseError::Invalid {
                line,
                source: PosetError::UnknownLabel(l.to_string()),
            })
    };
    let mut pairs = Vec::with_capacity(rels.len());
    for (n, a, b) in &rels {
        pairs.push((index(*n, a)?, index(*n, b)?));
    }
    let poset = Poset::from_generators(labels.clone(), pairs.iter().copied())?;
    Ok(ParsedPoset {
        poset,
        generators: pairs
            .into_iter()
            .map(|(a, b)| (NodeId::new(a), NodeId::new(b)))
            .collect(),
        generator_lines: rels.iter().map(|(n, _, _)| *n).collect(),
    })
}

/// Parses a stream of poset files concatenated one after another.
pub fn parse_posets(text: &str) -> Result<Vec<ParsedPoset>, ParseError> {
    let mut docs: Vec<(usize, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim() == POSET_HEADER {
            docs.push((i, String::new()));
        }
        match docs.last_mut() {
            Some((_, doc)) => {
                doc.push_str(line);
                doc.push('\n');
            }
            None if line.trim().is_empty() || line.trim().starts_with('#') => {}
            None => return Err(syntax(i + 1, format!("expected `{POSET_HEADER}`"))),
        }
    }
    docs.into_iter()
        .map(|(offset, doc)| {
            parse_poset(&doc).map_err(|e| match e {
                ParseError::Syntax { line, message } => ParseError::Syntax {
                    line: line + offset,
                    message,
                },
                ParseError::Invalid { line, source } => ParseError::Invalid {
                    line: line + offset,
                    source,
                },
                other => other,
            })
        })
        .collect()
}

/// Writes `p` with its cover pairs as generators. Each comment becomes a `# ` line.
pub fn format_poset(p: &Poset, comments: &[String]) -> String {
    let mut out = String::new();
    out.push_str(POSET_HEADER);
    out.push('\n');
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "elements: {}", p.labels().join(" "));
    for (x, y) in p.cover_pairs() {
        let _ = writeln!(out, "rel: {} {}", p.label(x), p.label(y));
    }
    out
}

/// Parses a map file against known domain and codomain posets.
pub fn parse_map(text: &str, dom: &Poset, cod: &Poset) -> Result<PosetMap, ParseError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, MAP_HEADER)) => {}
        Some((n, other)) => {
            return Err(syntax(
                n,
                format!("expected `{MAP_HEADER}`, found `{other}`"),
            ))
        }
        None => return Err(syntax(1, format!("missing `{MAP_HEADER}` header"))),
    }
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (n, line) in lines {
        let Some(tokens) = keyed(line, "pair") else {
            return Err(syntax(n, format!("unrecognized line `{line}`")));
        };
        let [a, b] = tokens[..] else {
            return Err(syntax(n, "`pair:` takes exactly two labels"));
        };
        let invalid = |source| ParseError::Invalid { line: n, source };
        dom.require(a).map_err(invalid)?;
        cod.require(b).map_err(invalid)?;
        if pairs.iter().any(|(x, _)| x == a) {
            return Err(invalid(PosetError::DuplicateAssignment(a.to_string())));
        }
        pairs.push((a.to_string(), b.to_string()));
    }
    Ok(PosetMap::from_label_pairs(
        dom.clone(),
        cod.clone(),
        &pairs,
    )?)
}

pub fn format_map(map: &PosetMap, comments: &[String]) -> String {
    let mut out = String::new();
    out.push_str(MAP_HEADER);
    out.push('\n');
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for (a, b) in map.label_pairs() {
        let _ = writeln!(out, "pair: {a} {b}");
    }
    out
}

fn dot_id(label: &str) -> String {
    let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"")
}

/// Hasse diagram as a DOT digraph: edges point upward along covers, one rank per height.
pub fn render_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    for h in 0..=p.dim() {
        let level = p.label_sorted(p.nodes().filter(|&x| p.height(x) == h).collect());
        let ids: Vec<String> = level.iter().map(|&x| dot_id(p.label(x))).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }
    for (x, y) in p.cover_pairs() {
        let _ = writeln!(out, "  {} -> {};", dot_id(p.label(x)), dot_id(p.label(y)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{diamond, figure_1a};

    #[test]
    fn parse_diamond_with_comments_and_redundant_rel() {
        let text = "# the diamond\nposet v1\nelements: m a b t\nrel: m a\nrel: m b\n\nrel: a t\nrel: b t\nrel: m t\nrel: m t\n";
        let parsed = parse_poset(text).unwrap();
        assert!(parsed.poset.same_labeled(&diamond()));
        assert_eq!(
            parsed.non_cover_generators(),
            [(9, "m", "t"), (10, "m", "t")]
        );
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(
            parse_poset("poset v2\n"),
            Err(syntax(1, "expected `poset v1`, found `poset v2`"))
        );
        assert!(matches!(
            parse_poset("poset v1\nelements: a b\nrel: a c\n"),
            Err(ParseError::Invalid {
                line: 3,
                source: PosetError::UnknownLabel(_)
            })
        ));
        assert!(matches!(
            parse_poset("poset v1\nelements: a b\nrel: a\n"),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_poset("poset v1\nelements: a b\nrel: a b\nrel: b a\n"),
            Err(ParseError::Poset(PosetError::CycleDetected(_, _)))
        ));
        assert!(matches!(
            parse_poset("poset v1\nelements: a a\n"),
            Err(ParseError::Invalid {
                line: 2,
                source: PosetError::DuplicateLabel(_)
            })
        ));
        assert!(matches!(
            parse_poset("poset v1\nrel: a b\n"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn formatted_poset_reparses() {
        let p = figure_1a();
        let text = format_poset(&p, &["figure".into()]);
        assert!(text.starts_with("poset v1\n# figure\nelements: 6 7 8 9 10 12\n"));
        let back = parse_poset(&text).unwrap().poset;
        assert_eq!(back, p);
    }

    #[test]
    fn concatenated_posets() {
        let text = format!(
            "{}\n{}",
            format_poset(&diamond(), &[]),
            format_poset(&figure_1a(), &[])
        );
        let docs = parse_posets(&text).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[1].poset, figure_1a());
    }

    #[test]
    fn map_round_trip() {
        let d = diamond();
        let id = PosetMap::identity(&d);
        let text = format_map(&id, &[]);
        assert_eq!(text, "map v1\npair: a a\npair: b b\npair: m m\npair: t t\n");
        assert_eq!(parse_map(&text, &d, &d).unwrap(), id);

        assert!(matches!(
            parse_map("map v1\npair: a a\npair: a b\n", &d, &d),
            Err(ParseError::Invalid {
                line: 3,
                source: PosetError::DuplicateAssignment(_)
            })
        ));
        assert!(matches!(
            parse_map("map v1\npair: a a\n", &d, &d),
            Err(ParseError::Poset(PosetError::NonTotalMap { .. }))
        ));
    }

    #[test]
    fn dot_for_diamond() {
        let dot = render_dot(&diamond());
        assert_eq!(
            dot,
            "digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n  { rank=same; \"m\"; }\n  { rank=same; \"a\"; \"b\"; }\n  { rank=same; \"t\"; }\n  \"a\" -> \"t\";\n  \"b\" -> \"t\";\n  \"m\" -> \"a\";\n  \"m\" -> \"b\";\n}\n"
        );
    }
}
