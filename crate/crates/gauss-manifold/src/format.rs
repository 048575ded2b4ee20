//! The `gd v1` text format.
//!
//! ```text
//! gd v1
//! # the 3-sphere
//! chord 1 +
//! plus p1 = 1
//! minus m1 = 1
//! ```
//!
//! Circles keep the order in which their lines appear and list chord ids in
//! cyclic order. An optional `colors = c1 c2 ...` line gives one color per
//! traced cycle in canonical cycle order; without it every cycle gets its
//! own color. A file with no content lines is the empty diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use gauss_manifold_core::{
    canonicalize_decorated, trace_cycles, ChordId, ColorId, Decoration, DiagramError, Family,
    GaussDiagram, Sign,
};

pub const HEADER: &str = "gd v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected header `{HEADER}`")]
    MissingHeader,
    #[error("unsupported header {0:?}")]
    BadHeader(String),
    #[error("{0}")]
    Syntax(String),
    #[error("unknown chord {0}")]
    UnknownChord(u32),
    #[error("chord {0} is declared twice")]
    DuplicateChord(u32),
    #[error("circle name {0:?} is used twice")]
    DuplicateName(String),
    #[error("chord {chord} appears twice in the {family} family")]
    DuplicateEndpoint { chord: u32, family: Family },
    #[error("chord {chord} has no {family} endpoint")]
    MissingEndpoint { chord: u32, family: Family },
    #[error("second colors line")]
    DuplicateColors,
    #[error("expected {expected} colors, one per traced cycle, found {found}")]
    ColorCount { expected: usize, found: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A whitespace-separated token and its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

struct Parser {
    line: usize,
}

impl Parser {
    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
        }
    }

    fn syntax(&self, column: usize, msg: impl Into<String>) -> ParseError {
        self.err(column, ParseErrorKind::Syntax(msg.into()))
    }

    fn number(&self, t: Token<'_>, what: &str) -> Result<u32, ParseError> {
        t.text
            .parse()
            .map_err(|_| self.syntax(t.column, format!("expected {what}, found {:?}", t.text)))
    }
}

struct CircleLine {
    family: Family,
    line: usize,
    chords: Vec<(u32, usize)>,
}

/// Parses a diagram file.
pub fn parse(text: &str) -> Result<(GaussDiagram, Decoration), ParseError> {
    let mut p = Parser { line: 0 };
    let mut header = false;
    let mut chords: BTreeMap<u32, (Sign, usize)> = BTreeMap::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut circles: Vec<CircleLine> = Vec::new();
    let mut colors: Option<(usize, usize, Vec<u32>)> = None;

    for (k, raw) in text.lines().enumerate() {
        p.line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&first) = toks.first() else {
            continue;
        };
        if !header {
            let found = toks.iter().map(|t| t.text).collect::<Vec<_>>().join(" ");
            if first.text != "gd" {
                return Err(p.err(first.column, ParseErrorKind::MissingHeader));
            }
            if found != HEADER {
                return Err(p.err(first.column, ParseErrorKind::BadHeader(found)));
            }
            header = true;
            continue;
        }
        match first.text {
            "chord" => {
                let [_, id, sign] = toks[..] else {
                    return Err(p.syntax(first.column, "expected `chord <id> <+|->`"));
                };
                let h = p.number(id, "a chord id")?;
                let s = match sign.text {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    other => {
                        return Err(
                            p.syntax(sign.column, format!("expected + or -, found {other:?}"))
                        )
                    }
                };
                if chords.insert(h, (s, p.line)).is_some() {
                    return Err(p.err(id.column, ParseErrorKind::DuplicateChord(h)));
                }
            }
            "plus" | "minus" => {
                let family = if first.text == "plus" {
                    Family::Plus
                } else {
                    Family::Minus
                };
                let (Some(name), Some(eq)) = (toks.get(1), toks.get(2)) else {
                    return Err(p.syntax(first.column, "expected `<family> <name> = <ids>`"));
                };
                if eq.text != "=" {
                    return Err(p.syntax(eq.column, "expected `=`"));
                }
                if !names.insert(name.text.to_string()) {
                    return Err(p.err(name.column, ParseErrorKind::DuplicateName(name.text.into())));
                }
                let ids = toks[3..]
                    .iter()
                    .map(|&t| Ok((p.number(t, "a chord id")?, t.column)))
                    .collect::<Result<_, ParseError>>()?;
                circles.push(CircleLine {
                    family,
                    line: p.line,
                    chords: ids,
                });
            }
            "colors" => {
                if colors.is_some() {
                    return Err(p.err(first.column, ParseErrorKind::DuplicateColors));
                }
                match toks.get(1) {
                    Some(t) if t.text == "=" => {}
                    Some(t) => return Err(p.syntax(t.column, "expected `=`")),
                    None => return Err(p.syntax(first.column, "expected `colors = <ids>`")),
                }
                let cs = toks[2..]
                    .iter()
                    .map(|&t| p.number(t, "a color id"))
                    .collect::<Result<_, _>>()?;
                colors = Some((p.line, first.column, cs));
            }
            other => {
                return Err(p.syntax(first.column, format!("unknown keyword {other:?}")));
            }
        }
    }
    if !header {
        let d = GaussDiagram::empty();
        let deco = Decoration::traced(&d).map_err(|e| p.err(1, e.into()))?;
        return Ok((d, deco));
    }

    let mut seen: BTreeSet<(Family, u32)> = BTreeSet::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for c in &circles {
        p.line = c.line;
        let mut ids = Vec::new();
        for &(h, col) in &c.chords {
            if !chords.contains_key(&h) {
                return Err(p.err(col, ParseErrorKind::UnknownChord(h)));
            }
            if !seen.insert((c.family, h)) {
                return Err(p.err(
                    col,
                    ParseErrorKind::DuplicateEndpoint {
                        chord: h,
                        family: c.family,
                    },
                ));
            }
            ids.push(ChordId(h));
        }
        match c.family {
            Family::Plus => plus.push(ids),
            Family::Minus => minus.push(ids),
        }
    }
    for (&h, &(_, line)) in &chords {
        for family in Family::BOTH {
            if !seen.contains(&(family, h)) {
                p.line = line;
                return Err(p.err(1, ParseErrorKind::MissingEndpoint { chord: h, family }));
            }
        }
    }
    let signs = chords.iter().map(|(&h, &(s, _))| (ChordId(h), s)).collect();
    let d = GaussDiagram::new(plus, minus, signs).map_err(|e| p.err(1, e.into()))?;
    let cycles = trace_cycles(&d).map_err(|e| p.err(1, e.into()))?;
    let deco = match colors {
        None => Decoration::distinct(cycles),
        Some((line, column, cs)) => {
            p.line = line;
            if cs.len() != cycles.len() {
                return Err(p.err(
                    column,
                    ParseErrorKind::ColorCount {
                        expected: cycles.len(),
                        found: cs.len(),
                    },
                ));
            }
            Decoration::new(cycles, cs.into_iter().map(ColorId).collect())
                .map_err(|e| p.err(column, e.into()))?
        }
    };
    Ok((d, deco))
}

/// Canonical text of a decorated diagram.
///
/// Circles are named `p1, p2, ...` and `m1, m2, ...`; the `colors` line is
/// left out when every cycle has its own color.
pub fn serialize(d: &GaussDiagram, deco: &Decoration) -> Result<String, DiagramError> {
    let (d, deco) = canonicalize_decorated(d, deco)?;
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    for (h, s) in d.signs() {
        writeln!(out, "chord {h} {s}").unwrap();
    }
    for family in Family::BOTH {
        for (i, circle) in d.circles(family).iter().enumerate() {
            write!(out, "{family} {}{} =", family.prefix(), i + 1).unwrap();
            for h in circle {
                write!(out, " {h}").unwrap();
            }
            out.push('\n');
        }
    }
    if !deco.is_all_distinct() {
        out.push_str("colors =");
        for c in deco.colors() {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Wraps [`serialize`] for use in `format!`.
pub struct Text<'a>(pub &'a GaussDiagram, pub &'a Decoration);

impl fmt::Display for Text<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self.0, self.1).map_err(|_| fmt::Error)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gauss_manifold_core::builtin;

    fn kind(text: &str) -> (usize, usize, ParseErrorKind) {
        let e = parse(text).unwrap_err();
        (e.line, e.column, e.kind)
    }

    #[test]
    fn s3_file() {
        let (d, deco) = parse("gd v1\nchord 1 +\nplus a = 1\nminus b = 1\n").unwrap();
        assert_eq!((d, deco), builtin::s3());
    }

    #[test]
    fn empty_and_comment_only_files() {
        for text in ["", "\n\n", "# nothing here\n   # still nothing\n"] {
            let (d, deco) = parse(text).unwrap();
            assert!(d.is_empty());
            assert_eq!(deco.cycle_count(), 0);
        }
        let (d, _) = parse("gd v1 # header only\n").unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# s3\n\ngd v1\nchord 1 + # the only chord\n\nplus p = 1\nminus m = 1";
        assert_eq!(parse(text).unwrap(), builtin::s3());
    }

    #[test]
    fn header_errors() {
        assert_eq!(kind("chord 1 +\n"), (1, 1, ParseErrorKind::MissingHeader));
        assert_eq!(
            kind("\n  gd v2\n"),
            (2, 3, ParseErrorKind::BadHeader("gd v2".into()))
        );
    }

    #[test]
    fn chord_errors() {
        assert!(matches!(
            kind("gd v1\nchord x +\n"),
            (2, 7, ParseErrorKind::Syntax(_))
        ));
        assert!(matches!(
            kind("gd v1\nchord 1 *\n"),
            (2, 9, ParseErrorKind::Syntax(_))
        ));
        assert!(matches!(
            kind("gd v1\nchord 1\n"),
            (2, 1, ParseErrorKind::Syntax(_))
        ));
        assert_eq!(
            kind("gd v1\nchord 1 +\nchord 1 -\n"),
            (3, 7, ParseErrorKind::DuplicateChord(1))
        );
        assert!(matches!(
            kind("gd v1\nknot 1\n"),
            (2, 1, ParseErrorKind::Syntax(_))
        ));
    }

    #[test]
    fn circle_errors() {
        assert_eq!(
            kind("gd v1\nchord 1 +\nplus p = 1 2\nminus m = 1\n"),
            (3, 12, ParseErrorKind::UnknownChord(2))
        );
        assert_eq!(
            kind("gd v1\nchord 1 +\nplus p = 1\nplus q = 1\nminus m = 1\n"),
            (
                4,
                10,
                ParseErrorKind::DuplicateEndpoint {
                    chord: 1,
                    family: Family::Plus
                }
            )
        );
        assert_eq!(
            kind("gd v1\nchord 1 +\nplus p = 1\nminus m =\n"),
            (
                2,
                1,
                ParseErrorKind::MissingEndpoint {
                    chord: 1,
                    family: Family::Minus
                }
            )
        );
        assert_eq!(
            kind("gd v1\nplus p =\nminus p =\n"),
            (3, 7, ParseErrorKind::DuplicateName("p".into()))
        );
        assert!(matches!(
            kind("gd v1\nplus p 1\n"),
            (2, 8, ParseErrorKind::Syntax(_))
        ));
    }

    #[test]
    fn color_count_names_the_cycle_count() {
        let (_, deco) = builtin::lens(5, 1).unwrap();
        let expected = deco.cycle_count();
        assert_eq!(expected, 5);
        let text = "gd v1\nchord 1 +\nchord 2 +\nchord 3 +\nchord 4 +\nchord 5 +\n\
                    plus p = 1 2 3 4 5\nminus m = 1 2 3 4 5\ncolors = 1 2 3\n";
        let e = parse(text).unwrap_err();
        assert!(e.to_string().contains("expected 5 colors"));
        assert_eq!(
            (e.line, e.column, e.kind),
            (9, 1, ParseErrorKind::ColorCount { expected, found: 3 })
        );
    }

    #[test]
    fn colors_line() {
        let text = "gd v1\nchord 1 +\nplus p = 1\nplus q =\nminus m = 1\ncolors = 4 4 4\n";
        let (d, deco) = parse(text).unwrap();
        assert_eq!(d, builtin::solid_torus().0);
        assert_eq!(deco.colors(), [ColorId(4); 3]);
        assert!(matches!(
            kind("gd v1\ncolors = 1\ncolors = 1\n"),
            (3, 1, ParseErrorKind::DuplicateColors)
        ));
    }

    #[test]
    fn serialize_s3() {
        let (d, deco) = builtin::s3();
        let text = serialize(&d, &deco).unwrap();
        assert_eq!(text, "gd v1\nchord 1 +\nplus p1 = 1\nminus m1 = 1\n");
        assert_eq!(parse(&text).unwrap(), (d, deco));
    }

    #[test]
    fn serialize_keeps_repeated_colors() {
        let (d, deco) = builtin::solid_torus();
        let text = serialize(&d, &deco).unwrap();
        assert!(text.ends_with("colors = 1 1 1\n"), "{text}");
        let back = parse(&text).unwrap();
        assert_eq!(back, canonicalize_decorated(&d, &deco).unwrap());
    }
}
