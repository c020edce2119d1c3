//! Text form: one `letter -> polynomial` rule per line, `#` starts a comment.

use crate::exactpoly::{parse_poly, Var};

use super::Grammar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: duplicate rule for `{letter}` (first given on line {first})")]
    Duplicate { letter: String, line: usize, first: usize },
}

fn is_ident(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_alphabetic() || c == '_') && it.all(|c| c.is_alphanumeric() || c == '_')
}

pub fn parse_grammar(src: &str) -> Result<Grammar, GrammarError> {
    let mut g = Grammar::new();
    let mut seen: Vec<(String, usize)> = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = match raw.find('#') {
            Some(c) => &raw[..c],
            None => raw,
        };
        if text.trim().is_empty() {
            continue;
        }
        let syntax = |column: usize, message: &str| GrammarError::Syntax { line, column, message: message.into() };
        let Some(arrow) = text.find("->") else {
            let col = text.len() - text.trim_start().len() + 1;
            return Err(syntax(col, "expected `letter -> polynomial`"));
        };
        let lhs = text[..arrow].trim();
        if !is_ident(lhs) {
            let col = text.len() - text.trim_start().len() + 1;
            return Err(syntax(col, "left-hand side must be a single letter name"));
        }
        let rhs_start = arrow + 2;
        let rhs = &text[rhs_start..];
        // columns count characters, not bytes
        let offset = text[..rhs_start].chars().count();
        let rule = parse_poly(rhs).map_err(|e| GrammarError::Syntax {
            line,
            column: offset + e.column,
            message: e.message,
        })?;
        if let Some((_, first)) = seen.iter().find(|(l, _)| l == lhs) {
            return Err(GrammarError::Duplicate { letter: lhs.into(), line, first: *first });
        }
        seen.push((lhs.to_string(), line));
        g.insert(Var::new(lhs), rule);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly;

    #[test]
    fn dumont_text() {
        let g = parse_grammar("a -> a*b\nb -> a*b").unwrap();
        assert_eq!(g.rule(&Var::new("a")), Some(&poly("a*b")));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn g1_text() {
        let g = parse_grammar("I -> I*p*q\np -> x*y\nx -> x*y\ny -> x*y").unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.rule(&Var::new("I")), Some(&poly("I*p*q")));
    }

    #[test]
    fn comments_and_blanks() {
        let g = parse_grammar("# header\n\n  a -> 1/2*a  # half\n").unwrap();
        assert_eq!(g.rule(&Var::new("a")), Some(&poly("a/2")));
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_grammar("a -> a*").unwrap_err(),
            GrammarError::Syntax { line: 1, column: 7, message: "unexpected end of input".into() }
        );
        assert!(matches!(parse_grammar("a -> b\n\nb - a"), Err(GrammarError::Syntax { line: 3, column: 1, .. })));
        assert_eq!(
            parse_grammar("a -> b\nb -> a\na -> a").unwrap_err(),
            GrammarError::Duplicate { letter: "a".into(), line: 3, first: 1 }
        );
        assert!(matches!(parse_grammar("2 -> a"), Err(GrammarError::Syntax { .. })));
        assert!(matches!(parse_grammar("a -> (b"), Err(GrammarError::Syntax { line: 1, column: 7, .. })));
    }
}
