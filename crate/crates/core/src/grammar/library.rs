//! The grammars shipped under `grammars/`, compiled in.

use super::{parse_grammar, Grammar};

macro_rules! gram {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../../../grammars/", $name, ".gram")))),*]
    };
}

/// `(name, source)` for every shipped grammar.
pub const BUILTIN: &[(&str, &str)] = gram!(
    "dumont",
    "ank2",
    "thm1",
    "thm1-alias",
    "lemmacycle",
    "keylemma",
    "lemmaJi",
    "thmab",
    "lemmaap",
    "lemmaapp",
    "lapap",
    "lapap-alias",
    "lemma1",
    "thm2-alias",
    "g3",
);

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|(n, _)| *n)
}

pub fn builtin_source(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a shipped grammar by name.
pub fn builtin(name: &str) -> Option<Grammar> {
    builtin_source(name).map(|s| parse_grammar(s).unwrap_or_else(|e| panic!("shipped grammar {name}: {e}")))
}
