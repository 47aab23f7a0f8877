//! Finite group presentations, words over the generators, and relator handling.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// A named generator of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub index: usize,
    pub name: String,
}

/// A single letter of a word: a generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    /// Index into `Presentation::generators`.
    pub gen: usize,
    /// True if this letter is the formal inverse of the generator.
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    /// The formal inverse of this letter.
    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A word over the generators and their inverses.
///
/// Words are stored verbatim; free reduction is never applied implicitly,
/// since boundary words of diagrams must be read exactly as labeled.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The formal inverse: letters reversed and individually inverted.
    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Concatenation of `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    /// Renders the word using the presentation's generator names.
    pub fn display<'a>(&'a self, p: &'a Presentation) -> WordDisplay<'a> {
        WordDisplay { word: self, pres: p }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    pres: &'a Presentation,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for l in &self.word.0 {
            write!(f, "{}", self.pres.generators[l.gen].name)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// A finite presentation with its longest-relator length `rho`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
    pub rho: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: expected `{expected}`")]
    Syntax { line: usize, expected: &'static str },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("empty relator at position {0}")]
    EmptyRelator(usize),
    #[error("no relators (pass --allow-free to accept a free presentation)")]
    NoRelators,
    #[error("line {line}, column {col}: unknown generator in word")]
    UnknownGenerator { line: usize, col: usize },
}

impl Presentation {
    /// Builds a presentation, computing `rho` and checking the field invariants.
    pub fn new(
        names: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Presentation, PresentationError> {
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(PresentationError::DuplicateGenerator(n.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator(i));
            }
        }
        let rho = relators.iter().map(|r| r.len()).max().unwrap_or(0);
        let generators = names
            .into_iter()
            .enumerate()
            .map(|(index, name)| Generator { index, name })
            .collect();
        Ok(Presentation { generators, relators, rho })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Parses a word in the text format: concatenated tokens `name`,
    /// `name^-1`, or `name'`. Longest generator name wins at each position.
    pub fn parse_word(&self, text: &str, line: usize) -> Result<Word, PresentationError> {
        let text = text.trim();
        let mut letters = Vec::new();
        let mut rest = text;
        let mut col = 1;
        // Try generator names longest-first so multi-character names are
        // never shadowed by a shorter prefix.
        let mut by_len: Vec<&Generator> = self.generators.iter().collect();
        by_len.sort_by(|a, b| b.name.len().cmp(&a.name.len()).then(a.index.cmp(&b.index)));
        'outer: while !rest.is_empty() {
            if rest.starts_with(char::is_whitespace) {
                rest = &rest[1..];
                col += 1;
                continue;
            }
            for g in &by_len {
                if let Some(tail) = rest.strip_prefix(g.name.as_str()) {
                    let (inverse, tail, used) = if let Some(t) = tail.strip_prefix("^-1") {
                        (true, t, g.name.len() + 3)
                    } else if let Some(t) = tail.strip_prefix('\'') {
                        (true, t, g.name.len() + 1)
                    } else {
                        (false, tail, g.name.len())
                    };
                    letters.push(Letter::new(g.index, inverse));
                    rest = tail;
                    col += used;
                    continue 'outer;
                }
            }
            return Err(PresentationError::UnknownGenerator { line, col });
        }
        Ok(Word(letters))
    }

    /// Serializes to the presentation file format; inverse of [`parse_presentation`].
    pub fn serialize(&self) -> String {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let rels: Vec<String> =
            self.relators.iter().map(|r| r.display(self).to_string()).collect();
        format!("gens: {}\nrels: {}\n", gens.join(","), rels.join("; "))
    }
}

/// Parses the presentation file format:
///
/// ```text
/// gens: a,b
/// rels: aba^-1b^-1
/// ```
///
/// Relators are separated by `;`. Set `allow_free` to accept an empty
/// relator list.
pub fn parse_presentation(
    text: &str,
    allow_free: bool,
) -> Result<Presentation, PresentationError> {
    let mut gens_line = None;
    let mut rels_line = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("gens:") {
            gens_line = Some((i + 1, rest.trim().to_string()));
        } else if let Some(rest) = line.strip_prefix("rels:") {
            rels_line = Some((i + 1, rest.trim().to_string()));
        } else {
            return Err(PresentationError::Syntax { line: i + 1, expected: "gens: or rels:" });
        }
    }
    let (_, gens) =
        gens_line.ok_or(PresentationError::Syntax { line: 0, expected: "gens:" })?;
    let names: Vec<String> = gens
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(PresentationError::Syntax { line: 0, expected: "at least one generator" });
    }
    // Build with no relators first so parse_word can resolve names.
    let skeleton = Presentation::new(names.clone(), Vec::new())?;
    let mut relators = Vec::new();
    if let Some((lineno, rels)) = rels_line {
        for part in rels.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let w = skeleton.parse_word(part, lineno)?;
            if w.is_empty() {
                return Err(PresentationError::EmptyRelator(relators.len()));
            }
            relators.push(w);
        }
    }
    if relators.is_empty() && !allow_free {
        return Err(PresentationError::NoRelators);
    }
    Presentation::new(names, relators)
}

/// The closure of the relators under cyclic rotation and formal inversion.
///
/// Boundary words of internal 2-cells must lie in this set.
pub fn relator_cyclic_family(p: &Presentation) -> BTreeSet<Word> {
    let mut family = BTreeSet::new();
    for r in &p.relators {
        for base in [r.clone(), r.inv()] {
            for k in 0..base.len().max(1) {
                family.insert(base.rotate(k));
            }
        }
    }
    family
}
