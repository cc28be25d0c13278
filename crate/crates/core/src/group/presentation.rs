use serde::{Deserialize, Serialize};

use super::word::{cyclic_reduce, inverse, Letter, Word};
use crate::error::{Error, Result};

/// A finite group presentation: relations `lhs = rhs` over generators and
/// their formal inverses, with an optional subgroup given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Word, Word)>,
    pub subgroup: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    generators: Vec<String>,
    relations: Vec<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subgroup: Option<Vec<String>>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>) -> Self {
        GroupPresentation {
            generators,
            relations: Vec::new(),
            subgroup: None,
        }
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn add_relation(&mut self, lhs: Word, rhs: Word) {
        self.relations.push((lhs, rhs));
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Parses one signed generator token: `a` or `a^-1`.
    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let token = token.trim();
        match token.strip_suffix("^-1") {
            Some(base) => Ok(Letter::neg(self.gen_index(base)?)),
            None => Ok(Letter::pos(self.gen_index(token)?)),
        }
    }

    /// Parses a comma-separated word; the empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        split_tokens(text).into_iter().map(|t| self.parse_letter(t)).collect()
    }

    pub fn letter_name(&self, x: Letter) -> String {
        let base = &self.generators[x.gen()];
        if x.inv {
            format!("{base}^-1")
        } else {
            base.clone()
        }
    }

    pub fn word_tokens(&self, w: &[Letter]) -> Vec<String> {
        w.iter().map(|&x| self.letter_name(x)).collect()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        self.word_tokens(w).join(",")
    }

    /// Relators `lhs rhs^-1`, cyclically reduced, empty ones dropped.
    pub fn relators(&self) -> Vec<Word> {
        self.relations
            .iter()
            .map(|(l, r)| {
                let mut w = l.clone();
                w.extend(inverse(r));
                cyclic_reduce(&w)
            })
            .filter(|w| !w.is_empty())
            .collect()
    }

    pub fn check(&self) -> Result<()> {
        let n = self.ngens();
        let mut seen = std::collections::HashSet::new();
        for g in &self.generators {
            if g.is_empty() || split_tokens(g).len() != 1 || g.ends_with("^-1") {
                return Err(Error::Malformed(format!("bad generator name `{g}`")));
            }
            if !seen.insert(g) {
                return Err(Error::Malformed(format!("duplicate generator `{g}`")));
            }
        }
        let bad = self
            .relations
            .iter()
            .flat_map(|(l, r)| l.iter().chain(r))
            .any(|x| x.gen() >= n);
        if bad || self.subgroup.iter().flatten().any(|&g| g >= n) {
            return Err(Error::Malformed("relation uses an undeclared generator".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text)?;
        let mut p = GroupPresentation::new(file.generators);
        p.check()?;
        for [l, r] in &file.relations {
            let parse = |ws: &Vec<String>| ws.iter().map(|t| p.parse_letter(t)).collect::<Result<Word>>();
            let rel = (parse(l)?, parse(r)?);
            p.relations.push(rel);
        }
        if let Some(sub) = file.subgroup {
            p.subgroup = Some(sub.iter().map(|s| p.gen_index(s)).collect::<Result<_>>()?);
        }
        Ok(p)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let file = PresentationFile {
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .map(|(l, r)| [self.word_tokens(l), self.word_tokens(r)])
                .collect(),
            subgroup: self
                .subgroup
                .as_ref()
                .map(|s| s.iter().map(|&g| self.generators[g].clone()).collect()),
        };
        serde_json::to_value(file).expect("presentation serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

/// Splits on commas outside square brackets, so `[1,e12],[2,e21]` has two tokens.
pub fn split_tokens(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}
