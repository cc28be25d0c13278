//! Rewriting a group presentation so that every relation reads `a b = c`
//! over the generators, with the subgroup generators closed under inverses.
//!
//! Procedure:
//! 1. Reuse a generator `x` with a relation `x x = x` as the identity `z`, or adjoin `z`.
//! 2. Relations already of the form `a b = c` (positive letters) are kept.
//! 3. Every other relation becomes a freely reduced relator `c_1 ... c_k = 1`.
//!    Relators `a a` mark `a` as self-inverse; other inverse letters `a^-1`
//!    are replaced by a fresh partner `a_inv` with `a a_inv = z`.
//!    Then `k = 1` gives `c c = c`, `k = 2` gives `c_1 c_2 = z`, `k = 3` gives
//!    `c_1 c_2 = c_3^-1`, and longer relators are cut with prefix generators
//!    `p1 = c_1 c_2`, `p2 = p1 c_3`, ... ending in `p_{k-3} c_{k-1} = c_k^-1`.
//! 4. Add `z z = z`, `z x = x`, `x z = x` for every other generator.
//! 5. `B' = B ∪ B^-1`, or `{z}` when `B` is empty.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::presentation::GroupPresentation;
use super::word::{free_reduce, Letter, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPresentation {
    pub generators: Vec<String>,
    /// `[a, b, c]` means `a b = c`.
    pub triples: Vec<[usize; 3]>,
    pub subgroup: Vec<usize>,
    /// Declared inverse partner of each generator, when known.
    pub inverse: Vec<Option<usize>>,
    pub identity: usize,
    /// Each generator as a word over the input generators.
    pub to_original: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct NormalizedFile {
    generators: Vec<String>,
    triples: Vec<[String; 3]>,
    subgroup: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    identity: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    inverses: Vec<[String; 2]>,
}

struct Builder {
    names: Vec<String>,
    triples: Vec<[usize; 3]>,
    seen: HashSet<[usize; 3]>,
    inverse: Vec<Option<usize>>,
    to_original: Vec<Word>,
    z: usize,
}

impl Builder {
    fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 1;
        while self.names.contains(&name) {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }

    fn add_gen(&mut self, base: &str, original: Word) -> usize {
        let name = self.fresh_name(base);
        self.names.push(name);
        self.inverse.push(None);
        self.to_original.push(original);
        self.names.len() - 1
    }

    fn add(&mut self, t: [usize; 3]) {
        if self.seen.insert(t) {
            self.triples.push(t);
        }
    }

    fn partner(&mut self, a: usize) -> usize {
        if let Some(p) = self.inverse[a] {
            return p;
        }
        if a == self.z {
            self.inverse[a] = Some(a);
            return a;
        }
        let name = format!("{}_inv", self.names[a]);
        let original = super::word::inverse(&self.to_original[a]);
        let p = self.add_gen(&name, original);
        self.inverse[a] = Some(p);
        self.inverse[p] = Some(a);
        let z = self.z;
        self.add([a, p, z]);
        p
    }

    fn positive(&mut self, x: Letter) -> usize {
        if x.inv {
            self.partner(x.gen())
        } else {
            x.gen()
        }
    }
}

pub fn normalize_presentation(p: &GroupPresentation) -> Result<NormalizedPresentation> {
    p.check()?;
    let n = p.ngens();
    let is_triple = |l: &Word, r: &Word| l.len() == 2 && r.len() == 1 && !l.iter().chain(r).any(|x| x.inv);
    let idempotent_gen = p.relations.iter().find_map(|(l, r)| {
        (is_triple(l, r) && l[0] == l[1] && l[0] == r[0]).then(|| l[0].gen())
    });
    let mut b = Builder {
        names: p.generators.clone(),
        triples: Vec::new(),
        seen: HashSet::new(),
        inverse: vec![None; n],
        to_original: (0..n).map(|g| vec![Letter::pos(g)]).collect(),
        z: 0,
    };
    b.z = match idempotent_gen {
        Some(g) => g,
        None => b.add_gen("z", Vec::new()),
    };
    let z = b.z;
    b.inverse[z] = Some(z);

    let relators: Vec<Word> = p
        .relations
        .iter()
        .filter(|(l, r)| !is_triple(l, r))
        .map(|(l, r)| {
            let mut w = l.clone();
            w.extend(super::word::inverse(r));
            free_reduce(&w)
        })
        .collect();
    for r in &relators {
        if r.len() == 2 && r[0] == r[1] && b.inverse[r[0].gen()].is_none() {
            b.inverse[r[0].gen()] = Some(r[0].gen());
        }
    }

    let mut body: Vec<[usize; 3]> = Vec::new();
    let mut prefixes = 0usize;
    for (l, r) in &p.relations {
        if is_triple(l, r) {
            let (x, y) = (l[0].gen(), l[1].gen());
            if r[0].gen() == z && b.inverse[x].is_none() && b.inverse[y].is_none() {
                b.inverse[x] = Some(y);
                b.inverse[y] = Some(x);
            }
            body.push([x, y, r[0].gen()]);
        }
    }
    for r in &relators {
        let c: Vec<usize> = r.iter().map(|&x| b.positive(x)).collect();
        match c.len() {
            0 => {}
            1 => body.push([c[0], c[0], c[0]]),
            2 => body.push([c[0], c[1], z]),
            k => {
                let mut prefix = c[0];
                let mut prefix_word: Word = b.to_original[c[0]].clone();
                for &next in &c[1..k - 2] {
                    prefix_word.extend(b.to_original[next].clone());
                    prefixes += 1;
                    let pg = b.add_gen(&format!("p{prefixes}"), free_reduce(&prefix_word));
                    body.push([prefix, next, pg]);
                    prefix = pg;
                }
                let last = b.partner(c[k - 1]);
                body.push([prefix, c[k - 2], last]);
            }
        }
    }
    let mut subgroup: Vec<usize> = match &p.subgroup {
        Some(s) => s.clone(),
        None => Vec::new(),
    };
    for g in subgroup.clone() {
        let q = b.partner(g);
        subgroup.push(q);
    }
    if subgroup.is_empty() {
        subgroup.push(z);
    }
    subgroup.sort_unstable();
    subgroup.dedup();

    b.add([z, z, z]);
    for x in 0..b.names.len() {
        if x != z {
            b.add([z, x, x]);
            b.add([x, z, x]);
        }
    }
    for t in body {
        b.add(t);
    }
    // Inverse triples were added while building; move them after the body for readability.
    let inverse_pairs: Vec<[usize; 3]> = b
        .triples
        .iter()
        .copied()
        .filter(|t| t[2] == z && t[0] != z && t[1] != z && b.inverse[t[0]] == Some(t[1]))
        .collect();
    let mut triples: Vec<[usize; 3]> = b.triples.iter().copied().filter(|t| !inverse_pairs.contains(t)).collect();
    triples.extend(inverse_pairs);

    Ok(NormalizedPresentation {
        generators: b.names,
        triples,
        subgroup,
        inverse: b.inverse,
        identity: z,
        to_original: b.to_original,
    })
}

impl NormalizedPresentation {
    /// Builds directly from triples; checks only index ranges and names.
    pub fn from_parts(
        generators: Vec<String>,
        triples: Vec<[usize; 3]>,
        subgroup: Vec<usize>,
    ) -> Result<Self> {
        let n = generators.len();
        if triples.iter().flatten().chain(&subgroup).any(|&g| g >= n) {
            return Err(Error::Malformed("triple or subgroup uses an undeclared generator".into()));
        }
        let identity = triples
            .iter()
            .find(|t| t[0] == t[1] && t[1] == t[2])
            .map(|t| t[0])
            .unwrap_or(usize::MAX);
        let mut inverse = vec![None; n];
        if identity != usize::MAX {
            for t in &triples {
                if t[2] == identity && t[0] != identity {
                    inverse[t[0]] = Some(t[1]);
                    inverse[t[1]].get_or_insert(t[0]);
                }
            }
        }
        let np = NormalizedPresentation {
            to_original: (0..n).map(|g| vec![Letter::pos(g)]).collect(),
            generators,
            triples,
            subgroup,
            inverse,
            identity,
        };
        np.presentation().check()?;
        Ok(np)
    }

    /// The presentation `<A | a b = c>` with subgroup `B`.
    pub fn presentation(&self) -> GroupPresentation {
        let mut p = GroupPresentation::new(self.generators.clone());
        for &[a, b, c] in &self.triples {
            p.add_relation(vec![Letter::pos(a), Letter::pos(b)], vec![Letter::pos(c)]);
        }
        p.subgroup = Some(self.subgroup.clone());
        p
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let name = |g: usize| self.generators[g].clone();
        let file = NormalizedFile {
            generators: self.generators.clone(),
            triples: self.triples.iter().map(|t| t.map(name)).collect(),
            subgroup: self.subgroup.iter().map(|&g| name(g)).collect(),
            identity: (self.identity != usize::MAX).then(|| name(self.identity)),
            inverses: (0..self.generators.len())
                .filter_map(|g| self.inverse[g].filter(|&h| g <= h).map(|h| [name(g), name(h)]))
                .collect(),
        };
        serde_json::to_value(file).expect("serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: NormalizedFile = serde_json::from_str(text)?;
        let index = |s: &String| {
            file.generators
                .iter()
                .position(|g| g == s)
                .ok_or_else(|| Error::UnknownElement(s.clone()))
        };
        let triples = file
            .triples
            .iter()
            .map(|t| Ok([index(&t[0])?, index(&t[1])?, index(&t[2])?]))
            .collect::<Result<Vec<_>>>()?;
        let subgroup = file.subgroup.iter().map(index).collect::<Result<Vec<_>>>()?;
        let mut np = NormalizedPresentation::from_parts(file.generators.clone(), triples, subgroup)?;
        if let Some(id) = &file.identity {
            np.identity = index(id)?;
        }
        for [a, b] in &file.inverses {
            let (a, b) = (index(a)?, index(b)?);
            np.inverse[a] = Some(b);
            np.inverse[b] = Some(a);
        }
        Ok(np)
    }
}
