//! Bounded Todd-Coxeter coset enumeration (HLT strategy with the usual
//! coincidence procedure) and Cayley tables of finite groups.

use std::collections::VecDeque;

use serde::Serialize;

use super::presentation::GroupPresentation;
use super::snf::abelian_invariants;
use super::tietze::eliminate;
use super::word::{Letter, Word};

const NONE: u32 = u32::MAX;

/// A complete coset table, compacted to cosets `0..len`; coset 0 is the subgroup.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub ngens: usize,
    pub len: usize,
    /// `table[c * 2 * ngens + letter.col()]`.
    pub table: Vec<u32>,
}

impl CosetTable {
    #[inline]
    pub fn act(&self, c: usize, x: Letter) -> usize {
        self.table[c * 2 * self.ngens + x.col()] as usize
    }

    pub fn act_word(&self, c: usize, w: &[Letter]) -> usize {
        w.iter().fold(c, |c, &x| self.act(c, x))
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    limit: usize,
    queue: Vec<u32>,
}

struct Overflowed;

impl Enumerator {
    fn new(ngens: usize, limit: usize) -> Self {
        let cols = 2 * ngens;
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            limit,
            queue: Vec::new(),
        }
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, v: u32) {
        self.table[c * self.cols + col] = v;
    }

    fn define(&mut self, c: usize, x: Letter) -> Result<(), Overflowed> {
        if self.count() >= self.limit {
            return Err(Overflowed);
        }
        let d = self.count();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x.col(), d as u32);
        self.set(d, x.inverse().col(), c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != root {
            let next = self.parent[x] as usize;
            self.parent[x] = root as u32;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = (a.min(b), a.max(b));
        self.parent[kill] = keep as u32;
        self.queue.push(kill as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i] as usize;
            i += 1;
            for col in 0..self.cols {
                let f = self.get(e, col);
                if f == NONE {
                    continue;
                }
                let inv = col ^ 1;
                self.set(f as usize, inv, NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f as usize);
                let e1x = self.get(e1, col);
                if e1x != NONE {
                    self.merge(f1, e1x as usize);
                } else {
                    let f1x = self.get(f1, inv);
                    if f1x != NONE {
                        self.merge(e1, f1x as usize);
                    } else {
                        self.set(e1, col, f1 as u32);
                        self.set(f1, inv, e1 as u32);
                    }
                }
            }
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> Result<(), Overflowed> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i].col()) != NONE {
                f = self.get(f, w[i].col()) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize].inverse().col()) != NONE {
                b = self.get(b, w[j as usize].inverse().col()) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i].col(), b as u32);
                self.set(b, w[i].inverse().col(), f as u32);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn run(&mut self, relators: &[Word], subgroup: &[Word]) -> Result<(), Overflowed> {
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let mut c = 0;
        while c < self.count() {
            if self.is_live(c) {
                for r in relators {
                    self.scan_and_fill(c, r)?;
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for col in 0..self.cols {
                        if self.get(c, col) == NONE {
                            let x = Letter {
                                gen: (col / 2) as u32,
                                inv: col % 2 == 1,
                            };
                            self.define(c, x)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn compact(mut self, ngens: usize) -> CosetTable {
        let live: Vec<usize> = (0..self.count()).filter(|&c| self.is_live(c)).collect();
        let mut index = vec![NONE; self.count()];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k as u32;
        }
        let mut table = Vec::with_capacity(live.len() * self.cols);
        for &c in &live {
            for col in 0..self.cols {
                let t = self.get(c, col) as usize;
                let t = self.rep(t);
                table.push(index[t]);
            }
        }
        CosetTable {
            ngens,
            len: live.len(),
            table,
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in
/// `<ngens | relators>`, giving up once `limit` cosets have been defined.
pub fn coset_enumerate(
    ngens: usize,
    relators: &[Word],
    subgroup: &[Word],
    limit: usize,
) -> Option<CosetTable> {
    // Keep the table under roughly 160 MB.
    let memory_cap = 40_000_000 / (2 * ngens).max(1);
    let mut e = Enumerator::new(ngens, limit.min(memory_cap).max(1));
    e.run(relators, subgroup).ok()?;
    Some(e.compact(ngens))
}

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Debug, Clone, Serialize)]
pub struct CayleyTable {
    pub order: usize,
    pub mul: Vec<u32>,
    pub inverse: Vec<u32>,
    /// Image of each generator of the enumerated presentation.
    pub gen_images: Vec<u32>,
}

impl CayleyTable {
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn letter(&self, x: Letter) -> usize {
        let g = self.gen_images[x.gen()] as usize;
        if x.inv {
            self.inverse[g] as usize
        } else {
            g
        }
    }

    pub fn eval(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |acc, &x| self.mul(acc, self.letter(x)))
    }

    /// Elements of the subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inverse[g] as usize)] {
                    if !inside[y] {
                        inside[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        inside
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Enumeration {
    Finite(CayleyTable),
    Overflow { reason: String },
}

impl Enumeration {
    pub fn order(&self) -> Option<usize> {
        match self {
            Enumeration::Finite(t) => Some(t.order),
            Enumeration::Overflow { .. } => None,
        }
    }

    pub fn table(&self) -> Option<&CayleyTable> {
        match self {
            Enumeration::Finite(t) => Some(t),
            Enumeration::Overflow { .. } => None,
        }
    }
}

/// Working limit on defined cosets for a given order cap.
pub fn coset_limit(cap: usize) -> usize {
    (cap.saturating_mul(256)).clamp(20_000, 2_000_000)
}

/// Finds the group defined by `p` if its order is at most `cap`.
///
/// Generators are first eliminated where possible; a free or infinite-abelianization
/// remainder is reported as overflow without enumerating.
pub fn enumerate_finite(p: &GroupPresentation, cap: usize) -> Enumeration {
    let red = eliminate(p.ngens(), p.relators(), None);
    let k = red.kept.len();
    let mut local = vec![usize::MAX; p.ngens()];
    for (i, &g) in red.kept.iter().enumerate() {
        local[g] = i;
    }
    let relocate = |w: &[Letter]| -> Word {
        w.iter()
            .map(|x| Letter {
                gen: local[x.gen()] as u32,
                inv: x.inv,
            })
            .collect()
    };
    let relators: Vec<Word> = red.relators.iter().map(|r| relocate(r)).collect();
    if k > 0 && relators.is_empty() {
        return Enumeration::Overflow {
            reason: format!("free group of rank {k}"),
        };
    }
    let inv = abelian_invariants(k, &relators);
    if inv.free_rank > 0 {
        return Enumeration::Overflow {
            reason: format!("abelianization has free rank {}", inv.free_rank),
        };
    }
    let Some(ct) = coset_enumerate(k, &relators, &[], coset_limit(cap)) else {
        return Enumeration::Overflow {
            reason: format!("coset enumeration exceeded {} cosets", coset_limit(cap)),
        };
    };
    if ct.len > cap {
        return Enumeration::Overflow {
            reason: format!("group order {} exceeds cap {cap}", ct.len),
        };
    }
    let table = cayley_from_cosets(&ct);
    let gen_images = red
        .images
        .iter()
        .map(|img| {
            let w = relocate(img);
            table_eval(&ct, &w) as u32
        })
        .collect();
    Enumeration::Finite(CayleyTable {
        gen_images,
        ..table
    })
}

fn table_eval(ct: &CosetTable, w: &[Letter]) -> usize {
    ct.act_word(0, w)
}

/// For the trivial subgroup, cosets are group elements and right
/// multiplication by a word is the table action.
fn cayley_from_cosets(ct: &CosetTable) -> CayleyTable {
    let n = ct.len;
    // A word reaching each coset from 0, by breadth-first search.
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for col in 0..2 * ct.ngens {
            let x = Letter {
                gen: (col / 2) as u32,
                inv: col % 2 == 1,
            };
            let d = ct.act(c, x);
            if words[d].is_none() {
                let mut w = words[c].clone().expect("visited");
                w.push(x);
                words[d] = Some(w);
                queue.push_back(d);
            }
        }
    }
    let words: Vec<Word> = words.into_iter().map(|w| w.expect("table is connected")).collect();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ct.act_word(a, &words[b]) as u32;
        }
    }
    let mut inverse = vec![0u32; n];
    for a in 0..n {
        inverse[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("group") as u32;
    }
    CayleyTable {
        order: n,
        mul,
        inverse,
        gen_images: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> GroupPresentation {
        GroupPresentation::from_json(text).unwrap()
    }

    #[test]
    fn cyclic_and_dihedral_orders() {
        let z5 = pres(r#"{"generators":["a"],"relations":[[["a","a","a","a","a"],[]]]}"#);
        assert_eq!(enumerate_finite(&z5, 10).order(), Some(5));
        let s3 = pres(
            r#"{"generators":["a","b"],"relations":[[["a","a"],[]],[["b","b","b"],[]],[["a","b","a","b"],[]]]}"#,
        );
        assert_eq!(enumerate_finite(&s3, 10).order(), Some(6));
        assert_eq!(enumerate_finite(&s3, 5).order(), None);
    }

    #[test]
    fn trivial_and_infinite() {
        let trivial = pres(r#"{"generators":[],"relations":[]}"#);
        assert_eq!(enumerate_finite(&trivial, 1).order(), Some(1));
        let z = pres(r#"{"generators":["a"],"relations":[]}"#);
        assert!(matches!(enumerate_finite(&z, 50), Enumeration::Overflow { .. }));
    }

    #[test]
    fn quaternion_needs_coincidences() {
        let q8 = pres(
            r#"{"generators":["a","b"],"relations":[[["a","a","a","a"],[]],[["a","a"],["b","b"]],[["b","a","b^-1"],["a^-1"]]]}"#,
        );
        let e = enumerate_finite(&q8, 100);
        let t = e.table().unwrap();
        assert_eq!(t.order, 8);
        for (l, r) in &q8.relations {
            assert_eq!(t.eval(l), t.eval(r));
        }
    }

    #[test]
    fn subgroup_index() {
        // S3 over <a>: index 3.
        let ct = coset_enumerate(
            2,
            &[
                vec![Letter::pos(0), Letter::pos(0)],
                vec![Letter::pos(1); 3],
                vec![Letter::pos(0), Letter::pos(1), Letter::pos(0), Letter::pos(1)],
            ],
            &[vec![Letter::pos(0)]],
            1000,
        )
        .unwrap();
        assert_eq!(ct.len, 3);
    }
}
