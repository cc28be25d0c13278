//! Generator elimination by Tietze transformations.

use std::collections::HashSet;

use super::word::{cyclic_reduce, free_reduce, inverse, substitute, Letter, Word};

/// Result of eliminating generators: every original generator is expressed
/// as a word in the kept ones, and the remaining relators mention only kept
/// generators.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub ngens: usize,
    pub kept: Vec<usize>,
    pub images: Vec<Word>,
    pub relators: Vec<Word>,
}

impl Reduction {
    /// Rewrites a word over the original generators into the kept ones, freely reduced.
    pub fn rewrite(&self, w: &[Letter]) -> Word {
        free_reduce(&substitute(w, |g| self.images[g].clone()))
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }
}

fn occurrences(w: &[Letter], g: usize) -> usize {
    w.iter().filter(|x| x.gen() == g).count()
}

fn total_len(rels: &[Word]) -> usize {
    rels.iter().map(Vec::len).sum()
}

/// Repeatedly removes a generator that occurs exactly once in some relator,
/// preferring the shortest such relator. Eliminations that would grow the
/// relators past twice their original total length (plus slack) are skipped.
/// With `max_relator_len`, only relators up to that length are used.
pub fn eliminate(ngens: usize, relators: Vec<Word>, max_relator_len: Option<usize>) -> Reduction {
    let mut rels: Vec<Word> = Vec::new();
    let mut seen = HashSet::new();
    for r in relators {
        let r = cyclic_reduce(&r);
        if !r.is_empty() && seen.insert(r.clone()) {
            rels.push(r);
        }
    }
    let budget = 2 * total_len(&rels) + 1000;
    let mut images: Vec<Word> = (0..ngens).map(|g| vec![Letter::pos(g)]).collect();
    let mut alive = vec![true; ngens];

    loop {
        let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
        for (ri, r) in rels.iter().enumerate() {
            if max_relator_len.is_some_and(|m| r.len() > m) {
                continue;
            }
            let mut counts = std::collections::BTreeMap::new();
            for x in r {
                *counts.entry(x.gen()).or_insert(0usize) += 1;
            }
            for (g, c) in counts {
                if c == 1 {
                    candidates.push((r.len(), g, ri));
                }
            }
        }
        candidates.sort_unstable();
        let current = total_len(&rels);
        let mut chosen = None;
        for &(len, g, ri) in &candidates {
            let elsewhere: usize = rels
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != ri)
                .map(|(_, w)| occurrences(w, g))
                .sum();
            if current + elsewhere * len.saturating_sub(2) <= budget {
                chosen = Some((g, ri));
                break;
            }
        }
        let Some((g, ri)) = chosen else { break };

        // Rotate r so that g^e is first: g^e s = 1, hence g = s^-1 (e = +1) or g = s.
        let r = rels.swap_remove(ri);
        let pos = r.iter().position(|x| x.gen() == g).expect("occurs once");
        let rotated: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
        let s = &rotated[1..];
        let value = if rotated[0].inv { s.to_vec() } else { inverse(s) };
        let image = |h: usize| {
            if h == g {
                value.clone()
            } else {
                vec![Letter::pos(h)]
            }
        };
        let mut next = Vec::with_capacity(rels.len());
        let mut seen = HashSet::new();
        for w in rels.drain(..) {
            let w = if occurrences(&w, g) > 0 {
                cyclic_reduce(&substitute(&w, image))
            } else {
                w
            };
            if !w.is_empty() && seen.insert(w.clone()) {
                next.push(w);
            }
        }
        rels = next;
        for img in images.iter_mut() {
            if occurrences(img, g) > 0 {
                *img = free_reduce(&substitute(img, image));
            }
        }
        alive[g] = false;
    }
    Reduction {
        ngens,
        kept: (0..ngens).filter(|&g| alive[g]).collect(),
        images,
        relators: rels,
    }
}
