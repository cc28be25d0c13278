//! Green's relations of IG(E) on idempotents, and the action of letters on
//! the H-classes of a fixed R-class. Everything here reads only the biorder.

use std::collections::VecDeque;

use serde::Serialize;

use crate::biorder::Biorder;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IgRel {
    R,
    L,
    D,
}

/// `e R f` in IG(E): `e*f = f` and `f*e = e`.
pub fn r_related(b: &Biorder, e: usize, f: usize) -> bool {
    b.eq(e, f, f) && b.eq(f, e, e)
}

/// `e L f` in IG(E): `e*f = e` and `f*e = f`.
pub fn l_related(b: &Biorder, e: usize, f: usize) -> bool {
    b.eq(e, f, e) && b.eq(f, e, f)
}

/// Idempotents D-related to `e`, sorted, found by breadth-first search along R and L edges.
pub fn d_class(b: &Biorder, e: usize) -> Vec<usize> {
    let m = b.len();
    let mut seen = vec![false; m];
    let mut queue = VecDeque::from([e]);
    seen[e] = true;
    while let Some(x) = queue.pop_front() {
        for (y, seen_y) in seen.iter_mut().enumerate() {
            if !*seen_y && (r_related(b, x, y) || l_related(b, x, y)) {
                *seen_y = true;
                queue.push_back(y);
            }
        }
    }
    (0..m).filter(|&x| seen[x]).collect()
}

pub fn ig_green(b: &Biorder, e: usize, f: usize, rel: IgRel) -> bool {
    match rel {
        IgRel::R => r_related(b, e, f),
        IgRel::L => l_related(b, e, f),
        IgRel::D => e == f || d_class(b, e).binary_search(&f).is_ok(),
    }
}

/// Checks the eight equations `pg=p, gp=g, gh=h, hg=g, hq=h, qh=q, fg=g, gf=h`.
pub fn is_hstep_witness(b: &Biorder, p: usize, q: usize, f: usize, g: usize, h: usize) -> bool {
    b.eq(p, g, p)
        && b.eq(g, p, g)
        && b.eq(g, h, h)
        && b.eq(h, g, g)
        && b.eq(h, q, h)
        && b.eq(q, h, q)
        && b.eq(f, g, g)
        && b.eq(g, f, h)
}

/// The lexicographically least `(g, h)` satisfying [`is_hstep_witness`].
///
/// `h` is forced to be `g*f`, so scanning `g` in index order is exhaustive.
pub fn hstep(b: &Biorder, p: usize, q: usize, f: usize) -> Option<(usize, usize)> {
    (0..b.len()).find_map(|g| {
        let h = b.product(g, f)?;
        is_hstep_witness(b, p, q, f, g, h).then_some((g, h))
    })
}

/// The action of `E` on the L-classes (equivalently H-classes) of the R-class of `base`.
///
/// States are `0..cols.len()`; state 0 is the L-class of `base` and the
/// remaining classes are ordered by smallest member. The sink is `None`.
#[derive(Debug, Clone, Serialize)]
pub struct ActionAutomaton {
    pub base: usize,
    pub m: usize,
    /// Idempotents D-related to `base`, sorted.
    pub d_idems: Vec<usize>,
    /// Representative (smallest member) of each L-class, by state.
    pub cols: Vec<usize>,
    /// Representative of each R-class of the D-class; row 0 holds `base`.
    pub rows: Vec<usize>,
    /// `(idempotent, row, col)` for every idempotent of the D-class.
    pub coords: Vec<(usize, usize, usize)>,
    trans: Vec<Option<u32>>,
}

/// Splits `members` into classes under `rel`, ordering the class of `first`
/// first and the rest by smallest member. Returns (representatives, class of each member).
fn classes(
    members: &[usize],
    first: usize,
    mut rel: impl FnMut(usize, usize) -> bool,
) -> (Vec<usize>, Vec<usize>) {
    let mut reps: Vec<usize> = Vec::new();
    let mut of = vec![0; members.len()];
    for (k, &x) in members.iter().enumerate() {
        match reps.iter().position(|&r| r == x || rel(r, x)) {
            Some(c) => of[k] = c,
            None => {
                of[k] = reps.len();
                reps.push(x);
            }
        }
    }
    let start = of[members.iter().position(|&x| x == first).expect("first is a member")];
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&c| (c != start, reps[c]));
    let mut rank = vec![0; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    (
        order.iter().map(|&c| reps[c]).collect(),
        of.iter().map(|&c| rank[c]).collect(),
    )
}

impl ActionAutomaton {
    pub fn new(b: &Biorder, base: usize) -> Result<Self> {
        if base >= b.len() {
            return Err(Error::IndexOutOfRange {
                index: base,
                size: b.len(),
            });
        }
        let m = b.len();
        let d_idems = d_class(b, base);
        let (cols, col_of) = classes(&d_idems, base, |x, y| l_related(b, x, y));
        let (rows, row_of) = classes(&d_idems, base, |x, y| r_related(b, x, y));
        let coords: Vec<(usize, usize, usize)> = d_idems
            .iter()
            .enumerate()
            .map(|(k, &x)| (x, row_of[k], col_of[k]))
            .collect();
        let mut col_of_idem = vec![None; m];
        for &(x, _, c) in &coords {
            col_of_idem[x] = Some(c);
        }
        let mut l_members = vec![Vec::new(); cols.len()];
        for &(x, _, c) in &coords {
            l_members[c].push(x);
        }

        let mut trans = vec![None; cols.len() * m];
        for (j, &p) in cols.iter().enumerate() {
            for f in 0..m {
                // A witness g lies in L_p; its h = g*f determines the target class.
                let mut target: Option<usize> = None;
                for &g in &l_members[j] {
                    let Some(h) = b.product(g, f) else { continue };
                    if !(b.eq(f, g, g) && b.eq(g, h, h) && b.eq(h, g, g)) {
                        continue;
                    }
                    let Some(c) = col_of_idem[h] else { continue };
                    if !is_hstep_witness(b, p, cols[c], f, g, h) {
                        continue;
                    }
                    match target {
                        Some(t) if t != c => {
                            return Err(Error::Internal(format!(
                                "letter {} sends L-class {} to two classes ({} and {})",
                                b.name(f),
                                b.name(p),
                                b.name(cols[t]),
                                b.name(cols[c])
                            )))
                        }
                        _ => target = Some(c),
                    }
                }
                trans[j * m + f] = target.map(|c| c as u32);
            }
        }
        Ok(ActionAutomaton {
            base,
            m,
            d_idems,
            cols,
            rows,
            coords,
            trans,
        })
    }

    pub fn states(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn step(&self, j: usize, f: usize) -> Option<usize> {
        self.trans[j * self.m + f].map(|t| t as usize)
    }

    /// Left-to-right fold of the transition function; `None` is absorbing.
    pub fn run(&self, j: usize, w: &[usize]) -> Result<Option<usize>> {
        if j >= self.states() {
            return Err(Error::IndexOutOfRange {
                index: j,
                size: self.states(),
            });
        }
        let mut state = Some(j);
        for &f in w {
            if f >= self.m {
                return Err(Error::IndexOutOfRange {
                    index: f,
                    size: self.m,
                });
            }
            state = state.and_then(|s| self.step(s, f));
        }
        Ok(state)
    }

    /// The states visited while reading `w` from `j`, starting with `j`.
    pub fn trajectory(&self, j: usize, w: &[usize]) -> Vec<Option<usize>> {
        let mut out = vec![Some(j)];
        let mut state = Some(j);
        for &f in w {
            state = state.and_then(|s| self.step(s, f));
            out.push(state);
        }
        out
    }

    /// Column (L-class index) of an idempotent of the D-class.
    pub fn col_of(&self, x: usize) -> Option<usize> {
        self.coords.iter().find(|c| c.0 == x).map(|c| c.2)
    }

    /// Row (R-class index) of an idempotent of the D-class.
    pub fn row_of(&self, x: usize) -> Option<usize> {
        self.coords.iter().find(|c| c.0 == x).map(|c| c.1)
    }

    pub fn in_d(&self, x: usize) -> bool {
        self.d_idems.binary_search(&x).is_ok()
    }

    /// Table of transitions for serialization: `table[j][f]`.
    pub fn transition_table(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.states())
            .map(|j| (0..self.m).map(|f| self.step(j, f)).collect())
            .collect()
    }
}

pub fn action_automaton(b: &Biorder, e: usize) -> Result<ActionAutomaton> {
    ActionAutomaton::new(b, e)
}
