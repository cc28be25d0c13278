//! Schreier systems for the R-class of an idempotent, the φ rewriting, and
//! the two presentations of its maximal subgroup.
//!
//! Indices are 0-based here: state 0 is the L-class of the base, row 0 its
//! R-class. Generator names shown to users are 1-based.

use std::collections::VecDeque;

use serde::Serialize;

use crate::action::{hstep, ActionAutomaton};
use crate::biorder::Biorder;
use crate::error::{Error, Result};
use crate::group::{GroupPresentation, Letter, Word};

#[derive(Debug, Clone, Serialize)]
pub struct SchreierSystem {
    pub base: usize,
    pub automaton: ActionAutomaton,
    /// `r[j]` carries state 0 to state `j`.
    pub r: Vec<Vec<usize>>,
    /// `r_prime[j]` carries state `j` back to state 0.
    pub r_prime: Vec<Vec<usize>>,
    /// `e_idem[i][j]`: the idempotent in row `i`, column `j`, if any.
    pub e_idem: Vec<Vec<Option<usize>>>,
    /// Smallest column `j` with `(i, j)` in K.
    pub j_of_i: Vec<usize>,
    /// Bracket generators `[j, f]` in order of index.
    pub brackets: Vec<(usize, usize)>,
    bracket_of: Vec<Option<u32>>,
}

impl SchreierSystem {
    pub fn new(b: &Biorder, e: usize) -> Result<Self> {
        let a = ActionAutomaton::new(b, e)?;
        let m = b.len();
        let n = a.states();
        let mut r: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut r_prime: Vec<Option<Vec<usize>>> = vec![None; n];
        r[0] = Some(Vec::new());
        r_prime[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(j) = queue.pop_front() {
            for f in 0..m {
                let Some(t) = a.step(j, f) else { continue };
                if r[t].is_some() {
                    continue;
                }
                let (g, h) = hstep(b, a.cols[j], a.cols[t], f).ok_or_else(|| {
                    Error::Internal(format!("no witness for transition {j} -> {t} under {}", b.name(f)))
                })?;
                let mut rt = r[j].clone().expect("visited");
                rt.push(h);
                let mut rpt = vec![g];
                rpt.extend(r_prime[j].as_ref().expect("visited"));
                r[t] = Some(rt);
                r_prime[t] = Some(rpt);
                queue.push_back(t);
            }
        }
        let r: Vec<Vec<usize>> = r
            .into_iter()
            .enumerate()
            .map(|(j, w)| w.ok_or_else(|| Error::Internal(format!("L-class {j} is not reachable from the base"))))
            .collect::<Result<_>>()?;
        let r_prime: Vec<Vec<usize>> = r_prime.into_iter().map(|w| w.expect("set with r")).collect();

        let mut e_idem = vec![vec![None; n]; a.rows.len()];
        for &(x, i, j) in &a.coords {
            e_idem[i][j] = Some(x);
        }
        let j_of_i = e_idem
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .position(Option::is_some)
                    .ok_or_else(|| Error::NotCompletelySimple(format!("row {} has no idempotent", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        for j in 0..n {
            if e_idem.iter().all(|row| row[j].is_none()) {
                return Err(Error::NotCompletelySimple(format!("column {} has no idempotent", j + 1)));
            }
        }

        let mut brackets = Vec::new();
        let mut bracket_of = vec![None; n * m];
        for j in 0..n {
            for f in 0..m {
                if a.step(j, f).is_some() {
                    bracket_of[j * m + f] = Some(brackets.len() as u32);
                    brackets.push((j, f));
                }
            }
        }
        Ok(SchreierSystem {
            base: e,
            automaton: a,
            r,
            r_prime,
            e_idem,
            j_of_i,
            brackets,
            bracket_of,
        })
    }

    pub fn rows(&self) -> usize {
        self.e_idem.len()
    }

    pub fn cols(&self) -> usize {
        self.r.len()
    }

    pub fn in_k(&self, i: usize, j: usize) -> bool {
        self.e_idem[i][j].is_some()
    }

    /// `(i, j)` in K, row-major.
    pub fn k_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.rows())
            .flat_map(|i| (0..self.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.in_k(i, j))
            .collect()
    }

    pub fn idem(&self, i: usize, j: usize) -> Result<usize> {
        self.e_idem
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .flatten()
            .ok_or_else(|| Error::Domain(format!("({}, {}) is not in K", i + 1, j + 1)))
    }

    pub fn bracket(&self, j: usize, f: usize) -> Option<usize> {
        self.bracket_of[j * self.automaton.m + f].map(|g| g as usize)
    }

    pub fn bracket_name(&self, b: &Biorder, k: usize) -> String {
        let (j, f) = self.brackets[k];
        format!("[{},{}]", j + 1, b.name(f))
    }

    /// `[j, e1][j e1, e2]...`: a word over the bracket generators.
    pub fn phi(&self, j: usize, w: &[usize]) -> Result<Word> {
        let mut state = j;
        let mut out = Vec::with_capacity(w.len());
        for &f in w {
            if f >= self.automaton.m {
                return Err(Error::IndexOutOfRange { index: f, size: self.automaton.m });
            }
            let g = self.bracket(state, f).ok_or_else(|| {
                Error::Domain(format!("letter {f} sends state {} to the sink", state + 1))
            })?;
            out.push(Letter::pos(g));
            state = self.automaton.step(state, f).expect("bracket exists");
        }
        Ok(out)
    }

    /// Re-checks the defining identities of the system.
    pub fn check(&self) -> Result<()> {
        let a = &self.automaton;
        for j in 0..self.cols() {
            if a.run(0, &self.r[j])? != Some(j) {
                return Err(Error::Internal(format!("r_{} does not reach its class", j + 1)));
            }
            if a.run(j, &self.r_prime[j])? != Some(0) {
                return Err(Error::Internal(format!("r'_{} does not return to the base class", j + 1)));
            }
            for k in 0..self.r[j].len() {
                if !self.r.iter().any(|w| w[..] == self.r[j][..k]) {
                    return Err(Error::Internal(format!("a prefix of r_{} is not in the system", j + 1)));
                }
            }
        }
        Ok(())
    }
}

pub fn schreier_system(b: &Biorder, e: usize) -> Result<SchreierSystem> {
    SchreierSystem::new(b, e)
}

/// The presentation over bracket generators `[j, f]` (defined transitions).
pub fn presentation_b_for(b: &Biorder, s: &SchreierSystem) -> Result<GroupPresentation> {
    let a = &s.automaton;
    let e = s.base;
    let mut p = GroupPresentation::new((0..s.brackets.len()).map(|k| s.bracket_name(b, k)).collect());
    let mut seen = std::collections::HashSet::new();
    let mut push = |p: &mut GroupPresentation, l: Word, r: Word| {
        if l != r && seen.insert((l.clone(), r.clone())) {
            p.add_relation(l, r);
        }
    };
    for j in 0..s.cols() {
        for (x, y, g) in b.basic_pairs() {
            if a.run(j, &[x, y])?.is_none() {
                continue;
            }
            let lhs = s.phi(j, &[x, y])?;
            let rhs = s.phi(j, &[g]).map_err(|_| {
                Error::Internal(format!(
                    "{}{} is defined on state {} but {} is not",
                    b.name(x),
                    b.name(y),
                    j + 1,
                    b.name(g)
                ))
            })?;
            push(&mut p, lhs, rhs);
        }
    }
    for (k, &(j, f)) in s.brackets.iter().enumerate() {
        let t = a.step(j, f).expect("bracket is defined");
        let mut w = vec![e];
        w.extend(&s.r[j]);
        w.push(f);
        w.extend(&s.r_prime[t]);
        let lhs = s.phi(0, &w).map_err(|_| Error::Internal(format!("e r_j a r'_ja leaves the class for bracket {k}")))?;
        push(&mut p, lhs, vec![Letter::pos(k)]);
    }
    push(&mut p, s.phi(0, &[e])?, Vec::new());
    Ok(p)
}

#[allow(non_snake_case)]
pub fn presentation_B(b: &Biorder, e: usize) -> Result<GroupPresentation> {
    presentation_b_for(b, &SchreierSystem::new(b, e)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SquareKind {
    LeftRight,
    UpDown,
}

/// A square `(i, k; j, l)` with its singularizing idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SingularSquare {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub l: usize,
    pub f: usize,
    pub kind: SquareKind,
}

fn singularizer(b: &Biorder, eij: usize, eil: usize, ekj: usize, ekl: usize) -> Option<(usize, SquareKind)> {
    (0..b.len())
        .find(|&f| b.eq(f, eij, eij) && b.eq(f, ekj, ekj) && b.eq(eij, f, eil) && b.eq(ekj, f, ekl))
        .map(|f| (f, SquareKind::LeftRight))
        .or_else(|| {
            (0..b.len())
                .find(|&f| b.eq(eij, f, eij) && b.eq(eil, f, eil) && b.eq(f, eij, ekj) && b.eq(f, eil, ekl))
                .map(|f| (f, SquareKind::UpDown))
        })
}

/// All singular squares with `i != k`, `j != l`, in lexicographic order of `(i, k, j, l)`.
pub fn singular_squares(b: &Biorder, s: &SchreierSystem) -> Vec<SingularSquare> {
    let mut out = Vec::new();
    for i in 0..s.rows() {
        for k in (0..s.rows()).filter(|&k| k != i) {
            for j in 0..s.cols() {
                for l in (0..s.cols()).filter(|&l| l != j) {
                    let (Some(eij), Some(eil), Some(ekj), Some(ekl)) =
                        (s.e_idem[i][j], s.e_idem[i][l], s.e_idem[k][j], s.e_idem[k][l])
                    else {
                        continue;
                    };
                    if let Some((f, kind)) = singularizer(b, eij, eil, ekj, ekl) {
                        out.push(SingularSquare { i, k, j, l, f, kind });
                    }
                }
            }
        }
    }
    out
}

/// The presentation over generators `f_ij`, `(i, j)` in K.
#[derive(Debug, Clone, Serialize)]
pub struct FPresentation {
    #[serde(skip)]
    pub presentation: GroupPresentation,
    /// Generator index of `f_ij`.
    pub gen: Vec<Vec<Option<usize>>>,
    pub squares: Vec<SingularSquare>,
    /// Number of relations of each of the three kinds, in order.
    pub counts: [usize; 3],
}

impl FPresentation {
    pub fn f(&self, i: usize, j: usize) -> Result<usize> {
        self.gen
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .flatten()
            .ok_or_else(|| Error::Domain(format!("no generator f for ({}, {})", i + 1, j + 1)))
    }

    /// `(i, j)` of a generator.
    pub fn coords(&self, g: usize) -> (usize, usize) {
        for (i, row) in self.gen.iter().enumerate() {
            if let Some(j) = row.iter().position(|&x| x == Some(g)) {
                return (i, j);
            }
        }
        panic!("generator {g} out of range")
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

pub fn presentation_f_labeled(
    b: &Biorder,
    s: &SchreierSystem,
    row_labels: &[String],
    col_labels: &[String],
) -> Result<FPresentation> {
    if row_labels.len() != s.rows() || col_labels.len() != s.cols() {
        return Err(Error::Precondition("label count does not match the D-class shape".into()));
    }
    let mut names = Vec::new();
    let mut gen = vec![vec![None; s.cols()]; s.rows()];
    for (i, j) in s.k_pairs() {
        gen[i][j] = Some(names.len());
        names.push(format!("f{}_{}", row_labels[i], col_labels[j]));
    }
    let mut p = GroupPresentation::new(names);
    let f = |i: usize, j: usize| Letter::pos(gen[i][j].expect("in K"));
    let mut counts = [0; 3];
    for i in 0..s.rows() {
        for j in (0..s.cols()).filter(|&j| s.in_k(i, j)) {
            for l in (0..s.cols()).filter(|&l| l != j && s.in_k(i, l)) {
                let eil = s.e_idem[i][l].expect("in K");
                if s.r[j].len() + 1 == s.r[l].len() && s.r[l][..s.r[j].len()] == s.r[j][..] && s.r[l][s.r[j].len()] == eil {
                    p.add_relation(vec![f(i, j)], vec![f(i, l)]);
                    counts[0] += 1;
                }
            }
        }
    }
    for i in 0..s.rows() {
        p.add_relation(vec![f(i, s.j_of_i[i])], Vec::new());
        counts[1] += 1;
    }
    let squares = singular_squares(b, s);
    for sq in &squares {
        p.add_relation(
            vec![f(sq.i, sq.j).inverse(), f(sq.i, sq.l)],
            vec![f(sq.k, sq.j).inverse(), f(sq.k, sq.l)],
        );
        counts[2] += 1;
    }
    Ok(FPresentation {
        presentation: p,
        gen,
        squares,
        counts,
    })
}

pub fn presentation_f_for(b: &Biorder, s: &SchreierSystem) -> Result<FPresentation> {
    presentation_f_labeled(b, s, &default_labels(s.rows()), &default_labels(s.cols()))
}

#[allow(non_snake_case)]
pub fn presentation_F(b: &Biorder, e: usize) -> Result<GroupPresentation> {
    Ok(presentation_f_for(b, &SchreierSystem::new(b, e)?)?.presentation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biorder::extract_biorder;
    use crate::corpus;
    use crate::group::{abelian_invariants, enumerate_finite};

    fn rb22() -> Biorder {
        extract_biorder(&corpus::rectangular_band(2, 2)).unwrap()
    }

    #[test]
    fn rectangular_band_system() {
        let b = rb22();
        let e11 = b.index_of("e11").unwrap();
        let s = schreier_system(&b, e11).unwrap();
        s.check().unwrap();
        assert_eq!(b.format_word(&s.r[1]), "e12");
        assert_eq!(b.format_word(&s.r_prime[1]), "e11");
        assert!(s.r[0].is_empty() && s.r_prime[0].is_empty());
    }

    #[test]
    fn phi_examples() {
        let b = rb22();
        let s = schreier_system(&b, 0).unwrap();
        let e12 = b.index_of("e12").unwrap();
        let e21 = b.index_of("e21").unwrap();
        let w = s.phi(0, &[e12, e21]).unwrap();
        let p = presentation_b_for(&b, &s).unwrap();
        assert_eq!(p.format_word(&w), "[1,e12],[2,e21]");
        assert!(s.phi(0, &[]).unwrap().is_empty());
    }

    #[test]
    fn rectangular_band_f_presentation() {
        let b = rb22();
        let s = schreier_system(&b, 0).unwrap();
        let fp = presentation_f_for(&b, &s).unwrap();
        assert_eq!(fp.presentation.ngens(), 4);
        assert!(fp.squares.is_empty());
        let inv = abelian_invariants(4, &fp.presentation.relators());
        assert_eq!(inv.free_rank, 1);
        let pb = presentation_B(&b, 0).unwrap();
        assert_eq!(abelian_invariants(pb.ngens(), &pb.relators()).free_rank, 1);
    }

    #[test]
    fn semilattice_is_trivial() {
        let b = extract_biorder(&corpus::semilattice_chain(2)).unwrap();
        for e in 0..2 {
            let pb = presentation_B(&b, e).unwrap();
            assert_eq!(enumerate_finite(&pb, 4).order(), Some(1));
            let pf = presentation_F(&b, e).unwrap();
            assert_eq!(enumerate_finite(&pf, 4).order(), Some(1));
        }
    }
}
