//! Deciding whether a word over `E` represents a regular element of IG(E).
//!
//! A word `w` is regular iff it factors as `w = u e v` with `e` a letter,
//! `e v R e` and `u e L e`. The first condition is read off the action
//! automaton of `e`; the second off the automaton of `e` over the dual biorder
//! with `u` reversed.

use std::sync::OnceLock;

use serde::Serialize;

use crate::action::{hstep, l_related, r_related, ActionAutomaton};
use crate::biorder::Biorder;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    /// Position of the pivot letter.
    pub k: usize,
    pub e: usize,
    /// Idempotent R-related to the word.
    pub r_witness: usize,
    /// Idempotent L-related to the word.
    pub l_witness: usize,
    /// States of the right automaton of `e` while reading `w[k+1..]`.
    pub right_trajectory: Vec<usize>,
    /// States of the dual automaton of `e` while reading `w[..k]` backwards.
    pub left_trajectory: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Regularity {
    Regular(RegularityCertificate),
    NotRegular,
}

impl Regularity {
    pub fn certificate(&self) -> Option<&RegularityCertificate> {
        match self {
            Regularity::Regular(c) => Some(c),
            Regularity::NotRegular => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular(_))
    }
}

/// A biorder with lazily built, memoized automata for every base letter on
/// both sides. Safe to share between threads.
#[derive(Debug)]
pub struct RegularityChecker {
    b: Biorder,
    dual: Biorder,
    right: Vec<OnceLock<std::result::Result<ActionAutomaton, Error>>>,
    left: Vec<OnceLock<std::result::Result<ActionAutomaton, Error>>>,
}

impl RegularityChecker {
    pub fn new(b: Biorder) -> Self {
        let m = b.len();
        RegularityChecker {
            dual: b.dual(),
            b,
            right: (0..m).map(|_| OnceLock::new()).collect(),
            left: (0..m).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn biorder(&self) -> &Biorder {
        &self.b
    }

    pub fn dual(&self) -> &Biorder {
        &self.dual
    }

    /// Automaton of `e` acting on the H-classes of its R-class.
    pub fn right(&self, e: usize) -> Result<&ActionAutomaton> {
        self.right[e]
            .get_or_init(|| ActionAutomaton::new(&self.b, e))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Automaton of `e` over the dual biorder (action on its L-class from the left).
    pub fn left(&self, e: usize) -> Result<&ActionAutomaton> {
        self.left[e]
            .get_or_init(|| ActionAutomaton::new(&self.dual, e))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_regular(&self, w: &[usize]) -> Result<Regularity> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.b.check_word(w)?;
        for (k, &e) in w.iter().enumerate() {
            let right = self.right(e)?;
            let v = &w[k + 1..];
            let Some(jv) = right.run(0, v)? else { continue };
            let left = self.left(e)?;
            let u_rev: Vec<usize> = w[..k].iter().rev().copied().collect();
            let Some(iu) = left.run(0, &u_rev)? else { continue };
            let right_trajectory = right.trajectory(0, v).into_iter().flatten().collect();
            let left_trajectory = left.trajectory(0, &u_rev).into_iter().flatten().collect();
            return Ok(Regularity::Regular(RegularityCertificate {
                k,
                e,
                r_witness: left.cols[iu],
                l_witness: right.cols[jv],
                right_trajectory,
                left_trajectory,
            }));
        }
        Ok(Regularity::NotRegular)
    }
}

/// Re-checks a certificate step by step with [`hstep`], independently of the
/// cached automata.
pub fn verify_certificate(
    checker: &RegularityChecker,
    w: &[usize],
    cert: &RegularityCertificate,
) -> Result<bool> {
    if cert.k >= w.len() || w[cert.k] != cert.e {
        return Ok(false);
    }
    let b = checker.biorder();
    let dual = checker.dual();
    let right = checker.right(cert.e)?;
    let left = checker.left(cert.e)?;
    let v = &w[cert.k + 1..];
    let u_rev: Vec<usize> = w[..cert.k].iter().rev().copied().collect();
    if cert.right_trajectory.len() != v.len() + 1 || cert.left_trajectory.len() != u_rev.len() + 1 {
        return Ok(false);
    }
    if cert.right_trajectory[0] != 0 || cert.left_trajectory[0] != 0 {
        return Ok(false);
    }
    let steps_ok = |bo: &Biorder, a: &ActionAutomaton, traj: &[usize], word: &[usize]| {
        traj.windows(2).zip(word).all(|(pair, &f)| {
            pair.iter().all(|&s| s < a.states())
                && hstep(bo, a.cols[pair[0]], a.cols[pair[1]], f).is_some()
        })
    };
    if !steps_ok(b, right, &cert.right_trajectory, v) || !steps_ok(dual, left, &cert.left_trajectory, &u_rev) {
        return Ok(false);
    }
    let last_r = *cert.right_trajectory.last().expect("nonempty");
    let last_l = *cert.left_trajectory.last().expect("nonempty");
    Ok(l_related(b, cert.l_witness, right.cols[last_r]) && r_related(b, cert.r_witness, left.cols[last_l]))
}

/// All words obtained from `w` by one application of a defining relation
/// `e f = e*f` in either direction.
pub fn one_step_rewrites(b: &Biorder, w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..w.len().saturating_sub(1) {
        if let Some(g) = b.product(w[k], w[k + 1]) {
            let mut x = w[..k].to_vec();
            x.push(g);
            x.extend_from_slice(&w[k + 2..]);
            out.push(x);
        }
    }
    let pairs: Vec<(usize, usize, usize)> = b.basic_pairs().collect();
    for k in 0..w.len() {
        for &(e, f, g) in &pairs {
            if g == w[k] {
                let mut x = w[..k].to_vec();
                x.extend([e, f]);
                x.extend_from_slice(&w[k + 1..]);
                out.push(x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ig_green;
    use crate::action::IgRel;
    use crate::biorder::extract_biorder;
    use crate::corpus;

    fn rb22() -> RegularityChecker {
        RegularityChecker::new(extract_biorder(&corpus::rectangular_band(2, 2)).unwrap())
    }

    #[test]
    fn single_letter_is_regular() {
        let c = rb22();
        for e in 0..4 {
            let cert = c.is_regular(&[e]).unwrap();
            let cert = cert.certificate().unwrap();
            assert_eq!(cert.k, 0);
            assert!(r_related(c.biorder(), cert.r_witness, e));
            assert!(l_related(c.biorder(), cert.l_witness, e));
        }
    }

    #[test]
    fn rectangular_band_product() {
        let c = rb22();
        let b = c.biorder();
        let w = b.parse_word("e11,e22").unwrap();
        let r = c.is_regular(&w).unwrap();
        let cert = r.certificate().unwrap();
        assert_eq!(cert.k, 0);
        assert_eq!(cert.e, b.index_of("e11").unwrap());
        // Column 2 of the rectangular band.
        assert!(ig_green(b, cert.l_witness, b.index_of("e12").unwrap(), IgRel::L));
        assert!(verify_certificate(&c, &w, cert).unwrap());
    }

    #[test]
    fn empty_word_rejected() {
        assert_eq!(rb22().is_regular(&[]), Err(Error::EmptyWord));
    }

    #[test]
    fn forged_certificate_rejected() {
        let c = rb22();
        let w = c.biorder().parse_word("e11,e22").unwrap();
        let mut cert = c.is_regular(&w).unwrap().certificate().unwrap().clone();
        cert.l_witness = c.biorder().index_of("e11").unwrap();
        assert!(!verify_certificate(&c, &w, &cert).unwrap());
    }

    #[test]
    fn semilattice_products_are_regular() {
        let c = RegularityChecker::new(extract_biorder(&corpus::semilattice_chain(3)).unwrap());
        let r = c.is_regular(&[2, 0, 1]).unwrap();
        let cert = r.certificate().unwrap();
        assert_eq!(cert.r_witness, 0);
        assert_eq!(cert.l_witness, 0);
    }

    #[test]
    fn rewrites_cover_both_directions() {
        let b = extract_biorder(&corpus::rectangular_band(2, 2)).unwrap();
        let w = b.parse_word("e11,e12").unwrap();
        let rewrites = one_step_rewrites(&b, &w);
        assert!(rewrites.contains(&vec![b.index_of("e12").unwrap()]));
        assert!(rewrites.iter().any(|x| x.len() == 3));
    }
}
