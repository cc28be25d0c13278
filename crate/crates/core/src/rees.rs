//! Rees matrix coordinates for a regular D-class of IG(E), the word maps
//! π and ρ, and the word problem for regular words.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::action::{hstep, l_related, r_related};
use crate::biorder::Biorder;
use crate::error::{Error, Result};
use crate::group::{free_reduce, GroupOracle, GroupPresentation, Letter, OracleKind, Word};
use crate::regularity::{Regularity, RegularityCertificate, RegularityChecker};
use crate::schreier::{default_labels, presentation_b_for, presentation_f_labeled, FPresentation, SchreierSystem};

/// `(i, w, j)`: row, group word over the `f` generators, column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ReesTriple {
    pub i: usize,
    pub word: Word,
    pub j: usize,
}

impl ReesTriple {
    pub fn new(i: usize, word: Word, j: usize) -> Self {
        ReesTriple { i, word, j }
    }
}

#[derive(Debug, Clone)]
pub struct ReesContext {
    b: Biorder,
    pub schreier: SchreierSystem,
    pub f: FPresentation,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl ReesContext {
    pub fn new(b: &Biorder, e: usize) -> Result<Self> {
        let s = SchreierSystem::new(b, e)?;
        let (rows, cols) = (default_labels(s.rows()), default_labels(s.cols()));
        Self::from_system(b, s, rows, cols)
    }

    pub fn with_labels(b: &Biorder, e: usize, row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        Self::from_system(b, SchreierSystem::new(b, e)?, row_labels, col_labels)
    }

    fn from_system(b: &Biorder, s: SchreierSystem, row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        let f = presentation_f_labeled(b, &s, &row_labels, &col_labels)?;
        Ok(ReesContext {
            b: b.clone(),
            schreier: s,
            f,
            row_labels,
            col_labels,
        })
    }

    pub fn biorder(&self) -> &Biorder {
        &self.b
    }

    pub fn base(&self) -> usize {
        self.schreier.base
    }

    pub fn rows(&self) -> usize {
        self.schreier.rows()
    }

    pub fn cols(&self) -> usize {
        self.schreier.cols()
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.f.presentation
    }

    /// The generator `f_ij`.
    pub fn f_letter(&self, i: usize, j: usize) -> Result<Letter> {
        Ok(Letter::pos(self.f.f(i, j)?))
    }

    /// Structure matrix entry `p_ji = f_ij^-1`, or `None` for a zero entry.
    pub fn p(&self, j: usize, i: usize) -> Option<Word> {
        self.f.f(i, j).ok().map(|g| vec![Letter::neg(g)])
    }

    pub fn check_triple(&self, t: &ReesTriple) -> Result<()> {
        if t.i >= self.rows() {
            return Err(Error::IndexOutOfRange { index: t.i, size: self.rows() });
        }
        if t.j >= self.cols() {
            return Err(Error::IndexOutOfRange { index: t.j, size: self.cols() });
        }
        let n = self.presentation().ngens();
        match t.word.iter().find(|x| x.gen() >= n) {
            Some(x) => Err(Error::IndexOutOfRange { index: x.gen(), size: n }),
            None => Ok(()),
        }
    }

    /// `(row, col)` of a letter of the D-class.
    pub fn coords(&self, x: usize) -> Result<(usize, usize)> {
        let a = &self.schreier.automaton;
        match (a.row_of(x), a.col_of(x)) {
            (Some(i), Some(j)) => Ok((i, j)),
            _ => Err(Error::Domain(format!("letter {} is not in the D-class", self.b.name(x)))),
        }
    }

    /// `e_{i1 j1} ... e_{im jm}  ->  (i1, f_{i1 j1} f_{i2 j1}^-1 f_{i2 j2} ..., jm)`.
    pub fn pi(&self, w: &[usize]) -> Result<ReesTriple> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.b.check_word(w)?;
        let coords: Vec<(usize, usize)> = w.iter().map(|&x| self.coords(x)).collect::<Result<_>>()?;
        let mut word = Vec::with_capacity(2 * w.len());
        for t in 0..w.len() {
            let (i, j) = coords[t];
            if t > 0 {
                let jp = coords[t - 1].1;
                let g = self.f.f(i, jp).map_err(|_| Error::FallsOutOfD(w[t - 1], w[t]))?;
                word.push(Letter::neg(g));
            }
            word.push(self.f_letter(i, j)?);
        }
        Ok(ReesTriple::new(coords[0].0, word, coords[w.len() - 1].1))
    }

    /// `f_ij -> e r_{j(i)} e_ij r'_j`, `f_ij^-1 -> e r_j e_{i,j(i)} r'_{j(i)}`.
    pub fn rho_tilde(&self, w: &[Letter]) -> Result<Vec<usize>> {
        let s = &self.schreier;
        let mut out = Vec::new();
        for &x in w {
            let n = self.presentation().ngens();
            if x.gen() >= n {
                return Err(Error::IndexOutOfRange { index: x.gen(), size: n });
            }
            let (i, j) = self.f.coords(x.gen());
            let ji = s.j_of_i[i];
            out.push(s.base);
            if x.inv {
                out.extend(&s.r[j]);
                out.push(s.idem(i, ji)?);
                out.extend(&s.r_prime[ji]);
            } else {
                out.extend(&s.r[ji]);
                out.push(s.idem(i, j)?);
                out.extend(&s.r_prime[j]);
            }
        }
        Ok(out)
    }

    /// `(i, w, j) -> e_{i,j(i)} r'_{j(i)} ρ̃(w) e r_j`.
    pub fn rho(&self, t: &ReesTriple) -> Result<Vec<usize>> {
        self.check_triple(t)?;
        let s = &self.schreier;
        let ji = s.j_of_i[t.i];
        let mut out = vec![s.idem(t.i, ji)?];
        out.extend(&s.r_prime[ji]);
        out.extend(self.rho_tilde(&t.word)?);
        out.push(s.base);
        out.extend(&s.r[t.j]);
        Ok(out)
    }

    /// Rees matrix product `(i, u f_kj^-1 v, l)`; `None` when `p_jk` is zero.
    pub fn multiply(&self, x: &ReesTriple, y: &ReesTriple) -> Option<ReesTriple> {
        let p = self.p(x.j, y.i)?;
        let mut word = x.word.clone();
        word.extend(p);
        word.extend(&y.word);
        Some(ReesTriple::new(x.i, word, y.j))
    }

    /// `[j, f] = e r_j h r'_{jf}` with `h` from the witness of the step, read through π.
    pub fn bracket_to_f(&self, k: usize) -> Result<Word> {
        let s = &self.schreier;
        let a = &s.automaton;
        let (j, f) = s.brackets[k];
        let t = a.step(j, f).expect("bracket is defined");
        let (_, h) = hstep(&self.b, a.cols[j], a.cols[t], f)
            .ok_or_else(|| Error::Internal(format!("no witness for bracket [{},{}]", j + 1, self.b.name(f))))?;
        let mut w = vec![s.base];
        w.extend(&s.r[j]);
        w.push(h);
        w.extend(&s.r_prime[t]);
        let triple = self.pi(&w)?;
        if triple.i != 0 || triple.j != 0 {
            return Err(Error::Internal(format!("bracket {k} does not land in the base H-class")));
        }
        Ok(triple.word)
    }

    /// Rewrites a word over bracket generators into the `f` generators.
    pub fn b_word_to_f(&self, w: &[Letter]) -> Result<Word> {
        let mut out = Vec::new();
        for &x in w {
            let img = self.bracket_to_f(x.gen())?;
            if x.inv {
                out.extend(crate::group::word::inverse(&img));
            } else {
                out.extend(img);
            }
        }
        Ok(free_reduce(&out))
    }

    /// `f_ij -> φ(1, e r_{j(i)} e_ij r'_j)`.
    pub fn f_word_to_b(&self, w: &[Letter]) -> Result<Word> {
        let s = &self.schreier;
        let mut out = Vec::new();
        for &x in w {
            let (i, j) = self.f.coords(x.gen());
            let mut e_word = vec![s.base];
            e_word.extend(&s.r[s.j_of_i[i]]);
            e_word.push(s.idem(i, j)?);
            e_word.extend(&s.r_prime[j]);
            let img = s.phi(0, &e_word)?;
            if x.inv {
                out.extend(crate::group::word::inverse(&img));
            } else {
                out.extend(img);
            }
        }
        Ok(free_reduce(&out))
    }

    pub fn format_triple(&self, t: &ReesTriple) -> String {
        format!(
            "({}, {}, {})",
            self.row_labels[t.i],
            if t.word.is_empty() { "1".to_string() } else { self.presentation().format_word(&t.word) },
            self.col_labels[t.j]
        )
    }
}

pub fn rees_context(b: &Biorder, e: usize) -> Result<ReesContext> {
    ReesContext::new(b, e)
}

/// Rees context and `f`-level oracle, built on first use of the second route.
type FRoute = Arc<(ReesContext, Result<GroupOracle>)>;

struct BaseData {
    schreier: SchreierSystem,
    oracle_b: Result<GroupOracle>,
    f_route: Mutex<Option<FRoute>>,
}

/// Outcome of a regular word problem query.
#[derive(Debug, Clone, Serialize)]
pub struct WpDecision {
    pub equal: bool,
    pub u: RegularityCertificate,
    pub v: RegularityCertificate,
    /// Base idempotent used for the comparison (absent when witnesses already differ).
    pub base: Option<usize>,
    pub phi_u: Option<Word>,
    pub phi_v: Option<Word>,
}

/// Equality of regular words over a biorder, with maximal-subgroup oracles
/// built per base idempotent and cached.
pub struct RegularWordProblem {
    checker: RegularityChecker,
    kind: OracleKind,
    cache: Mutex<HashMap<usize, Arc<BaseData>>>,
}

impl RegularWordProblem {
    pub fn new(b: Biorder, kind: OracleKind) -> Self {
        RegularWordProblem {
            checker: RegularityChecker::new(b),
            kind,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn checker(&self) -> &RegularityChecker {
        &self.checker
    }

    fn base(&self, e: usize) -> Result<Arc<BaseData>> {
        if let Some(d) = self.cache.lock().expect("not poisoned").get(&e) {
            return Ok(d.clone());
        }
        let b = self.checker.biorder();
        let schreier = SchreierSystem::new(b, e)?;
        let pres = presentation_b_for(b, &schreier)?;
        let oracle_b = self.kind.build(&pres);
        let data = Arc::new(BaseData {
            schreier,
            oracle_b,
            f_route: Mutex::new(None),
        });
        self.cache.lock().expect("not poisoned").insert(e, data.clone());
        Ok(data)
    }

    fn certificate(&self, w: &[usize]) -> Result<RegularityCertificate> {
        match self.checker.is_regular(w)? {
            Regularity::Regular(c) => Ok(c),
            Regularity::NotRegular => Err(Error::RegularOnly(self.checker.biorder().format_word(w))),
        }
    }

    /// Both φ-images over the bracket generators of the base, or `None` if the
    /// words are already separated by their witnesses.
    fn images(&self, u: &[usize], v: &[usize]) -> Result<(WpDecision, Option<Arc<BaseData>>)> {
        let b = self.checker.biorder();
        let cu = self.certificate(u)?;
        let cv = self.certificate(v)?;
        let mut d = WpDecision {
            equal: false,
            u: cu.clone(),
            v: cv.clone(),
            base: None,
            phi_u: None,
            phi_v: None,
        };
        if !r_related(b, cu.r_witness, cv.r_witness) || !l_related(b, cu.l_witness, cv.l_witness) {
            return Ok((d, None));
        }
        let e = cu.r_witness;
        let data = self.base(e)?;
        let mut eu = vec![e];
        eu.extend(u);
        let mut ev = vec![e];
        ev.extend(v);
        d.base = Some(e);
        d.phi_u = Some(data.schreier.phi(0, &eu)?);
        d.phi_v = Some(data.schreier.phi(0, &ev)?);
        Ok((d, Some(data)))
    }

    pub fn decide(&self, u: &[usize], v: &[usize]) -> Result<WpDecision> {
        let (mut d, data) = self.images(u, v)?;
        if let Some(data) = data {
            let oracle = data.oracle_b.as_ref().map_err(Clone::clone)?;
            d.equal = oracle.equal(d.phi_u.as_ref().expect("set"), d.phi_v.as_ref().expect("set"))?;
        }
        Ok(d)
    }

    pub fn equal(&self, u: &[usize], v: &[usize]) -> Result<bool> {
        Ok(self.decide(u, v)?.equal)
    }

    /// The same decision routed through the `f` generators and their presentation.
    pub fn equal_via_f(&self, u: &[usize], v: &[usize]) -> Result<bool> {
        let (d, data) = self.images(u, v)?;
        let Some(data) = data else { return Ok(false) };
        let route = {
            let mut slot = data.f_route.lock().expect("not poisoned");
            match &*slot {
                Some(r) => r.clone(),
                None => {
                    let b = self.checker.biorder();
                    let ctx = ReesContext::new(b, data.schreier.base)?;
                    let oracle = self.kind.build(ctx.presentation());
                    let r = Arc::new((ctx, oracle));
                    *slot = Some(r.clone());
                    r
                }
            }
        };
        let (ctx, oracle) = &*route;
        let oracle = oracle.as_ref().map_err(Clone::clone)?;
        let fu = ctx.b_word_to_f(d.phi_u.as_ref().expect("set"))?;
        let fv = ctx.b_word_to_f(d.phi_v.as_ref().expect("set"))?;
        oracle.equal(&fu, &fv)
    }
}

/// Decides `u = v` in IG(E) for regular words.
pub fn regular_wp(b: &Biorder, u: &[usize], v: &[usize], kind: OracleKind) -> Result<bool> {
    RegularWordProblem::new(b.clone(), kind).equal(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biorder::extract_biorder;
    use crate::corpus;

    fn rb22() -> Biorder {
        extract_biorder(&corpus::rectangular_band(2, 2)).unwrap()
    }

    #[test]
    fn pi_examples() {
        let b = rb22();
        let ctx = rees_context(&b, 0).unwrap();
        let w = b.parse_word("e12,e21").unwrap();
        let t = ctx.pi(&w).unwrap();
        assert_eq!((t.i, t.j), (0, 0));
        assert_eq!(ctx.presentation().format_word(&t.word), "f1_2,f2_2^-1,f2_1");
        let single = ctx.pi(&[b.index_of("e22").unwrap()]).unwrap();
        assert_eq!(ctx.format_triple(&single), "(2, f2_2, 2)");
    }

    #[test]
    fn rho_of_identity_triple() {
        let b = rb22();
        let ctx = rees_context(&b, 0).unwrap();
        let w = ctx.rho(&ReesTriple::new(0, vec![], 0)).unwrap();
        // e_{1,j(1)} r'_{j(1)} e r_1 with j(1) = 1
        assert_eq!(b.format_word(&w), "e11,e11");
    }

    #[test]
    fn rectangular_band_word_problem() {
        let b = rb22();
        let wp = RegularWordProblem::new(b.clone(), OracleKind::Auto { cap: 64 });
        let w = |s: &str| b.parse_word(s).unwrap();
        assert!(wp.equal(&w("e11,e12"), &w("e12")).unwrap());
        assert!(!wp.equal(&w("e11,e22,e11"), &w("e11")).unwrap());
        assert!(wp.equal(&w("e11,e22,e11"), &w("e11,e22,e11")).unwrap());
        assert!(!wp.equal(&w("e11"), &w("e22")).unwrap());
        assert!(!wp.equal_via_f(&w("e11,e22,e11"), &w("e11")).unwrap());
        assert!(wp.equal_via_f(&w("e11,e12"), &w("e12")).unwrap());
    }

    #[test]
    fn non_regular_is_rejected() {
        let b = extract_biorder(&corpus::semilattice_chain(2)).unwrap();
        let wp = RegularWordProblem::new(b, OracleKind::Auto { cap: 8 });
        assert!(wp.equal(&[0, 1], &[0]).unwrap());
        assert!(matches!(wp.equal(&[], &[0]), Err(Error::EmptyWord)));
    }
}
