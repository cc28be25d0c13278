//! Word-problem and membership oracles over group presentations.

use std::fmt;
use std::sync::Arc;

use super::enumerate::{enumerate_finite, CayleyTable, Enumeration};
use super::presentation::GroupPresentation;
use super::tietze::{eliminate, Reduction};
use super::word::{free_reduce, inverse, Letter, Word};
use crate::error::{Error, Result};

/// A user-supplied decision procedure.
pub trait WordProblem: Send + Sync {
    fn equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool>;

    fn membership(&self, _w: &[Letter], _subgroup: &[Word]) -> Result<bool> {
        Err(Error::Capability("external oracle has no membership test".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    FreeReduction,
    FiniteEnumeration { cap: usize },
    ProductOfFree,
    External,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::FreeReduction => write!(f, "free-reduction"),
            Strategy::FiniteEnumeration { cap } => write!(f, "finite-enumeration({cap})"),
            Strategy::ProductOfFree => write!(f, "product-of-free"),
            Strategy::External => write!(f, "external"),
        }
    }
}

/// How to build an oracle for a presentation computed on the fly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Free,
    Finite { cap: usize },
    Auto { cap: usize },
}

impl OracleKind {
    pub fn build(self, p: &GroupPresentation) -> Result<GroupOracle> {
        match self {
            OracleKind::Free => GroupOracle::free(p),
            OracleKind::Finite { cap } => GroupOracle::finite(p, cap),
            OracleKind::Auto { cap } => GroupOracle::auto(p, cap),
        }
    }
}

/// Data of a fibre product `{(g1, g2) : g1θ = g2θ}` in `F(A) × F(A)`.
/// Generator `g < n` is the left copy of `A[g]`, `n + g` the right copy.
#[derive(Clone)]
struct Fibre {
    n: usize,
    quotient: Arc<GroupOracle>,
}

#[derive(Clone)]
enum Backend {
    Free(Reduction),
    Finite(CayleyTable),
    ProductOfFree(Fibre),
    External(Arc<dyn WordProblem>),
}

#[derive(Clone)]
pub struct GroupOracle {
    presentation: GroupPresentation,
    strategy: Strategy,
    backend: Backend,
}

impl fmt::Debug for GroupOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupOracle")
            .field("generators", &self.presentation.generators)
            .field("strategy", &self.strategy)
            .finish()
    }
}

impl GroupOracle {
    /// Decides by free reduction after Tietze elimination; fails unless the
    /// presentation reduces to a free one.
    pub fn free(p: &GroupPresentation) -> Result<Self> {
        p.check()?;
        let red = eliminate(p.ngens(), p.relators(), None);
        if !red.is_free() {
            return Err(Error::Capability(format!(
                "presentation does not reduce to a free group ({} relators remain)",
                red.relators.len()
            )));
        }
        Ok(GroupOracle {
            presentation: p.clone(),
            strategy: Strategy::FreeReduction,
            backend: Backend::Free(red),
        })
    }

    pub fn finite(p: &GroupPresentation, cap: usize) -> Result<Self> {
        p.check()?;
        match enumerate_finite(p, cap.max(1)) {
            Enumeration::Finite(t) => Ok(GroupOracle {
                presentation: p.clone(),
                strategy: Strategy::FiniteEnumeration { cap },
                backend: Backend::Finite(t),
            }),
            Enumeration::Overflow { reason } => Err(Error::Overflow(reason)),
        }
    }

    /// Free reduction if the presentation is free, else enumeration.
    pub fn auto(p: &GroupPresentation, cap: usize) -> Result<Self> {
        match GroupOracle::free(p) {
            Ok(o) => Ok(o),
            Err(Error::Capability(_)) => GroupOracle::finite(p, cap),
            Err(e) => Err(e),
        }
    }

    /// Oracle for `F(A) × F(A)` as produced by [`super::mihailova`], whose
    /// subgroup is the fibre product over `quotient`.
    pub fn product_of_free(g: &GroupPresentation, quotient: GroupOracle) -> Result<Self> {
        g.check()?;
        let n = quotient.presentation.ngens();
        if g.ngens() != 2 * n {
            return Err(Error::Precondition(format!(
                "product of free groups needs {} generators, got {}",
                2 * n,
                g.ngens()
            )));
        }
        Ok(GroupOracle {
            presentation: g.clone(),
            strategy: Strategy::ProductOfFree,
            backend: Backend::ProductOfFree(Fibre {
                n,
                quotient: Arc::new(quotient),
            }),
        })
    }

    pub fn external(p: &GroupPresentation, wp: Arc<dyn WordProblem>) -> Self {
        GroupOracle {
            presentation: p.clone(),
            strategy: Strategy::External,
            backend: Backend::External(wp),
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn cayley_table(&self) -> Option<&CayleyTable> {
        match &self.backend {
            Backend::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.cayley_table().map(|t| t.order)
    }

    fn check_word(&self, w: &[Letter]) -> Result<()> {
        let n = self.presentation.ngens();
        match w.iter().find(|x| x.gen() >= n) {
            Some(x) => Err(Error::IndexOutOfRange { index: x.gen(), size: n }),
            None => Ok(()),
        }
    }

    pub fn equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        self.check_word(u)?;
        self.check_word(v)?;
        match &self.backend {
            Backend::Free(red) => {
                let mut w = u.to_vec();
                w.extend(inverse(v));
                Ok(red.rewrite(&w).is_empty())
            }
            Backend::Finite(t) => Ok(t.eval(u) == t.eval(v)),
            Backend::ProductOfFree(f) => {
                let (u1, u2) = f.split(u);
                let (v1, v2) = f.split(v);
                Ok(u1 == v1 && u2 == v2)
            }
            Backend::External(wp) => wp.equal(u, v),
        }
    }

    pub fn is_identity(&self, w: &[Letter]) -> Result<bool> {
        self.equal(w, &[])
    }

    /// Membership of `w` in the subgroup generated by `subgroup`, or by the
    /// presentation's own subgroup when `None`.
    pub fn membership(&self, w: &[Letter], subgroup: Option<&[Word]>) -> Result<bool> {
        self.check_word(w)?;
        let own: Vec<Word>;
        let gens: &[Word] = match subgroup {
            Some(s) => s,
            None => {
                if let Backend::ProductOfFree(f) = &self.backend {
                    return f.contains(w);
                }
                own = self
                    .presentation
                    .subgroup
                    .iter()
                    .flatten()
                    .map(|&g| vec![Letter::pos(g)])
                    .collect();
                &own
            }
        };
        for g in gens {
            self.check_word(g)?;
        }
        if gens.iter().all(|g| self.is_identity(g).unwrap_or(false)) {
            return self.is_identity(w);
        }
        match &self.backend {
            Backend::Finite(t) => {
                let elems: Vec<usize> = gens.iter().map(|g| t.eval(g)).collect();
                Ok(t.closure(&elems)[t.eval(w)])
            }
            Backend::External(wp) => wp.membership(w, gens),
            Backend::Free(_) | Backend::ProductOfFree(_) => Err(Error::Capability(format!(
                "membership in an arbitrary subgroup is not supported by {}",
                self.strategy
            ))),
        }
    }
}

impl Fibre {
    fn split(&self, w: &[Letter]) -> (Word, Word) {
        let left: Word = w.iter().copied().filter(|x| x.gen() < self.n).collect();
        let right: Word = w
            .iter()
            .filter(|x| x.gen() >= self.n)
            .map(|x| Letter {
                gen: x.gen - self.n as u32,
                inv: x.inv,
            })
            .collect();
        (free_reduce(&left), free_reduce(&right))
    }

    fn contains(&self, w: &[Letter]) -> Result<bool> {
        let (l, r) = self.split(w);
        self.quotient.equal(&l, &r)
    }
}
