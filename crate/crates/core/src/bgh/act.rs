//! Rees coordinates of `K_G'` and `K_G''`, the dictionary between the `f`
//! generators and `A`, and the action of `L_G ∪ K_H` on Rees triples.

use crate::biorder::{extract_biorder, Biorder};
use crate::error::{Error, Result};
use crate::group::{enumerate_finite, free_reduce, GroupOracle, GroupPresentation, Letter, Word};
use crate::rees::{ReesContext, ReesTriple};

use super::construct::{BghBand, Side, Tag};

/// Biorder and Rees contexts of a band `B_{G,H}`.
#[derive(Debug, Clone)]
pub struct BghContext {
    pub band: BghBand,
    pub biorder: Biorder,
    /// Based at `(1,1)'`.
    pub prime: ReesContext,
    /// Based at `(1,1)''`.
    pub double: ReesContext,
    /// Image in `G` of each `f` generator, indexed like the `f` presentation.
    pub dictionary: Vec<Word>,
}

impl BghContext {
    pub fn new(band: BghBand) -> Result<Self> {
        let biorder = extract_biorder(&band.table)?;
        let (rows, cols) = (band.row_labels(), band.col_labels());
        let mut ctx = Vec::with_capacity(2);
        for side in [Side::Prime, Side::Double] {
            let base = band.index(Tag::kg(side, 0, 0)).expect("(1,1) exists");
            let c = ReesContext::with_labels(&biorder, base, rows.clone(), cols.clone())?;
            let a = &c.schreier.automaton;
            for i in 0..band.i_len() {
                for j in 0..band.j_len() {
                    let x = band.index(Tag::kg(side, i, j)).expect("K_G element");
                    if a.row_of(x) != Some(i) || a.col_of(x) != Some(j) {
                        return Err(Error::Internal(format!("Rees coordinates of {} do not follow I x J", band.name(x))));
                    }
                }
            }
            ctx.push(c);
        }
        let double = ctx.pop().expect("two contexts");
        let prime = ctx.pop().expect("two contexts");
        let dictionary = (0..band.i_len() * band.j_len())
            .map(|g| {
                let (i, j) = prime.f.coords(g);
                dictionary_entry(&band, i, j)
            })
            .collect();
        Ok(BghContext {
            band,
            biorder,
            prime,
            double,
            dictionary,
        })
    }

    pub fn side(&self, side: Side) -> &ReesContext {
        match side {
            Side::Prime => &self.prime,
            Side::Double => &self.double,
        }
    }

    /// The `f` presentation (identical for both copies).
    pub fn f_presentation(&self) -> &GroupPresentation {
        self.prime.presentation()
    }

    /// `G` as presented by the normalized presentation, with `H` as subgroup.
    pub fn g_presentation(&self) -> GroupPresentation {
        let mut p = self.band.presentation.presentation();
        p.subgroup = Some(self.band.subgroup.clone());
        p
    }

    /// `f_ij` as a single letter.
    pub fn f(&self, i: usize, j: usize) -> Letter {
        Letter::pos(self.prime.f.f(i, j).expect("K = I x J"))
    }

    /// Translates an `f` word into `G`.
    pub fn to_g(&self, w: &[Letter]) -> Word {
        let mut out = Vec::new();
        for &x in w {
            let img = &self.dictionary[x.gen()];
            if x.inv {
                out.extend(crate::group::word::inverse(img));
            } else {
                out.extend(img.iter().copied());
            }
        }
        free_reduce(&out)
    }

    /// `f_{a, inf}` for `a ∈ A`, the standard `f` word for the generator `a`.
    pub fn from_g_letter(&self, x: Letter) -> Letter {
        let f = self.f(1 + x.gen(), self.band.inf());
        if x.inv {
            f.inverse()
        } else {
            f
        }
    }

    pub fn from_g(&self, w: &[Letter]) -> Word {
        w.iter().map(|&x| self.from_g_letter(x)).collect()
    }

    /// Checks that the dictionary is an isomorphism onto `G`: relations map to
    /// the identity, the image contains every generator, and both groups have
    /// the same order (finite `G` only).
    pub fn check_dictionary(&self, cap: usize) -> Result<()> {
        let g = self.band.presentation.presentation();
        let oracle = GroupOracle::finite(&g, cap)?;
        for r in self.f_presentation().relators() {
            if !oracle.is_identity(&self.to_g(&r))? {
                return Err(Error::Internal(format!(
                    "relation {} does not hold in G",
                    self.f_presentation().format_word(&r)
                )));
            }
        }
        for a in 0..g.ngens() {
            let back = self.to_g(&[self.from_g_letter(Letter::pos(a))]);
            if !oracle.equal(&back, &[Letter::pos(a)])? {
                return Err(Error::Internal(format!("generator {} is not hit", g.generators[a])));
            }
        }
        let f_order = enumerate_finite(self.f_presentation(), cap).order();
        if f_order != oracle.order() {
            return Err(Error::Internal(format!(
                "orders differ: f presentation {f_order:?}, G {:?}",
                oracle.order()
            )));
        }
        Ok(())
    }

    /// `ρ'` or `ρ''` of a triple.
    pub fn rho(&self, side: Side, t: &ReesTriple) -> Result<Vec<usize>> {
        self.side(side).rho(t)
    }

    /// Action of `e ∈ L_G ∪ K_H`: on the right of `K_G'` triples, on the left of `K_G''` triples.
    pub fn e_act(&self, e: usize, side: Side, t: &ReesTriple) -> Result<ReesTriple> {
        if e >= self.band.len() {
            return Err(Error::IndexOutOfRange {
                index: e,
                size: self.band.len(),
            });
        }
        if !matches!(self.band.tag(e), Tag::Lg { .. } | Tag::Kh { .. }) {
            return Err(Error::Domain(format!("{} is not in L_G or K_H", self.band.name(e))));
        }
        self.side(side).check_triple(t)?;
        let (sigma, tau) = self.band.transform(e).expect("not zero");
        let i0 = *sigma.iter().min().expect("nonempty");
        let j0 = *tau.iter().min().expect("nonempty");
        Ok(match side {
            Side::Prime => {
                let jt = tau[t.j];
                let mut w = t.word.clone();
                w.push(self.f(i0, t.j).inverse());
                w.push(self.f(i0, jt));
                ReesTriple::new(t.i, free_reduce(&w), jt)
            }
            Side::Double => {
                let si = sigma[t.i];
                let mut w = vec![self.f(si, j0), self.f(t.i, j0).inverse()];
                w.extend(&t.word);
                ReesTriple::new(si, free_reduce(&w), t.j)
            }
        })
    }
}

/// `f_ij` read as an element of `G`:
/// rows in `A_1` give `1` except `f_{a,inf} = a`;
/// rows in `bar(A_1)` give `f_{xbar,1} = 1`, `f_{xbar,a} = a`, `f_{abar,inf} = a`, `f_{1bar,inf} = 1`.
fn dictionary_entry(band: &BghBand, i: usize, j: usize) -> Word {
    let n = band.n();
    let gen = |a: usize| if a == 0 { vec![] } else { vec![Letter::pos(a - 1)] };
    if i <= n {
        if j == band.inf() {
            gen(i)
        } else {
            vec![]
        }
    } else if j == band.inf() {
        gen(i - n - 1)
    } else {
        gen(j)
    }
}
