//! Witness chains of `≈` steps between pairs in `K_G' × K_G''`, and the
//! reduction of membership in `H` to an equality in IG(B_{G,H}).

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{free_reduce, word, GroupOracle, Letter, Word};
use crate::rees::ReesTriple;

use super::act::BghContext;
use super::construct::{LgKind, Side, Tag};

/// Kind of a single `≈` step from `(u1, v1)` to `(u2, v2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Approx {
    /// `u1 = u2`, `v1 = v2`.
    Equal,
    /// `u1 = u2 f`, `f v1 = v2`.
    PushLeft,
    /// `u1 f = u2`, `v1 = f v2`.
    PushRight,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub kind: Approx,
    /// The intervening idempotent, absent for `Equal`.
    pub via: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessChain {
    pub pairs: Vec<(ReesTriple, ReesTriple)>,
    pub steps: Vec<ChainStep>,
}

impl WitnessChain {
    fn start(u: ReesTriple, v: ReesTriple) -> Self {
        WitnessChain {
            pairs: vec![(u, v)],
            steps: Vec::new(),
        }
    }

    fn push(&mut self, kind: Approx, via: Option<usize>, u: ReesTriple, v: ReesTriple) {
        self.steps.push(ChainStep { kind, via });
        self.pairs.push((u, v));
    }

    fn append(&mut self, other: WitnessChain) {
        self.steps.extend(other.steps);
        self.pairs.extend(other.pairs.into_iter().skip(1));
    }

    pub fn first(&self) -> &(ReesTriple, ReesTriple) {
        &self.pairs[0]
    }

    pub fn last(&self) -> &(ReesTriple, ReesTriple) {
        self.pairs.last().expect("nonempty")
    }
}

/// Outcome of reducing `w ∈ H` to `e'_11 e''_11 = ρ'(1, w^-1, 1) ρ''(1, w, 1)`.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipDemo {
    pub equal: bool,
    /// `w` read in `G`.
    pub g_word: Word,
    /// Word over `B` equal to `w` in `G`, when `w ∈ H`.
    pub b_word: Option<Vec<usize>>,
    pub chain: Option<WitnessChain>,
}

/// A [`BghContext`] with word-problem oracles for both `f` presentations.
pub struct ChainVerifier {
    pub ctx: BghContext,
    prime: GroupOracle,
    double: GroupOracle,
}

impl ChainVerifier {
    pub fn new(ctx: BghContext, cap: usize) -> Result<Self> {
        let prime = GroupOracle::finite(ctx.prime.presentation(), cap)?;
        let double = GroupOracle::finite(ctx.double.presentation(), cap)?;
        Ok(ChainVerifier { ctx, prime, double })
    }

    pub fn oracle(&self, side: Side) -> &GroupOracle {
        match side {
            Side::Prime => &self.prime,
            Side::Double => &self.double,
        }
    }

    pub fn triple_eq(&self, side: Side, a: &ReesTriple, b: &ReesTriple) -> Result<bool> {
        Ok(a.i == b.i && a.j == b.j && self.oracle(side).equal(&a.word, &b.word)?)
    }

    fn expect_eq(&self, side: Side, got: &ReesTriple, want: &ReesTriple, what: &str) -> Result<()> {
        if self.triple_eq(side, got, want)? {
            return Ok(());
        }
        let c = self.ctx.side(side);
        Err(Error::Internal(format!(
            "{what}: got {}, expected {}",
            c.format_triple(got),
            c.format_triple(want)
        )))
    }

    /// Re-checks one step with the action of the intervening idempotent.
    pub fn verify_step(&self, from: &(ReesTriple, ReesTriple), to: &(ReesTriple, ReesTriple), step: &ChainStep) -> Result<()> {
        let ((u1, v1), (u2, v2)) = (from, to);
        let via = || step.via.ok_or_else(|| Error::Internal("step has no idempotent".into()));
        match step.kind {
            Approx::Equal => {
                self.expect_eq(Side::Prime, u1, u2, "u1 = u2")?;
                self.expect_eq(Side::Double, v1, v2, "v1 = v2")
            }
            Approx::PushLeft => {
                let f = via()?;
                self.expect_eq(Side::Prime, &self.ctx.e_act(f, Side::Prime, u2)?, u1, "u2 f = u1")?;
                self.expect_eq(Side::Double, &self.ctx.e_act(f, Side::Double, v1)?, v2, "f v1 = v2")
            }
            Approx::PushRight => {
                let f = via()?;
                self.expect_eq(Side::Prime, &self.ctx.e_act(f, Side::Prime, u1)?, u2, "u1 f = u2")?;
                self.expect_eq(Side::Double, &self.ctx.e_act(f, Side::Double, v2)?, v1, "f v2 = v1")
            }
        }
    }

    pub fn verify(&self, chain: &WitnessChain) -> Result<()> {
        if chain.pairs.len() != chain.steps.len() + 1 {
            return Err(Error::Internal("chain has mismatched steps".into()));
        }
        for (k, step) in chain.steps.iter().enumerate() {
            self.verify_step(&chain.pairs[k], &chain.pairs[k + 1], step)
                .map_err(|e| Error::Internal(format!("step {}: {e}", k + 1)))?;
        }
        Ok(())
    }

    /// The four steps from `(ρ'(1,w1,1), ρ''(1,w2,1))` to `(ρ'(1,w1 b^-1,1), ρ''(1,b w2,1))`
    /// through `(1,b)`, `e_b`, `e_bbar`, `(1,1)`.
    pub fn b1b_chain(&self, w1: &[Letter], w2: &[Letter], b: usize) -> Result<WitnessChain> {
        let band = &self.ctx.band;
        if !band.subgroup.contains(&b) {
            return Err(Error::Precondition(format!(
                "{} is not a subgroup generator",
                band.presentation.generators.get(b).map_or("?", |s| s.as_str())
            )));
        }
        let bj = b + 1;
        let bw = self.ctx.from_g_letter(Letter::pos(b));
        let idx = |t: Tag| band.index(t).expect("element exists");
        let w1b = free_reduce(&[w1, &[bw.inverse()]].concat());
        let bw2 = free_reduce(&[&[bw][..], w2].concat());
        let t = |i: usize, w: &[Letter], j: usize| ReesTriple::new(i, w.to_vec(), j);
        let mut c = WitnessChain::start(t(0, w1, 0), t(0, w2, 0));
        c.push(Approx::PushRight, Some(idx(Tag::Kh { i: 0, j: bj })), t(0, w1, bj), t(band.bar(0), &bw2, 0));
        c.push(
            Approx::PushLeft,
            Some(idx(Tag::Lg { e: LgKind::Gen(bj) })),
            t(0, w1, band.inf()),
            t(band.bar(bj), &bw2, 0),
        );
        c.push(
            Approx::PushRight,
            Some(idx(Tag::Lg { e: LgKind::Bar(bj) })),
            t(0, &w1b, 0),
            t(band.bar(bj), &bw2, 0),
        );
        c.push(Approx::PushLeft, Some(idx(Tag::Kh { i: 0, j: 0 })), t(0, &w1b, 0), t(0, &bw2, 0));
        self.verify(&c)?;
        Ok(c)
    }

    /// Chains `b1b_chain` over `letters` from the last to the first, starting at `(w1, w2)`.
    pub fn push_through(&self, w1: &[Letter], w2: &[Letter], letters: &[usize]) -> Result<WitnessChain> {
        let t = |w: &[Letter]| ReesTriple::new(0, w.to_vec(), 0);
        let mut chain = WitnessChain::start(t(w1), t(w2));
        for &b in letters.iter().rev() {
            let (u, v) = chain.last().clone();
            chain.append(self.b1b_chain(&u.word, &v.word, b)?);
        }
        Ok(chain)
    }

    /// Decides `w ∈ H` with the group oracle and, when it holds, builds a verified
    /// chain from `(ρ'(1,1,1), ρ''(1,1,1))` to `(ρ'(1,w^-1,1), ρ''(1,w,1))`.
    pub fn equality_demo(&self, w: &[Letter], oracle: &GroupOracle) -> Result<MembershipDemo> {
        self.ctx.prime.check_triple(&ReesTriple::new(0, w.to_vec(), 0))?;
        let g_word = self.ctx.to_g(w);
        let subgroup: Vec<Word> = self.ctx.band.subgroup.iter().map(|&b| vec![Letter::pos(b)]).collect();
        let member = oracle.membership(&g_word, Some(&subgroup))?;
        if !member {
            return Ok(MembershipDemo {
                equal: false,
                g_word,
                b_word: None,
                chain: None,
            });
        }
        let table = oracle
            .cayley_table()
            .ok_or_else(|| Error::Capability("B-word search needs a finite group".into()))?;
        let target = table.eval(&g_word);
        let b_word = shortest_word(table, &self.ctx.band.subgroup, target)
            .ok_or_else(|| Error::Internal("member of H not reached by B-words".into()))?;
        let mut chain = self.push_through(&[], &[], &b_word)?;
        let (u, v) = chain.last().clone();
        let to = (ReesTriple::new(0, word::inverse(w), 0), ReesTriple::new(0, w.to_vec(), 0));
        let step = ChainStep { kind: Approx::Equal, via: None };
        self.verify_step(&(u, v), &to, &step)?;
        chain.push(Approx::Equal, None, to.0, to.1);
        Ok(MembershipDemo {
            equal: true,
            g_word,
            b_word: Some(b_word),
            chain: Some(chain),
        })
    }
}

/// Breadth-first search for a shortest nonempty positive word over `gens` with value `target`.
fn shortest_word(t: &crate::group::CayleyTable, gens: &[usize], target: usize) -> Option<Vec<usize>> {
    let mut prev: Vec<Option<(Option<usize>, usize)>> = vec![None; t.order];
    let mut queue = VecDeque::new();
    for &g in gens {
        let y = t.letter(Letter::pos(g));
        if prev[y].is_none() {
            prev[y] = Some((None, g));
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        if x == target {
            let mut out = Vec::new();
            let mut y = Some(x);
            while let Some((p, g)) = y.and_then(|y| prev[y]) {
                out.push(g);
                y = p;
            }
            out.reverse();
            return Some(out);
        }
        for &g in gens {
            let y = t.mul(x, t.letter(Letter::pos(g)));
            if prev[y].is_none() {
                prev[y] = Some((Some(x), g));
                queue.push_back(y);
            }
        }
    }
    None
}
