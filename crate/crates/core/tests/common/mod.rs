//! Shared corpus and direct-from-table oracles for the integration tests.
#![allow(dead_code)]

use idemgen::action::{d_class, ig_green, ActionAutomaton, IgRel};
use idemgen::biorder::{extract_biorder, Biorder};
use idemgen::corpus;
use idemgen::green::{green_data, GreenData};
use idemgen::table::MulTable;
use rand::Rng;

pub const RANDOM_SEED: u64 = 0x5eed_0001;

/// Every band of order at most 4 plus 25 random bands of order at most 20.
pub fn corpus() -> Vec<MulTable> {
    let mut out: Vec<MulTable> = (1..=4).flat_map(corpus::all_bands).collect();
    out.extend(corpus::random_bands(RANDOM_SEED, 25, 20));
    out
}

/// Bands with richer D-classes: rectangular bands, products, `W` and random ones.
pub fn structured_corpus() -> Vec<MulTable> {
    let mut out = vec![
        corpus::rectangular_band(2, 2),
        corpus::rectangular_band(2, 3),
        corpus::rectangular_band(3, 3),
        corpus::direct_product(&corpus::rectangular_band(2, 2), &corpus::semilattice_chain(2)),
        corpus::ordinal_sum(&corpus::rectangular_band(2, 2), &corpus::left_zero(2)),
        idemgen::bgh::build_w(&corpus::rectangular_band(2, 2)),
    ];
    out.extend(corpus::random_bands(RANDOM_SEED ^ 7, 25, 20));
    out
}

/// One idempotent per D-class of IG(E), in index order.
pub fn d_class_reps(b: &Biorder) -> Vec<usize> {
    let mut seen = vec![false; b.len()];
    let mut reps = Vec::new();
    for e in 0..b.len() {
        if !seen[e] {
            reps.push(e);
            for x in d_class(b, e) {
                seen[x] = true;
            }
        }
    }
    reps
}

/// Compares `ig_green` on the extracted biorder with Green's relations of the
/// table restricted to idempotents.
pub fn check_green(t: &MulTable) -> Result<(), String> {
    let b = extract_biorder(t).map_err(|e| e.to_string())?;
    let g = green_data(t).map_err(|e| e.to_string())?;
    let idem = t.idempotents();
    for (a, &x) in idem.iter().enumerate() {
        for (c, &y) in idem.iter().enumerate() {
            for (rel, want) in [
                (IgRel::R, g.r[x] == g.r[y]),
                (IgRel::L, g.l[x] == g.l[y]),
                (IgRel::D, g.d[x] == g.d[y]),
            ] {
                if ig_green(&b, a, c, rel) != want {
                    return Err(format!("{rel:?} differs on ({}, {}) in {:?}", t.name(x), t.name(y), t));
                }
            }
        }
    }
    Ok(())
}

/// The action of idempotents on the L-classes inside the R-class of `base`,
/// computed by multiplying in the table: `x f` if it stays R-related to `x`.
pub struct DirectAction {
    /// Smallest member of each L-class, class of `base` first.
    pub reps: Vec<usize>,
    pub step: Vec<Vec<Option<usize>>>,
}

pub fn direct_action(t: &MulTable, g: &GreenData, base: usize) -> DirectAction {
    let row: Vec<usize> = (0..t.len()).filter(|&x| g.r[x] == g.r[base] && t.is_idempotent(x)).collect();
    let mut reps: Vec<usize> = Vec::new();
    for &x in &row {
        if !reps.iter().any(|&r| g.l[r] == g.l[x]) {
            reps.push(x);
        }
    }
    reps.sort_by_key(|&r| (g.l[r] != g.l[base], r));
    let state = |x: usize| reps.iter().position(|&r| g.l[r] == g.l[x]);
    let step = reps
        .iter()
        .map(|&r| {
            t.idempotents()
                .iter()
                .map(|&f| {
                    let p = t.mul(r, f);
                    if g.r[p] == g.r[base] {
                        state(p)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    DirectAction { reps, step }
}

/// Automaton from the biorder versus [`direct_action`], for every base idempotent.
pub fn check_matching_action(t: &MulTable) -> Result<(), String> {
    let b = extract_biorder(t).map_err(|e| e.to_string())?;
    let g = green_data(t).map_err(|e| e.to_string())?;
    let idem = t.idempotents();
    for (e, &x) in idem.iter().enumerate() {
        let a = ActionAutomaton::new(&b, e).map_err(|er| er.to_string())?;
        let d = direct_action(t, &g, x);
        // States are L-classes; representatives may lie outside the R-class of the base.
        let cols: Vec<usize> = a.cols.iter().map(|&c| g.l[idem[c]]).collect();
        let reps: Vec<usize> = d.reps.iter().map(|&r| g.l[r]).collect();
        if cols != reps {
            return Err(format!("base {}: states {:?} vs {:?}", t.name(x), cols, reps));
        }
        for j in 0..a.states() {
            for f in 0..b.len() {
                if a.step(j, f) != d.step[j][f] {
                    return Err(format!(
                        "base {}: state {} letter {}: {:?} vs {:?}",
                        t.name(x),
                        j,
                        b.name(f),
                        a.step(j, f),
                        d.step[j][f]
                    ));
                }
            }
        }
    }
    Ok(())
}

pub fn random_word(rng: &mut impl Rng, m: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(0..m)).collect()
}
