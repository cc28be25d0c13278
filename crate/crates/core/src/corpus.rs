//! Standard small semigroups, exhaustive enumerations and random bands.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bgh::{build_bgh, BghBand};
use crate::group::{normalize_presentation, GroupPresentation};
use crate::table::MulTable;

/// `I x J` with `(i, j)(k, l) = (i, l)`; element `(i, j)` is `i * c + j`, named `e{i+1}{j+1}`.
pub fn rectangular_band(r: usize, c: usize) -> MulTable {
    let names = (0..r * c).map(|x| format!("e{}{}", x / c + 1, x % c + 1)).collect();
    MulTable::from_fn(r * c, |a, b| (a / c) * c + b % c)
        .and_then(|t| t.with_names(names))
        .expect("valid")
}

/// The chain `0 < 1 < ... < n-1` under minimum.
pub fn semilattice_chain(n: usize) -> MulTable {
    MulTable::from_fn(n, |a, b| a.min(b)).expect("valid")
}

/// `xy = x`; the two-element case is named `x`, `y`.
pub fn left_zero(n: usize) -> MulTable {
    let t = MulTable::from_fn(n, |a, _| a).expect("valid");
    if n == 2 {
        t.with_names(vec!["x".into(), "y".into()]).expect("valid")
    } else {
        t
    }
}

/// `xy = y`.
pub fn right_zero(n: usize) -> MulTable {
    MulTable::from_fn(n, |_, b| b).expect("valid")
}

/// Componentwise product; `(a, b)` is `a * |T| + b`.
pub fn direct_product(s: &MulTable, t: &MulTable) -> MulTable {
    let m = t.len();
    MulTable::from_fn(s.len() * m, |x, y| s.mul(x / m, y / m) * m + t.mul(x % m, y % m)).expect("valid")
}

/// `S` above `T`: elements of `S` first, and `st = ts = t`.
pub fn ordinal_sum(s: &MulTable, t: &MulTable) -> MulTable {
    let k = s.len();
    MulTable::from_fn(k + t.len(), |x, y| match (x < k, y < k) {
        (true, true) => s.mul(x, y),
        (true, false) => y,
        (false, true) => x,
        (false, false) => k + t.mul(x - k, y - k),
    })
    .expect("valid")
}

/// Restriction of `t` to the subsemigroup generated by `gens`.
pub fn generated_subsemigroup(t: &MulTable, gens: &[usize]) -> MulTable {
    let mut inside = vec![false; t.len()];
    let mut elems: Vec<usize> = Vec::new();
    for &g in gens {
        if !inside[g] {
            inside[g] = true;
            elems.push(g);
        }
    }
    let mut k = 0;
    while k < elems.len() {
        let x = elems[k];
        for y in elems.clone() {
            for z in [t.mul(x, y), t.mul(y, x)] {
                if !inside[z] {
                    inside[z] = true;
                    elems.push(z);
                }
            }
        }
        k += 1;
    }
    elems.sort_unstable();
    let pos = |x: usize| elems.binary_search(&x).expect("closed");
    MulTable::from_fn(elems.len(), |a, b| pos(t.mul(elems[a], elems[b]))).expect("valid")
}

/// A semilattice of subsets of a small universe closed under intersection.
pub fn random_set_semilattice(rng: &mut impl Rng, max: usize) -> MulTable {
    let universe = rng.gen_range(2..=5u32);
    let full = (1u32 << universe) - 1;
    let mut sets: Vec<u32> = vec![full];
    for _ in 0..rng.gen_range(1..=6) {
        let x = rng.gen_range(0..=full);
        let mut next = sets.clone();
        next.push(x);
        for &s in &sets {
            next.push(s & x);
        }
        next.sort_unstable();
        next.dedup();
        if next.len() > max {
            break;
        }
        sets = next;
    }
    let pos = |x: u32| sets.binary_search(&x).expect("intersection closed");
    MulTable::from_fn(sets.len(), |a, b| pos(sets[a] & sets[b])).expect("valid")
}

/// A random band with at most `max >= 1` elements.
pub fn random_band(rng: &mut impl Rng, max: usize) -> MulTable {
    let small = |rng: &mut ChaCha8Rng| -> MulTable {
        match rng.gen_range(0..4) {
            0 => rectangular_band(rng.gen_range(1..=2), rng.gen_range(1..=2)),
            1 => left_zero(rng.gen_range(1..=2)),
            2 => right_zero(rng.gen_range(1..=2)),
            _ => semilattice_chain(rng.gen_range(1..=2)),
        }
    };
    let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
    loop {
        let t = match rng.gen_range(0..7) {
            0 => rectangular_band(rng.gen_range(1..=4), rng.gen_range(1..=4)),
            1 => random_set_semilattice(rng, max),
            2 => left_zero(rng.gen_range(1..=5)),
            3 => direct_product(&small(&mut sub), &small(&mut sub)),
            // Halving stops at 1 so the recursion terminates.
            4 if max >= 2 => ordinal_sum(&random_band(rng, max / 2), &random_band(rng, max / 2)),
            5 => crate::bgh::build_w(&small(&mut sub)),
            _ => {
                let big = direct_product(&rectangular_band(2, 2), &random_set_semilattice(rng, 5));
                let mut all: Vec<usize> = (0..big.len()).collect();
                all.shuffle(rng);
                let k = rng.gen_range(1..=3);
                generated_subsemigroup(&big, &all[..k])
            }
        };
        if t.len() <= max {
            return t;
        }
    }
}

/// Deterministic sample of `count` random bands.
pub fn random_bands(seed: u64, count: usize, max: usize) -> Vec<MulTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_band(&mut rng, max)).collect()
}

/// `Z2 = <a, z | zz = z, za = a, az = a, aa = z>` with subgroup generators `subgroup`.
pub fn z2_presentation(subgroup: &[&str]) -> GroupPresentation {
    let mut p = GroupPresentation::from_json(
        r#"{"generators":["a","z"],"relations":[[["z","z"],["z"]],[["z","a"],["a"]],[["a","z"],["a"]],[["a","a"],["z"]]]}"#,
    )
    .expect("valid");
    p.subgroup = Some(subgroup.iter().map(|s| p.gen_index(s).expect("generator")).collect());
    p
}

/// `B_{G,H}` for `G = Z2` and `H` generated by `subgroup` (`["z"]` gives `H = 1`).
pub fn bgh_z2(subgroup: &[&str]) -> BghBand {
    let np = normalize_presentation(&z2_presentation(subgroup)).expect("normalizes");
    build_bgh(&np).expect("builds")
}

struct Search {
    n: usize,
    t: Vec<Option<usize>>,
    out: Vec<MulTable>,
}

impl Search {
    fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.t[a * self.n + b]
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.get(a, b) else { continue };
                for c in 0..n {
                    let (Some(l), Some(bc)) = (self.get(ab, c), self.get(b, c)) else { continue };
                    if let Some(r) = self.get(a, bc) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn go(&mut self, cell: usize) {
        let n = self.n;
        if cell == n * n {
            let data = self.t.iter().map(|x| x.expect("filled")).collect();
            self.out.push(MulTable::new(n, data, None).expect("in range"));
            return;
        }
        if self.t[cell].is_some() {
            return self.go(cell + 1);
        }
        for v in 0..n {
            self.t[cell] = Some(v);
            if self.consistent() {
                self.go(cell + 1);
            }
        }
        self.t[cell] = None;
    }
}

/// Every associative table on `0..n` (labeled; `n <= 4` is practical).
pub fn all_semigroups(n: usize) -> Vec<MulTable> {
    let mut s = Search { n, t: vec![None; n * n], out: Vec::new() };
    s.go(0);
    s.out
}

/// Every band structure on `0..n`, searched with the diagonal fixed.
pub fn all_bands(n: usize) -> Vec<MulTable> {
    let mut t = vec![None; n * n];
    for i in 0..n {
        t[i * n + i] = Some(i);
    }
    let mut s = Search { n, t, out: Vec::new() };
    s.go(0);
    s.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::validate_table;

    #[test]
    fn labeled_semigroup_counts() {
        // Counts of labeled semigroups of order 1..3.
        assert_eq!(all_semigroups(1).len(), 1);
        assert_eq!(all_semigroups(2).len(), 8);
        assert_eq!(all_semigroups(3).len(), 113);
    }

    #[test]
    fn bands_match_filter() {
        for n in 1..=3 {
            let filtered = all_semigroups(n).into_iter().filter(|t| validate_table(t).band).count();
            assert_eq!(all_bands(n).len(), filtered);
        }
    }

    #[test]
    fn random_bands_are_bands() {
        for t in random_bands(7, 40, 20) {
            let r = validate_table(&t);
            assert!(r.associative && r.band, "{t:?}");
            assert!(t.len() <= 20);
        }
    }

    #[test]
    fn constructions() {
        assert_eq!(rectangular_band(2, 3).index_of("e21").unwrap(), 3);
        let o = ordinal_sum(&left_zero(2), &semilattice_chain(2));
        assert!(validate_table(&o).band);
        let p = direct_product(&left_zero(2), &right_zero(2));
        assert!(validate_table(&p).band);
    }
}
