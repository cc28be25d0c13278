//! Abelianization via Smith normal form of the relator exponent matrix.

use serde::Serialize;

use super::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    /// Rank of the free abelian part.
    pub free_rank: usize,
    /// Invariant factors greater than 1, each dividing the next.
    pub torsion: Vec<i128>,
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(ngens: usize, relators: &[Word]) -> Vec<Vec<i128>> {
    relators
        .iter()
        .map(|r| {
            let mut row = vec![0i128; ngens];
            for x in r {
                row[x.gen()] += if x.inv { -1 } else { 1 };
            }
            row
        })
        .collect()
}

/// Diagonal of the Smith normal form (nonzero entries only, non-negative,
/// each dividing the next).
#[allow(clippy::needless_range_loop)] // row operations read one row while writing another
pub fn smith_diagonal(mut a: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut done = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // Divisibility of the rest of the block.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j];
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            // Move the smallest nonzero entry of row/column t onto the diagonal.
            let best = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .expect("pivot row is nonzero");
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn abelian_invariants(ngens: usize, relators: &[Word]) -> AbelianInvariants {
    let diag = smith_diagonal(relation_matrix(ngens, relators), ngens);
    AbelianInvariants {
        free_rank: ngens - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).collect(),
    }
}
