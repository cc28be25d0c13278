//! Green's relations of a finite semigroup, computed from principal ideals.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::MulTable;

/// Bitset over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Partition labels: `class[x]` is the id of the class of `x`. Ids are
/// assigned in order of each class's smallest element.
fn partition_by<K: std::hash::Hash + Eq>(n: usize, key: impl Fn(usize) -> K) -> Vec<usize> {
    let mut ids = HashMap::new();
    (0..n)
        .map(|x| {
            let next = ids.len();
            *ids.entry(key(x)).or_insert(next)
        })
        .collect()
}

fn members(class: &[usize]) -> Vec<Vec<usize>> {
    let count = class.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); count];
    for (x, &c) in class.iter().enumerate() {
        out[c].push(x);
    }
    out
}

/// Green's structure of a finite semigroup.
#[derive(Debug, Clone, Serialize)]
pub struct GreenData {
    pub n: usize,
    pub names: Vec<String>,
    /// Class id of each element, per relation.
    pub r: Vec<usize>,
    pub l: Vec<usize>,
    pub h: Vec<usize>,
    pub d: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
    /// Idempotents of each D-class.
    pub d_idempotents: Vec<Vec<usize>>,
    /// `(upper, lower)` pairs of D-class ids covering each other in the J-order.
    pub covers: Vec<(usize, usize)>,
}

pub fn green_data(t: &MulTable) -> Result<GreenData> {
    t.ensure_associative()?;
    let n = t.len();
    let mut right = Vec::with_capacity(n);
    let mut left = Vec::with_capacity(n);
    for a in 0..n {
        let mut ra = Bits::new(n);
        let mut la = Bits::new(n);
        ra.set(a);
        la.set(a);
        for s in 0..n {
            ra.set(t.mul(a, s));
            la.set(t.mul(s, a));
        }
        right.push(ra);
        left.push(la);
    }
    // Two-sided ideal S^1 a S^1 = union of the right ideals of the left ideal's members.
    let two_sided: Vec<Bits> = (0..n)
        .map(|a| {
            let mut ja = Bits::new(n);
            for x in (0..n).filter(|&x| left[a].get(x)) {
                for (w, &word) in right[x].0.iter().enumerate() {
                    ja.0[w] |= word;
                }
            }
            ja
        })
        .collect();

    let r = partition_by(n, |a| right[a].clone());
    let l = partition_by(n, |a| left[a].clone());
    let h = partition_by(n, |a| (r[a], l[a]));
    let j = partition_by(n, |a| two_sided[a].clone());

    // D = R o L: the D-class of a is the union of the L-classes meeting R_a.
    let r_classes = members(&r);
    let l_classes = members(&l);
    let d = partition_by(n, |a| {
        let mut ls: Vec<usize> = r_classes[r[a]].iter().map(|&c| l[c]).collect();
        ls.sort_unstable();
        ls.dedup();
        let mut set = Bits::new(n);
        for lc in ls {
            for &x in &l_classes[lc] {
                set.set(x);
            }
        }
        set
    });
    if d != j {
        return Err(Error::Internal(
            "D computed as R o L differs from J computed from two-sided ideals".into(),
        ));
    }
    let d_classes = members(&d);
    let d_idempotents = d_classes
        .iter()
        .map(|c| c.iter().copied().filter(|&x| t.is_idempotent(x)).collect())
        .collect();

    let k = d_classes.len();
    let reps: Vec<usize> = d_classes.iter().map(|c| c[0]).collect();
    let below = |x: usize, y: usize| x != y && two_sided[reps[x]].subset_of(&two_sided[reps[y]]);
    let mut covers = Vec::new();
    for upper in 0..k {
        for lower in 0..k {
            if below(lower, upper) && !(0..k).any(|m| below(lower, m) && below(m, upper)) {
                covers.push((upper, lower));
            }
        }
    }

    Ok(GreenData {
        n,
        names: (0..n).map(|i| t.name(i)).collect(),
        h_classes: members(&h),
        r,
        l,
        h,
        d,
        r_classes,
        l_classes,
        d_classes,
        d_idempotents,
        covers,
    })
}

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Egg-box diagram in DOT: one cluster per D-class holding an HTML table
/// whose rows are R-classes and columns L-classes; edges are J-order covers.
pub fn egg_box_dot(g: &GreenData) -> String {
    let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
    for (di, class) in g.d_classes.iter().enumerate() {
        let mut rows: Vec<usize> = class.iter().map(|&x| g.r[x]).collect();
        let mut cols: Vec<usize> = class.iter().map(|&x| g.l[x]).collect();
        // Class ids follow smallest elements, so sorting ids sorts by minimum.
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        let _ = writeln!(out, "  subgraph cluster_d{di} {{\n    label=\"D{di}\";");
        let _ = write!(
            out,
            "    d{di} [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">"
        );
        for &rc in &rows {
            out.push_str("<tr>");
            for &lc in &cols {
                let cell: Vec<String> = class
                    .iter()
                    .filter(|&&x| g.r[x] == rc && g.l[x] == lc)
                    .map(|&x| html_escape(&g.names[x]))
                    .collect();
                let _ = write!(out, "<td>{}</td>", cell.join(", "));
            }
            out.push_str("</tr>");
        }
        out.push_str("</table>>];\n  }\n");
    }
    for &(u, l) in &g.covers {
        let _ = writeln!(out, "  d{u} -> d{l};");
    }
    out.push_str("}\n");
    out
}
