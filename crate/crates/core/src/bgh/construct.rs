//! `W(S)`, `T(S, V, I)` and the band `B_{G,H}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::green::green_data;
use crate::group::NormalizedPresentation;
use crate::table::{validate_table, MulTable};

/// `S ∪ S' ∪ S'' ∪ {0}`: copies `x`, `|S| + x`, `2|S| + x`, then `0` at `3|S|`.
pub fn build_w(t: &MulTable) -> MulTable {
    let n = t.len();
    let zero = 3 * n;
    let table = MulTable::from_fn(3 * n + 1, |x, y| {
        if x == zero || y == zero {
            return zero;
        }
        let (cx, cy) = (x / n, y / n);
        let p = t.mul(x % n, y % n);
        match (cx, cy) {
            (0, c) | (c, 0) => c * n + p,
            (a, b) if a == b => a * n + p,
            _ => zero,
        }
    })
    .expect("entries in range");
    // Input names may already carry primes; later clashes get a `~` appended.
    let mut seen = std::collections::HashSet::new();
    let mut names: Vec<String> = Vec::with_capacity(3 * n + 1);
    let wanted = ["", "'", "''"]
        .iter()
        .flat_map(|suffix| (0..n).map(move |x| format!("{}{suffix}", t.name(x))))
        .chain(std::iter::once("0".to_string()));
    for mut name in wanted {
        if names.len() == 3 * n && seen.contains(&name) {
            name = "zero".into();
        }
        while !seen.insert(name.clone()) {
            name.push('~');
        }
        names.push(name);
    }
    table.with_names(names).expect("one name per element")
}

/// The subsemigroup `V ∪ I' ∪ I'' ∪ {0}` of `W(S)`, listed in that order with
/// `V` and `I` each kept in `S` order.
pub fn build_t(t: &MulTable, v: &[usize], ideal: &[usize]) -> Result<MulTable> {
    let n = t.len();
    let mut in_v = vec![false; n];
    let mut in_i = vec![false; n];
    for (set, flags) in [(v, &mut in_v), (ideal, &mut in_i)] {
        for &x in set {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, size: n });
            }
            flags[x] = true;
        }
    }
    for x in (0..n).filter(|&x| in_v[x]) {
        for y in (0..n).filter(|&y| in_v[y]) {
            if !in_v[t.mul(x, y)] {
                return Err(Error::Precondition(format!(
                    "V is not closed: {} * {} = {}",
                    t.name(x),
                    t.name(y),
                    t.name(t.mul(x, y))
                )));
            }
        }
    }
    for x in (0..n).filter(|&x| in_i[x]) {
        for y in 0..n {
            for p in [t.mul(x, y), t.mul(y, x)] {
                if !in_i[p] {
                    return Err(Error::Precondition(format!(
                        "I is not an ideal: {} and {} give {}",
                        t.name(x),
                        t.name(y),
                        t.name(p)
                    )));
                }
            }
        }
    }
    let w = build_w(t);
    let mut keep: Vec<usize> = (0..n).filter(|&x| in_v[x]).collect();
    keep.extend((0..n).filter(|&x| in_i[x]).map(|x| n + x));
    keep.extend((0..n).filter(|&x| in_i[x]).map(|x| 2 * n + x));
    keep.push(3 * n);
    let mut pos = vec![usize::MAX; 3 * n + 1];
    for (k, &x) in keep.iter().enumerate() {
        pos[x] = k;
    }
    let mut data = Vec::with_capacity(keep.len() * keep.len());
    for &x in &keep {
        for &y in &keep {
            let p = pos[w.mul(x, y)];
            if p == usize::MAX {
                return Err(Error::Internal(format!("T is not closed at ({}, {})", w.name(x), w.name(y))));
            }
            data.push(p);
        }
    }
    let names = keep.iter().map(|&x| w.name(x)).collect();
    MulTable::new(keep.len(), data, Some(names))
}

/// Elements of `L_G`, with `A_1` indexed by `0 = 1` and `k = A[k-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "kebab-case")]
pub enum LgKind {
    /// `e_a` for `a ∈ A_1`; `e_1 = e_{1bar}`.
    Gen(usize),
    /// `e_{abar}` for `a ∈ A`.
    Bar(usize),
    /// `e_r` for the relation `r`.
    Rel(usize),
}

/// Role of an element of `B_{G,H}`. Pairs hold indices into `I` and `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Tag {
    Lg { e: LgKind },
    Kh { i: usize, j: usize },
    KgPrime { i: usize, j: usize },
    KgDouble { i: usize, j: usize },
    Zero,
}

/// Which copy of `K_G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Prime,
    Double,
}

impl Tag {
    pub fn kg(side: Side, i: usize, j: usize) -> Tag {
        match side {
            Side::Prime => Tag::KgPrime { i, j },
            Side::Double => Tag::KgDouble { i, j },
        }
    }

    /// The K_G copy and pair, if any.
    pub fn kg_pair(self) -> Option<(Side, usize, usize)> {
        match self {
            Tag::KgPrime { i, j } => Some((Side::Prime, i, j)),
            Tag::KgDouble { i, j } => Some((Side::Double, i, j)),
            _ => None,
        }
    }

    /// Index of the D-class in the order `L_G, K_H, K_G', K_G'', 0`.
    pub fn d_class(self) -> usize {
        match self {
            Tag::Lg { .. } => 0,
            Tag::Kh { .. } => 1,
            Tag::KgPrime { .. } => 2,
            Tag::KgDouble { .. } => 3,
            Tag::Zero => 4,
        }
    }
}

/// A transformation pair: `σ` on `I` (left), `τ` on `J` (right).
pub type Transform = (Vec<usize>, Vec<usize>);

/// The band `B_{G,H}` with element roles.
#[derive(Debug, Clone)]
pub struct BghBand {
    pub table: MulTable,
    pub tags: Vec<Tag>,
    pub presentation: NormalizedPresentation,
    /// Generators of `H`, closed under inverses.
    pub subgroup: Vec<usize>,
    index: HashMap<Tag, usize>,
}

/// Names that would make element names ambiguous.
fn check_generator_name(g: &str) -> Result<()> {
    let bad = g.is_empty()
        || g == "1"
        || g == "inf"
        || g == "0"
        || g.ends_with("bar")
        || g.chars().any(|c| c == '.' || c == ',' || c == '\'' || c.is_whitespace());
    if bad {
        return Err(Error::Precondition(format!("generator name `{g}` cannot be used in B_{{G,H}} labels")));
    }
    Ok(())
}

impl BghBand {
    /// `|A|`.
    pub fn n(&self) -> usize {
        self.presentation.generators.len()
    }

    pub fn i_len(&self) -> usize {
        2 * self.n() + 2
    }

    pub fn j_len(&self) -> usize {
        self.n() + 2
    }

    /// `I = A_1 ∪ bar(A_1)`: `0..=n` then `n+1+k`.
    pub fn i_label(&self, i: usize) -> String {
        let n = self.n();
        match i {
            0 => "1".into(),
            k if k <= n => self.presentation.generators[k - 1].clone(),
            k if k == n + 1 => "1bar".into(),
            k => format!("{}bar", self.presentation.generators[k - n - 2]),
        }
    }

    /// `J = A_1 ∪ {inf}`.
    pub fn j_label(&self, j: usize) -> String {
        match j {
            0 => "1".into(),
            k if k <= self.n() => self.presentation.generators[k - 1].clone(),
            _ => "inf".into(),
        }
    }

    pub fn row_labels(&self) -> Vec<String> {
        (0..self.i_len()).map(|i| self.i_label(i)).collect()
    }

    pub fn col_labels(&self) -> Vec<String> {
        (0..self.j_len()).map(|j| self.j_label(j)).collect()
    }

    /// `∞` in `J`.
    pub fn inf(&self) -> usize {
        self.n() + 1
    }

    /// `abar` in `I` for `a ∈ A_1` given as an `A_1` index.
    pub fn bar(&self, a: usize) -> usize {
        self.n() + 1 + a
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn index(&self, t: Tag) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn tag(&self, x: usize) -> Tag {
        self.tags[x]
    }

    pub fn zero(&self) -> usize {
        self.tags.len() - 1
    }

    pub fn name(&self, x: usize) -> String {
        self.table.name(x)
    }

    /// `B_1` as `J` indices.
    pub fn b1(&self) -> Vec<usize> {
        let mut out = vec![0];
        out.extend(self.subgroup.iter().map(|&b| b + 1));
        out
    }

    /// `(σ, τ)` of an element of `L_G ∪ K_H ∪ K_G`; `None` for `0`.
    pub fn transform(&self, x: usize) -> Option<Transform> {
        transform_of(self.n(), &self.presentation.triples, self.tags[x])
    }

    /// Product computed from the case rules on element roles.
    pub fn rule_product(&self, x: usize, y: usize) -> usize {
        let t = |x: usize| self.transform(x);
        let tag = match (self.tags[x], self.tags[y]) {
            (Tag::Zero, _) | (_, Tag::Zero) => Tag::Zero,
            (Tag::Lg { .. }, Tag::Lg { .. }) => self.tags[x],
            (Tag::Lg { .. }, Tag::Kh { i, j }) => Tag::Kh { i: t(x).expect("L_G").0[i], j },
            (Tag::Kh { i, j }, Tag::Lg { .. }) => Tag::Kh { i, j: t(y).expect("L_G").1[j] },
            (Tag::Kh { i, .. }, Tag::Kh { j, .. }) => Tag::Kh { i, j },
            (Tag::Lg { .. }, other) => {
                let (s, i, j) = other.kg_pair().expect("K_G");
                Tag::kg(s, t(x).expect("L_G").0[i], j)
            }
            (other, Tag::Lg { .. }) => {
                let (s, i, j) = other.kg_pair().expect("K_G");
                Tag::kg(s, i, t(y).expect("L_G").1[j])
            }
            (Tag::Kh { i, .. }, other) => {
                let (s, _, j) = other.kg_pair().expect("K_G");
                Tag::kg(s, i, j)
            }
            (other, Tag::Kh { j, .. }) => {
                let (s, i, _) = other.kg_pair().expect("K_G");
                Tag::kg(s, i, j)
            }
            (a, b) => {
                let (sa, i, _) = a.kg_pair().expect("K_G");
                let (sb, _, j) = b.kg_pair().expect("K_G");
                if sa == sb {
                    Tag::kg(sa, i, j)
                } else {
                    Tag::Zero
                }
            }
        };
        self.index(tag).expect("rule product is an element")
    }

    /// Compares the rule-based product with the table on every cell.
    pub fn check_multiplication(&self) -> Result<()> {
        for x in 0..self.len() {
            for y in 0..self.len() {
                let r = self.rule_product(x, y);
                if r != self.table.mul(x, y) {
                    return Err(Error::Internal(format!(
                        "{} * {}: rules give {}, table gives {}",
                        self.name(x),
                        self.name(y),
                        self.name(r),
                        self.name(self.table.mul(x, y))
                    )));
                }
            }
        }
        Ok(())
    }

    /// Band axioms and the five-class J-order `L_G > K_H > K_G', K_G'' > 0`.
    pub fn check_structure(&self) -> Result<()> {
        let v = validate_table(&self.table);
        if !v.associative || !v.band {
            return Err(Error::Internal("B_{G,H} is not a band".into()));
        }
        let g = green_data(&self.table)?;
        if g.d_classes.len() != 5 {
            return Err(Error::Internal(format!("expected 5 D-classes, found {}", g.d_classes.len())));
        }
        for (x, &d) in g.d.iter().enumerate() {
            let same = g.d_classes[d].iter().all(|&y| self.tags[y].d_class() == self.tags[x].d_class());
            if !same || g.d_classes[d].len() != self.tags.iter().filter(|t| t.d_class() == self.tags[x].d_class()).count() {
                return Err(Error::Internal(format!("D-class of {} does not match its role", self.name(x))));
            }
        }
        let role = |c: usize| self.tags[g.d_classes[c][0]].d_class();
        let mut covers: Vec<(usize, usize)> = g.covers.iter().map(|&(u, l)| (role(u), role(l))).collect();
        covers.sort_unstable();
        if covers != BGH_COVERS {
            return Err(Error::Internal(format!("unexpected cover relation {covers:?}")));
        }
        Ok(())
    }

    /// Sidecar describing how the table was built.
    pub fn provenance(&self) -> Provenance {
        Provenance {
            presentation: self.presentation.to_json_value(),
            subgroup: self.subgroup.iter().map(|&b| self.presentation.generators[b].clone()).collect(),
            tags: self.tags.clone(),
        }
    }

    /// Rebuilds from a sidecar and checks the stored table against it.
    pub fn from_parts(table: &MulTable, prov: &Provenance) -> Result<Self> {
        let np = NormalizedPresentation::from_json(&prov.presentation.to_string())?;
        let mut np = np;
        np.subgroup = prov
            .subgroup
            .iter()
            .map(|s| {
                np.generators
                    .iter()
                    .position(|g| g == s)
                    .ok_or_else(|| Error::UnknownElement(s.clone()))
            })
            .collect::<Result<_>>()?;
        let band = build_bgh(&np)?;
        if band.tags != prov.tags {
            return Err(Error::Malformed("element tags do not match the rebuilt band".into()));
        }
        if band.table.len() != table.len() || (0..table.len()).any(|x| (0..table.len()).any(|y| band.table.mul(x, y) != table.mul(x, y))) {
            return Err(Error::Malformed("table does not match the rebuilt band".into()));
        }
        Ok(band)
    }
}

/// Covers `(upper, lower)` in role order.
pub const BGH_COVERS: [(usize, usize); 5] = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub presentation: serde_json::Value,
    pub subgroup: Vec<String>,
    pub tags: Vec<Tag>,
}

fn transform_of(n: usize, triples: &[[usize; 3]], tag: Tag) -> Option<Transform> {
    let (il, jl) = (2 * n + 2, n + 2);
    let lg = |top: usize, bottom: usize, t: usize| -> Transform {
        let sigma = (0..il).map(|i| if i <= n { top } else { bottom }).collect();
        let tau = (0..jl).map(|j| if j <= n { j } else { t }).collect();
        (sigma, tau)
    };
    let constant = |i: usize, j: usize| -> Transform { (vec![i; il], vec![j; jl]) };
    Some(match tag {
        Tag::Lg { e: LgKind::Gen(a) } => lg(0, n + 1 + a, a),
        Tag::Lg { e: LgKind::Bar(a) } => lg(a, n + 1 + a, 0),
        Tag::Lg { e: LgKind::Rel(r) } => {
            let [a, b, c] = triples[r];
            lg(1 + b, n + 2 + c, 1 + a)
        }
        Tag::Kh { i, j } | Tag::KgPrime { i, j } | Tag::KgDouble { i, j } => constant(i, j),
        Tag::Zero => return None,
    })
}

/// `(σ1, τ1)(σ2, τ2) = (σ1 σ2, τ1 τ2)` with `σ` acting on the left and `τ` on the right.
pub fn compose(x: &Transform, y: &Transform) -> Transform {
    (
        y.0.iter().map(|&i| x.0[i]).collect(),
        x.1.iter().map(|&j| y.1[j]).collect(),
    )
}

/// `B_{G,H} = T(B_G, K_H ∪ L_G, K_G)` for a normalized presentation and its subgroup.
pub fn build_bgh(np: &NormalizedPresentation) -> Result<BghBand> {
    let n = np.generators.len();
    for g in &np.generators {
        check_generator_name(g)?;
    }
    for t in &np.triples {
        if t.iter().any(|&g| g >= n) {
            return Err(Error::Precondition("relation uses an unknown generator".into()));
        }
    }
    if let Some(&b) = np.subgroup.iter().find(|&&b| b >= n) {
        return Err(Error::IndexOutOfRange { index: b, size: n });
    }
    let (il, jl) = (2 * n + 2, n + 2);
    let mut subgroup = np.subgroup.clone();
    subgroup.sort_unstable();
    subgroup.dedup();

    // B_G: L_G then K_G, i-major.
    let mut lg: Vec<LgKind> = (0..=n).map(LgKind::Gen).collect();
    lg.extend((1..=n).map(LgKind::Bar));
    lg.extend((0..np.triples.len()).map(LgKind::Rel));
    let mut s_tags: Vec<Tag> = lg.iter().map(|&e| Tag::Lg { e }).collect();
    for i in 0..il {
        for j in 0..jl {
            s_tags.push(Tag::Kh { i, j });
        }
    }
    let maps: Vec<Transform> = s_tags
        .iter()
        .map(|&t| transform_of(n, &np.triples, t).expect("not zero"))
        .collect();
    let mut lookup: HashMap<&Transform, usize> = HashMap::new();
    for (k, m) in maps.iter().enumerate() {
        if let Some(old) = lookup.insert(m, k) {
            return Err(Error::Precondition(format!(
                "idempotents {old} and {k} of L_G coincide; relations must be distinct"
            )));
        }
    }
    let mut data = Vec::with_capacity(maps.len() * maps.len());
    for x in &maps {
        for y in &maps {
            let p = compose(x, y);
            let k = *lookup
                .get(&p)
                .ok_or_else(|| Error::Internal("B_G is not closed under composition".into()))?;
            data.push(k);
        }
    }
    let label = |i: usize, j: usize| -> String {
        let il = match i {
            0 => "1".to_string(),
            k if k <= n => np.generators[k - 1].clone(),
            k if k == n + 1 => "1bar".into(),
            k => format!("{}bar", np.generators[k - n - 2]),
        };
        let jl = match j {
            0 => "1".to_string(),
            k if k <= n => np.generators[k - 1].clone(),
            _ => "inf".into(),
        };
        format!("{il}.{jl}")
    };
    let names: Vec<String> = s_tags
        .iter()
        .map(|t| match *t {
            Tag::Lg { e: LgKind::Gen(0) } => "e1".into(),
            Tag::Lg { e: LgKind::Gen(a) } => format!("e{}", np.generators[a - 1]),
            Tag::Lg { e: LgKind::Bar(a) } => format!("e{}bar", np.generators[a - 1]),
            Tag::Lg { e: LgKind::Rel(r) } => format!("er{}", r + 1),
            Tag::Kh { i, j } => label(i, j),
            _ => unreachable!("B_G has no other roles"),
        })
        .collect();
    let bg = MulTable::new(maps.len(), data, Some(names))?;

    let mut b1 = vec![0];
    b1.extend(subgroup.iter().map(|&b| b + 1));
    let k0 = lg.len();
    let mut v: Vec<usize> = (0..k0).collect();
    for i in 0..=n {
        for &j in &b1 {
            v.push(k0 + i * jl + j);
        }
    }
    v.sort_unstable();
    let ideal: Vec<usize> = (k0..maps.len()).collect();
    let table = build_t(&bg, &v, &ideal)?;

    let mut tags: Vec<Tag> = v.iter().map(|&x| s_tags[x]).collect();
    for side in [Side::Prime, Side::Double] {
        for &x in &ideal {
            let Tag::Kh { i, j } = s_tags[x] else { unreachable!() };
            tags.push(Tag::kg(side, i, j));
        }
    }
    tags.push(Tag::Zero);
    let index = tags.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let mut np = np.clone();
    np.subgroup = subgroup.clone();
    let band = BghBand {
        table,
        tags,
        presentation: np,
        subgroup,
        index,
    };
    band.check_structure()?;
    Ok(band)
}
