//! Biordered sets: idempotents with products defined exactly on basic pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::MulTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BiorderSource {
    /// `idempotents[k]` is the table element behind biorder element `k`.
    ExtractedFromTable { idempotents: Vec<usize> },
    GivenDirectly,
}

/// A partial algebra `(E, *)` over `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biorder {
    m: usize,
    prod: Vec<Option<u32>>,
    names: Vec<String>,
    source: BiorderSource,
}

#[derive(Debug, Serialize, Deserialize)]
struct ProductEntry {
    e: usize,
    f: usize,
    ef: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct BiorderFile {
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    products: Vec<ProductEntry>,
}

impl Biorder {
    /// Builds a biorder from explicit products. Diagonal pairs are added
    /// when missing.
    pub fn from_products(
        m: usize,
        products: impl IntoIterator<Item = (usize, usize, usize)>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut prod = vec![None; m * m];
        for (e, f, g) in products {
            for x in [e, f, g] {
                if x >= m {
                    return Err(Error::IndexOutOfRange { index: x, size: m });
                }
            }
            let slot = &mut prod[e * m + f];
            if slot.is_some_and(|old| old as usize != g) {
                return Err(Error::Malformed(format!(
                    "conflicting products given for ({e}, {f})"
                )));
            }
            *slot = Some(g as u32);
        }
        for e in 0..m {
            prod[e * m + e].get_or_insert(e as u32);
        }
        let names = match names {
            Some(names) => {
                if names.len() != m {
                    return Err(Error::Malformed(format!(
                        "{} names given for {m} idempotents",
                        names.len()
                    )));
                }
                let mut seen = std::collections::HashSet::new();
                if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
                    return Err(Error::Malformed(format!("duplicate name `{dup}`")));
                }
                names
            }
            None => (0..m).map(|i| i.to_string()).collect(),
        };
        Ok(Biorder {
            m,
            prod,
            names,
            source: BiorderSource::GivenDirectly,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: BiorderFile = serde_json::from_str(text)?;
        Biorder::from_products(
            file.m,
            file.products.iter().map(|p| (p.e, p.f, p.ef)),
            file.names,
        )
    }

    pub fn to_json(&self) -> String {
        let file = BiorderFile {
            m: self.m,
            names: Some(self.names.clone()),
            products: self
                .basic_pairs()
                .map(|(e, f, g)| ProductEntry { e, f, ef: g })
                .collect(),
        };
        serde_json::to_string(&file).expect("biorder serializes")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// The product `e * f`, or `None` when `(e, f)` is not basic.
    #[inline]
    pub fn product(&self, e: usize, f: usize) -> Option<usize> {
        self.prod[e * self.m + f].map(|g| g as usize)
    }

    /// `e * f == g`, with an undefined product counting as false.
    #[inline]
    pub fn eq(&self, e: usize, f: usize, g: usize) -> bool {
        self.product(e, f) == Some(g)
    }

    pub fn is_basic(&self, e: usize, f: usize) -> bool {
        self.product(e, f).is_some()
    }

    /// All defined products `(e, f, e*f)` in row-major order.
    pub fn basic_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let m = self.m;
        self.prod
            .iter()
            .enumerate()
            .filter_map(move |(k, p)| p.map(|g| (k / m, k % m, g as usize)))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn source(&self) -> &BiorderSource {
        &self.source
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Parses a comma-separated list of element names. The empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split(',').map(|s| self.index_of(s.trim())).collect()
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        w.iter().map(|&e| self.name(e)).collect::<Vec<_>>().join(",")
    }

    /// Checks that every letter of `w` is an element.
    pub fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().find(|&&e| e >= self.m) {
            Some(&e) => Err(Error::IndexOutOfRange {
                index: e,
                size: self.m,
            }),
            None => Ok(()),
        }
    }

    /// The dual biorder: `e *' f = f * e`.
    pub fn dual(&self) -> Biorder {
        let m = self.m;
        let mut prod = vec![None; m * m];
        for e in 0..m {
            for f in 0..m {
                prod[e * m + f] = self.prod[f * m + e];
            }
        }
        Biorder {
            m,
            prod,
            names: self.names.clone(),
            source: self.source.clone(),
        }
    }
}

/// The biorder of idempotents of a semigroup table.
pub fn extract_biorder(t: &MulTable) -> Result<Biorder> {
    t.ensure_associative()?;
    let idem = t.idempotents();
    let m = idem.len();
    let mut local = vec![usize::MAX; t.len()];
    for (k, &x) in idem.iter().enumerate() {
        local[x] = k;
    }
    let mut prod = vec![None; m * m];
    for (a, &e) in idem.iter().enumerate() {
        for (b, &f) in idem.iter().enumerate() {
            let ef = t.mul(e, f);
            let fe = t.mul(f, e);
            if [ef, fe].iter().any(|&x| x == e || x == f) {
                let g = local[ef];
                if g == usize::MAX {
                    return Err(Error::Internal(format!(
                        "product of basic pair ({e}, {f}) is not idempotent"
                    )));
                }
                prod[a * m + b] = Some(g as u32);
            }
        }
    }
    Ok(Biorder {
        m,
        prod,
        names: idem.iter().map(|&x| t.name(x)).collect(),
        source: BiorderSource::ExtractedFromTable { idempotents: idem },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiorderViolation {
    pub e: usize,
    pub f: usize,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiorderReport {
    pub violations: Vec<BiorderViolation>,
}

impl BiorderReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Necessary-condition checks on a biorder; see the module docs for the list.
pub fn validate_biorder(b: &Biorder) -> BiorderReport {
    let m = b.len();
    let mut violations = Vec::new();
    let mut flag = |e, f, kind: &str| {
        violations.push(BiorderViolation {
            e,
            f,
            kind: kind.to_string(),
        })
    };
    for e in 0..m {
        if !b.eq(e, e, e) {
            flag(e, e, "diagonal product missing or not e");
        }
    }
    for e in 0..m {
        for f in 0..m {
            let Some(g) = b.product(e, f) else {
                continue;
            };
            if e == f {
                continue;
            }
            if !b.is_basic(f, e) {
                flag(e, f, "basic pair without reverse product");
                continue;
            }
            let fe = b.product(f, e).expect("checked");
            if ![g, fe].iter().any(|&x| x == e || x == f) {
                flag(e, f, "neither e*f nor f*e lies in {e, f}");
            }
            let r_side = b.eq(e, g, g) && b.eq(g, e, e);
            let l_side = b.eq(g, f, g) && b.eq(f, g, f);
            if !(r_side || l_side || g == e || g == f) {
                flag(e, f, "product not related to a factor by the basic-pair law");
            }
            if !b.eq(g, g, g) {
                flag(e, f, "product is not idempotent");
            }
        }
    }
    BiorderReport { violations }
}

/// Compares an extracted biorder with the table it came from.
pub fn check_against_table(b: &Biorder, t: &MulTable) -> Result<()> {
    let BiorderSource::ExtractedFromTable { idempotents } = b.source() else {
        return Err(Error::Precondition("biorder was not extracted from a table".into()));
    };
    for (a, &e) in idempotents.iter().enumerate() {
        for (c, &f) in idempotents.iter().enumerate() {
            let (ef, fe) = (t.mul(e, f), t.mul(f, e));
            let basic = [ef, fe].iter().any(|&x| x == e || x == f);
            match (basic, b.product(a, c)) {
                (true, Some(g)) if idempotents[g] == ef => {}
                (false, None) => {}
                _ => {
                    return Err(Error::Internal(format!(
                        "biorder disagrees with table at ({e}, {f})"
                    )))
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn rectangular_band_basic_pairs() {
        let t = corpus::rectangular_band(2, 2);
        let b = extract_biorder(&t).unwrap();
        // Brute force over the 16 ordered pairs.
        let mut expected = 0;
        for e in 0..4 {
            for f in 0..4 {
                let (ef, fe) = (t.mul(e, f), t.mul(f, e));
                if ef == e || ef == f || fe == e || fe == f {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 12);
        assert_eq!(b.basic_pairs().count(), 12);
        let e11 = b.index_of("e11").unwrap();
        let e12 = b.index_of("e12").unwrap();
        let e22 = b.index_of("e22").unwrap();
        assert_eq!(b.product(e11, e12), Some(e12));
        assert_eq!(b.product(e11, e22), None);
        assert_eq!(b.product(e22, e11), None);
        assert!(validate_biorder(&b).is_clean());
        check_against_table(&b, &t).unwrap();
    }

    #[test]
    fn semilattice_all_pairs_basic() {
        let b = extract_biorder(&corpus::semilattice_chain(2)).unwrap();
        assert_eq!(b.basic_pairs().count(), 4);
    }

    #[test]
    fn left_zero_and_its_dual() {
        let b = extract_biorder(&corpus::left_zero(2)).unwrap();
        let (x, y) = (b.index_of("x").unwrap(), b.index_of("y").unwrap());
        assert_eq!(b.product(x, y), Some(x));
        let d = b.dual();
        assert_eq!(d.product(x, y), Some(y));
        assert_eq!(d.dual(), b);
    }

    #[test]
    fn missing_closure_flagged() {
        // 0*1 = 2 with 2*2 undefined is impossible after diagonal filling, so
        // instead make the product land on a non-idempotent by removing its diagonal.
        let mut b = Biorder::from_products(3, [(0, 1, 0), (1, 0, 0)], None).unwrap();
        assert!(validate_biorder(&b).is_clean());
        b.prod[2 * 3 + 2] = None;
        let report = validate_biorder(&b);
        assert!(report.violations.iter().any(|v| v.e == 2 && v.f == 2));
    }

    #[test]
    fn product_not_idempotent_flagged() {
        let mut b = Biorder::from_products(3, [(0, 1, 2), (1, 0, 0), (0, 2, 2), (2, 0, 0)], None)
            .unwrap();
        b.prod[2 * 3 + 2] = None;
        let report = validate_biorder(&b);
        assert!(report
            .violations
            .iter()
            .any(|v| (v.e, v.f) == (0, 1) && v.kind.contains("idempotent")));
    }

    #[test]
    fn json_round_trip_emits_diagonal() {
        let text = r#"{"m":2,"names":["x","y"],"products":[{"e":0,"f":1,"ef":0},{"e":1,"f":0,"ef":1}]}"#;
        let b = Biorder::from_json(text).unwrap();
        assert_eq!(b.product(1, 1), Some(1));
        let back = Biorder::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
        assert!(b.to_json().contains(r#"{"e":0,"f":0,"ef":0}"#));
    }

    #[test]
    fn parse_word_resolves_names() {
        let b = extract_biorder(&corpus::rectangular_band(2, 2)).unwrap();
        assert_eq!(b.parse_word("e11, e22").unwrap(), vec![0, 3]);
        assert!(b.parse_word("").unwrap().is_empty());
        assert!(matches!(b.parse_word("e33"), Err(Error::UnknownElement(_))));
    }
}
