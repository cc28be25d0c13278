//! Finite semigroups given by their multiplication tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `n x n` composition table; element `i * j` is `table[i * n + j]`.
///
/// Entries are always in range (checked on construction). Associativity is
/// not assumed; see [`validate_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulTable {
    n: usize,
    data: Vec<usize>,
    names: Option<Vec<String>>,
}

/// On-disk form: `{ "n": int, "table": [[int; n]; n], "names": [string; n]? }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct TableFile {
    n: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl MulTable {
    pub fn new(n: usize, data: Vec<usize>, names: Option<Vec<String>>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Malformed(format!(
                "table has {} entries, expected {}",
                data.len(),
                n * n
            )));
        }
        if let Some((pos, &value)) = data.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::EntryOutOfRange {
                row: pos / n,
                col: pos % n,
                value,
                n,
            });
        }
        if let Some(names) = &names {
            check_names(names, n)?;
        }
        Ok(MulTable { n, data, names })
    }

    /// Builds a table from a product function on `0..n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                data.push(f(a, b));
            }
        }
        MulTable::new(n, data, None)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        check_names(&names, self.n)?;
        self.names = Some(names);
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        if file.table.len() != file.n {
            return Err(Error::Malformed(format!(
                "table has {} rows, expected {}",
                file.table.len(),
                file.n
            )));
        }
        let mut data = Vec::with_capacity(file.n * file.n);
        for (r, row) in file.table.iter().enumerate() {
            if row.len() != file.n {
                return Err(Error::Malformed(format!(
                    "row {r} has {} entries, expected {}",
                    row.len(),
                    file.n
                )));
            }
            data.extend_from_slice(row);
        }
        MulTable::new(file.n, data, file.names)
    }

    pub fn to_json(&self) -> String {
        let file = TableFile {
            n: self.n,
            table: self.data.chunks(self.n.max(1)).map(<[usize]>::to_vec).collect(),
            names: self.names.clone(),
        };
        serde_json::to_string(&file).expect("table serializes")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data[a * self.n + b]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Label of element `i`, falling back to its index.
    pub fn name(&self, i: usize) -> String {
        match &self.names {
            Some(names) => names[i].clone(),
            None => i.to_string(),
        }
    }

    /// Resolves a label (or a decimal index when the table is unnamed).
    pub fn index_of(&self, name: &str) -> Result<usize> {
        match &self.names {
            Some(names) => names
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::UnknownElement(name.to_string())),
            None => name
                .parse::<usize>()
                .ok()
                .filter(|&i| i < self.n)
                .ok_or_else(|| Error::UnknownElement(name.to_string())),
        }
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// Product of a nonempty sequence of elements.
    pub fn product(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }

    /// The opposite semigroup: `a *op b = b * a`.
    pub fn opposite(&self) -> MulTable {
        let mut t = MulTable::from_fn(self.n, |a, b| self.mul(b, a)).expect("same range");
        t.names = self.names.clone();
        t
    }

    /// Checks associativity, returning the first violation as an error.
    pub fn ensure_associative(&self) -> Result<()> {
        match first_violation(self) {
            Some([a, b, c]) => Err(Error::NotAssociative { a, b, c }),
            None => Ok(()),
        }
    }
}

fn check_names(names: &[String], n: usize) -> Result<()> {
    if names.len() != n {
        return Err(Error::Malformed(format!(
            "{} names given for {n} elements",
            names.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::Malformed(format!("duplicate element name `{name}`")));
        }
    }
    Ok(())
}

fn first_violation(t: &MulTable) -> Option<[usize; 3]> {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            let ab = t.mul(a, b);
            for c in 0..n {
                if t.mul(ab, c) != t.mul(a, t.mul(b, c)) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Triples `(a, b, c)` with `(ab)c != a(bc)`.
    pub violations: Vec<[usize; 3]>,
    pub associative: bool,
    /// Every element idempotent.
    pub band: bool,
    pub idempotents: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associative
    }
}

pub fn validate_table(t: &MulTable) -> ValidationReport {
    let n = t.len();
    let mut violations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = t.mul(a, b);
            for c in 0..n {
                if t.mul(ab, c) != t.mul(a, t.mul(b, c)) {
                    violations.push([a, b, c]);
                }
            }
        }
    }
    let idempotents = t.idempotents();
    ValidationReport {
        associative: violations.is_empty(),
        band: idempotents.len() == n,
        violations,
        idempotents,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn rectangular_band_is_a_valid_band() {
        let r = validate_table(&corpus::rectangular_band(2, 2));
        assert!(r.associative && r.band);
    }

    #[test]
    fn left_zero_is_a_valid_band() {
        let t = corpus::left_zero(2);
        let r = validate_table(&t);
        assert!(r.associative && r.band);
        assert_eq!(t.mul(0, 1), 0);
    }

    #[test]
    fn forged_entry_is_reported() {
        // 3-chain semilattice 0 < 1 < 2 with one cell broken.
        let mut data: Vec<usize> = (0..9).map(|k| (k / 3).min(k % 3)).collect();
        data[2] = 2; // 0*2 = 2 instead of 0
        let t = MulTable::new(3, data, None).unwrap();
        let report = validate_table(&t);
        // Independent scan of all 27 triples.
        let mut expected = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let l = t.mul(t.mul(a, b), c);
                    let r = t.mul(a, t.mul(b, c));
                    if l != r {
                        expected.push([a, b, c]);
                    }
                }
            }
        }
        assert!(!expected.is_empty());
        assert_eq!(report.violations, expected);
        assert!(!report.associative);
    }

    #[test]
    fn out_of_range_entry_names_the_cell() {
        let err = MulTable::from_json(r#"{"n":2,"table":[[0,1],[1,5]]}"#).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 5,
                n: 2
            }
        );
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matches!(
            MulTable::from_json(r#"{"n":2,"table":[[0,1],[1]]}"#),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn json_round_trip_keeps_names() {
        let t = corpus::rectangular_band(2, 2);
        let back = MulTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.index_of("e21").unwrap(), 2);
    }
}
