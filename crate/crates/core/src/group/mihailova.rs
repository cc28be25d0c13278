//! Fibre products `Π ≤ F(A) × F(A)` over a presented group `⟨A | R⟩`.

use super::presentation::GroupPresentation;
use super::word::{inverse, Letter, Word};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct Mihailova {
    /// `F(A) × F(A)`: generators `a_1` (left copy) then `a_2` (right copy).
    pub group: GroupPresentation,
    /// `(a, a)` for each generator, then `(r, 1)` for each relator.
    pub bgens: Vec<Word>,
    /// `bgens` followed by their inverses.
    pub closed: Vec<Word>,
}

pub fn mihailova(delta: &GroupPresentation) -> Result<Mihailova> {
    delta.check()?;
    let n = delta.ngens();
    let mut generators: Vec<String> = delta.generators.iter().map(|a| format!("{a}_1")).collect();
    generators.extend(delta.generators.iter().map(|a| format!("{a}_2")));
    let mut group = GroupPresentation::new(generators);
    for x in 0..n {
        for y in 0..n {
            let (x1, y2) = (Letter::pos(x), Letter::pos(n + y));
            group.add_relation(vec![x1, y2], vec![y2, x1]);
        }
    }
    group.check()?;
    let mut bgens: Vec<Word> = (0..n).map(|a| vec![Letter::pos(a), Letter::pos(n + a)]).collect();
    bgens.extend(delta.relators());
    let mut closed = bgens.clone();
    closed.extend(bgens.iter().map(|w| inverse(w)));
    Ok(Mihailova { group, bgens, closed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let d = GroupPresentation::from_json(r#"{"generators":["x"],"relations":[[["x","x"],[]]]}"#).unwrap();
        let m = mihailova(&d).unwrap();
        assert_eq!(m.bgens.len(), 2);
        assert_eq!(m.group.format_word(&m.bgens[0]), "x_1,x_2");
        assert_eq!(m.group.format_word(&m.bgens[1]), "x_1,x_1");
        assert_eq!(m.closed.len(), 4);

        let free = GroupPresentation::new(vec!["x".into(), "y".into()]);
        assert_eq!(mihailova(&free).unwrap().bgens.len(), 2);

        let comm = GroupPresentation::from_json(r#"{"generators":["x","y"],"relations":[[["x","y","x^-1","y^-1"],[]]]}"#).unwrap();
        let m = mihailova(&comm).unwrap();
        assert_eq!(m.bgens.len(), 3);
        assert_eq!(m.group.relations.len(), 4);
    }
}
