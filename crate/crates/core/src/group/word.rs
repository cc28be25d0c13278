use serde::{Deserialize, Serialize};

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Letter {
        Letter {
            gen: gen as u32,
            inv: false,
        }
    }

    pub fn neg(gen: usize) -> Letter {
        Letter {
            gen: gen as u32,
            inv: true,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn gen(self) -> usize {
        self.gen as usize
    }

    /// Column index in a coset table with `2 * ngens` columns.
    #[inline]
    pub fn col(self) -> usize {
        2 * self.gen as usize + self.inv as usize
    }
}

pub type Word = Vec<Letter>;

/// Freely reduced form: no adjacent `x x^-1`.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&x.inverse()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|x| x.inverse()).collect()
}

/// Free reduction followed by removal of cancelling first/last letters.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn concat(parts: &[&[Letter]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Replaces each generator by a word; inverse letters map to inverse words.
pub fn substitute(w: &[Letter], image: impl Fn(usize) -> Word) -> Word {
    let mut out = Vec::new();
    for &x in w {
        let img = image(x.gen());
        if x.inv {
            out.extend(inverse(&img));
        } else {
            out.extend(img);
        }
    }
    out
}
