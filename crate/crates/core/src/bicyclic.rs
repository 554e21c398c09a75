//! The bicyclic monoid `⟨p, q | pq = 1⟩` in normal form `q^k p^l`, words over
//! `{a, b}` and the embedding into partial isometries.
//!
//! Letters map as `a ↦ α ↦ p` and `b ↦ β ↦ q`, so the word `ab` is the
//! identity.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::element::PartialIso;
use crate::error::{Error, Result};

/// `q^k p^l`, realized as `β^k α^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BicyclicNF {
    pub k: u64,
    pub l: u64,
}

impl BicyclicNF {
    pub const ONE: BicyclicNF = BicyclicNF { k: 0, l: 0 };

    pub fn new(k: u64, l: u64) -> Self {
        BicyclicNF { k, l }
    }

    pub fn embed(self) -> PartialIso {
        PartialIso::from_canonical((1..=self.k).collect(), self.l as i64 - self.k as i64)
    }

    /// Inverse of [`BicyclicNF::embed`] on noise-free elements.
    pub fn recognize(g: &PartialIso) -> Option<BicyclicNF> {
        if !g.is_bicyclic() {
            return None;
        }
        let k = g.nd() - 1;
        let l = k as i64 + g.shift();
        // the shift invariant already forces l ≥ 0
        debug_assert!(l >= 0);
        (l >= 0).then_some(BicyclicNF { k, l: l as u64 })
    }
}

/// `q^k p^l · q^m p^n = q^{k+m−min(l,m)} p^{l+n−min(l,m)}`.
impl Mul for BicyclicNF {
    type Output = BicyclicNF;

    fn mul(self, rhs: BicyclicNF) -> BicyclicNF {
        let m = self.l.min(rhs.k);
        BicyclicNF {
            k: self.k + rhs.k - m,
            l: self.l + rhs.l - m,
        }
    }
}

impl fmt::Display for BicyclicNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}p^{}", self.k, self.l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn image(self) -> PartialIso {
        match self {
            Letter::A => PartialIso::alpha(),
            Letter::B => PartialIso::beta(),
        }
    }

    fn normal_form(self) -> BicyclicNF {
        match self {
            Letter::A => BicyclicNF::new(0, 1),
            Letter::B => BicyclicNF::new(1, 0),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BicyclicWord(pub Vec<Letter>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

impl BicyclicWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn normalize(&self) -> BicyclicNF {
        self.0
            .iter()
            .fold(BicyclicNF::ONE, |acc, l| acc * l.normal_form())
    }

    /// Applies `ab → ε` at the chosen end until no redex remains.
    pub fn rewrite(&self, strategy: Strategy) -> BicyclicWord {
        let mut w = self.0.clone();
        loop {
            let is_redex = |p: &[Letter]| p[0] == Letter::A && p[1] == Letter::B;
            let at = match strategy {
                Strategy::Leftmost => w.windows(2).position(is_redex),
                Strategy::Rightmost => w.windows(2).rposition(is_redex),
            };
            match at {
                Some(i) => {
                    w.drain(i..i + 2);
                }
                None => return BicyclicWord(w),
            }
        }
    }

    /// Reads an irreducible word `b^k a^l` as a normal form.
    pub fn as_normal_form(&self) -> Option<BicyclicNF> {
        let k = self.0.iter().take_while(|&&l| l == Letter::B).count();
        let rest = &self.0[k..];
        rest.iter()
            .all(|&l| l == Letter::A)
            .then(|| BicyclicNF::new(k as u64, rest.len() as u64))
    }

    /// Left-to-right product of the letters' images.
    pub fn fold_compose(&self) -> PartialIso {
        self.0
            .iter()
            .fold(PartialIso::identity(), |acc, l| acc.compose(&l.image()))
    }
}

impl FromStr for BicyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                found => Err(Error::WordParse {
                    column: i + 1,
                    found,
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BicyclicWord)
    }
}

impl fmt::Display for BicyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "a",
                Letter::B => "b",
            })?;
        }
        Ok(())
    }
}
