//! Mode symbols and noncommutative operator polynomials.

use std::collections::BTreeMap;
use std::fmt;

use super::coeff::Coeff;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Virasoro,
    Current,
}

/// Which Virasoro or current family a symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    Parent,
    Sub,
    Coset,
}

/// `L_n` or `J^a_n`. The derived order (mode, kind, sector, index) is the
/// normal-ordering key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub mode: i64,
    pub kind: Kind,
    pub sector: Sector,
    pub index: usize,
}

impl GeneratorSymbol {
    pub fn l(n: i64) -> Self {
        Self::virasoro(Sector::Parent, n)
    }

    pub fn virasoro(sector: Sector, mode: i64) -> Self {
        Self {
            mode,
            kind: Kind::Virasoro,
            sector,
            index: 0,
        }
    }

    /// Parent current `J^a_n` with zero-based `a`.
    pub fn j(a: usize, n: i64) -> Self {
        Self::current(Sector::Parent, a, n)
    }

    pub fn current(sector: Sector, index: usize, mode: i64) -> Self {
        Self {
            mode,
            kind: Kind::Current,
            sector,
            index,
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.sector {
            Sector::Parent => "",
            Sector::Sub => "~",
            Sector::Coset => "c",
        };
        match self.kind {
            Kind::Virasoro => write!(f, "L{tag}[{}]", self.mode),
            Kind::Current => write!(f, "J{tag}{}[{}]", self.index + 1, self.mode),
        }
    }
}

pub type Word = Vec<GeneratorSymbol>;

/// Total level lowered by a word: `−Σ modes`.
pub fn word_level(w: &[GeneratorSymbol]) -> i64 {
    -w.iter().map(|s| s.mode).sum::<i64>()
}

/// Finite sum of coefficient·word terms; identical words are merged and zero
/// coefficients pruned.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorPoly {
    terms: BTreeMap<Word, Coeff>,
}

impl OperatorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(Vec::new(), Coeff::one())
    }

    pub fn symbol(s: GeneratorSymbol) -> Self {
        Self::term(vec![s], Coeff::one())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Coeff::one())
    }

    pub fn term(w: Word, c: Coeff) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Coeff> {
        self.terms
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                slot.add_assign(&c);
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_coeff(&Coeff::one().neg()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.scale_coeff(&Coeff::constant(s.clone()))
    }

    pub fn scale_coeff(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.mul(c));
        }
        out
    }

    /// Noncommutative product by word concatenation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.mul(c2));
            }
        }
        out
    }

    /// Canonical text dump: one term per line in word order.
    pub fn canonical_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (w, c) in &self.terms {
            write!(f, "({c})")?;
            if w.is_empty() {
                write!(f, " 1")?;
            }
            for s in w {
                write!(f, " {s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_prune() {
        let mut p = OperatorPoly::symbol(GeneratorSymbol::l(-1));
        p.add_term(vec![GeneratorSymbol::l(-1)], Coeff::one().neg());
        assert!(p.is_zero());
        let q = OperatorPoly::symbol(GeneratorSymbol::j(2, 1)).add(&OperatorPoly::identity());
        assert_eq!(q.canonical_text(), "(1) 1\n(1) J3[1]\n");
    }

    #[test]
    fn key_order() {
        assert!(GeneratorSymbol::l(-1) < GeneratorSymbol::j(0, -1));
        assert!(GeneratorSymbol::j(2, -2) < GeneratorSymbol::l(-1));
        assert_eq!(word_level(&[GeneratorSymbol::l(-2), GeneratorSymbol::j(0, 1)]), 1);
    }
}
