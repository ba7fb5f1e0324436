use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in the free group, read left to right. In additive notation
/// `[a, b]` denotes `a + b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from `(generator, exponent)` syllables; negative
    /// exponents expand into inverse letters.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(g, e) in powers {
            let l = Letter::new(g, e < 0);
            letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The unique freely reduced word equal to `self`.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.max_generator() {
            Some(g) if g >= rank => Err(Error::GeneratorOutOfRange { index: g, rank }),
            _ => Ok(()),
        }
    }

    /// Exponent sum of every generator (the image in the free abelian group).
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for l in &self.0 {
            v[l.generator] += l.sign();
        }
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, l) in self.0.iter().enumerate() {
            match (k, l.inverse) {
                (0, false) => write!(f, "g{}", l.generator + 1)?,
                (0, true) => write!(f, "-g{}", l.generator + 1)?,
                (_, false) => write!(f, " + g{}", l.generator + 1)?,
                (_, true) => write!(f, " - g{}", l.generator + 1)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_cancellation() {
        let w = Word::from_letters(vec![Letter::pos(0), Letter::neg(0)]);
        assert_eq!(w.reduce(), Word::empty());
    }

    #[test]
    fn inner_cancellation() {
        let w = Word::from_letters(vec![
            Letter::pos(0),
            Letter::pos(1),
            Letter::neg(1),
            Letter::pos(0),
        ]);
        assert_eq!(w.reduce(), Word::from_letters(vec![Letter::pos(0), Letter::pos(0)]));
    }

    #[test]
    fn reduced_word_is_fixed() {
        let w = Word::from_letters(vec![Letter::pos(1), Letter::neg(0)]);
        assert!(w.is_reduced());
        assert_eq!(w.reduce(), w);
    }

    #[test]
    fn powers_expand_negative_exponents() {
        let w = Word::from_powers(&[(0, 2), (1, -1)]);
        assert_eq!(
            w.letters(),
            &[Letter::pos(0), Letter::pos(0), Letter::neg(1)]
        );
        assert_eq!(w.exponent_sums(2), vec![2, -1]);
    }

    #[test]
    fn rank_check() {
        assert!(Word::from_powers(&[(2, 1)]).check_rank(2).is_err());
        assert!(Word::from_powers(&[(1, 1)]).check_rank(2).is_ok());
    }
}
