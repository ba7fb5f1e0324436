//! Free nilpotent groups of class 2.
//!
//! Every element of the free nil(2)-group on `g₁ … gₙ` has a unique normal
//! form
//!
//! ```text
//! a₁·g₁ + … + aₙ·gₙ + Σ_{i<j} c_ij·(gᵢ, gⱼ)
//! ```
//!
//! with the commutator convention `(x, y) = −x − y + x + y`. Commutators are
//! central, so the normal form multiplies by
//!
//! ```text
//! (a, c) + (a′, c′) = (a + a′, c + c′ + δ(a, a′)),   δ(a, a′)_ij = −a_j·a′_i   (i < j)
//! ```
//!
//! which comes from collecting `a_j·g_j + a′_i·g_i = a′_i·g_i + a_j·g_j − a_j a′_i·(g_i, g_j)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::word::{Letter, Word};
use crate::linalg::{self, Int};

/// Index of the basic commutator `(gᵢ, gⱼ)`, `i < j`, in the lexicographic
/// enumeration of pairs.
pub fn pair_index(rank: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < rank);
    i * rank - i * (i + 1) / 2 + (j - i - 1)
}

pub fn pair_count(rank: usize) -> usize {
    rank * rank.saturating_sub(1) / 2
}

/// Iterates the pairs `i < j` in the order used by [`pair_index`].
pub fn pairs(rank: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..rank).flat_map(move |i| ((i + 1)..rank).map(move |j| (i, j)))
}

/// Element of a free nil(2)-group in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Nil2Element {
    base: Vec<Int>,
    comm: Vec<Int>,
}

impl Nil2Element {
    pub fn identity(rank: usize) -> Self {
        Nil2Element {
            base: linalg::zero_vec(rank),
            comm: linalg::zero_vec(pair_count(rank)),
        }
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        let mut x = Self::identity(rank);
        x.base[i] = Int::one();
        x
    }

    /// The basic commutator `(gᵢ, gⱼ)` for `i < j`.
    pub fn basic_commutator(rank: usize, i: usize, j: usize) -> Self {
        let mut x = Self::identity(rank);
        x.comm[pair_index(rank, i, j)] = Int::one();
        x
    }

    pub fn from_parts(base: Vec<Int>, comm: Vec<Int>) -> Result<Self> {
        let rank = base.len();
        if comm.len() != pair_count(rank) {
            return Err(Error::Dimension(format!(
                "rank {rank} needs {} commutator exponents, got {}",
                pair_count(rank),
                comm.len()
            )));
        }
        Ok(Nil2Element { base, comm })
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[Int] {
        &self.base
    }

    pub fn comm(&self) -> &[Int] {
        &self.comm
    }

    pub fn comm_at(&self, i: usize, j: usize) -> &Int {
        &self.comm[pair_index(self.rank(), i, j)]
    }

    pub fn is_identity(&self) -> bool {
        linalg::is_zero(&self.base) && linalg::is_zero(&self.comm)
    }

    fn check_same_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    /// Bilinear collection term `δ(a, a′)`.
    fn collection(a: &[Int], b: &[Int]) -> Vec<Int> {
        let n = a.len();
        pairs(n).map(|(i, j)| -(&a[j] * &b[i])).collect()
    }

    /// `self + other`.
    pub fn op(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        let delta = Self::collection(&self.base, &other.base);
        let comm = self
            .comm
            .iter()
            .zip(&other.comm)
            .zip(&delta)
            .map(|((c, d), e)| c + d + e)
            .collect();
        Ok(Nil2Element {
            base: linalg::add(&self.base, &other.base),
            comm,
        })
    }

    /// `−self`: the unique `y` with `self + y = 0`, i.e. `(−a, −c − δ(a, −a))`.
    pub fn inv(&self) -> Self {
        let n = self.rank();
        let comm = pairs(n)
            .zip(&self.comm)
            .map(|((i, j), c)| -c - &self.base[i] * &self.base[j])
            .collect();
        Nil2Element {
            base: linalg::neg(&self.base),
            comm,
        }
    }

    /// `(x, y) = −x − y + x + y`, evaluated through the group law.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.inv().op(&other.inv())?.op(self)?.op(other)
    }

    /// `k·self`, via `k·(a, c) = (k·a, k·c + C(k, 2)·δ(a, a))`.
    pub fn scale(&self, k: &Int) -> Self {
        let c2 = linalg::binomial2(k);
        let delta = Self::collection(&self.base, &self.base);
        let comm = self
            .comm
            .iter()
            .zip(&delta)
            .map(|(c, d)| k * c + &c2 * d)
            .collect();
        Nil2Element {
            base: linalg::scale(k, &self.base),
            comm,
        }
    }

    /// Image of a word in the free nil(2)-group of the given rank.
    pub fn from_word(word: &Word, rank: usize) -> Result<Self> {
        word.check_rank(rank)?;
        let mut acc = Self::identity(rank);
        for l in word.letters() {
            let g = Self::generator(rank, l.generator);
            let g = if l.inverse { g.inv() } else { g };
            acc = acc.op(&g)?;
        }
        Ok(acc)
    }

    /// The normal-form word `a₁·g₁ + … + aₙ·gₙ + Σ c_ij·(gᵢ, gⱼ)`.
    ///
    /// Exponents are expanded letter by letter, so this is only meant for
    /// elements with small coordinates.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for (i, a) in self.base.iter().enumerate() {
            push_power(&mut letters, i, a);
        }
        for ((i, j), c) in pairs(self.rank()).zip(&self.comm) {
            let comm = [Letter::neg(i), Letter::neg(j), Letter::pos(i), Letter::pos(j)];
            let inv = [Letter::neg(j), Letter::neg(i), Letter::pos(j), Letter::pos(i)];
            let block: &[Letter] = if c >= &Int::zero() { &comm } else { &inv };
            let times = to_usize(c);
            for _ in 0..times {
                letters.extend_from_slice(block);
            }
        }
        Word::from_letters(letters)
    }

    /// Image `{x}` in the abelianization (the commutator part is discarded).
    pub fn abelianize(&self) -> Vec<Int> {
        self.base.clone()
    }

    /// Doubled Mal'cev coordinates `(2a, 2c − δ(a, a))`.
    ///
    /// On any abelian subgroup this map is additive, which turns equations
    /// between commuting elements into integer linear equations. It is
    /// injective on the whole group.
    pub fn doubled_log(&self) -> Vec<Int> {
        let two = linalg::int(2);
        let mut out = linalg::scale(&two, &self.base);
        for ((i, j), c) in pairs(self.rank()).zip(&self.comm) {
            out.push(&two * c + &self.base[i] * &self.base[j]);
        }
        out
    }
}

fn to_usize(c: &Int) -> usize {
    let m = c.magnitude();
    usize::try_from(m).expect("exponent too large to expand into a word")
}

fn push_power(letters: &mut Vec<Letter>, g: usize, a: &Int) {
    let l = Letter::new(g, a < &Int::zero());
    letters.extend(std::iter::repeat_n(l, to_usize(a)));
}

impl fmt::Display for Nil2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Int, String)> = Vec::new();
        for (i, a) in self.base.iter().enumerate() {
            terms.push((a.clone(), format!("g{}", i + 1)));
        }
        for ((i, j), c) in pairs(self.rank()).zip(&self.comm) {
            terms.push((c.clone(), format!("(g{},g{})", i + 1, j + 1)));
        }
        crate::group::write_linear_combination(f, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(base: &[i64], comm: &[i64]) -> Nil2Element {
        Nil2Element::from_parts(
            base.iter().map(|&x| Int::from(x)).collect(),
            comm.iter().map(|&x| Int::from(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn ordered_word() {
        let w = Word::from_powers(&[(0, 1), (1, 1)]);
        assert_eq!(Nil2Element::from_word(&w, 2).unwrap(), el(&[1, 1], &[0]));
    }

    #[test]
    fn swapped_word_picks_up_negative_commutator() {
        let w = Word::from_powers(&[(1, 1), (0, 1)]);
        assert_eq!(Nil2Element::from_word(&w, 2).unwrap(), el(&[1, 1], &[-1]));
    }

    #[test]
    fn commutator_word_is_basis_element() {
        let w = Word::from_powers(&[(0, -1), (1, -1), (0, 1), (1, 1)]);
        assert_eq!(Nil2Element::from_word(&w, 2).unwrap(), el(&[0, 0], &[1]));
        let g1 = Nil2Element::generator(2, 0);
        let g2 = Nil2Element::generator(2, 1);
        assert_eq!(g1.commutator(&g2).unwrap(), el(&[0, 0], &[1]));
    }

    #[test]
    fn triple_commutator_vanishes() {
        let g1 = Nil2Element::generator(2, 0);
        let g2 = Nil2Element::generator(2, 1);
        let c = g1.commutator(&g2).unwrap();
        assert!(c.commutator(&g1).unwrap().is_identity());
    }

    #[test]
    fn index_out_of_range() {
        let w = Word::from_powers(&[(3, 1)]);
        assert!(matches!(
            Nil2Element::from_word(&w, 3),
            Err(Error::GeneratorOutOfRange { index: 3, rank: 3 })
        ));
    }

    #[test]
    fn mismatched_ranks() {
        let x = Nil2Element::generator(2, 0);
        let y = Nil2Element::generator(3, 0);
        assert!(x.op(&y).is_err());
    }

    #[test]
    fn abelianization_of_boundary_word() {
        // −g + g′ + g″
        let w = Word::from_powers(&[(0, -1), (1, 1), (2, 1)]);
        let x = Nil2Element::from_word(&w, 3).unwrap();
        assert_eq!(x.abelianize(), vec![Int::from(-1), Int::from(1), Int::from(1)]);
        let c = Nil2Element::basic_commutator(3, 0, 1);
        assert!(linalg::is_zero(&c.abelianize()));
    }

    #[test]
    fn pair_indexing_is_dense() {
        for n in 0..6 {
            let idx: Vec<usize> = pairs(n).map(|(i, j)| pair_index(n, i, j)).collect();
            assert_eq!(idx, (0..pair_count(n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn normal_form_word_round_trips() {
        let x = el(&[2, -1, 3], &[1, -2, 0]);
        assert_eq!(Nil2Element::from_word(&x.to_word(), 3).unwrap(), x);
    }

    #[test]
    fn scale_matches_repeated_addition() {
        let x = el(&[1, 2, -1], &[0, 1, 3]);
        let mut acc = Nil2Element::identity(3);
        for k in 0..5 {
            assert_eq!(x.scale(&Int::from(k)), acc);
            acc = acc.op(&x).unwrap();
        }
        assert_eq!(x.scale(&Int::from(-1)), x.inv());
    }
}
