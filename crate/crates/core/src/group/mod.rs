//! Exact arithmetic in the group classes used by the algebraic models:
//! free groups, free nil(2)-groups and finitely generated abelian groups.
//!
//! All groups are written additively, whether or not they commute.

mod abelian;
mod hom;
mod nil2;
mod tensor;
mod word;

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

pub use abelian::FgAbelianGroup;
pub use hom::GroupHom;
pub use nil2::{pair_count, pair_index, pairs, Nil2Element};
pub use tensor::{tensor_induced, TensorElement};
pub use word::{Letter, Word};

use crate::error::{Error, Result};
use crate::linalg::{self, Int};

/// A group descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Free { rank: usize },
    FreeNil2 { rank: usize },
    Abelian(FgAbelianGroup),
}

/// An element of one of the supported groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Word(Word),
    Nil2(Nil2Element),
    Abelian(Vec<Int>),
}

impl Element {
    pub fn as_nil2(&self) -> Result<&Nil2Element> {
        match self {
            Element::Nil2(x) => Ok(x),
            other => Err(Error::Structure(format!("expected a nil(2) element, got {other}"))),
        }
    }

    pub fn as_vector(&self) -> Result<&[Int]> {
        match self {
            Element::Abelian(x) => Ok(x),
            other => Err(Error::Structure(format!("expected an abelian vector, got {other}"))),
        }
    }

    pub fn from_i64s(xs: &[i64]) -> Element {
        Element::Abelian(xs.iter().map(|&x| Int::from(x)).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Word(w) => write!(f, "{w}"),
            Element::Nil2(x) => write!(f, "{x}"),
            Element::Abelian(v) => {
                let terms: Vec<(Int, String)> = v
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (a.clone(), format!("g{}", i + 1)))
                    .collect();
                write_linear_combination(f, &terms)
            }
        }
    }
}

/// Writes `Σ kᵢ·nameᵢ` with `+`/`−` signs, skipping zero terms.
pub(crate) fn write_linear_combination(
    f: &mut fmt::Formatter<'_>,
    terms: &[(Int, String)],
) -> fmt::Result {
    let mut first = true;
    for (k, name) in terms {
        if k.is_zero() {
            continue;
        }
        let negative = k < &Int::zero();
        let mag = k.magnitude();
        match (first, negative) {
            (true, false) => {}
            (true, true) => write!(f, "-")?,
            (false, false) => write!(f, " + ")?,
            (false, true) => write!(f, " - ")?,
        }
        if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{mag}{name}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Group {
    pub fn free_abelian(rank: usize) -> Group {
        Group::Abelian(FgAbelianGroup::free(rank))
    }

    pub fn cyclic(order: u64) -> Group {
        Group::Abelian(FgAbelianGroup::cyclic(order))
    }

    pub fn trivial() -> Group {
        Group::free_abelian(0)
    }

    pub fn rank(&self) -> usize {
        match self {
            Group::Free { rank } | Group::FreeNil2 { rank } => *rank,
            Group::Abelian(a) => a.rank(),
        }
    }

    /// Whether the group is commutative. A free (nil(2)-)group of rank ≤ 1
    /// is infinite cyclic.
    pub fn is_abelian(&self) -> bool {
        match self {
            Group::Free { rank } | Group::FreeNil2 { rank } => *rank <= 1,
            Group::Abelian(_) => true,
        }
    }

    pub fn as_abelian(&self) -> Result<&FgAbelianGroup> {
        match self {
            Group::Abelian(a) => Ok(a),
            other => Err(Error::Structure(format!("expected an abelian group, got {other}"))),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::Free { .. } => Element::Word(Word::empty()),
            Group::FreeNil2 { rank } => Element::Nil2(Nil2Element::identity(*rank)),
            Group::Abelian(a) => Element::Abelian(linalg::zero_vec(a.rank())),
        }
    }

    pub fn generator(&self, i: usize) -> Result<Element> {
        let rank = self.rank();
        if i >= rank {
            return Err(Error::GeneratorOutOfRange { index: i, rank });
        }
        Ok(match self {
            Group::Free { .. } => Element::Word(Word::from_letters(vec![Letter::pos(i)])),
            Group::FreeNil2 { rank } => Element::Nil2(Nil2Element::generator(*rank, i)),
            Group::Abelian(a) => Element::Abelian(linalg::unit_vec(a.rank(), i)),
        })
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank())
            .map(|i| self.generator(i).expect("in range"))
            .collect()
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        let ok = match (self, x) {
            (Group::Free { rank }, Element::Word(w)) => return w.check_rank(*rank),
            (Group::FreeNil2 { rank }, Element::Nil2(y)) => y.rank() == *rank,
            (Group::Abelian(a), Element::Abelian(v)) => v.len() == a.rank(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotAMember {
                element: x.to_string(),
                group: self.to_string(),
            })
        }
    }

    fn mismatch(&self, x: &Element) -> Error {
        Error::NotAMember {
            element: x.to_string(),
            group: self.to_string(),
        }
    }

    /// `x + y`.
    pub fn op(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        match (x, y) {
            (Element::Word(a), Element::Word(b)) => Ok(Element::Word(a.concat(b).reduce())),
            (Element::Nil2(a), Element::Nil2(b)) => Ok(Element::Nil2(a.op(b)?)),
            (Element::Abelian(a), Element::Abelian(b)) => Ok(Element::Abelian(linalg::add(a, b))),
            _ => Err(self.mismatch(x)),
        }
    }

    /// `−x`.
    pub fn inv(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(match x {
            Element::Word(a) => Element::Word(a.inverse()),
            Element::Nil2(a) => Element::Nil2(a.inv()),
            Element::Abelian(a) => Element::Abelian(linalg::neg(a)),
        })
    }

    /// `x − y` in the additive sense `x + (−y)`.
    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element> {
        self.op(x, &self.inv(y)?)
    }

    /// Left-to-right sum of a sequence.
    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        let mut acc = self.identity();
        for x in xs {
            acc = self.op(&acc, x)?;
        }
        Ok(acc)
    }

    /// `(x, y) = −x − y + x + y`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        let nx = self.inv(x)?;
        let ny = self.inv(y)?;
        self.sum([&nx, &ny, x, y])
    }

    /// `−m + x + m`.
    pub fn conjugate(&self, x: &Element, m: &Element) -> Result<Element> {
        let nm = self.inv(m)?;
        self.sum([&nm, x, m])
    }

    /// `k·x`.
    pub fn pow(&self, x: &Element, k: &Int) -> Result<Element> {
        self.check(x)?;
        match x {
            Element::Nil2(a) => return Ok(Element::Nil2(a.scale(k))),
            Element::Abelian(a) => return Ok(Element::Abelian(linalg::scale(k, a))),
            Element::Word(_) => {}
        }
        let (mut base, mut e) = if k < &Int::zero() {
            (self.inv(x)?, -k)
        } else {
            (x.clone(), k.clone())
        };
        let two = Int::from(2);
        let mut acc = self.identity();
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = self.op(&acc, &base)?;
            }
            base = self.op(&base, &base)?;
            e /= &two;
        }
        Ok(acc)
    }

    /// Canonical form: reduced word, nil(2) normal form, or the Hermite
    /// representative modulo relations.
    pub fn canonical(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(match (self, x) {
            (Group::Abelian(a), Element::Abelian(v)) => Element::Abelian(a.canonical(v)),
            (_, Element::Word(w)) => Element::Word(w.reduce()),
            _ => x.clone(),
        })
    }

    pub fn eq(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.canonical(x)? == self.canonical(y)?)
    }

    pub fn is_identity(&self, x: &Element) -> Result<bool> {
        self.eq(x, &self.identity())
    }

    /// Image in the abelianization `Zʳ` (for abelian groups, the coordinate
    /// vector itself, which is only defined modulo relations).
    pub fn abelianize(&self, x: &Element) -> Result<Vec<Int>> {
        self.check(x)?;
        Ok(match x {
            Element::Word(w) => w
                .exponent_sums(self.rank())
                .into_iter()
                .map(Int::from)
                .collect(),
            Element::Nil2(a) => a.abelianize(),
            Element::Abelian(v) => v.clone(),
        })
    }

    /// A word whose value is `x`. Coordinates are expanded letter by letter.
    pub fn to_word(&self, x: &Element) -> Result<Word> {
        self.check(x)?;
        Ok(match x {
            Element::Word(w) => w.clone(),
            Element::Nil2(a) => a.to_word(),
            Element::Abelian(v) => {
                let powers: Vec<(usize, i64)> = v
                    .iter()
                    .enumerate()
                    .map(|(i, k)| {
                        let k = i64::try_from(k).expect("coordinate too large to expand");
                        (i, k)
                    })
                    .collect();
                Word::from_powers(&powers)
            }
        })
    }

    /// Value of a word over the generators.
    pub fn eval_word(&self, w: &Word) -> Result<Element> {
        w.check_rank(self.rank())?;
        Ok(match self {
            Group::Free { .. } => Element::Word(w.reduce()),
            Group::FreeNil2 { rank } => Element::Nil2(Nil2Element::from_word(w, *rank)?),
            Group::Abelian(a) => Element::Abelian(
                w.exponent_sums(a.rank()).into_iter().map(Int::from).collect(),
            ),
        })
    }

    /// A random word of length at most `max_len` over the generators and
    /// their inverses, evaluated in the group.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Element {
        let rank = self.rank();
        if rank == 0 {
            return self.identity();
        }
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len)
            .map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5)))
            .collect();
        self.eval_word(&Word::from_letters(letters))
            .expect("letters are in range")
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Free { rank } => write!(f, "free group of rank {rank}"),
            Group::FreeNil2 { rank } => write!(f, "free nil(2)-group of rank {rank}"),
            Group::Abelian(a) => write!(f, "abelian group {a} on {} generators", a.rank()),
        }
    }
}
