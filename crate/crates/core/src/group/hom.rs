use crate::error::{Error, Result};
use crate::group::{pairs, Element, Group};
use crate::linalg::Int;

/// A homomorphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Group,
    target: Group,
    images: Vec<Element>,
}

impl GroupHom {
    pub fn new(source: Group, target: Group, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::RankMismatch {
                expected: source.rank(),
                found: images.len(),
            });
        }
        for y in &images {
            target.check(y)?;
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    pub fn zero(source: Group, target: Group) -> Self {
        let images = vec![target.identity(); source.rank()];
        GroupHom {
            source,
            target,
            images,
        }
    }

    pub fn identity(group: Group) -> Self {
        let images = group.generators();
        GroupHom {
            source: group.clone(),
            target: group,
            images,
        }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Element {
        &self.images[i]
    }

    /// Evaluates the homomorphism. Nil(2) sources are evaluated on the
    /// normal form `Σ aᵢ·gᵢ + Σ c_ij·(gᵢ, gⱼ)`, abelian sources on the
    /// coordinate vector, free sources letter by letter.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.check(x)?;
        let t = &self.target;
        match x {
            Element::Word(w) => {
                let mut acc = t.identity();
                for l in w.letters() {
                    let y = &self.images[l.generator];
                    let y = if l.inverse { t.inv(y)? } else { y.clone() };
                    acc = t.op(&acc, &y)?;
                }
                Ok(acc)
            }
            Element::Nil2(a) => {
                let mut acc = t.identity();
                for (i, k) in a.base().iter().enumerate() {
                    acc = t.op(&acc, &t.pow(&self.images[i], k)?)?;
                }
                for ((i, j), c) in pairs(a.rank()).zip(a.comm()) {
                    let comm = t.commutator(&self.images[i], &self.images[j])?;
                    acc = t.op(&acc, &t.pow(&comm, c)?)?;
                }
                Ok(acc)
            }
            Element::Abelian(v) => {
                let mut acc = t.identity();
                for (y, k) in self.images.iter().zip(v) {
                    acc = t.op(&acc, &t.pow(y, k)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::Structure(
                "composite of homomorphisms with mismatched groups".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|y| other.apply(y))
            .collect::<Result<_>>()?;
        GroupHom::new(self.source.clone(), other.target.clone(), images)
    }

    /// Checks that the generator images define a homomorphism.
    ///
    /// Free sources impose nothing. A nil(2) source needs every triple
    /// commutator of images to vanish; an abelian source needs pairwise
    /// commuting images and every relation mapped to zero.
    pub fn validate(&self) -> Result<()> {
        let t = &self.target;
        match &self.source {
            Group::Free { .. } => Ok(()),
            Group::FreeNil2 { rank } => {
                if t.is_abelian() || matches!(t, Group::FreeNil2 { .. }) {
                    return Ok(());
                }
                for (i, j) in pairs(*rank) {
                    let c = t.commutator(&self.images[i], &self.images[j])?;
                    for k in 0..*rank {
                        let triple = t.commutator(&c, &self.images[k])?;
                        if !t.is_identity(&triple)? {
                            return Err(Error::IllDefinedHom(format!(
                                "((g{},g{}),g{}) maps to {triple}",
                                i + 1,
                                j + 1,
                                k + 1
                            )));
                        }
                    }
                }
                Ok(())
            }
            Group::Abelian(a) => {
                for i in 0..a.rank() {
                    for j in (i + 1)..a.rank() {
                        let c = t.commutator(&self.images[i], &self.images[j])?;
                        if !t.is_identity(&c)? {
                            return Err(Error::IllDefinedHom(format!(
                                "images of g{} and g{} do not commute",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
                for (k, rel) in a.relations().iter().enumerate() {
                    let y = self.apply(&Element::Abelian(rel.clone()))?;
                    if !t.is_identity(&y)? {
                        return Err(Error::IllDefinedHom(format!(
                            "relation {k} maps to {y}"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// Matrix of the map on abelianizations: column `i` is `{f(gᵢ)}`.
    pub fn abelian_matrix(&self) -> Result<Vec<Vec<Int>>> {
        let cols = self
            .images
            .iter()
            .map(|y| self.target.abelianize(y))
            .collect::<Result<Vec<_>>>()?;
        let rows = self.target.rank();
        Ok((0..rows)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect())
    }

    /// Agreement on generators, compared in the target group.
    pub fn agrees_with(&self, other: &GroupHom) -> Result<Option<usize>> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Structure("comparing homomorphisms between different groups".into()));
        }
        for (i, (a, b)) in self.images.iter().zip(&other.images).enumerate() {
            if !self.target.eq(a, b)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}
