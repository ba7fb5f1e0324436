use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupHom, Letter, Nil2Element, Word};
use crate::linalg::{self, Int};
use crate::system::AffineSystem;

/// A right action of `M₁` on `M₂`, written `xᵐ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupAction {
    Trivial,
    /// `xᵐ = −m + x + m`; requires `M₂ = M₁`.
    Conjugation,
    Table(ActionTable),
}

/// Generator-level action: for each generator `m` of `M₁` the automorphism
/// `x ↦ xᵐ` of `M₂`, stored with its inverse when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    forward: Vec<GroupHom>,
    backward: Vec<Option<GroupHom>>,
}

impl ActionTable {
    /// `images[x][m]` is `gₓ^{gₘ}`.
    pub fn new(acted: &Group, acting: &Group, images: Vec<Vec<Element>>) -> Result<Self> {
        if matches!(acted, Group::Free { .. }) {
            return Err(Error::Unsupported(
                "action tables on free groups; use the trivial or conjugation action".into(),
            ));
        }
        if images.len() != acted.rank() {
            return Err(Error::RankMismatch {
                expected: acted.rank(),
                found: images.len(),
            });
        }
        let mut forward = Vec::with_capacity(acting.rank());
        for m in 0..acting.rank() {
            let column = images
                .iter()
                .map(|row| {
                    row.get(m).cloned().ok_or(Error::RankMismatch {
                        expected: acting.rank(),
                        found: row.len(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            forward.push(GroupHom::new(acted.clone(), acted.clone(), column)?);
        }
        let backward = forward.iter().map(invert_automorphism).collect();
        Ok(ActionTable { forward, backward })
    }

    /// The automorphism `x ↦ x^{gₘ}`.
    pub fn automorphism(&self, m: usize) -> &GroupHom {
        &self.forward[m]
    }

    pub fn inverse_automorphism(&self, m: usize) -> Option<&GroupHom> {
        self.backward[m].as_ref()
    }

    /// `images[x][m]`, the layout accepted by [`ActionTable::new`].
    pub fn images(&self) -> Vec<Vec<Element>> {
        let rank = self.forward.first().map_or(0, |h| h.source().rank());
        (0..rank)
            .map(|x| self.forward.iter().map(|h| h.image(x).clone()).collect())
            .collect()
    }
}

/// Inverse of an endomorphism of an abelian or free nil(2) group, if it is
/// an automorphism.
fn invert_automorphism(phi: &GroupHom) -> Option<GroupHom> {
    let g = phi.source();
    if phi.validate().is_err() {
        return None;
    }
    let a = phi.abelian_matrix().ok()?;
    let n = g.rank();
    let images: Vec<Element> = match g {
        Group::Abelian(ab) => (0..n)
            .map(|k| {
                let mut s = AffineSystem::new(n);
                s.add_in_group(ab, a.clone(), linalg::unit_vec(n, k), "preimage");
                s.solve().ok().map(|sol| Element::Abelian(ab.canonical(&sol.values)))
            })
            .collect::<Option<_>>()?,
        Group::FreeNil2 { rank } => {
            // commutator part of φ((gᵢ, gⱼ)) for each basic pair
            let kappa: Vec<Vec<Int>> = crate::group::pairs(*rank)
                .map(|(i, j)| {
                    let c = g.commutator(phi.image(i), phi.image(j)).ok()?;
                    Some(c.as_nil2().ok()?.comm().to_vec())
                })
                .collect::<Option<_>>()?;
            let m = kappa.len();
            let k_rows: Vec<Vec<Int>> = (0..m)
                .map(|r| kappa.iter().map(|col| col[r].clone()).collect())
                .collect();
            (0..n)
                .map(|k| {
                    let b = linalg::solve(&a, &linalg::unit_vec(n, k), n).ok()?.particular;
                    let lift = Nil2Element::from_parts(b.clone(), linalg::zero_vec(m)).ok()?;
                    let u = phi.apply(&Element::Nil2(lift)).ok()?;
                    let rhs = linalg::neg(u.as_nil2().ok()?.comm());
                    let c = linalg::solve(&k_rows, &rhs, m).ok()?.particular;
                    Some(Element::Nil2(Nil2Element::from_parts(b, c).ok()?))
                })
                .collect::<Option<_>>()?
        }
        Group::Free { .. } => return None,
    };
    let psi = GroupHom::new(g.clone(), g.clone(), images).ok()?;
    let id = GroupHom::identity(g.clone());
    let round_trips = [phi.then(&psi).ok()?, psi.then(phi).ok()?];
    for h in &round_trips {
        if h.agrees_with(&id).ok()?.is_some() {
            return None;
        }
    }
    Some(psi)
}

impl GroupAction {
    /// `xᵐ`, evaluated letter by letter along a word for `m`.
    pub fn act(&self, acted: &Group, acting: &Group, x: &Element, m: &Element) -> Result<Element> {
        acted.check(x)?;
        acting.check(m)?;
        match self {
            GroupAction::Trivial => Ok(x.clone()),
            GroupAction::Conjugation => {
                if acted != acting {
                    return Err(Error::Structure(
                        "conjugation action needs the acted and acting groups to coincide".into(),
                    ));
                }
                acted.conjugate(x, m)
            }
            GroupAction::Table(_) => self.act_word(acted, acting, x, &acting.to_word(m)?),
        }
    }

    /// `x^w` for a word `w` over the generators of `M₁`.
    pub fn act_word(&self, acted: &Group, acting: &Group, x: &Element, w: &Word) -> Result<Element> {
        w.check_rank(acting.rank())?;
        match self {
            GroupAction::Table(t) => {
                let mut y = x.clone();
                for l in w.letters() {
                    y = apply_letter(t, &y, *l)?;
                }
                Ok(y)
            }
            _ => self.act(acted, acting, x, &acting.eval_word(w)?),
        }
    }

    /// Matrix of `x ↦ xᵐ` on an abelian acted group: column `k` is the
    /// image of the `k`-th generator.
    pub fn matrix(&self, acted: &Group, acting: &Group, m: &Element) -> Result<Vec<Vec<Int>>> {
        let a = acted.as_abelian()?;
        let cols = acted
            .generators()
            .iter()
            .map(|g| Ok(self.act(acted, acting, g, m)?.as_vector()?.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..a.rank())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect())
    }
}

fn apply_letter(t: &ActionTable, x: &Element, l: Letter) -> Result<Element> {
    if l.inverse {
        t.backward[l.generator]
            .as_ref()
            .ok_or_else(|| {
                Error::Structure(format!(
                    "generator g{} does not act by an automorphism",
                    l.generator + 1
                ))
            })?
            .apply(x)
    } else {
        t.forward[l.generator].apply(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_action_on_nil2_is_invertible() {
        let q = Group::FreeNil2 { rank: 2 };
        let z = Group::free_abelian(1);
        let g = q.generators();
        let t = ActionTable::new(&q, &z, vec![vec![g[1].clone()], vec![g[0].clone()]]).unwrap();
        assert!(t.inverse_automorphism(0).is_some());
        let act = GroupAction::Table(t);
        let x = q.op(&g[0], &q.pow(&g[1], &Int::from(3)).unwrap()).unwrap();
        let twice = act.act(&q, &z, &x, &Element::from_i64s(&[2])).unwrap();
        assert_eq!(twice, x);
        let back = act.act(&q, &z, &x, &Element::from_i64s(&[-1])).unwrap();
        let fwd = act.act(&q, &z, &back, &Element::from_i64s(&[1])).unwrap();
        assert_eq!(fwd, x);
    }

    #[test]
    fn shear_on_nil2_inverts_with_commutator_correction() {
        // g₁ ↦ g₁ + g₂, g₂ ↦ g₂
        let q = Group::FreeNil2 { rank: 2 };
        let z = Group::free_abelian(1);
        let g = q.generators();
        let shear = q.op(&g[0], &g[1]).unwrap();
        let t = ActionTable::new(&q, &z, vec![vec![shear], vec![g[1].clone()]]).unwrap();
        let inv = t.inverse_automorphism(0).unwrap().clone();
        let round = t.automorphism(0).then(&inv).unwrap();
        assert_eq!(round.agrees_with(&GroupHom::identity(q)).unwrap(), None);
    }

    #[test]
    fn non_invertible_table_has_no_inverse() {
        let a = Group::free_abelian(1);
        let t = ActionTable::new(&a, &a, vec![vec![Element::from_i64s(&[2])]]).unwrap();
        assert!(t.inverse_automorphism(0).is_none());
        let z3 = Group::cyclic(3);
        let t = ActionTable::new(&z3, &a, vec![vec![Element::from_i64s(&[2])]]).unwrap();
        assert!(t.inverse_automorphism(0).is_some());
    }
}
