use crate::crossed::{GroupAction, PreCrossedModule};
use crate::error::{Error, Result};
use crate::group::{Element, FgAbelianGroup, Group, GroupHom, Nil2Element, TensorElement};
use crate::linalg::{self, Int};
use crate::report::{CheckReport, Sampling};

fn err(e: Error) -> String {
    e.to_string()
}

/// `ω: C ⊗ C → Q₃`, `∂₃: Q₃ → Q₂` with `Q₂` free nil(2) of rank `n`,
/// `C = Q₂ᵃᵇ = Zⁿ` and `Q₃` finitely generated abelian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedQuadraticModule {
    rank: usize,
    q3: FgAbelianGroup,
    /// `omega[i][j] = ω(c̄ᵢ ⊗ c̄ⱼ)`.
    omega: Vec<Vec<Vec<Int>>>,
    d3: GroupHom,
}

impl ReducedQuadraticModule {
    pub fn new(
        rank: usize,
        q3: FgAbelianGroup,
        omega: Vec<Vec<Vec<Int>>>,
        d3_images: Vec<Element>,
    ) -> Result<Self> {
        if omega.len() != rank || omega.iter().any(|row| row.len() != rank) {
            return Err(Error::Dimension(format!("ω must be given on all {rank}×{rank} basis tensors")));
        }
        for v in omega.iter().flatten() {
            q3.check_vector(v)?;
        }
        let d3 = GroupHom::new(
            Group::Abelian(q3.clone()),
            Group::FreeNil2 { rank },
            d3_images,
        )?;
        Ok(ReducedQuadraticModule {
            rank,
            q3,
            omega,
            d3,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q2(&self) -> Group {
        Group::FreeNil2 { rank: self.rank }
    }

    pub fn q3(&self) -> &FgAbelianGroup {
        &self.q3
    }

    pub fn q3_group(&self) -> Group {
        Group::Abelian(self.q3.clone())
    }

    pub fn d3(&self) -> &GroupHom {
        &self.d3
    }

    pub fn omega_basis(&self) -> &[Vec<Vec<Int>>] {
        &self.omega
    }

    /// `ω(t)` for a tensor over `C = Zⁿ`.
    pub fn omega(&self, t: &TensorElement) -> Result<Vec<Int>> {
        if t.dim() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: t.dim(),
            });
        }
        let mut acc = linalg::zero_vec(self.q3.rank());
        for i in 0..self.rank {
            for j in 0..self.rank {
                linalg::axpy(&mut acc, t.get(i, j), &self.omega[i][j]);
            }
        }
        Ok(acc)
    }

    /// `ω(x̄ ⊗ ȳ)` for abelianized vectors.
    pub fn omega_pair(&self, x: &[Int], y: &[Int]) -> Result<Vec<Int>> {
        self.omega(&TensorElement::outer(x, y)?)
    }

    /// `∂₃` applied to a coordinate vector of `Q₃`.
    pub fn boundary(&self, q: &[Int]) -> Result<Nil2Element> {
        Ok(self.d3.apply(&Element::Abelian(q.to_vec()))?.as_nil2()?.clone())
    }

    /// `{∂₃(hₖ)}` for each generator `hₖ` of `Q₃`.
    fn boundary_classes(&self) -> Result<Vec<Vec<Int>>> {
        self.d3.images().iter().map(|h| Ok(h.as_nil2()?.abelianize())).collect()
    }

    /// Axioms (1)–(4) plus well-definedness of `∂₃`.
    pub fn check(&self, sampling: Sampling) -> CheckReport {
        let mut report = CheckReport::sampled("reduced quadratic module", sampling);
        let q2 = self.q2();

        let nil2 = (|| {
            let gens = q2.generators();
            let mut n = 0;
            for a in &gens {
                for b in &gens {
                    let c = q2.commutator(a, b).map_err(err)?;
                    for x in &gens {
                        let t = q2.commutator(&c, x).map_err(err)?;
                        if !q2.is_identity(&t).map_err(err)? {
                            return Err(format!("(({a}, {b}), {x}) = {t}"));
                        }
                        n += 1;
                    }
                }
            }
            Ok(n)
        })();
        report.record(
            "axiom1.nil2",
            "Q₂ is nil(2) with C = Q₂ᵃᵇ (triple commutators vanish)",
            nil2,
        );

        report.record(
            "d3.homomorphism",
            "∂₃: Q₃ → Q₂ is well defined",
            self.d3.validate().map(|_| self.q3.rank()).map_err(err),
        );

        let axiom2 = (|| {
            let gens = q2.generators();
            let mut cases: Vec<(Element, Element)> = Vec::new();
            for x in &gens {
                for y in &gens {
                    cases.push((x.clone(), y.clone()));
                }
            }
            let mut rng = sampling.rng();
            for _ in 0..sampling.samples {
                cases.push((
                    q2.random_element(&mut rng, sampling.max_len),
                    q2.random_element(&mut rng, sampling.max_len),
                ));
            }
            let n = cases.len();
            for (x, y) in cases {
                let w = self
                    .omega_pair(&q2.abelianize(&x).map_err(err)?, &q2.abelianize(&y).map_err(err)?)
                    .map_err(err)?;
                let lhs = self.boundary(&w).map_err(err)?;
                let rhs = q2.commutator(&x, &y).map_err(err)?;
                if Element::Nil2(lhs.clone()) != rhs {
                    return Err(format!("x = {x}, y = {y}: ∂₃ω({{x}}⊗{{y}}) = {lhs}, (x, y) = {rhs}"));
                }
            }
            Ok(n)
        })();
        report.record("axiom2", "∂₃ω({x}⊗{y}) = (x, y)", axiom2);

        let axiom3 = (|| {
            let classes = self.boundary_classes().map_err(err)?;
            for (k, dq) in classes.iter().enumerate() {
                for i in 0..self.rank {
                    let e = linalg::unit_vec(self.rank, i);
                    let t = TensorElement::outer(dq, &e)
                        .and_then(|a| a.add(&TensorElement::outer(&e, dq)?))
                        .map_err(err)?;
                    let v = self.omega(&t).map_err(err)?;
                    if !self.q3.is_zero(&v) {
                        return Err(format!(
                            "q = h{}, x = g{}: ω({{∂₃q}}⊗{{x}} + {{x}}⊗{{∂₃q}}) = {}",
                            k + 1,
                            i + 1,
                            Element::Abelian(v)
                        ));
                    }
                }
            }
            Ok(classes.len() * self.rank)
        })();
        report.record("axiom3", "ω({∂₃q}⊗{x} + {x}⊗{∂₃q}) = 0", axiom3);

        let axiom4 = (|| {
            let classes = self.boundary_classes().map_err(err)?;
            for (p, dp) in classes.iter().enumerate() {
                for (q, dq) in classes.iter().enumerate() {
                    let v = self.omega_pair(dp, dq).map_err(err)?;
                    if !self.q3.is_zero(&v) {
                        return Err(format!(
                            "p = h{}, q = h{}: (p, q) = 0 in Q₃ but ω({{∂₃p}}⊗{{∂₃q}}) = {}",
                            p + 1,
                            q + 1,
                            Element::Abelian(v)
                        ));
                    }
                }
            }
            Ok(classes.len() * classes.len())
        })();
        report.record("axiom4", "(p, q) = ω({∂₃p}⊗{∂₃q})", axiom4);
        report
    }
}

/// A quadratic module `C ⊗ C → Q₃ → Q₂ → Q₁` with `Q₂` free nil(2) and `Q₃`
/// finitely generated abelian. The basis of `C` is taken to be the classes
/// of the generators of `Q₂`; the checker verifies that `ω` factors through
/// the quotient of `Q₂ᵃᵇ` by the Peiffer relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticModule {
    reduced: ReducedQuadraticModule,
    lower: PreCrossedModule,
    action3: GroupAction,
}

impl QuadraticModule {
    pub fn new(
        reduced: ReducedQuadraticModule,
        d2: GroupHom,
        action2: GroupAction,
        action3: GroupAction,
    ) -> Result<Self> {
        if d2.source() != &reduced.q2() {
            return Err(Error::Structure("∂₂ must be defined on Q₂".into()));
        }
        let lower = PreCrossedModule::new(d2, action2)?;
        Ok(QuadraticModule {
            reduced,
            lower,
            action3,
        })
    }

    pub fn reduced(&self) -> &ReducedQuadraticModule {
        &self.reduced
    }

    pub fn lower(&self) -> &PreCrossedModule {
        &self.lower
    }

    pub fn q1(&self) -> &Group {
        self.lower.m1()
    }

    pub fn action3(&self) -> &GroupAction {
        &self.action3
    }

    fn act3(&self, q: &[Int], m: &Element) -> Result<Vec<Int>> {
        let q3 = self.reduced.q3_group();
        Ok(self
            .action3
            .act(&q3, self.q1(), &Element::Abelian(q.to_vec()), m)?
            .as_vector()?
            .to_vec())
    }

    /// Axioms (1)–(4) of a quadratic module.
    pub fn check(&self, sampling: Sampling) -> CheckReport {
        let mut report = CheckReport::sampled("quadratic module", sampling);
        let r = &self.reduced;
        let q2 = r.q2();
        let q3 = r.q3_group();
        let q1 = self.q1().clone();
        let m = &self.lower;

        report.merge("axiom1.precrossed", m.check_precrossed(sampling));

        let nil2 = (|| {
            let mut rng = sampling.rng();
            let mut triples: Vec<[Element; 3]> = Vec::new();
            let gens = q2.generators();
            for a in &gens {
                for b in &gens {
                    for c in &gens {
                        triples.push([a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
            for _ in 0..sampling.samples {
                triples.push([0, 1, 2].map(|_| q2.random_element(&mut rng, sampling.max_len)));
            }
            let n = triples.len();
            for [x, y, z] in triples {
                let left = m.peiffer_commutator(&m.peiffer_commutator(&x, &y).map_err(err)?, &z);
                let right = m.peiffer_commutator(&x, &m.peiffer_commutator(&y, &z).map_err(err)?);
                for (shape, v) in [("⟨⟨x, y⟩, z⟩", left), ("⟨x, ⟨y, z⟩⟩", right)] {
                    let v = v.map_err(err)?;
                    if !q2.is_identity(&v).map_err(err)? {
                        return Err(format!("{shape} = {v} for x = {x}, y = {y}, z = {z}"));
                    }
                }
            }
            Ok(n)
        })();
        report.record("axiom1.nil2", "Peiffer commutators of length 3 vanish", nil2);

        let factors = (|| {
            // {y^∂₂x} − {y} generates the kernel of Q₂ᵃᵇ → C
            let mut n = 0;
            for x in q2.generators() {
                let dx = m.d().apply(&x).map_err(err)?;
                for y in q2.generators() {
                    let ym = m.act(&y, &dx).map_err(err)?;
                    let v = linalg::sub(&q2.abelianize(&ym).map_err(err)?, &q2.abelianize(&y).map_err(err)?);
                    for i in 0..r.rank() {
                        let e = linalg::unit_vec(r.rank(), i);
                        for w in [r.omega_pair(&v, &e), r.omega_pair(&e, &v)] {
                            let w = w.map_err(err)?;
                            if !r.q3().is_zero(&w) {
                                return Err(format!("ω does not vanish on {} ⊗ g{}", Element::Abelian(v.clone()), i + 1));
                            }
                        }
                        n += 1;
                    }
                }
            }
            Ok(n)
        })();
        report.record("omega.factors", "ω is defined on C ⊗ C, C = (Q₂ᶜʳ)ᵃᵇ", factors);

        report.record(
            "d3.homomorphism",
            "∂₃: Q₃ → Q₂ is well defined",
            r.d3().validate().map(|_| r.q3().rank()).map_err(err),
        );
        let d2d3 = (|| {
            for h in q3.generators() {
                let v = r.d3().apply(&h).and_then(|x| m.d().apply(&x)).map_err(err)?;
                if !q1.is_identity(&v).map_err(err)? {
                    return Err(format!("∂₂∂₃({h}) = {v}"));
                }
            }
            Ok(q3.rank())
        })();
        report.record("axiom2.d2d3", "∂₂∂₃ = 0", d2d3);

        let lift = (|| {
            let mut cases: Vec<(Element, Element)> = Vec::new();
            let gens = q2.generators();
            for x in &gens {
                for y in &gens {
                    cases.push((x.clone(), y.clone()));
                }
            }
            let mut rng = sampling.rng();
            for _ in 0..sampling.samples {
                cases.push((
                    q2.random_element(&mut rng, sampling.max_len),
                    q2.random_element(&mut rng, sampling.max_len),
                ));
            }
            let n = cases.len();
            for (x, y) in cases {
                let w = r
                    .omega_pair(&q2.abelianize(&x).map_err(err)?, &q2.abelianize(&y).map_err(err)?)
                    .map_err(err)?;
                let lhs = Element::Nil2(r.boundary(&w).map_err(err)?);
                let rhs = m.peiffer_commutator(&x, &y).map_err(err)?;
                if !q2.eq(&lhs, &rhs).map_err(err)? {
                    return Err(format!("x = {x}, y = {y}: ∂₃ω = {lhs}, ⟨x, y⟩ = {rhs}"));
                }
            }
            Ok(n)
        })();
        report.record("axiom2.lift", "∂₃ω = w", lift);

        let mut action = CheckReport::new("");
        crate::crossed::check_action_into(&mut action, &q3, &q1, &self.action3, sampling);
        report.merge("axiom3.q3", action);

        let equivariance = (|| {
            let mut n = 0;
            for mm in q1.generators() {
                for h in q3.generators() {
                    let lhs = self
                        .act3(h.as_vector().map_err(err)?, &mm)
                        .and_then(|v| r.boundary(&v))
                        .map_err(err)?;
                    let rhs = r.d3().apply(&h).and_then(|x| m.act(&x, &mm)).map_err(err)?;
                    if Element::Nil2(lhs.clone()) != rhs {
                        return Err(format!("∂₃({h}^{mm}) = {lhs}, ∂₃({h})^{mm} = {rhs}"));
                    }
                    n += 1;
                }
                for i in 0..r.rank() {
                    for j in 0..r.rank() {
                        let (gi, gj) = (q2.generator(i).map_err(err)?, q2.generator(j).map_err(err)?);
                        let xi = q2.abelianize(&m.act(&gi, &mm).map_err(err)?).map_err(err)?;
                        let xj = q2.abelianize(&m.act(&gj, &mm).map_err(err)?).map_err(err)?;
                        let lhs = r.omega_pair(&xi, &xj).map_err(err)?;
                        let rhs = self.act3(&r.omega_basis()[i][j], &mm).map_err(err)?;
                        if !r.q3().equal(&lhs, &rhs).map_err(err)? {
                            return Err(format!("ω((c̄{}⊗c̄{})^{mm}) ≠ ω(c̄{}⊗c̄{})^{mm}", i + 1, j + 1, i + 1, j + 1));
                        }
                        n += 1;
                    }
                }
            }
            Ok(n)
        })();
        report.record("axiom3.equivariance", "∂₃ and ω are Q₁-equivariant", equivariance);

        let boundary_action = (|| {
            let mut n = 0;
            for x in q2.generators() {
                let dx = m.d().apply(&x).map_err(err)?;
                let xb = q2.abelianize(&x).map_err(err)?;
                for h in q3.generators() {
                    let q = h.as_vector().map_err(err)?;
                    let lhs = self.act3(q, &dx).map_err(err)?;
                    let dq = r.boundary(q).map_err(err)?.abelianize();
                    let t = TensorElement::symmetric(&dq, &xb).map_err(err)?;
                    let rhs = linalg::add(q, &r.omega(&t).map_err(err)?);
                    if !r.q3().equal(&lhs, &rhs).map_err(err)? {
                        return Err(format!("q = {h}, x = {x}: q^∂₂x = {}", Element::Abelian(lhs)));
                    }
                    n += 1;
                }
            }
            Ok(n)
        })();
        report.record(
            "axiom3.boundary-action",
            "q^∂₂x = q + ω({∂₃q}⊗{x} + {x}⊗{∂₃q})",
            boundary_action,
        );

        let axiom4 = r.check(Sampling::with_samples(0));
        if let Some(e) = axiom4.entry("axiom4") {
            report.push(e.clone());
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn sphere() -> ReducedQuadraticModule {
        ReducedQuadraticModule::new(
            1,
            FgAbelianGroup::free(1),
            vec![vec![vec![int(1)]]],
            vec![Element::Nil2(Nil2Element::identity(1))],
        )
        .unwrap()
    }

    #[test]
    fn sphere_module_passes() {
        let r = sphere().check(Sampling::default());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn zero_omega_on_rank_two_fails_axiom2() {
        let q = ReducedQuadraticModule::new(
            2,
            FgAbelianGroup::free(1),
            vec![vec![vec![int(0)]; 2]; 2],
            vec![Element::Nil2(Nil2Element::identity(2))],
        )
        .unwrap();
        let r = q.check(Sampling::with_samples(10));
        let e = r.entry("axiom2").unwrap();
        assert!(!e.passed);
        assert!(e.witness.as_ref().unwrap().contains("x = g1, y = g2"));
    }
}
