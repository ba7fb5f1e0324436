use super::ReducedQuadraticModule;
use crate::error::{Error, Result};
use crate::group::{Element, FgAbelianGroup, Group, GroupHom, TensorElement};
use crate::linalg::Int;
use crate::report::{CheckReport, Sampling};

fn err(e: Error) -> String {
    e.to_string()
}

/// `Q₄ → Q₃ → Q₂` with `(∂₃, ω)` a reduced quadratic module, `Q₄` abelian
/// and `∂₃∂₄ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedQuadraticComplex4 {
    rqm: ReducedQuadraticModule,
    q4: FgAbelianGroup,
    d4: GroupHom,
}

impl ReducedQuadraticComplex4 {
    pub fn new(rqm: ReducedQuadraticModule, q4: FgAbelianGroup, d4_images: Vec<Element>) -> Result<Self> {
        let d4 = GroupHom::new(Group::Abelian(q4.clone()), rqm.q3_group(), d4_images)?;
        Ok(ReducedQuadraticComplex4 { rqm, q4, d4 })
    }

    /// The module viewed as a complex concentrated in degrees 2 and 3.
    pub fn concentrated(rqm: ReducedQuadraticModule) -> Self {
        let q4 = FgAbelianGroup::free(0);
        let d4 = GroupHom::zero(Group::Abelian(q4.clone()), rqm.q3_group());
        ReducedQuadraticComplex4 { rqm, q4, d4 }
    }

    pub fn rqm(&self) -> &ReducedQuadraticModule {
        &self.rqm
    }

    pub fn q4(&self) -> &FgAbelianGroup {
        &self.q4
    }

    pub fn q4_group(&self) -> Group {
        Group::Abelian(self.q4.clone())
    }

    pub fn d4(&self) -> &GroupHom {
        &self.d4
    }

    pub fn check(&self, sampling: Sampling) -> CheckReport {
        let mut report = CheckReport::sampled("4-dimensional reduced quadratic complex", sampling);
        report.merge("rqm", self.rqm.check(sampling));
        report.record(
            "d4.homomorphism",
            "∂₄: Q₄ → Q₃ is well defined",
            self.d4.validate().map(|_| self.q4.rank()).map_err(err),
        );
        let d3d4 = (|| {
            for k in self.q4_group().generators() {
                let v = self.d4.apply(&k).map_err(err)?;
                let b = self.rqm.boundary(v.as_vector().map_err(err)?).map_err(err)?;
                if !b.is_identity() {
                    return Err(format!("∂₃∂₄({k}) = {b}"));
                }
            }
            Ok(self.q4.rank())
        })();
        report.record("d3d4", "∂₃∂₄ = 0", d3d4);
        report
    }
}

/// A complex `Q` together with the structure map `q: 𝒟 → Q` from the
/// under-object, given by images of the generators of `𝒟₂` and `𝒟₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnderComplex {
    pub complex: ReducedQuadraticComplex4,
    pub q2: Vec<Element>,
    pub q3: Vec<Element>,
}

impl UnderComplex {
    /// A complex under the zero object.
    pub fn plain(complex: ReducedQuadraticComplex4) -> Self {
        UnderComplex {
            complex,
            q2: Vec::new(),
            q3: Vec::new(),
        }
    }

    pub fn rqm(&self) -> &ReducedQuadraticModule {
        self.complex.rqm()
    }

    /// Checks the complex and that `q` is a morphism out of `under`.
    pub fn check(&self, under: &ReducedQuadraticComplex4, sampling: Sampling) -> CheckReport {
        let mut report = self.complex.check(sampling);
        report.subject = "reduced quadratic complex under 𝒟".into();
        let q = QCMorphism::from_images(under, &self.complex, self.q2.clone(), self.q3.clone(), None);
        match q {
            Ok(q) => {
                let mut r = qcm_check(&q, &UnderComplex::plain(under.clone()), &UnderComplex::plain(self.complex.clone()));
                r.checks.retain(|c| !c.id.starts_with("f4") && c.id != "d4.square");
                report.merge("q", r);
            }
            Err(e) => report.record("q.homomorphism", "structure map from 𝒟", Err(e.to_string())),
        }
        report
    }
}

/// A morphism of reduced quadratic complexes, given degree-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCMorphism {
    pub f2: GroupHom,
    pub f3: GroupHom,
    pub f4: GroupHom,
}

impl QCMorphism {
    /// Builds a morphism `src → dst` from generator images; `f4 = None`
    /// means zero in degree 4.
    pub fn from_images(
        src: &ReducedQuadraticComplex4,
        dst: &ReducedQuadraticComplex4,
        f2: Vec<Element>,
        f3: Vec<Element>,
        f4: Option<Vec<Element>>,
    ) -> Result<Self> {
        let f2 = GroupHom::new(src.rqm().q2(), dst.rqm().q2(), f2)?;
        let f3 = GroupHom::new(src.rqm().q3_group(), dst.rqm().q3_group(), f3)?;
        let f4 = match f4 {
            Some(images) => GroupHom::new(src.q4_group(), dst.q4_group(), images)?,
            None => GroupHom::zero(src.q4_group(), dst.q4_group()),
        };
        Ok(QCMorphism { f2, f3, f4 })
    }

    pub fn identity(q: &ReducedQuadraticComplex4) -> Self {
        QCMorphism {
            f2: GroupHom::identity(q.rqm().q2()),
            f3: GroupHom::identity(q.rqm().q3_group()),
            f4: GroupHom::identity(q.q4_group()),
        }
    }

    /// `F`, the matrix of `f₂ᵃᵇ: C → C′`.
    pub fn f2_ab(&self) -> Result<Vec<Vec<Int>>> {
        self.f2.abelian_matrix()
    }
}

/// Squares with `∂₃`, `∂₄`, compatibility with `ω` and with the structure
/// maps from the under-object, all on generators.
pub fn qcm_check(f: &QCMorphism, src: &UnderComplex, dst: &UnderComplex) -> CheckReport {
    let mut report = CheckReport::new("morphism of reduced quadratic complexes");
    let (q, p) = (&src.complex, &dst.complex);
    let (r, rr) = (q.rqm(), p.rqm());
    let shapes_match = f.f2.source() == &r.q2()
        && f.f2.target() == &rr.q2()
        && f.f3.source() == &r.q3_group()
        && f.f3.target() == &rr.q3_group()
        && f.f4.source() == &q.q4_group()
        && f.f4.target() == &p.q4_group();
    if !shapes_match {
        report.record("shape", "f maps Q into Q′ degree-wise", Err("groups do not match".into()));
        return report;
    }
    for (name, h) in [("f2", &f.f2), ("f3", &f.f3), ("f4", &f.f4)] {
        report.record(
            &format!("{name}.homomorphism"),
            "well-defined homomorphism",
            h.validate().map(|_| h.source().rank()).map_err(err),
        );
    }

    let d3 = (|| {
        for h in r.q3_group().generators() {
            let lhs = r.d3().apply(&h).and_then(|x| f.f2.apply(&x)).map_err(err)?;
            let rhs = f.f3.apply(&h).and_then(|y| rr.d3().apply(&y)).map_err(err)?;
            if lhs != rhs {
                return Err(format!("at {h}: f₂∂₃ = {lhs}, ∂₃′f₃ = {rhs}"));
            }
        }
        Ok(r.q3().rank())
    })();
    report.record("d3.square", "f₂∂₃ = ∂₃′f₃", d3);

    let d4 = (|| {
        let q3 = rr.q3_group();
        for k in q.q4_group().generators() {
            let lhs = q.d4().apply(&k).and_then(|x| f.f3.apply(&x)).map_err(err)?;
            let rhs = f.f4.apply(&k).and_then(|y| p.d4().apply(&y)).map_err(err)?;
            if !q3.eq(&lhs, &rhs).map_err(err)? {
                return Err(format!("at {k}: f₃∂₄ = {lhs}, ∂₄′f₄ = {rhs}"));
            }
        }
        Ok(q.q4().rank())
    })();
    report.record("d4.square", "f₃∂₄ = ∂₄′f₄", d4);

    let omega = (|| {
        let fab = f.f2_ab().map_err(err)?;
        let n = r.rank();
        for i in 0..n {
            for j in 0..n {
                let lhs = f
                    .f3
                    .apply(&Element::Abelian(r.omega_basis()[i][j].clone()))
                    .map_err(err)?;
                let t = crate::group::tensor_induced(&fab, &TensorElement::basis(n, i, j)).map_err(err)?;
                let rhs = rr.omega(&t).map_err(err)?;
                if !rr.q3().equal(lhs.as_vector().map_err(err)?, &rhs).map_err(err)? {
                    return Err(format!(
                        "at c̄{}⊗c̄{}: f₃ω = {lhs}, ω′(f₂ᵃᵇ⊗f₂ᵃᵇ) = {}",
                        i + 1,
                        j + 1,
                        Element::Abelian(rhs)
                    ));
                }
            }
        }
        Ok(n * n)
    })();
    report.record("omega", "f₃ω = ω′(f₂ᵃᵇ ⊗ f₂ᵃᵇ)", omega);

    if !src.q2.is_empty() || !src.q3.is_empty() {
        let under = (|| {
            if src.q2.len() != dst.q2.len() || src.q3.len() != dst.q3.len() {
                return Err("source and target are under different objects".to_string());
            }
            for (d, (a, b)) in src.q2.iter().zip(&dst.q2).enumerate() {
                let fa = f.f2.apply(a).map_err(err)?;
                if !rr.q2().eq(&fa, b).map_err(err)? {
                    return Err(format!("f₂q₂ ≠ q₂′ at generator {} of 𝒟₂: {fa} vs {b}", d + 1));
                }
            }
            for (d, (a, b)) in src.q3.iter().zip(&dst.q3).enumerate() {
                let fa = f.f3.apply(a).map_err(err)?;
                if !rr.q3_group().eq(&fa, b).map_err(err)? {
                    return Err(format!("f₃q₃ ≠ q₃′ at generator {} of 𝒟₃: {fa} vs {b}", d + 1));
                }
            }
            Ok(src.q2.len() + src.q3.len())
        })();
        report.record("under", "f restricts to the structure map on 𝒟", under);
    }
    report
}
