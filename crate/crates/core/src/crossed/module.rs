use super::GroupAction;
use crate::error::{Error, Result};
use crate::group::{pairs, Element, Group, GroupHom, Letter, TensorElement, Word};
use crate::report::{CheckReport, Sampling};

/// `d: M₂ → M₁` together with a right action of `M₁` on `M₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreCrossedModule {
    m1: Group,
    m2: Group,
    d: GroupHom,
    action: GroupAction,
}

impl PreCrossedModule {
    pub fn new(d: GroupHom, action: GroupAction) -> Result<Self> {
        let m2 = d.source().clone();
        let m1 = d.target().clone();
        if action == GroupAction::Conjugation && m1 != m2 {
            return Err(Error::Structure(
                "conjugation action needs M₂ = M₁".into(),
            ));
        }
        Ok(PreCrossedModule { m1, m2, d, action })
    }

    pub fn m1(&self) -> &Group {
        &self.m1
    }

    pub fn m2(&self) -> &Group {
        &self.m2
    }

    pub fn d(&self) -> &GroupHom {
        &self.d
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// `xᵐ` for `x ∈ M₂`, `m ∈ M₁`.
    pub fn act(&self, x: &Element, m: &Element) -> Result<Element> {
        self.action.act(&self.m2, &self.m1, x, m)
    }

    /// `⟨x, y⟩ = −x − y + x + y^{d(x)}`.
    pub fn peiffer_commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        let g = &self.m2;
        let y_dx = self.act(y, &self.d.apply(x)?)?;
        g.sum([&g.inv(x)?, &g.inv(y)?, x, &y_dx])
    }

    /// `w(t) = Σ t_ij·⟨gᵢ, gⱼ⟩`, summed in row-major order of `(i, j)`.
    pub fn peiffer_map_w(&self, t: &TensorElement) -> Result<Element> {
        let Group::FreeNil2 { rank } = self.m2 else {
            return Err(Error::Structure(
                "the Peiffer commutator map needs a free nil(2) group M₂".into(),
            ));
        };
        if t.dim() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: t.dim(),
            });
        }
        let gens = self.m2.generators();
        let mut acc = self.m2.identity();
        for i in 0..rank {
            for j in 0..rank {
                let p = self.peiffer_commutator(&gens[i], &gens[j])?;
                acc = self.m2.op(&acc, &self.m2.pow(&p, t.get(i, j))?)?;
            }
        }
        Ok(acc)
    }

    /// Action axioms and equivariance of `d`.
    pub fn check_precrossed(&self, sampling: Sampling) -> CheckReport {
        let mut report = CheckReport::sampled("pre-crossed module", sampling);
        check_action(&mut report, &self.m2, &self.m1, &self.action, sampling);
        report.record(
            "d.homomorphism",
            "d: M₂ → M₁ is well defined",
            self.d.validate().map(|_| self.m2.rank()).map_err(|e| e.to_string()),
        );
        report.record(
            "equivariance",
            "d(xᵐ) = −m + d(x) + m",
            self.check_equivariance(sampling),
        );
        report
    }

    /// [`check_precrossed`](Self::check_precrossed) plus triviality of all
    /// Peiffer commutators.
    pub fn check_crossed(&self, sampling: Sampling) -> CheckReport {
        let mut report = self.check_precrossed(sampling);
        report.subject = "crossed module".into();
        report.record(
            "peiffer",
            "⟨x, y⟩ = 0",
            self.check_peiffer(sampling),
        );
        report
    }

    fn check_equivariance(&self, sampling: Sampling) -> std::result::Result<usize, String> {
        let (g1, g2) = (&self.m1, &self.m2);
        let mut acting = g1.generators();
        acting.extend(acting.clone().iter().filter_map(|m| g1.inv(m).ok()));
        let mut cases: Vec<(Element, Element)> = Vec::new();
        for x in g2.generators() {
            for m in &acting {
                cases.push((x.clone(), m.clone()));
            }
        }
        let mut rng = sampling.rng();
        for _ in 0..sampling.samples {
            cases.push((
                g2.random_element(&mut rng, sampling.max_len),
                g1.random_element(&mut rng, sampling.max_len),
            ));
        }
        let n = cases.len();
        for (x, m) in cases {
            let lhs = self
                .act(&x, &m)
                .and_then(|xm| self.d.apply(&xm))
                .map_err(|e| e.to_string())?;
            let rhs = self
                .d
                .apply(&x)
                .and_then(|dx| g1.conjugate(&dx, &m))
                .map_err(|e| e.to_string())?;
            if !g1.eq(&lhs, &rhs).map_err(|e| e.to_string())? {
                return Err(format!("x = {x}, m = {m}: d(xᵐ) = {lhs} but −m + d(x) + m = {rhs}"));
            }
        }
        Ok(n)
    }

    fn check_peiffer(&self, sampling: Sampling) -> std::result::Result<usize, String> {
        let g = &self.m2;
        let gens = g.generators();
        let mut cases: Vec<(Element, Element)> = Vec::new();
        for x in &gens {
            for y in &gens {
                cases.push((x.clone(), y.clone()));
            }
        }
        let mut rng = sampling.rng();
        for _ in 0..sampling.samples {
            cases.push((
                g.random_element(&mut rng, sampling.max_len),
                g.random_element(&mut rng, sampling.max_len),
            ));
        }
        let n = cases.len();
        for (x, y) in cases {
            let p = self.peiffer_commutator(&x, &y).map_err(|e| e.to_string())?;
            if !g.is_identity(&p).map_err(|e| e.to_string())? {
                return Err(format!("⟨{x}, {y}⟩ = {p}"));
            }
        }
        Ok(n)
    }
}

/// Words in the acting group that must act trivially: relators of an
/// abelian group plus commutators of its generators, or triple commutators
/// of a nil(2)-group.
fn trivial_words(acting: &Group) -> Vec<(String, Word)> {
    let gen = |i: usize| Word::from_letters(vec![Letter::pos(i)]);
    let comm = |a: &Word, b: &Word| a.inverse().concat(&b.inverse()).concat(a).concat(b);
    match acting {
        Group::Free { .. } => Vec::new(),
        Group::FreeNil2 { rank } => {
            let mut out = Vec::new();
            for (i, j) in pairs(*rank) {
                for k in 0..*rank {
                    let w = comm(&comm(&gen(i), &gen(j)), &gen(k));
                    out.push((format!("((g{}, g{}), g{})", i + 1, j + 1, k + 1), w));
                }
            }
            out
        }
        Group::Abelian(a) => {
            let mut out: Vec<(String, Word)> = pairs(a.rank())
                .map(|(i, j)| (format!("(g{}, g{})", i + 1, j + 1), comm(&gen(i), &gen(j))))
                .collect();
            for (k, rel) in a.relations().iter().enumerate() {
                if let Ok(w) = acting.to_word(&Element::Abelian(rel.clone())) {
                    out.push((format!("relation {}", k + 1), w));
                }
            }
            out
        }
    }
}

/// Records the action axioms for `M₁` acting on `M₂` into `report`.
pub(crate) fn check_action(
    report: &mut CheckReport,
    acted: &Group,
    acting: &Group,
    action: &GroupAction,
    sampling: Sampling,
) {
    let act = |x: &Element, m: &Element| action.act(acted, acting, x, m);

    let automorphisms = match action {
        GroupAction::Table(t) => (0..acting.rank())
            .map(|m| {
                t.automorphism(m)
                    .validate()
                    .map_err(|e| format!("g{}: {e}", m + 1))?;
                t.inverse_automorphism(m)
                    .map(|_| ())
                    .ok_or_else(|| format!("g{} does not act by an automorphism", m + 1))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(|v| v.len()),
        GroupAction::Conjugation if acted != acting => {
            Err("conjugation action between different groups".to_string())
        }
        _ => Ok(acting.rank()),
    };
    let usable = automorphisms.is_ok();
    report.record(
        "action.automorphisms",
        "each generator acts by an automorphism",
        automorphisms,
    );
    if !usable {
        return;
    }

    let words = trivial_words(acting);
    let relators = (|| {
        let mut n = 0;
        for (name, w) in &words {
            for x in acted.generators() {
                let y = action.act_word(acted, acting, &x, w).map_err(|e| e.to_string())?;
                if !acted.eq(&x, &y).map_err(|e| e.to_string())? {
                    return Err(format!("{name} sends {x} to {y}"));
                }
                n += 1;
            }
        }
        Ok(n)
    })();
    report.record(
        "action.relators",
        "relators of the acting group act trivially",
        relators,
    );

    let mut rng = sampling.rng();
    let composition = (|| {
        for _ in 0..sampling.samples {
            let x = acted.random_element(&mut rng, sampling.max_len);
            let a = acting.random_element(&mut rng, sampling.max_len);
            let b = acting.random_element(&mut rng, sampling.max_len);
            let ab = acting.op(&a, &b).map_err(|e| e.to_string())?;
            let lhs = act(&x, &ab).map_err(|e| e.to_string())?;
            let rhs = act(&x, &a).and_then(|xa| act(&xa, &b)).map_err(|e| e.to_string())?;
            if !acted.eq(&lhs, &rhs).map_err(|e| e.to_string())? {
                return Err(format!("x = {x}, a = {a}, b = {b}: x^(a+b) = {lhs}, (xᵃ)ᵇ = {rhs}"));
            }
        }
        Ok(sampling.samples)
    })();
    report.record("action.composition", "x^(a+b) = (xᵃ)ᵇ", composition);

    let additivity = (|| {
        for _ in 0..sampling.samples {
            let x = acted.random_element(&mut rng, sampling.max_len);
            let y = acted.random_element(&mut rng, sampling.max_len);
            let a = acting.random_element(&mut rng, sampling.max_len);
            let xy = acted.op(&x, &y).map_err(|e| e.to_string())?;
            let lhs = act(&xy, &a).map_err(|e| e.to_string())?;
            let rhs = act(&x, &a)
                .and_then(|xa| Ok((xa, act(&y, &a)?)))
                .and_then(|(xa, ya)| acted.op(&xa, &ya))
                .map_err(|e| e.to_string())?;
            if !acted.eq(&lhs, &rhs).map_err(|e| e.to_string())? {
                return Err(format!("x = {x}, y = {y}, a = {a}: (x+y)ᵃ = {lhs}, xᵃ + yᵃ = {rhs}"));
            }
        }
        Ok(sampling.samples)
    })();
    report.record("action.additivity", "(x+y)ᵃ = xᵃ + yᵃ", additivity);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Nil2Element;

    #[test]
    fn peiffer_degenerates_to_commutator() {
        let q = Group::FreeNil2 { rank: 2 };
        let m = PreCrossedModule::new(GroupHom::zero(q.clone(), Group::trivial()), GroupAction::Trivial)
            .unwrap();
        let g = q.generators();
        let p = m.peiffer_commutator(&g[0], &g[1]).unwrap();
        assert_eq!(p, Element::Nil2(Nil2Element::basic_commutator(2, 0, 1)));
        let report = m.check_crossed(Sampling::with_samples(20));
        assert!(report.entry("equivariance").unwrap().passed);
        assert!(!report.entry("peiffer").unwrap().passed);
    }

    #[test]
    fn w_on_basis_tensor() {
        let q = Group::FreeNil2 { rank: 2 };
        let m = PreCrossedModule::new(GroupHom::zero(q.clone(), Group::trivial()), GroupAction::Trivial)
            .unwrap();
        assert!(q.is_identity(&m.peiffer_map_w(&TensorElement::zero(2)).unwrap()).unwrap());
        let w = m.peiffer_map_w(&TensorElement::basis(2, 0, 1)).unwrap();
        assert_eq!(w, Element::Nil2(Nil2Element::basic_commutator(2, 0, 1)));
    }
}
