use serde::Serialize;

use super::structures::{retraction_candidate, CylinderQ, SphereD};
use crate::error::Result;
use crate::group::TensorElement;
use crate::linalg::Int;
use crate::quadratic::{qcm_check, rq_homotopic, Obstruction, QCHomotopy, QCMorphism, SolveOptions, Verdict};

/// A solution of the intersection-form constraints: `H₂(f)(e′) = a·e′ + b·e″`
/// and `H₄(f)(e₄) = k·e₄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HomologyType {
    pub a: i64,
    pub b: i64,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyConstraints {
    pub solutions: Vec<HomologyType>,
    /// Why the search range does not matter.
    pub certificate: String,
}

/// All `(a, b, k)` with `|a|, |b| ≤ range` such that `H₂(f)⊗H₂(f)` maps the
/// intersection form `e′⊗e″ + e″⊗e′` to `k` times itself, where `H₂(f)`
/// fixes `e′ + e″`. The tensor is evaluated directly, not via the reduced
/// polynomial system.
pub fn solve_homology_constraints(range: u32) -> HomologyConstraints {
    let range = i64::from(range);
    let form = TensorElement::basis(2, 0, 1)
        .add(&TensorElement::basis(2, 1, 0))
        .expect("same dimension");
    let mut solutions = Vec::new();
    for a in -range..=range {
        for b in -range..=range {
            // columns: images of e′ and e″ = (e′ + e″) − e′
            let h = vec![vec![Int::from(a), Int::from(1 - a)], vec![Int::from(b), Int::from(1 - b)]];
            let image = crate::group::tensor_induced(&h, &form).expect("square matrix");
            let k = image.get(0, 1).clone();
            if &k == image.get(1, 0) && image == form.scale(&k) {
                let k = i64::try_from(k).expect("small");
                solutions.push(HomologyType { a, b, k });
            }
        }
    }
    solutions.sort();
    HomologyConstraints {
        solutions,
        certificate: "the diagonal coefficients give 2a(1 − a) = 0 and 2b(1 − b) = 0; Z has no zero divisors, \
                      so a, b ∈ {0, 1} and k = a + b − 2ab for every range"
            .into(),
    }
}

/// A retraction `g: Q → 𝒟` in the enumerated family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retraction {
    pub a: i64,
    pub b: i64,
    pub r: i64,
    pub morphism: QCMorphism,
}

/// All retractions `g` of `𝒟 ↣ Q` with `g₂(e′) = a·e`, `g₂(e″) = b·e`,
/// `g₃(e₃) = r·ω(e⊗e)`, `|a|, |b| ≤ ab_range`, `|r| ≤ r_bound`, ordered
/// lexicographically in `(a, b, r)`.
pub fn enumerate_retractions(q: &CylinderQ, d: &SphereD, ab_range: u32, r_bound: u32) -> Result<Vec<Retraction>> {
    let (ab, rb) = (i64::from(ab_range), i64::from(r_bound));
    let target = d.under_itself();
    let mut out = Vec::new();
    for a in -ab..=ab {
        for b in -ab..=ab {
            // the constraints on (a, b) do not involve r
            let probe = retraction_candidate(q, d, a, b, 0)?;
            if !qcm_check(&probe, &q.under, &target).passed() {
                continue;
            }
            for r in -rb..=rb {
                let morphism = retraction_candidate(q, d, a, b, r)?;
                if qcm_check(&morphism, &q.under, &target).passed() {
                    out.push(Retraction { a, b, r, morphism });
                }
            }
        }
    }
    Ok(out)
}

/// Retraction parameters as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionKey {
    pub a: i64,
    pub b: i64,
    pub r: i64,
}

impl From<&Retraction> for RetractionKey {
    fn from(g: &Retraction) -> Self {
        RetractionKey { a: g.a, b: g.b, r: g.r }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub key: RetractionKey,
    /// A homotopy from the class representative to this member.
    pub witness: QCHomotopy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionClass {
    pub representative: RetractionKey,
    pub members: Vec<ClassMember>,
}

/// Why two class representatives are not homotopic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub first: RetractionKey,
    pub second: RetractionKey,
    pub obstruction: Obstruction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub classes: Vec<RetractionClass>,
    pub separations: Vec<Separation>,
}

/// Order of the generators of `Q₂` used to choose witnesses: `e`, then the
/// generator the retraction sends to `e`, then the other one. This puts
/// the value of `α₂` on the generator carrying the homology class.
fn witness_order(g: &Retraction) -> Vec<usize> {
    if g.a == 0 && g.b != 0 {
        vec![0, 2, 1]
    } else {
        vec![0, 1, 2]
    }
}

/// Partitions retractions into homotopy classes under `𝒟`. Each class is
/// represented by its member with the smallest `|r|` (ties broken by the
/// input order); every member carries a homotopy from the representative.
pub fn classify_retractions(
    retractions: &[Retraction],
    q: &CylinderQ,
    d: &SphereD,
    r_bound: u32,
) -> Result<Classification> {
    let target = d.under_itself();
    let mut sorted: Vec<&Retraction> = retractions.iter().collect();
    sorted.sort_by_key(|g| (g.r.abs(), g.r < 0));
    let solve = |f: &Retraction, g: &Retraction| {
        let opts = SolveOptions {
            bound: r_bound,
            generator_order: Some(witness_order(f)),
            ..SolveOptions::default()
        };
        rq_homotopic(&f.morphism, &g.morphism, &q.under, &target, &opts)
    };
    let mut reps: Vec<&Retraction> = Vec::new();
    for g in sorted {
        let mut joined = false;
        for rep in &reps {
            if solve(rep, g)?.is_homotopic() {
                joined = true;
                break;
            }
        }
        if !joined {
            reps.push(g);
        }
    }
    let mut separations = Vec::new();
    for (i, f) in reps.iter().enumerate() {
        for g in &reps[i + 1..] {
            if let Verdict::NotHomotopic(obstruction) = solve(f, g)?.verdict {
                separations.push(Separation {
                    first: (*f).into(),
                    second: (*g).into(),
                    obstruction,
                });
            }
        }
    }

    let mut classes = Vec::new();
    for rep in &reps {
        let mut members = Vec::new();
        for g in retractions {
            if let Verdict::Homotopic(witness) = solve(rep, g)?.verdict {
                members.push(ClassMember { key: g.into(), witness });
            }
        }
        classes.push(RetractionClass {
            representative: (*rep).into(),
            members,
        });
    }
    classes.sort_by_key(|c| (c.representative.a, c.representative.b, c.representative.r));
    Ok(Classification { classes, separations })
}
