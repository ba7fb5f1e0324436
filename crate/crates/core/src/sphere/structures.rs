use crate::error::{Error, Result};
use crate::group::{Element, FgAbelianGroup, Nil2Element};
use crate::linalg::{self, Int};
use crate::quadratic::{QCMorphism, ReducedQuadraticComplex4, ReducedQuadraticModule, UnderComplex};

/// Number of 2-cells of the cylinder: `e`, `e′`, `e″`.
pub const CYLINDER_RANK: usize = 3;
/// Coordinate of `e₃` in the cylinder's `Q₃`.
pub const E3: usize = 0;

/// Coordinate of the symbol `ω(c̄ᵢ ⊗ c̄ⱼ)` in the cylinder's `Q₃`.
pub fn omega_symbol(i: usize, j: usize) -> usize {
    1 + CYLINDER_RANK * i + j
}

/// `{∂₃(e₃)} = −e + e′ + e″`.
pub const E3_BOUNDARY: [i64; CYLINDER_RANK] = [-1, 1, 1];

/// The sphere `𝒟`: `𝒟₂ = Z⟨e⟩`, `𝒟₃ = Z⟨ω(e⊗e)⟩`, `∂₃ = 0`, `ω` the
/// identity of `Z`, viewed as a complex with `𝒟₄ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereD {
    pub complex: ReducedQuadraticComplex4,
}

impl SphereD {
    pub fn rqm(&self) -> &ReducedQuadraticModule {
        self.complex.rqm()
    }

    /// `𝒟` under itself via the identity.
    pub fn under_itself(&self) -> UnderComplex {
        UnderComplex {
            complex: self.complex.clone(),
            q2: vec![Element::Nil2(Nil2Element::generator(1, 0))],
            q3: vec![Element::from_i64s(&[1])],
        }
    }
}

pub fn build_sphere_d() -> SphereD {
    let rqm = ReducedQuadraticModule::new(
        1,
        FgAbelianGroup::free(1),
        vec![vec![vec![Int::from(1)]]],
        vec![Element::Nil2(Nil2Element::identity(1))],
    )
    .expect("sphere data is well formed");
    SphereD {
        complex: ReducedQuadraticComplex4::concentrated(rqm),
    }
}

/// The cylinder `Q` with its cofibration `q: 𝒟 ↣ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderQ {
    pub under: UnderComplex,
}

impl CylinderQ {
    pub fn complex(&self) -> &ReducedQuadraticComplex4 {
        &self.under.complex
    }

    pub fn rqm(&self) -> &ReducedQuadraticModule {
        self.under.rqm()
    }
}

/// Relations on `Q₃ = Z⟨e₃, ω(c̄ᵢ⊗c̄ⱼ)⟩` generated by the axioms, given the
/// classes `{∂₃h}` of the generators: `ω({∂₃h}⊗x̄ + x̄⊗{∂₃h}) = 0` for each
/// basis vector `x̄`, and `ω({∂₃p}⊗{∂₃q}) = 0` for every pair of
/// generators, since commutators in `Q₃` must vanish for it to be abelian.
fn derived_relations(classes: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = CYLINDER_RANK;
    let width = 1 + n * n;
    let omega = |x: &[Int], y: &[Int]| {
        let mut v = linalg::zero_vec(width);
        for i in 0..n {
            for j in 0..n {
                v[omega_symbol(i, j)] += &x[i] * &y[j];
            }
        }
        v
    };
    let mut rows = Vec::new();
    for c in classes {
        for k in 0..n {
            let x = linalg::unit_vec(n, k);
            rows.push(linalg::add(&omega(c, &x), &omega(&x, c)));
        }
    }
    for p in classes {
        for q in classes {
            rows.push(omega(p, q));
        }
    }
    rows.retain(|r| !linalg::is_zero(r));
    rows.sort();
    rows.dedup();
    rows
}

pub fn build_cylinder_q() -> CylinderQ {
    let n = CYLINDER_RANK;
    let width = 1 + n * n;
    let e3_boundary: Vec<Int> = E3_BOUNDARY.iter().map(|&a| Int::from(a)).collect();
    let mut d3 = vec![Element::Nil2(Nil2Element::from_parts(e3_boundary.clone(), linalg::zero_vec(3)).expect("rank 3"))];
    let mut classes = vec![e3_boundary];
    for i in 0..n {
        for j in 0..n {
            let comm = Nil2Element::generator(n, i)
                .commutator(&Nil2Element::generator(n, j))
                .expect("same rank");
            classes.push(comm.abelianize());
            d3.push(Element::Nil2(comm));
        }
    }
    let q3 = FgAbelianGroup::new(width, derived_relations(&classes)).expect("relations have full width");
    let omega = (0..n)
        .map(|i| (0..n).map(|j| linalg::unit_vec(width, omega_symbol(i, j))).collect())
        .collect();
    let rqm = ReducedQuadraticModule::new(n, q3, omega, d3).expect("cylinder data is well formed");
    let mut d4 = linalg::zero_vec(width);
    d4[omega_symbol(1, 2)] = Int::from(1);
    d4[omega_symbol(2, 1)] = Int::from(1);
    let complex =
        ReducedQuadraticComplex4::new(rqm, FgAbelianGroup::free(1), vec![Element::Abelian(d4)]).expect("∂₄ lands in Q₃");
    CylinderQ {
        under: UnderComplex {
            complex,
            q2: vec![Element::Nil2(Nil2Element::generator(n, 0))],
            q3: vec![Element::Abelian(linalg::unit_vec(width, omega_symbol(0, 0)))],
        },
    }
}

/// The candidate `g: Q → 𝒟` with `g₂(e) = e`, `g₂(e′) = a·e`,
/// `g₂(e″) = b·e`, `g₃(e₃) = r·ω(e⊗e)` and `g₄ = 0`. The images of the
/// ω-symbols are forced: `g₃ω(c̄ᵢ⊗c̄ⱼ) = ω(g₂ᵃᵇc̄ᵢ ⊗ g₂ᵃᵇc̄ⱼ)`.
pub fn retraction_candidate(q: &CylinderQ, d: &SphereD, a: i64, b: i64, r: i64) -> Result<QCMorphism> {
    let n = CYLINDER_RANK;
    let coeffs = [1, a, b];
    let f2 = coeffs
        .iter()
        .map(|&c| Element::Nil2(Nil2Element::generator(1, 0).scale(&Int::from(c))))
        .collect();
    let f2_ab: Vec<Vec<Int>> = vec![coeffs.iter().map(|&c| Int::from(c)).collect()];
    let mut f3 = vec![Element::from_i64s(&[r])];
    for i in 0..n {
        for j in 0..n {
            let x = linalg::mat_vec(&f2_ab, &linalg::unit_vec(n, i));
            let y = linalg::mat_vec(&f2_ab, &linalg::unit_vec(n, j));
            f3.push(Element::Abelian(d.rqm().omega_pair(&x, &y)?));
        }
    }
    if f3.len() != q.rqm().q3().rank() {
        return Err(Error::Underdetermined(format!(
            "{} of {} generators of Q₃ have forced images",
            f3.len(),
            q.rqm().q3().rank()
        )));
    }
    QCMorphism::from_images(q.complex(), &d.complex, f2, f3, None)
}
