use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{QCMorphism, ReducedQuadraticModule, UnderComplex};
use crate::error::{Error, Result};
use crate::group::{pairs, Element, GroupHom, Nil2Element, Word};
use crate::linalg::{self, Int};
use crate::report::{CheckReport, Sampling};
use crate::system::{enumerate_box, AffineSystem, SearchMethod};

fn err(e: Error) -> String {
    e.to_string()
}

/// A homotopy `(α₂, α₃): f ≃ g`: the values of `α₂` on the generators of
/// `Q₂` (in `Q₃′`) and of `α₃` on the generators of `Q₃` (in `Q₄′`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCHomotopy {
    pub alpha2: Vec<Vec<Int>>,
    pub alpha3: Vec<Vec<Int>>,
}

impl QCHomotopy {
    pub fn zero(src: &UnderComplex, dst: &UnderComplex) -> Self {
        QCHomotopy {
            alpha2: vec![linalg::zero_vec(dst.rqm().q3().rank()); src.rqm().rank()],
            alpha3: vec![linalg::zero_vec(dst.complex.q4().rank()); src.rqm().q3().rank()],
        }
    }

    /// Negates every generator value. This is a homotopy `g ≃ f` when
    /// `f₂ = g₂`, where the extension rule is plain additivity.
    pub fn reversed(&self) -> Self {
        QCHomotopy {
            alpha2: self.alpha2.iter().map(|v| linalg::neg(v)).collect(),
            alpha3: self.alpha3.iter().map(|v| linalg::neg(v)).collect(),
        }
    }

    /// Adds generator values; from `self: f ≃ g` and `other: g ≃ k` this is
    /// a homotopy `f ≃ k` when `f₂ = g₂ = k₂`.
    pub fn then(&self, other: &QCHomotopy) -> Self {
        let add = |a: &[Vec<Int>], b: &[Vec<Int>]| a.iter().zip(b).map(|(x, y)| linalg::add(x, y)).collect();
        QCHomotopy {
            alpha2: add(&self.alpha2, &other.alpha2),
            alpha3: add(&self.alpha3, &other.alpha3),
        }
    }
}

/// The correction term `B(x, y) = ω′({−f₂x + g₂x} ⊗ {f₂y})` of the
/// extension rule, which depends only on `{x}` and `{y}` and is bilinear;
/// stored as its values on pairs of basis vectors.
struct Correction {
    table: Vec<Vec<Vec<Int>>>,
    width: usize,
}

impl Correction {
    fn new(f: &QCMorphism, g: &QCMorphism, target: &ReducedQuadraticModule) -> Result<Self> {
        let fm = f.f2_ab()?;
        let gm = g.f2_ab()?;
        let diff: Vec<Vec<Int>> = gm.iter().zip(&fm).map(|(a, b)| linalg::sub(a, b)).collect();
        let n = f.f2.source().rank();
        let column = |m: &[Vec<Int>], k: usize| linalg::mat_vec(m, &linalg::unit_vec(n, k));
        let table = (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| target.omega_pair(&column(&diff, k), &column(&fm, l)))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        Ok(Correction {
            table,
            width: target.q3().rank(),
        })
    }

    fn eval(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let mut acc = linalg::zero_vec(self.width);
        for (k, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (l, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                linalg::axpy(&mut acc, &(a * b), &self.table[k][l]);
            }
        }
        acc
    }
}

fn check_values(values: &[Vec<Int>], rank: usize, width: usize) -> Result<()> {
    if values.len() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: values.len(),
        });
    }
    if let Some(v) = values.iter().find(|v| v.len() != width) {
        return Err(Error::RankMismatch {
            expected: width,
            found: v.len(),
        });
    }
    Ok(())
}

/// `α₂` determined by its values on the generators of `Q₂`.
struct Alpha2<'a> {
    values: &'a [Vec<Int>],
    b: Correction,
}

impl<'a> Alpha2<'a> {
    fn new(values: &'a [Vec<Int>], f: &QCMorphism, g: &QCMorphism, target: &ReducedQuadraticModule) -> Result<Self> {
        check_values(values, f.f2.source().rank(), target.q3().rank())?;
        Ok(Alpha2 {
            values,
            b: Correction::new(f, g, target)?,
        })
    }

    fn rank(&self) -> usize {
        self.values.len()
    }

    /// Folds `α(x + l) = α(x) + α(l) + B(x, l)` over the letters of `w`,
    /// with `α(−gᵢ) = −α(gᵢ) + B(gᵢ, gᵢ)` forced by `α(0) = 0`.
    fn fold_letters(&self, w: &Word, acc: &mut Vec<Int>, acc_ab: &mut Vec<Int>) {
        let n = self.rank();
        for l in w.letters() {
            let e = linalg::unit_vec(n, l.generator);
            let mut v = self.values[l.generator].clone();
            if l.inverse {
                v = linalg::add(&linalg::neg(&v), &self.b.eval(&e, &e));
            }
            let corr = self.b.eval(acc_ab, &linalg::scale(&Int::from(l.sign()), &e));
            *acc = linalg::add(acc, &linalg::add(&v, &corr));
            acc_ab[l.generator] += l.sign();
        }
    }

    fn fold_word(&self, w: &Word) -> Result<Vec<Int>> {
        w.check_rank(self.rank())?;
        let mut acc = linalg::zero_vec(self.b.width);
        let mut acc_ab = linalg::zero_vec(self.rank());
        self.fold_letters(w, &mut acc, &mut acc_ab);
        Ok(acc)
    }

    fn extend(&self, x: &Nil2Element) -> Result<Vec<Int>> {
        let n = self.rank();
        if x.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: x.rank(),
            });
        }
        let mut acc = linalg::zero_vec(self.b.width);
        let mut acc_ab = linalg::zero_vec(n);
        // (syllable class, value of the syllable, multiplicity)
        let mut syllables: Vec<(Vec<Int>, Vec<Int>, &Int)> = Vec::new();
        for (i, a) in x.base().iter().enumerate() {
            syllables.push((linalg::unit_vec(n, i), self.values[i].clone(), a));
        }
        for ((i, j), c) in pairs(n).zip(x.comm()) {
            if c.is_zero() {
                continue;
            }
            let mut v = linalg::zero_vec(self.b.width);
            let mut v_ab = linalg::zero_vec(n);
            let comm = Word::from_powers(&[(i, -1), (j, -1), (i, 1), (j, 1)]);
            self.fold_letters(&comm, &mut v, &mut v_ab);
            syllables.push((v_ab, v, c));
        }
        for (s_ab, s_val, k) in syllables {
            if k.is_zero() {
                continue;
            }
            let ks_ab = linalg::scale(k, &s_ab);
            let self_corr = self.b.eval(&s_ab, &s_ab);
            let ks_val = linalg::add(&linalg::scale(k, &s_val), &linalg::scale(&linalg::binomial2(k), &self_corr));
            let corr = self.b.eval(&acc_ab, &ks_ab);
            acc = linalg::add(&acc, &linalg::add(&ks_val, &corr));
            acc_ab = linalg::add(&acc_ab, &ks_ab);
        }
        Ok(acc)
    }
}

/// `α₂(x)` for a word `x`, folding the extension rule letter by letter.
pub fn alpha2_fold_word(
    values: &[Vec<Int>],
    f: &QCMorphism,
    g: &QCMorphism,
    target: &ReducedQuadraticModule,
    w: &Word,
) -> Result<Vec<Int>> {
    Alpha2::new(values, f, g, target)?.fold_word(w)
}

/// `α₂(x)` from the values of `α₂` on generators: the extension rule is
/// folded left to right over the syllables `a₁g₁, …, aₙgₙ, c_ij(gᵢ, gⱼ)` of
/// the normal form, with `α(k·s) = k·α(s) + C(k, 2)·B(s, s)`.
pub fn alpha2_extend(
    values: &[Vec<Int>],
    f: &QCMorphism,
    g: &QCMorphism,
    target: &ReducedQuadraticModule,
    x: &Nil2Element,
) -> Result<Vec<Int>> {
    Alpha2::new(values, f, g, target)?.extend(x)
}

/// Why two morphisms are not homotopic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// `∂₃′ = 0`, so `−f₂ + g₂ = ∂₃′α₂` forces `f₂ = g₂`, which fails at
    /// this generator.
    BoundaryZeroForcesEqual { generator: usize },
    /// `−f₂ + g₂` at this generator is not in the image of `∂₃′`.
    Homotopy1Infeasible { generator: usize, difference: String },
    /// The remaining equations have no integer solution.
    SystemInconsistent { equation: String },
    /// No candidate with coefficients in `[−bound, bound]` works.
    NotFoundWithinBound { bound: u32 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::BoundaryZeroForcesEqual { generator } => write!(
                f,
                "∂₃ = 0 forces f₂ = g₂, but f₂ and g₂ differ on generator g{}",
                generator + 1
            ),
            Obstruction::Homotopy1Infeasible { generator, difference } => write!(
                f,
                "−f₂ + g₂ = {difference} on generator g{} is not in the image of ∂₃",
                generator + 1
            ),
            Obstruction::SystemInconsistent { equation } => {
                write!(f, "no integer solution: {equation}")
            }
            Obstruction::NotFoundWithinBound { bound } => {
                write!(f, "no homotopy with coefficients in [-{bound}, {bound}]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Homotopic(QCHomotopy),
    NotHomotopic(Obstruction),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyDecision {
    pub verdict: Verdict,
    pub method: SearchMethod,
}

impl HomotopyDecision {
    pub fn witness(&self) -> Option<&QCHomotopy> {
        match &self.verdict {
            Verdict::Homotopic(h) => Some(h),
            Verdict::NotHomotopic(_) => None,
        }
    }

    pub fn is_homotopic(&self) -> bool {
        self.witness().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Coefficient radius for [`rq_search_homotopy`]; the linear solver is
    /// exact and does not need it.
    pub bound: u32,
    /// Order of the generators of `Q₂` used to pick the returned witness
    /// among all solutions: values on generators listed later are made as
    /// small as possible first. Defaults to the natural order.
    pub generator_order: Option<Vec<usize>>,
    /// Sampling for re-verifying a witness. The equations on generators
    /// are always checked exactly; samples only add products on top.
    pub sampling: Sampling,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            bound: 10,
            generator_order: None,
            sampling: Sampling::with_samples(16),
        }
    }
}

fn check_shapes(f: &QCMorphism, g: &QCMorphism, src: &UnderComplex, dst: &UnderComplex) -> Result<()> {
    for m in [f, g] {
        let ok = m.f2.source() == &src.rqm().q2()
            && m.f2.target() == &dst.rqm().q2()
            && m.f3.source() == &src.rqm().q3_group()
            && m.f3.target() == &dst.rqm().q3_group()
            && m.f4.source() == &src.complex.q4_group()
            && m.f4.target() == &dst.complex.q4_group();
        if !ok {
            return Err(Error::Structure("morphisms do not map between the given complexes".into()));
        }
    }
    if src.q2.len() != dst.q2.len() || src.q3.len() != dst.q3.len() {
        return Err(Error::Structure("source and target are under different objects".into()));
    }
    let q2 = dst.rqm().q2();
    for u in &src.q2 {
        if !q2.eq(&f.f2.apply(u)?, &g.f2.apply(u)?)? {
            return Err(Error::Structure(format!("f₂ and g₂ differ on the under-object element {u}")));
        }
    }
    let q3 = dst.rqm().q3_group();
    for u in &src.q3 {
        if !q3.eq(&f.f3.apply(u)?, &g.f3.apply(u)?)? {
            return Err(Error::Structure(format!("f₃ and g₃ differ on the under-object element {u}")));
        }
    }
    Ok(())
}

/// Decides `f ≃ g` under `𝒟` exactly.
///
/// `α₂` is affine in its generator values, and `∂₃′α₂` lands in the
/// abelian image of `∂₃′`, on which the doubled Mal'cev coordinates of
/// `Q₂′` are additive; so all equations are linear over `Z`. The equation
/// `−f₂ + g₂ = ∂₃′α₂` is first solved generator by generator to produce a
/// precise obstruction. A returned witness has passed
/// [`verify_homotopy`].
pub fn rq_homotopic(
    f: &QCMorphism,
    g: &QCMorphism,
    src: &UnderComplex,
    dst: &UnderComplex,
    opts: &SolveOptions,
) -> Result<HomotopyDecision> {
    check_shapes(f, g, src, dst)?;
    let method = SearchMethod::LinearSolve;
    let not = |o: Obstruction| Ok(HomotopyDecision { verdict: Verdict::NotHomotopic(o), method });
    let (r, rr) = (src.rqm(), dst.rqm());
    let n = r.rank();
    let r3 = rr.q3().rank();
    let m3 = r.q3().rank();
    let r4 = dst.complex.q4().rank();
    let nv = n * r3 + m3 * r4;
    let a2 = |i: usize| i * r3;
    let a3 = |h: usize| n * r3 + h * r4;
    let q2y = rr.q2();

    let logs: Vec<Vec<Int>> = rr
        .d3()
        .images()
        .iter()
        .map(|h| Ok(h.as_nil2()?.doubled_log()))
        .collect::<Result<_>>()?;
    let log_width = n_log_width(rr.rank());
    let boundary_zero = rr.d3().images().iter().all(|h| h.as_nil2().map(Nil2Element::is_identity).unwrap_or(false));
    let differences: Vec<Element> = r
        .q2()
        .generators()
        .iter()
        .map(|x| q2y.op(&q2y.inv(&f.f2.apply(x)?)?, &g.f2.apply(x)?))
        .collect::<Result<_>>()?;

    // ∂₃′(v) = −f₂gᵢ + g₂gᵢ with v at variable offset `off` in an `nvars` system
    let boundary_rows = |nvars: usize, off: usize| -> Vec<Vec<Int>> {
        (0..log_width)
            .map(|c| {
                let mut row = linalg::zero_vec(nvars);
                for (k, log) in logs.iter().enumerate() {
                    row[off + k] = log[c].clone();
                }
                row
            })
            .collect()
    };

    for (i, d) in differences.iter().enumerate() {
        let mut s = AffineSystem::new(r3);
        s.add_exact(boundary_rows(r3, 0), d.as_nil2()?.doubled_log(), "homotopy1");
        if s.solve().is_err() {
            return not(if boundary_zero {
                Obstruction::BoundaryZeroForcesEqual { generator: i }
            } else {
                Obstruction::Homotopy1Infeasible {
                    generator: i,
                    difference: d.to_string(),
                }
            });
        }
    }

    let zero_values = vec![linalg::zero_vec(r3); n];
    let zero_alpha = Alpha2::new(&zero_values, f, g, rr)?;
    let constant = |x: &Nil2Element| zero_alpha.extend(x);
    // rows expressing the linear part of α₂(x) in Q₃′ coordinates
    let alpha2_rows = |x_ab: &[Int]| -> Vec<Vec<Int>> {
        (0..r3)
            .map(|k| {
                let mut row = linalg::zero_vec(nv);
                for (i, a) in x_ab.iter().enumerate() {
                    row[a2(i) + k] = a.clone();
                }
                row
            })
            .collect()
    };
    let alpha3_rows = |q: &[Int]| -> Vec<Vec<Int>> {
        (0..r4)
            .map(|l| {
                let mut row = linalg::zero_vec(nv);
                for (h, c) in q.iter().enumerate() {
                    row[a3(h) + l] = c.clone();
                }
                row
            })
            .collect()
    };

    let mut s = AffineSystem::new(nv);
    for (d, u) in src.q2.iter().enumerate() {
        let u = u.as_nil2()?;
        s.add_in_group(
            rr.q3(),
            alpha2_rows(&u.abelianize()),
            linalg::neg(&constant(u)?),
            format!("α₂ vanishes on generator {} of 𝒟₂", d + 1),
        );
    }
    for (d, u) in src.q3.iter().enumerate() {
        s.add_in_group(
            dst.complex.q4(),
            alpha3_rows(u.as_vector()?),
            linalg::zero_vec(r4),
            format!("α₃ vanishes on generator {} of 𝒟₃", d + 1),
        );
    }
    for (k, rel) in r.q3().relations().iter().enumerate() {
        s.add_in_group(
            dst.complex.q4(),
            alpha3_rows(rel),
            linalg::zero_vec(r4),
            format!("α₃ respects relation {} of Q₃", k + 1),
        );
    }
    for (i, d) in differences.iter().enumerate() {
        s.add_exact(boundary_rows(nv, a2(i)), d.as_nil2()?.doubled_log(), format!("∂₃′α₂(g{}) = −f₂ + g₂", i + 1));
    }
    let d4y = dst.complex.d4();
    for (h, q) in r.q3_group().generators().iter().enumerate() {
        let dq = r.d3().apply(q)?;
        let dq = dq.as_nil2()?;
        let mut rows = alpha2_rows(&dq.abelianize());
        // ∂₄′ applied to the α₃(h) block
        for (l, img) in d4y.images().iter().enumerate() {
            for (k, row) in rows.iter_mut().enumerate() {
                row[a3(h) + l] += &img.as_vector()?[k];
            }
        }
        let diff = linalg::sub(g.f3.apply(q)?.as_vector()?, f.f3.apply(q)?.as_vector()?);
        s.add_in_group(
            rr.q3(),
            rows,
            linalg::sub(&diff, &constant(dq)?),
            format!("−f₃ + g₃ = ∂₄′α₃ + α₂∂₃ at h{}", h + 1),
        );
    }
    for (k, c) in src.complex.q4_group().generators().iter().enumerate() {
        let dc = src.complex.d4().apply(c)?;
        let diff = linalg::sub(g.f4.apply(c)?.as_vector()?, f.f4.apply(c)?.as_vector()?);
        s.add_in_group(
            dst.complex.q4(),
            alpha3_rows(dc.as_vector()?),
            diff,
            format!("−f₄ + g₄ = α₃∂₄ at generator {} of Q₄", k + 1),
        );
    }

    let sol = match s.solve() {
        Ok(sol) => sol,
        Err(equation) => return not(Obstruction::SystemInconsistent { equation }),
    };

    let mut lattice = sol.kernel;
    for i in 0..n {
        for rel in rr.q3().hermite_relations() {
            let mut v = linalg::zero_vec(nv);
            v[a2(i)..a2(i) + r3].clone_from_slice(rel);
            lattice.push(v);
        }
    }
    for h in 0..m3 {
        for rel in dst.complex.q4().hermite_relations() {
            let mut v = linalg::zero_vec(nv);
            v[a3(h)..a3(h) + r4].clone_from_slice(rel);
            lattice.push(v);
        }
    }
    let order: Vec<usize> = opts.generator_order.clone().unwrap_or_else(|| (0..n).collect());
    if order.len() != n || {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        sorted != (0..n).collect::<Vec<_>>()
    } {
        return Err(Error::Structure("generator order must list every generator of Q₂ once".into()));
    }
    let mut priority: Vec<usize> = (n * r3..nv).collect();
    for &i in order.iter().rev() {
        priority.extend((a2(i)..a2(i) + r3).rev());
    }
    let v = linalg::reduce_with_priority(&lattice, &sol.values, &priority);
    let witness = QCHomotopy {
        alpha2: (0..n).map(|i| v[a2(i)..a2(i) + r3].to_vec()).collect(),
        alpha3: (0..m3).map(|h| v[a3(h)..a3(h) + r4].to_vec()).collect(),
    };
    let report = verify_homotopy(f, g, src, dst, &witness, opts.sampling);
    if !report.passed() {
        return Err(Error::Structure(format!("homotopy witness failed re-verification:\n{report}")));
    }
    Ok(HomotopyDecision {
        verdict: Verdict::Homotopic(witness),
        method,
    })
}

/// Length of the doubled Mal'cev coordinate vector on `n` generators.
fn n_log_width(n: usize) -> usize {
    n + n * n.saturating_sub(1) / 2
}

/// Exhaustive search over generator values with coefficients in
/// `[−bound, bound]`, in the order of [`enumerate_box`]; the first
/// candidate passing every equation on generators is re-verified and
/// returned.
pub fn rq_search_homotopy(
    f: &QCMorphism,
    g: &QCMorphism,
    src: &UnderComplex,
    dst: &UnderComplex,
    bound: u32,
) -> Result<HomotopyDecision> {
    check_shapes(f, g, src, dst)?;
    let n = src.rqm().rank();
    let r3 = dst.rqm().q3().rank();
    let m3 = src.rqm().q3().rank();
    let r4 = dst.complex.q4().rank();
    let method = SearchMethod::Enumeration { bound };
    let found = enumerate_box(n * r3 + m3 * r4, bound, |v| {
        let h = QCHomotopy {
            alpha2: (0..n).map(|i| v[i * r3..(i + 1) * r3].to_vec()).collect(),
            alpha3: (0..m3).map(|k| v[n * r3 + k * r4..n * r3 + (k + 1) * r4].to_vec()).collect(),
        };
        evaluate(f, g, src, dst, &h, None).ok()?.then_some(h)
    });
    let verdict = match found {
        Some(h) => {
            let report = verify_homotopy(f, g, src, dst, &h, SolveOptions::default().sampling);
            if !report.passed() {
                return Err(Error::Structure(format!("homotopy witness failed re-verification:\n{report}")));
            }
            Verdict::Homotopic(h)
        }
        None => Verdict::NotHomotopic(Obstruction::NotFoundWithinBound { bound }),
    };
    Ok(HomotopyDecision { verdict, method })
}

/// Re-checks a homotopy equation by equation: vanishing on `𝒟`, `α₃` a
/// homomorphism, the three homotopy equations on generators and sampled
/// elements, and consistency of the extension rule for `α₂`.
pub fn verify_homotopy(
    f: &QCMorphism,
    g: &QCMorphism,
    src: &UnderComplex,
    dst: &UnderComplex,
    h: &QCHomotopy,
    sampling: Sampling,
) -> CheckReport {
    let mut report = CheckReport::sampled("homotopy of reduced quadratic complex morphisms", sampling);
    if let Err(e) = check_shapes(f, g, src, dst) {
        report.record("shape", "f, g: Q → Q′ under 𝒟", Err(e.to_string()));
        return report;
    }
    if let Err(e) = evaluate(f, g, src, dst, h, Some((&mut report, sampling))) {
        report.record("shape", "witness dimensions", Err(e.to_string()));
    }
    report
}

/// Evaluates all homotopy conditions; with a report, records each one.
fn evaluate(
    f: &QCMorphism,
    g: &QCMorphism,
    src: &UnderComplex,
    dst: &UnderComplex,
    h: &QCHomotopy,
    mut report: Option<(&mut CheckReport, Sampling)>,
) -> Result<bool> {
    let (r, rr) = (src.rqm(), dst.rqm());
    check_values(&h.alpha2, r.rank(), rr.q3().rank())?;
    check_values(&h.alpha3, r.q3().rank(), dst.complex.q4().rank())?;
    let sampling = report.as_ref().map(|(_, s)| *s);
    let samples = |grp: &crate::group::Group| -> Vec<Element> {
        let mut v = grp.generators();
        if let Some(s) = sampling {
            let mut rng = s.rng();
            v.extend((0..s.samples).map(|_| grp.random_element(&mut rng, s.max_len)));
        }
        v
    };
    let full = report.is_some();
    let mut all = true;
    let mut record = |id: &str, desc: &str, outcome: std::result::Result<usize, String>| {
        all &= outcome.is_ok();
        if let Some((rep, _)) = report.as_mut() {
            rep.record(id, desc, outcome);
        }
        all
    };

    let alpha3 = GroupHom::new(
        r.q3_group(),
        dst.complex.q4_group(),
        h.alpha3.iter().map(|v| Element::Abelian(v.clone())).collect(),
    )?;
    let a2 = Alpha2::new(&h.alpha2, f, g, rr)?;
    let alpha2 = |x: &Nil2Element| a2.extend(x);
    let (q3y, q4y) = (rr.q3(), dst.complex.q4());

    let hom = alpha3.validate().map(|_| r.q3().rank()).map_err(err);
    if !record("alpha3.homomorphism", "α₃: Q₃ → Q₄′ is well defined", hom) && !full {
        return Ok(false);
    }

    let vanish2 = (|| {
        for (d, u) in src.q2.iter().enumerate() {
            let v = alpha2(u.as_nil2().map_err(err)?).map_err(err)?;
            if !q3y.is_zero(&v) {
                return Err(format!("α₂(q₂(d{})) = {}", d + 1, Element::Abelian(v)));
            }
        }
        Ok(src.q2.len())
    })();
    if !record("alpha2.vanishing", "α₂ = 0 on 𝒟₂", vanish2) && !full {
        return Ok(false);
    }
    let vanish3 = (|| {
        for (d, u) in src.q3.iter().enumerate() {
            let v = alpha3.apply(u).map_err(err)?;
            if !q4y.is_zero(v.as_vector().map_err(err)?) {
                return Err(format!("α₃(q₃(d{})) = {v}", d + 1));
            }
        }
        Ok(src.q3.len())
    })();
    if !record("alpha3.vanishing", "α₃ = 0 on 𝒟₃", vanish3) && !full {
        return Ok(false);
    }

    let xs = samples(&r.q2());
    let h1 = (|| {
        let q2y = rr.q2();
        for x in &xs {
            let lhs = rr.boundary(&alpha2(x.as_nil2().map_err(err)?).map_err(err)?).map_err(err)?;
            let (fx, gx) = (f.f2.apply(x).map_err(err)?, g.f2.apply(x).map_err(err)?);
            let rhs = q2y.op(&q2y.inv(&fx).map_err(err)?, &gx).map_err(err)?;
            if Element::Nil2(lhs.clone()) != rhs {
                return Err(format!("at {x}: ∂₃′α₂ = {lhs}, −f₂ + g₂ = {rhs}"));
            }
        }
        Ok(xs.len())
    })();
    if !record("homotopy1", "−f₂ + g₂ = ∂₃′α₂", h1) && !full {
        return Ok(false);
    }

    let qs = samples(&r.q3_group());
    let h2 = (|| {
        for q in &qs {
            let diff = linalg::sub(
                g.f3.apply(q).map_err(err)?.as_vector().map_err(err)?,
                f.f3.apply(q).map_err(err)?.as_vector().map_err(err)?,
            );
            let a3q = alpha3.apply(q).map_err(err)?;
            let d4a = dst.complex.d4().apply(&a3q).map_err(err)?;
            let dq = r.d3().apply(q).map_err(err)?;
            let a2d = alpha2(dq.as_nil2().map_err(err)?).map_err(err)?;
            let rhs = linalg::add(d4a.as_vector().map_err(err)?, &a2d);
            if !q3y.equal(&diff, &rhs).map_err(err)? {
                return Err(format!(
                    "at {q}: −f₃ + g₃ = {}, ∂₄′α₃ + α₂∂₃ = {}",
                    Element::Abelian(diff),
                    Element::Abelian(rhs)
                ));
            }
        }
        Ok(qs.len())
    })();
    if !record("homotopy2", "−f₃ + g₃ = ∂₄′α₃ + α₂∂₃", h2) && !full {
        return Ok(false);
    }

    let ks = samples(&src.complex.q4_group());
    let h3 = (|| {
        for k in &ks {
            let diff = linalg::sub(
                g.f4.apply(k).map_err(err)?.as_vector().map_err(err)?,
                f.f4.apply(k).map_err(err)?.as_vector().map_err(err)?,
            );
            let rhs = alpha3.apply(&src.complex.d4().apply(k).map_err(err)?).map_err(err)?;
            if !q4y.equal(&diff, rhs.as_vector().map_err(err)?).map_err(err)? {
                return Err(format!("at {k}: −f₄ + g₄ = {}, α₃∂₄ = {rhs}", Element::Abelian(diff)));
            }
        }
        Ok(ks.len())
    })();
    if !record("homotopy3", "−f₄ + g₄ = α₃∂₄", h3) && !full {
        return Ok(false);
    }

    if let Some(s) = sampling {
        let consistency = (|| {
            let q2 = r.q2();
            let b = &a2.b;
            let same = |x: &[Int], y: &[Int]| q3y.equal(x, y).map_err(err);
            let mut rng = s.rng();
            for _ in 0..s.samples {
                let [x, y, z] = [0, 1, 2].map(|_| q2.random_element(&mut rng, s.max_len));
                let word = q2.to_word(&x).map_err(err)?.concat(&q2.to_word(&y).map_err(err)?);
                let xy = q2.op(&x, &y).map_err(err)?;
                let by_word = a2.fold_word(&word).map_err(err)?;
                let by_form = alpha2(xy.as_nil2().map_err(err)?).map_err(err)?;
                if !same(&by_word, &by_form)? {
                    return Err(format!("α₂({xy}) folded over a word differs from the normal form"));
                }
                let ax = alpha2(x.as_nil2().map_err(err)?).map_err(err)?;
                let ay = alpha2(y.as_nil2().map_err(err)?).map_err(err)?;
                let rule = linalg::add(
                    &linalg::add(&ax, &ay),
                    &b.eval(&q2.abelianize(&x).map_err(err)?, &q2.abelianize(&y).map_err(err)?),
                );
                if !same(&by_form, &rule)? {
                    return Err(format!("α₂(x + y) breaks the extension rule at x = {x}, y = {y}"));
                }
                let yz = q2.op(&y, &z).map_err(err)?;
                let left = alpha2(q2.op(&xy, &z).map_err(err)?.as_nil2().map_err(err)?).map_err(err)?;
                let az = alpha2(z.as_nil2().map_err(err)?).map_err(err)?;
                let via_right = linalg::add(
                    &linalg::add(&ax, &alpha2(yz.as_nil2().map_err(err)?).map_err(err)?),
                    &b.eval(&q2.abelianize(&x).map_err(err)?, &q2.abelianize(&yz).map_err(err)?),
                );
                let via_left = linalg::add(
                    &linalg::add(&by_form, &az),
                    &b.eval(&q2.abelianize(&xy).map_err(err)?, &q2.abelianize(&z).map_err(err)?),
                );
                if !same(&left, &via_left)? || !same(&via_left, &via_right)? {
                    return Err(format!("α₂((x+y)+z) ≠ α₂(x+(y+z)) at x = {x}, y = {y}, z = {z}"));
                }
            }
            Ok(s.samples)
        })();
        record(
            "alpha2.consistency",
            "extension rule for α₂ is independent of bracketing",
            consistency,
        );

        let boundary_zero = rr.d3().images().iter().all(|h| h.as_nil2().map(Nil2Element::is_identity).unwrap_or(false));
        if boundary_zero {
            let equal = f
                .f2
                .agrees_with(&g.f2)
                .map_err(err)
                .and_then(|d| match d {
                    None => Ok(r.rank()),
                    Some(i) => Err(format!("f₂ ≠ g₂ on g{} although ∂₃′ = 0", i + 1)),
                });
            record("boundary-zero", "∂₃′ = 0 implies f₂ = g₂", equal);
        }
    }
    Ok(all)
}
