use super::module::check_action;
use super::{GroupAction, PreCrossedModule};
use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupHom};
use crate::linalg::{self, Int};
use crate::report::{CheckReport, Sampling};
use crate::system::{enumerate_box, AffineSystem, SearchMethod};

/// `M₃ → M₂ → M₁` with `M₂ → M₁` a crossed module, `M₃` abelian and
/// `M₁` acting on `M₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedComplex3 {
    lower: PreCrossedModule,
    d3: GroupHom,
    action3: GroupAction,
}

impl CrossedComplex3 {
    pub fn new(lower: PreCrossedModule, d3: GroupHom, action3: GroupAction) -> Result<Self> {
        if d3.target() != lower.m2() {
            return Err(Error::Structure("∂₃ must land in M₂".into()));
        }
        Ok(CrossedComplex3 {
            lower,
            d3,
            action3,
        })
    }

    pub fn lower(&self) -> &PreCrossedModule {
        &self.lower
    }

    pub fn m1(&self) -> &Group {
        self.lower.m1()
    }

    pub fn m2(&self) -> &Group {
        self.lower.m2()
    }

    pub fn m3(&self) -> &Group {
        self.d3.source()
    }

    pub fn d2(&self) -> &GroupHom {
        self.lower.d()
    }

    pub fn d3(&self) -> &GroupHom {
        &self.d3
    }

    pub fn action3(&self) -> &GroupAction {
        &self.action3
    }

    /// `hᵐ` for `h ∈ M₃`, `m ∈ M₁`.
    pub fn act3(&self, h: &Element, m: &Element) -> Result<Element> {
        self.action3.act(self.m3(), self.m1(), h, m)
    }

    pub fn check(&self, sampling: Sampling) -> CheckReport {
        let mut report = CheckReport::sampled("3-dimensional crossed complex", sampling);
        report.merge("crossed", self.lower.check_crossed(sampling));
        let (m1, m2, m3) = (self.m1(), self.m2(), self.m3());

        let abelian = (|| {
            let gens = m3.generators();
            for (i, x) in gens.iter().enumerate() {
                for y in &gens[i + 1..] {
                    let c = m3.commutator(x, y).map_err(|e| e.to_string())?;
                    if !m3.is_identity(&c).map_err(|e| e.to_string())? {
                        return Err(format!("({x}, {y}) = {c}"));
                    }
                }
            }
            Ok(gens.len() * gens.len().saturating_sub(1) / 2)
        })();
        report.record("m3.abelian", "M₃ is abelian", abelian);

        let mut action = CheckReport::new("");
        check_action(&mut action, m3, m1, &self.action3, sampling);
        report.merge("m3", action);

        report.record(
            "d3.homomorphism",
            "∂₃: M₃ → M₂ is well defined",
            self.d3.validate().map(|_| m3.rank()).map_err(|e| e.to_string()),
        );

        let d2d3 = (|| {
            for h in m3.generators() {
                let y = self
                    .d3
                    .apply(&h)
                    .and_then(|x| self.d2().apply(&x))
                    .map_err(|e| e.to_string())?;
                if !m1.is_identity(&y).map_err(|e| e.to_string())? {
                    return Err(format!("∂₂∂₃({h}) = {y}"));
                }
            }
            Ok(m3.rank())
        })();
        report.record("d2d3", "∂₂∂₃ = 0", d2d3);

        let trivial = (|| {
            let mut n = 0;
            for x in m2.generators() {
                let dx = self.d2().apply(&x).map_err(|e| e.to_string())?;
                for h in m3.generators() {
                    let y = self.act3(&h, &dx).map_err(|e| e.to_string())?;
                    if !m3.eq(&h, &y).map_err(|e| e.to_string())? {
                        return Err(format!("{h}^∂₂({x}) = {y}"));
                    }
                    n += 1;
                }
            }
            Ok(n)
        })();
        report.record("im-d2.trivial", "im ∂₂ acts trivially on M₃", trivial);

        let equivariant = (|| {
            let mut acting = m1.generators();
            acting.extend(acting.clone().iter().filter_map(|m| m1.inv(m).ok()));
            let mut cases = Vec::new();
            for h in m3.generators() {
                for m in &acting {
                    cases.push((h.clone(), m.clone()));
                }
            }
            let mut rng = sampling.rng();
            for _ in 0..sampling.samples {
                cases.push((
                    m3.random_element(&mut rng, sampling.max_len),
                    m1.random_element(&mut rng, sampling.max_len),
                ));
            }
            let n = cases.len();
            for (h, m) in cases {
                let lhs = self
                    .act3(&h, &m)
                    .and_then(|hm| self.d3.apply(&hm))
                    .map_err(|e| e.to_string())?;
                let rhs = self
                    .d3
                    .apply(&h)
                    .and_then(|x| self.lower.act(&x, &m))
                    .map_err(|e| e.to_string())?;
                if !m2.eq(&lhs, &rhs).map_err(|e| e.to_string())? {
                    return Err(format!("h = {h}, m = {m}: ∂₃(hᵐ) = {lhs}, ∂₃(h)ᵐ = {rhs}"));
                }
            }
            Ok(n)
        })();
        report.record("d3.equivariance", "∂₃(hᵐ) = ∂₃(h)ᵐ", equivariant);
        report
    }
}

/// A morphism of 3-dimensional crossed complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Xc3Morphism {
    pub f1: GroupHom,
    pub f2: GroupHom,
    pub f3: GroupHom,
}

impl Xc3Morphism {
    /// Commuting squares and equivariance, on generators.
    pub fn check(&self, x: &CrossedComplex3, y: &CrossedComplex3) -> CheckReport {
        let mut report = CheckReport::new("morphism of 3-dimensional crossed complexes");
        for (name, f) in [("f1", &self.f1), ("f2", &self.f2), ("f3", &self.f3)] {
            report.record(
                &format!("{name}.homomorphism"),
                "well-defined homomorphism",
                f.validate().map(|_| f.source().rank()).map_err(|e| e.to_string()),
            );
        }
        report.record(
            "d2.square",
            "f₁∂₂ = ∂₂′f₂",
            square(x.d2(), &self.f1, &self.f2, y.d2()),
        );
        report.record(
            "d3.square",
            "f₂∂₃ = ∂₃′f₃",
            square(x.d3(), &self.f2, &self.f3, y.d3()),
        );
        let equivariant = (|| {
            let mut n = 0;
            for m in x.m1().generators() {
                let fm = self.f1.apply(&m).map_err(|e| e.to_string())?;
                for g in x.m2().generators() {
                    let lhs = x.lower().act(&g, &m).and_then(|v| self.f2.apply(&v));
                    let rhs = self.f2.apply(&g).and_then(|v| y.lower().act(&v, &fm));
                    equal(y.m2(), lhs, rhs, || format!("f₂({g}^{m})"))?;
                    n += 1;
                }
                for h in x.m3().generators() {
                    let lhs = x.act3(&h, &m).and_then(|v| self.f3.apply(&v));
                    let rhs = self.f3.apply(&h).and_then(|v| y.act3(&v, &fm));
                    equal(y.m3(), lhs, rhs, || format!("f₃({h}^{m})"))?;
                    n += 1;
                }
            }
            Ok(n)
        })();
        report.record("equivariance", "f₂ and f₃ are f₁-equivariant", equivariant);
        report
    }
}

/// `lower ∘ down = down′ ∘ upper` on generators of the source of `down`.
fn square(
    down: &GroupHom,
    lower: &GroupHom,
    upper: &GroupHom,
    down2: &GroupHom,
) -> std::result::Result<usize, String> {
    for x in down.source().generators() {
        let lhs = down.apply(&x).and_then(|v| lower.apply(&v));
        let rhs = upper.apply(&x).and_then(|v| down2.apply(&v));
        equal(down2.target(), lhs, rhs, || format!("at {x}"))?;
    }
    Ok(down.source().rank())
}

fn equal(
    g: &Group,
    lhs: Result<Element>,
    rhs: Result<Element>,
    what: impl FnOnce() -> String,
) -> std::result::Result<(), String> {
    let (l, r) = (lhs.map_err(|e| e.to_string())?, rhs.map_err(|e| e.to_string())?);
    if g.eq(&l, &r).map_err(|e| e.to_string())? {
        Ok(())
    } else {
        Err(format!("{}: {l} ≠ {r}", what()))
    }
}

/// Outcome of [`xc3_homotopic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Xc3Homotopy {
    /// Values `α(gᵢ) ∈ M₃′` on the generators of `M₂`, when a homotopy exists.
    pub alpha: Option<Vec<Element>>,
    pub method: SearchMethod,
    /// Why no homotopy exists.
    pub certificate: Option<String>,
}

/// Decides whether `f ≃ g` relative to the under-object whose image in
/// `M₂` is `under`, by finding an `f₁`-equivariant `α: M₂ → M₃′` with
/// `−f₂ + g₂ = ∂₃′α`, `−f₃ + g₃ = α∂₃` and `α = 0` on `under`.
///
/// Linear over `Z` when `M₂′` is nil(2) or abelian; otherwise every
/// coefficient vector in `[−bound, bound]` is tried.
pub fn xc3_homotopic(
    f: &Xc3Morphism,
    g: &Xc3Morphism,
    x: &CrossedComplex3,
    y: &CrossedComplex3,
    under: &[Element],
    bound: u32,
) -> Result<Xc3Homotopy> {
    if f.f1.agrees_with(&g.f1)?.is_some() {
        return Err(Error::Structure("homotopies here require f₁ = g₁".into()));
    }
    for u in under {
        if !y.m2().eq(&f.f2.apply(u)?, &g.f2.apply(u)?)? {
            return Err(Error::Structure(format!(
                "f and g differ on the under-object element {u}"
            )));
        }
    }
    let m3y = y.m3().as_abelian()?.clone();
    let n2 = x.m2().rank();
    let r3 = m3y.rank();
    let nvars = n2 * r3;

    if matches!(y.m2(), Group::Free { .. }) {
        let method = SearchMethod::Enumeration { bound };
        let found = enumerate_box(nvars, bound, |v| {
            let alpha = split(v, n2, r3);
            let ok = check_equations(f, g, x, y, under, &alpha, None).ok()?;
            ok.then_some(alpha)
        });
        return finish(f, g, x, y, under, found, method, || {
            format!("no α with coefficients in [-{bound}, {bound}]")
        });
    }

    let method = SearchMethod::LinearSolve;
    // generator-wise ∂₃′-equation first, for a sharper certificate
    for (i, xi) in x.m2().generators().iter().enumerate() {
        let target = difference(y.m2(), &f.f2.apply(xi)?, &g.f2.apply(xi)?)?;
        let mut s = AffineSystem::new(r3);
        add_boundary_equation(&mut s, y, &identity_block(r3), &target, "∂₃′")?;
        if s.solve().is_err() {
            let zero_boundary = y.d3().images().iter().all(|h| y.m2().is_identity(h).unwrap_or(false));
            let certificate = if zero_boundary {
                format!("∂₃′ = 0 forces f₂ = g₂, but they differ on g{}", i + 1)
            } else {
                format!("−f₂ + g₂ at g{} is {target}, not in the image of ∂₃′", i + 1)
            };
            return Ok(Xc3Homotopy {
                alpha: None,
                method,
                certificate: Some(certificate),
            });
        }
    }

    let mut s = AffineSystem::new(nvars);
    let combination = |coeffs: &[Int]| -> Vec<Vec<Int>> {
        (0..r3)
            .map(|k| {
                let mut row = linalg::zero_vec(nvars);
                for (i, c) in coeffs.iter().enumerate() {
                    row[i * r3 + k] = c.clone();
                }
                row
            })
            .collect()
    };
    let zero3 = linalg::zero_vec(r3);
    if let Group::Abelian(a) = x.m2() {
        for (k, rel) in a.relations().iter().enumerate() {
            s.add_in_group(&m3y, combination(rel), zero3.clone(), format!("α on relation {}", k + 1));
        }
    }
    for u in under {
        let c = x.m2().abelianize(u)?;
        s.add_in_group(&m3y, combination(&c), zero3.clone(), format!("α({u}) = 0"));
    }
    for m in x.m1().generators() {
        let fm = f.f1.apply(&m)?;
        let a = y.action3().matrix(y.m3(), y.m1(), &fm)?;
        for (i, xi) in x.m2().generators().iter().enumerate() {
            let mut rows = combination(&x.m2().abelianize(&x.lower().act(xi, &m)?)?);
            for (k, row) in rows.iter_mut().enumerate() {
                for l in 0..r3 {
                    row[i * r3 + l] -= &a[k][l];
                }
            }
            s.add_in_group(&m3y, rows, zero3.clone(), format!("equivariance at g{}, {m}", i + 1));
        }
    }
    for (i, xi) in x.m2().generators().iter().enumerate() {
        let target = difference(y.m2(), &f.f2.apply(xi)?, &g.f2.apply(xi)?)?;
        let mut block = vec![vec![Int::from(0); nvars]; r3];
        for (k, row) in block.iter_mut().enumerate() {
            row[i * r3 + k] = Int::from(1);
        }
        add_boundary_equation(&mut s, y, &block, &target, &format!("∂₃′α(g{}) = −f₂ + g₂", i + 1))?;
    }
    for h in x.m3().generators() {
        let rhs = difference(y.m3(), &f.f3.apply(&h)?, &g.f3.apply(&h)?)?;
        let c = x.m2().abelianize(&x.d3().apply(&h)?)?;
        s.add_in_group(&m3y, combination(&c), rhs.as_vector()?.to_vec(), format!("α∂₃({h}) = −f₃ + g₃"));
    }
    match s.solve() {
        Ok(sol) => {
            let priority: Vec<usize> = (0..nvars).collect();
            let v = linalg::reduce_with_priority(&sol.kernel, &sol.values, &priority);
            let alpha = split(&v, n2, r3)
                .into_iter()
                .map(|a| Element::Abelian(m3y.canonical(a.as_vector().expect("vector"))))
                .collect();
            finish(f, g, x, y, under, Some(alpha), method, String::new)
        }
        Err(label) => Ok(Xc3Homotopy {
            alpha: None,
            method,
            certificate: Some(format!("unsatisfiable: {label}")),
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    f: &Xc3Morphism,
    g: &Xc3Morphism,
    x: &CrossedComplex3,
    y: &CrossedComplex3,
    under: &[Element],
    found: Option<Vec<Element>>,
    method: SearchMethod,
    why_not: impl FnOnce() -> String,
) -> Result<Xc3Homotopy> {
    match found {
        Some(alpha) => {
            let report = xc3_verify_homotopy(f, g, x, y, under, &alpha, Sampling::default());
            if !report.passed() {
                return Err(Error::Structure(format!(
                    "homotopy witness failed re-verification:\n{report}"
                )));
            }
            Ok(Xc3Homotopy {
                alpha: Some(alpha),
                method,
                certificate: None,
            })
        }
        None => Ok(Xc3Homotopy {
            alpha: None,
            method,
            certificate: Some(why_not()),
        }),
    }
}

fn identity_block(r: usize) -> Vec<Vec<Int>> {
    (0..r).map(|k| linalg::unit_vec(r, k)).collect()
}

fn split(v: &[Int], n: usize, r: usize) -> Vec<Element> {
    (0..n).map(|i| Element::Abelian(v[i * r..(i + 1) * r].to_vec())).collect()
}

/// `−a + b`.
fn difference(g: &Group, a: &Element, b: &Element) -> Result<Element> {
    g.op(&g.inv(a)?, b)
}

/// Adds `∂₃′(block · vars) = target` in `M₂′`. `block` expresses an
/// element of `M₃′` (one row per coordinate) in terms of the variables.
fn add_boundary_equation(
    s: &mut AffineSystem,
    y: &CrossedComplex3,
    block: &[Vec<Int>],
    target: &Element,
    label: &str,
) -> Result<()> {
    let nvars = s.nvars();
    let images = y.d3().images();
    match y.m2() {
        Group::FreeNil2 { .. } => {
            // ∂₃′ has abelian image, on which the doubled log is additive
            let logs: Vec<Vec<Int>> = images.iter().map(|h| Ok(h.as_nil2()?.doubled_log())).collect::<Result<_>>()?;
            let target_log = target.as_nil2()?.doubled_log();
            let rows = (0..target_log.len())
                .map(|c| {
                    let mut row = linalg::zero_vec(nvars);
                    for (k, log) in logs.iter().enumerate() {
                        linalg::axpy(&mut row, &log[c], &block[k]);
                    }
                    row
                })
                .collect();
            s.add_exact(rows, target_log, label);
        }
        Group::Abelian(a) => {
            let rows = (0..a.rank())
                .map(|c| {
                    let mut row = linalg::zero_vec(nvars);
                    for (k, h) in images.iter().enumerate() {
                        linalg::axpy(&mut row, &h.as_vector().expect("abelian image")[c], &block[k]);
                    }
                    row
                })
                .collect();
            s.add_in_group(a, rows, target.as_vector()?.to_vec(), label);
        }
        Group::Free { .. } => {
            return Err(Error::Unsupported("linear homotopy equations over a free group".into()))
        }
    }
    Ok(())
}

/// Generator-level check of the homotopy equations; `Ok(true)` when all
/// hold. With `report`, records each equation separately.
fn check_equations(
    f: &Xc3Morphism,
    g: &Xc3Morphism,
    x: &CrossedComplex3,
    y: &CrossedComplex3,
    under: &[Element],
    alpha: &[Element],
    mut report: Option<(&mut CheckReport, Sampling)>,
) -> Result<bool> {
    let a = GroupHom::new(x.m2().clone(), y.m3().clone(), alpha.to_vec())?;
    let sampling = report.as_ref().map(|(_, s)| *s);
    let samples = |g: &Group| -> Vec<Element> {
        let mut v = g.generators();
        if let Some(s) = &sampling {
            let mut rng = s.rng();
            v.extend((0..s.samples).map(|_| g.random_element(&mut rng, s.max_len)));
        }
        v
    };
    let mut all = true;
    let mut record = |id: &str, desc: &str, outcome: std::result::Result<usize, String>| {
        all &= outcome.is_ok();
        if let Some((r, _)) = report.as_mut() {
            r.record(id, desc, outcome);
        }
    };

    record(
        "alpha.homomorphism",
        "α: M₂ → M₃′ is well defined",
        a.validate().map(|_| alpha.len()).map_err(|e| e.to_string()),
    );
    let vanish = (|| {
        for u in under {
            let v = a.apply(u).map_err(|e| e.to_string())?;
            if !y.m3().is_identity(&v).map_err(|e| e.to_string())? {
                return Err(format!("α({u}) = {v}"));
            }
        }
        Ok(under.len())
    })();
    record("vanishing", "α = 0 on the under-object", vanish);

    let xs = samples(x.m2());
    let equivariant = (|| {
        let mut n = 0;
        for m in x.m1().generators() {
            let fm = f.f1.apply(&m).map_err(|e| e.to_string())?;
            for xi in &xs {
                let lhs = x.lower().act(xi, &m).and_then(|v| a.apply(&v));
                let rhs = a.apply(xi).and_then(|v| y.act3(&v, &fm));
                equal(y.m3(), lhs, rhs, || format!("α({xi}^{m})"))?;
                n += 1;
            }
        }
        Ok(n)
    })();
    record("equivariance", "α(xᵐ) = α(x)^f₁(m)", equivariant);

    let degree2 = (|| {
        for xi in &xs {
            let lhs = g.f2.apply(xi);
            let rhs = (|| {
                let da = y.d3().apply(&a.apply(xi)?)?;
                y.m2().op(&f.f2.apply(xi)?, &da)
            })();
            equal(y.m2(), lhs, rhs, || format!("g₂({xi}) vs f₂ + ∂₃′α"))?;
        }
        Ok(xs.len())
    })();
    record("homotopy.degree2", "−f₂ + g₂ = ∂₃′α", degree2);

    let hs = samples(x.m3());
    let degree3 = (|| {
        for h in &hs {
            let lhs = g.f3.apply(h);
            let rhs = (|| {
                let ad = a.apply(&x.d3().apply(h)?)?;
                y.m3().op(&f.f3.apply(h)?, &ad)
            })();
            equal(y.m3(), lhs, rhs, || format!("g₃({h}) vs f₃ + α∂₃"))?;
        }
        Ok(hs.len())
    })();
    record("homotopy.degree3", "−f₃ + g₃ = α∂₃", degree3);
    Ok(all)
}

/// Re-checks a candidate homotopy equation by equation, on generators and
/// on sampled elements.
pub fn xc3_verify_homotopy(
    f: &Xc3Morphism,
    g: &Xc3Morphism,
    x: &CrossedComplex3,
    y: &CrossedComplex3,
    under: &[Element],
    alpha: &[Element],
    sampling: Sampling,
) -> CheckReport {
    let mut report = CheckReport::sampled("homotopy of crossed complex morphisms", sampling);
    if let Err(e) = check_equations(f, g, x, y, under, alpha, Some((&mut report, sampling))) {
        report.record("alpha.homomorphism", "α: M₂ → M₃′ is well defined", Err(e.to_string()));
    }
    report
}
