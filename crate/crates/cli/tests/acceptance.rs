//! Acceptance suite: one line per criterion, non-zero exit if any fails.

#[path = "../../core/tests/support/rewrite_oracle.rs"]
mod rewrite_oracle;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xq_core::group::{Letter, Nil2Element, Word};
use xq_core::linalg::Int;
use xq_core::quadratic::{rq_homotopic, verify_homotopy, QCHomotopy, SolveOptions};
use xq_core::sphere::*;
use xq_core::Sampling;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:.0?}"))
}

fn headline_count() -> Outcome {
    let start = Instant::now();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = xq::run(["xq", "s2xs2", "count"], &mut out, &mut err);
    let elapsed = start.elapsed();
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    ensure(code == 0, || format!("exit code {code}: {}", String::from_utf8_lossy(&err)))?;
    let first = text.lines().next().unwrap_or_default();
    ensure(first == "16", || format!("first line {first:?}"))?;
    ensure(text.contains("derivation:") && text.contains("[pi4-s2]"), || "derivation or axioms missing".into())?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("`xq s2xs2 count` printed 16 in {elapsed:.2?}"))
}

fn retraction_classes() -> Outcome {
    let start = Instant::now();
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let gs = enumerate_retractions(&q, &d, 3, 10).map_err(|e| e.to_string())?;
    let c = classify_retractions(&gs, &q, &d, 10).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let ab: BTreeSet<(i64, i64)> = c.classes.iter().map(|k| (k.representative.a, k.representative.b)).collect();
    ensure(c.classes.len() == 2, || format!("{} classes", c.classes.len()))?;
    ensure(ab == BTreeSet::from([(0, 1), (1, 0)]), || format!("classes over {ab:?}"))?;
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{} retractions, 2 classes over (1,0) and (0,1), {elapsed:.2?}", gs.len()))
}

fn witness_reproduction() -> Outcome {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let target = d.under_itself();
    // ω(e⊗e) in Q₃ of the sphere, computed from its ω table.
    let omega_ee = d.rqm().omega_pair(&[Int::from(1)], &[Int::from(1)]).map_err(|e| e.to_string())?;
    let f = retraction_candidate(&q, &d, 1, 0, 0).map_err(|e| e.to_string())?;
    for r in -10i64..=10 {
        let g = retraction_candidate(&q, &d, 1, 0, r).map_err(|e| e.to_string())?;
        let decision = rq_homotopic(&f, &g, &q.under, &target, &SolveOptions::default()).map_err(|e| e.to_string())?;
        let h = decision.witness().ok_or_else(|| format!("r = {r}: not homotopic"))?;
        let scaled: Vec<Int> = omega_ee.iter().map(|x| x * r).collect();
        let zero = vec![Int::from(0); omega_ee.len()];
        let expected = QCHomotopy {
            alpha2: vec![zero.clone(), scaled, zero],
            alpha3: vec![Vec::new(); q.rqm().q3().rank()],
        };
        ensure(h == &expected, || format!("r = {r}: got {:?}", h.alpha2))?;
    }
    Ok("α₂ = (0, r·ω(e⊗e), 0), α₃ = 0 for all 21 values of r".into())
}

/// The multiplication table of `M` as displayed.
const PAPER_TABLE: [[&str; 4]; 4] = [
    ["I", "T", "P′", "P″"],
    ["T", "I", "P′", "P″"],
    ["P′", "P″", "P′", "P″"],
    ["P″", "P′", "P′", "P″"],
];

/// `m^*` on `Z₂ ⊕ Z₂`.
fn pull_back(m: &str, (x, y): (u8, u8)) -> (u8, u8) {
    match m {
        "I" | "T" => (x, y),
        _ => (0, 0),
    }
}

/// `m_*` on `Z₂ ⊕ Z₂`.
fn push_forward(m: &str, (x, y): (u8, u8)) -> (u8, u8) {
    match m {
        "I" => (x, y),
        "T" => (y, x),
        "P′" => (x, x),
        _ => (y, y),
    }
}

fn oracle_product(u: (usize, (u8, u8)), w: (usize, (u8, u8))) -> (usize, (u8, u8)) {
    let names = PAPER_TABLE[0];
    let mm = PAPER_TABLE[u.0][w.0];
    let a = push_forward(names[u.0], w.1);
    let b = pull_back(names[w.0], u.1);
    (names.iter().position(|&n| n == mm).unwrap(), (a.0 ^ b.0, a.1 ^ b.1))
}

fn monoid_algebra() -> Outcome {
    let start = Instant::now();
    let table = monoid_m_table();
    for (i, row) in table.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            ensure(m.to_string() == PAPER_TABLE[i][j], || format!("M table differs at ({i},{j}): {m}"))?;
        }
    }
    let elems = mbar_elements();
    ensure(elems.len() == 16, || format!("|M̄| = {}", elems.len()))?;
    let code = |u: ExtMonoidElement| (M::ALL.iter().position(|&m| m == u.m).unwrap(), (u.v.0[0], u.v.0[1]));
    for &u in &elems {
        for &w in &elems {
            ensure(code(mbar_compose(u, w)) == oracle_product(code(u), code(w)), || format!("{u}∘{w} differs"))?;
        }
    }
    let mut triples = 0;
    for &x in &elems {
        for &y in &elems {
            for &z in &elems {
                ensure(mbar_compose(mbar_compose(x, y), z) == mbar_compose(x, mbar_compose(y, z)), || {
                    format!("({x}∘{y})∘{z} is not associative")
                })?;
                triples += 1;
            }
        }
    }
    let e = ExtMonoidElement::new(M::I, V([0, 0]));
    ensure(elems.iter().all(|&x| mbar_compose(e, x) == x && mbar_compose(x, e) == x), || "no identity".into())?;
    let units: Vec<_> = elems
        .iter()
        .copied()
        .filter(|&u| elems.iter().any(|&w| mbar_compose(u, w) == e && mbar_compose(w, u) == e))
        .collect();
    ensure(units.len() == 8, || format!("{} units", units.len()))?;
    ensure(units == mbar_units(), || "mbar_units disagrees".into())?;
    // (t, v) ↦ (Tᵗ, v), compared with (t, v)(t′, v′) = (t + t′, v + σᵗ v′).
    let phi = |t: u8, v: (u8, u8)| ExtMonoidElement::new(if t == 0 { M::I } else { M::T }, V([v.0, v.1]));
    let vs = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let mut image = BTreeSet::new();
    for t in 0..2u8 {
        for &v in &vs {
            image.insert(phi(t, v));
            for s in 0..2u8 {
                for &w in &vs {
                    let sw = if t == 1 { (w.1, w.0) } else { w };
                    let product = phi(t ^ s, (v.0 ^ sw.0, v.1 ^ sw.1));
                    ensure(mbar_compose(phi(t, v), phi(s, w)) == product, || {
                        format!("semidirect table differs at ({t},{v:?})·({s},{w:?})")
                    })?;
                }
            }
        }
    }
    ensure(image == units.iter().copied().collect(), || "the map does not hit exactly the units".into())?;
    ensure(mbar_check_structure().passed(), || "mbar_check_structure failed".into())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("table matches, {triples} triples associative, 8 units ≅ Z₂ ⋉ (Z₂ ⊕ Z₂)"))
}

fn homology_constraints() -> Outcome {
    let got: BTreeSet<(i64, i64, i64)> =
        solve_homology_constraints(5).solutions.iter().map(|s| (s.a, s.b, s.k)).collect();
    let want = BTreeSet::from([(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
    ensure(got == want, || format!("solutions {got:?}"))?;
    Ok("{(0,0,0), (0,1,1), (1,0,1), (1,1,0)}".into())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_97);
    let n = 20_000;
    let mut mismatches = 0;
    for _ in 0..n {
        let rank = rng.gen_range(1..=3);
        let len = rng.gen_range(0..=8);
        let letters: Vec<(usize, i64)> =
            (0..len).map(|_| (rng.gen_range(0..rank), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
        let word = Word::from_letters(letters.iter().map(|&(g, s)| Letter::new(g, s < 0)).collect());
        let nf = Nil2Element::from_word(&word, rank).map_err(|e| e.to_string())?;
        let (base, comm) = rewrite_oracle::oracle_normal_form(&letters, rank);
        let as_int = |v: Vec<i64>| v.into_iter().map(Int::from).collect::<Vec<_>>();
        if nf.base() != as_int(base).as_slice() || nf.comm() != as_int(comm).as_slice() {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches in {n} words"))?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{n} random words, 0 mismatches, {:.2?}", start.elapsed()))
}

fn axiom_suites() -> Outcome {
    let sampling = Sampling::with_samples(1000);
    let d = build_sphere_d();
    let q = build_cylinder_q();
    let mut cases = 0;
    for report in [d.complex.check(sampling), q.under.check(&d.complex, sampling)] {
        for id in ["rqm.axiom1.nil2", "rqm.axiom2", "rqm.axiom3", "rqm.axiom4", "d3d4"] {
            ensure(report.entry(id).is_some(), || format!("{}: no {id} entry", report.subject))?;
        }
        let failed: Vec<_> = report.failures().map(|e| e.id.clone()).collect();
        ensure(failed.is_empty(), || format!("{}: {}", report.subject, failed.join(", ")))?;
        cases += report.checks.iter().map(|c| c.cases).sum::<usize>();
    }
    Ok(format!("𝒟 and Q pass axioms (1)-(4) and ∂₃∂₄ = 0, {cases} cases at depth 1000"))
}

fn homotopy_relation() -> Outcome {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let target = d.under_itself();
    let gs = enumerate_retractions(&q, &d, 3, 2).map_err(|e| e.to_string())?;
    let opts = SolveOptions::default();
    let sampling = Sampling::with_samples(20);
    let solve = |f: &Retraction, g: &Retraction| {
        rq_homotopic(&f.morphism, &g.morphism, &q.under, &target, &opts).map_err(|e| e.to_string())
    };
    let verify = |f: &Retraction, g: &Retraction, h: &QCHomotopy| -> Result<(), String> {
        let report = verify_homotopy(&f.morphism, &g.morphism, &q.under, &target, h, sampling);
        ensure(report.passed(), || format!("witness ({},{},{}) → ({},{},{}) fails re-verification", f.a, f.b, f.r, g.a, g.b, g.r))
    };
    let (mut pairs, mut triples) = (0, 0);
    for f in &gs {
        let refl = solve(f, f)?;
        let h = refl.witness().ok_or_else(|| format!("({},{},{}) not homotopic to itself", f.a, f.b, f.r))?;
        verify(f, f, h)?;
        for g in &gs {
            let fg = solve(f, g)?;
            let gf = solve(g, f)?;
            pairs += 1;
            ensure(fg.is_homotopic() == gf.is_homotopic(), || "symmetry fails".into())?;
            if let (Some(h), Some(k)) = (fg.witness(), gf.witness()) {
                verify(f, g, h)?;
                verify(g, f, k)?;
                verify(g, f, &h.reversed())?;
                for k in &gs {
                    let gk = solve(g, k)?;
                    if let Some(h2) = gk.witness() {
                        triples += 1;
                        let fk = solve(f, k)?;
                        ensure(fk.is_homotopic(), || "transitivity fails".into())?;
                        verify(f, k, &h.then(h2))?;
                    }
                }
            }
        }
    }
    Ok(format!("{} retractions, {pairs} ordered pairs, {triples} chains, all witnesses re-verify", gs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("headline count", headline_count),
        ("retraction classification", retraction_classes),
        ("homotopy witness reproduction", witness_reproduction),
        ("monoid algebra", monoid_algebra),
        ("constraint solver", homology_constraints),
        ("oracle equivalence", oracle_equivalence),
        ("axiom property suites", axiom_suites),
        ("homotopy-relation properties", homotopy_relation),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
