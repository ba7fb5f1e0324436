use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use xq_core::crossed::{xc3_homotopic, xc3_verify_homotopy};
use xq_core::quadratic::{
    qcm_check, rq_homotopic, rq_search_homotopy, verify_homotopy, QCMorphism, SolveOptions, Verdict,
};
use xq_core::sphere::{
    assemble_selfmap_count, build_cylinder_q, build_sphere_d, classify_retractions, enumerate_retractions,
    mbar_check_structure, mbar_compose, mbar_elements, mbar_units, monoid_m_table, retraction_candidate,
    RetractionKey, M,
};
use xq_core::{CheckReport, Sampling};

use crate::convert::{self, element_spec, qc_homotopy_body, qcm_body, rqc4_body, under_body};
use crate::format::{
    parse_structure_bytes, render, ProblemBody, Structure, StructureFile, Xc3HomotopyBody,
};
use crate::report;
use crate::{Command, HomotopicArgs, SphereCommand, EXIT_FAILED, EXIT_OK};

/// `Ok(exit code)` when the command ran; `Err` for anything that should
/// exit with a usage error.
type Outcome = Result<i32, String>;

fn code(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn io(e: std::io::Error) -> String {
    format!("cannot write output: {e}")
}

pub(crate) fn dispatch(command: Command, seed: u64, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Check { file, samples, out: path } => check(&file, sampling(seed, samples), path.as_deref(), out),
        Command::Homotopic(args) => homotopic(&args, seed, out),
        Command::Fmt { file, check } => fmt(&file, check, out),
        Command::S2xS2(SphereCommand::Classify { r_bound, ab_range, out: path }) => {
            classify(r_bound, ab_range, seed, path.as_deref(), out)
        }
        Command::S2xS2(SphereCommand::Monoid { table, out: path }) => monoid(table, path.as_deref(), out),
        Command::S2xS2(SphereCommand::Count { out: path }) => count(path.as_deref(), out),
        Command::S2xS2(SphereCommand::Export { dir }) => export(&dir, out),
    }
}

fn sampling(seed: u64, samples: usize) -> Sampling {
    Sampling {
        seed,
        samples,
        ..Sampling::default()
    }
}

fn load(path: &Path) -> Result<StructureFile, String> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_structure_bytes(&bytes).map_err(|d| format!("{}: {d}", path.display()))
}

fn write_json(path: Option<&Path>, report: Map<String, Value>) -> Result<(), String> {
    if let Some(path) = path {
        fs::write(path, render(&Value::Object(report)))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn located(path: &Path) -> impl Fn(crate::format::Diagnostic) -> String + '_ {
    move |d| format!("{}: {d}", path.display())
}

fn check(path: &Path, sampling: Sampling, json_out: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let file = load(path)?;
    let at = located(path);
    let body = "body";
    let report = match &file.structure {
        Structure::Precrossed(b) => convert::precrossed(b, body).map_err(at)?.check_precrossed(sampling),
        Structure::Crossed(b) => convert::precrossed(b, body).map_err(at)?.check_crossed(sampling),
        Structure::Xc3(b) => convert::xc3(b, body).map_err(at)?.check(sampling),
        Structure::Rqm(b) => convert::rqm(b, body).map_err(at)?.check(sampling),
        Structure::Qm(b) => convert::qm(b, body).map_err(at)?.check(sampling),
        Structure::Rqc4(b) => {
            let c = convert::rqc4(b, body).map_err(at)?;
            match &c.object {
                Some(object) => c.under.check(object, sampling),
                None => c.under.complex.check(sampling),
            }
        }
        Structure::HomotopyProblem(b) => {
            let p = convert::problem(b, body).map_err(at)?;
            let mut report = CheckReport::sampled("homotopy problem", sampling);
            for (side, c) in [("source", &p.source), ("target", &p.target)] {
                let r = match &c.object {
                    Some(object) => c.under.check(object, sampling),
                    None => c.under.complex.check(sampling),
                };
                report.merge(side, r);
            }
            for (name, m) in &p.morphisms {
                report.merge(name, qcm_check(m, &p.source.under, &p.target.under));
            }
            report
        }
        Structure::Xc3HomotopyProblem(b) => {
            let p = convert::xc3_problem(b, body).map_err(at)?;
            let mut report = CheckReport::sampled("crossed complex homotopy problem", sampling);
            report.merge("source", p.source.check(sampling));
            report.merge("target", p.target.check(sampling));
            for (name, m) in &p.morphisms {
                report.merge(name, m.check(&p.source, &p.target));
            }
            report
        }
        other => {
            return Err(format!(
                "{}: `{}` files have no axioms of their own; use `xq homotopic`",
                path.display(),
                other.kind()
            ))
        }
    };
    writeln!(out, "{report}").map_err(io)?;
    let mut json = report::header("check");
    json.insert("file".into(), json!(path.display().to_string()));
    json.insert("kind".into(), json!(file.structure.kind()));
    json.insert("subject".into(), json!(report.subject));
    json.insert("sampling".into(), report::sampling(&sampling));
    json.insert("checks".into(), report::checks(&report));
    json.insert("summary".into(), report::summary(&report));
    write_json(json_out, json)?;
    Ok(code(report.passed()))
}

fn fmt(path: &Path, check_only: bool, out: &mut dyn Write) -> Outcome {
    let text = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file = parse_structure_bytes(&text).map_err(located(path))?;
    let canonical = file.to_canonical_json();
    if check_only {
        let same = canonical.as_bytes() == text.as_slice();
        let verdict = if same { "canonical" } else { "not canonical" };
        writeln!(out, "{}: {verdict}", path.display()).map_err(io)?;
        return Ok(code(same));
    }
    out.write_all(canonical.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

/// Looks a morphism up by name in the problem, falling back to a file.
fn morphism_file(name: &str, kind: &str, problem: &Path) -> Result<Structure, String> {
    let path = PathBuf::from(name);
    if !path.is_file() {
        return Err(format!("no morphism named `{name}` in {} and no such file", problem.display()));
    }
    let file = load(&path)?;
    if file.structure.kind() != kind {
        return Err(format!("{name}: expected a `{kind}` file, found `{}`", file.structure.kind()));
    }
    Ok(file.structure)
}

fn homotopic(args: &HomotopicArgs, seed: u64, out: &mut dyn Write) -> Outcome {
    let file = load(&args.file)?;
    match &file.structure {
        Structure::HomotopyProblem(b) => rq_homotopic_cmd(args, b, seed, out),
        Structure::Xc3HomotopyProblem(b) => xc3_homotopic_cmd(args, b, seed, out),
        other => Err(format!(
            "{}: expected a homotopy_problem or xc3_homotopy_problem, found `{}`",
            args.file.display(),
            other.kind()
        )),
    }
}

fn rq_homotopic_cmd(args: &HomotopicArgs, b: &ProblemBody, seed: u64, out: &mut dyn Write) -> Outcome {
    let at = located(&args.file);
    let p = convert::problem(b, "body").map_err(&at)?;
    let (src, dst) = (&p.source.under, &p.target.under);
    let resolve = |name: &str| -> Result<QCMorphism, String> {
        if let Some(m) = p.morphisms.get(name) {
            return Ok(m.clone());
        }
        match morphism_file(name, "qcm", &args.file)? {
            Structure::Qcm(body) => convert::qcm(&body, &src.complex, &dst.complex, "body").map_err(located(Path::new(name))),
            _ => unreachable!("kind checked"),
        }
    };
    let (f, g) = (resolve(&args.f)?, resolve(&args.g)?);
    if let Some(order) = &args.order {
        let n = src.rqm().rank();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(format!("--order must be a permutation of 0..{n}, got {order:?}"));
        }
    }
    let sampling = sampling(seed, args.samples);
    let mut json = report::header("homotopic");
    json.insert("file".into(), json!(args.file.display().to_string()));
    json.insert("f".into(), json!(args.f));
    json.insert("g".into(), json!(args.g));
    json.insert("sampling".into(), report::sampling(&sampling));

    if let Some(wpath) = &args.verify {
        let wfile = load(wpath)?;
        let Structure::QcHomotopy(wb) = &wfile.structure else {
            return Err(format!("{}: expected a `qc_homotopy` file", wpath.display()));
        };
        let h = convert::qc_homotopy(wb, src, dst, "body").map_err(located(wpath))?;
        let report = verify_homotopy(&f, &g, src, dst, &h, sampling);
        writeln!(out, "{report}").map_err(io)?;
        json.insert("witness".into(), report::witness(&h));
        json.insert("checks".into(), report::checks(&report));
        json.insert("summary".into(), report::summary(&report));
        write_json(args.out.as_deref(), json)?;
        return Ok(code(report.passed()));
    }

    let decision = if args.search {
        rq_search_homotopy(&f, &g, src, dst, args.bound)
    } else {
        let opts = SolveOptions {
            bound: args.bound,
            generator_order: args.order.clone(),
            sampling,
        };
        rq_homotopic(&f, &g, src, dst, &opts)
    }
    .map_err(|e| e.to_string())?;
    json.insert("method".into(), serde_json::to_value(decision.method).expect("methods serialize"));
    writeln!(out, "f = {}, g = {}", args.f, args.g).map_err(io)?;
    writeln!(out, "method: {}", decision.method).map_err(io)?;
    match &decision.verdict {
        Verdict::Homotopic(h) => {
            writeln!(out, "verdict: homotopic").map_err(io)?;
            let q3 = dst.rqm().q3_group();
            let q4 = dst.complex.q4_group();
            for (i, v) in h.alpha2.iter().enumerate() {
                let x = xq_core::group::Element::Abelian(v.clone());
                writeln!(out, "  α₂(g{}) = {}", i + 1, show(&q3, &x)).map_err(io)?;
            }
            if q4.rank() == 0 {
                writeln!(out, "  α₃ = 0 (Q₄′ = 0)").map_err(io)?;
            }
            for (k, v) in h.alpha3.iter().enumerate().filter(|_| q4.rank() > 0) {
                let x = xq_core::group::Element::Abelian(v.clone());
                writeln!(out, "  α₃(h{}) = {}", k + 1, show(&q4, &x)).map_err(io)?;
            }
            let report = verify_homotopy(&f, &g, src, dst, h, sampling);
            let verdict = if report.passed() { "witness re-verified" } else { "WITNESS FAILED RE-VERIFICATION" };
            writeln!(out, "{verdict} ({} checks)", report.checks.len()).map_err(io)?;
            if !report.passed() {
                writeln!(out, "{report}").map_err(io)?;
            }
            if let Some(path) = &args.save_witness {
                let text = StructureFile::new(Structure::QcHomotopy(qc_homotopy_body(h))).to_canonical_json();
                fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            json.insert("verdict".into(), json!("homotopic"));
            json.insert("witness".into(), report::witness(h));
            json.insert("checks".into(), report::checks(&report));
            json.insert("summary".into(), json!({"passed": report.passed(), "homotopic": true}));
            write_json(args.out.as_deref(), json)?;
            Ok(code(report.passed()))
        }
        Verdict::NotHomotopic(o) => {
            writeln!(out, "verdict: not homotopic").map_err(io)?;
            writeln!(out, "obstruction: {o}").map_err(io)?;
            json.insert("verdict".into(), json!("not_homotopic"));
            json.insert("obstruction".into(), report::obstruction(o));
            json.insert("summary".into(), json!({"passed": false, "homotopic": false}));
            write_json(args.out.as_deref(), json)?;
            Ok(EXIT_FAILED)
        }
    }
}

fn show(g: &xq_core::group::Group, x: &xq_core::group::Element) -> String {
    g.canonical(x).map(|c| c.to_string()).unwrap_or_else(|_| x.to_string())
}

fn xc3_homotopic_cmd(
    args: &HomotopicArgs,
    b: &crate::format::Xc3ProblemBody,
    seed: u64,
    out: &mut dyn Write,
) -> Outcome {
    let at = located(&args.file);
    let p = convert::xc3_problem(b, "body").map_err(&at)?;
    let resolve = |name: &str| {
        if let Some(m) = p.morphisms.get(name) {
            return Ok(m.clone());
        }
        match morphism_file(name, "xc3m", &args.file)? {
            Structure::Xc3m(body) => convert::xc3m(&body, &p.source, &p.target, "body").map_err(located(Path::new(name))),
            _ => unreachable!("kind checked"),
        }
    };
    let (f, g) = (resolve(&args.f)?, resolve(&args.g)?);
    let sampling = sampling(seed, args.samples);
    let mut json = report::header("homotopic");
    json.insert("file".into(), json!(args.file.display().to_string()));
    json.insert("f".into(), json!(args.f));
    json.insert("g".into(), json!(args.g));
    json.insert("sampling".into(), report::sampling(&sampling));
    let alpha_json = |alpha: &[xq_core::group::Element]| json!(alpha.iter().map(element_spec).collect::<Vec<_>>());

    if let Some(wpath) = &args.verify {
        let wfile = load(wpath)?;
        let Structure::Xc3Homotopy(wb) = &wfile.structure else {
            return Err(format!("{}: expected an `xc3_homotopy` file", wpath.display()));
        };
        let alpha = convert::hom(&wb.alpha, p.source.m2(), p.target.m3(), "body.alpha")
            .map_err(located(wpath))?
            .images()
            .to_vec();
        let report = xc3_verify_homotopy(&f, &g, &p.source, &p.target, &p.under, &alpha, sampling);
        writeln!(out, "{report}").map_err(io)?;
        json.insert("witness".into(), alpha_json(&alpha));
        json.insert("checks".into(), report::checks(&report));
        json.insert("summary".into(), report::summary(&report));
        write_json(args.out.as_deref(), json)?;
        return Ok(code(report.passed()));
    }

    let h = xc3_homotopic(&f, &g, &p.source, &p.target, &p.under, args.bound).map_err(|e| e.to_string())?;
    json.insert("method".into(), serde_json::to_value(h.method).expect("methods serialize"));
    writeln!(out, "f = {}, g = {}", args.f, args.g).map_err(io)?;
    writeln!(out, "method: {}", h.method).map_err(io)?;
    match &h.alpha {
        Some(alpha) => {
            writeln!(out, "verdict: homotopic").map_err(io)?;
            for (i, x) in alpha.iter().enumerate() {
                writeln!(out, "  α(g{}) = {}", i + 1, show(p.target.m3(), x)).map_err(io)?;
            }
            let report = xc3_verify_homotopy(&f, &g, &p.source, &p.target, &p.under, alpha, sampling);
            let verdict = if report.passed() { "witness re-verified" } else { "WITNESS FAILED RE-VERIFICATION" };
            writeln!(out, "{verdict} ({} checks)", report.checks.len()).map_err(io)?;
            if !report.passed() {
                writeln!(out, "{report}").map_err(io)?;
            }
            if let Some(path) = &args.save_witness {
                let body = Xc3HomotopyBody {
                    alpha: alpha.iter().map(element_spec).collect(),
                };
                let text = StructureFile::new(Structure::Xc3Homotopy(body)).to_canonical_json();
                fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            json.insert("verdict".into(), json!("homotopic"));
            json.insert("witness".into(), alpha_json(alpha));
            json.insert("checks".into(), report::checks(&report));
            json.insert("summary".into(), json!({"passed": report.passed(), "homotopic": true}));
            write_json(args.out.as_deref(), json)?;
            Ok(code(report.passed()))
        }
        None => {
            let why = h.certificate.clone().unwrap_or_else(|| "no homotopy exists".into());
            writeln!(out, "verdict: not homotopic").map_err(io)?;
            writeln!(out, "obstruction: {why}").map_err(io)?;
            json.insert("verdict".into(), json!("not_homotopic"));
            json.insert("obstruction".into(), json!({"message": why}));
            json.insert("summary".into(), json!({"passed": false, "homotopic": false}));
            write_json(args.out.as_deref(), json)?;
            Ok(EXIT_FAILED)
        }
    }
}

fn key_str(k: &RetractionKey) -> String {
    format!("(a,b,r) = ({},{},{})", k.a, k.b, k.r)
}

fn classify(r_bound: u32, ab_range: u32, seed: u64, json_out: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let sampling = sampling(seed, Sampling::default().samples);
    let mut checks = CheckReport::sampled("sphere and cylinder", sampling);
    checks.merge("sphere_D", d.complex.check(sampling));
    checks.merge("cylinder_Q", q.under.check(&d.complex, sampling));

    let retractions = enumerate_retractions(&q, &d, ab_range, r_bound).map_err(|e| e.to_string())?;
    let c = classify_retractions(&retractions, &q, &d, r_bound).map_err(|e| e.to_string())?;
    let derivation = assemble_selfmap_count(c.classes.len() as u64);

    writeln!(
        out,
        "retractions Q → 𝒟 with |a|, |b| ≤ {ab_range} and |r| ≤ {r_bound}: {}",
        retractions.len()
    )
    .map_err(io)?;
    for (i, class) in c.classes.iter().enumerate() {
        let rep = &class.representative;
        writeln!(
            out,
            "class {}: (a,b) = ({},{}), representative r = {}, {} members",
            i + 1,
            rep.a,
            rep.b,
            rep.r,
            class.members.len()
        )
        .map_err(io)?;
    }
    for s in &c.separations {
        writeln!(out, "separated: {} vs {}: {}", key_str(&s.first), key_str(&s.second), s.obstruction).map_err(io)?;
    }
    writeln!(out, "homotopy classes: {}", c.classes.len()).map_err(io)?;
    writeln!(out, "self-maps of S²×S² fixing the diagonal: {}", derivation.count).map_err(io)?;
    let failed: Vec<_> = checks.failures().map(|e| e.id.clone()).collect();
    if failed.is_empty() {
        writeln!(out, "sphere and cylinder axioms: {} checks pass (seed {seed})", checks.checks.len()).map_err(io)?;
    } else {
        writeln!(out, "sphere and cylinder axioms FAILED: {}", failed.join(", ")).map_err(io)?;
    }
    let passed = checks.passed() && derivation.consistent;

    let mut json = report::header("s2xs2 classify");
    json.insert("parameters".into(), json!({"ab_range": ab_range, "r_bound": r_bound}));
    json.insert("sampling".into(), report::sampling(&sampling));
    json.insert("checks".into(), report::checks(&checks));
    json.insert(
        "retractions".into(),
        json!(retractions.iter().map(|g| report::key(&RetractionKey::from(g))).collect::<Vec<_>>()),
    );
    json.insert(
        "classes".into(),
        json!(c
            .classes
            .iter()
            .map(|k| json!({
                "representative": report::key(&k.representative),
                "members": k.members.iter().map(|m| report::key(&m.key)).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>()),
    );
    let witnesses: Vec<Value> = c
        .classes
        .iter()
        .flat_map(|k| {
            k.members.iter().map(move |m| {
                let mut w = Map::new();
                w.insert("from".into(), report::key(&k.representative));
                w.insert("to".into(), report::key(&m.key));
                if let Value::Object(h) = report::witness(&m.witness) {
                    w.extend(h);
                }
                Value::Object(w)
            })
        })
        .collect();
    json.insert("witnesses".into(), Value::Array(witnesses));
    json.insert(
        "obstructions".into(),
        json!(c
            .separations
            .iter()
            .map(|s| json!({
                "first": report::key(&s.first),
                "second": report::key(&s.second),
                "obstruction": report::obstruction(&s.obstruction),
            }))
            .collect::<Vec<_>>()),
    );
    json.insert("axioms".into(), report::axioms(&derivation.axioms));
    json.insert("count".into(), json!(derivation.count));
    json.insert(
        "summary".into(),
        json!({"passed": passed, "classes": c.classes.len(), "consistent": derivation.consistent}),
    );
    write_json(json_out, json)?;
    Ok(code(passed))
}

fn table(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:<width$}")).collect();
        s.push_str(cells.join(" ").trim_end());
        s.push('\n');
    }
    s
}

fn monoid(show_tables: bool, json_out: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let report = mbar_check_structure();
    let m_table = monoid_m_table();
    let elements = mbar_elements();
    let units = mbar_units();
    let mut m_rows = vec![std::iter::once("∘".to_string()).chain(M::ALL.iter().map(|m| m.to_string())).collect()];
    for (i, row) in m_table.iter().enumerate() {
        m_rows.push(std::iter::once(M::ALL[i].to_string()).chain(row.iter().map(|m| m.to_string())).collect());
    }
    let mut mbar_rows = vec![std::iter::once("∘".to_string()).chain(elements.iter().map(|u| u.to_string())).collect()];
    for &u in &elements {
        mbar_rows.push(
            std::iter::once(u.to_string())
                .chain(elements.iter().map(|&w| mbar_compose(u, w).to_string()))
                .collect::<Vec<_>>(),
        );
    }
    if show_tables {
        writeln!(out, "M (row·column):").map_err(io)?;
        write!(out, "{}", table(&m_rows)).map_err(io)?;
        writeln!(out).map_err(io)?;
        writeln!(out, "M̄ (row∘column):").map_err(io)?;
        write!(out, "{}", table(&mbar_rows)).map_err(io)?;
        writeln!(out).map_err(io)?;
    }
    let unit_names: Vec<String> = units.iter().map(|u| u.to_string()).collect();
    writeln!(out, "units: {}", unit_names.join(" ")).map_err(io)?;
    writeln!(out, "{report}").map_err(io)?;

    let mut json = report::header("s2xs2 monoid");
    json.insert("elements".into(), json!(elements.iter().map(|u| u.to_string()).collect::<Vec<_>>()));
    json.insert("m_table".into(), json!(m_rows[1..].iter().map(|r| r[1..].to_vec()).collect::<Vec<_>>()));
    json.insert("mbar_table".into(), json!(mbar_rows[1..].iter().map(|r| r[1..].to_vec()).collect::<Vec<_>>()));
    json.insert("units".into(), json!(unit_names));
    json.insert("checks".into(), report::checks(&report));
    json.insert("summary".into(), report::summary(&report));
    write_json(json_out, json)?;
    Ok(code(report.passed()))
}

fn count(json_out: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    // a, b ∈ {0, 1} is forced by the homology constraints.
    let retractions = enumerate_retractions(&q, &d, 1, 1).map_err(|e| e.to_string())?;
    let classes = classify_retractions(&retractions, &q, &d, 1).map_err(|e| e.to_string())?.classes.len();
    let derivation = assemble_selfmap_count(classes as u64);
    writeln!(out, "{}", derivation.count).map_err(io)?;
    writeln!(out, "derivation:").map_err(io)?;
    for (i, step) in derivation.steps.iter().enumerate() {
        writeln!(out, "  {}. {step}", i + 1).map_err(io)?;
    }
    writeln!(out, "assumed:").map_err(io)?;
    for a in &derivation.axioms {
        writeln!(out, "  [{}] {}", a.id, a.statement).map_err(io)?;
    }
    let mut json = report::header("s2xs2 count");
    if let Value::Object(m) = serde_json::to_value(&derivation).expect("derivations serialize") {
        json.extend(m);
    }
    json.insert("summary".into(), json!({"passed": derivation.consistent}));
    write_json(json_out, json)?;
    Ok(code(derivation.consistent))
}

/// File name and contents of every structure file `export` writes.
pub fn exported_files() -> Vec<(&'static str, String)> {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let sphere = StructureFile::new(Structure::Rqc4(rqc4_body(&d.complex)));
    let cylinder = StructureFile::new(Structure::Rqc4(under_body(&q.under, &d.complex)));
    let mut morphisms = std::collections::BTreeMap::new();
    for (name, a, b, r) in [("pr1", 1, 0, 0), ("pr2", 0, 1, 0), ("pr1_r3", 1, 0, 3), ("pr2_r3", 0, 1, 3)] {
        let g = retraction_candidate(&q, &d, a, b, r).expect("retraction parameters are valid");
        morphisms.insert(name.to_string(), qcm_body(&g));
    }
    let case = StructureFile::new(Structure::HomotopyProblem(ProblemBody {
        source: under_body(&q.under, &d.complex),
        target: under_body(&d.under_itself(), &d.complex),
        morphisms,
    }));
    vec![
        ("sphere_D.json", sphere.to_canonical_json()),
        ("cylinder_Q.json", cylinder.to_canonical_json()),
        ("s2xs2_case.json", case.to_canonical_json()),
    ]
}

fn export(dir: &Path, out: &mut dyn Write) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    for (name, text) in exported_files() {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        writeln!(out, "wrote {}", path.display()).map_err(io)?;
    }
    Ok(EXIT_OK)
}
