//! Building `xq_core` values from parsed structure files and back.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use xq_core::crossed::{ActionTable, CrossedComplex3, GroupAction, PreCrossedModule, Xc3Morphism};
use xq_core::group::{Element, FgAbelianGroup, Group, GroupHom, Letter, Nil2Element, Word};
use xq_core::quadratic::{
    QCHomotopy, QCMorphism, QuadraticModule, ReducedQuadraticComplex4, ReducedQuadraticModule, UnderComplex,
};

use crate::format::*;

type Built<T> = Result<T, Diagnostic>;

fn at(path: &str, field: &str) -> String {
    format!("{path}.{field}")
}

fn idx(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

fn kind_name(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::Free => "free",
        GroupKind::FreeNil2 => "free_nil2",
        GroupKind::FreeAbelian => "free_abelian",
        GroupKind::FgAbelian => "fg_abelian",
        GroupKind::Cyclic => "cyclic",
        GroupKind::Trivial => "trivial",
    }
}

pub fn group(spec: &GroupSpec, path: &str) -> Built<Group> {
    let name = kind_name(spec.kind);
    let rank = || spec.rank.ok_or_else(|| Diagnostic::semantic(&at(path, "rank"), format!("required for {name} groups")));
    let forbid = |field: &str, present: bool| -> Built<()> {
        if present {
            Err(Diagnostic::semantic(&at(path, field), format!("not allowed for {name} groups")))
        } else {
            Ok(())
        }
    };
    forbid("order", spec.order.is_some() && spec.kind != GroupKind::Cyclic)?;
    forbid("relations", spec.relations.is_some() && spec.kind != GroupKind::FgAbelian)?;
    forbid("rank", spec.rank.is_some() && matches!(spec.kind, GroupKind::Cyclic | GroupKind::Trivial))?;
    Ok(match spec.kind {
        GroupKind::Free => Group::Free { rank: rank()? },
        GroupKind::FreeNil2 => Group::FreeNil2 { rank: rank()? },
        GroupKind::FreeAbelian => Group::free_abelian(rank()?),
        GroupKind::FgAbelian => {
            let rank = rank()?;
            let rows = spec.relations.as_deref().unwrap_or(&[]);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != rank {
                    return Err(Diagnostic::semantic(
                        &idx(&at(path, "relations"), i),
                        format!("relation has {} entries but the rank is {rank}", row.len()),
                    ));
                }
            }
            let rows = rows.iter().map(|r| bigints(r)).collect();
            Group::Abelian(FgAbelianGroup::new(rank, rows).map_err(|e| Diagnostic::semantic(path, e))?)
        }
        GroupKind::Cyclic => match spec.order {
            Some(0) => return Err(Diagnostic::semantic(&at(path, "order"), "must be positive")),
            Some(n) => Group::cyclic(n),
            None => return Err(Diagnostic::semantic(&at(path, "order"), "required for cyclic groups")),
        },
        GroupKind::Trivial => Group::trivial(),
    })
}

fn describe(g: &Group) -> String {
    match g {
        Group::Free { rank } => format!("a word in the free group of rank {rank}"),
        Group::FreeNil2 { rank } => format!("a nil(2) normal form or word of rank {rank}"),
        Group::Abelian(a) => format!("an integer vector of length {}", a.rank()),
    }
}

fn word(letters: &[i64], rank: usize, path: &str) -> Built<Word> {
    let mut out = Vec::with_capacity(letters.len());
    for (i, &l) in letters.iter().enumerate() {
        let g = l.unsigned_abs() as usize;
        if l == 0 || g > rank {
            return Err(Diagnostic::semantic(
                &idx(&at(path, "word"), i),
                format!("letter {l} is not one of ±1..±{rank}"),
            ));
        }
        out.push(Letter::new(g - 1, l < 0));
    }
    Ok(Word::from_letters(out))
}

pub fn element(spec: &ElementSpec, g: &Group, path: &str) -> Built<Element> {
    let x = match (spec, g) {
        (ElementSpec::Vector(v), Group::Abelian(_)) => Element::Abelian(bigints(v)),
        (ElementSpec::Nil2 { base, comm }, Group::FreeNil2 { rank }) => {
            if base.len() != *rank {
                return Err(Diagnostic::semantic(
                    &at(path, "base"),
                    format!("{} entries but the rank is {rank}", base.len()),
                ));
            }
            let x = Nil2Element::from_parts(bigints(base), bigints(comm))
                .map_err(|e| Diagnostic::semantic(&at(path, "comm"), e))?;
            Element::Nil2(x)
        }
        (ElementSpec::Word(w), Group::Free { rank }) => Element::Word(word(w, *rank, path)?),
        (ElementSpec::Word(w), Group::FreeNil2 { rank }) => {
            let w = word(w, *rank, path)?;
            Element::Nil2(Nil2Element::from_word(&w, *rank).map_err(|e| Diagnostic::semantic(path, e))?)
        }
        _ => return Err(Diagnostic::semantic(path, format!("expected {}", describe(g)))),
    };
    g.check(&x).map_err(|e| Diagnostic::semantic(path, e))?;
    Ok(x)
}

pub fn elements(specs: &[ElementSpec], g: &Group, path: &str) -> Built<Vec<Element>> {
    specs.iter().enumerate().map(|(i, s)| element(s, g, &idx(path, i))).collect()
}

pub fn hom(images: &[ElementSpec], source: &Group, target: &Group, path: &str) -> Built<GroupHom> {
    if images.len() != source.rank() {
        return Err(Diagnostic::semantic(
            path,
            format!("{} images given for {} generators", images.len(), source.rank()),
        ));
    }
    let images = elements(images, target, path)?;
    GroupHom::new(source.clone(), target.clone(), images).map_err(|e| Diagnostic::semantic(path, e))
}

pub fn action(spec: &ActionSpec, acted: &Group, acting: &Group, path: &str) -> Built<GroupAction> {
    match (spec.kind, &spec.images) {
        (ActionKind::Trivial, None) => Ok(GroupAction::Trivial),
        (ActionKind::Conjugation, None) => Ok(GroupAction::Conjugation),
        (ActionKind::Table, Some(rows)) => {
            if rows.len() != acted.rank() {
                return Err(Diagnostic::semantic(
                    &at(path, "images"),
                    format!("{} rows for {} generators of the acted group", rows.len(), acted.rank()),
                ));
            }
            let mut images = Vec::with_capacity(rows.len());
            for (x, row) in rows.iter().enumerate() {
                let p = idx(&at(path, "images"), x);
                if row.len() != acting.rank() {
                    return Err(Diagnostic::semantic(
                        &p,
                        format!("{} entries for {} generators of the acting group", row.len(), acting.rank()),
                    ));
                }
                images.push(elements(row, acted, &p)?);
            }
            ActionTable::new(acted, acting, images)
                .map(GroupAction::Table)
                .map_err(|e| Diagnostic::semantic(path, e))
        }
        (ActionKind::Table, None) => Err(Diagnostic::semantic(&at(path, "images"), "required for table actions")),
        (_, Some(_)) => Err(Diagnostic::semantic(&at(path, "images"), "only table actions take images")),
    }
}

pub fn precrossed(b: &PrecrossedBody, path: &str) -> Built<PreCrossedModule> {
    let m1 = group(&b.m1, &at(path, "m1"))?;
    let m2 = group(&b.m2, &at(path, "m2"))?;
    let d = hom(&b.d, &m2, &m1, &at(path, "d"))?;
    let act = action(&b.action, &m2, &m1, &at(path, "action"))?;
    PreCrossedModule::new(d, act).map_err(|e| Diagnostic::semantic(path, e))
}

pub fn xc3(b: &Xc3Body, path: &str) -> Built<CrossedComplex3> {
    let m1 = group(&b.m1, &at(path, "m1"))?;
    let m2 = group(&b.m2, &at(path, "m2"))?;
    let m3 = group(&b.m3, &at(path, "m3"))?;
    let d2 = hom(&b.d2, &m2, &m1, &at(path, "d2"))?;
    let act = action(&b.action, &m2, &m1, &at(path, "action"))?;
    let lower = PreCrossedModule::new(d2, act).map_err(|e| Diagnostic::semantic(path, e))?;
    let d3 = hom(&b.d3, &m3, &m2, &at(path, "d3"))?;
    let act3 = action(&b.action3, &m3, &m1, &at(path, "action3"))?;
    CrossedComplex3::new(lower, d3, act3).map_err(|e| Diagnostic::semantic(path, e))
}

pub fn rqm(b: &RqmBody, path: &str) -> Built<ReducedQuadraticModule> {
    let q3 = match group(&b.q3, &at(path, "q3"))? {
        Group::Abelian(a) => a,
        _ => return Err(Diagnostic::semantic(&at(path, "q3"), "Q₃ must be abelian")),
    };
    let omega_path = at(path, "omega");
    if b.omega.len() != b.rank {
        return Err(Diagnostic::semantic(&omega_path, format!("{} rows but the rank is {}", b.omega.len(), b.rank)));
    }
    let mut omega = Vec::with_capacity(b.rank);
    for (i, row) in b.omega.iter().enumerate() {
        if row.len() != b.rank {
            return Err(Diagnostic::semantic(
                &idx(&omega_path, i),
                format!("{} entries but the rank is {}", row.len(), b.rank),
            ));
        }
        let mut out = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            let v = bigints(v);
            q3.check_vector(&v)
                .map_err(|e| Diagnostic::semantic(&idx(&idx(&omega_path, i), j), e))?;
            out.push(v);
        }
        omega.push(out);
    }
    let q3_group = Group::Abelian(q3.clone());
    let q2 = Group::FreeNil2 { rank: b.rank };
    let d3 = hom(&b.d3, &q3_group, &q2, &at(path, "d3"))?;
    ReducedQuadraticModule::new(b.rank, q3, omega, d3.images().to_vec()).map_err(|e| Diagnostic::semantic(path, e))
}

pub fn qm(b: &QmBody, path: &str) -> Built<QuadraticModule> {
    let reduced = rqm(&b.rqm, &at(path, "rqm"))?;
    let q1 = group(&b.q1, &at(path, "q1"))?;
    let q2 = reduced.q2();
    let d2 = hom(&b.d2, &q2, &q1, &at(path, "d2"))?;
    let a2 = action(&b.action2, &q2, &q1, &at(path, "action2"))?;
    let a3 = action(&b.action3, &reduced.q3_group(), &q1, &at(path, "action3"))?;
    QuadraticModule::new(reduced, d2, a2, a3).map_err(|e| Diagnostic::semantic(path, e))
}

/// A complex together with the object it lies under, if any.
#[derive(Clone, Debug)]
pub struct BuiltComplex {
    pub under: UnderComplex,
    pub object: Option<ReducedQuadraticComplex4>,
}

fn plain_rqc4(b: &Rqc4Body, path: &str) -> Built<ReducedQuadraticComplex4> {
    let m = rqm(&b.rqm, &at(path, "rqm"))?;
    let q4 = match group(&b.q4, &at(path, "q4"))? {
        Group::Abelian(a) => a,
        _ => return Err(Diagnostic::semantic(&at(path, "q4"), "Q₄ must be abelian")),
    };
    let d4 = hom(&b.d4, &Group::Abelian(q4.clone()), &m.q3_group(), &at(path, "d4"))?;
    ReducedQuadraticComplex4::new(m, q4, d4.images().to_vec()).map_err(|e| Diagnostic::semantic(path, e))
}

pub fn rqc4(b: &Rqc4Body, path: &str) -> Built<BuiltComplex> {
    let complex = plain_rqc4(b, path)?;
    let Some(u) = &b.under else {
        return Ok(BuiltComplex {
            under: UnderComplex::plain(complex),
            object: None,
        });
    };
    let upath = at(path, "under");
    if u.object.under.is_some() {
        return Err(Diagnostic::semantic(&at(&upath, "object.under"), "under-objects cannot be nested"));
    }
    let object = plain_rqc4(&u.object, &at(&upath, "object"))?;
    let q2 = hom(&u.q2, &object.rqm().q2(), &complex.rqm().q2(), &at(&upath, "q2"))?;
    let q3 = hom(&u.q3, &object.rqm().q3_group(), &complex.rqm().q3_group(), &at(&upath, "q3"))?;
    Ok(BuiltComplex {
        under: UnderComplex {
            complex,
            q2: q2.images().to_vec(),
            q3: q3.images().to_vec(),
        },
        object: Some(object),
    })
}

pub fn qcm(
    b: &QcmBody,
    src: &ReducedQuadraticComplex4,
    dst: &ReducedQuadraticComplex4,
    path: &str,
) -> Built<QCMorphism> {
    let f2 = hom(&b.f2, &src.rqm().q2(), &dst.rqm().q2(), &at(path, "f2"))?;
    let f3 = hom(&b.f3, &src.rqm().q3_group(), &dst.rqm().q3_group(), &at(path, "f3"))?;
    let f4 = match &b.f4 {
        Some(images) => Some(hom(images, &src.q4_group(), &dst.q4_group(), &at(path, "f4"))?.images().to_vec()),
        None => None,
    };
    QCMorphism::from_images(src, dst, f2.images().to_vec(), f3.images().to_vec(), f4)
        .map_err(|e| Diagnostic::semantic(path, e))
}

pub fn xc3m(b: &Xc3mBody, x: &CrossedComplex3, y: &CrossedComplex3, path: &str) -> Built<Xc3Morphism> {
    Ok(Xc3Morphism {
        f1: hom(&b.f1, x.m1(), y.m1(), &at(path, "f1"))?,
        f2: hom(&b.f2, x.m2(), y.m2(), &at(path, "f2"))?,
        f3: hom(&b.f3, x.m3(), y.m3(), &at(path, "f3"))?,
    })
}

pub fn qc_homotopy(b: &QcHomotopyBody, src: &UnderComplex, dst: &UnderComplex, path: &str) -> Built<QCHomotopy> {
    let check = |rows: &[Vec<JInt>], count: usize, target: &Group, field: &str| -> Built<Vec<Vec<BigInt>>> {
        let p = at(path, field);
        if rows.len() != count {
            return Err(Diagnostic::semantic(&p, format!("{} values for {count} generators", rows.len())));
        }
        rows.iter()
            .enumerate()
            .map(|(i, r)| {
                let v = bigints(r);
                target.check(&Element::Abelian(v.clone())).map_err(|e| Diagnostic::semantic(&idx(&p, i), e))?;
                Ok(v)
            })
            .collect()
    };
    Ok(QCHomotopy {
        alpha2: check(&b.alpha2, src.rqm().rank(), &dst.rqm().q3_group(), "alpha2")?,
        alpha3: check(&b.alpha3, src.rqm().q3().rank(), &dst.complex.q4_group(), "alpha3")?,
    })
}

/// A reduced quadratic homotopy problem ready for the solver.
pub struct RqProblem {
    pub source: BuiltComplex,
    pub target: BuiltComplex,
    pub morphisms: BTreeMap<String, QCMorphism>,
}

pub fn problem(b: &ProblemBody, path: &str) -> Built<RqProblem> {
    let source = rqc4(&b.source, &at(path, "source"))?;
    let target = rqc4(&b.target, &at(path, "target"))?;
    let object = |c: &Rqc4Body| c.under.as_ref().map(|u| u.object.clone());
    if object(&b.source) != object(&b.target) {
        return Err(Diagnostic::semantic(
            &at(&at(path, "target"), "under"),
            "source and target must lie under the same object",
        ));
    }
    let mut morphisms = BTreeMap::new();
    for (name, m) in &b.morphisms {
        let p = at(&at(path, "morphisms"), name);
        morphisms.insert(name.clone(), qcm(m, &source.under.complex, &target.under.complex, &p)?);
    }
    Ok(RqProblem {
        source,
        target,
        morphisms,
    })
}

pub struct Xc3Problem {
    pub source: CrossedComplex3,
    pub target: CrossedComplex3,
    pub under: Vec<Element>,
    pub morphisms: BTreeMap<String, Xc3Morphism>,
}

pub fn xc3_problem(b: &Xc3ProblemBody, path: &str) -> Built<Xc3Problem> {
    let source = xc3(&b.source, &at(path, "source"))?;
    let target = xc3(&b.target, &at(path, "target"))?;
    let under = elements(&b.under, source.m2(), &at(path, "under"))?;
    let mut morphisms = BTreeMap::new();
    for (name, m) in &b.morphisms {
        let p = at(&at(path, "morphisms"), name);
        morphisms.insert(name.clone(), xc3m(m, &source, &target, &p)?);
    }
    Ok(Xc3Problem {
        source,
        target,
        under,
        morphisms,
    })
}

pub fn group_spec(g: &Group) -> GroupSpec {
    let spec = |kind, rank| GroupSpec {
        kind,
        rank: Some(rank),
        order: None,
        relations: None,
    };
    match g {
        Group::Free { rank } => spec(GroupKind::Free, *rank),
        Group::FreeNil2 { rank } => spec(GroupKind::FreeNil2, *rank),
        Group::Abelian(a) if a.relations().is_empty() => spec(GroupKind::FreeAbelian, a.rank()),
        Group::Abelian(a) => GroupSpec {
            relations: Some(a.relations().iter().map(|r| jints(r)).collect()),
            ..spec(GroupKind::FgAbelian, a.rank())
        },
    }
}

pub fn element_spec(x: &Element) -> ElementSpec {
    match x {
        Element::Abelian(v) => ElementSpec::Vector(jints(v)),
        Element::Nil2(n) => ElementSpec::Nil2 {
            base: jints(n.base()),
            comm: jints(n.comm()),
        },
        Element::Word(w) => ElementSpec::Word(
            w.letters()
                .iter()
                .map(|l| (l.generator as i64 + 1) * if l.inverse { -1 } else { 1 })
                .collect(),
        ),
    }
}

fn element_specs(xs: &[Element]) -> Vec<ElementSpec> {
    xs.iter().map(element_spec).collect()
}

pub fn rqm_body(m: &ReducedQuadraticModule) -> RqmBody {
    RqmBody {
        rank: m.rank(),
        q3: group_spec(&m.q3_group()),
        omega: m
            .omega_basis()
            .iter()
            .map(|row| row.iter().map(|v| jints(v)).collect())
            .collect(),
        d3: element_specs(m.d3().images()),
    }
}

pub fn rqc4_body(c: &ReducedQuadraticComplex4) -> Rqc4Body {
    Rqc4Body {
        rqm: rqm_body(c.rqm()),
        q4: group_spec(&c.q4_group()),
        d4: element_specs(c.d4().images()),
        under: None,
    }
}

pub fn under_body(u: &UnderComplex, object: &ReducedQuadraticComplex4) -> Rqc4Body {
    Rqc4Body {
        under: Some(UnderSpec {
            object: Box::new(rqc4_body(object)),
            q2: element_specs(&u.q2),
            q3: element_specs(&u.q3),
        }),
        ..rqc4_body(&u.complex)
    }
}

pub fn qcm_body(f: &QCMorphism) -> QcmBody {
    let zero_f4 = f.f4.images().iter().all(|x| x.as_vector().is_ok_and(|v| v.iter().all(Zero::is_zero)));
    QcmBody {
        f2: element_specs(f.f2.images()),
        f3: element_specs(f.f3.images()),
        f4: (!zero_f4).then(|| element_specs(f.f4.images())),
    }
}

pub fn qc_homotopy_body(h: &QCHomotopy) -> QcHomotopyBody {
    QcHomotopyBody {
        alpha2: h.alpha2.iter().map(|v| jints(v)).collect(),
        alpha3: h.alpha3.iter().map(|v| jints(v)).collect(),
    }
}
