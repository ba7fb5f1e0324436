//! Structure files: a versioned JSON envelope `{"version", "kind", "body"}`
//! around one structure, morphism, witness or homotopy problem, plus the
//! canonical printer.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, DeserializeSeed, MapAccess, SeqAccess, Unexpected, Visitor};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

pub const FORMAT_VERSION: &str = "1";

/// Largest magnitude written as a plain JSON number.
const SAFE_INTEGER: i64 = (1 << 53) - 1;

/// An arbitrary-precision integer. Written as a JSON number inside the
/// 53-bit safe range and as a decimal string outside it; both spellings are
/// accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JInt(pub BigInt);

impl From<&BigInt> for JInt {
    fn from(x: &BigInt) -> Self {
        JInt(x.clone())
    }
}

impl From<i64> for JInt {
    fn from(x: i64) -> Self {
        JInt(BigInt::from(x))
    }
}

impl Serialize for JInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= SAFE_INTEGER => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> Result<JInt, E> {
                Ok(JInt(x.into()))
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> Result<JInt, E> {
                Ok(JInt(x.into()))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<JInt, E> {
                s.parse::<BigInt>()
                    .map(JInt)
                    .map_err(|_| E::invalid_value(Unexpected::Str(s), &self))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn jints(xs: &[BigInt]) -> Vec<JInt> {
    xs.iter().map(JInt::from).collect()
}

pub fn bigints(xs: &[JInt]) -> Vec<BigInt> {
    xs.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Free,
    FreeNil2,
    FreeAbelian,
    FgAbelian,
    Cyclic,
    Trivial,
}

/// `{"kind":"fg_abelian","rank":2,"relations":[[2,0]]}` and friends. Which
/// of the optional fields are required depends on `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<JInt>>>,
}

/// A group element: an integer vector (abelian groups), a nil(2) normal
/// form `{"base":[…],"comm":[…]}`, or a word `{"word":[1,-2]}` with
/// 1-based signed generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    Vector(Vec<JInt>),
    Nil2 { base: Vec<JInt>, comm: Vec<JInt> },
    Word(Vec<i64>),
}

impl Serialize for ElementSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ElementSpec::Vector(v) => v.serialize(s),
            ElementSpec::Nil2 { base, comm } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("base", base)?;
                m.serialize_entry("comm", comm)?;
                m.end()
            }
            ElementSpec::Word(w) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("word", w)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for ElementSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ElementSpec;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer array, {\"base\",\"comm\"} or {\"word\"}")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<ElementSpec, A::Error> {
                let mut v = Vec::new();
                while let Some(x) = seq.next_element::<JInt>()? {
                    v.push(x);
                }
                Ok(ElementSpec::Vector(v))
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<ElementSpec, A::Error> {
                let (mut base, mut comm, mut word) = (None, None, None);
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "base" if base.is_none() => base = Some(map.next_value::<Vec<JInt>>()?),
                        "comm" if comm.is_none() => comm = Some(map.next_value::<Vec<JInt>>()?),
                        "word" if word.is_none() => word = Some(map.next_value::<Vec<i64>>()?),
                        "base" | "comm" | "word" => return Err(de::Error::custom(format!("duplicate field `{key}`"))),
                        other => return Err(de::Error::unknown_field(other, &["base", "comm", "word"])),
                    }
                }
                match (base, comm, word) {
                    (Some(base), Some(comm), None) => Ok(ElementSpec::Nil2 { base, comm }),
                    (None, None, Some(w)) => Ok(ElementSpec::Word(w)),
                    (Some(_), None, None) => Err(de::Error::missing_field("comm")),
                    (None, Some(_), None) => Err(de::Error::missing_field("base")),
                    (None, None, None) => Err(de::Error::custom("empty element object")),
                    _ => Err(de::Error::custom("an element is either {\"base\",\"comm\"} or {\"word\"}")),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    Trivial,
    Conjugation,
    Table,
}

/// A right action; `images[x][m]` is `gₓ^{gₘ}` for `kind = "table"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub kind: ActionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<Vec<ElementSpec>>>,
}

/// `d: M₂ → M₁` with an action of `M₁` on `M₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecrossedBody {
    pub m1: GroupSpec,
    pub m2: GroupSpec,
    pub d: Vec<ElementSpec>,
    pub action: ActionSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Xc3Body {
    pub m1: GroupSpec,
    pub m2: GroupSpec,
    pub d2: Vec<ElementSpec>,
    pub action: ActionSpec,
    pub m3: GroupSpec,
    pub d3: Vec<ElementSpec>,
    pub action3: ActionSpec,
}

/// `omega[i][j] = ω(c̄ᵢ ⊗ c̄ⱼ) ∈ Q₃`; `d3` lists `∂₃` on the generators of `Q₃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RqmBody {
    pub rank: usize,
    pub q3: GroupSpec,
    pub omega: Vec<Vec<Vec<JInt>>>,
    pub d3: Vec<ElementSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QmBody {
    pub rqm: RqmBody,
    pub q1: GroupSpec,
    pub d2: Vec<ElementSpec>,
    pub action2: ActionSpec,
    pub action3: ActionSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rqc4Body {
    pub rqm: RqmBody,
    pub q4: GroupSpec,
    pub d4: Vec<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub under: Option<UnderSpec>,
}

/// The structure map `q` from an under-object into a complex, on the
/// generators of the object's `Q₂` and `Q₃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnderSpec {
    pub object: Box<Rqc4Body>,
    pub q2: Vec<ElementSpec>,
    pub q3: Vec<ElementSpec>,
}

/// A morphism of reduced quadratic complexes; an absent `f4` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QcmBody {
    pub f2: Vec<ElementSpec>,
    pub f3: Vec<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f4: Option<Vec<ElementSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Xc3mBody {
    pub f1: Vec<ElementSpec>,
    pub f2: Vec<ElementSpec>,
    pub f3: Vec<ElementSpec>,
}

/// `alpha2[i] = α₂(gᵢ) ∈ Q₃′`, `alpha3[k] = α₃(hₖ) ∈ Q₄′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QcHomotopyBody {
    pub alpha2: Vec<Vec<JInt>>,
    pub alpha3: Vec<Vec<JInt>>,
}

/// `alpha[i] = α(gᵢ) ∈ M₃′` for the generators `gᵢ` of `M₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Xc3HomotopyBody {
    pub alpha: Vec<ElementSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemBody {
    pub source: Rqc4Body,
    pub target: Rqc4Body,
    pub morphisms: BTreeMap<String, QcmBody>,
}

/// `under` lists the image of the under-object in the source `M₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Xc3ProblemBody {
    pub source: Xc3Body,
    pub target: Xc3Body,
    #[serde(default)]
    pub under: Vec<ElementSpec>,
    pub morphisms: BTreeMap<String, Xc3mBody>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Precrossed(PrecrossedBody),
    Crossed(PrecrossedBody),
    Xc3(Xc3Body),
    Rqm(RqmBody),
    Qm(QmBody),
    Rqc4(Rqc4Body),
    Qcm(QcmBody),
    Xc3m(Xc3mBody),
    QcHomotopy(QcHomotopyBody),
    Xc3Homotopy(Xc3HomotopyBody),
    HomotopyProblem(ProblemBody),
    Xc3HomotopyProblem(Xc3ProblemBody),
}

pub const KINDS: &[&str] = &[
    "precrossed",
    "crossed",
    "xc3",
    "rqm",
    "qm",
    "rqc4",
    "qcm",
    "xc3m",
    "qc_homotopy",
    "xc3_homotopy",
    "homotopy_problem",
    "xc3_homotopy_problem",
];

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Precrossed(_) => "precrossed",
            Structure::Crossed(_) => "crossed",
            Structure::Xc3(_) => "xc3",
            Structure::Rqm(_) => "rqm",
            Structure::Qm(_) => "qm",
            Structure::Rqc4(_) => "rqc4",
            Structure::Qcm(_) => "qcm",
            Structure::Xc3m(_) => "xc3m",
            Structure::QcHomotopy(_) => "qc_homotopy",
            Structure::Xc3Homotopy(_) => "xc3_homotopy",
            Structure::HomotopyProblem(_) => "homotopy_problem",
            Structure::Xc3HomotopyProblem(_) => "xc3_homotopy_problem",
        }
    }
}

struct BodySeed<'a>(&'a str);

impl<'de> DeserializeSeed<'de> for BodySeed<'_> {
    type Value = Structure;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<Structure, D::Error> {
        Ok(match self.0 {
            "precrossed" => Structure::Precrossed(Deserialize::deserialize(d)?),
            "crossed" => Structure::Crossed(Deserialize::deserialize(d)?),
            "xc3" => Structure::Xc3(Deserialize::deserialize(d)?),
            "rqm" => Structure::Rqm(Deserialize::deserialize(d)?),
            "qm" => Structure::Qm(Deserialize::deserialize(d)?),
            "rqc4" => Structure::Rqc4(Deserialize::deserialize(d)?),
            "qcm" => Structure::Qcm(Deserialize::deserialize(d)?),
            "xc3m" => Structure::Xc3m(Deserialize::deserialize(d)?),
            "qc_homotopy" => Structure::QcHomotopy(Deserialize::deserialize(d)?),
            "xc3_homotopy" => Structure::Xc3Homotopy(Deserialize::deserialize(d)?),
            "homotopy_problem" => Structure::HomotopyProblem(Deserialize::deserialize(d)?),
            "xc3_homotopy_problem" => Structure::Xc3HomotopyProblem(Deserialize::deserialize(d)?),
            other => unreachable!("kind {other} was validated before the body"),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub version: String,
    pub structure: Structure,
}

impl StructureFile {
    pub fn new(structure: Structure) -> Self {
        StructureFile {
            version: FORMAT_VERSION.to_string(),
            structure,
        }
    }

    pub fn to_canonical_json(&self) -> String {
        render(&serde_json::to_value(self).expect("structure files serialize to JSON"))
    }
}

impl Serialize for StructureFile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StructureFile", 3)?;
        st.serialize_field("version", &self.version)?;
        st.serialize_field("kind", self.structure.kind())?;
        match &self.structure {
            Structure::Precrossed(b) | Structure::Crossed(b) => st.serialize_field("body", b)?,
            Structure::Xc3(b) => st.serialize_field("body", b)?,
            Structure::Rqm(b) => st.serialize_field("body", b)?,
            Structure::Qm(b) => st.serialize_field("body", b)?,
            Structure::Rqc4(b) => st.serialize_field("body", b)?,
            Structure::Qcm(b) => st.serialize_field("body", b)?,
            Structure::Xc3m(b) => st.serialize_field("body", b)?,
            Structure::QcHomotopy(b) => st.serialize_field("body", b)?,
            Structure::Xc3Homotopy(b) => st.serialize_field("body", b)?,
            Structure::HomotopyProblem(b) => st.serialize_field("body", b)?,
            Structure::Xc3HomotopyProblem(b) => st.serialize_field("body", b)?,
        }
        st.end()
    }
}

struct Version(String);

impl<'de> Deserialize<'de> for Version {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = String::deserialize(d)?;
        if v != FORMAT_VERSION {
            return Err(de::Error::invalid_value(Unexpected::Str(&v), &"format version \"1\""));
        }
        Ok(Version(v))
    }
}

struct KindName(&'static str);

impl<'de> Deserialize<'de> for KindName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let k = String::deserialize(d)?;
        KINDS.iter().find(|&&n| n == k).map(|&n| KindName(n)).ok_or_else(|| de::Error::unknown_variant(&k, KINDS))
    }
}

impl<'de> Deserialize<'de> for StructureFile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = StructureFile;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object with `version`, `kind` and `body`")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<StructureFile, A::Error> {
                let mut version: Option<String> = None;
                let mut kind: Option<&'static str> = None;
                let mut body = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "version" => version = Some(map.next_value::<Version>()?.0),
                        "kind" => kind = Some(map.next_value::<KindName>()?.0),
                        "body" => {
                            let k = kind.ok_or_else(|| de::Error::custom("`kind` must come before `body`"))?;
                            body = Some(map.next_value_seed(BodySeed(k))?);
                        }
                        other => return Err(de::Error::unknown_field(other, &["version", "kind", "body"])),
                    }
                }
                Ok(StructureFile {
                    version: version.ok_or_else(|| de::Error::missing_field("version"))?,
                    structure: body.ok_or_else(|| de::Error::missing_field("body"))?,
                })
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Syntax,
    Schema,
    Semantic,
    Io,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Syntax => "syntax error",
            Category::Schema => "invalid structure file",
            Category::Semantic => "invalid structure",
            Category::Io => "i/o error",
        })
    }
}

/// What went wrong with a structure file, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub category: Category,
    /// 1-based line and column, when known.
    pub position: Option<(usize, usize)>,
    /// Dotted path to the offending field, e.g. `body.q3.relations[0]`.
    pub path: Option<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn semantic(path: &str, message: impl fmt::Display) -> Self {
        Diagnostic {
            category: Category::Semantic,
            position: None,
            path: Some(path.to_string()),
            message: message.to_string(),
        }
    }

    fn from_json(e: serde_json::Error, path: Option<String>) -> Self {
        let category = match e.classify() {
            serde_json::error::Category::Syntax | serde_json::error::Category::Eof => Category::Syntax,
            serde_json::error::Category::Data => Category::Schema,
            serde_json::error::Category::Io => Category::Io,
        };
        let position = (e.line() > 0).then(|| (e.line(), e.column()));
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        Diagnostic {
            category,
            position,
            path: path.filter(|p| p != "." && !p.is_empty()),
            message,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.category)?;
        if let Some((line, column)) = self.position {
            write!(f, " at line {line}, column {column}")?;
        }
        if let Some(path) = &self.path {
            write!(f, " in `{path}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for Diagnostic {}

/// Parses a structure file. Only the envelope and field types are checked
/// here; group-theoretic validation happens when the body is built.
pub fn parse_structure(text: &str) -> Result<StructureFile, Diagnostic> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: StructureFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        Diagnostic::from_json(e.into_inner(), Some(path))
    })?;
    de.end().map_err(|e| Diagnostic::from_json(e, None))?;
    Ok(file)
}

/// Like [`parse_structure`] on raw bytes, rejecting invalid UTF-8.
pub fn parse_structure_bytes(bytes: &[u8]) -> Result<StructureFile, Diagnostic> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        let column = bytes[..e.valid_up_to()].iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        Diagnostic {
            category: Category::Syntax,
            position: Some((line, column)),
            path: None,
            message: "invalid UTF-8".into(),
        }
    })?;
    parse_structure(text)
}

/// The canonical layout: two-space indentation, one object member per line,
/// arrays of scalars on a single line, trailing newline.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn pad(out: &mut String, indent: usize) {
    out.extend(std::iter::repeat_n("  ", indent));
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, indent);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&serde_json::to_string(k).expect("string keys serialize"));
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalars serialize")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        let big = JInt(BigInt::from(1u64 << 60));
        assert_eq!(serde_json::to_string(&big).unwrap(), "\"1152921504606846976\"");
        assert_eq!(serde_json::to_string(&JInt::from(-SAFE_INTEGER)).unwrap(), "-9007199254740991");
        let back: JInt = serde_json::from_str("\"1152921504606846976\"").unwrap();
        assert_eq!(back, big);
        assert!(serde_json::from_str::<JInt>("\"12a\"").is_err());
        assert!(serde_json::from_str::<JInt>("1.5").is_err());
    }

    #[test]
    fn render_layout() {
        let v: Value = serde_json::from_str(r#"{"a":[1,2],"b":[[1],[]],"c":{},"d":[]}"#).unwrap();
        assert_eq!(render(&v), "{\n  \"a\": [1, 2],\n  \"b\": [\n    [1],\n    []\n  ],\n  \"c\": {},\n  \"d\": []\n}\n");
    }

    #[test]
    fn elements_parse_in_all_three_shapes() {
        let e: ElementSpec = serde_json::from_str("[1, \"2\"]").unwrap();
        assert_eq!(e, ElementSpec::Vector(vec![JInt::from(1), JInt::from(2)]));
        let e: ElementSpec = serde_json::from_str(r#"{"base":[1],"comm":[]}"#).unwrap();
        assert!(matches!(e, ElementSpec::Nil2 { .. }));
        let e: ElementSpec = serde_json::from_str(r#"{"word":[1,-2]}"#).unwrap();
        assert_eq!(e, ElementSpec::Word(vec![1, -2]));
        assert!(serde_json::from_str::<ElementSpec>(r#"{"base":[1]}"#).is_err());
        assert!(serde_json::from_str::<ElementSpec>(r#"{"base":[1],"comm":[],"word":[]}"#).is_err());
    }

    #[test]
    fn body_before_kind_is_rejected() {
        let err = parse_structure(r#"{"version":"1","body":{},"kind":"rqm"}"#).unwrap_err();
        assert_eq!(err.category, Category::Schema);
        assert!(err.message.contains("`kind` must come before `body`"), "{err}");
    }
}
