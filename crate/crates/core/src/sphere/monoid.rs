use std::fmt;

use serde::Serialize;

use crate::report::CheckReport;

/// The four canonical self-maps of `S²×S²` fixing the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum M {
    I,
    T,
    P1,
    P2,
}

impl M {
    pub const ALL: [M; 4] = [M::I, M::T, M::P1, M::P2];

    fn index(self) -> usize {
        self as usize
    }

    /// `m·m′` from the multiplication table (row `m`, column `m′`).
    pub fn mul(self, other: M) -> M {
        MONOID_TABLE[self.index()][other.index()]
    }

    /// `m_*` on `Z₂ ⊕ Z₂`.
    pub fn push(self, v: V) -> V {
        let [x, y] = v.0;
        V(match self {
            M::I => [x, y],
            M::T => [y, x],
            M::P1 => [x, x],
            M::P2 => [y, y],
        })
    }

    /// `m^*` on `Z₂ ⊕ Z₂`.
    pub fn pull(self, v: V) -> V {
        match self {
            M::I | M::T => v,
            M::P1 | M::P2 => V::ZERO,
        }
    }
}

impl fmt::Display for M {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            M::I => "I",
            M::T => "T",
            M::P1 => "P′",
            M::P2 => "P″",
        })
    }
}

pub const MONOID_TABLE: [[M; 4]; 4] = [
    [M::I, M::T, M::P1, M::P2],
    [M::T, M::I, M::P1, M::P2],
    [M::P1, M::P2, M::P1, M::P2],
    [M::P2, M::P1, M::P1, M::P2],
];

pub fn monoid_m_table() -> [[M; 4]; 4] {
    MONOID_TABLE
}

/// An element of `Z₂ ⊕ Z₂`, entries in `{0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct V(pub [u8; 2]);

impl V {
    pub const ZERO: V = V([0, 0]);
    pub const ALL: [V; 4] = [V([0, 0]), V([1, 0]), V([0, 1]), V([1, 1])];

    pub fn add(self, other: V) -> V {
        V([self.0[0] ^ other.0[0], self.0[1] ^ other.0[1]])
    }
}

impl fmt::Display for V {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0[0], self.0[1])
    }
}

/// `(m, (x, y))` in the split linear extension `M̄ = M × (Z₂ ⊕ Z₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExtMonoidElement {
    pub m: M,
    pub v: V,
}

impl ExtMonoidElement {
    pub const IDENTITY: ExtMonoidElement = ExtMonoidElement { m: M::I, v: V::ZERO };

    pub fn new(m: M, v: V) -> Self {
        ExtMonoidElement { m, v }
    }
}

impl fmt::Display for ExtMonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.v)
    }
}

/// The 16 elements, `m`-major.
pub fn mbar_elements() -> Vec<ExtMonoidElement> {
    M::ALL
        .iter()
        .flat_map(|&m| V::ALL.iter().map(move |&v| ExtMonoidElement::new(m, v)))
        .collect()
}

/// `(m, v)∘(m′, v′) = (mm′, m_*v′ + m′^*v)`.
pub fn mbar_compose(u: ExtMonoidElement, w: ExtMonoidElement) -> ExtMonoidElement {
    ExtMonoidElement::new(u.m.mul(w.m), u.m.push(w.v).add(w.m.pull(u.v)))
}

pub fn mbar_units() -> Vec<ExtMonoidElement> {
    let all = mbar_elements();
    all.iter()
        .copied()
        .filter(|&u| {
            all.iter().any(|&w| {
                mbar_compose(u, w) == ExtMonoidElement::IDENTITY && mbar_compose(w, u) == ExtMonoidElement::IDENTITY
            })
        })
        .collect()
}

/// `(t, v)·(t′, v′) = (t + t′, v + σᵗv′)` in `Z₂ ⋉ (Z₂ ⊕ Z₂)`, `σ` the swap.
fn semidirect(p: (u8, V), q: (u8, V)) -> (u8, V) {
    let swapped = if p.0 == 1 { V([q.1 .0[1], q.1 .0[0]]) } else { q.1 };
    (p.0 ^ q.0, p.1.add(swapped))
}

/// The candidate isomorphism from the units to `Z₂ ⋉ (Z₂ ⊕ Z₂)`: `T ↦ (1, 0)`,
/// `(I, v) ↦ (0, v)`.
fn to_semidirect(u: ExtMonoidElement) -> Option<(u8, V)> {
    match u.m {
        M::I => Some((0, u.v)),
        M::T => Some((1, u.v)),
        M::P1 | M::P2 => None,
    }
}

/// Exhaustive checks of the monoid structure of `M̄` and its unit group.
pub fn mbar_check_structure() -> CheckReport {
    let mut report = CheckReport::new("split linear extension M̄");
    let all = mbar_elements();
    let e = ExtMonoidElement::IDENTITY;

    report.record(
        "cardinality",
        "|M̄| = 16",
        if all.len() == 16 { Ok(1) } else { Err(format!("{} elements", all.len())) },
    );

    let assoc = (|| {
        for &x in &all {
            for &y in &all {
                for &z in &all {
                    let l = mbar_compose(mbar_compose(x, y), z);
                    let r = mbar_compose(x, mbar_compose(y, z));
                    if l != r {
                        return Err(format!("({x}∘{y})∘{z} = {l}, {x}∘({y}∘{z}) = {r}"));
                    }
                }
            }
        }
        Ok(all.len().pow(3))
    })();
    report.record("associativity", "(u∘v)∘w = u∘(v∘w)", assoc);

    let identity = all
        .iter()
        .find(|&&x| mbar_compose(e, x) != x || mbar_compose(x, e) != x)
        .map_or(Ok(all.len()), |x| Err(format!("fails at {x}")));
    report.record("identity", "(I,(0,0)) is a two-sided identity", identity);

    let units = mbar_units();
    let unit_shape = if units.len() != 8 {
        Err(format!("{} units", units.len()))
    } else if let Some(u) = units.iter().find(|u| matches!(u.m, M::P1 | M::P2)) {
        Err(format!("{u} is a unit"))
    } else {
        Ok(all.len())
    };
    report.record("units", "exactly the 8 elements over I and T are units", unit_shape);

    let closure = (|| {
        for &x in &units {
            for &y in &units {
                let p = mbar_compose(x, y);
                if !units.contains(&p) {
                    return Err(format!("{x}∘{y} = {p} is not a unit"));
                }
            }
        }
        Ok(units.len().pow(2))
    })();
    report.record("units.closure", "units are closed under composition", closure);

    let iso = (|| {
        let mut images: Vec<(u8, V)> = units
            .iter()
            .map(|&u| to_semidirect(u).ok_or_else(|| format!("{u} has no image")))
            .collect::<Result<_, _>>()?;
        images.sort();
        images.dedup();
        if images.len() != units.len() {
            return Err("the map to Z₂ ⋉ (Z₂ ⊕ Z₂) is not injective".to_string());
        }
        for &x in &units {
            for &y in &units {
                let lhs = to_semidirect(mbar_compose(x, y));
                let rhs = semidirect(to_semidirect(x).unwrap(), to_semidirect(y).unwrap());
                if lhs != Some(rhs) {
                    return Err(format!("tables differ at {x}∘{y}"));
                }
            }
        }
        Ok(units.len().pow(2))
    })();
    report.record(
        "units.semidirect",
        "units ≅ Z₂ ⋉ (Z₂ ⊕ Z₂) with Z₂ generated by T acting by swap",
        iso,
    );
    report
}
