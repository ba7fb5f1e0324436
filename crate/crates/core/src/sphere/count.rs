use serde::Serialize;

use super::monoid::mbar_elements;

/// A topological input the count depends on but which is not computed here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axiom {
    pub id: &'static str,
    pub statement: &'static str,
}

/// The trust boundary of the derivation.
pub fn axiom_manifest() -> Vec<Axiom> {
    vec![
        Axiom {
            id: "pi4-s2",
            statement: "π₄(S²) = Z₂, so π₄(S²×S²) = Z₂ ⊕ Z₂",
        },
        Axiom {
            id: "free-action",
            statement: "π₄(S²×S²) acts freely on [S²×S², S²×S²]^D via the pinch coaction",
        },
        Axiom {
            id: "product-split",
            statement: "[S²×S², S²×S²]^D = [S²×S², S²]^D × [S²×S², S²]^D",
        },
        Axiom {
            id: "cylinder",
            statement: "the mapping cylinder Z of the comultiplication S² → S² ∨ S² satisfies [Z, S²]^D = [S²×S², S²]^D",
        },
        Axiom {
            id: "orbits",
            statement: "the orbits of π₄(S²) on [Z, S²]^D correspond to homotopy classes under 𝒟 of retractions Q → 𝒟",
        },
        Axiom {
            id: "identity-action",
            statement: "I acts as the identity on both sides of the bimodule Z₂ ⊕ Z₂",
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountDerivation {
    pub count: u64,
    /// Homotopy classes of retractions `Q → 𝒟`, computed.
    pub orbit_count: u64,
    /// `|π₄(S²)|`, assumed.
    pub pi4_order: u64,
    pub mbar_order: u64,
    pub steps: Vec<String>,
    pub axioms: Vec<Axiom>,
    /// Whether the count agrees with `|M̄|` and the classification.
    pub consistent: bool,
}

/// `|[S²×S², S²×S²]^D| = (n·|π₄(S²)|)²` for `n` orbit classes, cross-checked
/// against `|M̄|`.
pub fn assemble_selfmap_count(orbit_count: u64) -> CountDerivation {
    let pi4_order = 2;
    let per_factor = orbit_count * pi4_order;
    let count = per_factor * per_factor;
    let mbar_order = mbar_elements().len() as u64;
    let mut steps = vec![
        format!("retractions Q → 𝒟 fall into {orbit_count} homotopy classes under 𝒟"),
        format!("a free π₄(S²)-action with {orbit_count} orbits gives |[S²×S², S²]^D| = {orbit_count}·{pi4_order} = {per_factor}"),
        format!("|[S²×S², S²×S²]^D| = {per_factor}² = {count}"),
        format!("|M̄| = 4·4 = {mbar_order}"),
    ];
    let consistent = orbit_count == 2 && count == mbar_order;
    if !consistent {
        steps.push(format!(
            "contradiction: {count} self-maps but |M̄| = {mbar_order} and the classification has 2 classes"
        ));
    }
    CountDerivation {
        count,
        orbit_count,
        pi4_order,
        mbar_order,
        steps,
        axioms: axiom_manifest(),
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_orbits_give_sixteen() {
        let d = assemble_selfmap_count(2);
        assert_eq!(d.count, 16);
        assert!(d.consistent);
    }

    #[test]
    fn one_orbit_is_flagged() {
        let d = assemble_selfmap_count(1);
        assert_eq!(d.count, 4);
        assert!(!d.consistent);
        assert!(d.steps.last().unwrap().starts_with("contradiction"));
    }
}
