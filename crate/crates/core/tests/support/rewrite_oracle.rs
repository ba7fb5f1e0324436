//! Independent normal-form oracle for free nil(2)-groups.
//!
//! Works purely by local rewriting of words over generator letters and
//! central commutator letters, with no closed-form collection formula:
//!
//! * `gⱼ^s gᵢ^t → gᵢ^t gⱼ^s (gᵢ,gⱼ)^{−st}` for `j > i` (swap, emitting a commutator)
//! * `z x → x z` for a commutator letter `z` (commutators are central, so
//!   any commutator involving one is deleted rather than emitted)
//! * `x x⁻¹ → ε`
//!
//! applied until no rule fires. The fixed point is read off as
//! `(exponent vector, commutator exponents for i < j)`.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Sym {
    Gen { index: usize, sign: i64 },
    Comm { i: usize, j: usize, sign: i64 },
}

fn rewrite_once(w: &mut Vec<Sym>) -> bool {
    for k in 0..w.len().saturating_sub(1) {
        match (w[k], w[k + 1]) {
            (Sym::Gen { index: a, sign: s }, Sym::Gen { index: b, sign: t }) => {
                if a == b && s == -t {
                    w.drain(k..k + 2);
                    return true;
                }
                if a > b {
                    let z = Sym::Comm { i: b, j: a, sign: -s * t };
                    w.splice(k..k + 2, [Sym::Gen { index: b, sign: t }, Sym::Gen { index: a, sign: s }, z]);
                    return true;
                }
            }
            (z @ Sym::Comm { .. }, g @ Sym::Gen { .. }) => {
                w[k] = g;
                w[k + 1] = z;
                return true;
            }
            (Sym::Comm { i, j, sign }, Sym::Comm { i: i2, j: j2, sign: s2 }) => {
                if (i, j) == (i2, j2) && sign == -s2 {
                    w.drain(k..k + 2);
                    return true;
                }
                if (i, j) > (i2, j2) {
                    w.swap(k, k + 1);
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

/// Normal form of a word given as `(generator, ±1)` letters on `rank`
/// generators: `(base exponents, commutator exponents)` with commutators in
/// lexicographic `(i, j)` order.
pub fn oracle_normal_form(letters: &[(usize, i64)], rank: usize) -> (Vec<i64>, Vec<i64>) {
    let mut w: Vec<Sym> = letters
        .iter()
        .map(|&(g, s)| Sym::Gen { index: g, sign: s })
        .collect();
    let mut steps = 0usize;
    while rewrite_once(&mut w) {
        steps += 1;
        assert!(steps < 1_000_000, "rewriting did not terminate");
    }
    let mut base = vec![0i64; rank];
    let mut comm = vec![0i64; rank * rank.saturating_sub(1) / 2];
    for s in w {
        match s {
            Sym::Gen { index, sign } => base[index] += sign,
            Sym::Comm { i, j, sign } => {
                let idx = i * rank - i * (i + 1) / 2 + (j - i - 1);
                comm[idx] += sign;
            }
        }
    }
    (base, comm)
}
