//! Affine integer systems whose equations live in abelian groups.
//!
//! An equation `Σ coeffᵥ·xᵥ = rhs` holding in `Zʳ / ⟨R⟩` is turned into
//! `Σ coeffᵥ·xᵥ + Rᵀ·s = rhs` over `Z` with fresh slack variables `s`.

use crate::group::FgAbelianGroup;
use crate::linalg::{self, Int};

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Int>,
    slack: Vec<(usize, Int)>,
    rhs: Int,
    label: usize,
}

#[derive(Clone, Debug, Default)]
pub struct AffineSystem {
    nvars: usize,
    nslack: usize,
    rows: Vec<Row>,
    labels: Vec<String>,
}

/// Solution set projected onto the declared variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub values: Vec<Int>,
    /// Generators of the lattice of differences between solutions.
    pub kernel: Vec<Vec<Int>>,
}

impl AffineSystem {
    pub fn new(nvars: usize) -> Self {
        AffineSystem {
            nvars,
            ..AffineSystem::default()
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equation_count(&self) -> usize {
        self.rows.len()
    }

    /// `coeffs · x = rhs` in `group`; `coeffs` has one row per coordinate.
    pub fn add_in_group(
        &mut self,
        group: &FgAbelianGroup,
        coeffs: Vec<Vec<Int>>,
        rhs: Vec<Int>,
        label: impl Into<String>,
    ) {
        assert_eq!(coeffs.len(), group.rank());
        assert_eq!(rhs.len(), group.rank());
        let relations = group.hermite_relations();
        let first_slack = self.nslack;
        self.nslack += relations.len();
        let label = self.push_label(label);
        for (c, (row, b)) in coeffs.into_iter().zip(rhs).enumerate() {
            assert_eq!(row.len(), self.nvars);
            let slack = relations
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[c].is_zero_int())
                .map(|(k, r)| (first_slack + k, r[c].clone()))
                .collect();
            self.rows.push(Row {
                coeffs: row,
                slack,
                rhs: b,
                label,
            });
        }
    }

    /// `coeffs · x = rhs` over `Z`.
    pub fn add_exact(&mut self, coeffs: Vec<Vec<Int>>, rhs: Vec<Int>, label: impl Into<String>) {
        let label = self.push_label(label);
        for (row, b) in coeffs.into_iter().zip(rhs) {
            assert_eq!(row.len(), self.nvars);
            self.rows.push(Row {
                coeffs: row,
                slack: Vec::new(),
                rhs: b,
                label,
            });
        }
    }

    fn push_label(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    /// Solves the system; on failure returns the label of an equation that
    /// cannot be satisfied.
    pub fn solve(&self) -> Result<AffineSolution, String> {
        let total = self.nvars + self.nslack;
        let a: Vec<Vec<Int>> = self
            .rows
            .iter()
            .map(|r| {
                let mut full = r.coeffs.clone();
                full.extend(linalg::zero_vec(self.nslack));
                for (k, c) in &r.slack {
                    full[self.nvars + k] = c.clone();
                }
                full
            })
            .collect();
        let b: Vec<Int> = self.rows.iter().map(|r| r.rhs.clone()).collect();
        match linalg::solve(&a, &b, total) {
            Ok(sol) => Ok(AffineSolution {
                values: sol.particular[..self.nvars].to_vec(),
                kernel: sol
                    .kernel
                    .into_iter()
                    .map(|k| k[..self.nvars].to_vec())
                    .filter(|k| !linalg::is_zero(k))
                    .collect(),
            }),
            Err(e) => Err(self.labels[self.rows[e.equation].label].clone()),
        }
    }
}

trait IsZeroInt {
    fn is_zero_int(&self) -> bool;
}

impl IsZeroInt for Int {
    fn is_zero_int(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// How a homotopy question was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum SearchMethod {
    /// Exact solve over `Z`; complete.
    LinearSolve,
    /// Exhaustive search over coefficient vectors with entries in
    /// `[−bound, bound]`; complete only within that box.
    Enumeration { bound: u32 },
}

impl std::fmt::Display for SearchMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchMethod::LinearSolve => write!(f, "exact linear solve over Z"),
            SearchMethod::Enumeration { bound } => {
                write!(f, "exhaustive search with coefficients in [-{bound}, {bound}]")
            }
        }
    }
}

/// Visits every integer vector of length `n` with entries in
/// `[−bound, bound]`, ordered lexicographically with entries ranked
/// `0, 1, −1, 2, −2, …`. Stops at the first vector for which `visit`
/// returns `Some`.
pub fn enumerate_box<T>(
    n: usize,
    bound: u32,
    mut visit: impl FnMut(&[Int]) -> Option<T>,
) -> Option<T> {
    let values: Vec<Int> = std::iter::once(Int::from(0))
        .chain((1..=i64::from(bound)).flat_map(|k| [Int::from(k), Int::from(-k)]))
        .collect();
    let mut digits = vec![0usize; n];
    let mut current: Vec<Int> = vec![values[0].clone(); n];
    loop {
        if let Some(t) = visit(&current) {
            return Some(t);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < values.len() {
                current[pos] = values[digits[pos]].clone();
                break;
            }
            digits[pos] = 0;
            current[pos] = values[0].clone();
        }
    }
}
