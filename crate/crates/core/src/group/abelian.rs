use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Int};

/// Finitely generated abelian group `Zʳ / ⟨relations⟩`.
///
/// The Hermite basis of the relation lattice is computed once at
/// construction; it gives every element a canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    rank: usize,
    relations: Vec<Vec<Int>>,
    hermite: Arc<Vec<Vec<Int>>>,
}

impl FgAbelianGroup {
    pub fn new(rank: usize, relations: Vec<Vec<Int>>) -> Result<Self> {
        for (k, r) in relations.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::Dimension(format!(
                    "relation {k} has width {}, group rank is {rank}",
                    r.len()
                )));
            }
        }
        let hermite = Arc::new(linalg::hermite_basis(&relations, rank));
        Ok(FgAbelianGroup {
            rank,
            relations,
            hermite,
        })
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup::new(rank, Vec::new()).expect("no relations")
    }

    pub fn cyclic(order: u64) -> Self {
        let relations = if order == 0 {
            Vec::new()
        } else {
            vec![vec![Int::from(order)]]
        };
        FgAbelianGroup::new(1, relations).expect("width matches")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<Int>] {
        &self.relations
    }

    pub fn hermite_relations(&self) -> &[Vec<Int>] {
        &self.hermite
    }

    pub fn check_vector(&self, x: &[Int]) -> Result<()> {
        if x.len() != self.rank {
            return Err(Error::Dimension(format!(
                "vector of length {} in a group of rank {}",
                x.len(),
                self.rank
            )));
        }
        Ok(())
    }

    /// Canonical representative of the class of `x`.
    pub fn canonical(&self, x: &[Int]) -> Vec<Int> {
        linalg::reduce_mod_hermite(&self.hermite, x)
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        linalg::is_zero(&self.canonical(x))
    }

    /// `x = y` in the group, i.e. `x − y` lies in the relation lattice.
    pub fn equal(&self, x: &[Int], y: &[Int]) -> Result<bool> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.is_zero(&linalg::sub(x, y)))
    }

    /// Invariant factors of the torsion part and the free rank, read off a
    /// diagonalisation of the relation lattice.
    pub fn invariants(&self) -> (Vec<Int>, usize) {
        let mut m: Vec<Vec<Int>> = self.hermite.to_vec();
        let mut cols = self.rank;
        // Alternate echelon passes on the matrix and its transpose until only
        // the diagonal survives.
        loop {
            let rows = m.len();
            let mut t = transpose(&m, cols);
            let rank_t = linalg::echelonize(&mut t, rows, false);
            t.truncate(rank_t);
            let mut back = transpose(&t, rows);
            let rank_b = linalg::echelonize(&mut back, rank_t, false);
            back.truncate(rank_b);
            cols = rank_t;
            let diagonal = back.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, x)| i == j || num_traits::Zero::is_zero(x))
            });
            m = back;
            if diagonal {
                break;
            }
        }
        let mut diag: Vec<Int> = m.iter().enumerate().map(|(i, row)| row[i].clone()).collect();
        // normalise to a divisibility chain
        for i in 0..diag.len() {
            for j in (i + 1)..diag.len() {
                let g = num_integer::Integer::gcd(&diag[i], &diag[j]);
                let l = num_integer::Integer::lcm(&diag[i], &diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
        let torsion = diag.into_iter().filter(|d| d != &Int::from(1)).collect();
        (torsion, self.rank - m.len())
    }
}

fn transpose(m: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (torsion, free) = self.invariants();
        let mut parts: Vec<String> = torsion.iter().map(|d| format!("Z/{d}")).collect();
        if free > 0 {
            parts.push(if free == 1 { "Z".to_string() } else { format!("Z^{free}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn integers_without_relations() {
        let z = FgAbelianGroup::free(1);
        assert!(z.equal(&v(&[3]), &v(&[3])).unwrap());
        assert!(!z.equal(&v(&[3]), &v(&[1])).unwrap());
    }

    #[test]
    fn parity_in_z2() {
        let z2 = FgAbelianGroup::cyclic(2);
        assert!(z2.equal(&v(&[3]), &v(&[1])).unwrap());
        assert!(!z2.equal(&v(&[2]), &v(&[1])).unwrap());
    }

    #[test]
    fn diagonal_relation_does_not_identify_generators() {
        let g = FgAbelianGroup::new(2, vec![v(&[2, -2])]).unwrap();
        assert!(!g.equal(&v(&[1, 0]), &v(&[0, 1])).unwrap());
        assert!(g.equal(&v(&[2, 0]), &v(&[0, 2])).unwrap());
    }

    #[test]
    fn width_mismatch_is_rejected() {
        assert!(FgAbelianGroup::new(2, vec![v(&[1, 2, 3])]).is_err());
        let z = FgAbelianGroup::free(2);
        assert!(z.equal(&v(&[1]), &v(&[1, 0])).is_err());
    }

    #[test]
    fn invariants_of_small_groups() {
        let g = FgAbelianGroup::new(2, vec![v(&[2, 0]), v(&[0, 3])]).unwrap();
        assert_eq!(g.invariants(), (vec![Int::from(6)], 0));
        assert_eq!(g.to_string(), "Z/6");
        let h = FgAbelianGroup::new(3, vec![v(&[2, -2, 0])]).unwrap();
        assert_eq!(h.invariants(), (vec![Int::from(2)], 2));
    }
}
