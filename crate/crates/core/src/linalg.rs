//! Exact linear algebra over the integers.
//!
//! Everything here works on dense row-major matrices of [`Int`]. The two
//! workhorses are a row-style Hermite reduction (used to put lattices in a
//! canonical echelon basis) and [`solve`], which finds one integer solution
//! of `A x = b` together with a basis of the integer kernel of `A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn zero_vec(n: usize) -> Vec<Int> {
    vec![Int::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Int> {
    let mut v = zero_vec(n);
    v[i] = Int::one();
    v
}

pub fn is_zero(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(x: &[Int], y: &[Int]) -> Vec<Int> {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Int], y: &[Int]) -> Vec<Int> {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn neg(x: &[Int]) -> Vec<Int> {
    x.iter().map(|a| -a).collect()
}

pub fn scale(k: &Int, x: &[Int]) -> Vec<Int> {
    x.iter().map(|a| k * a).collect()
}

/// `acc += k * x`
pub fn axpy(acc: &mut [Int], k: &Int, x: &[Int]) {
    if k.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        *a += k * b;
    }
}

/// Matrix-vector product for a row-major matrix with `cols == v.len()`.
pub fn mat_vec(m: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn first_nonzero(row: &[Int]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Row-echelon reduction restricted to the first `pivot_cols` columns.
///
/// Row operations are unimodular and act on the full rows, so trailing
/// columns can carry a transformation record. On return the first `rank`
/// rows have strictly increasing pivot columns with positive pivots, the
/// remaining rows are zero on the pivot block, and when `reduce_above` is
/// set every entry above a pivot lies in `[0, pivot)`.
pub fn echelonize(rows: &mut [Vec<Int>], pivot_cols: usize, reduce_above: bool) -> usize {
    let m = rows.len();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below r becomes the pivot candidate
            let mut best: Option<usize> = None;
            for i in r..m {
                if !rows[i][col].is_zero()
                    && best.is_none_or(|b| rows[i][col].abs() < rows[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in (r + 1)..m {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let pivot_row = rows[r].clone();
                axpy(&mut rows[i], &-q, &pivot_row);
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m && !rows[r][col].is_zero() {
            if rows[r][col].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            if reduce_above {
                let pivot_row = rows[r].clone();
                for i in 0..r {
                    let q = rows[i][col].div_floor(&pivot_row[col]);
                    axpy(&mut rows[i], &-q, &pivot_row);
                }
            }
            r += 1;
        }
    }
    r
}

/// Hermite normal form of the lattice spanned by `gens` (each of length `n`).
/// Zero rows are dropped; the result is unique for the lattice.
pub fn hermite_basis(gens: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = gens.iter().filter(|g| !is_zero(g)).cloned().collect();
    for g in &rows {
        assert_eq!(g.len(), n, "lattice generator has wrong length");
    }
    let rank = echelonize(&mut rows, n, true);
    rows.truncate(rank);
    rows
}

/// Reduces `v` against a Hermite basis. The result is the canonical
/// representative of `v` modulo the lattice: every pivot coordinate ends up
/// in `[0, pivot)`.
pub fn reduce_mod_hermite(basis: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    let mut v = v.to_vec();
    for row in basis {
        let p = first_nonzero(row).expect("Hermite rows are nonzero");
        let q = v[p].div_floor(&row[p]);
        axpy(&mut v, &-q, row);
    }
    v
}

/// Canonical representative of `v` modulo the lattice spanned by `gens`,
/// where coordinates listed earlier in `priority` are reduced first.
///
/// Each coordinate of `v` must appear exactly once in `priority`. The
/// returned vector is the same for every `v` in one coset.
pub fn reduce_with_priority(gens: &[Vec<Int>], v: &[Int], priority: &[usize]) -> Vec<Int> {
    let n = v.len();
    assert_eq!(priority.len(), n);
    let permute = |x: &[Int]| priority.iter().map(|&i| x[i].clone()).collect::<Vec<_>>();
    let permuted: Vec<Vec<Int>> = gens.iter().map(|g| permute(g)).collect();
    let basis = hermite_basis(&permuted, n);
    let reduced = reduce_mod_hermite(&basis, &permute(v));
    let mut out = zero_vec(n);
    for (k, &i) in priority.iter().enumerate() {
        out[i] = reduced[k].clone();
    }
    out
}

/// Integer solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<Int>,
    /// Basis of `{x : A x = 0}` over the integers.
    pub kernel: Vec<Vec<Int>>,
}

/// Why an integer system has no solution: the equation (row index of `A`)
/// at which back-substitution left a nonzero residual or met a pivot that
/// does not divide it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistent {
    pub equation: usize,
}

/// Solves `A x = b` over the integers.
///
/// `a` has `b.len()` rows and `nvars` columns. Works on `[Aᵀ | I]` with
/// unimodular row operations; rows whose `Aᵀ` part vanishes carry kernel
/// vectors, and the echelon rows are used to express `b` exactly.
pub fn solve(a: &[Vec<Int>], b: &[Int], nvars: usize) -> Result<IntegerSolution, Inconsistent> {
    let neq = b.len();
    assert_eq!(a.len(), neq, "row count of A must match b");
    let mut rows: Vec<Vec<Int>> = (0..nvars)
        .map(|j| {
            let mut row: Vec<Int> = a.iter().map(|r| r[j].clone()).collect();
            row.extend(unit_vec(nvars, j));
            row
        })
        .collect();
    let rank = echelonize(&mut rows, neq, false);

    let mut residual = b.to_vec();
    let mut x = zero_vec(nvars);
    for row in &rows[..rank] {
        let p = first_nonzero(&row[..neq]).expect("echelon row has a pivot");
        // every equation before this pivot must already be satisfied
        if let Some(bad) = first_nonzero(&residual[..p]) {
            return Err(Inconsistent { equation: bad });
        }
        let (q, rem) = residual[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return Err(Inconsistent { equation: p });
        }
        axpy(&mut residual, &-&q, &row[..neq]);
        axpy(&mut x, &q, &row[neq..]);
    }
    if let Some(bad) = first_nonzero(&residual) {
        return Err(Inconsistent { equation: bad });
    }
    let kernel = rows[rank..].iter().map(|r| r[neq..].to_vec()).collect();
    Ok(IntegerSolution { particular: x, kernel })
}

/// `true` iff `v` lies in the integer row span of `gens`.
pub fn in_lattice(gens: &[Vec<Int>], v: &[Int]) -> bool {
    let basis = hermite_basis(gens, v.len());
    is_zero(&reduce_mod_hermite(&basis, v))
}

pub fn binomial2(k: &Int) -> Int {
    (k * (k - Int::one())) / int(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn hermite_of_simple_lattice() {
        let h = hermite_basis(&[v(&[4, 6]), v(&[2, 2])], 2);
        assert_eq!(h, vec![v(&[2, 0]), v(&[0, 2])]);
    }

    #[test]
    fn reduction_is_canonical_on_cosets() {
        let gens = [v(&[2, -2])];
        let a = reduce_mod_hermite(&hermite_basis(&gens, 2), &v(&[5, 1]));
        let b = reduce_mod_hermite(&hermite_basis(&gens, 2), &v(&[1, 5]));
        assert_eq!(a, b);
    }

    #[test]
    fn membership() {
        assert!(in_lattice(&[v(&[2, -2])], &v(&[-4, 4])));
        assert!(!in_lattice(&[v(&[2, -2])], &v(&[1, -1])));
        assert!(in_lattice(&[], &v(&[0, 0])));
    }

    #[test]
    fn solve_small_system() {
        // x + y = 3, x - y = 1
        let a = vec![v(&[1, 1]), v(&[1, -1])];
        let s = solve(&a, &v(&[3, 1]), 2).unwrap();
        assert_eq!(s.particular, v(&[2, 1]));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_detects_parity_obstruction() {
        // 2x = 1 has no integer solution
        let a = vec![v(&[2])];
        assert_eq!(solve(&a, &v(&[1]), 1), Err(Inconsistent { equation: 0 }));
    }

    #[test]
    fn solve_reports_kernel() {
        let a = vec![v(&[1, 1, 0])];
        let s = solve(&a, &v(&[5]), 3).unwrap();
        assert_eq!(mat_vec(&a, &s.particular), v(&[5]));
        assert_eq!(s.kernel.len(), 2);
        for k in &s.kernel {
            assert!(is_zero(&mat_vec(&a, k)));
        }
    }

    #[test]
    fn solve_with_no_variables() {
        assert!(solve(&[vec![]], &v(&[0]), 0).is_ok());
        assert!(solve(&[vec![]], &v(&[1]), 0).is_err());
    }

    #[test]
    fn priority_reduction_zeroes_low_priority_coordinates() {
        // solutions of x + y = r: prefer y = 0
        let gens = [v(&[1, -1])];
        let r = reduce_with_priority(&gens, &v(&[3, 4]), &[1, 0]);
        assert_eq!(r, v(&[7, 0]));
        let r = reduce_with_priority(&gens, &v(&[3, 4]), &[0, 1]);
        assert_eq!(r, v(&[0, 7]));
    }
}
