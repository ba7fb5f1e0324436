use crate::error::{Error, Result};
use crate::linalg::{self, Int};

/// Element of `C ⊗ C` for a free abelian `C` of rank `n`, stored as the
/// coefficient matrix over the basis `c̄ᵢ ⊗ c̄ⱼ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    coeffs: Vec<Vec<Int>>,
}

impl TensorElement {
    pub fn zero(n: usize) -> Self {
        TensorElement {
            coeffs: vec![linalg::zero_vec(n); n],
        }
    }

    pub fn from_matrix(coeffs: Vec<Vec<Int>>) -> Result<Self> {
        let n = coeffs.len();
        if coeffs.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("tensor coefficients must be square".into()));
        }
        Ok(TensorElement { coeffs })
    }

    pub fn basis(n: usize, i: usize, j: usize) -> Self {
        let mut t = Self::zero(n);
        t.coeffs[i][j] = Int::from(1);
        t
    }

    /// `{x} ⊗ {y}`.
    pub fn outer(x: &[Int], y: &[Int]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Dimension("tensor factors of different rank".into()));
        }
        Ok(TensorElement {
            coeffs: x
                .iter()
                .map(|a| y.iter().map(|b| a * b).collect())
                .collect(),
        })
    }

    /// `{x} ⊗ {y} + {y} ⊗ {x}`.
    pub fn symmetric(x: &[Int], y: &[Int]) -> Result<Self> {
        Self::outer(x, y)?.add(&Self::outer(y, x)?)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Vec<Int>] {
        &self.coeffs
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.coeffs[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|r| linalg::is_zero(r))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension("adding tensors of different rank".into()));
        }
        Ok(TensorElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| linalg::add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, k: &Int) -> Self {
        TensorElement {
            coeffs: self.coeffs.iter().map(|r| linalg::scale(k, r)).collect(),
        }
    }
}

/// Map induced on `C ⊗ C` by `f: C → C′` with matrix `F` (columns are the
/// images of the basis): `coeffs ↦ F · coeffs · Fᵀ`.
pub fn tensor_induced(f: &[Vec<Int>], t: &TensorElement) -> Result<TensorElement> {
    let n = t.dim();
    if f.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!(
            "map matrix has {} columns, tensor has rank {n}",
            f.first().map_or(0, Vec::len)
        )));
    }
    let m = f.len();
    // F · T
    let ft: Vec<Vec<Int>> = f
        .iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(&t.coeffs).map(|(a, trow)| a * &trow[j]).sum())
                .collect()
        })
        .collect();
    // (F · T) · Fᵀ
    let coeffs = (0..m)
        .map(|i| {
            (0..m)
                .map(|k| ft[i].iter().zip(&f[k]).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    Ok(TensorElement { coeffs })
}
