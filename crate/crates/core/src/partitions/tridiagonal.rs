use std::fmt::Debug;

use num_rational::Rational64;
use num_traits::{Num, Signed};

use crate::error::{invalid, Result};
use crate::spectra::{Spectrum, SpectrumOrder};

/// Field elements the tridiagonal routines accept: `f64` for measured data
/// and `Rational64` where exact row sums matter.
pub trait Scalar: Copy + Debug + PartialOrd + Num + Signed {
    fn to_f64(self) -> f64;
    fn close(self, other: Self) -> bool;
}

impl Scalar for f64 {
    fn to_f64(self) -> f64 {
        self
    }

    fn close(self, other: f64) -> bool {
        (self - other).abs() <= 1e-9 * (1.0 + self.abs().max(other.abs()))
    }
}

impl Scalar for Rational64 {
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn close(self, other: Rational64) -> bool {
        self == other
    }
}

/// A tridiagonal matrix given by its three diagonals.
///
/// `upper[i]` is entry `(i, i+1)` and `lower[i]` is entry `(i+1, i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal<T> {
    pub diag: Vec<T>,
    pub upper: Vec<T>,
    pub lower: Vec<T>,
}

impl<T: Scalar> Tridiagonal<T> {
    pub fn new(diag: Vec<T>, upper: Vec<T>, lower: Vec<T>) -> Result<Tridiagonal<T>> {
        if diag.is_empty() {
            return Err(invalid("tridiagonal matrix must have order at least 1"));
        }
        if upper.len() + 1 != diag.len() || lower.len() + 1 != diag.len() {
            return Err(invalid("off-diagonals must be one shorter than the diagonal"));
        }
        Ok(Tridiagonal { diag, upper, lower })
    }

    /// Reads the three diagonals of a dense row-major square matrix,
    /// rejecting any nonzero entry off the band.
    pub fn from_dense(order: usize, entries: &[T]) -> Result<Tridiagonal<T>> {
        if order == 0 || entries.len() != order * order {
            return Err(invalid("dense matrix has the wrong number of entries"));
        }
        for i in 0..order {
            for j in 0..order {
                if i.abs_diff(j) > 1 && !entries[i * order + j].is_zero() {
                    return Err(invalid(format!("entry ({i}, {j}) lies off the band")));
                }
            }
        }
        Tridiagonal::new(
            (0..order).map(|i| entries[i * order + i]).collect(),
            (1..order).map(|i| entries[(i - 1) * order + i]).collect(),
            (1..order).map(|i| entries[i * order + i - 1]).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        if i == j {
            self.diag[i]
        } else if j == i + 1 {
            self.upper[i]
        } else if i == j + 1 {
            self.lower[j]
        } else {
            T::zero()
        }
    }

    pub fn to_dense(&self) -> Vec<T> {
        let n = self.order();
        (0..n * n).map(|k| self.get(k / n, k % n)).collect()
    }

    pub fn row_sums(&self) -> Vec<T> {
        let n = self.order();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i];
                if i + 1 < n {
                    s = s + self.upper[i];
                }
                if i > 0 {
                    s = s + self.lower[i - 1];
                }
                s
            })
            .collect()
    }

    pub fn to_f64(&self) -> Tridiagonal<f64> {
        let conv = |v: &[T]| v.iter().map(|x| x.to_f64()).collect();
        Tridiagonal {
            diag: conv(&self.diag),
            upper: conv(&self.upper),
            lower: conv(&self.lower),
        }
    }

    /// All eigenvalues, sorted non-increasing.
    ///
    /// Requires `upper[i] * lower[i] >= 0` for every `i`. The characteristic
    /// polynomial depends on the off-diagonals only through these products,
    /// so the matrix shares its spectrum with the symmetric tridiagonal one
    /// whose off-diagonals are their square roots (a zero product simply
    /// splits the matrix into independent blocks).
    pub fn eigenvalues(&self) -> Result<Spectrum> {
        let m = self.to_f64();
        let mut diag = m.diag.clone();
        let mut off = vec![0.0; diag.len()];
        for i in 0..m.upper.len() {
            let p = m.upper[i] * m.lower[i];
            if p < 0.0 {
                return Err(invalid(format!(
                    "off-diagonal pair {i} has negative product {p}; eigenvalues may be complex"
                )));
            }
            off[i + 1] = p.sqrt();
        }
        crate::spectra::tridiagonal_ql(&mut diag, &mut off)?;
        Ok(Spectrum::new(diag, SpectrumOrder::NonIncreasing))
    }
}

/// A nonnegative tridiagonal matrix whose rows all sum to the same value.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalRowSum<T> {
    matrix: Tridiagonal<T>,
    row_sum: T,
}

impl<T: Scalar> TridiagonalRowSum<T> {
    pub fn new(matrix: Tridiagonal<T>) -> Result<TridiagonalRowSum<T>> {
        if matrix.order() < 2 {
            return Err(invalid("row-sum reduction needs order at least 2"));
        }
        let negative = matrix
            .diag
            .iter()
            .chain(&matrix.upper)
            .chain(&matrix.lower)
            .any(|x| x.is_negative());
        if negative {
            return Err(invalid("entries must be nonnegative"));
        }
        let sums = matrix.row_sums();
        let row_sum = sums[0];
        if let Some(i) = sums.iter().position(|s| !s.close(row_sum)) {
            return Err(invalid(format!(
                "row {i} sums to {:?} but row 0 sums to {row_sum:?}",
                sums[i]
            )));
        }
        Ok(TridiagonalRowSum { matrix, row_sum })
    }

    pub fn matrix(&self) -> &Tridiagonal<T> {
        &self.matrix
    }

    pub fn row_sum(&self) -> T {
        self.row_sum
    }
}

/// Strips the eigenvalue `d` (the common row sum) from a constant-row-sum
/// tridiagonal matrix, returning the matrix of one lower order whose spectrum
/// is the remaining eigenvalues.
///
/// ```
/// use spectralcut::partitions::{tridiagonal_reduce, Tridiagonal, TridiagonalRowSum};
///
/// let a = Tridiagonal::new(vec![1.0, 1.0, 1.0], vec![2.0, 1.0], vec![1.0, 2.0]).unwrap();
/// let reduced = tridiagonal_reduce(&TridiagonalRowSum::new(a).unwrap());
/// assert_eq!(reduced.to_dense(), vec![0.0, 1.0, 1.0, 0.0]);
/// ```
pub fn tridiagonal_reduce<T: Scalar>(m: &TridiagonalRowSum<T>) -> Tridiagonal<T> {
    let a = &m.matrix;
    let d = m.row_sum;
    let k = a.order() - 1;
    Tridiagonal {
        diag: (0..k).map(|i| d - a.upper[i] - a.lower[i]).collect(),
        upper: (0..k.saturating_sub(1)).map(|i| a.upper[i + 1]).collect(),
        lower: (0..k.saturating_sub(1)).map(|i| a.lower[i]).collect(),
    }
}
