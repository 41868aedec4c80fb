//! Dense numerical kernel: determinants, eigenvalues, null-space bases, and
//! closed-form polynomial roots. Everything is plain `f64` row-major storage
//! at desk scale; there is no sparse path and no balancing.

mod jacobi;
mod lu;
mod qr;
mod roots;

pub use jacobi::symmetric_eigen;
pub use lu::{invert, lu_determinant, solve};
pub use qr::general_eigenvalues;
pub use roots::{quadratic_roots, quartic_even_roots};

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

/// Numerical thresholds used across the crate. Every check cites this one
/// record instead of scattering literals.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Maximum allowed asymmetry |a_ij - a_ji| for the symmetric eigensolver.
    pub symmetry: f64,
    /// Residual bound for determinant identities and block decompositions.
    pub identity_residual: f64,
    /// Max-norm residual bound for the operator algebra checks.
    pub operator_identity: f64,
    /// Clustering radius when grouping eigenvalues into a multiset.
    pub eigen_cluster: f64,
    /// Greedy matching bound when comparing two spectra as multisets.
    pub spectrum_match: f64,
    /// Drop threshold in Gram-Schmidt when extending to a complement basis.
    pub nullspace_drop: f64,
    /// Allowed deviation of a probability vector's mass from 1.
    pub distribution_mass: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            symmetry: 1e-12,
            identity_residual: 1e-9,
            operator_identity: 1e-10,
            eigen_cluster: 1e-8,
            spectrum_match: 1e-6,
            nullspace_drop: 1e-10,
            distribution_mass: 1e-12,
        }
    }
}

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Matrix::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Largest |a_ij - a_ji|.
    pub fn symmetry_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// True when every entry is finite.
    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Side-by-side concatenation [self other].
    pub fn concat_cols(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    /// Copy of the block with rows r0..r1 and columns c0..c1.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 < r1 && r1 <= self.rows && c0 < c1 && c1 <= self.cols);
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Multiset of complex values with multiplicities, kept in a canonical order
/// (ascending real part, then ascending imaginary part).
#[derive(Debug, Clone)]
pub struct ComplexMultiset {
    entries: Vec<(Complex64, usize)>,
}

impl ComplexMultiset {
    /// Groups raw values into clusters of radius `cluster_tol`; each cluster
    /// is represented by its mean. Conjugate pairs interleave under the
    /// lexicographic sort, so every cluster is a merge candidate, not just
    /// the most recent one.
    pub fn from_values(values: &[Complex64], cluster_tol: f64) -> Self {
        let mut sorted: Vec<Complex64> = values.to_vec();
        sorted.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .expect("eigenvalues must be finite")
        });
        let mut entries: Vec<(Complex64, usize)> = Vec::new();
        for z in sorted {
            let home = entries
                .iter()
                .position(|(rep, _)| (z - *rep).norm() <= cluster_tol);
            match home {
                Some(i) => {
                    // Running mean keeps the representative centred.
                    let (rep, count) = &mut entries[i];
                    let k = *count as f64;
                    *rep = (*rep * k + z) / (k + 1.0);
                    *count += 1;
                }
                None => entries.push((z, 1)),
            }
        }
        entries.sort_by(|a, b| {
            (a.0.re, a.0.im)
                .partial_cmp(&(b.0.re, b.0.im))
                .expect("eigenvalues must be finite")
        });
        ComplexMultiset { entries }
    }

    pub fn entries(&self) -> &[(Complex64, usize)] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, k)| k).sum()
    }

    /// All values, repeated per multiplicity, in canonical order.
    pub fn expanded(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for &(z, k) in &self.entries {
            out.extend(std::iter::repeat(z).take(k));
        }
        out
    }

    /// Greedy nearest-neighbour matching distance between two multisets of
    /// equal total multiplicity; `f64::INFINITY` when the sizes differ. Valid
    /// for well-separated desk-scale spectra.
    pub fn matching_distance(&self, other: &ComplexMultiset) -> f64 {
        let a = self.expanded();
        let b = other.expanded();
        if a.len() != b.len() {
            return f64::INFINITY;
        }
        let mut used = vec![false; b.len()];
        let mut worst = 0.0f64;
        for z in a {
            let mut best: Option<(usize, f64)> = None;
            for (j, w) in b.iter().enumerate() {
                if used[j] {
                    continue;
                }
                let d = (z - w).norm();
                if best.map_or(true, |(_, bd)| d < bd) {
                    best = Some((j, d));
                }
            }
            let (j, d) = best.expect("multisets have equal size");
            used[j] = true;
            worst = worst.max(d);
        }
        worst
    }

    /// Largest entry by modulus; ties broken by canonical order.
    pub fn max_modulus(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0, |acc, (z, _)| acc.max(z.norm()))
    }
}

/// Orthonormal basis of the orthogonal complement of the column space of `m`
/// (equivalently, of the kernel of `m` transposed). Columns of `m` must be
/// linearly independent. Built by Gram-Schmidt over the standard basis.
pub fn null_complement_basis(m: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let rows = m.rows();
    let rank = m.cols();
    assert!(rank <= rows, "need at least as many rows as columns");

    // Orthonormalize the columns of m first; failure here means m is not
    // full column rank.
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(rows);
    for j in 0..rank {
        let mut v: Vec<f64> = (0..rows).map(|i| m[(i, j)]).collect();
        let original_norm = norm(&v).max(1.0);
        for b in &basis {
            let c = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        // Second orthogonalization pass for numerical safety.
        for b in &basis {
            let c = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        let n = norm(&v);
        if n <= tol.nullspace_drop * original_norm {
            return Err(Error::RankDeficient { column: j });
        }
        for vi in &mut v {
            *vi /= n;
        }
        basis.push(v);
    }

    // Extend with standard basis vectors until the space is full.
    let mut complement: Vec<Vec<f64>> = Vec::with_capacity(rows - rank);
    for e in 0..rows {
        if basis.len() + complement.len() == rows {
            break;
        }
        let mut v = vec![0.0; rows];
        v[e] = 1.0;
        for b in basis.iter().chain(&complement) {
            let c = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        for b in basis.iter().chain(&complement) {
            let c = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        let n = norm(&v);
        if n > tol.nullspace_drop {
            for vi in &mut v {
                *vi /= n;
            }
            complement.push(v);
        }
    }
    debug_assert_eq!(complement.len(), rows - rank);
    Ok(Matrix::from_fn(rows, rows - rank, |i, j| complement[j][i]))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_and_transpose() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let ab = &a * &b;
        assert_eq!(ab, Matrix::from_rows(&[&[2.0, 1.0], &[4.0, 3.0]]));
        assert_eq!(a.transpose()[(0, 1)], 3.0);
    }

    #[test]
    fn multiset_clusters_nearby_values() {
        let vals = [
            Complex64::new(2.0, 0.0),
            Complex64::new(5.0, 0.0),
            Complex64::new(5.0 + 1e-10, 0.0),
        ];
        let ms = ComplexMultiset::from_values(&vals, 1e-8);
        assert_eq!(ms.entries().len(), 2);
        assert_eq!(ms.total_multiplicity(), 3);
        assert_eq!(ms.entries()[1].1, 2);
    }

    #[test]
    fn matching_distance_detects_shift() {
        let a = ComplexMultiset::from_values(
            &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)],
            1e-8,
        );
        let b = ComplexMultiset::from_values(
            &[Complex64::new(0.0, 1.0), Complex64::new(1.0, 1e-3)],
            1e-8,
        );
        let d = a.matching_distance(&b);
        assert!((d - 1e-3).abs() < 1e-12, "d = {d}");
    }

    #[test]
    fn complement_of_leading_identity_columns() {
        // m = first 2 columns of I_5: complement spans the last 3 coordinates.
        let m = Matrix::from_fn(5, 2, |i, j| if i == j { 1.0 } else { 0.0 });
        let r = null_complement_basis(&m, &Tolerances::default()).unwrap();
        assert_eq!((r.rows(), r.cols()), (5, 3));
        for j in 0..3 {
            assert_eq!(r[(0, j)], 0.0);
            assert_eq!(r[(1, j)], 0.0);
        }
        let rtr = &r.transpose() * &r;
        assert!((&rtr - &Matrix::identity(3)).max_norm() < 1e-12);
    }

    #[test]
    fn complement_fails_on_rank_deficiency() {
        let m = Matrix::from_fn(4, 2, |i, _| if i == 0 { 1.0 } else { 0.0 });
        assert!(matches!(
            null_complement_basis(&m, &Tolerances::default()),
            Err(Error::RankDeficient { column: 1 })
        ));
    }
}
