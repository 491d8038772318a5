//! Exact rational linear algebra: dense matrices, reduced row echelon form,
//! kernels, determinants, and the inertia (signature) of symmetric matrices
//! by congruence elimination. No floating point anywhere.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rat::{rat, Rat};
use crate::Error;

/// Dense rational matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: Vec<Vec<Rat>>,
}

impl Mat {
    pub fn new(rows: Vec<Vec<Rat>>) -> Self {
        if let Some(first) = rows.first() {
            let w = first.len();
            assert!(rows.iter().all(|r| r.len() == w), "ragged matrix");
        }
        Mat { rows }
    }

    pub fn zero(r: usize, c: usize) -> Self {
        Mat {
            rows: vec![vec![Rat::zero(); c]; r],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = rat(1);
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn transpose(&self) -> Mat {
        let (r, c) = (self.nrows(), self.ncols());
        let mut t = Mat::zero(c, r);
        for i in 0..r {
            for j in 0..c {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch");
        let (r, k, c) = (self.nrows(), self.ncols(), other.ncols());
        let mut out = Mat::zero(r, c);
        for i in 0..r {
            for l in 0..k {
                let a = &self.rows[i][l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..c {
                    if !other.rows[l][j].is_zero() {
                        out.rows[i][j] += a * &other.rows[l][j];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat::new(
            self.rows
                .iter()
                .map(|r| r.iter().map(|x| x * s).collect())
                .collect(),
        )
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.nrows(), other.nrows());
        assert_eq!(self.ncols(), other.ncols());
        Mat::new(
            self.rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        )
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let (nr, nc) = (m.nrows(), m.ncols());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..nc {
            if row == nr {
                break;
            }
            let Some(p) = (row..nr).find(|&i| !m.rows[i][col].is_zero()) else {
                continue;
            };
            m.rows.swap(row, p);
            let inv = m.rows[row][col].clone();
            for x in m.rows[row].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..nr {
                if i != row && !m.rows[i][col].is_zero() {
                    let f = m.rows[i][col].clone();
                    for j in 0..nc {
                        let d = &m.rows[row][j] * &f;
                        m.rows[i][j] -= d;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`, rows of the result.
    /// The basis comes from the RREF free columns, so it is deterministic.
    pub fn kernel_basis(&self) -> Mat {
        let (rref, pivots) = self.rref();
        let nc = self.ncols();
        let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Rat::zero(); nc];
            v[fc] = rat(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.rows[r][fc].clone();
            }
            basis.push(v);
        }
        if basis.is_empty() {
            Mat { rows: vec![] }
        } else {
            Mat::new(basis)
        }
    }

    /// Exact determinant by fraction-free-ish rational elimination.
    pub fn det(&self) -> Rat {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "det of non-square matrix");
        let mut m = self.clone();
        let mut det = rat(1);
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m.rows[i][col].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.rows.swap(col, p);
                det = -det;
            }
            let pivot = m.rows[col][col].clone();
            det *= &pivot;
            for i in col + 1..n {
                if m.rows[i][col].is_zero() {
                    continue;
                }
                let f = &m.rows[i][col] / &pivot;
                for j in col..n {
                    let d = &m.rows[col][j] * &f;
                    m.rows[i][j] -= d;
                }
            }
        }
        det
    }

    /// Exact inverse, or an error if singular.
    pub fn inverse(&self) -> Result<Mat, Error> {
        let n = self.nrows();
        assert_eq!(n, self.ncols());
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.rows[i][j] = self.rows[i][j].clone();
            }
            aug.rows[i][n + i] = rat(1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::SingularMatrix);
        }
        Ok(Mat::new(
            r.rows.iter().map(|row| row[n..].to_vec()).collect(),
        ))
    }

    /// Rows of `self` stacked over rows of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Mat::new(rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

/// Symmetric rational matrix (a Gram matrix of a quadratic form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMat {
    mat: Mat,
}

impl SymMat {
    pub fn new(mat: Mat) -> Result<Self, Error> {
        let n = mat.nrows();
        if n != mat.ncols() {
            return Err(Error::Shape("symmetric matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if mat.rows[i][j] != mat.rows[j][i] {
                    return Err(Error::Shape(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(SymMat { mat })
    }

    pub fn zero(n: usize) -> Self {
        SymMat {
            mat: Mat::zero(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        SymMat {
            mat: Mat::identity(n),
        }
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let n = entries.len();
        let mut m = Mat::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        SymMat { mat: m }
    }

    pub fn diagonal_i64(entries: &[i64]) -> Self {
        SymMat::diagonal(&entries.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, Error> {
        SymMat::new(Mat::from_i64(rows))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.mat.rows[i][j]
    }

    /// `s * self + t * other`.
    pub fn pencil_at(&self, other: &SymMat, s: &Rat, t: &Rat) -> SymMat {
        SymMat {
            mat: self.mat.scale(s).add(&other.mat.scale(t)),
        }
    }

    /// Congruence transform `P^T * self * P`.
    pub fn congruence(&self, p: &Mat) -> SymMat {
        SymMat {
            mat: p.transpose().mul(&self.mat).mul(p),
        }
    }

    /// `B * self * B^T` for a rectangular `B`; the restriction of the form
    /// to the row span of `B`.
    pub fn restrict(&self, b: &Mat) -> SymMat {
        SymMat {
            mat: b.mul(&self.mat).mul(&b.transpose()),
        }
    }

    /// Value of the quadratic form on a vector.
    pub fn apply(&self, v: &[Rat]) -> Rat {
        let n = self.dim();
        assert_eq!(v.len(), n);
        let mut acc = Rat::zero();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !v[j].is_zero() {
                    acc += &v[i] * &self.mat.rows[i][j] * &v[j];
                }
            }
        }
        acc
    }
}

/// Exact inertia of a real symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
    pub corank: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positives + self.negatives + self.corank
    }

    /// Antipodal counterpart: the signature of the negated form.
    pub fn swapped(&self) -> Signature {
        Signature {
            positives: self.negatives,
            negatives: self.positives,
            corank: self.corank,
        }
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.positives, self.negatives)?;
        if self.corank > 0 {
            write!(f, "[corank {}]", self.corank)?;
        }
        Ok(())
    }
}

/// Inertia by symmetric congruence elimination over the rationals.
///
/// Zero pivots are resolved by searching the remaining diagonal for a
/// nonzero entry, else by an off-diagonal entry: adding that row and column
/// to the pivot position turns the 2x2 block `[[0,b],[b,0]]` into a form
/// with pivots of opposite sign, so it contributes (1,1). Sylvester's law
/// makes the result independent of these choices.
pub fn signature_of(m: &SymMat) -> Signature {
    let n = m.dim();
    let mut a = m.mat.clone();
    let mut done = vec![false; n];
    let mut sig = Signature {
        positives: 0,
        negatives: 0,
        corank: 0,
    };

    // Symmetric congruence: apply the same elimination to rows and columns.
    let eliminate = |a: &mut Mat, done: &[bool], piv: usize| {
        let pivot = a.rows[piv][piv].clone();
        for i in 0..a.nrows() {
            if i == piv || done[i] || a.rows[i][piv].is_zero() {
                continue;
            }
            let f = &a.rows[i][piv] / &pivot;
            for j in 0..a.ncols() {
                let d = &a.rows[piv][j] * &f;
                a.rows[i][j] -= d;
            }
            for j in 0..a.nrows() {
                let d = &a.rows[j][piv] * &f;
                a.rows[j][i] -= d;
            }
        }
    };

    for i in 0..n {
        if done[i] {
            continue;
        }
        if a.rows[i][i].is_zero() {
            // Prefer a nonzero diagonal entry elsewhere in the active block.
            if let Some(j) = (i + 1..n).find(|&j| !done[j] && !a.rows[j][j].is_zero()) {
                a.rows.swap(i, j);
                for row in a.rows.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (0..n).find(|&j| j != i && !done[j] && !a.rows[i][j].is_zero())
            {
                // Hyperbolic pair: make the (i,i) entry 2b != 0.
                for col in 0..n {
                    let add = a.rows[j][col].clone();
                    a.rows[i][col] += add;
                }
                for row in 0..n {
                    let add = a.rows[row][j].clone();
                    a.rows[row][i] += add;
                }
            } else {
                sig.corank += 1;
                done[i] = true;
                continue;
            }
        }
        let pivot = a.rows[i][i].clone();
        debug_assert!(!pivot.is_zero());
        if pivot > Rat::zero() {
            sig.positives += 1;
        } else {
            sig.negatives += 1;
        }
        eliminate(&mut a, &done, i);
        done[i] = true;
    }
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::ratio;

    #[test]
    fn rref_kernel_and_rank() {
        let m = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.nrows(), 1);
        for row in &m.rows {
            let acc: Rat = row.iter().zip(&k.rows[0]).map(|(a, b)| a * b).sum();
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn det_and_inverse() {
        let m = Mat::from_i64(&[&[2, 1], &[5, 3]]);
        assert_eq!(m.det(), rat(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert!(Mat::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn signature_diagonal_inertia() {
        let m = SymMat::diagonal_i64(&[1, 1, -1]);
        assert_eq!(
            signature_of(&m),
            Signature {
                positives: 2,
                negatives: 1,
                corank: 0
            }
        );
    }

    #[test]
    fn signature_hyperbolic_plane() {
        let m = SymMat::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(
            signature_of(&m),
            Signature {
                positives: 1,
                negatives: 1,
                corank: 0
            }
        );
    }

    #[test]
    fn signature_diagonal_with_zero() {
        let m = SymMat::diagonal_i64(&[2, 0, -3, 5]);
        assert_eq!(
            signature_of(&m),
            Signature {
                positives: 2,
                negatives: 1,
                corank: 1
            }
        );
    }

    #[test]
    fn signature_handles_zero_diagonal_blocks() {
        // 4x4 with two hyperbolic planes interleaved
        let m = SymMat::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]])
            .unwrap();
        assert_eq!(
            signature_of(&m),
            Signature {
                positives: 2,
                negatives: 2,
                corank: 0
            }
        );
    }

    #[test]
    fn signature_congruence_invariant_small() {
        let m = SymMat::from_i64(&[&[0, 1, 2], &[1, -3, 0], &[2, 0, 5]]).unwrap();
        let p = Mat::from_i64(&[&[1, 4, 0], &[0, 1, 0], &[7, -2, 1]]);
        assert_eq!(signature_of(&m), signature_of(&m.congruence(&p)));
    }

    #[test]
    fn quadratic_form_apply() {
        let m = SymMat::from_i64(&[&[1, 2], &[2, 3]]).unwrap();
        let v = [ratio(1, 2), rat(1)];
        // (1/2)^2*1 + 2*(1/2)*1*2 + 1*3 = 1/4 + 2 + 3
        assert_eq!(m.apply(&v), ratio(21, 4));
    }
}
