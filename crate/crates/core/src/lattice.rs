//! The homology lattice `H = H_∂ × Ĥ` of a surface and integer maps between
//! such lattices.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Genus and number of boundary components of a compact oriented surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSignature {
    pub genus: usize,
    pub boundary_components: usize,
}

impl SurfaceSignature {
    pub const fn new(genus: usize, boundary_components: usize) -> Self {
        SurfaceSignature {
            genus,
            boundary_components,
        }
    }

    /// The annulus, whose torsions are one-variable Laurent polynomials.
    pub const fn annulus() -> Self {
        SurfaceSignature::new(0, 2)
    }

    /// Rank of the boundary part `H_∂` (zero when `n ≤ 1`).
    pub fn boundary_rank(&self) -> usize {
        self.boundary_components.saturating_sub(1)
    }

    pub fn symplectic_rank(&self) -> usize {
        2 * self.genus
    }

    pub fn rank(&self) -> usize {
        self.boundary_rank() + self.symplectic_rank()
    }

    /// Variable name of coordinate `i`: `x1..x{n-1}` then `y1..y{2g}`.
    pub fn variable_name(&self, i: usize) -> String {
        let b = self.boundary_rank();
        if i < b {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - b + 1)
        }
    }

    /// Index of a named variable, if the signature has it.
    pub fn variable_index(&self, name: &str) -> Option<usize> {
        let (head, digits) = name.split_at(1.min(name.len()));
        let k: usize = digits.parse().ok()?;
        if k == 0 {
            return None;
        }
        match head {
            "x" if k <= self.boundary_rank() => Some(k - 1),
            "y" if k <= self.symplectic_rank() => Some(self.boundary_rank() + k - 1),
            _ => None,
        }
    }

    /// Small in the sense that no non-self-dual classes exist: `n ≤ 1`, or
    /// `n = 2` and `g = 0`.
    pub fn is_small(&self) -> bool {
        self.boundary_components <= 1 || (self.boundary_components == 2 && self.genus == 0)
    }

    pub(crate) fn check_same(&self, other: &SurfaceSignature) -> Result<()> {
        if self != other {
            return Err(Error::SignatureMismatch {
                left: *self,
                right: *other,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ({},{})", self.genus, self.boundary_components)
    }
}

/// An element of `H`, boundary coordinates first, then symplectic ones.
///
/// The derived ordering is lexicographic on `(boundary_part, symplectic_part)`,
/// which is the global term order used everywhere for canonical output.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(rank: usize) -> Self {
        ExponentVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn boundary_part(&self, sig: &SurfaceSignature) -> &[i64] {
        &self.0[..sig.boundary_rank()]
    }

    pub fn symplectic_part(&self, sig: &SurfaceSignature) -> &[i64] {
        &self.0[sig.boundary_rank()..]
    }

    /// Whether the vector is primitive (gcd of coordinates is 1).
    pub fn is_indivisible(&self) -> bool {
        self.0
            .iter()
            .fold(0i64, |g, &e| num_integer::gcd(g, e))
            .abs()
            == 1
    }

    pub fn scaled(&self, k: i64) -> Self {
        ExponentVector(self.0.iter().map(|e| e * k).collect())
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[ExponentVector]) -> Result<Self> {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.rank() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.rank(),
                });
            }
            for i in 0..rows {
                m[(i, j)] = col.0[i];
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column(&self, j: usize) -> ExponentVector {
        ExponentVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &ExponentVector) -> Result<ExponentVector> {
        if v.rank() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.rank(),
            });
        }
        Ok(ExponentVector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self[(i, j)] * v.0[j]).sum())
                .collect(),
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self[(i, j)] == i64::from(i == j)))
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        Ok(sign * a[n - 1][n - 1])
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// A homomorphism `H → H'` between homology lattices, given by its matrix
/// on column vectors (`rank(H')` rows, `rank(H)` columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    pub source: SurfaceSignature,
    pub target: SurfaceSignature,
    pub matrix: IntMatrix,
}

impl LatticeMap {
    pub fn new(source: SurfaceSignature, target: SurfaceSignature, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.rank() {
            return Err(Error::DimensionMismatch {
                expected: target.rank(),
                found: matrix.rows(),
            });
        }
        if matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch {
                expected: source.rank(),
                found: matrix.cols(),
            });
        }
        Ok(LatticeMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(sig: SurfaceSignature) -> Self {
        LatticeMap {
            source: sig,
            target: sig,
            matrix: IntMatrix::identity(sig.rank()),
        }
    }

    /// The map `Z → H` sending the generator to `h`, with the annulus as the
    /// source; used to evaluate one-variable polynomials at `h`.
    pub fn evaluation_at(target: SurfaceSignature, h: &ExponentVector) -> Result<Self> {
        let m = IntMatrix::from_columns(target.rank(), std::slice::from_ref(h))?;
        LatticeMap::new(SurfaceSignature::annulus(), target, m)
    }

    pub fn apply(&self, v: &ExponentVector) -> Result<ExponentVector> {
        self.matrix.apply(v)
    }
}
