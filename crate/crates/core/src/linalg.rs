//! Dense complex linear algebra used by every operator in the crate.
//!
//! Matrices are stored row-major in a flat `Vec`. Products skip zero entries of
//! the left operand, which keeps the permutation-heavy walk operators cheap even
//! at dimension 4096.

use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{dim_err, Error, Result};

pub type Complex = Complex64;

/// Default tolerance for unitarity and Kraus checks.
pub const DEFAULT_TOL: f64 = 1e-10;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "matrix shape {rows}x{cols} has an empty side"
            )));
        }
        if data.len() != rows * cols {
            return Err(dim_err("ComplexMatrix::new", rows * cols, data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix sides must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
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

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::from((0..self.rows).map(|i| self[(i, j)]).collect::<Vec<_>>())
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(dim_err(
                "matmul",
                format!("{} rows on the right", self.cols),
                other.rows,
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if *a == ZERO {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self^power` by repeated multiplication; `power = 0` gives the identity.
    pub fn pow(&self, power: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(dim_err("pow", "square matrix", format!("{}x{}", self.rows, self.cols)));
        }
        if power == 0 {
            return Ok(Self::identity(self.rows));
        }
        let mut acc = self.clone();
        for _ in 1..power {
            acc = self.matmul(&acc)?;
        }
        Ok(acc)
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest absolute difference after removing the best single global phase,
    /// taken from the largest-magnitude entry of `other`.
    pub fn max_abs_diff_up_to_phase(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other, "max_abs_diff_up_to_phase")?;
        let (idx, _) = other
            .data
            .iter()
            .enumerate()
            .fold((0, 0.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
        let (a, b) = (self.data[idx], other.data[idx]);
        let phase = if a.norm() == 0.0 || b.norm() == 0.0 {
            ONE
        } else {
            let r = a / b;
            r / r.norm()
        };
        self.max_abs_diff(&other.scale(phase))
    }

    /// Submatrix `[row0..row0+rows) x [col0..col0+cols)`.
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    /// Serializes as CSV: one matrix row per line, each entry written as the
    /// pair `re,im`, so a line holds `2 * cols` numbers.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|z| format!("{},{}", z.re, z.im)).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut cols = None;
        let mut data = Vec::new();
        let mut rows = 0;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let entries = parse_pairs(line, lineno + 1)?;
            match cols {
                None => cols = Some(entries.len()),
                Some(c) if c != entries.len() => {
                    return Err(Error::Parse(format!(
                        "line {}: expected {} entries, found {}",
                        lineno + 1,
                        c,
                        entries.len()
                    )))
                }
                _ => {}
            }
            data.extend(entries);
            rows += 1;
        }
        let cols = cols.ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        Self::new(rows, cols, data)
    }

    fn check_same_shape(&self, other: &Self, context: &'static str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(dim_err(
                context,
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

fn parse_pairs(line: &str, lineno: usize) -> Result<Vec<Complex>> {
    let nums = line
        .split(',')
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {lineno}: {e} in {f:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if nums.len() % 2 != 0 {
        return Err(Error::Parse(format!(
            "line {lineno}: odd number of fields, expected re,im pairs"
        )));
    }
    Ok(nums.chunks(2).map(|p| Complex::new(p[0], p[1])).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex>,
}

impl ComplexVector {
    pub fn zeros(dim: usize) -> Self {
        Self { data: vec![ZERO; dim] }
    }

    /// Standard basis vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::OutOfRange {
                what: "basis index",
                value: k,
                bound: format!("< {dim}"),
            });
        }
        let mut v = Self::zeros(dim);
        v.data[k] = ONE;
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(dim_err("vector max_abs_diff", self.dim(), other.dim()));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// One `re,im` pair per line.
    pub fn to_csv(&self) -> String {
        self.data.iter().map(|z| format!("{},{}\n", z.re, z.im)).collect()
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut data = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let pair = parse_pairs(line, lineno + 1)?;
            if pair.len() != 1 {
                return Err(Error::Parse(format!(
                    "line {}: expected a single re,im pair",
                    lineno + 1
                )));
            }
            data.push(pair[0]);
        }
        Ok(Self { data })
    }
}

impl From<Vec<Complex>> for ComplexVector {
    fn from(data: Vec<Complex>) -> Self {
        Self { data }
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex;

    fn index(&self, i: usize) -> &Complex {
        &self.data[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex {
        &mut self.data[i]
    }
}

/// Kronecker product: entry `(i*b.rows + k, j*b.cols + l)` is `a(i,j) * b(k,l)`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows {
                let base = (i * b.rows + k) * cols + j * b.cols;
                for (o, bkl) in out.data[base..base + b.cols].iter_mut().zip(b.row(k)) {
                    *o = aij * bkl;
                }
            }
        }
    }
    out
}

/// Entrywise (Hadamard) product.
pub fn hadamard_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same_shape(b, "hadamard_product")?;
    Ok(ComplexMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| x * y).collect(),
    })
}

/// Matrix-vector product.
pub fn apply(m: &ComplexMatrix, v: &ComplexVector) -> Result<ComplexVector> {
    if m.cols != v.dim() {
        return Err(dim_err("apply", m.cols, v.dim()));
    }
    let data = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .zip(&v.data)
                .filter(|(a, _)| **a != ZERO)
                .map(|(a, x)| a * x)
                .sum()
        })
        .collect();
    Ok(ComplexVector { data })
}

/// Max-abs entry of `m† m - I`.
///
/// Accumulated row by row over the nonzero entries of `m`, so sparse operators
/// cost `sum_k nnz(row_k)^2` instead of `dim^3`.
pub fn unitarity_deviation(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(dim_err("is_unitary", "square matrix", format!("{}x{}", m.rows, m.cols)));
    }
    let dim = m.rows;
    let mut gram = ComplexMatrix::identity(dim).scale(Complex::new(-1.0, 0.0));
    let mut nz: Vec<(usize, Complex)> = Vec::with_capacity(dim);
    for k in 0..dim {
        nz.clear();
        nz.extend(m.row(k).iter().copied().enumerate().filter(|(_, z)| *z != ZERO));
        for &(i, a) in &nz {
            let ac = a.conj();
            let grow = &mut gram.data[i * dim..(i + 1) * dim];
            for &(j, b) in &nz {
                grow[j] += ac * b;
            }
        }
    }
    Ok(gram.data.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// True iff every entry of `m† m - I` is smaller than `tol` in magnitude.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(unitarity_deviation(m)? < tol)
}
