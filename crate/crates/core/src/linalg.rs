//! Exact linear algebra over F_p: dense and sparse matrices, row reduction,
//! nullspaces and canonical subspace bases.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{arg, Result};
use crate::field::{Fp, Parity, Scalar};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    /// Builds a matrix from rows of already reduced residues.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, f: Fp, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.mul_add(out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, f: Fp, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b)))
            .collect()
    }

    pub fn add(&self, f: Fp, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: Fp, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: Fp, c: Scalar) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, f: Fp, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Graded commutator `AB - (-1)^{|A||B|} BA`.
    pub fn supercommutator(&self, f: Fp, other: &Matrix, pa: Parity, pb: Parity) -> Matrix {
        let ab = self.mul(f, other);
        let ba = other.mul(f, self);
        if pa.clashes(pb) {
            ab.add(f, &ba)
        } else {
            ab.sub(f, &ba)
        }
    }

    /// Whether the operator maps the `parity`-shifted grading correctly:
    /// every nonzero entry `(i, j)` satisfies `|row i| = |col j| + parity`.
    pub fn is_homogeneous(&self, row_par: &[Parity], col_par: &[Parity], parity: Parity) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| self.get(i, j) == 0 || row_par[i] == col_par[j] + parity)
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn rank(&self, f: Fp) -> usize {
        let mut ech = Echelon::new(f, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.rank()
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::new(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.set(i, j, self.get(i, j));
            }
        }
        s
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Sparse matrix with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, f: Fp, i: usize, j: usize, v: Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, f.add(cur, v));
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            m.set(i, j, v);
        }
        m
    }

    fn dense_rows(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        let mut by_row: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (i, j, v) in self.entries() {
            by_row.entry(i).or_default().push((j, v));
        }
        by_row.into_values().map(move |row| {
            let mut dense = vec![0; self.cols];
            for (j, v) in row {
                dense[j] = v;
            }
            dense
        })
    }

    pub fn rank(&self, f: Fp) -> usize {
        let mut ech = Echelon::new(f, self.cols);
        for row in self.dense_rows() {
            ech.insert(row);
        }
        ech.rank()
    }
}

/// Incremental row reduction over F_p.
///
/// Rows are kept with pivot 1 and reduced against earlier pivots on insertion.
/// [`Echelon::into_subspace`] produces the fully reduced (RREF) form.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    dim: usize,
    // pivot column -> row with leading 1 at that column
    rows: BTreeMap<usize, Vec<Scalar>>,
}

impl Echelon {
    pub fn new(field: Fp, dim: usize) -> Self {
        Echelon { field, dim, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the stored rows; returns the residue.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        let f = self.field;
        for (&pc, row) in &self.rows {
            let c = v[pc];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                    if r != 0 {
                        *x = f.mul_add(*x, nc, r);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Inserts a vector; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match the ambient dimension");
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(r[pc]).unwrap();
        for x in r.iter_mut().skip(pc) {
            *x = f.mul(*x, inv);
        }
        self.rows.insert(pc, r);
        true
    }

    pub fn into_subspace(self) -> SubspaceBasis {
        let f = self.field;
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut rows: Vec<Vec<Scalar>> = self.rows.into_values().collect();
        // back substitution: clear entries above each pivot
        for k in (0..rows.len()).rev() {
            let pc = pivots[k];
            let (upper, lower) = rows.split_at_mut(k);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let c = row[pc];
                if c != 0 {
                    let nc = f.neg(c);
                    for (x, &r) in row.iter_mut().zip(pivot_row).skip(pc) {
                        if r != 0 {
                            *x = f.mul_add(*x, nc, r);
                        }
                    }
                }
            }
        }
        SubspaceBasis { ambient_dim: self.dim, vectors: rows }
    }
}

/// A subspace of F_p^d given by its reduced row-echelon basis.
///
/// Two values over the same ambient space are equal iff the subspaces are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, vectors: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| Scalar::from(i == j)).collect())
            .collect();
        SubspaceBasis { ambient_dim, vectors }
    }

    pub fn span<I: IntoIterator<Item = Vec<Scalar>>>(field: Fp, ambient_dim: usize, vectors: I) -> Self {
        let mut ech = Echelon::new(field, ambient_dim);
        for v in vectors {
            ech.insert(v);
        }
        ech.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.vectors.iter().map(|v| v.iter().position(|&x| x != 0).unwrap()).collect()
    }

    pub fn contains(&self, field: Fp, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut r = v.to_vec();
        for (row, pc) in self.vectors.iter().zip(self.pivots()) {
            let c = r[pc];
            if c != 0 {
                let nc = field.neg(c);
                for (x, &y) in r.iter_mut().zip(row) {
                    *x = field.mul_add(*x, nc, y);
                }
            }
        }
        r.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, field: Fp, other: &SubspaceBasis) -> bool {
        self.ambient_dim == other.ambient_dim && self.vectors.iter().all(|v| other.contains(field, v))
    }
}

/// Basis of `{x : Mx = 0}` in reduced row-echelon form.
pub fn nullspace(field: Fp, m: &SparseMatrix) -> SubspaceBasis {
    let mut ech = Echelon::new(field, m.cols());
    for row in m.dense_rows() {
        ech.insert(row);
    }
    kernel_from_rref(field, ech.into_subspace())
}

/// Nullspace of a dense matrix.
pub fn nullspace_dense(field: Fp, m: &Matrix) -> SubspaceBasis {
    let mut ech = Echelon::new(field, m.cols());
    for i in 0..m.rows() {
        ech.insert(m.row(i).to_vec());
    }
    kernel_from_rref(field, ech.into_subspace())
}

fn kernel_from_rref(field: Fp, rowspace: SubspaceBasis) -> SubspaceBasis {
    let n = rowspace.ambient_dim;
    let pivots = rowspace.pivots();
    let mut is_pivot = vec![false; n];
    for &pc in &pivots {
        is_pivot[pc] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (row, &pc) in rowspace.vectors.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        basis.push(v);
    }
    SubspaceBasis::span(field, n, basis)
}

/// Equality of spanned subspaces.
pub fn subspace_equal(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<bool> {
    if a.ambient_dim != b.ambient_dim {
        return arg(format!(
            "subspaces live in different ambient spaces ({} vs {})",
            a.ambient_dim, b.ambient_dim
        ));
    }
    Ok(a == b)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(field: Fp, m: &Matrix) -> Option<Matrix> {
    assert!(m.is_square());
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| if j < n { m.get(i, j) } else if j - n == i { 1 } else { 0 });
    let mut ech = Echelon::new(field, 2 * n);
    for i in 0..n {
        ech.insert(aug.row(i).to_vec());
    }
    let rref = ech.into_subspace();
    if rref.dim() != n || rref.pivots().iter().enumerate().any(|(k, &pc)| pc != k) {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| rref.vectors[i][n + j]))
}

/// Determinant by row reduction.
pub fn determinant(field: Fp, m: &Matrix) -> Scalar {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut det = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a.get(r, col) != 0) else {
            return 0;
        };
        if piv != col {
            for j in 0..n {
                let (x, y) = (a.get(col, j), a.get(piv, j));
                a.set(col, j, y);
                a.set(piv, j, x);
            }
            det = field.neg(det);
        }
        let d = a.get(col, col);
        det = field.mul(det, d);
        let inv = field.inv(d).expect("nonzero pivot");
        for r in col + 1..n {
            let factor = field.mul(a.get(r, col), inv);
            if factor == 0 {
                continue;
            }
            for j in col..n {
                let v = field.sub(a.get(r, j), field.mul(factor, a.get(col, j)));
                a.set(r, j, v);
            }
        }
    }
    det
}
