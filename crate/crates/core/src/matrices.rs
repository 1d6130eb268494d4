//! Dense exact matrices and the form predicates built on them.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rings::{RingElement, RingSpec, Scalar};

/// A dense row-major matrix over a single ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<E: Scalar = RingElement> {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Scalar> Matrix<E> {
    pub fn new(ring: RingSpec, rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrices must have positive dimensions".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![E::zero_in(ring); rows * cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = E::one_in(ring);
        }
        m
    }

    /// The matrix unit `e_{ij}` of size `n` (1-based indices).
    pub fn e_unit(ring: RingSpec, n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Index(format!("e_({i},{j}) in size {n}")));
        }
        let mut m = Self::zeros(ring, n, n);
        m[(i - 1, j - 1)] = E::one_in(ring);
        Ok(m)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
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

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(&E, &E) -> E) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("entrywise operation on different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, E::plus)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, E::minus)
    }

    pub fn neg(&self) -> Self {
        self.map_entries(E::negated)
    }

    pub fn scale(&self, c: &E) -> Self {
        self.map_entries(|e| e.times(c))
    }

    fn map_entries(&self, f: impl Fn(&E) -> E) -> Self {
        Matrix { data: self.data.iter().map(f).collect(), ..*self }
    }

    /// Entrywise conversion to another scalar type over the same base ring.
    pub fn map<F: Scalar>(&self, f: impl Fn(&E) -> Result<F>) -> Result<Matrix<F>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Matrix::new(self.ring, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// `diag(self, other)`.
    pub fn block_perp(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut out = Self::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// The block with rows `r0..r0+rows` and columns `c0..c0+cols` (0-based).
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(Error::Index(format!("block {rows}x{cols} at ({r0},{c0}) of {}x{}", self.rows, self.cols)));
        }
        let mut out = Self::zeros(self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        Ok(out)
    }

    /// Column vector from entries.
    pub fn column_vector(ring: RingSpec, v: Vec<E>) -> Result<Self> {
        let n = v.len();
        Matrix::new(ring, n, 1, v)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(E::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.ring, self.rows)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == self[(j, i)].negated())
            })
    }

    /// `m^t · phi · m == phi`, exactly.
    pub fn is_symplectic_for(&self, phi: &Self) -> Result<bool> {
        if !self.is_square() || !phi.is_square() || self.rows != phi.rows {
            return Err(Error::Dimension(format!("{}x{} against form of size {}", self.rows, self.cols, phi.rows)));
        }
        Ok(self.transpose().checked_mul(phi)?.checked_mul(self)? == *phi)
    }

    /// `m ≡ I` modulo the ideal, entrywise.
    pub fn is_congruent_identity(&self, ideal: &IdealSpec<E>) -> Result<bool> {
        if !self.is_square() {
            return Ok(false);
        }
        let diff = self.checked_sub(&Self::identity(self.ring, self.rows))?;
        for e in &diff.data {
            if !ideal.contains(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<E: Scalar> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<E: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<E: Scalar> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl<E: Scalar> Matrix<E> {
    /// `{"ring": <tag>, "rows": [[<entry>, ...], ...]}`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            (0..self.rows).map(|i| Value::Array(self.row(i).iter().map(E::to_json).collect())).collect();
        json!({ "ring": self.ring.to_json(), "rows": rows })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = RingSpec::from_json(v.get("ring").ok_or_else(|| Error::Parse("matrix without ring".into()))?)?;
        Self::from_json_in(ring, v)
    }

    /// Parses with a known ring; the `"ring"` field, when present, must agree.
    pub fn from_json_in(ring: RingSpec, v: &Value) -> Result<Self> {
        if let Some(tag) = v.get("ring") {
            let declared = RingSpec::from_json(tag)?;
            if declared != ring {
                return Err(Error::Parse(format!("matrix over {declared}, expected {ring}")));
            }
        }
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix without rows".into()))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("row is not an array".into()))?
                    .iter()
                    .map(|e| E::from_json(ring, e))
                    .collect::<Result<Vec<E>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(ring, rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Matrix<RingElement> {
    /// Exact determinant: cofactor expansion up to size 4, Bareiss above.
    pub fn determinant(&self) -> Result<RingElement> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        if self.rows <= 4 {
            Ok(self.determinant_cofactor())
        } else {
            self.determinant_bareiss()
        }
    }

    /// Laplace expansion along the first row. Exponential; small sizes only.
    pub fn determinant_cofactor(&self) -> RingElement {
        let idx: Vec<usize> = (0..self.rows).collect();
        self.cofactor_rec(&idx, &idx)
    }

    fn cofactor_rec(&self, rows: &[usize], cols: &[usize]) -> RingElement {
        match rows.len() {
            0 => self.ring.one(),
            1 => self[(rows[0], cols[0])].clone(),
            _ => {
                let mut acc = self.ring.zero();
                for (k, &c) in cols.iter().enumerate() {
                    let a = &self[(rows[0], c)];
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a * &self.cofactor_rec(&rows[1..], &rest);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Fraction-free Gaussian elimination with exact divisions.
    pub fn determinant_bareiss(&self) -> Result<RingElement> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = self.ring.one();
        for k in 0..n.saturating_sub(1) {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                    return Ok(self.ring.zero());
                };
                for j in 0..n {
                    m.data.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = num.exact_div(&prev)?;
                }
            }
            prev = m[(k, k)].clone();
        }
        let det = m[(n - 1, n - 1)].clone();
        Ok(if negate { -det } else { det })
    }

    /// Inverse for matrices of unit determinant, via the adjugate.
    pub fn inverse_unit_det(&self) -> Result<Self> {
        let det = self.determinant()?;
        if !det.is_unit() {
            return Err(Error::Singular(det.to_string()));
        }
        let det_inv = det.invert_unit()?;
        let n = self.rows;
        if n == 1 {
            return Matrix::new(self.ring, 1, 1, vec![det_inv]);
        }
        let mut adj = Self::zeros(self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j).determinant()?;
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                adj[(j, i)] = &cof * &det_inv;
            }
        }
        Ok(adj)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let data = (0..self.rows)
            .filter(|&i| i != skip_row)
            .flat_map(|i| (0..self.cols).filter(move |&j| j != skip_col).map(move |j| (i, j)))
            .map(|(i, j)| self[(i, j)].clone())
            .collect();
        Matrix { ring: self.ring, rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Pfaffian by first-row expansion, memoized on index subsets.
    ///
    /// Normalized so that `Pf([[0, 1], [-1, 0]]) = 1`.
    pub fn pfaffian(&self) -> Result<RingElement> {
        if !self.is_square() {
            return Err(Error::Dimension("Pfaffian of a non-square matrix".into()));
        }
        if self.rows % 2 == 1 {
            return Err(Error::OddSize(self.rows));
        }
        if !self.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        if self.rows > 64 {
            return Err(Error::Unsupported("Pfaffian above size 64".into()));
        }
        let full = if self.rows == 64 { u64::MAX } else { (1u64 << self.rows) - 1 };
        let mut memo = HashMap::new();
        Ok(self.pfaffian_rec(full, &mut memo))
    }

    fn pfaffian_rec(&self, mask: u64, memo: &mut HashMap<u64, RingElement>) -> RingElement {
        if mask == 0 {
            return self.ring.one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let idx: Vec<usize> = (0..self.rows).filter(|&k| mask >> k & 1 == 1).collect();
        let first = idx[0];
        let mut acc = self.ring.zero();
        // position p (0-based) of the partner within the subset; sign (-1)^p
        // matches (-1)^j for 1-based j = p + 1.
        for (p, &j) in idx.iter().enumerate().skip(1) {
            let a = &self[(first, j)];
            if a.is_zero() {
                continue;
            }
            let rest = mask & !(1u64 << first) & !(1u64 << j);
            let term = a * &self.pfaffian_rec(rest, memo);
            acc = if p % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Entrywise residues modulo the ideal.
    pub fn reduce_mod(&self, ideal: &IdealSpec) -> Result<Self> {
        self.map(|e| ideal.residue(e))
    }
}

/// A principal ideal, given by its generator.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpec<E: Scalar = RingElement> {
    pub generator: E,
}

impl<E: Scalar> IdealSpec<E> {
    pub fn new(generator: E) -> Self {
        IdealSpec { generator }
    }

    pub fn contains(&self, x: &E) -> Result<bool> {
        x.in_ideal(&self.generator)
    }
}

impl IdealSpec<RingElement> {
    /// Remainder of euclidean division by the generator; the zero ideal
    /// leaves elements unchanged.
    pub fn residue(&self, x: &RingElement) -> Result<RingElement> {
        if self.generator.is_zero() {
            return Ok(x.clone());
        }
        Ok(x.div_rem(&self.generator)?.1)
    }
}

/// An invertible-when-used skew-symmetric form of even size.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewForm {
    phi: Matrix,
}

impl SkewForm {
    pub fn new(phi: Matrix) -> Result<Self> {
        if !phi.is_square() {
            return Err(Error::Dimension("form must be square".into()));
        }
        if phi.rows() % 2 == 1 {
            return Err(Error::OddSize(phi.rows()));
        }
        if !phi.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(SkewForm { phi })
    }

    /// The standard form ψ_n = Σ (e_{2i-1,2i} - e_{2i,2i-1}).
    pub fn standard(ring: RingSpec, n: usize) -> Self {
        let mut phi = Matrix::zeros(ring, 2 * n, 2 * n);
        for i in 0..n {
            phi[(2 * i, 2 * i + 1)] = ring.one();
            phi[(2 * i + 1, 2 * i)] = -ring.one();
        }
        SkewForm { phi }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.phi
    }

    pub fn ring(&self) -> RingSpec {
        self.phi.ring()
    }

    pub fn half_size(&self) -> usize {
        self.phi.rows() / 2
    }

    pub fn pfaffian(&self) -> RingElement {
        self.phi.pfaffian().expect("validated at construction")
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::standard(self.ring(), self.half_size())
    }
}

/// `m^t · phi · m == phi`.
pub fn is_symplectic(m: &Matrix, phi: &SkewForm) -> Result<bool> {
    m.is_symplectic_for(phi.matrix())
}
