//! Dense vectors and matrices over a [`Field`].
//!
//! Vectors are plain `[Elem]` slices; the field travels alongside.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

pub fn distance(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn add(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn sub(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn scale(field: &Field, c: Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|&x| field.mul(c, x)).collect()
}

/// `dst += c * src`
#[inline]
fn axpy(field: &Field, dst: &mut [Elem], c: Elem, src: &[Elem]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.add(*d, field.mul(c, s));
    }
}

/// Incrementally built echelon basis. Every stored row is monic at its pivot
/// and vanishes on the pivots of all rows stored before it, so reducing a
/// vector row by row in insertion order clears every pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: &'static Field,
    n: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &'static Field, n: usize) -> Self {
        EchelonBasis {
            field,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Length of the vectors the basis lives in.
    pub fn width(&self) -> usize {
        self.n
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Reduces `v` in place against the basis.
    pub fn reduce(&self, v: &mut [Elem]) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                axpy(self.field, v, self.field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the basis if independent; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        debug_assert_eq!(v.len(), self.n);
        if self.is_full() {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        match w.iter().position(|&x| x != 0) {
            None => false,
            Some(piv) => {
                let s = self.field.inv_nonzero(w[piv]);
                for x in w.iter_mut() {
                    *x = self.field.mul(s, *x);
                }
                self.rows.push(w);
                self.pivots.push(piv);
                true
            }
        }
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Canonical reduced row-echelon matrix of the spanned space.
    pub fn to_rref(&self) -> Matrix {
        let mut m = Matrix::from_rows_unchecked(self.field, self.n, self.rows.clone());
        m.rref_in_place();
        m
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: &'static Field,
    ncols: usize,
    rows: Vec<Vec<Elem>>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix over GF({}) {}x{}", self.field.q(), self.nrows(), self.ncols)?;
        for r in &self.rows {
            writeln!(f, "  {:?}", r)?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: &'static Field, ncols: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {ncols}",
                    r.len()
                )));
            }
            if let Some(&x) = r.iter().find(|&&x| x as usize >= field.q()) {
                return Err(Error::InvalidParameter(format!("entry {x} outside GF({})", field.q())));
            }
        }
        Ok(Matrix { field, ncols, rows })
    }

    pub(crate) fn from_rows_unchecked(field: &'static Field, ncols: usize, rows: Vec<Vec<Elem>>) -> Self {
        Matrix { field, ncols, rows }
    }

    pub fn zeros(field: &'static Field, nrows: usize, ncols: usize) -> Self {
        Matrix {
            field,
            ncols,
            rows: vec![vec![0; ncols]; nrows],
        }
    }

    pub fn identity(field: &'static Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Elem>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.rows[i][j]
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j]).collect())
            .collect();
        Matrix {
            field: self.field,
            ncols: self.nrows(),
            rows,
        }
    }

    /// Columns `range` of every row.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix {
        Matrix {
            field: self.field,
            ncols: range.len(),
            rows: self.rows.iter().map(|r| r[range.clone()].to_vec()).collect(),
        }
    }

    /// `M v^T`
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        self.rows.iter().map(|r| dot(self.field, r, v)).collect()
    }

    /// `v M`
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.ncols];
        for (&c, r) in v.iter().zip(&self.rows) {
            if c != 0 {
                axpy(self.field, &mut out, c, r);
            }
        }
        out
    }

    /// Brings the matrix to reduced row-echelon form, dropping zero rows.
    /// Pivots are taken in the lowest available column; returns them.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.ncols {
            let Some(src) = (lead..self.rows.len()).find(|&i| self.rows[i][col] != 0) else {
                continue;
            };
            self.rows.swap(lead, src);
            let s = f.inv_nonzero(self.rows[lead][col]);
            for x in self.rows[lead].iter_mut() {
                *x = f.mul(s, *x);
            }
            let pivot_row = self.rows[lead].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != lead && row[col] != 0 {
                    let c = f.neg(row[col]);
                    axpy(f, row, c, &pivot_row);
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows.len() {
                break;
            }
        }
        self.rows.truncate(lead);
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical (RREF) basis of `{v : M v^T = 0}`.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let n = self.ncols;
        let mut is_pivot = vec![None; n];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![0; n];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = self.field.neg(r.rows[i][free]);
            }
            basis.push(v);
        }
        let mut k = Matrix {
            field: self.field,
            ncols: n,
            rows: basis,
        };
        k.rref_in_place();
        k
    }
}

pub fn span_dim(field: &'static Field, n: usize, vectors: &[Vec<Elem>]) -> usize {
    let mut b = EchelonBasis::new(field, n);
    for v in vectors {
        b.insert(v);
    }
    b.dim()
}

pub fn in_span(field: &'static Field, v: &[Elem], basis: &[Vec<Elem>]) -> bool {
    let mut b = EchelonBasis::new(field, v.len());
    for r in basis {
        b.insert(r);
    }
    b.contains(v)
}

/// Coordinate permutation combined with nonzero coordinate scalings.
///
/// `perm[j]` is the destination of coordinate `j`; the output entry at
/// `perm[j]` is `scales[perm[j]] * v[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    perm: Vec<usize>,
    scales: Vec<Elem>,
}

impl MonomialMap {
    pub fn new(perm: Vec<usize>, scales: Vec<Elem>) -> Result<Self> {
        let n = perm.len();
        if scales.len() != n {
            return Err(Error::DimensionMismatch(format!("{} scales for {n} coordinates", scales.len())));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("permutation is not a bijection".into()));
            }
        }
        if scales.contains(&0) {
            return Err(Error::InvalidParameter("monomial scales must be nonzero".into()));
        }
        Ok(MonomialMap { perm, scales })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMap {
            perm: (0..n).collect(),
            scales: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scales(&self) -> &[Elem] {
        &self.scales
    }

    pub fn apply(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.perm.len(), "monomial map length mismatch");
        let mut out = vec![0; v.len()];
        for (j, &dst) in self.perm.iter().enumerate() {
            out[dst] = field.mul(self.scales[dst], v[j]);
        }
        out
    }

    pub fn inverse(&self, field: &Field) -> MonomialMap {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut scales = vec![1; n];
        for (j, &dst) in self.perm.iter().enumerate() {
            perm[dst] = j;
            scales[j] = field.inv_nonzero(self.scales[dst]);
        }
        MonomialMap { perm, scales }
    }
}
