//! Hamming, simplex and trivial MDS codes, the subcode cut out of a Hamming
//! code by its canonical dual word, and the two coset partitions used by the
//! concatenation construction.

use crate::codes::{checked_pow, coset_partition, Code, LinearCode, MAX_WORDS};
use crate::error::{Error, Result};
use crate::gf::{self, Elem};
use crate::linalg::Matrix;

pub use crate::codes::Partition;

/// Parameters `(q, m)` of a Hamming code of length `(q^m - 1)/(q - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HammingSpec {
    pub q: usize,
    pub m: usize,
}

impl HammingSpec {
    pub fn new(q: usize, m: usize) -> Result<Self> {
        gf::field(q)?;
        if m < 2 {
            return Err(Error::InvalidParameter(format!("m = {m}, need m >= 2")));
        }
        let spec = HammingSpec { q, m };
        checked_pow(q, m)
            .filter(|&t| t <= MAX_WORDS)
            .ok_or_else(|| Error::InvalidParameter(format!("q^m too large for q = {q}, m = {m}")))?;
        Ok(spec)
    }

    pub fn length(&self) -> usize {
        (self.q.pow(self.m as u32) - 1) / (self.q - 1)
    }

    pub fn dimension(&self) -> usize {
        self.length() - self.m
    }

    /// Number of cosets of the code in the whole space, `(q-1)n + 1 = q^m`.
    pub fn cosets(&self) -> usize {
        self.q.pow(self.m as u32)
    }
}

/// `m x n` matrix whose columns are the nonzero vectors of `GF(q)^m` with
/// first nonzero entry 1, in lexicographic order with the top row most
/// significant.
pub fn hamming_parity_check(q: usize, m: usize) -> Result<Matrix> {
    let spec = HammingSpec::new(q, m)?;
    let field = gf::field(q)?;
    let mut columns: Vec<Vec<Elem>> = Vec::with_capacity(spec.length());
    let mut v = vec![0 as Elem; m];
    loop {
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            columns.push(v.clone());
        }
        let Some(i) = (0..m).rev().find(|&i| (v[i] as usize) + 1 < q) else {
            break;
        };
        v[i] += 1;
        v[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
    debug_assert_eq!(columns.len(), spec.length());
    let cols = Matrix::from_rows_unchecked(field, m, columns);
    Ok(cols.transpose())
}

pub fn hamming_code(q: usize, m: usize) -> Result<LinearCode> {
    Ok(LinearCode::from_parity_check(hamming_parity_check(q, m)?))
}

pub fn simplex_code(q: usize, m: usize) -> Result<LinearCode> {
    Ok(LinearCode::from_generator(hamming_parity_check(q, m)?))
}

/// The sum-zero code `M_{q,n}` with parameters `[n, n-1, 2]`.
pub fn trivial_mds(q: usize, n: usize) -> Result<LinearCode> {
    let field = gf::field(q)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n}, need n >= 2")));
    }
    Ok(LinearCode::from_parity_check(Matrix::from_rows_unchecked(field, n, vec![vec![1; n]])))
}

/// `{v : (0 | v) in H}` for the Hamming code `H` of parameters `(q, m+1)`,
/// `v` ranging over the last `q^m` coordinates, which is exactly the support
/// of the all-ones top row of the parity-check matrix. The result is a
/// `[q^m, q^m - m - 1, 3]` subcode of `M_{q,q^m}`.
pub fn extract_cpp(q: usize, m: usize) -> Result<LinearCode> {
    let h = hamming_parity_check(q, m + 1)?;
    let n = h.ncols();
    let tail = h.columns(n - q.pow(m as u32)..n);
    debug_assert!(tail.row(0).iter().all(|&x| x == 1));
    Ok(LinearCode::from_parity_check(tail))
}

/// Cosets of `extract_cpp(q, m)` inside `M_{q,q^m}`.
pub fn mds_partition(q: usize, m: usize) -> Result<Partition> {
    let sub = extract_cpp(q, m)?;
    let ambient = trivial_mds(q, sub.length())?.to_code()?;
    coset_partition(&ambient, &sub)
}

/// Cosets of the Hamming code `(q, m)` in the whole space.
pub fn space_partition(q: usize, m: usize) -> Result<Partition> {
    let h = hamming_code(q, m)?;
    let space = Code::full_space(h.field(), h.length())?;
    coset_partition(&space, &h)
}
