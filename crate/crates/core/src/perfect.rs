//! Perfection checks, character sums and the dual-word decomposition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg};

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{checked_pow, radix_index, word_to_string, Code, WeightDistribution};
use crate::constructions::trivial_mds;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{self, MonomialMap};

/// Largest `q^n` for which coverage is checked vector by vector.
pub const EXHAUSTIVE_LIMIT: u128 = 100_000_000;

/// `m >= 2` with `n = (q^m - 1)/(q - 1)`, if any.
pub fn admissible_m(q: usize, n: usize) -> Option<usize> {
    let mut len = 1 + q;
    let mut m = 2;
    while len < n {
        len = len * q + 1;
        m += 1;
    }
    (len == n).then_some(m)
}

/// Exact element of `Z[ζ]`, `ζ` a primitive p-th root of unity, stored with
/// `p - 1` coefficients after eliminating `ζ^{p-1}` through
/// `1 + ζ + ... + ζ^{p-1} = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    /// `Σ counts[j] ζ^j` for `j` in `0..p`.
    pub fn from_exponent_counts(counts: &[i64]) -> Self {
        let p = counts.len();
        assert!(p >= 2, "need a root of unity of order at least 2");
        let top = counts[p - 1];
        CyclotomicInt {
            coeffs: counts[..p - 1].iter().map(|&c| c - top).collect(),
        }
    }

    pub fn integer(p: usize, k: i64) -> Self {
        let mut coeffs = vec![0; p - 1];
        coeffs[0] = k;
        CyclotomicInt { coeffs }
    }

    /// `ζ^e`
    pub fn root_power(p: usize, e: usize) -> Self {
        let mut counts = vec![0; p];
        counts[e % p] = 1;
        Self::from_exponent_counts(&counts)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() + 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}ζ^{i}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.order(), rhs.order());
        CyclotomicInt {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        let p = self.order();
        assert_eq!(p, rhs.order());
        let mut counts = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                counts[(i + j) % p] += a * b;
            }
        }
        CyclotomicInt::from_exponent_counts(&counts)
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// `χ_u(C) = Σ_{v ∈ C} ζ^{u·v}` over a prime field.
pub fn char_sum(u: &[Elem], code: &Code) -> Result<CyclotomicInt> {
    let f = code.field();
    if !f.is_prime() {
        return Err(Error::NonPrimeField(f.q()));
    }
    if u.len() != code.n() {
        return Err(Error::DimensionMismatch(format!("u has length {}, code length {}", u.len(), code.n())));
    }
    let mut counts = vec![0i64; f.q()];
    for v in code.words() {
        counts[linalg::dot(f, u, v) as usize] += 1;
    }
    Ok(CyclotomicInt::from_exponent_counts(&counts))
}

/// `χ_u(V) = q^m - q wt(u)` for the radius-1 ball `V` around zero.
pub fn sphere_char_value(u: &[Elem], q: usize, m: usize) -> i64 {
    q.pow(m as u32) as i64 - (q * linalg::weight(u)) as i64
}

/// The Hamming ball of radius 1 around the zero word.
pub fn radius_one_sphere(field: &'static Field, n: usize) -> Code {
    let mut words = vec![vec![0; n]];
    for i in 0..n {
        for a in field.nonzero() {
            let mut w = vec![0; n];
            w[i] = a;
            words.push(w);
        }
    }
    Code::new(field, n, words).expect("ball words are distinct")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    PackingBound,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::PackingBound => "packing-bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectReport {
    pub is_perfect: bool,
    pub cardinality_ok: bool,
    /// Vectors covered other than exactly once; `None` when the packing
    /// bound method could not count them.
    pub coverage_defects: Option<u64>,
    pub method: Method,
    pub m: usize,
}

/// Number of vectors of `F_q^n` not covered exactly once by radius-1 balls.
/// Works for any length; the caller bounds `q^n`.
pub fn coverage_defects(code: &Code) -> u64 {
    let f = code.field();
    let (q, n) = (f.q(), code.n());
    let total = checked_pow(q, n).expect("caller bounds the space") as usize;
    let pows: Vec<usize> = (0..n).map(|i| q.pow((n - 1 - i) as u32)).collect();
    let mut hits = vec![0u8; total];
    for w in code.words() {
        let base = radix_index(q, w) as usize;
        hits[base] = hits[base].saturating_add(1);
        for (i, &x) in w.iter().enumerate() {
            let rest = base - x as usize * pows[i];
            for d in f.nonzero() {
                let idx = rest + f.add(x, d) as usize * pows[i];
                hits[idx] = hits[idx].saturating_add(1);
            }
        }
    }
    hits.par_iter().filter(|&&h| h != 1).count() as u64
}

pub fn is_perfect(code: &Code) -> Result<PerfectReport> {
    let q = code.field().q();
    let n = code.n();
    let m = admissible_m(q, n).ok_or(Error::LengthNotAdmissible { q, n })?;
    let expected = checked_pow(q, n - m).unwrap();
    let cardinality_ok = code.len() as u128 == expected;
    let space = checked_pow(q, n);
    if space.is_some_and(|s| s <= EXHAUSTIVE_LIMIT) {
        let defects = coverage_defects(code);
        Ok(PerfectReport {
            is_perfect: defects == 0,
            cardinality_ok,
            coverage_defects: Some(defects),
            method: Method::Exhaustive,
            m,
        })
    } else {
        // disjoint balls of size 1 + n(q-1) filling q^n exactly
        let separated = code.len() >= 2 && code.min_distance()? >= 3;
        let is_perfect = cardinality_ok && separated;
        let coverage_defects = match (separated, space) {
            (true, Some(s)) => {
                let ball = 1 + (n * (q - 1)) as u128;
                Some(s.abs_diff(code.len() as u128 * ball) as u64)
            }
            _ => None,
        };
        Ok(PerfectReport {
            is_perfect,
            cardinality_ok,
            coverage_defects: if is_perfect { Some(0) } else { coverage_defects },
            method: Method::PackingBound,
            m,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Outcome {
    pub ok: bool,
    pub rank: usize,
    pub m: usize,
    pub distribution: WeightDistribution,
    pub expected: WeightDistribution,
}

/// Checks that the dual of a perfect code of rank `k` is `{0}` plus
/// `q^{n-k} - 1` words of weight `q^{m-1}`.
pub fn theorem1_check(code: &Code) -> Result<Theorem1Outcome> {
    let report = is_perfect(code)?;
    if !report.is_perfect {
        return Err(Error::NotPerfect);
    }
    let (q, n, m) = (code.field().q(), code.n(), report.m);
    let rank = code.rank();
    let distribution = code.orthogonal().weight_distribution();
    let mut expected = vec![0u64; n + 1];
    expected[0] = 1;
    expected[q.pow(m as u32 - 1)] += checked_pow(q, n - rank).unwrap() as u64 - 1;
    let expected = WeightDistribution::from_counts(expected);
    Ok(Theorem1Outcome {
        ok: distribution == expected,
        rank,
        m,
        distribution,
        expected,
    })
}

/// The split of a code along a dual word of weight `q^{m-1}`, after the
/// monomial map that moves the support to the back and turns the dual word
/// into `(0…0 | 1…1)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub m: usize,
    pub w: Vec<Elem>,
    pub map: MonomialMap,
    pub prefix_len: usize,
    pub suffix_len: usize,
    /// `C'(v)` for every `v` in `M_{q,q^{m-1}}`.
    pub inner: BTreeMap<Vec<Elem>, Code>,
    /// `C''(u)` for every `u` in `F_q^{n-q^{m-1}}`.
    pub outer: BTreeMap<Vec<Elem>, Code>,
}

impl Decomposition {
    pub fn inner_total(&self) -> usize {
        self.inner.values().map(Code::len).sum()
    }

    pub fn outer_total(&self) -> usize {
        self.outer.values().map(Code::len).sum()
    }

    /// Checks every `C'(v)` for 1-perfection at length `n - q^{m-1}` and
    /// every `C''(u)` for parameters `(q^{m-1}, q^{q^{m-1}-m}, 3)`.
    pub fn check(&self) -> SplitSummary {
        let f = match self.inner.values().next() {
            Some(c) => c.field(),
            None => return SplitSummary::default(),
        };
        let q = f.q();
        let inner_size = checked_pow(q, self.prefix_len - (self.m - 1)).unwrap() as usize;
        let outer_size = checked_pow(q, self.suffix_len - self.m).unwrap() as usize;

        let inner: Vec<(&Vec<Elem>, &Code)> = self.inner.iter().collect();
        let inner_bad: Vec<Option<String>> = inner
            .par_iter()
            .map(|(v, c)| {
                if c.len() != inner_size {
                    Some(format!("C'({}) has {} words, expected {inner_size}", word_to_string(q, v), c.len()))
                } else if coverage_defects(c) != 0 {
                    Some(format!("C'({}) is not 1-perfect", word_to_string(q, v)))
                } else {
                    None
                }
            })
            .collect();
        let outer: Vec<(&Vec<Elem>, &Code)> = self.outer.iter().collect();
        let outer_bad: Vec<Option<String>> = outer
            .par_iter()
            .map(|(u, c)| {
                if c.len() != outer_size {
                    Some(format!("C''({}) has {} words, expected {outer_size}", word_to_string(q, u), c.len()))
                } else if c.min_distance().ok() != Some(3) {
                    Some(format!("C''({}) does not have minimum distance 3", word_to_string(q, u)))
                } else {
                    None
                }
            })
            .collect();
        SplitSummary {
            inner_codes: inner.len(),
            inner_perfect: inner_bad.iter().filter(|b| b.is_none()).count(),
            outer_codes: outer.len(),
            outer_ok: outer_bad.iter().filter(|b| b.is_none()).count(),
            defect: inner_bad.into_iter().chain(outer_bad).flatten().next(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitSummary {
    pub inner_codes: usize,
    pub inner_perfect: usize,
    pub outer_codes: usize,
    pub outer_ok: usize,
    pub defect: Option<String>,
}

impl SplitSummary {
    pub fn all_ok(&self) -> bool {
        self.inner_perfect == self.inner_codes && self.outer_ok == self.outer_codes
    }
}

/// Map sending coordinates outside the support of `w` to the front and the
/// support to the back, both in their original order, scaling support
/// coordinate `j` by `w_j`. Under it every word orthogonal to `w` gets a
/// zero-sum suffix.
pub fn canonicalizing_map(w: &[Elem]) -> MonomialMap {
    let zeros = w.iter().filter(|&&x| x == 0).count();
    let (mut front, mut back) = (0, zeros);
    let mut perm = vec![0; w.len()];
    let mut scales = vec![1; w.len()];
    for (j, &x) in w.iter().enumerate() {
        if x == 0 {
            perm[j] = front;
            front += 1;
        } else {
            perm[j] = back;
            scales[back] = x;
            back += 1;
        }
    }
    MonomialMap::new(perm, scales).expect("valid by construction")
}

pub fn decompose(code: &Code, w: &[Elem]) -> Result<Decomposition> {
    let f = code.field();
    let (q, n) = (f.q(), code.n());
    if q == 2 {
        return Err(Error::BinaryFieldUnsupported);
    }
    let m = admissible_m(q, n).ok_or(Error::LengthNotAdmissible { q, n })?;
    if w.len() != n {
        return Err(Error::DimensionMismatch(format!("dual word of length {} for length {n}", w.len())));
    }
    let suffix_len = q.pow(m as u32 - 1);
    let wt = linalg::weight(w);
    if wt != suffix_len {
        return Err(Error::WrongWeight {
            expected: suffix_len,
            found: wt,
        });
    }
    if code.words().any(|c| linalg::dot(f, c, w) != 0) {
        return Err(Error::NotDualWord(word_to_string(q, w)));
    }
    let prefix_len = n - suffix_len;
    let map = canonicalizing_map(w);
    let image = code.monomial_image(&map)?;

    let mut by_suffix: HashMap<&[Elem], Vec<Elem>> = HashMap::new();
    let mut by_prefix: HashMap<&[Elem], Vec<Elem>> = HashMap::new();
    for word in image.words() {
        let (u, v) = word.split_at(prefix_len);
        debug_assert_eq!(v.iter().fold(0, |a, &x| f.add(a, x)), 0);
        by_suffix.entry(v).or_default().extend_from_slice(u);
        by_prefix.entry(u).or_default().extend_from_slice(v);
    }

    let mut inner = BTreeMap::new();
    for v in trivial_mds(q, suffix_len)?.words() {
        let data = by_suffix.remove(v.as_slice()).unwrap_or_default();
        inner.insert(v, Code::from_flat(f, prefix_len, data)?);
    }
    let mut outer = BTreeMap::new();
    for u in Code::full_space(f, prefix_len)?.words() {
        let data = by_prefix.remove(u).unwrap_or_default();
        outer.insert(u.to_vec(), Code::from_flat(f, suffix_len, data)?);
    }
    debug_assert!(by_suffix.is_empty() && by_prefix.is_empty());
    Ok(Decomposition {
        m,
        w: w.to_vec(),
        map,
        prefix_len,
        suffix_len,
        inner,
        outer,
    })
}

/// Outcome of checking both sides of the characterization of non-full-rank
/// perfect codes on one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Report {
    pub perfect: bool,
    pub rank: usize,
    pub n: usize,
    /// Dual word of weight `q^{m-1}` used for the split, if one exists.
    pub dual_word: Option<Vec<Elem>>,
    pub inner_codes: usize,
    pub inner_perfect: usize,
    pub outer_codes: usize,
    pub outer_ok: usize,
    /// First condition found violated, if any.
    pub defect: Option<String>,
}

impl Theorem2Report {
    pub fn non_full_rank_perfect(&self) -> bool {
        self.perfect && self.rank < self.n
    }

    pub fn conditions_hold(&self) -> bool {
        self.dual_word.is_some() && self.inner_perfect == self.inner_codes && self.outer_ok == self.outer_codes
    }

    /// Perfect of non-full rank implies the split conditions.
    pub fn forward_ok(&self) -> bool {
        !self.non_full_rank_perfect() || self.conditions_hold()
    }

    /// Split conditions imply a non-full-rank perfect code.
    pub fn converse_ok(&self) -> bool {
        !self.conditions_hold() || self.non_full_rank_perfect()
    }

    /// Both sides hold on this code.
    pub fn holds(&self) -> bool {
        self.non_full_rank_perfect() && self.conditions_hold()
    }
}

/// Lexicographically smallest nonzero word of `C^⊥` with the given weight.
pub fn find_dual_word(code: &Code, weight: usize) -> Option<Vec<Elem>> {
    code.orthogonal().words().skip(1).find(|w| linalg::weight(w) == weight)
}

pub fn check_theorem2(code: &Code) -> Result<Theorem2Report> {
    let f = code.field();
    let (q, n) = (f.q(), code.n());
    if q == 2 {
        return Err(Error::BinaryFieldUnsupported);
    }
    let m = admissible_m(q, n).ok_or(Error::LengthNotAdmissible { q, n })?;
    let perfect = is_perfect(code)?.is_perfect;
    let rank = code.rank();
    let suffix_len = q.pow(m as u32 - 1);
    let mut report = Theorem2Report {
        perfect,
        rank,
        n,
        dual_word: None,
        inner_codes: 0,
        inner_perfect: 0,
        outer_codes: 0,
        outer_ok: 0,
        defect: None,
    };
    let Some(w) = find_dual_word(code, suffix_len) else {
        report.defect = Some(format!("no dual word of weight {suffix_len}"));
        return Ok(report);
    };
    let dec = decompose(code, &w)?;
    report.dual_word = Some(w);

    let split = dec.check();
    report.inner_codes = split.inner_codes;
    report.inner_perfect = split.inner_perfect;
    report.outer_codes = split.outer_codes;
    report.outer_ok = split.outer_ok;
    report.defect = split.defect;
    Ok(report)
}
