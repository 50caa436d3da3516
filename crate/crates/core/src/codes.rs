//! Explicit codes, linear codes, and coset partitions.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{self, EchelonBasis, Matrix, MonomialMap};

/// Largest code the crate will materialize word by word.
pub const MAX_WORDS: u128 = 1 << 24;

/// Above this many ambient vectors, membership falls back to hashing.
const BITMAP_LIMIT: u128 = 1 << 28;

/// Pairwise distance scan is used below this cardinality.
const PAIRWISE_LIMIT: usize = 2048;

/// Digits for q <= 10, comma-separated indices otherwise.
pub fn word_to_string(q: usize, w: &[Elem]) -> String {
    if q <= 10 {
        w.iter().map(|&x| char::from(b'0' + x)).collect()
    } else {
        w.iter().join(",")
    }
}

/// Radix-q index of a word, first coordinate most significant.
#[inline]
pub fn radix_index(q: usize, w: &[Elem]) -> u64 {
    w.iter().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub(crate) fn checked_pow(q: usize, n: usize) -> Option<u128> {
    (q as u128).checked_pow(n as u32)
}

/// Finite set of length-`n` vectors over a field, kept sorted and distinct.
#[derive(Clone)]
pub struct Code {
    field: &'static Field,
    n: usize,
    data: Vec<Elem>,
    rank: OnceLock<usize>,
    min_distance: OnceLock<usize>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.data == other.data
    }
}

impl Eq for Code {}

impl std::fmt::Debug for Code {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Code(q={}, n={}, |C|={})", self.field.q(), self.n, self.len())
    }
}

impl Code {
    pub fn new(field: &'static Field, n: usize, words: impl IntoIterator<Item = Vec<Elem>>) -> Result<Self> {
        let mut data = Vec::new();
        for w in words {
            data.extend_from_slice(&w);
            if w.len() != n {
                return Err(Error::DimensionMismatch(format!("word of length {} in a length-{n} code", w.len())));
            }
        }
        Self::from_flat(field, n, data)
    }

    /// Builds a code from concatenated words in any order.
    pub fn from_flat(field: &'static Field, n: usize, data: Vec<Elem>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("code length must be positive".into()));
        }
        if !data.len().is_multiple_of(n) {
            return Err(Error::DimensionMismatch(format!("{} entries is not a multiple of {n}", data.len())));
        }
        if let Some(&x) = data.iter().find(|&&x| x as usize >= field.q()) {
            return Err(Error::InvalidParameter(format!("entry {x} outside GF({})", field.q())));
        }
        let sorted = data.chunks_exact(n).is_sorted_by(|a, b| a < b);
        let data = if sorted {
            data
        } else {
            let mut words: Vec<&[Elem]> = data.chunks_exact(n).collect();
            words.sort_unstable();
            if let Some((a, _)) = words.iter().tuple_windows().find(|(a, b)| a == b) {
                return Err(Error::DuplicateWord(word_to_string(field.q(), a)));
            }
            words.concat()
        };
        Ok(Self::from_sorted_unchecked(field, n, data))
    }

    pub(crate) fn from_sorted_unchecked(field: &'static Field, n: usize, data: Vec<Elem>) -> Self {
        debug_assert!(data.chunks_exact(n).is_sorted_by(|a, b| a < b));
        Code {
            field,
            n,
            data,
            rank: OnceLock::new(),
            min_distance: OnceLock::new(),
        }
    }

    /// All of `F_q^n`, in lexicographic order.
    pub fn full_space(field: &'static Field, n: usize) -> Result<Self> {
        let total = checked_pow(field.q(), n).filter(|&t| t <= MAX_WORDS).ok_or(Error::TooLarge(u128::MAX))?;
        let q = field.q();
        let mut data = Vec::with_capacity(total as usize * n);
        let mut w = vec![0 as Elem; n];
        for _ in 0..total {
            data.extend_from_slice(&w);
            for d in w.iter_mut().rev() {
                if (*d as usize) + 1 < q {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
        }
        Ok(Self::from_sorted_unchecked(field, n, data))
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.data.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn words(&self) -> std::slice::ChunksExact<'_, Elem> {
        self.data.chunks_exact(self.n)
    }

    pub fn word(&self, i: usize) -> &[Elem] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_flat(&self) -> &[Elem] {
        &self.data
    }

    pub fn index_of(&self, w: &[Elem]) -> Option<usize> {
        if w.len() != self.n {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.word(mid).cmp(w) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, w: &[Elem]) -> bool {
        self.index_of(w).is_some()
    }

    pub fn contains_zero(&self) -> bool {
        // zero is the lexicographically smallest vector
        !self.is_empty() && self.word(0).iter().all(|&x| x == 0)
    }

    pub fn word_set(&self) -> WordSet {
        WordSet::build(self)
    }

    pub fn span_basis(&self) -> EchelonBasis {
        let mut b = EchelonBasis::new(self.field, self.n);
        for w in self.words() {
            if b.is_full() {
                break;
            }
            b.insert(w);
        }
        b
    }

    /// Dimension of the linear span of the codewords.
    pub fn rank(&self) -> usize {
        *self.rank.get_or_init(|| self.span_basis().dim())
    }

    /// A code is linear iff it holds 0 and as many words as its span.
    pub fn is_linear(&self) -> bool {
        self.contains_zero() && checked_pow(self.field.q(), self.rank()) == Some(self.len() as u128)
    }

    pub fn weight_distribution(&self) -> WeightDistribution {
        WeightDistribution::of(self.n, self.words())
    }

    pub fn min_distance(&self) -> Result<usize> {
        if self.len() < 2 {
            return Err(Error::TooSmall(self.len()));
        }
        Ok(*self.min_distance.get_or_init(|| {
            if self.is_linear() {
                self.words().map(linalg::weight).filter(|&w| w > 0).min().unwrap()
            } else if self.len() <= PAIRWISE_LIMIT {
                pairwise_min(self, 1)
            } else {
                sphere_min_distance(self)
            }
        }))
    }

    /// Dual of the linear span; dimension `n - rank`.
    pub fn orthogonal(&self) -> LinearCode {
        let span = self.span_basis().to_rref();
        LinearCode::from_parity_check(span)
    }

    pub fn translate(&self, v: &[Elem]) -> Result<Code> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!("translation of length {} for length {}", v.len(), self.n)));
        }
        let f = self.field;
        let data = self.words().flat_map(|w| linalg::add(f, w, v)).collect();
        Code::from_flat(f, self.n, data)
    }

    pub fn monomial_image(&self, map: &MonomialMap) -> Result<Code> {
        if map.len() != self.n {
            return Err(Error::DimensionMismatch(format!("monomial map of length {} for length {}", map.len(), self.n)));
        }
        let data = self.words().flat_map(|w| map.apply(self.field, w)).collect();
        Code::from_flat(self.field, self.n, data)
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows_unchecked(self.field, self.n, self.words().map(<[Elem]>::to_vec).collect())
    }
}

fn pairwise_min(code: &Code, lower_bound: usize) -> usize {
    let mut best = usize::MAX;
    for (i, a) in code.words().enumerate() {
        for b in code.words().skip(i + 1) {
            let d = linalg::distance(a, b);
            if d < best {
                best = d;
                if best <= lower_bound {
                    return best;
                }
            }
        }
    }
    best
}

/// Looks for codewords at exact distance t = 1, 2, ... around each word,
/// switching to a pairwise scan once that is the cheaper remaining option.
fn sphere_min_distance(code: &Code) -> usize {
    let set = code.word_set();
    let (n, q) = (code.n(), code.field().q());
    let f = code.field();
    let pairwise_cost = (code.len() as u128).pow(2) / 2;
    let mut buf = vec![0; n];
    for t in 1..=n {
        let shell = binomial(n, t) * ((q - 1) as u128).pow(t as u32);
        if shell.saturating_mul(code.len() as u128) > pairwise_cost {
            return pairwise_min(code, t);
        }
        for w in code.words() {
            buf.copy_from_slice(w);
            for support in (0..n).combinations(t) {
                if shell_hit(f, &set, &mut buf, w, &support) {
                    return t;
                }
            }
        }
    }
    unreachable!("two distinct words differ somewhere")
}

/// Tries every nonzero offset on `support`; `buf` is restored on return.
fn shell_hit(f: &Field, set: &WordSet, buf: &mut [Elem], base: &[Elem], support: &[usize]) -> bool {
    let Some((&first, rest)) = support.split_first() else {
        return set.contains(buf);
    };
    for delta in f.nonzero() {
        buf[first] = f.add(base[first], delta);
        if shell_hit(f, set, buf, base, rest) {
            buf[first] = base[first];
            return true;
        }
    }
    buf[first] = base[first];
    false
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Constant-time membership for a fixed code.
pub enum WordSet {
    Bitmap { q: usize, bits: Vec<u64> },
    Hashed(HashSet<Vec<Elem>>),
}

impl WordSet {
    pub fn build(code: &Code) -> Self {
        let q = code.field().q();
        match checked_pow(q, code.n()).filter(|&t| t <= BITMAP_LIMIT) {
            Some(total) => {
                let mut bits = vec![0u64; (total as usize).div_ceil(64)];
                for w in code.words() {
                    let i = radix_index(q, w) as usize;
                    bits[i / 64] |= 1 << (i % 64);
                }
                WordSet::Bitmap { q, bits }
            }
            None => WordSet::Hashed(code.words().map(<[Elem]>::to_vec).collect()),
        }
    }

    #[inline]
    pub fn contains(&self, w: &[Elem]) -> bool {
        match self {
            WordSet::Bitmap { q, bits } => {
                let i = radix_index(*q, w) as usize;
                bits[i / 64] >> (i % 64) & 1 == 1
            }
            WordSet::Hashed(set) => set.contains(w),
        }
    }
}

/// Counts `B_0..B_n` of words by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn of<'a>(n: usize, words: impl IntoIterator<Item = &'a [Elem]>) -> Self {
        let mut counts = vec![0u64; n + 1];
        for w in words {
            counts[linalg::weight(w)] += 1;
        }
        WeightDistribution { counts }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        WeightDistribution { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Nonzero entries only, keyed by weight.
    pub fn histogram(&self) -> BTreeMap<usize, u64> {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c)).collect()
    }
}

/// A linear code held by its RREF generator matrix and parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
    parity_check: Matrix,
}

impl LinearCode {
    /// Row space of `g`; dependent rows are dropped.
    pub fn from_generator(g: Matrix) -> Self {
        let (generator, _) = g.rref();
        let parity_check = generator.kernel();
        LinearCode { generator, parity_check }
    }

    /// Kernel of `h`.
    pub fn from_parity_check(h: Matrix) -> Self {
        let generator = h.kernel();
        let (parity_check, _) = h.rref();
        LinearCode { generator, parity_check }
    }

    pub fn field(&self) -> &'static Field {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.ncols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    pub fn cardinality(&self) -> Option<u128> {
        checked_pow(self.field().q(), self.dimension())
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.length() && self.parity_check.mul_vec(v).iter().all(|&x| x == 0)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
        }
    }

    /// Words in lexicographic order. With an RREF generator the word order
    /// follows the coefficient order, most significant coefficient first.
    pub fn words(&self) -> LinearWords<'_> {
        LinearWords {
            code: self,
            coeffs: vec![0; self.dimension()],
            done: false,
        }
    }

    pub fn to_code(&self) -> Result<Code> {
        let total = self.cardinality().filter(|&t| t <= MAX_WORDS).ok_or(Error::TooLarge(
            self.cardinality().unwrap_or(u128::MAX),
        ))?;
        let mut data = Vec::with_capacity(total as usize * self.length());
        for w in self.words() {
            data.extend_from_slice(&w);
        }
        Ok(Code::from_sorted_unchecked(self.field(), self.length(), data))
    }

    pub fn weight_distribution(&self) -> WeightDistribution {
        let mut counts = vec![0u64; self.length() + 1];
        for w in self.words() {
            counts[linalg::weight(&w)] += 1;
        }
        WeightDistribution { counts }
    }

    /// Minimum nonzero weight; `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        self.words().map(|w| linalg::weight(&w)).filter(|&w| w > 0).min()
    }
}

pub struct LinearWords<'a> {
    code: &'a LinearCode,
    coeffs: Vec<usize>,
    done: bool,
}

impl Iterator for LinearWords<'_> {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.done {
            return None;
        }
        let f = self.code.field();
        let mut w = vec![0; self.code.length()];
        for (&c, row) in self.coeffs.iter().zip(self.code.generator.rows()) {
            if c != 0 {
                for (x, &g) in w.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(c as Elem, g));
                }
            }
        }
        self.done = true;
        for c in self.coeffs.iter_mut().rev() {
            if *c + 1 < f.q() {
                *c += 1;
                self.done = false;
                break;
            }
            *c = 0;
        }
        Some(w)
    }
}

/// Disjoint codes covering an ambient code; part 0 holds the zero word
/// whenever the ambient code does.
#[derive(Clone, Debug)]
pub struct Partition {
    ambient: Code,
    parts: Vec<Code>,
    part_of: Vec<u32>,
}

impl Partition {
    pub fn new(ambient: Code, parts: Vec<Code>) -> Result<Self> {
        let invalid = |m: String| Error::PartitionInvalid(m);
        let mut part_of = vec![u32::MAX; ambient.len()];
        for (i, part) in parts.iter().enumerate() {
            if part.field() != ambient.field() || part.n() != ambient.n() {
                return Err(invalid(format!("part {i} has a different field or length")));
            }
            for w in part.words() {
                let q = ambient.field().q();
                let idx = ambient.index_of(w).ok_or_else(|| {
                    invalid(format!("part {i} word {} is outside the ambient code", word_to_string(q, w)))
                })?;
                if part_of[idx] != u32::MAX {
                    return Err(invalid(format!(
                        "word {} lies in parts {} and {i}",
                        word_to_string(q, w),
                        part_of[idx]
                    )));
                }
                part_of[idx] = i as u32;
            }
        }
        if let Some(idx) = part_of.iter().position(|&p| p == u32::MAX) {
            return Err(invalid(format!(
                "word {} is not covered",
                word_to_string(ambient.field().q(), ambient.word(idx))
            )));
        }
        if ambient.contains_zero() && part_of[0] != 0 {
            return Err(invalid(format!("zero word lies in part {} instead of part 0", part_of[0])));
        }
        Ok(Partition { ambient, parts, part_of })
    }

    /// Partition of the union of `parts`.
    pub fn from_parts(parts: Vec<Code>) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::PartitionInvalid("no parts".into()))?;
        let (field, n) = (first.field(), first.n());
        if parts.iter().any(|p| p.field() != field || p.n() != n) {
            return Err(Error::PartitionInvalid("parts differ in field or length".into()));
        }
        let data = parts.iter().flat_map(|p| p.as_flat().iter().copied()).collect();
        let ambient = Code::from_flat(field, n, data).map_err(|e| match e {
            Error::DuplicateWord(w) => Error::PartitionInvalid(format!("word {w} lies in two parts")),
            e => e,
        })?;
        Self::new(ambient, parts)
    }

    pub fn ambient(&self) -> &Code {
        &self.ambient
    }

    pub fn parts(&self) -> &[Code] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &Code {
        &self.parts[i]
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_index(&self, w: &[Elem]) -> Option<usize> {
        self.ambient.index_of(w).map(|i| self.part_of[i] as usize)
    }

    /// Lexicographically smallest member of each part.
    pub fn representatives(&self) -> Vec<&[Elem]> {
        self.parts.iter().map(|p| p.word(0)).collect()
    }
}

/// Splits `ambient` into cosets of `sub`, ordered by their smallest member.
pub fn coset_partition(ambient: &Code, sub: &LinearCode) -> Result<Partition> {
    if sub.field() != ambient.field() || sub.length() != ambient.n() {
        return Err(Error::DimensionMismatch("subcode and ambient differ in field or length".into()));
    }
    let f = ambient.field();
    let q = f.q();
    let sub_words = sub.to_code()?;
    if let Some(w) = sub_words.words().find(|w| !ambient.contains(w)) {
        return Err(Error::NotSubcode(word_to_string(q, w)));
    }
    let mut assigned = vec![false; ambient.len()];
    let mut parts = Vec::with_capacity(ambient.len() / sub_words.len());
    for start in 0..ambient.len() {
        if assigned[start] {
            continue;
        }
        let rep = ambient.word(start);
        let mut coset = Vec::with_capacity(sub_words.as_flat().len());
        for l in sub_words.words() {
            let w = linalg::add(f, rep, l);
            let idx = ambient.index_of(&w).ok_or_else(|| Error::NotCosetClosed(word_to_string(q, &w)))?;
            assigned[idx] = true;
            coset.extend_from_slice(&w);
        }
        parts.push(Code::from_flat(f, ambient.n(), coset)?);
    }
    Partition::new(ambient.clone(), parts)
}
