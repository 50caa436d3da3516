//! The q-ary concatenation construction and the rank search over the
//! permutation matching the two partitions.
//!
//! Given a partition `P1` of `F_q^n` into 1-perfect codes, a partition `P2`
//! of `M_{q,(q-1)n+1}` into codes with parameters
//! `((q-1)n+1, q^{(q-1)n-m}, 3)`, and a permutation `α` of the part indices,
//! `C_α = {(u | v) : u ∈ P1_i, v ∈ P2_α(i)}` is 1-perfect of length `qn + 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use crate::codes::{checked_pow, Code, Partition};
use crate::constructions::{mds_partition, space_partition};
use crate::error::{Error, Result};
use crate::gf::{self, Elem};
use crate::linalg::{self, EchelonBasis, Matrix};
use crate::perfect::{admissible_m, coverage_defects};

/// A permutation of `{0, …, k-1}` given by its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma-separated image list `α(0),α(1),…`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(1, "empty permutation"));
        }
        let images = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::parse(1, format!("bad permutation entry {t:?}")));
                }
                t.parse::<usize>().map_err(|e| Error::parse(1, format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// Permutations `α` with `α(fixed) = image`, in lexicographic order.
pub fn pinned_permutations(k: usize, fixed: usize, image: usize) -> impl Iterator<Item = Permutation> {
    let rest: Vec<usize> = (0..k).filter(|&v| v != image).collect();
    rest.into_iter().permutations(k - 1).map(move |mut p| {
        p.insert(fixed, image);
        Permutation(p)
    })
}

#[derive(Clone, Debug)]
pub struct ConcatInput {
    pub p1: Partition,
    pub p2: Partition,
    pub alpha: Permutation,
}

/// Shape of a validated concatenation input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConcatShape {
    pub q: usize,
    /// Length of the `P1` codes.
    pub n: usize,
    pub m: usize,
    /// Number of parts, `(q-1)n + 1`; also the length of the `P2` codes.
    pub parts: usize,
}

impl ConcatShape {
    pub fn length(&self) -> usize {
        self.n + self.parts
    }

    /// `q^{qn + 1 - (m + 1)}`
    pub fn cardinality(&self) -> u128 {
        checked_pow(self.q, self.length() - self.m - 1).unwrap()
    }

    /// `(0^n | 1^{(q-1)n+1})`, orthogonal to every `C_α`.
    pub fn dual_word(&self) -> Vec<Elem> {
        let mut w = vec![0; self.length()];
        w[self.n..].fill(1);
        w
    }
}

impl ConcatInput {
    /// Checks every hypothesis of the construction.
    pub fn validate(&self) -> Result<ConcatShape> {
        let invalid = |m: String| Error::PartitionInvalid(m);
        let a1 = self.p1.ambient();
        let f = a1.field();
        let (q, n) = (f.q(), a1.n());
        let m = admissible_m(q, n).ok_or(Error::LengthNotAdmissible { q, n })?;
        let parts = (q - 1) * n + 1;
        for (what, got) in [("P1", self.p1.len()), ("P2", self.p2.len()), ("alpha", self.alpha.len())] {
            if got != parts {
                return Err(Error::SizeMismatch(format!("{what} has {got} entries, expected {parts}")));
            }
        }
        if a1.len() as u128 != checked_pow(q, n).unwrap() {
            return Err(invalid(format!("P1 covers {} vectors, not all of F_{q}^{n}", a1.len())));
        }
        let perfect_size = checked_pow(q, n - m).unwrap() as usize;
        for (i, part) in self.p1.parts().iter().enumerate() {
            if part.len() != perfect_size || coverage_defects(part) != 0 {
                return Err(invalid(format!("P1 part {i} is not a 1-perfect code")));
            }
        }

        let a2 = self.p2.ambient();
        if a2.field() != f || a2.n() != parts {
            return Err(invalid(format!("P2 must partition a length-{parts} code over GF({q})")));
        }
        let zero_sum = |w: &[Elem]| w.iter().fold(0, |acc, &x| f.add(acc, x)) == 0;
        if a2.len() as u128 != checked_pow(q, parts - 1).unwrap() || !a2.words().all(zero_sum) {
            return Err(invalid(format!("P2 does not cover the trivial MDS code of length {parts}")));
        }
        let inner_size = checked_pow(q, parts - 1 - m).unwrap() as usize;
        for (i, part) in self.p2.parts().iter().enumerate() {
            if part.len() != inner_size {
                return Err(invalid(format!("P2 part {i} has {} words, expected {inner_size}", part.len())));
            }
            if part.len() >= 2 && part.min_distance()? < 3 {
                return Err(invalid(format!("P2 part {i} has minimum distance below 3")));
            }
        }
        Ok(ConcatShape { q, n, m, parts })
    }

    /// Whether `(u | v)` lies in `C_α`, without assembling the code.
    pub fn contains(&self, word: &[Elem]) -> bool {
        let n = self.p1.ambient().n();
        if word.len() != n + self.p2.ambient().n() {
            return false;
        }
        let (u, v) = word.split_at(n);
        match (self.p1.part_index(u), self.p2.part_index(v)) {
            (Some(i), Some(j)) => self.alpha.apply(i) == j,
            _ => false,
        }
    }
}

/// Assembles `C_α` after validating the input.
pub fn concatenate(input: &ConcatInput) -> Result<Code> {
    let shape = input.validate()?;
    let len = shape.length();
    let mut data = Vec::with_capacity(shape.cardinality() as usize * len);
    for (i, left) in input.p1.parts().iter().enumerate() {
        let right = input.p2.part(input.alpha.apply(i));
        for u in left.words() {
            for v in right.words() {
                data.extend_from_slice(u);
                data.extend_from_slice(v);
            }
        }
    }
    let code = Code::from_flat(input.p1.ambient().field(), len, data)?;
    if code.len() as u128 != shape.cardinality() {
        return Err(Error::SizeMismatch(format!("C_α has {} words, expected {}", code.len(), shape.cardinality())));
    }
    Ok(code)
}

/// Rank of `C_α` from generators instead of codewords: the span of `C_α` is
/// spanned by the within-part differences `(u - a_i | 0)` and `(0 | v - b_j)`,
/// which do not depend on `α`, plus one concatenated representative
/// `(a_i | b_α(i))` per part.
#[derive(Clone, Debug)]
pub struct RankEngine {
    base: EchelonBasis,
    left_reps: Vec<Vec<Elem>>,
    right_reps: Vec<Vec<Elem>>,
    left_zero: Option<usize>,
    right_zero: Option<usize>,
}

impl RankEngine {
    pub fn new(p1: &Partition, p2: &Partition) -> Result<Self> {
        let f = p1.ambient().field();
        if p2.ambient().field() != f || p1.len() != p2.len() {
            return Err(Error::SizeMismatch("partitions differ in field or part count".into()));
        }
        let (n1, n2) = (p1.ambient().n(), p2.ambient().n());
        let mut base = EchelonBasis::new(f, n1 + n2);
        let mut padded = vec![0; n1 + n2];
        for part in p1.parts() {
            let rep = part.word(0);
            for u in part.words().skip(1) {
                padded[..n1].copy_from_slice(&linalg::sub(f, u, rep));
                base.insert(&padded);
            }
        }
        padded.fill(0);
        for part in p2.parts() {
            let rep = part.word(0);
            for v in part.words().skip(1) {
                padded[n1..].copy_from_slice(&linalg::sub(f, v, rep));
                base.insert(&padded);
            }
        }
        let zeros = |p: &Partition| p.part_index(&vec![0; p.ambient().n()]);
        Ok(RankEngine {
            base,
            left_reps: p1.representatives().into_iter().map(<[Elem]>::to_vec).collect(),
            right_reps: p2.representatives().into_iter().map(<[Elem]>::to_vec).collect(),
            left_zero: zeros(p1),
            right_zero: zeros(p2),
        })
    }

    /// Dimension of the `α`-independent part of the span.
    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn parts(&self) -> usize {
        self.left_reps.len()
    }

    /// Indices of the parts holding the zero word, if both exist.
    pub fn zero_parts(&self) -> Option<(usize, usize)> {
        self.left_zero.zip(self.right_zero)
    }

    pub fn rank(&self, alpha: &Permutation) -> Result<usize> {
        if alpha.len() != self.parts() {
            return Err(Error::SizeMismatch(format!("alpha has {} entries, expected {}", alpha.len(), self.parts())));
        }
        match self.zero_parts() {
            Some((z1, z2)) if alpha.apply(z1) == z2 => {}
            _ => return Err(Error::ZeroNotInCode),
        }
        let mut basis = self.base.clone();
        for (i, a) in self.left_reps.iter().enumerate() {
            if basis.is_full() {
                break;
            }
            let mut g = a.clone();
            g.extend_from_slice(&self.right_reps[alpha.apply(i)]);
            basis.insert(&g);
        }
        Ok(basis.dim())
    }

    /// Zero-aligned permutations in lexicographic order.
    pub fn candidates(&self) -> Result<impl Iterator<Item = Permutation>> {
        let (z1, z2) = self.zero_parts().ok_or(Error::ZeroNotInCode)?;
        Ok(pinned_permutations(self.parts(), z1, z2))
    }

    /// Rank of every zero-aligned permutation. The merge is sequential in
    /// lexicographic order, so the result does not depend on thread count.
    pub fn survey(&self) -> Result<RankSurvey> {
        let perms: Vec<Permutation> = self.candidates()?.collect();
        let ranks: Vec<usize> = perms.par_iter().map(|a| self.rank(a)).collect::<Result<_>>()?;
        let mut survey = RankSurvey::default();
        for (alpha, rank) in perms.into_iter().zip(ranks) {
            *survey.counts.entry(rank).or_default() += 1;
            survey.witnesses.entry(rank).or_insert(alpha);
            survey.examined += 1;
        }
        Ok(survey)
    }

    /// First zero-aligned permutation, in lexicographic order, of the given rank.
    pub fn first_with_rank(&self, target: usize) -> Result<Option<Permutation>> {
        for alpha in self.candidates()? {
            if self.rank(&alpha)? == target {
                return Ok(Some(alpha));
            }
        }
        Ok(None)
    }
}

pub fn rank_of_alpha(input: &ConcatInput) -> Result<usize> {
    RankEngine::new(&input.p1, &input.p2)?.rank(&input.alpha)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankSurvey {
    pub counts: BTreeMap<usize, u64>,
    /// Lexicographically first permutation reaching each rank.
    pub witnesses: BTreeMap<usize, Permutation>,
    pub examined: u64,
}

impl RankSurvey {
    pub fn max_rank(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }
}

/// The coset partitions for `(q, m)`: Hamming-code cosets of `F_q^n` and
/// cosets of the extracted `[q^m, q^m - m - 1, 3]` code inside `M_{q,q^m}`.
pub fn standard_partitions(q: usize, m: usize) -> Result<(Partition, Partition)> {
    Ok((space_partition(q, m)?, mds_partition(q, m)?))
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub alpha: Permutation,
    pub rank: usize,
    pub code: Code,
    pub input: ConcatInput,
}

/// Finds the lexicographically first zero-aligned `α` whose `C_α` has rank
/// `qn`, one short of full rank, and assembles that code. For `(3, 2)` this
/// is a ternary perfect code of length 13 and rank 12.
pub fn search_rank12(q: usize, m: usize) -> Result<Witness> {
    let (p1, p2) = standard_partitions(q, m)?;
    let engine = RankEngine::new(&p1, &p2)?;
    let target = q * p1.ambient().n();
    let alpha = engine.first_with_rank(target)?.ok_or(Error::NotFound(target))?;
    let input = ConcatInput { p1, p2, alpha };
    let code = concatenate(&input)?;
    Ok(Witness {
        alpha: input.alpha.clone(),
        rank: target,
        code,
        input,
    })
}

pub fn sweep(q: usize, m: usize) -> Result<RankSurvey> {
    let (p1, p2) = standard_partitions(q, m)?;
    RankEngine::new(&p1, &p2)?.survey()
}

const PUBLISHED_VECTORS: [&str; 12] = [
    "0001120000000",
    "0002102000000",
    "0010100200000",
    "0020100020000",
    "0100100002000",
    "0200100000200",
    "1000100000020",
    "2000100000002",
    "0000000111000",
    "0000001010100",
    "0000010010010",
    "0000000012021",
];

/// The twelve ternary length-13 vectors published as independent codewords
/// of a rank-12 concatenated code.
pub fn published_vectors() -> Matrix {
    let rows = PUBLISHED_VECTORS.iter().map(|s| s.bytes().map(|b| b - b'0').collect()).collect();
    Matrix::new(gf::field(3).expect("GF(3)"), 13, rows).expect("fixed table")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublishedVectorCheck {
    pub span_dim: usize,
    pub orthogonal_to_w: bool,
    /// `(P1 index of u, P2 index of v)` per vector.
    pub pairs: Vec<(Option<usize>, Option<usize>)>,
    /// A zero-aligned permutation placing every vector in `C_α`, if the
    /// pairs are consistent with one.
    pub alpha: Option<Permutation>,
    pub alpha_rank: Option<usize>,
}

/// Independence and dual-orthogonality of the published vectors, plus
/// whether the given labeling admits a single `α` containing all of them.
pub fn check_published_vectors(p1: &Partition, p2: &Partition) -> Result<PublishedVectorCheck> {
    let vectors = published_vectors();
    let f = vectors.field();
    let n1 = p1.ambient().n();
    let span_dim = vectors.rank();
    let mut w = vec![0; vectors.ncols()];
    w[n1..].fill(1);
    let orthogonal_to_w = vectors.rows().iter().all(|r| linalg::dot(f, r, &w) == 0);
    let pairs: Vec<_> = vectors
        .rows()
        .iter()
        .map(|r| {
            let (u, v) = r.split_at(n1);
            (p1.part_index(u), p2.part_index(v))
        })
        .collect();

    let engine = RankEngine::new(p1, p2)?;
    let k = p1.len();
    let mut forced: Vec<Option<usize>> = vec![None; k];
    let mut consistent = true;
    let zero_pair = engine.zero_parts().map(|(a, b)| (Some(a), Some(b)));
    for &(i, j) in pairs.iter().chain(zero_pair.iter()) {
        let (Some(i), Some(j)) = (i, j) else {
            consistent = false;
            break;
        };
        match forced[i] {
            Some(prev) if prev != j => consistent = false,
            _ => forced[i] = Some(j),
        }
    }
    let used: Vec<usize> = forced.iter().flatten().copied().collect();
    consistent &= used.iter().all_unique();
    let alpha = consistent.then(|| {
        let mut free = (0..k).filter(|j| !used.contains(j));
        let images = forced.iter().map(|x| x.unwrap_or_else(|| free.next().unwrap())).collect();
        Permutation(images)
    });
    let alpha_rank = alpha.as_ref().map(|a| engine.rank(a)).transpose()?;
    Ok(PublishedVectorCheck {
        span_dim,
        orthogonal_to_w,
        pairs,
        alpha,
        alpha_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfect::is_perfect;

    #[test]
    fn permutation_parse_and_display() {
        let p: Permutation = "0,2,1".parse().unwrap();
        assert_eq!(p.images(), &[0, 2, 1]);
        assert_eq!(p.to_string(), "0,2,1");
        assert!("0,0,1".parse::<Permutation>().is_err());
        assert!("0,3,1".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("0,,1".parse::<Permutation>().is_err());
        assert!("0,-1".parse::<Permutation>().is_err());
    }

    #[test]
    fn pinned_permutations_are_ordered() {
        let all: Vec<_> = pinned_permutations(4, 1, 2).collect();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|p| p.apply(1) == 2));
        assert_eq!(pinned_permutations(9, 0, 0).count(), 40320);
    }

    #[test]
    fn small_concatenation_is_perfect() {
        let (p1, p2) = standard_partitions(3, 2).unwrap();
        let input = ConcatInput {
            p1,
            p2,
            alpha: Permutation::identity(9),
        };
        let shape = input.validate().unwrap();
        assert_eq!((shape.length(), shape.cardinality()), (13, 59049));
        let code = concatenate(&input).unwrap();
        assert_eq!(code.len(), 59049);
        assert!(is_perfect(&code).unwrap().is_perfect);
        for w in code.words().step_by(97) {
            assert!(input.contains(w));
        }
    }

    #[test]
    fn rejects_misaligned_zero() {
        let (p1, p2) = standard_partitions(3, 2).unwrap();
        let alpha: Permutation = "1,0,2,3,4,5,6,7,8".parse().unwrap();
        let input = ConcatInput { p1, p2, alpha };
        assert!(matches!(rank_of_alpha(&input), Err(Error::ZeroNotInCode)));
    }

    #[test]
    fn rejects_wrong_sizes() {
        let (p1, p2) = standard_partitions(3, 2).unwrap();
        let input = ConcatInput {
            p1,
            p2,
            alpha: Permutation::identity(8),
        };
        assert!(matches!(concatenate(&input), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn engine_base_dimension() {
        let (p1, p2) = standard_partitions(3, 2).unwrap();
        let e = RankEngine::new(&p1, &p2).unwrap();
        // Hamming(3,2) has dimension 2, the [9,6,3] code dimension 6
        assert_eq!(e.base_dim(), 8);
        assert_eq!(e.zero_parts(), Some((0, 0)));
    }

    #[test]
    fn published_vector_table() {
        let v = published_vectors();
        assert_eq!((v.nrows(), v.ncols()), (12, 13));
        assert_eq!(v.row(0), &[0, 0, 0, 1, 1, 2, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(linalg::weight(v.row(0)), 3);
    }
}
