//! JSON reports written by the command-line tool. Keys are emitted in
//! sorted order so reports can be compared byte for byte.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::codes::{Code, MAX_WORDS};
use crate::concat::{PublishedVectorCheck, RankSurvey, Witness};
use crate::error::{Error, Result};
use crate::perfect::{self, check_theorem2, is_perfect, theorem1_check, Method, PerfectReport};

/// Pretty JSON with lexicographically sorted object keys.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    // serde_json's default map is ordered, so a round trip through Value sorts keys
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

fn histogram_keys(h: BTreeMap<usize, u64>) -> BTreeMap<String, u64> {
    h.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub perfect: bool,
    pub method: Method,
    pub rank: usize,
    pub dual_weight_histogram: Option<BTreeMap<String, u64>>,
    pub theorem1_ok: bool,
    /// `None` over GF(2), where the split is not defined.
    pub theorem2_ok: Option<bool>,
    pub defect_count: Option<u64>,
}

/// Dual weight histogram, when the dual is small enough to enumerate.
pub fn dual_histogram(code: &Code) -> Option<BTreeMap<usize, u64>> {
    let dual = code.orthogonal();
    dual.cardinality()
        .filter(|&c| c <= MAX_WORDS)
        .map(|_| dual.weight_distribution().histogram())
}

pub fn verify(code: &Code) -> Result<VerificationReport> {
    let PerfectReport {
        is_perfect: perfect,
        coverage_defects,
        method,
        ..
    } = is_perfect(code)?;
    let theorem1_ok = match theorem1_check(code) {
        Ok(t) => t.ok,
        Err(Error::NotPerfect) => false,
        Err(e) => return Err(e),
    };
    let theorem2_ok = match check_theorem2(code) {
        Ok(r) => Some(r.holds()),
        Err(Error::BinaryFieldUnsupported) => None,
        Err(e) => return Err(e),
    };
    Ok(VerificationReport {
        perfect,
        method,
        rank: code.rank(),
        dual_weight_histogram: dual_histogram(code).map(histogram_keys),
        theorem1_ok,
        theorem2_ok,
        defect_count: coverage_defects,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub counts: BTreeMap<String, u64>,
    pub witnesses: BTreeMap<String, String>,
    pub examined: u64,
    pub max_rank: Option<usize>,
}

impl From<&RankSurvey> for SweepReport {
    fn from(s: &RankSurvey) -> Self {
        SweepReport {
            counts: s.counts.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            witnesses: s.witnesses.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            examined: s.examined,
            max_rank: s.max_rank(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PublishedVectorReport {
    pub span_dim: usize,
    pub independent: bool,
    pub orthogonal_to_w: bool,
    /// Permutation under this crate's coset labeling containing all of
    /// them, if any.
    pub alpha: Option<String>,
    pub alpha_rank: Option<usize>,
}

impl From<&PublishedVectorCheck> for PublishedVectorReport {
    fn from(c: &PublishedVectorCheck) -> Self {
        PublishedVectorReport {
            span_dim: c.span_dim,
            independent: c.span_dim == 12,
            orthogonal_to_w: c.orthogonal_to_w,
            alpha: c.alpha.as_ref().map(ToString::to_string),
            alpha_rank: c.alpha_rank,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ternary13Report {
    pub alpha: String,
    pub perfect: bool,
    pub method: Method,
    pub defect_count: Option<u64>,
    pub rank: usize,
    pub dual_weight_histogram: BTreeMap<String, u64>,
    pub theorem1_ok: bool,
    pub published_vectors: PublishedVectorReport,
}

pub fn ternary13(witness: &Witness, vectors: &PublishedVectorCheck) -> Result<Ternary13Report> {
    let p = perfect::is_perfect(&witness.code)?;
    let t1 = theorem1_check(&witness.code)?;
    Ok(Ternary13Report {
        alpha: witness.alpha.to_string(),
        perfect: p.is_perfect,
        method: p.method,
        defect_count: p.coverage_defects,
        rank: witness.code.rank(),
        dual_weight_histogram: histogram_keys(t1.distribution.histogram()),
        theorem1_ok: t1.ok,
        published_vectors: vectors.into(),
    })
}
