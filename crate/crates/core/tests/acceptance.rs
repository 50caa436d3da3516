//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qperfect::codes::Code;
use qperfect::concat::{
    check_published_vectors, concatenate, rank_of_alpha, search_rank12, standard_partitions, sweep, ConcatInput,
    Permutation,
};
use qperfect::constructions::{extract_cpp, hamming_code, mds_partition, simplex_code, space_partition, trivial_mds};
use qperfect::format::{parse_code, write_code};
use qperfect::gf::Elem;
use qperfect::linalg;
use qperfect::perfect::{
    char_sum, coverage_defects, decompose, is_perfect, radius_one_sphere, sphere_char_value, theorem1_check, Method,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every vector of `F_q^n` in radix order.
fn all_vectors(q: usize, n: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = q.pow(n as u32);
    (0..total).map(move |mut i| {
        let mut v = vec![0; n];
        for x in v.iter_mut().rev() {
            *x = (i % q) as Elem;
            i /= q;
        }
        v
    })
}

/// Independent coverage oracle: number of vectors whose radius-1 ball does
/// not meet the code in exactly one word, by direct membership lookups.
fn oracle_defects(code: &Code) -> u64 {
    let q = code.field().q();
    let n = code.n();
    let set: HashSet<&[Elem]> = code.words().collect();
    let mut defects = 0;
    for v in all_vectors(q, n) {
        let mut hits = usize::from(set.contains(v.as_slice()));
        let mut u = v.clone();
        for i in 0..n {
            for a in 0..q as Elem {
                if a != v[i] {
                    u[i] = a;
                    hits += usize::from(set.contains(u.as_slice()));
                }
            }
            u[i] = v[i];
        }
        if hits != 1 {
            defects += 1;
        }
    }
    defects
}

/// Integer-only dual weight distribution from a generator matrix, by
/// enumerating all coefficient vectors.
fn oracle_span_weights(q: usize, rows: &[Vec<Elem>], n: usize) -> Vec<u64> {
    let f = qperfect::gf::field(q).unwrap();
    let mut counts = vec![0u64; n + 1];
    for coeffs in all_vectors(q, rows.len()) {
        let mut v = vec![0; n];
        for (c, r) in coeffs.iter().zip(rows) {
            v = linalg::add(f, &v, &linalg::scale(f, *c, r));
        }
        counts[linalg::weight(&v)] += 1;
    }
    counts
}

fn roundtrip(code: &Code) -> Result<(), String> {
    let first = write_code(code);
    let back = parse_code(&first).map_err(|e| e.to_string())?;
    ensure!(&back == code, "parsed code differs");
    let second = write_code(&back);
    ensure!(first == second, "rewrite is not byte-identical");
    Ok(())
}

fn criterion_1() -> Outcome {
    let h = hamming_code(3, 3).map_err(|e| e.to_string())?.to_code().map_err(|e| e.to_string())?;
    ensure!(h.len() == 59049, "{} codewords", h.len());
    let start = Instant::now();
    let r = is_perfect(&h).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(r.method == Method::Exhaustive, "method {}", r.method);
    ensure!(r.is_perfect && r.coverage_defects == Some(0), "defects {:?}", r.coverage_defects);
    ensure!(oracle_defects(&h) == 0, "oracle finds defects");
    ensure!(h.rank() == 10, "rank {}", h.rank());
    ensure!(elapsed < Duration::from_secs(30), "perfection check took {elapsed:?}");
    Ok(format!("59049 words, 0 defects over 1594323 vectors, rank 10, check {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut cases = Vec::new();
    for (q, m) in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let h = hamming_code(q, m).map_err(|e| e.to_string())?;
        let n = h.length();
        let mut expected = vec![0u64; n + 1];
        expected[0] = 1;
        expected[q.pow(m as u32 - 1)] = q.pow(m as u32) as u64 - 1;
        let dual = h.dual();
        let found = oracle_span_weights(q, dual.generator().rows(), n);
        ensure!(found == expected, "({q},{m}): dual weights {found:?}");
        ensure!(dual.weight_distribution().counts() == expected.as_slice(), "({q},{m}): library weights differ");
        let t1 = theorem1_check(&h.to_code().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(t1.ok && t1.rank == n - m, "({q},{m}): theorem1_check failed");
        cases.push(format!("({q},{m})"));
    }
    Ok(format!("dual weight distributions exact for {}", cases.join(" ")))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let h = hamming_code(3, 3).map_err(|e| e.to_string())?.to_code().map_err(|e| e.to_string())?;
    let w: Vec<Elem> = "0000111111111".bytes().map(|b| b - b'0').collect();
    let dec = decompose(&h, &w).map_err(|e| e.to_string())?;
    ensure!(dec.inner.len() == 6561, "{} inner codes", dec.inner.len());
    ensure!(dec.outer.len() == 81, "{} outer codes", dec.outer.len());
    for (v, c) in &dec.inner {
        ensure!(c.len() == 9 && c.n() == 4, "C'({v:?}) has {} words", c.len());
        ensure!(coverage_defects(c) == 0, "C'({v:?}) is not 1-perfect");
    }
    for (u, c) in &dec.outer {
        ensure!(c.len() == 729, "C''({u:?}) has {} words", c.len());
        ensure!(c.min_distance().ok() == Some(3), "C''({u:?}) minimum distance");
    }
    let summary = dec.check();
    ensure!(summary.all_ok(), "split summary {summary:?}");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!("6561 perfect inner codes of 9 words, 81 outer codes of 729 words with d=3, {elapsed:.2?}"))
}

fn criterion_4() -> Outcome {
    let c = extract_cpp(3, 2).map_err(|e| e.to_string())?;
    ensure!(c.length() == 9 && c.dimension() == 6, "[{}, {}]", c.length(), c.dimension());
    ensure!(c.min_distance() == Some(3), "d = {:?}", c.min_distance());
    let f = c.field();
    let sums_zero = c.words().all(|w| w.iter().fold(0, |s, &x| f.add(s, x)) == 0);
    ensure!(sums_zero, "a word does not sum to zero");
    Ok("[9,6,3]_3, all 729 words sum to 0".into())
}

fn criterion_5() -> Outcome {
    let (p1, p2) = standard_partitions(3, 2).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    for trial in 0..20 {
        let mut images: Vec<usize> = (0..9).collect();
        images.shuffle(&mut rng);
        let alpha = Permutation::new(images).map_err(|e| e.to_string())?;
        let input = ConcatInput {
            p1: p1.clone(),
            p2: p2.clone(),
            alpha: alpha.clone(),
        };
        let c = concatenate(&input).map_err(|e| e.to_string())?;
        ensure!(c.n() == 13 && c.len() == 59049, "trial {trial}: {} words of length {}", c.len(), c.n());
        let r = is_perfect(&c).map_err(|e| e.to_string())?;
        ensure!(r.method == Method::Exhaustive && r.is_perfect, "trial {trial}: alpha {alpha} not perfect");
    }
    Ok("20/20 random permutations give exhaustively perfect codes of size 3^10".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let witness = search_rank12(3, 2).map_err(|e| e.to_string())?;
    let rank = rank_of_alpha(&witness.input).map_err(|e| e.to_string())?;
    ensure!(rank == 12, "rank_of_alpha = {rank}");
    ensure!(witness.code.rank() == 12, "assembled rank {}", witness.code.rank());
    let r = is_perfect(&witness.code).map_err(|e| e.to_string())?;
    ensure!(r.method == Method::Exhaustive && r.is_perfect, "witness code not perfect");
    let t1 = theorem1_check(&witness.code).map_err(|e| e.to_string())?;
    let hist = t1.distribution.histogram();
    ensure!(hist.into_iter().collect::<Vec<_>>() == vec![(0, 1), (9, 2)], "dual histogram {:?}", t1.distribution);
    let pv = check_published_vectors(&witness.input.p1, &witness.input.p2).map_err(|e| e.to_string())?;
    ensure!(pv.span_dim == 12, "vector span dimension {}", pv.span_dim);
    ensure!(pv.orthogonal_to_w, "a vector is not orthogonal to w");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("alpha {}, rank 12, perfect, dual {{0:1, 9:2}}, vectors independent, {elapsed:.2?}", witness.alpha))
}

fn criterion_7() -> Outcome {
    let s = sweep(3, 2).map_err(|e| e.to_string())?;
    ensure!(s.examined == 40320, "examined {}", s.examined);
    ensure!(s.max_rank() == Some(12), "max rank {:?}", s.max_rank());
    ensure!(!s.counts.contains_key(&13), "full rank reached");
    Ok(format!("40320 permutations, rank counts {:?}", s.counts))
}

fn criterion_8() -> Outcome {
    let (p1, p2) = standard_partitions(3, 2).map_err(|e| e.to_string())?;
    let zero = vec![0; p1.ambient().n()];
    let z1 = p1.part_index(&zero).ok_or("zero not in P1")?;
    let z2 = p2.part_index(&vec![0; p2.ambient().n()]).ok_or("zero not in P2")?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut seen = std::collections::BTreeMap::new();
    for trial in 0..50 {
        // uniform over permutations sending the zero part to the zero part
        let mut rest: Vec<usize> = (0..9).filter(|&j| j != z2).collect();
        rest.shuffle(&mut rng);
        let mut images = Vec::with_capacity(9);
        for i in 0..9 {
            images.push(if i == z1 { z2 } else { rest.pop().unwrap() });
        }
        let input = ConcatInput {
            p1: p1.clone(),
            p2: p2.clone(),
            alpha: Permutation::new(images).map_err(|e| e.to_string())?,
        };
        let fast = rank_of_alpha(&input).map_err(|e| e.to_string())?;
        let slow = concatenate(&input).map_err(|e| e.to_string())?.rank();
        ensure!(fast == slow, "trial {trial}: alpha {} shortcut {fast} vs brute force {slow}", input.alpha);
        *seen.entry(fast).or_insert(0) += 1;
    }
    Ok(format!("50/50 agree, ranks seen {seen:?}"))
}

fn criterion_9() -> Outcome {
    let h = hamming_code(3, 2).map_err(|e| e.to_string())?.to_code().map_err(|e| e.to_string())?;
    let ball = radius_one_sphere(h.field(), 4);
    let mut vanishing = 0;
    let mut off_weight = 0;
    for u in all_vectors(3, 4) {
        let wt = linalg::weight(&u);
        let chi = char_sum(&u, &h).map_err(|e| e.to_string())?;
        if chi.is_zero() {
            vanishing += 1;
        }
        if wt != 0 && wt != 3 {
            off_weight += 1;
            ensure!(chi.is_zero(), "chi_{u:?}(C) = {chi:?}");
        }
        let sphere = char_sum(&u, &ball).map_err(|e| e.to_string())?;
        let expected = 9 - 3 * wt as i64;
        ensure!(sphere.as_integer() == Some(expected), "chi_{u:?}(V) = {sphere:?}");
        ensure!(sphere_char_value(&u, 3, 2) == expected, "closed form disagrees at {u:?}");
    }
    ensure!(vanishing == 72, "{vanishing} vanishing sums");
    Ok(format!(
        "chi_u(C) = 0 for all {off_weight} u of weight outside {{0,3}} ({vanishing} vanishing in total); chi_u(V) = 9 - 3 wt(u) for all 81 u"
    ))
}

fn criterion_10() -> Outcome {
    let mut codes: Vec<Code> = Vec::new();
    let e = |e: qperfect::Error| e.to_string();
    for (q, m) in [(2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)] {
        codes.push(hamming_code(q, m).map_err(e)?.to_code().map_err(e)?);
        codes.push(simplex_code(q, m).map_err(e)?.to_code().map_err(e)?);
    }
    for (q, n) in [(2, 4), (3, 4), (3, 9), (5, 3), (11, 3)] {
        codes.push(trivial_mds(q, n).map_err(e)?.to_code().map_err(e)?);
    }
    codes.push(extract_cpp(3, 2).map_err(e)?.to_code().map_err(e)?);
    codes.push(extract_cpp(2, 3).map_err(e)?.to_code().map_err(e)?);
    for p in [space_partition(3, 2).map_err(e)?, mds_partition(3, 2).map_err(e)?] {
        codes.extend(p.parts().iter().cloned());
    }
    codes.push(search_rank12(3, 2).map_err(e)?.code);
    for c in &codes {
        roundtrip(c).map_err(|m| format!("q={} n={} count={}: {m}", c.field().q(), c.n(), c.len()))?;
    }
    Ok(format!("{} constructed codes round-trip byte-identically", codes.len()))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS  {detail}  [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {detail}  [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
