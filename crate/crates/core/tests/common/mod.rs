#![allow(dead_code)]

use std::collections::BTreeMap;

use evenflows::higgs::{DivisorTuple, PointLabel, WeightMap};
use evenflows::weights::{even_positive_roots, lifted_root_coords, DominantWeight, LiftedVector};
use rand::Rng;

/// Sparse multiplicity in `0..=max`: zero about two times out of three.
pub fn sparse_mult<R: Rng>(rng: &mut R, max: i64) -> i64 {
    if rng.gen_range(0..3) == 0 {
        rng.gen_range(1..=max)
    } else {
        0
    }
}

pub fn labels(count: usize) -> Vec<&'static str> {
    ["a", "b", "c", "d", "e", "f"][..count].to_vec()
}

/// Divisor tuple with `n ≤ max_n`, at most six points and middle multiplicities `≤ 4`.
pub fn random_tuple<R: Rng>(rng: &mut R, max_n: usize) -> DivisorTuple {
    let n = rng.gen_range(1..=max_n);
    let points = labels(rng.gen_range(1..=6));
    let mut entries = Vec::new();
    for &p in &points {
        for i in 1..n {
            let m = sparse_mult(rng, 4);
            if m > 0 {
                entries.push((i, p, m));
            }
        }
        if rng.gen_bool(0.3) {
            entries.push((0, p, rng.gen_range(-4..=4)));
        }
    }
    DivisorTuple::from_entries(n, entries).expect("generated tuple is valid")
}

pub fn random_weight<R: Rng>(rng: &mut R, n: usize, max: i64) -> DominantWeight {
    let mut c: Vec<i64> = (0..n - 1).map(|_| sparse_mult(rng, max)).collect();
    c.push(rng.gen_range(-3..=3));
    DominantWeight::new(c).expect("nonnegative coordinates")
}

pub fn random_weight_map<R: Rng>(rng: &mut R, max_n: usize) -> WeightMap {
    let n = rng.gen_range(1..=max_n);
    let mu: BTreeMap<PointLabel, DominantWeight> = labels(rng.gen_range(0..=6))
        .into_iter()
        .map(|p| (PointLabel::new(p).unwrap(), random_weight(rng, n, 4)))
        .collect();
    WeightMap::new(n, mu).expect("weights have rank n")
}

/// Nonzero nonnegative combination of lifted even roots, coefficients `≤ 5`, `3 ≤ n ≤ max_n`.
pub fn random_lifted_even<R: Rng>(rng: &mut R, max_n: usize) -> LiftedVector {
    loop {
        let n = rng.gen_range(3..=max_n);
        let mut x = LiftedVector::zero(n);
        let mut any = false;
        for r in even_positive_roots(n) {
            let c = sparse_mult(rng, 5);
            if c > 0 {
                any = true;
                x.add_scaled(&lifted_root_coords(r, n).unwrap(), c);
            }
        }
        if any && x.coords().iter().any(|&v| v != 0) {
            return x;
        }
    }
}

/// The four lemma properties of nonzero elements of the lifted even cone.
/// Returns the first violated property.
pub fn lifted_lemma_violation(x: &LiftedVector) -> Option<&'static str> {
    let c = x.coords();
    let n = c.len() - 1;
    if c[0] > 0 || c[n] > 0 {
        return Some("(1) end coordinates not positive");
    }
    let total: i64 = c.iter().sum();
    let even: i64 = c.iter().step_by(2).sum();
    let odd: i64 = c.iter().skip(1).step_by(2).sum();
    if total != 0 || even != 0 || odd != 0 {
        return Some("(2) total, even and odd sums vanish");
    }
    if n >= 4 && c[2..=n - 2].iter().sum::<i64>() < 0 {
        return Some("(3) middle sum nonnegative");
    }
    let first = c.iter().find(|&&v| v != 0);
    let last = c.iter().rev().find(|&&v| v != 0);
    match (first, last) {
        (Some(&f), Some(&l)) if f < 0 && l < 0 => None,
        _ => Some("(4) first and last nonzero coordinates negative"),
    }
}
