//! Random generators for validated superdata and queries.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use superklr_core::{CartanSuperdatum, DominantWeight, Parity, WeightSeq};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Admissible parity assignments: only rows with all-even entries may be odd.
pub fn admissible_parities(matrix: &[Vec<i64>]) -> Vec<Vec<Parity>> {
    let r = matrix.len();
    let can_be_odd: Vec<bool> = matrix.iter().map(|row| row.iter().all(|a| a % 2 == 0)).collect();
    (0..1u32 << r)
        .filter(|mask| (0..r).all(|i| mask >> i & 1 == 0 || can_be_odd[i]))
        .map(|mask| (0..r).map(|i| Parity::from_bit(u64::from(mask >> i & 1))).collect())
        .collect()
}

/// Symmetrizable Cartan matrix with `|I| <= max_rank`, off-diagonal entries in `-3..=0`.
pub fn random_matrix(rng: &mut impl Rng, max_rank: usize) -> Vec<Vec<i64>> {
    loop {
        let r = rng.gen_range(1..=max_rank);
        let mut a = vec![vec![0i64; r]; r];
        for i in 0..r {
            a[i][i] = 2;
            for j in i + 1..r {
                if rng.gen_bool(0.7) {
                    a[i][j] = -rng.gen_range(1..=3);
                    a[j][i] = -rng.gen_range(1..=3);
                }
            }
        }
        let labels = (1..=r).map(|i| i.to_string()).collect();
        if CartanSuperdatum::new(labels, a.clone(), vec![Parity::Even; r], None).is_ok() {
            return a;
        }
    }
}

pub fn datum_with(matrix: Vec<Vec<i64>>, parity: Vec<Parity>) -> CartanSuperdatum {
    let labels = (1..=matrix.len()).map(|i| i.to_string()).collect();
    CartanSuperdatum::new(labels, matrix, parity, None).expect("generated datum validates")
}

/// Validated datum with a random admissible parity; biased towards having odd labels.
pub fn random_datum(rng: &mut impl Rng, max_rank: usize) -> CartanSuperdatum {
    let a = random_matrix(rng, max_rank);
    let options = admissible_parities(&a);
    let with_odd: Vec<&Vec<Parity>> = options.iter().filter(|p| p.iter().any(|x| x.is_odd())).collect();
    let parity = if !with_odd.is_empty() && rng.gen_bool(0.7) {
        (*with_odd.choose(rng).unwrap()).clone()
    } else {
        options.choose(rng).unwrap().clone()
    };
    datum_with(a, parity)
}

pub fn random_weight(rng: &mut impl Rng, rank: usize, max: u64) -> DominantWeight {
    DominantWeight((0..rank).map(|_| rng.gen_range(0..=max)).collect())
}

pub fn random_seq(rng: &mut impl Rng, rank: usize, len: usize) -> WeightSeq {
    WeightSeq((0..len).map(|_| rng.gen_range(0..rank)).collect())
}

/// A rearrangement of `nu` most of the time, otherwise an unrelated sequence.
pub fn random_partner(rng: &mut impl Rng, rank: usize, nu: &WeightSeq) -> WeightSeq {
    if rng.gen_bool(0.85) {
        let mut v = nu.0.clone();
        v.shuffle(rng);
        WeightSeq(v)
    } else {
        random_seq(rng, rank, nu.len())
    }
}

/// A sequence with pairwise distinct entries drawn from `0..rank`.
pub fn random_distinct_seq(rng: &mut impl Rng, rank: usize) -> WeightSeq {
    let mut labels: Vec<usize> = (0..rank).collect();
    labels.shuffle(rng);
    let len = rng.gen_range(1..=rank);
    labels.truncate(len);
    WeightSeq(labels)
}

/// Cartan matrix whose Dynkin graph is a forest (always symmetrizable).
pub fn random_forest_matrix(rng: &mut impl Rng, rank: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        a[i][i] = 2;
        if i > 0 && rng.gen_bool(0.8) {
            let j = rng.gen_range(0..i);
            a[i][j] = -rng.gen_range(1..=3);
            a[j][i] = -rng.gen_range(1..=3);
        }
    }
    a
}

pub fn random_forest_datum(rng: &mut impl Rng, rank: usize) -> CartanSuperdatum {
    let a = random_forest_matrix(rng, rank);
    let parity = admissible_parities(&a).choose(rng).unwrap().clone();
    datum_with(a, parity)
}
