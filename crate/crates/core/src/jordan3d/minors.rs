//! Sign survey of the minors of the step matrices and of `S_k`.

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::transition::transition_matrices;
use crate::exact::{format_rational, ExactMatrix, Rational};

/// Matrices with both dimensions at most this are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 6;
/// Minors sampled per matrix above the limit.
pub const SAMPLES_PER_MATRIX: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorFinding {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixMinors {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub exhaustive: bool,
    pub checked: usize,
    pub negative: Vec<MinorFinding>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorsReport {
    pub n: usize,
    pub max_size: usize,
    pub matrices: Vec<MatrixMinors>,
    pub det_s: Vec<String>,
    pub det_s_positive: bool,
}

impl MinorsReport {
    pub fn negative_count(&self) -> usize {
        self.matrices.iter().map(|m| m.negative.len()).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.det_s_positive && self.negative_count() == 0
    }
}

fn survey(name: String, m: &ExactMatrix, max_size: usize, seed: u64) -> MatrixMinors {
    let top = max_size.min(m.rows()).min(m.cols());
    let exhaustive = m.rows() <= EXHAUSTIVE_LIMIT && m.cols() <= EXHAUSTIVE_LIMIT;
    let mut checked = 0;
    let mut negative = Vec::new();
    let mut check = |rows: Vec<usize>, cols: Vec<usize>| {
        let value: Rational = m.minor(&rows, &cols).expect("valid selection");
        checked += 1;
        if value.is_negative() {
            negative.push(MinorFinding {
                rows,
                cols,
                value: format_rational(&value),
            });
        }
    };
    if top == 0 {
    } else if exhaustive {
        for size in 1..=top {
            for rows in (0..m.rows()).combinations(size) {
                for cols in (0..m.cols()).combinations(size) {
                    check(rows.clone(), cols);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLES_PER_MATRIX {
            let size = rng.random_range(1..=top);
            let mut rows = sample(&mut rng, m.rows(), size).into_vec();
            let mut cols = sample(&mut rng, m.cols(), size).into_vec();
            rows.sort_unstable();
            cols.sort_unstable();
            check(rows, cols);
        }
    }
    MatrixMinors {
        name,
        rows: m.rows(),
        cols: m.cols(),
        exhaustive,
        checked,
        negative,
    }
}

/// Every minor of size `≤ max_size` of every `A_k, B_k, C_k, D_k, S_k` at
/// level `n` (sampled for large matrices), plus `det S_k > 0`.
pub fn minors_report(n: usize, max_size: usize) -> MinorsReport {
    let t = transition_matrices(n);
    let matrices = t
        .named_matrices()
        .into_iter()
        .enumerate()
        .map(|(i, (name, m))| survey(name, m, max_size, ((n as u64) << 32) | i as u64))
        .collect();
    let dets: Vec<Rational> = t.s.iter().map(|s| s.determinant().expect("square")).collect();
    MinorsReport {
        n,
        max_size,
        matrices,
        det_s_positive: dets.iter().all(|d| d.is_positive() && !d.is_zero()),
        det_s: dets.iter().map(format_rational).collect(),
    }
}
