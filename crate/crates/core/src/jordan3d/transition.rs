//! Bidiagonal step matrices between adjacent heights of the basis DAG and
//! their products `S_k`.
//!
//! With `r = ⌊n/2⌋` and `m = r + 1 − k`, `S_k` is the `m`-square matrix of
//! `Q_n(γ − A_3)^{2(n−2r+2k)}` from height `2(r−k)` to height `2(n−r+k)`,
//! built as
//!
//! - odd `n`: `S_0 = D_0 A_0`, `S_k = D_k C_k S_{k−1} B_k A_k`
//! - even `n`: `S_0 = Id`, `S_k = D_k C_k S_{k−1} B_k A_k`
//!
//! Each step matrix is the negated matrix of one application of
//! `Q_n(γ − A_3)`, in the decreasing-lexicographic vertex order of the
//! height it maps from and to:
//!
//! | matrix | from height        | shape           |
//! |--------|--------------------|-----------------|
//! | `A_k`  | `2(r−k)`           | `m × m`         |
//! | `B_k`  | `2(r−k) + 1`       | `(m+1) × m`     |
//! | `C_k`  | `2(n−r+k−1)`       | `m × (m+1)`     |
//! | `D_k`  | `2(n−r+k) − 1`     | `m × m`         |
//!
//! Since an even number of steps is composed, the signs cancel and `S_k` is
//! exactly the composed projected operator.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::dag::{as_multi_index, vertices_at_height};
use crate::error::Result;
use crate::exact::{ExactMatrix, Rational};
use crate::operator::{apply_projected, OuContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum StepKind {
    A,
    B,
    C,
    D,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::A => "A",
            StepKind::B => "B",
            StepKind::C => "C",
            StepKind::D => "D",
        }
    }

    /// Height the step maps from.
    pub fn source_height(self, n: usize, k: usize) -> usize {
        let r = n / 2;
        match self {
            StepKind::A => 2 * (r - k),
            StepKind::B => 2 * (r - k) + 1,
            StepKind::C => 2 * (n - r + k - 1),
            StepKind::D => 2 * (n - r + k) - 1,
        }
    }
}

fn q(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Upper bidiagonal `rows × cols` with the given diagonal and superdiagonal generators.
fn upper(rows: usize, cols: usize, diag: impl Fn(usize) -> usize, sup: impl Fn(usize) -> usize) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |r, c| {
        if c == r {
            q(diag(r))
        } else if c == r + 1 {
            q(sup(r))
        } else {
            Rational::zero()
        }
    })
}

/// Lower bidiagonal: `diag(t)` at `(t,t)`, `sub(t)` at `(t+1,t)`.
fn lower(rows: usize, cols: usize, diag: impl Fn(usize) -> usize, sub: impl Fn(usize) -> usize) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |r, c| {
        if c == r {
            q(diag(r))
        } else if r == c + 1 {
            q(sub(c))
        } else {
            Rational::zero()
        }
    })
}

/// The patterned step matrix `kind_k` for level `n`.
///
/// Panics if the matrix does not exist for this `(n, k)` (`B_0`, `C_0`, or any
/// `k = 0` matrix for even `n`, or `k > r`).
pub fn pattern(kind: StepKind, n: usize, k: usize) -> ExactMatrix {
    let r = n / 2;
    assert!(k <= r, "k={k} exceeds r={r}");
    let odd = n % 2 == 1;
    assert!(
        k >= 1 || (odd && matches!(kind, StepKind::A | StepKind::D)),
        "{}_{k} is not defined for n={n}",
        kind.name()
    );
    let m = r + 1 - k;
    // the odd and even families differ only in where the A and B counts start
    let a_start = if odd { r + k + 1 } else { r + k };
    let b_start = if odd { r + k } else { r + k - 1 };
    match kind {
        StepKind::A => upper(m, m, |t| a_start - t, |t| 2 * (t + 1)),
        StepKind::B => lower(m + 1, m, |t| 2 * t + 1, |t| b_start - t),
        StepKind::C => upper(m, m + 1, |t| r - k + 1 - t, |t| 2 * (t + 1)),
        StepKind::D => lower(m, m, |t| 2 * t + 1, |t| r - k - t),
    }
}

/// The displayed kernel matrix `M_k` (`k × (k+1)`), sign included.
pub fn kernel_pattern(k: usize) -> ExactMatrix {
    upper(k, k + 1, |t| k - t, |t| 2 * (t + 1)).scale(&-Rational::from_integer(1.into()))
}

/// Matrix of `Q_n(γ − A_3)` from height `h` to height `h + 1`, computed by
/// applying the operator to each basis vertex.
pub fn projected_step_matrix(n: usize, h: usize) -> Result<ExactMatrix> {
    composed_map_matrix(n, h, h + 1)
}

/// `−` [`projected_step_matrix`], directly comparable with [`pattern`].
pub fn derived_step_matrix(n: usize, h: usize) -> Result<ExactMatrix> {
    Ok(projected_step_matrix(n, h)?.scale(&-Rational::from_integer(1.into())))
}

/// Matrix of `Q_n(γ − A_3)^{to − from}` from height `from` to height `to`.
pub fn composed_map_matrix(n: usize, from: usize, to: usize) -> Result<ExactMatrix> {
    assert!(from <= to);
    let ctx = OuContext::unit(3, n);
    let src = vertices_at_height(n, from);
    let dst = vertices_at_height(n, to);
    let mut columns = Vec::with_capacity(src.len());
    for v in &src {
        let mut p = ctx.basis(as_multi_index(v));
        for _ in from..to {
            p = apply_projected(&p, n, &ctx)?;
        }
        columns.push(dst.iter().map(|w| p.coeff(&as_multi_index(w))).collect());
    }
    ExactMatrix::from_columns(dst.len(), &columns)
}

/// Step matrices used at stage `k` of the `S` recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepSet {
    pub k: usize,
    pub a: ExactMatrix,
    pub b: Option<ExactMatrix>,
    pub c: Option<ExactMatrix>,
    pub d: ExactMatrix,
}

impl StepSet {
    pub fn matrices(&self) -> Vec<(StepKind, &ExactMatrix)> {
        let mut out = vec![(StepKind::A, &self.a)];
        if let Some(b) = &self.b {
            out.push((StepKind::B, b));
        }
        if let Some(c) = &self.c {
            out.push((StepKind::C, c));
        }
        out.push((StepKind::D, &self.d));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrixSet {
    pub n: usize,
    pub parity: Parity,
    /// Indexed by `k`; `None` at `k = 0` for even `n`.
    pub steps: Vec<Option<StepSet>>,
    /// `S_0, .., S_r`.
    pub s: Vec<ExactMatrix>,
}

pub fn transition_matrices(n: usize) -> TransitionMatrixSet {
    let r = n / 2;
    let parity = Parity::of(n);
    let mut steps = Vec::with_capacity(r + 1);
    let mut s: Vec<ExactMatrix> = Vec::with_capacity(r + 1);
    for k in 0..=r {
        if k == 0 {
            match parity {
                Parity::Odd => {
                    let a = pattern(StepKind::A, n, 0);
                    let d = pattern(StepKind::D, n, 0);
                    s.push(d.mul(&a).expect("shapes agree"));
                    steps.push(Some(StepSet {
                        k,
                        a,
                        b: None,
                        c: None,
                        d,
                    }));
                }
                Parity::Even => {
                    s.push(ExactMatrix::identity(r + 1));
                    steps.push(None);
                }
            }
            continue;
        }
        let set = StepSet {
            k,
            a: pattern(StepKind::A, n, k),
            b: Some(pattern(StepKind::B, n, k)),
            c: Some(pattern(StepKind::C, n, k)),
            d: pattern(StepKind::D, n, k),
        };
        let prod = [set.c.as_ref().unwrap(), &s[k - 1], set.b.as_ref().unwrap(), &set.a]
            .into_iter()
            .try_fold(set.d.clone(), |acc, m| acc.mul(m))
            .expect("shapes agree");
        s.push(prod);
        steps.push(Some(set));
    }
    TransitionMatrixSet { n, parity, steps, s }
}

impl TransitionMatrixSet {
    /// Every patterned matrix with a printable name such as `"B_2"`.
    pub fn named_matrices(&self) -> Vec<(String, &ExactMatrix)> {
        let mut out = Vec::new();
        for set in self.steps.iter().flatten() {
            for (kind, m) in set.matrices() {
                out.push((format!("{}_{}", kind.name(), set.k), m));
            }
        }
        for (k, m) in self.s.iter().enumerate() {
            out.push((format!("S_{k}"), m));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_odd_example() {
        let t = transition_matrices(3);
        let set = t.steps[0].as_ref().unwrap();
        assert_eq!(set.a, ExactMatrix::from_i64(&[[2, 2], [0, 1]]));
        assert_eq!(set.d, ExactMatrix::from_i64(&[[1, 0], [1, 3]]));
        assert_eq!(t.s[0], ExactMatrix::from_i64(&[[2, 2], [2, 5]]));
        assert_eq!(t.s[0].determinant().unwrap(), Rational::from_integer(6.into()));
    }

    #[test]
    fn n1_and_n2() {
        let t = transition_matrices(1);
        assert_eq!(t.s, vec![ExactMatrix::from_i64(&[[1]])]);
        let t = transition_matrices(2);
        assert_eq!(t.s[0], ExactMatrix::identity(2));
        assert!(t.steps[0].is_none());
        assert_eq!(t.s[1].rows(), 1);
    }

    #[test]
    fn shapes() {
        for n in 1..=11 {
            let r = n / 2;
            let t = transition_matrices(n);
            for set in t.steps.iter().flatten() {
                let m = r + 1 - set.k;
                assert_eq!((set.a.rows(), set.a.cols()), (m, m));
                assert_eq!((set.d.rows(), set.d.cols()), (m, m));
                if let Some(b) = &set.b {
                    assert_eq!((b.rows(), b.cols()), (m + 1, m));
                }
                if let Some(c) = &set.c {
                    assert_eq!((c.rows(), c.cols()), (m, m + 1));
                }
            }
            for (k, s) in t.s.iter().enumerate() {
                assert_eq!(s.rows(), r + 1 - k);
                assert!(s.is_square());
            }
        }
    }

    #[test]
    fn displayed_corners() {
        // odd n = 7, r = 3, k = 1: A_1 runs r+k+1 = 5 down to 2k+1 = 3
        let a = pattern(StepKind::A, 7, 1);
        assert_eq!(a, ExactMatrix::from_i64(&[[5, 2, 0], [0, 4, 4], [0, 0, 3]]));
        let b = pattern(StepKind::B, 7, 1);
        assert_eq!(b, ExactMatrix::from_i64(&[[1, 0, 0], [4, 3, 0], [0, 3, 5], [0, 0, 2]]));
        let c = pattern(StepKind::C, 7, 1);
        assert_eq!(c, ExactMatrix::from_i64(&[[3, 2, 0, 0], [0, 2, 4, 0], [0, 0, 1, 6]]));
        let d = pattern(StepKind::D, 7, 1);
        assert_eq!(d, ExactMatrix::from_i64(&[[1, 0, 0], [2, 3, 0], [0, 1, 5]]));
        // even n = 6, r = 3, k = 1
        let a = pattern(StepKind::A, 6, 1);
        assert_eq!(a, ExactMatrix::from_i64(&[[4, 2, 0], [0, 3, 4], [0, 0, 2]]));
        let b = pattern(StepKind::B, 6, 1);
        assert_eq!(b, ExactMatrix::from_i64(&[[1, 0, 0], [3, 3, 0], [0, 2, 5], [0, 0, 1]]));
        let c = pattern(StepKind::C, 6, 1);
        assert_eq!(c, ExactMatrix::from_i64(&[[3, 2, 0, 0], [0, 2, 4, 0], [0, 0, 1, 6]]));
        let d = pattern(StepKind::D, 6, 1);
        assert_eq!(d, ExactMatrix::from_i64(&[[1, 0, 0], [2, 3, 0], [0, 1, 5]]));
    }

    #[test]
    fn patterns_match_operator() {
        for n in 1..=8 {
            let t = transition_matrices(n);
            for set in t.steps.iter().flatten() {
                for (kind, m) in set.matrices() {
                    let derived = derived_step_matrix(n, kind.source_height(n, set.k)).unwrap();
                    assert_eq!(&derived, m, "n={n} {}_{}", kind.name(), set.k);
                }
            }
        }
    }

    #[test]
    fn s_is_the_composed_map() {
        for n in 1..=8 {
            let r = n / 2;
            let t = transition_matrices(n);
            for k in 0..=r {
                let composed = composed_map_matrix(n, 2 * (r - k), 2 * (n - r + k)).unwrap();
                assert_eq!(composed, t.s[k], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn kernel_pattern_matches_operator() {
        for n in 0..=8 {
            for k in 1..=n / 2 {
                let derived = projected_step_matrix(n, 2 * (n - k)).unwrap();
                assert_eq!(derived, kernel_pattern(k), "n={n} k={k}");
            }
        }
    }
}
