//! Brute-force Jordan structure of `γ` from the exact matrix of `γ − A_d` on
//! all polynomials of degree `≤ n`.
//!
//! With `k_j = dim ker (γ − A_d)^j`, the number of blocks of size `≥ j` is
//! `k_j − k_{j−1}`. Every other eigenvalue of the restriction differs from `γ`,
//! so the kernels stabilise at the spectral subspace of `γ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial_usize, ExactMatrix};
use crate::hermite::{HermitePoly, MultiIndex};
use crate::operator::{apply_shifted, OuContext};

#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub ctx: OuContext,
    /// Canonical order of all indices of degree `≤ n`.
    pub basis: Vec<MultiIndex>,
    pub matrix: ExactMatrix,
}

impl OperatorMatrix {
    pub fn coordinates(&self, p: &HermitePoly) -> Vec<crate::exact::Rational> {
        self.basis.iter().map(|idx| p.coeff(idx)).collect()
    }
}

pub fn operator_matrix(ctx: &OuContext) -> Result<OperatorMatrix> {
    let basis = MultiIndex::up_to(ctx.d(), ctx.level());
    let columns = basis
        .iter()
        .map(|idx| {
            let image = apply_shifted(&ctx.basis(idx.clone()), ctx)?;
            Ok(basis.iter().map(|b| image.coeff(b)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorMatrix {
        ctx: ctx.clone(),
        matrix: ExactMatrix::from_columns(basis.len(), &columns)?,
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanReport {
    pub algebraic: usize,
    pub geometric: usize,
    pub index: usize,
    /// `k_1, k_2, ..` up to and including the first repeat.
    pub kernel_dims: Vec<usize>,
    /// Block sizes, largest first.
    pub segre: Vec<usize>,
}

/// Jordan data from the kernel dimensions `k_1, k_2, ..` of successive powers.
pub fn segre_from_kernel_dims(kernel_dims: &[usize]) -> Vec<usize> {
    let at_least: Vec<usize> = std::iter::once(0)
        .chain(kernel_dims.iter().copied())
        .collect::<Vec<_>>()
        .windows(2)
        .map(|w| w[1] - w[0])
        .collect();
    let mut segre = Vec::new();
    for (j, pair) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        segre.extend(std::iter::repeat_n(j + 1, pair - next));
    }
    segre.reverse();
    segre
}

pub fn jordan_structure(ctx: &OuContext) -> Result<JordanReport> {
    let op = operator_matrix(ctx)?;
    let m = &op.matrix;
    let dim = m.rows();
    let mut kernel_dims = vec![m.kernel_dimension()];
    let mut power = m.clone();
    while kernel_dims.len() < dim + 1 {
        power = power.mul(m)?;
        let k = power.kernel_dimension();
        let prev = *kernel_dims.last().unwrap();
        kernel_dims.push(k);
        if k == prev {
            break;
        }
    }
    let index = kernel_dims
        .windows(2)
        .position(|w| w[0] == w[1])
        .map_or(kernel_dims.len(), |p| p + 1);
    let algebraic = *kernel_dims.last().unwrap();
    let segre = segre_from_kernel_dims(&kernel_dims[..index]);
    Ok(JordanReport {
        algebraic,
        geometric: kernel_dims[0],
        index,
        kernel_dims,
        segre,
    })
}

/// The structure predicted for `d ∈ {2, 3}`.
pub fn theory_prediction(d: usize, n: usize) -> Result<JordanReport> {
    let segre: Vec<usize> = match d {
        2 => vec![n + 1],
        3 => (0..=n / 2).map(|k| 2 * n + 1 - 4 * k).collect(),
        _ => return Err(Error::OutOfTheoryScope { d }),
    };
    let mut kernel_dims = Vec::new();
    for j in 1..=segre[0] + 1 {
        kernel_dims.push(segre.iter().map(|&q| q.min(j)).sum());
    }
    Ok(JordanReport {
        algebraic: binomial_usize(n + d - 1, d - 1),
        geometric: segre.len(),
        index: 1 + (d - 1) * n,
        kernel_dims,
        segre,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoryComparison {
    pub d: usize,
    pub n: usize,
    pub oracle: JordanReport,
    pub theory: JordanReport,
    pub agrees: bool,
}

/// Oracle versus prediction; any disagreement is an error naming the quantity.
pub fn compare_with_theory(ctx: &OuContext) -> Result<TheoryComparison> {
    let (d, n) = (ctx.d(), ctx.level());
    let theory = theory_prediction(d, n)?;
    let oracle = jordan_structure(ctx)?;
    let mismatch = |quantity: &'static str, expected: String, found: String| Error::TheoryMismatch {
        quantity,
        expected,
        found,
    };
    if oracle.algebraic != theory.algebraic {
        return Err(mismatch("algebraic", theory.algebraic.to_string(), oracle.algebraic.to_string()));
    }
    if oracle.index != theory.index {
        return Err(mismatch("index", theory.index.to_string(), oracle.index.to_string()));
    }
    if oracle.geometric != theory.geometric {
        return Err(mismatch("geometric", theory.geometric.to_string(), oracle.geometric.to_string()));
    }
    if oracle.segre != theory.segre {
        return Err(mismatch("segre", format!("{:?}", theory.segre), format!("{:?}", oracle.segre)));
    }
    Ok(TheoryComparison {
        d,
        n,
        oracle,
        theory,
        agrees: true,
    })
}
