//! The single Jordan chain of `A_2` at level `n`.
//!
//! The lead vector is `G_n(x)`, where
//!
//! `G_i(x) = Σ_{j ≤ i/2} 2^{−j} / (j!(i−2j)!) · (−ρ/2c²)^j · H_{i−2j}(x)`,
//!
//! and the powers `(γ − A_2)^k G_n` have the closed form
//!
//! `(−1)^k Σ_{i = max(0, n−2k)}^{n−k} (−ρ/2c)^{n−k−i} C(k, n−k−i) G_i(x) H_{2k−n+i}(y)`.
//!
//! [`build_chain_2d`] iterates the operator and checks every element against
//! the closed form.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial_signed, factorial, pow, Rational};
use crate::hermite::{HermitePoly, MultiIndex, PolyJson};
use crate::operator::{apply_a, apply_shifted, OuContext};

fn require_d2(ctx: &OuContext) -> Result<()> {
    if ctx.d() != 2 {
        return Err(Error::InvalidContext(format!(
            "two-dimensional construction needs d=2, got d={}",
            ctx.d()
        )));
    }
    Ok(())
}

fn rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `G_i(x)` as a polynomial in `(x, y)` with no `y` dependence.
pub fn g_poly(i: usize, ctx: &OuContext) -> Result<HermitePoly> {
    require_d2(ctx)?;
    let two = rational(2);
    let weight = -(ctx.rho() / (&two * ctx.c() * ctx.c()));
    let mut out = ctx.zero_poly();
    for j in 0..=i / 2 {
        let denom = pow(&two, j) * Rational::from_integer(factorial(j) * factorial(i - 2 * j));
        out.add_term(MultiIndex::new(vec![i - 2 * j, 0]), pow(&weight, j) / denom);
    }
    Ok(out)
}

/// `(−ic − A_2) G_i − (−y·G_{i−1} + (ρ/2c) G_{i−2})` for caller-supplied
/// `G_i, G_{i−1}, G_{i−2}`; zero exactly when the recursion holds.
pub fn recursion_residual(
    i: usize,
    g_i: &HermitePoly,
    g_im1: &HermitePoly,
    g_im2: &HermitePoly,
    ctx: &OuContext,
) -> Result<HermitePoly> {
    require_d2(ctx)?;
    let shift = -(ctx.c() * rational(i as i64));
    let lhs = &g_i.scale(&shift) - &apply_a(g_i, ctx)?;
    let rhs = &(-&g_im1.mul_coordinate(1)) + &g_im2.scale(&(ctx.rho() / (rational(2) * ctx.c())));
    Ok(&lhs - &rhs)
}

/// Checks `(−ic − A_2) G_i = −y·G_{i−1} + (ρ/2c) G_{i−2}` exactly.
pub fn verify_recursion(i: usize, ctx: &OuContext) -> Result<bool> {
    if i < 2 {
        return Err(Error::BadIndex {
            what: "i",
            index: i,
            max: usize::MAX,
        });
    }
    let res = recursion_residual(
        i,
        &g_poly(i, ctx)?,
        &g_poly(i - 1, ctx)?,
        &g_poly(i - 2, ctx)?,
        ctx,
    )?;
    Ok(res.is_zero())
}

/// `G_i(x)·H_b(y)`.
fn times_h_y(g: &HermitePoly, b: usize, ctx: &OuContext) -> HermitePoly {
    HermitePoly::from_terms(
        2,
        ctx.rho().clone(),
        g.terms()
            .map(|(idx, c)| (MultiIndex::new(vec![idx.get(0), b]), c.clone())),
    )
}

/// The closed form of `(γ − A_2)^k G_n`.
pub fn closed_form_element(n: usize, k: usize, ctx: &OuContext) -> Result<HermitePoly> {
    require_d2(ctx)?;
    if k > n {
        return Err(Error::BadIndex {
            what: "k",
            index: k,
            max: n,
        });
    }
    let w = -(ctx.rho() / (rational(2) * ctx.c()));
    let lo = n.saturating_sub(2 * k);
    let mut out = ctx.zero_poly();
    for i in lo..=n - k {
        let e = n - k - i;
        let coeff = pow(&w, e) * Rational::from_integer(binomial_signed(k as i64, e as i64));
        // 2k − n + i ≥ 0 because i ≥ n − 2k
        let y_deg = 2 * k + i - n;
        out += &times_h_y(&g_poly(i, ctx)?, y_deg, ctx).scale(&coeff);
    }
    if k % 2 == 1 {
        out = -&out;
    }
    Ok(out)
}

/// The Jordan chain `G_n, (γ−A_2)G_n, .., (γ−A_2)^n G_n` with its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain2D {
    pub n: usize,
    pub elements: Vec<HermitePoly>,
    pub closed_form: Vec<HermitePoly>,
}

#[derive(Serialize)]
pub struct Chain2DJson {
    pub closed_form: Vec<PolyJson>,
    pub elements: Vec<PolyJson>,
    pub n: usize,
}

impl Chain2D {
    pub fn lead(&self) -> &HermitePoly {
        &self.elements[0]
    }

    pub fn eigenfunction(&self) -> &HermitePoly {
        self.elements.last().expect("chain is never empty")
    }

    pub fn to_json(&self) -> Chain2DJson {
        Chain2DJson {
            closed_form: self.closed_form.iter().map(HermitePoly::to_json).collect(),
            elements: self.elements.iter().map(HermitePoly::to_json).collect(),
            n: self.n,
        }
    }
}

pub fn build_chain_2d(n: usize, ctx: &OuContext) -> Result<Chain2D> {
    require_d2(ctx)?;
    if ctx.level() != n {
        return Err(Error::InvalidContext(format!(
            "context level {} does not match n={n}",
            ctx.level()
        )));
    }
    let mut elements = Vec::with_capacity(n + 1);
    let mut closed_form = Vec::with_capacity(n + 1);
    let mut cur = g_poly(n, ctx)?;
    for k in 0..=n {
        let expected = closed_form_element(n, k, ctx)?;
        if cur != expected {
            return Err(Error::MismatchWithClosedForm { n, k });
        }
        let next = apply_shifted(&cur, ctx)?;
        elements.push(cur);
        closed_form.push(expected);
        cur = next;
    }
    if !cur.is_zero() {
        return Err(Error::ChainCheckFailed {
            n,
            k: 0,
            reason: "(γ−A_2)^{n+1} G_n is not zero".into(),
        });
    }
    let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let eigen = ctx.basis(vec![0, n]).scale(&sign);
    if elements[n] != eigen {
        return Err(Error::ChainCheckFailed {
            n,
            k: 0,
            reason: "last element is not (−1)^n H_n(y)".into(),
        });
    }
    Ok(Chain2D {
        n,
        elements,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    #[test]
    fn g_poly_examples() {
        let ctx = OuContext::unit(2, 0);
        assert_eq!(g_poly(0, &ctx).unwrap(), ctx.basis([0, 0]));
        assert_eq!(g_poly(1, &ctx).unwrap(), ctx.basis([1, 0]));
        let g2 = HermitePoly::from_terms(2, int(1), [([2, 0], frac(1, 2)), ([0, 0], frac(-1, 4))]);
        assert_eq!(g_poly(2, &ctx).unwrap(), g2);
        let g3 = HermitePoly::from_terms(2, int(1), [([3, 0], frac(1, 6)), ([1, 0], frac(-1, 4))]);
        assert_eq!(g_poly(3, &ctx).unwrap(), g3);
    }

    #[test]
    fn recursion_at_two_by_hand() {
        let ctx = OuContext::unit(2, 2);
        let lhs = {
            let g2 = g_poly(2, &ctx).unwrap();
            &g2.scale(&int(-2)) - &apply_a(&g2, &ctx).unwrap()
        };
        // ρ/(2c) − xy
        let expected = HermitePoly::from_terms(2, int(1), [([0, 0], frac(1, 2)), ([1, 1], int(-1))]);
        assert_eq!(lhs, expected);
        assert!(verify_recursion(2, &ctx).unwrap());
    }

    #[test]
    fn recursion_holds_for_several_parameters() {
        for rho_c in [(int(1), int(1)), (frac(1, 2), int(1)), (int(3), int(1)), (int(3), frac(2, 3))] {
            let (sigma2, c) = (&rho_c.0 * &rho_c.1, rho_c.1.clone());
            let ctx = OuContext::new(2, c, sigma2, 0).unwrap();
            for i in 2..=12 {
                assert!(verify_recursion(i, &ctx).unwrap(), "i={i} rho={}", rho_c.0);
            }
        }
    }

    #[test]
    fn corrupted_g2_fails_recursion() {
        let ctx = OuContext::unit(2, 2);
        let mut g2 = g_poly(2, &ctx).unwrap();
        g2.add_term(MultiIndex::from([0, 0]), frac(1, 100));
        let res = recursion_residual(2, &g2, &g_poly(1, &ctx).unwrap(), &g_poly(0, &ctx).unwrap(), &ctx)
            .unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn closed_form_examples() {
        let ctx = OuContext::new(2, int(2), int(5), 4).unwrap();
        assert_eq!(closed_form_element(4, 0, &ctx).unwrap(), g_poly(4, &ctx).unwrap());
        assert_eq!(closed_form_element(4, 4, &ctx).unwrap(), ctx.basis([0, 4]));
        let ctx1 = OuContext::unit(2, 1);
        assert_eq!(closed_form_element(1, 1, &ctx1).unwrap(), -&ctx1.basis([0, 1]));
        assert!(matches!(closed_form_element(1, 2, &ctx1), Err(Error::BadIndex { .. })));
    }

    #[test]
    fn chain_examples() {
        let ctx = OuContext::unit(2, 1);
        let chain = build_chain_2d(1, &ctx).unwrap();
        assert_eq!(chain.elements, vec![ctx.basis([1, 0]), -&ctx.basis([0, 1])]);

        let ctx = OuContext::unit(2, 2);
        let chain = build_chain_2d(2, &ctx).unwrap();
        assert_eq!(chain.elements.len(), 3);
        assert_eq!(chain.eigenfunction(), &ctx.basis([0, 2]));

        let ctx = OuContext::unit(2, 0);
        let chain = build_chain_2d(0, &ctx).unwrap();
        assert_eq!(chain.elements, vec![ctx.basis([0, 0])]);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let ctx = OuContext::unit(3, 1);
        assert!(matches!(g_poly(1, &ctx), Err(Error::InvalidContext(_))));
        assert!(matches!(build_chain_2d(2, &OuContext::unit(2, 1)), Err(Error::InvalidContext(_))));
    }
}
