//! The Ornstein–Uhlenbeck operator with Jordan-block drift,
//!
//! `A_d = Σ_s (−c·x_s + x_{s+1}) ∂_s − c·x_d ∂_d + σ² Δ`,
//!
//! acting on tensor Hermite polynomials. With `ρ = σ²/c` it splits as
//! `−c Σ_s (−ρ∂_s² + x_s∂_s) + Σ_{s<d} x_{s+1}∂_s`, and everything follows from
//! three rules on `H_i` with variance `ρ`:
//!
//! - `(−ρ∂² + x∂) H_i = i·H_i`
//! - `∂ H_i = i·H_{i−1}`
//! - `x·H_i = H_{i+1} + iρ·H_{i−1}`
//!
//! So `(γ − A_d)` maps a grade-`m` basis element into grades `m` and `m − 2`.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::hermite::{HermitePoly, MultiIndex};

/// Parameters of the operator together with the eigenvalue level `n` (`γ = −nc`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuContext {
    d: usize,
    c: Rational,
    sigma2: Rational,
    rho: Rational,
    level: usize,
}

impl OuContext {
    pub fn new(d: usize, c: Rational, sigma2: Rational, level: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidContext(format!("dimension d={d} must be at least 2")));
        }
        if !c.is_positive() {
            return Err(Error::InvalidContext(format!("drift rate c={c} must be positive")));
        }
        if !sigma2.is_positive() {
            return Err(Error::InvalidContext(format!("diffusion σ²={sigma2} must be positive")));
        }
        let rho = &sigma2 / &c;
        Ok(Self {
            d,
            c,
            sigma2,
            rho,
            level,
        })
    }

    /// `c = σ² = 1`, hence `ρ = 1`.
    pub fn unit(d: usize, level: usize) -> Self {
        Self::new(d, Rational::from_integer(1.into()), Rational::from_integer(1.into()), level)
            .expect("unit context is valid")
    }

    pub fn with_level(&self, level: usize) -> Self {
        Self {
            level,
            ..self.clone()
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn sigma2(&self) -> &Rational {
        &self.sigma2
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `r = ⌊n/2⌋`.
    pub fn r(&self) -> usize {
        self.level / 2
    }

    /// The eigenvalue `γ = −nc`.
    pub fn gamma(&self) -> Rational {
        -(&self.c * Rational::from_integer(BigInt::from(self.level)))
    }

    pub fn zero_poly(&self) -> HermitePoly {
        HermitePoly::zero(self.d, self.rho.clone())
    }

    pub fn basis(&self, idx: impl Into<MultiIndex>) -> HermitePoly {
        let idx = idx.into();
        assert_eq!(idx.dim(), self.d);
        HermitePoly::basis(idx, self.rho.clone())
    }

    fn check(&self, p: &HermitePoly) -> Result<()> {
        if p.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: p.dim(),
            });
        }
        if p.rho() != &self.rho {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }
}

fn int(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Coupling terms `Σ_s x_{s+1}∂_s φ` for a basis element, split by grade.
fn coupling(idx: &MultiIndex, rho: &Rational) -> (Vec<(MultiIndex, Rational)>, Vec<(MultiIndex, Rational)>) {
    let e = idx.entries();
    let mut same = Vec::new();
    let mut lower = Vec::new();
    for s in 0..e.len() - 1 {
        let i = e[s];
        if i == 0 {
            continue;
        }
        let j = e[s + 1];
        let mut up = e.to_vec();
        up[s] -= 1;
        up[s + 1] += 1;
        same.push((MultiIndex::new(up), int(i)));
        if j > 0 {
            let mut down = e.to_vec();
            down[s] -= 1;
            down[s + 1] -= 1;
            lower.push((MultiIndex::new(down), rho * int(i * j)));
        }
    }
    (same, lower)
}

/// `A_d p`.
pub fn apply_a(p: &HermitePoly, ctx: &OuContext) -> Result<HermitePoly> {
    ctx.check(p)?;
    let mut out = ctx.zero_poly();
    for (idx, a) in p.terms() {
        out.add_term(idx.clone(), -(&ctx.c * int(idx.degree()) * a));
        let (same, lower) = coupling(idx, &ctx.rho);
        for (k, w) in same.into_iter().chain(lower) {
            out.add_term(k, w * a);
        }
    }
    Ok(out)
}

/// Grade-preserving and grade-lowering parts of `(γ − A_d)φ` for a basis element `φ`.
fn shifted_parts(
    idx: &MultiIndex,
    ctx: &OuContext,
) -> (Rational, Vec<(MultiIndex, Rational)>, Vec<(MultiIndex, Rational)>) {
    let m = idx.degree() as i64;
    let diag = &ctx.c * Rational::from_integer(BigInt::from(m - ctx.level as i64));
    let (same, lower) = coupling(idx, &ctx.rho);
    (diag, same, lower)
}

/// `(γ − A_d) p` with `γ = −nc`.
pub fn apply_shifted(p: &HermitePoly, ctx: &OuContext) -> Result<HermitePoly> {
    ctx.check(p)?;
    let mut out = ctx.zero_poly();
    for (idx, a) in p.terms() {
        let (diag, same, lower) = shifted_parts(idx, ctx);
        out.add_term(idx.clone(), diag * a);
        for (k, w) in same.into_iter().chain(lower) {
            out.add_term(k, -(w * a));
        }
    }
    Ok(out)
}

/// `Q_m (γ − A_d) Q_m p`: the grade-preserving part, with diagonal `(m − n)c`.
pub fn apply_projected(p: &HermitePoly, m: usize, ctx: &OuContext) -> Result<HermitePoly> {
    ctx.check(p)?;
    let mut out = ctx.zero_poly();
    for (idx, a) in p.terms().filter(|(k, _)| k.degree() == m) {
        let (diag, same, _) = shifted_parts(idx, ctx);
        out.add_term(idx.clone(), diag * a);
        for (k, w) in same {
            out.add_term(k, -(w * a));
        }
    }
    Ok(out)
}

/// `Q_{m−2} (γ − A_d) Q_m p`: the grade-lowering part.
pub fn apply_projected_lower(p: &HermitePoly, m: usize, ctx: &OuContext) -> Result<HermitePoly> {
    ctx.check(p)?;
    let mut out = ctx.zero_poly();
    for (idx, a) in p.terms().filter(|(k, _)| k.degree() == m) {
        let (_, _, lower) = shifted_parts(idx, ctx);
        for (k, w) in lower {
            out.add_term(k, -(w * a));
        }
    }
    Ok(out)
}

/// `(γ − A_d)^t p`.
pub fn apply_power(p: &HermitePoly, ctx: &OuContext, t: usize) -> Result<HermitePoly> {
    ctx.check(p)?;
    let mut cur = p.clone();
    for _ in 0..t {
        if cur.is_zero() {
            break;
        }
        cur = apply_shifted(&cur, ctx)?;
    }
    Ok(cur)
}

/// Whether `p` is annihilated by `(γ − A_d)`.
pub fn is_eigenfunction(p: &HermitePoly, ctx: &OuContext) -> Result<bool> {
    Ok(apply_shifted(p, ctx)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int as q};

    fn ctx3(n: usize) -> OuContext {
        OuContext::unit(3, n)
    }

    #[test]
    fn context_validation() {
        assert!(OuContext::new(1, q(1), q(1), 0).is_err());
        assert!(OuContext::new(2, q(0), q(1), 0).is_err());
        assert!(OuContext::new(2, q(1), q(-1), 0).is_err());
        let ctx = OuContext::new(3, q(2), q(3), 4).unwrap();
        assert_eq!(ctx.rho(), &frac(3, 2));
        assert_eq!(ctx.gamma(), q(-8));
        assert_eq!(ctx.r(), 2);
    }

    #[test]
    fn constants_are_killed() {
        let ctx = ctx3(0);
        assert!(apply_a(&HermitePoly::one(3, q(1)), &ctx).unwrap().is_zero());
    }

    #[test]
    fn z_is_an_eigenfunction_at_level_one() {
        let ctx = OuContext::new(3, q(3), q(2), 1).unwrap();
        let z = ctx.basis([0, 0, 1]);
        assert_eq!(apply_a(&z, &ctx).unwrap(), z.scale(&-q(3)));
        assert!(apply_shifted(&z, &ctx).unwrap().is_zero());
    }

    #[test]
    fn triple_product_at_level_three() {
        let ctx = OuContext::new(3, q(2), q(3), 3).unwrap();
        let rho = ctx.rho().clone();
        let p = ctx.basis([1, 1, 1]);
        let expected = HermitePoly::from_terms(
            3,
            rho.clone(),
            [
                ([0, 2, 1], q(-1)),
                ([1, 0, 2], q(-1)),
                ([0, 0, 1], -rho.clone()),
                ([1, 0, 0], -rho.clone()),
            ],
        );
        assert_eq!(apply_shifted(&p, &ctx).unwrap(), expected);
    }

    #[test]
    fn level_one_chain() {
        let ctx = ctx3(1);
        let x = ctx.basis([1, 0, 0]);
        let y = ctx.basis([0, 1, 0]);
        let z = ctx.basis([0, 0, 1]);
        assert_eq!(apply_shifted(&x, &ctx).unwrap(), -&y);
        assert_eq!(apply_shifted(&-&y, &ctx).unwrap(), z);
        assert!(apply_shifted(&z, &ctx).unwrap().is_zero());
        assert_eq!(apply_power(&x, &ctx, 0).unwrap(), x);
        assert_eq!(apply_power(&x, &ctx, 2).unwrap(), z);
        assert!(apply_power(&x, &ctx, 3).unwrap().is_zero());
    }

    #[test]
    fn projected_examples() {
        let ctx = OuContext::new(3, q(5), q(1), 3).unwrap();
        assert!(apply_projected(&ctx.basis([0, 0, 3]), 3, &ctx).unwrap().is_zero());
        let got = apply_projected(&ctx.basis([1, 1, 1]), 3, &ctx).unwrap();
        let rho = ctx.rho().clone();
        let expected = HermitePoly::from_terms(3, rho.clone(), [([0, 2, 1], q(-1)), ([1, 0, 2], q(-1))]);
        assert_eq!(got, expected);
        let got = apply_projected(&ctx.basis([2, 0, 0]), 2, &ctx).unwrap();
        let expected = HermitePoly::from_terms(3, rho, [([2, 0, 0], q(-5)), ([1, 1, 0], q(-2))]);
        assert_eq!(got, expected);
    }

    #[test]
    fn projected_ignores_other_grades() {
        let ctx = ctx3(2);
        let p = &ctx.basis([1, 0, 0]) + &ctx.basis([0, 2, 0]);
        assert_eq!(
            apply_projected(&p, 1, &ctx).unwrap(),
            apply_projected(&ctx.basis([1, 0, 0]), 1, &ctx).unwrap()
        );
        // Q_0 (γ − A) H_1(x)H_1(y) = −ρ
        let lower = apply_projected_lower(&ctx.basis([1, 1, 0]), 2, &ctx).unwrap();
        assert_eq!(lower, ctx.basis([0, 0, 0]).scale(&-ctx.rho().clone()));
    }

    #[test]
    fn dimension_and_basis_checks() {
        let ctx = ctx3(1);
        let p2 = HermitePoly::basis([1, 0], q(1));
        assert!(matches!(apply_a(&p2, &ctx), Err(Error::DimensionMismatch { .. })));
        let other_rho = HermitePoly::basis([1, 0, 0], q(2));
        assert_eq!(apply_shifted(&other_rho, &ctx), Err(Error::BasisMismatch));
    }
}
