//! Polynomials in the tensor Hermite basis `H_{i_1}(x_1)···H_{i_d}(x_d)`.
//!
//! The 1-d polynomials have variance parameter `ρ`:
//! `H_0 = 1`, `H_1 = x`, `H_{m+1} = x·H_m − mρ·H_{m−1}`.
//!
//! Terms are kept in canonical order: ascending total degree, and inside a
//! grade decreasing lexicographic order on the index tuple. The triangular
//! solves in [`crate::jordan3d`] depend on this order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, double_factorial, format_rational, parse_rational, pow, Rational};

/// Index tuple `(i_1, .., i_d)` of a tensor Hermite basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        assert!(!entries.is_empty(), "multi-index must have d >= 1");
        Self(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> usize {
        self.0[axis]
    }

    /// All indices of dimension `dim` and total degree exactly `grade`, in canonical order.
    pub fn grade(dim: usize, grade: usize) -> Vec<MultiIndex> {
        fn rec(dim: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == dim {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=left).rev() {
                prefix.push(first);
                rec(dim, left - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(dim, grade, &mut Vec::with_capacity(dim), &mut out);
        out
    }

    /// All indices of total degree at most `max_degree`, in canonical order.
    pub fn up_to(dim: usize, max_degree: usize) -> Vec<MultiIndex> {
        (0..=max_degree).flat_map(|m| Self::grade(dim, m)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        Self::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for MultiIndex {
    fn from(v: [usize; N]) -> Self {
        Self::new(v.to_vec())
    }
}

/// Monomial coefficients `[a_0, .., a_n]` of `H_n(x) = Σ a_k x^k`.
pub fn hermite_1d(n: usize, rho: &Rational) -> Vec<Rational> {
    let mut prev = vec![Rational::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![Rational::zero(), Rational::one()];
    for m in 1..n {
        let mut next = vec![Rational::zero(); m + 2];
        for (k, a) in cur.iter().enumerate() {
            next[k + 1] += a;
        }
        let f = rho * Rational::from_integer(BigInt::from(m));
        for (k, a) in prev.iter().enumerate() {
            next[k] -= &f * a;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `H_n(x)` at a point.
pub fn hermite_1d_value(n: usize, rho: &Rational, x: &Rational) -> Rational {
    // three-term recurrence on values
    let mut prev = Rational::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for m in 1..n {
        let next = x * &cur - rho * Rational::from_integer(BigInt::from(m)) * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Hermite expansion of `x^n`: `Σ_k C(n,2k) (2k−1)!! ρ^k H_{n−2k}(x)`.
pub fn monomial_to_hermite(n: usize, rho: &Rational) -> HermitePoly {
    let mut p = HermitePoly::zero(1, rho.clone());
    for k in 0..=n / 2 {
        let c = Rational::from_integer(binomial(n, 2 * k) * double_factorial(2 * k as i64 - 1))
            * pow(rho, k);
        p.add_term(MultiIndex::new(vec![n - 2 * k]), c);
    }
    p
}

/// Sparse polynomial in the tensor Hermite basis with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitePoly {
    dim: usize,
    rho: Rational,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl HermitePoly {
    pub fn zero(dim: usize, rho: Rational) -> Self {
        assert!(dim >= 1);
        Self {
            dim,
            rho,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, rho: Rational) -> Self {
        Self::basis(vec![0; dim], rho)
    }

    /// A single basis element with coefficient 1.
    pub fn basis(idx: impl Into<MultiIndex>, rho: Rational) -> Self {
        let idx = idx.into();
        let mut p = Self::zero(idx.dim(), rho);
        p.terms.insert(idx, Rational::one());
        p
    }

    pub fn from_terms<I, M>(dim: usize, rho: Rational, terms: I) -> Self
    where
        I: IntoIterator<Item = (M, Rational)>,
        M: Into<MultiIndex>,
    {
        let mut p = Self::zero(dim, rho);
        for (idx, c) in terms {
            p.add_term(idx.into(), c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Rational {
        self.terms.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c` to the coefficient of `idx`, dropping the term if it cancels.
    pub fn add_term(&mut self, idx: MultiIndex, c: Rational) {
        assert_eq!(idx.dim(), self.dim, "index dimension does not match polynomial");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn same_basis(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rho == other.rho
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim, self.rho.clone());
        }
        Self {
            dim: self.dim,
            rho: self.rho.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    /// Highest grade present, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Multiplication by the coordinate `x_axis`, via `x·H_i = H_{i+1} + iρ·H_{i−1}`.
    pub fn mul_coordinate(&self, axis: usize) -> Self {
        assert!(axis < self.dim);
        let mut out = Self::zero(self.dim, self.rho.clone());
        for (idx, c) in &self.terms {
            let i = idx.get(axis);
            let mut up = idx.entries().to_vec();
            up[axis] += 1;
            out.add_term(MultiIndex::new(up), c.clone());
            if i > 0 {
                let mut down = idx.entries().to_vec();
                down[axis] -= 1;
                out.add_term(
                    MultiIndex::new(down),
                    c * &self.rho * Rational::from_integer(BigInt::from(i)),
                );
            }
        }
        out
    }

    /// Grade-`m` part `Q_m p`.
    pub fn project(&self, m: usize) -> Self {
        Self {
            dim: self.dim,
            rho: self.rho.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == m)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Grades carrying at least one nonzero coefficient.
    pub fn degree_support(&self) -> BTreeSet<usize> {
        self.terms.keys().map(MultiIndex::degree).collect()
    }

    pub fn is_homogeneous(&self, m: usize) -> bool {
        self.terms.keys().all(|k| k.degree() == m)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (idx, c) in &self.terms {
            let mut v = c.clone();
            for (&i, x) in idx.entries().iter().zip(point) {
                v *= hermite_1d_value(i, &self.rho, x);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Coefficients in the monomial basis, keyed by exponent tuple.
    pub fn to_monomials(&self) -> BTreeMap<Vec<usize>, Rational> {
        let mut cache: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        let mut out: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (idx, c) in &self.terms {
            let factors: Vec<Vec<Rational>> = idx
                .entries()
                .iter()
                .map(|&i| {
                    cache
                        .entry(i)
                        .or_insert_with(|| hermite_1d(i, &self.rho))
                        .clone()
                })
                .collect();
            let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c.clone())];
            for f in &factors {
                let mut next = Vec::new();
                for (exps, v) in &partial {
                    for (e, a) in f.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let mut ex = exps.clone();
                        ex.push(e);
                        next.push((ex, v * a));
                    }
                }
                partial = next;
            }
            for (ex, v) in partial {
                *out.entry(ex).or_insert_with(Rational::zero) += v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Converts monomial coefficients (keyed by exponent tuple) into the Hermite basis.
    pub fn from_monomials(dim: usize, rho: Rational, monomials: &BTreeMap<Vec<usize>, Rational>) -> Self {
        let mut out = Self::zero(dim, rho.clone());
        let mut cache: BTreeMap<usize, HermitePoly> = BTreeMap::new();
        for (exps, c) in monomials {
            assert_eq!(exps.len(), dim);
            let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c.clone())];
            for &e in exps {
                let expansion = cache
                    .entry(e)
                    .or_insert_with(|| monomial_to_hermite(e, &rho))
                    .clone();
                let mut next = Vec::new();
                for (ix, v) in &partial {
                    for (h, a) in expansion.terms() {
                        let mut ix = ix.clone();
                        ix.push(h.get(0));
                        next.push((ix, v * a));
                    }
                }
                partial = next;
            }
            for (ix, v) in partial {
                out.add_term(MultiIndex::new(ix), v);
            }
        }
        out
    }

    /// The JSON encoding `{"d", "rho", "terms": [{"coeff", "idx"}]}`.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            d: self.dim,
            rho: format_rational(&self.rho),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| TermJson {
                    coeff: format_rational(v),
                    idx: k.entries().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let rho = parse_rational(&json.rho)?;
        if json.d == 0 {
            return Err(Error::InvalidContext("polynomial dimension must be positive".into()));
        }
        let mut p = Self::zero(json.d, rho);
        for t in &json.terms {
            if t.idx.len() != json.d {
                return Err(Error::DimensionMismatch {
                    expected: json.d,
                    found: t.idx.len(),
                });
            }
            p.add_term(MultiIndex::new(t.idx.clone()), parse_rational(&t.coeff)?);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub d: usize,
    pub rho: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub idx: Vec<usize>,
}

impl AddAssign<&HermitePoly> for HermitePoly {
    fn add_assign(&mut self, rhs: &HermitePoly) {
        assert!(self.same_basis(rhs), "adding polynomials from different bases");
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl SubAssign<&HermitePoly> for HermitePoly {
    fn sub_assign(&mut self, rhs: &HermitePoly) {
        assert!(self.same_basis(rhs), "subtracting polynomials from different bases");
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }
}

impl Add for &HermitePoly {
    type Output = HermitePoly;
    fn add(self, rhs: &HermitePoly) -> HermitePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &HermitePoly {
    type Output = HermitePoly;
    fn sub(self, rhs: &HermitePoly) -> HermitePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &HermitePoly {
    type Output = HermitePoly;
    fn neg(self) -> HermitePoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for HermitePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.terms.iter().enumerate() {
            let mag = v.abs();
            match (n, v.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "H{k}")?;
            } else {
                write!(f, "{mag}·H{k}")?;
            }
        }
        Ok(())
    }
}
