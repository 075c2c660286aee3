//! The eigenvector experiment for `S_k`: is
//! `u_m = [C(m,m)(−2)^m, C(m,m−1)(−2)^{m−1}, …, 1]ᵀ` with `m = r − k` an
//! eigenvector of `S_k` with eigenvalue `λ_k`, where `λ_0 = 1` and
//!
//! - odd `n`: `λ_k = 2k(2k+1)(4k−1)(4k+1) λ_{k−1}`
//! - even `n`: `λ_k = 2k(2k−1)(4k−3)(4k−1) λ_{k−1}`
//!
//! Nothing here is asserted; every row also carries the characteristic
//! polynomial and the integer eigenvalues of `S_k` with their eigenvectors, so
//! a different pairing of `u` with `S` shows up in the output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::transition::{transition_matrices, Parity};
use crate::exact::{binomial, format_rational, ExactMatrix, Rational};

/// `u_m[i] = C(m, m−i)(−2)^{m−i}`.
pub fn u_vector(m: usize) -> Vec<Rational> {
    (0..=m)
        .map(|i| {
            let e = m - i;
            let sign = if e % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            Rational::from_integer(sign * (BigInt::one() << e) * binomial(m, e))
        })
        .collect()
}

/// `λ_0, .., λ_r` for level `n`.
pub fn lambdas(n: usize) -> Vec<Rational> {
    let parity = Parity::of(n);
    let mut out = vec![Rational::one()];
    for k in 1..=n / 2 {
        let k = k as i64;
        let f = match parity {
            Parity::Odd => 2 * k * (2 * k + 1) * (4 * k - 1) * (4 * k + 1),
            Parity::Even => 2 * k * (2 * k - 1) * (4 * k - 3) * (4 * k - 1),
        };
        let next = out.last().unwrap() * Rational::from_integer(BigInt::from(f));
        out.push(next);
    }
    out
}

/// Coefficients `c_0, .., c_n` of `det(λI − A)` by Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &ExactMatrix) -> Vec<Rational> {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = ExactMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m).expect("square");
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        m = next;
        let am = a.mul(&m).expect("square");
        let trace: Rational = (0..n).map(|i| am.get(i, i).clone()).sum();
        coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn eval(poly: &[Rational], x: &Rational) -> Rational {
    poly.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(λ − x)`, assuming `x` is a root.
fn deflate(poly: &[Rational], x: &Rational) -> Vec<Rational> {
    let n = poly.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (1..=n).rev() {
        carry = &poly[i] + carry * x;
        out[i - 1] = carry.clone();
    }
    out
}

/// Trial division stops here; a larger leftover cofactor is given up on
/// unless it is provably prime.
const TRIAL_LIMIT: u64 = 1_000_000;
const MAX_DIVISORS: usize = 1_000_000;

/// Positive divisors of `v`, or `None` if `v` cannot be factored cheaply.
fn divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = v.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigInt::from(p) * p <= rest {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        // with no factor up to the limit, anything below its square is prime
        if rest > BigInt::from(TRIAL_LIMIT) * TRIAL_LIMIT {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut out = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pw = d.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &prime;
            }
        }
        if next.len() > MAX_DIVISORS {
            return None;
        }
        out = next;
    }
    out.sort();
    Some(out)
}

/// Integer roots of a monic integer polynomial, with multiplicity, in
/// ascending order. `None` when the constant term cannot be factored cheaply.
pub fn integer_roots(poly: &[Rational]) -> Option<Vec<BigInt>> {
    let mut poly = poly.to_vec();
    let mut roots = Vec::new();
    while poly.len() > 1 && poly[0].is_zero() {
        roots.push(BigInt::zero());
        poly.remove(0);
    }
    if poly.len() > 1 {
        if !poly.iter().all(|c| c.is_integer()) {
            return None;
        }
        for d in divisors(&poly[0].to_integer())? {
            for cand in [d.clone(), -d] {
                let x = Rational::from_integer(cand.clone());
                while poly.len() > 1 && eval(&poly, &x).is_zero() {
                    poly = deflate(&poly, &x);
                    roots.push(cand.clone());
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigenspace {
    pub eigenvalue: String,
    pub multiplicity: usize,
    pub vectors: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub k: usize,
    /// Index `m = r − k` of the `u` vector paired with `S_k`.
    pub m: usize,
    pub s: Vec<Vec<String>>,
    pub u: Vec<String>,
    pub lambda: String,
    pub s_u: Vec<String>,
    pub holds: bool,
    /// Whether `S_k u` is a multiple of `u` at all, and by what.
    pub u_is_eigenvector: bool,
    pub u_eigenvalue: Option<String>,
    pub determinant: String,
    /// `c_0, .., c_size` of `det(λI − S_k)`.
    pub characteristic_polynomial: Vec<String>,
    /// `None` when the determinant cannot be factored cheaply.
    pub integer_eigenvalues: Option<Vec<String>>,
    pub eigenspaces: Vec<Eigenspace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub parity: Parity,
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn holds_everywhere(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// The ratio `μ` with `w = μ v`, if there is one.
fn ratio(w: &[Rational], v: &[Rational]) -> Option<Rational> {
    let pivot = v.iter().position(|x| !x.is_zero())?;
    let mu = &w[pivot] / &v[pivot];
    w.iter().zip(v).all(|(a, b)| *a == &mu * b).then_some(mu)
}

fn eigenspaces(s: &ExactMatrix, roots: &[BigInt]) -> Vec<Eigenspace> {
    let mut distinct = roots.to_vec();
    distinct.dedup();
    distinct
        .into_iter()
        .map(|root| {
            let multiplicity = roots.iter().filter(|&x| *x == root).count();
            let mu = Rational::from_integer(root);
            let shifted = ExactMatrix::from_fn(s.rows(), s.cols(), |i, j| {
                if i == j {
                    s.get(i, j) - &mu
                } else {
                    s.get(i, j).clone()
                }
            });
            Eigenspace {
                eigenvalue: format_rational(&mu),
                multiplicity,
                vectors: shifted.kernel_basis().iter().map(|v| strings(&integral(v))).collect(),
            }
        })
        .collect()
}

/// Scales a vector to coprime integers with a positive last nonzero entry.
fn integral(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().rev().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd * &sign))
        .collect()
}

pub fn conjecture_check(n: usize) -> ConjectureReport {
    let r = n / 2;
    let t = transition_matrices(n);
    let lambdas = lambdas(n);
    let rows = (0..=r)
        .map(|k| {
            let s = &t.s[k];
            let m = r - k;
            let u = u_vector(m);
            let s_u = s.mul_vec(&u).expect("sizes agree");
            let scaled: Vec<Rational> = u.iter().map(|x| x * &lambdas[k]).collect();
            let mu = ratio(&s_u, &u);
            let poly = characteristic_polynomial(s);
            let roots = integer_roots(&poly);
            ConjectureRow {
                k,
                m,
                s: (0..s.rows()).map(|i| strings(s.row(i))).collect(),
                u: strings(&u),
                lambda: format_rational(&lambdas[k]),
                s_u: strings(&s_u),
                holds: s_u == scaled,
                u_is_eigenvector: mu.is_some(),
                u_eigenvalue: mu.as_ref().map(format_rational),
                determinant: format_rational(&s.determinant().expect("square")),
                characteristic_polynomial: strings(&poly),
                integer_eigenvalues: roots
                    .as_ref()
                    .map(|rs| rs.iter().map(|x| x.to_string()).collect()),
                eigenspaces: roots.as_ref().map(|rs| eigenspaces(s, rs)).unwrap_or_default(),
            }
        })
        .collect();
    ConjectureReport {
        n,
        parity: t.parity,
        rows,
    }
}
