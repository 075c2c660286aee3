//! Hermite polynomials with variance parameter ρ and conversion to monomials.

use oujordan::exact::frac;
use oujordan::hermite::{hermite_1d, HermitePoly};

fn main() {
    let rho = frac(1, 2);
    for n in 0..=5 {
        let coeffs: Vec<String> = hermite_1d(n, &rho).iter().map(ToString::to_string).collect();
        println!("H_{n}: [{}]", coeffs.join(", "));
    }

    let p = HermitePoly::from_terms(3, rho.clone(), [([2, 0, 0], frac(1, 1)), ([0, 1, 1], frac(-3, 4))]);
    println!("\np = {p}");
    for (exps, a) in p.to_monomials() {
        println!("  x^{} y^{} z^{}  {a}", exps[0], exps[1], exps[2]);
    }
    println!("{}", serde_json::to_string_pretty(&p.to_json()).unwrap());
}
