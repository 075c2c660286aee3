//! The generator and its shifted form acting on single basis elements.

use oujordan::exact::int;
use oujordan::operator::{apply_a, apply_shifted, OuContext};

fn main() {
    let ctx = OuContext::new(3, int(2), int(1), 2).unwrap();
    println!("d=3 c={} σ²={} ρ={} γ={}", ctx.c(), ctx.sigma2(), ctx.rho(), ctx.gamma());
    for idx in [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 0, 2]] {
        let h = ctx.basis(idx);
        println!("A ({h}) = {}", apply_a(&h, &ctx).unwrap());
        println!("(γ−A) ({h}) = {}", apply_shifted(&h, &ctx).unwrap());
    }
}
