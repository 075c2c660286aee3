//! Full Jordan basis in three dimensions: one chain per eigenfunction.

use oujordan::jordan3d::jordan_basis;
use oujordan::operator::OuContext;

fn main() {
    let n = 4;
    let basis = jordan_basis(n, &OuContext::unit(3, n)).unwrap();
    println!("level {n}: segre {:?}", basis.segre());
    println!(
        "geometric {} algebraic {}",
        basis.geometric_multiplicity(),
        basis.algebraic_multiplicity()
    );
    for chain in &basis.chains {
        println!("\nk={} q={}", chain.k, chain.q);
        println!("  lead  {}", chain.lead);
        println!("  eigen {}", chain.eigenfunction());
    }
}
