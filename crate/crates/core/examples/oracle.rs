//! Brute-force Jordan structure from kernel dimensions, compared with the
//! structure predicted for d = 2 and d = 3, plus one case outside that range.

use oujordan::operator::OuContext;
use oujordan::oracle::{compare_with_theory, jordan_structure};

fn main() {
    for (d, n) in [(2, 5), (3, 4), (3, 5)] {
        let cmp = compare_with_theory(&OuContext::unit(d, n)).unwrap();
        println!("d={d} n={n}: segre {:?} agrees={}", cmp.oracle.segre, cmp.agrees);
    }
    let r = jordan_structure(&OuContext::unit(4, 2)).unwrap();
    println!("d=4 n=2: kernel dims {:?} segre {:?}", r.kernel_dims, r.segre);
}
