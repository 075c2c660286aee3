//! Step matrices between heights of the basis graph and their products S_k.

use oujordan::jordan3d::transition_matrices;

fn main() {
    for n in [3, 4] {
        let t = transition_matrices(n);
        println!("n={n} ({:?})", t.parity);
        for (name, m) in t.named_matrices() {
            println!("{name} ({}×{}):\n{m}", m.rows(), m.cols());
        }
        for (k, s) in t.s.iter().enumerate() {
            println!("det S_{k} = {}", s.determinant().unwrap());
        }
    }
}
