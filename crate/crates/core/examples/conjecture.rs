//! Eigenvector experiment on S_k with a survey of nonnegative minors.

use oujordan::jordan3d::{conjecture_check, minors_report};

fn main() {
    for n in 1..=8 {
        for row in conjecture_check(n).rows {
            println!(
                "n={n} k={} u={:?} S·u={:?} holds={} eigenvalues={:?}",
                row.k, row.u, row.s_u, row.holds, row.integer_eigenvalues
            );
        }
        let minors = minors_report(n, 3);
        println!("  minors up to 3×3 clean: {}", minors.is_clean());
    }
}
