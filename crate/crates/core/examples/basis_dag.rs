//! Basis graph of a level: print it as Graphviz DOT and check its weights.

use oujordan::dag::build_dag;

fn main() {
    let dag = build_dag(4);
    assert!(dag.symmetry_check());
    assert!(dag.matches_operator().unwrap());
    print!("{}", dag.export_dot());
}
