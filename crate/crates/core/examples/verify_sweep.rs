//! Run every consistency check up to a level and print the log.
//! Set OUJORDAN_THREADS to cap the worker count.

use oujordan::verify::run_sweep;

fn main() {
    let max_n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let report = run_sweep(max_n);
    print!("{}", report.log());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
