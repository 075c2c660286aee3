//! Acceptance criteria, one PASS/FAIL line each. Runs without the test
//! harness so the lines always show up in `cargo test` output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Signed;
use oujordan::dag::{build_dag, height, label};
use oujordan::exact::{binomial_usize, int, Rational};
use oujordan::jordan2d::build_chain_2d;
use oujordan::jordan3d::{
    conjecture_check, derived_step_matrix, eigenfunction, jordan_basis, minors_report, psi_coefficients,
    transition_matrices, SAMPLES_PER_MATRIX,
};
use oujordan::hermite::MultiIndex;
use oujordan::operator::{apply_power, apply_shifted, OuContext};
use oujordan::oracle::jordan_structure;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params() -> [(Rational, Rational); 3] {
    [(int(1), int(1)), (int(2), int(1)), (int(1), int(3))]
}

fn d2_closed_form() -> Outcome {
    let mut count = 0;
    for n in 0..=12 {
        for (c, s) in params() {
            let ctx = OuContext::new(2, c.clone(), s.clone(), n).map_err(|e| e.to_string())?;
            // build_chain_2d compares every power with the closed form, checks the
            // last element is (−1)^n H_n(y) and that one more step gives 0
            let chain = build_chain_2d(n, &ctx).map_err(|e| format!("n={n} c={c} s2={s}: {e}"))?;
            ensure(chain.elements == chain.closed_form, || format!("n={n}: closed form differs"))?;
            ensure(apply_shifted(chain.eigenfunction(), &ctx).unwrap().is_zero(), || {
                format!("n={n}: last element is not an eigenfunction")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} chains, n<=12, 3 parameter sets"))
}

fn d2_oracle() -> Outcome {
    for n in 0..=10 {
        let r = jordan_structure(&OuContext::unit(2, n)).map_err(|e| e.to_string())?;
        ensure(
            r.segre == vec![n + 1] && r.geometric == 1 && r.algebraic == n + 1 && r.index == n + 1,
            || format!("n={n}: {r:?}"),
        )?;
    }
    Ok("segre (n+1) for n<=10".into())
}

fn d3_oracle() -> Outcome {
    for n in 0..=8 {
        let r = jordan_structure(&OuContext::unit(3, n)).map_err(|e| e.to_string())?;
        let segre: Vec<usize> = (0..=n / 2).map(|k| 2 * n + 1 - 4 * k).collect();
        let total = binomial_usize(n + 2, 2);
        ensure(segre.iter().sum::<usize>() == total, || format!("n={n}: sum of q_k"))?;
        ensure(
            r.segre == segre && r.geometric == n / 2 + 1 && r.algebraic == total && r.index == 2 * n + 1,
            || format!("n={n}: oracle {r:?}, expected segre {segre:?}"),
        )?;
    }
    Ok("segre {2n+1-4k} for n<=8".into())
}

fn d3_chains() -> Outcome {
    for n in 0..=6 {
        let ctx = OuContext::unit(3, n);
        let basis = jordan_basis(n, &ctx).map_err(|e| format!("n={n}: {e}"))?;
        for chain in &basis.chains {
            let h = eigenfunction(n, chain.k, &ctx).map_err(|e| e.to_string())?.h;
            ensure(!h.is_zero(), || format!("n={n} k={}: h_k = 0", chain.k))?;
            ensure(apply_power(&chain.lead, &ctx, chain.q).unwrap().is_zero(), || {
                format!("n={n} k={}: (γ−A)^q f != 0", chain.k)
            })?;
            ensure(apply_power(&chain.lead, &ctx, chain.q - 1).unwrap() == h, || {
                format!("n={n} k={}: (γ−A)^(q−1) f != h_k", chain.k)
            })?;
        }
        let all: Vec<_> = basis.chains.iter().flat_map(|c| c.elements.iter()).collect();
        let rank = oujordan::jordan3d::coordinate_matrix(&all, n).rank();
        ensure(rank == binomial_usize(n + 2, 2), || format!("n={n}: rank {rank}"))?;
    }
    Ok("n<=6, every k, full rank".into())
}

fn eigen_formula() -> Outcome {
    for n in 0..=8 {
        for (c, s) in params() {
            let ctx = OuContext::new(3, c, s, n).unwrap();
            for k in 0..=n / 2 {
                let h = eigenfunction(n, k, &ctx).map_err(|e| e.to_string())?.h;
                let top = h.project(n);
                ensure(top.len() == k + 1, || format!("n={n} k={k}: extra top-grade terms"))?;
                for (i, a) in psi_coefficients(k).iter().enumerate() {
                    let idx = MultiIndex::from([k - i, 2 * i, n - k - i]);
                    ensure(top.coeff(&idx) == *a, || format!("n={n} k={k}: coefficient {i}"))?;
                }
                ensure(apply_shifted(&h, &ctx).unwrap().is_zero(), || format!("n={n} k={k}: not an eigenfunction"))?;
            }
        }
    }
    Ok("n<=8, 3 parameter sets".into())
}

fn transitions() -> Outcome {
    let mut checked = 0;
    let mut sampled = 0;
    for n in 1..=10 {
        let t = transition_matrices(n);
        for (k, s) in t.s.iter().enumerate() {
            let det = s.determinant().unwrap();
            ensure(det.is_positive(), || format!("n={n} k={k}: det S = {det}"))?;
        }
        let report = minors_report(n, usize::MAX);
        ensure(report.negative_count() == 0, || {
            format!("n={n}: {} negative minors", report.negative_count())
        })?;
        for m in &report.matrices {
            if !m.exhaustive {
                ensure(m.checked >= SAMPLES_PER_MATRIX, || format!("n={n} {}: too few samples", m.name))?;
                sampled += 1;
            }
            checked += m.checked;
        }
    }
    Ok(format!("{checked} minors >= 0 ({sampled} sampled matrices), det S_k > 0"))
}

fn step_derivation() -> Outcome {
    let mut count = 0;
    for n in 1..=8 {
        let t = transition_matrices(n);
        for set in t.steps.iter().flatten() {
            for (kind, m) in set.matrices() {
                let derived = derived_step_matrix(n, kind.source_height(n, set.k)).map_err(|e| e.to_string())?;
                ensure(derived == *m, || format!("n={n} {}_{}", kind.name(), set.k))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} step matrices equal minus the projected operator"))
}

fn conjecture() -> Outcome {
    let mut table = Vec::new();
    for n in 1..=10 {
        let report = conjecture_check(n);
        ensure(report.rows.len() == n / 2 + 1, || format!("n={n}: missing rows"))?;
        let cells: Vec<String> = report
            .rows
            .iter()
            .map(|r| format!("k{}={}", r.k, if r.holds { "T" } else { "F" }))
            .collect();
        table.push(format!("n{n}[{}]", cells.join(",")));
    }
    let row = &conjecture_check(3).rows[0];
    ensure(row.s == [["2", "2"], ["2", "5"]], || format!("S_0 = {:?}", row.s))?;
    ensure(row.u == ["-2", "1"] && row.s_u == ["-2", "1"], || format!("S_0 u = {:?}", row.s_u))?;
    ensure(row.u_eigenvalue.as_deref() == Some("1") && row.holds, || "eigenvalue of u".into())?;
    Ok(format!("reported: {}", table.join(" ")))
}

fn dag() -> Outcome {
    for n in 0..=12 {
        let dag = build_dag(n);
        ensure(dag.vertices().len() == binomial_usize(n + 2, 2), || format!("n={n}: order"))?;
        ensure(dag.symmetry_check(), || format!("n={n}: symmetry"))?;
        ensure(dag.vertices_at_height(n).len() == n / 2 + 1, || format!("n={n}: middle height"))?;
        for e in dag.edges() {
            let (u, v) = (&dag.vertices()[e.from], &dag.vertices()[e.to]);
            ensure(height(v) == height(u) + 1 && height(v) == v[1] + 2 * v[2], || format!("n={n}: heights"))?;
        }
        ensure(dag.matches_operator().unwrap(), || format!("n={n}: weights"))?;
    }
    let figures: [(usize, &[(&str, &str)]); 2] = [
        (
            3,
            &[
                ("300", "210"), ("210", "120"), ("210", "201"), ("120", "030"), ("120", "111"), ("201", "111"),
                ("030", "021"), ("111", "021"), ("111", "102"), ("021", "012"), ("102", "012"), ("012", "003"),
            ],
        ),
        (
            4,
            &[
                ("400", "310"), ("310", "220"), ("310", "301"), ("220", "130"), ("220", "211"), ("301", "211"),
                ("130", "040"), ("130", "121"), ("211", "121"), ("211", "202"), ("040", "031"), ("121", "031"),
                ("121", "112"), ("202", "112"), ("031", "022"), ("112", "022"), ("112", "103"), ("022", "013"),
                ("103", "013"), ("013", "004"),
            ],
        ),
    ];
    for (n, figure) in figures {
        let dag = build_dag(n);
        let mut ours: Vec<(String, String)> = dag
            .edges()
            .iter()
            .map(|e| (label(&dag.vertices()[e.from], n), label(&dag.vertices()[e.to], n)))
            .collect();
        let mut theirs: Vec<(String, String)> = figure.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        ours.sort();
        theirs.sort();
        ensure(ours == theirs, || format!("n={n}: edges differ from the figure"))?;
        let dot = dag.export_dot();
        for (a, b) in figure {
            ensure(dot.contains(&format!("\"{a}\" -> \"{b}\"")), || format!("DOT misses {a}->{b}"))?;
        }
    }
    Ok("n<=12; n=3 and n=4 edge sets match the figures".into())
}

fn determinism() -> Outcome {
    let run = |format: &str, threads: Option<&str>| -> Result<Vec<u8>, String> {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_oujordan"));
        cmd.args(["verify", "--max-n", "6", "--format", format]);
        match threads {
            Some(t) => cmd.env("OUJORDAN_THREADS", t),
            None => cmd.env_remove("OUJORDAN_THREADS"),
        };
        let out = cmd.output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("verify exited with {:?}", out.status.code()))?;
        Ok(out.stdout)
    };
    for format in ["text", "json"] {
        let first = run(format, None)?;
        ensure(first == run(format, None)?, || format!("{format}: two runs differ"))?;
        ensure(first == run(format, Some("1"))?, || format!("{format}: single-threaded run differs"))?;
    }
    Ok("verify --max-n 6: text and json byte-identical across runs and thread counts".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("d=2 closed form", d2_closed_form, Duration::from_secs(10)),
        ("d=2 structure vs oracle", d2_oracle, Duration::from_secs(30)),
        ("d=3 structure vs oracle", d3_oracle, Duration::from_secs(180)),
        ("d=3 constructive chains", d3_chains, Duration::from_secs(120)),
        ("eigenfunction formula", eigen_formula, Duration::MAX),
        ("transition matrices", transitions, Duration::MAX),
        ("step-matrix derivation", step_derivation, Duration::MAX),
        ("conjecture experiment", conjecture, Duration::MAX),
        ("basis DAG", dag, Duration::MAX),
        ("determinism", determinism, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            ensure(elapsed <= budget, || format!("took {elapsed:.1?}, budget {budget:?}"))?;
            Ok(detail)
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
