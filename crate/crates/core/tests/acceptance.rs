//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines appear on standard output in order.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::{group, Outcome};
use whitehead::cl1::{self, deflation, witness_w, AbelianInvariants, Cl1Options};
use whitehead::formulas;
use whitehead::genetic;
use whitehead::subgroups;
use whitehead::sympoly::{self, BilinearForm};
use whitehead::GroupSpec;

fn elementary(p: u64, n: usize) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_orders(vec![p; n])
}

fn expect_cl1(spec: &str, expected: &AbelianInvariants) -> Result<String, String> {
    let got = cl1::cl1_structure(&group(spec)).map_err(|e| format!("{spec}: {e}"))?;
    if &got == expected {
        Ok(format!("{spec}={got}"))
    } else {
        Err(format!("{spec}: expected {expected}, got {got}"))
    }
}

fn criterion_1() -> Outcome {
    let mut n = 0;
    for (k, e) in [(1, 0), (2, 0), (3, 3), (4, 20)] {
        expect_cl1(&format!("EA(3,{k})"), &elementary(3, e))?;
        n += 1;
    }
    for (k, e) in [(1, 0), (2, 0), (3, 10)] {
        expect_cl1(&format!("EA(5,{k})"), &elementary(5, e))?;
        n += 1;
    }
    Ok(n)
}

fn criterion_2() -> Outcome {
    let cases = [
        ("ES(3,1,1)", elementary(3, 2)),
        ("ES(3,1,2)", elementary(3, 2)),
        ("AES(3,1)", elementary(3, 5)),
        ("ES(5,1,1)", elementary(5, 4)),
    ];
    for (spec, e) in &cases {
        expect_cl1(spec, e)?;
    }
    Ok(cases.len())
}

fn criterion_3() -> Outcome {
    for (k, m) in [(5, 20), (6, 86)] {
        if formulas::complement_rank(3, k) != m {
            return Err(format!("closed form M at k = {k} is {}", formulas::complement_rank(3, k)));
        }
    }
    let cases = [("ES(3,2,1)", 21, 3), ("ES(3,2,2)", 20, 1), ("AES(3,2)", 87, 3)];
    for (spec, rank, k_order) in cases {
        let g = group(spec);
        let d = deflation(&g, g.frattini(), &Cl1Options::default()).map_err(|e| e.to_string())?;
        if d.source.invariants != elementary(3, rank) {
            return Err(format!("{spec}: Cl1 = {}", d.source.invariants));
        }
        if d.kernel.order() != Some(k_order) || (k_order == 3 && d.kernel != elementary(3, 1)) {
            return Err(format!("{spec}: K = {}", d.kernel));
        }
        if !d.consistent(3) {
            return Err(format!("{spec}: deflation checks fail"));
        }
    }
    Ok(cases.len())
}

fn criterion_4() -> Outcome {
    let es = group("ES(3,2,2)");
    let w = witness_w(&es, &Cl1Options::default()).map_err(|e| e.to_string())?;
    if !w.hyperplanes_vanish {
        return Err("ES(3,2,2): a hyperplane component of w is nonzero".into());
    }
    if w.w_y_order != es.center().order() as u64 || !w.matches() {
        return Err(format!("ES(3,2,2): w_Y = {} of order {}", w.w_y, w.w_y_order));
    }
    let aes = group("AES(3,2)");
    let w = witness_w(&aes, &Cl1Options::default()).map_err(|e| e.to_string())?;
    if w.y_modulus != 9 || w.w_y_order != 3 || !w.matches() {
        return Err(format!("AES(3,2): w_Y = {} of order {} in C{}", w.w_y, w.w_y_order, w.y_modulus));
    }
    Ok(2)
}

fn criterion_5() -> Outcome {
    let cases = [
        ("EA(3,1)", 0),
        ("EA(3,2)", 0),
        ("EA(3,3)", 0),
        ("EA(3,4)", 0),
        ("EA(5,2)", 6),
        ("ES(5,1,1)", 7),
        ("ES(5,1,2)", 7),
        ("AES(3,1)", 2),
        ("ES(3,1,1)", 0),
        ("ES(3,1,2)", 0),
        ("ES(3,2,1)", 0),
        ("ES(3,2,2)", 0),
    ];
    for (spec, rank) in cases {
        let s: GroupSpec = spec.parse().unwrap();
        let g = s.build().unwrap();
        let basis = genetic::genetic_basis(&g).map_err(|e| e.to_string())?;
        let counted = genetic::wh_free_rank(&g, &basis);
        let closed = s.family().expected_free_rank();
        if counted != rank || closed != rank {
            return Err(format!("{spec}: basis count {counted}, closed form {closed}, expected {rank}"));
        }
    }
    Ok(cases.len())
}

fn criterion_6() -> Outcome {
    let mut n = 0;
    for spec in ["EA(3,1)", "EA(3,2)", "EA(3,3)", "C(3,1)", "C(3,2)", "M(3)", "N(3)", "AES(3,1)"] {
        let g = group(spec);
        let source = cl1::cl1_compute(&g, &Cl1Options::default()).map_err(|e| e.to_string())?;
        for nrm in subgroups::all_subgroups(&g, 81).unwrap() {
            if !subgroups::is_normal(&g, &nrm) {
                continue;
            }
            let d = cl1::deflation_of(&g, source.clone(), &nrm, &Cl1Options::default())
                .map_err(|e| format!("{spec}: {e}"))?;
            if !d.surjective || !d.order_law_holds(3) || !d.consistent(3) {
                return Err(format!("{spec}: deflation along N of order {} fails", nrm.order()));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn criterion_7() -> Outcome {
    let cases = [(3, 2), (3, 3), (3, 4), (5, 2)];
    for (p, k) in cases {
        let r = sympoly::compare_with_relations(p, k).map_err(|e| e.to_string())?;
        if !r.passed() || r.expected_rank as u128 != formulas::binomial(p + k as u64 - 1, p) {
            return Err(format!("(C{p})^{k}: {r:?}"));
        }
    }
    Ok(cases.len())
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for (p, max_k) in [(3u64, 4usize), (5, 2)] {
        for k in 1..=max_k {
            let got = sympoly::span_rank_all_pairs(p, k).map_err(|e| e.to_string())?;
            if got as u128 != formulas::binomial(k as u64 + p - 1, p) {
                return Err(format!("all-pairs span for p = {p}, k = {k} is {got}"));
            }
            n += 1;
        }
    }
    for rank in [0, 4] {
        let b = BilinearForm::standard(3, 4, rank).unwrap();
        let got = sympoly::span_rank_isotropic_pairs(&b).map_err(|e| e.to_string())?;
        if got as u128 != formulas::sym_dim(3, 4) {
            return Err(format!("isotropic span for rank {rank} is {got}"));
        }
        n += 1;
    }
    for p in [3, 5] {
        let b = BilinearForm::standard(p, 2, 2).unwrap();
        let got = sympoly::span_rank_isotropic_pairs(&b).map_err(|e| e.to_string())?;
        if got != 2 {
            return Err(format!("isotropic span for p = {p}, k = 2 is {got}"));
        }
        n += 1;
    }
    Ok(n)
}

fn criterion_9() -> Outcome {
    let mut n = 0;
    for (name, suite) in common::structural_suites() {
        n += common::run_everywhere(suite).map_err(|e| format!("{name}: {e}"))?;
    }
    for (spec, g) in common::special_groups() {
        n += common::index_mode_agreement(spec, &g)?;
    }
    Ok(n)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("elementary abelian Cl1", criterion_1),
        ("order p^3 and p^4 values", criterion_2),
        ("order p^5 and p^6 values with kernels", criterion_3),
        ("witness element", criterion_4),
        ("free ranks", criterion_5),
        ("deflation along every normal subgroup", criterion_6),
        ("relation span equals image of r", criterion_7),
        ("degree-p span ranks", criterion_8),
        ("structural suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(cases) => println!("PASS {} {name} ({cases} cases, {secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
