//! One line per acceptance criterion, with its time limit. Runs without the
//! test harness so the table is always printed.

#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use cychom::commands::{self, Options};
use cychom::corpus::builtin;
use cychom::format::Spec;
use cychom::report::{ScenarioReport, Verdict};
use cychom::scenario::{self, FreeSource};
use cychom_core::cyccat::{free_cyclic, validate_cyclic, CyclicModule};
use cychom_core::cychom::cp_window;
use cychom_core::hhdecomp::{hh, ideal_filtration, partitions};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn opts(max_degree: usize) -> Options {
    Options {
        max_degree,
        ..Options::default()
    }
}

fn algebra(name: &str) -> cychom::format::AlgebraSpec {
    match builtin(name) {
        Some(Spec::Algebra(a)) => a,
        _ => panic!("{name} is not a bundled algebra"),
    }
}

/// Every claim passes and every name in `required` is among them.
fn all_pass(r: &ScenarioReport, required: &[&str]) -> Result<usize, String> {
    if let Some(c) = r.claims.iter().find(|c| c.verdict != Verdict::Pass) {
        return Err(format!(
            "{}: {} {} {:?}",
            r.scenario,
            c.verdict.label(),
            c.name,
            c.witness
        ));
    }
    if let Some(missing) = required.iter().find(|n| r.claim(n).is_none()) {
        return Err(format!("{}: no claim {missing:?}", r.scenario));
    }
    Ok(r.claims.len())
}

fn criterion_1() -> Outcome {
    let r = commands::partitions_report(4, &opts(6));
    let order = r.data["order"].as_str().unwrap_or_default().to_string();
    let norms: Vec<u128> = partitions(4).iter().map(|p| p.norm()).collect();
    // |P| = k_1 k^{k-1} + … + k_r k^{k-r}, evaluated by hand for k = 4
    let oracle = [
        4 * 64,
        3 * 64 + 16,
        2 * 64 + 2 * 16,
        2 * 64 + 16 + 4,
        64 + 16 + 4 + 1,
    ];
    if order != "(4)>(3+1)>(2+2)>(2+1+1)>(1+1+1+1)" {
        return Err(order);
    }
    if norms != oracle || norms != [256, 208, 160, 148, 85] {
        return Err(format!("norms {norms:?}"));
    }
    Ok(format!("{order}, norms {norms:?}"))
}

fn criterion_2() -> Outcome {
    let f = [2, 2, 0, 1, 2, 1, 1, 0, 2, 0, 1];
    let g = [2, 2, 0, 1, 2, 1, 1, 0, 2, 0, 2];
    let a = commands::gapset_report(&f, &opts(6)).map_err(|e| e.to_string())?;
    let b = commands::gapset_report(&g, &opts(6)).map_err(|e| e.to_string())?;
    let (af, ag) = (a.data["members"].to_string(), b.data["members"].to_string());
    if af != "[0,4,8]" || ag != "[4,8]" {
        return Err(format!("A_f = {af}, A_g = {ag}"));
    }
    Ok(format!("A_f = {af}, A_g = {ag}"))
}

fn criterion_3() -> Outcome {
    let o = opts(6);
    let err = |e: commands::CommandError| e.to_string();
    let w =
        commands::decompose_weights(&builtin("square_zero_rationals").unwrap(), &o).map_err(err)?;
    let mut n = all_pass(
        &w,
        &[
            "H(1) composite = 1·id",
            "H(2) composite = 2·id",
            "H(3) composite = 3·id",
            "H(4) composite = 4·id",
        ],
    )?;
    let two = builtin("square_zero_two").unwrap();
    for k in 1..=3 {
        for p in partitions(k).into_iter().filter(|p| p.parts[0] <= 2) {
            let r = commands::decompose_partition(&two, &p.parts, &o).map_err(err)?;
            let name = format!("H({:?}) composite = {}·id", p.parts, p.length());
            n += all_pass(&r, &[&name])?;
        }
    }
    let s = commands::decompose_square(&builtin("square_dual").unwrap(), &o).map_err(err)?;
    n += all_pass(
        &s,
        &[
            "H(1) composite = 1·id",
            "H(2) composite = 2·id",
            "H(3) composite = 3·id",
        ],
    )?;
    Ok(format!("{n} claims, degrees ≤ 6"))
}

fn criterion_4() -> Outcome {
    let r = scenario::check_free(FreeSource::Constant, 20, &opts(5)).map_err(|e| e.to_string())?;
    let n = all_pass(
        &r,
        &["HH → HC surjective", "S = 0", "HP = 0", "random 19: HP = 0"],
    )?;
    if n != 21 * 4 {
        return Err(format!("{n} claims for 21 modules"));
    }
    Ok(format!(
        "constant ℚ and 20 random modules, seed {}",
        r.parameters.seed
    ))
}

fn criterion_5() -> Outcome {
    let mut out = Vec::new();
    for name in ["dual_numbers", "cubic"] {
        let r =
            scenario::check_nilpotent(&algebra(name), None, &opts(6)).map_err(|e| e.to_string())?;
        all_pass(
            &r,
            &[
                "HP even(A) → HP even(A/I) iso",
                "HP odd(A) → HP odd(A/I) iso",
            ],
        )?;
        for side in ["hp_source", "hp_target"] {
            let (e, o) = (
                &r.data[side]["even"]["hp_dim"],
                &r.data[side]["odd"]["hp_dim"],
            );
            if e != 1 || o != 0 {
                return Err(format!("{name} {side}: even {e}, odd {o}"));
            }
        }
        out.push(name);
    }
    Ok(format!("{} → ℚ iso, dims (1, 0)", out.join(", ")))
}

fn criterion_6() -> Outcome {
    let Some(Spec::Square(s)) = builtin("square_dual") else {
        unreachable!()
    };
    let r = scenario::check_mv(&s, &opts(6)).map_err(|e| e.to_string())?;
    let n = all_pass(
        &r,
        &[
            "iterated fiber HP = 0",
            "exact at Corner (HC_4)",
            "exact at Base (HC_3)",
        ],
    )?;
    let nodes = r
        .claims
        .iter()
        .filter(|c| c.name.starts_with("exact at"))
        .count();
    Ok(format!("{nodes} nodes exact, {n} claims"))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn reduce(n: i128, d: i128) -> (i128, i128) {
    let g = gcd(n, d).max(1) * d.signum();
    (n / g, d / g)
}

/// Rank over ℚ, entries as reduced `(num, den)` pairs with `den > 0`.
fn rank(mut rows: Vec<Vec<(i128, i128)>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c].0 != 0) else {
            continue;
        };
        rows.swap(r, p);
        let (pn, pd) = rows[r][c];
        for i in 0..rows.len() {
            if i == r || rows[i][c].0 == 0 {
                continue;
            }
            let (fn_, fd) = reduce(rows[i][c].0 * pd, rows[i][c].1 * pn);
            for j in 0..ncols {
                let (a, b) = rows[r][j];
                let (x, y) = rows[i][j];
                rows[i][j] = reduce(x * b * fd - a * fn_ * y, y * b * fd);
            }
        }
        r += 1;
    }
    r
}

/// Unnormalized bar complex of ℚ[ε]: `b = Σ (-1)^i d_i` on `A^{⊗(n+1)}`,
/// words as bit strings (bit set = ε).
fn dual_number_hh_oracle(top: usize) -> Vec<usize> {
    let mul = |a: u32, b: u32| if a + b > 1 { None } else { Some(a + b) };
    let b_matrix = |n: usize| -> Vec<Vec<(i128, i128)>> {
        let (src, dst) = (1usize << (n + 1), 1usize << n);
        let mut m = vec![vec![(0i128, 1i128); src]; dst];
        for w in 0..src {
            let letters: Vec<u32> = (0..=n).map(|i| ((w >> i) & 1) as u32).collect();
            for i in 0..=n {
                let mut out = letters.clone();
                let prod = if i < n {
                    let p = mul(out[i], out[i + 1]);
                    out.remove(i + 1);
                    out[i] = p.unwrap_or(0);
                    p
                } else {
                    let p = mul(out[n], out[0]);
                    out.pop();
                    out[0] = p.unwrap_or(0);
                    p
                };
                if prod.is_none() {
                    continue;
                }
                let idx: usize = out
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| (x as usize) << j)
                    .sum();
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[idx][w] = reduce(m[idx][w].0 + sign, 1);
            }
        }
        m
    };
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|n| if n == 0 { 0 } else { rank(b_matrix(n)) })
        .collect();
    (0..=top)
        .map(|n| (1usize << (n + 1)) - ranks[n] - ranks[n + 1])
        .collect()
}

fn criterion_7() -> Outcome {
    let oracle = dual_number_hh_oracle(5);
    if oracle != [2, 1, 1, 1, 1, 1] {
        return Err(format!("oracle {oracle:?}"));
    }
    let m = hh(&algebra("dual_numbers").algebra, 6, usize::MAX)
        .map_err(|e| e.to_string())?
        .module;
    let w = cp_window(&m, 0, 0).map_err(|n| format!("window fails at {n}"))?;
    let dims: Vec<usize> = (0..=5i64)
        .map(|n| {
            let dim = w.layout(n).dim;
            dim - w.total_differential(n).rank() - w.total_differential(n + 1).rank()
        })
        .collect();
    if dims != oracle {
        return Err(format!("column 0 gives {dims:?}, oracle {oracle:?}"));
    }
    Ok(format!("{dims:?}"))
}

fn criterion_8() -> Outcome {
    let o = opts(6);
    let mut modules: Vec<(String, CyclicModule)> = Vec::new();
    for name in ["rationals", "dual_numbers", "cubic", "upper_triangular"] {
        modules.push((
            name.to_string(),
            hh(&algebra(name).algebra, 6, o.budget)
                .map_err(|e| e.to_string())?
                .module,
        ));
    }
    if let Some(Spec::Cyclic(m)) = builtin("constant_cyclic") {
        modules.push(("constant".into(), m));
    }
    for name in ["chain_point", "chain_example"] {
        let (_, m) = commands::cyclic_module(&builtin(name).unwrap(), 6, o.budget)
            .map_err(|e| e.to_string())?;
        modules.push((name.into(), m));
    }
    modules.push((
        "j_*ℚ".into(),
        free_cyclic(&cychom_core::cyccat::SimplicialModule::constant(6, 1)),
    ));
    let mut windows = 0;
    for (name, m) in &modules {
        if let Some(v) = validate_cyclic(m).violation {
            return Err(format!("{name}: {v}"));
        }
        let d = m.max_degree() as i64;
        for (lo, hi) in [(0, 0), (-2, 1), (0, d), (-4, d)] {
            let w = cp_window(m, lo, hi)
                .map_err(|n| format!("{name}: window [{lo}, {hi}] fails at {n}"))?;
            if let Some(n) = w.square_zero_failure() {
                return Err(format!("{name}: D∘D ≠ 0 in degree {n} on [{lo}, {hi}]"));
            }
            windows += 1;
        }
    }
    let mut claims = all_pass(&scenario::run_suite(&o).map_err(|e| e.to_string())?, &[])?;
    for name in ["rationals", "dual_numbers"] {
        let r =
            commands::sbi_report(&Spec::Algebra(algebra(name)), &o).map_err(|e| e.to_string())?;
        claims += all_pass(&r, &["SBI rank-exact"])?;
    }
    Ok(format!(
        "{} modules, {windows} windows, {claims} claims",
        modules.len()
    ))
}

fn criterion_9() -> Outcome {
    let a = algebra("cubic");
    let (_, i) = a.ideal(Some("maximal")).map_err(|e| e.to_string())?;
    let f = ideal_filtration(&a.algebra, &i, 6, usize::MAX).map_err(|e| e.to_string())?;
    if f.nilpotency != 3 {
        return Err(format!("nilpotency {}", f.nilpotency));
    }
    let bad = f.vanishing_violations(3 * 7 + 3);
    if !bad.is_empty() {
        return Err(format!("F^k_q ≠ 0 at {bad:?}"));
    }
    // x²⊗…⊗x² has level 2(q+1), so the bound is not vacuous
    for q in 0..=6 {
        if f.dims(2 * (q + 1))[q] != 1 {
            return Err(format!(
                "F^{}_{q} should be the single word x2^⊗{}",
                2 * (q + 1),
                q + 1
            ));
        }
    }
    Ok("q ≤ 6, k ≤ 24".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("partition order", 1, criterion_1),
        ("gap sets", 1, criterion_2),
        ("retraction lemmas", 30, criterion_3),
        ("free cyclic vanishing", 120, criterion_4),
        ("nilpotent invariance", 120, criterion_5),
        ("Mayer–Vietoris", 180, criterion_6),
        ("bar complex oracle", 30, criterion_7),
        ("structural properties", 180, criterion_8),
        ("filtration bound", 10, criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let (verdict, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over the time limit: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {} {verdict} {name} ({:.2} s, limit {limit} s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if verdict != "PASS" {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
