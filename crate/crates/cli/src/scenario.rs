//! Scenario verifiers: `check nilpotent`, `check mv`, `check free`, `suite`.

use cychom_core::algcore::{nilpotency_index, quotient_by_ideal, Bimodule, SplitSquare};
use cychom_core::cyccat::{dold_kan, lambda_morphisms, validate_cyclic, SimplicialModule};
use cychom_core::cychom::{
    free_vanishing, hp_map, hp_of_ladder, mayer_vietoris, ExcisionError, HcLadder, HpError,
};
use cychom_core::hhdecomp::{
    gap_set, hh, hh_map, partition_decompose, partitions, weight_decompose, Partition,
};
use serde_json::json;

use crate::commands::{
    decompose_square, filtration_claims, format_partition, hp_claims, hp_json, piece_claims,
    CommandError, Options,
};
use crate::corpus::builtin;
use crate::format::{AlgebraSpec, Spec};
use crate::random;
use crate::report::{Builder, ScenarioReport, Verdict, Witness};

const PARITY: [&str; 2] = ["even", "odd"];

fn bundled(name: &str) -> Spec {
    builtin(name).expect("bundled corpus entry")
}

pub fn check_nilpotent(
    a: &AlgebraSpec,
    ideal: Option<&str>,
    opts: &Options,
) -> Result<ScenarioReport, CommandError> {
    let mut b = Builder::new("check nilpotent", opts.params());
    b.input(&a.name);
    nilpotent_claims(&mut b, a, ideal, opts)?;
    Ok(b.finish())
}

fn nilpotent_claims(
    b: &mut Builder,
    a: &AlgebraSpec,
    ideal: Option<&str>,
    opts: &Options,
) -> Result<(), CommandError> {
    let (iname, i) = a
        .ideal(ideal)
        .map_err(|e| CommandError::Invalid(e.to_string()))?;
    let Some(n) = nilpotency_index(&a.algebra, &i) else {
        b.claim(
            format!("{iname} is nilpotent"),
            Verdict::Fail,
            "no power of the ideal vanishes",
            Some(Witness::default()),
        );
        return Ok(());
    };
    b.claim(
        format!("{iname} is nilpotent"),
        Verdict::Pass,
        format!("I^{n} = 0"),
        None,
    );

    let depth = opts.hp_depth();
    let (q, f) = quotient_by_ideal(&a.algebra, &i);
    let src = HcLadder::new(&hh(&a.algebra, depth, opts.budget)?.module);
    let dst = HcLadder::new(&hh(&q, depth, opts.budget)?.module);
    let (hs, ht) = (
        hp_of_ladder(&src, opts.window),
        hp_of_ladder(&dst, opts.window),
    );
    hp_claims(b, "A: ", &hs);
    hp_claims(b, "A/I: ", &ht);
    b.data("hp_source", hp_json(&hs));
    b.data("hp_target", hp_json(&ht));

    match hp_map(&hh_map(&f, depth).maps, &src, &dst, opts.window) {
        Ok(m) => {
            for p in &m.parities {
                let name = PARITY[p.parity];
                b.check(
                    format!("HP {name}(A) → HP {name}(A/I) iso"),
                    p.iso,
                    format!(
                        "dims {} → {}, rank {}, read at HC_{}",
                        p.source_dim, p.target_dim, p.rank, p.degree
                    ),
                    || {
                        Witness::degree(p.degree as i64).note(format!(
                            "rank {} of a {}×{} matrix",
                            p.rank, p.target_dim, p.source_dim
                        ))
                    },
                );
                b.check(
                    format!("f_* S = S f_* ({name})"),
                    p.commutes_with_s,
                    "along the S-tower",
                    || Witness::degree(p.degree as i64),
                );
            }
            b.certify("HP map", 0, 1);
        }
        Err(HpError::Unstabilized { parity, side }) => {
            b.undetermined(
                "HP(A) → HP(A/I) iso",
                format!("{side} tower of parity {parity} has not stabilized at depth {depth}"),
            );
        }
        Err(e) => {
            b.claim(
                "HP(A) → HP(A/I) iso",
                Verdict::Fail,
                e.to_string(),
                Some(Witness::default()),
            );
        }
    }
    filtration_claims(b, a, ideal, opts, 3)
}

pub fn check_mv(s: &SplitSquare, opts: &Options) -> Result<ScenarioReport, CommandError> {
    let mut b = Builder::new("check mv", opts.params());
    b.input("split square");
    mv_claims(&mut b, s, opts)?;
    Ok(b.finish())
}

fn mv_claims(b: &mut Builder, s: &SplitSquare, opts: &Options) -> Result<(), CommandError> {
    let depth = opts.hp_depth();
    let r = match mayer_vietoris(s, depth, opts.window, opts.budget) {
        Ok(r) => r,
        Err(e @ (ExcisionError::Unstabilized(_) | ExcisionError::NoStableDegrees)) => {
            b.undetermined("Mayer–Vietoris sequence", e.to_string());
            return Ok(());
        }
        Err(ExcisionError::Hh(e)) => return Err(e.into()),
        Err(ExcisionError::Algebra(e)) => return Err(e.into()),
        Err(e) => {
            b.claim(
                "Mayer–Vietoris sequence",
                Verdict::Fail,
                e.to_string(),
                Some(Witness::default()),
            );
            return Ok(());
        }
    };
    for (name, h) in [
        ("A⁰", &r.corner),
        ("A¹", &r.a1),
        ("A²", &r.a2),
        ("A¹²", &r.a12),
    ] {
        hp_claims(b, &format!("{name}: "), h);
    }
    for n in &r.nodes {
        b.check(
            format!("exact at {:?} (HC_{})", n.position, n.degree),
            n.exact(),
            format!(
                "dim {}, ranks in {} out {}",
                n.dim, n.incoming_rank, n.outgoing_rank
            ),
            || {
                Witness::degree(n.degree as i64)
                    .note(format!("composite zero: {}", n.composite_zero))
            },
        );
    }
    b.check(
        "iterated fiber HP = 0",
        r.fiber_vanishes,
        format!("even {:?}, odd {:?}", r.fiber.hp_dim(0), r.fiber.hp_dim(1)),
        || Witness::default().note("nonzero stable image"),
    );
    b.check(
        "iterated fiber pieces are almost free",
        r.fiber_retracts_hold,
        "composite k·id through j_*G",
        Witness::default,
    );
    b.certify(
        "MV nodes (even, odd)",
        r.node_degrees[1] as i64,
        r.node_degrees[0] as i64,
    );
    b.data(
        "nodes",
        r.nodes
            .iter()
            .map(|n| json!({ "position": format!("{:?}", n.position), "degree": n.degree, "dim": n.dim, "in": n.incoming_rank, "out": n.outgoing_rank }))
            .collect::<Vec<_>>(),
    );
    b.data(
        "hp_dims",
        json!({
            "corner": [r.corner.hp_dim(0), r.corner.hp_dim(1)],
            "a1": [r.a1.hp_dim(0), r.a1.hp_dim(1)],
            "a2": [r.a2.hp_dim(0), r.a2.hp_dim(1)],
            "a12": [r.a12.hp_dim(0), r.a12.hp_dim(1)],
        }),
    );
    b.extend(
        "ifib/",
        decompose_square(&Spec::Square(Box::new(s.clone())), opts)?,
    );
    Ok(())
}

/// (a) `I` surjective, (b) `S = 0`, (c) `HP = 0` for `j_*N`.
pub fn free_claims(
    b: &mut Builder,
    prefix: &str,
    n: &SimplicialModule,
    opts: &Options,
) -> Result<(), CommandError> {
    let r = free_vanishing(n, opts.window).map_err(|e| CommandError::Invalid(e.to_string()))?;
    let d = r.max_degree;
    b.check(
        format!("{prefix}HH → HC surjective"),
        r.surjective(),
        format!("degrees 0..={}", d - 1),
        || Witness::degree(r.first_non_surjective.unwrap() as i64).note("rank I_n < dim HC_n"),
    );
    b.check(
        format!("{prefix}S = 0"),
        r.s_zero(),
        format!("degrees 2..={}", d - 1),
        || Witness::degree(r.first_nonzero_s.unwrap() as i64),
    );
    match r.hp_vanishes() {
        Some(ok) => {
            b.check(
                format!("{prefix}HP = 0"),
                ok,
                "both parities stabilized",
                || {
                    Witness::default().note(format!(
                        "dims {:?} / {:?}",
                        r.hp.hp_dim(0),
                        r.hp.hp_dim(1)
                    ))
                },
            );
        }
        None => {
            b.undetermined(
                format!("{prefix}HP = 0"),
                format!("towers not stabilized at depth {d}"),
            );
        }
    }
    b.check(
        format!("{prefix}bicomplex acyclicity"),
        r.acyclicity_holds,
        "odd columns and rows",
        Witness::default,
    );
    b.certify(format!("{prefix}HH, HC"), 0, d as i64 - 1);
    Ok(())
}

pub enum FreeSource<'a> {
    Constant,
    Spec(&'a Spec),
}

/// Free vanishing for one module plus `random` seeded random ones.
pub fn check_free(
    source: FreeSource<'_>,
    random: usize,
    opts: &Options,
) -> Result<ScenarioReport, CommandError> {
    let mut b = Builder::new("check free", opts.params());
    let depth = opts.hp_depth();
    let n = match source {
        FreeSource::Constant => {
            b.input("N = constant ℚ");
            SimplicialModule::constant(depth, 1)
        }
        FreeSource::Spec(Spec::Simplicial(n)) => {
            b.input("N from file");
            n.clone()
        }
        FreeSource::Spec(Spec::Chain(c)) => {
            b.input("N = Γ(C) from file");
            dold_kan(&c.diffs, depth)
        }
        FreeSource::Spec(other) => {
            return Err(CommandError::Unsupported {
                command: "check free",
                kind: other.kind(),
            });
        }
    };
    if let Some(v) = n.first_violation() {
        b.claim(
            "N is simplicial",
            Verdict::Fail,
            v.to_string(),
            Some(Witness::default()),
        );
        return Ok(b.finish());
    }
    free_claims(&mut b, "", &n, opts)?;
    random_free_claims(&mut b, random, opts)?;
    Ok(b.finish())
}

fn random_free_claims(b: &mut Builder, count: usize, opts: &Options) -> Result<(), CommandError> {
    if count == 0 {
        return Ok(());
    }
    b.input(format!(
        "{count} random N with dims ≤ 2, seed {}",
        opts.seed
    ));
    let mut rng = random::rng(opts.seed);
    let mut chains = Vec::new();
    for i in 0..count {
        let (dims, n) = random::simplicial_module(&mut rng, 2, opts.hp_depth());
        chains.push(dims);
        free_claims(b, &format!("random {i}: "), &n, opts)?;
    }
    b.data("random_chain_dims", chains);
    Ok(())
}

/// Every lemma instance of the bundled corpus, one verdict each.
pub fn run_suite(opts: &Options) -> Result<ScenarioReport, CommandError> {
    let mut b = Builder::new("suite", opts.params());
    let d = opts.max_degree;

    let order: Vec<String> = partitions(4).iter().map(format_partition).collect();
    let norms: Vec<u128> = partitions(4).iter().map(Partition::norm).collect();
    b.check(
        "partition order k=4",
        order.join(">") == "(4)>(3+1)>(2+2)>(2+1+1)>(1+1+1+1)" && norms == [256, 208, 160, 148, 85],
        format!("{} with norms {norms:?}", order.join(">")),
        || Witness::default().note(order.join(">")),
    );

    for (f, want) in [
        ([2u8, 2, 0, 1, 2, 1, 1, 0, 2, 0, 1], vec![0usize, 4, 8]),
        ([2, 2, 0, 1, 2, 1, 1, 0, 2, 0, 2], vec![4, 8]),
    ] {
        let got = gap_set(&f).members;
        b.check(
            format!("gap set of {f:?}"),
            got == want,
            format!("{got:?}"),
            || Witness::default().note(format!("expected {want:?}")),
        );
    }

    let lambda = lambda_morphisms(1, 1).len();
    b.check(
        "|Λ([1], [1])| = 6",
        lambda == 6,
        format!("{lambda} morphisms"),
        Witness::default,
    );

    // weight pieces of HH(ℚ ⋉ ℚ)
    let Spec::Algebra(q) = bundled("rationals") else {
        unreachable!()
    };
    let w = weight_decompose(&q.algebra, &Bimodule::regular(&q.algebra), d, opts.budget)?;
    b.check(
        "ℚ ⋉ ℚ: weight pieces add up",
        w.dims_add_up(),
        format!("degrees 0..={d}"),
        Witness::default,
    );
    let labels = w.algebra.labels().to_vec();
    for k in 1..=4 {
        piece_claims(
            &mut b,
            &format!("ℚ ⋉ ℚ: H({k})"),
            &w.hh,
            &labels,
            &w.pieces[k],
            k,
        );
    }

    // partition pieces of HH(ℚ ⋉ (ℚ ⊕ ℚ))
    let m = Bimodule::regular(&q.algebra);
    for k in 1..=3 {
        for p in partitions(k).into_iter().filter(|p| p.parts[0] <= 2) {
            let piece =
                partition_decompose(&q.algebra, &[m.clone(), m.clone()], &p, d, opts.budget)?;
            let labels = piece.algebra.labels().to_vec();
            piece_claims(
                &mut b,
                &format!("ℚ ⋉ ℚ²: H{}", format_partition(&p)),
                &piece.hh,
                &labels,
                &piece.piece,
                p.length(),
            );
        }
    }

    let Spec::Square(sq) = bundled("square_dual") else {
        unreachable!()
    };
    b.extend("square: ", decompose_square(&Spec::Square(sq), opts)?);

    let Spec::Algebra(cubic) = bundled("cubic") else {
        unreachable!()
    };
    let mut f = Builder::new("filtration", opts.params());
    filtration_claims(&mut f, &cubic, None, opts, 2)?;
    b.extend("x³: ", f.finish());

    // cyclic identities and D ∘ D = 0 on the corpus algebras
    for name in ["rationals", "dual_numbers", "cubic", "upper_triangular"] {
        let Spec::Algebra(a) = bundled(name) else {
            unreachable!()
        };
        let m = hh(&a.algebra, d, opts.budget)?.module;
        let v = validate_cyclic(&m);
        b.check(
            format!("HH({name}) cyclic identities"),
            v.is_valid(),
            format!("degrees 0..={d}"),
            || {
                let e = v.violation.clone().unwrap();
                Witness::degree(e.degree as i64)
                    .entry(e.entry)
                    .note(e.identity)
            },
        );
        let hc = crate::commands::hc_report(&Spec::Algebra(a), opts)?;
        for c in hc.claims {
            b.claim(
                format!("HC({name}): {}", c.name),
                c.verdict,
                c.detail,
                c.witness,
            );
        }
    }
    b.certify("lemma instances", 0, d as i64);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_invariance() {
        let Spec::Algebra(a) = builtin("dual_numbers").unwrap() else {
            unreachable!()
        };
        let r = check_nilpotent(&a, None, &Options::default()).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
        assert_eq!(r.data["hp_source"]["even"]["hp_dim"], json!(1));
        assert_eq!(r.data["hp_source"]["odd"]["hp_dim"], json!(0));
    }

    #[test]
    fn zero_ideal_is_trivially_invariant() {
        let Spec::Algebra(a) = builtin("rationals").unwrap() else {
            unreachable!()
        };
        let r = check_nilpotent(&a, None, &Options::default()).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
    }

    #[test]
    fn identity_square_collapses() {
        let Spec::Square(s) = builtin("square_identity").unwrap() else {
            unreachable!()
        };
        let r = check_mv(&s, &Options::default()).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
    }

    #[test]
    fn constant_and_zero_modules() {
        let r = check_free(FreeSource::Constant, 0, &Options::default()).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
        assert_eq!(r.count(Verdict::Pass), 4);
        let Spec::Chain(_) = builtin("chain_point").unwrap() else {
            unreachable!()
        };
        let r = check_free(
            FreeSource::Spec(&builtin("chain_example").unwrap()),
            2,
            &Options::default(),
        )
        .unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
    }

    #[test]
    fn wrong_spec_for_free() {
        assert!(check_free(
            FreeSource::Spec(&builtin("rationals").unwrap()),
            0,
            &Options::default()
        )
        .is_err());
    }
}
