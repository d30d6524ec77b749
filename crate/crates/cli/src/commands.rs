//! Reports for the computational commands: `hh`, `hc`, `hp`, `sbi`,
//! `decompose`, `gapset`, `partitions`.

use cychom_core::algcore::{associated_graded, square_zero_extension, AlgebraError, Bimodule};
use cychom_core::cyccat::{dold_kan, free_cyclic, validate_cyclic, CyclicModule};
use cychom_core::cychom::{
    hp_of_ladder, min_hp_depth, sbi_of_ladder, BicomplexWindow, ColumnMaps, HcLadder, HpReport,
    NodeKind,
};
use cychom_core::hhdecomp::{
    gap_set, graded_filtration, hh, ideal_filtration, moore_homology_dims, partition_decompose,
    partitions, split_square_ifib, weight_decompose, HhError, HochschildModule, LabeledPiece,
    Partition, DEFAULT_WORD_BUDGET,
};
use serde_json::json;

use crate::corpus::LoadError;
use crate::format::{AlgebraSpec, Spec};
use crate::report::{first_difference, Builder, Parameters, ScenarioReport, Verdict, Witness};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Debug)]
pub struct Options {
    pub max_degree: usize,
    pub window: usize,
    pub budget: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_degree: 6,
            window: 3,
            budget: DEFAULT_WORD_BUDGET,
            seed: DEFAULT_SEED,
        }
    }
}

impl Options {
    /// Depth used for `HP`: deep enough for `window + 2` stages per parity.
    pub fn hp_depth(&self) -> usize {
        self.max_degree.max(min_hp_depth(self.window))
    }

    pub fn params(&self) -> Parameters {
        Parameters {
            max_degree: self.max_degree,
            window: self.window,
            budget: self.budget,
            seed: self.seed,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Hh(#[from] HhError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("`{command}` does not accept a {kind} document")]
    Unsupported {
        command: &'static str,
        kind: &'static str,
    },
    #[error("{0}")]
    Invalid(String),
}

/// The cyclic module a document stands for, built to degree `depth`:
/// `HH` of an algebra (of `B ⋉ M`, of the corner of a square), the module
/// itself, or `j_*N` for a simplicial module or `j_*Γ(C)` for a chain complex.
pub fn cyclic_module(
    spec: &Spec,
    depth: usize,
    budget: usize,
) -> Result<(String, CyclicModule), CommandError> {
    Ok(match spec {
        Spec::Algebra(a) => (
            format!("HH({})", a.name),
            hh(&a.algebra, depth, budget)?.module,
        ),
        Spec::SquareZero { base, bimodules } => {
            let m = direct_sum(bimodules);
            let (a, _) = square_zero_extension(&base.algebra, &m)?;
            (
                format!("HH({} ⋉ M)", base.name),
                hh(&a, depth, budget)?.module,
            )
        }
        Spec::Square(s) => ("HH(A⁰)".to_string(), hh(&s.corner, depth, budget)?.module),
        Spec::Cyclic(m) => (
            "cyclic module".to_string(),
            m.truncate(depth.min(m.max_degree())),
        ),
        Spec::Simplicial(n) => (
            "j_*N".to_string(),
            free_cyclic(&n.truncate(depth.min(n.max_degree()))),
        ),
        Spec::Chain(c) => (
            "j_*Γ(C)".to_string(),
            free_cyclic(&dold_kan(&c.diffs, depth)),
        ),
    })
}

fn direct_sum(ms: &[Bimodule]) -> Bimodule {
    ms[1..]
        .iter()
        .fold(ms[0].clone(), |acc, m| acc.direct_sum(m))
}

pub fn hh_report(spec: &Spec, opts: &Options) -> Result<ScenarioReport, CommandError> {
    let mut b = Builder::new("hh", opts.params());
    let (name, m) = cyclic_module(spec, opts.max_degree, opts.budget)?;
    b.input(&name);
    let d = m.max_degree();
    let v = validate_cyclic(&m);
    b.check(
        "cyclic identities",
        v.is_valid(),
        format!("checked in degrees 0..={d}"),
        || {
            let e = v.violation.clone().unwrap();
            Witness::degree(e.degree as i64)
                .entry(e.entry)
                .note(e.identity)
        },
    );
    b.data("module_dims", m.dims());
    b.data("hh_dims", moore_homology_dims(&m));
    b.certify("HH", 0, d as i64 - 1);
    Ok(b.finish())
}

/// `D ∘ D = 0`, odd-column and row acyclicity on one window.
fn bicomplex_claims(b: &mut Builder, m: &CyclicModule) {
    let d = m.max_degree() as i64;
    let maps = ColumnMaps::new(m);
    let w = BicomplexWindow::new(maps.clone(), -2, d.max(1));
    let failure = w.square_zero_failure();
    b.check(
        "total differential squares to zero",
        failure.is_none(),
        format!("window [-2, {}]", d.max(1)),
        || Witness::degree(failure.unwrap()),
    );
    let odd = maps.odd_column_failures();
    b.check(
        "odd columns acyclic",
        odd.is_empty(),
        format!("degrees 0..={}", d - 1),
        || Witness::degree(odd[0] as i64),
    );
    let rows = maps.row_failures();
    b.check(
        "rows acyclic",
        rows.is_empty(),
        format!("rows 0..={d}"),
        || Witness::degree(rows[0] as i64),
    );
}

pub fn hc_report(spec: &Spec, opts: &Options) -> Result<ScenarioReport, CommandError> {
    let mut b = Builder::new("hc", opts.params());
    let (name, m) = cyclic_module(spec, opts.max_degree, opts.budget)?;
    b.input(&name);
    bicomplex_claims(&mut b, &m);
    let l = HcLadder::new(&m);
    let d = l.max_degree();
    b.data("hc_dims", l.dims());
    b.data(
        "s_ranks",
        (0..d).map(|n| l.s_matrix(n).rank()).collect::<Vec<_>>(),
    );
    b.certify("HC", 0, d as i64 - 1);
    Ok(b.finish())
}

pub fn hp_json(r: &HpReport) -> serde_json::Value {
    let parity = |p: usize| {
        let t = &r.parities[p];
        json!({
            "hc_degrees": t.degrees,
            "deepest_stage_is_cycles": t.deepest_is_cycles,
            "stage_dims": t.stage_dims,
            "eventual_image_dims": t.image_dims,
            "stabilized": t.is_stabilized(),
            "lim_dim": t.lim_dim,
            "hp_dim": r.hp_dim(p),
        })
    };
    json!({ "depth": r.max_degree, "window": r.window, "hc_dims": r.hc_dims, "even": parity(0), "odd": parity(1) })
}

/// One claim per parity: stabilized (PASS) or undetermined with the reason.
pub fn hp_claims(b: &mut Builder, prefix: &str, r: &HpReport) {
    for (p, name) in [(0, "even"), (1, "odd")] {
        let t = &r.parities[p];
        let claim = format!("{prefix}HP {name} stabilized");
        match r.hp_dim(p) {
            Some(dim) => {
                b.claim(
                    claim,
                    Verdict::Pass,
                    format!("dim {dim}, lim¹ = 0, {} stages", t.stage_dims.len()),
                    None,
                );
            }
            None if t.insufficient_depth => {
                b.undetermined(
                    claim,
                    format!(
                        "only {} tower stages at depth {}; need window + 2",
                        t.stage_dims.len(),
                        r.max_degree
                    ),
                );
            }
            None => {
                b.undetermined(
                    claim,
                    format!(
                        "eventual images not constant over the last {} stages",
                        r.window
                    ),
                );
            }
        }
    }
}

pub fn hp_report(spec: &Spec, opts: &Options) -> Result<ScenarioReport, CommandError> {
    let mut b = Builder::new("hp", opts.params());
    let depth = opts.hp_depth();
    let (name, m) = cyclic_module(spec, depth, opts.budget)?;
    b.input(&name);
    let r = hp_of_ladder(&HcLadder::new(&m), opts.window);
    hp_claims(&mut b, "", &r);
    b.data("hp", hp_json(&r));
    b.certify("HC", 0, r.max_degree as i64 - 1);
    Ok(b.finish())
}

pub fn sbi_report(spec: &Spec, opts: &Options) -> Result<ScenarioReport, CommandError> {
    let mut b = Builder::new("sbi", opts.params());
    let (name, m) = cyclic_module(spec, opts.max_degree, opts.budget)?;
    b.input(&name);
    let l = HcLadder::new(&m);
    let r = sbi_of_ladder(&l, opts.window + 2, opts.window)
        .map_err(|e| CommandError::Invalid(e.to_string()))?;
    b.check(
        "HH agrees with the first two columns",
        r.two_column_iso,
        "HH_n → H_n(C{0,1}) is an isomorphism",
        Witness::default,
    );
    let failure = r.first_failure().cloned();
    b.check(
        "SBI rank-exact",
        failure.is_none(),
        format!(
            "{} nodes in degrees 0..={}",
            r.nodes.len(),
            r.max_degree as i64 - 1
        ),
        || {
            let n = failure.unwrap();
            let at = match n.kind {
                NodeKind::Hochschild => "HH",
                NodeKind::Cyclic => "HC",
                NodeKind::Shifted => "HC (after S)",
            };
            Witness::degree(n.degree as i64).note(format!(
                "node {at}: dim {}, incoming rank {}, outgoing rank {}, composite zero {}",
                n.dim, n.incoming_rank, n.outgoing_rank, n.composite_zero
            ))
        },
    );
    let minus: Vec<_> = r
        .hc_minus
        .degrees
        .iter()
        .map(|d| json!({ "degree": d.degree, "dim": d.dim, "stage_dims": d.stage_dims }))
        .collect();
    b.data("hh_dims", &r.hh_dims);
    b.data("hc_dims", &r.hc_dims);
    b.data("s_ranks", r.s.iter().map(|m| m.rank()).collect::<Vec<_>>());
    b.data("b_ranks", r.b.iter().map(|m| m.rank()).collect::<Vec<_>>());
    b.data("i_ranks", r.i.iter().map(|m| m.rank()).collect::<Vec<_>>());
    b.data("hc_minus", minus);
    b.certify("HH, HC, SBI", 0, r.max_degree as i64 - 1);
    let certified: Vec<i64> = r
        .hc_minus
        .degrees
        .iter()
        .filter(|d| d.certified())
        .map(|d| d.degree)
        .collect();
    if let (Some(&lo), Some(&hi)) = (certified.iter().min(), certified.iter().max()) {
        b.certify("HC⁻", lo, hi);
    }
    Ok(b.finish())
}

/// Claims for one labeled piece: closed as a cyclic submodule, and if it
/// retracts, the composite through `j_*G` equals `scalar · id`.
pub fn piece_claims(
    b: &mut Builder,
    name: &str,
    hh: &HochschildModule,
    labels: &[String],
    piece: &LabeledPiece,
    scalar: usize,
) {
    let word = |q: usize, i: usize| {
        hh.word(q, i)
            .iter()
            .map(|&x| labels[x].as_str())
            .collect::<Vec<_>>()
            .join("⊗")
    };
    if let Some(e) = &piece.escape {
        b.claim(
            format!("{name} is a cyclic submodule"),
            Verdict::Fail,
            "a structure map leaves the piece",
            Some(
                Witness::degree(e.degree as i64)
                    .basis(word(e.degree, e.source))
                    .note(format!("{:?} {} hits a word outside", e.op, e.index)),
            ),
        );
        return;
    }
    b.claim(
        format!("{name} is a cyclic submodule"),
        Verdict::Pass,
        format!("dims {:?}", piece.dims()),
        None,
    );
    if scalar == 0 {
        return;
    }
    let Some(r) = &piece.retract else {
        b.claim(
            format!("{name} composite = {scalar}·id"),
            Verdict::Fail,
            "no retraction was built",
            Some(Witness::default()),
        );
        return;
    };
    let bad = r.composite_ok.iter().position(|ok| !ok);
    b.check(
        format!("{name} composite = {scalar}·id"),
        bad.is_none(),
        format!("through j_*G, degrees 0..={}", r.composite_ok.len() - 1),
        || {
            let q = bad.unwrap();
            let comp = r.counit.maps[q].mul(&r.retract.maps[q]);
            let target = cychom_core::exactla::SparseMatrix::scalar_identity(
                comp.ncols(),
                &cychom_core::exactla::Scalar::from(scalar),
            );
            let mut w = Witness::degree(q as i64);
            if let Some(e) = first_difference(&comp, &target) {
                w = w.entry(e).basis(word(q, piece.keep[q][e.1]));
            }
            w
        },
    );
}

pub fn decompose_weights(spec: &Spec, opts: &Options) -> Result<ScenarioReport, CommandError> {
    let Spec::SquareZero { base, bimodules } = spec else {
        return Err(CommandError::Unsupported {
            command: "decompose weights",
            kind: spec.kind(),
        });
    };
    let mut b = Builder::new("decompose weights", opts.params());
    b.input(format!("{} ⋉ M", base.name));
    let w = weight_decompose(
        &base.algebra,
        &direct_sum(bimodules),
        opts.max_degree,
        opts.budget,
    )?;
    b.check(
        "weight pieces add up",
        w.dims_add_up(),
        "degreewise dims of H(k) sum to HH(B ⋉ M)",
        Witness::default,
    );
    let labels = w.algebra.labels().to_vec();
    let mut dims = Vec::new();
    for (k, p) in w.pieces.iter().enumerate() {
        if p.dims().iter().all(|&x| x == 0) {
            continue;
        }
        dims.push(json!({ "k": k, "dims": p.dims(), "g_is_cyclic": p.retract.as_ref().map(|r| r.g_is_cyclic) }));
        piece_claims(&mut b, &format!("H({k})"), &w.hh, &labels, p, k);
    }
    b.data("pieces", dims);
    Ok(b.finish())
}

pub fn decompose_partition(
    spec: &Spec,
    parts: &[usize],
    opts: &Options,
) -> Result<ScenarioReport, CommandError> {
    let Spec::SquareZero { base, bimodules } = spec else {
        return Err(CommandError::Unsupported {
            command: "decompose partition",
            kind: spec.kind(),
        });
    };
    let p = Partition::new(parts.to_vec())
        .ok_or_else(|| CommandError::Invalid("parts must be positive".into()))?;
    let mut b = Builder::new("decompose partition", opts.params());
    b.input(format!("{} ⋉ (M_1 ⊕ … ⊕ M_{})", base.name, bimodules.len()));
    let piece = partition_decompose(&base.algebra, bimodules, &p, opts.max_degree, opts.budget)?;
    b.data("partition", &p.parts);
    b.data("norm", p.norm().to_string());
    b.data("dims", piece.piece.dims());
    let labels = piece.algebra.labels().to_vec();
    piece_claims(
        &mut b,
        &format!("H({:?})", p.parts),
        &piece.hh,
        &labels,
        &piece.piece,
        p.length(),
    );
    Ok(b.finish())
}

/// Filtration of `HH(A)` by powers of an ideal, with its comparisons.
pub fn filtration_claims(
    b: &mut Builder,
    a: &AlgebraSpec,
    ideal: Option<&str>,
    opts: &Options,
    chain_weights: usize,
) -> Result<(), CommandError> {
    let (iname, i) = a
        .ideal(ideal)
        .map_err(|e| CommandError::Invalid(e.to_string()))?;
    b.input(format!("ideal {iname} of {}", a.name));
    let f = ideal_filtration(&a.algebra, &i, opts.max_degree, opts.budget)?;
    let n = f.nilpotency;
    let first_escape = f
        .steps
        .iter()
        .find_map(|s| s.escape.clone().map(|e| (s.k, e)));
    b.check(
        "F^k are cyclic submodules",
        first_escape.is_none(),
        format!("{} levels", f.steps.len()),
        || {
            let (k, e) = first_escape.clone().unwrap();
            Witness::degree(e.degree as i64).note(format!("F^{k}: {:?} {} leaves", e.op, e.index))
        },
    );
    let k_max = n * (opts.max_degree + 1) + n;
    let viol = f.vanishing_violations(k_max);
    b.check(
        format!("F^k_q = 0 for k ≥ {n}(q+1)"),
        viol.is_empty(),
        format!("q ≤ {}, k ≤ {k_max}", opts.max_degree),
        || Witness::degree(viol[0].1 as i64).note(format!("F^{}_{} ≠ 0", viol[0].0, viol[0].1)),
    );
    let cmp = cychom_core::hhdecomp::compare_with_quotient(&f, &a.algebra, &i, opts.budget)?;
    b.check(
        "F^0/F^1 ≅ HH(A/I)",
        cmp.agrees(),
        "dims and homology",
        || {
            Witness::default().note(format!(
                "{:?} vs {:?}",
                cmp.subquotient_homology, cmp.quotient_homology
            ))
        },
    );
    b.data("nilpotency", n);
    b.data(
        "filtration_dims",
        f.steps
            .iter()
            .map(|s| s.keep.iter().map(Vec::len).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    if i.is_zero() {
        return Ok(());
    }
    let gr = associated_graded(&a.algebra, &i)?;
    let fg = graded_filtration(&gr, opts.max_degree, opts.budget)?;
    let comps = cychom_core::hhdecomp::compare_with_graded(&f, &fg);
    let bad = comps
        .iter()
        .find(|c| !(c.dims_equal && c.modules_equal))
        .cloned();
    b.check(
        "F^k/F^{k+1}(A, I) ≅ F^k/F^{k+1}(gr(A, I))",
        bad.is_none(),
        format!("{} levels", comps.len()),
        || Witness::default().note(format!("level {}", bad.unwrap().k)),
    );
    for k in 1..=chain_weights {
        let chain = cychom_core::hhdecomp::partition_chain(&gr, k, opts.max_degree, opts.budget)?;
        b.check(
            format!("k={k}: chain ends at zero"),
            chain.ends_at_zero() && chain.dims_add_up(),
            "kernels H(P) exhaust F^k/F^{k+1}",
            Witness::default,
        );
        let gl = gr.algebra.labels().to_vec();
        let ghh = hh(&gr.algebra, opts.max_degree, opts.budget)?;
        for st in &chain.stages {
            let name = format!("k={k}: kernel H({:?})", st.partition.parts);
            b.check(
                format!("{name} prefix closed"),
                st.prefix_closed,
                "X(i) is a quotient cyclic module",
                Witness::default,
            );
            // kernel indices are local to the subquotient; words come from the full module
            let mut piece = st.kernel.clone();
            piece.keep = localize(&chain, &ghh, &gr, k, &st.kernel);
            piece_claims(b, &name, &ghh, &gl, &piece, st.partition.length());
        }
    }
    Ok(())
}

/// Maps the local indices of a chain kernel back to words of `HH(gr)`.
fn localize(
    _chain: &cychom_core::hhdecomp::PartitionChain,
    ghh: &HochschildModule,
    gr: &cychom_core::algcore::GradedAlgebra,
    k: usize,
    kernel: &LabeledPiece,
) -> Vec<Vec<usize>> {
    let labels: Vec<u8> = gr
        .degrees
        .iter()
        .map(|&d| u8::try_from(d).unwrap_or(u8::MAX))
        .collect();
    let sub = ghh.select(&labels, |f| {
        f.iter().map(|&v| v as usize).sum::<usize>() == k
    });
    kernel
        .keep
        .iter()
        .enumerate()
        .map(|(q, ks)| ks.iter().map(|&i| sub[q][i]).collect())
        .collect()
}

pub fn decompose_filtration(
    spec: &Spec,
    ideal: Option<&str>,
    opts: &Options,
) -> Result<ScenarioReport, CommandError> {
    let Spec::Algebra(a) = spec else {
        return Err(CommandError::Unsupported {
            command: "decompose filtration",
            kind: spec.kind(),
        });
    };
    let mut b = Builder::new("decompose filtration", opts.params());
    filtration_claims(&mut b, a, ideal, opts, 3)?;
    Ok(b.finish())
}

pub fn decompose_square(spec: &Spec, opts: &Options) -> Result<ScenarioReport, CommandError> {
    let Spec::Square(s) = spec else {
        return Err(CommandError::Unsupported {
            command: "decompose square",
            kind: spec.kind(),
        });
    };
    let mut b = Builder::new("decompose square", opts.params());
    b.input("split square");
    let f = split_square_ifib(s, opts.max_degree, opts.budget)?;
    b.check(
        "iterated fiber: kernel = labeled sum",
        f.kernel_matches_labels,
        format!("kernel dims {:?}", f.kernel_dims),
        Witness::default,
    );
    b.check(
        "H(k) add up to the iterated fiber",
        f.dims_add_up(),
        format!("dims {:?}", f.dims()),
        Witness::default,
    );
    let labels = s.corner.labels().to_vec();
    let mut pieces = Vec::new();
    for (k, p) in &f.pieces {
        pieces.push(json!({ "k": k, "dims": p.dims() }));
        piece_claims(&mut b, &format!("H({k})"), &f.hh, &labels, p, *k);
    }
    b.data("ifib_dims", f.dims());
    b.data("pieces", pieces);
    Ok(b.finish())
}

pub fn gapset_report(values: &[u8], opts: &Options) -> Result<ScenarioReport, CommandError> {
    if values.iter().any(|&v| v > 2) {
        return Err(CommandError::Invalid("values must lie in {0, 1, 2}".into()));
    }
    let mut b = Builder::new("gapset", opts.params());
    let g = gap_set(values);
    b.input(format!("f = {values:?} on ℤ/{}", values.len()));
    b.data("members", &g.members);
    // rotation equivariance: A_{f∘rot} = rot^{-1}(A_f)
    let n = values.len();
    let ok = (1..n.max(1)).all(|r| {
        let rotated: Vec<u8> = (0..n).map(|i| values[(i + r) % n]).collect();
        let mut expect: Vec<usize> = g.members.iter().map(|&j| (j + n - r) % n).collect();
        expect.sort_unstable();
        gap_set(&rotated).members == expect
    });
    b.check(
        "rotation equivariance",
        ok,
        "A_{f∘rot} = rot⁻¹(A_f) for every rotation",
        Witness::default,
    );
    Ok(b.finish())
}

pub fn partitions_report(k: usize, opts: &Options) -> ScenarioReport {
    let mut b = Builder::new("partitions", opts.params());
    b.input(format!("k = {k}"));
    let ps = partitions(k);
    let text: Vec<String> = ps.iter().map(format_partition).collect();
    b.data("order", text.join(">"));
    b.data(
        "norms",
        ps.iter().map(|p| p.norm().to_string()).collect::<Vec<_>>(),
    );
    let strict = ps.windows(2).all(|w| w[0].norm() > w[1].norm());
    b.check(
        "norm order is strict",
        strict,
        "norms strictly decrease",
        Witness::default,
    );
    b.finish()
}

/// `(2+1+1)` style, `()` for the empty partition.
pub fn format_partition(p: &Partition) -> String {
    let inner: Vec<String> = p.parts.iter().map(usize::to_string).collect();
    format!("({})", inner.join("+"))
}

pub fn require_algebra<'a>(
    spec: &'a Spec,
    command: &'static str,
) -> Result<&'a AlgebraSpec, CommandError> {
    match spec {
        Spec::Algebra(a) => Ok(a),
        other => Err(CommandError::Unsupported {
            command,
            kind: other.kind(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;

    fn opts(d: usize) -> Options {
        Options {
            max_degree: d,
            ..Options::default()
        }
    }

    #[test]
    fn hh_of_dual_numbers() {
        let r = hh_report(&builtin("dual_numbers").unwrap(), &opts(6)).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.data["hh_dims"], json!([2, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn hc_of_rationals() {
        let r = hc_report(&builtin("rationals").unwrap(), &opts(6)).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
        assert_eq!(r.data["hc_dims"], json!([1, 0, 1, 0, 1, 0]));
    }

    #[test]
    fn hp_at_default_depth() {
        let r = hp_report(&builtin("rationals").unwrap(), &Options::default()).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.data["hp"]["depth"], json!(9));
        assert_eq!(r.data["hp"]["even"]["hp_dim"], json!(1));
    }

    #[test]
    fn hp_undetermined_when_forced_shallow() {
        let o = Options {
            window: 3,
            max_degree: 6,
            ..Options::default()
        };
        // a cyclic module file fixes its own depth
        let r = hp_report(&builtin("constant_cyclic").unwrap(), &o).unwrap();
        assert_eq!(r.count(Verdict::Undetermined), 2);
    }

    #[test]
    fn sbi_of_dual_numbers() {
        let r = sbi_report(&builtin("dual_numbers").unwrap(), &opts(6)).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
    }

    #[test]
    fn weights_of_rationals() {
        let r = decompose_weights(&builtin("square_zero_rationals").unwrap(), &opts(4)).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
        assert!(r.claim("H(3) composite = 3·id").is_some());
    }

    #[test]
    fn partition_piece() {
        let r =
            decompose_partition(&builtin("square_zero_two").unwrap(), &[2, 1], &opts(4)).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
        assert_eq!(r.data["dims"], json!([0, 2, 6, 12, 20]));
    }

    #[test]
    fn filtration_of_cubic() {
        let r = decompose_filtration(&builtin("cubic").unwrap(), None, &opts(3)).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
    }

    #[test]
    fn square_decomposition() {
        let r = decompose_square(&builtin("square_dual").unwrap(), &opts(4)).unwrap();
        assert!(r.all_pass(), "{}", r.render_text());
        assert_eq!(r.data["ifib_dims"][1], json!(2));
    }

    #[test]
    fn gapset_example() {
        let r = gapset_report(&[2, 2, 0, 1, 2, 1, 1, 0, 2, 0, 1], &opts(6)).unwrap();
        assert_eq!(r.data["members"], json!([0, 4, 8]));
        assert!(r.all_pass());
    }

    #[test]
    fn partitions_of_four() {
        let r = partitions_report(4, &opts(6));
        assert_eq!(r.data["order"], json!("(4)>(3+1)>(2+2)>(2+1+1)>(1+1+1+1)"));
        assert_eq!(r.data["norms"], json!(["256", "208", "160", "148", "85"]));
    }

    #[test]
    fn wrong_document_kind() {
        let err = decompose_square(&builtin("rationals").unwrap(), &opts(2)).unwrap_err();
        assert!(err.to_string().contains("algebra"));
    }
}
