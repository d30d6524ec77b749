use alloc::vec::Vec;

use super::almost_free::{closure_escape, Escape};
use super::hh::{hh, HochschildModule};
use super::partition::{partitions, Partition};
use super::weight::LabeledPiece;
use super::HhError;
use crate::algcore::{
    adapted_basis, adapted_labels, quotient_by_ideal, Algebra, GradedAlgebra, Ideal,
};
use crate::cyccat::CyclicModule;
use crate::exactla::{homology_at, Scalar, SparseMatrix};

/// `F^k` spanned by the words whose levels sum to at least `k`, on a basis
/// adapted to the powers of a nilpotent ideal.
#[derive(Clone, Debug)]
pub struct IdealFiltration {
    /// The algebra rewritten on the adapted basis.
    pub algebra: Algebra,
    pub hh: HochschildModule,
    pub levels: Vec<usize>,
    pub nilpotency: usize,
    /// `F^0, F^1, …` up to the first level that vanishes in every degree.
    pub steps: Vec<FiltrationStep>,
}

#[derive(Clone, Debug)]
pub struct FiltrationStep {
    pub k: usize,
    pub keep: Vec<Vec<usize>>,
    pub escape: Option<Escape>,
}

impl IdealFiltration {
    fn level_sum(&self, q: usize, a: usize) -> usize {
        self.hh.word(q, a).into_iter().map(|b| self.levels[b]).sum()
    }

    pub fn dims(&self, k: usize) -> Vec<usize> {
        match self.steps.get(k) {
            Some(s) => s.keep.iter().map(Vec::len).collect(),
            None => alloc::vec![0; self.hh.max_degree() + 1],
        }
    }

    /// `F^k / F^{k+1}`: words of level sum exactly `k`, structure maps
    /// projected.
    pub fn subquotient(&self, k: usize) -> (Vec<Vec<usize>>, CyclicModule) {
        let keep: Vec<Vec<usize>> = (0..=self.hh.max_degree())
            .map(|q| {
                (0..self.hh.module.dim(q))
                    .filter(|&a| self.level_sum(q, a) == k)
                    .collect()
            })
            .collect();
        let m = self.hh.module.restrict(&keep);
        (keep, m)
    }

    /// `(k, q)` pairs with `k ≥ n(q+1)` and `F^k_q ≠ 0`; empty when the
    /// vanishing bound holds up to `k_max`.
    pub fn vanishing_violations(&self, k_max: usize) -> Vec<(usize, usize)> {
        let n = self.nilpotency;
        let mut out = Vec::new();
        for q in 0..=self.hh.max_degree() {
            for k in n * (q + 1)..=k_max {
                if self.dims(k)[q] != 0 {
                    out.push((k, q));
                }
            }
        }
        out
    }

    pub fn all_submodules(&self) -> bool {
        self.steps.iter().all(|s| s.escape.is_none())
    }
}

fn build(
    algebra: Algebra,
    levels: Vec<usize>,
    nilpotency: usize,
    max_degree: usize,
    budget: usize,
) -> Result<IdealFiltration, HhError> {
    let h = hh(&algebra, max_degree, budget)?;
    let sums: Vec<Vec<usize>> = (0..=max_degree)
        .map(|q| {
            (0..h.module.dim(q))
                .map(|a| h.word(q, a).into_iter().map(|b| levels[b]).sum())
                .collect()
        })
        .collect();
    let top = sums.iter().flatten().copied().max().unwrap_or(0);
    let steps = (0..=top + 1)
        .map(|k| {
            let keep: Vec<Vec<usize>> = sums
                .iter()
                .map(|s| (0..s.len()).filter(|&a| s[a] >= k).collect())
                .collect();
            let escape = closure_escape(&h.module, &keep, true);
            FiltrationStep { k, keep, escape }
        })
        .collect();
    Ok(IdealFiltration {
        algebra,
        hh: h,
        levels,
        nilpotency,
        steps,
    })
}

/// The filtration of `HH(A)` by powers of a nilpotent ideal.
pub fn ideal_filtration(
    a: &Algebra,
    i: &Ideal,
    max_degree: usize,
    budget: usize,
) -> Result<IdealFiltration, HhError> {
    let ab = adapted_basis(a, i).map_err(HhError::Algebra)?;
    let labels = adapted_labels(a, &ab);
    let adapted = a
        .change_basis(&ab.change, labels)
        .map_err(HhError::Algebra)?;
    build(adapted, ab.levels, ab.nilpotency, max_degree, budget)
}

/// The same filtration for a graded algebra, leveled by degree.
pub fn graded_filtration(
    g: &GradedAlgebra,
    max_degree: usize,
    budget: usize,
) -> Result<IdealFiltration, HhError> {
    let n = g.top_degree() + 1;
    build(g.algebra.clone(), g.degrees.clone(), n, max_degree, budget)
}

/// Moore-complex homology dims in degrees `0 ..= max_degree − 1`.
pub fn moore_homology_dims(m: &CyclicModule) -> Vec<usize> {
    let d = m.max_degree();
    let b = |q: usize| -> SparseMatrix {
        if q == 0 || q > d {
            let rows = if q == 0 { 0 } else { m.dim(q - 1) };
            let cols = if q > d { 0 } else { m.dim(q) };
            return SparseMatrix::zeros(rows, cols);
        }
        let mut acc = SparseMatrix::zeros(m.dim(q - 1), m.dim(q));
        for i in 0..=q {
            let sign = if i % 2 == 0 {
                Scalar::ONE
            } else {
                -Scalar::ONE
            };
            acc = acc.axpy(&sign, m.face(q, i));
        }
        acc
    };
    (0..d)
        .map(|q| homology_at(&b(q + 1), &b(q)).expect("b ∘ b = 0").dim())
        .collect()
}

/// Comparison of `F^0/F^1` with `HH(A/I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientComparison {
    pub subquotient_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub subquotient_homology: Vec<usize>,
    pub quotient_homology: Vec<usize>,
}

impl QuotientComparison {
    pub fn agrees(&self) -> bool {
        self.subquotient_dims == self.quotient_dims
            && self.subquotient_homology == self.quotient_homology
    }
}

pub fn compare_with_quotient(
    f: &IdealFiltration,
    a: &Algebra,
    i: &Ideal,
    budget: usize,
) -> Result<QuotientComparison, HhError> {
    let (quot, _) = quotient_by_ideal(a, i);
    let hq = hh(&quot, f.hh.max_degree(), budget)?;
    let (_, sq) = f.subquotient(0);
    Ok(QuotientComparison {
        subquotient_dims: sq.dims().to_vec(),
        quotient_dims: hq.module.dims().to_vec(),
        subquotient_homology: moore_homology_dims(&sq),
        quotient_homology: moore_homology_dims(&hq.module),
    })
}

/// Per level `k`: whether `F^k/F^{k+1}` agrees for `(A, I)` and `gr(A, I)`,
/// by dimension and as cyclic modules on the shared basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComparison {
    pub k: usize,
    pub dims_equal: bool,
    pub modules_equal: bool,
}

pub fn compare_with_graded(f: &IdealFiltration, gr: &IdealFiltration) -> Vec<GradedComparison> {
    let top = f.steps.len().max(gr.steps.len());
    (0..top)
        .map(|k| {
            let (_, a) = f.subquotient(k);
            let (_, b) = gr.subquotient(k);
            GradedComparison {
                k,
                dims_equal: a.dims() == b.dims(),
                modules_equal: a == b,
            }
        })
        .collect()
}

/// One stage `X(i−1) ↠ X(i)` of the partition chain with kernel `H(P_i)`.
#[derive(Clone, Debug)]
pub struct ChainStage {
    pub partition: Partition,
    /// `H(P_i)` inside `F^k/F^{k+1}`, structure maps taken in `X(i−1)`.
    pub kernel: LabeledPiece,
    /// Whether `H(P_1) ⊕ … ⊕ H(P_i)` is closed, so that `X(i)` is a quotient cyclic module.
    pub prefix_closed: bool,
    /// Degreewise dims of `X(i)`.
    pub quotient_dims: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PartitionChain {
    pub k: usize,
    /// `F^k/F^{k+1}` of the graded algebra, as a cyclic module on its words.
    pub subquotient: CyclicModule,
    pub stages: Vec<ChainStage>,
}

impl PartitionChain {
    pub fn dims_add_up(&self) -> bool {
        let total = self.subquotient.dims();
        (0..total.len()).all(|q| {
            self.stages
                .iter()
                .map(|s| s.kernel.keep[q].len())
                .sum::<usize>()
                == total[q]
        })
    }

    pub fn ends_at_zero(&self) -> bool {
        self.stages.last().map_or(self.subquotient.is_zero(), |s| {
            s.quotient_dims.iter().all(|&d| d == 0)
        })
    }
}

/// `F^k/F^{k+1} ↠ X(1) ↠ … ↠ X(p(k)) = 0`, quotienting by `H(P)` in
/// decreasing norm order. Faces only move `H(P)` into partitions of larger
/// norm, so each prefix is a cyclic submodule.
pub fn partition_chain(
    g: &GradedAlgebra,
    k: usize,
    max_degree: usize,
    budget: usize,
) -> Result<PartitionChain, HhError> {
    g.validate().map_err(HhError::Algebra)?;
    let h = hh(&g.algebra, max_degree, budget)?;
    let labels: Vec<u8> = g
        .degrees
        .iter()
        .map(|&d| u8::try_from(d).unwrap_or(u8::MAX))
        .collect();
    let weight = |f: &[u8]| f.iter().map(|&v| v as usize).sum::<usize>();
    let sub_keep = h.select(&labels, |f| weight(f) == k);
    let subquotient = h.module.restrict(&sub_keep);
    // the subquotient as a labeled module in its own right
    let patterns: Vec<Vec<Vec<u8>>> = sub_keep
        .iter()
        .enumerate()
        .map(|(q, ks)| ks.iter().map(|&a| h.pattern(&labels, q, a)).collect())
        .collect();
    let sub = LocalLabels {
        module: subquotient.clone(),
        patterns,
    };
    let parts = partitions(k);
    let mut stages = Vec::with_capacity(parts.len());
    for (i, p) in parts.iter().enumerate() {
        let prefix: Vec<Vec<usize>> = sub.select(|f| parts[..=i].iter().any(|pp| pp.matches(f)));
        let prefix_closed = closure_escape(&sub.module, &prefix, true).is_none();
        // X(i−1): drop the partitions before P_i
        let rest: Vec<Vec<usize>> = sub.select(|f| parts[i..].iter().any(|pp| pp.matches(f)));
        let x_prev = sub.restricted(&rest);
        let kernel_keep = x_prev.select(|f| p.matches(f));
        let kernel = x_prev.piece(kernel_keep, p.length())?;
        let quotient_dims = sub
            .select(|f| parts[i + 1..].iter().any(|pp| pp.matches(f)))
            .iter()
            .map(Vec::len)
            .collect();
        stages.push(ChainStage {
            partition: p.clone(),
            kernel,
            prefix_closed,
            quotient_dims,
        });
    }
    Ok(PartitionChain {
        k,
        subquotient,
        stages,
    })
}

/// A cyclic module whose basis carries label patterns and is permuted by `t`.
struct LocalLabels {
    module: CyclicModule,
    patterns: Vec<Vec<Vec<u8>>>,
}

impl LocalLabels {
    fn select(&self, keep: impl Fn(&[u8]) -> bool) -> Vec<Vec<usize>> {
        self.patterns
            .iter()
            .map(|ps| (0..ps.len()).filter(|&a| keep(&ps[a])).collect())
            .collect()
    }

    fn restricted(&self, keep: &[Vec<usize>]) -> LocalLabels {
        LocalLabels {
            module: self.module.restrict(keep),
            patterns: keep
                .iter()
                .enumerate()
                .map(|(q, ks)| ks.iter().map(|&a| self.patterns[q][a].clone()).collect())
                .collect(),
        }
    }

    fn piece(&self, keep: Vec<Vec<usize>>, scalar: usize) -> Result<LabeledPiece, HhError> {
        let escape = closure_escape(&self.module, &keep, true);
        let module = self.module.restrict(&keep);
        let retract = if escape.is_none() && scalar > 0 {
            let marks: Vec<Vec<Vec<usize>>> = keep
                .iter()
                .enumerate()
                .map(|(q, ks)| {
                    ks.iter()
                        .map(|&a| {
                            let f = &self.patterns[q][a];
                            (0..f.len()).filter(|&j| f[j] != 0).collect()
                        })
                        .collect()
                })
                .collect();
            Some(super::almost_free::almost_free(&module, &marks, scalar)?)
        } else {
            None
        };
        Ok(LabeledPiece {
            keep,
            module,
            escape,
            retract,
        })
    }
}

/// `true` when every structure map of `F^k/F^{k+1}` moves `H(P)` only into
/// `H(P')` with `|P'| ≥ |P|`.
pub fn norm_monotone(chain: &PartitionChain) -> bool {
    chain.stages.iter().all(|s| s.prefix_closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{associated_graded, truncated_polynomial};
    use crate::hhdecomp::hh::DEFAULT_WORD_BUDGET;
    use alloc::vec;

    #[test]
    fn cubic_vanishing_bound() {
        let (a, i) = truncated_polynomial(3).unwrap();
        let f = ideal_filtration(&a, &i, 4, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(f.nilpotency, 3);
        assert!(f.all_submodules());
        assert!(f.vanishing_violations(20).is_empty());
        assert_eq!(f.dims(0), vec![3, 9, 27, 81, 243]);
    }

    #[test]
    fn zero_ideal() {
        let (a, _) = truncated_polynomial(3).unwrap();
        let z = Ideal::zero(&a);
        let f = ideal_filtration(&a, &z, 3, DEFAULT_WORD_BUDGET).unwrap();
        for k in 1..5 {
            assert!(f.dims(k).iter().all(|&d| d == 0));
        }
        assert!(compare_with_quotient(&f, &a, &z, DEFAULT_WORD_BUDGET)
            .unwrap()
            .agrees());
    }

    #[test]
    fn dual_numbers_first_subquotient() {
        let (a, i) = truncated_polynomial(2).unwrap();
        let f = ideal_filtration(&a, &i, 5, DEFAULT_WORD_BUDGET).unwrap();
        let (_, s1) = f.subquotient(1);
        for q in 0..=5 {
            assert_eq!(s1.dim(q), q + 1);
        }
        assert!(compare_with_quotient(&f, &a, &i, DEFAULT_WORD_BUDGET)
            .unwrap()
            .agrees());
    }

    #[test]
    fn graded_comparison_on_cubic() {
        let (a, i) = truncated_polynomial(3).unwrap();
        let f = ideal_filtration(&a, &i, 4, DEFAULT_WORD_BUDGET).unwrap();
        let gr = associated_graded(&a, &i).unwrap();
        let fg = graded_filtration(&gr, 4, DEFAULT_WORD_BUDGET).unwrap();
        let cmp = compare_with_graded(&f, &fg);
        assert!(cmp.iter().all(|c| c.dims_equal && c.modules_equal));
    }

    #[test]
    fn chain_for_small_weights() {
        let (a, i) = truncated_polynomial(3).unwrap();
        let gr = associated_graded(&a, &i).unwrap();
        let c1 = partition_chain(&gr, 1, 4, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(c1.stages.len(), 1);
        assert_eq!(c1.stages[0].kernel.retract.as_ref().unwrap().scalar, 1);
        assert!(c1.stages[0]
            .kernel
            .retract
            .as_ref()
            .unwrap()
            .composite_holds());
        let c2 = partition_chain(&gr, 2, 4, DEFAULT_WORD_BUDGET).unwrap();
        let names: Vec<_> = c2
            .stages
            .iter()
            .map(|s| alloc::string::ToString::to_string(&s.partition))
            .collect();
        assert_eq!(names, ["(2)", "(1+1)"]);
        let scalars: Vec<_> = c2
            .stages
            .iter()
            .map(|s| s.kernel.retract.as_ref().unwrap().scalar)
            .collect();
        assert_eq!(scalars, [1, 2]);
        assert!(c2
            .stages
            .iter()
            .all(|s| s.kernel.retract.as_ref().unwrap().composite_holds()));
        assert!(c2.dims_add_up());
        assert!(c2.ends_at_zero());
        assert!(norm_monotone(&c2));
    }
}
