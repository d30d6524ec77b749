use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactla::{SparseMatrix, SparseVec};

/// A simplicial ℚ-module truncated at degree `D`.
///
/// `faces[q][i]` is `d_i: M_q → M_{q−1}` (empty for `q = 0`), `degens[q][i]`
/// is `s_i: M_q → M_{q+1}` for `q < D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialModule {
    pub dims: Vec<usize>,
    pub faces: Vec<Vec<SparseMatrix>>,
    pub degens: Vec<Vec<SparseMatrix>>,
}

/// A cyclic ℚ-module truncated at degree `D`: a simplicial module with `t_q: M_q → M_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicModule {
    pub simplicial: SimplicialModule,
    pub t: Vec<SparseMatrix>,
}

/// Which structure map an identity check or morphism check concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Face,
    Degeneracy,
    Cyclic,
}

/// A failed identity: its name, the degree of the domain, the operator
/// indices involved, and a matrix entry where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub degree: usize,
    pub indices: (usize, usize),
    pub entry: (usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails in degree {} (i={}, j={}) at entry ({}, {})",
            self.identity, self.degree, self.indices.0, self.indices.1, self.entry.0, self.entry.1
        )
    }
}

impl SimplicialModule {
    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, q: usize) -> usize {
        self.dims[q]
    }

    pub fn face(&self, q: usize, i: usize) -> &SparseMatrix {
        &self.faces[q][i]
    }

    pub fn degeneracy(&self, q: usize, i: usize) -> &SparseMatrix {
        &self.degens[q][i]
    }

    /// The constant module `ℚ^n` in every degree with identity structure maps.
    pub fn constant(max_degree: usize, n: usize) -> Self {
        let id = SparseMatrix::identity(n);
        Self {
            dims: vec![n; max_degree + 1],
            faces: (0..=max_degree)
                .map(|q| {
                    if q == 0 {
                        Vec::new()
                    } else {
                        vec![id.clone(); q + 1]
                    }
                })
                .collect(),
            degens: (0..max_degree).map(|q| vec![id.clone(); q + 1]).collect(),
        }
    }

    /// Checks the shapes of all structure maps.
    pub fn check_shapes(&self) -> Result<(), Violation> {
        let d = self.max_degree();
        let bad = |identity, degree, i| Violation {
            identity,
            degree,
            indices: (i, 0),
            entry: (0, 0),
        };
        if self.faces.len() != d + 1 || self.degens.len() != d {
            return Err(bad("structure map count", 0, 0));
        }
        for q in 0..=d {
            let expect = if q == 0 { 0 } else { q + 1 };
            if self.faces[q].len() != expect {
                return Err(bad("face count", q, 0));
            }
            for (i, m) in self.faces[q].iter().enumerate() {
                if m.shape() != (self.dims[q - 1], self.dims[q]) {
                    return Err(bad("face shape", q, i));
                }
            }
            if q < d {
                if self.degens[q].len() != q + 1 {
                    return Err(bad("degeneracy count", q, 0));
                }
                for (i, m) in self.degens[q].iter().enumerate() {
                    if m.shape() != (self.dims[q + 1], self.dims[q]) {
                        return Err(bad("degeneracy shape", q, i));
                    }
                }
            }
        }
        Ok(())
    }

    /// Restriction to the listed basis indices in each degree; the caller
    /// guarantees the span is closed under all structure maps.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> SimplicialModule {
        let d = self.max_degree();
        SimplicialModule {
            dims: keep.iter().map(Vec::len).collect(),
            faces: (0..=d)
                .map(|q| {
                    if q == 0 {
                        Vec::new()
                    } else {
                        self.faces[q]
                            .iter()
                            .map(|m| m.submatrix(&keep[q - 1], &keep[q]))
                            .collect()
                    }
                })
                .collect(),
            degens: (0..d)
                .map(|q| {
                    self.degens[q]
                        .iter()
                        .map(|m| m.submatrix(&keep[q + 1], &keep[q]))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn truncate(&self, max_degree: usize) -> SimplicialModule {
        let d = max_degree.min(self.max_degree());
        SimplicialModule {
            dims: self.dims[..=d].to_vec(),
            faces: self.faces[..=d].to_vec(),
            degens: self.degens[..d].to_vec(),
        }
    }

    /// First violated simplicial identity, if any.
    pub fn first_violation(&self) -> Option<Violation> {
        if let Err(v) = self.check_shapes() {
            return Some(v);
        }
        let d = self.max_degree();
        let (f, s) = (&self.faces, &self.degens);
        for q in 0..=d {
            // d_i d_j = d_{j-1} d_i on M_q, i < j
            if q >= 2 {
                for j in 0..=q {
                    for i in 0..j {
                        if let Some(e) =
                            differ(&f[q - 1][i].mul(&f[q][j]), &f[q - 1][j - 1].mul(&f[q][i]))
                        {
                            return Some(violation("d_i d_j = d_{j-1} d_i", q, (i, j), e));
                        }
                    }
                }
            }
            if q < d {
                let id = SparseMatrix::identity(self.dims[q]);
                for j in 0..=q {
                    // faces after s_j on M_q
                    for i in 0..=q + 1 {
                        let lhs = f[q + 1][i].mul(&s[q][j]);
                        let rhs = if i < j {
                            s[q - 1][j - 1].mul(&f[q][i])
                        } else if i == j || i == j + 1 {
                            id.clone()
                        } else {
                            s[q - 1][j].mul(&f[q][i - 1])
                        };
                        if let Some(e) = differ(&lhs, &rhs) {
                            return Some(violation("d_i s_j", q, (i, j), e));
                        }
                    }
                }
            }
            if q + 2 <= d {
                // s_i s_j = s_{j+1} s_i on M_q, i <= j
                for j in 0..=q {
                    for i in 0..=j {
                        if let Some(e) =
                            differ(&s[q + 1][i].mul(&s[q][j]), &s[q + 1][j + 1].mul(&s[q][i]))
                        {
                            return Some(violation("s_i s_j = s_{j+1} s_i", q, (i, j), e));
                        }
                    }
                }
            }
        }
        None
    }
}

fn violation(
    identity: &'static str,
    degree: usize,
    indices: (usize, usize),
    entry: (usize, usize),
) -> Violation {
    Violation {
        identity,
        degree,
        indices,
        entry,
    }
}

/// First entry where two equally shaped matrices differ.
pub(crate) fn differ(a: &SparseMatrix, b: &SparseMatrix) -> Option<(usize, usize)> {
    if a.shape() != b.shape() {
        return Some((usize::MAX, usize::MAX));
    }
    for (j, (x, y)) in a.columns().iter().zip(b.columns()).enumerate() {
        if x != y {
            let diff = x.sub(y);
            return Some((diff.entries()[0].0, j));
        }
    }
    None
}

impl CyclicModule {
    pub fn max_degree(&self) -> usize {
        self.simplicial.max_degree()
    }

    pub fn dims(&self) -> &[usize] {
        &self.simplicial.dims
    }

    pub fn dim(&self, q: usize) -> usize {
        self.simplicial.dims[q]
    }

    pub fn face(&self, q: usize, i: usize) -> &SparseMatrix {
        &self.simplicial.faces[q][i]
    }

    pub fn degeneracy(&self, q: usize, i: usize) -> &SparseMatrix {
        &self.simplicial.degens[q][i]
    }

    pub fn cyclic(&self, q: usize) -> &SparseMatrix {
        &self.t[q]
    }

    pub fn constant(max_degree: usize) -> Self {
        Self {
            simplicial: SimplicialModule::constant(max_degree, 1),
            t: vec![SparseMatrix::identity(1); max_degree + 1],
        }
    }

    pub fn zero(max_degree: usize) -> Self {
        let z = |r, c| SparseMatrix::zeros(r, c);
        Self {
            simplicial: SimplicialModule {
                dims: vec![0; max_degree + 1],
                faces: (0..=max_degree)
                    .map(|q| {
                        if q == 0 {
                            Vec::new()
                        } else {
                            vec![z(0, 0); q + 1]
                        }
                    })
                    .collect(),
                degens: (0..max_degree).map(|q| vec![z(0, 0); q + 1]).collect(),
            },
            t: vec![z(0, 0); max_degree + 1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims().iter().all(|&d| d == 0)
    }

    pub fn restrict(&self, keep: &[Vec<usize>]) -> CyclicModule {
        CyclicModule {
            simplicial: self.simplicial.restrict(keep),
            t: self
                .t
                .iter()
                .enumerate()
                .map(|(q, m)| m.submatrix(&keep[q], &keep[q]))
                .collect(),
        }
    }

    pub fn truncate(&self, max_degree: usize) -> CyclicModule {
        let d = max_degree.min(self.max_degree());
        CyclicModule {
            simplicial: self.simplicial.truncate(d),
            t: self.t[..=d].to_vec(),
        }
    }

    /// Direct sum, with the basis of `self` first in each degree.
    pub fn direct_sum(&self, other: &CyclicModule) -> CyclicModule {
        let d = self.max_degree().min(other.max_degree());
        let bd =
            |a: &SparseMatrix, b: &SparseMatrix| SparseMatrix::block_diag(&[a.clone(), b.clone()]);
        let (x, y) = (&self.simplicial, &other.simplicial);
        CyclicModule {
            simplicial: SimplicialModule {
                dims: (0..=d).map(|q| x.dims[q] + y.dims[q]).collect(),
                faces: (0..=d)
                    .map(|q| {
                        x.faces[q]
                            .iter()
                            .zip(&y.faces[q])
                            .map(|(a, b)| bd(a, b))
                            .collect()
                    })
                    .collect(),
                degens: (0..d)
                    .map(|q| {
                        x.degens[q]
                            .iter()
                            .zip(&y.degens[q])
                            .map(|(a, b)| bd(a, b))
                            .collect()
                    })
                    .collect(),
            },
            t: (0..=d).map(|q| bd(&self.t[q], &other.t[q])).collect(),
        }
    }

    /// Basis indices per degree of the connected pieces of the graph whose
    /// edges are the nonzero entries of all structure maps. The module is the
    /// direct sum of its restrictions to these pieces.
    pub fn components(&self) -> Vec<Vec<Vec<usize>>> {
        let d = self.max_degree();
        let mut offset = vec![0usize; d + 2];
        for q in 0..=d {
            offset[q + 1] = offset[q] + self.dim(q);
        }
        let mut uf = UnionFind::new(offset[d + 1]);
        let mut link = |m: &SparseMatrix, src: usize, dst: usize| {
            for (r, c, _) in m.triplets() {
                uf.union(offset[src] + c, offset[dst] + r);
            }
        };
        for q in 0..=d {
            if q > 0 {
                for m in &self.simplicial.faces[q] {
                    link(m, q, q - 1);
                }
            }
            if q < d {
                for m in &self.simplicial.degens[q] {
                    link(m, q, q + 1);
                }
            }
            link(&self.t[q], q, q);
        }
        let mut root_slot: Vec<usize> = vec![usize::MAX; offset[d + 1]];
        let mut comps: Vec<Vec<Vec<usize>>> = Vec::new();
        for q in 0..=d {
            for b in 0..self.dim(q) {
                let r = uf.find(offset[q] + b);
                if root_slot[r] == usize::MAX {
                    root_slot[r] = comps.len();
                    comps.push(vec![Vec::new(); d + 1]);
                }
                comps[root_slot[r]][q].push(b);
            }
        }
        comps
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Outcome of [`validate_cyclic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReport {
    pub max_degree: usize,
    pub violation: Option<Violation>,
}

impl CyclicReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks every simplicial and cyclic identity in all degrees `≤ D`.
pub fn validate_cyclic(m: &CyclicModule) -> CyclicReport {
    CyclicReport {
        max_degree: m.max_degree(),
        violation: cyclic_violation(m),
    }
}

fn cyclic_violation(m: &CyclicModule) -> Option<Violation> {
    let d = m.max_degree();
    if m.t.len() != d + 1 {
        return Some(violation("cyclic operator count", 0, (0, 0), (0, 0)));
    }
    for q in 0..=d {
        if m.t[q].shape() != (m.dim(q), m.dim(q)) {
            return Some(violation("cyclic operator shape", q, (0, 0), (0, 0)));
        }
    }
    if let Some(v) = m.simplicial.first_violation() {
        return Some(v);
    }
    let (f, s, t) = (&m.simplicial.faces, &m.simplicial.degens, &m.t);
    for q in 0..=d {
        if let Some(e) = differ(&t[q].pow(q + 1), &SparseMatrix::identity(m.dim(q))) {
            return Some(violation("t^{q+1} = id", q, (0, 0), e));
        }
        if q >= 1 {
            for i in 1..=q {
                if let Some(e) = differ(&f[q][i].mul(&t[q]), &t[q - 1].mul(&f[q][i - 1])) {
                    return Some(violation("d_i t = t d_{i-1}", q, (i, 0), e));
                }
            }
            if let Some(e) = differ(&f[q][0].mul(&t[q]), &f[q][q]) {
                return Some(violation("d_0 t = d_q", q, (0, q), e));
            }
        }
        if q < d {
            for i in 1..=q {
                if let Some(e) = differ(&s[q][i].mul(&t[q]), &t[q + 1].mul(&s[q][i - 1])) {
                    return Some(violation("s_i t = t s_{i-1}", q, (i, 0), e));
                }
            }
            let rhs = t[q + 1].mul(&t[q + 1]).mul(&s[q][q]);
            if let Some(e) = differ(&s[q][0].mul(&t[q]), &rhs) {
                return Some(violation("s_0 t = t^2 s_q", q, (0, q), e));
            }
        }
    }
    None
}

/// A degreewise map between cyclic modules that commutes with all structure maps.
#[derive(Clone, Debug)]
pub struct CyclicMorphism {
    pub maps: Vec<SparseMatrix>,
}

impl CyclicMorphism {
    pub fn apply(&self, q: usize, v: &SparseVec) -> SparseVec {
        self.maps[q].mul_vec(v)
    }

    pub fn compose(&self, first: &CyclicMorphism) -> CyclicMorphism {
        CyclicMorphism {
            maps: self
                .maps
                .iter()
                .zip(&first.maps)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn identity(m: &CyclicModule) -> CyclicMorphism {
        CyclicMorphism {
            maps: m
                .dims()
                .iter()
                .map(|&n| SparseMatrix::identity(n))
                .collect(),
        }
    }
}

/// The square that failed in [`morphism_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismFailure {
    pub op: Op,
    pub degree: usize,
    pub index: usize,
    pub entry: (usize, usize),
}

impl fmt::Display for MorphismFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.op {
            Op::Face => "d",
            Op::Degeneracy => "s",
            Op::Cyclic => "t",
        };
        write!(
            f,
            "map does not commute with {}_{} in degree {} (entry {:?})",
            name, self.index, self.degree, self.entry
        )
    }
}

/// Certifies that `maps[q]: src_q → dst_q` commute with every `d_i`, `s_i`, `t`
/// in all degrees up to the smaller truncation.
pub fn morphism_map(
    maps: Vec<SparseMatrix>,
    src: &CyclicModule,
    dst: &CyclicModule,
) -> Result<CyclicMorphism, MorphismFailure> {
    let d = src.max_degree().min(dst.max_degree());
    let fail = |op, degree, index, entry| MorphismFailure {
        op,
        degree,
        index,
        entry,
    };
    if maps.len() < d + 1 {
        return Err(fail(Op::Cyclic, maps.len(), 0, (usize::MAX, usize::MAX)));
    }
    for q in 0..=d {
        if maps[q].shape() != (dst.dim(q), src.dim(q)) {
            return Err(fail(Op::Cyclic, q, 0, (usize::MAX, usize::MAX)));
        }
    }
    for q in 0..=d {
        if let Some(e) = differ(&maps[q].mul(src.cyclic(q)), &dst.cyclic(q).mul(&maps[q])) {
            return Err(fail(Op::Cyclic, q, 0, e));
        }
        if q > 0 {
            for i in 0..=q {
                if let Some(e) = differ(
                    &maps[q - 1].mul(src.face(q, i)),
                    &dst.face(q, i).mul(&maps[q]),
                ) {
                    return Err(fail(Op::Face, q, i, e));
                }
            }
        }
        if q < d {
            for i in 0..=q {
                if let Some(e) = differ(
                    &maps[q + 1].mul(src.degeneracy(q, i)),
                    &dst.degeneracy(q, i).mul(&maps[q]),
                ) {
                    return Err(fail(Op::Degeneracy, q, i, e));
                }
            }
        }
    }
    Ok(CyclicMorphism {
        maps: maps.into_iter().take(d + 1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;

    #[test]
    fn constant_is_valid() {
        assert!(validate_cyclic(&CyclicModule::constant(4)).is_valid());
        assert!(validate_cyclic(&CyclicModule::zero(3)).is_valid());
    }

    #[test]
    fn negated_cyclic_operator_fails_at_odd_degree() {
        let mut m = CyclicModule::constant(4);
        for q in 0..=4 {
            m.t[q] = m.t[q].neg();
        }
        // (−t)^{q+1} = (−1)^{q+1}: the power identity breaks in even degrees
        let v = validate_cyclic(&m).violation.unwrap();
        assert_eq!(v.identity, "t^{q+1} = id");
        assert_eq!(v.degree, 0);
    }

    #[test]
    fn identity_and_zero_morphisms() {
        let m = CyclicModule::constant(3);
        assert!(morphism_map(CyclicMorphism::identity(&m).maps, &m, &m).is_ok());
        let z: Vec<_> = (0..4).map(|_| SparseMatrix::zeros(1, 1)).collect();
        assert!(morphism_map(z, &m, &m).is_ok());
        let two: Vec<_> = (0..4)
            .map(|q| {
                SparseMatrix::scalar_identity(1, &Scalar::from_int(if q == 2 { 2 } else { 1 }))
            })
            .collect();
        let err = morphism_map(two, &m, &m).unwrap_err();
        assert_eq!((err.op, err.degree), (Op::Degeneracy, 1));
    }

    #[test]
    fn components_of_direct_sum() {
        let m = CyclicModule::constant(3).direct_sum(&CyclicModule::constant(3));
        let comps = m.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(m.restrict(&comps[0]), CyclicModule::constant(3));
    }
}
