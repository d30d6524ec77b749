//! Operators of the cyclic category acting on cyclic modules.
//!
//! A word is read as an operator composite `L_1 ∘ L_2 ∘ … ∘ L_k` (the last
//! letter acts first). Every word equals a unique `t^j ∘ φ^*` with `φ`
//! monotone, obtained by pushing cyclic operators to the left with
//! `d_i t = t d_{i−1}`, `d_0 t = d_q`, `s_i t = t s_{i−1}`, `s_0 t = t² s_q`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::CyclicModule;
use crate::exactla::SparseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    D(usize),
    S(usize),
    T,
}

/// `t^power ∘ φ^*` as an operator `M_target → M_source`, where
/// `φ: [source] → [target]` is monotone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaMorphism {
    pub source: usize,
    pub target: usize,
    /// Values `φ(0), …, φ(source)`.
    pub map: Vec<usize>,
    /// Exponent of `t`, reduced mod `source + 1`.
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    /// The letter at this position (counted from the right) cannot act on
    /// the degree reached so far.
    IllTyped { position: usize, degree: usize },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::IllTyped { position, degree } => {
                write!(
                    f,
                    "letter {position} (from the right) cannot act in degree {degree}"
                )
            }
        }
    }
}

impl LambdaMorphism {
    pub fn identity(q: usize) -> Self {
        Self {
            source: q,
            target: q,
            map: (0..=q).collect(),
            power: 0,
        }
    }

    /// Operator composite `self ∘ first`.
    pub fn after(&self, first: &LambdaMorphism) -> LambdaMorphism {
        assert_eq!(first.source, self.target);
        let mut acc = first.clone();
        for l in self.letters().into_iter().rev() {
            acc = apply_letter(&acc, l).expect("composable normal form");
        }
        acc
    }

    /// A word equal to this normal form: `t^j`, then faces, then degeneracies
    /// as letters (leftmost acts last).
    pub fn letters(&self) -> Vec<Letter> {
        let mut word = vec![Letter::T; self.power];
        word.extend(simplicial_letters(&self.map, self.target));
        word
    }

    /// Matrix of the operator on `m`.
    pub fn action(&self, m: &CyclicModule) -> SparseMatrix {
        word_action(&self.letters(), self.target, m).expect("normal form is well typed")
    }
}

/// `φ^* = s_{j_1} ∘ … ∘ d_{i_k} ∘ …` for monotone `φ: [n] → [m]`.
fn simplicial_letters(map: &[usize], m: usize) -> Vec<Letter> {
    let mut phi = map.to_vec();
    let mut m = m;
    // injection part first: faces act first, so they go to the right
    let mut faces = Vec::new();
    loop {
        let missing = (0..=m).find(|v| !phi.contains(v));
        let Some(i) = missing else { break };
        faces.push(Letter::D(i));
        for v in phi.iter_mut() {
            if *v > i {
                *v -= 1;
            }
        }
        m -= 1;
    }
    let mut degens = Vec::new();
    while let Some(j) = (0..phi.len().saturating_sub(1)).find(|&j| phi[j] == phi[j + 1]) {
        degens.push(Letter::S(j));
        phi.remove(j + 1);
    }
    // faces[0] acts first; degens[0] acts last
    let mut word = degens;
    word.extend(faces.into_iter().rev());
    word
}

/// Applies one more letter (acting last) to a normal form.
fn apply_letter(nf: &LambdaMorphism, l: Letter) -> Result<LambdaMorphism, ()> {
    let q = nf.source;
    match l {
        Letter::T => Ok(LambdaMorphism {
            power: (nf.power + 1) % (q + 1),
            ..nf.clone()
        }),
        Letter::D(i) => {
            if q == 0 || i > q {
                return Err(());
            }
            // d_i ∘ t^j: move each t to the left
            let (mut i, mut ts) = (i, 0usize);
            for _ in 0..nf.power {
                if i >= 1 {
                    i -= 1;
                    ts += 1;
                } else {
                    i = q;
                }
            }
            let map = (0..q)
                .map(|k| nf.map[if k < i { k } else { k + 1 }])
                .collect();
            Ok(LambdaMorphism {
                source: q - 1,
                target: nf.target,
                map,
                power: ts % q,
            })
        }
        Letter::S(i) => {
            if i > q {
                return Err(());
            }
            let (mut i, mut ts) = (i, 0usize);
            for _ in 0..nf.power {
                if i >= 1 {
                    i -= 1;
                    ts += 1;
                } else {
                    i = q;
                    ts += 2;
                }
            }
            let map = (0..=q + 1)
                .map(|k| nf.map[if k <= i { k } else { k - 1 }])
                .collect();
            Ok(LambdaMorphism {
                source: q + 1,
                target: nf.target,
                map,
                power: ts % (q + 2),
            })
        }
    }
}

/// Normal form of the operator word `word` acting on degree `degree`.
pub fn lambda_factorize(word: &[Letter], degree: usize) -> Result<LambdaMorphism, WordError> {
    let mut nf = LambdaMorphism::identity(degree);
    for (pos, &l) in word.iter().rev().enumerate() {
        nf = apply_letter(&nf, l).map_err(|_| WordError::IllTyped {
            position: pos,
            degree: nf.source,
        })?;
    }
    Ok(nf)
}

/// Matrix of a word acting on `m`, starting in degree `degree`.
pub fn word_action(
    word: &[Letter],
    degree: usize,
    m: &CyclicModule,
) -> Result<SparseMatrix, WordError> {
    let mut q = degree;
    let mut acc = SparseMatrix::identity(m.dim(q));
    for (pos, &l) in word.iter().rev().enumerate() {
        let ill = WordError::IllTyped {
            position: pos,
            degree: q,
        };
        acc = match l {
            Letter::T => m.cyclic(q).mul(&acc),
            Letter::D(i) => {
                if q == 0 || i > q {
                    return Err(ill);
                }
                q -= 1;
                m.face(q + 1, i).mul(&acc)
            }
            Letter::S(i) => {
                if i > q || q >= m.max_degree() {
                    return Err(ill);
                }
                q += 1;
                m.degeneracy(q - 1, i).mul(&acc)
            }
        };
    }
    Ok(acc)
}

/// Every normal form `M_target → M_source`: all monotone maps times all powers.
pub fn lambda_morphisms(source: usize, target: usize) -> Vec<LambdaMorphism> {
    let mut maps = Vec::new();
    let mut cur = vec![0usize; source + 1];
    monotone_maps(0, 0, target, &mut cur, &mut maps);
    let mut out = Vec::new();
    for map in maps {
        for power in 0..=source {
            out.push(LambdaMorphism {
                source,
                target,
                map: map.clone(),
                power,
            });
        }
    }
    out
}

fn monotone_maps(
    pos: usize,
    min: usize,
    max: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == cur.len() {
        out.push(cur.clone());
        return;
    }
    for v in min..=max {
        cur[pos] = v;
        monotone_maps(pos + 1, v, max, cur, out);
    }
}

/// Distinct normal forms `M_target → M_source` reachable by words of at most
/// `max_len` letters that never leave degrees `≤ max_degree`.
pub fn reachable_normal_forms(
    target: usize,
    source: usize,
    max_len: usize,
    max_degree: usize,
) -> BTreeSet<LambdaMorphism> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = LambdaMorphism::identity(target);
    seen.insert(start.clone());
    queue.push_back((start, 0usize));
    while let Some((nf, len)) = queue.pop_front() {
        if len == max_len {
            continue;
        }
        let q = nf.source;
        let mut letters = vec![Letter::T];
        if q > 0 {
            letters.extend((0..=q).map(Letter::D));
        }
        if q < max_degree {
            letters.extend((0..=q).map(Letter::S));
        }
        for l in letters {
            let next = apply_letter(&nf, l).expect("letters chosen to be well typed");
            if seen.insert(next.clone()) {
                queue.push_back((next, len + 1));
            }
        }
    }
    seen.into_iter().filter(|nf| nf.source == source).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyccat::{free_cyclic, SimplicialModule};

    #[test]
    fn full_rotation_is_identity() {
        for q in 0..5 {
            let word = vec![Letter::T; q + 1];
            assert_eq!(
                lambda_factorize(&word, q).unwrap(),
                LambdaMorphism::identity(q)
            );
        }
    }

    #[test]
    fn d0_t_is_last_face() {
        for q in 1..5 {
            let nf = lambda_factorize(&[Letter::D(0), Letter::T], q).unwrap();
            let dq = lambda_factorize(&[Letter::D(q)], q).unwrap();
            assert_eq!(nf, dq);
            assert_eq!(nf.power, 0);
        }
    }

    #[test]
    fn ill_typed_rejected() {
        assert!(lambda_factorize(&[Letter::D(0)], 0).is_err());
        assert!(lambda_factorize(&[Letter::D(3)], 2).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(lambda_morphisms(1, 1).len(), 3 * 2);
        let reach = reachable_normal_forms(1, 1, 6, 3);
        assert_eq!(reach.len(), 6);
    }

    #[test]
    fn normal_form_idempotent() {
        for nf in lambda_morphisms(2, 3) {
            let again = lambda_factorize(&nf.letters(), nf.target).unwrap();
            assert_eq!(again, nf);
        }
    }

    #[test]
    fn words_act_like_their_normal_forms() {
        let m = free_cyclic(&SimplicialModule::constant(4, 1));
        let words: Vec<Vec<Letter>> = vec![
            vec![Letter::D(0), Letter::T],
            vec![Letter::S(0), Letter::T, Letter::T],
            vec![Letter::T, Letter::D(1), Letter::S(2), Letter::T],
            vec![
                Letter::D(2),
                Letter::T,
                Letter::S(0),
                Letter::T,
                Letter::D(0),
            ],
        ];
        for w in words {
            let nf = lambda_factorize(&w, 2).unwrap();
            assert_eq!(word_action(&w, 2, &m).unwrap(), nf.action(&m));
        }
    }
}
