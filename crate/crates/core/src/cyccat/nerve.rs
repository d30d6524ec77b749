//! The cyclic nerve of the pointed monoid `{*, 0, 1}` with `1 + 1 = *`, split by weight.

use alloc::vec::Vec;

use super::{CyclicModule, SimplicialModule};
use crate::exactla::{SparseMatrix, SparseVec};

/// Weight-`k` piece: in degree `q`, the 0/1 words of length `q + 1` with `k`
/// ones (the basepoint is omitted), and the free ℚ-module on them.
#[derive(Clone, Debug)]
pub struct WeightPiece {
    pub weight: usize,
    /// Words per degree, sorted lexicographically.
    pub words: Vec<Vec<Vec<u8>>>,
    pub module: CyclicModule,
}

impl WeightPiece {
    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        self.words
            .get(word.len().checked_sub(1)?)?
            .binary_search_by(|w| w.as_slice().cmp(word))
            .ok()
    }

    /// `d_i` on a word; `None` is the basepoint.
    pub fn face(word: &[u8], i: usize) -> Option<Vec<u8>> {
        let q = word.len() - 1;
        let mut out = word.to_vec();
        if i < q {
            let s = out[i] + out[i + 1];
            out[i] = s;
            out.remove(i + 1);
        } else {
            let last = out.pop().unwrap();
            out[0] += last;
        }
        out.iter().all(|&n| n <= 1).then_some(out)
    }

    pub fn degeneracy(word: &[u8], i: usize) -> Vec<u8> {
        let mut out = word.to_vec();
        out.insert(i + 1, 0);
        out
    }

    pub fn rotate(word: &[u8]) -> Vec<u8> {
        let mut out = word.to_vec();
        out.rotate_right(1);
        out
    }
}

pub fn nerve_weight_piece(k: usize, max_degree: usize) -> WeightPiece {
    let words: Vec<Vec<Vec<u8>>> = (0..=max_degree).map(|q| weight_words(q + 1, k)).collect();
    let mut piece = WeightPiece {
        weight: k,
        words,
        module: CyclicModule::zero(max_degree),
    };
    let dims: Vec<usize> = piece.words.iter().map(Vec::len).collect();
    let matrix =
        |piece: &WeightPiece, q: usize, rows: usize, f: &dyn Fn(&[u8]) -> Option<Vec<u8>>| {
            let cols = piece.words[q]
                .iter()
                .map(|w| match f(w).and_then(|v| piece.index_of(&v)) {
                    Some(r) => SparseVec::unit(r),
                    None => SparseVec::new(),
                })
                .collect();
            SparseMatrix::from_columns(rows, cols)
        };
    let mut faces = Vec::new();
    let mut degens = Vec::new();
    let mut t = Vec::new();
    for q in 0..=max_degree {
        faces.push(if q == 0 {
            Vec::new()
        } else {
            (0..=q)
                .map(|i| matrix(&piece, q, dims[q - 1], &|w| WeightPiece::face(w, i)))
                .collect()
        });
        if q < max_degree {
            degens.push(
                (0..=q)
                    .map(|i| {
                        matrix(&piece, q, dims[q + 1], &|w| {
                            Some(WeightPiece::degeneracy(w, i))
                        })
                    })
                    .collect(),
            );
        }
        t.push(matrix(&piece, q, dims[q], &|w| {
            Some(WeightPiece::rotate(w))
        }));
    }
    piece.module = CyclicModule {
        simplicial: SimplicialModule {
            dims,
            faces,
            degens,
        },
        t,
    };
    piece
}

fn weight_words(len: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fill(len, k, &mut cur, &mut out);
    out
}

fn fill(len: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    let left = len - cur.len();
    if left == 0 {
        if k == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if k > left {
        return;
    }
    for b in [0u8, 1] {
        if b as usize <= k {
            cur.push(b);
            fill(len, k - b as usize, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyccat::validate_cyclic;

    #[test]
    fn counts() {
        let p0 = nerve_weight_piece(0, 4);
        assert!(p0.module.dims().iter().all(|&d| d == 1));
        let p2 = nerve_weight_piece(2, 4);
        assert_eq!(p2.module.dim(3), 6);
        assert_eq!(p2.module.dim(0), 0);
        assert!(validate_cyclic(&p2.module).is_valid());
    }

    #[test]
    fn rotation_orbits_divide_length() {
        let p = nerve_weight_piece(2, 5);
        for q in 0..=5 {
            for w in &p.words[q] {
                let mut x = WeightPiece::rotate(w);
                let mut n = 1;
                while x != *w {
                    x = WeightPiece::rotate(&x);
                    n += 1;
                }
                assert_eq!((q + 1) % n, 0);
            }
        }
    }
}
