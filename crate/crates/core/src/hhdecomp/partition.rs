use alloc::vec::Vec;
use core::fmt;

/// A partition of `k` into weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    pub parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Self { parts })
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// `Σ k_i k^{k−i}` with `k` the weight.
    pub fn norm(&self) -> u128 {
        let k = self.weight() as u128;
        let kk = self.weight() as u32;
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p as u128 * k.pow(kk - (i as u32 + 1)))
            .sum()
    }

    /// Whether the nonzero entries of `values` are a rearrangement of the parts.
    pub fn matches(&self, values: &[u8]) -> bool {
        let mut nz: Vec<usize> = values
            .iter()
            .filter(|&&v| v != 0)
            .map(|&v| v as usize)
            .collect();
        if nz.len() != self.parts.len() {
            return false;
        }
        nz.sort_unstable_by(|a, b| b.cmp(a));
        nz == self.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `k`, largest norm first.
pub fn partitions(k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen(k, k, &mut cur, &mut out);
    out.sort_by_key(|p| core::cmp::Reverse(p.norm()));
    out
}

fn gen(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if left == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=left.min(max)).rev() {
        cur.push(p);
        gen(left - p, p, cur, out);
        cur.pop();
    }
}

/// `A_f` for `f: ℤ/(q+1) → {0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSet {
    pub values: Vec<u8>,
    pub members: Vec<usize>,
}

/// `j ∈ A_f` iff `f(j) = 2` and the nearest nonzero value cyclically before
/// `j` is a 1.
pub fn gap_set(values: &[u8]) -> GapSet {
    let n = values.len();
    let members = (0..n)
        .filter(|&j| {
            values[j] == 2 && (1..n).map(|s| values[(j + n - s) % n]).find(|&v| v != 0) == Some(1)
        })
        .collect();
    GapSet {
        values: values.to_vec(),
        members,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn order_for_four() {
        let p = partitions(4);
        let names: Vec<_> = p.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["(4)", "(3+1)", "(2+2)", "(2+1+1)", "(1+1+1+1)"]);
        let norms: Vec<u128> = p.iter().map(Partition::norm).collect();
        assert_eq!(norms, [256, 208, 160, 148, 85]);
    }

    #[test]
    fn empty_partition_of_zero() {
        let p = partitions(0);
        assert_eq!(p.len(), 1);
        assert!(p[0].parts.is_empty());
        assert_eq!(p[0].norm(), 0);
    }

    #[test]
    fn counts_and_strict_order() {
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (k, &c) in expected.iter().enumerate() {
            let p = partitions(k);
            assert_eq!(p.len(), c);
            assert!(p.windows(2).all(|w| w[0].norm() > w[1].norm()));
        }
    }

    #[test]
    fn worked_table() {
        assert_eq!(
            gap_set(&[2, 2, 0, 1, 2, 1, 1, 0, 2, 0, 1]).members,
            vec![0, 4, 8]
        );
        assert_eq!(
            gap_set(&[2, 2, 0, 1, 2, 1, 1, 0, 2, 0, 2]).members,
            vec![4, 8]
        );
        assert!(gap_set(&[0; 5]).members.is_empty());
        assert!(gap_set(&[2]).members.is_empty());
        assert_eq!(gap_set(&[1, 2]).members, vec![1]);
    }

    #[test]
    fn matches_multiset() {
        let p = Partition::new(vec![1, 2]).unwrap();
        assert!(p.matches(&[0, 1, 0, 2]));
        assert!(!p.matches(&[0, 1, 1]));
    }
}
