use std::fmt;

/// A permutation of `{0, …, n-1}` stored by images. Displayed 1-based in
/// cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a permutation: {0:?}")]
pub struct InvalidPermutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, InvalidPermutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(InvalidPermutation(images));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, InvalidPermutation> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(InvalidPermutation(cycle.to_vec()));
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Cycle lengths in weakly decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn sign(&self) -> i64 {
        let even_cycles = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of degree `n` in lexicographic order of images.
    pub fn all(n: usize) -> PermutationIter {
        PermutationIter { next: Some((0..n).collect()) }
    }

    /// The representative of a cycle type whose cycles are consecutive
    /// ascending runs `(1 2 … μ1)(μ1+1 …)…`.
    pub fn of_cycle_type(cycle_type: &[usize]) -> Permutation {
        let n: usize = cycle_type.iter().sum();
        let mut images = Vec::with_capacity(n);
        let mut start = 0;
        for &len in cycle_type {
            for k in 0..len {
                images.push(start + (k + 1) % len);
            }
            start += len;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub struct PermutationIter {
    next: Option<Vec<usize>>,
}

impl Iterator for PermutationIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let n = succ.len();
        if n > 1 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).unwrap();
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation { images: cur })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(4).count(), 24);
        let v: Vec<_> = Permutation::all(3).map(|p| p.images().to_vec()).collect();
        assert_eq!(v[0], vec![0, 1, 2]);
        assert_eq!(v[1], vec![0, 2, 1]);
        assert_eq!(v[5], vec![2, 1, 0]);
    }

    #[test]
    fn composition_and_inverse() {
        let s = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let t = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        let st = s.compose(&t);
        // t sends 0 to 0, then s sends 0 to 1
        assert_eq!(st.apply(0), 1);
        assert_eq!(st.apply(1), 2);
        assert!(st.compose(&st.inverse()).is_identity());
        assert_eq!(st.cycle_type(), vec![3]);
        assert_eq!(st.sign(), 1);
        assert_eq!(s.sign(), -1);
    }

    #[test]
    fn cycle_type_representatives() {
        let p = Permutation::of_cycle_type(&[3, 2, 1]);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
