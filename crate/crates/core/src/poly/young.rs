use super::{GenPolynomial, PolyError};
use crate::perm::Permutation;
use crate::rep::Partition;
use crate::scalar::Scalar;

/// A Young diagram filled bijectively with `1..=n`, rows listed top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungTableau {
    rows: Vec<Vec<u32>>,
}

impl YoungTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, PolyError> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        Partition::new(lens.clone()).map_err(|e| PolyError::InvalidTableau(e.to_string()))?;
        let n: usize = lens.iter().sum();
        let mut seen = vec![false; n];
        for &e in rows.iter().flatten() {
            let i = e as usize;
            if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
                return Err(PolyError::InvalidTableau(format!("entries must be a bijection onto 1..={n}")));
            }
        }
        Ok(YoungTableau { rows })
    }

    /// The tableau filled row by row with `1, 2, …`.
    pub fn row_reading(shape: &Partition) -> Self {
        let mut next = 0;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                (0..len)
                    .map(|_| {
                        next += 1;
                        next
                    })
                    .collect()
            })
            .collect();
        YoungTableau { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("validated on construction")
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).map(|j| self.rows.iter().filter_map(|r| r.get(j).copied()).collect()).collect()
    }

    /// Row stabilizer.
    pub fn row_group(&self) -> Vec<Permutation> {
        stabilizer(self.size(), &self.rows)
    }

    /// Column stabilizer.
    pub fn column_group(&self) -> Vec<Permutation> {
        stabilizer(self.size(), &self.columns())
    }
}

/// All permutations preserving each block setwise.
fn stabilizer(n: usize, blocks: &[Vec<u32>]) -> Vec<Permutation> {
    let mut group = vec![Permutation::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local: Vec<Permutation> = Permutation::all(block.len()).collect();
        let mut next = Vec::with_capacity(group.len() * local.len());
        for g in &group {
            for pi in &local {
                let mut images = g.images().to_vec();
                for (i, &e) in block.iter().enumerate() {
                    images[e as usize - 1] = block[pi.apply(i)] as usize - 1;
                }
                next.push(Permutation::from_images(images).expect("block permutation"));
            }
        }
        group = next;
    }
    group
}

/// `e_T f = Σ_{σ ∈ R_T, τ ∈ C_T} sgn(τ) στ·f`.
pub fn young_symmetrize<T: Scalar>(
    tableau: &YoungTableau,
    f: &GenPolynomial<T>,
) -> Result<GenPolynomial<T>, PolyError> {
    let n = tableau.size();
    if !f.is_multilinear_of_arity(n) {
        return Err(PolyError::NotMultilinear { expected: n });
    }
    let mut col_sum = GenPolynomial::zero();
    for tau in tableau.column_group() {
        let term = f.permute_vars(&tau)?;
        col_sum = if tau.sign() > 0 { &col_sum + &term } else { &col_sum - &term };
    }
    let mut out = GenPolynomial::zero();
    for sigma in tableau.row_group() {
        out = &out + &col_sum.permute_vars(&sigma)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = GenPolynomial<Rational>;

    fn word(vs: &[u32]) -> P {
        vs.iter().fold(P::scalar(num_traits::One::one()), |acc, &v| &acc * &P::var(v))
    }

    #[test]
    fn row_shape_symmetrizes() {
        let t = YoungTableau::new(vec![vec![1, 2]]).unwrap();
        assert_eq!(young_symmetrize(&t, &word(&[1, 2])).unwrap(), &word(&[1, 2]) + &word(&[2, 1]));
    }

    #[test]
    fn column_shape_alternates() {
        let t = YoungTableau::new(vec![vec![1], vec![2]]).unwrap();
        assert_eq!(young_symmetrize(&t, &word(&[1, 2])).unwrap(), &word(&[1, 2]) - &word(&[2, 1]));
    }

    #[test]
    fn hook_shape_term_bound() {
        let t = YoungTableau::new(vec![vec![1, 2], vec![3]]).unwrap();
        assert_eq!(t.row_group().len() * t.column_group().len(), 4);
        let e = young_symmetrize(&t, &word(&[1, 2, 3])).unwrap();
        assert!(e.len() <= 4 && !e.is_zero());
    }

    #[test]
    fn column_tableau_equals_full_alternation() {
        let shape = Partition::new(vec![1, 1, 1, 1]).unwrap();
        let t = YoungTableau::row_reading(&shape);
        let f = word(&[1, 2, 3, 4]);
        assert_eq!(young_symmetrize(&t, &f).unwrap(), f.alternate(&[1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn bad_fillings() {
        assert!(YoungTableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert!(YoungTableau::new(vec![vec![1, 1]]).is_err());
        let t = YoungTableau::new(vec![vec![1, 2]]).unwrap();
        assert!(young_symmetrize(&t, &word(&[1])).is_err());
    }
}
