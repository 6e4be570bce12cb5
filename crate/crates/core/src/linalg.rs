//! Exact Gaussian elimination over sparse rational vectors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::Rational;

pub type SparseVector<K> = BTreeMap<K, Rational>;

/// Row-reduced basis of a span, kept with the combination of input vectors
/// that produced each row.
struct Echelon<K> {
    rows: Vec<(K, SparseVector<K>, Vec<Rational>)>,
    inputs: usize,
}

impl<K: Ord + Clone> Echelon<K> {
    fn new(inputs: usize) -> Self {
        Echelon { rows: Vec::new(), inputs }
    }

    /// Reduces `v` against the current rows; returns the residue and the
    /// combination of inputs subtracted so far.
    fn reduce(&self, v: &SparseVector<K>) -> (SparseVector<K>, Vec<Rational>) {
        let mut v = v.clone();
        let mut combo = vec![Rational::zero(); self.inputs];
        for (pivot, row, row_combo) in &self.rows {
            let Some(k) = v.get(pivot).cloned() else { continue };
            axpy(&mut v, &-k.clone(), row);
            for (c, r) in combo.iter_mut().zip(row_combo) {
                *c += &k * r;
            }
        }
        (v, combo)
    }

    fn insert(&mut self, index: usize, v: &SparseVector<K>) -> bool {
        let (residue, combo) = self.reduce(v);
        let Some((pivot, lead)) = residue.iter().next().map(|(p, k)| (p.clone(), k.clone())) else {
            return false;
        };
        let mut row_combo: Vec<Rational> = combo.iter().map(|c| -c).collect();
        row_combo[index] += Rational::from_integer(1.into());
        let inv = Rational::from_integer(1.into()) / lead;
        let row: SparseVector<K> = residue.into_iter().map(|(p, k)| (p, k * &inv)).collect();
        let row_combo = row_combo.into_iter().map(|c| c * &inv).collect();
        for (_, other, other_combo) in &mut self.rows {
            if let Some(k) = other.get(&pivot).cloned() {
                axpy(other, &-k.clone(), &row);
                for (c, r) in other_combo.iter_mut().zip(&row_combo) {
                    *c -= &k * r;
                }
            }
        }
        self.rows.push((pivot, row, row_combo));
        true
    }
}

fn axpy<K: Ord + Clone>(target: &mut SparseVector<K>, k: &Rational, x: &SparseVector<K>) {
    for (key, val) in x {
        let slot = target.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += k * val;
        if slot.is_zero() {
            target.remove(key);
        }
    }
}

/// Coefficients `c` with `sum c_i columns[i] = target`, if any exist.
pub fn solve<K: Ord + Clone>(columns: &[SparseVector<K>], target: &SparseVector<K>) -> Option<Vec<Rational>> {
    let mut ech = Echelon::new(columns.len());
    for (i, col) in columns.iter().enumerate() {
        ech.insert(i, col);
    }
    let (residue, combo) = ech.reduce(target);
    residue.is_empty().then_some(combo)
}

pub fn rank<K: Ord + Clone>(vectors: &[SparseVector<K>]) -> usize {
    let mut ech = Echelon::new(vectors.len());
    vectors.iter().enumerate().filter(|(i, v)| ech.insert(*i, v)).count()
}

pub fn in_span<K: Ord + Clone>(vectors: &[SparseVector<K>], target: &SparseVector<K>) -> bool {
    solve(vectors, target).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(entries: &[(u8, i64)]) -> SparseVector<u8> {
        entries.iter().map(|&(k, v)| (k, Rational::from_integer(v.into()))).filter(|(_, v)| !v.is_zero()).collect()
    }

    #[test]
    fn solves_small_system() {
        let cols = vec![vec_of(&[(0, 1), (1, 1)]), vec_of(&[(0, 1), (1, -1)]), vec_of(&[(0, 2), (1, 2)])];
        let target = vec_of(&[(0, 3), (1, 1)]);
        let c = solve(&cols, &target).unwrap();
        let mut check = SparseVector::new();
        for (col, k) in cols.iter().zip(&c) {
            axpy(&mut check, k, col);
        }
        assert_eq!(check, target);
        assert_eq!(rank(&cols), 2);
        assert!(!in_span(&cols[..1], &target));
        assert!(in_span(&cols, &SparseVector::new()));
    }
}
