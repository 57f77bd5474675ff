//! Sparse matrices over `F_p` with labeled rows and columns.
//!
//! Row and column labels are kept sorted; elimination always pivots on the
//! smallest row label of a column, and columns are processed in label
//! order, so ranks, kernels and preimages are reproducible bit-for-bit.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::fp::Prime;

/// Sparse vector: strictly increasing indices, no zero values.
pub type SparseVec = Vec<(usize, u32)>;

/// `v + f * w`, both sparse.
fn axpy(p: Prime, v: &[(usize, u32)], f: u32, w: &[(usize, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        match (v.get(i), w.get(j)) {
            (Some(&(a, x)), Some(&(b, y))) if a == b => {
                let s = p.add(x, p.mul(f, y));
                if s != 0 {
                    out.push((a, s));
                }
                i += 1;
                j += 1;
            }
            (Some(&(a, x)), Some(&(b, _))) if a < b => {
                out.push((a, x));
                i += 1;
            }
            (Some(&(a, x)), None) => {
                out.push((a, x));
                i += 1;
            }
            (_, Some(&(b, y))) => {
                let s = p.mul(f, y);
                if s != 0 {
                    out.push((b, s));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn scale(p: Prime, v: &mut SparseVec, f: u32) {
    for (_, x) in v.iter_mut() {
        *x = p.mul(*x, f);
    }
}

/// Matrix over `F_p` mapping column-labeled vectors to row-labeled vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix<R, C> {
    prime: Prime,
    rows: Vec<R>,
    cols: Vec<C>,
    columns: Vec<SparseVec>,
}

impl<R: Ord + Clone, C: Ord + Clone> FpMatrix<R, C> {
    /// Builds a matrix from labeled entries. Repeated `(row, col)` pairs are
    /// summed; zero results are dropped.
    pub fn new(
        prime: Prime,
        rows: Vec<R>,
        cols: Vec<C>,
        entries: impl IntoIterator<Item = ((R, C), i64)>,
    ) -> Result<Self, Error> {
        let rows = sorted_unique(rows)?;
        let cols = sorted_unique(cols)?;
        let mut acc: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); cols.len()];
        for ((r, c), v) in entries {
            let ri = rows.binary_search(&r).map_err(|_| Error::UnknownLabel)?;
            let ci = cols.binary_search(&c).map_err(|_| Error::UnknownLabel)?;
            let slot = acc[ci].entry(ri).or_insert(0);
            *slot = prime.add(*slot, prime.reduce(v));
        }
        let columns = acc.into_iter().map(|m| m.into_iter().filter(|&(_, v)| v != 0).collect()).collect();
        Ok(FpMatrix { prime, rows, cols, columns })
    }

    pub fn identity(prime: Prime, labels: Vec<R>) -> Result<FpMatrix<R, R>, Error> {
        let labels = sorted_unique(labels)?;
        let columns = (0..labels.len()).map(|i| vec![(i, 1)]).collect();
        Ok(FpMatrix { prime, rows: labels.clone(), cols: labels, columns })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn rows(&self) -> &[R] {
        &self.rows
    }

    pub fn cols(&self) -> &[C] {
        &self.cols
    }

    pub fn get(&self, r: &R, c: &C) -> u32 {
        let (Ok(ri), Ok(ci)) = (self.rows.binary_search(r), self.cols.binary_search(c)) else {
            return 0;
        };
        self.columns[ci].binary_search_by_key(&ri, |&(i, _)| i).map(|k| self.columns[ci][k].1).unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Dense image of a dense column-indexed vector.
    pub fn apply(&self, x: &[u32]) -> Result<Vec<u32>, Error> {
        if x.len() != self.cols.len() {
            return Err(Error::DimensionMismatch { expected: self.cols.len(), found: x.len() });
        }
        let p = self.prime;
        let mut out = vec![0; self.rows.len()];
        for (col, &xi) in self.columns.iter().zip(x) {
            if xi == 0 {
                continue;
            }
            for &(r, v) in col {
                out[r] = p.add(out[r], p.mul(v, xi));
            }
        }
        Ok(out)
    }

    /// The composite `after ∘ self`. The row labels of `self` must equal the
    /// column labels of `after`.
    pub fn compose<Q: Ord + Clone>(&self, after: &FpMatrix<Q, R>) -> Result<FpMatrix<Q, C>, Error> {
        if after.cols != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows.len(), found: after.cols.len() });
        }
        let p = self.prime;
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().fold(Vec::new(), |acc, &(mid, v)| axpy(p, &acc, v, &after.columns[mid])))
            .collect();
        Ok(FpMatrix { prime: p, rows: after.rows.clone(), cols: self.cols.clone(), columns })
    }

    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new(self.prime, self.rows.len(), false);
        for (ci, col) in self.columns.iter().enumerate() {
            elim.insert(col.clone(), ci);
        }
        elim.rank()
    }

    /// A basis of the kernel, as dense vectors indexed by column position.
    /// Its length is always `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let mut elim = Eliminator::new(self.prime, self.rows.len(), true);
        let mut kernel = Vec::new();
        for (ci, col) in self.columns.iter().enumerate() {
            if let Some(combo) = elim.insert(col.clone(), ci) {
                let mut dense = vec![0; self.cols.len()];
                for (i, v) in combo {
                    dense[i] = v;
                }
                kernel.push(dense);
            }
        }
        kernel
    }

    /// Decides whether `v` (dense, indexed by row position) lies in the
    /// column span, returning a preimage when it does.
    pub fn image_membership(&self, v: &[u32]) -> Result<Option<Vec<u32>>, Error> {
        if v.len() != self.rows.len() {
            return Err(Error::DimensionMismatch { expected: self.rows.len(), found: v.len() });
        }
        let mut elim = Eliminator::new(self.prime, self.rows.len(), true);
        for (ci, col) in self.columns.iter().enumerate() {
            elim.insert(col.clone(), ci);
        }
        let target: SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, &x)| x % self.prime.value() != 0)
            .map(|(i, &x)| (i, x % self.prime.value()))
            .collect();
        Ok(elim.solve(target).map(|combo| {
            let mut dense = vec![0; self.cols.len()];
            for (i, x) in combo {
                dense[i] = x;
            }
            dense
        }))
    }
}

fn sorted_unique<T: Ord>(mut v: Vec<T>) -> Result<Vec<T>, Error> {
    v.sort();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateLabel);
    }
    Ok(v)
}

/// Incremental column reduction. Each pivot is normalized to leading
/// coefficient 1 and, when tracking, remembers which combination of input
/// columns produced it.
struct Eliminator {
    prime: Prime,
    pivots: Vec<Option<(SparseVec, SparseVec)>>,
    track: bool,
    rank: usize,
}

impl Eliminator {
    fn new(prime: Prime, nrows: usize, track: bool) -> Self {
        Eliminator { prime, pivots: vec![None; nrows], track, rank: 0 }
    }

    fn rank(&self) -> usize {
        self.rank
    }

    /// Inserts column `index`. Returns the dependency combination when the
    /// column reduces to zero (only when tracking).
    fn insert(&mut self, mut v: SparseVec, index: usize) -> Option<SparseVec> {
        let p = self.prime;
        let mut combo: SparseVec = if self.track { vec![(index, 1)] } else { Vec::new() };
        while let Some(&(lead, coeff)) = v.first() {
            match &self.pivots[lead] {
                Some((pv, pc)) => {
                    let f = p.neg(coeff);
                    v = axpy(p, &v, f, pv);
                    if self.track {
                        combo = axpy(p, &combo, f, pc);
                    }
                }
                None => {
                    let inv = p.inv(coeff);
                    scale(p, &mut v, inv);
                    scale(p, &mut combo, inv);
                    self.pivots[lead] = Some((v, combo));
                    self.rank += 1;
                    return None;
                }
            }
        }
        self.track.then_some(combo)
    }

    /// Finds `x` with `M x = target`, using the tracked combinations.
    fn solve(&self, mut target: SparseVec) -> Option<SparseVec> {
        let p = self.prime;
        let mut pre = Vec::new();
        while let Some(&(lead, coeff)) = target.first() {
            let (pv, pc) = self.pivots[lead].as_ref()?;
            target = axpy(p, &target, p.neg(coeff), pv);
            pre = axpy(p, &pre, coeff, pc);
        }
        Some(pre)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(p: u32, rows: usize, cols: usize, data: &[i64]) -> FpMatrix<usize, usize> {
        let p = Prime::new(p).unwrap();
        let entries = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).zip(data.iter().copied());
        FpMatrix::new(p, (0..rows).collect(), (0..cols).collect(), entries).unwrap()
    }

    #[test]
    fn identity_rank() {
        let m = FpMatrix::<usize, usize>::identity(Prime::TWO, vec![0, 1]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn zero_matrix() {
        let m = dense(2, 3, 4, &[0; 12]);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 4);
        let z = dense(3, 2, 3, &[0; 6]);
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn singular_mod_three() {
        // det = 1 - 4 = -3
        let m = dense(3, 2, 2, &[1, 2, 2, 1]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        // enumerate all four vectors over F_2: only (0,0) and (1,1) die
        let m = dense(2, 1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![1, 1]]);
        let killed: Vec<_> =
            [[0, 0], [0, 1], [1, 0], [1, 1]].into_iter().filter(|x| m.apply(x).unwrap() == vec![0]).collect();
        assert_eq!(killed, vec![[0, 0], [1, 1]]);
    }

    #[test]
    fn membership() {
        let m = dense(2, 2, 1, &[1, 1]);
        assert_eq!(m.image_membership(&[1, 0]).unwrap(), None);
        assert_eq!(m.image_membership(&[1, 1]).unwrap(), Some(vec![1]));
        assert_eq!(m.image_membership(&[0, 0]).unwrap(), Some(vec![0]));
        assert!(m.image_membership(&[1]).is_err());
        let id = FpMatrix::<usize, usize>::identity(Prime::THREE, vec![0, 1, 2]).unwrap();
        assert_eq!(id.image_membership(&[2, 0, 1]).unwrap(), Some(vec![2, 0, 1]));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = FpMatrix::<u8, u8>::new(Prime::TWO, vec![1, 1], vec![0], []);
        assert!(matches!(r, Err(Error::DuplicateLabel)));
    }

    #[test]
    fn compose_and_get() {
        let a = dense(3, 2, 2, &[1, 1, 0, 1]);
        let b = dense(3, 2, 2, &[1, 2, 0, 1]);
        let ab = a.compose(&b).unwrap(); // b * a
        assert_eq!(ab.get(&0, &0), 1);
        assert_eq!(ab.get(&0, &1), 0); // 1 + 2 = 3
        assert_eq!(ab.get(&1, &1), 1);
    }
}
