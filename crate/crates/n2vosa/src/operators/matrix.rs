use serde::Serialize;

use crate::scalar::CycScalar;

/// Column-sparse exact matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, CycScalar)>>,
}

#[derive(Serialize)]
struct Triplets<'a> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, &'a CycScalar)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(|i| vec![(i, CycScalar::one())]).collect() }
    }

    /// Columns given as (row, value) lists; zeros are dropped and rows sorted.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(usize, CycScalar)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.retain(|(_, x)| !x.is_zero());
                c.sort_by_key(|(r, _)| *r);
                c
            })
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, CycScalar)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> CycScalar {
        self.cols[j].iter().find(|(r, _)| *r == i).map(|(_, x)| x.clone()).unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    fn combine(&self, other: &SparseMatrix, c: &CycScalar) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc: std::collections::BTreeMap<usize, CycScalar> = a.iter().cloned().collect();
                for (r, x) in b {
                    *acc.entry(*r).or_default() += &(x * c);
                }
                acc.into_iter().collect()
            })
            .collect();
        SparseMatrix::from_columns(self.rows, cols)
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, &CycScalar::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, &CycScalar::from_int(-1))
    }

    pub fn scaled(&self, c: &CycScalar) -> SparseMatrix {
        SparseMatrix::from_columns(
            self.rows,
            self.cols.iter().map(|col| col.iter().map(|(r, x)| (*r, x * c)).collect()).collect(),
        )
    }

    /// self · other
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows);
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: std::collections::BTreeMap<usize, CycScalar> = Default::default();
                for (k, x) in col {
                    for (r, y) in &self.cols[*k] {
                        *acc.entry(*r).or_default() += &(y * x);
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        SparseMatrix::from_columns(self.rows, cols)
    }

    pub fn trace(&self) -> CycScalar {
        let mut t = CycScalar::zero();
        for (j, col) in self.cols.iter().enumerate() {
            if let Some((_, x)) = col.iter().find(|(r, _)| *r == j) {
                t += x;
            }
        }
        t
    }

    /// Principal submatrix on the given indices.
    pub fn restrict(&self, idx: &[usize]) -> SparseMatrix {
        let pos: std::collections::HashMap<usize, usize> = idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let cols = idx
            .iter()
            .map(|&j| self.cols[j].iter().filter_map(|(r, x)| pos.get(r).map(|&p| (p, x.clone()))).collect())
            .collect();
        SparseMatrix::from_columns(idx.len(), cols)
    }

    /// Sparse triplet JSON with exact string entries.
    pub fn to_json(&self) -> String {
        let entries =
            self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, x)| (*i, j, x))).collect();
        serde_json::to_string(&Triplets { rows: self.rows, cols: self.cols(), entries }).expect("matrix serializes")
    }
}
