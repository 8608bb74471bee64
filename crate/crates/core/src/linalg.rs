//! Sparse exact Gaussian elimination over a [`Field`].

use std::collections::BTreeMap;

use crate::error::Result;
use crate::scalar::{Field, Scalar};

/// A sparse vector: `(column, value)` pairs, sorted by column, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec(Vec<(usize, Scalar)>);

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec(Vec::new())
    }

    /// Builds from unsorted entries; duplicates are summed, zeros dropped.
    pub fn from_entries(field: Field, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Result<SparseVec> {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in entries {
            field.ensure(v.field())?;
            match map.get_mut(&i) {
                Some(x) => *x = &*x + &v,
                None => {
                    map.insert(i, v);
                }
            }
        }
        Ok(SparseVec(map.into_iter().filter(|(_, v)| !v.is_zero()).collect()))
    }

    pub fn unit(field: Field, i: usize) -> SparseVec {
        SparseVec(vec![(i, Scalar::one(field))])
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, col: usize) -> Option<&Scalar> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    pub fn leading(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    /// `self - k * other`.
    pub fn sub_scaled(&self, k: &Scalar, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let cj = other.0.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            if ci < cj {
                out.push(self.0[i].clone());
                i += 1;
            } else if cj < ci {
                out.push((cj, -(k * &other.0[j].1)));
                j += 1;
            } else {
                let v = &self.0[i].1 - &(k * &other.0[j].1);
                if !v.is_zero() {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec(out)
    }

    pub fn scale(&self, k: &Scalar) -> SparseVec {
        if k.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(c, v)| (*c, v * k)).collect())
    }

    /// Keeps the entries whose column passes `keep`, renumbered by `map`.
    pub fn select(&self, mut map: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        let mut v: Vec<(usize, Scalar)> = self
            .0
            .iter()
            .filter_map(|(c, x)| map(*c).map(|n| (n, x.clone())))
            .collect();
        v.sort_by_key(|(c, _)| *c);
        SparseVec(v)
    }
}

/// Row-echelon form built incrementally. Every stored row has a leading 1 at
/// its pivot column and no entry in any other pivot column once
/// [`Echelon::make_reduced`] has run.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: BTreeMap<usize, SparseVec>,
    reduced: bool,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon {
            field,
            rows: BTreeMap::new(),
            reduced: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut i = 0;
        while i < v.0.len() {
            let (col, coef) = v.0[i].clone();
            match self.rows.get(&col) {
                Some(row) => v = v.sub_scaled(&coef, row),
                None => i += 1,
            }
        }
        v
    }

    /// Adds `v` to the row space; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.0.first().cloned() else {
            return false;
        };
        let inv = lead.inverse().expect("nonzero leading entry");
        self.rows.insert(pivot, r.scale(&inv));
        self.reduced = false;
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Back-substitutes so that pivot columns appear in exactly one row.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let prow = self.rows[&p].clone();
            let lower: Vec<usize> = self.rows.range(..p).map(|(k, _)| *k).collect();
            for q in lower {
                let row = &self.rows[&q];
                if let Some(k) = row.get(p).cloned() {
                    let updated = row.sub_scaled(&k, &prow);
                    self.rows.insert(q, updated);
                }
            }
        }
        self.reduced = true;
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Basis of `{x : row . x = 0 for all rows}` over columns `0..ncols`.
    pub fn nullspace(&mut self, ncols: usize) -> Vec<SparseVec> {
        self.make_reduced();
        let mut free_cols: BTreeMap<usize, Vec<(usize, Scalar)>> = (0..ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|c| (c, vec![(c, Scalar::one(self.field))]))
            .collect();
        for (p, row) in &self.rows {
            for (c, v) in row.entries().iter().skip(1) {
                if let Some(vec) = free_cols.get_mut(c) {
                    vec.push((*p, -v));
                }
            }
        }
        free_cols
            .into_values()
            .map(|mut entries| {
                entries.sort_by_key(|(c, _)| *c);
                SparseVec(entries)
            })
            .collect()
    }
}

/// Solution set of an affine system `A x = b`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: SparseVec,
    pub kernel: Vec<SparseVec>,
}

/// Solves `rows[i] . x = rhs[i]` over columns `0..ncols`; `None` when the
/// system is inconsistent.
pub fn solve_affine(field: Field, ncols: usize, rows: Vec<(SparseVec, Scalar)>) -> Option<AffineSolution> {
    let mut ech = Echelon::new(field);
    for (row, b) in rows {
        let mut entries = row.0;
        if !b.is_zero() {
            entries.push((ncols, b));
        }
        ech.insert(SparseVec(entries));
    }
    if ech.is_pivot(ncols) {
        return None;
    }
    ech.make_reduced();
    let particular = SparseVec(
        ech.rows
            .iter()
            .filter_map(|(p, row)| row.get(ncols).map(|b| (*p, b.clone())))
            .collect(),
    );
    let homogeneous: Vec<SparseVec> = ech
        .rows
        .values()
        .map(|r| r.select(|c| (c < ncols).then_some(c)))
        .collect();
    let mut hom = Echelon::new(field);
    for r in homogeneous {
        hom.insert(r);
    }
    Some(AffineSolution {
        particular,
        kernel: hom.nullspace(ncols),
    })
}

/// A basis of the span of `vectors`, in reduced echelon form.
pub fn span_basis(field: Field, vectors: impl IntoIterator<Item = SparseVec>) -> Echelon {
    let mut ech = Echelon::new(field);
    for v in vectors {
        ech.insert(v);
    }
    ech.make_reduced();
    ech
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(Q, entries.iter().map(|&(c, x)| (c, Scalar::from_int(Q, x)))).unwrap()
    }

    fn dot(a: &SparseVec, b: &SparseVec) -> Scalar {
        a.entries()
            .iter()
            .filter_map(|(c, x)| b.get(*c).map(|y| x * y))
            .fold(Scalar::zero(Q), |acc, t| &acc + &t)
    }

    #[test]
    fn nullspace_of_small_matrix() {
        // x0 + x1 + x2 = 0, x1 - x2 = 0
        let rows = [v(&[(0, 1), (1, 1), (2, 1)]), v(&[(1, 1), (2, -1)])];
        let mut ech = Echelon::new(Q);
        for r in &rows {
            assert!(ech.insert(r.clone()));
        }
        assert!(!ech.insert(v(&[(0, 2), (1, 2), (2, 2)])));
        let ns = ech.nullspace(3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
        assert_eq!(ns[0], v(&[(0, -2), (1, 1), (2, 1)]));
    }

    #[test]
    fn affine_consistent_and_inconsistent() {
        let one = Scalar::one(Q);
        let rows = vec![(v(&[(0, 1), (1, 1)]), Scalar::from_int(Q, 3)), (v(&[(1, 1)]), one.clone())];
        let sol = solve_affine(Q, 2, rows).unwrap();
        assert_eq!(sol.particular, v(&[(0, 2), (1, 1)]));
        assert!(sol.kernel.is_empty());

        let rows = vec![(v(&[(0, 1)]), one.clone()), (v(&[(0, 2)]), one)];
        assert!(solve_affine(Q, 1, rows).is_none());

        let rows = vec![(v(&[(0, 1), (2, 1)]), Scalar::from_int(Q, 5))];
        let sol = solve_affine(Q, 3, rows).unwrap();
        assert_eq!(sol.kernel.len(), 2);
    }

    #[test]
    fn span_membership() {
        let ech = span_basis(Q, [v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)])]);
        assert_eq!(ech.rank(), 2);
        assert!(ech.contains(&v(&[(0, 1), (2, -1)])));
        assert!(!ech.contains(&v(&[(0, 1)])));
    }
}
