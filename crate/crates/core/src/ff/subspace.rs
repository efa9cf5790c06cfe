use std::cmp::Ordering;

use super::field::{Elem, Field};
use super::matrix::{axpy, Matrix};

/// Incrementally built semi-echelon basis: each row has a leading 1 at its pivot and zeros at the
/// pivots of earlier rows.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(field: &Field, ambient: usize) -> Echelon {
        Echelon {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, v: &mut [Elem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                axpy(f, v, f.neg(c), row);
            }
        }
    }

    /// Adds `v` if it is independent; returns the reduced, normalized vector that was stored.
    pub(crate) fn insert(&mut self, v: &[Elem]) -> Option<Vec<Elem>> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let piv = w.iter().position(|e| !e.is_zero())?;
        let inv = self.field.inv(w[piv]);
        for e in w.iter_mut() {
            *e = self.field.mul(*e, inv);
        }
        self.rows.push(w.clone());
        self.pivots.push(piv);
        Some(w)
    }

    pub(crate) fn into_subspace(self) -> Subspace {
        Subspace::from_vectors(&self.field, self.ambient, &self.rows)
    }
}

/// A subspace of `K^n`, stored as its reduced row echelon basis so that equal subspaces have
/// equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Subspace {
        let r = m.rref();
        let rank = r.rank();
        let f = m.field();
        let basis = Matrix::from_fn(f, rank, m.cols(), |i, j| r.matrix.get(i, j));
        Subspace {
            basis,
            pivots: r.pivots,
        }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Subspace {
        Subspace::from_matrix(&Matrix::from_rows(field, ambient, vectors))
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vecs()
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if !c.is_zero() {
                axpy(f, &mut w, f.neg(c), self.basis.row(i));
            }
        }
        w
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// `sum_i c_i b_i` for the RREF basis `b_i`.
    pub fn combine(&self, coords: &[Elem]) -> Vec<Elem> {
        self.basis.vec_mul(coords)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_matrix(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let stacked = self.basis.vstack(&other.basis);
        let rel = stacked.left_kernel();
        let k = self.dim();
        let vecs: Vec<Vec<Elem>> = (0..rel.rows())
            .map(|i| self.basis.vec_mul(&rel.row(i)[..k]))
            .collect();
        Subspace::from_vectors(self.field(), self.ambient_dim(), &vecs)
    }

    /// Unit vectors at the non-pivot columns; together with the basis they span the ambient space.
    pub fn complement_basis(&self) -> Vec<Vec<Elem>> {
        let n = self.ambient_dim();
        (0..n)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| {
                let mut e = vec![Elem::ZERO; n];
                e[c] = Elem::ONE;
                e
            })
            .collect()
    }

    /// Canonical order: dimension first, then the basis entries compared from the last entry
    /// backwards (coordinate 0 least significant).
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| {
                let a = self.basis.sort_key();
                let b = other.basis.sort_key();
                a.iter().rev().cmp(b.iter().rev())
            })
    }

    /// Smallest subspace containing `seeds` and invariant under every matrix in `gens`.
    pub fn spin(field: &Field, ambient: usize, gens: &[Matrix], seeds: &[Vec<Elem>]) -> Subspace {
        let mut ech = Echelon::new(field, ambient);
        let mut queue: Vec<Vec<Elem>> = seeds.iter().filter_map(|s| ech.insert(s)).collect();
        while let Some(v) = queue.pop() {
            if ech.dim() == ambient {
                break;
            }
            for g in gens {
                let w = g.mul_vec(&v);
                if let Some(r) = ech.insert(&w) {
                    queue.push(r);
                }
            }
        }
        ech.into_subspace()
    }

    /// Whether `v -> g v` maps the subspace into itself for every `g`.
    pub fn is_invariant(&self, gens: &[Matrix]) -> bool {
        self.vectors()
            .iter()
            .all(|v| gens.iter().all(|g| self.contains(&g.mul_vec(v))))
    }
}
