//! Matrix representations of Lie algebras over finite fields.

mod character;
mod meataxe;

pub use character::{character_of_irreducible, cluster_of_module, Character, Cluster};
pub use meataxe::{composition_series, is_irreducible, minimal_submodules, Irreducibility, NortonWitness};

use crate::error::{Error, Result};
use crate::ff::{Echelon, Elem, Field, Matrix, Subspace};
use crate::liealg::LieAlgebra;

/// `x -> rho(x)` given by the images of the basis of `L`, with entries in a field `K` that
/// contains the base field of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    field: Field,
    dim: usize,
    matrices: Vec<Matrix>,
}

impl Representation {
    pub fn new(field: &Field, dim: usize, matrices: Vec<Matrix>) -> Representation {
        for m in &matrices {
            assert_eq!((m.rows(), m.cols()), (dim, dim), "representation matrix has wrong shape");
            assert_eq!(m.field(), field, "representation matrix over the wrong field");
        }
        Representation {
            field: field.clone(),
            dim,
            matrices,
        }
    }

    /// Every basis element acting as zero.
    pub fn trivial(field: &Field, n_gens: usize, dim: usize) -> Representation {
        Representation::new(field, dim, vec![Matrix::zeros(field, dim, dim); n_gens])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_gens(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    /// `rho(x)` for `x` with coordinates in `base`.
    pub fn element(&self, base: &Field, x: &[Elem]) -> Result<Matrix> {
        let emb = self.field.embedding(base)?;
        let mut out = Matrix::zeros(&self.field, self.dim, self.dim);
        for (m, &c) in self.matrices.iter().zip(x) {
            if !c.is_zero() {
                out.add_scaled(emb.embed(c), m);
            }
        }
        Ok(out)
    }

    /// First pair `i < j` with `rho([b_i, b_j]) != [rho(b_i), rho(b_j)]`.
    pub fn validate(&self, algebra: &LieAlgebra) -> std::result::Result<(), (usize, usize)> {
        let n = algebra.dim();
        if self.n_gens() != n {
            return Err((n, n));
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.matrices[i].commutator(&self.matrices[j]);
                let rhs = self
                    .element(algebra.field(), algebra.bracket_basis(i, j))
                    .map_err(|_| (i, j))?;
                if lhs != rhs {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    pub fn spin(&self, vectors: &[Vec<Elem>]) -> Subspace {
        Subspace::spin(&self.field, self.dim, &self.matrices, vectors)
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.is_invariant(&self.matrices)
    }

    /// Action on an invariant subspace, in the coordinates of its RREF basis.
    pub fn submodule(&self, s: &Subspace) -> Representation {
        let basis = s.vectors();
        let d = basis.len();
        let matrices = self
            .matrices
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Elem>> = basis
                    .iter()
                    .map(|u| s.coordinates(&g.mul_vec(u)).expect("subspace is invariant"))
                    .collect();
                Matrix::from_fn(&self.field, d, d, |i, j| cols[j][i])
            })
            .collect();
        Representation::new(&self.field, d, matrices)
    }

    /// Action on `V / S`, with basis the images of the unit vectors off the pivots of `S`.
    pub fn quotient(&self, s: &Subspace) -> Representation {
        let free: Vec<usize> = (0..self.dim).filter(|c| !s.pivots().contains(c)).collect();
        let q = free.len();
        let matrices = self
            .matrices
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Elem>> = free
                    .iter()
                    .map(|&c| {
                        let r = s.reduce(&g.col(c));
                        free.iter().map(|&k| r[k]).collect()
                    })
                    .collect();
                Matrix::from_fn(&self.field, q, q, |i, j| cols[j][i])
            })
            .collect();
        Representation::new(&self.field, q, matrices)
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert_eq!(self.n_gens(), other.n_gens());
        assert_eq!(self.field, other.field);
        let (a, b) = (self.dim, other.dim);
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(x, y)| {
                Matrix::from_fn(&self.field, a + b, a + b, |i, j| match (i < a, j < a) {
                    (true, true) => x.get(i, j),
                    (false, false) => y.get(i - a, j - a),
                    _ => Elem::ZERO,
                })
            })
            .collect();
        Representation::new(&self.field, a + b, matrices)
    }

    /// `x (v ⊗ w) = x v ⊗ w + v ⊗ x w`, with `v_i ⊗ w_k` at index `i * dim W + k`.
    pub fn tensor(&self, other: &Representation) -> Representation {
        assert_eq!(self.n_gens(), other.n_gens());
        assert_eq!(self.field, other.field);
        let f = &self.field;
        let iv = Matrix::identity(f, self.dim);
        let iw = Matrix::identity(f, other.dim);
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(x, y)| x.kron(&iw).add(&iv.kron(y)))
            .collect();
        Representation::new(f, self.dim * other.dim, matrices)
    }

    /// The same module with scalars extended to `ext`.
    pub fn extend_scalars(&self, ext: &Field) -> Result<Representation> {
        let emb = ext.embedding(&self.field)?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| m.map(ext, |e| emb.embed(e)))
            .collect();
        Ok(Representation::new(ext, self.dim, matrices))
    }

    /// The module viewed over a subfield; `v gamma^j` sits at index `i * d + j` for `v = e_i`.
    pub fn restrict_scalars(&self, sub: &Field) -> Result<Representation> {
        let emb = self.field.embedding(sub)?;
        let d = emb.relative_degree();
        let gamma = self.field.generator();
        let powers: Vec<Elem> = (0..d as u64).map(|j| self.field.pow(gamma, j)).collect();
        let m = self.dim;
        let matrices = self
            .matrices
            .iter()
            .map(|g| {
                let mut out = Matrix::zeros(sub, m * d, m * d);
                for i in 0..m {
                    for k in 0..m {
                        let a = g.get(i, k);
                        if a.is_zero() {
                            continue;
                        }
                        for (jj, &gp) in powers.iter().enumerate() {
                            let coords = emb.coordinates(self.field.mul(a, gp));
                            for (ii, &c) in coords.iter().enumerate() {
                                out.set(i * d + ii, k * d + jj, c);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Representation::new(sub, m * d, matrices))
    }

    /// The module for the subalgebra spanned by `vectors` (coordinates over `base`).
    pub fn restrict_to(&self, base: &Field, vectors: &[Vec<Elem>]) -> Result<Representation> {
        let matrices = vectors
            .iter()
            .map(|v| self.element(base, v))
            .collect::<Result<_>>()?;
        Ok(Representation::new(&self.field, self.dim, matrices))
    }

    pub fn acts_trivially(&self, base: &Field, s: &Subspace) -> Result<bool> {
        for v in s.vectors() {
            if !self.element(base, &v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `{x in L : rho(x) = 0}` over the base field.
    pub fn kernel(&self, base: &Field) -> Result<Subspace> {
        let emb = self.field.embedding(base)?;
        let n = self.n_gens();
        let d = emb.relative_degree();
        let entries = self.dim * self.dim;
        // column i: rho(b_i) flattened, each entry expanded over base
        let mut sys = Matrix::zeros(base, entries * d, n);
        for (i, m) in self.matrices.iter().enumerate() {
            for (e, &a) in m.data().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, c) in emb.coordinates(a).into_iter().enumerate() {
                    sys.set(e * d + j, i, c);
                }
            }
        }
        Ok(Subspace::from_matrix(&sys.kernel()))
    }

    pub fn is_faithful(&self, base: &Field) -> Result<bool> {
        Ok(self.kernel(base)?.is_zero())
    }

    /// Canonical comparison key used to break ties between modules of equal dimension.
    pub fn sort_key(&self) -> (usize, Vec<Vec<u32>>) {
        (self.dim, self.matrices.iter().map(|m| m.sort_key()).collect())
    }
}

/// Basis of `{T : T rho_V(x) = rho_W(x) T}`, each `T` a `dim W x dim V` matrix.
pub fn hom_space(v: &Representation, w: &Representation) -> Vec<Matrix> {
    assert_eq!(v.n_gens(), w.n_gens());
    assert_eq!(v.field(), w.field());
    if v.dim() == 0 || w.dim() == 0 {
        return Vec::new();
    }
    match cyclic_vector(v) {
        Some(v0) => hom_from_cyclic(v, w, &v0),
        None => hom_linear_system(v, w),
    }
}

fn cyclic_vector(v: &Representation) -> Option<Vec<Elem>> {
    let m = v.dim();
    (0..m)
        .map(|i| {
            let mut e = vec![Elem::ZERO; m];
            e[i] = Elem::ONE;
            e
        })
        .chain(std::iter::once(vec![Elem::ONE; m]))
        .find(|e| v.spin(std::slice::from_ref(e)).is_full())
}

/// A homomorphism out of a cyclic module is fixed by the image `w` of the generator; the
/// relations among the spun basis vectors cut out the admissible `w`.
fn hom_from_cyclic(v: &Representation, w: &Representation, v0: &[Elem]) -> Vec<Matrix> {
    let f = v.field().clone();
    let (dv, dw) = (v.dim(), w.dim());
    let mut ech = Echelon::new(&f, dv);
    ech.insert(v0);
    let mut basis: Vec<Vec<Elem>> = vec![v0.to_vec()];
    // words[k]: matrix over W with T b_k = words[k] w
    let mut words: Vec<Matrix> = vec![Matrix::identity(&f, dw)];
    let mut k = 0;
    while k < basis.len() {
        for (gv, gw) in v.matrices().iter().zip(w.matrices()) {
            let img = gv.mul_vec(&basis[k]);
            if ech.insert(&img).is_some() {
                basis.push(img);
                words.push(gw.mul(&words[k]));
            }
        }
        k += 1;
    }
    debug_assert_eq!(basis.len(), dv);
    // columns b_k
    let bmat = Matrix::from_fn(&f, dv, dv, |i, j| basis[j][i]);
    let binv = bmat.inverse().expect("spun basis is a basis");
    let mut constraints = Echelon::new(&f, dw);
    'outer: for (kk, b) in basis.iter().enumerate() {
        for (gv, gw) in v.matrices().iter().zip(w.matrices()) {
            let coords = binv.mul_vec(&gv.mul_vec(b));
            let mut block = gw.mul(&words[kk]);
            for (l, &c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    block.add_scaled(f.neg(c), &words[l]);
                }
            }
            for r in 0..dw {
                constraints.insert(block.row(r));
            }
            if constraints.dim() == dw {
                break 'outer;
            }
        }
    }
    let sols = constraints.into_subspace();
    let free = Matrix::from_rows(&f, dw, &sols.vectors()).kernel();
    (0..free.rows())
        .map(|s| {
            let wv = free.row(s);
            let cols: Vec<Vec<Elem>> = words.iter().map(|m| m.mul_vec(wv)).collect();
            let tb = Matrix::from_fn(&f, dw, dv, |i, j| cols[j][i]);
            tb.mul(&binv)
        })
        .collect()
}

fn hom_linear_system(v: &Representation, w: &Representation) -> Vec<Matrix> {
    let f = v.field().clone();
    let (dv, dw) = (v.dim(), w.dim());
    let nvar = dv * dw;
    // unknown T[a][b] at a * dv + b
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for (gv, gw) in v.matrices().iter().zip(w.matrices()) {
        for a in 0..dw {
            for b in 0..dv {
                // (T gv - gw T)[a][b] = sum_c T[a][c] gv[c][b] - sum_c gw[a][c] T[c][b]
                let mut row = vec![Elem::ZERO; nvar];
                for c in 0..dv {
                    row[a * dv + c] = f.add(row[a * dv + c], gv.get(c, b));
                }
                for c in 0..dw {
                    row[c * dv + b] = f.sub(row[c * dv + b], gw.get(a, c));
                }
                rows.push(row);
            }
        }
    }
    let ker = Matrix::from_rows(&f, nvar, &rows).kernel();
    (0..ker.rows())
        .map(|s| Matrix::from_fn(&f, dw, dv, |a, b| ker.get(s, a * dv + b)))
        .collect()
}

/// Isomorphism test for irreducible modules (Schur: any nonzero hom is invertible).
pub fn irreducibles_isomorphic(v: &Representation, w: &Representation) -> bool {
    v.dim() == w.dim() && !hom_space(v, w).is_empty()
}

pub(crate) fn check_same_algebra(v: &Representation, algebra: &LieAlgebra) -> Result<()> {
    if v.n_gens() != algebra.dim() {
        return Err(Error::InvalidInput(format!(
            "module has {} matrices but the algebra has dimension {}",
            v.n_gens(),
            algebra.dim()
        )));
    }
    if !v.field().has_subfield(algebra.field()) {
        return Err(Error::FieldMismatch(format!(
            "module field {} does not contain {}",
            v.field(),
            algebra.field()
        )));
    }
    Ok(())
}
