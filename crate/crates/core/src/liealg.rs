//! Lie algebras given by structure constants, their ideals, and the isotypic structure of the
//! abelian socle.

use std::collections::HashSet;

use crate::config::{Caps, Prng};
use crate::error::{Error, Result};
use crate::ff::{Elem, Field, Matrix, Subspace};
use crate::rep::{self, Irreducibility, Representation};

/// Finite-dimensional Lie algebra over a finite field, `[b_i, b_j] = sum_k c_ij^k b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    field: Field,
    dim: usize,
    // c_ij^k at (i * dim + j) * dim + k
    constants: Vec<Elem>,
    labels: Option<Vec<String>>,
}

/// First structure-constant defect found by [`LieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `c_ij^k != -c_ji^k` (or `c_ii^k != 0` when `i == j`).
    Antisymmetry { i: usize, j: usize, k: usize },
    /// `[b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]] != 0`.
    Jacobi { i: usize, j: usize, k: usize },
}

impl LieAlgebra {
    /// Structure constants laid out as `constants[(i * dim + j) * dim + k] = c_ij^k`.
    pub fn new(field: &Field, dim: usize, constants: Vec<Elem>) -> Result<LieAlgebra> {
        if constants.len() != dim * dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        Ok(LieAlgebra {
            field: field.clone(),
            dim,
            constants,
            labels: None,
        })
    }

    /// Builds from brackets `[b_i, b_j] = v` for `i < j`, filling in antisymmetry.
    pub fn from_brackets(field: &Field, dim: usize, brackets: &[(usize, usize, Vec<Elem>)]) -> LieAlgebra {
        let mut constants = vec![Elem::ZERO; dim * dim * dim];
        for (i, j, v) in brackets {
            for (k, &c) in v.iter().enumerate() {
                constants[(i * dim + j) * dim + k] = c;
                constants[(j * dim + i) * dim + k] = field.neg(c);
            }
        }
        LieAlgebra {
            field: field.clone(),
            dim,
            constants,
            labels: None,
        }
    }

    pub fn abelian(field: &Field, dim: usize) -> LieAlgebra {
        LieAlgebra::from_brackets(field, dim, &[])
    }

    /// `<x, y, z>` with `[x, y] = z`.
    pub fn heisenberg(field: &Field) -> LieAlgebra {
        let z = vec![Elem::ZERO, Elem::ZERO, Elem::ONE];
        LieAlgebra::from_brackets(field, 3, &[(0, 1, z)]).with_labels(&["x", "y", "z"])
    }

    /// `<e, h, f>` with `[e, f] = h`, `[h, e] = 2e`, `[h, f] = -2f`.
    pub fn sl2(field: &Field) -> LieAlgebra {
        let two = field.from_int(2);
        let m2 = field.from_int(-2);
        let z = Elem::ZERO;
        LieAlgebra::from_brackets(
            field,
            3,
            &[
                (0, 2, vec![z, Elem::ONE, z]),
                (1, 0, vec![two, z, z]),
                (1, 2, vec![z, z, m2]),
            ],
        )
        .with_labels(&["e", "h", "f"])
    }

    pub fn with_labels(mut self, labels: &[&str]) -> LieAlgebra {
        self.labels = Some(labels.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        self.labels = labels;
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Elem {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[Elem] {
        &self.constants
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Elem] {
        let start = (i * self.dim + j) * self.dim;
        &self.constants[start..start + self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.dim];
        v[i] = Elem::ONE;
        v
    }

    pub fn bracket(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![Elem::ZERO; n];
        for (i, &a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = f.add(*o, f.mul(ab, c));
                    }
                }
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity on all basis triples.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let f = &self.field;
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.constant(i, j, k) != f.neg(self.constant(j, i, k)) {
                        return Err(Violation::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (bi, bj, bk) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let t1 = self.bracket(&bi, self.bracket_basis(j, k));
                    let t2 = self.bracket(&bj, self.bracket_basis(k, i));
                    let t3 = self.bracket(&bk, self.bracket_basis(i, j));
                    if (0..n).any(|m| !f.add(f.add(t1[m], t2[m]), t3[m]).is_zero()) {
                        return Err(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `y -> [x, y]`; column `j` holds `[x, b_j]`.
    pub fn ad(&self, x: &[Elem]) -> Matrix {
        let n = self.dim;
        let f = &self.field;
        let mut m = Matrix::zeros(f, n, n);
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        m.set(k, j, f.add(m.get(k, j), f.mul(a, c)));
                    }
                }
            }
        }
        m
    }

    pub fn ad_basis(&self) -> Vec<Matrix> {
        (0..self.dim).map(|i| self.ad(&self.basis_vector(i))).collect()
    }

    /// The adjoint module.
    pub fn adjoint(&self) -> Representation {
        Representation::new(&self.field, self.dim, self.ad_basis())
    }

    /// The adjoint action on an ideal, in the coordinates of its RREF basis.
    pub fn ideal_module(&self, ideal: &Subspace) -> Representation {
        self.adjoint().submodule(ideal)
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // x central iff [x, b_j] = 0 for all j: stack the ad(b_j) maps x -> -[b_j, x]
        let rows: Vec<Vec<Elem>> = (0..n)
            .flat_map(|j| {
                let adj = self.ad(&self.basis_vector(j));
                (0..n).map(move |k| adj.row(k).to_vec())
            })
            .collect();
        let m = Matrix::from_rows(&self.field, n, &rows);
        Subspace::from_matrix(&m.kernel())
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        let n = self.dim;
        let vecs: Vec<Vec<Elem>> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket_basis(i, j).to_vec())
            .collect();
        Subspace::from_vectors(&self.field, n, &vecs)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.is_invariant(&self.ad_basis())
    }

    pub fn is_abelian(&self, s: &Subspace) -> bool {
        let vs = s.vectors();
        vs.iter().enumerate().all(|(a, u)| {
            vs[a + 1..]
                .iter()
                .all(|v| self.bracket(u, v).iter().all(|e| e.is_zero()))
        })
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let vs = s.vectors();
        vs.iter()
            .enumerate()
            .all(|(a, u)| vs[a + 1..].iter().all(|v| s.contains(&self.bracket(u, v))))
    }

    /// Ideal generated by `v`.
    pub fn ideal_generated(&self, seeds: &[Vec<Elem>]) -> Subspace {
        Subspace::spin(&self.field, self.dim, &self.ad_basis(), seeds)
    }

    /// Whether a nonzero ideal is minimal: no proper nonzero sub-ideal.
    pub fn is_minimal_ideal(&self, s: &Subspace, caps: &Caps, rng: &mut Prng) -> Result<bool> {
        if s.is_zero() || !self.is_ideal(s) {
            return Ok(false);
        }
        Ok(matches!(
            rep::is_irreducible(&self.ideal_module(s), caps, rng)?,
            Irreducibility::Irreducible(_)
        ))
    }

    /// All minimal ideals, sorted canonically. Spins every projective point when
    /// `|F|^n` is within the enumeration cap, otherwise uses the socle of the adjoint module.
    pub fn minimal_ideals(&self, caps: &Caps, rng: &mut Prng) -> Result<Vec<Subspace>> {
        let q = self.field.size() as u64;
        let points = q.checked_pow(self.dim as u32).unwrap_or(u64::MAX);
        if points <= caps.enumeration {
            Ok(self.minimal_ideals_exhaustive())
        } else {
            rep::minimal_submodules(&self.adjoint(), caps, rng)
        }
    }

    pub fn minimal_ideals_exhaustive(&self) -> Vec<Subspace> {
        let n = self.dim;
        let f = &self.field;
        let gens = self.ad_basis();
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut spins: Vec<Subspace> = Vec::new();
        for v in projective_points(f, n) {
            let s = Subspace::spin(f, n, &gens, &[v]);
            if seen.insert(s.basis().data().to_vec()) {
                spins.push(s);
            }
        }
        spins.sort_by(|a, b| a.canonical_cmp(b));
        let mut minimal: Vec<Subspace> = Vec::new();
        for s in spins {
            if !minimal.iter().any(|m| s.contains_subspace(m)) {
                minimal.push(s);
            }
        }
        minimal
    }

    /// Sum of the abelian minimal ideals.
    pub fn abelian_socle(&self, minimal: &[Subspace]) -> Subspace {
        minimal
            .iter()
            .filter(|m| self.is_abelian(m))
            .fold(Subspace::zero(&self.field, self.dim), |acc, m| acc.sum(m))
    }

    /// Isomorphism classes of abelian minimal ideals with greedily chosen direct families.
    pub fn iso_classes(&self, minimal: &[Subspace]) -> Result<Vec<IsoClass>> {
        let mut classes: Vec<IsoClass> = Vec::new();
        for m in minimal.iter().filter(|m| self.is_abelian(m)) {
            let module = self.ideal_module(m);
            let mut placed = false;
            for class in classes.iter_mut() {
                let homs = rep::hom_space(&class.module, &module);
                if homs.is_empty() {
                    continue;
                }
                placed = true;
                let sum = class.isotypic.sum(m);
                if sum.dim() == class.isotypic.dim() + m.dim() {
                    let phi = homs[0].clone();
                    if phi.inverse().is_none() {
                        return Err(Error::verification(
                            "iso_classes",
                            "nonzero homomorphism between minimal ideals is not invertible",
                        ));
                    }
                    class.members.push(m.clone());
                    class.isomorphisms.push(phi);
                    class.isotypic = sum;
                }
                break;
            }
            if !placed {
                let end = rep::hom_space(&module, &module).len();
                classes.push(IsoClass {
                    members: vec![m.clone()],
                    isomorphisms: vec![Matrix::identity(&self.field, m.dim())],
                    isotypic: m.clone(),
                    endomorphism_dim: end,
                    module,
                });
            }
        }
        Ok(classes)
    }

    /// Basis of the derivation algebra, each as an `n x n` matrix acting on columns.
    pub fn derivations(&self) -> Vec<Matrix> {
        let n = self.dim;
        let f = &self.field;
        // unknown D[m][k] at index m * n + k; D b_l = sum_k D[k][l] b_k
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let mut row = vec![Elem::ZERO; n * n];
                    for k in 0..n {
                        let c = self.constant(i, j, k);
                        row[m * n + k] = f.add(row[m * n + k], c);
                        let a = self.constant(k, j, m);
                        row[k * n + i] = f.sub(row[k * n + i], a);
                        let b = self.constant(i, k, m);
                        row[k * n + j] = f.sub(row[k * n + j], b);
                    }
                    rows.push(row);
                }
            }
        }
        let sys = Matrix::from_rows(f, n * n, &rows);
        let ker = sys.kernel();
        (0..ker.rows())
            .map(|r| Matrix::from_fn(f, n, n, |a, b| ker.get(r, a * n + b)))
            .collect()
    }

    /// The same structure constants read in an extension field.
    pub fn extend_scalars(&self, ext: &Field) -> Result<LieAlgebra> {
        let emb = ext.embedding(&self.field)?;
        Ok(LieAlgebra {
            field: ext.clone(),
            dim: self.dim,
            constants: self.constants.iter().map(|&c| emb.embed(c)).collect(),
            labels: self.labels.clone(),
        })
    }

    /// Structure constants of the subalgebra spanned by the RREF basis of `s`.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LieAlgebra> {
        let basis = s.vectors();
        let d = basis.len();
        let mut constants = vec![Elem::ZERO; d * d * d];
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let coords = s
                    .coordinates(&self.bracket(u, v))
                    .ok_or_else(|| Error::InvalidInput("subspace is not a subalgebra".into()))?;
                constants[(a * d + b) * d..(a * d + b + 1) * d].copy_from_slice(&coords);
            }
        }
        LieAlgebra::new(&self.field, d, constants)
    }
}

/// Projective points of `K^n`: nonzero vectors whose first nonzero entry is 1.
pub fn projective_points(field: &Field, n: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    (0..n).flat_map(move |lead| {
        let tail = n - lead - 1;
        let q = field.size() as u64;
        let count = q.pow(tail as u32);
        (0..count).map(move |mut code| {
            let mut v = vec![Elem::ZERO; n];
            v[lead] = Elem::ONE;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = field.from_lex_key((code % q) as u32);
                code /= q;
            }
            v
        })
    })
}

/// One isomorphism type of abelian minimal ideal: `A_1, .., A_r` with `A_1 ⊕ .. ⊕ A_r` equal to
/// the isotypic component and `phi_i: A_1 -> A_i` in RREF coordinates.
#[derive(Clone, Debug)]
pub struct IsoClass {
    pub members: Vec<Subspace>,
    pub isomorphisms: Vec<Matrix>,
    pub isotypic: Subspace,
    /// `dim_F End_L(A_1)`.
    pub endomorphism_dim: usize,
    /// Adjoint action on `A_1`.
    pub module: Representation,
}

impl IsoClass {
    pub fn representative(&self) -> &Subspace {
        &self.members[0]
    }

    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    pub fn rep_dim(&self) -> usize {
        self.members[0].dim()
    }

    /// `phi_i(a)` in ambient coordinates, `a` given in RREF coordinates of `A_1`.
    pub fn image(&self, i: usize, a: &[Elem]) -> Vec<Elem> {
        let coords = self.isomorphisms[i].mul_vec(a);
        self.members[i].combine(&coords)
    }

    /// `{ sum_i lambda_i phi_i(a) : a in A_1 }`.
    pub fn diagonal(&self, lambda: &[Elem]) -> Subspace {
        let field = self.isotypic.field();
        let d = self.rep_dim();
        let n = self.isotypic.ambient_dim();
        let vecs: Vec<Vec<Elem>> = (0..d)
            .map(|j| {
                let mut unit = vec![Elem::ZERO; d];
                unit[j] = Elem::ONE;
                let mut acc = vec![Elem::ZERO; n];
                for (i, &l) in lambda.iter().enumerate() {
                    if l.is_zero() {
                        continue;
                    }
                    let img = self.image(i, &unit);
                    for (a, b) in acc.iter_mut().zip(img) {
                        *a = field.add(*a, field.mul(l, b));
                    }
                }
                acc
            })
            .collect();
        Subspace::from_vectors(field, n, &vecs)
    }
}

/// The ideal `A_lambda` for a projectively normalized `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub lambda: Vec<Elem>,
    pub ideal: Subspace,
}

impl Diagonal {
    /// More than one nonzero coefficient.
    pub fn is_diagonal(&self) -> bool {
        self.lambda.iter().filter(|l| !l.is_zero()).count() > 1
    }
}

/// All `A_lambda` over the projective space of `lambda`, each verified to be a minimal ideal.
pub fn enumerate_diagonals(
    algebra: &LieAlgebra,
    class: &IsoClass,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<Vec<Diagonal>> {
    let f = algebra.field();
    let r = class.multiplicity();
    let count = (f.size() as u64).checked_pow(r as u32).unwrap_or(u64::MAX);
    if count > caps.enumeration {
        return Err(Error::cap("diagonal enumeration", count, caps.enumeration));
    }
    let mut out = Vec::new();
    for lambda in projective_points(f, r) {
        let ideal = class.diagonal(&lambda);
        if ideal.dim() != class.rep_dim() || !algebra.is_minimal_ideal(&ideal, caps, rng)? {
            return Err(Error::verification(
                "enumerate_diagonals",
                format!("A_lambda for lambda = {lambda:?} is not a minimal ideal"),
            ));
        }
        out.push(Diagonal { lambda, ideal });
    }
    Ok(out)
}
