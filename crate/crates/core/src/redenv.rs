//! The reduced enveloping algebra `u(L, chi)` on PBW monomials, and irreducible modules with a
//! prescribed character cluster.

use std::collections::HashMap;
use std::rc::Rc;

use crate::config::{Caps, Prng};
use crate::error::{Error, Result};
use crate::ff::{min_poly_over_subfield, Elem, Field, Matrix, Poly};
use crate::liealg::LieAlgebra;
use crate::rep::{cluster_of_module, composition_series, Character, Cluster, Representation};
use crate::restricted::RestrictedLieAlgebra;

type Sparse = Vec<(usize, Elem)>;

/// `u(L, chi)` with basis `b_1^e_1 .. b_n^e_n`, `0 <= e_i < p`, in lexicographic order of
/// exponent vectors; monomial index `sum e_i p^(n-1-i)`.
#[derive(Clone, Debug)]
pub struct ReducedEnvAlgebra {
    restricted: RestrictedLieAlgebra,
    character: Character,
    dim: usize,
    left: Vec<Matrix>,
}

/// How `b_i^(bound_i)` rewrites.
enum Overflow {
    /// `b_i^p = v + c` for a Lie element `v` and a scalar `c`.
    Lie(Vec<Elem>, Elem),
    /// `b_i^(bound) = sum c_e b_i^e` with every `e < bound`.
    Power(Vec<(usize, Elem)>),
}

/// PBW straightening in a quotient of `U(L)` where each generator satisfies one overflow rule.
struct Straightener<'a> {
    algebra: &'a LieAlgebra,
    bounds: Vec<usize>,
    overflow: Vec<Overflow>,
    place: Vec<usize>,
    memo: HashMap<(usize, usize), Rc<Sparse>>,
}

impl<'a> Straightener<'a> {
    fn new(algebra: &'a LieAlgebra, bounds: Vec<usize>, overflow: Vec<Overflow>) -> Straightener<'a> {
        let n = bounds.len();
        let mut place = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            place[i] = place[i + 1] * bounds[i + 1];
        }
        Straightener {
            algebra,
            bounds,
            overflow,
            place,
            memo: HashMap::new(),
        }
    }

    fn dim(&self) -> usize {
        self.bounds.iter().product()
    }

    fn exponent(&self, m: usize, i: usize) -> usize {
        (m / self.place[i]) % self.bounds[i]
    }

    fn add_into(acc: &mut HashMap<usize, Elem>, f: &Field, c: Elem, xs: &Sparse) {
        for &(k, v) in xs {
            let e = acc.entry(k).or_insert(Elem::ZERO);
            *e = f.add(*e, f.mul(c, v));
        }
    }

    fn finish(acc: HashMap<usize, Elem>) -> Sparse {
        let mut out: Sparse = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_unstable_by_key(|&(k, _)| k);
        out
    }

    /// `b_i * m` as a combination of monomials.
    fn mul_gen(&mut self, i: usize, m: usize) -> Rc<Sparse> {
        if let Some(r) = self.memo.get(&(i, m)) {
            return r.clone();
        }
        let f = self.algebra.field().clone();
        let n = self.bounds.len();
        let lowest = (0..n).find(|&j| self.exponent(m, j) > 0);
        let result: Sparse = match lowest {
            Some(j) if j < i => {
                // b_i b_j m' = b_j (b_i m') + [b_i, b_j] m'
                let rest = m - self.place[j];
                let mut acc = HashMap::new();
                let inner = self.mul_gen(i, rest);
                for &(t, c) in inner.iter() {
                    let moved = self.mul_gen(j, t);
                    Self::add_into(&mut acc, &f, c, &moved);
                }
                let bracket = self.algebra.bracket_basis(i, j).to_vec();
                for (k, &c) in bracket.iter().enumerate() {
                    if !c.is_zero() {
                        let term = self.mul_gen(k, rest);
                        Self::add_into(&mut acc, &f, c, &term);
                    }
                }
                Self::finish(acc)
            }
            Some(j) if j == i && self.exponent(m, i) + 1 == self.bounds[i] => {
                let rest = m - (self.bounds[i] - 1) * self.place[i];
                let mut acc = HashMap::new();
                match &self.overflow[i] {
                    Overflow::Lie(v, c) => {
                        let (v, c) = (v.clone(), *c);
                        for (k, &a) in v.iter().enumerate() {
                            if !a.is_zero() {
                                let term = self.mul_gen(k, rest);
                                Self::add_into(&mut acc, &f, a, &term);
                            }
                        }
                        Self::add_into(&mut acc, &f, c, &vec![(rest, Elem::ONE)]);
                    }
                    Overflow::Power(terms) => {
                        let place = self.place[i];
                        let terms: Sparse = terms.iter().map(|&(e, c)| (rest + e * place, c)).collect();
                        Self::add_into(&mut acc, &f, Elem::ONE, &terms);
                    }
                }
                Self::finish(acc)
            }
            _ => vec![(m + self.place[i], Elem::ONE)],
        };
        let rc = Rc::new(result);
        self.memo.insert((i, m), rc.clone());
        rc
    }

    fn left_matrices(&mut self) -> Vec<Matrix> {
        let f = self.algebra.field().clone();
        let dim = self.dim();
        (0..self.bounds.len())
            .map(|i| {
                let mut mat = Matrix::zeros(&f, dim, dim);
                for m in 0..dim {
                    for &(k, c) in self.mul_gen(i, m).iter() {
                        mat.set(k, m, c);
                    }
                }
                mat
            })
            .collect()
    }
}

impl ReducedEnvAlgebra {
    /// `restricted` and `character` must be over the same field.
    pub fn build(restricted: &RestrictedLieAlgebra, character: &Character, caps: &Caps) -> Result<ReducedEnvAlgebra> {
        let f = restricted.field().clone();
        if character.field() != &f {
            return Err(Error::FieldMismatch(format!(
                "character over {} but algebra over {}",
                character.field(),
                f
            )));
        }
        let n = restricted.algebra().dim();
        let p = f.p() as usize;
        let dim = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if dim > caps.env_dim {
            return Err(Error::cap("reduced enveloping algebra dimension", dim, caps.env_dim));
        }
        let dim = dim as usize;
        let overflow = (0..n)
            .map(|i| Overflow::Lie(restricted.pmap()[i].clone(), f.pow(character.values()[i], p as u64)))
            .collect();
        let left = Straightener::new(restricted.algebra(), vec![p; n], overflow).left_matrices();
        Ok(ReducedEnvAlgebra {
            restricted: restricted.clone(),
            character: character.clone(),
            dim,
            left,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn restricted(&self) -> &RestrictedLieAlgebra {
        &self.restricted
    }

    /// Left multiplication by the basis of `L`.
    pub fn left_matrices(&self) -> &[Matrix] {
        &self.left
    }

    /// `u(L, chi)` acting on itself by left multiplication.
    pub fn regular_module(&self) -> Representation {
        Representation::new(self.restricted.field(), self.dim, self.left.clone())
    }

    /// Product of two elements given in the monomial basis.
    pub fn multiply(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = self.restricted.field();
        let n = self.restricted.algebra().dim();
        let p = f.p() as usize;
        let mut out = vec![Elem::ZERO; self.dim];
        for (m, &c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // m * b = b_1^e_1 (.. (b_n^e_n b))
            let mut y = b.to_vec();
            let mut rest = m;
            let mut exps = vec![0usize; n];
            for i in (0..n).rev() {
                exps[i] = rest % p;
                rest /= p;
            }
            for i in (0..n).rev() {
                for _ in 0..exps[i] {
                    y = self.left[i].mul_vec(&y);
                }
            }
            for (o, v) in out.iter_mut().zip(y) {
                *o = f.add(*o, f.mul(c, v));
            }
        }
        out
    }

    /// `lambda(b_i)^p - lambda(b_i^[p]) = chi(b_i)^p` and the bracket relations, as matrix
    /// identities.
    pub fn verify_relations(&self) -> bool {
        let f = self.restricted.field();
        let p = f.p() as u64;
        let l = self.restricted.algebra();
        let n = l.dim();
        let act = |x: &[Elem]| {
            let mut m = Matrix::zeros(f, self.dim, self.dim);
            for (g, &c) in self.left.iter().zip(x) {
                if !c.is_zero() {
                    m.add_scaled(c, g);
                }
            }
            m
        };
        for i in 0..n {
            let lhs = self.left[i].pow(p).sub(&act(&self.restricted.pmap()[i]));
            let chi = f.pow(self.character.values()[i], p);
            if lhs != Matrix::scalar(f, self.dim, chi) {
                return false;
            }
            for j in i + 1..n {
                if self.left[i].commutator(&self.left[j]) != act(l.bracket_basis(i, j)) {
                    return false;
                }
            }
        }
        true
    }
}

/// The least monic `sum a_k t^(p^k)` of degree at least `p` that `m` divides.
pub fn p_polynomial_multiple(m: &Poly) -> Poly {
    let f = m.field().clone();
    let p = f.p() as u64;
    let d = m.degree().expect("nonzero polynomial");
    let residue = |k: u32| -> Vec<Elem> {
        let r = Poly::x(&f).powmod(p.pow(k), m);
        (0..d).map(|i| r.coeff(i)).collect()
    };
    let mut residues = vec![residue(0)];
    let mut k = 1u32;
    loop {
        let r = residue(k);
        let cols = Matrix::from_fn(&f, d, residues.len(), |i, j| residues[j][i]);
        if let Some(a) = cols.solve(&r) {
            let mut coeffs = vec![Elem::ZERO; p.pow(k) as usize + 1];
            coeffs[p.pow(k) as usize] = Elem::ONE;
            for (j, &c) in a.iter().enumerate() {
                let idx = p.pow(j as u32) as usize;
                coeffs[idx] = f.sub(coeffs[idx], c);
            }
            return Poly::new(f, coeffs);
        }
        residues.push(r);
        k += 1;
    }
}

/// A faithful module: `U(L)` modulo the central elements `q_i(b_i)`, where `q_i` is the
/// p-polynomial multiple of the minimal polynomial of `ad(b_i)`, acting on itself on the left.
pub fn truncated_enveloping_module(algebra: &LieAlgebra, caps: &Caps) -> Result<Representation> {
    let f = algebra.field().clone();
    let n = algebra.dim();
    let mut bounds = Vec::with_capacity(n);
    let mut overflow = Vec::with_capacity(n);
    let mut dim: u64 = 1;
    for i in 0..n {
        let q = p_polynomial_multiple(&algebra.ad(&algebra.basis_vector(i)).min_poly());
        let top = q.degree().unwrap_or(0);
        dim = dim.saturating_mul(top as u64);
        if dim > caps.env_dim {
            return Err(Error::cap("truncated enveloping algebra dimension", dim, caps.env_dim));
        }
        let terms = (0..top)
            .filter(|&e| !q.coeff(e).is_zero())
            .map(|e| (e, f.neg(q.coeff(e))))
            .collect();
        bounds.push(top);
        overflow.push(Overflow::Power(terms));
    }
    let left = Straightener::new(algebra, bounds, overflow).left_matrices();
    Ok(Representation::new(&f, dim as usize, left))
}

/// Minimal polynomial over `base` of `chi(x)^p`.
pub fn m_x_poly(character: &Character, base: &Field, x: &[Elem]) -> Result<Poly> {
    let e = character.field();
    let v = e.pow(character.eval(base, x)?, e.p() as u64);
    min_poly_over_subfield(e, v, base)
}

/// The first composition factor of least dimension, ties broken by canonical matrix order.
pub fn smallest_factor(factors: Vec<Representation>) -> Option<Representation> {
    factors
        .into_iter()
        .min_by(|a, b| a.sort_key().cmp(&b.sort_key()))
}

/// An irreducible module over the base field whose cluster is the Frobenius orbit of `c`.
#[derive(Clone, Debug)]
pub struct ClusterModule {
    pub module: Representation,
    /// Factor of the regular module of `u(E ⊗ L, c)` that was restricted to the base field.
    pub over_extension: Representation,
    pub cluster: Cluster,
}

pub fn irreducible_with_cluster(
    restricted: &RestrictedLieAlgebra,
    c: &Character,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<ClusterModule> {
    let base = restricted.field().clone();
    let e = c.field().clone();
    let ext = restricted.extend_scalars(&e)?;
    let u = ReducedEnvAlgebra::build(&ext, c, caps)?;
    let w = smallest_factor(composition_series(&u.regular_module(), caps, rng)?)
        .ok_or_else(|| Error::verification("irreducible_with_cluster", "empty regular module"))?;
    let restricted_w = w.restrict_scalars(&base)?;
    let v = smallest_factor(composition_series(&restricted_w, caps, rng)?)
        .ok_or_else(|| Error::verification("irreducible_with_cluster", "empty restriction"))?;
    let cluster = cluster_of_module(&v, restricted, caps, rng)?;
    if !cluster.is_simple() || !cluster.within_orbit_of(c)? || !cluster.contains(c)? {
        return Err(Error::verification(
            "irreducible_with_cluster",
            "cluster of the constructed module is not the Frobenius orbit of the character",
        ));
    }
    Ok(ClusterModule {
        module: v,
        over_extension: w,
        cluster,
    })
}
