//! p-maps, Jacobson's formula, and the p-envelope of a Lie algebra.

use crate::config::{Caps, Prng};
use crate::error::{Error, Result};
use crate::ff::{Echelon, Elem, Field, Matrix, Subspace};
use crate::liealg::LieAlgebra;
use crate::redenv::truncated_enveloping_module;

/// A Lie algebra with the values `b_i^[p]` of a p-map on its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedLieAlgebra {
    algebra: LieAlgebra,
    pmap: Vec<Vec<Elem>>,
}

/// First failure found by [`RestrictedLieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PMapViolation {
    /// `ad(b_i^[p]) != ad(b_i)^p`.
    Basis(usize),
    /// `ad(x^[p]) != ad(x)^p` for this random element.
    Random(Vec<Elem>),
}

fn check_p(field: &Field, caps: &Caps) -> Result<()> {
    let p = field.p();
    if p > caps.max_p {
        return Err(Error::cap("characteristic for the p-map", p as u64, caps.max_p as u64));
    }
    Ok(())
}

/// `s_1(u,v), .., s_{p-1}(u,v)` with `sum_i i s_i t^(i-1) = ad(tu + v)^(p-1)(u)`.
pub fn jacobson_si(algebra: &LieAlgebra, u: &[Elem], v: &[Elem], caps: &Caps) -> Result<Vec<Vec<Elem>>> {
    check_p(algebra.field(), caps)?;
    Ok(jacobson_terms(algebra, u, v))
}

fn jacobson_terms(algebra: &LieAlgebra, u: &[Elem], v: &[Elem]) -> Vec<Vec<Elem>> {
    let f = algebra.field();
    let p = f.p() as usize;
    let n = algebra.dim();
    // poly[k] = coefficient of t^k
    let mut poly: Vec<Vec<Elem>> = vec![u.to_vec()];
    for _ in 0..p - 1 {
        let mut next = vec![vec![Elem::ZERO; n]; poly.len() + 1];
        for (k, w) in poly.iter().enumerate() {
            let bv = algebra.bracket(v, w);
            let bu = algebra.bracket(u, w);
            for m in 0..n {
                next[k][m] = f.add(next[k][m], bv[m]);
                next[k + 1][m] = f.add(next[k + 1][m], bu[m]);
            }
        }
        poly = next;
    }
    (1..p)
        .map(|i| {
            let inv = f.inv(f.from_int(i as i64));
            poly[i - 1].iter().map(|&c| f.mul(c, inv)).collect()
        })
        .collect()
}

impl RestrictedLieAlgebra {
    pub fn new(algebra: LieAlgebra, pmap: Vec<Vec<Elem>>, caps: &Caps) -> Result<RestrictedLieAlgebra> {
        check_p(algebra.field(), caps)?;
        let n = algebra.dim();
        if pmap.len() != n || pmap.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidInput(format!("p-map must list {n} vectors of length {n}")));
        }
        Ok(RestrictedLieAlgebra { algebra, pmap })
    }

    pub fn zero_pmap(algebra: LieAlgebra, caps: &Caps) -> Result<RestrictedLieAlgebra> {
        let n = algebra.dim();
        RestrictedLieAlgebra::new(algebra, vec![vec![Elem::ZERO; n]; n], caps)
    }

    /// Some p-map, found by solving `ad(v_i) = ad(b_i)^p` modulo the center, if one exists.
    pub fn find(algebra: LieAlgebra, caps: &Caps) -> Result<Option<RestrictedLieAlgebra>> {
        check_p(algebra.field(), caps)?;
        let n = algebra.dim();
        let f = algebra.field().clone();
        let p = f.p() as u64;
        let ads = algebra.ad_basis();
        // column i: ad(b_i) flattened
        let sys = Matrix::from_fn(&f, n * n, n, |e, i| ads[i].data()[e]);
        let mut pmap = Vec::with_capacity(n);
        for a in &ads {
            match sys.solve(a.pow(p).data()) {
                Some(v) => pmap.push(v),
                None => return Ok(None),
            }
        }
        Ok(Some(RestrictedLieAlgebra { algebra, pmap }))
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn pmap(&self) -> &[Vec<Elem>] {
        &self.pmap
    }

    /// `x^[p]` from the basis values by p-semilinearity and Jacobson's formula.
    pub fn pmap_eval(&self, x: &[Elem]) -> Vec<Elem> {
        let f = self.algebra.field();
        let n = self.algebra.dim();
        let p = f.p() as u64;
        let mut acc = vec![Elem::ZERO; n];
        let mut acc_p = vec![Elem::ZERO; n];
        let mut started = false;
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut y = vec![Elem::ZERO; n];
            y[i] = a;
            let ap = f.pow(a, p);
            for (o, &v) in acc_p.iter_mut().zip(&self.pmap[i]) {
                *o = f.add(*o, f.mul(ap, v));
            }
            if started {
                for s in jacobson_terms(&self.algebra, &acc, &y) {
                    for (o, c) in acc_p.iter_mut().zip(s) {
                        *o = f.add(*o, c);
                    }
                }
            }
            acc[i] = a;
            started = true;
        }
        acc_p
    }

    /// Checks `ad(b_i^[p]) = ad(b_i)^p` and the same identity on `samples` random elements.
    pub fn validate(&self, samples: usize, rng: &mut Prng) -> std::result::Result<(), PMapViolation> {
        let f = self.algebra.field();
        let p = f.p() as u64;
        let n = self.algebra.dim();
        for i in 0..n {
            if self.algebra.ad(&self.pmap[i]) != self.algebra.ad(&self.algebra.basis_vector(i)).pow(p) {
                return Err(PMapViolation::Basis(i));
            }
        }
        for _ in 0..samples {
            let x: Vec<Elem> = (0..n).map(|_| f.random(rng)).collect();
            if self.algebra.ad(&self.pmap_eval(&x)) != self.algebra.ad(&x).pow(p) {
                return Err(PMapViolation::Random(x));
            }
        }
        Ok(())
    }

    /// Subtracts the p-semilinear map equal to `[p]` on the RREF basis of `asoc` and zero on
    /// the complementary unit vectors, so the new p-map vanishes on `asoc`.
    pub fn normalize_on(&self, asoc: &Subspace) -> Result<RestrictedLieAlgebra> {
        let f = self.algebra.field().clone();
        let n = self.algebra.dim();
        let p = f.p() as u64;
        let center = self.algebra.center();
        let images: Vec<Vec<Elem>> = asoc.vectors().iter().map(|a| self.pmap_eval(a)).collect();
        if let Some(k) = images.iter().position(|w| !center.contains(w)) {
            return Err(Error::verification(
                "normalize_pmap_on_asoc",
                format!("p-th power of socle basis vector {k} is not central"),
            ));
        }
        let mut rows = asoc.vectors();
        rows.extend(asoc.complement_basis());
        // b_i = sum_k beta_ik rows[k], i.e. beta = B^-T
        let binv = Matrix::from_rows(&f, n, &rows)
            .inverse()
            .expect("socle basis plus complement is a basis");
        let m = asoc.dim();
        let pmap = (0..n)
            .map(|i| {
                let mut v = self.pmap[i].clone();
                for (k, w) in images.iter().enumerate().take(m) {
                    let beta = f.pow(binv.get(i, k), p);
                    if !beta.is_zero() {
                        for (o, &c) in v.iter_mut().zip(w) {
                            *o = f.sub(*o, f.mul(beta, c));
                        }
                    }
                }
                v
            })
            .collect();
        Ok(RestrictedLieAlgebra {
            algebra: self.algebra.clone(),
            pmap,
        })
    }

    pub fn extend_scalars(&self, ext: &Field) -> Result<RestrictedLieAlgebra> {
        let emb = ext.embedding(self.algebra.field())?;
        Ok(RestrictedLieAlgebra {
            algebra: self.algebra.extend_scalars(ext)?,
            pmap: self
                .pmap
                .iter()
                .map(|v| v.iter().map(|&c| emb.embed(c)).collect())
                .collect(),
        })
    }
}

/// A restricted algebra `G` containing `L` as the span of its first `dim L` basis vectors.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub restricted: RestrictedLieAlgebra,
    /// Matrices of the basis of `G` on the faithful module it was built in.
    pub matrices: Vec<Matrix>,
    pub ideal_dim: usize,
}

/// Closure of the image of `L` under brackets and matrix p-th powers, inside `gl(V)` for the
/// faithful module `V` of `U(L)` modulo central p-polynomials.
pub fn p_envelope(algebra: &LieAlgebra, caps: &Caps) -> Result<Envelope> {
    check_p(algebra.field(), caps)?;
    let f = algebra.field().clone();
    let n = algebra.dim();
    let p = f.p() as u64;
    let module = truncated_enveloping_module(algebra, caps)?;
    let m = module.dim();
    let mut ech = Echelon::new(&f, m * m);
    let mut basis: Vec<Matrix> = Vec::new();
    for i in 0..n {
        let g = module.matrix(i).clone();
        if ech.insert(g.data()).is_none() {
            return Err(Error::verification("p_envelope", "truncated enveloping module is not faithful"));
        }
        basis.push(g);
    }
    let mut k = 0;
    while k < basis.len() {
        let mut fresh = vec![basis[k].pow(p)];
        for j in 0..k {
            fresh.push(basis[k].commutator(&basis[j]));
        }
        for cand in fresh {
            if ech.insert(cand.data()).is_some() {
                basis.push(cand);
                if basis.len() > caps.envelope_dim {
                    return Err(Error::cap("p-envelope dimension", basis.len() as u64, caps.envelope_dim as u64));
                }
            }
        }
        k += 1;
    }
    let d = basis.len();
    let flat = Matrix::from_fn(&f, m * m, d, |e, a| basis[a].data()[e]);
    let coords = |x: &Matrix| -> Result<Vec<Elem>> {
        flat.solve(x.data())
            .ok_or_else(|| Error::verification("p_envelope", "closure is not closed"))
    };
    let mut constants = vec![Elem::ZERO; d * d * d];
    for a in 0..d {
        for b in 0..d {
            let c = coords(&basis[a].commutator(&basis[b]))?;
            constants[(a * d + b) * d..(a * d + b + 1) * d].copy_from_slice(&c);
        }
    }
    let g = LieAlgebra::new(&f, d, constants)?;
    let pmap = basis.iter().map(|x| coords(&x.pow(p))).collect::<Result<Vec<_>>>()?;
    let l_span = Subspace::from_vectors(&f, d, &(0..n).map(|i| g.basis_vector(i)).collect::<Vec<_>>());
    if !g.is_ideal(&l_span) {
        return Err(Error::verification("p_envelope", "L is not an ideal of its envelope"));
    }
    Ok(Envelope {
        restricted: RestrictedLieAlgebra { algebra: g, pmap },
        matrices: basis,
        ideal_dim: n,
    })
}
