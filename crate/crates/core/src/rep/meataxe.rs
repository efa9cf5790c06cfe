//! Norton's irreducibility test and the chop into composition factors.

use std::collections::HashSet;

use rand::Rng;

use super::{hom_space, irreducibles_isomorphic, Representation};
use crate::config::{Caps, Prng};
use crate::error::{Error, Result};
use crate::ff::{Elem, Matrix, Poly, Subspace};
use crate::liealg::projective_points;

/// Evidence for irreducibility: an algebra element `theta` and an irreducible factor `f` of its
/// characteristic polynomial with `dim ker f(theta) = deg f`, such that a kernel vector spins to
/// the whole module and a kernel vector of `f(theta^T)` spins to the whole dual.
#[derive(Clone, Debug)]
pub struct NortonWitness {
    pub element: Matrix,
    pub factor: Poly,
    pub kernel_vector: Vec<Elem>,
    pub iterations: usize,
}

#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible(NortonWitness),
    /// A proper nonzero submodule.
    Reducible(Subspace),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

fn random_element(gens: &[Matrix], dim: usize, rng: &mut Prng) -> Matrix {
    let f = gens.first().map(|g| g.field().clone());
    let Some(f) = f else {
        unreachable!("caller handles the generator-free case");
    };
    let mut theta = Matrix::scalar(&f, dim, f.random(rng));
    for g in gens {
        theta.add_scaled(f.random(rng), g);
    }
    for len in 2..=3 {
        let mut word = gens[rng.random_range(0..gens.len())].clone();
        for _ in 1..len {
            word = word.mul(&gens[rng.random_range(0..gens.len())]);
        }
        theta.add_scaled(f.random(rng), &word);
    }
    theta
}

fn random_combination(rows: &Matrix, rng: &mut Prng) -> Vec<Elem> {
    let f = rows.field();
    loop {
        let coeffs: Vec<Elem> = (0..rows.rows()).map(|_| f.random(rng)).collect();
        let v = rows.vec_mul(&coeffs);
        if v.iter().any(|e| !e.is_zero()) {
            return v;
        }
    }
}

pub fn is_irreducible(v: &Representation, caps: &Caps, rng: &mut Prng) -> Result<Irreducibility> {
    let m = v.dim();
    let f = v.field().clone();
    if m == 0 {
        return Err(Error::InvalidInput("irreducibility of the zero module".into()));
    }
    if m == 1 {
        let element = v.matrices().first().cloned().unwrap_or_else(|| Matrix::zeros(&f, 1, 1));
        let factor = Poly::linear(&f, element.get(0, 0));
        return Ok(Irreducibility::Irreducible(NortonWitness {
            element,
            factor,
            kernel_vector: vec![Elem::ONE],
            iterations: 0,
        }));
    }
    if v.n_gens() == 0 {
        return Ok(Irreducibility::Reducible(Subspace::from_vectors(
            &f,
            m,
            &[unit(m, 0)],
        )));
    }
    let gens = v.matrices();
    let transposes: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    for it in 1..=caps.meataxe_iterations {
        let theta = random_element(gens, m, rng);
        let mut factors: Vec<Poly> = theta
            .char_poly()
            .factor(rng)?
            .factors
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        factors.sort_by_key(|p| p.sort_key());
        for fac in factors {
            let ker = theta.eval_poly(&fac).kernel();
            let vec = random_combination(&ker, rng);
            let s = Subspace::spin(&f, m, gens, std::slice::from_ref(&vec));
            if !s.is_full() {
                return Ok(Irreducibility::Reducible(s));
            }
            let deg = fac.degree().unwrap_or(0);
            if ker.rows() == deg {
                let tker = theta.transpose().eval_poly(&fac).kernel();
                let w = random_combination(&tker, rng);
                let sd = Subspace::spin(&f, m, &transposes, &[w]);
                if !sd.is_full() {
                    // annihilator of an invariant subspace of the dual
                    let ann = Subspace::from_matrix(&sd.basis().kernel());
                    return Ok(Irreducibility::Reducible(ann));
                }
                return Ok(Irreducibility::Irreducible(NortonWitness {
                    element: theta,
                    factor: fac,
                    kernel_vector: vec,
                    iterations: it,
                }));
            }
        }
    }
    Err(Error::MeataxeUndecided(caps.meataxe_iterations))
}

fn unit(m: usize, i: usize) -> Vec<Elem> {
    let mut e = vec![Elem::ZERO; m];
    e[i] = Elem::ONE;
    e
}

/// Composition factors, bottom up: the factors of a proper submodule precede those of the
/// quotient.
pub fn composition_series(v: &Representation, caps: &Caps, rng: &mut Prng) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    if v.dim() > 0 {
        chop(v, caps, rng, &mut out)?;
    }
    Ok(out)
}

fn chop(v: &Representation, caps: &Caps, rng: &mut Prng, out: &mut Vec<Representation>) -> Result<()> {
    match is_irreducible(v, caps, rng)? {
        Irreducibility::Irreducible(_) => out.push(v.clone()),
        Irreducibility::Reducible(s) => {
            chop(&v.submodule(&s), caps, rng, out)?;
            chop(&v.quotient(&s), caps, rng, out)?;
        }
    }
    Ok(())
}

/// Pairwise non-isomorphic representatives of a list of irreducible modules, in first-seen order.
pub fn distinct_irreducibles(factors: &[Representation]) -> Vec<Representation> {
    let mut types: Vec<Representation> = Vec::new();
    for f in factors {
        if !types.iter().any(|t| irreducibles_isomorphic(t, f)) {
            types.push(f.clone());
        }
    }
    types
}

/// All minimal submodules, as images of homomorphisms from the irreducible composition factors,
/// sorted canonically.
pub fn minimal_submodules(v: &Representation, caps: &Caps, rng: &mut Prng) -> Result<Vec<Subspace>> {
    let factors = composition_series(v, caps, rng)?;
    let f = v.field();
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut out = Vec::new();
    for t in distinct_irreducibles(&factors) {
        let homs = hom_space(&t, v);
        if homs.is_empty() {
            continue;
        }
        let count = (f.size() as u64).checked_pow(homs.len() as u32).unwrap_or(u64::MAX);
        if count > caps.enumeration {
            return Err(Error::cap("minimal submodule enumeration", count, caps.enumeration));
        }
        for lambda in projective_points(f, homs.len()) {
            let mut phi = Matrix::zeros(f, v.dim(), t.dim());
            for (h, &l) in homs.iter().zip(&lambda) {
                if !l.is_zero() {
                    phi.add_scaled(l, h);
                }
            }
            let image = Subspace::from_matrix(&phi.transpose());
            if seen.insert(image.basis().data().to_vec()) {
                out.push(image);
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}
