//! Generalised characters of irreducible restricted modules and character clusters.

use std::cmp::Ordering;

use super::{composition_series, Representation};
use crate::config::{Caps, Prng};
use crate::error::{Error, Result};
use crate::ff::{Elem, Field, Matrix};
use crate::restricted::RestrictedLieAlgebra;

/// A linear map `c: L -> E`, stored by its values on the basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    field: Field,
    values: Vec<Elem>,
}

impl Character {
    pub fn new(field: &Field, values: Vec<Elem>) -> Character {
        Character {
            field: field.clone(),
            values,
        }
    }

    pub fn zero(field: &Field, n: usize) -> Character {
        Character::new(field, vec![Elem::ZERO; n])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `c(x)` for `x` with coordinates in `base`.
    pub fn eval(&self, base: &Field, x: &[Elem]) -> Result<Elem> {
        let emb = self.field.embedding(base)?;
        let f = &self.field;
        Ok(x.iter()
            .zip(&self.values)
            .fold(Elem::ZERO, |acc, (&a, &c)| f.add(acc, f.mul(emb.embed(a), c))))
    }

    /// Componentwise `x -> x^|base|`.
    pub fn conjugate(&self, base: &Field) -> Character {
        let q = base.size() as u64;
        Character::new(
            &self.field,
            self.values.iter().map(|&v| self.field.pow(v, q)).collect(),
        )
    }

    /// Frobenius orbit over `base`, starting with `self`.
    pub fn orbit(&self, base: &Field) -> Vec<Character> {
        let mut out = vec![self.clone()];
        loop {
            let next = out.last().unwrap().conjugate(base);
            if next == out[0] {
                return out;
            }
            out.push(next);
        }
    }

    pub fn embed(&self, ext: &Field) -> Result<Character> {
        let emb = ext.embedding(&self.field)?;
        Ok(Character::new(ext, self.values.iter().map(|&v| emb.embed(v)).collect()))
    }

    /// Equality after embedding both characters into a common field.
    pub fn same_as(&self, other: &Character) -> Result<bool> {
        let common = common_field(&self.field, &other.field)?;
        Ok(self.embed(&common)? == other.embed(&common)?)
    }

    pub fn lex_cmp(&self, other: &Character) -> Ordering {
        let a = self.values.iter().map(|&v| self.field.lex_key(v));
        let b = other.values.iter().map(|&v| other.field.lex_key(v));
        a.cmp(b)
    }

    /// Values as coefficient vectors in the generator of the field.
    pub fn coefficient_vectors(&self) -> Vec<Vec<u32>> {
        self.values.iter().map(|&v| self.field.coeffs(v)).collect()
    }
}

fn common_field(a: &Field, b: &Field) -> Result<Field> {
    if a.p() != b.p() {
        return Err(Error::FieldMismatch(format!("{a} and {b} have different characteristic")));
    }
    let (x, y) = (a.degree(), b.degree());
    let g = gcd(x, y);
    Field::new(a.p(), x / g * y)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Characters of the composition factors of an extension of scalars, over one field.
#[derive(Clone, Debug)]
pub struct Cluster {
    base: Field,
    characters: Vec<Character>,
}

impl Cluster {
    pub fn new(base: &Field, mut characters: Vec<Character>) -> Cluster {
        characters.sort_by(|a, b| a.lex_cmp(b));
        characters.dedup();
        Cluster {
            base: base.clone(),
            characters,
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn field(&self) -> Option<&Field> {
        self.characters.first().map(|c| c.field())
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    /// Closed under conjugation over the base field.
    pub fn is_closed(&self) -> bool {
        self.characters
            .iter()
            .all(|c| self.characters.contains(&c.conjugate(&self.base)))
    }

    /// Partition into Frobenius orbits.
    pub fn orbits(&self) -> Vec<Vec<Character>> {
        let mut left: Vec<Character> = self.characters.clone();
        let mut out = Vec::new();
        while let Some(c) = left.first().cloned() {
            let orbit = c.orbit(&self.base);
            left.retain(|x| !orbit.contains(x));
            out.push(orbit);
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        let orbits = self.orbits();
        orbits.len() == 1 && orbits[0].len() == self.characters.len()
    }

    pub fn contains(&self, c: &Character) -> Result<bool> {
        for x in &self.characters {
            if x.same_as(c)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether every member lies in the Frobenius orbit of `c`.
    pub fn within_orbit_of(&self, c: &Character) -> Result<bool> {
        let orbit = c.orbit(&self.base);
        for x in &self.characters {
            let mut found = false;
            for o in &orbit {
                if x.same_as(o)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The character `c` with `rho(x)^p - rho(x^[p]) = c(x)^p` on an irreducible module.
pub fn character_of_irreducible(
    v: &Representation,
    restricted: &RestrictedLieAlgebra,
    rng: &mut Prng,
) -> Result<Character> {
    let e = v.field().clone();
    let base = restricted.algebra().field().clone();
    let p = base.p() as u64;
    let n = restricted.algebra().dim();
    super::check_same_algebra(v, restricted.algebra())?;
    let central = |x: &[Elem]| -> Result<Matrix> {
        let rx = v.element(&base, x)?;
        Ok(rx.pow(p).sub(&v.element(&base, &restricted.pmap_eval(x))?))
    };
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let m = central(&restricted.algebra().basis_vector(i))?;
        let s = m.scalar_value().ok_or(Error::NonScalarCentral(i))?;
        values.push(e.pth_root(s));
    }
    let c = Character::new(&e, values);
    for _ in 0..20 {
        if n == 0 {
            break;
        }
        let x: Vec<Elem> = (0..n).map(|_| base.random(rng)).collect();
        let expect = e.pow(c.eval(&base, &x)?, p);
        if central(&x)? != Matrix::scalar(&e, v.dim(), expect) {
            return Err(Error::verification(
                "character",
                "central element is not p-semilinear scalar on a random element",
            ));
        }
    }
    Ok(c)
}

/// Characters of all composition factors of `E ⊗ V` for the smallest extension `E` of the module
/// field over which every factor has a scalar central action.
pub fn cluster_of_module(
    v: &Representation,
    restricted: &RestrictedLieAlgebra,
    caps: &Caps,
    rng: &mut Prng,
) -> Result<Cluster> {
    let k = v.field().clone();
    let base = restricted.algebra().field().clone();
    for d in 1..=caps.ext_degree {
        let degree = k.degree() * d;
        let size = (k.p() as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if size > caps.field_size {
            break;
        }
        let e = Field::with_cap(k.p(), degree, caps.field_size)?;
        let ext = v.extend_scalars(&e)?;
        let mut chars = Vec::new();
        let mut split = true;
        for factor in composition_series(&ext, caps, rng)? {
            match character_of_irreducible(&factor, restricted, rng) {
                Ok(c) => chars.push(c),
                Err(Error::NonScalarCentral(_)) => {
                    split = false;
                    break;
                }
                Err(err) => return Err(err),
            }
        }
        if split {
            return Ok(Cluster::new(&base, chars));
        }
    }
    Err(Error::cap(
        "splitting field degree for the character cluster",
        (k.degree() * caps.ext_degree) as u64,
        caps.ext_degree as u64,
    ))
}
