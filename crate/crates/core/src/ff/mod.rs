//! Finite field towers and dense exact linear algebra.

mod field;
mod matrix;
mod poly;
mod subspace;

pub use field::{is_prime, Elem, Embedding, Field};
pub use matrix::{Matrix, Rref};
pub use poly::{Factorization, Poly};
pub use subspace::Subspace;
#[allow(unused_imports)]
pub(crate) use subspace::Echelon;

use crate::error::{Error, Result};

/// Minimal polynomial over `sub` of an element `x` of `field`.
///
/// The roots are the conjugates `x, x^|sub|, x^(|sub|^2), ..`; the product of the
/// corresponding linear factors has coefficients in the embedded subfield.
pub fn min_poly_over_subfield(field: &Field, x: Elem, sub: &Field) -> Result<Poly> {
    let emb = field.embedding(sub)?;
    let q = sub.size() as u64;
    let mut roots = vec![x];
    let mut y = field.pow(x, q);
    while y != x {
        roots.push(y);
        y = field.pow(y, q);
    }
    let prod = roots
        .iter()
        .fold(Poly::one(field), |acc, &r| acc.mul(&Poly::linear(field, r)));
    let coeffs = prod
        .coeffs()
        .iter()
        .map(|&c| {
            emb.preimage(c).ok_or_else(|| {
                Error::verification("min_poly_over_subfield", "coefficient outside subfield")
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(sub.clone(), coeffs))
}
