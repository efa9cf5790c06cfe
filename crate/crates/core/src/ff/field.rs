use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use super::matrix::Matrix;
use super::poly::Poly;
use crate::config::{prng, Caps};
use crate::error::{Error, Result};

/// An element of a finite field, packed as the integer `sum c_i p^i` of its coefficient vector
/// in the power basis of the field generator.
///
/// The derived ordering is the packed ordering; canonical choices use [`Field::lex_key`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

const NO_LOG: u32 = u32::MAX;

struct FieldInner {
    p: u32,
    degree: u32,
    size: u32,
    modulus: Vec<u32>,
    // exp has length 2(q-1) so that log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    // zech[d] = log(1 + g^d), or NO_LOG when 1 + g^d = 0. Only for odd p with degree > 1.
    zech: Vec<u32>,
    embeddings: Mutex<HashMap<u32, Arc<Embedding>>>,
}

/// The finite field `GF(p^n)` with its canonical modulus: the least monic irreducible
/// polynomial of degree `n` over `GF(p)`, coefficient tuples `(c_0, .., c_{n-1})` compared
/// lexicographically.
///
/// Fields are interned: creating the same `(p, n)` twice returns the same tables.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.degree() == other.degree())
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.degree())
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// `GF(p^n)` under the default size cap.
    pub fn new(p: u32, n: u32) -> Result<Field> {
        Field::with_cap(p, n, Caps::default().field_size)
    }

    pub fn with_cap(p: u32, n: u32, cap: u64) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::InvalidInput("field degree must be positive".into()));
        }
        let size = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if size > cap || size > u32::MAX as u64 / 2 {
            return Err(Error::cap("field size", size, cap));
        }
        if let Some(f) = registry().lock().unwrap().get(&(p, n)) {
            return Ok(f.clone());
        }
        let built = Field::build(p, n)?;
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry((p, n)).or_insert(built).clone())
    }

    fn build(p: u32, n: u32) -> Result<Field> {
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            canonical_modulus(p, n)?
        };
        let size = p.pow(n);
        let q1 = size - 1;
        let slow = SlowArith {
            p,
            degree: n as usize,
            modulus: &modulus,
        };
        let generator = if size == 2 {
            1
        } else {
            let factors = prime_factors(q1 as u64);
            (2..size)
                .find(|&g| factors.iter().all(|&l| slow.pow(g, q1 as u64 / l) != 1))
                .expect("multiplicative group of a finite field is cyclic")
        };
        let mut exp = vec![0u32; 2 * q1 as usize];
        let mut log = vec![NO_LOG; size as usize];
        let mut x = 1u32;
        for k in 0..q1 {
            exp[k as usize] = x;
            exp[(k + q1) as usize] = x;
            log[x as usize] = k;
            x = slow.mul(x, generator);
        }
        let zech = if p != 2 && n > 1 {
            (0..q1)
                .map(|d| {
                    let s = slow.add(1, exp[d as usize]);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Field(Arc::new(FieldInner {
            p,
            degree: n,
            size,
            modulus,
            exp,
            log,
            zech,
            embeddings: Mutex::new(HashMap::new()),
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Monic modulus, coefficients low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    pub fn prime_field(&self) -> Field {
        Field::new(self.p(), 1).expect("prime field always fits")
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of `t` modulo the defining polynomial.
    pub fn generator(&self) -> Elem {
        if self.0.degree == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.p)
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Evaluates the integer polynomial `sum c_i t^i` at the field generator.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Elem {
        let g = self.generator();
        coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, g), self.from_int(c)))
    }

    pub fn coeffs(&self, e: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = e.0;
        (0..self.0.degree)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let p = self.0.p;
        Elem(digits.iter().rev().fold(0, |acc, &c| acc * p + c % p))
    }

    /// Sort key ordering elements by coefficient tuple `(c_0, c_1, ..)`, `c_0` most significant.
    pub fn lex_key(&self, e: Elem) -> u32 {
        let p = self.0.p;
        let mut v = e.0;
        let mut key = 0;
        for _ in 0..self.0.degree {
            key = key * p + v % p;
            v /= p;
        }
        key
    }

    pub fn from_lex_key(&self, key: u32) -> Elem {
        let p = self.0.p;
        let mut k = key;
        let mut out = 0;
        for _ in 0..self.0.degree {
            out = out * p + k % p;
            k /= p;
        }
        Elem(out)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.size).map(move |k| self.from_lex_key(k))
    }

    pub fn random(&self, rng: &mut impl Rng) -> Elem {
        Elem(rng.random_range(0..self.0.size))
    }

    pub fn random_nonzero(&self, rng: &mut impl Rng) -> Elem {
        Elem(rng.random_range(1..self.0.size))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if f.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if f.degree == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= f.p { s - f.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let q1 = f.size - 1;
        let la = f.log[a.0 as usize];
        let lb = f.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + q1 - la };
        let z = f.zech[d as usize];
        if z == NO_LOG {
            Elem::ZERO
        } else {
            Elem(f.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let f = &*self.0;
        if f.p == 2 || a.0 == 0 {
            return a;
        }
        if f.degree == 1 {
            return Elem(f.p - a.0);
        }
        let half = (f.size - 1) / 2;
        Elem(f.exp[(f.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let f = &*self.0;
        Elem(f.exp[(f.log[a.0 as usize] + f.log[b.0 as usize]) as usize])
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(a, self.mul(b, c))
    }

    pub fn checked_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let f = &*self.0;
        let l = f.log[a.0 as usize];
        Some(Elem(f.exp[((f.size - 1 - l) % (f.size - 1)) as usize]))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        self.checked_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let f = &*self.0;
        let q1 = (f.size - 1) as u64;
        let l = f.log[a.0 as usize] as u64;
        Elem(f.exp[((l * (e % q1)) % q1) as usize])
    }

    /// `x^p`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow(x, self.0.p as u64)
    }

    /// `x^(p^k)`.
    pub fn frobenius_pow(&self, x: Elem, k: u32) -> Elem {
        let mut y = x;
        for _ in 0..(k % self.0.degree) {
            y = self.frobenius(y);
        }
        y
    }

    /// Unique `y` with `y^p = x`.
    pub fn pth_root(&self, x: Elem) -> Elem {
        self.frobenius_pow(x, self.0.degree - 1)
    }

    /// Whether `sub` is (canonically) a subfield of `self`.
    pub fn has_subfield(&self, sub: &Field) -> bool {
        sub.p() == self.p() && self.degree().is_multiple_of(sub.degree())
    }

    /// Whether `x` lies in the image of the subfield of size `sub.size()`.
    pub fn in_subfield(&self, x: Elem, sub: &Field) -> bool {
        self.pow(x, sub.size() as u64) == x
    }

    pub fn embedding(&self, sub: &Field) -> Result<Arc<Embedding>> {
        if sub.p() != self.p() {
            return Err(Error::FieldMismatch(format!(
                "characteristic of {sub} differs from {self}"
            )));
        }
        if !self.degree().is_multiple_of(sub.degree()) {
            return Err(Error::FieldMismatch(format!("{sub} is not a subfield of {self}")));
        }
        if let Some(e) = self.0.embeddings.lock().unwrap().get(&sub.degree()) {
            return Ok(e.clone());
        }
        let built = Arc::new(Embedding::build(sub.clone(), self.clone()));
        let mut cache = self.0.embeddings.lock().unwrap();
        Ok(cache.entry(sub.degree()).or_insert(built).clone())
    }

    /// Image of `x` (an element of `sub`) under the canonical embedding.
    pub fn embed(&self, x: Elem, sub: &Field) -> Result<Elem> {
        Ok(self.embedding(sub)?.embed(x))
    }
}

/// The canonical embedding of `sub` into `sup`: the generator of `sub` goes to the least root of
/// its modulus in `sup`.
pub struct Embedding {
    sub: Field,
    sup: Field,
    generator_image: Elem,
    basis_images: Vec<Elem>,
    relative_degree: usize,
    // Inverse of the GF(p)-matrix whose column j*d + i is basis_images[i] * gamma^j.
    coord_inverse: Matrix,
}

impl Embedding {
    fn build(sub: Field, sup: Field) -> Embedding {
        let d = sub.degree() as usize;
        let n = sup.degree() as usize;
        let generator_image = if d == 1 {
            Elem::ZERO
        } else if sub == sup {
            sup.generator()
        } else {
            let coeffs = sub.modulus().iter().map(|&c| Elem(c)).collect();
            let f = Poly::new(sup.clone(), coeffs);
            let mut rng = prng(0);
            let root = f.roots(&mut rng)[0];
            // Any root generates the full conjugacy class; take the least.
            (0..d as u32)
                .map(|k| sup.frobenius_pow(root, k))
                .min_by_key(|&r| sup.lex_key(r))
                .unwrap()
        };
        let mut basis_images = Vec::with_capacity(d);
        let mut x = Elem::ONE;
        for _ in 0..d {
            basis_images.push(x);
            x = sup.mul(x, generator_image);
        }
        let relative_degree = n / d;
        let prime = sup.prime_field();
        let mut m = Matrix::zeros(&prime, n, n);
        let gamma = sup.generator();
        let mut gpow = Elem::ONE;
        for j in 0..relative_degree {
            for (i, &b) in basis_images.iter().enumerate() {
                let col = sup.coeffs(sup.mul(b, gpow));
                for (row, &c) in col.iter().enumerate() {
                    m.set(row, j * d + i, Elem(c));
                }
            }
            gpow = sup.mul(gpow, gamma);
        }
        let coord_inverse = m
            .inverse()
            .expect("relative power basis spans the extension");
        Embedding {
            sub,
            sup,
            generator_image,
            basis_images,
            relative_degree,
            coord_inverse,
        }
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn sup(&self) -> &Field {
        &self.sup
    }

    pub fn generator_image(&self) -> Elem {
        self.generator_image
    }

    /// `[sup : sub]`.
    pub fn relative_degree(&self) -> usize {
        self.relative_degree
    }

    pub fn embed(&self, x: Elem) -> Elem {
        let sup = &self.sup;
        self.sub
            .coeffs(x)
            .iter()
            .zip(&self.basis_images)
            .fold(Elem::ZERO, |acc, (&c, &b)| sup.add(acc, sup.mul(Elem(c), b)))
    }

    /// Coordinates `(s_0, .., s_{N-1})` in `sub` with `y = sum s_j gamma^j`, where `gamma` is the
    /// generator of `sup`.
    pub fn coordinates(&self, y: Elem) -> Vec<Elem> {
        let d = self.sub.degree() as usize;
        let prime = self.coord_inverse.field().clone();
        let digits: Vec<Elem> = self.sup.coeffs(y).into_iter().map(Elem).collect();
        let x = self.coord_inverse.mul_vec(&digits);
        debug_assert!(prime.is_prime_field());
        (0..self.relative_degree)
            .map(|j| {
                let ds: Vec<u32> = x[j * d..(j + 1) * d].iter().map(|e| e.0).collect();
                self.sub.from_digits(&ds)
            })
            .collect()
    }

    /// Preimage of `y` if it lies in the embedded subfield.
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        let coords = self.coordinates(y);
        if coords[1..].iter().all(|c| c.is_zero()) {
            Some(coords[0])
        } else {
            None
        }
    }
}

struct SlowArith<'a> {
    p: u32,
    degree: usize,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn digits(&self, mut v: u32) -> Vec<u32> {
        (0..self.degree)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let n = self.degree;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k];
            if c != 0 {
                for (i, &m) in self.modulus[..n].iter().enumerate() {
                    prod[k - n + i] = (prod[k - n + i] + (p - c) * m as u64) % p;
                }
                prod[k] = 0;
            }
        }
        let out: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.pack(&out)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Least monic irreducible polynomial of degree `n >= 2` over `GF(p)` in lexicographic order of
/// `(c_0, .., c_{n-1})`.
fn canonical_modulus(p: u32, n: u32) -> Result<Vec<u32>> {
    let prime = Field::new(p, 1)?;
    let total = p.pow(n);
    // c_0 = 0 means divisibility by t, so start at c_0 = 1.
    for key in p.pow(n - 1)..total {
        let mut coeffs: Vec<u32> = (0..n).map(|i| (key / p.pow(n - 1 - i)) % p).collect();
        coeffs.push(1);
        let poly = Poly::new(prime.clone(), coeffs.iter().map(|&c| Elem(c)).collect());
        if poly.is_irreducible() {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn enumerate_irreducible(p: u32, n: u32) -> Vec<Vec<u32>> {
        // Brute force: a polynomial of degree n is reducible iff it has a factor of degree <= n/2,
        // tested by trial division against every monic polynomial of smaller degree.
        let prime = Field::new(p, 1).unwrap();
        let monic = |deg: u32, key: u32| -> Poly {
            let mut c: Vec<Elem> = (0..deg).map(|i| Elem((key / p.pow(i)) % p)).collect();
            c.push(Elem::ONE);
            Poly::new(prime.clone(), c)
        };
        let mut out = Vec::new();
        for key in 0..p.pow(n) {
            let f = monic(n, key);
            let reducible = (1..=n / 2).any(|d| {
                (0..p.pow(d)).any(|k| f.rem(&monic(d, k)).is_zero())
            });
            if !reducible {
                out.push(f.coeffs().iter().map(|e| e.0).collect());
            }
        }
        out
    }

    #[test]
    fn canonical_moduli_match_enumeration() {
        assert_eq!(Field::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        for (p, n) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let mut all = enumerate_irreducible(p, n);
            all.sort_by_key(|c| c[..n as usize].to_vec());
            assert_eq!(Field::new(p, n).unwrap().modulus(), &all[0][..], "GF({p}^{n})");
        }
        // Lexicographically least over GF(3) in degree 2 is t^2 + 1.
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(
            Field::new(2, 21),
            Err(Error::CapExceeded { .. })
        ));
        assert!(Field::with_cap(3, 3, 26).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f4 = Field::new(2, 2).unwrap();
        let w = f4.generator();
        let w1 = f4.add(w, Elem::ONE);
        assert_eq!(f4.frobenius(w), w1);
        assert_eq!(f4.pth_root(w1), w);
        assert_eq!(f4.frobenius(Elem::ZERO), Elem::ZERO);
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.frobenius(Elem::ONE), Elem::ONE);
        assert_eq!(f2.pth_root(Elem::ONE), Elem::ONE);
        let f9 = Field::new(3, 2).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.frobenius_pow(x, 2), x);
        }
    }

    #[test]
    fn embedding_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        assert_eq!(f4.embed(Elem::ONE, &f2).unwrap(), Elem::ONE);
        assert_eq!(f16.embed(Elem::ZERO, &f4).unwrap(), Elem::ZERO);
        let w = f16.embed(f4.generator(), &f4).unwrap();
        assert_eq!(f16.add(f16.mul(w, w), w), Elem::ONE);
        // least root among all elements of GF(16) satisfying t^2 + t + 1
        let least = f16
            .elements()
            .find(|&x| f16.add(f16.mul(x, x), x) == Elem::ONE)
            .unwrap();
        assert_eq!(w, least);
        assert!(f4.embed(Elem::ONE, &Field::new(2, 3).unwrap()).is_err());
        assert!(f4.embed(Elem::ONE, &Field::new(3, 1).unwrap()).is_err());
    }

    #[test]
    fn relative_coordinates_round_trip() {
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let emb = f16.embedding(&f4).unwrap();
        let gamma = f16.generator();
        for y in f16.elements() {
            let c = emb.coordinates(y);
            assert_eq!(c.len(), 2);
            let back = f16.add(emb.embed(c[0]), f16.mul(emb.embed(c[1]), gamma));
            assert_eq!(back, y);
        }
        for x in f4.elements() {
            assert_eq!(emb.preimage(emb.embed(x)), Some(x));
        }
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop::sample::select(vec![(2, 1), (2, 3), (2, 5), (3, 1), (3, 2), (3, 4), (5, 3), (7, 2)])
            .prop_map(|(p, n)| Field::new(p, n).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let q = f.size();
            let (a, b, c) = (Elem(a % q), Elem(b % q), Elem(c % q));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
            }
            prop_assert_eq!(f.frobenius_pow(a, f.degree()), a);
            prop_assert_eq!(f.pth_root(f.frobenius(a)), a);
            // Frobenius is additive
            prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            prop_assert_eq!(f.from_lex_key(f.lex_key(a)), a);
        }

        #[test]
        fn embedding_is_a_homomorphism(x in any::<u32>(), y in any::<u32>(), edge in 0usize..4) {
            let (p, d, n) = [(2, 2, 4), (2, 1, 3), (3, 2, 4), (2, 3, 6)][edge];
            let sub = Field::new(p, d).unwrap();
            let sup = Field::new(p, n).unwrap();
            let e = sup.embedding(&sub).unwrap();
            let (x, y) = (Elem(x % sub.size()), Elem(y % sub.size()));
            prop_assert_eq!(e.embed(sub.add(x, y)), sup.add(e.embed(x), e.embed(y)));
            prop_assert_eq!(e.embed(sub.mul(x, y)), sup.mul(e.embed(x), e.embed(y)));
            if x != y {
                prop_assert_ne!(e.embed(x), e.embed(y));
            }
        }
    }
}
