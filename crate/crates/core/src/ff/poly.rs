use std::fmt;

use rand::Rng;

use super::field::{prime_factors, Elem, Field};
use crate::error::{Error, Result};

/// Univariate polynomial over a finite field, coefficients low degree first with trailing
/// zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

/// Monic irreducible factors with multiplicities; `unit` is the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (f, m)| {
                acc.mul(&f.pow(*m as u64))
            })
    }
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field.clone(), Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    /// The indeterminate `t`.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field.clone(), vec![Elem::ZERO, Elem::ONE])
    }

    /// `t - a`.
    pub fn linear(field: &Field, a: Elem) -> Poly {
        Poly::new(field.clone(), vec![field.neg(a), Elem::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f.clone(),
            (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f.clone(),
            (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Poly::new(f.clone(), out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut q = vec![Elem::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = f.sub(r[idx], f.mul(c, di));
            }
        }
        r.truncate(dd);
        (Poly::new(f.clone(), q), Poly::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// Coefficient-wise p-th root of a polynomial in `t^p`.
    fn pth_root_poly(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        Poly::new(
            f.clone(),
            self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect(),
        )
    }

    /// Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let m = self.monic();
        let q = self.field.size() as u64;
        let x = Poly::x(&self.field);
        let frob_iter = |k: usize| {
            let mut h = x.rem(&m);
            for _ in 0..k {
                h = h.powmod(q, &m);
            }
            h
        };
        if !frob_iter(n).sub(&x).rem(&m).is_zero() {
            return false;
        }
        prime_factors(n as u64)
            .into_iter()
            .all(|l| frob_iter(n / l as usize).sub(&x).gcd(&m).is_one())
    }

    fn square_free(&self) -> Vec<(Poly, usize)> {
        let p = self.field.p() as usize;
        let fp = self.derivative();
        if fp.is_zero() {
            return self
                .pth_root_poly()
                .square_free()
                .into_iter()
                .map(|(h, m)| (h, m * p))
                .collect();
        }
        let mut out = Vec::new();
        let mut c = self.gcd(&fp);
        let mut w = self.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac.monic(), i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            out.extend(
                c.monic()
                    .pth_root_poly()
                    .square_free()
                    .into_iter()
                    .map(|(h, m)| (h, m * p)),
            );
        }
        out
    }

    fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let q = self.field.size() as u64;
        let x = Poly::x(&self.field);
        let mut g = self.clone();
        let mut h = x.rem(&g);
        let mut out = Vec::new();
        let mut d = 1;
        while g.degree().unwrap_or(0) >= 2 * d {
            h = h.powmod(q, &g);
            let fac = g.gcd(&h.sub(&x));
            if !fac.is_one() {
                g = g.div_exact(&fac).monic();
                h = h.rem(&g);
                out.push((fac, d));
            }
            d += 1;
        }
        if let Some(dg) = g.degree() {
            if dg > 0 {
                out.push((g, dg));
            }
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut impl Rng, out: &mut Vec<Poly>) {
        let n = self.degree().unwrap();
        if n == d {
            out.push(self.clone());
            return;
        }
        let f = &self.field;
        let q = f.size() as u64;
        loop {
            let a = Poly::new(f.clone(), (0..n).map(|_| f.random(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if f.p() == 2 {
                // trace of a from GF(q^d) down to GF(2)
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..(f.degree() as usize * d) {
                    t = t.mulmod(&t, self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let c = a.powmod((q - 1) / 2, self);
                let mut cur = c.clone();
                let mut acc = c;
                for _ in 1..d {
                    cur = cur.powmod(q, self);
                    acc = acc.mulmod(&cur, self);
                }
                acc.sub(&Poly::one(f))
            };
            let u = self.gcd(&b);
            let du = u.degree().unwrap_or(0);
            if du > 0 && du < n {
                let v = self.div_exact(&u).monic();
                u.equal_degree(d, rng, out);
                v.equal_degree(d, rng, out);
                return;
            }
        }
    }

    /// Factorization into monic irreducibles by square-free, distinct-degree and
    /// equal-degree splitting. Deterministic for a fixed generator state.
    pub fn factor(&self, rng: &mut impl Rng) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = self.lead();
        let mut factors: Vec<(Poly, usize)> = Vec::new();
        if self.degree() == Some(0) {
            return Ok(Factorization { unit, factors });
        }
        for (part, mult) in self.monic().square_free() {
            for (group, d) in part.distinct_degree() {
                let mut irr = Vec::new();
                group.equal_degree(d, rng, &mut irr);
                for g in irr {
                    match factors.iter_mut().find(|(h, _)| *h == g) {
                        Some(entry) => entry.1 += mult,
                        None => factors.push((g, mult)),
                    }
                }
            }
        }
        factors.sort_by_key(|(g, _)| g.sort_key());
        Ok(Factorization { unit, factors })
    }

    /// Distinct roots in the coefficient field, in lexicographic order.
    pub fn roots(&self, rng: &mut impl Rng) -> Vec<Elem> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = &self.field;
        let m = self.monic();
        let x = Poly::x(f);
        let split = m.gcd(&x.powmod(f.size() as u64, &m).sub(&x));
        if split.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut linear = Vec::new();
        split.equal_degree(1, rng, &mut linear);
        let mut roots: Vec<Elem> = linear.iter().map(|l| f.neg(l.coeff(0))).collect();
        roots.sort_by_key(|&r| f.lex_key(r));
        roots
    }

    /// Ordering key: degree first, then coefficient tuple in lexicographic element order.
    pub fn sort_key(&self) -> (usize, Vec<u32>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().map(|&c| self.field.lex_key(c)).collect(),
        )
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = &self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
                if field.is_prime_field() {
                    write!(f, "{}", c.0)
                } else {
                    write!(f, "{:?}", field.coeffs(c))
                }
            };
            match i {
                0 => show(f)?,
                _ => {
                    if c != Elem::ONE {
                        show(f)?;
                        write!(f, "*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
