use std::fmt;

use rand::Rng;

use super::field::{Elem, Field};
use super::poly::Poly;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[inline]
pub(crate) fn axpy(f: &Field, dst: &mut [Elem], c: Elem, src: &[Elem]) {
    if c.is_zero() {
        return;
    }
    if c == Elem::ONE {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = f.add(*d, s);
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = f.add(*d, f.mul(c, s));
            }
        }
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, Elem::ONE)
    }

    pub fn scalar(field: &Field, n: usize, c: Elem) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Convenience constructor from integers reduced into the prime field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rs: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, &rs)
    }

    pub fn random(field: &Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// `Some(c)` when the matrix is `c * I`.
    pub fn scalar_value(&self) -> Option<Elem> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { Elem::ZERO } else { self.get(0, 0) };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { c } else { Elem::ZERO };
                if self.get(i, j) != expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map(&self, target: &Field, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        self.map(f, |e| f.mul(e, c))
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: Elem, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&self.field, &mut self.data, c, &other.data);
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                axpy(f, dst, a, &other.data[k * oc..(k + 1) * oc]);
            }
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    /// `v M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            axpy(&self.field, &mut out, c, self.row(i));
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `ab - ba`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Kronecker product; index `(i, k)` of `self ⊗ other` is `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        Matrix::from_fn(
            f,
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                f.mul(
                    self.get(r / other.rows, c / other.cols),
                    other.get(r % other.rows, c % other.cols),
                )
            },
        )
    }

    /// Stacks the rows of `self` above those of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rref(&self) -> Rref {
        let f = self.field.clone();
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(piv, r);
            let inv = f.inv(m.get(r, c));
            for e in m.row_mut(r)[c..].iter_mut() {
                *e = f.mul(*e, inv);
            }
            let pivot_row: Vec<Elem> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if !factor.is_zero() {
                        let neg = f.neg(factor);
                        axpy(&f, &mut m.row_mut(i)[c..], neg, &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis (as rows) of the right null space `{v : M v = 0}`, in canonical RREF-derived form.
    pub fn kernel(&self) -> Matrix {
        let Rref { matrix: r, pivots } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Elem::ONE);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(row, fc)));
            }
        }
        out
    }

    /// Basis (as rows) of `{v : v M = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel()
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let aug = Matrix::from_fn(f, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                b[i]
            }
        });
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Matrix::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                Elem::ONE
            } else {
                Elem::ZERO
            }
        });
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(f, n, n, |i, j| r.get(i, n + j)))
    }

    pub fn determinant(&self) -> Elem {
        assert!(self.is_square());
        let f = self.field.clone();
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Elem::ZERO;
            };
            if piv != c {
                m.swap_rows(piv, c);
                det = f.neg(det);
            }
            let d = m.get(c, c);
            det = f.mul(det, d);
            let inv = f.inv(d);
            let pivot_row: Vec<Elem> = m.row(c)[c..].to_vec();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if !factor.is_zero() {
                    axpy(&f, &mut m.row_mut(i)[c..], f.neg(factor), &pivot_row);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(tI - M)` via Hessenberg reduction.
    pub fn char_poly(&self) -> Poly {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = f.inv(h.get(m, m - 1));
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), inv);
                if u.is_zero() {
                    continue;
                }
                let row_m: Vec<Elem> = h.row(m).to_vec();
                axpy(&f, h.row_mut(i), f.neg(u), &row_m);
                for r in 0..n {
                    let v = f.add(h.get(r, m), f.mul(u, h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        // 1-indexed recurrence: p_m = (t - h_mm) p_{m-1} - sum_i h_{m-i,m} t_i p_{m-i-1}
        let hh = |a: usize, b: usize| h.get(a - 1, b - 1);
        let mut polys: Vec<Poly> = vec![Poly::one(&f)];
        for m in 1..=n {
            let mut pm = Poly::linear(&f, hh(m, m)).mul(&polys[m - 1]);
            let mut t = Elem::ONE;
            for i in 1..m {
                t = f.mul(t, hh(m - i + 1, m - i));
                let c = f.mul(t, hh(m - i, m));
                if !c.is_zero() {
                    pm = pm.sub(&polys[m - i - 1].scale(c));
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    /// Minimal polynomial: least common multiple of the minimal polynomials of the unit vectors.
    pub fn min_poly(&self) -> Poly {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut acc = Poly::one(f);
        for i in 0..n {
            let mut e = vec![Elem::ZERO; n];
            e[i] = Elem::ONE;
            let m = self.vector_min_poly(&e);
            acc = acc.lcm(&m);
            if acc.degree() == Some(n) {
                break;
            }
        }
        acc
    }

    /// Monic polynomial of least degree annihilating `v` under this matrix.
    pub fn vector_min_poly(&self, v: &[Elem]) -> Poly {
        let f = &self.field;
        let n = self.rows;
        // reduced rows (pivot entry 1) with the polynomial combination of Krylov vectors
        let mut basis: Vec<(Vec<Elem>, usize, Vec<Elem>)> = Vec::new();
        let mut cur = v.to_vec();
        for k in 0..=n {
            let mut w = cur.clone();
            let mut combo = vec![Elem::ZERO; k + 1];
            combo[k] = Elem::ONE;
            for (row, piv, c) in &basis {
                let factor = w[*piv];
                if !factor.is_zero() {
                    let neg = f.neg(factor);
                    axpy(f, &mut w, neg, row);
                    axpy(f, &mut combo[..c.len()], neg, c);
                }
            }
            match w.iter().position(|e| !e.is_zero()) {
                None => return Poly::new(f.clone(), combo).monic(),
                Some(piv) => {
                    let inv = f.inv(w[piv]);
                    for e in w.iter_mut() {
                        *e = f.mul(*e, inv);
                    }
                    for e in combo.iter_mut() {
                        *e = f.mul(*e, inv);
                    }
                    basis.push((w, piv, combo));
                }
            }
            cur = self.mul_vec(&cur);
        }
        unreachable!("Krylov sequence is dependent after n steps")
    }

    /// `g(M)` by Horner's rule.
    pub fn eval_poly(&self, g: &Poly) -> Matrix {
        let f = &self.field;
        let n = self.rows;
        let mut acc = Matrix::zeros(f, n, n);
        for &c in g.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Entries compared in lexicographic element order, row-major.
    pub fn sort_key(&self) -> Vec<u32> {
        self.data.iter().map(|&e| self.field.lex_key(e)).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|&e| {
                    if self.field.is_prime_field() {
                        e.0.to_string()
                    } else {
                        format!("{:?}", self.field.coeffs(e))
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}
