//! Brute-force oracles over explicit vector sets, and seeded generators of small test algebras.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use modlie::ff::{Elem, Field, Matrix, Subspace};
use modlie::liealg::{enumerate_diagonals, LieAlgebra};
use modlie::pipeline::{analyze, class_functionals_independent, faithful_irreducible, vanishes_on, FaithfulCertificate};
use modlie::rep::Representation;
use modlie::restricted::RestrictedLieAlgebra;
use modlie::{prng, Caps, Prng};
use rand::Rng;

pub type VecSet = BTreeSet<Vec<Elem>>;

pub fn all_vectors(f: &Field, n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                f.elements().map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// One nonzero vector per line: first nonzero entry 1.
pub fn line_representatives(f: &Field, n: usize) -> Vec<Vec<Elem>> {
    all_vectors(f, n)
        .into_iter()
        .filter(|v| v.iter().find(|e| !e.is_zero()) == Some(&Elem::ONE))
        .collect()
}

fn axpy(f: &Field, c: Elem, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    x.iter().zip(y).map(|(&a, &b)| f.add(f.mul(c, a), b)).collect()
}

fn apply(m: &Matrix, v: &[Elem]) -> Vec<Elem> {
    let f = m.field();
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(Elem::ZERO, |acc, j| f.add(acc, f.mul(m.get(i, j), v[j]))))
        .collect()
}

/// All vectors of the smallest set containing `seeds` that is closed under addition, scaling and
/// every matrix in `gens`.
pub fn closure(f: &Field, n: usize, gens: &[Matrix], seeds: &[Vec<Elem>]) -> VecSet {
    let mut set: HashSet<Vec<Elem>> = HashSet::new();
    set.insert(vec![Elem::ZERO; n]);
    let mut queue: Vec<Vec<Elem>> = seeds.to_vec();
    while let Some(w) = queue.pop() {
        if set.contains(&w) {
            continue;
        }
        let old: Vec<Vec<Elem>> = set.iter().cloned().collect();
        for s in &old {
            for c in f.elements().filter(|c| !c.is_zero()) {
                set.insert(axpy(f, c, &w, s));
            }
        }
        for g in gens {
            queue.push(apply(g, &w));
        }
    }
    set.into_iter().collect()
}

pub fn subspace_set(s: &Subspace) -> VecSet {
    closure(s.field(), s.ambient_dim(), &[], &s.vectors())
}

pub fn full_size(f: &Field, n: usize) -> usize {
    (f.size() as usize).pow(n as u32)
}

/// Irreducible iff every nonzero vector generates the whole module.
pub fn irreducible_exhaustive(v: &Representation) -> bool {
    let f = v.field();
    let n = v.dim();
    n > 0
        && line_representatives(f, n)
            .iter()
            .all(|w| closure(f, n, v.matrices(), std::slice::from_ref(w)).len() == full_size(f, n))
}

/// Submodules generated by one vector.
pub fn cyclic_submodules(v: &Representation) -> Vec<VecSet> {
    let f = v.field();
    let n = v.dim();
    let mut seen: BTreeSet<VecSet> = BTreeSet::new();
    for w in line_representatives(f, n) {
        seen.insert(closure(f, n, v.matrices(), &[w]));
    }
    seen.into_iter().collect()
}

/// Minimal nonzero submodules; each is cyclic, so minimality among cyclic ones suffices.
pub fn minimal_submodules_exhaustive(v: &Representation) -> Vec<VecSet> {
    let cyc = cyclic_submodules(v);
    cyc.iter()
        .filter(|c| !cyc.iter().any(|d| d.len() < c.len() && d.is_subset(c)))
        .cloned()
        .collect()
}

/// Composition factor dimensions, sorted, from a maximal chain in the submodule lattice: each
/// step takes the smallest submodule generated by the previous one and one more vector.
pub fn composition_dims_exhaustive(v: &Representation) -> Vec<usize> {
    let f = v.field();
    let n = v.dim();
    let q = f.size() as usize;
    let mut current: VecSet = closure(f, n, &[], &[]);
    let mut dims = Vec::new();
    while current.len() < full_size(f, n) {
        let base: Vec<Vec<Elem>> = current.iter().cloned().collect();
        let next = all_vectors(f, n)
            .into_iter()
            .filter(|w| !current.contains(w))
            .map(|w| {
                let mut seeds = base.clone();
                seeds.push(w);
                closure(f, n, v.matrices(), &seeds)
            })
            .min_by_key(|c| c.len())
            .unwrap();
        let mut d = 0;
        while q.pow(d as u32) * current.len() < next.len() {
            d += 1;
        }
        dims.push(d);
        current = next;
    }
    dims.sort();
    dims
}

/// Elements `x` of `L` with `rho(x) = 0`.
pub fn kernel_exhaustive(base: &Field, v: &Representation) -> Vec<Vec<Elem>> {
    let n = v.n_gens();
    let emb = v.field().embedding(base).unwrap();
    all_vectors(base, n)
        .into_iter()
        .filter(|x| {
            let mut m = Matrix::zeros(v.field(), v.dim(), v.dim());
            for (i, &c) in x.iter().enumerate() {
                m.add_scaled(emb.embed(c), v.matrix(i));
            }
            m.is_zero()
        })
        .collect()
}

/// Ideals of `L` that are minimal, from the adjoint module.
pub fn minimal_ideals_exhaustive(algebra: &LieAlgebra) -> Vec<VecSet> {
    minimal_submodules_exhaustive(&algebra.adjoint())
}

pub fn field(p: u32) -> Field {
    Field::new(p, 1).unwrap()
}

/// A test algebra with an optional p-map.
#[derive(Clone, Debug)]
pub struct Sample {
    pub name: String,
    pub algebra: LieAlgebra,
    pub pmap: Option<Vec<Vec<Elem>>>,
}

fn random_invertible(f: &Field, n: usize, rng: &mut Prng) -> Matrix {
    loop {
        let m = Matrix::random(f, n, n, rng);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// The same restricted algebra in the basis given by the columns of `p`.
pub fn change_basis(r: &RestrictedLieAlgebra, p: &Matrix) -> (LieAlgebra, Vec<Vec<Elem>>) {
    let a = r.algebra();
    let f = a.field();
    let n = a.dim();
    let pinv = p.inverse().expect("invertible");
    let cols: Vec<Vec<Elem>> = (0..n).map(|j| p.col(j)).collect();
    let mut constants = vec![Elem::ZERO; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let b = pinv.mul_vec(&a.bracket(&cols[i], &cols[j]));
            for k in 0..n {
                constants[(i * n + j) * n + k] = b[k];
            }
        }
    }
    let pmap = cols.iter().map(|c| pinv.mul_vec(&r.pmap_eval(c))).collect();
    (LieAlgebra::new(f, n, constants).unwrap(), pmap)
}

fn perturb_central(r: RestrictedLieAlgebra, caps: &Caps, rng: &mut Prng) -> RestrictedLieAlgebra {
    let f = r.field().clone();
    let center = r.algebra().center();
    let pmap = r
        .pmap()
        .iter()
        .map(|v| {
            let coeffs: Vec<Elem> = (0..center.dim()).map(|_| f.random(rng)).collect();
            let z = center.combine(&coeffs);
            v.iter().zip(&z).map(|(&a, &b)| f.add(a, b)).collect()
        })
        .collect();
    RestrictedLieAlgebra::new(r.algebra().clone(), pmap, caps).unwrap()
}

pub fn heisenberg_plus(f: &Field) -> LieAlgebra {
    LieAlgebra::from_brackets(f, 4, &[(0, 1, unit(f, 4, 2))])
}

pub fn filiform(f: &Field) -> LieAlgebra {
    LieAlgebra::from_brackets(f, 4, &[(0, 1, unit(f, 4, 2)), (0, 2, unit(f, 4, 3))])
}

pub fn sl2_plus_center(f: &Field) -> LieAlgebra {
    let s = LieAlgebra::sl2(f);
    let mut brackets = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let mut v = s.bracket_basis(i, j).to_vec();
            v.push(Elem::ZERO);
            brackets.push((i, j, v));
        }
    }
    LieAlgebra::from_brackets(f, 4, &brackets)
}

/// `<t> ⋉ F^m` with `t` acting diagonally by `eigen` and `t^[p] = t`.
pub fn diagonal_extension(f: &Field, eigen: &[Elem]) -> RestrictedLieAlgebra {
    let n = eigen.len() + 1;
    let brackets: Vec<(usize, usize, Vec<Elem>)> = eigen
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let mut v = vec![Elem::ZERO; n];
            v[i + 1] = e;
            (0, i + 1, v)
        })
        .collect();
    let a = LieAlgebra::from_brackets(f, n, &brackets);
    let mut pmap = vec![vec![Elem::ZERO; n]; n];
    pmap[0][0] = Elem::ONE;
    RestrictedLieAlgebra::new(a, pmap, &Caps::default()).unwrap()
}

pub fn unit(_f: &Field, n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n];
    v[i] = Elem::ONE;
    v
}

/// Seeded member of the sweep: abelian, nilpotent, `<t> ⋉ abelian` with repeated eigenvalues,
/// or `sl2 ⊕ center`, with a central perturbation of its p-map and a random change of basis.
pub fn sweep_sample(seed: u64) -> Sample {
    let caps = Caps::default();
    let mut rng = prng(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let p = if (seed / 4).is_multiple_of(2) { 2 } else { 3 };
    let f = field(p);
    let (name, r) = match seed % 4 {
        0 => {
            let n = rng.random_range(1..=if p == 2 { 4 } else { 3 });
            let a = LieAlgebra::abelian(&f, n);
            let r = RestrictedLieAlgebra::zero_pmap(a, &caps).unwrap();
            (format!("abelian{n}"), r)
        }
        1 => {
            let choice = rng.random_range(0..3);
            let (name, a) = match (choice, p) {
                (0, _) => ("heisenberg", LieAlgebra::heisenberg(&f)),
                (1, _) | (2, 2) => ("heisenberg+1", heisenberg_plus(&f)),
                _ => ("filiform4", filiform(&f)),
            };
            (name.to_string(), RestrictedLieAlgebra::find(a, &caps).unwrap().unwrap())
        }
        2 => {
            let m = rng.random_range(1..=3);
            let first = f.random_nonzero(&mut rng);
            let eigen: Vec<Elem> = (0..m)
                .map(|i| if i == 0 || rng.random_bool(0.5) { first } else { f.random(&mut rng) })
                .collect();
            (format!("diag{:?}", eigen.iter().map(|e| e.0).collect::<Vec<_>>()), diagonal_extension(&f, &eigen))
        }
        _ => {
            let a = sl2_plus_center(&f);
            ("sl2+center".to_string(), RestrictedLieAlgebra::find(a, &caps).unwrap().unwrap())
        }
    };
    let r = perturb_central(r, &caps, &mut rng);
    let p_mat = random_invertible(&f, r.algebra().dim(), &mut rng);
    let (algebra, pmap) = change_basis(&r, &p_mat);
    Sample {
        name: format!("{name}/GF({p})/seed{seed}"),
        algebra,
        pmap: Some(pmap),
    }
}

/// `<t1, t2> ⋉ (A ⊕ A)` over GF(2), `t1` acting as the identity and `t2` by the companion matrix
/// of `t^2 + t + 1` on each copy, so `End(A) = GF(4)` and `r = 2 = dim A`.
pub fn quaternary_pair() -> Sample {
    let f = field(2);
    let n = 6;
    let mut brackets = Vec::new();
    for copy in 0..2 {
        let (a0, a1) = (2 + 2 * copy, 3 + 2 * copy);
        brackets.push((0, a0, unit(&f, n, a0)));
        brackets.push((0, a1, unit(&f, n, a1)));
        // C e0 = e1, C e1 = e0 + e1
        brackets.push((1, a0, unit(&f, n, a1)));
        let mut v = unit(&f, n, a0);
        v[a1] = Elem::ONE;
        brackets.push((1, a1, v));
    }
    let algebra = LieAlgebra::from_brackets(&f, n, &brackets);
    let mut pmap = vec![vec![Elem::ZERO; n]; n];
    pmap[0][0] = Elem::ONE;
    pmap[1][0] = Elem::ONE;
    pmap[1][1] = Elem::ONE;
    Sample {
        name: "quaternary-pair/GF(2)".into(),
        algebra,
        pmap: Some(pmap),
    }
}

/// Every check a certificate claims, redone with the exhaustive oracles where they fit.
pub fn check_certificate(s: &Sample, cert: &FaithfulCertificate, rng: &mut Prng) {
    let caps = Caps::default();
    let a = &s.algebra;
    let f = a.field();
    let v = &cert.module;
    assert_eq!(v.validate(a), Ok(()), "{}", s.name);
    assert!(cert.kernel.is_zero() && cert.all_flags(), "{}", s.name);
    assert_eq!(kernel_exhaustive(f, v).len(), 1, "{}", s.name);
    if full_size(v.field(), v.dim()) <= 1 << 12 {
        assert!(irreducible_exhaustive(v), "{}", s.name);
    }
    assert!(cert.log.cluster.is_simple(), "{}", s.name);
    let structure = analyze(a, &caps, rng).unwrap();
    let socle = &cert.log.socle;
    let ext = socle.character.field();
    for (class, g) in structure.classes.iter().zip(&socle.functionals) {
        assert!(class_functionals_independent(class, ext, g).unwrap(), "{}", s.name);
        assert!(class.multiplicity() * class.endomorphism_dim <= socle.degree * class.rep_dim());
        for d in enumerate_diagonals(a, class, &caps, rng).unwrap() {
            assert!(!vanishes_on(&socle.character, f, &d.ideal).unwrap(), "{}", s.name);
            assert!(!v.acts_trivially(f, &d.ideal).unwrap(), "{}", s.name);
        }
    }
}

/// `(L, K, V, W)` with `V` irreducible and `K` nontrivial on it, `W` irreducible and `K` trivial
/// on it, both over `E`.
pub struct TensorInstance {
    pub name: String,
    pub algebra: LieAlgebra,
    pub k: Subspace,
    pub v: Representation,
    pub w: Representation,
}

pub fn tensor_instance(i: u64) -> Option<TensorInstance> {
    let caps = Caps::default();
    let s = sweep_sample(7 * i + 1);
    let a = s.algebra.clone();
    let f = a.field().clone();
    let n = a.dim();
    let mut rng = prng(i);
    let structure = analyze(&a, &caps, &mut rng).unwrap();
    let k = structure.minimal_ideals[i as usize % structure.minimal_ideals.len()].clone();
    let cert = faithful_irreducible(&a, s.pmap.as_deref(), &caps, &mut rng).unwrap();
    let e = Field::new(f.p(), f.degree() * (1 + (i % 2) as u32)).unwrap();
    let v = cert.module.extend_scalars(&e).unwrap();
    // a 1-dim module vanishing on [L, L] + K, with values in E
    let kill = a.derived_subalgebra().sum(&k);
    let free = kill.complement_basis();
    if free.is_empty() {
        return None;
    }
    let emb = e.embedding(&f).unwrap();
    let mut rows = kill.vectors();
    rows.extend(free.iter().cloned());
    let binv = Matrix::from_rows(&f, n, &rows).inverse().unwrap();
    let vals: Vec<Elem> = free.iter().map(|_| e.random(&mut rng)).collect();
    let mats = (0..n)
        .map(|b| {
            // b_b = sum_r binv(b, r) rows[r]; only the free rows carry values
            let x = (0..free.len()).fold(Elem::ZERO, |acc, r| {
                e.add(acc, e.mul(emb.embed(binv.get(b, kill.dim() + r)), vals[r]))
            });
            Matrix::scalar(&e, 1, x)
        })
        .collect();
    let w = Representation::new(&e, 1, mats);
    assert_eq!(w.validate(&a), Ok(()));
    Some(TensorInstance { name: s.name, algebra: a, k, v, w })
}
