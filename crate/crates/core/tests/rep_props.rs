mod common;

use std::collections::BTreeSet;

use common::{all_vectors, closure, full_size, irreducible_exhaustive, kernel_exhaustive, subspace_set, sweep_sample, VecSet};
use modlie::ff::{Elem, Field, Matrix, Poly};
use modlie::liealg::LieAlgebra;
use modlie::rep::{composition_series, hom_space, irreducibles_isomorphic, is_irreducible, minimal_submodules, Irreducibility, Representation};
use modlie::{prng, Caps, Prng};
use proptest::prelude::*;
use rand::Rng;

/// A module for the abelian algebra of dimension `k`: polynomials in one random matrix.
fn commuting_module(f: &Field, k: usize, dim: usize, rng: &mut Prng) -> Representation {
    let m = Matrix::random(f, dim, dim, rng);
    let mats = (0..k)
        .map(|_| {
            let deg = rng.random_range(0..dim.max(1) + 1);
            let coeffs: Vec<Elem> = (0..=deg).map(|_| f.random(rng)).collect();
            m.eval_poly(&Poly::new(f.clone(), coeffs))
        })
        .collect();
    Representation::new(f, dim, mats)
}

fn small_module(seed: u64) -> (Option<LieAlgebra>, Representation) {
    let mut rng = prng(seed);
    match seed % 3 {
        0 => {
            let f = Field::new([2, 3][(seed / 3 % 2) as usize], 1).unwrap();
            let k = rng.random_range(1..=2);
            let dim = rng.random_range(1..=if f.p() == 2 { 5 } else { 3 });
            (Some(LieAlgebra::abelian(&f, k)), commuting_module(&f, k, dim, &mut rng))
        }
        1 => {
            let s = sweep_sample(seed);
            let ad = s.algebra.adjoint();
            (Some(s.algebra), ad)
        }
        _ => {
            let s = sweep_sample(seed);
            let ad = s.algebra.adjoint();
            let v = if ad.dim() <= 2 { ad.direct_sum(&Representation::trivial(s.algebra.field(), ad.n_gens(), 1)) } else { ad };
            (Some(s.algebra), v)
        }
    }
}

#[test]
fn meataxe_agrees_with_enumeration() {
    let caps = Caps::default();
    for seed in 0..150 {
        let (algebra, v) = small_module(seed);
        if let Some(a) = &algebra {
            assert_eq!(v.validate(a), Ok(()));
        }
        if v.dim() == 0 {
            continue;
        }
        let mut rng = prng(seed + 1000);
        let verdict = is_irreducible(&v, &caps, &mut rng).unwrap();
        assert_eq!(verdict.is_irreducible(), irreducible_exhaustive(&v), "seed {seed}");
        if let Irreducibility::Reducible(s) = verdict {
            assert!(!s.is_zero() && !s.is_full());
            let set = subspace_set(&s);
            assert_eq!(closure(v.field(), v.dim(), v.matrices(), &s.vectors()), set);
        }
    }
}

#[test]
fn minimal_submodules_agree_with_enumeration() {
    let caps = Caps::default();
    for seed in 0..90 {
        let (_, v) = small_module(seed);
        if v.dim() == 0 || full_size(v.field(), v.dim()) > 1 << 10 {
            continue;
        }
        let mut rng = prng(seed);
        let lib: BTreeSet<VecSet> = minimal_submodules(&v, &caps, &mut rng).unwrap().iter().map(subspace_set).collect();
        let oracle: BTreeSet<VecSet> = common::minimal_submodules_exhaustive(&v).into_iter().collect();
        assert_eq!(lib, oracle, "seed {seed}");
    }
}

/// Whether two lists of irreducibles agree up to isomorphism and order.
fn same_factors(a: &[Representation], b: &[Representation]) -> bool {
    let mut left: Vec<&Representation> = b.iter().collect();
    for x in a {
        match left.iter().position(|y| irreducibles_isomorphic(x, y)) {
            Some(i) => {
                left.remove(i);
            }
            None => return false,
        }
    }
    left.is_empty()
}

#[test]
fn jordan_holder() {
    let caps = Caps::default();
    for seed in 0..120 {
        let (_, v) = small_module(seed);
        let a = composition_series(&v, &caps, &mut prng(seed)).unwrap();
        let b = composition_series(&v, &caps, &mut prng(seed ^ 0xdead_beef)).unwrap();
        assert_eq!(a.iter().map(|x| x.dim()).sum::<usize>(), v.dim());
        assert!(same_factors(&a, &b), "seed {seed}");
        for x in &a {
            if full_size(x.field(), x.dim()) <= 1 << 12 {
                assert!(irreducible_exhaustive(x), "seed {seed}");
            }
        }
    }
}

fn hom_count_exhaustive(v: &Representation, w: &Representation) -> usize {
    let f = v.field();
    let (dv, dw) = (v.dim(), w.dim());
    all_vectors(f, dv * dw)
        .into_iter()
        .filter(|e| {
            let t = Matrix::from_fn(f, dw, dv, |i, j| e[i * dv + j]);
            v.matrices().iter().zip(w.matrices()).all(|(a, b)| t.mul(a) == b.mul(&t))
        })
        .count()
}

#[test]
fn hom_spaces_agree_with_enumeration() {
    for seed in 0..80 {
        let mut rng = prng(seed);
        let f = Field::new([2, 3][(seed % 2) as usize], 1).unwrap();
        let cap = if f.p() == 2 { 3 } else { 2 };
        let dv = rng.random_range(1..=cap);
        let dw = rng.random_range(1..=cap);
        // a common module for both: polynomials in one matrix, restricted to blocks
        let v = commuting_module(&f, 2, dv, &mut rng);
        let w = if rng.random_bool(0.5) {
            commuting_module(&f, 2, dw, &mut rng)
        } else {
            v.clone()
        };
        let homs = hom_space(&v, &w);
        for h in &homs {
            for (a, b) in v.matrices().iter().zip(w.matrices()) {
                assert_eq!(h.mul(a), b.mul(h));
            }
        }
        let stacked = Matrix::from_rows(&f, v.dim() * w.dim(), &homs.iter().map(|h| h.data().to_vec()).collect::<Vec<_>>());
        assert_eq!(stacked.rank(), homs.len());
        assert_eq!((f.size() as usize).pow(homs.len() as u32), hom_count_exhaustive(&v, &w), "seed {seed}");
    }
}

#[test]
fn kernels_agree_with_enumeration() {
    for seed in 0..80 {
        let (algebra, v) = small_module(seed);
        let base = algebra.as_ref().unwrap().field();
        let lib = subspace_set(&v.kernel(base).unwrap());
        let oracle: VecSet = kernel_exhaustive(base, &v).into_iter().collect();
        assert_eq!(lib, oracle, "seed {seed}");
    }
}

#[test]
fn tensor_and_scalar_changes() {
    let caps = Caps::default();
    for seed in 0..40 {
        let s = sweep_sample(seed);
        let a = &s.algebra;
        let ad = a.adjoint();
        let t = ad.tensor(&ad);
        assert_eq!(t.dim(), ad.dim() * ad.dim());
        assert_eq!(t.validate(a), Ok(()));
        let f = a.field();
        let e = Field::new(f.p(), 2).unwrap();
        let ext = ad.extend_scalars(&e).unwrap();
        assert_eq!(ext.validate(a), Ok(()));
        let back = ext.restrict_scalars(f).unwrap();
        assert_eq!(back.dim(), 2 * ad.dim());
        assert_eq!(back.validate(a), Ok(()));
        assert_eq!(back.kernel(f).unwrap(), ad.kernel(f).unwrap());
        // restriction of an extension is two copies of the original
        let mut rng = prng(seed);
        let lhs = composition_series(&back, &caps, &mut rng).unwrap();
        let once = composition_series(&ad, &caps, &mut rng).unwrap();
        let twice: Vec<Representation> = once.iter().chain(&once).cloned().collect();
        assert!(same_factors(&lhs, &twice), "{}", s.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn submodule_and_quotient_dims(seed in 0u64..2000) {
        let (_, v) = small_module(seed);
        let mut rng = prng(seed);
        if v.dim() > 0 {
            let w: Vec<Elem> = (0..v.dim()).map(|_| v.field().random(&mut rng)).collect();
            let s = v.spin(&[w]);
            prop_assert!(v.is_submodule(&s));
            let sub = v.submodule(&s);
            let quo = v.quotient(&s);
            prop_assert_eq!(sub.dim() + quo.dim(), v.dim());
            for (i, (m, q)) in sub.matrices().iter().zip(quo.matrices()).enumerate() {
                prop_assert_eq!(m.rows(), s.dim(), "generator {}", i);
                prop_assert_eq!(q.rows(), v.dim() - s.dim());
            }
        }
    }
}
