mod common;

use std::collections::BTreeSet;

use common::{all_vectors, minimal_ideals_exhaustive, subspace_set, sweep_sample, VecSet};
use modlie::ff::{Elem, Matrix};
use modlie::liealg::{enumerate_diagonals, LieAlgebra};
use modlie::rep::minimal_submodules;
use modlie::{prng, Caps};
use proptest::prelude::*;

fn as_sets(spaces: &[modlie::ff::Subspace]) -> BTreeSet<VecSet> {
    spaces.iter().map(subspace_set).collect()
}

#[test]
fn minimal_ideals_match_enumeration() {
    let caps = Caps::default();
    for seed in 0..60 {
        let s = sweep_sample(seed);
        let mut rng = prng(seed);
        let oracle: BTreeSet<VecSet> = minimal_ideals_exhaustive(&s.algebra).into_iter().collect();
        let lib = s.algebra.minimal_ideals(&caps, &mut rng).unwrap();
        assert_eq!(as_sets(&lib), oracle, "{}", s.name);
        let via_homs = minimal_submodules(&s.algebra.adjoint(), &caps, &mut rng).unwrap();
        assert_eq!(via_homs, lib, "{}", s.name);
        for m in &lib {
            assert!(s.algebra.is_ideal(m));
            assert!(s.algebra.is_minimal_ideal(m, &caps, &mut rng).unwrap());
        }
    }
}

#[test]
fn center_matches_enumeration() {
    for seed in 0..40 {
        let s = sweep_sample(seed);
        let a = &s.algebra;
        let n = a.dim();
        let oracle: VecSet = all_vectors(a.field(), n)
            .into_iter()
            .filter(|x| (0..n).all(|i| a.bracket(x, &a.basis_vector(i)).iter().all(|e| e.is_zero())))
            .collect();
        assert_eq!(subspace_set(&a.center()), oracle, "{}", s.name);
    }
}

#[test]
fn iso_classes_and_diagonals() {
    let caps = Caps::default();
    for seed in 0..80 {
        let s = sweep_sample(seed);
        let a = &s.algebra;
        let mut rng = prng(seed);
        let minimal = a.minimal_ideals(&caps, &mut rng).unwrap();
        let classes = a.iso_classes(&minimal).unwrap();
        let asoc = a.abelian_socle(&minimal);
        let total: usize = classes.iter().map(|c| c.isotypic.dim()).sum();
        assert_eq!(total, asoc.dim(), "{}", s.name);
        let oracle = minimal_ideals_exhaustive(a);
        for class in &classes {
            let d = class.rep_dim();
            assert_eq!(class.isotypic.dim(), d * class.multiplicity());
            // phi_i intertwines the action on A_1 with the action on A_i
            for i in 0..class.multiplicity() {
                for _ in 0..5 {
                    let x: Vec<Elem> = (0..a.dim()).map(|_| a.field().random(&mut rng)).collect();
                    let u: Vec<Elem> = (0..d).map(|_| a.field().random(&mut rng)).collect();
                    let lhs = a.bracket(&x, &class.image(i, &u));
                    let rho = class.module.element(a.field(), &x).unwrap();
                    assert_eq!(lhs, class.image(i, &rho.mul_vec(&u)), "{}", s.name);
                }
            }
            let iso: VecSet = subspace_set(&class.isotypic);
            let inside: BTreeSet<VecSet> = oracle.iter().filter(|m| m.is_subset(&iso)).cloned().collect();
            let diags = enumerate_diagonals(a, class, &caps, &mut rng).unwrap();
            let found: BTreeSet<VecSet> = diags.iter().map(|d| subspace_set(&d.ideal)).collect();
            assert_eq!(found.len(), diags.len(), "duplicate ideals in {}", s.name);
            if class.endomorphism_dim == 1 {
                assert_eq!(found, inside, "{}", s.name);
            } else {
                assert!(found.is_subset(&inside), "{}", s.name);
            }
        }
    }
}

#[test]
fn derivations_match_enumeration() {
    for seed in 0..24 {
        let s = sweep_sample(seed);
        let a = &s.algebra;
        let n = a.dim();
        if n > 3 {
            continue;
        }
        let f = a.field();
        let count = all_vectors(f, n * n)
            .into_iter()
            .filter(|entries| {
                let d = Matrix::from_fn(f, n, n, |i, j| entries[i * n + j]);
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        let (x, y) = (a.basis_vector(i), a.basis_vector(j));
                        let lhs = d.mul_vec(&a.bracket(&x, &y));
                        let r1 = a.bracket(&d.mul_vec(&x), &y);
                        let r2 = a.bracket(&x, &d.mul_vec(&y));
                        lhs.iter().zip(r1.iter().zip(&r2)).all(|(&l, (&p, &q))| l == f.add(p, q))
                    })
                })
            })
            .count();
        let der = a.derivations();
        assert_eq!(count, (f.size() as usize).pow(der.len() as u32), "{}", s.name);
        for x in 0..n {
            let ad = a.ad(&a.basis_vector(x));
            let stacked = Matrix::from_rows(f, n * n, &der.iter().map(|m| m.data().to_vec()).collect::<Vec<_>>());
            assert!(stacked.transpose().solve(ad.data()).is_some());
        }
    }
}

#[test]
fn structure_constant_examples() {
    let f2 = common::field(2);
    let f3 = common::field(3);
    assert!(LieAlgebra::heisenberg(&f2).validate().is_ok());
    assert!(LieAlgebra::sl2(&f3).validate().is_ok());
    let mut c = LieAlgebra::sl2(&f3).constants().to_vec();
    // [e, f] = h perturbed to h + e breaks Jacobi
    let n = 3;
    c[2 * n] = Elem::ONE;
    c[2 * n * n] = f3.neg(Elem::ONE);
    assert!(LieAlgebra::new(&f3, 3, c).unwrap().validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ideal_generated_is_least_ideal(seed in 0u64..400, pick in any::<u64>()) {
        let s = sweep_sample(seed);
        let a = &s.algebra;
        let mut rng = prng(pick);
        let x: Vec<Elem> = (0..a.dim()).map(|_| a.field().random(&mut rng)).collect();
        let gen = a.ideal_generated(std::slice::from_ref(&x));
        prop_assert!(a.is_ideal(&gen));
        prop_assert!(gen.contains(&x));
        let oracle = common::closure(a.field(), a.dim(), &a.ad_basis(), &[x]);
        prop_assert_eq!(subspace_set(&gen), oracle);
    }
}
