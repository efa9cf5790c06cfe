mod common;

use common::{field, sweep_sample, unit};
use modlie::ff::{Elem, Matrix, Subspace};
use modlie::liealg::LieAlgebra;
use modlie::restricted::{jacobson_si, p_envelope, RestrictedLieAlgebra};
use modlie::{prng, Caps};
use proptest::prelude::*;

fn restricted(seed: u64) -> RestrictedLieAlgebra {
    let s = sweep_sample(seed);
    RestrictedLieAlgebra::new(s.algebra, s.pmap.unwrap(), &Caps::default()).unwrap()
}

#[test]
fn pmaps_satisfy_the_adjoint_identity() {
    for seed in 0..200 {
        let r = restricted(seed);
        let mut rng = prng(seed);
        assert_eq!(r.validate(100, &mut rng), Ok(()), "seed {seed}");
    }
}

#[test]
fn heisenberg_sum_identity() {
    let f2 = field(2);
    let r = RestrictedLieAlgebra::zero_pmap(LieAlgebra::heisenberg(&f2), &Caps::default()).unwrap();
    let x_plus_y = vec![Elem::ONE, Elem::ONE, Elem::ZERO];
    assert_eq!(r.pmap_eval(&x_plus_y), unit(&f2, 3, 2));
}

#[test]
fn normalization_kills_the_socle() {
    let caps = Caps::default();
    let f2 = field(2);
    // Heisenberg with z^[2] = z
    let mut pmap = vec![vec![Elem::ZERO; 3]; 3];
    pmap[2] = unit(&f2, 3, 2);
    let r = RestrictedLieAlgebra::new(LieAlgebra::heisenberg(&f2), pmap, &caps).unwrap();
    let asoc = Subspace::from_vectors(&f2, 3, &[unit(&f2, 3, 2)]);
    let n = r.normalize_on(&asoc).unwrap();
    assert!(n.pmap_eval(&unit(&f2, 3, 2)).iter().all(|e| e.is_zero()));
    assert_eq!(n.validate(50, &mut prng(0)), Ok(()));
    for seed in 0..120 {
        let r = restricted(seed);
        let a = r.algebra();
        let mut rng = prng(seed);
        let minimal = a.minimal_ideals(&caps, &mut rng).unwrap();
        let asoc = a.abelian_socle(&minimal);
        let n = r.normalize_on(&asoc).unwrap();
        assert_eq!(n.validate(50, &mut rng), Ok(()), "seed {seed}");
        for _ in 0..10 {
            let c: Vec<Elem> = (0..asoc.dim()).map(|_| a.field().random(&mut rng)).collect();
            assert!(n.pmap_eval(&asoc.combine(&c)).iter().all(|e| e.is_zero()), "seed {seed}");
        }
    }
}

fn not_restrictable() -> Vec<LieAlgebra> {
    let f2 = field(2);
    let f3 = field(3);
    // t acting by the companion matrix of t^2 + t + 1
    let mut v = unit(&f2, 3, 1);
    v[2] = Elem::ONE;
    let companion = LieAlgebra::from_brackets(&f2, 3, &[(0, 1, unit(&f2, 3, 2)), (0, 2, v)]);
    // t acting by a Jordan block with eigenvalue 1
    let mut w = unit(&f3, 3, 1);
    w[2] = Elem::ONE;
    let jordan = LieAlgebra::from_brackets(&f3, 3, &[(0, 1, unit(&f3, 3, 1)), (0, 2, w)]);
    vec![companion, jordan, common::filiform(&f2)]
}

#[test]
fn envelopes_contain_the_algebra_as_an_ideal() {
    let caps = Caps::default();
    for a in not_restrictable() {
        assert!(RestrictedLieAlgebra::find(a.clone(), &caps).unwrap().is_none());
        let env = p_envelope(&a, &caps).unwrap();
        let g = env.restricted.algebra();
        let f = a.field();
        let p = f.p() as u64;
        assert_eq!(g.validate(), Ok(()));
        assert_eq!(env.restricted.validate(100, &mut prng(1)), Ok(()));
        assert_eq!(env.ideal_dim, a.dim());
        let l = Subspace::from_vectors(f, g.dim(), &(0..a.dim()).map(|i| g.basis_vector(i)).collect::<Vec<_>>());
        assert!(g.is_ideal(&l));
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(&g.bracket_basis(i, j)[..a.dim()], a.bracket_basis(i, j));
            }
        }
        let combo = |v: &[Elem]| {
            let m = env.matrices[0].rows();
            let mut out = Matrix::zeros(f, m, m);
            for (c, mat) in v.iter().zip(&env.matrices) {
                out.add_scaled(*c, mat);
            }
            out
        };
        for (i, m) in env.matrices.iter().enumerate() {
            assert_eq!(m.pow(p), combo(&env.restricted.pmap()[i]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobson_formula_for_sums(seed in 0u64..400, pick in any::<u64>()) {
        let r = restricted(seed);
        let a = r.algebra();
        let f = a.field();
        let mut rng = prng(pick);
        let x: Vec<Elem> = (0..a.dim()).map(|_| f.random(&mut rng)).collect();
        let y: Vec<Elem> = (0..a.dim()).map(|_| f.random(&mut rng)).collect();
        let sum: Vec<Elem> = x.iter().zip(&y).map(|(&u, &v)| f.add(u, v)).collect();
        let mut expect: Vec<Elem> = r.pmap_eval(&x).iter().zip(r.pmap_eval(&y)).map(|(&u, v)| f.add(u, v)).collect();
        for s in jacobson_si(a, &x, &y, &Caps::default()).unwrap() {
            for (o, c) in expect.iter_mut().zip(s) {
                *o = f.add(*o, c);
            }
        }
        prop_assert_eq!(r.pmap_eval(&sum), expect);
    }

    #[test]
    fn pmap_is_p_semilinear(seed in 0u64..400, pick in any::<u64>()) {
        let r = restricted(seed);
        let f = r.field().clone();
        let mut rng = prng(pick);
        let x: Vec<Elem> = (0..r.algebra().dim()).map(|_| f.random(&mut rng)).collect();
        let c = f.random(&mut rng);
        let cx: Vec<Elem> = x.iter().map(|&e| f.mul(c, e)).collect();
        let cp = f.pow(c, f.p() as u64);
        let expect: Vec<Elem> = r.pmap_eval(&x).iter().map(|&e| f.mul(cp, e)).collect();
        prop_assert_eq!(r.pmap_eval(&cx), expect);
    }
}
