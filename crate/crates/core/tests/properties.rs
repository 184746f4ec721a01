use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use liecohom::cochain::betti_numbers;
use liecohom::enveloping::Enveloping;
use liecohom::io;
use liecohom::linalg::{image_basis, kernel_basis, rank, rat, solve};
use liecohom::random;
use liecohom::{FiniteComplex, GModule, LieAlgebra, Rational, RationalMatrix, Subalgebra, Subspace};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

fn matrix(max: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(Rational::zero()), 2 => small_rational()], c), r)
            .prop_map(move |rows| RationalMatrix::from_rows(rows, c))
    })
}

fn preset() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["abelian:3", "heisenberg3", "sl2", "so3", "gl2", "filiform:4"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let r = rank(&m);
        let kernel = kernel_basis(&m);
        prop_assert_eq!(r + kernel.len(), m.cols());
        prop_assert_eq!(image_basis(&m).len(), r);
        prop_assert_eq!(r, rank(&m.transpose()));
        prop_assert_eq!(m.echelon_dense().rank(), m.echelon_sparse().rank());
        for v in kernel {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(m in matrix(5), seed in any::<u64>()) {
        let x = random::vector(&mut rng(seed), m.cols());
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn subspace_coordinates_round_trip(m in matrix(5), seed in any::<u64>()) {
        let s = Subspace::span(m.cols(), &m.to_dense());
        prop_assert_eq!(s.dim(), rank(&m));
        let v = random::combination(&mut rng(seed), s.basis(), m.cols());
        let c = s.coordinates(&v).expect("inside the span");
        prop_assert_eq!(s.combine(&c), v);
        let total = s.sum(&Subspace::span(m.cols(), &s.complement_basis()));
        prop_assert_eq!(total.dim(), m.cols());
    }

    #[test]
    fn invertible_matrices_invert(n in 1usize..6, seed in any::<u64>()) {
        let p = random::invertible(&mut rng(seed), n);
        let inv = p.inverse().expect("invertible by construction");
        prop_assert_eq!(p.mul(&inv), RationalMatrix::identity(n));
    }

    #[test]
    fn change_of_basis_keeps_jacobi(name in preset(), seed in any::<u64>()) {
        let g = LieAlgebra::preset(name).unwrap();
        let p = random::invertible(&mut rng(seed), g.dim());
        let h = g.change_basis(&p);
        prop_assert!(h.is_ok(), "{:?}", h.err());
        let perm = random::permutation(&mut rng(seed ^ 1), g.dim());
        prop_assert!(g.permute_basis(&perm).is_ok());
    }

    #[test]
    fn random_modules_are_representations(name in preset(), seed in any::<u64>()) {
        let g = Arc::new(LieAlgebra::preset(name).unwrap());
        let m = random::module(&mut rng(seed), &g, 4);
        let again = GModule::new(g.clone(), m.action().to_vec());
        prop_assert!(again.is_ok());
        prop_assert!(m.dim() >= 1 && m.dim() <= 4);
    }

    #[test]
    fn euler_characteristic_is_alternating_betti(name in preset(), seed in any::<u64>()) {
        let g = Arc::new(LieAlgebra::preset(name).unwrap());
        let m = random::module(&mut rng(seed), &g, 3);
        let h = Subalgebra::zero(g.clone());
        let report = betti_numbers(&h, &m, g.dim()).unwrap();
        let chi_betti: i64 = report.betti().iter().enumerate().map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();
        let chi_chains: i64 = report.results.iter().map(|r| if r.degree % 2 == 0 { r.dim_cochains as i64 } else { -(r.dim_cochains as i64) }).sum();
        prop_assert_eq!(chi_betti, chi_chains);
    }

    #[test]
    fn enveloping_product_is_associative(seed in any::<u64>(), which in 0usize..3) {
        let g = [LieAlgebra::heisenberg3(), LieAlgebra::sl2(), LieAlgebra::filiform(4).unwrap()][which].clone();
        let env = Enveloping::new(Arc::new(g), 3);
        let mut r = rng(seed);
        let a = random::element(&mut r, &env, 1, 3);
        let b = random::element(&mut r, &env, 1, 3);
        let c = random::element(&mut r, &env, 1, 3);
        let lhs = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let rhs = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let s = a.multiply(&b).unwrap().antipode();
        prop_assert_eq!(s, b.antipode().multiply(&a.antipode()).unwrap());
    }

    #[test]
    fn commutator_of_generators_is_bracket(i in 0usize..3, j in 0usize..3) {
        let g = Arc::new(LieAlgebra::sl2());
        let env = Enveloping::new(g.clone(), 2);
        let (x, y) = (env.generator(i), env.generator(j));
        let comm = x.multiply(&y).unwrap().sub(&y.multiply(&x).unwrap()).unwrap();
        prop_assert_eq!(comm, env.element_of(&g.basis_bracket(i, j)));
    }

    #[test]
    fn exact_complexes_contract(seed in any::<u64>()) {
        let (spaces, maps) = random::exact_complex(&mut rng(seed), 6, 3);
        let c = FiniteComplex::new(spaces, maps).unwrap();
        prop_assert!(c.homology_dims().iter().all(|&d| d == 0));
        let s = c.build_contracting_homotopy().unwrap();
        prop_assert!(c.verify_homotopy(&s).passed());
    }

    #[test]
    fn json_round_trips(name in preset(), seed in any::<u64>()) {
        let g = Arc::new(LieAlgebra::preset(name).unwrap());
        let back = io::parse_algebra(&io::algebra_json(&g).to_string()).unwrap();
        prop_assert_eq!(&back, g.as_ref());
        let m = random::module(&mut rng(seed), &g, 3);
        let m2 = io::parse_module(&io::module_json(&m).to_string(), g.clone()).unwrap();
        prop_assert_eq!(m2.action(), m.action());
    }
}
