mod common;

use std::sync::Arc;

use irredkit::characters::{char_inner, character, multiplicities};
use irredkit::cmatrix::{hermitian_eig, operator_sqrt, polar_decompose, svd};
use irredkit::decompose::{
    discover_irreps, fine_decomposition, isotypic_projectors, matrix_unit_projectors,
};
use irredkit::group::ClassPartition;
use irredkit::l2::{
    average_matrix_function, l2_inner, left_regular, right_regular, unitarize, GroupFunction,
};
use irredkit::random::{random_hermitian, random_invertible, random_matrix, random_positive, rng};
use irredkit::tol::DEFAULT_MAX_ORDER;
use irredkit::{
    ComplexMatrix, FiniteGroup, HermitianForm, Permutation, Representation, Subspace, C64,
};
use proptest::prelude::*;
use rand::Rng;

use common::{irreps, s3, s3_two_dim, test_groups, tol};

fn group(i: usize) -> (&'static str, Arc<FiniteGroup>) {
    let mut gs = test_groups();
    let k = i % gs.len();
    gs.swap_remove(k)
}

fn random_function(g: &Arc<FiniteGroup>, seed: u64) -> GroupFunction {
    let mut r = rng(seed);
    let v = (0..g.order())
        .map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        .collect();
    GroupFunction::new(g.clone(), v).unwrap()
}

fn close(a: C64, b: C64, eps: f64) -> bool {
    (a - b).norm() <= eps
}

/// A representation built from a random permutation action of S4 or S3.
fn permutation_rep(degree: usize, seed: u64) -> Representation {
    let mut r = rng(seed);
    let mut perm: Vec<usize> = (0..degree).collect();
    for i in (1..degree).rev() {
        perm.swap(i, r.gen_range(0..=i));
    }
    let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
    let pg = irredkit::group::PermutationGroup::generate(
        &[
            Permutation::new(cycle).unwrap(),
            Permutation::new(perm).unwrap(),
        ],
        DEFAULT_MAX_ORDER,
    )
    .unwrap();
    let g = Arc::new(pg.group.clone());
    let matrices = pg
        .elements
        .iter()
        .map(|p| {
            let mut m = ComplexMatrix::zeros(degree, degree);
            for x in 0..degree {
                m[(p.apply(x), x)] = C64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    Representation::new(g, matrices, &tol()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_groups_are_closed_and_classes_are_conjugation_closed(degree in 2usize..6, seed in any::<u64>()) {
        let f = permutation_rep(degree, seed);
        let g = f.group();
        for a in 0..g.order() {
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        let cls: &ClassPartition = g.classes();
        for x in 0..g.order() {
            for a in 0..g.order() {
                let y = g.mul(g.mul(a, x), g.inv(a));
                prop_assert_eq!(cls.class_of(x), cls.class_of(y));
            }
        }
        let total: usize = cls.sizes().iter().sum();
        prop_assert_eq!(total, g.order());
    }

    #[test]
    fn eig_and_svd_reconstruct(n in 1usize..12, seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, n);
        let es = hermitian_eig(&h).unwrap();
        prop_assert!(es.reconstruct().distance(&h) <= 1e-11 * h.frobenius_norm().max(1.0));
        prop_assert!(es.vectors.unitarity_residual() <= 1e-11);
        let a = random_matrix(&mut r, n, n + 2);
        let s = svd(&a).unwrap();
        let sig = ComplexMatrix::diagonal(&s.singular_values.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>());
        prop_assert!((&(&s.u * &sig) * &s.v.adjoint()).distance(&a) <= 1e-11 * a.frobenius_norm());
    }

    #[test]
    fn sqrt_and_polar(n in 1usize..10, seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = random_positive(&mut r, n);
        let s = operator_sqrt(&(&b * &b)).unwrap();
        prop_assert!(s.distance(&b) <= 1e-9 * b.frobenius_norm());
        let gv = HermitianForm::new(random_positive(&mut r, n), 1e-8).unwrap();
        let gw = HermitianForm::new(random_positive(&mut r, n), 1e-8).unwrap();
        let a = random_invertible(&mut r, n);
        let (t, p) = polar_decompose(&a, &gv, &gw).unwrap();
        prop_assert!((&t * &p).distance(&a) <= 1e-9 * a.frobenius_norm());
        let iso = &(&t.adjoint() * gw.gram()) * &t;
        prop_assert!(iso.distance(gv.gram()) <= 1e-9 * gv.gram().frobenius_norm());
    }

    #[test]
    fn characters_are_class_functions(gi in 0usize..9, seed in any::<u64>()) {
        let (_, g) = group(gi);
        let reg = right_regular(&g, DEFAULT_MAX_ORDER).unwrap();
        let a = random_invertible(&mut rng(seed), g.order());
        let phi = reg.conjugate(&a).unwrap();
        let tr = phi.traces();
        for x in 0..g.order() {
            for y in 0..g.order() {
                let z = g.mul(g.mul(y, x), g.inv(y));
                prop_assert!(close(tr[x], tr[z], 1e-8 * g.order() as f64));
            }
        }
        // equivalent representations have equal characters per element
        for (x, y) in tr.iter().zip(reg.traces()) {
            prop_assert!(close(*x, y, 1e-8 * g.order() as f64));
        }
    }

    #[test]
    fn regular_representations_preserve_l2(gi in 0usize..9, seed in any::<u64>()) {
        let (_, g) = group(gi);
        let u = random_function(&g, seed);
        let v = random_function(&g, seed ^ 0xabcd);
        let base = l2_inner(&u, &v).unwrap();
        for x in 0..g.order() {
            let ur = u.right_shift(x);
            let vr = v.right_shift(x);
            prop_assert!(close(l2_inner(&ur, &vr).unwrap(), base, 1e-12));
            let ul = u.left_shift(x);
            let vl = v.left_shift(x);
            prop_assert!(close(l2_inner(&ul, &vl).unwrap(), base, 1e-12));
            prop_assert!(close(ur.average(), u.average(), 1e-12));
            prop_assert!(close(ul.average(), u.average(), 1e-12));
        }
        prop_assert!(close(u.inverted().average(), u.average(), 1e-12));
        prop_assert!(l2_inner(&u, &u).unwrap().re > 0.0);
        prop_assert!(close(l2_inner(&u, &v).unwrap(), l2_inner(&v, &u).unwrap().conj(), 1e-15));
    }

    #[test]
    fn averaging_commutes_with_trace_and_fixed_maps(gi in 0usize..9, seed in any::<u64>()) {
        let (_, g) = group(gi);
        let mut r = rng(seed);
        let vals: Vec<ComplexMatrix> = (0..g.order()).map(|_| random_matrix(&mut r, 3, 3)).collect();
        let m = average_matrix_function(&g, |x| vals[x].clone()).unwrap().value;
        let tr_avg: C64 = vals.iter().map(ComplexMatrix::trace).sum::<C64>() / g.order() as f64;
        prop_assert!(close(m.trace(), tr_avg, 1e-12));
        let fixed = random_matrix(&mut r, 3, 3);
        let mf = average_matrix_function(&g, |x| &fixed * &vals[x]).unwrap().value;
        prop_assert!(mf.distance(&(&fixed * &m)) <= 1e-12);
        // reindexing by a right shift gives the same average
        let h = r.gen_range(0..g.order());
        let shifted = average_matrix_function(&g, |x| vals[g.mul(x, h)].clone()).unwrap().value;
        prop_assert!(shifted.distance(&m) <= 1e-12);
    }

    #[test]
    fn unitarize_is_idempotent(gi in 0usize..9, seed in any::<u64>()) {
        let (_, g) = group(gi);
        let set = irreps(&g);
        let f = &set.irreps()[set.len() - 1];
        let a = random_invertible(&mut rng(seed), f.dim());
        let (h, _) = unitarize(&f.conjugate(&a).unwrap(), &tol()).unwrap();
        let (h2, s2) = unitarize(&h, &tol()).unwrap();
        prop_assert!(s2.distance(&ComplexMatrix::identity(f.dim())) <= 1e-8);
        for x in 0..g.order() {
            prop_assert!(h2.matrix(x).distance(h.matrix(x)) <= 1e-8);
        }
    }

    #[test]
    fn tensor_with_trivial_scales_multiplicities(gi in 0usize..9, w in 1usize..4) {
        let (_, g) = group(gi);
        let set = irreps(&g);
        let reg = right_regular(&g, DEFAULT_MAX_ORDER).unwrap();
        let k = multiplicities(&reg, &set, &tol()).unwrap();
        let t = reg.tensor(&Representation::trivial(g.clone(), w)).unwrap();
        let kt = multiplicities(&t, &set, &tol()).unwrap();
        prop_assert_eq!(kt, k.iter().map(|x| x * w).collect::<Vec<_>>());
    }

    #[test]
    fn projector_criterion_for_invariance(gi in 0usize..9, seed in any::<u64>()) {
        let (_, g) = group(gi);
        let set = irreps(&g);
        let reg = right_regular(&g, DEFAULT_MAX_ORDER).unwrap();
        let p = isotypic_projectors(&reg, &set).unwrap();
        let r = (seed as usize) % set.len();
        for x in 0..g.order() {
            let f = reg.matrix(x);
            let lhs = &(&(&p[r] * f) - &(f * &p[r])) * &p[r];
            prop_assert!(lhs.frobenius_norm() <= 1e-8 * g.order() as f64);
        }
        // a random line is not invariant unless the group is trivial
        let mut rr = rng(seed);
        let v = random_matrix(&mut rr, g.order(), 1);
        let line = Subspace::span(&v, None, &tol()).unwrap();
        let residual = reg.invariance_residual(&line).1;
        prop_assert_eq!(residual <= 1e-8, g.order() == 1);
    }

    #[test]
    fn schur_character_properties(gi in 0usize..9) {
        let (_, g) = group(gi);
        let set = irreps(&g);
        for (chi, f) in set.characters().iter().zip(set.irreps()) {
            for x in 0..g.order() {
                prop_assert!(close(chi.at(g.inv(x)), chi.at(x).conj(), 1e-10));
            }
            // irreducible: commutant is one-dimensional and a random orbit spans
            prop_assert_eq!(f.commutant_basis(&tol()).unwrap().len(), 1);
            let mut r = rng(5);
            let x: Vec<C64> = (0..f.dim()).map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
            prop_assert_eq!(f.orbit_span_rank(&x, &tol()).unwrap(), f.dim());
        }
        // sum rule Σ n_r χ_r(g) = N [g = e]
        for x in 0..g.order() {
            let s: C64 = set.characters().iter().map(|c| c.at(x) * c.dim() as f64).sum();
            let e = if x == 0 { g.order() as f64 } else { 0.0 };
            prop_assert!(close(s, C64::new(e, 0.0), 1e-9));
        }
    }

    #[test]
    fn reconstruction_and_transport(gi in 0usize..9, seed in any::<u64>()) {
        let (_, g) = group(gi);
        let set = irreps(&g);
        let reg = right_regular(&g, DEFAULT_MAX_ORDER).unwrap();
        let a = random_invertible(&mut rng(seed), g.order());
        let phi = reg.conjugate(&a).unwrap();
        let units: Vec<_> = (0..set.len()).map(|r| matrix_unit_projectors(&phi, &set, r).unwrap()).collect();
        // φ(g) = Σ_{r,i,j} F^j_i(g, r) P^i_j(r)
        for x in 0..g.order() {
            let mut sum = ComplexMatrix::zeros(g.order(), g.order());
            for (r, u) in units.iter().enumerate() {
                let f = set.irreps()[r].matrix(x);
                for i in 0..u.size() {
                    for j in 0..u.size() {
                        sum = &sum + &u.get(i, j).scale(f[(j, i)]);
                    }
                }
            }
            prop_assert!(sum.distance(phi.matrix(x)) <= 1e-8 * phi.matrix(x).frobenius_norm());
        }
        let k = multiplicities(&phi, &set, &tol()).unwrap();
        let p = isotypic_projectors(&phi, &set).unwrap();
        for (r, u) in units.iter().enumerate() {
            // rank P(r) = k_r n_r
            prop_assert_eq!(svd(&p[r]).unwrap().rank(1e-8), k[r] * u.size());
            for i in 0..u.size() {
                for kk in 0..u.size() {
                    // P^i_k is a bijection V_i(r) → V_k(r): rank k_r
                    prop_assert_eq!(svd(u.get(i, kk)).unwrap().rank(1e-8), k[r]);
                    let back = u.get(kk, i) * u.get(i, kk);
                    prop_assert!(back.distance(u.get(i, i)) <= 1e-8 * u.get(i, i).frobenius_norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn multiplicities_stable_across_seeds(gi in 0usize..9, seed in 1u64..1000) {
        let (_, g) = group(gi);
        let base = irreps(&g);
        let other = discover_irreps(&g, seed, DEFAULT_MAX_ORDER, &tol()).unwrap();
        for (a, b) in base.characters().iter().zip(other.characters()) {
            prop_assert!(a.approx_eq(b, 1e-8));
        }
        let reg = right_regular(&g, DEFAULT_MAX_ORDER).unwrap();
        let d1 = fine_decomposition(&reg, &base, &tol()).unwrap();
        let d2 = fine_decomposition(&reg, &other, &tol()).unwrap();
        prop_assert_eq!(&d1.multiplicities, &d2.multiplicities);
        prop_assert_eq!(d1.multiplicities, multiplicities(&reg, &other, &tol()).unwrap());
    }

    #[test]
    fn permutation_representations_decompose(degree in 2usize..5, seed in any::<u64>()) {
        let phi = permutation_rep(degree, seed);
        let g = phi.group().clone();
        let set = discover_irreps(&g, seed, DEFAULT_MAX_ORDER, &tol()).unwrap();
        let d = fine_decomposition(&phi, &set, &tol()).unwrap();
        prop_assert!(d.max_block_residual < 1e-7);
        // the constant vector always carries the trivial representation once
        prop_assert_eq!(d.multiplicities[0], 1);
        let chi = character(&phi, &tol()).unwrap();
        let norm = char_inner(chi.as_class_function(), chi.as_class_function()).unwrap().re;
        let sq: usize = d.multiplicities.iter().map(|k| k * k).sum();
        prop_assert!((norm - sq as f64).abs() < 1e-8);
    }
}

#[test]
fn left_and_right_regular_traces_agree() {
    for (_, g) in test_groups() {
        let r = right_regular(&g, DEFAULT_MAX_ORDER).unwrap();
        let l = left_regular(&g, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(r.traces(), l.traces());
    }
}

#[test]
fn s3_sum_character() {
    let g = s3();
    let set = irreps(&g);
    let f = s3_two_dim(&g);
    let sum = set.irreps()[0]
        .direct_sum(&set.irreps()[1])
        .unwrap()
        .direct_sum(&f)
        .unwrap();
    let chi = character(&sum, &tol()).unwrap();
    let expect: Vec<C64> = (0..3)
        .map(|c| set.characters().iter().map(|x| x.values()[c]).sum())
        .collect();
    for (a, b) in chi.values().iter().zip(&expect) {
        assert!((a - b).norm() < 1e-12);
    }
}
