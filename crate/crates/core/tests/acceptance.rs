//! Acceptance criteria. Runs without the libtest harness so that one
//! PASS/FAIL line per criterion is always printed.

mod common;

use std::sync::Arc;
use std::time::Instant;

use irredkit::characters::{
    char_inner, character, character_gram, multiplicities, project_class_function,
    reconstruct_class_function, ClassFunction,
};
use irredkit::cmatrix::{operator_sqrt, polar_decompose, svd};
use irredkit::decompose::{
    discover_irreps, fine_decomposition, isotypic_projectors, matrix_unit_projectors, IrrepSet,
};
use irredkit::l2::{inversion_intertwiner, left_regular, right_regular, unitarize};
use irredkit::random::{random_invertible, random_positive, rng};
use irredkit::tol::DEFAULT_MAX_ORDER;
use irredkit::{ComplexMatrix, FiniteGroup, HermitianForm, Representation, C64};
use rand::Rng;

use common::{s3, s3_two_dim, test_groups, tol};

type Outcome = Result<String, String>;

struct Fixture {
    groups: Vec<(&'static str, Arc<FiniteGroup>, IrrepSet)>,
    discovery_seconds: f64,
}

fn fixture() -> Result<Fixture, String> {
    let start = Instant::now();
    let mut groups = Vec::new();
    for (name, g) in test_groups() {
        let set = discover_irreps(&g, irredkit::tol::DEFAULT_SEED, DEFAULT_MAX_ORDER, &tol())
            .map_err(|e| format!("{name}: {e}"))?;
        groups.push((name, g, set));
    }
    Ok(Fixture {
        groups,
        discovery_seconds: start.elapsed().as_secs_f64(),
    })
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_completeness(fx: &Fixture) -> Outcome {
    let expected: &[(&str, &[usize])] = &[
        ("trivial", &[1]),
        ("Z2", &[1, 1]),
        ("Z3", &[1, 1, 1]),
        ("Z6", &[1; 6]),
        ("Z2xZ3", &[1; 6]),
        ("S3", &[1, 1, 2]),
        ("D4", &[1, 1, 1, 1, 2]),
        ("Q8", &[1, 1, 1, 1, 2]),
        ("S3xZ2", &[1, 1, 1, 1, 2, 2]),
    ];
    for (name, g, set) in &fx.groups {
        let dims = set.dims();
        let squares: usize = dims.iter().map(|n| n * n).sum();
        if dims.len() != g.class_count() || squares != g.order() {
            return Err(format!(
                "{name}: m={} classes={} sum n^2={squares} N={}",
                dims.len(),
                g.class_count(),
                g.order()
            ));
        }
        let want = expected
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| *d)
            .unwrap();
        if dims != want {
            return Err(format!("{name}: dims {dims:?}, expected {want:?}"));
        }
    }
    check(
        fx.discovery_seconds < 5.0,
        format!("9 groups, discovery time {:.3}s", fx.discovery_seconds),
    )
}

fn c2_matrix_element_orthogonality(fx: &Fixture) -> Outcome {
    let mut worst = 0.0f64;
    for (_, g, set) in &fx.groups {
        let n = g.order() as f64;
        for (r, fr) in set.irreps().iter().enumerate() {
            for (s, fs) in set.irreps().iter().enumerate() {
                let (nr, ns) = (fr.dim(), fs.dim());
                for j in 0..nr {
                    for q in 0..nr {
                        for i in 0..ns {
                            for p in 0..ns {
                                let sum: C64 = (0..g.order())
                                    .map(|a| fr.matrix(a)[(j, q)] * fs.matrix(a)[(i, p)].conj())
                                    .sum::<C64>()
                                    / n;
                                let expect = if r == s && i == j && p == q {
                                    1.0 / nr as f64
                                } else {
                                    0.0
                                };
                                worst = worst.max((sum - C64::new(expect, 0.0)).norm());
                            }
                        }
                    }
                }
            }
        }
    }
    check(worst < 1e-8, format!("max deviation {worst:.3e}"))
}

fn c3_character_orthonormality(fx: &Fixture) -> Outcome {
    let mut gram_dev = 0.0f64;
    let mut recon = 0.0f64;
    let mut r = rng(33);
    for (_, g, set) in &fx.groups {
        let gram = character_gram(set.characters()).map_err(|e| e.to_string())?;
        gram_dev = gram_dev.max(gram.max_abs_diff(&ComplexMatrix::identity(set.len())));
        for _ in 0..5 {
            let vals: Vec<C64> = (0..g.class_count())
                .map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
                .collect();
            let phi = ClassFunction::new(g.clone(), vals).map_err(|e| e.to_string())?;
            let coef = project_class_function(&phi, set).map_err(|e| e.to_string())?;
            let back = reconstruct_class_function(&coef, set).map_err(|e| e.to_string())?;
            for (a, b) in back.values().iter().zip(phi.values()) {
                recon = recon.max((a - b).norm());
            }
        }
    }
    check(
        gram_dev < 1e-8 && recon < 1e-8,
        format!("gram deviation {gram_dev:.3e}, reconstruction residual {recon:.3e}"),
    )
}

fn c4_regular_multiplicities(fx: &Fixture) -> Outcome {
    for (name, g, set) in &fx.groups {
        let reg = right_regular(g, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
        let k = multiplicities(&reg, set, &tol()).map_err(|e| format!("{name}: {e}"))?;
        if k != set.dims() {
            return Err(format!("{name}: k={k:?} dims={:?}", set.dims()));
        }
    }
    Ok("k_r = n_r for all 9 groups".into())
}

fn c5_left_right(fx: &Fixture) -> Outcome {
    let mut worst = 0.0f64;
    for (_, g, _) in &fx.groups {
        let a = inversion_intertwiner(g, DEFAULT_MAX_ORDER, &tol()).map_err(|e| e.to_string())?;
        let l = left_regular(g, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
        let r = right_regular(g, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
        for x in 0..g.order() {
            worst = worst.max((&a.matrix * l.matrix(x)).distance(&(r.matrix(x) * &a.matrix)));
        }
    }
    check(
        worst < 1e-10,
        format!("max |A L(g) - R(g) A|_F = {worst:.3e}"),
    )
}

fn c6_unitarization(fx: &Fixture) -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (gi, (_, _, set)) in fx.groups.iter().enumerate() {
        for (ri, f) in set.irreps().iter().enumerate() {
            for t in 0..20u64 {
                let mut r = rng(1000 * gi as u64 + 100 * ri as u64 + t);
                let a = random_invertible(&mut r, f.dim());
                let bent = f.conjugate(&a).map_err(|e| e.to_string())?;
                let (h, _) = unitarize(&bent, &tol()).map_err(|e| e.to_string())?;
                worst = worst.max(h.unitarity_residual());
                count += 1;
            }
        }
    }
    check(
        worst < 1e-9,
        format!("{count} conjugations, max |h*h - I|_F = {worst:.3e}"),
    )
}

fn s3_set(fx: &Fixture) -> &IrrepSet {
    &fx.groups.iter().find(|(n, _, _)| *n == "S3").unwrap().2
}

fn c7_fine_decomposition(fx: &Fixture) -> Outcome {
    let g = s3();
    let set = s3_set(fx);
    let two = s3_two_dim(&g);
    let reps = [
        (
            "regular",
            right_regular(&g, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?,
        ),
        ("2x2", two.tensor(&two).map_err(|e| e.to_string())?),
    ];
    let mut parts = Vec::new();
    for (name, phi) in &reps {
        let d = fine_decomposition(phi, set, &tol()).map_err(|e| format!("{name}: {e}"))?;
        let k = multiplicities(phi, set, &tol()).map_err(|e| e.to_string())?;
        let mut expect = Vec::new();
        for (r, &kr) in k.iter().enumerate() {
            for s in 0..kr {
                expect.push((r, s));
            }
        }
        let layout: Vec<(usize, usize)> = d.blocks.iter().map(|b| (b.irrep, b.copy)).collect();
        if layout != expect {
            return Err(format!("{name}: layout {layout:?}, expected {expect:?}"));
        }
        if d.max_block_residual >= 1e-7 {
            return Err(format!(
                "{name}: block residual {:.3e}",
                d.max_block_residual
            ));
        }
        parts.push(format!(
            "{name} k={k:?} residual {:.3e}",
            d.max_block_residual
        ));
    }
    Ok(parts.join("; "))
}

/// Test representations per group: the right regular representation and a
/// non-unitary conjugate of it; for S3 also the 2-dim square.
fn test_reps(g: &Arc<FiniteGroup>, name: &str) -> Vec<Representation> {
    let reg = right_regular(g, DEFAULT_MAX_ORDER).unwrap();
    let a = random_invertible(&mut rng(g.order() as u64), g.order());
    let mut out = vec![reg.conjugate(&a).unwrap(), reg];
    if name == "S3" {
        let two = s3_two_dim(g);
        out.push(two.tensor(&two).unwrap());
    }
    out
}

fn rel(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.distance(b) / b.frobenius_norm().max(1.0)
}

fn c8_projector_algebra(fx: &Fixture) -> Outcome {
    let mut unity = 0.0f64;
    let mut product = 0.0f64;
    for (name, g, set) in &fx.groups {
        for phi in test_reps(g, name) {
            let d = phi.dim();
            let p = isotypic_projectors(&phi, set).map_err(|e| e.to_string())?;
            let sum = p.iter().fold(ComplexMatrix::zeros(d, d), |acc, x| &acc + x);
            unity = unity.max(rel(&sum, &ComplexMatrix::identity(d)));
            let units: Vec<_> = (0..set.len())
                .map(|r| matrix_unit_projectors(&phi, set, r).unwrap())
                .collect();
            for (r, ur) in units.iter().enumerate() {
                for (s, us) in units.iter().enumerate() {
                    for i in 0..ur.size() {
                        for j in 0..ur.size() {
                            for k in 0..us.size() {
                                for q in 0..us.size() {
                                    let lhs = ur.get(i, j) * us.get(k, q);
                                    let rhs = if r == s && i == q {
                                        ur.get(k, j).clone()
                                    } else {
                                        ComplexMatrix::zeros(d, d)
                                    };
                                    product = product.max(rel(&lhs, &rhs));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    check(
        unity < 1e-8 && product < 1e-8,
        format!("partition of unity {unity:.3e}, product law {product:.3e}"),
    )
}

fn c9_jordan_holder(fx: &Fixture) -> Outcome {
    let mut pairs = 0;
    for (name, g, _) in &fx.groups {
        let reps = test_reps(g, name);
        let mut first: Option<Vec<Vec<usize>>> = None;
        for seed in 1..=5u64 {
            let set = discover_irreps(g, seed, DEFAULT_MAX_ORDER, &tol())
                .map_err(|e| format!("{name}: {e}"))?;
            let ks: Vec<Vec<usize>> = reps
                .iter()
                .map(|phi| fine_decomposition(phi, &set, &tol()).map(|d| d.multiplicities))
                .collect::<Result<_, _>>()
                .map_err(|e| format!("{name} seed {seed}: {e}"))?;
            match &first {
                None => first = Some(ks),
                Some(f) if *f != ks => {
                    return Err(format!(
                        "{name}: seed {seed} gives {ks:?}, seed 1 gives {f:?}"
                    ))
                }
                _ => {}
            }
        }
        pairs += reps.len();
    }
    Ok(format!(
        "{pairs} (group, representation) pairs stable over seeds 1..5"
    ))
}

fn c10_direct_product(fx: &Fixture) -> Outcome {
    let find = |n: &str| &fx.groups.iter().find(|(x, _, _)| *x == n).unwrap().2;
    let (s3, z2, prod) = (find("S3"), find("Z2"), find("S3xZ2"));
    let mut worst = 0.0f64;
    let mut chars = Vec::new();
    for f1 in s3.irreps() {
        for f2 in z2.irreps() {
            let t = Representation::tensor_product_groups(f1, f2, DEFAULT_MAX_ORDER)
                .map_err(|e| e.to_string())?;
            let chi = character(&t, &tol()).map_err(|e| e.to_string())?;
            let norm = char_inner(chi.as_class_function(), chi.as_class_function())
                .map_err(|e| e.to_string())?;
            worst = worst.max((norm - C64::new(1.0, 0.0)).norm());
            chars.push(chi);
        }
    }
    let mut matched = vec![false; prod.len()];
    for chi in &chars {
        let hit = prod
            .characters()
            .iter()
            .enumerate()
            .find(|(r, c)| !matched[*r] && c.approx_eq(chi, 1e-8));
        match hit {
            Some((r, _)) => matched[r] = true,
            None => return Err("a product character is not among the discovered irreps".into()),
        }
    }
    check(
        worst < 1e-8 && matched.iter().all(|&m| m),
        format!("6 products, max |<chi|chi> - 1| = {worst:.3e}, all matched"),
    )
}

fn c11_span(fx: &Fixture) -> Outcome {
    for (name, g, set) in &fx.groups {
        for f in set.irreps() {
            let n = f.dim();
            let m = ComplexMatrix::from_fn(g.order(), n * n, |a, k| f.matrix(a).as_slice()[k]);
            let rank = svd(&m).map_err(|e| e.to_string())?.rank(1e-8);
            if rank != n * n {
                return Err(format!("{name}: irrep of dim {n} spans rank {rank}"));
            }
        }
    }
    Ok("rank n^2 for every irrep".into())
}

fn c12_sqrt_polar() -> Outcome {
    let mut r = rng(12);
    let mut sqrt_worst = 0.0f64;
    let mut polar_worst = 0.0f64;
    for t in 0..50 {
        let n = 1 + t % 16;
        let b = random_positive(&mut r, n);
        let b2 = &b * &b;
        let s = operator_sqrt(&b2).map_err(|e| e.to_string())?;
        sqrt_worst = sqrt_worst.max(rel(&s, &b));

        let gv = HermitianForm::new(random_positive(&mut r, n), 1e-8).map_err(|e| e.to_string())?;
        let gw = HermitianForm::new(random_positive(&mut r, n), 1e-8).map_err(|e| e.to_string())?;
        let a = random_invertible(&mut r, n);
        let (tm, _) = polar_decompose(&a, &gv, &gw).map_err(|e| e.to_string())?;
        let iso = &(&tm.adjoint() * gw.gram()) * &tm;
        polar_worst = polar_worst.max(rel(&iso, gv.gram()));
    }
    check(
        sqrt_worst < 1e-9 && polar_worst < 1e-9,
        format!("sqrt(B^2) vs B {sqrt_worst:.3e}, isometry law {polar_worst:.3e} (relative Frobenius, 50 draws)"),
    )
}

fn main() {
    let fx = match fixture() {
        Ok(f) => f,
        Err(e) => {
            println!("FAIL  fixture: {e}");
            std::process::exit(1);
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1  completeness counts", Box::new(|| c1_completeness(&fx))),
        (
            "2  matrix-element orthogonality",
            Box::new(|| c2_matrix_element_orthogonality(&fx)),
        ),
        (
            "3  character orthonormality and completeness",
            Box::new(|| c3_character_orthonormality(&fx)),
        ),
        (
            "4  regular representation multiplicities",
            Box::new(|| c4_regular_multiplicities(&fx)),
        ),
        (
            "5  left and right regular equivalence",
            Box::new(|| c5_left_right(&fx)),
        ),
        ("6  unitarization", Box::new(|| c6_unitarization(&fx))),
        (
            "7  fine decomposition",
            Box::new(|| c7_fine_decomposition(&fx)),
        ),
        (
            "8  projector algebra",
            Box::new(|| c8_projector_algebra(&fx)),
        ),
        (
            "9  multiplicity stability across seeds",
            Box::new(|| c9_jordan_holder(&fx)),
        ),
        (
            "10 direct-product irreducibility",
            Box::new(|| c10_direct_product(&fx)),
        ),
        (
            "11 span of irreducible operators",
            Box::new(|| c11_span(&fx)),
        ),
        (
            "12 operator square root and polar decomposition",
            Box::new(c12_sqrt_polar),
        ),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
