#![allow(dead_code)]

use std::sync::Arc;

use irredkit::catalog;
use irredkit::decompose::{discover_irreps, IrrepSet};
use irredkit::tol::{DEFAULT_MAX_ORDER, DEFAULT_SEED};
use irredkit::{ComplexMatrix, FiniteGroup, Representation, Tolerances};

pub fn tol() -> Tolerances {
    Tolerances::default()
}

/// The groups every acceptance criterion runs on.
pub fn test_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let z2 = catalog::cyclic(2).unwrap();
    let z3 = catalog::cyclic(3).unwrap();
    let s3 = catalog::symmetric(3).unwrap();
    vec![
        ("trivial", Arc::new(catalog::trivial())),
        ("Z2", Arc::new(z2.clone())),
        ("Z3", Arc::new(z3.clone())),
        ("Z6", Arc::new(catalog::cyclic(6).unwrap())),
        (
            "Z2xZ3",
            Arc::new(FiniteGroup::direct_product(&z2, &z3, DEFAULT_MAX_ORDER).unwrap()),
        ),
        ("S3", Arc::new(s3.clone())),
        ("D4", Arc::new(catalog::dihedral(4).unwrap())),
        ("Q8", Arc::new(catalog::quaternion())),
        (
            "S3xZ2",
            Arc::new(FiniteGroup::direct_product(&s3, &z2, DEFAULT_MAX_ORDER).unwrap()),
        ),
    ]
}

pub fn s3() -> Arc<FiniteGroup> {
    Arc::new(catalog::symmetric(3).unwrap())
}

pub fn irreps(g: &Arc<FiniteGroup>) -> IrrepSet {
    discover_irreps(g, DEFAULT_SEED, DEFAULT_MAX_ORDER, &tol()).unwrap()
}

/// Rotation by 2π/3 for the 3-cycle, reflection for the transposition.
pub fn s3_two_dim(g: &Arc<FiniteGroup>) -> Representation {
    let h = 3f64.sqrt() / 2.0;
    let refl = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
    let rot = ComplexMatrix::from_real(2, 2, &[-0.5, -h, h, -0.5]).unwrap();
    Representation::from_generator_images(g.clone(), &[1, 2], vec![refl, rot], &tol()).unwrap()
}
