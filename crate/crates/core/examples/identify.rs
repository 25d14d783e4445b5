//! Locate a random point of Gr(3,6) over F_101: its component, weights,
//! Grassmann necklace and matroid.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use deodhar::algebra::{Field, Matrix, PrimeField, Ring};
use deodhar::strata::{grassmann_necklace, identify, matroid, membership, plucker_vector};

fn main() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut a = Matrix::from_fn(3, 6, |_, _| f.elem(rng.gen_range(0..101)));
    // force a few zero columns so the point is not generic
    for i in 0..3 {
        a.set(i, 1, f.zero());
        a.set(i, 4, f.mul(&f.elem(2), a.get(i, 0)));
    }
    let p = plucker_vector(&f, &a).unwrap();
    let id = identify(&f, &p).unwrap();
    println!("component:\n{}", id.diagram);
    let w: BTreeMap<String, String> = id.weights.iter().map(|(v, x)| (v.to_string(), f.format_elem(x))).collect();
    println!("weights {w:?}");
    assert!(membership(&id.diagram, &p));
    println!("necklace {}", grassmann_necklace(&p));
    println!("{} bases", matroid(&p).unwrap().bases.len());
}
