//! Plücker coordinates of a network matrix two ways: as determinants and as
//! signed sums over vertex-disjoint path families.

use deodhar::godiagram::GoDiagram;
use deodhar::network::{build_network, plucker_det, plucker_lgv, weight_matrix};
use deodhar::strata::{k_subsets, network_plucker, schubert_shape};

fn main() {
    let d = GoDiagram::from_text("*+/+o", Some(2), Some(4)).unwrap();
    let net = build_network(&d);
    let w = weight_matrix(&net);
    for j in k_subsets(4, 2) {
        let det = plucker_det(&w, &j).unwrap();
        let lgv = plucker_lgv(&net, &j).unwrap();
        assert_eq!(det, lgv);
        println!("Δ{:?} = {det}", j);
    }
    let p = network_plucker(&d);
    println!("lex-min nonzero coordinate {:?}, Schubert shape {}", p.lex_min(), schubert_shape(&p).unwrap());
}
