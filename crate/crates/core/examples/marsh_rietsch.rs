//! Chip products, the MR-matrix, pseudopaths and the change of variables
//! that turns the network matrix into the row-reduced MR-matrix.

use deodhar::godiagram::GoDiagram;
use deodhar::marshrietsch::{
    apply_psi, chip_word, group_element, mr_matrix, pseudopaths, psi, rescale, rref_division_free, verify_theorem_row,
};
use deodhar::network::{build_network, weight_matrix};

fn main() {
    let d = GoDiagram::from_text("++++/+*+/*+o/+o", Some(4), Some(8)).unwrap();
    let word = chip_word(&d);
    println!("chip word: {word}");

    let g = group_element(&word, 8).unwrap();
    println!("g[8][4] = {}", g.get(7, 3));

    let m = mr_matrix(&d);
    println!("MR-matrix rows {:?}:", m.sources);
    for row in m.matrix.rows_iter() {
        println!("  [{}]", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    }

    let net = build_network(&d);
    for p in pseudopaths(&net, 1, 4) {
        let kinds: String = p.steps.iter().map(|s| format!("{:?}", s.kind)).collect();
        println!("pseudopath 1 -> 4 {kinds}: {}", p.weight);
    }
    println!("rescaled entry (1,4) = {}", rescale(&m).unwrap().entry(1, 4));

    let map = psi(&d);
    for (v, img) in &map {
        println!("Ψ({v}) = {img}");
    }
    let l = rref_division_free(&rescale(&m).unwrap());
    let w = weight_matrix(&net);
    println!("Ψ(W)(1,8) = {}", apply_psi(&map, w.get(0, 7)));
    println!("L(1,8)    = {}", l.get(0, 7));
    println!("row theorem: {}", verify_theorem_row(&d).status);
}
