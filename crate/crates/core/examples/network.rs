//! The network of a Go-diagram, its weight matrix, and a numeric point.

use std::collections::BTreeMap;

use deodhar::algebra::{Field, PrimeField, Variable};
use deodhar::godiagram::GoDiagram;
use deodhar::network::{build_network, enumerate_paths, evaluate_network, weight_matrix};

fn main() {
    let d = GoDiagram::from_text("++++/+*+/*+o/+o", Some(4), Some(8)).unwrap();
    let net = build_network(&d);
    println!("sources {:?}, weights {:?}", net.sources, net.variables().iter().map(|v| v.to_string()).collect::<Vec<_>>());

    let w = weight_matrix(&net);
    for (i, row) in w.rows_iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("row {}: [{}]", net.sources[i], cells.join(", "));
    }

    for p in enumerate_paths(&net, 1, 8).unwrap() {
        println!("path 1 -> 8 through edges {:?}: {}", p.edges, p.weight);
    }

    let f = PrimeField::new(11).unwrap();
    let asg: BTreeMap<Variable, _> = net.variables().into_iter().enumerate().map(|(i, v)| (v, f.elem(i as i64 + 1))).collect();
    let a = evaluate_network(&net, &f, &asg).unwrap();
    println!("\nover F_11:");
    for row in a.rows_iter() {
        println!("  {}", row.iter().map(|x| f.format_elem(x)).collect::<Vec<_>>().join("  "));
    }

    println!("\n{}", net.to_dot());
}
