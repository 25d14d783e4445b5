//! Go-diagrams of Gr(2,4): every shape, every filling, and which are Le-diagrams.

use deodhar::godiagram::{enumerate_diagrams, is_le_diagram, labeled, stats};
use deodhar::weyl::{standard_reading_order, word_from_shape};

fn main() {
    let ds = enumerate_diagrams(2, 4);
    println!("{} Go-diagrams in Gr(2,4)\n", ds.len());
    for d in &ds {
        let (t, u) = stats(d);
        let le = if is_le_diagram(d) { "  Le" } else { "" };
        println!("{:<8} pluses {t}  black {u}{le}", d.to_inline());
    }

    let d = ds.iter().find(|d| d.to_inline() == "*+/+o").unwrap();
    let order = standard_reading_order(d.shape());
    println!("\nword of the shape: {}", word_from_shape(d.shape(), &order).unwrap());
    println!("labelled by reading position:\n{}", labeled(d, &order).unwrap());
}
