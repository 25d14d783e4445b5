//! Point counts: the Grassmannian as a sum of tori times affine spaces, and
//! R-polynomials from distinguished subexpressions.

use deodhar::strata::{grassmannian_point_count, grassmannian_point_polynomial, r_polynomial};
use deodhar::weyl::{bruhat_leq, Permutation, ReducedWord};

fn main() {
    for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 6)] {
        let poly = grassmannian_point_polynomial(k, n);
        let at2 = grassmannian_point_count(k, n, 2).unwrap();
        println!("#Gr({k},{n})(F_q) = {poly}   (q = 2: {at2})");
    }

    let word = ReducedWord::new(3, vec![1, 2, 1]).unwrap();
    let w = word.product();
    println!("\nR-polynomials below w = {w}:");
    for v in ["1,2,3", "2,1,3", "1,3,2", "2,3,1", "3,1,2", "3,2,1"] {
        let v: Permutation = v.parse().unwrap();
        if bruhat_leq(&v, &w).unwrap() {
            println!("  R({v}, {w}) = {}", r_polynomial(&v, &word).unwrap());
        }
    }
}
