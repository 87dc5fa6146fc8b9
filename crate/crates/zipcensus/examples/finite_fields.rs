//! Tour of the explicit finite field layer: construction, generators,
//! Frobenius orbits, and the norm map down to the base field.

use std::collections::BTreeSet;
use zipcensus::finfield::Field;

fn main() {
    let f16 = Field::new(2, 4).unwrap();
    println!("F_16 modulus coefficients: {:?}", f16.modulus());
    let g = f16.generator();
    let mut x = f16.one();
    print!("powers of the generator:");
    for _ in 0..5 {
        x = x.mul(&g).unwrap();
        print!(" {:?}", x.coeffs());
    }
    println!();

    // Frobenius orbits of F_9 over F_3
    let f9 = Field::new(3, 2).unwrap();
    for e in f9.enumerate().unwrap() {
        let img = e.frobenius(3, 1).unwrap();
        if img != e {
            println!("F_9: {:?} <-> {:?} under x -> x^3", e.coeffs(), img.coeffs());
        }
    }

    // the norm x -> x^(q+1) from F_{q^2}^x maps onto all of F_q^x
    for q in [2u64, 3, 4, 5] {
        let ext = Field::extension_of(q, 2).unwrap();
        let mut image: BTreeSet<Vec<u64>> = BTreeSet::new();
        for e in ext.enumerate().unwrap() {
            if e.is_zero() {
                continue;
            }
            let norm = e.pow(q + 1);
            assert!(norm.in_subfield(q));
            image.insert(norm.coeffs().to_vec());
        }
        println!(
            "q={q}: the norm image has {} values, F_q^x has {}",
            image.len(),
            q - 1
        );
    }
}
