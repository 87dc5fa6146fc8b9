//! Weyl groups as permutation groups: simple reflections, lengths, longest
//! elements, minimal coset representatives, and the twisted Frobenius.

use std::collections::BTreeSet;
use zipcensus::CoxeterDescriptor;

fn main() {
    let a3 = CoxeterDescriptor::type_a(4).unwrap();
    println!(
        "A_3 (S_4): order {}, longest element {}",
        a3.group_order(),
        a3.longest_element()
    );
    let i: BTreeSet<usize> = [1, 3].into_iter().collect();
    let reps = a3.min_coset_reps(&i).unwrap();
    println!("minimal coset representatives for I={{s1,s3}}:");
    for w in &reps {
        println!("  {:10} length {}", w.cycle_string(), a3.length(w).unwrap());
    }

    let c2 = CoxeterDescriptor::type_c(2).unwrap();
    println!(
        "C_2 (hyperoctahedral, degree {}): order {}, longest element {}",
        c2.domain(),
        c2.group_order(),
        c2.longest_element()
    );
    for i in 1..=c2.rank() {
        println!("  s{} = {}", i, c2.simple_reflection(i).unwrap());
    }

    // the twisted family: Frobenius conjugates by the longest element
    let tw = CoxeterDescriptor::type_a_twisted(4).unwrap();
    for i in 1..=tw.rank() {
        let s = tw.simple_reflection(i).unwrap();
        println!(
            "twisted A_3: phi(s{}) = {} (index {})",
            i,
            tw.frobenius(&s),
            tw.frobenius_simple_index(i)
        );
    }
}
