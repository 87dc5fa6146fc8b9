//! Symbolic stabilizer component groups: descriptors, exact orders, and the
//! signature rule for the twisted family.

use std::collections::BTreeSet;
use zipcensus::stabilizer::{component_group, gu_signature_descriptor};
use zipcensus::{CoxeterDescriptor, ZipDatum};

fn main() {
    let i: BTreeSet<usize> = [1, 3].into_iter().collect();
    let gl = ZipDatum::new(CoxeterDescriptor::type_a(4).unwrap(), i, 2).unwrap();
    println!("GL_4 blocks (2,2):");
    for s in gl.strata().unwrap() {
        let d = component_group(&gl, &s).unwrap();
        println!(
            "  {:10} Pi_w = {:28} |Pi_w(F_2)| = {:5} |Pi_w(F_3)| = {}",
            s.rep.cycle_string(),
            d.to_string(),
            d.order_at(2),
            d.order_at(3)
        );
    }

    let i: BTreeSet<usize> = [1].into_iter().collect();
    let sp = ZipDatum::new(CoxeterDescriptor::type_c(2).unwrap(), i, 3).unwrap();
    println!("Sp_4 Siegel type:");
    for s in sp.strata().unwrap() {
        let d = component_group(&sp, &s).unwrap();
        println!(
            "  {:10} Pi_w = {:28} abelian={} order {}",
            s.rep.cycle_string(),
            d.to_string(),
            d.is_abelian(),
            d.order_at(3)
        );
    }

    // the twisted signature rule: kernel and quotient per stratum index k
    for n in [3usize, 4] {
        println!("GU_{n} blocks (1,{}):", n - 1);
        for k in 1..=n {
            let (d, levi) = gu_signature_descriptor(n, k);
            println!("  k={k}: {:40} Levi {:?} order(q=2) {}", d.to_string(), levi, d.order_at(2));
        }
    }
}
