//! Strata of a cocharacter datum: representatives, lengths, Levi types, and
//! the open/closed ends, for the rank-4 two-block linear case and the
//! rank-2 symplectic case.

use std::collections::BTreeSet;
use zipcensus::{CoxeterDescriptor, ZipDatum};

fn show(datum: &ZipDatum, name: &str) {
    println!("{name}: twist y = {}", datum.twist());
    println!("  partner type J = {:?}", datum.partner_type());
    for s in datum.strata().unwrap() {
        let mut tags = Vec::new();
        if s.is_closed {
            tags.push("closed");
        }
        if s.is_open {
            tags.push("open");
        }
        println!(
            "  w = {:10} length {}  K_w = {:?} {}",
            s.rep.cycle_string(),
            s.length,
            s.levi_type,
            tags.join(",")
        );
    }
}

fn main() {
    let i: BTreeSet<usize> = [1, 3].into_iter().collect();
    let gl = ZipDatum::new(CoxeterDescriptor::type_a(4).unwrap(), i, 2).unwrap();
    show(&gl, "GL_4, blocks (2,2)");

    let i: BTreeSet<usize> = [1].into_iter().collect();
    let sp = ZipDatum::new(CoxeterDescriptor::type_c(2).unwrap(), i, 2).unwrap();
    show(&sp, "Sp_4, Siegel type");

    // the twisted one-block family has one stratum per leading cycle (1...k)
    let i: BTreeSet<usize> = [2].into_iter().collect();
    let gu = ZipDatum::new(CoxeterDescriptor::type_a_twisted(3).unwrap(), i, 2).unwrap();
    show(&gu, "GU_3, blocks (1,2)");
}
