//! The brute-force oracle at work: enumerate small classical groups from
//! their defining equations, then enumerate twisted-Frobenius fixed points
//! on a stratum and count conjugacy classes.

use std::collections::BTreeSet;
use zipcensus::matrixgrp::{
    conjugacy_class_count, enumerate_group, twisted_fixed_points, GroupKind, MatrixGroupSpec,
    CANDIDATE_BUDGET,
};
use zipcensus::{CoxeterDescriptor, ZipDatum};

fn main() {
    for (kind, size, q, name) in [
        (GroupKind::GeneralLinear, 2, 2, "GL_2(F_2)"),
        (GroupKind::GeneralLinear, 3, 2, "GL_3(F_2)"),
        (GroupKind::Symplectic, 4, 2, "Sp_4(F_2)"),
        (GroupKind::Unitary, 2, 2, "U_2(F_2)"),
        (GroupKind::UnitarySimilitude, 2, 3, "GU_2(F_3)"),
    ] {
        let g = enumerate_group(&MatrixGroupSpec { kind, size, q }, CANDIDATE_BUDGET).unwrap();
        let classes = conjugacy_class_count(&g).unwrap();
        println!("{name}: order {}, {} conjugacy classes", g.order(), classes);
    }

    // twisted fixed points across the Sp_4 strata, against the symbolic orders
    let i: BTreeSet<usize> = [1].into_iter().collect();
    let sp = ZipDatum::new(CoxeterDescriptor::type_c(2).unwrap(), i, 3).unwrap();
    for s in sp.strata().unwrap() {
        let fixed = twisted_fixed_points(&sp, &s, CANDIDATE_BUDGET).unwrap();
        println!(
            "Sp_4 stratum {:10} fixed points over F_{{3^{}}}: {} elements",
            s.rep.cycle_string(),
            fixed.field.degree(),
            fixed.order()
        );
    }
}
