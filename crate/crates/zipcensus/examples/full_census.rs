//! End-to-end census runs with oracle verification, mirroring what the
//! `census` binary does, but driven through the library API.

use zipcensus::census::{CocharSpec, Family, IrrepCount, OracleVerdict};
use zipcensus::{run_census, CensusConfig, OutputFormat};

fn main() {
    for (family, rank, cochar, q) in [
        (Family::Gl, 4, "2,2", 2),
        (Family::Sp, 2, "2,2", 3),
        (Family::Gu, 3, "1,2", 2),
    ] {
        let cfg = CensusConfig {
            family,
            rank,
            cochar: CocharSpec::parse(cochar).unwrap(),
            q,
            oracle: true,
            format: OutputFormat::Table,
        };
        let report = run_census(&cfg).unwrap();
        print!("{}", report.render(OutputFormat::Table));
        let verified = report
            .rows
            .iter()
            .filter(|r| matches!(r.oracle, OracleVerdict::Match { .. }))
            .count();
        let resolved = report
            .rows
            .iter()
            .filter(|r| matches!(r.irreps, IrrepCount::Known { .. }))
            .count();
        println!(
            "verified {verified}/{} strata, irreps resolved for {resolved}\n",
            report.rows.len()
        );
        assert!(!report.failed());
    }
}
