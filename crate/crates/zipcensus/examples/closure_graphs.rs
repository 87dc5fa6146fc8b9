//! Closure posets as DOT digraphs: the rank-4 linear diamond and the
//! twisted total order, straight from the census runner.

use zipcensus::census::{CocharSpec, Family};
use zipcensus::{run_census, CensusConfig, OutputFormat};

fn main() {
    for (family, rank, cochar) in [
        (Family::Gl, 4, "2,2"),
        (Family::Gu, 3, "1,2"),
        (Family::Sp, 2, "2,2"),
    ] {
        let cfg = CensusConfig {
            family,
            rank,
            cochar: CocharSpec::parse(cochar).unwrap(),
            q: 2,
            oracle: false,
            format: OutputFormat::Dot,
        };
        let report = run_census(&cfg).unwrap();
        println!(
            "// {} rank {} cochar {}: {} strata, {} cover edges",
            family.code(),
            rank,
            cochar,
            report.rows.len(),
            report.closure_edges.len()
        );
        print!("{}", report.render(OutputFormat::Dot));
    }
}
