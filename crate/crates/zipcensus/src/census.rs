//! Orchestration and rendering: assemble the classification table for one
//! configuration, optionally verify every stratum against the brute-force
//! matrix oracle, and render the result as an aligned table, stable JSON, or
//! a DOT closure digraph.

use crate::matrixgrp::{
    conjugacy_class_count, twisted_fixed_points, OracleError, CANDIDATE_BUDGET,
};
use crate::stabilizer::{component_group, GroupDescriptor, StabilizerError};
use crate::weyl::{CoxeterDescriptor, CoxeterFamily};
use crate::zipdata::{ZipDatum, ZipError};
use num_bigint::BigUint;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;
/// Conjugacy classes are counted by the oracle only below this group order.
pub const CLASS_COUNT_GATE: u64 = 2500;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("stratum computation failed: {0}")]
    Zip(#[from] ZipError),
    #[error("descriptor computation failed: {0}")]
    Stabilizer(#[from] StabilizerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Gl,
    Sp,
    Gu,
}

impl Family {
    pub fn code(self) -> &'static str {
        match self {
            Family::Gl => "gl",
            Family::Sp => "sp",
            Family::Gu => "gu",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Dot,
}

/// Cocharacter input: either a block signature over the natural
/// representation, or the parabolic type spelled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocharSpec {
    Blocks(Vec<usize>),
    Explicit(BTreeSet<usize>),
}

impl CocharSpec {
    /// Accepts "2,2" (block sizes) or "I=1,3" / "I={s1,s3}" (explicit type).
    pub fn parse(text: &str) -> Result<CocharSpec, CensusError> {
        let bad = || CensusError::InvalidConfig(format!("cannot parse cocharacter spec '{text}'"));
        let t = text.trim();
        if let Some(rest) = t.strip_prefix("I=").or_else(|| t.strip_prefix("i=")) {
            let rest = rest.trim().trim_start_matches('{').trim_end_matches('}');
            let mut set = BTreeSet::new();
            if !rest.trim().is_empty() {
                for part in rest.split(',') {
                    let part = part.trim().trim_start_matches('s');
                    set.insert(part.parse::<usize>().map_err(|_| bad())?);
                }
            }
            return Ok(CocharSpec::Explicit(set));
        }
        let mut blocks = Vec::new();
        for part in t.split(',') {
            let v = part.trim().parse::<usize>().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            blocks.push(v);
        }
        if blocks.is_empty() {
            return Err(bad());
        }
        Ok(CocharSpec::Blocks(blocks))
    }
}

impl fmt::Display for CocharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocharSpec::Blocks(b) => {
                let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
            CocharSpec::Explicit(set) => {
                let parts: Vec<String> = set.iter().map(|i| format!("s{i}")).collect();
                write!(f, "I={{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub family: Family,
    pub rank: usize,
    pub cochar: CocharSpec,
    pub q: u64,
    pub oracle: bool,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Off,
    Match { order: u64 },
    Mismatch { oracle: Option<u64>, detail: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrrepSource {
    /// Abelian group: as many characters as elements.
    AbelianOrder,
    /// Conjugacy classes counted on the enumerated oracle group.
    OracleClasses,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrrepCount {
    Known { count: BigUint, via: IrrepSource },
    Deferred { reason: String },
}

#[derive(Debug, Clone)]
pub struct StratumRow {
    pub w: String,
    pub length: u32,
    pub k_w: BTreeSet<usize>,
    pub descriptor: GroupDescriptor,
    pub order: BigUint,
    pub irreps: IrrepCount,
    pub oracle: OracleVerdict,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub family: Family,
    pub rank: usize,
    pub cochar: CocharSpec,
    pub parabolic: BTreeSet<usize>,
    pub q: u64,
    pub oracle_on: bool,
    pub rows: Vec<StratumRow>,
    /// Cover relations oriented from the more open to the more closed stratum.
    pub closure_edges: Vec<(usize, usize)>,
    /// Total simple-object count; None while any stratum is deferred.
    pub total_irreps: Option<BigUint>,
}

impl CensusReport {
    pub fn mismatches(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r.oracle, OracleVerdict::Mismatch { .. }))
            .count()
    }

    pub fn failed(&self) -> bool {
        self.mismatches() > 0
    }
}

/// Translates a cocharacter spec to the parabolic type: block boundaries
/// knock out the simple reflections that cross them. Symplectic signatures
/// describe the full 2n-dimensional space and must be mirror-symmetric.
pub fn resolve_parabolic(
    family: Family,
    rank: usize,
    cochar: &CocharSpec,
) -> Result<BTreeSet<usize>, CensusError> {
    let s_max = match family {
        Family::Gl | Family::Gu => rank.saturating_sub(1),
        Family::Sp => rank,
    };
    match cochar {
        CocharSpec::Explicit(set) => {
            for &i in set {
                if i == 0 || i > s_max {
                    return Err(CensusError::InvalidConfig(format!(
                        "simple reflection index {i} out of range 1..={s_max}"
                    )));
                }
            }
            Ok(set.clone())
        }
        CocharSpec::Blocks(blocks) => {
            let dim = match family {
                Family::Gl | Family::Gu => rank,
                Family::Sp => 2 * rank,
            };
            let sum: usize = blocks.iter().sum();
            if sum != dim {
                return Err(CensusError::InvalidConfig(format!(
                    "block signature sums to {sum}, expected {dim}"
                )));
            }
            if family == Family::Sp {
                let mut rev = blocks.clone();
                rev.reverse();
                if rev != *blocks {
                    return Err(CensusError::InvalidConfig(
                        "symplectic block signature must be mirror-symmetric".into(),
                    ));
                }
            }
            let mut boundaries = BTreeSet::new();
            let mut acc = 0;
            for &b in &blocks[..blocks.len() - 1] {
                acc += b;
                boundaries.insert(acc);
            }
            let set = match family {
                Family::Gl | Family::Gu => {
                    (1..rank).filter(|x| !boundaries.contains(x)).collect()
                }
                Family::Sp => (1..=rank)
                    .filter(|&x| {
                        !boundaries.contains(&x) && !boundaries.contains(&(2 * rank - x))
                    })
                    .collect(),
            };
            Ok(set)
        }
    }
}

fn family_of(cox: &CoxeterDescriptor) -> Family {
    match cox.family() {
        CoxeterFamily::TypeA => Family::Gl,
        CoxeterFamily::TypeC => Family::Sp,
        CoxeterFamily::TypeATwisted => Family::Gu,
    }
}

pub fn run_census(cfg: &CensusConfig) -> Result<CensusReport, CensusError> {
    let cox = match cfg.family {
        Family::Gl => CoxeterDescriptor::type_a(cfg.rank),
        Family::Sp => CoxeterDescriptor::type_c(cfg.rank),
        Family::Gu => CoxeterDescriptor::type_a_twisted(cfg.rank),
    }
    .map_err(|e| CensusError::InvalidConfig(e.to_string()))?;
    debug_assert_eq!(family_of(&cox), cfg.family);
    let parabolic = resolve_parabolic(cfg.family, cfg.rank, &cfg.cochar)?;
    let datum = ZipDatum::new(cox, parabolic.clone(), cfg.q)
        .map_err(|e| CensusError::InvalidConfig(e.to_string()))?;
    let strata = datum.strata()?;
    let closure = datum.closure_order()?;

    let rows: Vec<StratumRow> = strata
        .par_iter()
        .map(|stratum| -> Result<StratumRow, CensusError> {
            let descriptor = component_group(&datum, stratum)?;
            let order = descriptor.order_at(cfg.q);
            let (oracle, group) = if !cfg.oracle {
                (OracleVerdict::Off, None)
            } else {
                match twisted_fixed_points(&datum, stratum, CANDIDATE_BUDGET) {
                    Ok(g) => {
                        let got = g.order();
                        if BigUint::from(got) == order {
                            (OracleVerdict::Match { order: got }, Some(g))
                        } else {
                            let detail = format!(
                                "oracle enumerated {got} elements, symbolic order is {order}"
                            );
                            (OracleVerdict::Mismatch { oracle: Some(got), detail }, None)
                        }
                    }
                    Err(
                        e @ (OracleError::BudgetExceeded { .. }
                        | OracleError::FieldTooLarge { .. }
                        | OracleError::Unsupported(_)),
                    ) => (OracleVerdict::Skipped { reason: e.to_string() }, None),
                    Err(e) => {
                        (OracleVerdict::Mismatch { oracle: None, detail: e.to_string() }, None)
                    }
                }
            };
            let irreps = if descriptor.is_abelian() {
                IrrepCount::Known { count: order.clone(), via: IrrepSource::AbelianOrder }
            } else if let Some(g) = &group {
                if g.order() <= CLASS_COUNT_GATE {
                    match conjugacy_class_count(g) {
                        Ok(c) => IrrepCount::Known {
                            count: BigUint::from(c),
                            via: IrrepSource::OracleClasses,
                        },
                        Err(e) => IrrepCount::Deferred { reason: e.to_string() },
                    }
                } else {
                    IrrepCount::Deferred {
                        reason: format!("order {} above the class-count gate", g.order()),
                    }
                }
            } else {
                IrrepCount::Deferred {
                    reason: if cfg.oracle {
                        "oracle result unavailable".into()
                    } else {
                        "nonabelian; run with the oracle to count classes".into()
                    },
                }
            };
            Ok(StratumRow {
                w: stratum.rep.cycle_string(),
                length: stratum.length,
                k_w: stratum.levi_type.clone(),
                descriptor,
                order,
                irreps,
                oracle,
            })
        })
        .collect::<Result<_, _>>()?;

    let total_irreps = rows
        .iter()
        .map(|r| match &r.irreps {
            IrrepCount::Known { count, .. } => Some(count.clone()),
            IrrepCount::Deferred { .. } => None,
        })
        .sum::<Option<BigUint>>();

    Ok(CensusReport {
        family: cfg.family,
        rank: cfg.rank,
        cochar: cfg.cochar.clone(),
        parabolic,
        q: cfg.q,
        oracle_on: cfg.oracle,
        rows,
        closure_edges: closure.cover_edges,
        total_irreps,
    })
}

// ---- rendering ----

fn big_to_json(v: &BigUint) -> serde_json::Value {
    match u64::try_from(v) {
        Ok(n) => serde_json::json!(n),
        Err(_) => serde_json::json!(v.to_string()),
    }
}

fn set_display(set: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = set.iter().map(|i| format!("s{i}")).collect();
    format!("{{{}}}", parts.join(","))
}

impl CensusReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.render_table(),
            OutputFormat::Json => self.render_json(),
            OutputFormat::Dot => self.render_dot(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "family={} rank={} q={} cochar={} parabolic={} oracle={}\n",
            self.family.code(),
            self.rank,
            self.q,
            self.cochar,
            set_display(&self.parabolic),
            if self.oracle_on { "on" } else { "off" },
        ));
        let totals = match &self.total_irreps {
            Some(t) => format!("total irreps {t}"),
            None => "total irreps partial".to_string(),
        };
        out.push_str(&format!(
            "{} strata, {} closure covers, {}\n\n",
            self.rows.len(),
            self.closure_edges.len(),
            totals
        ));
        let headers = ["w", "len", "K_w", "Pi_w", "|Pi_w|", "irreps", "oracle"];
        let cells: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                let irreps = match &r.irreps {
                    IrrepCount::Known { count, .. } => count.to_string(),
                    IrrepCount::Deferred { .. } => "deferred".to_string(),
                };
                let oracle = match &r.oracle {
                    OracleVerdict::Off => "-".to_string(),
                    OracleVerdict::Match { order } => format!("match({order})"),
                    OracleVerdict::Mismatch { detail, .. } => format!("MISMATCH: {detail}"),
                    OracleVerdict::Skipped { .. } => "skipped".to_string(),
                };
                [
                    r.w.clone(),
                    r.length.to_string(),
                    set_display(&r.k_w),
                    r.descriptor.to_string(),
                    r.order.to_string(),
                    irreps,
                    oracle,
                ]
            })
            .collect();
        let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |row: &[String]| -> String {
            let mut s = String::new();
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                s.push_str(c);
                if i + 1 < row.len() {
                    s.push_str(&" ".repeat(widths[i] - c.len()));
                }
            }
            s.push('\n');
            s
        };
        out.push_str(&line(&headers.map(String::from)));
        out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
        for row in &cells {
            out.push_str(&line(row));
        }
        for (i, r) in self.rows.iter().enumerate() {
            if let OracleVerdict::Skipped { reason } = &r.oracle {
                out.push_str(&format!("note: stratum {} ({}) skipped: {}\n", i, r.w, reason));
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let strata: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let irreps = match &r.irreps {
                    IrrepCount::Known { count, .. } => big_to_json(count),
                    IrrepCount::Deferred { .. } => serde_json::json!("deferred"),
                };
                let oracle = match &r.oracle {
                    OracleVerdict::Off => serde_json::json!({ "verdict": "off" }),
                    OracleVerdict::Match { order } => {
                        serde_json::json!({ "verdict": "match", "order": order })
                    }
                    OracleVerdict::Mismatch { oracle, detail } => serde_json::json!({
                        "verdict": "mismatch", "order": oracle, "detail": detail,
                    }),
                    OracleVerdict::Skipped { reason } => {
                        serde_json::json!({ "verdict": "skipped", "reason": reason })
                    }
                };
                serde_json::json!({
                    "w": r.w,
                    "length": r.length,
                    "k_w": r.k_w.iter().copied().collect::<Vec<_>>(),
                    "descriptor": r.descriptor.to_json(),
                    "order": big_to_json(&r.order),
                    "irreps": irreps,
                    "oracle": oracle,
                })
            })
            .collect();
        let closure: Vec<serde_json::Value> = self
            .closure_edges
            .iter()
            .map(|&(a, b)| serde_json::json!([a, b]))
            .collect();
        let doc = serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "config": {
                "family": self.family.code(),
                "rank": self.rank,
                "cochar": self.cochar.to_string(),
                "parabolic": self.parabolic.iter().copied().collect::<Vec<_>>(),
                "q": self.q,
                "oracle": self.oracle_on,
            },
            "strata": strata,
            "closure": closure,
            "totals": {
                "strata": self.rows.len(),
                "irreps": match &self.total_irreps {
                    Some(t) => big_to_json(t),
                    None => serde_json::json!("partial"),
                },
            },
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable report");
        s.push('\n');
        s
    }

    fn render_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph census {\n");
        out.push_str("    rankdir=TB;\n    node [shape=box];\n");
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&format!("    s{} [label=\"{} | {}\"];\n", i, r.w, r.descriptor));
        }
        for &(from, to) in &self.closure_edges {
            out.push_str(&format!("    s{from} -> s{to};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(family: Family, rank: usize, cochar: &str, q: u64, oracle: bool) -> CensusConfig {
        CensusConfig {
            family,
            rank,
            cochar: CocharSpec::parse(cochar).unwrap(),
            q,
            oracle,
            format: OutputFormat::Table,
        }
    }

    #[test]
    fn cochar_parsing() {
        assert_eq!(CocharSpec::parse("2,2").unwrap(), CocharSpec::Blocks(vec![2, 2]));
        assert_eq!(
            CocharSpec::parse(" 1, 3 ").unwrap(),
            CocharSpec::Blocks(vec![1, 3])
        );
        assert_eq!(
            CocharSpec::parse("I={s1,s3}").unwrap(),
            CocharSpec::Explicit([1, 3].into_iter().collect())
        );
        assert_eq!(
            CocharSpec::parse("I=2").unwrap(),
            CocharSpec::Explicit([2].into_iter().collect())
        );
        assert_eq!(CocharSpec::parse("I=").unwrap(), CocharSpec::Explicit(BTreeSet::new()));
        assert!(CocharSpec::parse("").is_err());
        assert!(CocharSpec::parse("2,x").is_err());
        assert!(CocharSpec::parse("0,4").is_err());
    }

    #[test]
    fn block_signatures_resolve_to_parabolic_types() {
        let r = |f, n, c: &str| resolve_parabolic(f, n, &CocharSpec::parse(c).unwrap()).unwrap();
        assert_eq!(r(Family::Gl, 4, "2,2"), [1, 3].into_iter().collect());
        assert_eq!(r(Family::Gl, 4, "1,3"), [2, 3].into_iter().collect());
        assert_eq!(r(Family::Gl, 4, "1,1,1,1"), BTreeSet::new());
        assert_eq!(r(Family::Gl, 4, "4"), [1, 2, 3].into_iter().collect());
        assert_eq!(r(Family::Gu, 3, "1,2"), [2].into_iter().collect());
        assert_eq!(r(Family::Sp, 2, "2,2"), [1].into_iter().collect());
        assert_eq!(r(Family::Sp, 2, "4"), [1, 2].into_iter().collect());
        assert_eq!(r(Family::Sp, 3, "3,3"), [1, 2].into_iter().collect());
        // wrong total or asymmetric symplectic signatures are rejected
        assert!(resolve_parabolic(Family::Gl, 4, &CocharSpec::parse("2,3").unwrap()).is_err());
        assert!(resolve_parabolic(Family::Sp, 2, &CocharSpec::parse("1,3").unwrap()).is_err());
        // explicit form bypasses translation
        assert_eq!(r(Family::Sp, 2, "I={s1}"), [1].into_iter().collect());
        assert!(resolve_parabolic(Family::Gl, 4, &CocharSpec::parse("I=4").unwrap()).is_err());
    }

    #[test]
    fn two_block_linear_census_without_oracle() {
        let report = run_census(&cfg(Family::Gl, 4, "2,2", 2, false)).unwrap();
        assert_eq!(report.rows.len(), 6);
        let orders: Vec<String> = report.rows.iter().map(|r| r.order.to_string()).collect();
        assert_eq!(orders, ["180", "15", "7", "7", "3", "36"]);
        assert!(report.rows.iter().all(|r| r.oracle == OracleVerdict::Off));
        // two nonabelian strata stay deferred without the oracle
        assert!(report.total_irreps.is_none());
        assert!(!report.failed());
    }

    #[test]
    fn two_block_linear_census_with_oracle() {
        let report = run_census(&cfg(Family::Gl, 4, "2,2", 2, true)).unwrap();
        assert_eq!(report.mismatches(), 0);
        for r in &report.rows {
            assert!(matches!(r.oracle, OracleVerdict::Match { .. }), "{:?}", r.oracle);
        }
        // GL_2(F_4) has 15 classes, the torus strata are abelian, GL_2(F_2)^2 has 9
        let irreps: Vec<String> = report
            .rows
            .iter()
            .map(|r| match &r.irreps {
                IrrepCount::Known { count, .. } => count.to_string(),
                IrrepCount::Deferred { reason } => panic!("deferred: {reason}"),
            })
            .collect();
        assert_eq!(irreps, ["15", "15", "7", "7", "3", "9"]);
        assert_eq!(report.total_irreps, Some(BigUint::from(56u32)));
    }

    #[test]
    fn stratum_count_is_the_coset_index() {
        for (family, rank, cochar, expected) in [
            (Family::Gl, 4, "2,2", 24 / 4),
            (Family::Gl, 3, "1,2", 6 / 2),
            (Family::Sp, 2, "2,2", 8 / 2),
            (Family::Gu, 3, "1,2", 6 / 2),
        ] {
            let report = run_census(&cfg(family, rank, cochar, 2, false)).unwrap();
            assert_eq!(report.rows.len(), expected, "{family:?} {cochar}");
        }
    }

    #[test]
    fn json_output_is_deterministic_and_round_trips() {
        let report = run_census(&cfg(Family::Sp, 2, "2,2", 3, true)).unwrap();
        let a = report.render(OutputFormat::Json);
        let b = run_census(&cfg(Family::Sp, 2, "2,2", 3, true))
            .unwrap()
            .render(OutputFormat::Json);
        assert_eq!(a, b);
        let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["config"]["family"], "sp");
        assert_eq!(doc["totals"]["strata"], 4);
        let orders: Vec<u64> = doc["strata"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["order"].as_u64().unwrap())
            .collect();
        assert_eq!(orders, [96, 10, 8, 48]);
        for s in doc["strata"].as_array().unwrap() {
            assert_eq!(s["oracle"]["verdict"], "match");
            assert_eq!(s["oracle"]["order"], s["order"]);
        }
    }

    #[test]
    fn dot_output_shapes() {
        let report = run_census(&cfg(Family::Gl, 4, "2,2", 2, false)).unwrap();
        let dot = report.render(OutputFormat::Dot);
        assert_eq!(dot.matches("[label=").count(), 6);
        assert_eq!(dot.matches(" -> ").count(), 6);
        assert!(dot.contains("id | GL_2(F_{q^2})"));
        // a central cocharacter has a single stratum and no edges
        let report = run_census(&cfg(Family::Gl, 3, "3", 2, false)).unwrap();
        let dot = report.render(OutputFormat::Dot);
        assert_eq!(dot.matches("[label=").count(), 1);
        assert_eq!(dot.matches(" -> ").count(), 0);
    }

    #[test]
    fn table_output_mentions_every_stratum() {
        let report = run_census(&cfg(Family::Gu, 3, "1,2", 2, true)).unwrap();
        let table = report.render(OutputFormat::Table);
        for r in &report.rows {
            assert!(table.contains(&r.w));
        }
        assert!(table.contains("match(54)"));
        assert!(table.contains("total irreps"));
    }

    #[test]
    fn oversized_oracle_marks_skipped_not_failed() {
        // GU_4 at q=3 sends one stratum past the candidate budget
        let report = run_census(&cfg(Family::Gu, 4, "1,3", 3, true)).unwrap();
        assert!(!report.failed());
        assert!(report
            .rows
            .iter()
            .any(|r| matches!(r.oracle, OracleVerdict::Skipped { .. })));
        assert!(report
            .rows
            .iter()
            .any(|r| matches!(r.oracle, OracleVerdict::Match { .. })));
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(run_census(&cfg(Family::Gl, 4, "2,2", 6, false)).is_err()); // q not a prime power
        assert!(run_census(&cfg(Family::Gl, 4, "3,2", 2, false)).is_err());
        // the long reflection inside a non-central symplectic Levi is unsupported
        assert!(run_census(&cfg(Family::Sp, 2, "I={s2}", 2, false)).is_err());
    }
}
