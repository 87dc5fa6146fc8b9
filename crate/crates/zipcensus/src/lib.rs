//! Classification census for the strata of classical-group zip stacks.
//!
//! Given a classical group (general linear, symplectic, or a unitary
//! similitude group over a finite field) and a cocharacter type, this crate
//! computes the combinatorial shadow of the stratification: the stratum set,
//! the Levi type attached to each stratum, the finite stabilizer component
//! group as a symbolic descriptor with an exact order, irreducible
//! representation counts, and the closure partial order. Everything a
//! formula claims is cross-checkable against a brute-force enumeration of
//! actual matrices over small finite fields ([`matrixgrp`]).
//!
//! Modules:
//! * [`finfield`] — explicit arithmetic in small finite fields.
//! * [`weyl`] — Weyl groups of types A and C as permutation groups.
//! * [`zipdata`] — cocharacter datum, strata, Levi types, closure order.
//! * [`stabilizer`] — symbolic stabilizer component groups and their orders.
//! * [`matrixgrp`] — the brute-force matrix enumeration oracle.
//! * [`census`] — orchestration plus table / JSON / DOT rendering.

pub mod census;
pub mod finfield;
pub mod matrixgrp;
pub mod stabilizer;
pub mod weyl;
pub mod zipdata;

pub use census::{run_census, CensusConfig, CensusReport, OutputFormat};
pub use weyl::{CoxeterDescriptor, WeylElement};
pub use zipdata::ZipDatum;
