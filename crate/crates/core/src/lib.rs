//! Generation of symbolic labeled transition systems from event-style B
//! machines and refinements.
//!
//! The pipeline is: [`frontend`] parses and checks the specification,
//! [`oblige`] derives proof obligations through [`logic::wp`], [`prover`]
//! discharges them with a three-valued verdict, and [`lts`] assembles and
//! serializes the result. [`oracle`] explores concrete instantiations and
//! checks the symbolic system against them.

pub mod exec;
pub mod frontend;
pub mod logic;
pub mod lts;
pub mod oblige;
pub mod oracle;
pub mod prover;
