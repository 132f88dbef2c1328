#![allow(dead_code)]

use ltsgen_core::frontend::{self, MachineModel, RefinementLink};

pub const PARKING: &str = include_str!("../../corpus/parking.mch");
pub const PARKING_R1: &str = include_str!("../../corpus/parking_r1.ref");

pub fn parking() -> MachineModel {
    frontend::parse(PARKING).expect("parking parses")
}

pub fn parking_r1() -> RefinementLink {
    let concrete = frontend::parse(PARKING_R1).expect("parking_r1 parses");
    frontend::resolve_refinement(&concrete, &parking()).expect("parking_r1 links")
}

use ltsgen_core::lts::{self, BuildOptions, BuildReport, SymbolicLts};
use ltsgen_core::prover::{Prover, ProverConfig};

pub fn places(values: &[i64]) -> ProverConfig {
    let mut cfg = ProverConfig::default();
    cfg.constant_bounds
        .insert("NbPlaces".into(), values.to_vec());
    cfg
}

pub fn parking_lts(cfg: &ProverConfig) -> (SymbolicLts, BuildReport) {
    let m = parking();
    let p = Prover::new(m.signature(), cfg.clone());
    lts::build(&m, &p, BuildOptions::default()).expect("parking builds")
}

pub fn parking_r1_lts(cfg: &ProverConfig) -> (SymbolicLts, BuildReport) {
    let link = parking_r1();
    let (abs, _) = parking_lts(cfg);
    let p = Prover::new(link.concrete.signature(), cfg.clone());
    lts::build_refined(&link, &abs, &p, BuildOptions::default()).expect("parking_r1 builds")
}
