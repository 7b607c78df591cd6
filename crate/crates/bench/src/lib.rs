//! Benchmark fixtures.

use helionics_core::hamiltonian::{default_start, optimize};
use helionics_core::{QuadSpec, StateKind, TwoElectronState};

pub fn optimized(kind: StateKind, z: f64) -> TwoElectronState {
    optimize(kind, z, default_start(kind, z))
        .and_then(|r| r.state())
        .expect("fixture state is bound")
}

pub fn spec() -> QuadSpec {
    QuadSpec::default()
}
