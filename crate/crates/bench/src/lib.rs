//! Benchmark fixtures shared by the criterion targets.

use orthopack_core::constructions::{lift, thick3d_default, thin3d_default};
use orthopack_core::FamilySet;

/// Sets exercised by the maximality benchmarks, with a short label each.
pub fn engine_inputs() -> Vec<(&'static str, FamilySet)> {
    let thin = thin3d_default();
    vec![
        ("thick3d", thick3d_default()),
        ("thin3d", thin.clone()),
        ("thin3d_lift2", lift(&thin, 2).expect("lift of a valid set")),
    ]
}
