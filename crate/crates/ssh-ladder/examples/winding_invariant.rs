//! One-point winding-number evaluation by all three routes: the
//! Green's-function trace formula, the projector block, and (where its
//! precondition holds) the closed form for uniform dimerization.

use ssh_ladder::model::{LadderParams, SymmetryKind};
use ssh_ladder::topology::{winding_analytic, winding_green, winding_projector, DEFAULT_NK};

fn main() {
    let cases = [
        LadderParams::uniform(1, 2, 0.5, 0.0).unwrap(),
        LadderParams::uniform(2, 2, 0.5, 0.3).unwrap(),
        LadderParams::new(3, 2, vec![0.9, -0.75, 0.8], 0.9).unwrap(),
    ];
    for p in &cases {
        let green = winding_green(p, SymmetryKind::S, DEFAULT_NK).unwrap();
        let proj = winding_projector(p, SymmetryKind::S, DEFAULT_NK).unwrap();
        let closed = winding_analytic(p)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "n/a".into());
        println!(
            "M={} deltas={:?} z={}: green I={} (residual {:.1e}), projector I={}, closed form {}",
            p.m, p.deltas, p.z, green.value, green.residual, proj.value, closed
        );
    }
}
