//! Operational-entanglement map E_op = p(1,1) * E_neg[rho^{1,1}] of the
//! four edge modes over (delta1, delta3), in units of ln 2.

use rayon::prelude::*;
use ssh_ladder::entanglement::{operational_entanglement, EdgeSelection, EntanglementMeasure};
use ssh_ladder::gaussian::ladder_ground_state;
use ssh_ladder::model::LadderParams;

fn main() {
    let n = 21;
    let grid: Vec<f64> =
        (0..n).map(|i| -0.9 + 1.8 * i as f64 / (n - 1) as f64).collect();
    let rows: Vec<String> = grid
        .par_iter()
        .map(|&d1| {
            let mut row = format!("{d1:>6.2} |");
            for &d3 in &grid {
                let p = LadderParams::new(3, 8, vec![d1, -0.75, d3], 0.9).unwrap();
                let c = ladder_ground_state(&p);
                let sel = EdgeSelection::edge_default(&p).unwrap();
                let e =
                    operational_entanglement(&c, &sel, EntanglementMeasure::Negativity);
                row.push_str(&format!("{:>6.2}", e / 2f64.ln()));
            }
            row
        })
        .collect();
    println!("M = 3, 16 sites per chain, z = 0.9, delta2 = -0.75");
    println!("E_op / ln 2; rows: delta1, cols: delta3 in [-0.9, 0.9]");
    for row in rows {
        println!("{row}");
    }
}
