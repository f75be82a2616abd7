//! Winding-number phase diagram of the 3-leg ladder over (delta1, delta3)
//! with tied delta2, printed as an ASCII map ('.' marks gapless points).

use ssh_ladder::model::{LadderParams, SymmetryKind};
use ssh_ladder::topology::{phase_grid, AxisSpec, SweepParam, DEFAULT_NK};

fn main() {
    let template = LadderParams::new(3, 2, vec![0.0, -0.75, 0.0], 0.9).unwrap();
    let axis1 = AxisSpec::new(SweepParam::parse("delta1").unwrap(), -0.9, 0.9, 25);
    let axis2 = AxisSpec::new(SweepParam::parse("delta3").unwrap(), -0.9, 0.9, 25);
    let grid = phase_grid(&template, SymmetryKind::S, &axis1, &axis2, DEFAULT_NK);

    println!("M = 3, z = 0.9, delta2 = -0.75; rows: delta1, cols: delta3");
    for (i1, d1) in axis1.values().iter().enumerate() {
        print!("{d1:>6.2} |");
        for i2 in 0..axis2.steps {
            match grid.get(i1, i2) {
                Some(inv) => print!("{:>3}", inv.value),
                None => print!("{:>3}", "."),
            }
        }
        println!();
    }
}
