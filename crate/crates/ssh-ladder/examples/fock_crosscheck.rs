//! Cross-check of the Gaussian (Wick-determinant) pipeline against the
//! brute-force Fock-space oracle on a small two-leg ladder.

use ssh_ladder::entanglement::{
    joint_number_distribution, number_entropy, operational_entanglement, EdgeSelection,
    EntanglementMeasure,
};
use ssh_ladder::fock::{
    fock_correlation_matrix, fock_ground_state, fock_number_distribution,
    fock_operational_entanglement,
};
use ssh_ladder::gaussian::{ground_state_correlations, ModeIndex};
use ssh_ladder::model::{real_space_hamiltonian, LadderParams, SiteType};

fn main() {
    let p = LadderParams::new(2, 2, vec![0.6, -0.4], 0.3).unwrap();
    let n = p.n_modes();
    let c = ground_state_correlations(&real_space_hamiltonian(&p), n / 2);
    let psi = fock_ground_state(&p, n / 2).unwrap();
    let c_fock = fock_correlation_matrix(&psi);
    println!("correlation matrices: |C_gaussian - C_fock| = {:.2e}", (c.matrix() - c_fock.matrix()).norm());

    let sel = EdgeSelection::new(
        ModeIndex::new(&p, SiteType::A, 1, 1),
        ModeIndex::new(&p, SiteType::A, 2, 1),
        ModeIndex::new(&p, SiteType::B, 1, p.l),
        ModeIndex::new(&p, SiteType::B, 2, p.l),
    )
    .unwrap();

    let dist = joint_number_distribution(&c, &sel);
    let dist_fock = fock_number_distribution(&psi, &sel);
    let mut max_dp: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            max_dp = max_dp.max((dist.p[a][b] - dist_fock.p[a][b]).abs());
        }
    }
    println!("number distribution:  max |dp| = {max_dp:.2e}");
    println!(
        "number entropy:       {:.6} vs {:.6}",
        number_entropy(&dist),
        number_entropy(&dist_fock)
    );
    println!(
        "operational entanglement: {:.6} (Wick) vs {:.6} (Fock sector sum)",
        operational_entanglement(&c, &sel, EntanglementMeasure::Negativity),
        fock_operational_entanglement(&psi, &sel).unwrap()
    );
}
