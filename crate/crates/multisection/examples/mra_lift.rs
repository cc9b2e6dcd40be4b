//! The block lift Z -> Z^(k) and the bridge between the two relaxations.
//!
//! Lifting an n x n matrix Z to nk x nk blocks (Z on the diagonal,
//! (J - Z)/(k-1) off it) turns the constraint Z >= (1/k)*J, which no standard
//! cone models directly, into plain PSD-ness of the lift. The same algebra
//! gives an exact change of variables Y = (kZ - J)/(k - 1) between the
//! alignment-style feasible set and the max-k-cut one.
//!
//! Run with `cargo run --example mra_lift`.

use multisection::lift::{
    build_lifted, change_of_variables, inverse_change_of_variables, psd_equivalence_check,
};
use multisection::linalg::min_eigenvalue;
use multisection::model::{planted_matrix, Partition};
use multisection::relax::planted_cut_matrix;
use multisection::Mat;

fn main() {
    let k = 3;
    let partition = Partition::contiguous(k, 4);
    let z = planted_matrix(&partition);
    let lifted = build_lifted(&z, k).expect("z is square and symmetric");
    println!(
        "lifted the {}x{} partition matrix to {}x{} blocks",
        z.rows(),
        z.cols(),
        lifted.lifted().rows(),
        lifted.lifted().cols()
    );

    // PSD equivalence: lambda_min of the lift and of Z - J/k always sit on
    // the same side of zero.
    let (lift_eig, shifted_eig, agree) = psd_equivalence_check(&z, k, 1e-8)
        .expect("z is square and symmetric");
    println!("partition matrix: lambda_min(Z^(k)) = {lift_eig:.6}, lambda_min(Z - J/k) = {shifted_eig:.6}, verdicts agree: {agree}");

    // The identity matrix is PSD, yet its lift is not: Z >= J/k is the
    // stronger condition the lift encodes.
    let identity = Mat::from_fn(12, 12, |i, j| if i == j { 1.0 } else { 0.0 });
    let plain_psd = min_eigenvalue(&identity).expect("eigendecomposition runs");
    let (lift_eig, shifted_eig, agree) = psd_equivalence_check(&identity, k, 1e-8)
        .expect("identity is square and symmetric");
    println!("identity matrix: lambda_min(Z) = {plain_psd:.3} but lambda_min(Z^(k)) = {lift_eig:.3} and lambda_min(Z - J/k) = {shifted_eig:.3}, verdicts agree: {agree}");

    // Change of variables: the planted alignment point maps exactly onto the
    // planted max-k-cut point, and the map round-trips.
    let y = change_of_variables(&z, k);
    let cut = planted_cut_matrix(&partition);
    let distance = y
        .data()
        .iter()
        .zip(cut.data())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("change of variables maps the partition matrix onto the cut matrix (max entry gap {distance:.1e})");

    let back = inverse_change_of_variables(&y, k);
    let round_trip = back
        .data()
        .iter()
        .zip(z.data())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("inverse map round-trips (max entry gap {round_trip:.1e})");
}
