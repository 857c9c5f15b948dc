//! Shared test support: an independent brute-force oracle for the NICO
//! right-arm forward kinematics.
//!
//! Deliberately does what the library avoids: builds all 4×4 homogeneous
//! matrices of the arm (25 of them, transcribed verbatim with no merged
//! rotations), multiplies them into one matrix, and projects the origin.
//! The y-rotation uses the same sign convention as the model (−sin in the
//! first row). Agreement with the vector-application path in the library is
//! therefore a genuine cross-check of both the math and the shipped model
//! transcription.

#![allow(dead_code)]

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

fn translate(x: f64, y: f64, z: f64) -> Matrix4<f64> {
    Matrix4::new(
        1.0, 0.0, 0.0, x, //
        0.0, 1.0, 0.0, y, //
        0.0, 0.0, 1.0, z, //
        0.0, 0.0, 0.0, 1.0,
    )
}

fn rot_x(deg: f64) -> Matrix4<f64> {
    let (s, c) = deg.to_radians().sin_cos();
    Matrix4::new(
        1.0, 0.0, 0.0, 0.0, //
        0.0, c, -s, 0.0, //
        0.0, s, c, 0.0, //
        0.0, 0.0, 0.0, 1.0,
    )
}

fn rot_y(deg: f64) -> Matrix4<f64> {
    let (s, c) = deg.to_radians().sin_cos();
    Matrix4::new(
        c, 0.0, -s, 0.0, //
        0.0, 1.0, 0.0, 0.0, //
        s, 0.0, c, 0.0, //
        0.0, 0.0, 0.0, 1.0,
    )
}

fn rot_z(deg: f64) -> Matrix4<f64> {
    let (s, c) = deg.to_radians().sin_cos();
    Matrix4::new(
        c, -s, 0.0, 0.0, //
        s, c, 0.0, 0.0, //
        0.0, 0.0, 1.0, 0.0, //
        0.0, 0.0, 0.0, 1.0,
    )
}

/// The arm's matrices in base-outward order, angles in degrees.
pub fn nico_matrices(theta: &[f64; 7]) -> Vec<Matrix4<f64>> {
    vec![
        translate(0.0, 5.0, 19.5),
        rot_z(90.0),
        rot_z(theta[0]),
        translate(0.0, -1.5, 2.5),
        rot_y(90.0),
        rot_z(theta[1]),
        translate(3.0, 0.0, 9.5),
        rot_x(-90.0),
        rot_z(-theta[2]),
        translate(17.5, 0.0, 0.0),
        rot_x(90.0),
        rot_z(180.0),
        rot_z(-theta[3]),
        translate(10.0, 0.0, 0.0),
        rot_y(90.0),
        rot_z(-theta[4] / 2.0),
        translate(0.0, 0.0, 10.0),
        rot_x(-90.0),
        rot_z(-90.0),
        rot_z(theta[5] / 4.5 + 10.0),
        translate(0.0, -1.0, 0.0),
        translate(6.0, 0.0, 0.0),
        rot_z(20.0 + (theta[6] + 180.0) / 4.5),
        translate(6.0, 0.0, 0.0),
        rot_y(90.0),
    ]
}

/// End-effector position by the traditional route: full matrix product
/// applied to the homogeneous origin.
pub fn oracle_position(theta: &[f64; 7]) -> [f64; 3] {
    let product = nico_matrices(theta)
        .into_iter()
        .fold(Matrix4::identity(), |acc, m| acc * m);
    let p = product * Vector4::new(0.0, 0.0, 0.0, 1.0);
    [p.x, p.y, p.z]
}

/// Pointing direction: product of the 3×3 rotation parts applied to
/// (0,0,1).
pub fn oracle_direction(theta: &[f64; 7]) -> [f64; 3] {
    let product = nico_matrices(theta)
        .into_iter()
        .fold(Matrix3::identity(), |acc, m| {
            acc * m.fixed_view::<3, 3>(0, 0).into_owned()
        });
    let d = product * Vector3::new(0.0, 0.0, 1.0);
    [d.x, d.y, d.z]
}

/// Intermediate joint point `k`: the product of the matrices up to and
/// including group `k` (1-based over the eight printed groups), applied to
/// the origin.
pub fn oracle_joint_point(theta: &[f64; 7], group: usize) -> [f64; 3] {
    // group boundaries in the 25-matrix verbatim list
    let ends = [3, 6, 9, 13, 16, 20, 23, 25];
    let product = nico_matrices(theta)[..ends[group - 1]]
        .iter()
        .fold(Matrix4::identity(), |acc, m| acc * m);
    let p = product * Vector4::new(0.0, 0.0, 0.0, 1.0);
    [p.x, p.y, p.z]
}
