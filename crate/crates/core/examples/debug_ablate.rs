use armtraj_core::evaluation::fluency;
use armtraj_core::kinematics::{Axis, Joint, KinematicChain, TransformPrimitive};
use armtraj_core::optimizer::*;
use armtraj_core::pathgen::ShapeSpec;

fn three_link() -> KinematicChain {
    KinematicChain::new(
        "three_link",
        vec![
            Joint { name: "base".into(), min_deg: -180.0, max_deg: 180.0 },
            Joint { name: "mid".into(), min_deg: -180.0, max_deg: 180.0 },
            Joint { name: "tip".into(), min_deg: -180.0, max_deg: 180.0 },
        ],
        vec![
            TransformPrimitive::RotJoint { axis: Axis::Z, joint: 0, scale: 1.0, offset_deg: 0.0 },
            TransformPrimitive::Translate { xyz: [20.0, 0.0, 0.0] },
            TransformPrimitive::RotJoint { axis: Axis::Z, joint: 1, scale: 1.0, offset_deg: 0.0 },
            TransformPrimitive::Translate { xyz: [15.0, 0.0, 0.0] },
            TransformPrimitive::RotJoint { axis: Axis::Z, joint: 2, scale: 1.0, offset_deg: 0.0 },
            TransformPrimitive::Translate { xyz: [10.0, 0.0, 0.0] },
        ],
        vec![],
    )
    .unwrap()
}

fn main() {
    let chain = three_link();
    let cfg = OptimizerConfig::default();
    let weights = LossWeights::default();
    for (p_s, p_e) in [
        ([150.0, -60.0, 30.0], [20.0, 40.0, -50.0]),
        ([100.0, -30.0, 10.0], [10.0, 60.0, -80.0]),
        ([90.0, 20.0, -40.0], [0.0, -70.0, 60.0]),
        ([120.0, -100.0, 80.0], [30.0, 30.0, 30.0]),
    ] {
        let full = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights, &cfg).unwrap();
        let no_c0 = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights.zeroed(&[0]), &cfg).unwrap();
        let no_c6 = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights.zeroed(&[6]), &cfg).unwrap();
        let mut worst = 0.0f64;
        for (i, row) in no_c0.poses_deg.iter().enumerate() {
            let t = i as f64 / 50.0;
            for (j, a) in row.iter().enumerate() {
                worst = worst.max((a - (p_s[j] + t * (p_e[j] - p_s[j]))).abs());
            }
        }
        let ratio = fluency(&no_c6.poses_deg).unwrap() / fluency(&full.poses_deg).unwrap();
        println!("pair {:?}->{:?}: c0-dev {:.5}° | c6 ratio {:.2} | iters full {} noc0 {} noc6 {}",
            p_s, p_e, worst, ratio, full.iterations, no_c0.iterations, no_c6.iterations);
    }
}
