use armtraj_core::kinematics::{Axis, Joint, KinematicChain, TransformPrimitive};
use armtraj_core::optimizer::{generate_trajectory, LossWeights, OptimizerConfig};
use armtraj_core::pathgen::ShapeSpec;

fn two_link(l1: f64, l2: f64) -> KinematicChain {
    KinematicChain::new(
        "two_link",
        vec![
            Joint { name: "shoulder".into(), min_deg: -180.0, max_deg: 180.0 },
            Joint { name: "elbow".into(), min_deg: -180.0, max_deg: 180.0 },
        ],
        vec![
            TransformPrimitive::RotJoint { axis: Axis::Z, joint: 0, scale: 1.0, offset_deg: 0.0 },
            TransformPrimitive::Translate { xyz: [l1, 0.0, 0.0] },
            TransformPrimitive::RotJoint { axis: Axis::Z, joint: 1, scale: 1.0, offset_deg: 0.0 },
            TransformPrimitive::Translate { xyz: [l2, 0.0, 0.0] },
        ],
        vec![],
    )
    .unwrap()
}

fn main() {
    let chain = two_link(20.0, 15.0);
    let p_s = [80.0, 30.0];
    let p_e = [10.0, 60.0];
    let cfg = OptimizerConfig { max_iterations: 6000, ..OptimizerConfig::default() };
    let sol = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 20, &LossWeights::default(), &cfg).unwrap();
    println!("iters={} converged={}", sol.iterations, sol.converged);
    for (i, b) in sol.loss_trace.iter().enumerate() {
        if i % 500 == 0 || i + 1 == sol.loss_trace.len() {
            println!("it {:5}  L={:10.6}  L0={:9.6} L1={:9.6} L2={:9.6} L3={:9.6} L4={:9.6} L5={:9.6} L6={:9.6}",
                i, b.total, b.terms[0], b.terms[1], b.terms[2], b.terms[3], b.terms[4], b.terms[5], b.terms[6]);
        }
    }
    let (per, stats) = armtraj_core::evaluation::distance_from_line(
        &sol.states, sol.goal.points[0], sol.goal.points[20]).unwrap();
    println!("dist mm: mean={:.4} std={:.4} max={:.4}", stats.mean, stats.std,
        per.iter().cloned().fold(0.0f64, f64::max));
}
