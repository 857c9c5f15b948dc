fn main() {
    let chain = armtraj_core::robot_model::nico_right_arm();
    for pose in [
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -45.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 45.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 90.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -45.0, 0.0, 0.0, 0.0],
        [45.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 45.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 90.0, 0.0],
    ] {
        let s = armtraj_core::fk(&chain, &pose).unwrap();
        println!(
            "pose {:>6.1?} -> pos ({:7.2},{:7.2},{:7.2})  dir ({:6.3},{:6.3},{:6.3})",
            pose, s.position[0], s.position[1], s.position[2],
            s.direction[0], s.direction[1], s.direction[2]
        );
    }
    println!("joint points at zero pose:");
    let s = armtraj_core::fk(&chain, &[0.0;7]).unwrap();
    for ((_, name), p) in chain.marks.iter().zip(&s.joint_points) {
        println!("  {:14} ({:7.2},{:7.2},{:7.2})", name, p[0], p[1], p[2]);
    }
}
