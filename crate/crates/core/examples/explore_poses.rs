use rand::{Rng, SeedableRng};

fn main() {
    let chain = armtraj_core::robot_model::nico_right_arm();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let mut found = 0;
    println!("poses with fingertip in front (x<-5), lateral |y|<25, 5<z<40, pointing forward (dx<-0.7):");
    for _ in 0..2_000_000 {
        let pose: Vec<f64> = chain.joints.iter().map(|j| rng.gen_range(j.min_deg..j.max_deg)).collect();
        let s = armtraj_core::fk(&chain, &pose).unwrap();
        let p = s.position; let d = s.direction;
        if p[0] < -5.0 && p[1].abs() < 25.0 && p[2] > 5.0 && p[2] < 40.0 && d[0] < -0.7 {
            found += 1;
            if found <= 25 {
                println!("pose [{:6.1},{:6.1},{:6.1},{:6.1},{:6.1},{:6.1},{:6.1}] pos ({:6.1},{:6.1},{:6.1}) dir ({:5.2},{:5.2},{:5.2})",
                    pose[0],pose[1],pose[2],pose[3],pose[4],pose[5],pose[6],
                    p[0],p[1],p[2], d[0],d[1],d[2]);
            }
        }
    }
    println!("total found: {found} / 2e6");
}
