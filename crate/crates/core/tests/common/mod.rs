#![allow(dead_code)]

use emitpair_core::wavepacket::{apply_recoil, free_evolve, GaussianPacket, Scene};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random packet pair with a common width, random dimension, and
/// independent kicks, phases and free-evolution times.
pub fn random_packet_pair(seed: u64) -> (GaussianPacket, GaussianPacket) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.random_range(1..=3usize);
    let sigma = rng.random_range(0.5..2.0);
    let make = |rng: &mut ChaCha8Rng| {
        let center = (0..dim).map(|_| rng.random_range(-2.0..2.0) * sigma).collect();
        let momentum = (0..dim).map(|_| rng.random_range(-1.5..1.5) / sigma).collect();
        let mut g = GaussianPacket::new(center, momentum, sigma).unwrap();
        let kick: Vec<f64> = (0..dim).map(|_| rng.random_range(-0.5..0.5) / sigma).collect();
        g = apply_recoil(&g, &kick).unwrap();
        g.phase += rng.random_range(-3.0..3.0);
        let t = rng.random_range(0.0..1.0) * sigma * sigma;
        free_evolve(&g, t, rng.random_range(0.5..2.0))
    };
    let a = make(&mut rng);
    let b = make(&mut rng);
    (a, b)
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Seeded random scene: moving packets, recoils, and a nonzero delay.
pub fn random_scene(seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.random_range(1..=3usize);
    let sigma = rng.random_range(0.5..2.0);
    let packet = |rng: &mut ChaCha8Rng| {
        let center = (0..dim).map(|_| rng.random_range(-1.5..1.5) * sigma).collect();
        let momentum = (0..dim).map(|_| rng.random_range(-1.0..1.0) / sigma).collect();
        GaussianPacket::new(center, momentum, sigma).unwrap()
    };
    let scene = Scene {
        packet_psi: packet(&mut rng),
        packet_phi: packet(&mut rng),
        k_abs: rng.random_range(0.0..1.5) / sigma,
        beam_axis: random_unit(&mut rng, dim),
        omega_dir: random_unit(&mut rng, dim),
        mass: rng.random_range(0.5..5.0),
        delay: rng.random_range(0.0..2.0),
    };
    scene.validate().unwrap();
    scene
}
