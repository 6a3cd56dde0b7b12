//! Benchmark fixtures shared by the criterion targets.

use emitpair_core::{GaussianPacket, Scene};

/// Two chirped, moving packets in `dim` dimensions.
pub fn packet_pair(dim: usize) -> (GaussianPacket, GaussianPacket) {
    let mut a = GaussianPacket::new(vec![-0.7; dim], vec![0.4; dim], 1.1).unwrap();
    a.chirp = 0.3;
    let mut b = GaussianPacket::new(vec![0.9; dim], vec![-0.2; dim], 1.1).unwrap();
    b.chirp = -0.5;
    b.phase = 0.25;
    (a, b)
}

/// The default three-dimensional scene with a finite delay.
pub fn scene() -> Scene {
    let mut s = Scene::separated(1.0, 2.0, 1.0, vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]).unwrap();
    s.delay = 0.5;
    s
}
