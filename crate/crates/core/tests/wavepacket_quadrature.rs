mod common;

use emitpair_core::wavepacket::{
    apply_recoil, build_overlap_table, free_evolve, overlap, overlap_quadrature, GaussianPacket, GridSpec,
};
use emitpair_core::{validate, StateLabel};
use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

fn quad(a: &GaussianPacket, b: &GaussianPacket) -> C64 {
    overlap_quadrature(a, b, &GridSpec::covering(a, b)).unwrap()
}

#[test]
fn quadrature_normalizes_identical_packets() {
    for seed in 0..10 {
        let (g, _) = common::random_packet_pair(seed);
        assert!((quad(&g, &g) - C64::new(1.0, 0.0)).norm() < 1e-8);
    }
}

#[test]
fn closed_form_matches_quadrature_on_random_pairs() {
    let mut worst = 0.0f64;
    for seed in 0..50 {
        let (a, b) = common::random_packet_pair(seed);
        let closed = overlap(&a, &b).unwrap();
        let numeric = quad(&a, &b);
        worst = worst.max((closed - numeric).norm());
        assert!((closed - numeric).norm() < 1e-8, "seed {seed}: {closed} vs {numeric}");
        assert!(closed.norm() <= 1.0 + 1e-12);
    }
    eprintln!("worst closed-form vs quadrature deviation: {worst:e}");
}

#[test]
fn named_quadrature_examples() {
    let half = (-0.5f64).exp();
    let a = GaussianPacket::at_rest(vec![0.0], 1.0).unwrap();
    let b = GaussianPacket::at_rest(vec![2.0], 1.0).unwrap();
    assert!((quad(&a, &b).norm() - half).abs() < 1e-8);
    let c = GaussianPacket::new(vec![0.0], vec![1.0], 1.0).unwrap();
    assert!((quad(&a, &c).norm() - half).abs() < 1e-8);
    let g = GaussianPacket::at_rest(vec![0.0, 0.0], 1.5).unwrap();
    let kicked = apply_recoil(&g, &[0.4, 0.3]).unwrap();
    let expect = (-(1.5f64 * 0.5).powi(2) / 2.0).exp();
    assert!((quad(&g, &kicked).norm() - expect).abs() < 1e-8);
}

#[test]
fn own_free_evolution_matches_quadrature() {
    let g = GaussianPacket::new(vec![0.2], vec![0.7], 1.0).unwrap();
    for t in [0.01, 0.1, 0.5] {
        let e = free_evolve(&g, t, 1.0);
        let closed = overlap(&g, &e).unwrap();
        assert!(closed.norm() < 1.0);
        assert!((closed - quad(&g, &e)).norm() < 1e-8);
    }
}

/// Split-step spectral propagation of the sampled wavefunction, compared
/// pointwise with the closed-form evolved packet.
#[test]
fn free_evolution_matches_spectral_propagation() {
    let n = 4096usize;
    let length = 120.0;
    let dx = length / n as f64;
    let xs: Vec<f64> = (0..n).map(|i| -length / 2.0 + i as f64 * dx).collect();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);

    for (p, t, mass, sigma) in [(1.5, 2.0, 1.0, 1.0), (-0.8, 5.0, 3.0, 0.7), (0.0, 1.0, 0.5, 1.2)] {
        let mut g = GaussianPacket::new(vec![-3.0], vec![p], sigma).unwrap();
        g.phase = 0.4;
        let mut buf: Vec<C64> = xs.iter().map(|&x| g.amplitude(&[x])).collect();
        forward.process(&mut buf);
        for (i, v) in buf.iter_mut().enumerate() {
            let freq = if i <= n / 2 { i as f64 } else { i as f64 - n as f64 };
            let k = 2.0 * std::f64::consts::PI * freq / length;
            *v *= C64::from_polar(1.0, -k * k * t / (2.0 * mass));
        }
        inverse.process(&mut buf);
        let evolved = free_evolve(&g, t, mass);
        let worst = xs
            .iter()
            .zip(&buf)
            .map(|(&x, v)| (v / n as f64 - evolved.amplitude(&[x])).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "p={p} t={t}: {worst:e}");
    }
}

#[test]
fn scene_tables_pass_strict_validation() {
    for seed in 0..20 {
        let scene = common::random_scene(seed);
        let table = build_overlap_table(&scene).unwrap();
        let report = validate(&table, true);
        assert!(report.is_valid(), "seed {seed}: {}", report.summary());
    }
}

#[test]
fn scene_entries_match_quadrature() {
    let scene = common::random_scene(7);
    let table = build_overlap_table(&scene).unwrap();
    let packets = scene.labeled_packets().unwrap();
    for a in StateLabel::ALL {
        for b in StateLabel::ALL {
            let q = quad(&packets[a.index()], &packets[b.index()]);
            assert!((table.get(a, b) - q).norm() < 1e-8, "<{a:?}|{b:?}>");
        }
    }
}
