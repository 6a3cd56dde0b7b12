//! Gaussian center-of-mass wavepackets and the overlap tables they generate.
//!
//! Units: ħ = 1, so momenta are wavenumbers. A packet is
//!
//! ```text
//! ψ(x) = e^{iθ} Π_j (2 Re α / π)^{1/4} exp(-α (x_j - c_j)² + i p_j (x_j - c_j))
//! 1/α  = 4σ² + i·chirp
//! ```
//!
//! `σ` is the position spread at zero chirp. Free evolution over time `t`
//! adds `2t/m` to the chirp, so two packets that start with the same `σ` and
//! evolve for the same time keep identical complex widths.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{OverlapTable, StateLabel};

const UNIT_TOLERANCE: f64 = 1e-12;
const WIDTH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianPacket {
    pub center: Vec<f64>,
    pub momentum: Vec<f64>,
    pub sigma: f64,
    /// Imaginary part of `1/α`; zero for a packet at its waist.
    pub chirp: f64,
    /// Global phase θ.
    pub phase: f64,
}

impl GaussianPacket {
    pub fn new(center: Vec<f64>, momentum: Vec<f64>, sigma: f64) -> Result<Self> {
        let dim = center.len();
        if !(1..=3).contains(&dim) {
            return Err(Error::OutOfRange(format!("packet dimension {dim} not in 1..=3")));
        }
        if momentum.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: momentum.len() });
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::OutOfRange(format!("sigma must be positive, got {sigma}")));
        }
        if center.iter().chain(&momentum).any(|v| !v.is_finite()) {
            return Err(Error::OutOfRange("non-finite packet coordinate".into()));
        }
        Ok(GaussianPacket { center, momentum, sigma, chirp: 0.0, phase: 0.0 })
    }

    /// Packet at rest at `center`.
    pub fn at_rest(center: Vec<f64>, sigma: f64) -> Result<Self> {
        let dim = center.len();
        Self::new(center, vec![0.0; dim], sigma)
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Complex Gaussian exponent α.
    pub fn alpha(&self) -> C64 {
        C64::new(4.0 * self.sigma * self.sigma, self.chirp).inv()
    }

    /// Position spread of |ψ|², growing with the chirp.
    pub fn effective_sigma(&self) -> f64 {
        0.5 / self.alpha().re.sqrt()
    }

    /// One-dimensional factor of the wavefunction along `axis`, without the
    /// global phase.
    pub fn axis_factor(&self, axis: usize, x: f64) -> C64 {
        let alpha = self.alpha();
        let norm = (2.0 * alpha.re / PI).powf(0.25);
        let dx = x - self.center[axis];
        let exponent = -alpha * dx * dx + C64::new(0.0, self.momentum[axis] * dx);
        exponent.exp() * norm
    }

    /// ψ(x)
    pub fn amplitude(&self, x: &[f64]) -> C64 {
        debug_assert_eq!(x.len(), self.dim());
        x.iter()
            .enumerate()
            .fold(C64::from_polar(1.0, self.phase), |acc, (j, &xj)| acc * self.axis_factor(j, xj))
    }
}

fn same_dim(a: &GaussianPacket, b: &GaussianPacket) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

fn same_width(a: &GaussianPacket, b: &GaussianPacket) -> Result<()> {
    if (a.sigma - b.sigma).abs() > WIDTH_TOLERANCE * a.sigma.max(b.sigma) {
        return Err(Error::UnequalWidths { left: a.sigma, right: b.sigma });
    }
    Ok(())
}

/// Closed-form `<g1|g2>`.
pub fn overlap(g1: &GaussianPacket, g2: &GaussianPacket) -> Result<C64> {
    same_dim(g1, g2)?;
    same_width(g1, g2)?;
    let a1 = g1.alpha().conj();
    let a2 = g2.alpha();
    let a = a1 + a2;
    let norm = ((2.0 * g1.alpha().re / PI) * (2.0 * a2.re / PI)).powf(0.25);
    let gauss = (C64::new(PI, 0.0) / a).sqrt() * norm;
    let mut total = C64::from_polar(1.0, g2.phase - g1.phase);
    for j in 0..g1.dim() {
        // Origin shifted to the bra's center.
        let d = g2.center[j] - g1.center[j];
        let b = a2 * (2.0 * d) + C64::new(0.0, g2.momentum[j] - g1.momentum[j]);
        let e = -a2 * (d * d) - C64::new(0.0, g2.momentum[j] * d);
        total *= gauss * (b * b / (a * 4.0) + e).exp();
    }
    Ok(total)
}

/// Photon-recoil kick: multiplies the wavefunction by `exp(i k·x)`.
pub fn apply_recoil(g: &GaussianPacket, k: &[f64]) -> Result<GaussianPacket> {
    if k.len() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: k.len() });
    }
    let mut out = g.clone();
    for (j, kj) in k.iter().enumerate() {
        out.momentum[j] += kj;
        out.phase += kj * g.center[j];
    }
    Ok(out)
}

/// Free-particle evolution for time `t` of a particle of mass `mass`.
///
/// # Panics
/// If `mass` is not positive.
pub fn free_evolve(g: &GaussianPacket, t: f64, mass: f64) -> GaussianPacket {
    assert!(mass > 0.0, "mass must be positive");
    if t == 0.0 {
        return g.clone();
    }
    let alpha = g.alpha();
    let mut out = g.clone();
    out.chirp += 2.0 * t / mass;
    let ratio = (out.alpha() / alpha).sqrt();
    let p2: f64 = g.momentum.iter().map(|p| p * p).sum();
    out.phase += p2 * t / (2.0 * mass) + g.dim() as f64 * ratio.arg();
    for (c, p) in out.center.iter_mut().zip(&g.momentum) {
        *c += p * t / mass;
    }
    out
}

/// Geometry of the two-atom experiment for one emission direction Ω.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scene {
    pub packet_psi: GaussianPacket,
    pub packet_phi: GaussianPacket,
    /// Photon wavenumber, used for both the absorption and the emission kick.
    pub k_abs: f64,
    pub beam_axis: Vec<f64>,
    /// Emission direction Ω.
    pub omega_dir: Vec<f64>,
    pub mass: f64,
    /// Time between absorption and the start of emission.
    pub delay: f64,
}

impl Scene {
    /// Two packets at rest separated by `separation` along the first axis,
    /// symmetric about the origin, with unit mass and zero delay.
    pub fn separated(
        sigma: f64,
        separation: f64,
        k_abs: f64,
        beam_axis: Vec<f64>,
        omega_dir: Vec<f64>,
    ) -> Result<Self> {
        let dim = beam_axis.len();
        let mut left = vec![0.0; dim];
        let mut right = vec![0.0; dim];
        if dim > 0 {
            left[0] = -separation / 2.0;
            right[0] = separation / 2.0;
        }
        let scene = Scene {
            packet_psi: GaussianPacket::at_rest(left, sigma)?,
            packet_phi: GaussianPacket::at_rest(right, sigma)?,
            k_abs,
            beam_axis,
            omega_dir,
            mass: 1.0,
            delay: 0.0,
        };
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.packet_psi.dim();
        same_dim(&self.packet_psi, &self.packet_phi)?;
        same_width(&self.packet_psi, &self.packet_phi)?;
        for (name, v) in [("beam_axis", &self.beam_axis), ("omega_dir", &self.omega_dir)] {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm.is_nan() || (norm - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::InvalidScene(format!("{name} has norm {norm}, expected 1")));
            }
        }
        if !(self.k_abs >= 0.0 && self.k_abs.is_finite()) {
            return Err(Error::InvalidScene(format!("k_abs must be >= 0, got {}", self.k_abs)));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::InvalidScene(format!("mass must be > 0, got {}", self.mass)));
        }
        if !(self.delay >= 0.0 && self.delay.is_finite()) {
            return Err(Error::InvalidScene(format!("delay must be >= 0, got {}", self.delay)));
        }
        Ok(())
    }

    /// All ten labeled packets, in [`StateLabel::ALL`] order.
    pub fn labeled_packets(&self) -> Result<[GaussianPacket; StateLabel::COUNT]> {
        self.validate()?;
        let kick = |axis: &[f64], sign: f64| -> Vec<f64> {
            axis.iter().map(|a| sign * self.k_abs * a).collect()
        };
        let absorb = kick(&self.beam_axis, 1.0);
        let emit = kick(&self.omega_dir, -1.0);

        let psi = self.packet_psi.clone();
        let phi = self.packet_phi.clone();
        let psi_star = apply_recoil(&psi, &absorb)?;
        let phi_star = apply_recoil(&phi, &absorb)?;
        let psi_bar = free_evolve(&psi, self.delay, self.mass);
        let phi_bar = free_evolve(&phi, self.delay, self.mass);
        let psi_sp = free_evolve(&apply_recoil(&psi_star, &emit)?, self.delay, self.mass);
        let phi_sp = free_evolve(&apply_recoil(&phi_star, &emit)?, self.delay, self.mass);
        Ok([
            psi.clone(),
            phi.clone(),
            psi,
            phi,
            psi_star,
            phi_star,
            psi_bar,
            phi_bar,
            psi_sp,
            phi_sp,
        ])
    }
}

/// Fills an [`OverlapTable`] with the pairwise overlaps of the scene's ten
/// labeled packets.
pub fn build_overlap_table(scene: &Scene) -> Result<OverlapTable> {
    let packets = scene.labeled_packets()?;
    let mut table = OverlapTable::identity();
    for (i, a) in StateLabel::ALL.iter().enumerate() {
        for b in &StateLabel::ALL[i + 1..] {
            let value = overlap(&packets[a.index()], &packets[b.index()])?;
            table.set(*a, *b, value);
        }
    }
    Ok(table)
}

/// Rectangular integration box with a maximum node spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub spacing: f64,
}

/// Margin around each center, in effective widths.
pub const QUADRATURE_MARGIN: f64 = 8.0;
/// Largest admissible spacing, as a fraction of the narrowest effective width.
pub const QUADRATURE_SPACING: f64 = 1.0 / 16.0;

impl GridSpec {
    /// Smallest grid that satisfies the coverage and spacing requirements for
    /// the pair, with a little extra room.
    pub fn covering(g1: &GaussianPacket, g2: &GaussianPacket) -> Self {
        let wide = g1.effective_sigma().max(g2.effective_sigma());
        let narrow = g1.effective_sigma().min(g2.effective_sigma());
        let margin = (QUADRATURE_MARGIN + 2.0) * wide;
        let lower = g1.center.iter().zip(&g2.center).map(|(a, b)| a.min(*b) - margin).collect();
        let upper = g1.center.iter().zip(&g2.center).map(|(a, b)| a.max(*b) + margin).collect();
        GridSpec { lower, upper, spacing: narrow * QUADRATURE_SPACING * 0.8 }
    }
}

/// Trapezoidal-rule `<g1|g2>` evaluated from the wavefunctions themselves.
/// Test oracle for [`overlap`]; the integrand factorizes over axes, so each
/// axis is integrated separately.
pub fn overlap_quadrature(g1: &GaussianPacket, g2: &GaussianPacket, grid: &GridSpec) -> Result<C64> {
    same_dim(g1, g2)?;
    let dim = g1.dim();
    if grid.lower.len() != dim || grid.upper.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: grid.lower.len() });
    }
    let wide = g1.effective_sigma().max(g2.effective_sigma());
    let narrow = g1.effective_sigma().min(g2.effective_sigma());
    if !(grid.spacing > 0.0 && grid.spacing <= narrow * QUADRATURE_SPACING) {
        return Err(Error::GridTooCoarse(format!(
            "spacing {} exceeds {}",
            grid.spacing,
            narrow * QUADRATURE_SPACING
        )));
    }
    let mut total = C64::from_polar(1.0, g2.phase - g1.phase);
    for j in 0..dim {
        let lo_need = g1.center[j].min(g2.center[j]) - QUADRATURE_MARGIN * wide;
        let hi_need = g1.center[j].max(g2.center[j]) + QUADRATURE_MARGIN * wide;
        if grid.lower[j] > lo_need || grid.upper[j] < hi_need {
            return Err(Error::GridTooCoarse(format!(
                "axis {j}: [{}, {}] does not cover [{lo_need}, {hi_need}]",
                grid.lower[j], grid.upper[j]
            )));
        }
        let n = ((grid.upper[j] - grid.lower[j]) / grid.spacing).ceil() as usize;
        let h = (grid.upper[j] - grid.lower[j]) / n as f64;
        let mut sum = C64::new(0.0, 0.0);
        for i in 0..=n {
            let x = grid.lower[j] + i as f64 * h;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            sum += g1.axis_factor(j, x).conj() * g2.axis_factor(j, x) * w;
        }
        total *= sum * h;
    }
    Ok(total)
}
