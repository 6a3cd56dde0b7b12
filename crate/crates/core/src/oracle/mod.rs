//! Brute-force ground truth for the closed-form coefficients.
//!
//! The states of the absorption/emission chain are written out term by
//! term, the dipole action is applied literally, and every norm and kernel
//! is recomputed as a Gram-contracted inner product. Nothing here calls the
//! kernel formulas in [`crate::emission`]; only the normalization constants
//! are borrowed, and [`build_state`] followed by [`inner`] checks those.

mod campaign;
mod tensor;

pub use campaign::{run_campaign, CampaignConfig, CampaignReport, CheckSummary, Discrepancy};
pub use tensor::{
    apply_dipole, expansion, inner, Contribution, GramContext, Level, Signature, TensorState, TensorTerm,
    PRUNE_BELOW,
};

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::Result;
use crate::state::{ExchangeSymmetry, NormalizationSet, OverlapTable, StateLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainState {
    /// Both atoms in the ground level, photon not yet absorbed.
    Initial,
    /// The ψ-atom absorbed the photon.
    PsiAbs,
    /// The φ-atom absorbed the photon.
    PhiAbs,
    /// Coherent sum of the two absorption alternatives.
    AbsSuperposition,
    /// Emission by the ψ-atom.
    PsiOmega,
    /// Emission by the φ-atom.
    PhiOmega,
    /// Coherent sum of the two emission alternatives.
    OmegaSp,
}

impl ChainState {
    pub const ALL: [ChainState; 7] = [
        ChainState::Initial,
        ChainState::PsiAbs,
        ChainState::PhiAbs,
        ChainState::AbsSuperposition,
        ChainState::PsiOmega,
        ChainState::PhiOmega,
        ChainState::OmegaSp,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Superposition,
    MixPsi,
    MixPhi,
}

impl KernelKind {
    pub const ALL: [KernelKind; 3] = [KernelKind::Superposition, KernelKind::MixPsi, KernelKind::MixPhi];
}

/// `|a,ea>_1 |b,eb>_2 ± |b,eb>_1 |a,ea>_2`, unnormalized.
fn symmetrized(a: StateLabel, ea: Level, b: StateLabel, eb: Level, photons: u8, sym: ExchangeSymmetry) -> TensorState {
    TensorState::ket(Signature::new(a, ea, b, eb, photons))
        + TensorState::ket(Signature::new(b, eb, a, ea, photons)) * sym.sign()
}

/// The explicit normalized state of the chain.
pub fn build_state(which: ChainState, table: &OverlapTable, sym: ExchangeSymmetry) -> Result<TensorState> {
    use Level::*;
    use StateLabel::*;
    let n = NormalizationSet::compute(table, sym)?;
    let psi_abs = || symmetrized(PsiStar, Excited, Phi, Ground, 0, sym) * FRAC_1_SQRT_2;
    let phi_abs = || symmetrized(Psi, Ground, PhiStar, Excited, 0, sym) * FRAC_1_SQRT_2;
    let psi_omega = || symmetrized(PsiSp, Ground, PhiBar, Ground, 1, sym) * n.n_psi_omega;
    let phi_omega = || symmetrized(PsiBar, Ground, PhiSp, Ground, 1, sym) * n.n_phi_omega;
    Ok(match which {
        // The photon to be absorbed is still in the field.
        ChainState::Initial => symmetrized(Psi0, Ground, Phi0, Ground, 1, sym) * n.n0,
        ChainState::PsiAbs => psi_abs(),
        ChainState::PhiAbs => phi_abs(),
        ChainState::AbsSuperposition => (psi_abs() + phi_abs()) * n.n_abs,
        ChainState::PsiOmega => psi_omega(),
        ChainState::PhiOmega => phi_omega(),
        ChainState::OmegaSp => (psi_omega() + phi_omega()) * n.n_omega_sp,
    })
}

/// The (bra, dipole-evolved ket) pair whose overlap is the kernel.
pub fn kernel_states(
    which: KernelKind,
    table: &OverlapTable,
    sym: ExchangeSymmetry,
) -> Result<(TensorState, TensorState)> {
    let (bra, ket) = match which {
        KernelKind::Superposition => (ChainState::OmegaSp, ChainState::AbsSuperposition),
        KernelKind::MixPsi => (ChainState::PsiOmega, ChainState::PsiAbs),
        KernelKind::MixPhi => (ChainState::PhiOmega, ChainState::PhiAbs),
    };
    let bra = build_state(bra, table, sym)?;
    let ket = apply_dipole(&build_state(ket, table, sym)?)?;
    Ok((bra, ket))
}

/// `<final| (dipole action) |absorbed>` computed term by term.
pub fn kernel_bruteforce(which: KernelKind, table: &OverlapTable, sym: ExchangeSymmetry) -> Result<C64> {
    let (bra, ket) = kernel_states(which, table, sym)?;
    Ok(inner(&bra, &ket, &GramContext::new(table)))
}

/// Parameters of the random Gram-table generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomTableSpec {
    /// Dimension of the complex space the ten vectors live in.
    pub ambient_dim: usize,
    /// Weight of a vector shared by all ten states, in `[0, 1)`; larger
    /// values give larger overlaps.
    pub coherence: f64,
}

impl Default for RandomTableSpec {
    fn default() -> Self {
        RandomTableSpec { ambient_dim: 12, coherence: 0.6 }
    }
}

/// Gram table of ten random unit vectors; positive semidefinite by
/// construction and deterministic per seed.
pub fn random_psd_table(seed: u64, spec: RandomTableSpec) -> OverlapTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<C64> {
        (0..spec.ambient_dim)
            .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
            .collect()
    };
    let unit = |v: Vec<C64>| -> Vec<C64> {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.into_iter().map(|z| z / norm).collect()
    };
    let shared = unit(draw(&mut rng));
    let vectors: Vec<Vec<C64>> = (0..StateLabel::COUNT)
        .map(|_| {
            let noise = unit(draw(&mut rng));
            unit(
                shared
                    .iter()
                    .zip(noise)
                    .map(|(s, n)| s * spec.coherence + n * (1.0 - spec.coherence))
                    .collect(),
            )
        })
        .collect();

    let mut table = OverlapTable::identity();
    for (i, a) in StateLabel::ALL.iter().enumerate() {
        for b in &StateLabel::ALL[i + 1..] {
            let value: C64 = vectors[a.index()]
                .iter()
                .zip(&vectors[b.index()])
                .map(|(x, y)| x.conj() * y)
                .sum();
            table.set(*a, *b, value);
        }
    }
    table
}
