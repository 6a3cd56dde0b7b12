//! Spontaneous-emission patterns of two identical atoms that share a single
//! absorbed photon.
//!
//! Two hypotheses are compared: the absorbed state stays a coherent
//! two-atom superposition until emission, or it has already decayed into an
//! equal-weight mixture of its two components. Both are reduced to
//! closed-form emission kernels over an [`OverlapTable`] of one-particle
//! inner products, and [`oracle`] recomputes those kernels by brute force.

pub mod emission;
pub mod error;
pub mod oracle;
pub mod scenario;
pub mod state;
pub mod wavepacket;

pub use emission::{
    compare, distinguishable_curves, emission_curve, kernel_mix_phi, kernel_mix_psi, kernel_superposition,
    mixture_curve, rate, uniform_times, ComparisonReport, EmissionCurve, MixtureExchange, RadiativeCoupling,
    RateSet,
};
pub use error::{Error, Result};
pub use scenario::{fig2_curves, fig2_table, hypothesis_curves, scan, CurveSet, Fig2Params, ScanRow};
pub use state::{
    n0, n_abs, n_omega_sp, n_phi_omega, n_psi_omega, validate, ExchangeSymmetry, NormalizationSet, OverlapTable,
    StateLabel, ValidationReport,
};
pub use wavepacket::{
    apply_recoil, build_overlap_table, free_evolve, overlap, overlap_quadrature, GaussianPacket, GridSpec, Scene,
};
