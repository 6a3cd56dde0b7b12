//! Emission kernels, golden-rule rates and the emitted-photon curves of the
//! two hypotheses.
//!
//! A kernel is the first-order emission amplitude with the common prefactor
//! `-itD/ħ` stripped off. Rates follow as `Γ = Γ₀ |K|²`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{ExchangeSymmetry, NormalizationSet, OverlapTable, StateLabel};

/// Base rate Γ₀ = |D|²/ħ². Dipole element, polarization and ħ never appear
/// separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiativeCoupling {
    gamma0: f64,
}

impl Default for RadiativeCoupling {
    fn default() -> Self {
        RadiativeCoupling { gamma0: 1.0 }
    }
}

impl RadiativeCoupling {
    pub fn new(gamma0: f64) -> Result<Self> {
        if !(gamma0 > 0.0 && gamma0.is_finite()) {
            return Err(Error::OutOfRange(format!("gamma0 must be positive, got {gamma0}")));
        }
        Ok(RadiativeCoupling { gamma0 })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }
}

/// Whether the mixture branches keep the exchange cross-term of their
/// symmetrized states.
///
/// `On` evaluates the single-branch amplitudes exactly as the symmetrized
/// states give them, which makes the mixture rates statistics dependent.
/// `Off` drops the cross-term and every branch decays at Γ₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixtureExchange {
    #[default]
    On,
    Off,
}

impl std::str::FromStr for MixtureExchange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "on" => Ok(MixtureExchange::On),
            "off" => Ok(MixtureExchange::Off),
            other => Err(Error::OutOfRange(format!("mixture exchange must be on|off, got {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateSet {
    pub gamma_sup: f64,
    pub gamma_mix_psi: f64,
    pub gamma_mix_phi: f64,
}

impl RateSet {
    pub fn compute(
        table: &OverlapTable,
        sym: ExchangeSymmetry,
        coupling: RadiativeCoupling,
        mode: MixtureExchange,
    ) -> Result<Self> {
        Ok(RateSet {
            gamma_sup: rate(kernel_superposition(table, sym)?, coupling),
            gamma_mix_psi: rate(kernel_mix_psi(table, sym, mode)?, coupling),
            gamma_mix_phi: rate(kernel_mix_phi(table, sym, mode)?, coupling),
        })
    }
}

/// Emission kernel of the persistent two-atom superposition: both emission
/// alternatives are indistinguishable, so their amplitudes add.
pub fn kernel_superposition(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<C64> {
    use StateLabel::*;
    let n = NormalizationSet::compute(table, sym)?;
    let s = sym.sign();
    let o = |a, b| table.get(a, b);

    let psi_group = C64::new(2.0, 0.0)
        + o(PsiSp, PsiBar) * o(PhiBar, PhiSp) * 2.0
        + s * 2.0 * o(PsiSp, PhiBar).norm_sqr()
        + o(PsiSp, PhiSp) * o(PhiBar, PsiBar) * (2.0 * s);
    let phi_group = C64::new(2.0, 0.0)
        + o(PsiBar, PsiSp) * o(PhiSp, PhiBar) * 2.0
        + s * 2.0 * o(PhiSp, PsiBar).norm_sqr()
        + o(PhiSp, PsiSp) * o(PsiBar, PhiBar) * (2.0 * s);

    let prefactor = n.n_abs * n.n_omega_sp * FRAC_1_SQRT_2;
    Ok((psi_group * n.n_psi_omega + phi_group * n.n_phi_omega) * prefactor)
}

/// Kernel of the mixture component in which the ψ-atom is excited.
pub fn kernel_mix_psi(table: &OverlapTable, sym: ExchangeSymmetry, mode: MixtureExchange) -> Result<C64> {
    mix_kernel(table, sym, mode, StateLabel::PsiSp, StateLabel::PhiBar)
}

/// Kernel of the mixture component in which the φ-atom is excited.
pub fn kernel_mix_phi(table: &OverlapTable, sym: ExchangeSymmetry, mode: MixtureExchange) -> Result<C64> {
    mix_kernel(table, sym, mode, StateLabel::PhiSp, StateLabel::PsiBar)
}

fn mix_kernel(
    table: &OverlapTable,
    sym: ExchangeSymmetry,
    mode: MixtureExchange,
    emitted: StateLabel,
    spectator: StateLabel,
) -> Result<C64> {
    table.check()?;
    match mode {
        MixtureExchange::Off => Ok(C64::new(1.0, 0.0)),
        MixtureExchange::On => {
            let n = if emitted == StateLabel::PsiSp {
                crate::state::n_psi_omega(table, sym)?
            } else {
                crate::state::n_phi_omega(table, sym)?
            };
            let o2 = table.get(emitted, spectator).norm_sqr();
            Ok(C64::new(n * FRAC_1_SQRT_2 * (2.0 + sym.sign() * 2.0 * o2), 0.0))
        }
    }
}

/// Golden-rule rate `Γ₀ |K|²`.
pub fn rate(kernel: C64, coupling: RadiativeCoupling) -> f64 {
    coupling.gamma0 * kernel.norm_sqr()
}

/// Sampled fraction `n_emi(t)/n₀` of emitted photons.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmissionCurve {
    pub label: String,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl EmissionCurve {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// `steps` evenly spaced times on `[0, t_max]`.
pub fn uniform_times(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidTimeGrid(format!("need at least 2 steps, got {steps}")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidTimeGrid(format!("t_max must be positive, got {t_max}")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| t_max * i as f64 / last).collect())
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidTimeGrid("empty".into()));
    }
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::InvalidTimeGrid("times must be finite and nonnegative".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidTimeGrid("times must be strictly ascending".into()));
    }
    Ok(())
}

fn check_rate(gamma: f64) -> Result<()> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::OutOfRange(format!("rate must be finite and >= 0, got {gamma}")));
    }
    Ok(())
}

#[inline]
fn emitted_fraction(gamma: f64, t: f64) -> f64 {
    -(-gamma * t).exp_m1()
}

/// `1 - exp(-Γt)`
pub fn emission_curve(gamma: f64, times: &[f64]) -> Result<EmissionCurve> {
    check_rate(gamma)?;
    check_times(times)?;
    Ok(EmissionCurve {
        label: String::new(),
        times: times.to_vec(),
        values: times.iter().map(|&t| emitted_fraction(gamma, t)).collect(),
    })
}

/// Equal-weight mixture: `1 - ½exp(-Γ_ψ t) - ½exp(-Γ_φ t)`, evaluated as the
/// mean of the two single-rate curves.
pub fn mixture_curve(gamma_psi: f64, gamma_phi: f64, times: &[f64]) -> Result<EmissionCurve> {
    let a = emission_curve(gamma_psi, times)?;
    let b = emission_curve(gamma_phi, times)?;
    Ok(mean_curve(&a, &b))
}

fn mean_curve(a: &EmissionCurve, b: &EmissionCurve) -> EmissionCurve {
    EmissionCurve {
        label: String::new(),
        times: a.times.clone(),
        values: a.values.iter().zip(&b.values).map(|(x, y)| 0.5 * (x + y)).collect(),
    }
}

/// Emission patterns for distinguishable atoms: the two alternatives are
/// told apart by their frequency, so probabilities add instead of
/// amplitudes. Returns `(superposition, mixture)`.
///
/// Without exchange, each alternative's amplitude is the product of the
/// self-overlaps of the emitting and the spectator atom.
pub fn distinguishable_curves(
    table: &OverlapTable,
    coupling: RadiativeCoupling,
    times: &[f64],
) -> Result<(EmissionCurve, EmissionCurve)> {
    use StateLabel::*;
    table.check()?;
    let kernel_psi = table.get(PsiSp, PsiSp) * table.get(PhiBar, PhiBar);
    let kernel_phi = table.get(PsiBar, PsiBar) * table.get(PhiSp, PhiSp);
    let gamma_psi = rate(kernel_psi, coupling);
    let gamma_phi = rate(kernel_phi, coupling);

    let curve_psi = emission_curve(gamma_psi, times)?;
    let curve_phi = emission_curve(gamma_phi, times)?;
    let superposition = mean_curve(&curve_psi, &curve_phi).with_label("distinguishable_sup");
    let mixture = mixture_curve(gamma_psi, gamma_phi, times)?.with_label("distinguishable_mix");
    Ok((superposition, mixture))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDifference {
    pub first: String,
    pub second: String,
    pub max_abs_difference: f64,
    pub time_of_max: f64,
    /// Trapezoidal integral of `|first - second|` over the grid.
    pub integrated_abs_difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub pairs: Vec<PairDifference>,
}

impl ComparisonReport {
    pub fn pair(&self, first: &str, second: &str) -> Option<&PairDifference> {
        self.pairs
            .iter()
            .find(|p| (p.first == first && p.second == second) || (p.first == second && p.second == first))
    }
}

/// Pairwise differences between curves sampled on a common grid.
pub fn compare(curves: &[EmissionCurve]) -> Result<ComparisonReport> {
    if let Some(first) = curves.first() {
        if curves.iter().any(|c| c.times != first.times || c.values.len() != first.times.len()) {
            return Err(Error::GridMismatch);
        }
    }
    let mut pairs = Vec::new();
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            let diff: Vec<f64> = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).collect();
            let (idx, max) = diff
                .iter()
                .copied()
                .enumerate()
                .fold((0, 0.0), |best, (k, d)| if d > best.1 { (k, d) } else { best });
            let integrated = a
                .times
                .windows(2)
                .zip(diff.windows(2))
                .map(|(t, d)| 0.5 * (t[1] - t[0]) * (d[0] + d[1]))
                .sum();
            pairs.push(PairDifference {
                first: a.label.clone(),
                second: b.label.clone(),
                max_abs_difference: max,
                time_of_max: a.times.get(idx).copied().unwrap_or(0.0),
                integrated_abs_difference: integrated,
            });
        }
    }
    Ok(ComparisonReport { pairs })
}
