//! The one-parameter family of overlap tables behind the reference emission
//! figure, plus sweeps over its parameter `s = <psi|phi>`.

use serde::Serialize;

use crate::emission::{
    emission_curve, mixture_curve, uniform_times, EmissionCurve, MixtureExchange, RadiativeCoupling, RateSet,
};
use crate::error::{Error, Result};
use crate::state::{ExchangeSymmetry, NormalizationSet, OverlapTable, StateLabel};

/// Self-overlap of a state with its recoiled descendant.
pub const RECOIL_SELF_OVERLAP: f64 = 0.9;

/// `<psi*|phi*> = (0.9 + 0.1 s) s`
pub fn absorbed_cross(s: f64) -> f64 {
    (0.9 + 0.1 * s) * s
}

/// `<psi_sp|phi> = <phi_sp|psi> = (0.8 + 0.1 s) s`
pub fn recoiled_cross(s: f64) -> f64 {
    (0.8 + 0.1 * s) * s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig2Params {
    pub s: f64,
    pub gamma0: f64,
    pub t_max: f64,
    pub steps: usize,
}

impl Default for Fig2Params {
    fn default() -> Self {
        Fig2Params { s: 0.7, gamma0: 1.0, t_max: 5.0, steps: 200 }
    }
}

impl Fig2Params {
    /// `s = 1` passes here; the fermion normalizations reject it downstream
    /// with a zero-norm error naming the coefficient.
    pub fn validate(&self) -> Result<()> {
        check_s(self.s)?;
        RadiativeCoupling::new(self.gamma0)?;
        uniform_times(self.t_max, self.steps)?;
        Ok(())
    }
}

fn check_s(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange(format!("s must lie in [0, 1], got {s}")));
    }
    Ok(())
}

/// Overlap table for free parameter `s`, with zero delay (`psi_bar = psi`,
/// `phi_bar = phi`) and the initial states equal to the non-absorbing ones.
///
/// Entries the kernels never read (`<psi*|psi>`, `<psi*|phi>`,
/// `<psi*|psi_sp>` and their mirrors) reuse the recoil values by analogy.
pub fn fig2_table(s: f64) -> Result<OverlapTable> {
    use StateLabel::*;
    check_s(s)?;
    let same = RECOIL_SELF_OVERLAP;
    let absorbed = absorbed_cross(s);
    let emitted = 0.9 * absorbed;
    let recoiled = recoiled_cross(s);

    // Each family member has a "kind": plain (psi0, psi, psi_bar), absorbed
    // (psi*), or emitted (psi_sp).
    #[derive(Clone, Copy, PartialEq)]
    enum Kind {
        Plain,
        Absorbed,
        Emitted,
    }
    let kind = |l: StateLabel| match l {
        Psi0 | Phi0 | Psi | Phi | PsiBar | PhiBar => Kind::Plain,
        PsiStar | PhiStar => Kind::Absorbed,
        PsiSp | PhiSp => Kind::Emitted,
    };
    let psi_family = |l: StateLabel| matches!(l, Psi0 | Psi | PsiStar | PsiBar | PsiSp);

    let mut table = OverlapTable::identity();
    for (i, &a) in StateLabel::ALL.iter().enumerate() {
        for &b in &StateLabel::ALL[i + 1..] {
            let same_family = psi_family(a) == psi_family(b);
            let value = match (same_family, kind(a), kind(b)) {
                (true, ka, kb) if ka == kb => 1.0,
                (true, _, _) => same,
                (false, Kind::Plain, Kind::Plain) => s,
                (false, Kind::Absorbed, Kind::Absorbed) => absorbed,
                (false, Kind::Emitted, Kind::Emitted) => emitted,
                (false, _, _) => recoiled,
            };
            table.set_real(a, b, value);
        }
    }
    Ok(table)
}

/// The curves of one run: both superposition curves and the mixture
/// curve(s) selected by the exchange mode, in output column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSet {
    pub mode: MixtureExchange,
    pub boson: RateSet,
    pub fermion: RateSet,
    pub normalizations_boson: NormalizationSet,
    pub normalizations_fermion: NormalizationSet,
    pub curves: Vec<EmissionCurve>,
}

impl CurveSet {
    pub fn curve(&self, label: &str) -> Option<&EmissionCurve> {
        self.curves.iter().find(|c| c.label == label)
    }
}

/// Column labels emitted for each exchange mode.
pub fn curve_labels(mode: MixtureExchange) -> &'static [&'static str] {
    match mode {
        MixtureExchange::On => &["boson_sup", "fermion_sup", "mix_boson", "mix_fermion", "mix_noexchange"],
        MixtureExchange::Off => &["boson_sup", "fermion_sup", "mix_noexchange"],
    }
}

/// Curves for both hypotheses from an arbitrary overlap table.
pub fn hypothesis_curves(
    table: &OverlapTable,
    coupling: RadiativeCoupling,
    times: &[f64],
    mode: MixtureExchange,
) -> Result<CurveSet> {
    let boson = RateSet::compute(table, ExchangeSymmetry::Boson, coupling, mode)?;
    let fermion = RateSet::compute(table, ExchangeSymmetry::Fermion, coupling, mode)?;
    let noexchange = RateSet::compute(table, ExchangeSymmetry::Boson, coupling, MixtureExchange::Off)?;

    let mut curves = vec![
        emission_curve(boson.gamma_sup, times)?.with_label("boson_sup"),
        emission_curve(fermion.gamma_sup, times)?.with_label("fermion_sup"),
    ];
    if mode == MixtureExchange::On {
        curves.push(mixture_curve(boson.gamma_mix_psi, boson.gamma_mix_phi, times)?.with_label("mix_boson"));
        curves.push(mixture_curve(fermion.gamma_mix_psi, fermion.gamma_mix_phi, times)?.with_label("mix_fermion"));
    }
    curves.push(
        mixture_curve(noexchange.gamma_mix_psi, noexchange.gamma_mix_phi, times)?.with_label("mix_noexchange"),
    );
    Ok(CurveSet {
        mode,
        boson,
        fermion,
        normalizations_boson: NormalizationSet::compute(table, ExchangeSymmetry::Boson)?,
        normalizations_fermion: NormalizationSet::compute(table, ExchangeSymmetry::Fermion)?,
        curves,
    })
}

pub fn fig2_curves(params: &Fig2Params, mode: MixtureExchange) -> Result<CurveSet> {
    params.validate()?;
    let table = fig2_table(params.s)?;
    let times = uniform_times(params.t_max, params.steps)?;
    hypothesis_curves(&table, RadiativeCoupling::new(params.gamma0)?, &times, mode)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub s: f64,
    pub boson: RateSet,
    pub fermion: RateSet,
}

/// Rates on `n_points` evenly spaced values of `s` in `[s_from, s_to]`. A
/// degenerate range yields a single row.
pub fn scan(
    s_from: f64,
    s_to: f64,
    n_points: usize,
    coupling: RadiativeCoupling,
    mode: MixtureExchange,
) -> Result<Vec<ScanRow>> {
    if !(0.0 <= s_from && s_from <= s_to && s_to < 1.0) {
        return Err(Error::OutOfRange(format!("need 0 <= s_from <= s_to < 1, got [{s_from}, {s_to}]")));
    }
    if n_points == 0 {
        return Err(Error::OutOfRange("n_points must be >= 1".into()));
    }
    let points: Vec<f64> = if n_points == 1 || s_from == s_to {
        vec![s_from]
    } else {
        let last = (n_points - 1) as f64;
        (0..n_points).map(|i| s_from + (s_to - s_from) * i as f64 / last).collect()
    };
    points
        .into_iter()
        .map(|s| {
            let table = fig2_table(s)?;
            Ok(ScanRow {
                s,
                boson: RateSet::compute(&table, ExchangeSymmetry::Boson, coupling, mode)?,
                fermion: RateSet::compute(&table, ExchangeSymmetry::Fermion, coupling, mode)?,
            })
        })
        .collect()
}
