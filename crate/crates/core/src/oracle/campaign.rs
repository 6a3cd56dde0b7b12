use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    build_state, expansion, inner, kernel_states, random_psd_table, ChainState, Contribution, GramContext,
    KernelKind, RandomTableSpec,
};
use crate::emission::{kernel_mix_phi, kernel_mix_psi, kernel_superposition, MixtureExchange};
use crate::state::{ExchangeSymmetry, OverlapTable};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub first_seed: u64,
    pub seeds: u64,
    /// Relative tolerance for every check.
    pub tolerance: f64,
    pub tables: RandomTableSpec,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig { first_seed: 0, seeds: 100, tolerance: 1e-12, tables: RandomTableSpec::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub seed: u64,
    pub symmetry: ExchangeSymmetry,
    pub check: String,
    pub closed_form: Option<C64>,
    pub bruteforce: Option<C64>,
    pub residual: f64,
    pub error: Option<String>,
    /// Term-by-term expansion of the brute-force value.
    pub expansion: Vec<Contribution>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub checks: Vec<CheckSummary>,
    pub discrepancies: Vec<Discrepancy>,
    pub passed: bool,
}

impl CampaignReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }
}

struct Outcome {
    check: String,
    residual: f64,
    failure: Option<Discrepancy>,
}

fn relative(a: C64, b: C64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn norm_check_name(which: ChainState) -> String {
    let name = match which {
        ChainState::Initial => "N0",
        ChainState::PsiAbs => "psi_abs",
        ChainState::PhiAbs => "phi_abs",
        ChainState::AbsSuperposition => "N_abs",
        ChainState::PsiOmega => "N_psi_omega",
        ChainState::PhiOmega => "N_phi_omega",
        ChainState::OmegaSp => "N_omega_sp",
    };
    format!("norm:{name}")
}

fn kernel_check_name(which: KernelKind) -> String {
    let name = match which {
        KernelKind::Superposition => "superposition",
        KernelKind::MixPsi => "mix_psi",
        KernelKind::MixPhi => "mix_phi",
    };
    format!("kernel:{name}")
}

fn closed_form(which: KernelKind, table: &OverlapTable, sym: ExchangeSymmetry) -> crate::Result<C64> {
    match which {
        KernelKind::Superposition => kernel_superposition(table, sym),
        KernelKind::MixPsi => kernel_mix_psi(table, sym, MixtureExchange::On),
        KernelKind::MixPhi => kernel_mix_phi(table, sym, MixtureExchange::On),
    }
}

fn seed_outcomes(seed: u64, config: &CampaignConfig) -> Vec<Outcome> {
    let table = random_psd_table(seed, config.tables);
    let ctx = GramContext::new(&table);
    let mut out = Vec::new();
    let failed = |check: String, sym, residual, closed, brute, error: Option<String>, exp| Outcome {
        check: check.clone(),
        residual,
        failure: Some(Discrepancy {
            seed,
            symmetry: sym,
            check,
            closed_form: closed,
            bruteforce: brute,
            residual,
            error,
            expansion: exp,
        }),
    };

    for sym in ExchangeSymmetry::BOTH {
        for which in ChainState::ALL {
            let check = norm_check_name(which);
            match build_state(which, &table, sym) {
                Ok(state) => {
                    let value = inner(&state, &state, &ctx);
                    let residual = relative(value, C64::new(1.0, 0.0));
                    if residual > config.tolerance {
                        let exp = expansion(&state, &state, &ctx);
                        out.push(failed(check, sym, residual, Some(C64::new(1.0, 0.0)), Some(value), None, exp));
                    } else {
                        out.push(Outcome { check, residual, failure: None });
                    }
                }
                Err(e) => out.push(failed(check, sym, f64::INFINITY, None, None, Some(e.to_string()), Vec::new())),
            }
        }
        for which in KernelKind::ALL {
            let check = kernel_check_name(which);
            let states = kernel_states(which, &table, sym);
            let closed = closed_form(which, &table, sym);
            match (states, closed) {
                (Ok((bra, ket)), Ok(closed)) => {
                    let brute = inner(&bra, &ket, &ctx);
                    let residual = relative(closed, brute);
                    if residual > config.tolerance {
                        let exp = expansion(&bra, &ket, &ctx);
                        out.push(failed(check, sym, residual, Some(closed), Some(brute), None, exp));
                    } else {
                        out.push(Outcome { check, residual, failure: None });
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    out.push(failed(check, sym, f64::INFINITY, None, None, Some(e.to_string()), Vec::new()))
                }
            }
        }
    }
    out
}

/// Compares every closed-form normalization and kernel with its brute-force
/// counterpart over a range of seeded random Gram tables, both statistics.
pub fn run_campaign(config: &CampaignConfig) -> CampaignReport {
    let per_seed: Vec<Vec<Outcome>> = (config.first_seed..config.first_seed + config.seeds)
        .into_par_iter()
        .map(|seed| seed_outcomes(seed, config))
        .collect();

    let mut checks: Vec<CheckSummary> = Vec::new();
    let mut discrepancies = Vec::new();
    for outcome in per_seed.into_iter().flatten() {
        let summary = match checks.iter_mut().position(|c| c.name == outcome.check) {
            Some(i) => &mut checks[i],
            None => {
                checks.push(CheckSummary { name: outcome.check.clone(), cases: 0, max_residual: 0.0, failures: 0 });
                checks.last_mut().unwrap()
            }
        };
        summary.cases += 1;
        summary.max_residual = summary.max_residual.max(outcome.residual);
        if let Some(d) = outcome.failure {
            summary.failures += 1;
            discrepancies.push(d);
        }
    }
    CampaignReport { config: *config, passed: discrepancies.is_empty(), checks, discrepancies }
}
