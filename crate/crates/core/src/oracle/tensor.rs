//! Sparse two-atom kets: CM label ⊗ electronic level per atom, times a
//! photon occupation number for the emission mode.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{OverlapTable, StateLabel};

/// Coefficients smaller than this are dropped on canonicalization.
pub const PRUNE_BELOW: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Level {
    Ground,
    Excited,
}

/// Everything about a product ket except its coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signature {
    pub cm1: StateLabel,
    pub cm2: StateLabel,
    pub el1: Level,
    pub el2: Level,
    /// Photon number in the postselected emission mode, 0 or 1.
    pub photons: u8,
}

impl Signature {
    pub fn new(cm1: StateLabel, el1: Level, cm2: StateLabel, el2: Level, photons: u8) -> Self {
        debug_assert!(photons <= 1);
        Signature { cm1, cm2, el1, el2, photons }
    }

    /// Atom 1 and atom 2 exchange places.
    pub fn swapped(self) -> Self {
        Signature { cm1: self.cm2, cm2: self.cm1, el1: self.el2, el2: self.el1, photons: self.photons }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TensorTerm {
    pub signature: Signature,
    pub coeff: C64,
}

/// Linear combination of product kets, one term per signature.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TensorState {
    terms: Vec<TensorTerm>,
}

impl TensorState {
    pub fn zero() -> Self {
        TensorState::default()
    }

    pub fn ket(signature: Signature) -> Self {
        TensorState { terms: vec![TensorTerm { signature, coeff: C64::new(1.0, 0.0) }] }
    }

    /// Merges duplicate signatures and prunes vanishing coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = TensorTerm>) -> Self {
        let mut merged: BTreeMap<Signature, C64> = BTreeMap::new();
        for t in terms {
            *merged.entry(t.signature).or_insert(C64::new(0.0, 0.0)) += t.coeff;
        }
        TensorState {
            terms: merged
                .into_iter()
                .filter(|(_, c)| c.norm() >= PRUNE_BELOW)
                .map(|(signature, coeff)| TensorTerm { signature, coeff })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[TensorTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Atom labels exchanged in every term.
    pub fn swapped(&self) -> Self {
        TensorState::from_terms(self.terms.iter().map(|t| TensorTerm { signature: t.signature.swapped(), coeff: t.coeff }))
    }
}

impl Add for TensorState {
    type Output = TensorState;

    fn add(self, rhs: TensorState) -> TensorState {
        TensorState::from_terms(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Mul<C64> for TensorState {
    type Output = TensorState;

    fn mul(self, rhs: C64) -> TensorState {
        TensorState::from_terms(self.terms.into_iter().map(|t| TensorTerm { coeff: t.coeff * rhs, ..t }))
    }
}

impl Mul<f64> for TensorState {
    type Output = TensorState;

    fn mul(self, rhs: f64) -> TensorState {
        self * C64::new(rhs, 0.0)
    }
}

/// Inner products of all sectors. Electronic levels and photon numbers are
/// orthonormal; the CM sector comes from the overlap table.
#[derive(Debug, Clone, Copy)]
pub struct GramContext<'a> {
    pub table: &'a OverlapTable,
}

impl<'a> GramContext<'a> {
    pub fn new(table: &'a OverlapTable) -> Self {
        GramContext { table }
    }

    /// `<a|b>` for two product kets.
    pub fn product(&self, a: &Signature, b: &Signature) -> C64 {
        if a.el1 != b.el1 || a.el2 != b.el2 || a.photons != b.photons {
            return C64::new(0.0, 0.0);
        }
        self.table.get(a.cm1, b.cm1) * self.table.get(a.cm2, b.cm2)
    }
}

/// One nonzero term of an inner-product expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Contribution {
    pub bra: Signature,
    pub ket: Signature,
    pub value: C64,
}

/// Every nonzero `conj(a_i) b_j <i|j>` of `<a|b>`.
pub fn expansion(a: &TensorState, b: &TensorState, ctx: &GramContext<'_>) -> Vec<Contribution> {
    let mut out = Vec::new();
    for ta in &a.terms {
        for tb in &b.terms {
            let value = ta.coeff.conj() * tb.coeff * ctx.product(&ta.signature, &tb.signature);
            if value != C64::new(0.0, 0.0) {
                out.push(Contribution { bra: ta.signature, ket: tb.signature, value });
            }
        }
    }
    out
}

/// Sesquilinear `<a|b>`, antilinear in `a`.
pub fn inner(a: &TensorState, b: &TensorState, ctx: &GramContext<'_>) -> C64 {
    a.terms
        .iter()
        .flat_map(|ta| {
            b.terms
                .iter()
                .map(move |tb| ta.coeff.conj() * tb.coeff * ctx.product(&ta.signature, &tb.signature))
        })
        .sum()
}

fn emission_descendant(label: StateLabel) -> Result<StateLabel> {
    match label {
        StateLabel::PsiStar => Ok(StateLabel::PsiSp),
        StateLabel::PhiStar => Ok(StateLabel::PhiSp),
        other => Err(Error::InvalidDipoleTarget(other)),
    }
}

fn free_descendant(label: StateLabel) -> StateLabel {
    match label {
        StateLabel::Psi => StateLabel::PsiBar,
        StateLabel::Phi => StateLabel::PhiBar,
        other => other,
    }
}

/// First-order dipole action with the prefactor `-itD/ħ` stripped.
///
/// Each excited atom decays (`e -> g`) while creating the photon, and its CM
/// state picks up the emission recoil (`psi* -> psi_sp`, `phi* -> phi_sp`).
/// The spectator atom evolves freely (`psi -> psi_bar`, `phi -> phi_bar`).
/// The identity part of the evolution operator leaves the photon number at
/// zero and so never reaches a one-photon final state; it is omitted.
pub fn apply_dipole(state: &TensorState) -> Result<TensorState> {
    let mut out = Vec::new();
    for term in state.terms() {
        let sig = term.signature;
        if sig.photons != 0 {
            continue;
        }
        if sig.el1 == Level::Excited {
            out.push(TensorTerm {
                signature: Signature::new(
                    emission_descendant(sig.cm1)?,
                    Level::Ground,
                    free_descendant(sig.cm2),
                    sig.el2,
                    1,
                ),
                coeff: term.coeff,
            });
        }
        if sig.el2 == Level::Excited {
            out.push(TensorTerm {
                signature: Signature::new(
                    free_descendant(sig.cm1),
                    sig.el1,
                    emission_descendant(sig.cm2)?,
                    Level::Ground,
                    1,
                ),
                coeff: term.coeff,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::NoExcitedComponent);
    }
    Ok(TensorState::from_terms(out))
}
