//! Labeled one-particle center-of-mass states, their overlap table, exchange
//! statistics, and the closed-form normalization coefficients of the
//! symmetrized two-atom states.
//!
//! Every coefficient here is a function of a handful of inner products taken
//! from an [`OverlapTable`]. Orientation convention: `table.get(a, b)` is
//! `<a|b>`, antilinear in `a`.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Zero-norm threshold, relative to the leading constant `2` of every
/// normalization radicand.
pub const EPS_NORM: f64 = 1e-12;

/// Minimum eigenvalue accepted by strict (positive semidefinite) validation.
pub const PSD_TOLERANCE: f64 = -1e-10;

/// Slack allowed on unit diagonal and `|<a|b>| <= 1` checks.
pub const ENTRY_TOLERANCE: f64 = 1e-12;

/// Boson (`+`) or fermion (`-`) sign rule for two-particle states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExchangeSymmetry {
    Boson,
    Fermion,
}

impl ExchangeSymmetry {
    pub const BOTH: [ExchangeSymmetry; 2] = [ExchangeSymmetry::Boson, ExchangeSymmetry::Fermion];

    /// `+1` for bosons, `-1` for fermions.
    pub fn sign(self) -> f64 {
        match self {
            ExchangeSymmetry::Boson => 1.0,
            ExchangeSymmetry::Fermion => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExchangeSymmetry::Boson => "boson",
            ExchangeSymmetry::Fermion => "fermion",
        }
    }
}

impl fmt::Display for ExchangeSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The ten one-particle CM states that appear in the absorption/emission
/// chain.
///
/// | label     | meaning                                              |
/// |-----------|------------------------------------------------------|
/// | `Psi0`    | initial state of the first atom                      |
/// | `Phi0`    | initial state of the second atom                     |
/// | `Psi`     | non-absorbing first atom, at absorption              |
/// | `Phi`     | non-absorbing second atom, at absorption             |
/// | `PsiStar` | first atom after the absorption recoil               |
/// | `PhiStar` | second atom after the absorption recoil              |
/// | `PsiBar`  | free evolution of `Psi` (interaction picture)        |
/// | `PhiBar`  | free evolution of `Phi`                              |
/// | `PsiSp`   | `PsiStar` after the emission recoil along Ω          |
/// | `PhiSp`   | `PhiStar` after the emission recoil along Ω          |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StateLabel {
    Psi0,
    Phi0,
    Psi,
    Phi,
    PsiStar,
    PhiStar,
    PsiBar,
    PhiBar,
    PsiSp,
    PhiSp,
}

impl StateLabel {
    pub const COUNT: usize = 10;

    pub const ALL: [StateLabel; StateLabel::COUNT] = [
        StateLabel::Psi0,
        StateLabel::Phi0,
        StateLabel::Psi,
        StateLabel::Phi,
        StateLabel::PsiStar,
        StateLabel::PhiStar,
        StateLabel::PsiBar,
        StateLabel::PhiBar,
        StateLabel::PsiSp,
        StateLabel::PhiSp,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The same role in the other atom's family (`Psi*` <-> `Phi*`).
    pub fn partner(self) -> StateLabel {
        use StateLabel::*;
        match self {
            Psi0 => Phi0,
            Phi0 => Psi0,
            Psi => Phi,
            Phi => Psi,
            PsiStar => PhiStar,
            PhiStar => PsiStar,
            PsiBar => PhiBar,
            PhiBar => PsiBar,
            PsiSp => PhiSp,
            PhiSp => PsiSp,
        }
    }

    pub fn symbol(self) -> &'static str {
        use StateLabel::*;
        match self {
            Psi0 => "psi0",
            Phi0 => "phi0",
            Psi => "psi",
            Phi => "phi",
            PsiStar => "psi*",
            PhiStar => "phi*",
            PsiBar => "psi_bar",
            PhiBar => "phi_bar",
            PsiSp => "psi_sp",
            PhiSp => "phi_sp",
        }
    }
}

/// Table of inner products `<a|b>` among the ten labeled states.
///
/// Construction through [`OverlapTable::set`] keeps the table Hermitian;
/// [`OverlapTable::from_matrix`] stores whatever it is given so that
/// [`validate`] has something to report on.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapTable {
    entries: [[C64; StateLabel::COUNT]; StateLabel::COUNT],
}

impl Default for OverlapTable {
    fn default() -> Self {
        Self::identity()
    }
}

impl OverlapTable {
    /// Unit diagonal, every cross overlap zero.
    pub fn identity() -> Self {
        let mut entries = [[C64::new(0.0, 0.0); StateLabel::COUNT]; StateLabel::COUNT];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = C64::new(1.0, 0.0);
        }
        OverlapTable { entries }
    }

    /// Raw constructor; no invariant is checked.
    pub fn from_matrix(entries: [[C64; StateLabel::COUNT]; StateLabel::COUNT]) -> Self {
        OverlapTable { entries }
    }

    /// `<a|b>`
    #[inline]
    pub fn get(&self, a: StateLabel, b: StateLabel) -> C64 {
        self.entries[a.index()][b.index()]
    }

    /// Sets `<a|b> = value` and `<b|a> = conj(value)`. On the diagonal only
    /// the real part is kept.
    pub fn set(&mut self, a: StateLabel, b: StateLabel, value: C64) -> &mut Self {
        if a == b {
            self.entries[a.index()][a.index()] = C64::new(value.re, 0.0);
        } else {
            self.entries[a.index()][b.index()] = value;
            self.entries[b.index()][a.index()] = value.conj();
        }
        self
    }

    pub fn set_real(&mut self, a: StateLabel, b: StateLabel, value: f64) -> &mut Self {
        self.set(a, b, C64::new(value, 0.0))
    }

    pub fn matrix(&self) -> &[[C64; StateLabel::COUNT]; StateLabel::COUNT] {
        &self.entries
    }

    /// Complex-conjugates every entry (equivalently, transposes a Hermitian
    /// table).
    pub fn conjugated(&self) -> Self {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for v in row.iter_mut() {
                *v = v.conj();
            }
        }
        out
    }

    /// Relabels every state by its [`StateLabel::partner`], i.e. swaps the
    /// roles of the two atoms.
    pub fn swap_families(&self) -> Self {
        let mut out = self.clone();
        for a in StateLabel::ALL {
            for b in StateLabel::ALL {
                out.entries[a.index()][b.index()] = self.get(a.partner(), b.partner());
            }
        }
        out
    }

    /// Cheap structural check used by every coefficient: Hermitian, unit
    /// diagonal, bounded, finite.
    pub fn check(&self) -> Result<()> {
        let report = validate(self, false);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidTable(report.summary()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryIssue {
    pub bra: StateLabel,
    pub ket: StateLabel,
    /// Size of the violation (distance from Hermitian partner, from 1, or
    /// amount above the bound).
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub non_finite: Vec<EntryIssue>,
    pub hermitian_violations: Vec<EntryIssue>,
    pub diagonal_violations: Vec<EntryIssue>,
    pub bound_violations: Vec<EntryIssue>,
    /// Smallest eigenvalue of the 10x10 Gram matrix, strict mode only.
    pub min_eigenvalue: Option<f64>,
    pub strict: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.non_finite.is_empty()
            && self.hermitian_violations.is_empty()
            && self.diagonal_violations.is_empty()
            && self.bound_violations.is_empty()
            && self.is_psd().unwrap_or(true)
    }

    /// `None` when strict mode was off.
    pub fn is_psd(&self) -> Option<bool> {
        self.min_eigenvalue.map(|l| l >= PSD_TOLERANCE)
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        let mut push = |name: &str, issues: &[EntryIssue]| {
            if let Some(first) = issues.first() {
                parts.push(format!(
                    "{} {} (first <{}|{}>, {:e})",
                    issues.len(),
                    name,
                    first.bra.symbol(),
                    first.ket.symbol(),
                    first.amount
                ));
            }
        };
        push("non-finite entries", &self.non_finite);
        push("Hermiticity violations", &self.hermitian_violations);
        push("diagonal violations", &self.diagonal_violations);
        push("bound violations", &self.bound_violations);
        if let Some(false) = self.is_psd() {
            parts.push(format!(
                "not positive semidefinite (min eigenvalue {:e})",
                self.min_eigenvalue.unwrap_or(f64::NAN)
            ));
        }
        if parts.is_empty() {
            "valid".to_string()
        } else {
            parts.join("; ")
        }
    }
}

/// Reports every structural defect of `table`. With `strict` set the
/// minimum eigenvalue of the Gram matrix is computed as well.
pub fn validate(table: &OverlapTable, strict: bool) -> ValidationReport {
    let mut report = ValidationReport {
        non_finite: Vec::new(),
        hermitian_violations: Vec::new(),
        diagonal_violations: Vec::new(),
        bound_violations: Vec::new(),
        min_eigenvalue: None,
        strict,
    };
    for a in StateLabel::ALL {
        for b in StateLabel::ALL {
            let v = table.get(a, b);
            if !(v.re.is_finite() && v.im.is_finite()) {
                report.non_finite.push(EntryIssue { bra: a, ket: b, amount: f64::NAN });
                continue;
            }
            if a == b {
                let dev = (v - C64::new(1.0, 0.0)).norm();
                if dev > ENTRY_TOLERANCE {
                    report.diagonal_violations.push(EntryIssue { bra: a, ket: b, amount: dev });
                }
            } else {
                if a < b {
                    let dev = (v - table.get(b, a).conj()).norm();
                    if dev != 0.0 {
                        report.hermitian_violations.push(EntryIssue { bra: a, ket: b, amount: dev });
                    }
                }
                let excess = v.norm() - 1.0;
                if excess > ENTRY_TOLERANCE {
                    report.bound_violations.push(EntryIssue { bra: a, ket: b, amount: excess });
                }
            }
        }
    }
    if strict && report.non_finite.is_empty() {
        report.min_eigenvalue = Some(min_eigenvalue(table));
    }
    report
}

fn min_eigenvalue(table: &OverlapTable) -> f64 {
    let n = StateLabel::COUNT;
    // Hermitian part only; a non-Hermitian table is already reported above.
    let gram = DMatrix::<C64>::from_fn(n, n, |i, j| {
        (table.entries[i][j] + table.entries[j][i].conj()) * 0.5
    });
    SymmetricEigen::new(gram)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// The five normalization coefficients of the absorption/emission chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationSet {
    pub n0: f64,
    pub n_abs: f64,
    pub n_psi_omega: f64,
    pub n_phi_omega: f64,
    pub n_omega_sp: f64,
}

impl NormalizationSet {
    pub fn compute(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<Self> {
        table.check()?;
        let n_psi_omega = psi_omega_unchecked(table, sym)?;
        let n_phi_omega = phi_omega_unchecked(table, sym)?;
        Ok(NormalizationSet {
            n0: n0_unchecked(table, sym)?,
            n_abs: n_abs_unchecked(table, sym)?,
            n_psi_omega,
            n_phi_omega,
            n_omega_sp: omega_sp_unchecked(table, sym, n_psi_omega, n_phi_omega)?,
        })
    }
}

fn inverse_sqrt(coefficient: &'static str, radicand: f64) -> Result<f64> {
    if radicand.is_nan() || radicand / 2.0 <= EPS_NORM {
        return Err(Error::ZeroNormState { coefficient, radicand });
    }
    Ok(radicand.powf(-0.5))
}

fn n0_unchecked(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    let o = table.get(StateLabel::Psi0, StateLabel::Phi0);
    inverse_sqrt("N0", 2.0 + sym.sign() * 2.0 * o.norm_sqr())
}

fn n_abs_unchecked(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    use StateLabel::*;
    let cross = table.get(PsiStar, PhiStar) * table.get(Phi, Psi);
    inverse_sqrt("N_abs", 2.0 + sym.sign() * 2.0 * cross.re)
}

fn psi_omega_unchecked(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    let o = table.get(StateLabel::PsiSp, StateLabel::PhiBar);
    inverse_sqrt("N_psi_omega", 2.0 + sym.sign() * 2.0 * o.norm_sqr())
}

fn phi_omega_unchecked(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    let o = table.get(StateLabel::PhiSp, StateLabel::PsiBar);
    inverse_sqrt("N_phi_omega", 2.0 + sym.sign() * 2.0 * o.norm_sqr())
}

fn omega_sp_unchecked(
    table: &OverlapTable,
    sym: ExchangeSymmetry,
    n_psi_omega: f64,
    n_phi_omega: f64,
) -> Result<f64> {
    use StateLabel::*;
    let direct = table.get(PsiSp, PsiBar) * table.get(PhiBar, PhiSp);
    let exchange = table.get(PsiSp, PhiSp) * table.get(PhiBar, PsiBar);
    let cross = (direct + exchange * sym.sign()).re;
    inverse_sqrt("N_omega_sp", 2.0 + 4.0 * n_psi_omega * n_phi_omega * cross)
}

/// `N0 = (2 ± 2|<psi0|phi0>|²)^(-1/2)`
pub fn n0(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    table.check()?;
    n0_unchecked(table, sym)
}

/// `N_abs = (2 ± 2 Re(<psi*|phi*><phi|psi>))^(-1/2)`
pub fn n_abs(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    table.check()?;
    n_abs_unchecked(table, sym)
}

/// `N_psiΩ = (2 ± 2|<psi_sp|phi_bar>|²)^(-1/2)`
pub fn n_psi_omega(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    table.check()?;
    psi_omega_unchecked(table, sym)
}

/// `N_phiΩ = (2 ± 2|<phi_sp|psi_bar>|²)^(-1/2)`
pub fn n_phi_omega(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    table.check()?;
    phi_omega_unchecked(table, sym)
}

/// Normalization of the coherent sum of the two emitted alternatives:
///
/// ```text
/// N_Ω^sp = (2 + 4 N_psiΩ N_phiΩ Re(<psi_sp|psi_bar><phi_bar|phi_sp>
///                                 ± <psi_sp|phi_sp><phi_bar|psi_bar>))^(-1/2)
/// ```
pub fn n_omega_sp(table: &OverlapTable, sym: ExchangeSymmetry) -> Result<f64> {
    table.check()?;
    let a = psi_omega_unchecked(table, sym)?;
    let b = phi_omega_unchecked(table, sym)?;
    omega_sp_unchecked(table, sym, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;
    use StateLabel::*;

    fn with(pairs: &[(StateLabel, StateLabel, f64)]) -> OverlapTable {
        let mut t = OverlapTable::identity();
        for &(a, b, v) in pairs {
            t.set_real(a, b, v);
        }
        t
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn n0_examples() {
        let t = OverlapTable::identity();
        for sym in ExchangeSymmetry::BOTH {
            assert!(close(n0(&t, sym).unwrap(), FRAC_1_SQRT_2, 1e-15));
        }
        let same = with(&[(Psi0, Phi0, 1.0)]);
        assert!(close(n0(&same, ExchangeSymmetry::Boson).unwrap(), 0.5, 1e-15));
        assert!(matches!(
            n0(&same, ExchangeSymmetry::Fermion),
            Err(Error::ZeroNormState { coefficient: "N0", .. })
        ));
        let t = with(&[(Psi0, Phi0, 0.7)]);
        assert!(close(n0(&t, ExchangeSymmetry::Boson).unwrap(), 0.579_284_446_363_492_2, 1e-12));
    }

    #[test]
    fn n_abs_examples() {
        let t = OverlapTable::identity();
        assert!(close(n_abs(&t, ExchangeSymmetry::Fermion).unwrap(), FRAC_1_SQRT_2, 1e-15));
        let t = with(&[(PsiStar, PhiStar, 0.679), (Psi, Phi, 0.7)]);
        assert!(close(n_abs(&t, ExchangeSymmetry::Boson).unwrap(), 0.582_163_309_701_156_2, 1e-12));
        assert!(close(n_abs(&t, ExchangeSymmetry::Fermion).unwrap(), 0.976_179_021_095_704_6, 1e-12));
    }

    #[test]
    fn n_abs_uses_conjugate_of_psi_phi_entry() {
        let mut t = OverlapTable::identity();
        t.set(PsiStar, PhiStar, C64::new(0.0, 0.5));
        t.set(Psi, Phi, C64::new(0.0, 0.5));
        // <phi|psi> = -0.5i, product = 0.25
        let expect = (2.0f64 + 0.5).powf(-0.5);
        assert!(close(n_abs(&t, ExchangeSymmetry::Boson).unwrap(), expect, 1e-15));
    }

    #[test]
    fn emission_alternative_examples() {
        let t = OverlapTable::identity();
        assert!(close(n_psi_omega(&t, ExchangeSymmetry::Boson).unwrap(), FRAC_1_SQRT_2, 1e-15));
        let t = with(&[(PsiSp, PhiBar, 0.609), (PhiSp, PsiBar, 0.609)]);
        assert!(close(n_psi_omega(&t, ExchangeSymmetry::Boson).unwrap(), 0.603_927_941_867_837, 1e-12));
        assert!(close(n_psi_omega(&t, ExchangeSymmetry::Fermion).unwrap(), 0.891_494_362_967_246_5, 1e-12));
        assert_eq!(
            n_psi_omega(&t, ExchangeSymmetry::Fermion).unwrap(),
            n_phi_omega(&t, ExchangeSymmetry::Fermion).unwrap()
        );
    }

    #[test]
    fn omega_sp_no_recoil_orthogonal_limit() {
        let t = with(&[(PsiSp, PsiBar, 1.0), (PhiSp, PhiBar, 1.0)]);
        for sym in ExchangeSymmetry::BOTH {
            assert!(close(n_omega_sp(&t, sym).unwrap(), 0.5, 1e-15));
        }
    }

    #[test]
    fn invalid_table_is_rejected() {
        let mut m = *OverlapTable::identity().matrix();
        m[Psi0.index()][Phi0.index()] = C64::new(0.3, 0.0);
        let t = OverlapTable::from_matrix(m);
        assert!(matches!(n0(&t, ExchangeSymmetry::Boson), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn validate_reports() {
        let r = validate(&OverlapTable::identity(), true);
        assert!(r.is_valid());
        assert_eq!(r.is_psd(), Some(true));
        assert!((r.min_eigenvalue.unwrap() - 1.0).abs() < 1e-12);

        let t = with(&[(Psi, Phi, 1.2)]);
        let r = validate(&t, false);
        assert_eq!(r.bound_violations.len(), 2);
        assert!(r.hermitian_violations.is_empty());
        assert!(!r.is_valid());
        assert!(r.summary().contains("bound"));

        let mut m = *OverlapTable::identity().matrix();
        m[Psi.index()][Psi.index()] = C64::new(0.5, 0.0);
        m[Psi.index()][Phi.index()] = C64::new(f64::NAN, 0.0);
        let r = validate(&OverlapTable::from_matrix(m), true);
        assert_eq!(r.diagonal_violations.len(), 1);
        assert_eq!(r.non_finite.len(), 1);
        assert_eq!(r.min_eigenvalue, None);
    }

    #[test]
    fn strict_mode_detects_non_gram_table() {
        // Three states with pairwise overlap -0.9 cannot exist.
        let t = with(&[(Psi, Phi, -0.9), (Psi, PsiStar, -0.9), (Phi, PsiStar, -0.9)]);
        let r = validate(&t, true);
        assert!(r.min_eigenvalue.unwrap() < PSD_TOLERANCE);
        assert!(!r.is_valid());
        assert!(validate(&t, false).is_valid());
    }

    #[test]
    fn swap_and_conjugate() {
        let mut t = OverlapTable::identity();
        t.set(PsiSp, PhiBar, C64::new(0.2, 0.1));
        let s = t.swap_families();
        assert_eq!(s.get(PhiSp, PsiBar), C64::new(0.2, 0.1));
        assert_eq!(t.conjugated().get(PsiSp, PhiBar), C64::new(0.2, -0.1));
        assert_eq!(t.swap_families().swap_families(), t);
    }
}
