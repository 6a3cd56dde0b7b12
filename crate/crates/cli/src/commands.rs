use std::path::Path;

use emitpair_core::oracle::{run_campaign, CampaignConfig, CampaignReport, RandomTableSpec};
use emitpair_core::scenario::{curve_labels, fig2_curves, Fig2Params};
use emitpair_core::{
    build_overlap_table, compare, hypothesis_curves, scan, uniform_times, validate, ComparisonReport, CurveSet,
    MixtureExchange, NormalizationSet, RadiativeCoupling, RateSet, Scene, StateLabel, ValidationReport,
};
use serde::Serialize;

use crate::config::{fingerprint, Fig2Config, OracleConfig, ScanConfig, SceneConfig};
use crate::error::{CliError, CliResult};
use crate::output::{curves_csv, num, sidecar_path, write_json, Csv};

#[derive(Serialize)]
struct Hypothesis<'a> {
    rates: &'a RateSet,
    normalizations: &'a NormalizationSet,
}

#[derive(Serialize)]
struct CurvesSidecar<'a, C: Serialize> {
    command: &'static str,
    config: &'a C,
    config_sha256: &'a str,
    columns: Vec<&'a str>,
    boson: Hypothesis<'a>,
    fermion: Hypothesis<'a>,
    comparison: ComparisonReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    scene: Option<SceneDump<'a>>,
}

#[derive(Serialize)]
struct SceneDump<'a> {
    scene: &'a Scene,
    table: Vec<TableEntry>,
    validation: &'a ValidationReport,
}

#[derive(Serialize)]
struct TableEntry {
    bra: &'static str,
    ket: &'static str,
    re: f64,
    im: f64,
}

fn sidecar<'a, C: Serialize>(
    command: &'static str,
    config: &'a C,
    hash: &'a str,
    set: &'a CurveSet,
    scene: Option<SceneDump<'a>>,
) -> CliResult<CurvesSidecar<'a, C>> {
    Ok(CurvesSidecar {
        command,
        config,
        config_sha256: hash,
        columns: std::iter::once("t").chain(set.curves.iter().map(|c| c.label.as_str())).collect(),
        boson: Hypothesis { rates: &set.boson, normalizations: &set.normalizations_boson },
        fermion: Hypothesis { rates: &set.fermion, normalizations: &set.normalizations_fermion },
        comparison: compare(&set.curves)?,
        scene,
    })
}

fn print_rates(set: &CurveSet) {
    println!("gamma boson_sup   = {}", num(set.boson.gamma_sup));
    println!("gamma fermion_sup = {}", num(set.fermion.gamma_sup));
    if set.mode == MixtureExchange::On {
        println!("gamma mix_boson   = {} / {}", num(set.boson.gamma_mix_psi), num(set.boson.gamma_mix_phi));
        println!("gamma mix_fermion = {} / {}", num(set.fermion.gamma_mix_psi), num(set.fermion.gamma_mix_phi));
    }
}

pub fn fig2(config: &Fig2Config, out: &Path) -> CliResult<()> {
    let (json, hash) = fingerprint(config);
    let params = Fig2Params { s: config.s, gamma0: config.gamma0, t_max: config.t_max, steps: config.steps };
    let set = fig2_curves(&params, config.mixture_exchange)?;
    debug_assert!(set.curves.iter().map(|c| c.label.as_str()).eq(curve_labels(config.mixture_exchange).iter().copied()));
    curves_csv("fig2", &json, &hash, &set.curves).write(out)?;
    write_json(&sidecar_path(out), &sidecar("fig2", config, &hash, &set, None)?)?;
    print_rates(&set);
    println!("wrote {}", out.display());
    Ok(())
}

const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Serialize)]
struct ScanSidecar<'a> {
    command: &'static str,
    config: &'a ScanConfig,
    config_sha256: &'a str,
    rows: usize,
    fermion_gt_boson_rows: usize,
    /// Rows where the two rates agree within 1e-12 (the `s = 0` endpoint).
    tied_rows: usize,
    min_fermion_minus_boson: f64,
}

pub fn scan_cmd(config: &ScanConfig, out: &Path) -> CliResult<()> {
    let (json, hash) = fingerprint(config);
    let coupling = RadiativeCoupling::new(config.gamma0)?;
    let rows = scan(config.s_from, config.s_to, config.points, coupling, config.mixture_exchange)?;
    let on = config.mixture_exchange == MixtureExchange::On;
    let mut columns = vec!["s", "boson_sup", "fermion_sup"];
    if on {
        columns.extend(["mix_boson_psi", "mix_boson_phi", "mix_fermion_psi", "mix_fermion_phi"]);
    }
    columns.extend(["mix_noexchange", "fermion_gt_boson"]);
    let mut csv = Csv::new("scan", &json, &hash, &columns);
    for r in &rows {
        let mut cells = vec![num(r.s), num(r.boson.gamma_sup), num(r.fermion.gamma_sup)];
        if on {
            cells.extend(
                [r.boson.gamma_mix_psi, r.boson.gamma_mix_phi, r.fermion.gamma_mix_psi, r.fermion.gamma_mix_phi]
                    .map(num),
            );
        }
        // Without exchange every mixture branch decays at Γ₀.
        cells.push(num(coupling.gamma0()));
        cells.push(u8::from(r.fermion.gamma_sup > r.boson.gamma_sup).to_string());
        csv.row(cells);
    }
    csv.write(out)?;
    let gaps = rows.iter().map(|r| r.fermion.gamma_sup - r.boson.gamma_sup);
    let summary = ScanSidecar {
        command: "scan",
        config,
        config_sha256: &hash,
        rows: rows.len(),
        fermion_gt_boson_rows: rows.iter().filter(|r| r.fermion.gamma_sup > r.boson.gamma_sup).count(),
        tied_rows: rows.iter().filter(|r| (r.fermion.gamma_sup - r.boson.gamma_sup).abs() <= TIE_TOLERANCE).count(),
        min_fermion_minus_boson: gaps.fold(f64::INFINITY, f64::min),
    };
    write_json(&sidecar_path(out), &summary)?;
    println!(
        "{} rows: fermion > boson in {}, tied in {}",
        summary.rows, summary.fermion_gt_boson_rows, summary.tied_rows
    );
    println!("wrote {}", out.display());
    Ok(())
}

pub fn scene(config: &SceneConfig, out: &Path) -> CliResult<()> {
    let (json, hash) = fingerprint(config);
    let beam = config.beam.clone().expect("directions resolved");
    let omega = config.omega.clone().expect("directions resolved");
    for (name, v) in [("beam", &beam), ("omega", &omega)] {
        if v.len() != config.dim {
            return Err(CliError::Usage(format!("--{name} has {} components, --dim is {}", v.len(), config.dim)));
        }
    }
    let mut scene = Scene::separated(config.sigma, config.separation, config.k, beam, omega)?;
    scene.mass = config.mass;
    scene.delay = config.delay;
    scene.validate()?;
    let table = build_overlap_table(&scene)?;
    let validation = validate(&table, true);
    if !validation.is_valid() {
        return Err(emitpair_core::Error::InvalidTable(validation.summary()).into());
    }
    let times = uniform_times(config.t_max, config.steps)?;
    let set = hypothesis_curves(&table, RadiativeCoupling::new(config.gamma0)?, &times, config.mixture_exchange)?;

    let entries = StateLabel::ALL
        .iter()
        .flat_map(|&a| StateLabel::ALL.iter().map(move |&b| (a, b)))
        .map(|(a, b)| {
            let v = table.get(a, b);
            TableEntry { bra: a.symbol(), ket: b.symbol(), re: v.re, im: v.im }
        })
        .collect();
    let dump = SceneDump { scene: &scene, table: entries, validation: &validation };
    curves_csv("scene", &json, &hash, &set.curves).write(out)?;
    write_json(&sidecar_path(out), &sidecar("scene", config, &hash, &set, Some(dump))?)?;
    println!("overlap table: {}", validation.summary());
    print_rates(&set);
    println!("wrote {}", out.display());
    Ok(())
}

#[derive(Serialize)]
struct OracleReport<'a> {
    command: &'static str,
    config: &'a OracleConfig,
    config_sha256: &'a str,
    report: &'a CampaignReport,
}

pub fn oracle(config: &OracleConfig, out: &Path) -> CliResult<()> {
    if config.seeds == 0 {
        return Err(CliError::Usage("seeds must be >= 1".into()));
    }
    if config.tol.is_nan() || config.tol < 0.0 {
        return Err(CliError::Usage(format!("tol must be >= 0, got {}", config.tol)));
    }
    if config.ambient_dim == 0 || !(0.0..1.0).contains(&config.coherence) {
        return Err(CliError::Usage("need ambient_dim >= 1 and coherence in [0, 1)".into()));
    }
    let (_, hash) = fingerprint(config);
    let campaign = CampaignConfig {
        first_seed: config.first_seed,
        seeds: config.seeds,
        tolerance: config.tol,
        tables: RandomTableSpec { ambient_dim: config.ambient_dim, coherence: config.coherence },
    };
    let report = run_campaign(&campaign);
    write_json(out, &OracleReport { command: "oracle", config, config_sha256: &hash, report: &report })?;
    for c in &report.checks {
        println!("{:<22} cases {:>4}  max residual {:.3e}  failures {}", c.name, c.cases, c.max_residual, c.failures);
    }
    println!("oracle {}: report {}", if report.passed { "PASS" } else { "FAIL" }, out.display());
    if report.passed {
        Ok(())
    } else {
        Err(CliError::OracleFailed { failures: report.discrepancies.len(), report: out.to_path_buf() })
    }
}
