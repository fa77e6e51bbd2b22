//! Command-line front end: tables of potentials, spectra and wavefunctions,
//! a factorization self-check, and density profiles for the figures.
//!
//! Every file written with `--out PATH` gets a `PATH.manifest.json` sidecar
//! echoing the parameters, grid truncation and any validity problems met.
//! Without `--out` the data goes to stdout and no manifest is written.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytic::{
    self, ConstantCaseState, EnergyLevel, ExponentVariant, QuantumNumbers, RadicandForm,
    RealnessPolicy,
};
use crate::geometry::CatenoidParams;
use crate::numeric::{self, Grid, WavefunctionSamples};
use crate::potentials::{self, CatenoidSuperpotential, PotentialModel, SpinorBranch, Superpotential};
use crate::susy::{self, FactorizedSystem, LadderDirection, LinearSuperpotential};

/// Recorded verbatim in the manifest of every regularized figure.
pub const FIGURE_CAVEAT: &str = "m = -2 makes M2 = sqrt(7 + 4m(m+3)) = sqrt(-1) complex, so the \
Jacobi-branch eigenfunction has no real solution there. These densities use sqrt(|radicand|) and \
do not solve the reduced equation; the companion columns use the nearest m at which every \
parameter is real.";

/// Distance from `±π/2` below which spectrum residuals are not evaluated.
pub const RESIDUAL_MARGIN: f64 = 0.05;

const EXIT_OK: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "catenoid", version, about = "Dirac electron on a catenoid bridge, reduced to one dimension")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Effective potentials and the superpotential on a u-grid.
    Potentials {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Energy levels 0..=n, closed form and/or numeric.
    Spectrum {
        #[command(flatten)]
        physics: PhysicsArgs,
        /// Highest level.
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, value_enum, default_value_t = SpectrumMode::Analytic)]
        mode: SpectrumMode,
        /// Points of the x-grid used by the numeric solver.
        #[arg(long, default_value_t = numeric::DEFAULT_POINTS)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A normalized eigenfunction (or its partner) on a u-grid.
    Wavefunction {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, value_enum, default_value_t = WavefunctionMode::Level)]
        mode: WavefunctionMode,
        /// Evaluate invalid levels with sqrt(|radicand|) instead of refusing.
        #[arg(long)]
        allow_invalid: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the factorization; exits 1 if any check fails.
    SusyCheck {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Use W = u (harmonic pair) instead of the catenoid superpotential.
        #[arg(long)]
        harmonic: bool,
        /// Add a bump to U1 so the checks must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Density profiles for levels 1 and 3, with valid companions.
    ReportFigures {
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
        m: i32,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        allow_invalid: bool,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PhysicsArgs {
    /// Bridge radius.
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    /// Angular quantum number.
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    pub m: i32,
    /// Constant Fermi velocity.
    #[arg(long, default_value_t = 1.0)]
    pub vf: f64,
    /// Scale of the profile v_F = lambda (1 + u²/R²); selects the
    /// position-dependent branch.
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GridArgs {
    #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
    pub umin: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub umax: f64,
    /// Number of grid points (default 1001 for potentials, 4001 otherwise).
    #[arg(long)]
    pub samples: Option<usize>,
}

impl GridArgs {
    fn grid(&self, default_samples: usize) -> crate::Result<Grid> {
        Grid::new(self.umin, self.umax, self.samples.unwrap_or(default_samples))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMode {
    Analytic,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WavefunctionMode {
    Level,
    Partner,
    /// Position-dependent branch only: the printed closed-form partner.
    PartnerPrinted,
}

#[derive(Debug, Serialize)]
pub struct Truncation {
    pub umin: f64,
    pub umax: f64,
    pub samples: usize,
    /// `max(20R, 40/√|E|)`: half-width at which a level of energy `E` has
    /// decayed, for comparison with the requested interval.
    pub recommended_half_width: f64,
}

#[derive(Debug, Serialize)]
pub struct Normalization {
    pub quadrature: &'static str,
    pub weight: &'static str,
    /// `√∫ weight·value²` before rescaling to one on the grid.
    pub norm_before_rescaling: f64,
    pub truncated: bool,
}

#[derive(Debug, Serialize)]
pub struct ReportManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: serde_json::Value,
    pub truncation: Option<Truncation>,
    pub validity: Vec<String>,
    pub caveat: Option<String>,
    pub normalization: Option<Normalization>,
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl ReportManifest {
    fn new(command: &str, parameters: impl Serialize) -> anyhow::Result<Self> {
        Ok(Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            parameters: serde_json::to_value(parameters)?,
            truncation: None,
            validity: Vec::new(),
            caveat: None,
            normalization: None,
            extra: BTreeMap::new(),
        })
    }
}

/// A numeric table written as CSV (`{:.16e}`, round-trips exactly) or as
/// JSON `{"columns": [...], "rows": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Csv => self.to_csv(),
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
        })
    }
}

/// Parse the CSV written by [`Table::to_csv`].
pub fn read_csv(text: &str) -> anyhow::Result<Table> {
    let mut lines = text.lines();
    let header = lines.next().context("empty CSV")?;
    let columns: Vec<String> = header.split(',').map(str::to_string).collect();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(',')
                .map(|c| c.parse::<f64>().with_context(|| format!("bad cell {c:?}")))
                .collect::<anyhow::Result<Vec<f64>>>()
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(Table { columns, rows })
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn emit(out: Option<&Path>, body: &str, manifest: &ReportManifest, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))?;
            let m = serde_json::to_string_pretty(manifest)? + "\n";
            let mp = manifest_path(path);
            fs::write(&mp, m).with_context(|| format!("cannot write {}", mp.display()))?;
        }
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn validate(physics: &PhysicsArgs) -> anyhow::Result<CatenoidParams> {
    let params = CatenoidParams::new(physics.radius)?;
    if !(physics.vf > 0.0 && physics.vf.is_finite()) {
        bail!("--vf must be positive, got {}", physics.vf);
    }
    if let Some(l) = physics.lambda {
        if !(l > 0.0 && l.is_finite()) {
            bail!("--lambda must be positive, got {l}");
        }
    }
    Ok(params)
}

fn truncation(grid: &Grid, radius: f64, energy: Option<f64>) -> Truncation {
    Truncation {
        umin: grid.min(),
        umax: grid.max(),
        samples: grid.count(),
        recommended_half_width: numeric::u_truncation(radius, energy),
    }
}

fn cmd_potentials(physics: &PhysicsArgs, grid: &GridArgs, output: &OutputArgs, stdout: &mut dyn Write) -> anyhow::Result<i32> {
    let params = validate(physics)?;
    let grid = grid.grid(1001)?;
    let upper = match physics.lambda {
        Some(l) => PotentialModel::scarf(l, physics.m, SpinorBranch::Upper)?,
        None => PotentialModel::constant(physics.vf, physics.m, SpinorBranch::Upper)?,
    };
    let lower = PotentialModel::new(upper.profile(), physics.m, SpinorBranch::Lower)?;
    let w = CatenoidSuperpotential::new(params, physics.m);
    let mut columns: Vec<String> = ["u", "V_eff1", "V_eff2", "W"].map(String::from).to_vec();
    if physics.lambda.is_some() {
        columns.push("U_eff1".into());
    }
    let rows = grid
        .points()
        .into_iter()
        .map(|u| {
            let mut row = vec![
                u,
                potentials::v_eff(&upper, &params, u),
                potentials::v_eff(&lower, &params, u),
                w.value(u),
            ];
            if physics.lambda.is_some() {
                row.push(potentials::u_eff(&upper, &params, u));
            }
            row
        })
        .collect();
    let table = Table { columns, rows };
    let mut manifest = ReportManifest::new("potentials", physics)?;
    manifest.truncation = Some(truncation(&grid, params.radius(), None));
    emit(output.out.as_deref(), &table.render(output.format)?, &manifest, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRecord {
    pub n: u32,
    pub m: i32,
    pub branch: &'static str,
    #[serde(rename = "E_analytic")]
    pub e_analytic: Option<f64>,
    pub valid: bool,
    pub reason: Option<String>,
    #[serde(rename = "E_numeric")]
    pub e_numeric: Option<f64>,
    /// Scaled ODE residual of the numeric eigenvector.
    pub residual: Option<f64>,
    pub relative_discrepancy: Option<f64>,
}

/// Levels `0..=n_max` of the branch selected by `physics`, with the
/// numeric solution of the x-space problem where requested.
pub fn spectrum_records(
    physics: &PhysicsArgs,
    n_max: u32,
    mode: SpectrumMode,
    samples: usize,
) -> anyhow::Result<Vec<SpectrumRecord>> {
    let params = validate(physics)?;
    let r = params.radius();
    let levels = n_max as usize + 1;
    let (branch, scale, analytic): (&'static str, f64, Vec<EnergyLevel>) = match physics.lambda {
        None => (
            "constant",
            physics.vf / r,
            (0..=n_max)
                .map(|n| analytic::energy_constant_case(&params, physics.vf, QuantumNumbers::new(n, physics.m)))
                .collect(),
        ),
        Some(l) => {
            let sp = analytic::scarf_params_pdfv(&params, physics.m, l)?;
            (
                "position_dependent",
                l / r,
                (0..=n_max)
                    .map(|n| {
                        let mut e = analytic::energy_pdfv(&sp, QuantumNumbers::new(n, physics.m));
                        if e.valid && !sp.is_classical() {
                            e.valid = false;
                            e.reason = Some(format!(
                                "Jacobi exponents {:?} do not both exceed -1",
                                sp.jacobi_exponents()
                            ));
                        }
                        e
                    })
                    .collect(),
            )
        }
    };

    let numeric_part: Option<Vec<(f64, f64)>> = match mode {
        SpectrumMode::Analytic => None,
        _ => {
            let grid = numeric::x_grid(samples)?;
            let potential = |x: f64| -> f64 {
                match physics.lambda {
                    None => analytic::constant_case_liouville_potential(physics.m, x),
                    Some(_) => potentials::scarf_form_pdfv(&params, physics.m, x),
                }
                .unwrap_or(f64::NAN)
            };
            let op = numeric::discretize(potential, &grid)?;
            let spec = numeric::eigen_tridiagonal(&op, levels)?;
            // The five-point residual is taken away from the clipped ends,
            // where the potential is of order 1/δ² and the stencil says
            // nothing about the eigenvalue.
            let keep: Vec<usize> = (0..grid.count())
                .filter(|&i| analytic::x_margin(grid.point(i)) >= RESIDUAL_MARGIN)
                .collect();
            let (i0, i1) = (keep[0], keep[keep.len() - 1]);
            let window = Grid::new(grid.point(i0), grid.point(i1), i1 - i0 + 1)?;
            let mut out = Vec::with_capacity(levels);
            for (k, &e2) in spec.eigenvalues.iter().enumerate() {
                let f = spec.eigenfunction(k).context("missing eigenvector")?;
                let res = numeric::ode_residual(&f.values[i0..=i1], potential, e2, &window)?;
                out.push((e2, res));
            }
            Some(out)
        }
    };

    Ok(analytic
        .into_iter()
        .enumerate()
        .map(|(k, level)| {
            let (e_num, res) = match &numeric_part {
                Some(v) => {
                    let (e2, res) = v[k];
                    (Some(scale * e2.abs().sqrt()), Some(res))
                }
                None => (None, None),
            };
            let disc = match (mode, level.value, e_num) {
                (SpectrumMode::Both, Some(a), Some(b)) if a != 0.0 => Some((b - a).abs() / a.abs()),
                _ => None,
            };
            SpectrumRecord {
                n: k as u32,
                m: physics.m,
                branch,
                e_analytic: if mode == SpectrumMode::Numeric { None } else { level.value },
                valid: level.valid,
                reason: level.reason,
                e_numeric: e_num,
                residual: res,
                relative_discrepancy: disc,
            }
        })
        .collect())
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

fn cmd_spectrum(
    physics: &PhysicsArgs,
    n: u32,
    mode: SpectrumMode,
    samples: usize,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> anyhow::Result<i32> {
    let records = spectrum_records(physics, n, mode, samples)?;
    let body = match output.format {
        Format::Json => serde_json::to_string_pretty(&records)? + "\n",
        Format::Csv => {
            let mut s = String::from("n,m,E_analytic,valid,E_numeric,residual,relative_discrepancy,reason\n");
            for r in &records {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},\"{}\"\n",
                    r.n,
                    r.m,
                    opt_cell(r.e_analytic),
                    r.valid,
                    opt_cell(r.e_numeric),
                    opt_cell(r.residual),
                    opt_cell(r.relative_discrepancy),
                    r.reason.clone().unwrap_or_default().replace('"', "'")
                ));
            }
            s
        }
    };
    let mut manifest = ReportManifest::new("spectrum", physics)?;
    manifest.validity = records
        .iter()
        .filter_map(|r| r.reason.as_ref().map(|s| format!("n = {}: {s}", r.n)))
        .collect();
    manifest.extra.insert("mode".into(), serde_json::to_value(mode)?);
    manifest.extra.insert("x_samples".into(), samples.into());
    manifest.extra.insert("x_clip".into(), numeric::X_CLIP.into());
    manifest.extra.insert("residual_margin".into(), RESIDUAL_MARGIN.into());
    emit(output.out.as_deref(), &body, &manifest, stdout)?;
    Ok(EXIT_OK)
}

/// A sampled wavefunction plus what the manifest needs to know about it.
#[derive(Debug, Clone)]
pub struct WavefunctionOutput {
    pub samples: WavefunctionSamples,
    /// Quadrature weight per sample (`1` or `1/v_F²`).
    pub weight: Vec<f64>,
    pub weight_label: &'static str,
    pub norm_before_rescaling: f64,
    pub validity: Vec<String>,
    pub energy: Option<f64>,
}

fn rescale(
    raw: WavefunctionSamples,
    weight: Vec<f64>,
    weight_label: &'static str,
    validity: Vec<String>,
    energy: Option<f64>,
) -> anyhow::Result<WavefunctionOutput> {
    let (values, norm) = numeric::quadrature_normalize(&raw.values, Some(&weight), &raw.grid)?;
    let mut samples = WavefunctionSamples::new(raw.grid, values)?;
    samples.norm = Some(norm);
    Ok(WavefunctionOutput {
        samples,
        weight,
        weight_label,
        norm_before_rescaling: norm,
        validity,
        energy,
    })
}

pub fn wavefunction_samples(
    physics: &PhysicsArgs,
    grid: Grid,
    n: u32,
    mode: WavefunctionMode,
    allow_invalid: bool,
) -> anyhow::Result<WavefunctionOutput> {
    let params = validate(physics)?;
    let qn = QuantumNumbers::new(n, physics.m);
    let policy = if allow_invalid {
        RealnessPolicy::AbsoluteValue
    } else {
        RealnessPolicy::Strict
    };
    match physics.lambda {
        None => {
            let target = if mode == WavefunctionMode::Level { n } else { n + 1 };
            let level = analytic::energy_constant_case_with(
                &params,
                physics.vf,
                QuantumNumbers::new(target, physics.m),
                policy,
                RadicandForm::Corrected,
            );
            let validity: Vec<String> = level.reason.iter().cloned().collect();
            if !level.valid && !allow_invalid {
                bail!(
                    "level (n = {target}, m = {}) is invalid: {}; pass --allow-invalid to evaluate it regularized",
                    physics.m,
                    level.reason.unwrap_or_default()
                );
            }
            let ones = vec![1.0; grid.count()];
            let raw = match mode {
                WavefunctionMode::Level => {
                    ConstantCaseState::new(params, qn, ExponentVariant::Chain, policy)?.sample(grid)
                }
                WavefunctionMode::Partner => analytic::partner_eigenfunction_constant(&params, qn, grid)?,
                WavefunctionMode::PartnerPrinted => {
                    bail!("--mode partner-printed needs --lambda")
                }
            };
            rescale(raw, ones, "1", validity, level.value)
        }
        Some(l) => {
            let sp = analytic::scarf_params_pdfv(&params, physics.m, l)?;
            let level = analytic::energy_pdfv(&sp, qn);
            let mut validity: Vec<String> = level.reason.iter().cloned().collect();
            if !sp.is_classical() {
                validity.push(format!(
                    "Jacobi exponents {:?} do not both exceed -1",
                    sp.jacobi_exponents()
                ));
                bail!("{}", validity.join("; "));
            }
            let model = PotentialModel::scarf(l, physics.m, SpinorBranch::Upper)?;
            let weight: Vec<f64> = grid
                .points()
                .iter()
                .map(|&u| potentials::fermi_velocity(&model, &params, u).powi(-2))
                .collect();
            let raw = match mode {
                WavefunctionMode::Level => {
                    WavefunctionSamples::try_from_fn(grid, |u| analytic::eigenfunction_pdfv(&sp, qn, u))?
                }
                WavefunctionMode::Partner => WavefunctionSamples::try_from_fn(grid, |u| {
                    let x = analytic::x_of_u(&params, u);
                    Ok(analytic::scarf_x_to_u(
                        analytic::partner_closed_form_x(&sp, n, analytic::PartnerForm::Derived, x)?,
                        x,
                    ))
                })?,
                WavefunctionMode::PartnerPrinted => {
                    WavefunctionSamples::try_from_fn(grid, |u| analytic::partner_printed_u(&sp, n, u))?
                }
            };
            rescale(raw, weight, "1/v_F(u)^2", validity, level.value)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_wavefunction(
    physics: &PhysicsArgs,
    grid: &GridArgs,
    n: u32,
    mode: WavefunctionMode,
    allow_invalid: bool,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> anyhow::Result<i32> {
    let g = grid.grid(numeric::DEFAULT_POINTS)?;
    let wf = wavefunction_samples(physics, g, n, mode, allow_invalid)?;
    let table = Table {
        columns: ["u", "value", "density"].map(String::from).to_vec(),
        rows: g
            .points()
            .into_iter()
            .zip(&wf.samples.values)
            .map(|(u, v)| vec![u, *v, v * v])
            .collect(),
    };
    let mut manifest = ReportManifest::new("wavefunction", physics)?;
    manifest.truncation = Some(truncation(&g, physics.radius, wf.energy));
    manifest.validity = wf.validity.clone();
    if allow_invalid && !wf.validity.is_empty() {
        manifest.caveat = Some("regularized with sqrt(|radicand|); not a solution of the reduced equation".into());
    }
    manifest.normalization = Some(Normalization {
        quadrature: "trapezoid",
        weight: wf.weight_label,
        norm_before_rescaling: wf.norm_before_rescaling,
        truncated: true,
    });
    manifest.extra.insert("n".into(), n.into());
    manifest.extra.insert("mode".into(), serde_json::to_value(mode)?);
    emit(output.out.as_deref(), &table.render(output.format)?, &manifest, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &'static str, value: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            tolerance,
            pass: value.is_finite() && value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftRow {
    pub n: usize,
    pub e1_n_plus_1: f64,
    pub e2_n: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SusyReport {
    pub superpotential: &'static str,
    pub checks: Vec<Check>,
    /// Box spectra of `H₁` and `H₂`. Enforced only when the zero mode is a
    /// bound state inside the box (harmonic pair).
    pub shift_table: Vec<ShiftRow>,
    pub shift_table_enforced: bool,
    pub failures: Vec<&'static str>,
    pub pass: bool,
}

fn shift_table<W: Superpotential>(sys: &FactorizedSystem<W>, levels: usize) -> anyhow::Result<(Vec<ShiftRow>, f64)> {
    let h1 = numeric::discretize_samples(sys.u1(), sys.grid())?;
    let h2 = numeric::discretize_samples(sys.u2(), sys.grid())?;
    let e1 = numeric::eigenvalues_tridiagonal(&h1, levels + 1)?;
    let e2 = numeric::eigenvalues_tridiagonal(&h2, levels)?;
    let rows = (0..levels)
        .map(|n| ShiftRow {
            n,
            e1_n_plus_1: e1[n + 1],
            e2_n: e2[n],
            difference: e2[n] - e1[n + 1],
        })
        .collect();
    Ok((rows, e1[0]))
}

fn intertwining_probe(grid: Grid) -> WavefunctionSamples {
    let c = 0.5 * (grid.min() + grid.max());
    let w = 0.15 * (grid.max() - grid.min());
    WavefunctionSamples::from_fn(grid, |u| {
        let s = (u - c) / w;
        (1.0 + s) * (-s * s).exp()
    })
}

/// Runs the factorization checks.
pub fn susy_report(physics: &PhysicsArgs, grid: Grid, harmonic: bool, inject_fault: bool) -> anyhow::Result<SusyReport> {
    let params = validate(physics)?;
    let fault = |u: f64| 0.1 * (-u * u).exp();
    let h = grid.step();
    let mut checks = Vec::new();
    let (name, rows, e10) = if harmonic {
        let mut sys = FactorizedSystem::new(LinearSuperpotential { slope: 1.0 }, grid)?;
        if inject_fault {
            sys.perturb_u1(fault);
        }
        let ident = grid
            .points()
            .iter()
            .zip(sys.u1().iter().zip(sys.u2()))
            .fold(0.0_f64, |m, (u, (a, b))| {
                m.max((a - (u * u - 1.0)).abs()).max((b - (u * u + 1.0)).abs())
            });
        checks.push(Check::new("identity_w2_dw", ident, 1e-12));
        let psi = susy::ground_state_from_w(&sys)?;
        let a = susy::apply_ladder(&sys, LadderDirection::Lowering, &psi)?;
        checks.push(Check::new("ground_state_annihilation", a.max_abs() / psi.max_abs(), 1e-6));
        let probe = intertwining_probe(grid);
        checks.push(Check::new("intertwining", susy::check_intertwining(&sys, &probe)?, 50.0 * h * h));
        let (rows, e10) = shift_table(&sys, 5)?;
        ("harmonic", rows, Some(e10))
    } else {
        let w = CatenoidSuperpotential::new(params, physics.m);
        let mut sys = FactorizedSystem::new(w, grid)?;
        if inject_fault {
            sys.perturb_u1(fault);
        }
        let upper = PotentialModel::constant(physics.vf, physics.m, SpinorBranch::Upper)?;
        let lower = PotentialModel::constant(physics.vf, physics.m, SpinorBranch::Lower)?;
        let ident = grid
            .points()
            .iter()
            .zip(sys.u1().iter().zip(sys.u2()))
            .fold(0.0_f64, |m, (&u, (a, b))| {
                m.max((a - potentials::v_eff(&upper, &params, u)).abs())
                    .max((b - potentials::v_eff(&lower, &params, u)).abs())
            });
        checks.push(Check::new("identity_w2_dw", ident, 1e-12));
        let annihilation = grid
            .points()
            .iter()
            .filter(|u| u.abs() <= 5.0)
            .fold(0.0_f64, |m, &u| m.max(susy::catenoid_zero_mode_residual(&params, physics.m, u).abs()));
        checks.push(Check::new("ground_state_annihilation", annihilation, 1e-8));
        let probe = intertwining_probe(grid);
        checks.push(Check::new("intertwining", susy::check_intertwining(&sys, &probe)?, 50.0 * h * h));
        let (rows, _) = shift_table(&sys, 5)?;
        ("catenoid", rows, None)
    };
    if let Some(e10) = e10 {
        checks.push(Check::new("zero_mode_energy", e10.abs(), 1e-3));
        let worst = rows.iter().fold(0.0_f64, |m, r| m.max(r.difference.abs()));
        checks.push(Check::new("partner_shift", worst, 1e-3));
    }
    let failures: Vec<&'static str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    Ok(SusyReport {
        superpotential: name,
        pass: failures.is_empty(),
        shift_table_enforced: harmonic,
        checks,
        shift_table: rows,
        failures,
    })
}

fn cmd_susy_check(
    physics: &PhysicsArgs,
    grid: &GridArgs,
    harmonic: bool,
    inject_fault: bool,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> anyhow::Result<i32> {
    let g = grid.grid(numeric::DEFAULT_POINTS)?;
    let report = susy_report(physics, g, harmonic, inject_fault)?;
    let body = serde_json::to_string_pretty(&report)? + "\n";
    let mut manifest = ReportManifest::new("susy-check", physics)?;
    manifest.truncation = Some(truncation(&g, physics.radius, None));
    manifest.extra.insert("harmonic".into(), harmonic.into());
    manifest.extra.insert("inject_fault".into(), inject_fault.into());
    emit(output.out.as_deref(), &body, &manifest, stdout)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// The nearest `m` (smaller `|Δm|` first, then the same sign as `m`) at which
/// every Jacobi-branch parameter is real.
pub fn nearest_valid_m(m: i32) -> i32 {
    let valid = |k: i32| analytic::jacobi_branch_params(k).is_real();
    if valid(m) {
        return m;
    }
    let side = if m < 0 { -1 } else { 1 };
    (1..)
        .flat_map(|d| [m + side * d, m - side * d])
        .find(|&k| valid(k))
        .expect("large |m| is always valid")
}

/// Local-maxima counts of the u-density of level `n` at `m`, from the closed
/// form and from the matching eigenvector of the discretized Liouville
/// problem, both sampled at `u = R tan x` of the same clipped x-grid.
pub fn figure_maxima(params: &CatenoidParams, m: i32, n: u32, samples: usize) -> anyhow::Result<(usize, usize)> {
    let grid = numeric::x_grid(samples)?;
    let state = ConstantCaseState::new(*params, QuantumNumbers::new(n, m), ExponentVariant::Chain, RealnessPolicy::Strict)?;
    let closed: Vec<f64> = grid
        .points()
        .iter()
        .map(|&x| state.value(params.radius() * x.tan()))
        .collect();
    let op = analytic::constant_case_liouville_operator(m, &grid)?;
    let spec = numeric::eigen_tridiagonal(&op, n as usize + 1)?;
    let z = spec.eigenfunction(n as usize).context("missing eigenvector")?;
    let from_numeric: Vec<f64> = grid
        .points()
        .iter()
        .zip(&z.values)
        .map(|(&x, &z)| analytic::liouville_to_u(z, x))
        .collect();
    Ok((
        numeric::count_features(&closed)?.maxima,
        numeric::count_features(&from_numeric)?.maxima,
    ))
}

fn cmd_report_figures(
    radius: f64,
    m: i32,
    grid: &GridArgs,
    allow_invalid: bool,
    out: &Path,
) -> anyhow::Result<i32> {
    let params = CatenoidParams::new(radius)?;
    let branch = analytic::jacobi_branch_params(m);
    if !branch.is_real() && !allow_invalid {
        let level = analytic::energy_constant_case(&params, 1.0, QuantumNumbers::new(1, m));
        bail!(
            "refusing to emit figures at m = {m}: {}; pass --allow-invalid to write regularized densities",
            level.reason.unwrap_or_default()
        );
    }
    let companion = nearest_valid_m(m);
    let g = grid.grid(numeric::DEFAULT_POINTS)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    for (figure, n) in [(2, 1u32), (3, 3u32)] {
        let policy = if branch.is_real() {
            RealnessPolicy::Strict
        } else {
            RealnessPolicy::AbsoluteValue
        };
        let main = ConstantCaseState::new(params, QuantumNumbers::new(n, m), ExponentVariant::Chain, policy)?
            .sample_normalized(g)?;
        let comp = ConstantCaseState::new(params, QuantumNumbers::new(n, companion), ExponentVariant::Chain, RealnessPolicy::Strict)?
            .sample_normalized(g)?;
        let table = Table {
            columns: vec!["u".into(), format!("density_m{m}"), format!("density_m{companion}")],
            rows: g
                .points()
                .into_iter()
                .zip(main.values.iter().zip(&comp.values))
                .map(|(u, (a, b))| vec![u, a * a, b * b])
                .collect(),
        };
        let level = analytic::energy_constant_case_with(&params, 1.0, QuantumNumbers::new(n, m), policy, RadicandForm::Corrected);
        let (closed, numeric_max) = figure_maxima(&params, companion, n, numeric::DEFAULT_POINTS)?;
        let mut manifest = ReportManifest::new(
            "report-figures",
            serde_json::json!({ "R": radius, "m": m, "n": n, "companion_m": companion }),
        )?;
        manifest.truncation = Some(truncation(&g, radius, None));
        manifest.validity = level.reason.iter().cloned().collect();
        if !branch.is_real() {
            manifest.caveat = Some(FIGURE_CAVEAT.to_string());
        }
        manifest.normalization = Some(Normalization {
            quadrature: "trapezoid",
            weight: "1",
            norm_before_rescaling: main.norm.unwrap_or(f64::NAN),
            truncated: true,
        });
        manifest.extra.insert(
            "companion_maxima".into(),
            serde_json::json!({ "closed_form": closed, "numeric": numeric_max, "consistent": closed == numeric_max }),
        );
        let path = out.join(format!("figure{figure}_n{n}.csv"));
        emit(Some(&path), &table.to_csv(), &manifest, &mut io::sink())?;
    }
    Ok(EXIT_OK)
}

/// Dispatch a parsed command, writing table output to `stdout`.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> anyhow::Result<i32> {
    match cli.command {
        Command::Potentials { physics, grid, output } => cmd_potentials(&physics, &grid, &output, stdout),
        Command::Spectrum {
            physics,
            n,
            mode,
            samples,
            output,
        } => cmd_spectrum(&physics, n, mode, samples, &output, stdout),
        Command::Wavefunction {
            physics,
            grid,
            n,
            mode,
            allow_invalid,
            output,
        } => cmd_wavefunction(&physics, &grid, n, mode, allow_invalid, &output, stdout),
        Command::SusyCheck {
            physics,
            grid,
            harmonic,
            inject_fault,
            output,
        } => cmd_susy_check(&physics, &grid, harmonic, inject_fault, &output, stdout),
        Command::ReportFigures {
            radius,
            m,
            grid,
            allow_invalid,
            out,
        } => cmd_report_figures(radius, m, &grid, allow_invalid, &out),
    }
}

/// Parse `args` (program name first) and run; returns the exit status.
pub fn run_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trips_bit_exactly() {
        let t = Table {
            columns: vec!["a".into(), "b".into()],
            rows: vec![vec![0.1 + 0.2, -1e-300], vec![std::f64::consts::PI, 12345.678e200]],
        };
        assert_eq!(read_csv(&t.to_csv()).unwrap(), t);
    }

    #[test]
    fn nearest_valid_companion() {
        assert_eq!(nearest_valid_m(-2), -3);
        assert_eq!(nearest_valid_m(2), 3);
        assert_eq!(nearest_valid_m(1), 0);
        assert_eq!(nearest_valid_m(3), 3);
    }

    #[test]
    fn manifest_path_appends_suffix() {
        assert_eq!(manifest_path(Path::new("/tmp/x.csv")), PathBuf::from("/tmp/x.csv.manifest.json"));
    }

    #[test]
    fn parses_negative_m_and_uppercase_r() {
        let cli = Cli::try_parse_from(["catenoid", "potentials", "--R", "2", "--m", "-3", "--umin", "-5"]).unwrap();
        match cli.command {
            Command::Potentials { physics, grid, .. } => {
                assert_eq!(physics.m, -3);
                assert_eq!(physics.radius, 2.0);
                assert_eq!(grid.umin, -5.0);
            }
            _ => panic!("wrong subcommand"),
        }
    }
}
