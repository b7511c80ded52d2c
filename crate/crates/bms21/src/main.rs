//! Command-line interface: group actions, witnesses, orbit and induction
//! dumps, and the full verification suite. JSON in, JSON/CSV out; identical
//! flags and seed produce byte-identical artifacts.

use bms21::group_action::{
    act_T, dual_act, kappa, mass_squared, BmsElement, GridSpec, GroupElement,
};
use bms21::induction::{
    build_orbit_sample, op_full, op_Q, op_V, EquivariantVector, OrbitSample, OrbitWindow,
    SampleMode, SampleParams,
};
use bms21::jsonio;
use bms21::little_groups::{
    blueshift_witness, canonical_supermomentum, dual_norm_growth, stabilizes, LittleGroupKind,
    LittleRepLabel,
};
use bms21::supertranslation::grid_theta;
use bms21::verify::{all_passed, run_all, VerifyConfig};
use bms21::{defaults, CirclePoint, FourierSeries};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bms21",
    version,
    about = "Concrete model of the 2+1 BMS group: actions, orbits, witnesses, and property suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Fourier truncation order N.
    #[arg(long = "n", global = true, default_value_t = defaults::ORDER)]
    n: usize,

    /// Number of grid points (defaults to oversample·(2N + 4)).
    #[arg(long, global = true)]
    grid: Option<usize>,

    /// Oversampling factor for the default grid size.
    #[arg(long, global = true, default_value_t = defaults::OVERSAMPLE)]
    oversample: usize,

    /// Seed for every randomized routine.
    #[arg(long, global = true, default_value_t = defaults::SEED)]
    seed: u64,

    /// Tolerance for validating that an input matrix lies in SL(2,R);
    /// accepted matrices are then normalized by 1/√det.
    #[arg(long, global = true, default_value_t = 1e-3)]
    tol: f64,

    /// Write the artifact to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the supertranslation action T(g): α ↦ κ_g·(α ∘ g).
    Act {
        /// Group element as JSON: {"a":…,"b":…,"c":…,"d":…}.
        #[arg(long)]
        g: String,
        /// Fourier series as JSON: {"n":…,"cos":[…],"sin":[…]}.
        #[arg(long)]
        alpha: String,
    },
    /// Apply the dual action T′(g): β ↦ κ_g⁻²·(β ∘ g) on supermomenta.
    DualAct {
        /// Group element as JSON: {"a":…,"b":…,"c":…,"d":…}.
        #[arg(long)]
        g: String,
        /// Fourier series as JSON: {"n":…,"cos":[…],"sin":[…]}.
        #[arg(long)]
        beta: String,
    },
    /// Tabulate the conformal factor κ_g over the circle as CSV (theta,kappa).
    KappaProfile {
        /// Group element as JSON: {"a":…,"b":…,"c":…,"d":…}.
        #[arg(long)]
        g: String,
    },
    /// Sample an orbit of a canonical supermomentum and dump it as JSON.
    Orbit {
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// Canonical supermomentum of a stabilizer class and its lattice of
    /// fixing rotations.
    LittleGroup {
        /// Stabilizer class of the supermomentum.
        #[arg(long, value_enum, default_value_t = KindArg::Rotation)]
        kind: KindArg,
        /// Cyclic order n (even, ≥ 2); required when --kind cyclic.
        #[arg(long)]
        cyclic_n: Option<u32>,
        /// Test this supermomentum (JSON series) instead of the canonical one.
        #[arg(long)]
        beta: Option<String>,
        /// The test lattice is φ = kπ/n for k = 0 … 2n−1.
        #[arg(long, default_value_t = 8)]
        lattice_n: u32,
    },
    /// Dump an induced operator in the sample basis as CSV (row,col,re,im).
    Induce {
        #[command(flatten)]
        orbit: OrbitArgs,
        /// Which operator to dump.
        #[arg(long, value_enum)]
        op: OpArg,
        /// Group element (required for v and w).
        #[arg(long)]
        g: Option<String>,
        /// Supertranslation series (required for q and w).
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Invariant mass² of a supermomentum.
    Mass2 {
        /// Fourier series as JSON: {"n":…,"cos":[…],"sin":[…]}.
        #[arg(long)]
        beta: String,
    },
    /// Witness that boosts blueshift the conformal factor above any bound
    /// outside an arbitrarily small set.
    WitnessBlueshift {
        /// The factor bound M.
        #[arg(long = "M")]
        bound: f64,
        /// Measure tolerance ε ∈ (0, 1).
        #[arg(long)]
        eps: f64,
        /// Quadrature resolution for measuring the complement.
        #[arg(long, default_value_t = 200_000)]
        quad_points: usize,
    },
    /// Dual-norm growth of a supermomentum along a boost ray.
    WitnessNormGrowth {
        /// Supermomentum (JSON series); defaults to the canonical
        /// rotation-invariant one.
        #[arg(long)]
        beta: Option<String>,
        /// Rapidities to evaluate.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 1.5, 2.0, 2.5])]
        t: Vec<f64>,
        /// Quadrature resolution.
        #[arg(long, default_value_t = 2048)]
        quad_points: usize,
    },
    /// Run the eight acceptance property suites and print a pass/fail table.
    Verify {
        /// Monte-Carlo sample count for the measure-invariance checks.
        #[arg(long, default_value_t = 100_000)]
        mc_samples: usize,
    },
}

#[derive(Args)]
struct OrbitArgs {
    /// Stabilizer class of the base supermomentum.
    #[arg(long, value_enum, default_value_t = KindArg::Rotation)]
    kind: KindArg,
    /// Cyclic order n (even, ≥ 2); required when --kind cyclic.
    #[arg(long)]
    cyclic_n: Option<u32>,
    /// Character e^{iνφ} of the rotation stabilizer.
    #[arg(long, default_value_t = 0)]
    nu: i64,
    /// Character label λ ∈ {0, …, n−1} of the cyclic stabilizer.
    #[arg(long, default_value_t = 0)]
    lambda: u32,
    /// Number of sampled cosets.
    #[arg(long, default_value_t = 64)]
    count: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Rotation subgroup SO(2).
    Rotation,
    /// Even cyclic subgroup C_n.
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    /// Diagonal supertranslation operator Q(α).
    Q,
    /// Relocation operator V(g).
    V,
    /// Full semidirect operator W(α, g) = Q(α)·V(g).
    W,
}

/// A domain-level failure: reported on stderr, exit code 1 (usage errors are
/// clap's and exit 2).
struct CliError(String);

impl From<bms21::Error> for CliError {
    fn from(e: bms21::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError(format!("invalid JSON input: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(format!("I/O failure: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Act { g, alpha } => {
            let g = parse_group_element(g, cli.tol)?;
            let alpha: FourierSeries = serde_json::from_str(alpha)?;
            let grid = action_grid(cli, alpha.order())?;
            let output = act_T(&g, &alpha, &grid)?;
            emit_json(cli, &output)
        }
        Command::DualAct { g, beta } => {
            let g = parse_group_element(g, cli.tol)?;
            let beta: FourierSeries = serde_json::from_str(beta)?;
            let grid = action_grid(cli, beta.order())?;
            let output = dual_act(&g, &beta, &grid)?;
            emit_json(cli, &output)
        }
        Command::KappaProfile { g } => {
            let g = parse_group_element(g, cli.tol)?;
            let points = cli
                .grid
                .unwrap_or_else(|| defaults::grid_for(cli.n, cli.oversample));
            if points == 0 {
                return Err(CliError("--grid must be positive".to_string()));
            }
            let mut csv = String::from("theta,kappa\n");
            for j in 0..points {
                let theta = grid_theta(j, points);
                let k = kappa(&g, &CirclePoint::from_theta(theta));
                csv.push_str(&format!(
                    "{},{}\n",
                    jsonio::fmt_f64(theta),
                    jsonio::fmt_f64(k)
                ));
            }
            emit(cli, &csv)
        }
        Command::Orbit { orbit } => {
            let sample = build_sample(cli, orbit)?;
            let dump = OrbitDump::from_sample(&sample);
            emit_json(cli, &dump)
        }
        Command::LittleGroup {
            kind,
            cyclic_n,
            beta,
            lattice_n,
        } => {
            let kind = resolve_kind(*kind, *cyclic_n)?;
            let beta = match beta {
                Some(raw) => serde_json::from_str::<FourierSeries>(raw)?,
                None => canonical_supermomentum(kind, cli.n)?,
            };
            if *lattice_n == 0 {
                return Err(CliError("--lattice-n must be positive".to_string()));
            }
            let grid = action_grid(cli, beta.order())?;
            let mut lattice = Vec::new();
            for k in 0..(2 * lattice_n) {
                let phi = k as f64 * PI / *lattice_n as f64;
                let fixed = stabilizes(&GroupElement::rotation(phi), &beta, &grid, 1e-10)?;
                lattice.push(LatticePoint {
                    k,
                    phi,
                    stabilizes: fixed,
                });
            }
            let dump = LittleGroupDump {
                kind: kind_name(kind),
                beta: beta.clone(),
                mass_squared: mass_squared(&beta),
                translation_components: beta.translation_components(),
                lattice,
            };
            emit_json(cli, &dump)
        }
        Command::Induce {
            orbit,
            op,
            g,
            alpha,
        } => {
            let sample = build_sample(cli, orbit)?;
            let ones = EquivariantVector {
                values: vec![Complex64::new(1.0, 0.0); sample.len()],
            };
            // Q, V, and W all act as "phase times source value" in the sample
            // basis, so applying them to the all-ones vector recovers every
            // matrix entry: row j, column source(j), value = the phase.
            let entries: Vec<(usize, usize, Complex64)> = match op {
                OpArg::Q => {
                    let alpha = required_series(alpha, "--alpha", "q")?;
                    let moved = op_Q(&alpha, &sample, &ones)?;
                    moved
                        .values
                        .iter()
                        .enumerate()
                        .map(|(j, v)| (j, j, *v))
                        .collect()
                }
                OpArg::V => {
                    let g = parse_group_element(
                        g.as_deref()
                            .ok_or_else(|| CliError("induce --op v requires --g".to_string()))?,
                        cli.tol,
                    )?;
                    let moved = op_V(&g, &sample, &ones)?;
                    collect_relocation_entries(&moved.vector, &moved.sources)
                }
                OpArg::W => {
                    let g = parse_group_element(
                        g.as_deref()
                            .ok_or_else(|| CliError("induce --op w requires --g".to_string()))?,
                        cli.tol,
                    )?;
                    let alpha = required_series(alpha, "--alpha", "w")?;
                    let x = BmsElement { alpha, g };
                    let moved = op_full(&x, &sample, &ones)?;
                    collect_relocation_entries(&moved.vector, &moved.sources)
                }
            };
            let mut csv = String::from("row,col,re,im\n");
            for (row, col, v) in entries {
                csv.push_str(&format!(
                    "{row},{col},{},{}\n",
                    jsonio::fmt_f64(v.re),
                    jsonio::fmt_f64(v.im)
                ));
            }
            emit(cli, &csv)
        }
        Command::Mass2 { beta } => {
            let beta: FourierSeries = serde_json::from_str(beta)?;
            let dump = Mass2Dump {
                mass_squared: mass_squared(&beta),
                translation_components: beta.translation_components(),
            };
            emit_json(cli, &dump)
        }
        Command::WitnessBlueshift {
            bound,
            eps,
            quad_points,
        } => {
            let witness = blueshift_witness(*bound, *eps, *quad_points)?;
            emit_json(cli, &witness)
        }
        Command::WitnessNormGrowth {
            beta,
            t,
            quad_points,
        } => {
            let beta = match beta {
                Some(raw) => serde_json::from_str::<FourierSeries>(raw)?,
                None => canonical_supermomentum(LittleGroupKind::Rotation, cli.n)?,
            };
            if t.iter().any(|v| !v.is_finite()) {
                return Err(CliError("rapidities must be finite".to_string()));
            }
            let norms = dual_norm_growth(&beta, t, *quad_points)?;
            let dump = NormGrowthDump {
                t: t.clone(),
                norms,
            };
            emit_json(cli, &dump)
        }
        Command::Verify { mc_samples } => {
            let cfg = VerifyConfig {
                order: cli.n,
                oversample: cli.oversample,
                seed: cli.seed,
                mc_samples: *mc_samples,
            };
            let reports = run_all(&cfg);
            let mut table = String::new();
            for report in &reports {
                table.push_str(&report.summary_line());
                table.push('\n');
                for check in report.checks.iter().filter(|c| !c.pass) {
                    table.push_str(&format!("  failed: {} — {}\n", check.name, check.detail));
                }
            }
            print!("{table}");
            if cli.out.is_some() {
                let dump = VerifyDump {
                    config: cfg,
                    passed: all_passed(&reports),
                    suites: reports.clone(),
                };
                let mut json = jsonio::to_string_17(&dump)
                    .map_err(|e| CliError(format!("serialization failure: {e}")))?;
                json.push('\n');
                jsonio::write_atomic(cli.out.as_deref().expect("checked above"), &json)?;
            }
            Ok(if all_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

// ---------------------------------------------------------------------------
// input parsing and validation

/// Parse a JSON group element, require |det − 1| ≤ tol, and normalize the
/// accepted matrix by 1/√det so downstream code sees det = 1 to roundoff.
fn parse_group_element(raw: &str, tol: f64) -> Result<GroupElement, CliError> {
    let g: GroupElement = serde_json::from_str(raw)?;
    let det = g.det();
    if !det.is_finite() || det <= 0.0 {
        return Err(CliError(format!(
            "matrix determinant must be positive and finite, got {det}"
        )));
    }
    if (det - 1.0).abs() > tol {
        return Err(CliError(format!(
            "matrix determinant {det} differs from 1 by more than --tol {tol}"
        )));
    }
    let s = 1.0 / det.sqrt();
    Ok(GroupElement::new_unchecked(
        g.a * s,
        g.b * s,
        g.c * s,
        g.d * s,
    ))
}

fn required_series(
    raw: &Option<String>,
    flag: &str,
    op: &str,
) -> Result<FourierSeries, CliError> {
    let raw = raw
        .as_deref()
        .ok_or_else(|| CliError(format!("induce --op {op} requires {flag}")))?;
    Ok(serde_json::from_str(raw)?)
}

fn resolve_kind(kind: KindArg, cyclic_n: Option<u32>) -> Result<LittleGroupKind, CliError> {
    match kind {
        KindArg::Rotation => Ok(LittleGroupKind::Rotation),
        KindArg::Cyclic => {
            let n = cyclic_n
                .ok_or_else(|| CliError("--kind cyclic requires --cyclic-n".to_string()))?;
            Ok(LittleGroupKind::CyclicEven(n))
        }
    }
}

fn kind_name(kind: LittleGroupKind) -> String {
    match kind {
        LittleGroupKind::FullG => "full".to_string(),
        LittleGroupKind::Rotation => "rotation".to_string(),
        LittleGroupKind::CyclicEven(n) => format!("cyclic-{n}"),
    }
}

/// The action grid for the requested truncation order (the larger of --n and
/// the input series' own order) and the --grid override, if any.
fn action_grid(cli: &Cli, series_order: usize) -> Result<GridSpec, CliError> {
    let order = cli.n.max(series_order);
    match cli.grid {
        Some(points) => Ok(GridSpec::with_points(order, points)?),
        None => Ok(GridSpec::for_order(order, cli.oversample)),
    }
}

fn build_sample(cli: &Cli, args: &OrbitArgs) -> Result<OrbitSample, CliError> {
    let kind = resolve_kind(args.kind, args.cyclic_n)?;
    let label = match kind {
        LittleGroupKind::Rotation => LittleRepLabel::RotationCharacter { nu: args.nu },
        LittleGroupKind::CyclicEven(n) => LittleRepLabel::CyclicCharacter {
            n,
            lambda: args.lambda,
        },
        LittleGroupKind::FullG => {
            return Err(CliError(
                "the zero supermomentum has no sampled orbit".to_string(),
            ))
        }
    };
    if args.count == 0 {
        return Err(CliError("--count must be positive".to_string()));
    }
    let beta = canonical_supermomentum(kind, cli.n)?;
    let grid = action_grid(cli, beta.order())?;
    let params = SampleParams {
        mode: SampleMode::Random { count: args.count },
        seed: cli.seed,
        window: OrbitWindow::default(),
        match_tol: defaults::MATCH_TOL,
    };
    Ok(build_orbit_sample(&beta, kind, label, &params, &grid)?)
}

fn collect_relocation_entries(
    vector: &EquivariantVector,
    sources: &[Option<usize>],
) -> Vec<(usize, usize, Complex64)> {
    vector
        .values
        .iter()
        .zip(sources)
        .enumerate()
        .filter_map(|(j, (v, src))| src.map(|i| (j, i, *v)))
        .collect()
}

// ---------------------------------------------------------------------------
// output shapes

#[derive(Serialize)]
struct OrbitDump {
    kind: String,
    label: LittleRepLabel,
    match_tol: f64,
    grid_order: usize,
    grid_points: usize,
    points: Vec<OrbitPointDump>,
}

#[derive(Serialize)]
struct OrbitPointDump {
    rep: GroupElement,
    weight: f64,
    momentum: FourierSeries,
}

impl OrbitDump {
    fn from_sample(sample: &OrbitSample) -> Self {
        OrbitDump {
            kind: kind_name(sample.kind),
            label: sample.label,
            match_tol: sample.match_tol,
            grid_order: sample.grid.order(),
            grid_points: sample.grid.points(),
            points: sample
                .points
                .iter()
                .map(|p| OrbitPointDump {
                    rep: p.rep,
                    weight: p.weight,
                    momentum: p.momentum.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct LatticePoint {
    k: u32,
    phi: f64,
    stabilizes: bool,
}

#[derive(Serialize)]
struct LittleGroupDump {
    kind: String,
    beta: FourierSeries,
    mass_squared: f64,
    translation_components: [f64; 3],
    lattice: Vec<LatticePoint>,
}

#[derive(Serialize)]
struct Mass2Dump {
    mass_squared: f64,
    translation_components: [f64; 3],
}

#[derive(Serialize)]
struct NormGrowthDump {
    t: Vec<f64>,
    norms: Vec<f64>,
}

#[derive(Serialize)]
struct VerifyDump {
    config: VerifyConfig,
    passed: bool,
    suites: Vec<bms21::verify::SuiteReport>,
}

// ---------------------------------------------------------------------------
// emission

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> Result<ExitCode, CliError> {
    let mut json = jsonio::to_string_17(value)
        .map_err(|e| CliError(format!("serialization failure: {e}")))?;
    json.push('\n');
    emit(cli, &json)
}

fn emit(cli: &Cli, content: &str) -> Result<ExitCode, CliError> {
    match &cli.out {
        Some(path) => jsonio::write_atomic(path, content)?,
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(content.as_bytes())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
