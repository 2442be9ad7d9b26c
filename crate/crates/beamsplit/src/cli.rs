//! Batch front end: build states, rotate them through beam splitters, report
//! entanglement diagnostics, sweep reflectivity, and run the claim suite.
//!
//! File formats:
//! - states: JSON with complex entries as [re, im] pairs, row-major in the
//!   mode-a-major flattening; doubles round-trip exactly.
//! - sweeps: CSV with a versioned header comment.
//! - verification: JSON manifest of claim results.
//!
//! Exit codes: 0 success, 1 claim failure, 2 usage error, 3 cutoff/leakage
//! error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::entanglement::{self, negativity};
use crate::error::{Error, Result};
use crate::fock::{tensor, CutoffConfig, JointState, SingleModeState};
use crate::linalg::CMat;
use crate::optics::{apply_bs, BeamSplitterParams, BsUnitary};
use crate::states;
use crate::verify::{self, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CUTOFF: i32 = 3;

const DEFAULT_N_MAX: usize = 30;

/// Parses a complex literal such as `1.5`, `-0.3i`, `1.0+2.0i`, or
/// `2.5e-3-1e2i`. The imaginary unit is a trailing `i`.
pub fn parse_complex(input: &str) -> std::result::Result<C64, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let body = match s.strip_suffix('i') {
        None => {
            // Purely real.
            return s
                .parse::<f64>()
                .map(|re| C64::new(re, 0.0))
                .map_err(|e| format!("bad real literal {s:?}: {e}"));
        }
        Some(body) => body,
    };
    // Split an explicit real part from the imaginary coefficient: the sign
    // starting the imaginary term is the last '+'/'-' that is neither the
    // leading sign nor an exponent sign.
    let mut split = None;
    let mut prev = None;
    for (idx, ch) in body.char_indices() {
        if (ch == '+' || ch == '-') && idx > 0 && !matches!(prev, Some('e') | Some('E')) {
            split = Some(idx);
        }
        prev = Some(ch);
    }
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str
            .parse::<f64>()
            .map_err(|e| format!("bad real part {re_str:?}: {e}"))?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => im_str
            .parse::<f64>()
            .map_err(|e| format!("bad imaginary part {im_str:?}: {e}"))?,
    };
    Ok(C64::new(re, im))
}

fn cpx(pair: [f64; 2]) -> C64 {
    C64::new(pair[0], pair[1])
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

/// Descriptor for a single-mode state, as used in configs and on the command
/// line.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SingleDescriptor {
    Fock { n: usize },
    Coherent { alpha: [f64; 2] },
    SqueezedVacuum { gamma: [f64; 2] },
    DisplacedSqueezed { alpha: [f64; 2], gamma: [f64; 2] },
    Thermal { nbar: f64 },
}

/// Descriptor for a two-mode state.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum JointDescriptor {
    Product {
        a: SingleDescriptor,
        b: SingleDescriptor,
    },
    FockPair {
        m: usize,
        n: usize,
    },
    Unpolarized {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sector: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambdas: Option<Vec<f64>>,
    },
    LaserAverage {
        intensity: f64,
    },
    DisplacedNumberMixture {
        n_total: usize,
        alpha: [f64; 2],
        beta: [f64; 2],
    },
    MatchedSqueezedPair {
        alpha: [f64; 2],
        beta: [f64; 2],
        gamma: [f64; 2],
        phi: f64,
    },
    ClassicalMixture {
        components: Vec<MixtureComponent>,
    },
    ZeroEntanglementFamily {
        phi: f64,
        samples: Vec<FamilySampleSpec>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub weight: f64,
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySampleSpec {
    pub weight: f64,
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub gamma: [f64; 2],
    pub lambdas: Vec<f64>,
}

/// Builds a single-mode state from its descriptor.
pub fn build_single(desc: &SingleDescriptor, cutoff: CutoffConfig) -> Result<SingleModeState> {
    match desc {
        SingleDescriptor::Fock { n } => states::fock(*n, cutoff),
        SingleDescriptor::Coherent { alpha } => states::coherent(cpx(*alpha), cutoff),
        SingleDescriptor::SqueezedVacuum { gamma } => states::squeezed_vacuum(cpx(*gamma), cutoff),
        SingleDescriptor::DisplacedSqueezed { alpha, gamma } => {
            states::displaced_squeezed(cpx(*alpha), cpx(*gamma), cutoff)
        }
        SingleDescriptor::Thermal { nbar } => states::thermal(*nbar, cutoff),
    }
}

/// Builds a two-mode state from its descriptor.
pub fn build_joint(desc: &JointDescriptor, cutoff: CutoffConfig) -> Result<JointState> {
    match desc {
        JointDescriptor::Product { a, b } => {
            tensor(&build_single(a, cutoff)?, &build_single(b, cutoff)?)
        }
        JointDescriptor::FockPair { m, n } => tensor(
            &states::fock(*m, cutoff)?,
            &states::fock(*n, cutoff)?,
        ),
        JointDescriptor::Unpolarized { sector, lambdas } => {
            let spec = match (sector, lambdas) {
                (Some(n), None) => states::UnpolarizedSpec::single_sector(*n),
                (None, Some(l)) => states::UnpolarizedSpec::new(l.clone())?,
                _ => {
                    return Err(Error::Spec(
                        "unpolarized descriptor needs exactly one of `sector` or `lambdas`".into(),
                    ))
                }
            };
            states::unpolarized(&spec, cutoff)
        }
        JointDescriptor::LaserAverage { intensity } => states::laser_average(*intensity, cutoff),
        JointDescriptor::DisplacedNumberMixture { n_total, alpha, beta } => {
            states::displaced_number_mixture(*n_total, cpx(*alpha), cpx(*beta), cutoff)
        }
        JointDescriptor::MatchedSqueezedPair { alpha, beta, gamma, phi } => {
            states::matched_squeezed_pair(cpx(*alpha), cpx(*beta), cpx(*gamma), *phi, cutoff)
        }
        JointDescriptor::ClassicalMixture { components } => {
            let comps: Vec<(f64, C64, C64)> = components
                .iter()
                .map(|c| (c.weight, cpx(c.alpha), cpx(c.beta)))
                .collect();
            states::classical_coherent_mixture(&comps, cutoff)
        }
        JointDescriptor::ZeroEntanglementFamily { phi, samples } => {
            let samples: Vec<states::FamilySample> = samples
                .iter()
                .map(|s| {
                    Ok(states::FamilySample {
                        weight: s.weight,
                        alpha: cpx(s.alpha),
                        beta: cpx(s.beta),
                        gamma: cpx(s.gamma),
                        spec: states::UnpolarizedSpec::new(s.lambdas.clone())?,
                    })
                })
                .collect::<Result<_>>()?;
            states::zero_entanglement_family(&samples, *phi, cutoff)
        }
    }
}

/// On-disk state format. `data` is row-major; a pure two-mode state stores
/// the amplitude grid, a mixed one the full density matrix on the flattened
/// basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub format: String,
    pub version: u32,
    pub modes: u8,
    pub kind: String,
    pub n_max: usize,
    pub leakage_tol: f64,
    pub leakage: f64,
    pub data: Vec<[f64; 2]>,
}

pub const STATE_FORMAT: &str = "beamsplit-state";
pub const STATE_VERSION: u32 = 1;

impl StateFile {
    pub fn from_single(state: &SingleModeState) -> Self {
        let (kind, data) = match state.amplitudes() {
            Some(amps) => ("pure", amps.iter().map(|&z| pair(z)).collect()),
            None => ("mixed", state.density().data().iter().map(|&z| pair(z)).collect()),
        };
        Self {
            format: STATE_FORMAT.into(),
            version: STATE_VERSION,
            modes: 1,
            kind: kind.into(),
            n_max: state.cutoff().n_max(),
            leakage_tol: state.cutoff().leakage_tol(),
            leakage: state.leakage(),
            data,
        }
    }

    pub fn from_joint(state: &JointState) -> Self {
        let (kind, data) = match state.grid() {
            Some(grid) => ("pure", grid.data().iter().map(|&z| pair(z)).collect()),
            None => ("mixed", state.density().data().iter().map(|&z| pair(z)).collect()),
        };
        Self {
            format: STATE_FORMAT.into(),
            version: STATE_VERSION,
            modes: 2,
            kind: kind.into(),
            n_max: state.cutoff().n_max(),
            leakage_tol: state.cutoff().leakage_tol(),
            leakage: state.leakage(),
            data,
        }
    }

    fn check_header(&self) -> Result<CutoffConfig> {
        if self.format != STATE_FORMAT {
            return Err(Error::Spec(format!("unknown state format {:?}", self.format)));
        }
        if self.version != STATE_VERSION {
            return Err(Error::Spec(format!("unsupported state version {}", self.version)));
        }
        CutoffConfig::new(self.n_max, self.leakage_tol)
    }

    fn matrix(&self, rows: usize, cols: usize) -> Result<CMat> {
        if self.data.len() != rows * cols {
            return Err(Error::Spec(format!(
                "state data has {} entries, expected {}",
                self.data.len(),
                rows * cols
            )));
        }
        Ok(CMat::from_fn(rows, cols, |i, j| cpx(self.data[i * cols + j])))
    }

    pub fn to_single(&self) -> Result<SingleModeState> {
        let cutoff = self.check_header()?;
        if self.modes != 1 {
            return Err(Error::Spec("expected a single-mode state file".into()));
        }
        let dim = cutoff.dim();
        match self.kind.as_str() {
            "pure" => {
                if self.data.len() != dim {
                    return Err(Error::Spec(format!(
                        "pure state has {} amplitudes, expected {dim}",
                        self.data.len()
                    )));
                }
                let amps = self.data.iter().map(|&p| cpx(p)).collect();
                SingleModeState::pure_with_leakage(amps, cutoff, self.leakage)
            }
            "mixed" => SingleModeState::mixed_from_density(self.matrix(dim, dim)?, cutoff),
            other => Err(Error::Spec(format!("unknown state kind {other:?}"))),
        }
    }

    pub fn to_joint(&self) -> Result<JointState> {
        let cutoff = self.check_header()?;
        if self.modes != 2 {
            return Err(Error::Spec("expected a two-mode state file".into()));
        }
        let dim = cutoff.dim();
        match self.kind.as_str() {
            "pure" => JointState::pure_from_grid(self.matrix(dim, dim)?, cutoff),
            "mixed" => {
                JointState::mixed_from_density(self.matrix(dim * dim, dim * dim)?, cutoff)
            }
            other => Err(Error::Spec(format!("unknown state kind {other:?}"))),
        }
    }
}

/// Parses state-file JSON bytes.
pub fn parse_state_file(bytes: &[u8]) -> Result<StateFile> {
    serde_json::from_slice(bytes).map_err(|e| Error::Spec(format!("bad state file: {e}")))
}

/// Parses a joint-state descriptor from JSON text.
pub fn parse_joint_descriptor(text: &str) -> Result<JointDescriptor> {
    serde_json::from_str(text).map_err(|e| Error::Spec(format!("bad state descriptor: {e}")))
}

/// Parses a single-mode descriptor from JSON text.
pub fn parse_single_descriptor(text: &str) -> Result<SingleDescriptor> {
    serde_json::from_str(text).map_err(|e| Error::Spec(format!("bad state descriptor: {e}")))
}

/// Parses a claim-suite config from JSON bytes.
pub fn parse_verify_config(bytes: &[u8]) -> Result<VerifyConfig> {
    serde_json::from_slice(bytes).map_err(|e| Error::Spec(format!("bad verify config: {e}")))
}

#[derive(Parser, Debug)]
#[command(name = "beamsplit", version, about = "Two-mode beam-splitter entanglement simulator")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a state and write it to a JSON file.
    State(StateArgs),
    /// Apply a beam splitter to a stored or described state.
    Apply(ApplyArgs),
    /// Write the entanglement report of a state as JSON.
    Report(ReportArgs),
    /// Sweep the rotation angle and write entanglement metrics as CSV.
    Sweep(SweepArgs),
    /// Run the claim suite and write its manifest.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CutoffArgs {
    /// Photon-number cutoff per mode.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    nmax: usize,
    /// Tolerated truncation leakage per state.
    #[arg(long, default_value_t = CutoffConfig::DEFAULT_LEAKAGE_TOL)]
    leakage_tol: f64,
}

impl CutoffArgs {
    fn cutoff(&self) -> Result<CutoffConfig> {
        CutoffConfig::new(self.nmax, self.leakage_tol)
    }
}

#[derive(Args, Debug)]
struct StateArgs {
    /// fock | coherent | squeezed | displaced-squeezed | thermal |
    /// unpolarized | laser; alternatively use --descriptor.
    #[arg(long, conflicts_with = "descriptor")]
    kind: Option<String>,
    /// Photon number for --kind fock.
    #[arg(long)]
    n: Option<usize>,
    /// Displacement amplitude, e.g. 1.0+0.5i.
    #[arg(long, value_parser = parse_complex_arg)]
    alpha: Option<C64>,
    /// Squeeze parameter, e.g. 0.4 or 0.3-0.1i.
    #[arg(long, value_parser = parse_complex_arg)]
    gamma: Option<C64>,
    /// Mean occupation for --kind thermal.
    #[arg(long)]
    nbar: Option<f64>,
    /// Total photon number for --kind unpolarized.
    #[arg(long)]
    sector: Option<usize>,
    /// Comma-separated sector weights for --kind unpolarized.
    #[arg(long)]
    lambdas: Option<String>,
    /// Laser intensity |α|² for --kind laser.
    #[arg(long)]
    intensity: Option<f64>,
    /// Inline JSON descriptor (single- or two-mode).
    #[arg(long)]
    descriptor: Option<String>,
    #[command(flatten)]
    cutoff: CutoffArgs,
    /// Output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ApplyArgs {
    /// Two-mode input state file.
    #[arg(long = "in", conflicts_with_all = ["a", "b"])]
    input: Option<PathBuf>,
    /// Single-mode state file for mode a (tensored with --b).
    #[arg(long, requires = "b")]
    a: Option<PathBuf>,
    /// Single-mode state file for mode b.
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    /// Rotation angle θ in radians (reflectivity sin²(θ/2)).
    #[arg(long)]
    theta: f64,
    /// Phase φ in radians.
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Two-mode state file to diagnose.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Mode-a descriptor: inline JSON or a path to a descriptor file.
    #[arg(long)]
    a: String,
    /// Mode-b descriptor: inline JSON or a path to a descriptor file.
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = 0.0)]
    theta_start: f64,
    #[arg(long)]
    theta_end: f64,
    /// Number of grid points (≥ 2).
    #[arg(long)]
    steps: usize,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[command(flatten)]
    cutoff: CutoffArgs,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Manifest output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed recorded in every claim result.
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file overriding the suite configuration.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_complex_arg(s: &str) -> std::result::Result<C64, String> {
    parse_complex(s)
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

fn parse_lambdas(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| Error::Spec(format!("bad weight {part:?}: {e}")))
        })
        .collect()
}

enum BuiltState {
    Single(SingleModeState),
    Joint(JointState),
}

fn build_from_args(args: &StateArgs, cutoff: CutoffConfig) -> Result<BuiltState> {
    if let Some(descriptor) = &args.descriptor {
        // Try the two-mode descriptor first, then the single-mode one.
        if let Ok(joint) = parse_joint_descriptor(descriptor) {
            return Ok(BuiltState::Joint(build_joint(&joint, cutoff)?));
        }
        let single = parse_single_descriptor(descriptor)?;
        return Ok(BuiltState::Single(build_single(&single, cutoff)?));
    }
    let kind = args
        .kind
        .as_deref()
        .ok_or_else(|| Error::Config("either --kind or --descriptor is required".into()))?;
    let need = |value: Option<C64>, name: &str| {
        value.ok_or_else(|| Error::Config(format!("--{name} is required for --kind {kind}")))
    };
    match kind {
        "fock" => {
            let n = args
                .n
                .ok_or_else(|| Error::Config("--n is required for --kind fock".into()))?;
            Ok(BuiltState::Single(states::fock(n, cutoff)?))
        }
        "coherent" => Ok(BuiltState::Single(states::coherent(
            need(args.alpha, "alpha")?,
            cutoff,
        )?)),
        "squeezed" => Ok(BuiltState::Single(states::squeezed_vacuum(
            need(args.gamma, "gamma")?,
            cutoff,
        )?)),
        "displaced-squeezed" => Ok(BuiltState::Single(states::displaced_squeezed(
            need(args.alpha, "alpha")?,
            need(args.gamma, "gamma")?,
            cutoff,
        )?)),
        "thermal" => {
            let nbar = args
                .nbar
                .ok_or_else(|| Error::Config("--nbar is required for --kind thermal".into()))?;
            Ok(BuiltState::Single(states::thermal(nbar, cutoff)?))
        }
        "unpolarized" => {
            let spec = match (&args.sector, &args.lambdas) {
                (Some(n), None) => states::UnpolarizedSpec::single_sector(*n),
                (None, Some(text)) => states::UnpolarizedSpec::new(parse_lambdas(text)?)?,
                _ => {
                    return Err(Error::Config(
                        "--kind unpolarized needs exactly one of --sector or --lambdas".into(),
                    ))
                }
            };
            Ok(BuiltState::Joint(states::unpolarized(&spec, cutoff)?))
        }
        "laser" => {
            let intensity = args
                .intensity
                .ok_or_else(|| Error::Config("--intensity is required for --kind laser".into()))?;
            Ok(BuiltState::Joint(states::laser_average(intensity, cutoff)?))
        }
        other => Err(Error::Config(format!("unknown state kind {other:?}"))),
    }
}

fn cmd_state(args: &StateArgs) -> Result<()> {
    let cutoff = args.cutoff.cutoff()?;
    let file = match build_from_args(args, cutoff)? {
        BuiltState::Single(state) => StateFile::from_single(&state),
        BuiltState::Joint(state) => StateFile::from_joint(&state),
    };
    write_file(&args.out, &serde_json::to_string(&file).expect("state serializes"))
}

fn cmd_apply(args: &ApplyArgs) -> Result<()> {
    let state = match (&args.input, &args.a, &args.b) {
        (Some(path), None, None) => parse_state_file(&read_file(path)?)?.to_joint()?,
        (None, Some(a), Some(b)) => {
            let sa = parse_state_file(&read_file(a)?)?.to_single()?;
            let sb = parse_state_file(&read_file(b)?)?.to_single()?;
            tensor(&sa, &sb)?
        }
        _ => return Err(Error::Config("provide either --in or both --a and --b".into())),
    };
    let params = BeamSplitterParams::new(args.theta, args.phi)?;
    let rotated = apply_bs(&state, params);
    write_file(
        &args.out,
        &serde_json::to_string(&StateFile::from_joint(&rotated)).expect("state serializes"),
    )
}

fn cmd_report(args: &ReportArgs) -> Result<()> {
    let state = parse_state_file(&read_file(&args.input)?)?.to_joint()?;
    let report = entanglement::report(&state);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(path) => write_file(path, &json),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout(), "{json}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Error::Config(format!("cannot write to stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn descriptor_from_arg(arg: &str) -> Result<SingleDescriptor> {
    if arg.trim_start().starts_with('{') {
        parse_single_descriptor(arg)
    } else {
        let bytes = read_file(Path::new(arg))?;
        let text = String::from_utf8(bytes)
            .map_err(|e| Error::Spec(format!("descriptor file is not UTF-8: {e}")))?;
        parse_single_descriptor(&text)
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    if args.steps < 2 {
        return Err(Error::Config("--steps must be at least 2".into()));
    }
    let cutoff = args.cutoff.cutoff()?;
    let a = build_single(&descriptor_from_arg(&args.a)?, cutoff)?;
    let b = build_single(&descriptor_from_arg(&args.b)?, cutoff)?;
    let joint = tensor(&a, &b)?;
    let mut rows = String::from("# beamsplit sweep v1: theta,e_p,negativity,min_pt_eigenvalue\n");
    for i in 0..args.steps {
        let theta = args.theta_start
            + (args.theta_end - args.theta_start) * i as f64 / (args.steps - 1) as f64;
        let unitary = BsUnitary::new(BeamSplitterParams::new(theta, args.phi)?, cutoff);
        let rotated = unitary.apply(&joint);
        let ep = entanglement::e_p(&rotated);
        let neg = negativity(&rotated);
        rows.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            theta, ep, neg.negativity, neg.min_pt_eigenvalue
        ));
    }
    write_file(&args.out, &rows)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let mut config = match &args.config {
        Some(path) => parse_verify_config(&read_file(path)?)?,
        None => VerifyConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let results = verify::run_all(&config);
    let passed = results.iter().filter(|r| r.pass).count();
    println!("{passed}/{} claims passed", results.len());
    if let Some(path) = &args.out {
        write_file(path, &verify::manifest_json(&results))?;
    }
    Ok(if passed == results.len() { EXIT_OK } else { EXIT_CLAIM_FAILURE })
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Leakage { .. } | Error::AboveCutoff { .. } => EXIT_CUTOFF,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` and runs the requested command, returning the process exit
/// code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints its own message; --help and --version are not
            // usage errors.
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::State(args) => cmd_state(args).map(|()| EXIT_OK),
        Command::Apply(args) => cmd_apply(args).map(|()| EXIT_OK),
        Command::Report(args) => cmd_report(args).map(|()| EXIT_OK),
        Command::Sweep(args) => cmd_sweep(args).map(|()| EXIT_OK),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::Leakage { recommended_n_max: Some(rec), .. } = err {
                eprintln!("hint: retry with --nmax {rec} or larger");
            }
            exit_code_for(&err)
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals_parse() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("1.0+0.0i").unwrap(), C64::new(1.0, 0.0));
        assert_eq!(parse_complex("-0.5i").unwrap(), C64::new(0.0, -0.5));
        assert_eq!(parse_complex("2.5e-3-1e2i").unwrap(), C64::new(2.5e-3, -1e2));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("3-i").unwrap(), C64::new(3.0, -1.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1.0+").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1..2i").is_err());
    }

    #[test]
    fn state_file_round_trip_is_bit_exact() {
        let cutoff = CutoffConfig::with_default_tol(12).unwrap();
        let state = states::coherent(C64::new(0.7, -0.3), cutoff).unwrap();
        let file = StateFile::from_single(&state);
        let json = serde_json::to_string(&file).unwrap();
        let parsed = parse_state_file(json.as_bytes()).unwrap();
        let reloaded = parsed.to_single().unwrap();
        for (x, y) in state
            .amplitudes()
            .unwrap()
            .iter()
            .zip(reloaded.amplitudes().unwrap())
        {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn joint_descriptor_round_trip() {
        let text = r#"{"kind":"displaced_number_mixture","n_total":1,"alpha":[0.4,0.0],"beta":[0.0,-0.2]}"#;
        let desc = parse_joint_descriptor(text).unwrap();
        let cutoff = CutoffConfig::with_default_tol(18).unwrap();
        let state = build_joint(&desc, cutoff).unwrap();
        assert!((state.trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn descriptor_rejects_unknown_fields() {
        assert!(parse_joint_descriptor(r#"{"kind":"fock_pair","m":0,"n":0,"x":1}"#).is_err());
        assert!(parse_single_descriptor(r#"{"kind":"coherent"}"#).is_err());
    }
}
