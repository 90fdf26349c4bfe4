//! Deterministic parameter sweeps over state-preparation pipelines.
//!
//! A sweep is described by a [`SweepConfig`]: a pipeline of stages (state
//! construction, optional noisy channels, optional entanglement swapping),
//! one or two swept parameter axes, fixed values for the remaining
//! parameters, and a list of quantities to evaluate at every grid point.
//! [`run_sweep`] walks the grid in a fixed serial order so that repeated
//! runs produce byte-identical output, and scans any `p` axis for
//! sudden-death and revival boundaries refined by bisection.

pub mod figures;
pub mod output;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::Deserialize;

use crate::channels::{apply_channel, gad_channel, lift_two_qubit, pd_channel, sdc_channel};
use crate::quantifiers::{concurrence, f3_steering, interferometric_power};
use crate::states::{make_almeida_from, BellIndex, DensityOperator};
use crate::swapping::swap_lenient;
use crate::{Error, Result, TOL_ZERO};

/// Half-width at which boundary bisection stops.
pub const BISECTION_WIDTH: f64 = 1e-9;

/// Parameters a pipeline stage can consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamName {
    /// Mixing weight `k` of the initial state.
    K,
    /// Preparation angle `theta` of the initial state (radians).
    Theta,
    /// Channel strength `p`.
    P,
    /// Dissipation rate `gamma` (generalized amplitude damping only).
    Gamma,
}

impl ParamName {
    /// All parameter names, in canonical column order.
    pub const ALL: [ParamName; 4] = [
        ParamName::K,
        ParamName::Theta,
        ParamName::P,
        ParamName::Gamma,
    ];

    /// Lower-case identifier used in configs and output columns.
    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::K => "k",
            ParamName::Theta => "theta",
            ParamName::P => "p",
            ParamName::Gamma => "gamma",
        }
    }

    /// Parse an identifier.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "k" => Ok(ParamName::K),
            "theta" => Ok(ParamName::Theta),
            "p" => Ok(ParamName::P),
            "gamma" => Ok(ParamName::Gamma),
            other => Err(Error::Config(format!(
                "unknown parameter {other:?}; expected one of k, theta, p, gamma"
            ))),
        }
    }

    /// Closed interval of admissible values.
    pub fn domain(self) -> (f64, f64) {
        match self {
            ParamName::Theta => (0.0, std::f64::consts::FRAC_PI_4),
            _ => (0.0, 1.0),
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which noisy channel a `channel:` stage applies (to both qubits).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Phase damping.
    Pd,
    /// Generalized amplitude damping.
    Gad,
    /// Squeezed generalized amplitude damping (collective two-qubit form).
    Sdc,
}

impl ChannelKind {
    fn as_str(self) -> &'static str {
        match self {
            ChannelKind::Pd => "pd",
            ChannelKind::Gad => "gad",
            ChannelKind::Sdc => "sdc",
        }
    }
}

/// One stage of a preparation pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Construct the two-parameter family state from `k` and `theta`.
    ConstructAlmeida,
    /// Send the current state through a noisy channel.
    Channel(ChannelKind),
    /// Entanglement swapping: two copies of the current state joined by a
    /// Bell measurement with the given outcome projector.
    Swap(BellIndex),
}

impl Stage {
    /// Parse a stage spec: `construct-almeida`, `channel:pd|gad|sdc`,
    /// `swap:1..4`.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "construct-almeida" {
            return Ok(Stage::ConstructAlmeida);
        }
        if let Some(ch) = s.strip_prefix("channel:") {
            return match ch {
                "pd" => Ok(Stage::Channel(ChannelKind::Pd)),
                "gad" => Ok(Stage::Channel(ChannelKind::Gad)),
                "sdc" => Ok(Stage::Channel(ChannelKind::Sdc)),
                other => Err(Error::Config(format!(
                    "unknown channel {other:?}; expected pd, gad, or sdc"
                ))),
            };
        }
        if let Some(idx) = s.strip_prefix("swap:") {
            let i: u8 = idx.parse().map_err(|_| {
                Error::Config(format!(
                    "swap stage wants an outcome index 1..4, got {idx:?}"
                ))
            })?;
            return Ok(Stage::Swap(BellIndex::from_index(i)?));
        }
        Err(Error::Config(format!(
            "unknown pipeline stage {s:?}; expected construct-almeida, channel:<name>, or swap:<i>"
        )))
    }

    /// Canonical spec string (inverse of [`Stage::parse`]).
    pub fn spec(self) -> String {
        match self {
            Stage::ConstructAlmeida => "construct-almeida".to_string(),
            Stage::Channel(ch) => format!("channel:{}", ch.as_str()),
            Stage::Swap(b) => format!("swap:{}", b.index()),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// A quantity evaluated on the final state of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// F3 steering.
    Steering,
    /// Concurrence.
    Concurrence,
    /// Interferometric power (discord-type measure).
    Discord,
}

impl Quantity {
    /// Column name used in output.
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Steering => "steering",
            Quantity::Concurrence => "concurrence",
            Quantity::Discord => "discord",
        }
    }

    /// Parse a quantity name.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "steering" => Ok(Quantity::Steering),
            "concurrence" => Ok(Quantity::Concurrence),
            "discord" => Ok(Quantity::Discord),
            other => Err(Error::Config(format!(
                "unknown quantity {other:?}; expected steering, concurrence, or discord"
            ))),
        }
    }

    /// Evaluate this quantity on a two-qubit state.
    pub fn eval(self, rho: &DensityOperator) -> Result<f64> {
        match self {
            Quantity::Steering => f3_steering(rho),
            Quantity::Concurrence => concurrence(rho),
            Quantity::Discord => interferometric_power(rho),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A swept parameter axis: `steps` evenly spaced values on `[min, max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    /// Which parameter this axis sweeps.
    pub name: ParamName,
    /// First grid value.
    pub min: f64,
    /// Last grid value.
    pub max: f64,
    /// Number of grid points (at least 2).
    pub steps: usize,
}

impl Axis {
    /// The grid values, endpoints exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Config(format!(
                "axis {}: steps must be at least 2, got {}",
                self.name, self.steps
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return Err(Error::Config(format!(
                "axis {}: need finite min < max, got [{}, {}]",
                self.name, self.min, self.max
            )));
        }
        let (lo, hi) = self.name.domain();
        // Allow the same rounding slack the state constructors allow at the
        // upper end of the theta domain.
        if self.min < lo || self.max > hi + 1e-12 {
            return Err(Error::Config(format!(
                "axis {}: range [{}, {}] leaves the domain [{}, {}]",
                self.name, self.min, self.max, lo, hi
            )));
        }
        Ok(())
    }
}

/// Output format for sweep results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    /// Comma-separated values (rows only).
    #[default]
    Csv,
    /// JSON document with rows, boundaries, and metadata.
    Json,
}

impl OutputFormat {
    /// Parse `csv` or `json`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown output format {other:?}; expected csv or json"
            ))),
        }
    }
}

/// Where and how a sweep result should be written.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    /// Destination file; standard output when absent.
    pub path: Option<PathBuf>,
    /// Serialization format.
    pub format: OutputFormat,
}

/// Full description of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Pipeline stages, first one must construct the state.
    pub pipeline: Vec<Stage>,
    /// Quantities evaluated on the final state, in column order.
    pub quantities: Vec<Quantity>,
    /// One or two swept axes; the last axis varies fastest.
    pub axes: Vec<Axis>,
    /// Fixed values for parameters that are not swept.
    pub fixed: BTreeMap<ParamName, f64>,
    /// Optional output destination (CLI flags take precedence).
    pub output: Option<OutputSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    pipeline: Vec<String>,
    quantities: Vec<String>,
    #[serde(default)]
    axes: Vec<AxisFile>,
    #[serde(default)]
    fixed: BTreeMap<String, f64>,
    #[serde(default)]
    output: Option<OutputFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisFile {
    name: String,
    min: f64,
    max: f64,
    steps: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputFile {
    #[serde(default)]
    path: Option<String>,
    #[serde(default)]
    format: Option<String>,
}

impl SweepConfig {
    /// Parse a TOML sweep description.
    ///
    /// ```toml
    /// pipeline = ["construct-almeida", "channel:pd"]
    /// quantities = ["steering", "concurrence", "discord"]
    /// fixed = { theta = 0.7853981633974483 }
    ///
    /// [[axes]]
    /// name = "k"
    /// min = 0.0
    /// max = 1.0
    /// steps = 101
    ///
    /// [[axes]]
    /// name = "p"
    /// min = 0.0
    /// max = 1.0
    /// steps = 101
    /// ```
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text)
            .map_err(|e| Error::Config(format!("invalid sweep config: {e}")))?;
        let pipeline = file
            .pipeline
            .iter()
            .map(|s| Stage::parse(s))
            .collect::<Result<Vec<_>>>()?;
        let quantities = file
            .quantities
            .iter()
            .map(|s| Quantity::parse(s))
            .collect::<Result<Vec<_>>>()?;
        let axes = file
            .axes
            .iter()
            .map(|a| {
                Ok(Axis {
                    name: ParamName::parse(&a.name)?,
                    min: a.min,
                    max: a.max,
                    steps: a.steps,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut fixed = BTreeMap::new();
        for (name, value) in &file.fixed {
            fixed.insert(ParamName::parse(name)?, *value);
        }
        let output = match file.output {
            None => None,
            Some(o) => Some(OutputSpec {
                path: o.path.map(PathBuf::from),
                format: match o.format.as_deref() {
                    None => OutputFormat::default(),
                    Some(f) => OutputFormat::parse(f)?,
                },
            }),
        };
        let cfg = SweepConfig {
            pipeline,
            quantities,
            axes,
            fixed,
            output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parameters the pipeline actually consumes.
    pub fn required_params(&self) -> Vec<ParamName> {
        let mut req = vec![ParamName::K, ParamName::Theta];
        if self.pipeline.iter().any(|s| matches!(s, Stage::Channel(_))) {
            req.push(ParamName::P);
        }
        if self
            .pipeline
            .iter()
            .any(|s| matches!(s, Stage::Channel(ChannelKind::Gad)))
        {
            req.push(ParamName::Gamma);
        }
        req
    }

    /// Whether the pipeline contains a swapping stage (adds a probability
    /// column to the output).
    pub fn has_swap(&self) -> bool {
        self.pipeline.iter().any(|s| matches!(s, Stage::Swap(_)))
    }

    /// Check structural consistency; called by [`run_sweep`].
    pub fn validate(&self) -> Result<()> {
        if self.pipeline.first() != Some(&Stage::ConstructAlmeida) {
            return Err(Error::Config(
                "pipeline must start with construct-almeida".to_string(),
            ));
        }
        if self.pipeline[1..].contains(&Stage::ConstructAlmeida) {
            return Err(Error::Config(
                "construct-almeida may appear only as the first stage".to_string(),
            ));
        }
        let swaps = self
            .pipeline
            .iter()
            .filter(|s| matches!(s, Stage::Swap(_)))
            .count();
        if swaps > 1 {
            return Err(Error::Config(
                "at most one swap stage is supported".to_string(),
            ));
        }
        if self.quantities.is_empty() {
            return Err(Error::Config("quantities must not be empty".to_string()));
        }
        for (i, q) in self.quantities.iter().enumerate() {
            if self.quantities[..i].contains(q) {
                return Err(Error::Config(format!("duplicate quantity {q}")));
            }
        }
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Config(format!(
                "need 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        for axis in &self.axes {
            axis.validate()?;
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(Error::Config(format!(
                "axis {} listed twice",
                self.axes[0].name
            )));
        }
        let required = self.required_params();
        for axis in &self.axes {
            if self.fixed.contains_key(&axis.name) {
                return Err(Error::Config(format!(
                    "parameter {} is both swept and fixed",
                    axis.name
                )));
            }
            if !required.contains(&axis.name) {
                return Err(Error::Config(format!(
                    "axis {} is swept but no pipeline stage consumes it",
                    axis.name
                )));
            }
        }
        for name in &required {
            let swept = self.axes.iter().any(|a| a.name == *name);
            let fixed = self.fixed.contains_key(name);
            if !swept && !fixed {
                return Err(Error::Config(format!(
                    "parameter {name} is required by the pipeline but neither swept nor fixed"
                )));
            }
        }
        for (name, value) in &self.fixed {
            let (lo, hi) = name.domain();
            if !value.is_finite() || *value < lo || *value > hi + 1e-12 {
                return Err(Error::Config(format!(
                    "fixed parameter {name} = {value} leaves the domain [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// Concrete parameter values for one pipeline evaluation.
#[derive(Debug, Clone, Copy, Default)]
struct ParamValues {
    k: f64,
    theta: f64,
    p: f64,
    gamma: f64,
}

impl ParamValues {
    fn set(&mut self, name: ParamName, value: f64) {
        match name {
            ParamName::K => self.k = value,
            ParamName::Theta => self.theta = value,
            ParamName::P => self.p = value,
            ParamName::Gamma => self.gamma = value,
        }
    }
}

enum PipelineOutput {
    State {
        state: DensityOperator,
        probability: Option<f64>,
    },
    /// A swap outcome with (numerically) zero probability: no conditional
    /// state exists.
    ZeroProbability { probability: f64 },
}

fn eval_pipeline(pipeline: &[Stage], v: &ParamValues) -> Result<PipelineOutput> {
    let mut state = make_almeida_from(v.k, v.theta)?;
    let mut probability = None;
    for stage in &pipeline[1..] {
        match stage {
            Stage::ConstructAlmeida => unreachable!("rejected by validation"),
            Stage::Channel(ChannelKind::Pd) => {
                let ch = lift_two_qubit(&pd_channel(v.p)?)?;
                state = apply_channel(&state, &ch)?;
            }
            Stage::Channel(ChannelKind::Gad) => {
                let ch = lift_two_qubit(&gad_channel(v.p, v.gamma)?)?;
                state = apply_channel(&state, &ch)?;
            }
            Stage::Channel(ChannelKind::Sdc) => {
                let ch = sdc_channel(v.p)?;
                state = apply_channel(&state, &ch)?;
            }
            Stage::Swap(bell) => {
                let outcome = swap_lenient(&state, &state, *bell)?;
                probability = Some(outcome.probability);
                match outcome.state {
                    Some(s) => state = s,
                    None => {
                        return Ok(PipelineOutput::ZeroProbability {
                            probability: outcome.probability,
                        })
                    }
                }
            }
        }
    }
    Ok(PipelineOutput::State { state, probability })
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Swept parameter values, in axis order (plus any preset-specific
    /// trailing columns such as a Bell outcome index).
    pub params: Vec<f64>,
    /// Quantity values in config order; `None` when the pipeline produced
    /// no conditional state (zero-probability swap outcome).
    pub values: Vec<Option<f64>>,
    /// Swap outcome probability, when the pipeline contains a swap stage.
    pub probability: Option<f64>,
    /// Set when a swap outcome had zero probability.
    pub zero_probability: bool,
}

/// A sudden-death / revival boundary found on a `p` axis slice.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryEvent {
    /// Quantity the boundary belongs to.
    pub quantity: Quantity,
    /// Values of the non-`p` swept parameters identifying the slice
    /// (empty for one-dimensional sweeps).
    pub slice: Vec<(ParamName, f64)>,
    /// Smallest `p` past which the quantity stays at zero, bisected to
    /// [`BISECTION_WIDTH`]; `None` when the quantity never dies (or starts
    /// dead).
    pub sudden_death: Option<f64>,
    /// `(death, revival)` endpoints of the first zero interval that is
    /// followed by a resurgence.
    pub revival: Option<(f64, f64)>,
}

/// Result of a sweep: rows in deterministic order plus detected boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Column names for [`SweepRow::params`].
    pub param_names: Vec<String>,
    /// Column names for [`SweepRow::values`].
    pub quantity_names: Vec<String>,
    /// Whether rows carry a probability column.
    pub has_probability: bool,
    /// Grid rows, sorted lexicographically by parameter values.
    pub rows: Vec<SweepRow>,
    /// Boundary events on `p` axes (empty when no `p` axis or the pipeline
    /// contains a swap stage).
    pub boundaries: Vec<BoundaryEvent>,
    /// Free-form description of how the table was produced
    /// (pipeline, fixed values, grid shape).
    pub metadata: BTreeMap<String, String>,
}

/// Compare parameter vectors lexicographically (total order; the sweep
/// grid never produces NaN).
pub(crate) fn cmp_params(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(ord) => return ord,
        }
    }
    a.len().cmp(&b.len())
}

/// Run a sweep: validate, walk the grid serially, sort rows, detect
/// boundaries on any `p` axis.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let has_probability = cfg.has_swap();

    let axis_values: Vec<Vec<f64>> = cfg.axes.iter().map(Axis::values).collect();
    let mut base = ParamValues::default();
    for (name, value) in &cfg.fixed {
        base.set(*name, *value);
    }

    let mut rows = Vec::new();
    let outer = &axis_values[0];
    let inner: &[f64] = if axis_values.len() == 2 {
        &axis_values[1]
    } else {
        &[f64::NAN] // placeholder, skipped below
    };
    for &a in outer {
        for (j, &b) in inner.iter().enumerate() {
            if axis_values.len() == 1 && j > 0 {
                break;
            }
            let mut v = base;
            v.set(cfg.axes[0].name, a);
            let mut params = vec![a];
            if axis_values.len() == 2 {
                v.set(cfg.axes[1].name, b);
                params.push(b);
            }
            let row = match eval_pipeline(&cfg.pipeline, &v)? {
                PipelineOutput::State { state, probability } => {
                    let values = cfg
                        .quantities
                        .iter()
                        .map(|q| q.eval(&state).map(Some))
                        .collect::<Result<Vec<_>>>()?;
                    SweepRow {
                        params,
                        values,
                        probability,
                        zero_probability: false,
                    }
                }
                PipelineOutput::ZeroProbability { probability } => SweepRow {
                    params,
                    values: vec![None; cfg.quantities.len()],
                    probability: Some(probability),
                    zero_probability: true,
                },
            };
            rows.push(row);
        }
    }
    rows.sort_by(|ra, rb| cmp_params(&ra.params, &rb.params));

    let boundaries = compute_boundaries(cfg, &rows);

    let mut metadata = BTreeMap::new();
    metadata.insert(
        "pipeline".to_string(),
        cfg.pipeline
            .iter()
            .map(|s| s.spec())
            .collect::<Vec<_>>()
            .join(", "),
    );
    for (name, value) in &cfg.fixed {
        metadata.insert(format!("fixed.{name}"), format!("{value}"));
    }
    for (i, axis) in cfg.axes.iter().enumerate() {
        metadata.insert(
            format!("axis.{i}"),
            format!(
                "{}: {} .. {}, steps = {}",
                axis.name, axis.min, axis.max, axis.steps
            ),
        );
    }

    Ok(SweepResult {
        param_names: cfg
            .axes
            .iter()
            .map(|a| a.name.as_str().to_string())
            .collect(),
        quantity_names: cfg
            .quantities
            .iter()
            .map(|q| q.as_str().to_string())
            .collect(),
        has_probability,
        rows,
        boundaries,
        metadata,
    })
}

/// Scan each `p` slice of the sorted rows for sudden-death and revival
/// boundaries. Swap pipelines are skipped: their conditional state is
/// undefined at zero-probability points, so threshold bisection is not
/// well posed there.
fn compute_boundaries(cfg: &SweepConfig, rows: &[SweepRow]) -> Vec<BoundaryEvent> {
    let Some(p_idx) = cfg.axes.iter().position(|a| a.name == ParamName::P) else {
        return Vec::new();
    };
    if cfg.has_swap() {
        return Vec::new();
    }

    // Group rows into slices sharing the non-p axis value.
    type Series<'a> = Vec<(f64, &'a SweepRow)>;
    let other_idx = 1 - p_idx;
    let mut slices: Vec<(Option<f64>, Series)> = Vec::new();
    if cfg.axes.len() == 1 {
        slices.push((None, rows.iter().map(|r| (r.params[0], r)).collect()));
    } else {
        let mut by_other: BTreeMap<u64, (f64, Series)> = BTreeMap::new();
        for row in rows {
            let other = row.params[other_idx];
            let p = row.params[p_idx];
            by_other
                .entry(other.to_bits())
                .or_insert_with(|| (other, Vec::new()))
                .1
                .push((p, row));
        }
        for (_, (other, mut series)) in by_other {
            series.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            slices.push((Some(other), series));
        }
    }

    let mut events = Vec::new();
    for (other_value, series) in &slices {
        let mut v = ParamValues::default();
        for (name, value) in &cfg.fixed {
            v.set(*name, *value);
        }
        if let Some(ov) = other_value {
            v.set(cfg.axes[other_idx].name, *ov);
        }
        for (qi, quantity) in cfg.quantities.iter().enumerate() {
            let values: Vec<(f64, f64)> = series
                .iter()
                .map(|(p, row)| (*p, row.values[qi].expect("no swap stage, value present")))
                .collect();
            let eval = |p: f64| -> f64 {
                let mut vp = v;
                vp.set(ParamName::P, p);
                match eval_pipeline(&cfg.pipeline, &vp)
                    .expect("pipeline evaluation within validated domain")
                {
                    PipelineOutput::State { state, .. } => quantity
                        .eval(&state)
                        .expect("quantifier on a valid two-qubit state"),
                    PipelineOutput::ZeroProbability { .. } => {
                        unreachable!("boundary scan skips swap pipelines")
                    }
                }
            };
            let sudden_death = detect_sudden_death(&values, eval);
            let revival = detect_revival(&values, eval);
            if sudden_death.is_some() || revival.is_some() {
                let slice = match other_value {
                    Some(ov) => vec![(cfg.axes[other_idx].name, *ov)],
                    None => Vec::new(),
                };
                events.push(BoundaryEvent {
                    quantity: *quantity,
                    slice,
                    sudden_death,
                    revival,
                });
            }
        }
    }
    events
}

/// Bisect the falling edge between `lo` (value above threshold) and `hi`
/// (value at or below threshold) down to [`BISECTION_WIDTH`].
fn bisect_edge<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, eval: &F, rising: bool) -> f64 {
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let above = eval(mid) > TOL_ZERO;
        // Falling edge: the zero side is high; rising edge: the zero side
        // is low.
        if above == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Find the sudden-death point of a sampled series `(p, value)` sorted by
/// `p`: the smallest `p` past which the value stays at (numerical) zero
/// for the rest of the series, refined by bisecting `eval`.
///
/// Returns `None` when the series never settles at zero, or is zero from
/// the start (nothing died).
pub fn detect_sudden_death<F: Fn(f64) -> f64>(series: &[(f64, f64)], eval: F) -> Option<f64> {
    if series.len() < 2 {
        return None;
    }
    let n = series.len();
    let mut j = n;
    while j > 0 && series[j - 1].1 <= TOL_ZERO {
        j -= 1;
    }
    if j == n || j == 0 {
        return None;
    }
    Some(bisect_edge(series[j - 1].0, series[j].0, &eval, false))
}

/// Find the first revival of a sampled series `(p, value)` sorted by `p`:
/// a maximal run of (numerical) zeros followed by a positive value.
/// Returns the refined `(death, revival)` endpoints of that zero interval.
/// When the series starts at zero the death endpoint is the first grid
/// point, unrefined.
///
/// Returns `None` when the series has no zero run, or the first zero run
/// extends to the end of the series (death without rebirth).
pub fn detect_revival<F: Fn(f64) -> f64>(series: &[(f64, f64)], eval: F) -> Option<(f64, f64)> {
    let n = series.len();
    let mut i = 0;
    while i < n && series[i].1 > TOL_ZERO {
        i += 1;
    }
    if i == n {
        return None;
    }
    let mut j = i;
    while j < n && series[j].1 <= TOL_ZERO {
        j += 1;
    }
    if j == n {
        return None;
    }
    let death = if i == 0 {
        series[0].0
    } else {
        bisect_edge(series[i - 1].0, series[i].0, &eval, false)
    };
    let revival = bisect_edge(series[j - 1].0, series[j].0, &eval, true);
    Some((death, revival))
}
