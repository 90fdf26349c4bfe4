//! Canned sweep presets reproducing the data sets behind the study's
//! figures.
//!
//! Identifiers `"1"` through `"9"` cover the main figures; `"b1"`,
//! `"b2"`, `"b3"` cover the appendix surface plots. Every preset runs
//! through the same deterministic sweep engine, so repeated calls yield
//! identical results.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use crate::quantifiers::f3_steering;
use crate::states::{make_almeida_from, BellIndex};
use crate::swapping::swap_lenient;
use crate::sweep::{
    cmp_params, run_sweep, Axis, ChannelKind, ParamName, Quantity, Stage, SweepConfig, SweepResult,
    SweepRow,
};
use crate::{Error, Result};

/// All recognized figure identifiers.
pub const FIGURE_IDS: [&str; 12] = [
    "1", "2", "3", "4", "5", "6", "7", "8", "9", "b1", "b2", "b3",
];

/// Default number of grid points per swept axis.
pub const DEFAULT_GRID: usize = 101;

/// Default number of theta samples for the swapping line plots (8, 9).
pub const DEFAULT_THETA_POINTS: usize = 201;

/// Compute the data set behind a figure at default resolution.
pub fn figure_data(id: &str) -> Result<SweepResult> {
    figure_data_with_grid(id, None)
}

/// Compute the data set behind a figure, overriding the per-axis grid
/// resolution when `grid` is given.
pub fn figure_data_with_grid(id: &str, grid: Option<usize>) -> Result<SweepResult> {
    if let Some(n) = grid {
        if n < 2 {
            return Err(Error::Config(format!(
                "grid must be at least 2 points per axis, got {n}"
            )));
        }
    }
    let n = grid.unwrap_or(DEFAULT_GRID);
    let all = vec![Quantity::Steering, Quantity::Concurrence, Quantity::Discord];
    match id {
        // Quantifiers of the bare two-parameter family over (k, theta).
        "1" => surface(vec![Stage::ConstructAlmeida], all, k_theta_axes(n), []),
        // Same surface after phase damping at fixed strength.
        "2" => surface(
            vec![Stage::ConstructAlmeida, Stage::Channel(ChannelKind::Pd)],
            all,
            k_theta_axes(n),
            [(ParamName::P, 0.4)],
        ),
        // Phase damping at the maximally entangled angle over (k, p).
        "3" => surface(
            vec![Stage::ConstructAlmeida, Stage::Channel(ChannelKind::Pd)],
            all,
            k_p_axes(n),
            [(ParamName::Theta, FRAC_PI_4)],
        ),
        // Generalized amplitude damping over (theta, p) at fixed k, gamma.
        "4" => surface(
            vec![Stage::ConstructAlmeida, Stage::Channel(ChannelKind::Gad)],
            all,
            theta_p_axes(n),
            [(ParamName::K, 0.9), (ParamName::Gamma, 0.3)],
        ),
        // Collective dephasing at the maximally entangled angle over (k, p).
        "5" => surface(
            vec![Stage::ConstructAlmeida, Stage::Channel(ChannelKind::Sdc)],
            all,
            k_p_axes(n),
            [(ParamName::Theta, FRAC_PI_4)],
        ),
        // Swapping through the first pair of Bell projectors over (k, theta).
        "6" => swap_surface([BellIndex::Phi1, BellIndex::Phi2], n),
        // Swapping through the second pair of Bell projectors.
        "7" => swap_surface([BellIndex::Phi3, BellIndex::Phi4], n),
        // Steering before/after swapping a pure input, with probabilities.
        "8" => steering_transfer(1.0, grid.unwrap_or(DEFAULT_THETA_POINTS)),
        // Same transfer just below purity, where enhancement appears.
        "9" => steering_transfer(0.93, grid.unwrap_or(DEFAULT_THETA_POINTS)),
        // Appendix surfaces over (theta, p) at fixed k.
        "b1" => surface(
            vec![Stage::ConstructAlmeida, Stage::Channel(ChannelKind::Pd)],
            all,
            theta_p_axes(n),
            [(ParamName::K, 0.8)],
        ),
        "b2" => surface(
            vec![Stage::ConstructAlmeida, Stage::Channel(ChannelKind::Gad)],
            vec![Quantity::Steering, Quantity::Concurrence],
            theta_p_axes(n),
            [(ParamName::K, 0.9), (ParamName::Gamma, 0.6)],
        ),
        "b3" => surface(
            vec![Stage::ConstructAlmeida, Stage::Channel(ChannelKind::Sdc)],
            all,
            theta_p_axes(n),
            [(ParamName::K, 0.8)],
        ),
        other => Err(Error::Config(format!(
            "unknown figure id {other:?}; expected one of {}",
            FIGURE_IDS.join(", ")
        ))),
    }
}

fn axis(name: ParamName, steps: usize) -> Axis {
    let (min, max) = name.domain();
    Axis {
        name,
        min,
        max,
        steps,
    }
}

fn k_theta_axes(n: usize) -> Vec<Axis> {
    vec![axis(ParamName::K, n), axis(ParamName::Theta, n)]
}

fn k_p_axes(n: usize) -> Vec<Axis> {
    vec![axis(ParamName::K, n), axis(ParamName::P, n)]
}

fn theta_p_axes(n: usize) -> Vec<Axis> {
    vec![axis(ParamName::Theta, n), axis(ParamName::P, n)]
}

fn surface<const N: usize>(
    pipeline: Vec<Stage>,
    quantities: Vec<Quantity>,
    axes: Vec<Axis>,
    fixed: [(ParamName, f64); N],
) -> Result<SweepResult> {
    run_sweep(&SweepConfig {
        pipeline,
        quantities,
        axes,
        fixed: fixed.into_iter().collect(),
        output: None,
    })
}

/// Two swap sweeps over (k, theta) merged into one table with a trailing
/// integer `bell` column.
fn swap_surface(bells: [BellIndex; 2], n: usize) -> Result<SweepResult> {
    let mut rows: Vec<SweepRow> = Vec::new();
    let mut metadata = BTreeMap::new();
    for bell in bells {
        let cfg = SweepConfig {
            pipeline: vec![Stage::ConstructAlmeida, Stage::Swap(bell)],
            quantities: vec![Quantity::Steering, Quantity::Concurrence, Quantity::Discord],
            axes: k_theta_axes(n),
            fixed: BTreeMap::new(),
            output: None,
        };
        let partial = run_sweep(&cfg)?;
        for mut row in partial.rows {
            row.params.push(f64::from(bell.index()));
            rows.push(row);
        }
        metadata.extend(partial.metadata);
    }
    rows.sort_by(|a, b| cmp_params(&a.params, &b.params));
    metadata.insert(
        "pipeline".to_string(),
        "construct-almeida, swap:<bell>".to_string(),
    );
    metadata.insert(
        "bells".to_string(),
        format!("{}, {}", bells[0].index(), bells[1].index()),
    );
    Ok(SweepResult {
        param_names: vec!["k".to_string(), "theta".to_string(), "bell".to_string()],
        quantity_names: vec![
            "steering".to_string(),
            "concurrence".to_string(),
            "discord".to_string(),
        ],
        has_probability: true,
        rows,
        boundaries: Vec::new(),
        metadata,
    })
}

/// Steering of the input state and of the post-swap state, together with
/// the outcome probability, as theta varies at fixed k, for the first and
/// third Bell projectors.
fn steering_transfer(k: f64, theta_points: usize) -> Result<SweepResult> {
    let theta_axis = axis(ParamName::Theta, theta_points);
    let mut rows = Vec::new();
    for bell in [BellIndex::Phi1, BellIndex::Phi3] {
        for theta in theta_axis.values() {
            let input = make_almeida_from(k, theta)?;
            let steering_in = f3_steering(&input)?;
            let outcome = swap_lenient(&input, &input, bell)?;
            let params = vec![theta, f64::from(bell.index())];
            let row = match &outcome.state {
                Some(state) => SweepRow {
                    params,
                    values: vec![Some(steering_in), Some(f3_steering(state)?)],
                    probability: Some(outcome.probability),
                    zero_probability: false,
                },
                None => SweepRow {
                    params,
                    values: vec![Some(steering_in), None],
                    probability: Some(outcome.probability),
                    zero_probability: true,
                },
            };
            rows.push(row);
        }
    }
    rows.sort_by(|a, b| cmp_params(&a.params, &b.params));
    let mut metadata = BTreeMap::new();
    metadata.insert("fixed.k".to_string(), format!("{k}"));
    metadata.insert("bells".to_string(), "1, 3".to_string());
    metadata.insert(
        "axis.0".to_string(),
        format!(
            "theta: {} .. {}, steps = {}",
            theta_axis.min, theta_axis.max, theta_axis.steps
        ),
    );
    metadata.insert(
        "pipeline".to_string(),
        "construct-almeida, swap:<bell>".to_string(),
    );
    Ok(SweepResult {
        param_names: vec!["theta".to_string(), "bell".to_string()],
        quantity_names: vec!["steering_in".to_string(), "steering_out".to_string()],
        has_probability: true,
        rows,
        boundaries: Vec::new(),
        metadata,
    })
}
