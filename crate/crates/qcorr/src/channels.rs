//! Kraus-operator noise channels and their closed-form images on the
//! Almeida family.
//!
//! Three channels are provided: phase damping ([`pd_channel`]) and
//! generalized amplitude damping ([`gad_channel`]) on one qubit — lifted
//! to the pair with [`lift_two_qubit`] — and the stochastic dephasing
//! channel ([`sdc_channel`]) acting on the pair directly. The
//! [`almeida_after_pd`]/[`almeida_after_gad`]/[`almeida_after_sdc`]
//! constructors are independent closed-form oracles for the Kraus path.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{cr, hermitize, identity, max_abs_diff, CMat};
use crate::states::{AlmeidaParams, DensityOperator, XFormState};
use crate::{Error, Result, TOL_CPTP};

/// Channel tag carried by a [`KrausChannel`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelLabel {
    /// Phase damping.
    Pd,
    /// Generalized amplitude damping.
    Gad,
    /// Stochastic dephasing channel.
    Sdc,
    /// Anything else (custom constructions, lifted pairs).
    Custom(String),
}

impl std::fmt::Display for ChannelLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChannelLabel::Pd => write!(f, "pd"),
            ChannelLabel::Gad => write!(f, "gad"),
            ChannelLabel::Sdc => write!(f, "sdc"),
            ChannelLabel::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// A completely positive trace-preserving channel in operator-sum form:
/// ρ ↦ Σᵢ Kᵢ ρ Kᵢ†, with Σᵢ Kᵢ†Kᵢ = 1 enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    label: ChannelLabel,
    params: BTreeMap<String, f64>,
    operators: Vec<CMat>,
}

impl KrausChannel {
    /// Validate a Kraus set and wrap it.
    ///
    /// All operators must be square with a common dimension of 2 or 4,
    /// and the closure relation must hold within `TOL_CPTP`.
    pub fn new(
        label: ChannelLabel,
        params: BTreeMap<String, f64>,
        operators: Vec<CMat>,
    ) -> Result<Self> {
        let dim = match operators.first() {
            Some(k) => k.nrows(),
            None => {
                return Err(Error::InvalidChannel(
                    "a channel needs at least one Kraus operator".into(),
                ))
            }
        };
        if dim != 2 && dim != 4 {
            return Err(Error::dims(
                "2 or 4",
                format!("{dim}"),
                "Kraus operator dimension",
            ));
        }
        for (i, k) in operators.iter().enumerate() {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::dims(
                    format!("{dim}x{dim}"),
                    format!("{}x{}", k.nrows(), k.ncols()),
                    format!("Kraus operator {i}"),
                ));
            }
        }
        let mut closure = CMat::zeros(dim, dim);
        for k in &operators {
            closure += k.adjoint() * k;
        }
        let residual = max_abs_diff(&closure, &identity(dim));
        if residual > TOL_CPTP {
            return Err(Error::InvalidChannel(format!(
                "closure relation fails: worst deviation from identity is {residual:.3e}"
            )));
        }
        Ok(Self {
            dim,
            label,
            params,
            operators,
        })
    }

    /// Operator dimension (2 or 4).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Channel tag.
    pub fn label(&self) -> &ChannelLabel {
        &self.label
    }

    /// Named parameters the channel was built from.
    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    /// The Kraus operators, in construction order.
    pub fn operators(&self) -> &[CMat] {
        &self.operators
    }

    /// Worst entrywise deviation of Σ K†K from the identity.
    pub fn closure_residual(&self) -> f64 {
        let mut closure = CMat::zeros(self.dim, self.dim);
        for k in &self.operators {
            closure += k.adjoint() * k;
        }
        max_abs_diff(&closure, &identity(self.dim))
    }

    /// Serialize to the channel-catalog JSON format (label, params, and
    /// operator entries as [re, im] pairs; see README).
    pub fn to_catalog_json(&self) -> String {
        let entry = CatalogEntry::from(self);
        serde_json::to_string_pretty(&entry).expect("catalog serialization cannot fail")
    }

    /// Parse a channel-catalog JSON document; the Kraus set is
    /// re-validated on the way in.
    pub fn from_catalog_json(text: &str) -> Result<Self> {
        let entry: CatalogEntry = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("channel catalog parse failure: {e}")))?;
        entry.into_channel()
    }
}

/// Serialized form of a channel: plain JSON with [re, im] entry pairs.
#[derive(Debug, Serialize, Deserialize)]
struct CatalogEntry {
    label: String,
    dim: usize,
    params: BTreeMap<String, f64>,
    operators: Vec<Vec<Vec<[f64; 2]>>>,
}

impl From<&KrausChannel> for CatalogEntry {
    fn from(ch: &KrausChannel) -> Self {
        let operators = ch
            .operators
            .iter()
            .map(|k| {
                (0..k.nrows())
                    .map(|i| {
                        (0..k.ncols())
                            .map(|j| [k[(i, j)].re, k[(i, j)].im])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        CatalogEntry {
            label: ch.label.to_string(),
            dim: ch.dim,
            params: ch.params.clone(),
            operators,
        }
    }
}

impl CatalogEntry {
    fn into_channel(self) -> Result<KrausChannel> {
        let label = match self.label.as_str() {
            "pd" => ChannelLabel::Pd,
            "gad" => ChannelLabel::Gad,
            "sdc" => ChannelLabel::Sdc,
            other => ChannelLabel::Custom(other.to_string()),
        };
        let mut operators = Vec::with_capacity(self.operators.len());
        for rows in &self.operators {
            let n = rows.len();
            let mut m = CMat::zeros(n, n);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Config(
                        "channel catalog operator is not square".into(),
                    ));
                }
                for (j, &[re, im]) in row.iter().enumerate() {
                    m[(i, j)] = Complex64::new(re, im);
                }
            }
            operators.push(m);
        }
        KrausChannel::new(label, self.params, operators)
    }
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) || !v.is_finite() {
        return Err(Error::Domain(format!("{name} must lie in [0, 1], got {v}")));
    }
    Ok(())
}

/// Phase damping on one qubit:
/// K₁ = diag(1, √(1−p)), K₂ = diag(0, √p).
pub fn pd_channel(p: f64) -> Result<KrausChannel> {
    check_unit_interval("p", p)?;
    let k1 = CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr((1.0 - p).sqrt())]);
    let k2 = CMat::from_row_slice(2, 2, &[cr(0.0), cr(0.0), cr(0.0), cr(p.sqrt())]);
    KrausChannel::new(
        ChannelLabel::Pd,
        BTreeMap::from([("p".to_string(), p)]),
        vec![k1, k2],
    )
}

/// Generalized amplitude damping on one qubit:
/// K₁ = √p·diag(1, √(1−γ)),  K₂ = √p·[[0, √γ], [0, 0]],
/// K₃ = √(1−p)·diag(√(1−γ), 1),  K₄ = √(1−p)·[[0, 0], [√γ, 0]].
///
/// p is the stationary-state weight (ρ_∞ = diag(p, 1−p)); γ is the
/// photon-loss probability.
pub fn gad_channel(p: f64, gamma: f64) -> Result<KrausChannel> {
    check_unit_interval("p", p)?;
    check_unit_interval("gamma", gamma)?;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let sg = gamma.sqrt();
    let sgc = (1.0 - gamma).sqrt();
    let k1 = CMat::from_row_slice(2, 2, &[cr(sp), cr(0.0), cr(0.0), cr(sp * sgc)]);
    let k2 = CMat::from_row_slice(2, 2, &[cr(0.0), cr(sp * sg), cr(0.0), cr(0.0)]);
    let k3 = CMat::from_row_slice(2, 2, &[cr(sq * sgc), cr(0.0), cr(0.0), cr(sq)]);
    let k4 = CMat::from_row_slice(2, 2, &[cr(0.0), cr(0.0), cr(sq * sg), cr(0.0)]);
    KrausChannel::new(
        ChannelLabel::Gad,
        BTreeMap::from([("p".to_string(), p), ("gamma".to_string(), gamma)]),
        vec![k1, k2, k3, k4],
    )
}

/// Stochastic dephasing channel on the qubit pair: the three 4×4
/// operators
/// K₁ = diag(√(1−p), 1, 1, √(1−p)),
/// K₂ = diag(√p, 0, 0, −√p·(1−p)),
/// K₃ = diag(0, 0, 0, p·√(2−p)).
///
/// Closure holds identically: (1−p) + p(1−p)² + p²(2−p) = 1.
pub fn sdc_channel(p: f64) -> Result<KrausChannel> {
    check_unit_interval("p", p)?;
    let mut k1 = CMat::zeros(4, 4);
    k1[(0, 0)] = cr((1.0 - p).sqrt());
    k1[(1, 1)] = cr(1.0);
    k1[(2, 2)] = cr(1.0);
    k1[(3, 3)] = cr((1.0 - p).sqrt());
    let mut k2 = CMat::zeros(4, 4);
    k2[(0, 0)] = cr(p.sqrt());
    k2[(3, 3)] = cr(-p.sqrt() * (1.0 - p));
    let mut k3 = CMat::zeros(4, 4);
    k3[(3, 3)] = cr(p * (2.0 - p).sqrt());
    KrausChannel::new(
        ChannelLabel::Sdc,
        BTreeMap::from([("p".to_string(), p)]),
        vec![k1, k2, k3],
    )
}

/// Lift a single-qubit channel to the pair, applying the same channel to
/// both qubits: operators Kᵢ ⊗ Kⱼ over all pairs (i, j).
pub fn lift_two_qubit(ch: &KrausChannel) -> Result<KrausChannel> {
    lift_two_qubit_pair(ch, ch)
}

/// Lift two (possibly different) single-qubit channels to the pair:
/// operators Kᵢ^(1) ⊗ Kⱼ^(2). Parameters are namespaced "a.*"/"b.*" when
/// the inputs differ; a same-channel lift keeps its label and parameters.
pub fn lift_two_qubit_pair(cha: &KrausChannel, chb: &KrausChannel) -> Result<KrausChannel> {
    for (side, ch) in [("first", cha), ("second", chb)] {
        if ch.dim() != 2 {
            return Err(Error::dims(
                "2x2",
                format!("{0}x{0}", ch.dim()),
                format!("{side} channel to lift"),
            ));
        }
    }
    let mut operators = Vec::with_capacity(cha.operators().len() * chb.operators().len());
    for ka in cha.operators() {
        for kb in chb.operators() {
            operators.push(ka.kronecker(kb));
        }
    }
    let same = cha == chb;
    let (label, params) = if same {
        (cha.label().clone(), cha.params().clone())
    } else {
        let mut params = BTreeMap::new();
        for (k, v) in cha.params() {
            params.insert(format!("a.{k}"), *v);
        }
        for (k, v) in chb.params() {
            params.insert(format!("b.{k}"), *v);
        }
        (
            ChannelLabel::Custom(format!("{}x{}", cha.label(), chb.label())),
            params,
        )
    };
    KrausChannel::new(label, params, operators)
}

/// Apply a channel: ρ' = Σ Kᵢ ρ Kᵢ†, hermitized, then revalidated.
pub fn apply_channel(rho: &DensityOperator, ch: &KrausChannel) -> Result<DensityOperator> {
    if rho.dim() != ch.dim() {
        return Err(Error::dims(
            format!("{0}x{0}", ch.dim()),
            format!("{0}x{0}", rho.dim()),
            "channel application",
        ));
    }
    let mut out = CMat::zeros(rho.dim(), rho.dim());
    for k in ch.operators() {
        out += k * rho.matrix() * k.adjoint();
    }
    DensityOperator::new(hermitize(&out))
}

/// Closed form of the Almeida state after two-sided phase damping: the
/// diagonal is untouched and the coherence decays linearly,
/// w = k(1−p)·cosθ·sinθ.
pub fn almeida_after_pd(k: f64, theta: f64, p: f64) -> Result<DensityOperator> {
    AlmeidaParams::new(k, theta)?;
    check_unit_interval("p", p)?;
    let (c2, s2) = (theta.cos().powi(2), theta.sin().powi(2));
    XFormState::new(
        (1.0 + k) * c2 / 2.0,
        (1.0 - k) * c2 / 2.0,
        (1.0 - k) * s2 / 2.0,
        (1.0 + k) * s2 / 2.0,
        cr(k * (1.0 - p) * theta.cos() * theta.sin()),
        cr(0.0),
    )?
    .to_density()
}

/// Closed form of the Almeida state after two-sided generalized
/// amplitude damping: every diagonal entry moves with (p, γ) while the
/// coherence is w = k(1−γ)·cosθ·sinθ, independent of p.
pub fn almeida_after_gad(k: f64, theta: f64, p: f64, gamma: f64) -> Result<DensityOperator> {
    AlmeidaParams::new(k, theta)?;
    check_unit_interval("p", p)?;
    check_unit_interval("gamma", gamma)?;
    let g = gamma;
    let cos2t = (2.0 * theta).cos();
    let m1 = 0.25
        * (k * (1.0 - g).powi(2) + (-1.0 + g - 2.0 * p * g).powi(2)
            - (1.0 + k) * (g - 1.0) * (1.0 + (2.0 * p - 1.0) * g) * cos2t);
    let m2 = 0.25
        * (1.0 - k * (1.0 - g).powi(2) - (1.0 - 2.0 * p).powi(2) * g * g
            + (g - 1.0) * (-1.0 + k + (1.0 + k) * (-1.0 + 2.0 * p) * g) * cos2t);
    let m3 = 0.25
        * (1.0 - k * (1.0 - g).powi(2) - (1.0 - 2.0 * p).powi(2) * g * g
            + (g - 1.0) * (1.0 - k + (1.0 + k) * (2.0 * p - 1.0) * g) * cos2t);
    let m4 = 0.25
        * (k * (1.0 - g).powi(2) + (1.0 + g - 2.0 * p * g).powi(2)
            - (1.0 + k) * (g - 1.0) * (-1.0 + (2.0 * p - 1.0) * g) * cos2t);
    XFormState::new(
        m1,
        m2,
        m3,
        m4,
        cr(k * (1.0 - g) * theta.cos() * theta.sin()),
        cr(0.0),
    )?
    .to_density()
}

/// Closed form of the Almeida state after the stochastic dephasing
/// channel: as phase damping but with quadratic coherence decay,
/// w = k(1−p)²·cosθ·sinθ.
pub fn almeida_after_sdc(k: f64, theta: f64, p: f64) -> Result<DensityOperator> {
    AlmeidaParams::new(k, theta)?;
    check_unit_interval("p", p)?;
    let (c2, s2) = (theta.cos().powi(2), theta.sin().powi(2));
    XFormState::new(
        (1.0 + k) * c2 / 2.0,
        (1.0 - k) * c2 / 2.0,
        (1.0 - k) * s2 / 2.0,
        (1.0 + k) * s2 / 2.0,
        cr(k * (1.0 - p).powi(2) * theta.cos() * theta.sin()),
        cr(0.0),
    )?
    .to_density()
}

/// Map an evolution time to the noise parameter: p = 1 − e^(−t/T).
pub fn time_to_p(t: f64, relaxation_time: f64) -> Result<f64> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("t must be finite and >= 0, got {t}")));
    }
    if relaxation_time <= 0.0 || !relaxation_time.is_finite() {
        return Err(Error::Domain(format!(
            "relaxation time T must be finite and > 0, got {relaxation_time}"
        )));
    }
    Ok(1.0 - (-t / relaxation_time).exp())
}
