//! Entanglement swapping: Bell-project qubits 2 and 3 of a four-qubit
//! product ρ₁₂ ⊗ ρ₃₄ and return the conditional state of qubits 1 and 4.

use crate::linalg::{hermitize, identity, partial_trace_qubits};
use crate::states::{BellIndex, DensityOperator};
use crate::{Error, Result, TOL_PROB};

/// One Bell-measurement outcome: the projector index, its probability,
/// and the conditional ρ₁₄ (absent when the probability is ≤ τ_prob and
/// the conditional state is undefined).
#[derive(Debug, Clone, PartialEq)]
pub struct SwapOutcome {
    /// Which Bell projector was applied to qubits 2 and 3.
    pub bell: BellIndex,
    /// Tr[Mᵢ ρ₁₂₃₄ Mᵢ†].
    pub probability: f64,
    /// Tr₂₃[Mᵢ ρ₁₂₃₄ Mᵢ†]/probability, when defined.
    pub state: Option<DensityOperator>,
}

fn require_pair(rho: &DensityOperator, which: &str) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::dims(
            "4x4",
            format!("{0}x{0}", rho.dim()),
            format!("swap source {which}"),
        ));
    }
    Ok(())
}

/// Compute one outcome without failing on zero probability: the state is
/// simply absent below τ_prob. [`swap`] wraps this with a hard error.
pub fn swap_lenient(
    rho12: &DensityOperator,
    rho34: &DensityOperator,
    i: BellIndex,
) -> Result<SwapOutcome> {
    require_pair(rho12, "rho12")?;
    require_pair(rho34, "rho34")?;
    let big = rho12.matrix().kronecker(rho34.matrix());

    // M = 1₂ ⊗ |φᵢ⟩⟨φᵢ| ⊗ 1₂ acts on qubits 2 and 3.
    let v = i.vector();
    let projector = &v * v.adjoint();
    let m = identity(2).kronecker(&projector).kronecker(&identity(2));

    let measured = &m * big * m.adjoint();
    let probability = measured.trace().re.max(0.0);
    if probability <= TOL_PROB {
        return Ok(SwapOutcome {
            bell: i,
            probability,
            state: None,
        });
    }
    let reduced = partial_trace_qubits(&measured, 4, &[0, 3])?;
    let state = DensityOperator::new(hermitize(&reduced.unscale(probability)))?;
    Ok(SwapOutcome {
        bell: i,
        probability,
        state: Some(state),
    })
}

/// Swap with the chosen Bell projector.
///
/// Errors with `ZeroProbabilityOutcome` when the outcome probability is
/// at or below τ_prob = 1e−12, since the conditional state is undefined.
pub fn swap(rho12: &DensityOperator, rho34: &DensityOperator, i: BellIndex) -> Result<SwapOutcome> {
    let outcome = swap_lenient(rho12, rho34, i)?;
    if outcome.state.is_none() {
        return Err(Error::ZeroProbability(format!(
            "outcome {} has probability {:.3e} <= {TOL_PROB:.0e}; the conditional state is undefined",
            i, outcome.probability
        )));
    }
    Ok(outcome)
}

/// All four Bell outcomes, in index order. Zero-probability outcomes are
/// returned with `state: None` rather than failing, so the four
/// probabilities always sum to 1 (within rounding).
pub fn swap_all(rho12: &DensityOperator, rho34: &DensityOperator) -> Result<Vec<SwapOutcome>> {
    BellIndex::ALL
        .iter()
        .map(|&i| swap_lenient(rho12, rho34, i))
        .collect()
}
