//! Quantum-state construction, validation, and decomposition.
//!
//! The central type is [`DensityOperator`], a validated dense complex
//! matrix. The module also provides the X-form scalar view
//! ([`XFormState`]), the Almeida family ([`AlmeidaParams`],
//! [`make_almeida`]), Bell states ([`BellIndex`], [`make_bell`]), tensor
//! products, partial traces, and the local-hidden-state admissibility
//! test for Almeida states.
//!
//! Qubit convention: big-endian. Qubit 1 is the leftmost tensor factor
//! and the most significant bit of a basis index, so the two-qubit basis
//! order is |00⟩, |01⟩, |10⟩, |11⟩.

use num_complex::Complex64;

use crate::linalg::{
    cr, herm_eigenvalues, herm_violation, partial_trace_qubits, qubits_for_dim, CMat, CVec,
};
use crate::{Error, Result, TOL_HERM, TOL_PSD, TOL_TRACE, TOL_X};

/// A validated density operator: Hermitian, unit-trace, positive
/// semidefinite, on 1–4 qubits (dimension 2, 4, 8, or 16).
///
/// Dimension 8 arises only as a partial-trace intermediate; the physics
/// of this crate lives on dimensions 2, 4, and 16.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    dim: usize,
    mat: CMat,
}

impl DensityOperator {
    /// Validate a candidate matrix and wrap it.
    ///
    /// Checks, in order: supported dimension, Hermiticity within
    /// `TOL_HERM`, unit trace within `TOL_TRACE`, and smallest eigenvalue
    /// ≥ −`TOL_PSD`.
    pub fn new(mat: CMat) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::dims(
                "a square matrix",
                format!("{}x{}", mat.nrows(), mat.ncols()),
                "density operator",
            ));
        }
        let dim = mat.nrows();
        qubits_for_dim(dim)?;
        let hv = herm_violation(&mat);
        if hv > TOL_HERM {
            return Err(Error::InvalidState(format!(
                "not Hermitian: worst |ρ[i][j] − conj(ρ[j][i])| = {hv:.3e} exceeds {TOL_HERM:.0e}"
            )));
        }
        let tr = mat.trace();
        if (tr - cr(1.0)).norm() > TOL_TRACE {
            return Err(Error::InvalidState(format!(
                "trace {tr} differs from 1 by more than {TOL_TRACE:.0e}"
            )));
        }
        let min_eig = herm_eigenvalues(&mat)[0];
        if min_eig < -TOL_PSD {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite: smallest eigenvalue {min_eig:.3e} below -{TOL_PSD:.0e}"
            )));
        }
        Ok(Self { dim, mat })
    }

    /// Matrix dimension (2, 4, 8, or 16).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits (1–4).
    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    /// Borrow the underlying matrix.
    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    /// Consume into the underlying matrix.
    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    /// Entry accessor (row, col).
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    /// Eigenvalues of the state, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        herm_eigenvalues(&self.mat)
    }
}

/// Kronecker (tensor) product of two states. The left operand supplies
/// the more significant qubits.
///
/// Errors with `DimensionError` if the product would exceed dimension 16
/// (four qubits), the largest register this crate handles.
pub fn tensor(rho: &DensityOperator, sigma: &DensityOperator) -> Result<DensityOperator> {
    let dim = rho.dim() * sigma.dim();
    if dim > 16 {
        return Err(Error::dims(
            "a product dimension of at most 16",
            format!("{dim}"),
            "tensor product",
        ));
    }
    DensityOperator::new(rho.matrix().kronecker(sigma.matrix()))
}

/// Partial trace keeping the listed qubits.
///
/// `keep` uses 1-based qubit labels (qubit 1 = leftmost
/// factor) and must be a strictly increasing, nonempty, proper subset of
/// the register's labels. Kept qubits retain their relative order.
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let n = rho.n_qubits();
    if keep.iter().any(|&q| q == 0 || q > n) {
        return Err(Error::dims(
            format!("qubit labels in 1..={n}"),
            format!("{keep:?}"),
            "partial trace keep-set",
        ));
    }
    let zero_based: Vec<usize> = keep.iter().map(|&q| q - 1).collect();
    let reduced = partial_trace_qubits(rho.matrix(), n, &zero_based)?;
    DensityOperator::new(reduced)
}

/// The seven scalars of an X-form two-qubit state:
///
/// ```text
/// ⎛ a 0 0 w ⎞
/// ⎜ 0 b z 0 ⎟
/// ⎜ 0 z* c 0 ⎟
/// ⎝ w* 0 0 d ⎠
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XFormState {
    /// Top-left diagonal entry (population of |00⟩).
    pub a: f64,
    /// Second diagonal entry (population of |01⟩).
    pub b: f64,
    /// Third diagonal entry (population of |10⟩).
    pub c: f64,
    /// Bottom-right diagonal entry (population of |11⟩).
    pub d: f64,
    /// Outer coherence ρ₁₄.
    pub w: Complex64,
    /// Inner coherence ρ₂₃.
    pub z: Complex64,
}

impl XFormState {
    /// Validate and build an X-form record.
    ///
    /// Enforces unit trace, nonnegative populations, and the PSD block
    /// conditions |w|² ≤ a·d and |z|² ≤ b·c (all within tolerance).
    pub fn new(a: f64, b: f64, c_: f64, d: f64, w: Complex64, z: Complex64) -> Result<Self> {
        let tr = a + b + c_ + d;
        if (tr - 1.0).abs() > TOL_TRACE {
            return Err(Error::InvalidState(format!(
                "X-form trace a+b+c+d = {tr} differs from 1 by more than {TOL_TRACE:.0e}"
            )));
        }
        for (name, v) in [("a", a), ("b", b), ("c", c_), ("d", d)] {
            if v < -TOL_PSD {
                return Err(Error::InvalidState(format!(
                    "X-form population {name} = {v:.3e} is negative"
                )));
            }
        }
        if w.norm_sqr() > a * d + TOL_PSD {
            return Err(Error::InvalidState(format!(
                "X-form block violates PSD: |w|^2 = {:.3e} exceeds a*d = {:.3e}",
                w.norm_sqr(),
                a * d
            )));
        }
        if z.norm_sqr() > b * c_ + TOL_PSD {
            return Err(Error::InvalidState(format!(
                "X-form block violates PSD: |z|^2 = {:.3e} exceeds b*c = {:.3e}",
                z.norm_sqr(),
                b * c_
            )));
        }
        Ok(Self {
            a,
            b,
            c: c_,
            d,
            w,
            z,
        })
    }

    /// Rebuild the dense 4×4 density operator from the seven scalars.
    pub fn to_density(&self) -> Result<DensityOperator> {
        let mut m = CMat::zeros(4, 4);
        m[(0, 0)] = cr(self.a);
        m[(1, 1)] = cr(self.b);
        m[(2, 2)] = cr(self.c);
        m[(3, 3)] = cr(self.d);
        m[(0, 3)] = self.w;
        m[(3, 0)] = self.w.conj();
        m[(1, 2)] = self.z;
        m[(2, 1)] = self.z.conj();
        DensityOperator::new(m)
    }
}

/// Extract the X-form scalars from a two-qubit state.
///
/// Errors with `NotXFormError` if any entry outside the X pattern
/// exceeds `TOL_X` — the signal that a process has driven the state out
/// of the X family.
pub fn to_xform(rho: &DensityOperator) -> Result<XFormState> {
    if rho.dim() != 4 {
        return Err(Error::dims(
            "4x4",
            format!("{0}x{0}", rho.dim()),
            "X-form extraction",
        ));
    }
    let m = rho.matrix();
    let x_positions = [
        (0, 0),
        (1, 1),
        (2, 2),
        (3, 3),
        (0, 3),
        (3, 0),
        (1, 2),
        (2, 1),
    ];
    for i in 0..4 {
        for j in 0..4 {
            if !x_positions.contains(&(i, j)) && m[(i, j)].norm() > TOL_X {
                return Err(Error::NotXForm(format!(
                    "entry ({},{}) = {} exceeds {TOL_X:.0e}",
                    i + 1,
                    j + 1,
                    m[(i, j)]
                )));
            }
        }
    }
    XFormState::new(
        m[(0, 0)].re,
        m[(1, 1)].re,
        m[(2, 2)].re,
        m[(3, 3)].re,
        m[(0, 3)],
        m[(1, 2)],
    )
}

/// Parameters (k, θ) of the Almeida family.
///
/// k ∈ [0, 1] is the mixture weight of the partially entangled pure
/// component; θ ∈ [0, π/4] sets that component's Schmidt angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlmeidaParams {
    k: f64,
    theta: f64,
}

impl AlmeidaParams {
    /// Validate the parameter ranges.
    pub fn new(k: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) || !k.is_finite() {
            return Err(Error::Domain(format!("k must lie in [0, 1], got {k}")));
        }
        let quarter_pi = std::f64::consts::FRAC_PI_4;
        // Allow rounding slack at the π/4 endpoint: π/4 itself is not
        // exactly representable, and grid code routinely lands a hair above.
        if !theta.is_finite() || theta < 0.0 || theta > quarter_pi + 1e-12 {
            return Err(Error::Domain(format!(
                "theta must lie in [0, pi/4] (~{quarter_pi:.6}), got {theta}"
            )));
        }
        Ok(Self { k, theta })
    }

    /// Mixture weight k.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Schmidt angle θ in radians.
    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// The partially entangled pure vector |φ⁺(θ)⟩ = cosθ|00⟩ + sinθ|11⟩.
pub fn phi_plus_theta(theta: f64) -> CVec {
    let mut v = CVec::zeros(4);
    v[0] = cr(theta.cos());
    v[3] = cr(theta.sin());
    v
}

/// Build the Almeida state k·|φ⁺(θ)⟩⟨φ⁺(θ)| + (1−k)·ρ_A(θ) ⊗ I/2,
/// where ρ_A(θ) = Tr_B |φ⁺(θ)⟩⟨φ⁺(θ)| = diag(cos²θ, sin²θ).
pub fn make_almeida(params: &AlmeidaParams) -> DensityOperator {
    let (k, theta) = (params.k(), params.theta());
    let phi = phi_plus_theta(theta);
    let pure = &phi * phi.adjoint();

    let mut rho_a = CMat::zeros(2, 2);
    rho_a[(0, 0)] = cr(theta.cos().powi(2));
    rho_a[(1, 1)] = cr(theta.sin().powi(2));
    let noise = rho_a.kronecker(&CMat::identity(2, 2).scale(0.5));

    let m = pure.scale(k) + noise.scale(1.0 - k);
    DensityOperator::new(m).expect("Almeida states are valid by construction")
}

/// Convenience wrapper: validate (k, θ) and build the state in one call.
pub fn make_almeida_from(k: f64, theta: f64) -> Result<DensityOperator> {
    Ok(make_almeida(&AlmeidaParams::new(k, theta)?))
}

/// Index of one of the four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellIndex {
    /// |φ₁⟩ = (|00⟩ + |11⟩)/√2
    Phi1,
    /// |φ₂⟩ = (|00⟩ − |11⟩)/√2
    Phi2,
    /// |φ₃⟩ = (|01⟩ + |10⟩)/√2
    Phi3,
    /// |φ₄⟩ = (|01⟩ − |10⟩)/√2
    Phi4,
}

impl BellIndex {
    /// All four indices in order.
    pub const ALL: [BellIndex; 4] = [
        BellIndex::Phi1,
        BellIndex::Phi2,
        BellIndex::Phi3,
        BellIndex::Phi4,
    ];

    /// Parse a 1-based index.
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(BellIndex::Phi1),
            2 => Ok(BellIndex::Phi2),
            3 => Ok(BellIndex::Phi3),
            4 => Ok(BellIndex::Phi4),
            _ => Err(Error::Domain(format!("Bell index must be 1..=4, got {i}"))),
        }
    }

    /// The 1-based index.
    pub fn index(&self) -> u8 {
        match self {
            BellIndex::Phi1 => 1,
            BellIndex::Phi2 => 2,
            BellIndex::Phi3 => 3,
            BellIndex::Phi4 => 4,
        }
    }

    /// The Bell vector as a unit column.
    pub fn vector(&self) -> CVec {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = CVec::zeros(4);
        match self {
            BellIndex::Phi1 => {
                v[0] = cr(s);
                v[3] = cr(s);
            }
            BellIndex::Phi2 => {
                v[0] = cr(s);
                v[3] = cr(-s);
            }
            BellIndex::Phi3 => {
                v[1] = cr(s);
                v[2] = cr(s);
            }
            BellIndex::Phi4 => {
                v[1] = cr(s);
                v[2] = cr(-s);
            }
        }
        v
    }
}

impl std::fmt::Display for BellIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "phi{}", self.index())
    }
}

/// Projector onto the chosen Bell state.
pub fn make_bell(i: BellIndex) -> DensityOperator {
    let v = i.vector();
    DensityOperator::new(&v * v.adjoint()).expect("Bell projectors are valid by construction")
}

/// Local-hidden-state admissibility for the Almeida family:
/// cos²(2θ) ≥ (2k−1)/((2−k)k³).
///
/// At k = 0 the right-hand side diverges to −∞ (negative numerator over
/// a vanishing positive denominator), so the condition holds.
pub fn lhs_admissible(params: &AlmeidaParams) -> bool {
    let (k, theta) = (params.k(), params.theta());
    let lhs = (2.0 * theta).cos().powi(2);
    if k == 0.0 {
        return true;
    }
    let rhs = (2.0 * k - 1.0) / ((2.0 - k) * k.powi(3));
    lhs >= rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs_diff};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn density_operator_rejects_bad_matrices() {
        // Non-Hermitian.
        let mut m = identity(2).scale(0.5);
        m[(0, 1)] = cr(0.3);
        assert!(matches!(
            DensityOperator::new(m),
            Err(Error::InvalidState(_))
        ));

        // Wrong trace.
        let m = identity(2);
        assert!(DensityOperator::new(m).is_err());

        // Negative eigenvalue.
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = cr(1.5);
        m[(1, 1)] = cr(-0.5);
        assert!(DensityOperator::new(m).is_err());

        // Unsupported dimension.
        let m = CMat::identity(3, 3).scale(1.0 / 3.0);
        assert!(matches!(
            DensityOperator::new(m),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn almeida_at_k1_quarter_pi_is_bell() {
        let rho = make_almeida_from(1.0, FRAC_PI_4).unwrap();
        let bell = make_bell(BellIndex::Phi1);
        assert!(max_abs_diff(rho.matrix(), bell.matrix()) < 1e-15);
    }

    #[test]
    fn almeida_at_k0_is_product() {
        let theta = 0.3;
        let rho = make_almeida_from(0.0, theta).unwrap();
        let mut rho_a = CMat::zeros(2, 2);
        rho_a[(0, 0)] = cr(theta.cos().powi(2));
        rho_a[(1, 1)] = cr(theta.sin().powi(2));
        let expect = rho_a.kronecker(&identity(2).scale(0.5));
        assert!(max_abs_diff(rho.matrix(), &expect) < 1e-15);
    }

    #[test]
    fn almeida_xform_entries_match_closed_form() {
        // (k=0.5, θ=π/6) → (0.5625, 0.1875, 0.0625, 0.1875, √3/8, 0).
        let rho = make_almeida_from(0.5, FRAC_PI_6).unwrap();
        let x = to_xform(&rho).unwrap();
        assert_abs_diff_eq!(x.a, 0.5625, epsilon = 1e-12);
        assert_abs_diff_eq!(x.b, 0.1875, epsilon = 1e-12);
        assert_abs_diff_eq!(x.c, 0.0625, epsilon = 1e-12);
        assert_abs_diff_eq!(x.d, 0.1875, epsilon = 1e-12);
        assert_abs_diff_eq!(x.w.re, 3.0f64.sqrt() / 8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x.w.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(x.z.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn almeida_params_validate_ranges() {
        assert!(AlmeidaParams::new(-0.1, 0.1).is_err());
        assert!(AlmeidaParams::new(1.1, 0.1).is_err());
        assert!(AlmeidaParams::new(0.5, -0.1).is_err());
        assert!(AlmeidaParams::new(0.5, 1.0).is_err());
        assert!(AlmeidaParams::new(0.5, FRAC_PI_4).is_ok());
        assert!(AlmeidaParams::new(f64::NAN, 0.1).is_err());
    }

    #[test]
    fn bell_states_are_rank_one_unit_trace() {
        for i in BellIndex::ALL {
            let rho = make_bell(i);
            let vals = rho.eigenvalues();
            assert_abs_diff_eq!(vals[3], 1.0, epsilon = 1e-12);
            assert!(vals[..3].iter().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn bell_index_parsing() {
        assert_eq!(BellIndex::from_index(3).unwrap(), BellIndex::Phi3);
        assert!(BellIndex::from_index(0).is_err());
        assert!(BellIndex::from_index(5).is_err());
        assert_eq!(BellIndex::Phi2.index(), 2);
    }

    #[test]
    fn tensor_composes_and_guards_dimension() {
        let a = make_bell(BellIndex::Phi1);
        let b = make_bell(BellIndex::Phi1);
        let big = tensor(&a, &b).unwrap();
        assert_eq!(big.dim(), 16);
        // Rank-1 16×16 projector.
        let vals = big.eigenvalues();
        assert_abs_diff_eq!(vals[15], 1.0, epsilon = 1e-12);

        assert!(tensor(&big, &a).is_err());
    }

    #[test]
    fn partial_trace_of_almeida_marginal_is_k_independent() {
        let theta = 0.5;
        for k in [0.0, 0.3, 0.8, 1.0] {
            let rho = make_almeida_from(k, theta).unwrap();
            let ma = partial_trace(&rho, &[1]).unwrap();
            assert_abs_diff_eq!(ma.entry(0, 0).re, theta.cos().powi(2), epsilon = 1e-12);
            assert_abs_diff_eq!(ma.entry(1, 1).re, theta.sin().powi(2), epsilon = 1e-12);
            assert!(ma.entry(0, 1).norm() < 1e-14);
        }
    }

    #[test]
    fn partial_trace_label_validation() {
        let rho = make_bell(BellIndex::Phi1);
        assert!(partial_trace(&rho, &[0]).is_err());
        assert!(partial_trace(&rho, &[3]).is_err());
        assert!(partial_trace(&rho, &[1, 2]).is_err());
    }

    #[test]
    fn xform_round_trip_is_identity() {
        let rho = make_almeida_from(0.7, 0.4).unwrap();
        let x = to_xform(&rho).unwrap();
        let back = x.to_density().unwrap();
        assert!(max_abs_diff(rho.matrix(), back.matrix()) < 1e-14);
    }

    #[test]
    fn to_xform_rejects_off_pattern_entries() {
        // Perturb (0,1) of the maximally mixed state but keep it a valid
        // density operator.
        let mut m = identity(4).scale(0.25);
        m[(0, 1)] = cr(0.1);
        m[(1, 0)] = cr(0.1);
        let rho = DensityOperator::new(m).unwrap();
        assert!(matches!(to_xform(&rho), Err(Error::NotXForm(_))));
    }

    #[test]
    fn xform_validation_rejects_oversized_coherence() {
        assert!(XFormState::new(0.5, 0.0, 0.0, 0.5, cr(0.6), cr(0.0)).is_err());
        assert!(XFormState::new(0.25, 0.25, 0.25, 0.25, cr(0.0), cr(0.3)).is_err());
        assert!(XFormState::new(0.3, 0.3, 0.3, 0.3, cr(0.0), cr(0.0)).is_err());
    }

    #[test]
    fn lhs_condition_examples() {
        // Numerator zero → always admissible.
        assert!(lhs_admissible(&AlmeidaParams::new(0.5, 0.0).unwrap()));
        // (k=1, θ=π/8): cos²(π/4) = 1/2 < 1 → not admissible.
        assert!(!lhs_admissible(
            &AlmeidaParams::new(1.0, std::f64::consts::FRAC_PI_8).unwrap()
        ));
        // Negative right side for k < 1/2.
        for theta in [0.0, 0.2, FRAC_PI_4] {
            assert!(lhs_admissible(&AlmeidaParams::new(0.4, theta).unwrap()));
        }
        // k = 0 edge.
        assert!(lhs_admissible(&AlmeidaParams::new(0.0, 0.3).unwrap()));
        // k = 1: true only at θ = 0.
        assert!(lhs_admissible(&AlmeidaParams::new(1.0, 0.0).unwrap()));
        for theta in [1e-3, 0.1, 0.5, FRAC_PI_4] {
            assert!(!lhs_admissible(&AlmeidaParams::new(1.0, theta).unwrap()));
        }
    }
}
