//! Correlation quantifiers for two-qubit states.
//!
//! Three families of measures, each with more than one route:
//!
//! * **Concurrence** — general spin-flip eigenvalue route
//!   ([`concurrence`]) and the X-form closed formula
//!   ([`concurrence_xform`]).
//! * **F3 EPR-steering** — singular values of the correlation matrix
//!   ([`f3_steering`], [`correlation_matrix`]) and the X-form closed
//!   formula ([`f3_xform`]).
//! * **Interferometric power** (discord proxy) — smallest eigenvalue of
//!   the 3×3 quadratic form built from the state's eigensystem
//!   ([`interferometric_power`], [`m_matrix`]) and an independent
//!   brute-force minimization of the quantum Fisher information over
//!   Bloch-direction Hamiltonians ([`ip_bruteforce`], [`qfi`]).
//!
//! [`negativity`] is a separate separability oracle (exact for two
//! qubits by the Peres–Horodecki criterion).

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::linalg::{
    floor_spectrum, herm_eigen, herm_eigenvalues, herm_violation, hermitize, partial_transpose_b,
    pauli, sqrtm_psd, CMat,
};
use crate::states::{DensityOperator, XFormState};
use crate::{Error, Result, TOL_DEG, TOL_HERM, TOL_PSD};

const SQRT3: f64 = 1.732_050_807_568_877_3;

fn require_two_qubits(rho: &DensityOperator, context: &str) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::dims("4x4", format!("{0}x{0}", rho.dim()), context));
    }
    Ok(())
}

/// Concurrence of a two-qubit state via the spin-flip construction.
///
/// With ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y), the concurrence is
/// C = max{0, √λ₁ − √λ₂ − √λ₃ − √λ₄} where λ₁ ≥ … ≥ λ₄ are the
/// eigenvalues of ρρ̃. The implementation computes the eigenvalues of
/// the Hermitian product √ρ·ρ̃·√ρ — the same spectrum, but through a
/// well-conditioned Hermitian solve — and clamps rounding negatives.
pub fn concurrence(rho: &DensityOperator) -> Result<f64> {
    require_two_qubits(rho, "concurrence input")?;
    let yy = pauli(2).kronecker(&pauli(2));
    let rho_tilde = &yy * rho.matrix().conjugate() * &yy;
    let sqrt_rho = sqrtm_psd(rho.matrix(), TOL_PSD)?;
    let product = hermitize(&(&sqrt_rho * rho_tilde * &sqrt_rho));
    let mut lambdas = herm_eigenvalues(&product);
    // The product is PSD with the rank of ρρ̃; floor noise-level
    // eigenvalues so their square roots do not leak into the sum.
    floor_spectrum(&mut lambdas);
    lambdas.reverse();
    let roots: Vec<f64> = lambdas.iter().map(|&l| l.sqrt()).collect();
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// Concurrence from the X-form scalars:
/// C = 2·max{0, |z| − √(a·d), |w| − √(b·c)}.
pub fn concurrence_xform(x: &XFormState) -> f64 {
    let ad = (x.a.max(0.0) * x.d.max(0.0)).sqrt();
    let bc = (x.b.max(0.0) * x.c.max(0.0)).sqrt();
    2.0 * (x.z.norm() - ad).max(x.w.norm() - bc).max(0.0)
}

/// The 3×3 correlation matrix T_ij = Tr[ρ (σ_i ⊗ σ_j)] together with its
/// singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    /// The real matrix T.
    pub entries: Matrix3<f64>,
    /// Singular values of T, descending.
    pub singulars: [f64; 3],
}

/// Build the correlation matrix of a two-qubit state.
pub fn correlation_matrix(rho: &DensityOperator) -> Result<CorrelationMatrix> {
    require_two_qubits(rho, "correlation matrix input")?;
    let mut t = Matrix3::<f64>::zeros();
    for i in 1..=3 {
        for j in 1..=3 {
            let op = pauli(i).kronecker(&pauli(j));
            t[(i - 1, j - 1)] = (rho.matrix() * op).trace().re;
        }
    }
    // Full SVD for the singular values; sorted descending defensively
    // (the solver's ordering is not part of its contract).
    let svd = t.svd(false, false);
    let mut s = [
        svd.singular_values[0],
        svd.singular_values[1],
        svd.singular_values[2],
    ];
    s.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    Ok(CorrelationMatrix {
        entries: t,
        singulars: s,
    })
}

/// F3 steering quantifier:
/// F₃ = max{0, (√(s₁²+s₂²+s₃²) − 1)/(√3 − 1)} with s_i the singular
/// values of the correlation matrix.
pub fn f3_steering(rho: &DensityOperator) -> Result<f64> {
    let t = correlation_matrix(rho)?;
    let s2: f64 = t.singulars.iter().map(|s| s * s).sum();
    Ok(((s2.sqrt() - 1.0) / (SQRT3 - 1.0)).max(0.0))
}

/// F3 from the X-form scalars:
/// F₃ = max{0, (√((a−b−c+d)² + 8(|w|²+|z|²)) − 1)/(√3 − 1)}.
pub fn f3_xform(x: &XFormState) -> f64 {
    let diag = x.a - x.b - x.c + x.d;
    let s2 = diag * diag + 8.0 * (x.w.norm_sqr() + x.z.norm_sqr());
    ((s2.sqrt() - 1.0) / (SQRT3 - 1.0)).max(0.0)
}

/// Quantum Fisher information of ρ for the generator H:
/// F = 2·Σ_{q_i+q_l > τ_deg} (q_i − q_l)²/(q_i + q_l)·|⟨ψ_i|H|ψ_l⟩|².
///
/// Eigenvalues are clamped to [0, ∞) before entering the denominators.
pub fn qfi(rho: &DensityOperator, h: &CMat) -> Result<f64> {
    if h.nrows() != rho.dim() || h.ncols() != rho.dim() {
        return Err(Error::dims(
            format!("{0}x{0}", rho.dim()),
            format!("{}x{}", h.nrows(), h.ncols()),
            "QFI generator",
        ));
    }
    let hv = herm_violation(h);
    if hv > TOL_HERM {
        return Err(Error::NonHermitian(format!(
            "QFI generator deviates from Hermitian by {hv:.3e}"
        )));
    }
    let (qs, vecs) = herm_eigen(rho.matrix());
    let qs: Vec<f64> = qs.iter().map(|&q| q.max(0.0)).collect();
    let n = qs.len();
    let hv_mat = h * &vecs; // columns H|ψ_l⟩
    let mut total = 0.0;
    for i in 0..n {
        for l in 0..n {
            let sum = qs[i] + qs[l];
            if sum <= TOL_DEG {
                continue;
            }
            let diff = qs[i] - qs[l];
            if diff == 0.0 {
                continue;
            }
            let amp = (vecs.column(i).adjoint() * hv_mat.column(l))[(0, 0)];
            total += diff * diff / sum * amp.norm_sqr();
        }
    }
    Ok(2.0 * total)
}

/// Which qubit carries the phase-encoding Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Party {
    /// First qubit (the default).
    #[default]
    A,
    /// Second qubit.
    B,
}

/// The 3×3 quadratic form whose smallest eigenvalue is the
/// interferometric power:
/// M_{m,n} = ½·Σ_{q_i+q_l > τ_deg} ((q_i−q_l)²/(q_i+q_l))·
///           ⟨ψ_i|σ_m⊗1|ψ_l⟩⟨ψ_l|σ_n⊗1|ψ_i⟩,
/// symmetrized before eigensolving.
#[derive(Debug, Clone, PartialEq)]
pub struct MMatrix {
    /// The symmetrized real matrix M.
    pub entries: Matrix3<f64>,
    /// Smallest eigenvalue of M, clamped to [0, ∞).
    pub zeta_min: f64,
}

/// Build the M matrix of a two-qubit state for the chosen party.
pub fn m_matrix(rho: &DensityOperator, party: Party) -> Result<MMatrix> {
    require_two_qubits(rho, "M matrix input")?;
    let (qs, vecs) = herm_eigen(rho.matrix());
    let qs: Vec<f64> = qs.iter().map(|&q| q.max(0.0)).collect();
    let n = qs.len();

    // Local Pauli operators lifted to the pair.
    let lifted: Vec<CMat> = (1..=3)
        .map(|m| match party {
            Party::A => pauli(m).kronecker(&pauli(0)),
            Party::B => pauli(0).kronecker(&pauli(m)),
        })
        .collect();

    // v[m][(i,l)] = ⟨ψ_i|σ_m⊗1|ψ_l⟩ for the whole eigenbasis at once.
    let v: Vec<CMat> = lifted
        .iter()
        .map(|op| vecs.adjoint() * op * &vecs)
        .collect();

    let mut m = Matrix3::<f64>::zeros();
    for i in 0..n {
        for l in 0..n {
            let sum = qs[i] + qs[l];
            if sum <= TOL_DEG {
                continue;
            }
            let diff = qs[i] - qs[l];
            if diff == 0.0 {
                continue;
            }
            let weight = 0.5 * diff * diff / sum;
            for a in 0..3 {
                for b in 0..3 {
                    // ⟨ψ_l|σ_b|ψ_i⟩ is the conjugate of ⟨ψ_i|σ_b|ψ_l⟩.
                    m[(a, b)] += weight * (v[a][(i, l)] * v[b][(i, l)].conj()).re;
                }
            }
        }
    }
    let m = (m + m.transpose()).scale(0.5);
    let eig = nalgebra::linalg::SymmetricEigen::new(m);
    let zeta = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(MMatrix {
        entries: m,
        zeta_min: zeta.max(0.0),
    })
}

/// Interferometric power with the Hamiltonian on party A.
pub fn interferometric_power(rho: &DensityOperator) -> Result<f64> {
    interferometric_power_on(rho, Party::A)
}

/// Interferometric power with the Hamiltonian on the chosen party.
pub fn interferometric_power_on(rho: &DensityOperator, party: Party) -> Result<f64> {
    Ok(m_matrix(rho, party)?.zeta_min)
}

/// Brute-force interferometric power: minimize QFI/4 over Bloch-direction
/// Hamiltonians H = (n·σ)⊗1 on an azimuth×polar grid, then refine locally
/// around the grid minimum with a shrinking pattern search.
///
/// The state's eigensystem is computed once; each direction then costs a
/// direct evaluation of the QFI spectral sum. The division by 4 matches
/// the ±1 spectrum of n·σ against the closed form's ½ prefactor.
pub fn ip_bruteforce(rho: &DensityOperator, n_grid: usize) -> Result<f64> {
    require_two_qubits(rho, "brute-force IP input")?;
    if n_grid < 16 {
        return Err(Error::Domain(format!(
            "brute-force grid must have at least 16 points per axis, got {n_grid}"
        )));
    }
    let (qs, vecs) = herm_eigen(rho.matrix());
    let qs: Vec<f64> = qs.iter().map(|&q| q.max(0.0)).collect();
    let n = qs.len();
    let v: Vec<CMat> = (1..=3)
        .map(|m| {
            let op = pauli(m).kronecker(&pauli(0));
            vecs.adjoint() * op * &vecs
        })
        .collect();

    // Cache the positively weighted pairs: (weight, [v_x, v_y, v_z]).
    let mut pairs: Vec<(f64, [Complex64; 3])> = Vec::new();
    for i in 0..n {
        for l in 0..n {
            let sum = qs[i] + qs[l];
            if sum <= TOL_DEG {
                continue;
            }
            let diff = qs[i] - qs[l];
            if diff == 0.0 {
                continue;
            }
            pairs.push((
                diff * diff / sum,
                [v[0][(i, l)], v[1][(i, l)], v[2][(i, l)]],
            ));
        }
    }
    if pairs.is_empty() {
        // Fully degenerate spectrum: QFI vanishes for every generator.
        return Ok(0.0);
    }

    // QFI along a unit direction, evaluated from the cached sum.
    let qfi_dir = |dir: [f64; 3]| -> f64 {
        let mut total = 0.0;
        for (w, vs) in &pairs {
            let amp = vs[0].scale(dir[0]) + vs[1].scale(dir[1]) + vs[2].scale(dir[2]);
            total += w * amp.norm_sqr();
        }
        2.0 * total
    };
    let at_angles = |phi: f64, theta: f64| -> f64 {
        qfi_dir([
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        ])
    };

    // Coarse pass.
    let mut best = f64::INFINITY;
    let (mut best_phi, mut best_theta) = (0.0, 0.0);
    for a in 0..n_grid {
        let phi = 2.0 * std::f64::consts::PI * a as f64 / n_grid as f64;
        for b in 0..n_grid {
            let theta = std::f64::consts::PI * b as f64 / (n_grid - 1) as f64;
            let val = at_angles(phi, theta);
            if val < best {
                best = val;
                best_phi = phi;
                best_theta = theta;
            }
        }
    }

    // Local refinement: shrink a 9×9 window around the running minimum.
    let mut dphi = 2.0 * std::f64::consts::PI / n_grid as f64;
    let mut dtheta = std::f64::consts::PI / (n_grid - 1) as f64;
    while dphi > 1e-10 || dtheta > 1e-10 {
        let (center_phi, center_theta) = (best_phi, best_theta);
        for a in -4i32..=4 {
            let phi = center_phi + dphi * a as f64 / 4.0;
            for b in -4i32..=4 {
                let theta =
                    (center_theta + dtheta * b as f64 / 4.0).clamp(0.0, std::f64::consts::PI);
                let val = at_angles(phi, theta);
                if val < best {
                    best = val;
                    best_phi = phi;
                    best_theta = theta;
                }
            }
        }
        dphi *= 0.5;
        dtheta *= 0.5;
    }

    Ok(best / 4.0)
}

/// Negativity via the partial transpose on qubit B:
/// N = max{0, −2·λ_min(ρ^{T_B})}. Positive iff the state is entangled
/// (exact for two qubits).
pub fn negativity(rho: &DensityOperator) -> Result<f64> {
    require_two_qubits(rho, "negativity input")?;
    let pt = partial_transpose_b(rho.matrix())?;
    let min_eig = herm_eigenvalues(&pt)[0];
    Ok((-2.0 * min_eig).max(0.0))
}
