//! Small dense complex linear algebra shared across the crate.
//!
//! Everything here works on `DMatrix<Complex64>` at the 2/4/8/16
//! dimensions that appear in two-qubit and four-qubit problems. The
//! helpers encapsulate the numerically delicate steps: Hermitian
//! eigendecomposition, PSD square roots with clamping, and partial
//! traces under the big-endian qubit convention (qubit 1 is the leftmost
//! tensor factor, i.e. the most significant bit of the index).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex matrix used everywhere in the crate.
pub type CMat = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVec = DVector<Complex64>;

/// Complex scalar shorthand.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Complex scalar with zero imaginary part.
#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// n×n identity.
pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// The Pauli matrices σ₁ = σ_x, σ₂ = σ_y, σ₃ = σ_z.
///
/// Index 0 returns the 2×2 identity so that `pauli` doubles as the
/// "extended" Pauli basis when convenient.
pub fn pauli(i: usize) -> CMat {
    match i {
        0 => identity(2),
        1 => CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]),
        2 => CMat::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)]),
        3 => CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]),
        _ => panic!("pauli index must be 0..=3, got {i}"),
    }
}

/// (m + m†)/2 — the Hermitian part of `m`.
pub fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// Largest |m[i][j] − conj(m[j][i])| over all entries.
pub fn herm_violation(m: &CMat) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest entrywise |a − b|.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff shape mismatch");
    let mut worst: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvalues ascending and
/// `eigenvectors.column(i)` the unit eigenvector for `eigenvalues[i]`.
/// The input is hermitized first so that rounding-level asymmetry cannot
/// leak imaginary parts into the spectrum.
pub fn herm_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let sym = nalgebra::linalg::SymmetricEigen::new(hermitize(m));
    let n = sym.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        sym.eigenvalues[i]
            .partial_cmp(&sym.eigenvalues[j])
            .expect("eigenvalues of a Hermitian matrix are finite reals")
    });
    let vals: Vec<f64> = order.iter().map(|&i| sym.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &sym.eigenvectors.column(i).into_owned());
    }
    (vals, vecs)
}

/// Eigenvalues only, ascending.
pub fn herm_eigenvalues(m: &CMat) -> Vec<f64> {
    let sym = nalgebra::linalg::SymmetricEigen::new(hermitize(m));
    let mut vals: Vec<f64> = sym.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    vals
}

/// Relative floor under which a computed eigenvalue of a PSD matrix is
/// treated as an exact zero. Square roots amplify eigensolver noise
/// (sqrt(1e-16) is 1e-8), so rank-deficient spectra must be floored
/// before taking roots.
pub const REL_SPECTRAL_FLOOR: f64 = 1e-13;

/// Zero out entries below `REL_SPECTRAL_FLOOR` times the largest entry.
pub fn floor_spectrum(vals: &mut [f64]) {
    let max = vals.iter().cloned().fold(0.0, f64::max);
    let floor = max * REL_SPECTRAL_FLOOR;
    for v in vals.iter_mut() {
        if *v < floor {
            *v = 0.0;
        }
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in [−clamp_tol, 0) are clamped to 0 before the square
/// root; an eigenvalue below −clamp_tol is a genuine PSD violation and
/// is reported as an error. Eigenvalues within `REL_SPECTRAL_FLOOR` of
/// zero (relative to the top of the spectrum) are rounded to exact zeros
/// so that noise in a rank-deficient input is not amplified by the root.
pub fn sqrtm_psd(m: &CMat, clamp_tol: f64) -> Result<CMat> {
    let (mut vals, vecs) = herm_eigen(m);
    for &v in &vals {
        if v < -clamp_tol {
            return Err(Error::InvalidState(format!(
                "matrix square root requested for a non-PSD matrix (eigenvalue {v:.3e})"
            )));
        }
    }
    floor_spectrum(&mut vals);
    let mut sqrt_diag = CMat::zeros(vals.len(), vals.len());
    for (i, &v) in vals.iter().enumerate() {
        sqrt_diag[(i, i)] = cr(v.sqrt());
    }
    Ok(&vecs * sqrt_diag * vecs.adjoint())
}

/// Number of qubits for a 2^n dimension, or an error for anything else.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    match dim {
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        16 => Ok(4),
        _ => Err(Error::dims(
            "a power-of-two dimension in {2, 4, 8, 16}",
            format!("{dim}"),
            "qubit register",
        )),
    }
}

/// Partial trace over a qubit register, keeping the listed qubits.
///
/// `keep` holds 0-based qubit positions (0 = leftmost factor = most
/// significant bit), strictly increasing. The kept qubits retain their
/// relative order in the output.
pub fn partial_trace_qubits(m: &CMat, n_qubits: usize, keep: &[usize]) -> Result<CMat> {
    let dim = 1usize << n_qubits;
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::dims(
            format!("{dim}x{dim}"),
            format!("{}x{}", m.nrows(), m.ncols()),
            "partial trace input",
        ));
    }
    if keep.is_empty() || keep.len() >= n_qubits {
        return Err(Error::dims(
            format!("a nonempty proper subset of 0..{n_qubits}"),
            format!("{keep:?}"),
            "partial trace keep-set",
        ));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || *keep.last().unwrap() >= n_qubits {
        return Err(Error::dims(
            format!("strictly increasing qubit positions below {n_qubits}"),
            format!("{keep:?}"),
            "partial trace keep-set",
        ));
    }

    let traced: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
    let kd = 1usize << keep.len();
    let td = 1usize << traced.len();

    // Scatter the bits of a compact index into the full register index at
    // the given qubit positions (qubit q occupies bit n_qubits-1-q).
    let embed = |positions: &[usize], compact: usize| -> usize {
        let mut full = 0usize;
        for (b, &q) in positions.iter().enumerate() {
            let bit = (compact >> (positions.len() - 1 - b)) & 1;
            full |= bit << (n_qubits - 1 - q);
        }
        full
    };

    let mut out = CMat::zeros(kd, kd);
    for i in 0..kd {
        let ibase = embed(keep, i);
        for j in 0..kd {
            let jbase = embed(keep, j);
            let mut sum = Complex64::new(0.0, 0.0);
            for t in 0..td {
                let tbits = embed(&traced, t);
                sum += m[(ibase | tbits, jbase | tbits)];
            }
            out[(i, j)] = sum;
        }
    }
    Ok(out)
}

/// Partial transpose on the second qubit of a two-qubit matrix.
pub fn partial_transpose_b(m: &CMat) -> Result<CMat> {
    if m.nrows() != 4 || m.ncols() != 4 {
        return Err(Error::dims(
            "4x4",
            format!("{}x{}", m.nrows(), m.ncols()),
            "partial transpose input",
        ));
    }
    let mut out = CMat::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    // (i,j),(k,l) -> (i,l),(k,j): transpose the B index only.
                    out[(2 * i + l, 2 * k + j)] = m[(2 * i + j, 2 * k + l)];
                }
            }
        }
    }
    Ok(out)
}

/// ⟨ψ|A|ψ⟩ for a unit vector ψ.
pub fn expectation(psi: &CVec, a: &CMat) -> Complex64 {
    (psi.adjoint() * a * psi)[(0, 0)]
}

/// ⟨φ|A|ψ⟩.
pub fn matrix_element(phi: &CVec, a: &CMat, psi: &CVec) -> Complex64 {
    (phi.adjoint() * a * psi)[(0, 0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bell_phi_plus() -> CMat {
        let mut m = CMat::zeros(4, 4);
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                m[(i, j)] = cr(0.5);
            }
        }
        m
    }

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (pauli(1), pauli(2), pauli(3));
        // σxσy = iσz.
        assert!(max_abs_diff(&(&x * &y), &z.map(|e| e * c(0.0, 1.0))) < 1e-15);
        for i in 1..=3 {
            let s = pauli(i);
            assert!(max_abs_diff(&(&s * &s), &identity(2)) < 1e-15);
            assert!(herm_violation(&s) < 1e-15);
            assert_abs_diff_eq!(s.trace().re, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn herm_eigen_sorted_and_consistent() {
        // diag(3, 1, 2) conjugated by nothing: eigenvalues come back ascending.
        let mut m = CMat::zeros(3, 3);
        m[(0, 0)] = cr(3.0);
        m[(1, 1)] = cr(1.0);
        m[(2, 2)] = cr(2.0);
        let (vals, vecs) = herm_eigen(&m);
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        // Reconstruct m = V Λ V†.
        let mut lam = CMat::zeros(3, 3);
        for (i, &v) in vals.iter().enumerate() {
            lam[(i, i)] = cr(v);
        }
        assert!(max_abs_diff(&m, &(&vecs * lam * vecs.adjoint())) < 1e-12);
    }

    #[test]
    fn sqrtm_of_projector_is_projector() {
        let p = bell_phi_plus();
        let s = sqrtm_psd(&p, 1e-10).unwrap();
        assert!(max_abs_diff(&(&s * &s), &p) < 1e-12);
    }

    #[test]
    fn sqrtm_rejects_negative_matrix() {
        let mut m = identity(2);
        m[(1, 1)] = cr(-0.5);
        assert!(sqrtm_psd(&m, 1e-10).is_err());
    }

    #[test]
    fn partial_trace_of_product_recovers_factor() {
        // ρ = |0⟩⟨0| ⊗ (I/2): tracing qubit 1 (position 1) returns |0⟩⟨0|.
        let zero = CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
        let mixed = identity(2).scale(0.5);
        let prod = zero.kronecker(&mixed);
        let back = partial_trace_qubits(&prod, 2, &[0]).unwrap();
        assert!(max_abs_diff(&back, &zero) < 1e-15);
        let other = partial_trace_qubits(&prod, 2, &[1]).unwrap();
        assert!(max_abs_diff(&other, &mixed) < 1e-15);
    }

    #[test]
    fn partial_trace_bell_marginal_is_maximally_mixed() {
        let p = bell_phi_plus();
        let ma = partial_trace_qubits(&p, 2, &[0]).unwrap();
        assert!(max_abs_diff(&ma, &identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_keep_set_validation() {
        let p = bell_phi_plus();
        assert!(partial_trace_qubits(&p, 2, &[]).is_err());
        assert!(partial_trace_qubits(&p, 2, &[0, 1]).is_err());
        assert!(partial_trace_qubits(&p, 2, &[2]).is_err());
    }

    #[test]
    fn partial_transpose_bell_has_negative_eigenvalue() {
        let pt = partial_transpose_b(&bell_phi_plus()).unwrap();
        let vals = herm_eigenvalues(&pt);
        assert_abs_diff_eq!(vals[0], -0.5, epsilon = 1e-12);
    }

    #[test]
    fn four_qubit_partial_trace_keeps_outer_pair() {
        // (|0⟩⟨0| ⊗ I/2) ⊗ (I/2 ⊗ |1⟩⟨1|): keeping qubits {0,3} gives
        // |0⟩⟨0| ⊗ |1⟩⟨1|.
        let zero = CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
        let one = CMat::from_row_slice(2, 2, &[cr(0.0), cr(0.0), cr(0.0), cr(1.0)]);
        let mixed = identity(2).scale(0.5);
        let big = zero.kronecker(&mixed).kronecker(&mixed).kronecker(&one);
        let kept = partial_trace_qubits(&big, 4, &[0, 3]).unwrap();
        assert!(max_abs_diff(&kept, &zero.kronecker(&one)) < 1e-15);
    }
}
