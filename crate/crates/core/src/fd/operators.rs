//! Central differences on boundary-wrapped nodal vectors.

use crate::lattice::CS2;

/// Nodal values `y_1..y_N` (stored zero-based).
#[derive(Debug, Clone, PartialEq)]
pub struct NodalVector(pub Vec<f64>);

/// `y_0..y_{N+1}`: a nodal vector with one ghost value at each end.
#[derive(Debug, Clone, PartialEq)]
pub struct WrappedVector(pub Vec<f64>);

/// Which state vector is wrapped; selects the ghost rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrapKind {
    /// Extrapolated at the inlet, `p_k = c_s^2` half-way at the outlet.
    Pk,
    /// Half-way Dirichlet at the inlet, extrapolated at the outlet.
    Ug,
    Ul,
    AlphaG,
}

/// Ghost values `(y_0, y_{N+1})` for nodal data `v` and inlet value `inlet`
/// (ignored for `Pk`).
#[inline]
pub fn ghosts(v: &[f64], kind: WrapKind, inlet: f64) -> (f64, f64) {
    let n = v.len();
    match kind {
        WrapKind::Pk => (2.0 * v[0] - v[1], 2.0 * CS2 - v[n - 1]),
        WrapKind::Ug | WrapKind::Ul | WrapKind::AlphaG => (2.0 * inlet - v[0], 2.0 * v[n - 1] - v[n - 2]),
    }
}

/// Wrap into a preallocated buffer of length `N + 2`.
pub fn wrap_into(v: &[f64], kind: WrapKind, inlet: f64, out: &mut [f64]) {
    let n = v.len();
    debug_assert_eq!(out.len(), n + 2);
    let (g0, g1) = ghosts(v, kind, inlet);
    out[0] = g0;
    out[1..=n].copy_from_slice(v);
    out[n + 1] = g1;
}

pub fn wrap(v: &NodalVector, kind: WrapKind, inlet: f64) -> WrappedVector {
    let mut out = vec![0.0; v.0.len() + 2];
    wrap_into(&v.0, kind, inlet, &mut out);
    WrappedVector(out)
}

/// `(w_{i+1} - w_{i-1}) / 2` for `i = 1..N`.
pub fn dx(w: &WrappedVector) -> NodalVector {
    NodalVector(w.0.windows(3).map(|s| 0.5 * (s[2] - s[0])).collect())
}

/// `w_{i+1} - 2 w_i + w_{i-1}` for `i = 1..N`.
pub fn dx2(w: &WrappedVector) -> NodalVector {
    NodalVector(w.0.windows(3).map(|s| s[2] - 2.0 * s[1] + s[0]).collect())
}
