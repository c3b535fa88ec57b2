//! Skew-walk matrices, generalized skew spectra and the rational orthogonal
//! matrices that conjugate one skew-adjacency matrix into another.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{skew_adjacency, OrientedGraph};
use crate::linalg::{
    char_poly, char_poly_i64, det_bareiss, mat_mul, rat_inverse, IntMatrix, IntPolynomial, RatMatrix,
};

/// `W(D) = [e, Se, S²e, …, S^(n-1)e]`.
pub fn walk_matrix(d: &OrientedGraph) -> IntMatrix {
    let s = skew_adjacency(d);
    let n = d.n();
    let mut columns = Vec::with_capacity(n);
    let mut col = vec![BigInt::one(); n];
    for k in 0..n {
        if k > 0 {
            col = s.mul_vec(&col).expect("square");
        }
        columns.push(col.clone());
    }
    IntMatrix::from_columns(&columns)
}

pub fn walk_det(d: &OrientedGraph) -> BigInt {
    det_bareiss(&walk_matrix(d)).expect("square")
}

/// Controllable iff the walk matrix is nonsingular.
pub fn is_controllable(d: &OrientedGraph) -> bool {
    !walk_det(d).is_zero()
}

/// Characteristic polynomials of `S(D)` and `J - S(D)`. Two graphs share a
/// generalized skew spectrum exactly when their fingerprints are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpectralFingerprint {
    pub p_s: IntPolynomial,
    pub p_js: IntPolynomial,
}

impl SpectralFingerprint {
    /// Fixed serialization the digest is taken over: ascending decimal
    /// coefficients, `s:` and `js:` sections.
    pub fn serialize(&self) -> String {
        let join = |p: &IntPolynomial| {
            p.coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("s:{};js:{}", join(&self.p_s), join(&self.p_js))
    }

    /// SHA-256 of [`SpectralFingerprint::serialize`], lowercase hex.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.serialize().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for SpectralFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "charpoly(S) = {}; charpoly(J - S) = {}", self.p_s, self.p_js)
    }
}

fn char_poly_small(entries: &[i64], n: usize) -> IntPolynomial {
    match char_poly_i64(entries, n) {
        Some(c) => IntPolynomial::from_i64(&c),
        None => {
            let m = IntMatrix::from_fn(n, n, |i, j| BigInt::from(entries[i * n + j]));
            char_poly(&m).expect("square")
        }
    }
}

pub fn fingerprint(d: &OrientedGraph) -> SpectralFingerprint {
    let n = d.n();
    let s = d.skew_entries();
    let js: Vec<i64> = s.iter().map(|x| 1 - x).collect();
    SpectralFingerprint {
        p_s: char_poly_small(&s, n),
        p_js: char_poly_small(&js, n),
    }
}

/// Same generalized skew spectrum.
pub fn generalized_cospectral(a: &OrientedGraph, b: &OrientedGraph) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::InvalidGraph(format!(
            "graphs of order {} and {} cannot be compared",
            a.n(),
            b.n()
        )));
    }
    Ok(fingerprint(a) == fingerprint(b))
}

/// A verified regular rational orthogonal `Q` with `Qᵀ S(source) Q =
/// S(target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCertificate {
    pub q: RatMatrix,
    pub level: BigInt,
    pub source: OrientedGraph,
    pub target: OrientedGraph,
}

impl QCertificate {
    /// `Q = I` from a graph to itself.
    pub fn identity(d: &OrientedGraph) -> Self {
        QCertificate {
            q: RatMatrix::identity(d.n()),
            level: BigInt::one(),
            source: *d,
            target: *d,
        }
    }
}

// With `Q = Q̄ / ℓ`: `QᵀQ = I` iff `Q̄ᵀQ̄ = ℓ²I`, `Qe = e` iff `Q̄e = ℓe`,
// and `QᵀS(D)Q = S(C)` iff `Q̄ᵀS(D)Q̄ = ℓ²S(C)`.
fn gamma_failures(q: &RatMatrix, source: &OrientedGraph, target: &OrientedGraph) -> Vec<&'static str> {
    let mut failed = Vec::new();
    let n = source.n();
    if q.rows() != n || q.cols() != n || target.n() != n {
        return vec!["dimensions"];
    }
    let (qbar, level) = q.common_denominator();
    let level_sq = &level * &level;
    let qbar_t = qbar.transpose();
    let gram = mat_mul(&qbar_t, &qbar).expect("square");
    if gram != IntMatrix::identity(n).scale(&level_sq) {
        failed.push("QᵀQ = I");
    }
    let sums = qbar.mul_vec(&vec![BigInt::one(); n]).expect("square");
    if sums.iter().any(|x| *x != level) {
        failed.push("Qe = e");
    }
    let conj = mat_mul(&qbar_t, &skew_adjacency(source))
        .and_then(|m| mat_mul(&m, &qbar))
        .expect("square");
    if conj != skew_adjacency(target).scale(&level_sq) {
        failed.push("QᵀS(D)Q = S(C)");
    }
    failed
}

/// `Q = W(D) W(C)⁻¹`, returned only after every defining identity has been
/// checked exactly.
pub fn recover_q(d: &OrientedGraph, c: &OrientedGraph) -> Result<QCertificate> {
    if d.n() != c.n() {
        return Err(Error::InvalidGraph("graphs of different order".into()));
    }
    let wd = walk_matrix(d);
    let wc = walk_matrix(c);
    if det_bareiss(&wd)?.is_zero() {
        return Err(Error::NotControllable("source"));
    }
    let wc_inv = match rat_inverse(&wc) {
        Ok(inv) => inv,
        Err(Error::Singular) => return Err(Error::NotControllable("target")),
        Err(e) => return Err(e),
    };
    let q = RatMatrix::from_int(&wd).mul(&wc_inv)?;
    let failed = gamma_failures(&q, d, c);
    if !failed.is_empty() {
        return Err(Error::NotCospectralMate(format!(
            "{d} -> {c}: failed {}",
            failed.join(", ")
        )));
    }
    let level = q.level();
    Ok(QCertificate {
        q,
        level,
        source: *d,
        target: *c,
    })
}

/// Re-checks `QᵀQ = I`, `Qe = e` and `Qᵀ S(source) Q = S(target)`, plus
/// that the stored level matches `Q`.
pub fn verify_gamma_membership(cert: &QCertificate) -> bool {
    gamma_failures(&cert.q, &cert.source, &cert.target).is_empty() && cert.q.level() == cert.level
}
