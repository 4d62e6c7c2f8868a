//! Cone classification and the certificate-synthesis pipeline.

/// Classification of a rational class against the cone regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// ω² ≤ 0: outside the positive cone, never symplectic.
    NotPositiveSquare,
    /// ω² > 0 but ω·F = 0: excluded because ω·c₁ = 0.
    PerpToC1,
    /// n even, ω in P^{PD(F)} after normalization.
    CertifiableSpin,
    /// ω in P^{PD(F)+}: α, β, ω′² all positive after normalization.
    CertifiablePositive,
    /// n odd, ω² > (ω·F)² strictly.
    CertifiableNonSpinGt,
    /// n odd, in P^{PD(F)} but not in P^{PD(F)>}: conjectured, not certified.
    ConjecturalNonSpin,
}
