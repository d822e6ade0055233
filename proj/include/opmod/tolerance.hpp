#pragma once

namespace opmod {

/// Every numerical threshold used by the library. Operations take a profile
/// by const reference; the defaults are the documented values.
struct ToleranceProfile {
    double spectral = 1e-10;       // spectral interval membership
    double zero_entry = 1e-12;     // "block is nonzero" decisions
    double projection = 1e-10;     // p^2 = p, p = p*, px = x checks
    double rank_cutoff = 1e-10;    // singular value rank decisions
    double certification = 1e-8;   // witness acceptance (scale-normalized)
    double violation = 1e-6;       // minimum magnitude of a reported violation
    double invertibility = 1e-12;  // reciprocal / pseudo-inverse cutoff

    /// All thresholds multiplied by `factor`.
    ToleranceProfile scaled(double factor) const {
        ToleranceProfile t = *this;
        t.spectral *= factor;
        t.zero_entry *= factor;
        t.projection *= factor;
        t.rank_cutoff *= factor;
        t.certification *= factor;
        t.violation *= factor;
        t.invertibility *= factor;
        return t;
    }

    /// Profile whose certification tolerance is `tol`, the rest in proportion.
    static ToleranceProfile from_certification(double tol) {
        return ToleranceProfile{}.scaled(tol / ToleranceProfile{}.certification);
    }
};

inline const ToleranceProfile kDefaultTolerances{};

}  // namespace opmod
