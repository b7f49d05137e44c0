#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curv4/catalog.hpp"

namespace curv4 {

struct VerifySummary {
    long long checked = 0;
    long long violations = 0;
    std::vector<std::string> lines;  // one human-readable line per sub-check
    bool ok() const { return violations == 0; }
};

/// Metric-free fuzzing of the spectral inequalities:
///  - det W <= (sqrt6/18)|W|^3 and |W|^2 <= 6 w1^2 over random trace-free
///    spectra (margins never below -1e-12), with the equality family
///    (-a,-a,2a) recovered for both;
///  - the discriminant of P(t) stays <= 0 (and below the sharper
///    -96(|W+||W-|)^(5/3) line) for random tuples satisfying the
///    norm-sum bound and the pinching hypothesis.
VerifySummary verify_algebraic(long long spectra_samples = 1000000,
                               long long discriminant_samples = 100000,
                               std::uint64_t seed = 20240917);

/// Field checks on a target metric at Halton sample points: Bianchi and
/// metric-compatibility residuals, the divergence split identity,
/// and (on harmonic-Weyl targets) the Weitzenboeck formula and refined Kato
/// inequality; plain Kato otherwise. Non-harmonic targets skip the refined
/// form with a warning line.
VerifySummary verify_field(const CatalogEntry& entry, int sample_points = 20,
                           double h_scale = 1e-3);

}  // namespace curv4
