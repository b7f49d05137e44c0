#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curv4/geometry.hpp"
#include "curv4/pinch.hpp"
#include "curv4/quadrature.hpp"

namespace curv4 {

/// A built-in model manifold: chart metric, verified metadata, and the
/// trial functions / integration domain the spectral estimates use.
struct CatalogEntry {
    std::string name;
    std::string description;
    MetricField metric;

    struct Known {
        std::optional<double> scalar;
        std::optional<bool> einstein;
        std::optional<double> lambda1_exact;
        bool locally_conformally_flat = false;
        bool harmonic_weyl = false;
        std::map<std::string, std::string> provenance;
    } known;

    bool compact = true;
    std::optional<IntegrationDomain> integration;  // set for compact models
    std::vector<ExprPtr> lambda1_trials;           // Rayleigh trial functions
    ExprPtr lambda1_eigenfunction;                 // set when lambda1_exact is
    std::optional<double> volume_exact;
};

/// Names of the shipped entries.
std::vector<std::string> catalog_names();

/// Entry by name with optional parameter overrides (e.g. r, a, b, m, scale).
/// Metadata is derived from the final parameters and re-verified at load
/// time; throws input_error for unknown names or parameters.
CatalogEntry catalog_entry(const std::string& name, const ParamMap& overrides = {});

/// All entries with default parameters.
std::vector<CatalogEntry> catalog();

/// Load-time verification: declared scalar curvature and Einstein flag are
/// checked at Halton sample points to 1e-6, exact lambda1 values by the
/// eigenfunction residual of the Laplace-Beltrami operator.
void verify_entry(const CatalogEntry& entry);

/// Two-sided lambda1 estimate: Lichnerowicz-type lower bound 4 rho / 3 from
/// the sampled Ricci minimum (or the exact value when known), and a
/// quadrature Rayleigh-quotient upper bound over the entry's trial
/// functions, orthogonalized against constants.
struct Lambda1Estimate {
    double lower = 0.0;
    double upper = 0.0;
    std::string lower_source;  // "exact" | "lichnerowicz"
    std::string upper_source;  // "rayleigh" | "exact"
    double sampled_rho = 0.0;
    double quadrature_volume = 0.0;
    std::optional<double> volume_exact;
    double volume_rel_error = 0.0;  // quadrature quality indicator
};

Lambda1Estimate lambda1_estimate(const CatalogEntry& entry, int nodes_per_axis = 40);

/// Resolves the lambda1 provenance hierarchy (user > catalog exact >
/// bracket lower end > Lichnerowicz bound) for pinch reports.
Lambda1Choice resolve_lambda1(const CatalogEntry& entry, std::optional<double> user_value);

/// Minimum Ricci eigenvalue over a deterministic Halton sample of the
/// metric's domain.
double sampled_ricci_minimum(const MetricField& m, int samples = 81);

}  // namespace curv4
