#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curv4/geometry.hpp"
#include "curv4/linalg.hpp"

namespace curv4 {

/// |delta W| threshold below which a metric counts as harmonic-Weyl for the
/// identity checks (FD-limited).
constexpr double kHarmonicWeylTol = 1e-3;

/// Inputs for the pointwise quadratic analysis. Norms use the half-Weyl
/// block convention (sum of squared eigenvalues).
struct PinchInputs {
    double s = 0.0;
    double lambda1 = 0.0;
    double k1perp = 0.0;
    double wplus_norm = 0.0;
    double wminus_norm = 0.0;
    std::optional<double> rho;
};

/// The quadratic  P(t) = c2 t^2 + c1 t + c0  built from the norms, with
/// exponent alpha0 = 1/3:
///   c2 = |W-|^(2/3) (a - 2 sqrt6 |W-|),  c1 = -6 lambda1 |W+|^(1/3)|W-|^(1/3),
///   c0 = |W+|^(2/3) (a - 2 sqrt6 |W+|),  a = s + 3 lambda1.
struct QuadraticP {
    double a = 0.0;
    double c2 = 0.0, c1 = 0.0, c0 = 0.0;
    double discriminant = 0.0;
    double alpha0 = 1.0 / 3.0;
};

/// The pinching thresholds and the two literature constants.
struct ThresholdSet {
    double new_threshold = 0.0;        // s^2 / (24 (3 lambda1 + s))
    double old_threshold = 0.0;        // s^2 / (8 (3 s + 5 lambda1))
    double yang_constant = 0.0;        // (sqrt(1249) - 23)/120
    double costa_constant = 0.0;       // (2 - sqrt 2)/6
    std::optional<double> corollary_threshold;  // s^2/(192 rho) when rho given
};

/// Thresholds at the given global constants; throws input_error on
/// non-positive s or lambda1 (or rho when supplied).
ThresholdSet thresholds(double s, double lambda1, std::optional<double> rho = {});

/// det W <= (sqrt6/18) |W|^3 for a trace-free spectrum. margin = rhs - lhs;
/// equality holds exactly on the family (-a, -a, 2a), a >= 0.
struct DetBoundCheck {
    double lhs = 0.0;     // det W
    double rhs = 0.0;     // (sqrt6/18)|W|^3
    double margin = 0.0;  // rhs - lhs
};
DetBoundCheck check_det_bound(const Vec3& spectrum);

/// |W|^2 <= 6 w1^2 margin for a trace-free spectrum (same equality family).
double eigenvalue_bound_margin(const Vec3& spectrum);

/// Residuals of  Lap|W+-|^2 = 2 |nabla W+-|^2 + s |W+-|^2 - 36 det W+-
/// at p, all derivatives by Richardson finite differences. Requires a
/// harmonic-Weyl metric (checked first; throws numeric_error otherwise).
struct WeitzenbockCheck {
    double residual_plus = 0.0, residual_minus = 0.0;
    double tol_plus = 0.0, tol_minus = 0.0;  // max(1e-3, 1e-2 * s|W|^2)
    double div_w_norm = 0.0;
    double fd_error = 0.0;
    bool pass() const {
        return std::abs(residual_plus) <= tol_plus && std::abs(residual_minus) <= tol_minus;
    }
};
WeitzenbockCheck check_weitzenbock(const MetricField& m, const Point4& p,
                                   double h_scale = 1e-3);

/// Kato margins over a sample set. Refined form sqrt(3/5)|nabla W+| versus
/// |nabla |W+||, evaluated only where |W+| exceeds the zero-locus guard;
/// plain form |nabla W| versus |nabla |W|| for arbitrary metrics.
struct KatoCheck {
    double worst_margin = 0.0;
    int used_points = 0;
    int skipped_points = 0;
    bool refined = false;
    double guard = 0.01;
};
KatoCheck check_refined_kato(const MetricField& m, const std::vector<Point4>& points,
                             double guard = 0.01, double h_scale = 1e-3);
KatoCheck check_plain_kato(const MetricField& m, const std::vector<Point4>& points,
                           double guard = 0.01, double h_scale = 1e-3);

/// Pointwise discriminant analysis of P(t): evaluates the hypothesis chain
///   (i)  |W+| + |W-| <= sqrt6 (s/6 - 2 K1perp)
///   (ii) K1perp >= s^2/(24 (3 lambda1 + s))
/// and the claim that (i) and (ii) force the discriminant <= 0 (indeed
/// <= -96 (|W+||W-|)^(5/3)). Hypothesis failures are verdicts, not errors.
struct DiscriminantVerdict {
    QuadraticP quadratic;
    bool norm_sum_bound_holds = false;  // (i)
    bool pinching_holds = false;        // (ii)
    bool discriminant_nonpositive = false;
    double sharper_bound = 0.0;  // -96 (|W+||W-|)^(5/3)
};
DiscriminantVerdict discriminant_analysis(const PinchInputs& pi);

/// Provenance-tagged lambda1 value used in a report.
struct Lambda1Choice {
    double value = 0.0;
    std::string source;  // "user" | "catalog" | "lichnerowicz"
};

/// Per-point and manifold-level hypothesis evaluation for the pinching
/// theorems. Grid points are cell centers, lexicographic order.
struct PinchReport {
    struct Row {
        Point4 p{};
        double s = 0.0, k1perp = 0.0, ric_min = 0.0, ric_max = 0.0, div_w = 0.0;
        std::string status;  // "ok" or an error message
    };
    std::string target;
    int grid = 0;
    std::vector<Row> rows;
    int failed_points = 0;

    double inf_s = 0.0, sup_s = 0.0, inf_k1perp = 0.0;
    double rho = 0.0;             // inf of Ricci eigenvalues
    double max_div_w = 0.0;
    bool harmonic_weyl = false;
    Lambda1Choice lambda1;
    std::string rho_source;  // "user" | "sampled"

    ThresholdSet threshold_set;       // at sup_s (conservative) and lambda1
    double margin_new_sup = 0.0;      // inf K1perp - new_threshold(sup s)
    double margin_new_pointwise = 0.0;  // min over rows of pointwise margin
    std::optional<double> margin_corollary;
    std::string theorem_a_verdict;    // "hypotheses satisfied" / "hypotheses violated: ..."
    std::string corollary_verdict;
    std::string analyticity_note;     // unverifiable hypothesis flag
};

PinchReport pinch_report(const MetricField& m, const Lambda1Choice& lambda1,
                         std::optional<double> rho_user, int grid);

}  // namespace curv4
