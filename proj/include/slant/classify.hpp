#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "slant/ambient.hpp"
#include "slant/frenet.hpp"
#include "slant/sampling.hpp"

namespace slant {

struct Tolerances {
    double speed = 1e-6;
    double rank = 1e-8;
    double rank_sampled = 1e-6;  // finite-difference jets carry more noise
    double slant = 1e-6;
    double class_residual = 1e-5;
    double lambda = 1e-6;
    double constant = 1e-6;
    double span = 1e-5;
    double checklist = 1e-4;
    double quad = kDefaultQuadTol;

    FrenetTolerances frenet(bool sampled) const { return {speed, sampled ? rank_sampled : rank}; }
};

inline constexpr double kBoundSlack = 1e-9;

/// cos theta_a(t) = eta^a(T) with T the normalized velocity.
struct ContactReport {
    Shape shape;
    std::vector<double> t;
    std::vector<std::vector<double>> cos_theta;  // [alpha][sample]
    double mean = 0.0;                           // over alpha and samples
    double max_deviation = 0.0;                  // max |cos_a(t_j) - mean|
    double max_abs = 0.0;
    double bound = 0.0;  // 1/sqrt(s)
    bool is_slant = false;
    bool is_legendre = false;
    bool bound_violation = false;  // max_abs > bound + kBoundSlack

    double theta() const;
};

ContactReport contact_report(const CurveSamples& samples, double slant_tol = 1e-6);

enum class Condition { Parallel, Proper };
enum class Bundle { Tangent, Normal };

struct ClassTarget {
    Condition condition = Condition::Parallel;
    Bundle bundle = Bundle::Tangent;

    std::string name() const;   // "parallel-tangent"
    std::string label() const;  // "C-parallel-tangent"
    int theorem() const;        // 1..4
    int op_index() const;       // index into MeanCurvatureOps::by_index
};

/// Accepts parallel-tangent, parallel-normal, proper-tangent, proper-normal.
ClassTarget parse_class_target(std::string_view text);
std::array<ClassTarget, 4> all_class_targets();

/// Coefficient of W along xi_sum: g(W, xi_sum) / s.
double recover_lambda(const Shape& shape, const Point& p, const Tangent& w);

struct ClassificationReport {
    ClassTarget target;
    std::string label;  // target label or "none"
    bool granted = false;
    std::vector<double> t;
    std::vector<double> lambda;  // every grid sample
    double residual = 0.0;       // max |W - lambda xi_sum|_g over interior samples
    double min_abs_lambda = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    bool lambda_nonzero = false;
};

/// W is the operator field selected by `target`, taken from `ops` (one value
/// per grid sample, as produced by mean_curvature_ops_direct). Residual and
/// the non-vanishing test use interior samples only.
ClassificationReport classify(const CurveSamples& samples, const MeanCurvatureOps& ops, ClassTarget target,
                              const Tolerances& tol = {});

struct ChecklistItem {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool above = false;  // pass iff value > threshold instead of value < threshold
    bool passed = false;
};

struct TheoremChecklist {
    int theorem = 0;
    bool applicable = false;  // slant / Legendre precondition
    bool kappa3_zero = false;
    std::vector<ChecklistItem> items;

    bool passed() const;
    const ChecklistItem* find(std::string_view name) const;
};

/// `lambda` is the classification for the target matching the theorem; its
/// lambda samples enter the lambda identities.
TheoremChecklist theorem1_checklist(const FrenetApparatus& fa, const ContactReport& contact,
                                    const ClassificationReport& lambda, const Tolerances& tol = {});
TheoremChecklist theorem2_checklist(const FrenetApparatus& fa, const ContactReport& contact,
                                    const ClassificationReport& lambda, const Tolerances& tol = {});
TheoremChecklist theorem3_checklist(const FrenetApparatus& fa, const ContactReport& contact,
                                    const ClassificationReport& lambda, const Tolerances& tol = {});
TheoremChecklist theorem4_checklist(const FrenetApparatus& fa, const ContactReport& contact,
                                    const ClassificationReport& lambda, const Tolerances& tol = {});
TheoremChecklist theorem_checklist(int theorem, const FrenetApparatus& fa, const ContactReport& contact,
                                   const ClassificationReport& lambda, const Tolerances& tol = {});

// Closed forms for the C-parallel slant helix with kappa_3 = 0. Orientation
// keeps kappa_i > 0, so |cos theta| appears where the sign would otherwise
// flip for cos theta > 0.
double helix_kappa1(int s, double cos_theta);                       // s |c| sqrt(1 - s c^2)
double helix_kappa2(int s, double cos_theta);                       // sqrt(s) (1 - s c^2)
double helix_kappa2_from_kappa1(int s, double cos_theta, double k1);  // k1 sqrt(1 - s c^2) / (sqrt(s) |c|)
double helix_lambda(int s, double cos_theta, double k1);            // -k1^2 / (s c)

}  // namespace slant
