#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsio/ifs.hpp"
#include "fsio/interval.hpp"
#include "fsio/kernels.hpp"

namespace fsio {

/// Integration domain over the invariant set.
struct Region {
    enum class Type { Whole, ComplementOf, Annulus };
    Type type = Type::Whole;
    Word w;
    int k = 0;

    static Region whole() { return {}; }
    static Region complement_of(Word w);
    static Region annulus(Word w, int k);
};

enum class CertMode { Interval, Heuristic };
enum class SignCert { None, Positive, Negative };

const char* to_string(SignCert s);
const char* to_string(CertMode m);

struct QuadratureOptions {
    /// Refinement depth below each top-level piece of the region
    /// decomposition (ignored when mass_cutoff > 0).
    int depth = 4;
    /// When positive, refine to the minimal antichain of mass <= cutoff.
    double mass_cutoff = 0.0;
    /// 0 resolves to FRACTAL_SIO_NODE_BUDGET (default 5e7).
    std::uint64_t node_budget = 0;
    CertMode mode = CertMode::Interval;
    /// Multiplier on the empirically calibrated smoothness constant.
    double safety_factor = 4.0;
    /// Positive rescaling of the measure; affects values, never verdicts.
    double measure_scale = 1.0;
    int threads = 1;
    int calibration_samples = 2000;
    std::uint64_t calibration_seed = 0x5eed0001;
};

std::uint64_t resolve_node_budget(std::uint64_t requested);

/// Per-component counts of leaf-interval signs (interval mode).
struct BoxTally {
    std::uint64_t positive = 0;   // lower bound > 0
    std::uint64_t negative = 0;   // upper bound < 0
    std::uint64_t touch_zero = 0; // one bound exactly 0
    std::uint64_t straddle = 0;   // interval crosses 0
};

/// Result of a kernel quadrature against the self-similar measure.
///
/// value[i] is the one-node-per-cylinder sum of K_i(q^{-1} x) mass(q) over
/// the antichain; error_indicator[i] bounds the difference to the exact
/// integral using the calibrated smoothness constant (infinite when some
/// leaf ball could not be certified away from x). interval_sum[i] encloses
/// the exact integral rigorously in interval mode.
struct IntegralEstimate {
    std::vector<double> value;
    std::vector<double> error_indicator;
    std::vector<Interval> interval_sum;
    std::vector<SignCert> certified_sign;
    std::vector<BoxTally> box_tally;
    int depth_used = 0;
    std::uint64_t nodes = 0;
    double min_leaf_gap = 0.0; // min over leaves of d(x, anchor) - diam_bound
    double calibration_constant = 0.0;
    CertMode mode = CertMode::Interval;

    double norm() const; // Euclidean norm of value
};

/// Quadrature of y -> K(y^{-1} x) over the region against the natural
/// measure. Throws singularity_error when x collides with a quadrature node
/// and budget_error past the node budget.
IntegralEstimate integrate_region(const IFS& ifs, const SelfSimilarMeasure& mu,
                                  const KernelSpec& spec, const Point& x,
                                  const Region& region, const QuadratureOptions& opt);

/// Annular integrals eta_k over C_{w^k} \ C_{w^{k+1}} at x = fixed_point(w),
/// k = 0..k_max. Quadrature nodes of eta_k are the S_{w^k}-images of eta_0's
/// nodes, so in exact arithmetic the sequence is constant.
std::vector<std::vector<double>> telescope_eta(const IFS& ifs, const SelfSimilarMeasure& mu,
                                               const KernelSpec& spec, const Word& w,
                                               int k_max, const QuadratureOptions& opt);

struct ComponentVerdict {
    double value = 0.0;
    double error_indicator = 0.0;
    Interval interval_sum;
    SignCert sign = SignCert::None;
    bool nonzero_certified = false;
};

struct CriterionReport {
    Word word;
    Point fixed_pt;
    std::vector<ComponentVerdict> components;
    std::vector<std::vector<double>> eta_sequence;
    IntegralEstimate estimate;
    bool any_certified() const;
};

/// Unboundedness criterion: for each word w evaluates the kernel integral
/// over C \ C_w at the fixed point of S_w and certifies per component.
/// Requires a separation report with disjoint = true.
std::vector<CriterionReport> check_unboundedness(const IFS& ifs, const SelfSimilarMeasure& mu,
                                                 const KernelSpec& spec,
                                                 const std::vector<Word>& words,
                                                 const SeparationReport& separation,
                                                 const QuadratureOptions& opt,
                                                 int eta_terms = 3);

/// Truncated operator: quadrature over cylinders certified outside B(p, eps).
/// Straddling cylinders are refined until classified or the budget is hit;
/// unresolved ones contribute only to the error indicator.
IntegralEstimate truncated_operator(const IFS& ifs, const SelfSimilarMeasure& mu,
                                    const KernelSpec& spec, const Point& p, double eps,
                                    const QuadratureOptions& opt);

struct MaximalEstimate {
    double estimate = 0.0;             // max over the grid of |T^eps|
    std::vector<double> per_eps_norm;  // |T^eps| per grid entry
};

/// Lower bound for the maximal operator via a finite eps grid.
MaximalEstimate maximal_operator_estimate(const IFS& ifs, const SelfSimilarMeasure& mu,
                                          const KernelSpec& spec, const Point& p,
                                          const std::vector<double>& eps_grid,
                                          const QuadratureOptions& opt);

struct CylindricalMaximalEstimate {
    double estimate = 0.0;
    int best_outer = 0; // prefix lengths of the maximizing pair
    int best_inner = 0;
};

/// Cylindrical maximal operator along the prefix chain of `chain`, evaluated
/// at p = S_chain(base_point): max over prefix pairs a < b <= |chain| of
/// |integral over C_{chain|a} \ C_{chain|b}|.
CylindricalMaximalEstimate cylindrical_maximal_estimate(const IFS& ifs,
                                                        const SelfSimilarMeasure& mu,
                                                        const KernelSpec& spec,
                                                        const Word& chain,
                                                        const QuadratureOptions& opt);

struct PotentialEstimate {
    double value = 0.0;
    double error_indicator = 0.0;
    std::uint64_t nodes = 0;
};

/// Potential of the fundamental-solution profile: sum of
/// Gamma(anchor^{-1} p) mass over an antichain refined near p.
PotentialEstimate gamma_potential(const IFS& ifs, const SelfSimilarMeasure& mu, double C_Q,
                                  const Point& p, const QuadratureOptions& opt);

/// Max over sampled point pairs of |f(p1)-f(p2)| / d(p1,p2) for the potential
/// above; points are drawn outside an inflated bounding shell of the set so
/// every evaluation is certified away from the support.
double lipschitz_probe(const IFS& ifs, const SelfSimilarMeasure& mu, double C_Q,
                       int sample_pairs, std::uint64_t seed, const QuadratureOptions& opt);

} // namespace fsio
