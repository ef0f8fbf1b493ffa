#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsio/ifs.hpp"
#include "fsio/quadrature.hpp"

namespace fsio {

/// Parameters of the self-similar family on H^n built from an even grid
/// count N and a common ratio r < 1/N: one scaled copy at the origin plus
/// N^{2n+2}/2 translated copies indexed by a horizontal grid point z and a
/// vertical block offset 1/2 + i/N^2.
struct CantorParams {
    int n = 1;
    int N = 18;
    double r = 0.0;

    std::uint64_t z_count() const; // N^{2n}
    std::uint64_t map_count() const; // N^{2n+2}/2 + 1
};

/// Canonical z enumeration: index j in [1, N^{2n}] maps to the base-N digit
/// expansion of j-1, axis 0 least significant, scaled by 1/N.
std::vector<double> z_point(const CantorParams& params, std::uint64_t index);

/// Horizontal grid point and vertical offset of map j >= 1. The residue
/// j mod N^{2n} indexes z, with residue 0 standing for index N^{2n}.
struct MapAddress {
    std::uint64_t z_index = 1;
    int block = 0; // i in the vertical offset 1/2 + i/N^2
};
MapAddress map_address(const CantorParams& params, std::uint64_t j);

/// Builds the full similarity family (map 0 is the pure dilation). Validates
/// N even, N >= 2, 0 < r < 1/N; violations name the failed inequality.
IFS build_similarities(const CantorParams& params);

struct FeasibilityCheck {
    std::string name;
    double lhs = 0.0, rhs = 0.0;
    bool pass = false;
};

struct DimensionSolve {
    double r = 0.0;
    bool feasible = false;
    std::vector<FeasibilityCheck> checks;
};

/// r = (N^{2n+2}/2 + 1)^{-1/target_a}, with itemized feasibility checks:
/// r < 1/N, 1/N < 1/2, and (when target_a == 2n+1) r < 1/(16n).
DimensionSolve solve_r_for_dimension(int n, int N, double target_a);

/// Data of the separating-function fixed point problem: boxes Q_j = z_j +
/// [0,r]^{2n} inside Q = [0,1]^{2n}, the linear obstruction h on each box,
/// and the blend width of the extension operator.
struct PhiProblem {
    int n = 1;
    int N = 2;
    double r = 0.25;
    std::vector<std::vector<double>> z; // distinct box corners
    double blend_eps = 0.0;             // half the minimal box gap
};

PhiProblem make_phi_problem(const CantorParams& params);

/// Grid representation of the separating function.
struct PhiField {
    int n = 1;
    int resolution = 64;
    std::vector<double> values; // row-major over (2n)-dim grid, axis 0 fastest
    double blend_eps = 0.0;
    double residual = 0.0;     // fixed-point defect of the field itself
    double sup_norm = 0.0;
    double min_on_boxes = 0.0; // min over grid points inside the boxes
    int iterations = 0;
    std::vector<double> iteration_diffs; // successive sup-norm differences
};

/// Solves the fixed-point equation phi(w) = r^2 phi((w - z_j)/r) + h_j(w) on
/// the boxes (extended by the blend operator off them) by contraction
/// iteration of the grid operator; the reported residual is the grid
/// equation defect of the converged field, evaluated with the field's own
/// interpolant. Throws numerical_error if the certified iteration cap is
/// exceeded or the defect stays above tol.
PhiField solve_phi(const PhiProblem& problem, int resolution, double tol);

/// Multilinear interpolation of the field at w in [0,1]^{2n}.
double phi_field_eval(const PhiField& field, const std::vector<double>& w);

/// Pointwise evaluation of the exact fixed point by unrolling the
/// contraction; truncation error is below 1e-30 of the sup norm. Serves as
/// the independent route against the grid solve.
double phi_exact(const PhiProblem& problem, const std::vector<double>& w, int depth = 64);

struct PhiVerifyReport {
    double residual = 0.0;
    double sup_norm = 0.0;
    double bound_8nr = 0.0;
    double min_on_boxes = 0.0;
    bool residual_ok = false;
    bool norm_ok = false;
    bool positive_ok = false; // min over boxes > -1/2
    bool pass = false;
};

PhiVerifyReport verify_phi(const PhiField& field, const PhiProblem& problem, double tol);

/// Membership in R = { q : q' in [0,1]^{2n}, phi(q') <= q_t <= phi(q') + 1 }.
bool region_membership(const PhiField& field, const GroupSpace& space, const Point& p);

/// Closed-form separation certificate for the construction. Pieces with
/// different z are separated horizontally by 1/N - r; pieces sharing z but
/// in different vertical blocks by a bound combining the vertical offset
/// 1/N^2 - r^2 with the Lipschitz constant of phi and the twist; the scaled
/// piece at the origin is separated from the z = 0 stack by the 1/2 offset.
struct CantorSeparation {
    SeparationReport report; // method = "construction-certificate"
    double gap_different_z = 0.0;
    double gap_same_z_blocks = 0.0;
    double gap_origin_piece = 0.0;
    double phi_sup_bound = 0.0; // 4nr/(1-r^2)
    double phi_lip_bound = 0.0; // Lipschitz bound of phi on the boxes
    double container_diam = 0.0;
};

CantorSeparation cantor_separation_certificate(const CantorParams& params);

/// Interval certificate over the antichain of C \ S_0(C): every cylinder box
/// keeps the component numerator q_{1+n}|q'|^2 + q_1 q_{2n+1} nonnegative
/// (strictly positive off the degenerate z = 0 digit chain, whose boxes
/// touch zero) and the last coordinate strictly positive.
struct SignCertificate {
    bool pass = false;
    std::uint64_t boxes_strict = 0;
    std::uint64_t boxes_touch_zero = 0;
    std::uint64_t boxes_straddle = 0;
    bool vertical_all_positive = false;
    double min_vertical_lo = 0.0;
    double min_numerator_lo = 0.0;
    std::uint64_t nodes = 0;
};

SignCertificate numerator_sign_certificate(const IFS& ifs, const SelfSimilarMeasure& mu,
                                           const CantorParams& params, double mass_cutoff,
                                           std::uint64_t node_budget);

struct PipelineOptions {
    int resolution = 64;
    double phi_tol = 1e-10;
    double c_Q = 0.0;      // 0 -> default 2 - Q
    double target_a = 0.0; // 0 -> auto (2n + 1)
    std::uint64_t node_budget = 1'000'000;
    int eta_terms = 3;
    int threads = 1;
};

struct StageResult {
    std::string name;
    bool pass = false;
    std::string note;
};

struct PipelineReport {
    CantorParams params;
    DimensionSolve dimension;
    double measure_exponent = 0.0;
    double c_Q = 0.0;
    CantorSeparation separation;
    PhiVerifyReport phi_verify;
    PhiField phi;
    SignCertificate sign_certificate;
    CriterionReport criterion;
    int certified_component = 0; // 0-based index of the certified component
    SignCert certified_sign = SignCert::None;
    bool criterion_certified = false;
    std::vector<StageResult> stages;
    std::uint64_t antichain_nodes = 0;
};

/// Runs, in order: parameter feasibility, similarity construction, the
/// separation certificate, the phi solve and verification, the numerator
/// sign certificate, and the unboundedness criterion for word (0) at
/// component 1+n. Stops at the first failing stage.
PipelineReport removability_pipeline(int n, int N, const PipelineOptions& opt);

} // namespace fsio
