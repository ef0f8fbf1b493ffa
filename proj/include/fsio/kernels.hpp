#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fsio/group.hpp"
#include "fsio/interval.hpp"

namespace fsio {

enum class KernelFamily {
    HeisenbergRiesz, // components of the horizontal gradient of Gamma, s = Q-1
    CoordinateRiesz, // single coordinate kernel z_i / |z|^{s+1} on R^d
    ComplexPower,    // z^m / |z|^{m+s} on R^2 ~ C, two components (Re, Im)
    Constant,        // omega == const > 0; positive diagnostic kernel
};

/// An s-homogeneous kernel K(z) = omega(z) / ||z||^s with omega continuous
/// and invariant under dilations. The two-point form is
/// eval_kernel(x, y) = K(x^{-1} * y).
struct KernelSpec {
    GroupSpace space;
    KernelFamily family = KernelFamily::Constant;
    double s = 1.0;

    // family parameters
    double c_Q = 0.0;    // HeisenbergRiesz multiplier, default (2-Q)
    int axis = 0;        // CoordinateRiesz axis
    int m = 3;           // ComplexPower exponent
    double value = 1.0;  // Constant omega value

    int num_components() const;

    static KernelSpec heisenberg_riesz(const GroupSpace& space, double c_Q_override = 0.0);
    static KernelSpec coordinate_riesz(const GroupSpace& space, int axis, double s);
    static KernelSpec complex_power(int m, double s = 1.0);
    static KernelSpec constant(const GroupSpace& space, double s, double value = 1.0);
};

/// omega(p); degree-zero homogeneous. Throws singularity_error at the identity.
std::vector<double> eval_omega(const KernelSpec& spec, const Point& p);

/// One-variable kernel K(z) = omega(z)/||z||^s.
std::vector<double> eval_kernel_at(const KernelSpec& spec, const Point& z);

/// Two-point kernel K(x^{-1} * y). Throws singularity_error when x == y.
std::vector<double> eval_kernel(const KernelSpec& spec, const Point& x, const Point& y);

/// Enclosure of one kernel component over a coordinate box of arguments.
/// The box must exclude the identity (the gauge-norm enclosure must be
/// strictly positive), otherwise numerical_error is thrown.
Interval eval_kernel_component_interval(const KernelSpec& spec, int component,
                                        const IntervalBox& z);

/// Fundamental-solution profile Gamma(p) = C_Q ||p||^{2-Q} on a Heisenberg
/// space. Throws singularity_error at the identity.
double eval_gamma(const GroupSpace& space, double C_Q, const Point& p);

using ScalarField = std::function<double(const Point&)>;

struct FdOptions {
    double h = 1e-5;       // step in gauge-normalized coordinates
    bool normalize = true; // rescale p to unit gauge before differencing
};

/// Central finite-difference horizontal gradient (X_1..X_n, Y_1..Y_n applied
/// per the left-invariant fields); plain gradient on Euclidean spaces.
/// O(h^2) accurate. With normalize an evaluation at p is performed on the
/// delta_{1/||p||} rescaling of f and mapped back by homogeneity of the
/// fields, keeping conditioning uniform across scales.
std::vector<double> horizontal_gradient_fd(const GroupSpace& space, const ScalarField& f,
                                           const Point& p, const FdOptions& opt = {});

/// Nested finite-difference sub-Laplacian sum_i (X_i^2 + Y_i^2); plain
/// Laplacian on Euclidean spaces.
double sublaplacian_fd(const GroupSpace& space, const ScalarField& f, const Point& p,
                       const FdOptions& opt = {});

/// Empirical suprema of the standard-kernel ratios:
///   size:   |K_i(p)| * ||p||^s
///   smooth: |K_i(p^{-1}q1) - K_i(p^{-1}q2)| /
///           max(d(q1,q2)/d(p,q1)^{s+1}, d(q1,q2)/d(p,q2)^{s+1})
struct EstimateReport {
    double max_size_ratio = 0.0;
    double max_holder_ratio = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
};

/// Samples the ratios above with a deterministic generator; degenerate draws
/// (coincident points) are rejected and redrawn.
EstimateReport verify_standard_estimates(const KernelSpec& spec, int samples,
                                         std::uint64_t seed);

} // namespace fsio
