#include "fsio/kernels.hpp"

#include <cmath>

#include "fsio/errors.hpp"
#include "fsio/rng.hpp"

namespace fsio {

int KernelSpec::num_components() const {
    switch (family) {
        case KernelFamily::HeisenbergRiesz: return 2 * space.n;
        case KernelFamily::CoordinateRiesz: return 1;
        case KernelFamily::ComplexPower: return 2;
        case KernelFamily::Constant: return 1;
    }
    return 1;
}

KernelSpec KernelSpec::heisenberg_riesz(const GroupSpace& space, double c_Q_override) {
    if (space.kind != GroupKind::Heisenberg)
        throw input_error("heisenberg_riesz kernel requires a Heisenberg space");
    KernelSpec spec;
    spec.space = space;
    spec.family = KernelFamily::HeisenbergRiesz;
    spec.s = space.homogeneous_dim() - 1;
    spec.c_Q = c_Q_override != 0.0 ? c_Q_override : 2.0 - space.homogeneous_dim();
    return spec;
}

KernelSpec KernelSpec::coordinate_riesz(const GroupSpace& space, int axis, double s) {
    if (space.kind != GroupKind::Euclidean)
        throw input_error("coordinate_riesz kernel requires a Euclidean space");
    if (axis < 0 || axis >= space.n) throw input_error("coordinate_riesz: axis out of range");
    if (!(s > 0.0)) throw input_error("coordinate_riesz: s must be positive");
    KernelSpec spec;
    spec.space = space;
    spec.family = KernelFamily::CoordinateRiesz;
    spec.axis = axis;
    spec.s = s;
    return spec;
}

KernelSpec KernelSpec::complex_power(int m, double s) {
    if (m < 1) throw input_error("complex_power: m must be >= 1");
    if (!(s > 0.0)) throw input_error("complex_power: s must be positive");
    KernelSpec spec;
    spec.space = GroupSpace::euclidean(2);
    spec.family = KernelFamily::ComplexPower;
    spec.m = m;
    spec.s = s;
    return spec;
}

KernelSpec KernelSpec::constant(const GroupSpace& space, double s, double value) {
    if (!(s > 0.0)) throw input_error("constant kernel: s must be positive");
    KernelSpec spec;
    spec.space = space;
    spec.family = KernelFamily::Constant;
    spec.s = s;
    spec.value = value;
    return spec;
}

std::vector<double> eval_omega(const KernelSpec& spec, const Point& p) {
    check_point(spec.space, p, "eval_omega");
    const double norm = gauge_norm(spec.space, p);
    if (spec.family != KernelFamily::Constant && norm == 0.0)
        throw singularity_error("eval_omega at the identity");
    switch (spec.family) {
        case KernelFamily::HeisenbergRiesz: {
            const int n = spec.space.n;
            const double h2 = horizontal_sq(spec.space, p);
            const double t = p[2 * n];
            const double scale = spec.c_Q / (norm * norm * norm);
            std::vector<double> w(2 * n);
            for (int i = 0; i < n; ++i) {
                w[i] = scale * (p[i] * h2 + p[i + n] * t);
                w[i + n] = scale * (p[i + n] * h2 - p[i] * t);
            }
            return w;
        }
        case KernelFamily::CoordinateRiesz:
            return {p[spec.axis] / norm};
        case KernelFamily::ComplexPower: {
            // (z/|z|)^m
            double re = p[0] / norm, im = p[1] / norm;
            double ar = re, ai = im;
            for (int k = 1; k < spec.m; ++k) {
                const double nr = ar * re - ai * im;
                ai = ar * im + ai * re;
                ar = nr;
            }
            return {ar, ai};
        }
        case KernelFamily::Constant:
            return {spec.value};
    }
    return {};
}

std::vector<double> eval_kernel_at(const KernelSpec& spec, const Point& z) {
    const double norm = gauge_norm(spec.space, z);
    if (norm == 0.0) throw singularity_error("kernel evaluated at the identity");
    std::vector<double> w = eval_omega(spec, z);
    const double scale = std::pow(norm, -spec.s);
    for (double& c : w) c *= scale;
    return w;
}

std::vector<double> eval_kernel(const KernelSpec& spec, const Point& x, const Point& y) {
    return eval_kernel_at(spec, group_mul(spec.space, group_inv(spec.space, x), y));
}

namespace {

Interval box_horizontal_sq(const GroupSpace& space, const IntervalBox& z) {
    const int h = space.kind == GroupKind::Heisenberg ? 2 * space.n : space.n;
    Interval out(0.0);
    for (int i = 0; i < h; ++i) out += sqr(z[i]);
    return out;
}

// ||z||^4 for Heisenberg, |z|^2 for Euclidean: the even power of the gauge
// that is a polynomial in the coordinates.
Interval box_gauge_even(const GroupSpace& space, const IntervalBox& z) {
    Interval h2 = box_horizontal_sq(space, z);
    if (space.kind == GroupKind::Euclidean) return h2;
    return sqr(h2) + sqr(z[2 * space.n]);
}

} // namespace

Interval eval_kernel_component_interval(const KernelSpec& spec, int component,
                                        const IntervalBox& z) {
    if (static_cast<int>(z.size()) != spec.space.topological_dim())
        throw input_error("kernel interval: box dimension mismatch");
    if (component < 0 || component >= spec.num_components())
        throw input_error("kernel interval: component out of range");
    const Interval g = box_gauge_even(spec.space, z);
    if (!(g.lo > 0.0))
        throw numerical_error("kernel interval: box touches the kernel singularity");

    switch (spec.family) {
        case KernelFamily::HeisenbergRiesz: {
            // K_i = c_Q (p_i|p'|^2 + p_{i+n} t) / ||p||^{Q+2}
            // K_{i+n} = c_Q (p_{i+n}|p'|^2 - p_i t) / ||p||^{Q+2},  g = ||p||^4
            const int n = spec.space.n;
            const Interval h2 = box_horizontal_sq(spec.space, z);
            const Interval t = z[2 * n];
            Interval num = component < n ? z[component] * h2 + z[component + n] * t
                                         : z[component] * h2 - z[component - n] * t;
            const Interval den = pow_pos(g, (spec.space.homogeneous_dim() + 2) / 4.0);
            return Interval(spec.c_Q) * num / den;
        }
        case KernelFamily::CoordinateRiesz:
            // z_i / |z|^{s+1}, g = |z|^2
            return z[spec.axis] / pow_pos(g, (spec.s + 1.0) / 2.0);
        case KernelFamily::ComplexPower: {
            // Re/Im of z^m over |z|^{m+s}, g = |z|^2
            Interval ar = z[0], ai = z[1];
            for (int k = 1; k < spec.m; ++k) {
                const Interval nr = ar * z[0] - ai * z[1];
                ai = ar * z[1] + ai * z[0];
                ar = nr;
            }
            const Interval den = pow_pos(g, (spec.m + spec.s) / 2.0);
            return (component == 0 ? ar : ai) / den;
        }
        case KernelFamily::Constant: {
            const double e = spec.space.kind == GroupKind::Heisenberg ? spec.s / 4.0
                                                                      : spec.s / 2.0;
            return Interval(spec.value) / pow_pos(g, e);
        }
    }
    return Interval(0.0);
}

double eval_gamma(const GroupSpace& space, double C_Q, const Point& p) {
    if (space.kind != GroupKind::Heisenberg)
        throw input_error("eval_gamma requires a Heisenberg space");
    const double norm = gauge_norm(space, p);
    if (norm == 0.0) throw singularity_error("Gamma evaluated at the identity");
    return C_Q * std::pow(norm, 2.0 - space.homogeneous_dim());
}

namespace {

// Coordinate partial derivative by central difference.
double partial_fd(const ScalarField& f, const Point& p, int axis, double h) {
    Point a = p, b = p;
    a[axis] += h;
    b[axis] -= h;
    return (f(a) - f(b)) / (2.0 * h);
}

std::vector<double> gradient_fd_raw(const GroupSpace& space, const ScalarField& f,
                                    const Point& p, double h) {
    if (space.kind == GroupKind::Euclidean) {
        std::vector<double> g(space.n);
        for (int i = 0; i < space.n; ++i) g[i] = partial_fd(f, p, i, h);
        return g;
    }
    // X_i = d_i + 2 x_{i+n} d_t,  Y_i = d_{i+n} - 2 x_i d_t
    const int n = space.n;
    const double dt = partial_fd(f, p, 2 * n, h);
    std::vector<double> g(2 * n);
    for (int i = 0; i < n; ++i) {
        g[i] = partial_fd(f, p, i, h) + 2.0 * p[i + n] * dt;
        g[i + n] = partial_fd(f, p, i + n, h) - 2.0 * p[i] * dt;
    }
    return g;
}

double horizontal_field_fd(const GroupSpace& space, const ScalarField& f, const Point& p,
                           int field, double h) {
    // field in [0, n) is X_{field+1}; field in [n, 2n) is Y_{field-n+1}.
    const int n = space.n;
    const double dt = partial_fd(f, p, 2 * n, h);
    if (field < n) return partial_fd(f, p, field, h) + 2.0 * p[field + n] * dt;
    return partial_fd(f, p, field, h) - 2.0 * p[field - n] * dt;
}

} // namespace

std::vector<double> horizontal_gradient_fd(const GroupSpace& space, const ScalarField& f,
                                           const Point& p, const FdOptions& opt) {
    check_point(space, p, "horizontal_gradient_fd");
    const double rho = gauge_norm(space, p);
    if (!opt.normalize || rho == 0.0) return gradient_fd_raw(space, f, p, opt.h);
    // The horizontal fields scale by 1/rho under conjugation with delta_rho.
    const Point q = dilate(space, 1.0 / rho, p);
    ScalarField fs = [&](const Point& v) { return f(dilate(space, rho, v)); };
    std::vector<double> g = gradient_fd_raw(space, fs, q, opt.h);
    for (double& c : g) c /= rho;
    return g;
}

double sublaplacian_fd(const GroupSpace& space, const ScalarField& f, const Point& p,
                       const FdOptions& opt) {
    check_point(space, p, "sublaplacian_fd");
    const double rho = gauge_norm(space, p);
    const bool rescale = opt.normalize && rho > 0.0;
    const Point at = rescale ? dilate(space, 1.0 / rho, p) : p;
    ScalarField g = rescale ? ScalarField([&](const Point& v) { return f(dilate(space, rho, v)); })
                            : f;
    double sum = 0.0;
    if (space.kind == GroupKind::Euclidean) {
        for (int i = 0; i < space.n; ++i) {
            ScalarField di = [&, i](const Point& v) { return partial_fd(g, v, i, opt.h); };
            sum += partial_fd(di, at, i, opt.h);
        }
    } else {
        for (int field = 0; field < 2 * space.n; ++field) {
            ScalarField vf = [&, field](const Point& v) {
                return horizontal_field_fd(space, g, v, field, opt.h);
            };
            sum += horizontal_field_fd(space, vf, at, field, opt.h);
        }
    }
    return rescale ? sum / (rho * rho) : sum;
}

namespace {

Point random_point(const GroupSpace& space, Rng& rng, double lo, double hi) {
    Point p(space.topological_dim());
    for (double& c : p) c = rng.uniform(lo, hi);
    return p;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

} // namespace

EstimateReport verify_standard_estimates(const KernelSpec& spec, int samples,
                                         std::uint64_t seed) {
    if (samples < 1) throw input_error("verify_standard_estimates: samples must be >= 1");
    Rng rng(seed);
    EstimateReport report;
    report.samples = samples;
    report.seed = seed;
    const GroupSpace& space = spec.space;
    for (int k = 0; k < samples; ++k) {
        // size ratio
        Point p = random_point(space, rng, -2.0, 2.0);
        while (gauge_norm(space, p) < 1e-3) p = random_point(space, rng, -2.0, 2.0);
        const double norm = gauge_norm(space, p);
        report.max_size_ratio = std::max(
            report.max_size_ratio, max_abs(eval_kernel_at(spec, p)) * std::pow(norm, spec.s));

        // smoothness ratio at a perturbation scale drawn across four decades
        Point base = random_point(space, rng, -2.0, 2.0);
        Point q1 = random_point(space, rng, -2.0, 2.0);
        double d1 = dist(space, base, q1);
        while (d1 < 1e-2) {
            q1 = random_point(space, rng, -2.0, 2.0);
            d1 = dist(space, base, q1);
        }
        const double scale = d1 * std::pow(10.0, rng.uniform(-4.0, -0.5));
        Point step = random_point(space, rng, -1.0, 1.0);
        const double sn = gauge_norm(space, step);
        if (sn == 0.0) continue;
        Point q2 = group_mul(space, q1, dilate(space, scale / sn, step));
        const double d12 = dist(space, q1, q2);
        const double d2 = dist(space, base, q2);
        if (d12 < 1e-12 || d2 < 1e-12) continue;
        const std::vector<double> k1 = eval_kernel(spec, base, q1);
        const std::vector<double> k2 = eval_kernel(spec, base, q2);
        double dk = 0.0;
        for (std::size_t i = 0; i < k1.size(); ++i) dk = std::max(dk, std::abs(k1[i] - k2[i]));
        const double denom =
            std::max(d12 / std::pow(d1, spec.s + 1.0), d12 / std::pow(d2, spec.s + 1.0));
        if (denom > 0.0) report.max_holder_ratio = std::max(report.max_holder_ratio, dk / denom);
    }
    return report;
}

} // namespace fsio
