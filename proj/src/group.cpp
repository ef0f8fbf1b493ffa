#include "fsio/group.hpp"

#include <cmath>

#include "fsio/errors.hpp"

namespace fsio {

GroupSpace GroupSpace::heisenberg(int n) {
    if (n < 1) throw input_error("Heisenberg index n must be >= 1");
    return GroupSpace{GroupKind::Heisenberg, n};
}

GroupSpace GroupSpace::euclidean(int d) {
    if (d < 1) throw input_error("Euclidean dimension d must be >= 1");
    return GroupSpace{GroupKind::Euclidean, d};
}

std::string GroupSpace::describe() const {
    if (kind == GroupKind::Heisenberg) return "heisenberg(n=" + std::to_string(n) + ")";
    return "euclidean(d=" + std::to_string(n) + ")";
}

bool operator==(const GroupSpace& a, const GroupSpace& b) {
    return a.kind == b.kind && a.n == b.n;
}

void check_point(const GroupSpace& space, const Point& p, const char* what) {
    if (static_cast<int>(p.size()) != space.topological_dim())
        throw input_error(std::string(what) + ": expected " +
                          std::to_string(space.topological_dim()) + " coordinates in " +
                          space.describe() + ", got " + std::to_string(p.size()));
    for (double c : p)
        if (!std::isfinite(c)) throw input_error(std::string(what) + ": non-finite coordinate");
}

Point group_identity(const GroupSpace& space) {
    return Point(space.topological_dim(), 0.0);
}

Point group_mul(const GroupSpace& space, const Point& p, const Point& q) {
    check_point(space, p, "group_mul lhs");
    check_point(space, q, "group_mul rhs");
    const int dim = space.topological_dim();
    Point out(dim);
    for (int i = 0; i < dim; ++i) out[i] = p[i] + q[i];
    if (space.kind == GroupKind::Heisenberg) {
        const int n = space.n;
        double twist = 0.0;
        for (int i = 0; i < n; ++i) twist += p[i] * q[i + n] - p[i + n] * q[i];
        out[2 * n] -= 2.0 * twist;
    }
    return out;
}

Point group_inv(const GroupSpace& space, const Point& p) {
    check_point(space, p, "group_inv");
    Point out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = -p[i];
    return out;
}

Point dilate(const GroupSpace& space, double r, const Point& p) {
    check_point(space, p, "dilate");
    if (!(r > 0.0)) throw input_error("dilate: ratio must be positive");
    Point out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = r * p[i];
    if (space.kind == GroupKind::Heisenberg) out[2 * space.n] = r * r * p[2 * space.n];
    return out;
}

double horizontal_sq(const GroupSpace& space, const Point& p) {
    const int h = space.kind == GroupKind::Heisenberg ? 2 * space.n : space.n;
    double s = 0.0;
    for (int i = 0; i < h; ++i) s += p[i] * p[i];
    return s;
}

double gauge_norm(const GroupSpace& space, const Point& p) {
    check_point(space, p, "gauge_norm");
    if (space.kind == GroupKind::Euclidean) return std::sqrt(horizontal_sq(space, p));
    const double h2 = horizontal_sq(space, p);
    const double t = p[2 * space.n];
    return std::pow(h2 * h2 + t * t, 0.25);
}

double dist(const GroupSpace& space, const Point& p, const Point& q) {
    return gauge_norm(space, group_mul(space, group_inv(space, p), q));
}

} // namespace fsio
