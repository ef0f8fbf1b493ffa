#pragma once

#include <string>
#include <vector>

namespace fsio {

/// A group element, stored as flat coordinates: (p_1,...,p_2n,p_{2n+1}) for
/// the Heisenberg group H^n, or (p_1,...,p_d) for Euclidean R^d.
using Point = std::vector<double>;

enum class GroupKind { Heisenberg, Euclidean };

/// Ambient metric group with dilations. Heisenberg H^n carries the twisted
/// product and the Koranyi gauge; Euclidean R^d is vector addition with the
/// usual norm. Left translations are isometries of dist() in both cases and
/// dilations scale it exactly.
struct GroupSpace {
    GroupKind kind = GroupKind::Euclidean;
    int n = 1; // H^n index, or the Euclidean dimension d

    /// Number of stored coordinates: 2n+1 for Heisenberg, d for Euclidean.
    int topological_dim() const { return kind == GroupKind::Heisenberg ? 2 * n + 1 : n; }

    /// Homogeneous dimension Q: 2n+2 for Heisenberg, d for Euclidean.
    int homogeneous_dim() const { return kind == GroupKind::Heisenberg ? 2 * n + 2 : n; }

    std::string describe() const;

    static GroupSpace heisenberg(int n);
    static GroupSpace euclidean(int d);
};

bool operator==(const GroupSpace& a, const GroupSpace& b);

/// Identity element.
Point group_identity(const GroupSpace& space);

/// Group product p * q. Heisenberg: coordinates add except the last, which
/// picks up the symplectic correction -2 sum_i (p_i q_{i+n} - p_{i+n} q_i).
Point group_mul(const GroupSpace& space, const Point& p, const Point& q);

/// Group inverse; componentwise negation in both supported groups.
Point group_inv(const GroupSpace& space, const Point& p);

/// Dilation delta_r: horizontal coordinates scale by r, the Heisenberg
/// vertical coordinate by r^2. Requires r > 0.
Point dilate(const GroupSpace& space, double r, const Point& p);

/// Gauge norm. Heisenberg: (|p'|^4 + p_{2n+1}^2)^{1/4}; Euclidean: |p|.
double gauge_norm(const GroupSpace& space, const Point& p);

/// Left-invariant metric d(p,q) = ||p^{-1} * q||.
double dist(const GroupSpace& space, const Point& p, const Point& q);

/// Squared Euclidean norm of the horizontal part (all coordinates for
/// Euclidean spaces).
double horizontal_sq(const GroupSpace& space, const Point& p);

/// Throws input_error unless p has the space's coordinate count and all
/// coordinates are finite.
void check_point(const GroupSpace& space, const Point& p, const char* what);

} // namespace fsio
