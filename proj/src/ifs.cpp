#include "fsio/ifs.hpp"

#include <algorithm>
#include <cmath>

#include "fsio/errors.hpp"
#include "fsio/summation.hpp"

namespace fsio {

std::string word_to_string(const Word& w) {
    std::string out = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(w[i]);
    }
    return out + ")";
}

Point similarity_apply(const GroupSpace& space, const Similarity& s, const Point& p) {
    return group_mul(space, s.translation, dilate(space, s.ratio, p));
}

namespace {

// Closed-form fixed point of tau_a . delta_rho. The horizontal part solves
// x' = a' + rho x'; the symplectic form of a' with x' = a'/(1-rho) vanishes,
// so the vertical coordinate solves x_t = a_t + rho^2 x_t.
Point similarity_fixed(const GroupSpace& space, const Similarity& s) {
    const double rho = s.ratio;
    Point x(space.topological_dim(), 0.0);
    if (space.kind == GroupKind::Euclidean) {
        for (int i = 0; i < space.n; ++i) x[i] = s.translation[i] / (1.0 - rho);
        return x;
    }
    const int n = space.n;
    for (int i = 0; i < 2 * n; ++i) x[i] = s.translation[i] / (1.0 - rho);
    x[2 * n] = s.translation[2 * n] / (1.0 - rho * rho);
    return x;
}

// Upper bound for the gauge diameter of a coordinate box.
double box_gauge_diam(const GroupSpace& space, const std::vector<double>& lo,
                      const std::vector<double>& hi) {
    const int h = space.kind == GroupKind::Heisenberg ? 2 * space.n : space.n;
    double wh2 = 0.0, pmax2 = 0.0;
    for (int i = 0; i < h; ++i) {
        const double w = hi[i] - lo[i];
        wh2 += w * w;
        pmax2 += std::max(lo[i] * lo[i], hi[i] * hi[i]);
    }
    const double wh = std::sqrt(wh2);
    if (space.kind == GroupKind::Euclidean) return wh;
    const double wt = hi[2 * space.n] - lo[2 * space.n];
    const double vert = wt + 2.0 * std::sqrt(pmax2) * wh;
    return std::pow(wh2 * wh2 + vert * vert, 0.25);
}

} // namespace

IFS make_ifs(const GroupSpace& space, std::vector<Similarity> maps) {
    if (maps.size() < 2) throw input_error("an IFS needs at least two maps");
    for (const Similarity& s : maps) {
        check_point(space, s.translation, "similarity translation");
        if (!(s.ratio > 0.0 && s.ratio < 1.0))
            throw input_error("similarity ratio must lie in (0,1)");
    }
    IFS ifs;
    ifs.space = space;
    ifs.maps = std::move(maps);
    ifs.base_point = similarity_fixed(space, ifs.maps[0]);

    // Invariant set bound: with x_1 = base point and R* = max_i d(x_1, fix_i),
    // the ball B(x_1, M) with M = (1+rmax) R* / (1-rmax) maps into itself
    // under every S_i, so diam C <= 2M.
    double rmax = 0.0, rstar = 0.0;
    std::vector<Point> fixes;
    fixes.reserve(ifs.maps.size());
    for (const Similarity& s : ifs.maps) {
        rmax = std::max(rmax, s.ratio);
        fixes.push_back(similarity_fixed(space, s));
        rstar = std::max(rstar, dist(space, ifs.base_point, fixes.back()));
    }
    ifs.base_diam = 2.0 * (1.0 + rmax) * rstar / (1.0 - rmax);
    if (ifs.base_diam == 0.0) ifs.base_diam = 1e-300; // single-point attractor
    ifs.diam_bound_kind = "fixed-point-ball";

    // Smallest coordinate box invariant under the horizontal affine parts,
    // grown from the fixed points. Horizontal parts are x -> q' + r x. After
    // the iteration the box is widened until every map verifiably keeps it
    // invariant under outward-directed arithmetic, so it encloses the
    // horizontal projection of the invariant set.
    const int h = space.kind == GroupKind::Heisenberg ? 2 * space.n : space.n;
    ifs.horiz_lo.assign(h, 0.0);
    ifs.horiz_hi.assign(h, 0.0);
    for (int i = 0; i < h; ++i) {
        double lo = fixes[0][i], hi = fixes[0][i];
        for (const Point& f : fixes) {
            lo = std::min(lo, f[i]);
            hi = std::max(hi, f[i]);
        }
        for (int iter = 0; iter < 512; ++iter) {
            double nlo = lo, nhi = hi;
            for (const Similarity& s : ifs.maps) {
                nlo = std::min(nlo, s.translation[i] + s.ratio * lo);
                nhi = std::max(nhi, s.translation[i] + s.ratio * hi);
            }
            if (nlo == lo && nhi == hi) break;
            lo = nlo;
            hi = nhi;
        }
        auto contained = [&] {
            for (const Similarity& s : ifs.maps) {
                if (detail::add_down(s.translation[i], detail::mul_down(s.ratio, lo)) < lo)
                    return false;
                if (detail::add_up(s.translation[i], detail::mul_up(s.ratio, hi)) > hi)
                    return false;
            }
            return true;
        };
        for (int guard = 0; guard < 8 && !contained(); ++guard) {
            lo = detail::down(lo);
            hi = detail::up(hi);
        }
        ifs.horiz_lo[i] = lo;
        ifs.horiz_hi[i] = hi;
    }

    // Cheap automatic tightening from a shallow anchor enumeration.
    int auto_depth = 0;
    for (std::size_t count = ifs.map_count(); count <= 512; count *= ifs.map_count())
        ++auto_depth;
    if (auto_depth >= 1) tighten_base_diam(ifs, auto_depth);
    return ifs;
}

void tighten_base_diam(IFS& ifs, int depth) {
    if (depth < 1) return;
    const std::size_t count = [&] {
        double c = 1.0;
        for (int k = 0; k < depth; ++k) c *= static_cast<double>(ifs.map_count());
        return c > 1e6 ? std::size_t(0) : static_cast<std::size_t>(c);
    }();
    if (count == 0) throw input_error("tighten_base_diam: too many level cylinders");

    std::vector<Point> anchors{ifs.base_point};
    double leaf_ratio_max = 0.0;
    for (int k = 0; k < depth; ++k) {
        std::vector<Point> next;
        next.reserve(anchors.size() * ifs.map_count());
        for (const Similarity& s : ifs.maps)
            for (const Point& a : anchors) next.push_back(similarity_apply(ifs.space, s, a));
        anchors = std::move(next);
    }
    double rmax = 0.0;
    for (const Similarity& s : ifs.maps) rmax = std::max(rmax, s.ratio);
    leaf_ratio_max = std::pow(rmax, depth);

    double spread = 0.0;
    if (anchors.size() <= 512) {
        for (std::size_t i = 0; i < anchors.size(); ++i)
            for (std::size_t j = i + 1; j < anchors.size(); ++j)
                spread = std::max(spread, dist(ifs.space, anchors[i], anchors[j]));
    } else {
        std::vector<double> lo = anchors[0], hi = anchors[0];
        for (const Point& a : anchors)
            for (std::size_t i = 0; i < a.size(); ++i) {
                lo[i] = std::min(lo[i], a[i]);
                hi[i] = std::max(hi[i], a[i]);
            }
        spread = box_gauge_diam(ifs.space, lo, hi);
    }
    const double candidate = spread + 2.0 * leaf_ratio_max * ifs.base_diam;
    if (candidate < ifs.base_diam) {
        ifs.base_diam = candidate;
        ifs.diam_bound_kind = "anchor-spread(depth=" + std::to_string(depth) + ")";
    }
}

Similarity word_compose(const IFS& ifs, const Word& w) {
    Similarity acc;
    acc.translation = group_identity(ifs.space);
    acc.ratio = 1.0;
    for (std::uint32_t letter : w) {
        if (letter >= ifs.map_count()) throw input_error("word letter out of range");
        const Similarity& s = ifs.maps[letter];
        // (tau_a . delta_rho)(tau_b . delta_sigma) = tau_{a * delta_rho(b)} . delta_{rho sigma}
        acc.translation =
            group_mul(ifs.space, acc.translation, dilate(ifs.space, acc.ratio, s.translation));
        acc.ratio *= s.ratio;
    }
    return acc;
}

double similarity_dimension(const std::vector<double>& ratios) {
    if (ratios.size() < 2) throw input_error("similarity_dimension needs at least two ratios");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0)) throw input_error("similarity ratios must lie in (0,1)");
    auto moran = [&](double s) {
        NeumaierSum acc;
        for (double r : ratios) acc.add(std::pow(r, s));
        return acc.value() - 1.0;
    };
    double lo = 0.0, hi = 1.0;
    while (moran(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double f = moran(mid);
        if (std::abs(f) < 1e-15) return mid;
        (f > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Point fixed_point(const IFS& ifs, const Word& w) {
    if (w.empty()) throw input_error("fixed_point needs a nonempty word");
    const Similarity composed = word_compose(ifs, w);
    const Point x = similarity_fixed(ifs.space, composed);
    const double res = dist(ifs.space, similarity_apply(ifs.space, composed, x), x);
    if (res > 1e-12 * (1.0 + gauge_norm(ifs.space, x)))
        throw numerical_error("fixed_point residual check failed at word " + word_to_string(w));
    return x;
}

SelfSimilarMeasure make_natural_measure(const IFS& ifs, double s) {
    if (!(s > 0.0)) throw input_error("measure exponent must be positive");
    SelfSimilarMeasure mu;
    mu.s = s;
    mu.weights.reserve(ifs.map_count());
    for (const Similarity& m : ifs.maps) mu.weights.push_back(std::pow(m.ratio, s));
    return mu;
}

Cylinder root_cylinder(const IFS& ifs) {
    Cylinder c;
    c.word = {};
    c.composed.translation = group_identity(ifs.space);
    c.composed.ratio = 1.0;
    c.anchor = ifs.base_point;
    c.diam_bound = ifs.base_diam;
    c.mass = 1.0;
    return c;
}

Cylinder child_cylinder(const IFS& ifs, const SelfSimilarMeasure& mu, const Cylinder& c,
                        std::uint32_t letter) {
    if (letter >= ifs.map_count()) throw input_error("child_cylinder: letter out of range");
    Cylinder out;
    out.word = c.word;
    out.word.push_back(letter);
    const Similarity& s = ifs.maps[letter];
    out.composed.translation = group_mul(ifs.space, c.composed.translation,
                                         dilate(ifs.space, c.composed.ratio, s.translation));
    out.composed.ratio = c.composed.ratio * s.ratio;
    out.anchor = similarity_apply(ifs.space, out.composed, ifs.base_point);
    out.diam_bound = out.composed.ratio * ifs.base_diam;
    out.mass = c.mass * mu.weights[letter];
    return out;
}

namespace {

void enumerate_rec(const IFS& ifs, const SelfSimilarMeasure& mu, const Cylinder& c, int depth,
                   double mass_cutoff, std::uint64_t budget, std::uint64_t& visited,
                   std::vector<Cylinder>& out) {
    if (++visited > budget) throw budget_error("cylinder enumeration", budget);
    const bool is_leaf =
        mass_cutoff > 0.0 ? c.mass <= mass_cutoff : static_cast<int>(c.word.size()) >= depth;
    if (is_leaf) {
        out.push_back(c);
        return;
    }
    for (std::uint32_t a = 0; a < ifs.map_count(); ++a)
        enumerate_rec(ifs, mu, child_cylinder(ifs, mu, c, a), depth, mass_cutoff, budget,
                      visited, out);
}

} // namespace

std::vector<Cylinder> enumerate_cylinders(const IFS& ifs, const SelfSimilarMeasure& mu,
                                          int depth, double mass_cutoff,
                                          std::uint64_t node_budget) {
    if (mass_cutoff <= 0.0 && depth < 0) throw input_error("enumerate_cylinders: depth < 0");
    if (mass_cutoff > 0.0 && !(mass_cutoff < 1.0))
        throw input_error("enumerate_cylinders: mass cutoff must lie in (0,1)");
    std::vector<Cylinder> out;
    std::uint64_t visited = 0;
    enumerate_rec(ifs, mu, root_cylinder(ifs), depth, mass_cutoff, node_budget, visited, out);
    return out;
}

IntervalBox cylinder_box(const IFS& ifs, const Cylinder& c) {
    const GroupSpace& space = ifs.space;
    const int dim = space.topological_dim();
    const int h = space.kind == GroupKind::Heisenberg ? 2 * space.n : space.n;
    const double R = c.diam_bound;
    IntervalBox box(dim);

    // Horizontal: the affine image t' + ratio * [invariant box], intersected
    // with the gauge ball |q_i - anchor_i| <= R.
    for (int i = 0; i < h; ++i) {
        const Interval affine =
            Interval(c.composed.translation[i]) +
            Interval(c.composed.ratio) * Interval(ifs.horiz_lo[i], ifs.horiz_hi[i]);
        box[i] = intersect(affine, Interval::around(c.anchor[i], R));
        if (box[i].lo > box[i].hi) box[i] = Interval(c.anchor[i]); // numeric sliver
    }
    if (space.kind == GroupKind::Heisenberg) {
        // q = a * u with d(a, q) = ||u|| <= R gives |u'| <= R, |u_t| <= R^2 and
        // q_t = a_t + u_t - 2 sum (a_i u_{i+n} - a_{i+n} u_i); Cauchy-Schwarz
        // bounds the twist by 2 |a'| R.
        double a2 = 0.0;
        for (int i = 0; i < h; ++i) a2 += c.anchor[i] * c.anchor[i];
        const Interval twist = Interval(2.0) * interval_sqrt(Interval(a2)) * Interval(R);
        box[2 * space.n] = Interval(c.anchor[2 * space.n]) +
                           Interval::around(0.0, R * R) + Interval(-twist.hi, twist.hi);
    }
    return box;
}

namespace {

struct GapBounds {
    double lower;
    double upper;
};

GapBounds pair_gap(const IFS& ifs, const SelfSimilarMeasure& mu, const Cylinder& a,
                   const Cylinder& b, int depth, std::uint64_t budget,
                   std::uint64_t& visited) {
    if (++visited > budget) throw budget_error("separation refinement", budget);
    const double d = dist(ifs.space, a.anchor, b.anchor);
    const double lb = d - a.diam_bound - b.diam_bound;
    if (lb > 0.0 || depth <= 0) return {lb, d};
    const bool split_a = a.diam_bound >= b.diam_bound;
    const Cylinder& split = split_a ? a : b;
    const Cylinder& keep = split_a ? b : a;
    GapBounds best{std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
    for (std::uint32_t letter = 0; letter < ifs.map_count(); ++letter) {
        const Cylinder child = child_cylinder(ifs, mu, split, letter);
        const GapBounds g = split_a ? pair_gap(ifs, mu, child, keep, depth - 1, budget, visited)
                                    : pair_gap(ifs, mu, keep, child, depth - 1, budget, visited);
        best.lower = std::min(best.lower, g.lower);
        best.upper = std::min(best.upper, g.upper);
    }
    return best;
}

} // namespace

SeparationReport separation_report(const IFS& ifs, int depth, std::uint64_t node_budget) {
    if (depth < 1) throw input_error("separation_report: depth must be >= 1");
    if (node_budget == 0) node_budget = 50'000'000ull;
    const SelfSimilarMeasure mu = make_natural_measure(ifs, 1.0); // masses unused here
    const Cylinder root = root_cylinder(ifs);
    std::vector<Cylinder> level1;
    for (std::uint32_t a = 0; a < ifs.map_count(); ++a)
        level1.push_back(child_cylinder(ifs, mu, root, a));

    SeparationReport report;
    report.depth_used = depth;
    report.min_gap = std::numeric_limits<double>::infinity();
    report.contact_upper = std::numeric_limits<double>::infinity();
    std::uint64_t visited = 0;
    double max_diam = 0.0;
    for (const Cylinder& c : level1) max_diam = std::max(max_diam, c.diam_bound);
    for (std::size_t i = 0; i < level1.size(); ++i)
        for (std::size_t j = i + 1; j < level1.size(); ++j) {
            const GapBounds g =
                pair_gap(ifs, mu, level1[i], level1[j], depth - 1, node_budget, visited);
            report.min_gap = std::min(report.min_gap, g.lower);
            report.contact_upper = std::min(report.contact_upper, g.upper);
        }
    report.disjoint = report.min_gap > 0.0;
    report.alpha_lower = max_diam > 0.0 ? report.min_gap / max_diam : 0.0;
    if (!report.disjoint && report.contact_upper > 1e-12 * (1.0 + ifs.base_diam))
        throw numerical_error("inconclusive-separation: certified gap " +
                              std::to_string(report.min_gap) + " at depth " +
                              std::to_string(depth));
    return report;
}

} // namespace fsio
