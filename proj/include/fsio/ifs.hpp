#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsio/group.hpp"
#include "fsio/interval.hpp"

namespace fsio {

/// One contracting similarity S = tau_q . delta_r with ratio r in (0,1).
struct Similarity {
    Point translation;
    double ratio = 0.5;
};

/// Finite word over the map alphabet {0..N-1}. The empty word is the root.
using Word = std::vector<std::uint32_t>;

std::string word_to_string(const Word& w);

/// An iterated function system of similarities together with the certified
/// geometry used by cylinder enclosures:
///   base_point  — anchor for cylinder geometry (fixed point of maps[0]);
///   base_diam   — upper bound for diam of the invariant set;
///   horiz_lo/hi — a box invariant under the horizontal affine parts, hence
///                 containing the horizontal projection of the invariant set.
struct IFS {
    GroupSpace space;
    std::vector<Similarity> maps;
    Point base_point;
    double base_diam = 0.0;
    std::vector<double> horiz_lo, horiz_hi;
    std::string diam_bound_kind; // which diameter bound base_diam carries

    std::size_t map_count() const { return maps.size(); }
};

/// Validates maps and computes base point, diameter bound and invariant
/// horizontal box. Requires at least two maps.
IFS make_ifs(const GroupSpace& space, std::vector<Similarity> maps);

/// Replace base_diam by a bound computed from the level-`depth` anchors
/// (never loosens). Cost grows like map_count^depth.
void tighten_base_diam(IFS& ifs, int depth);

/// tau_q(delta_r(p)).
Point similarity_apply(const GroupSpace& space, const Similarity& s, const Point& p);

/// Composition S_{w_1} . ... . S_{w_k} collapsed to a single similarity.
/// The empty word yields the identity sentinel (ratio 1, zero translation).
Similarity word_compose(const IFS& ifs, const Word& w);

/// Unique s > 0 with sum r_i^s = 1, solved to |sum - 1| < 1e-14.
double similarity_dimension(const std::vector<double>& ratios);

/// Unique x with S_w(x) = x, in closed form (the horizontal part solves a
/// linear equation; the symplectic correction vanishes there). The residual
/// d(S_w(x), x) is checked against 1e-12 * (1 + ||x||).
Point fixed_point(const IFS& ifs, const Word& w);

/// Cylinder C_w with its one-node quadrature geometry. The composed map is
/// carried so that children extend it with a single group operation; anchors
/// are therefore bit-identical to word_compose(word) applied to base_point.
struct Cylinder {
    Word word;
    Similarity composed;     // S_w collapsed; composed.ratio is the mass scale
    Point anchor;            // S_w(base_point)
    double diam_bound = 0.0; // composed.ratio * base_diam
    double mass = 1.0;       // product of measure weights along word

    double ratio() const { return composed.ratio; }
};

/// Natural self-similar measure with weights r_i^s; for the similarity
/// dimension the weights sum to one and the measure is a probability.
struct SelfSimilarMeasure {
    double s = 1.0;
    std::vector<double> weights;
};

SelfSimilarMeasure make_natural_measure(const IFS& ifs, double s);

/// Measure exponent resolved from config: the similarity dimension when
/// `auto`, otherwise the given value.
Cylinder root_cylinder(const IFS& ifs);

/// Child cylinder under map index `letter`.
Cylinder child_cylinder(const IFS& ifs, const SelfSimilarMeasure& mu, const Cylinder& c,
                        std::uint32_t letter);

/// All cylinders at exact depth (lexicographic), or the minimal antichain of
/// mass <= cutoff when cutoff > 0. Throws budget_error past `node_budget`.
std::vector<Cylinder> enumerate_cylinders(const IFS& ifs, const SelfSimilarMeasure& mu,
                                          int depth, double mass_cutoff,
                                          std::uint64_t node_budget);

/// Coordinate enclosure of C_w: the exact affine image of the invariant
/// horizontal box intersected with the gauge-ball box around the anchor.
/// For Heisenberg spaces the vertical interval is
///   anchor_t + [-R^2, R^2] + 2 sigma(anchor', u'),  |u'| <= R,
/// the symplectic term enclosed by Cauchy-Schwarz.
IntervalBox cylinder_box(const IFS& ifs, const Cylinder& c);

/// First-level separation diagnostics. min_gap is a certified lower bound on
/// min over pairs of dist(C_u, C_v) obtained from depth-refined anchor/ball
/// covers; disjoint requires min_gap > 0. When the covers cannot decide and a
/// witness of contact exists the report returns disjoint = false; otherwise
/// an inconclusive report throws numerical_error("inconclusive-separation").
struct SeparationReport {
    double min_gap = 0.0;     // certified lower bound
    double contact_upper = 0.0; // smallest anchor distance seen (upper bound on the gap)
    double alpha_lower = 0.0; // min_gap / max first-level diam bound
    bool disjoint = false;
    int depth_used = 0;
    std::string method = "anchor-ball";
};

SeparationReport separation_report(const IFS& ifs, int depth,
                                   std::uint64_t node_budget = 0);

} // namespace fsio
