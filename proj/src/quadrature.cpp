#include "fsio/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>

#include "fsio/errors.hpp"
#include "fsio/rng.hpp"
#include "fsio/summation.hpp"

namespace fsio {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Region Region::complement_of(Word w) {
    if (w.empty()) throw input_error("complement_of needs a nonempty word");
    Region r;
    r.type = Type::ComplementOf;
    r.w = std::move(w);
    return r;
}

Region Region::annulus(Word w, int k) {
    if (w.empty()) throw input_error("annulus needs a nonempty word");
    if (k < 0) throw input_error("annulus generation k must be >= 0");
    Region r;
    r.type = Type::Annulus;
    r.w = std::move(w);
    r.k = k;
    return r;
}

const char* to_string(SignCert s) {
    switch (s) {
        case SignCert::None: return "none";
        case SignCert::Positive: return "positive";
        case SignCert::Negative: return "negative";
    }
    return "none";
}

const char* to_string(CertMode m) {
    return m == CertMode::Interval ? "interval" : "heuristic";
}

std::uint64_t resolve_node_budget(std::uint64_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FRACTAL_SIO_NODE_BUDGET")) {
        const double v = std::atof(env);
        if (v >= 1.0) return static_cast<std::uint64_t>(v);
    }
    return 50'000'000ull;
}

double IntegralEstimate::norm() const {
    double s = 0.0;
    for (double v : value) s += v * v;
    return std::sqrt(s);
}

bool CriterionReport::any_certified() const {
    for (const ComponentVerdict& c : components)
        if (c.nonzero_certified) return true;
    return false;
}

namespace {

Cylinder cylinder_for_word(const IFS& ifs, const SelfSimilarMeasure& mu, const Word& w) {
    Cylinder c = root_cylinder(ifs);
    for (std::uint32_t letter : w) c = child_cylinder(ifs, mu, c, letter);
    return c;
}

// C \ C_w = disjoint union over j of the off-branch siblings at level j.
std::vector<Word> complement_words(const IFS& ifs, const Word& w) {
    std::vector<Word> out;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] >= ifs.map_count()) throw input_error("region word letter out of range");
        Word prefix(w.begin(), w.begin() + j);
        for (std::uint32_t a = 0; a < ifs.map_count(); ++a) {
            if (a == w[j]) continue;
            Word piece = prefix;
            piece.push_back(a);
            out.push_back(std::move(piece));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cylinder> region_pieces(const IFS& ifs, const SelfSimilarMeasure& mu,
                                    const Region& region) {
    std::vector<Cylinder> pieces;
    switch (region.type) {
        case Region::Type::Whole:
            pieces.push_back(root_cylinder(ifs));
            break;
        case Region::Type::ComplementOf:
            for (const Word& w : complement_words(ifs, region.w))
                pieces.push_back(cylinder_for_word(ifs, mu, w));
            break;
        case Region::Type::Annulus: {
            Word prefix;
            for (int rep = 0; rep < region.k; ++rep)
                prefix.insert(prefix.end(), region.w.begin(), region.w.end());
            for (const Word& w : complement_words(ifs, region.w)) {
                Word full = prefix;
                full.insert(full.end(), w.begin(), w.end());
                pieces.push_back(cylinder_for_word(ifs, mu, full));
            }
            break;
        }
    }
    return pieces;
}

struct Accumulator {
    std::vector<NeumaierSum> value;
    std::vector<NeumaierSum> err;
    std::vector<Interval> isum;
    std::vector<BoxTally> tally;
    bool err_infinite = false;
    bool interval_valid = true;
    double min_gap = kInf;
    std::uint64_t leaves = 0;
    int max_rel_depth = 0;

    explicit Accumulator(int components)
        : value(components), err(components), isum(components, Interval(0.0)),
          tally(components) {}

    void merge(const Accumulator& other) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            value[i].add(other.value[i].value());
            err[i].add(other.err[i].value());
            isum[i] += other.isum[i];
            tally[i].positive += other.tally[i].positive;
            tally[i].negative += other.tally[i].negative;
            tally[i].touch_zero += other.tally[i].touch_zero;
            tally[i].straddle += other.tally[i].straddle;
        }
        err_infinite = err_infinite || other.err_infinite;
        interval_valid = interval_valid && other.interval_valid;
        min_gap = std::min(min_gap, other.min_gap);
        leaves += other.leaves;
        max_rel_depth = std::max(max_rel_depth, other.max_rel_depth);
    }
};

struct LeafContext {
    const IFS& ifs;
    const SelfSimilarMeasure& mu;
    const KernelSpec& spec;
    const Point& x;
    const QuadratureOptions& opt;
    double a_emp; // calibrated smoothness constant * safety factor
};

// Enclosure of q^{-1} x for q ranging over the cylinder coordinate box.
IntervalBox left_quotient_box(const GroupSpace& space, const IntervalBox& q, const Point& x) {
    const int dim = space.topological_dim();
    IntervalBox u(dim);
    for (int i = 0; i < dim; ++i) u[i] = Interval(x[i]) - q[i];
    if (space.kind == GroupKind::Heisenberg) {
        const int n = space.n;
        Interval twist(0.0);
        for (int i = 0; i < n; ++i)
            twist += q[i] * Interval(x[i + n]) - q[i + n] * Interval(x[i]);
        u[2 * n] = Interval(x[2 * n]) - q[2 * n] + Interval(2.0) * twist;
    }
    return u;
}

Interval box_gauge_even_local(const GroupSpace& space, const IntervalBox& z) {
    const int h = space.kind == GroupKind::Heisenberg ? 2 * space.n : space.n;
    Interval h2(0.0);
    for (int i = 0; i < h; ++i) h2 += sqr(z[i]);
    if (space.kind == GroupKind::Euclidean) return h2;
    return sqr(h2) + sqr(z[2 * space.n]);
}

void visit_leaf(const LeafContext& ctx, const Cylinder& leaf, int rel_depth, Accumulator& acc) {
    const GroupSpace& space = ctx.ifs.space;
    const Point z = group_mul(space, group_inv(space, leaf.anchor), ctx.x);
    const double d = gauge_norm(space, z);
    if (d == 0.0)
        throw singularity_error("quadrature node coincides with the evaluation point at word " +
                                word_to_string(leaf.word));
    const double w = leaf.mass * ctx.opt.measure_scale;
    const std::vector<double> k = eval_kernel_at(ctx.spec, z);
    const double gap = d - leaf.diam_bound;
    acc.min_gap = std::min(acc.min_gap, gap);
    acc.leaves++;
    acc.max_rel_depth = std::max(acc.max_rel_depth, rel_depth);

    double err_term = 0.0;
    if (gap > 0.0)
        err_term = ctx.a_emp * leaf.diam_bound * w / std::pow(gap, ctx.spec.s + 1.0);
    else
        acc.err_infinite = true;
    for (std::size_t i = 0; i < k.size(); ++i) {
        acc.value[i].add(k[i] * w);
        acc.err[i].add(err_term);
    }

    if (ctx.opt.mode != CertMode::Interval) return;
    const IntervalBox qbox = cylinder_box(ctx.ifs, leaf);
    const IntervalBox ubox = left_quotient_box(space, qbox, ctx.x);
    if (!(box_gauge_even_local(space, ubox).lo > 0.0)) {
        // enclosure touches the kernel singularity; nothing certifiable here
        acc.interval_valid = false;
        for (auto& t : acc.tally) t.straddle++;
        return;
    }
    for (std::size_t i = 0; i < k.size(); ++i) {
        const Interval ki = eval_kernel_component_interval(ctx.spec, static_cast<int>(i), ubox);
        acc.isum[i] += ki * Interval(w);
        BoxTally& t = acc.tally[i];
        if (ki.strictly_positive())
            t.positive++;
        else if (ki.strictly_negative())
            t.negative++;
        else if (ki.lo == 0.0 || ki.hi == 0.0)
            t.touch_zero++;
        else
            t.straddle++;
    }
}

bool is_quadrature_leaf(const QuadratureOptions& opt, const Cylinder& c, int rel_depth) {
    if (opt.mass_cutoff > 0.0) return c.mass <= opt.mass_cutoff;
    return rel_depth >= opt.depth;
}

void refine_rec(const LeafContext& ctx, const Cylinder& c, int rel_depth, std::uint64_t budget,
                std::uint64_t& visited, Accumulator& acc) {
    if (++visited > budget) throw budget_error("quadrature refinement", budget);
    if (is_quadrature_leaf(ctx.opt, c, rel_depth)) {
        visit_leaf(ctx, c, rel_depth, acc);
        return;
    }
    for (std::uint32_t a = 0; a < ctx.ifs.map_count(); ++a)
        refine_rec(ctx, child_cylinder(ctx.ifs, ctx.mu, c, a), rel_depth + 1, budget, visited,
                   acc);
}

void collect_leaves_rec(const LeafContext& ctx, const Cylinder& c, int rel_depth,
                        std::uint64_t budget, std::uint64_t& visited,
                        std::vector<std::pair<Cylinder, int>>& out) {
    if (++visited > budget) throw budget_error("quadrature refinement", budget);
    if (is_quadrature_leaf(ctx.opt, c, rel_depth)) {
        out.emplace_back(c, rel_depth);
        return;
    }
    for (std::uint32_t a = 0; a < ctx.ifs.map_count(); ++a)
        collect_leaves_rec(ctx, child_cylinder(ctx.ifs, ctx.mu, c, a), rel_depth + 1, budget,
                           visited, out);
}

double calibrate_smoothness(const KernelSpec& spec, const QuadratureOptions& opt) {
    const EstimateReport rep =
        verify_standard_estimates(spec, opt.calibration_samples, opt.calibration_seed);
    return opt.safety_factor * rep.max_holder_ratio;
}

SignCert certify_component(const QuadratureOptions& opt, double value, double err,
                           bool err_infinite, const Interval& isum, const BoxTally& tally,
                           bool interval_valid) {
    if (opt.mode == CertMode::Heuristic) {
        if (!err_infinite && std::abs(value) > err)
            return value > 0.0 ? SignCert::Positive : SignCert::Negative;
        return SignCert::None;
    }
    if (!interval_valid) return SignCert::None;
    if (isum.strictly_positive()) return SignCert::Positive;
    if (isum.strictly_negative()) return SignCert::Negative;
    // Uniform weak sign with at least one strict leaf also pins the integral
    // off zero even when the summed enclosure touches it.
    if (tally.straddle == 0 && tally.negative == 0 && tally.positive > 0)
        return SignCert::Positive;
    if (tally.straddle == 0 && tally.positive == 0 && tally.negative > 0)
        return SignCert::Negative;
    return SignCert::None;
}

IntegralEstimate finish_estimate(const QuadratureOptions& opt, const Accumulator& acc,
                                 double a_emp) {
    IntegralEstimate est;
    const std::size_t m = acc.value.size();
    est.value.resize(m);
    est.error_indicator.resize(m);
    est.interval_sum.resize(m);
    est.certified_sign.resize(m);
    est.box_tally = acc.tally;
    for (std::size_t i = 0; i < m; ++i) {
        est.value[i] = acc.value[i].value();
        est.error_indicator[i] = acc.err_infinite ? kInf : acc.err[i].value();
        est.interval_sum[i] = acc.isum[i];
        est.certified_sign[i] =
            certify_component(opt, est.value[i], est.error_indicator[i], acc.err_infinite,
                              acc.isum[i], acc.tally[i], acc.interval_valid);
    }
    est.depth_used = acc.max_rel_depth;
    est.nodes = acc.leaves;
    est.min_leaf_gap = acc.min_gap;
    est.calibration_constant = a_emp;
    est.mode = opt.mode;
    return est;
}

IntegralEstimate integrate_pieces(const IFS& ifs, const SelfSimilarMeasure& mu,
                                  const KernelSpec& spec, const Point& x,
                                  const std::vector<Cylinder>& pieces,
                                  const QuadratureOptions& opt) {
    if (!(spec.space == ifs.space))
        throw input_error("kernel and IFS live in different spaces");
    check_point(ifs.space, x, "integrate evaluation point");
    if (!(opt.measure_scale > 0.0)) throw input_error("measure_scale must be positive");
    const std::uint64_t budget = resolve_node_budget(opt.node_budget);
    const double a_emp = calibrate_smoothness(spec, opt);
    LeafContext ctx{ifs, mu, spec, x, opt, a_emp};
    const int comps = spec.num_components();
    Accumulator acc(comps);
    std::uint64_t visited = 0;

    if (opt.threads <= 1) {
        for (const Cylinder& piece : pieces) refine_rec(ctx, piece, 0, budget, visited, acc);
        return finish_estimate(opt, acc, a_emp);
    }

    std::vector<std::pair<Cylinder, int>> leaves;
    for (const Cylinder& piece : pieces)
        collect_leaves_rec(ctx, piece, 0, budget, visited, leaves);
    const int threads = std::min<int>(opt.threads, 64);
    const std::size_t chunk = (leaves.size() + threads - 1) / std::max(1, threads);
    std::vector<std::future<Accumulator>> futures;
    for (std::size_t begin = 0; begin < leaves.size(); begin += chunk) {
        const std::size_t end = std::min(leaves.size(), begin + chunk);
        futures.push_back(std::async(std::launch::async, [&, begin, end] {
            Accumulator local(comps);
            for (std::size_t i = begin; i < end; ++i)
                visit_leaf(ctx, leaves[i].first, leaves[i].second, local);
            return local;
        }));
    }
    for (auto& f : futures) acc.merge(f.get());
    return finish_estimate(opt, acc, a_emp);
}

} // namespace

IntegralEstimate integrate_region(const IFS& ifs, const SelfSimilarMeasure& mu,
                                  const KernelSpec& spec, const Point& x,
                                  const Region& region, const QuadratureOptions& opt) {
    return integrate_pieces(ifs, mu, spec, x, region_pieces(ifs, mu, region), opt);
}

std::vector<std::vector<double>> telescope_eta(const IFS& ifs, const SelfSimilarMeasure& mu,
                                               const KernelSpec& spec, const Word& w,
                                               int k_max, const QuadratureOptions& opt) {
    if (k_max < 0) throw input_error("telescope_eta: k_max must be >= 0");
    const Point x = fixed_point(ifs, w);
    std::vector<std::vector<double>> etas;
    etas.reserve(k_max + 1);
    for (int k = 0; k <= k_max; ++k)
        etas.push_back(integrate_region(ifs, mu, spec, x, Region::annulus(w, k), opt).value);
    return etas;
}

std::vector<CriterionReport> check_unboundedness(const IFS& ifs, const SelfSimilarMeasure& mu,
                                                 const KernelSpec& spec,
                                                 const std::vector<Word>& words,
                                                 const SeparationReport& separation,
                                                 const QuadratureOptions& opt, int eta_terms) {
    if (!separation.disjoint)
        throw input_error(
            "check_unboundedness requires a certified separated IFS (separation report is "
            "not disjoint)");
    std::vector<CriterionReport> reports;
    for (const Word& w : words) {
        CriterionReport rep;
        rep.word = w;
        rep.fixed_pt = fixed_point(ifs, w);
        rep.estimate = integrate_region(ifs, mu, spec, rep.fixed_pt, Region::complement_of(w), opt);
        for (std::size_t i = 0; i < rep.estimate.value.size(); ++i) {
            ComponentVerdict v;
            v.value = rep.estimate.value[i];
            v.error_indicator = rep.estimate.error_indicator[i];
            v.interval_sum = rep.estimate.interval_sum[i];
            v.sign = rep.estimate.certified_sign[i];
            v.nonzero_certified = v.sign != SignCert::None;
            rep.components.push_back(v);
        }
        if (eta_terms > 0) rep.eta_sequence = telescope_eta(ifs, mu, spec, w, eta_terms - 1, opt);
        reports.push_back(std::move(rep));
    }
    return reports;
}

namespace {

enum class BallClass { Outside, Inside, Straddle };

BallClass classify_ball(const GroupSpace& space, const Cylinder& c, const Point& p,
                        double eps) {
    const double d = dist(space, c.anchor, p);
    if (d - c.diam_bound >= eps) return BallClass::Outside;
    if (d + c.diam_bound <= eps) return BallClass::Inside;
    return BallClass::Straddle;
}

} // namespace

IntegralEstimate truncated_operator(const IFS& ifs, const SelfSimilarMeasure& mu,
                                    const KernelSpec& spec, const Point& p, double eps,
                                    const QuadratureOptions& opt) {
    if (!(eps > 0.0)) throw input_error("truncated_operator: eps must be positive");
    check_point(ifs.space, p, "truncated_operator point");
    const std::uint64_t budget = resolve_node_budget(opt.node_budget);
    const double a_emp = calibrate_smoothness(spec, opt);
    const EstimateReport size_rep =
        verify_standard_estimates(spec, opt.calibration_samples, opt.calibration_seed);
    const double a_size = opt.safety_factor * size_rep.max_size_ratio;
    LeafContext ctx{ifs, mu, spec, p, opt, a_emp};
    const int comps = spec.num_components();
    Accumulator acc(comps);
    std::uint64_t visited = 0;
    constexpr int kStraddleExtraDepth = 60;

    // classify the depth/cutoff antichain against the ball; straddlers get
    // refined further, and whatever is still unresolved is bounded by the
    // size estimate |K| <= A ||omega|| eps^{-s} on the far side of the ball.
    NeumaierSum unresolved_bound;
    auto handle = [&](auto&& self, const Cylinder& c, int rel_depth, bool past_leaf) -> void {
        if (++visited > budget) throw budget_error("truncated operator refinement", budget);
        const BallClass cls = classify_ball(ifs.space, c, p, eps);
        if (cls == BallClass::Inside) return;
        if (cls == BallClass::Outside) {
            if (!past_leaf && !is_quadrature_leaf(opt, c, rel_depth)) {
                for (std::uint32_t a = 0; a < ifs.map_count(); ++a)
                    self(self, child_cylinder(ifs, mu, c, a), rel_depth + 1, false);
            } else {
                visit_leaf(ctx, c, rel_depth, acc);
            }
            return;
        }
        if (rel_depth < opt.depth + kStraddleExtraDepth) {
            for (std::uint32_t a = 0; a < ifs.map_count(); ++a)
                self(self, child_cylinder(ifs, mu, c, a), rel_depth + 1,
                     past_leaf || is_quadrature_leaf(opt, c, rel_depth));
            return;
        }
        unresolved_bound.add(a_size * c.mass * opt.measure_scale * std::pow(eps, -spec.s));
    };
    handle(handle, root_cylinder(ifs), 0, false);

    IntegralEstimate est = finish_estimate(opt, acc, a_emp);
    for (double& e : est.error_indicator) e += unresolved_bound.value();
    if (unresolved_bound.value() > 0.0) {
        // straddlers survive only as error terms; interval sums no longer
        // enclose the truncated integral
        for (auto& s : est.certified_sign) s = SignCert::None;
    }
    return est;
}

MaximalEstimate maximal_operator_estimate(const IFS& ifs, const SelfSimilarMeasure& mu,
                                          const KernelSpec& spec, const Point& p,
                                          const std::vector<double>& eps_grid,
                                          const QuadratureOptions& opt) {
    if (eps_grid.empty()) throw input_error("maximal_operator_estimate: empty eps grid");
    MaximalEstimate out;
    for (double eps : eps_grid) {
        const IntegralEstimate est = truncated_operator(ifs, mu, spec, p, eps, opt);
        out.per_eps_norm.push_back(est.norm());
        out.estimate = std::max(out.estimate, out.per_eps_norm.back());
    }
    return out;
}

CylindricalMaximalEstimate cylindrical_maximal_estimate(const IFS& ifs,
                                                        const SelfSimilarMeasure& mu,
                                                        const KernelSpec& spec,
                                                        const Word& chain,
                                                        const QuadratureOptions& opt) {
    if (chain.empty()) throw input_error("cylindrical_maximal_estimate: empty chain");
    const Point p = cylinder_for_word(ifs, mu, chain).anchor;
    CylindricalMaximalEstimate out;
    for (std::size_t a = 0; a < chain.size(); ++a) {
        for (std::size_t b = a + 1; b <= chain.size(); ++b) {
            // C_{chain|a} \ C_{chain|b} splits into off-branch siblings at
            // levels a+1 .. b along the chain.
            std::vector<Cylinder> pieces;
            for (std::size_t j = a; j < b; ++j) {
                Word prefix(chain.begin(), chain.begin() + j);
                for (std::uint32_t letter = 0; letter < ifs.map_count(); ++letter) {
                    if (letter == chain[j]) continue;
                    Word piece = prefix;
                    piece.push_back(letter);
                    pieces.push_back(cylinder_for_word(ifs, mu, piece));
                }
            }
            const IntegralEstimate est = integrate_pieces(ifs, mu, spec, p, pieces, opt);
            if (est.norm() > out.estimate) {
                out.estimate = est.norm();
                out.best_outer = static_cast<int>(a);
                out.best_inner = static_cast<int>(b);
            }
        }
    }
    return out;
}

PotentialEstimate gamma_potential(const IFS& ifs, const SelfSimilarMeasure& mu, double C_Q,
                                  const Point& p, const QuadratureOptions& opt) {
    if (ifs.space.kind != GroupKind::Heisenberg)
        throw input_error("gamma_potential requires a Heisenberg space");
    check_point(ifs.space, p, "gamma_potential point");
    const std::uint64_t budget = resolve_node_budget(opt.node_budget);
    const int Q = ifs.space.homogeneous_dim();
    const double lip_const = std::abs(C_Q) * (Q - 2);
    PotentialEstimate out;
    NeumaierSum value, err;
    bool err_infinite = false;
    std::uint64_t visited = 0;
    constexpr int kDepthCap = 80;

    auto walk = [&](auto&& self, const Cylinder& c, int rel_depth) -> void {
        if (++visited > budget) throw budget_error("gamma potential refinement", budget);
        const double d = dist(ifs.space, c.anchor, p);
        const bool depth_done =
            opt.mass_cutoff > 0.0 ? c.mass <= opt.mass_cutoff : rel_depth >= opt.depth;
        // Whitney-style: keep splitting while the cylinder is large relative
        // to its distance from p.
        const bool too_close = d <= 2.0 * c.diam_bound;
        if ((!depth_done || too_close) && rel_depth < kDepthCap) {
            for (std::uint32_t a = 0; a < ifs.map_count(); ++a)
                self(self, child_cylinder(ifs, mu, c, a), rel_depth + 1);
            return;
        }
        if (d == 0.0) throw singularity_error("gamma_potential node coincides with p");
        const double w = c.mass * opt.measure_scale;
        value.add(eval_gamma(ifs.space, C_Q,
                             group_mul(ifs.space, group_inv(ifs.space, c.anchor), p)) *
                  w);
        const double gap = d - c.diam_bound;
        if (gap > 0.0)
            err.add(lip_const * std::pow(gap, 1.0 - Q) * c.diam_bound * w);
        else
            err_infinite = true;
        out.nodes++;
    };
    walk(walk, root_cylinder(ifs), 0);
    out.value = value.value();
    out.error_indicator = err_infinite ? kInf : err.value();
    return out;
}

double lipschitz_probe(const IFS& ifs, const SelfSimilarMeasure& mu, double C_Q,
                       int sample_pairs, std::uint64_t seed, const QuadratureOptions& opt) {
    if (sample_pairs < 1) throw input_error("lipschitz_probe: need at least one pair");
    Rng rng(seed);
    const int pool = std::max(2, static_cast<int>(std::ceil(std::sqrt(2.0 * sample_pairs))) + 1);
    std::vector<Point> points;
    std::vector<double> values;
    const double D = ifs.base_diam;
    while (static_cast<int>(points.size()) < pool) {
        Point dir(ifs.space.topological_dim());
        for (double& c : dir) c = rng.uniform(-1.0, 1.0);
        const double nn = gauge_norm(ifs.space, dir);
        if (nn < 1e-6) continue;
        const double t = rng.uniform(1.5 * D, 3.0 * D);
        const Point p =
            group_mul(ifs.space, ifs.base_point, dilate(ifs.space, t / nn, dir));
        points.push_back(p);
        values.push_back(gamma_potential(ifs, mu, C_Q, p, opt).value);
    }
    double best = 0.0;
    for (int k = 0; k < sample_pairs; ++k) {
        const std::size_t i = rng.index(points.size());
        std::size_t j = rng.index(points.size());
        if (i == j) j = (j + 1) % points.size();
        const double d = dist(ifs.space, points[i], points[j]);
        if (d < 1e-12) continue;
        best = std::max(best, std::abs(values[i] - values[j]) / d);
    }
    return best;
}

} // namespace fsio
