#include "fsio/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "fsio/errors.hpp"

namespace fsio {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t ipow_u64(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}
} // namespace

std::uint64_t CantorParams::z_count() const { return ipow_u64(N, 2 * n); }

std::uint64_t CantorParams::map_count() const { return ipow_u64(N, 2 * n + 2) / 2 + 1; }

std::vector<double> z_point(const CantorParams& params, std::uint64_t index) {
    if (index < 1 || index > params.z_count())
        throw input_error("z_point index out of range");
    std::vector<double> z(2 * params.n);
    std::uint64_t digits = index - 1;
    for (int axis = 0; axis < 2 * params.n; ++axis) {
        z[axis] = static_cast<double>(digits % params.N) / params.N;
        digits /= params.N;
    }
    return z;
}

MapAddress map_address(const CantorParams& params, std::uint64_t j) {
    if (j < 1 || j >= params.map_count()) throw input_error("map_address: j out of range");
    MapAddress addr;
    const std::uint64_t zc = params.z_count();
    addr.block = static_cast<int>((j - 1) / zc);
    const std::uint64_t residue = j % zc;
    addr.z_index = residue == 0 ? zc : residue;
    return addr;
}

IFS build_similarities(const CantorParams& params) {
    if (params.n < 1) throw input_error("cantor family: n >= 1 violated");
    if (params.N < 2 || params.N % 2 != 0)
        throw input_error("cantor family: N must be a positive even integer");
    if (!(params.r > 0.0)) throw input_error("cantor family: r > 0 violated");
    if (!(params.r < 1.0 / params.N)) throw input_error("cantor family: r < 1/N violated");

    const GroupSpace space = GroupSpace::heisenberg(params.n);
    const double half = 0.5;
    const double nsq = static_cast<double>(params.N) * params.N;
    std::vector<Similarity> maps;
    maps.reserve(params.map_count());
    maps.push_back({group_identity(space), params.r}); // the pure dilation
    for (std::uint64_t j = 1; j < params.map_count(); ++j) {
        const MapAddress addr = map_address(params, j);
        const std::vector<double> z = z_point(params, addr.z_index);
        Point q(space.topological_dim(), 0.0);
        for (int i = 0; i < 2 * params.n; ++i) q[i] = z[i];
        q[2 * params.n] = half + addr.block / nsq;
        maps.push_back({std::move(q), params.r});
    }
    IFS ifs = make_ifs(space, std::move(maps));

    // The invariant set lies in the slab { q' in [0,1]^{2n},
    // |q_t| <= 1 + 2 * sup|phi| }, whose gauge diameter improves on the
    // generic fixed-point-ball bound.
    const double S = 4.0 * params.n * params.r / (1.0 - params.r * params.r);
    const double hmax = 2.0 * params.n;
    const double container =
        std::pow(std::pow(hmax, 2.0) + std::pow(1.0 + 2.0 * S + 2.0 * hmax, 2.0), 0.25);
    if (container < ifs.base_diam) {
        ifs.base_diam = container;
        ifs.diam_bound_kind = "construction-container";
    }
    return ifs;
}

DimensionSolve solve_r_for_dimension(int n, int N, double target_a) {
    if (n < 1 || N < 2 || N % 2 != 0)
        throw input_error("solve_r_for_dimension: need n >= 1 and even N >= 2");
    if (!(target_a > 0.0)) throw input_error("solve_r_for_dimension: target_a must be positive");
    CantorParams params{n, N, 0.0};
    DimensionSolve out;
    out.r = std::pow(static_cast<double>(params.map_count()), -1.0 / target_a);
    out.checks.push_back({"r < 1/N", out.r, 1.0 / N, out.r < 1.0 / N});
    out.checks.push_back({"1/N < 1/2", 1.0 / N, 0.5, 1.0 / N < 0.5});
    if (target_a == 2.0 * n + 1.0)
        out.checks.push_back({"r < 1/(16n)", out.r, 1.0 / (16.0 * n), out.r < 1.0 / (16.0 * n)});
    out.feasible = true;
    for (const FeasibilityCheck& c : out.checks) out.feasible = out.feasible && c.pass;
    return out;
}

PhiProblem make_phi_problem(const CantorParams& params) {
    PhiProblem problem;
    problem.n = params.n;
    problem.N = params.N;
    problem.r = params.r;
    problem.z.reserve(params.z_count());
    for (std::uint64_t j = 1; j <= params.z_count(); ++j)
        problem.z.push_back(z_point(params, j));
    problem.blend_eps = 0.5 * (1.0 / params.N - params.r);
    return problem;
}

namespace {

// Point-location support for the boxes Q_j = z_j + [0,r]^{2n}. Boxes are
// aligned to the 1/N grid, so a cell key identifies candidates directly.
struct BoxIndex {
    const PhiProblem& problem;
    std::unordered_map<std::uint64_t, std::size_t> cell_to_box;
    bool exhaustive = false;

    explicit BoxIndex(const PhiProblem& p) : problem(p) {
        for (std::size_t j = 0; j < p.z.size(); ++j) {
            const std::uint64_t key = cell_key(cell_of_z(p.z[j]));
            cell_to_box.emplace(key, j); // duplicates collapse to the first
        }
        exhaustive = cell_to_box.size() == ipow_u64(p.N, 2 * p.n);
    }

    std::vector<int> cell_of_z(const std::vector<double>& z) const {
        std::vector<int> c(2 * problem.n);
        for (int i = 0; i < 2 * problem.n; ++i)
            c[i] = std::min(problem.N - 1,
                            std::max(0, static_cast<int>(std::lround(z[i] * problem.N))));
        return c;
    }

    std::vector<int> cell_of_point(const std::vector<double>& w) const {
        std::vector<int> c(2 * problem.n);
        for (int i = 0; i < 2 * problem.n; ++i)
            c[i] = std::min(problem.N - 1,
                            std::max(0, static_cast<int>(std::floor(w[i] * problem.N))));
        return c;
    }

    std::uint64_t cell_key(const std::vector<int>& c) const {
        std::uint64_t key = 0;
        for (int i = 2 * problem.n - 1; i >= 0; --i) key = key * problem.N + c[i];
        return key;
    }

    // Box containing w, or -1.
    long locate(const std::vector<double>& w) const {
        const auto it = cell_to_box.find(cell_key(cell_of_point(w)));
        if (it == cell_to_box.end()) return -1;
        const std::vector<double>& z = problem.z[it->second];
        for (int i = 0; i < 2 * problem.n; ++i) {
            const double off = w[i] - z[i];
            if (off < 0.0 || off > problem.r) return -1;
        }
        return static_cast<long>(it->second);
    }

    // Distance from w to the union of boxes and the nearest box index.
    std::pair<double, std::size_t> nearest(const std::vector<double>& w) const {
        double best = kInf;
        std::size_t best_j = 0;
        auto consider = [&](std::size_t j) {
            double d2 = 0.0;
            for (int i = 0; i < 2 * problem.n; ++i) {
                const double lo = problem.z[j][i], hi = problem.z[j][i] + problem.r;
                const double c = std::min(std::max(w[i], lo), hi);
                d2 += (w[i] - c) * (w[i] - c);
            }
            const double d = std::sqrt(d2);
            if (d < best || (d == best && j < best_j)) {
                best = d;
                best_j = j;
            }
        };
        if (exhaustive) {
            // the nearest box lies in the 3^{2n} neighborhood of w's cell
            const std::vector<int> c = cell_of_point(w);
            std::vector<int> probe(2 * problem.n);
            const int combos = static_cast<int>(ipow_u64(3, 2 * problem.n));
            for (int m = 0; m < combos; ++m) {
                int digits = m;
                bool ok = true;
                for (int i = 0; i < 2 * problem.n; ++i) {
                    probe[i] = c[i] + (digits % 3) - 1;
                    digits /= 3;
                    if (probe[i] < 0 || probe[i] >= problem.N) ok = false;
                }
                if (!ok) continue;
                const auto it = cell_to_box.find(cell_key(probe));
                if (it != cell_to_box.end()) consider(it->second);
            }
        } else {
            for (std::size_t j = 0; j < problem.z.size(); ++j) consider(j);
        }
        return {best, best_j};
    }
};

double obstruction_h(const PhiProblem& problem, std::size_t j, const std::vector<double>& w) {
    const std::vector<double>& z = problem.z[j];
    double sum = 0.0;
    for (int i = 0; i < problem.n; ++i)
        sum += z[i] * w[i + problem.n] - z[i + problem.n] * w[i];
    return -2.0 * sum;
}

std::vector<double> pullback(const PhiProblem& problem, std::size_t j,
                             const std::vector<double>& w) {
    std::vector<double> u(2 * problem.n);
    for (int i = 0; i < 2 * problem.n; ++i)
        u[i] = std::min(1.0, std::max(0.0, (w[i] - problem.z[j][i]) / problem.r));
    return u;
}

std::vector<double> clamp_to_box(const PhiProblem& problem, std::size_t j,
                                 const std::vector<double>& w) {
    std::vector<double> out(2 * problem.n);
    for (int i = 0; i < 2 * problem.n; ++i)
        out[i] = std::min(problem.z[j][i] + problem.r, std::max(problem.z[j][i], w[i]));
    return out;
}

// One application of the contraction to an arbitrary evaluator of the
// previous iterate.
template <typename Eval>
double apply_T(const PhiProblem& problem, const BoxIndex& index, const Eval& prev,
               const std::vector<double>& w) {
    const long j = index.locate(w);
    if (j >= 0)
        return problem.r * problem.r * prev(pullback(problem, j, w)) +
               obstruction_h(problem, j, w);
    const auto [d, jn] = index.nearest(w);
    if (d >= problem.blend_eps) return 0.0;
    const std::vector<double> edge = clamp_to_box(problem, jn, w);
    const double boundary = problem.r * problem.r * prev(pullback(problem, jn, edge)) +
                            obstruction_h(problem, jn, edge);
    return (problem.blend_eps - d) / problem.blend_eps * boundary;
}

std::uint64_t grid_size(int n, int resolution) {
    std::uint64_t size = 1;
    for (int axis = 0; axis < 2 * n; ++axis) {
        size *= resolution;
        if (size > (1ull << 26))
            throw input_error("phi grid too large; lower the resolution");
    }
    return size;
}

std::vector<double> grid_coords(const PhiField& field, std::uint64_t idx) {
    std::vector<double> w(2 * field.n);
    for (int axis = 0; axis < 2 * field.n; ++axis) {
        w[axis] = static_cast<double>(idx % field.resolution) / (field.resolution - 1);
        idx /= field.resolution;
    }
    return w;
}

} // namespace

double phi_field_eval(const PhiField& field, const std::vector<double>& w) {
    if (static_cast<int>(w.size()) != 2 * field.n)
        throw input_error("phi_field_eval: wrong point dimension");
    const int res = field.resolution;
    const int dims = 2 * field.n;
    std::vector<int> base(dims);
    std::vector<double> frac(dims);
    for (int i = 0; i < dims; ++i) {
        const double t = std::min(1.0, std::max(0.0, w[i])) * (res - 1);
        base[i] = std::min(res - 2, static_cast<int>(std::floor(t)));
        frac[i] = t - base[i];
    }
    double out = 0.0;
    for (int corner = 0; corner < (1 << dims); ++corner) {
        double weight = 1.0;
        std::uint64_t idx = 0, stride = 1;
        for (int i = 0; i < dims; ++i) {
            const int bit = (corner >> i) & 1;
            weight *= bit ? frac[i] : 1.0 - frac[i];
            idx += stride * (base[i] + bit);
            stride *= res;
        }
        out += weight * field.values[idx];
    }
    return out;
}

PhiField solve_phi(const PhiProblem& problem, int resolution, double tol) {
    if (resolution < 2) throw input_error("solve_phi: resolution must be >= 2");
    if (!(tol > 0.0)) throw input_error("solve_phi: tol must be positive");
    if (!(problem.r > 0.0 && problem.r < 1.0)) throw input_error("solve_phi: bad ratio");
    if (problem.z.empty()) throw input_error("solve_phi: no boxes");
    const BoxIndex index(problem);

    PhiField field;
    field.n = problem.n;
    field.resolution = resolution;
    field.blend_eps = problem.blend_eps;
    const std::uint64_t size = grid_size(problem.n, resolution);
    field.values.assign(size, 0.0);

    const double contraction = problem.r * problem.r;
    std::vector<double> next(size);
    double initial_diff = 0.0;
    int cap = 64;
    for (int iter = 0;; ++iter) {
        if (iter >= cap)
            throw numerical_error("solve_phi failed to converge within the certified cap");
        double diff = 0.0;
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            const std::vector<double> w = grid_coords(field, idx);
            next[idx] = apply_T(problem, index,
                                [&](const std::vector<double>& u) {
                                    return phi_field_eval(field, u);
                                },
                                w);
            diff = std::max(diff, std::abs(next[idx] - field.values[idx]));
        }
        field.values.swap(next);
        field.iterations = iter + 1;
        field.iteration_diffs.push_back(diff);
        if (iter == 0) {
            initial_diff = std::max(diff, 1e-300);
            cap = static_cast<int>(std::ceil(std::log(std::min(tol, 1e-17) / initial_diff) /
                                             std::log(contraction))) +
                  25;
        }
        if (diff == 0.0 || diff <= 5e-17 * std::max(1.0, initial_diff)) break;
    }

    // Fixed-point defect of the converged field, and the grid statistics.
    double residual = 0.0, sup = 0.0, min_on_boxes = kInf;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        const std::vector<double> w = grid_coords(field, idx);
        sup = std::max(sup, std::abs(field.values[idx]));
        const long j = index.locate(w);
        if (j < 0) continue;
        min_on_boxes = std::min(min_on_boxes, field.values[idx]);
        const double rhs = contraction * phi_field_eval(field, pullback(problem, j, w)) +
                           obstruction_h(problem, j, w);
        residual = std::max(residual, std::abs(field.values[idx] - rhs));
    }
    field.residual = residual;
    field.sup_norm = sup;
    field.min_on_boxes = min_on_boxes == kInf ? 0.0 : min_on_boxes;
    if (residual > tol)
        throw numerical_error("solve_phi: converged field misses the residual target");
    return field;
}

namespace {

double phi_exact_rec(const PhiProblem& problem, const BoxIndex& index,
                     const std::vector<double>& w, int depth) {
    if (depth <= 0) return 0.0;
    return apply_T(problem, index,
                   [&](const std::vector<double>& u) {
                       return phi_exact_rec(problem, index, u, depth - 1);
                   },
                   w);
}

} // namespace

double phi_exact(const PhiProblem& problem, const std::vector<double>& w, int depth) {
    const BoxIndex index(problem);
    return phi_exact_rec(problem, index, w, depth);
}

PhiVerifyReport verify_phi(const PhiField& field, const PhiProblem& problem, double tol) {
    const BoxIndex index(problem);
    PhiVerifyReport rep;
    rep.bound_8nr = 8.0 * problem.n * problem.r;
    const std::uint64_t size = field.values.size();
    double residual = 0.0, sup = 0.0, min_on_boxes = kInf;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        const std::vector<double> w = grid_coords(field, idx);
        sup = std::max(sup, std::abs(field.values[idx]));
        const long j = index.locate(w);
        if (j < 0) continue;
        min_on_boxes = std::min(min_on_boxes, field.values[idx]);
        const double rhs =
            problem.r * problem.r * phi_field_eval(field, pullback(problem, j, w)) +
            obstruction_h(problem, j, w);
        residual = std::max(residual, std::abs(field.values[idx] - rhs));
    }
    rep.residual = residual;
    rep.sup_norm = sup;
    rep.min_on_boxes = min_on_boxes == kInf ? 0.0 : min_on_boxes;
    rep.residual_ok = residual <= tol;
    rep.norm_ok = sup <= rep.bound_8nr * (1.0 + 1e-12) + 1e-15;
    rep.positive_ok = rep.min_on_boxes > -0.5;
    rep.pass = rep.residual_ok && rep.norm_ok && rep.positive_ok;
    return rep;
}

bool region_membership(const PhiField& field, const GroupSpace& space, const Point& p) {
    if (space.kind != GroupKind::Heisenberg || space.n != field.n)
        throw input_error("region_membership: space does not match the field");
    check_point(space, p, "region_membership");
    std::vector<double> w(p.begin(), p.begin() + 2 * field.n);
    for (double c : w)
        if (c < 0.0 || c > 1.0) return false;
    const double phi = phi_field_eval(field, w);
    const double t = p[2 * field.n];
    return phi <= t && t <= phi + 1.0;
}

CantorSeparation cantor_separation_certificate(const CantorParams& params) {
    if (!(params.r > 0.0 && params.r < 1.0 / params.N))
        throw input_error("separation certificate requires 0 < r < 1/N");
    const double n = params.n, N = params.N, r = params.r;
    CantorSeparation sep;

    // sup|phi| <= 4nr/(1-r^2); Lip(phi) on the boxes from the fixed-point
    // equation: Lip_B <= r Lip_Q + 2 sqrt(2n) z_max with Lip_Q bounded by the
    // blend slope sup|phi|/eps + Lip_B.
    const double S = 4.0 * n * r / (1.0 - r * r);
    const double eps = 0.5 * (1.0 / N - r);
    const double hmax = 2.0 * std::sqrt(2.0 * n) * (N - 1.0) / N;
    const double lip_b = (r * S / eps + hmax) / (1.0 - r);
    sep.phi_sup_bound = S;
    sep.phi_lip_bound = lip_b;

    // different z: horizontal box gap
    sep.gap_different_z = 1.0 / N - r;

    // same z, different vertical blocks: vertical offset minus the phi and
    // twist variation; pieces share the horizontal box so |Delta'| <= t and
    // the vertical difference is at least m - kappa t with m = 1/N^2 - r^2,
    // kappa = Lip_B + 2 max|p'|. The gauge distance then exceeds the
    // crossover t* solving t^2 + kappa t = m.
    const double m_b = 1.0 / (N * N) - r * r;
    const double bmax = std::sqrt(2.0 * n) * ((N - 1.0) / N + r);
    const double kappa = lip_b + 2.0 * bmax;
    sep.gap_same_z_blocks = 0.5 * (-kappa + std::sqrt(kappa * kappa + 4.0 * m_b));

    // the scaled piece at the origin against the z = 0 stack: vertical gap
    // 1/2 - sup|phi| - r^2 (1 + sup|phi|) minus the twist over the r-box
    const double m_c = 0.5 - S - r * r * (1.0 + S) - 4.0 * n * r * r;
    sep.gap_origin_piece = m_c > 0.0 ? std::sqrt(m_c) : 0.0;

    const double hspan = 2.0 * n; // |Delta'|^2 over the unit box
    sep.container_diam =
        std::pow(hspan * hspan + std::pow(1.0 + 2.0 * S + 2.0 * hspan, 2.0), 0.25);

    SeparationReport& rep = sep.report;
    rep.method = "construction-certificate";
    rep.depth_used = 0;
    rep.min_gap = std::min({sep.gap_different_z, sep.gap_same_z_blocks, sep.gap_origin_piece});
    rep.contact_upper = 1.0 / N; // adjacent vertical blocks over the same z
    rep.disjoint = sep.gap_different_z > 0.0 && sep.gap_same_z_blocks > 0.0 && m_c > 0.0;
    rep.alpha_lower = rep.min_gap / (r * sep.container_diam);
    return sep;
}

SignCertificate numerator_sign_certificate(const IFS& ifs, const SelfSimilarMeasure& mu,
                                           const CantorParams& params, double mass_cutoff,
                                           std::uint64_t node_budget) {
    SignCertificate cert;
    cert.min_vertical_lo = kInf;
    cert.min_numerator_lo = kInf;
    bool vertical_ok = true;
    std::uint64_t visited = 0;
    const int n = params.n;

    auto classify = [&](const Cylinder& leaf) {
        const IntervalBox box = cylinder_box(ifs, leaf);
        Interval h2(0.0);
        for (int i = 0; i < 2 * n; ++i) h2 += sqr(box[i]);
        const Interval vertical = box[2 * n];
        const Interval numerator = box[n] * h2 + box[0] * vertical;
        cert.min_vertical_lo = std::min(cert.min_vertical_lo, vertical.lo);
        cert.min_numerator_lo = std::min(cert.min_numerator_lo, numerator.lo);
        vertical_ok = vertical_ok && vertical.strictly_positive();
        if (numerator.strictly_positive())
            cert.boxes_strict++;
        else if (numerator.lo == 0.0)
            cert.boxes_touch_zero++;
        else
            cert.boxes_straddle++;
        cert.nodes++;
    };
    auto walk = [&](auto&& self, const Cylinder& c) -> void {
        if (++visited > node_budget) throw budget_error("sign certificate", node_budget);
        if (c.mass <= mass_cutoff) {
            classify(c);
            return;
        }
        for (std::uint32_t a = 0; a < ifs.map_count(); ++a)
            self(self, child_cylinder(ifs, mu, c, a));
    };
    const Cylinder root = root_cylinder(ifs);
    for (std::uint32_t a = 1; a < ifs.map_count(); ++a)
        walk(walk, child_cylinder(ifs, mu, root, a));

    cert.vertical_all_positive = vertical_ok;
    cert.pass = cert.boxes_straddle == 0 && vertical_ok && cert.boxes_strict > 0;
    return cert;
}

PipelineReport removability_pipeline(int n, int N, const PipelineOptions& opt) {
    PipelineReport report;
    const double target_a = opt.target_a > 0.0 ? opt.target_a : 2.0 * n + 1.0;
    report.dimension = solve_r_for_dimension(n, N, target_a);
    report.params = CantorParams{n, N, report.dimension.r};
    report.measure_exponent = target_a;
    report.c_Q = opt.c_Q != 0.0 ? opt.c_Q : 2.0 - (2.0 * n + 2.0);
    {
        std::string note = "r=" + std::to_string(report.dimension.r);
        for (const FeasibilityCheck& c : report.dimension.checks)
            note += "; " + c.name + (c.pass ? " ok" : " VIOLATED");
        report.stages.push_back({"parameters", report.dimension.feasible, note});
    }
    if (!report.dimension.feasible) return report;

    const IFS ifs = build_similarities(report.params);
    const SelfSimilarMeasure mu = make_natural_measure(ifs, report.measure_exponent);
    report.stages.push_back({"similarities",
                             ifs.map_count() == report.params.map_count(),
                             std::to_string(ifs.map_count()) + " maps, ratio " +
                                 std::to_string(report.params.r) + ", diam bound " +
                                 std::to_string(ifs.base_diam) + " (" + ifs.diam_bound_kind +
                                 ")"});
    if (!report.stages.back().pass) return report;

    report.separation = cantor_separation_certificate(report.params);
    report.stages.push_back({"separation", report.separation.report.disjoint,
                             "min_gap=" + std::to_string(report.separation.report.min_gap) +
                                 ", alpha>=" +
                                 std::to_string(report.separation.report.alpha_lower)});
    if (!report.separation.report.disjoint) return report;

    const PhiProblem problem = make_phi_problem(report.params);
    report.phi = solve_phi(problem, opt.resolution, opt.phi_tol);
    report.phi_verify = verify_phi(report.phi, problem, opt.phi_tol);
    report.stages.push_back(
        {"phi", report.phi_verify.pass,
         "residual=" + std::to_string(report.phi_verify.residual) +
             ", sup=" + std::to_string(report.phi_verify.sup_norm) + " (bound " +
             std::to_string(report.phi_verify.bound_8nr) + ")"});
    if (!report.phi_verify.pass) return report;

    const double cutoff = 1.2 / static_cast<double>(report.params.map_count());
    report.sign_certificate =
        numerator_sign_certificate(ifs, mu, report.params, cutoff, opt.node_budget);
    report.stages.push_back(
        {"sign-certificate", report.sign_certificate.pass,
         std::to_string(report.sign_certificate.boxes_strict) + " strict, " +
             std::to_string(report.sign_certificate.boxes_touch_zero) + " touching zero, " +
             std::to_string(report.sign_certificate.boxes_straddle) + " straddling"});
    if (!report.sign_certificate.pass) return report;

    const KernelSpec spec = KernelSpec::heisenberg_riesz(ifs.space, report.c_Q);
    QuadratureOptions qopt;
    qopt.mass_cutoff = cutoff;
    qopt.node_budget = opt.node_budget;
    qopt.mode = CertMode::Interval;
    qopt.threads = opt.threads;
    const Word word{0};
    const std::vector<CriterionReport> reports = check_unboundedness(
        ifs, mu, spec, {word}, report.separation.report, qopt, opt.eta_terms);
    report.criterion = reports.front();
    report.antichain_nodes = report.criterion.estimate.nodes;
    report.certified_component = n; // the K_{1+n} component, zero-based
    report.certified_sign = report.criterion.components[n].sign;
    const bool criterion_pass = report.criterion.components[n].nonzero_certified;
    report.stages.push_back(
        {"criterion", criterion_pass,
         "component " + std::to_string(n) + " sign " + to_string(report.certified_sign) +
             " over " + std::to_string(report.antichain_nodes) + " nodes"});
    report.criterion_certified = criterion_pass;
    return report;
}

} // namespace fsio
