#include "fsio/config.hpp"

#include <cmath>
#include <fstream>

#include "fsio/errors.hpp"

namespace fsio {

namespace {

double require_number(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw input_error(std::string("config: missing numeric field '") + key + "'");
    return j[key].get<double>();
}

} // namespace

GroupSpace parse_space(const Json& j) {
    if (!j.is_object() || !j.contains("group"))
        throw input_error("config: space needs a 'group' field");
    const std::string kind = j["group"].get<std::string>();
    if (kind == "heisenberg") return GroupSpace::heisenberg(static_cast<int>(require_number(j, "n")));
    if (kind == "euclidean") return GroupSpace::euclidean(static_cast<int>(require_number(j, "d")));
    throw input_error("config: unknown group '" + kind + "'");
}

Json space_to_json(const GroupSpace& space) {
    if (space.kind == GroupKind::Heisenberg) return Json{{"group", "heisenberg"}, {"n", space.n}};
    return Json{{"group", "euclidean"}, {"d", space.n}};
}

KernelSpec parse_kernel(const Json& j, const GroupSpace& space) {
    if (!j.is_object() || !j.contains("kernel"))
        throw input_error("config: kernel needs a 'kernel' field");
    const std::string kind = j["kernel"].get<std::string>();
    if (kind == "heisenberg_riesz")
        return KernelSpec::heisenberg_riesz(space,
                                            j.contains("c_Q") ? j["c_Q"].get<double>() : 0.0);
    if (kind == "coordinate_riesz")
        return KernelSpec::coordinate_riesz(space, static_cast<int>(require_number(j, "axis")),
                                            require_number(j, "s"));
    if (kind == "complex_power") {
        if (!(space == GroupSpace::euclidean(2)))
            throw input_error("complex_power kernel requires euclidean d=2");
        return KernelSpec::complex_power(static_cast<int>(require_number(j, "m")),
                                         j.contains("s") ? j["s"].get<double>() : 1.0);
    }
    if (kind == "constant")
        return KernelSpec::constant(space, require_number(j, "s"),
                                    j.contains("value") ? j["value"].get<double>() : 1.0);
    throw input_error("config: unknown kernel '" + kind + "'");
}

Json kernel_to_json(const KernelSpec& spec) {
    Json j;
    switch (spec.family) {
        case KernelFamily::HeisenbergRiesz:
            j = {{"kernel", "heisenberg_riesz"}, {"c_Q", spec.c_Q}};
            break;
        case KernelFamily::CoordinateRiesz:
            j = {{"kernel", "coordinate_riesz"}, {"axis", spec.axis}};
            break;
        case KernelFamily::ComplexPower:
            j = {{"kernel", "complex_power"}, {"m", spec.m}};
            break;
        case KernelFamily::Constant:
            j = {{"kernel", "constant"}, {"value", spec.value}};
            break;
    }
    j["s"] = spec.s;
    j["components"] = spec.num_components();
    return j;
}

IfsConfig parse_ifs(const Json& j) {
    if (!j.is_object() || !j.contains("space") || !j.contains("maps"))
        throw input_error("config: ifs needs 'space' and 'maps'");
    const GroupSpace space = parse_space(j["space"]);
    std::vector<Similarity> maps;
    for (const Json& m : j["maps"]) {
        Similarity s;
        s.translation = m.at("q").get<std::vector<double>>();
        s.ratio = m.at("r").get<double>();
        maps.push_back(std::move(s));
    }
    IfsConfig out{make_ifs(space, std::move(maps)), 0.0};
    if (!j.contains("dimension") || (j["dimension"].is_string() &&
                                     j["dimension"].get<std::string>() == "auto")) {
        std::vector<double> ratios;
        for (const Similarity& s : out.ifs.maps) ratios.push_back(s.ratio);
        out.dimension = similarity_dimension(ratios);
    } else {
        out.dimension = j["dimension"].get<double>();
        if (!(out.dimension > 0.0)) throw input_error("config: dimension must be positive");
    }
    return out;
}

QuadratureOptions parse_quadrature_options(const Json& j) {
    QuadratureOptions opt;
    if (j.is_null()) return opt;
    if (j.contains("depth")) opt.depth = j["depth"].get<int>();
    if (j.contains("mass_cutoff")) opt.mass_cutoff = j["mass_cutoff"].get<double>();
    if (j.contains("budget")) opt.node_budget = j["budget"].get<std::uint64_t>();
    if (j.contains("mode")) {
        const std::string mode = j["mode"].get<std::string>();
        if (mode == "interval")
            opt.mode = CertMode::Interval;
        else if (mode == "heuristic")
            opt.mode = CertMode::Heuristic;
        else
            throw input_error("config: unknown certification mode '" + mode + "'");
    }
    if (j.contains("safety_factor")) opt.safety_factor = j["safety_factor"].get<double>();
    if (j.contains("measure_scale")) opt.measure_scale = j["measure_scale"].get<double>();
    if (j.contains("threads")) opt.threads = j["threads"].get<int>();
    if (j.contains("calibration_samples"))
        opt.calibration_samples = j["calibration_samples"].get<int>();
    if (j.contains("seed")) opt.calibration_seed = j["seed"].get<std::uint64_t>();
    return opt;
}

Json quadrature_options_to_json(const QuadratureOptions& opt) {
    return Json{{"depth", opt.depth},
                {"mass_cutoff", opt.mass_cutoff},
                {"budget", resolve_node_budget(opt.node_budget)},
                {"mode", to_string(opt.mode)},
                {"safety_factor", opt.safety_factor},
                {"measure_scale", opt.measure_scale},
                {"threads", opt.threads},
                {"calibration_samples", opt.calibration_samples},
                {"seed", opt.calibration_seed}};
}

Json word_to_json(const Word& w) {
    Json arr = Json::array();
    for (std::uint32_t a : w) arr.push_back(a);
    return arr;
}

Word parse_word(const Json& j) {
    Word w;
    for (const Json& a : j) w.push_back(a.get<std::uint32_t>());
    return w;
}

Json json_real(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

Json interval_to_json(const Interval& v) {
    return Json{{"lo", json_real(v.lo)}, {"hi", json_real(v.hi)}};
}

Json estimate_to_json(const IntegralEstimate& est) {
    Json value = Json::array(), err = Json::array(), isum = Json::array(),
         sign = Json::array(), tally = Json::array();
    for (std::size_t i = 0; i < est.value.size(); ++i) {
        value.push_back(json_real(est.value[i]));
        err.push_back(json_real(est.error_indicator[i]));
        isum.push_back(interval_to_json(est.interval_sum[i]));
        sign.push_back(to_string(est.certified_sign[i]));
        tally.push_back(Json{{"positive", est.box_tally[i].positive},
                             {"negative", est.box_tally[i].negative},
                             {"touch_zero", est.box_tally[i].touch_zero},
                             {"straddle", est.box_tally[i].straddle}});
    }
    return Json{{"value", value},
                {"error", err},
                {"interval", isum},
                {"certified_sign", sign},
                {"box_tally", tally},
                {"nodes", est.nodes},
                {"depth", est.depth_used},
                {"min_leaf_gap", json_real(est.min_leaf_gap)},
                {"calibration_constant", json_real(est.calibration_constant)},
                {"mode", to_string(est.mode)}};
}

Json separation_to_json(const SeparationReport& rep) {
    return Json{{"min_gap", json_real(rep.min_gap)},
                {"contact_upper", json_real(rep.contact_upper)},
                {"alpha_lower", json_real(rep.alpha_lower)},
                {"disjoint", rep.disjoint},
                {"depth_used", rep.depth_used},
                {"method", rep.method}};
}

Json criterion_to_json(const CriterionReport& rep) {
    Json comps = Json::array();
    for (const ComponentVerdict& v : rep.components)
        comps.push_back(Json{{"value", json_real(v.value)},
                             {"error", json_real(v.error_indicator)},
                             {"interval", interval_to_json(v.interval_sum)},
                             {"sign", to_string(v.sign)},
                             {"verdict", v.nonzero_certified ? "nonzero-certified"
                                                             : "inconclusive"}});
    Json etas = Json::array();
    for (const std::vector<double>& eta : rep.eta_sequence) {
        Json row = Json::array();
        for (double v : eta) row.push_back(json_real(v));
        etas.push_back(row);
    }
    return Json{{"word", word_to_json(rep.word)},
                {"fixed_point", rep.fixed_pt},
                {"components", comps},
                {"eta_sequence", etas},
                {"estimate", estimate_to_json(rep.estimate)}};
}

Json phi_field_to_json(const PhiField& field, bool include_grid) {
    Json j{{"n", field.n},
           {"resolution", field.resolution},
           {"blend_eps", field.blend_eps},
           {"residual", json_real(field.residual)},
           {"sup_norm", json_real(field.sup_norm)},
           {"min_on_boxes", json_real(field.min_on_boxes)},
           {"iterations", field.iterations}};
    Json diffs = Json::array();
    for (double d : field.iteration_diffs) diffs.push_back(json_real(d));
    j["iteration_diffs"] = diffs;
    if (include_grid) j["values"] = field.values;
    return j;
}

Json phi_verify_to_json(const PhiVerifyReport& rep) {
    return Json{{"residual", json_real(rep.residual)},
                {"sup_norm", json_real(rep.sup_norm)},
                {"bound_8nr", json_real(rep.bound_8nr)},
                {"min_on_boxes", json_real(rep.min_on_boxes)},
                {"residual_ok", rep.residual_ok},
                {"norm_ok", rep.norm_ok},
                {"positive_ok", rep.positive_ok},
                {"pass", rep.pass}};
}

Json pipeline_to_json(const PipelineReport& rep, bool include_grid) {
    Json checks = Json::array();
    for (const FeasibilityCheck& c : rep.dimension.checks)
        checks.push_back(Json{{"name", c.name},
                              {"lhs", json_real(c.lhs)},
                              {"rhs", json_real(c.rhs)},
                              {"pass", c.pass}});
    Json stages = Json::array();
    for (const StageResult& s : rep.stages)
        stages.push_back(Json{{"name", s.name}, {"pass", s.pass}, {"note", s.note}});
    Json j{{"params",
            Json{{"n", rep.params.n}, {"N", rep.params.N}, {"r", json_real(rep.params.r)},
                 {"map_count", rep.params.map_count()},
                 {"z_index_convention", "residue 0 stands for z index N^{2n}"}}},
           {"feasible", rep.dimension.feasible},
           {"feasibility_checks", checks},
           {"measure_exponent", rep.measure_exponent},
           {"c_Q", rep.c_Q},
           {"stages", stages},
           {"criterion_certified", rep.criterion_certified}};
    if (rep.stages.size() > 2) {
        j["separation"] = separation_to_json(rep.separation.report);
        j["separation"]["gap_different_z"] = json_real(rep.separation.gap_different_z);
        j["separation"]["gap_same_z_blocks"] = json_real(rep.separation.gap_same_z_blocks);
        j["separation"]["gap_origin_piece"] = json_real(rep.separation.gap_origin_piece);
        j["separation"]["phi_sup_bound"] = json_real(rep.separation.phi_sup_bound);
        j["separation"]["phi_lip_bound"] = json_real(rep.separation.phi_lip_bound);
        j["separation"]["container_diam"] = json_real(rep.separation.container_diam);
    }
    if (rep.stages.size() > 3) {
        j["phi"] = phi_field_to_json(rep.phi, include_grid);
        j["phi_verify"] = phi_verify_to_json(rep.phi_verify);
    }
    if (rep.stages.size() > 4)
        j["sign_certificate"] = Json{
            {"pass", rep.sign_certificate.pass},
            {"boxes_strict", rep.sign_certificate.boxes_strict},
            {"boxes_touch_zero", rep.sign_certificate.boxes_touch_zero},
            {"boxes_straddle", rep.sign_certificate.boxes_straddle},
            {"vertical_all_positive", rep.sign_certificate.vertical_all_positive},
            {"min_vertical_lo", json_real(rep.sign_certificate.min_vertical_lo)},
            {"min_numerator_lo", json_real(rep.sign_certificate.min_numerator_lo)},
            {"nodes", rep.sign_certificate.nodes}};
    if (rep.stages.size() > 5) {
        j["criterion"] = criterion_to_json(rep.criterion);
        j["certified_component"] = rep.certified_component;
        j["certified_sign"] = to_string(rep.certified_sign);
        j["antichain_nodes"] = rep.antichain_nodes;
    }
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace fsio
