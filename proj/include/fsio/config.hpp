#pragma once

#include <string>

#include <json.hpp>

#include "fsio/cantor.hpp"
#include "fsio/ifs.hpp"
#include "fsio/kernels.hpp"
#include "fsio/quadrature.hpp"

namespace fsio {

using Json = nlohmann::json;

/// {"group":"heisenberg","n":1} or {"group":"euclidean","d":2}
GroupSpace parse_space(const Json& j);
Json space_to_json(const GroupSpace& space);

/// {"kernel":"heisenberg_riesz","c_Q":-2.0} | {"kernel":"coordinate_riesz",
/// "s":1.0,"axis":0} | {"kernel":"complex_power","m":3,"s":1.0} |
/// {"kernel":"constant","s":1.0,"value":1.0}
KernelSpec parse_kernel(const Json& j, const GroupSpace& space);
Json kernel_to_json(const KernelSpec& spec);

struct IfsConfig {
    IFS ifs;
    double dimension = 0.0; // resolved measure exponent
};

/// {"space":..., "maps":[{"q":[...],"r":0.5},...], "dimension":"auto"|s}
IfsConfig parse_ifs(const Json& j);

QuadratureOptions parse_quadrature_options(const Json& j);
Json quadrature_options_to_json(const QuadratureOptions& opt);

Json word_to_json(const Word& w);
Word parse_word(const Json& j);

/// Finite numbers as JSON numbers, infinities as the strings "inf"/"-inf".
Json json_real(double v);

Json interval_to_json(const Interval& v);
Json estimate_to_json(const IntegralEstimate& est);
Json separation_to_json(const SeparationReport& rep);
Json criterion_to_json(const CriterionReport& rep);
Json phi_field_to_json(const PhiField& field, bool include_grid);
Json phi_verify_to_json(const PhiVerifyReport& rep);
Json pipeline_to_json(const PipelineReport& rep, bool include_grid);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace fsio
