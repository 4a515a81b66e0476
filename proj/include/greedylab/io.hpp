#pragma once

#include <filesystem>
#include <string>

#include "greedylab/bases.hpp"
#include "greedylab/core.hpp"
#include "greedylab/dkk.hpp"
#include "greedylab/params.hpp"
#include "greedylab/spaces.hpp"
#include "greedylab/tga.hpp"

#include "json.hpp"

namespace greedylab::io {

using json = nlohmann::json;

// Tagged-JSON serialization. Parsers are strict: unknown fields are rejected.
json to_json(const SpaceSpec& space);
SpaceSpec space_from_json(const json& j);

json to_json(const BasisRep& basis);
BasisRep basis_from_json(const json& j);

json to_json(const OrderedPartition& partition);
OrderedPartition partition_from_json(const json& j);

ConcaveSpec concave_from_json(const json& j);

json to_json(const DkkSpace& space);
std::shared_ptr<DkkSpace> dkk_from_json(const json& j);

json to_json(const ParamReport& report);

/// Strict parse; pair with greedylab::verify_witnesses before trusting rows.
ParamReport report_from_json(const json& j);

json to_json(const GreedyRun& run);
std::string greedy_run_csv(const GreedyRun& run);

/// Report rows plus optional reference curves as CSV ('.' decimal, 17
/// significant digits).
std::string report_csv(const ParamReport& report);

/// Norm evaluator from a descriptor {"space": ...} | {"basis": ...} |
/// {"dkk": ...}, applied to coefficient vectors.
struct Normer {
    NormFn fn;
    int dim;
    std::string label;
};
Normer normer_from_json(const json& j);

/// Reject objects carrying keys outside `allowed`.
void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where);

std::string format_double(double v);  // shortest 17-significant-digit form

std::uint64_t fnv1a_hash(const std::string& data);

void write_file(const std::filesystem::path& path, const std::string& data);

}  // namespace greedylab::io
