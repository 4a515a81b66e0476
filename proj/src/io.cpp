#include "greedylab/io.hpp"

#include <cstdio>
#include <fstream>

namespace greedylab::io {

namespace {

json exponent_to_json(double v) {
    if (v == kInf) return json("inf");
    return json(v);
}

double exponent_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw validation_error(where + ": exponent string must be \"inf\"");
    }
    if (!j.is_number()) throw validation_error(where + ": exponent must be a number or \"inf\"");
    return j.get<double>();
}

template <typename T>
T field(const json& j, const char* name, const std::string& where) {
    if (!j.contains(name)) throw validation_error(where + ": missing field '" + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw validation_error(where + ": field '" + name + "' has the wrong type");
    }
}

const json& req(const json& j, const char* name, const std::string& where) {
    if (!j.contains(name)) throw validation_error(where + ": missing field '" + name + "'");
    return j.at(name);
}

}  // namespace

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    if (!j.is_object()) throw validation_error(where + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* key : allowed) ok |= item.key() == key;
        if (!ok) throw validation_error(where + ": unknown field '" + item.key() + "'");
    }
}

json to_json(const SpaceSpec& space) {
    json j;
    j["dim"] = space.dim();
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, space::Lp>) {
                j["kind"] = "lp";
                j["p"] = exponent_to_json(k.p.value);
            } else if constexpr (std::is_same_v<T, space::Lorentz>) {
                j["kind"] = "lorentz";
                j["q"] = exponent_to_json(k.q.value);
                j["w"] = k.w.raw();
            } else if constexpr (std::is_same_v<T, space::WeakLorentz>) {
                j["kind"] = "weak_lorentz";
                j["w"] = k.w.raw();
            } else if constexpr (std::is_same_v<T, space::MixedZ>) {
                j["kind"] = "mixed_z";
                j["p"] = exponent_to_json(k.p.value);
                j["q"] = exponent_to_json(k.q.value);
                j["inner"] = k.inner;
            } else if constexpr (std::is_same_v<T, space::MixedB>) {
                j["kind"] = "mixed_b";
                j["p"] = exponent_to_json(k.p.value);
                j["q"] = exponent_to_json(k.q.value);
                j["block_sizes"] = k.block_sizes;
            } else {
                j["kind"] = "direct_sum_d";
                j["p"] = exponent_to_json(k.p.value);
                j["q"] = exponent_to_json(k.q.value);
            }
        },
        space.kind());
    return j;
}

SpaceSpec space_from_json(const json& j) {
    const std::string where = "space";
    const std::string kind = field<std::string>(j, "kind", where);
    const int dim = field<int>(j, "dim", where);
    if (kind == "lp") {
        require_keys(j, {"kind", "dim", "p"}, where);
        return SpaceSpec::lp(exponent_from_json(req(j, "p", where), where), dim);
    }
    if (kind == "lorentz") {
        require_keys(j, {"kind", "dim", "q", "w"}, where);
        return SpaceSpec::lorentz(exponent_from_json(req(j, "q", where), where),
                                  Weight(field<std::vector<double>>(j, "w", where)), dim);
    }
    if (kind == "weak_lorentz") {
        require_keys(j, {"kind", "dim", "w"}, where);
        return SpaceSpec::weak_lorentz(Weight(field<std::vector<double>>(j, "w", where)), dim);
    }
    if (kind == "mixed_z") {
        require_keys(j, {"kind", "dim", "p", "q", "inner"}, where);
        return SpaceSpec::mixed_z(exponent_from_json(req(j, "p", where), where),
                                  exponent_from_json(req(j, "q", where), where),
                                  field<int>(j, "inner", where), dim);
    }
    if (kind == "mixed_b") {
        require_keys(j, {"kind", "dim", "p", "q", "block_sizes"}, where);
        return SpaceSpec::mixed_b(exponent_from_json(req(j, "p", where), where),
                                  exponent_from_json(req(j, "q", where), where),
                                  field<std::vector<long long>>(j, "block_sizes", where), dim);
    }
    if (kind == "direct_sum_d") {
        require_keys(j, {"kind", "dim", "p", "q"}, where);
        return SpaceSpec::direct_sum_d(exponent_from_json(req(j, "p", where), where),
                                       exponent_from_json(req(j, "q", where), where), dim);
    }
    throw validation_error("space: unknown kind '" + kind + "'");
}

json to_json(const BasisRep& basis) {
    json j;
    switch (basis.kind()) {
        case BasisRep::Kind::UnitVectors:
            j["kind"] = "unit_vectors";
            j["space"] = to_json(basis.unit_space());
            break;
        case BasisRep::Kind::Difference:
            j["kind"] = "difference";
            j["p"] = exponent_to_json(basis.difference_exponent());
            j["dim"] = basis.dim();
            break;
        case BasisRep::Kind::Interleaved: {
            j["kind"] = "interleaved";
            json parts = json::array();
            for (const auto& part : basis.parts()) parts.push_back(to_json(part));
            j["parts"] = std::move(parts);
            break;
        }
        case BasisRep::Kind::Concatenated: {
            j["kind"] = "concatenated";
            json parts = json::array();
            for (const auto& part : basis.parts()) parts.push_back(to_json(part));
            j["parts"] = std::move(parts);
            j["outer"] = to_json(basis.outer_space());
            break;
        }
        case BasisRep::Kind::Dkk:
            j["kind"] = "dkk";
            j["space"] = to_json(*basis.dkk_space());
            break;
    }
    return j;
}

json to_json(const OrderedPartition& partition) {
    json j;
    j["sizes"] = partition.sizes();
    return j;
}

OrderedPartition partition_from_json(const json& j) {
    if (j.contains("sizes")) {
        require_keys(j, {"sizes"}, "partition");
        return OrderedPartition::from_sizes(field<std::vector<long long>>(j, "sizes", "partition"));
    }
    if (j.contains("concave")) {
        require_keys(j, {"concave", "r_max"}, "partition");
        return partition_from_concave(concave_from_json(req(j, "concave", "partition")),
                                      field<int>(j, "r_max", "partition"));
    }
    throw validation_error("partition: expected 'sizes' or 'concave'");
}

ConcaveSpec concave_from_json(const json& j) {
    const std::string where = "concave";
    const std::string form = field<std::string>(j, "form", where);
    const double base = field<double>(j, "base", where);
    if (form == "affine") {
        require_keys(j, {"form", "base", "a", "slope"}, where);
        return ConcaveSpec::affine(field<double>(j, "a", where), field<double>(j, "slope", where),
                                   base);
    }
    if (form == "power") {
        require_keys(j, {"form", "base", "alpha"}, where);
        return ConcaveSpec::power(field<double>(j, "alpha", where), base);
    }
    if (form == "log") {
        require_keys(j, {"form", "base"}, where);
        return ConcaveSpec::log_form(base);
    }
    throw validation_error("concave: unknown form '" + form + "'");
}

json to_json(const DkkSpace& space) {
    json j;
    j["s"] = to_json(space.symmetric_space());
    j["x"] = to_json(space.conditional_basis());
    j["sizes"] = space.partition().sizes();
    return j;
}

std::shared_ptr<DkkSpace> dkk_from_json(const json& j) {
    require_keys(j, {"s", "x", "sizes"}, "dkk");
    return std::make_shared<DkkSpace>(
        space_from_json(req(j, "s", "dkk")), basis_from_json(req(j, "x", "dkk")),
        OrderedPartition::from_sizes(field<std::vector<long long>>(j, "sizes", "dkk")));
}

BasisRep basis_from_json(const json& j) {
    const std::string where = "basis";
    const std::string kind = field<std::string>(j, "kind", where);
    if (kind == "unit_vectors") {
        require_keys(j, {"kind", "space"}, where);
        return BasisRep::unit_vectors(space_from_json(req(j, "space", where)));
    }
    if (kind == "difference") {
        require_keys(j, {"kind", "p", "dim"}, where);
        return BasisRep::difference(exponent_from_json(req(j, "p", where), where),
                                    field<int>(j, "dim", where));
    }
    if (kind == "interleaved") {
        require_keys(j, {"kind", "parts"}, where);
        std::vector<BasisRep> parts;
        for (const json& part : req(j, "parts", where)) parts.push_back(basis_from_json(part));
        return BasisRep::interleaved(std::move(parts));
    }
    if (kind == "concatenated") {
        require_keys(j, {"kind", "parts", "outer"}, where);
        std::vector<BasisRep> parts;
        for (const json& part : req(j, "parts", where)) parts.push_back(basis_from_json(part));
        return BasisRep::concatenated(std::move(parts), space_from_json(req(j, "outer", where)));
    }
    if (kind == "dkk") {
        require_keys(j, {"kind", "space"}, where);
        return BasisRep::dkk(dkk_from_json(req(j, "space", where)));
    }
    throw validation_error("basis: unknown kind '" + kind + "'");
}

namespace {

const char* witness_kind_name(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::NormOfVector:
            return "norm_of_vector";
        case WitnessKind::ProjectionRatio:
            return "projection_ratio";
        case WitnessKind::BetaRatio:
            return "beta_ratio";
        case WitnessKind::EtaRatio:
            return "eta_ratio";
        case WitnessKind::PairRatio:
            return "pair_ratio";
        case WitnessKind::LebesgueRatio:
            return "lebesgue_ratio";
    }
    return "?";
}

}  // namespace

json to_json(const ParamReport& report) {
    json j;
    j["name"] = report.name;
    j["mode"] = report.mode;
    j["kind"] = witness_kind_name(report.kind);
    if (report.q > 0.0) j["q"] = report.q;
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["m"] = row.m;
        r["value"] = row.value;
        r["f"] = row.f;
        if (!row.set.empty()) r["set"] = row.set;
        if (!row.g.empty()) r["g"] = row.g;
        if (!row.note.empty()) r["note"] = row.note;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    if (!report.reference.empty()) {
        json ref;
        for (const auto& [name, values] : report.reference) ref[name] = values;
        j["reference"] = std::move(ref);
    }
    return j;
}

ParamReport report_from_json(const json& j) {
    require_keys(j, {"name", "mode", "kind", "q", "rows", "reference"}, "report");
    ParamReport report;
    report.name = field<std::string>(j, "name", "report");
    report.mode = field<std::string>(j, "mode", "report");
    const std::string kind = field<std::string>(j, "kind", "report");
    bool known = false;
    for (WitnessKind k : {WitnessKind::NormOfVector, WitnessKind::ProjectionRatio,
                          WitnessKind::BetaRatio, WitnessKind::EtaRatio, WitnessKind::PairRatio,
                          WitnessKind::LebesgueRatio}) {
        if (kind == witness_kind_name(k)) {
            report.kind = k;
            known = true;
        }
    }
    if (!known) throw validation_error("report: unknown witness kind '" + kind + "'");
    if (j.contains("q")) report.q = j.at("q").get<double>();
    for (const json& r : req(j, "rows", "report")) {
        require_keys(r, {"m", "value", "f", "set", "g", "note"}, "report.rows");
        WitnessRow row;
        row.m = field<long long>(r, "m", "report.rows");
        row.value = field<double>(r, "value", "report.rows");
        row.f = field<Vec>(r, "f", "report.rows");
        if (r.contains("set")) row.set = r.at("set").get<std::vector<int>>();
        if (r.contains("g")) row.g = r.at("g").get<Vec>();
        if (r.contains("note")) row.note = r.at("note").get<std::string>();
        report.rows.push_back(std::move(row));
    }
    if (j.contains("reference"))
        for (const auto& item : j.at("reference").items())
            report.reference.emplace_back(item.key(), item.value().get<std::vector<double>>());
    return report;
}

json to_json(const GreedyRun& run) {
    json j;
    j["coefficients"] = run.coefficients;
    j["tie"] = run.tie == TieRule::LowestIndex ? "lowest-index" : "highest-index";
    if (!run.normer.empty()) j["normer"] = run.normer;
    json steps = json::array();
    for (const auto& step : run.steps) {
        json s;
        s["m"] = step.m;
        s["set"] = step.set.indices();
        s["residual"] = step.residual;
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    return j;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string greedy_run_csv(const GreedyRun& run) {
    std::string out = "m,set_size,residual\n";
    for (const auto& step : run.steps) {
        out += std::to_string(step.m) + "," + std::to_string(step.set.size()) + "," +
               format_double(step.residual) + "\n";
    }
    return out;
}

std::string report_csv(const ParamReport& report) {
    std::string out = "m,value,mode";
    for (const auto& [name, values] : report.reference) out += "," + name;
    out += "\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        out += std::to_string(row.m) + "," + format_double(row.value) + "," + report.mode;
        for (const auto& [name, values] : report.reference)
            out += "," + (i < values.size() ? format_double(values[i]) : std::string());
        out += "\n";
    }
    return out;
}

Normer normer_from_json(const json& j) {
    require_keys(j, {"space", "basis", "dkk"}, "normer");
    if (j.contains("space")) {
        SpaceSpec space = space_from_json(req(j, "space", "normer"));
        const int dim = space.dim();
        const std::string label = space.describe();
        NormFn fn = [space](std::span<const double> f) { return space.norm(f); };
        return {std::move(fn), dim, label};
    }
    if (j.contains("basis")) {
        BasisRep basis = basis_from_json(req(j, "basis", "normer"));
        return {basis.norm_fn(), basis.dim(), basis.describe()};
    }
    if (j.contains("dkk")) {
        auto space = dkk_from_json(req(j, "dkk", "normer"));
        BasisRep basis = BasisRep::dkk(space);
        return {basis.norm_fn(), basis.dim(), basis.describe()};
    }
    throw validation_error("normer: expected one of 'space', 'basis', 'dkk'");
}

std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_file(const std::filesystem::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << data;
}

}  // namespace greedylab::io
