#include "photodet/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "photodet/error.hpp"

namespace photodet::io {
namespace {

const Json& require(const Json& j, const char* key, const char* context) {
    if (!j.is_object()) {
        throw ValidationError(std::string(context) + ": expected a JSON object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError(std::string(context) + ": missing key '" + key + "'");
    }
    return *it;
}

double require_number(const Json& j, const char* key, const char* context) {
    const Json& v = require(j, key, context);
    if (!v.is_number()) {
        throw ValidationError(std::string(context) + ": '" + key + "' must be a number");
    }
    return v.get<double>();
}

std::int64_t require_integer(const Json& j, const char* key, const char* context) {
    const Json& v = require(j, key, context);
    if (v.is_number_integer()) {
        return v.get<std::int64_t>();
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d) && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
    }
    throw ValidationError(std::string(context) + ": '" + key + "' must be an integer");
}

std::vector<double> require_number_array(const Json& j, const char* key, const char* context) {
    const Json& v = require(j, key, context);
    if (!v.is_array()) {
        throw ValidationError(std::string(context) + ": '" + key + "' must be an array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const Json& x : v) {
        if (!x.is_number()) throw ValidationError(std::string(context) + ": '" + key + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

Json load_json_argument(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
        return parse_json(text);
    }
    std::ifstream in(text);
    if (!in) {
        throw ValidationError("cannot open JSON file '" + text + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

DetectorConfig detector_from_json(const Json& j) {
    DetectorConfig out;
    out.efficiency = require_number(j, "efficiency", "detector");
    const Json& noise = require(j, "noise", "detector");
    const Json& type = require(noise, "type", "detector.noise");
    if (!type.is_string()) throw ValidationError("detector.noise: 'type' must be a string");
    const double n_noise = require_number(noise, "n_noise", "detector.noise");
    const std::string kind = type.get<std::string>();
    if (kind == "poissonian") {
        out.noise = PoissonianLimit{n_noise};
    } else if (kind == "finite") {
        out.noise = FiniteModes{n_noise, require_integer(noise, "modes", "detector.noise")};
    } else {
        throw ValidationError("detector.noise: unknown type '" + kind + "'");
    }
    validate(out);
    return out;
}

Json to_json(const DetectorConfig& detector) {
    Json noise;
    if (const auto* finite = std::get_if<FiniteModes>(&detector.noise)) {
        noise = {{"type", "finite"}, {"n_noise", finite->n_noise}, {"modes", finite->modes}};
    } else {
        noise = {{"type", "poissonian"}, {"n_noise", mean_noise(detector.noise)}};
    }
    return {{"efficiency", detector.efficiency}, {"noise", noise}};
}

PhotonStatistics state_from_json(const Json& j) {
    const Json& type = require(j, "type", "state");
    if (!type.is_string()) throw ValidationError("state: 'type' must be a string");
    const std::string kind = type.get<std::string>();
    if (kind == "pmf") {
        const std::vector<double> p = require_number_array(j, "p", "state");
        bool renormalize = false;
        if (const auto it = j.find("renormalize"); it != j.end()) {
            if (!it->is_boolean()) throw ValidationError("state: 'renormalize' must be a boolean");
            renormalize = it->get<bool>();
        }
        PhotonStatistics out = pmf_from_values(p, renormalize);
        // A supplied bound wins unless it undercuts the missing mass beyond rounding.
        if (const auto it = j.find("tail_bound"); it != j.end() && it->is_number() && !renormalize) {
            const double given = it->get<double>();
            if (given >= 0.0 && given >= out.tail_bound - 1e-12) out.tail_bound = given;
        }
        return out;
    }
    if (kind == "coherent") return coherent_pmf(require_number(j, "param", "state"));
    if (kind == "thermal") return thermal_pmf(require_number(j, "param", "state"));
    if (kind == "fock") {
        const std::int64_t n = require_integer(j, "param", "state");
        return fock_pmf(n);
    }
    throw ValidationError("state: unknown type '" + kind + "'");
}

Json to_json(const PhotonStatistics& state) {
    return {{"type", "pmf"},
            {"p", state.pmf},
            {"renormalize", false},
            {"tail_bound", state.tail_bound},
            {"normalization_factor", state.normalization_factor}};
}

CountDistribution count_distribution_from_json(const Json& j) {
    CountDistribution out;
    out.pmf = require_number_array(j, "pmf", "counts");
    if (out.pmf.empty()) throw ValidationError("counts: 'pmf' must not be empty");
    for (double p : out.pmf) {
        if (!std::isfinite(p)) throw ValidationError("counts: probabilities must be finite");
    }
    if (const auto it = j.find("tail_bound"); it != j.end()) {
        if (!it->is_number()) throw ValidationError("counts: 'tail_bound' must be a number");
        out.tail_bound = it->get<double>();
    }
    if (const auto it = j.find("provenance"); it != j.end()) {
        if (!it->is_string()) throw ValidationError("counts: 'provenance' must be a string");
        out.provenance = provenance_from_string(it->get<std::string>());
    }
    return out;
}

Json to_json(const CountDistribution& counts) {
    Json out = {{"pmf", counts.pmf}, {"tail_bound", counts.tail_bound}, {"provenance", to_string(counts.provenance)}};
    if (!counts.warnings.empty()) out["warnings"] = counts.warnings;
    return out;
}

Json to_json(const ConditionalMatrix& matrix) {
    return {{"m_max", matrix.m_max},
            {"n_max", matrix.n_max},
            {"entries", matrix.entries},
            {"column_tail_bounds", matrix.column_tail_bounds},
            {"detector", to_json(matrix.detector)}};
}

Json to_json(const oracle::SampleHistogram& histogram) {
    Json bins = Json::object();
    for (const auto& [m, c] : histogram.counts) bins[std::to_string(m)] = c;
    return {{"seed", histogram.seed}, {"samples", histogram.total_samples}, {"histogram", bins}};
}

Json to_json(const InversionResult& result) {
    Json out = to_json(result.statistics);
    out["conditioning"] = result.conditioning;
    out["amplification"] = result.amplification;
    out["clip_residual"] = result.clip_residual;
    out["residual_norm"] = result.residual_norm;
    return out;
}

std::string dump(const Json& j) { return j.dump(); }

std::string csv_number(double x) { return fmt::format("{:.12g}", x); }

void write_csv(std::ostream& os, const CountDistribution& counts) {
    os << "m,P\n";
    for (std::size_t m = 0; m < counts.pmf.size(); ++m) os << m << ',' << csv_number(counts.pmf[m]) << '\n';
}

void write_csv(std::ostream& os, const ConditionalMatrix& matrix) {
    os << "m\\n";
    for (std::int64_t n = 0; n <= matrix.n_max; ++n) os << ',' << n;
    os << '\n';
    for (std::int64_t m = 0; m <= matrix.m_max; ++m) {
        os << m;
        for (std::int64_t n = 0; n <= matrix.n_max; ++n) os << ',' << csv_number(matrix(m, n));
        os << '\n';
    }
    os << "tail";
    for (double t : matrix.column_tail_bounds) os << ',' << csv_number(t);
    os << '\n';
}

void write_csv(std::ostream& os, const oracle::SampleHistogram& histogram) {
    os << "m,count\n";
    for (const auto& [m, c] : histogram.counts) os << m << ',' << c << '\n';
}

void write_csv(std::ostream& os, const PhotonStatistics& state) {
    os << "n,p\n";
    for (std::size_t n = 0; n < state.pmf.size(); ++n) os << n << ',' << csv_number(state.pmf[n]) << '\n';
}

}  // namespace photodet::io
