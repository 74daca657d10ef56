#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "photodet/inversion.hpp"
#include "photodet/model.hpp"
#include "photodet/oracle.hpp"
#include "photodet/povm.hpp"
#include "photodet/states.hpp"
#include "photodet/statistics.hpp"

// JSON and CSV formats shared by the CLI and external tools. Parsing
// failures throw ValidationError.
namespace photodet::io {

using Json = nlohmann::json;

/// Parses `text` as inline JSON when it starts with '{' or '[', otherwise
/// reads it as a file path.
Json load_json_argument(const std::string& text);
Json parse_json(const std::string& text);

// {"efficiency": e, "noise": {"type": "poissonian"|"finite", "n_noise": x, "modes": k}}
DetectorConfig detector_from_json(const Json& j);
Json to_json(const DetectorConfig& detector);

// {"type": "pmf", "p": [...], "renormalize": bool} or
// {"type": "coherent"|"fock"|"thermal", "param": x}
PhotonStatistics state_from_json(const Json& j);
/// Emits the "pmf" state form; extra diagnostic keys are ignored on reading.
Json to_json(const PhotonStatistics& state);

// {"pmf": [...], "tail_bound": x, "provenance": "analytic-series"|"oracle-mc"|"oracle-fock"}
CountDistribution count_distribution_from_json(const Json& j);
Json to_json(const CountDistribution& counts);

// {"m_max": M, "n_max": N, "entries": [row-major], "column_tail_bounds": [...]}
Json to_json(const ConditionalMatrix& matrix);

// {"seed": s, "samples": n, "histogram": {"m": count}}
Json to_json(const oracle::SampleHistogram& histogram);

Json to_json(const InversionResult& result);

/// Dumps with the shortest representation that round-trips every double.
std::string dump(const Json& j);

/// CSV number formatting, 12 significant digits.
std::string csv_number(double x);

void write_csv(std::ostream& os, const CountDistribution& counts);
/// Header "m\n,0,1,...", one row per m, and a final "tail" row.
void write_csv(std::ostream& os, const ConditionalMatrix& matrix);
void write_csv(std::ostream& os, const oracle::SampleHistogram& histogram);
void write_csv(std::ostream& os, const PhotonStatistics& state);

}  // namespace photodet::io
