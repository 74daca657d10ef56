#include "photodet_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "photodet/photodet.hpp"

namespace photodet::cli {
namespace {

using io::Json;

enum class Format { Json, Csv };

struct Globals {
    std::string detector;
    std::string state;
    std::string format = "json";
    std::string out;

    Format fmt() const { return format == "csv" ? Format::Csv : Format::Json; }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

DetectorConfig require_detector(const Globals& g) {
    if (g.detector.empty()) throw UsageError("--detector is required");
    return io::detector_from_json(io::load_json_argument(g.detector));
}

PhotonStatistics require_state(const Globals& g) {
    if (g.state.empty()) throw UsageError("--state is required");
    return io::state_from_json(io::load_json_argument(g.state));
}

void warn(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

// "a:b" -> [a, b]
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const std::int64_t v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("malformed range '" + text + "', expected lo:hi");
    }
}

// "start:stop:count" -> count evenly spaced values
std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    try {
        if (parts.size() == 3) {
            const double start = std::stod(parts[0]);
            const double stop = std::stod(parts[1]);
            const long count = std::stol(parts[2]);
            if (count >= 1) {
                std::vector<double> out(static_cast<std::size_t>(count));
                for (long i = 0; i < count; ++i) {
                    out[static_cast<std::size_t>(i)] =
                        count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
                }
                return out;
            }
        }
    } catch (const std::exception&) {
    }
    throw UsageError("malformed grid '" + text + "', expected start:stop:count");
}

struct Rendered {
    std::string text;
};

Rendered render(const Json& j) { return {io::dump(j) + "\n"}; }

template <class T>
Rendered render_csv(const T& value) {
    std::ostringstream os;
    io::write_csv(os, value);
    return {os.str()};
}

Rendered render_scalar(double x, Format f) { return {(f == Format::Csv ? io::csv_number(x) : io::dump(Json(x))) + "\n"}; }

Rendered cmd_pcd(const Globals& g, std::optional<std::int64_t> m_max, std::ostream& err) {
    const CountDistribution c = count_distribution(require_state(g), require_detector(g), m_max);
    warn(err, c.warnings);
    return g.fmt() == Format::Csv ? render_csv(c) : render(io::to_json(c));
}

struct SymbolArgs {
    std::optional<double> intensity;
    std::string n_range;
    std::string intensity_grid;
    std::optional<std::int64_t> n;
};

Rendered cmd_povm_symbol(const Globals& g, const SymbolArgs& a) {
    const DetectorConfig d = require_detector(g);
    std::vector<std::pair<std::int64_t, double>> points;
    if (a.intensity && !a.n_range.empty() && a.intensity_grid.empty() && !a.n) {
        const auto [lo, hi] = parse_range(a.n_range);
        if (lo < 0 || hi < lo) throw UsageError("--n-range must satisfy 0 <= lo <= hi");
        for (std::int64_t n = lo; n <= hi; ++n) points.emplace_back(n, *a.intensity);
    } else if (!a.intensity_grid.empty() && a.n && !a.intensity && a.n_range.empty()) {
        for (double s : parse_grid(a.intensity_grid)) points.emplace_back(*a.n, s);
    } else {
        throw UsageError("povm-symbol needs either --intensity with --n-range, or --intensity-grid with --n");
    }
    if (g.fmt() == Format::Csv) {
        std::string text = "n,intensity,value\n";
        for (const auto& [n, s] : points) {
            text += fmt::format("{},{},{}\n", n, io::csv_number(s), io::csv_number(povm_symbol(n, s, d)));
        }
        return {text};
    }
    Json rows = Json::array();
    for (const auto& [n, s] : points) rows.push_back({{"n", n}, {"intensity", s}, {"value", povm_symbol(n, s, d)}});
    return render({{"detector", io::to_json(d)}, {"points", rows}});
}

Rendered cmd_condmat(const Globals& g, std::int64_t n_max, std::optional<std::int64_t> m_max) {
    const DetectorConfig d = require_detector(g);
    if (n_max < 0) throw ValidationError("condmat: --n-max must be >= 0");
    const std::int64_t rows = m_max ? *m_max : default_count_extent(moments(fock_pmf(n_max)), d);
    const ConditionalMatrix t = cond_matrix(d, n_max, rows);
    return g.fmt() == Format::Csv ? render_csv(t) : render(io::to_json(t));
}

Rendered cmd_moments(const Globals& g, std::ostream& err) {
    const StateMoments sm = moments(require_state(g));
    if (sm.truncation_warning) warn(err, {"state tail bound exceeds 1e-6; moments are truncated"});
    Json j = {{"mean_photons", sm.mean_photons}, {"normal_ordered_variance", sm.normal_ordered_variance}};
    if (!g.detector.empty()) {
        const DetectorConfig d = require_detector(g);
        j["count_mean"] = count_mean(sm, d);
        j["count_variance"] = count_variance(sm, d);
        j["mandel_q"] = count_mean(sm, d) > 0.0 ? Json(mandel_q(sm, d)) : Json(nullptr);
    }
    if (g.fmt() == Format::Csv) {
        std::string text = "quantity,value\n";
        for (const auto& [k, v] : j.items()) text += k + "," + (v.is_null() ? std::string() : io::csv_number(v.get<double>())) + "\n";
        return {text};
    }
    return render(j);
}

Rendered cmd_threshold(const Globals& g, double eta, std::int64_t modes) {
    const NoiseThreshold t = noise_threshold(moments(require_state(g)), eta, modes);
    if (std::holds_alternative<AlreadySuperPoissonian>(t)) {
        return {g.fmt() == Format::Csv ? "already-super-Poissonian\n" : "\"already-super-Poissonian\"\n"};
    }
    return render_scalar(std::get<double>(t), g.fmt());
}

struct InvertArgs {
    std::string method;
    std::string counts;
    std::optional<double> eta;
    std::optional<double> n_noise;
    std::optional<std::int64_t> n_max;
    bool nonneg = true;
    std::optional<double> max_conditioning;
};

Rendered cmd_invert(const Globals& g, const InvertArgs& a) {
    if (a.counts.empty()) throw UsageError("--counts is required");
    const CountDistribution counts = io::count_distribution_from_json(io::load_json_argument(a.counts));
    InversionResult r;
    if (a.method == "lossy") {
        if (!a.eta) throw UsageError("invert --method lossy needs --eta");
        LossyInversionOptions o;
        if (a.max_conditioning) o.max_conditioning = *a.max_conditioning;
        r = invert_lossy(counts, *a.eta, o);
    } else if (a.method == "unit-eff") {
        if (!a.n_noise) throw UsageError("invert --method unit-eff needs --n-noise");
        UnitEfficiencyInversionOptions o;
        if (a.max_conditioning) o.max_noise = *a.max_conditioning;
        r = invert_unit_efficiency(counts, *a.n_noise, o);
    } else {
        if (!a.n_max) throw UsageError("invert --method general needs --n-max");
        GeneralInversionOptions o;
        o.nonnegative = a.nonneg;
        if (a.max_conditioning) o.max_condition_number = *a.max_conditioning;
        r = invert_general(counts, require_detector(g), *a.n_max, o);
    }
    return g.fmt() == Format::Csv ? render_csv(r.statistics) : render(io::to_json(r));
}

struct SimulateArgs {
    double intensity = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    unsigned workers = 1;
};

Rendered cmd_simulate(const Globals& g, const SimulateArgs& a) {
    const oracle::SampleHistogram h = oracle::mc_sample_counts(SignalAmplitudes::from_intensity(a.intensity),
                                                               require_detector(g), a.samples, a.seed, a.workers);
    return g.fmt() == Format::Csv ? render_csv(h) : render(io::to_json(h));
}

void emit(const Globals& g, const Rendered& r, std::ostream& out) {
    if (g.out.empty()) {
        out << r.text;
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file '" + g.out + "'");
    file << r.text;
    if (!file) throw ValidationError("failed writing output file '" + g.out + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photodetection with sub-unit efficiency, dark counts and thermal background noise", "photodet"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--detector", g.detector, "Detector JSON (file path or inline)");
    app.add_option("--state", g.state, "Photon statistics JSON (file path or inline)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "Write output to this path instead of stdout");

    std::optional<std::int64_t> m_max;
    auto* pcd = app.add_subcommand("pcd", "Photocount distribution for a state and detector");
    pcd->add_option("--m-max", m_max, "Largest count kept (default from the count moments)");

    SymbolArgs symbol;
    auto* sym = app.add_subcommand("povm-symbol", "Husimi symbol of the POVM elements");
    sym->add_option("--intensity", symbol.intensity, "Total signal intensity sum |alpha|^2");
    sym->add_option("--n-range", symbol.n_range, "Count outcomes lo:hi");
    sym->add_option("--intensity-grid", symbol.intensity_grid, "Intensities start:stop:count");
    sym->add_option("--n", symbol.n, "Count outcome for --intensity-grid");

    std::int64_t cm_n_max = 0;
    std::optional<std::int64_t> cm_m_max;
    auto* condmat = app.add_subcommand("condmat", "Conditional probability matrix P(m|n)");
    condmat->add_option("--n-max", cm_n_max, "Largest photon number")->required();
    condmat->add_option("--m-max", cm_m_max, "Largest count (default from the n-max Fock state)");

    auto* mom = app.add_subcommand("moments", "State moments, and count moments and Mandel Q with --detector");

    double th_eta = 1.0;
    std::int64_t th_modes = 1;
    auto* threshold = app.add_subcommand("threshold", "Noise level at which the counts turn super-Poissonian");
    threshold->add_option("--eta", th_eta, "Efficiency")->required();
    threshold->add_option("--modes", th_modes, "Number of thermal modes")->required();

    InvertArgs inv;
    auto* invert = app.add_subcommand("invert", "Recover photon statistics from count statistics");
    invert->add_option("--method", inv.method, "Inversion method")
        ->required()
        ->check(CLI::IsMember({"lossy", "unit-eff", "general"}));
    invert->add_option("--counts", inv.counts, "Count distribution JSON (file path or inline)")->required();
    invert->add_option("--eta", inv.eta, "Efficiency (lossy)");
    invert->add_option("--n-noise", inv.n_noise, "Mean noise counts (unit-eff)");
    invert->add_option("--n-max", inv.n_max, "Largest photon number (general)");
    invert->add_flag("--nonneg,!--no-nonneg", inv.nonneg, "Constrain p >= 0, sum p <= 1 (general, default on)");
    invert->add_option("--max-conditioning", inv.max_conditioning, "Override the method's refusal bound");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo photocount histogram (finite-mode detector)");
    simulate->add_option("--intensity", sim.intensity, "Total signal intensity sum |alpha|^2");
    simulate->add_option("--seed", sim.seed, "Random seed");
    simulate->add_option("--samples", sim.samples, "Number of samples")->check(CLI::PositiveNumber);
    simulate->add_option("--workers", sim.workers, "Worker threads (output does not depend on it)")
        ->check(CLI::Range(1u, 1024u));

    double bandwidth = 0.0;
    double detection_time = 0.0;
    auto* mode_count = app.add_subcommand("mode-count", "Thermal mode count from bandwidth and detection time");
    mode_count->add_option("--bandwidth", bandwidth, "Bandwidth in Hz")->required();
    mode_count->add_option("--time", detection_time, "Detection time in s")->required();

    double ct_noise = 0.0;
    double ct_bandwidth = 0.0;
    auto* crit_time = app.add_subcommand("crit-time", "Detection time above which Poissonian noise is adequate");
    crit_time->add_option("--n-noise", ct_noise, "Mean noise counts")->required();
    crit_time->add_option("--bandwidth", ct_bandwidth, "Bandwidth in Hz")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << "photodet 0.1.0\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n';
        return 1;
    }

    try {
        Rendered r;
        if (*pcd) r = cmd_pcd(g, m_max, err);
        else if (*sym) r = cmd_povm_symbol(g, symbol);
        else if (*condmat) r = cmd_condmat(g, cm_n_max, cm_m_max);
        else if (*mom) r = cmd_moments(g, err);
        else if (*threshold) r = cmd_threshold(g, th_eta, th_modes);
        else if (*invert) r = cmd_invert(g, inv);
        else if (*simulate) r = cmd_simulate(g, sim);
        else if (*mode_count) r = {std::to_string(estimate_mode_count({bandwidth, detection_time})) + "\n"};
        else r = render_scalar(critical_detection_time(ct_noise, ct_bandwidth), g.fmt());
        emit(g, r, out);
        return 0;
    } catch (const UsageError& e) {
        err << "error: usage: " << e.what() << '\n';
        return 1;
    } catch (const ValidationError& e) {
        err << "error: validation: " << e.what() << '\n';
        return 1;
    } catch (const RefusalError& e) {
        err << "error: " << to_string(e.reason()) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace photodet::cli
