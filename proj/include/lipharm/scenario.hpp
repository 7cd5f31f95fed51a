#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lipharm/extension.hpp"
#include "lipharm/geometry.hpp"
#include "lipharm/harmonic.hpp"
#include "lipharm/hoelder.hpp"

namespace lipharm {

using json = nlohmann::ordered_json;

/// Dirichlet data selector for poisson / wos fields.
struct DataSpec {
    std::string kind = "constant"; // constant | indicator-first-positive |
                                   // abs-power | pole-trace
    double value = 1.0;            // constant c, or the abs-power exponent
    std::vector<double> pole;      // pole-trace
};

struct FieldSpec {
    std::string kind = "separable-exp"; // constant | separable-exp | pole |
                                        // harmonic-measure |
                                        // poisson-quadrature | wos
    double value = 0.0;                 // constant
    std::vector<double> pole;           // pole
    DataSpec data;                      // poisson-quadrature, wos
    PoissonRule poisson;                // poisson-quadrature
};

struct ExtensionSpec {
    std::size_t n_pairs = 1000;
    std::uint64_t seed = 11;
};

/// One verification run, fully determined: domain, field, exponent,
/// samplers, WoS and extension parameters, tolerances. Strict schema:
/// unknown keys are rejected at parse time.
struct ScenarioConfig {
    int version = 1;

    // domain
    std::string domain_kind = "affine"; // affine | abs-cone |
                                        // piecewise-linear | tabulated
    int dim = 2;
    std::vector<double> slope{0.0};     // affine
    double offset = 0.0;                // affine
    double cone_slope = 1.0;            // abs-cone
    std::vector<double> knots_x, knots_y; // piecewise-linear
    double table_x0 = 0.0, table_dx = 1.0; // tabulated
    std::vector<double> table_values;

    FieldSpec field;
    double alpha = 0.5;
    TheoremSamplers samplers = TheoremSamplers::standard(2);
    WosParams wos;
    std::vector<double> wos_point{0.0, 1.0};
    ExtensionSpec extension;
    double tolerance = 1e-9;
    double inflation = 1.2;
};

/// Parse/emit; parse(emit(c)) reproduces c and emit is canonical, so
/// configs and reports round-trip byte-identically.
ScenarioConfig parse_scenario(const json& j);
ScenarioConfig load_scenario(const std::string& path); // config_error on failure
json scenario_json(const ScenarioConfig& config);

LipschitzGraph build_graph(const ScenarioConfig& config);
EpigraphDomain build_domain(const ScenarioConfig& config);
HarmonicField build_field(const ScenarioConfig& config,
                          const EpigraphDomain& domain);
BoundaryData build_data(const DataSpec& spec, const EpigraphDomain& domain);

/// Round to 12 significant digits; every serialized double goes through
/// this so reports are byte-stable.
double round_sig(double x);

/// Canonical dump: 2-space indent, trailing newline.
std::string dump_json(const json& j);

json constants_json(const ConstantBundle& bundle);
json estimate_json(const SeminormEstimate& estimate);
json report_json(const TheoremReport& report);
json gehring_martio_json(const GehringMartioRecord& record);
std::string gehring_martio_csv(const GehringMartioRecord& record);
json wos_json(const WosEstimate& estimate);

struct RunOptions {
    std::optional<std::uint64_t> seed; // overrides every seed in the config
    int workers = 0;                   // 0: library defaults
};

json run_constants(int dim, double alpha, double lip, double c_vertical);
std::pair<json, bool> run_verify(const ScenarioConfig& config,
                                 const RunOptions& options = {});
json run_seminorm(const ScenarioConfig& config, SeminormMode mode,
                  const RunOptions& options = {});
std::pair<json, std::string> run_extension(const ScenarioConfig& config,
                                           const RunOptions& options = {});
json run_wos(const ScenarioConfig& config, const RunOptions& options = {});

} // namespace lipharm
