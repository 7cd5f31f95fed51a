#include "lipharm/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>

#include "lipharm/errors.hpp"
#include "lipharm/rng.hpp"

namespace lipharm {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw config_error("config: " + where + ": " + what);
}

const json& as_object(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    return j;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) fail(where, "unknown key '" + item.key() + "'");
    }
}

double read_double(const json& obj, const std::string& where, const char* key,
                   double dflt) {
    auto it = obj.find(key);
    if (it == obj.end()) return dflt;
    if (!it->is_number()) fail(where + "." + key, "expected a number");
    return it->get<double>();
}

std::uint64_t read_count(const json& obj, const std::string& where,
                         const char* key, std::uint64_t dflt) {
    auto it = obj.find(key);
    if (it == obj.end()) return dflt;
    if (!it->is_number_unsigned()) {
        fail(where + "." + key, "expected a nonnegative integer");
    }
    return it->get<std::uint64_t>();
}

int read_int(const json& obj, const std::string& where, const char* key,
             int dflt) {
    auto it = obj.find(key);
    if (it == obj.end()) return dflt;
    if (!it->is_number_integer()) fail(where + "." + key, "expected an integer");
    return it->get<int>();
}

std::string read_string(const json& obj, const std::string& where,
                        const char* key, const std::string& dflt) {
    auto it = obj.find(key);
    if (it == obj.end()) return dflt;
    if (!it->is_string()) fail(where + "." + key, "expected a string");
    return it->get<std::string>();
}

std::vector<double> read_vector(const json& obj, const std::string& where,
                                const char* key, std::vector<double> dflt) {
    auto it = obj.find(key);
    if (it == obj.end()) return dflt;
    if (!it->is_array()) fail(where + "." + key, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_number()) fail(where + "." + key, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

json empty_object() { return json::object(); }

json child(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) return empty_object();
    return as_object(*it, where + "." + std::string(key));
}

DataSpec parse_data(const json& obj, const std::string& where) {
    check_keys(obj, where, {"kind", "value", "pole"});
    DataSpec spec;
    spec.kind = read_string(obj, where, "kind", spec.kind);
    if (spec.kind != "constant" && spec.kind != "indicator-first-positive" &&
        spec.kind != "abs-power" && spec.kind != "pole-trace") {
        fail(where + ".kind", "unknown data kind '" + spec.kind + "'");
    }
    spec.value = read_double(obj, where, "value", spec.value);
    spec.pole = read_vector(obj, where, "pole", spec.pole);
    if (spec.kind == "pole-trace" && spec.pole.empty()) {
        fail(where, "pole-trace data needs a pole");
    }
    if (spec.kind == "abs-power" &&
        !(spec.value > 0.0 && spec.value <= 1.0)) {
        fail(where + ".value", "abs-power exponent must lie in (0,1]");
    }
    return spec;
}

json data_json(const DataSpec& spec) {
    json j = json::object();
    j["kind"] = spec.kind;
    if (spec.kind == "constant" || spec.kind == "abs-power") {
        j["value"] = round_sig(spec.value);
    }
    if (spec.kind == "pole-trace") {
        json pole = json::array();
        for (double c : spec.pole) pole.push_back(round_sig(c));
        j["pole"] = pole;
    }
    return j;
}

json vector_json(const std::vector<double>& v) {
    json a = json::array();
    for (double c : v) a.push_back(round_sig(c));
    return a;
}

json point_json(const Point& p) { return vector_json(p.coords()); }

void apply_overrides(ScenarioConfig& config, const RunOptions& options) {
    if (options.seed) {
        config.samplers.interior.seed = mix_seed(*options.seed, 1);
        config.samplers.pairs.seed = mix_seed(*options.seed, 2);
        config.wos.seed = mix_seed(*options.seed, 3);
        config.extension.seed = mix_seed(*options.seed, 4);
    }
    if (options.workers > 0) config.wos.workers = options.workers;
}

/// Dirichlet data a wos-eval run should use for the configured field: the
/// field's own data when it is defined by one, its boundary restriction
/// otherwise.
BoundaryData wos_data_for(const ScenarioConfig& config,
                          const EpigraphDomain& domain) {
    const FieldSpec& f = config.field;
    if (f.kind == "wos" || f.kind == "poisson-quadrature") {
        return build_data(f.data, domain);
    }
    if (f.kind == "constant") return BoundaryData::constant(f.value);
    if (f.kind == "harmonic-measure") {
        return BoundaryData::indicator_first_positive();
    }
    return boundary_trace(build_field(config, domain), domain);
}

} // namespace

ScenarioConfig parse_scenario(const json& root) {
    as_object(root, "top level");
    check_keys(root, "top level",
               {"version", "domain", "field", "alpha", "samplers", "wos",
                "extension", "tolerance", "inflation"});
    if (!root.contains("version")) fail("top level", "missing 'version'");
    if (read_int(root, "top level", "version", 0) != 1) {
        fail("version", "only version 1 is understood");
    }

    ScenarioConfig c;

    json dom = child(root, "top level", "domain");
    c.domain_kind = read_string(dom, "domain", "kind", c.domain_kind);
    c.dim = read_int(dom, "domain", "dim", c.dim);
    if (c.dim < 2) fail("domain.dim", "dimension must be >= 2");
    if (c.domain_kind == "affine") {
        check_keys(dom, "domain", {"kind", "dim", "slope", "offset"});
        c.slope = read_vector(dom, "domain", "slope",
                              std::vector<double>(static_cast<std::size_t>(c.dim - 1), 0.0));
        if (static_cast<int>(c.slope.size()) != c.dim - 1) {
            fail("domain.slope", "needs dim - 1 entries");
        }
        c.offset = read_double(dom, "domain", "offset", c.offset);
    } else if (c.domain_kind == "abs-cone") {
        check_keys(dom, "domain", {"kind", "dim", "cone_slope"});
        c.cone_slope = read_double(dom, "domain", "cone_slope", c.cone_slope);
        if (!(c.cone_slope >= 0.0)) fail("domain.cone_slope", "must be >= 0");
    } else if (c.domain_kind == "piecewise-linear") {
        check_keys(dom, "domain", {"kind", "dim", "knots_x", "knots_y"});
        if (c.dim != 2) fail("domain", "piecewise-linear graphs are planar (dim 2)");
        c.knots_x = read_vector(dom, "domain", "knots_x", {});
        c.knots_y = read_vector(dom, "domain", "knots_y", {});
        if (c.knots_x.size() < 2 || c.knots_x.size() != c.knots_y.size()) {
            fail("domain", "knots_x and knots_y need equal length >= 2");
        }
    } else if (c.domain_kind == "tabulated") {
        check_keys(dom, "domain", {"kind", "dim", "x0", "dx", "values"});
        if (c.dim != 2) fail("domain", "tabulated graphs are planar (dim 2)");
        c.table_x0 = read_double(dom, "domain", "x0", c.table_x0);
        c.table_dx = read_double(dom, "domain", "dx", c.table_dx);
        if (!(c.table_dx > 0.0)) fail("domain.dx", "must be > 0");
        c.table_values = read_vector(dom, "domain", "values", {});
        if (c.table_values.size() < 2) fail("domain.values", "needs >= 2 entries");
    } else {
        fail("domain.kind", "unknown domain kind '" + c.domain_kind + "'");
    }

    json fld = child(root, "top level", "field");
    c.field.kind = read_string(fld, "field", "kind", c.field.kind);
    const std::string& fk = c.field.kind;
    if (fk == "constant") {
        check_keys(fld, "field", {"kind", "value"});
        c.field.value = read_double(fld, "field", "value", c.field.value);
    } else if (fk == "separable-exp") {
        check_keys(fld, "field", {"kind"});
    } else if (fk == "pole") {
        check_keys(fld, "field", {"kind", "pole"});
        c.field.pole = read_vector(fld, "field", "pole", {});
        if (static_cast<int>(c.field.pole.size()) != c.dim) {
            fail("field.pole", "needs dim entries");
        }
    } else if (fk == "harmonic-measure") {
        check_keys(fld, "field", {"kind"});
        if (c.dim != 2) fail("field", "harmonic-measure is planar (dim 2)");
    } else if (fk == "poisson-quadrature") {
        check_keys(fld, "field", {"kind", "data", "poisson"});
        if (c.dim != 2) fail("field", "poisson-quadrature is planar (dim 2)");
        c.field.data = parse_data(child(fld, "field", "data"), "field.data");
        json pr = child(fld, "field", "poisson");
        check_keys(pr, "field.poisson", {"window", "nodes_per_panel", "min_height"});
        c.field.poisson.window =
            read_double(pr, "field.poisson", "window", c.field.poisson.window);
        c.field.poisson.nodes_per_panel = read_int(
            pr, "field.poisson", "nodes_per_panel", c.field.poisson.nodes_per_panel);
        c.field.poisson.min_height = read_double(pr, "field.poisson", "min_height",
                                                 c.field.poisson.min_height);
        if (!(c.field.poisson.window > 0.0)) fail("field.poisson.window", "must be > 0");
        if (!(c.field.poisson.min_height > 0.0)) {
            fail("field.poisson.min_height", "must be > 0");
        }
    } else if (fk == "wos") {
        check_keys(fld, "field", {"kind", "data"});
        c.field.data = parse_data(child(fld, "field", "data"), "field.data");
    } else {
        fail("field.kind", "unknown field kind '" + fk + "'");
    }

    c.alpha = read_double(root, "top level", "alpha", c.alpha);
    if (!(c.alpha > 0.0) || !(c.alpha < 1.0)) fail("alpha", "must lie in (0,1)");
    c.tolerance = read_double(root, "top level", "tolerance", c.tolerance);
    if (!(c.tolerance >= 0.0)) fail("tolerance", "must be >= 0");
    c.inflation = read_double(root, "top level", "inflation", c.inflation);
    if (!(c.inflation >= 1.0)) fail("inflation", "must be >= 1");

    c.samplers = TheoremSamplers::standard(c.dim);
    json sam = child(root, "top level", "samplers");
    check_keys(sam, "samplers", {"box", "vertical", "interior", "pairs"});
    json box = child(sam, "samplers", "box");
    check_keys(box, "samplers.box", {"lo", "hi", "height_lo", "height_hi"});
    SampleBox sb = c.samplers.interior.box;
    sb.horizontal.lo = read_vector(box, "samplers.box", "lo", sb.horizontal.lo);
    sb.horizontal.hi = read_vector(box, "samplers.box", "hi", sb.horizontal.hi);
    if (static_cast<int>(sb.horizontal.lo.size()) != c.dim - 1 ||
        static_cast<int>(sb.horizontal.hi.size()) != c.dim - 1) {
        fail("samplers.box", "lo and hi need dim - 1 entries");
    }
    sb.height_lo = read_double(box, "samplers.box", "height_lo", sb.height_lo);
    sb.height_hi = read_double(box, "samplers.box", "height_hi", sb.height_hi);
    if (!(sb.height_lo > 0.0) || !(sb.height_hi > sb.height_lo)) {
        fail("samplers.box", "heights need 0 < height_lo < height_hi");
    }
    c.samplers.vertical.box = sb;
    c.samplers.interior.box = sb;
    c.samplers.pairs.box = sb;

    json ver = child(sam, "samplers", "vertical");
    check_keys(ver, "samplers.vertical", {"n_magnitudes", "n_heights", "xp_floor"});
    c.samplers.vertical.n_magnitudes = read_int(ver, "samplers.vertical",
                                                "n_magnitudes",
                                                c.samplers.vertical.n_magnitudes);
    c.samplers.vertical.n_heights =
        read_int(ver, "samplers.vertical", "n_heights", c.samplers.vertical.n_heights);
    c.samplers.vertical.xp_floor =
        read_double(ver, "samplers.vertical", "xp_floor", c.samplers.vertical.xp_floor);
    if (c.samplers.vertical.n_magnitudes < 1 || c.samplers.vertical.n_heights < 2) {
        fail("samplers.vertical", "needs n_magnitudes >= 1 and n_heights >= 2");
    }

    json inter = child(sam, "samplers", "interior");
    check_keys(inter, "samplers.interior", {"n_points", "seed", "xp_floor"});
    c.samplers.interior.n_points = read_count(inter, "samplers.interior", "n_points",
                                              c.samplers.interior.n_points);
    c.samplers.interior.seed =
        read_count(inter, "samplers.interior", "seed", c.samplers.interior.seed);
    c.samplers.interior.xp_floor = read_double(inter, "samplers.interior", "xp_floor",
                                               c.samplers.interior.xp_floor);
    if (c.samplers.interior.n_points < 1) {
        fail("samplers.interior.n_points", "must be >= 1");
    }

    json prs = child(sam, "samplers", "pairs");
    check_keys(prs, "samplers.pairs",
               {"n_pairs", "seed", "xp_floor", "sep_lo", "sep_hi"});
    c.samplers.pairs.n_pairs =
        read_count(prs, "samplers.pairs", "n_pairs", c.samplers.pairs.n_pairs);
    c.samplers.pairs.seed =
        read_count(prs, "samplers.pairs", "seed", c.samplers.pairs.seed);
    c.samplers.pairs.xp_floor =
        read_double(prs, "samplers.pairs", "xp_floor", c.samplers.pairs.xp_floor);
    c.samplers.pairs.sep_lo =
        read_double(prs, "samplers.pairs", "sep_lo", c.samplers.pairs.sep_lo);
    c.samplers.pairs.sep_hi =
        read_double(prs, "samplers.pairs", "sep_hi", c.samplers.pairs.sep_hi);
    if (c.samplers.pairs.n_pairs < 1) fail("samplers.pairs.n_pairs", "must be >= 1");
    if (!(c.samplers.pairs.sep_lo > 0.0) ||
        !(c.samplers.pairs.sep_hi > c.samplers.pairs.sep_lo)) {
        fail("samplers.pairs", "needs 0 < sep_lo < sep_hi");
    }

    json wos = child(root, "top level", "wos");
    check_keys(wos, "wos",
               {"epsilon", "far_cutoff", "far_value", "max_steps", "n_walks",
                "seed", "point"});
    c.wos.epsilon = read_double(wos, "wos", "epsilon", c.wos.epsilon);
    if (!(c.wos.epsilon > 0.0)) fail("wos.epsilon", "must be > 0");
    c.wos.far_cutoff = read_double(wos, "wos", "far_cutoff", c.wos.far_cutoff);
    c.wos.far_value = read_double(wos, "wos", "far_value", c.wos.far_value);
    c.wos.max_steps = read_count(wos, "wos", "max_steps", c.wos.max_steps);
    c.wos.n_walks = read_count(wos, "wos", "n_walks", c.wos.n_walks);
    if (c.wos.max_steps < 1 || c.wos.n_walks < 1) {
        fail("wos", "max_steps and n_walks must be >= 1");
    }
    c.wos.seed = read_count(wos, "wos", "seed", c.wos.seed);
    std::vector<double> default_point(static_cast<std::size_t>(c.dim), 0.0);
    default_point.back() = 1.0;
    c.wos_point = read_vector(wos, "wos", "point", default_point);
    if (static_cast<int>(c.wos_point.size()) != c.dim) {
        fail("wos.point", "needs dim entries");
    }

    json ext = child(root, "top level", "extension");
    check_keys(ext, "extension", {"n_pairs", "seed"});
    c.extension.n_pairs =
        read_count(ext, "extension", "n_pairs", c.extension.n_pairs);
    if (c.extension.n_pairs < 1) fail("extension.n_pairs", "must be >= 1");
    c.extension.seed = read_count(ext, "extension", "seed", c.extension.seed);

    return c;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw config_error("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_scenario(j);
}

json scenario_json(const ScenarioConfig& c) {
    json root = json::object();
    root["version"] = c.version;

    json dom = json::object();
    dom["kind"] = c.domain_kind;
    dom["dim"] = c.dim;
    if (c.domain_kind == "affine") {
        dom["slope"] = vector_json(c.slope);
        dom["offset"] = round_sig(c.offset);
    } else if (c.domain_kind == "abs-cone") {
        dom["cone_slope"] = round_sig(c.cone_slope);
    } else if (c.domain_kind == "piecewise-linear") {
        dom["knots_x"] = vector_json(c.knots_x);
        dom["knots_y"] = vector_json(c.knots_y);
    } else if (c.domain_kind == "tabulated") {
        dom["x0"] = round_sig(c.table_x0);
        dom["dx"] = round_sig(c.table_dx);
        dom["values"] = vector_json(c.table_values);
    }
    root["domain"] = dom;

    json fld = json::object();
    fld["kind"] = c.field.kind;
    if (c.field.kind == "constant") fld["value"] = round_sig(c.field.value);
    if (c.field.kind == "pole") fld["pole"] = vector_json(c.field.pole);
    if (c.field.kind == "poisson-quadrature" || c.field.kind == "wos") {
        fld["data"] = data_json(c.field.data);
    }
    if (c.field.kind == "poisson-quadrature") {
        json pr = json::object();
        pr["window"] = round_sig(c.field.poisson.window);
        pr["nodes_per_panel"] = c.field.poisson.nodes_per_panel;
        pr["min_height"] = round_sig(c.field.poisson.min_height);
        fld["poisson"] = pr;
    }
    root["field"] = fld;

    root["alpha"] = round_sig(c.alpha);

    json sam = json::object();
    const SampleBox& sb = c.samplers.interior.box;
    json box = json::object();
    box["lo"] = vector_json(sb.horizontal.lo);
    box["hi"] = vector_json(sb.horizontal.hi);
    box["height_lo"] = round_sig(sb.height_lo);
    box["height_hi"] = round_sig(sb.height_hi);
    sam["box"] = box;
    json ver = json::object();
    ver["n_magnitudes"] = c.samplers.vertical.n_magnitudes;
    ver["n_heights"] = c.samplers.vertical.n_heights;
    ver["xp_floor"] = round_sig(c.samplers.vertical.xp_floor);
    sam["vertical"] = ver;
    json inter = json::object();
    inter["n_points"] = c.samplers.interior.n_points;
    inter["seed"] = c.samplers.interior.seed;
    inter["xp_floor"] = round_sig(c.samplers.interior.xp_floor);
    sam["interior"] = inter;
    json prs = json::object();
    prs["n_pairs"] = c.samplers.pairs.n_pairs;
    prs["seed"] = c.samplers.pairs.seed;
    prs["xp_floor"] = round_sig(c.samplers.pairs.xp_floor);
    prs["sep_lo"] = round_sig(c.samplers.pairs.sep_lo);
    prs["sep_hi"] = round_sig(c.samplers.pairs.sep_hi);
    sam["pairs"] = prs;
    root["samplers"] = sam;

    json wos = json::object();
    wos["epsilon"] = round_sig(c.wos.epsilon);
    wos["far_cutoff"] = round_sig(c.wos.far_cutoff);
    wos["far_value"] = round_sig(c.wos.far_value);
    wos["max_steps"] = c.wos.max_steps;
    wos["n_walks"] = c.wos.n_walks;
    wos["seed"] = c.wos.seed;
    wos["point"] = vector_json(c.wos_point);
    root["wos"] = wos;

    json ext = json::object();
    ext["n_pairs"] = c.extension.n_pairs;
    ext["seed"] = c.extension.seed;
    root["extension"] = ext;

    root["tolerance"] = round_sig(c.tolerance);
    root["inflation"] = round_sig(c.inflation);
    return root;
}

LipschitzGraph build_graph(const ScenarioConfig& c) {
    if (c.domain_kind == "affine") return LipschitzGraph::affine(c.slope, c.offset);
    if (c.domain_kind == "abs-cone") {
        return LipschitzGraph::abs_cone(c.cone_slope, c.dim - 1);
    }
    if (c.domain_kind == "piecewise-linear") {
        return LipschitzGraph::piecewise_linear(c.knots_x, c.knots_y);
    }
    if (c.domain_kind == "tabulated") {
        return LipschitzGraph::tabulated(c.table_x0, c.table_dx, c.table_values);
    }
    throw config_error("config: domain.kind: unknown domain kind '" +
                       c.domain_kind + "'");
}

EpigraphDomain build_domain(const ScenarioConfig& c) {
    return EpigraphDomain(build_graph(c));
}

BoundaryData build_data(const DataSpec& spec, const EpigraphDomain& domain) {
    if (spec.kind == "constant") return BoundaryData::constant(spec.value);
    if (spec.kind == "indicator-first-positive") {
        return BoundaryData::indicator_first_positive();
    }
    if (spec.kind == "abs-power") return BoundaryData::abs_power(spec.value);
    if (spec.kind == "pole-trace") {
        if (static_cast<int>(spec.pole.size()) != domain.dim()) {
            throw config_error("config: data pole needs dim entries");
        }
        HarmonicField pole = make_pole_field(domain, Point(spec.pole));
        return boundary_trace(pole, domain);
    }
    throw config_error("config: unknown data kind '" + spec.kind + "'");
}

HarmonicField build_field(const ScenarioConfig& c, const EpigraphDomain& domain) {
    const FieldSpec& f = c.field;
    if (f.kind == "constant") {
        double v = f.value;
        auto shared = std::make_shared<const EpigraphDomain>(domain);
        return HarmonicField::custom(
            "constant", c.dim, [v](const Point&) { return v; },
            [n = c.dim](const Point&) {
                return std::vector<double>(static_cast<std::size_t>(n), 0.0);
            },
            std::abs(v), shared);
    }
    if (f.kind == "separable-exp") return make_separable_exp(c.dim);
    if (f.kind == "pole") return make_pole_field(domain, Point(f.pole));
    if (f.kind == "harmonic-measure") return make_harmonic_measure_2d();
    if (f.kind == "poisson-quadrature") {
        return make_poisson_extension(build_data(f.data, domain), f.poisson);
    }
    if (f.kind == "wos") {
        auto shared = std::make_shared<const EpigraphDomain>(domain);
        return make_wos_field(shared, build_data(f.data, *shared), c.wos);
    }
    throw config_error("config: unknown field kind '" + f.kind + "'");
}

double round_sig(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json constants_json(const ConstantBundle& b) {
    json j = json::object();
    j["dim"] = b.dim;
    j["alpha"] = round_sig(b.alpha);
    j["lip"] = round_sig(b.lip);
    j["c_vertical"] = round_sig(b.c_vertical);
    j["k_n"] = round_sig(b.k_n);
    j["gamma_star"] = round_sig(b.gamma_star);
    j["cone_cos"] = round_sig(b.cone_cos);
    j["c1"] = round_sig(b.c1);
    j["c1_paper"] = round_sig(b.c1_paper);
    j["c2"] = round_sig(b.c2);
    j["c3"] = round_sig(b.c3);
    return j;
}

json estimate_json(const SeminormEstimate& e) {
    json j = json::object();
    j["mode"] = to_string(e.mode);
    j["alpha"] = round_sig(e.alpha);
    j["value"] = round_sig(e.value);
    j["n_samples"] = e.n_samples;
    j["witness_x"] = point_json(e.witness_x);
    j["witness_y"] = point_json(e.witness_y);
    return j;
}

json report_json(const TheoremReport& r) {
    json j = json::object();
    j["alpha"] = round_sig(r.alpha);
    j["tol"] = round_sig(r.tol);
    j["inflation"] = round_sig(r.inflation);
    j["c_vertical_hat"] = round_sig(r.c_vertical_hat);
    j["vertical_estimate"] = estimate_json(r.vertical_estimate);
    j["constants"] = constants_json(r.bundle);
    j["constants_raw"] = constants_json(r.bundle_raw);
    j["weighted_vertical"] = round_sig(r.weighted_vertical);
    j["weighted_gradient"] = round_sig(r.weighted_gradient);
    j["global_estimate"] = estimate_json(r.global_estimate);
    json checks = json::array();
    for (const InequalityCheck& c : r.checks) {
        json ck = json::object();
        ck["name"] = c.name;
        ck["measured"] = round_sig(c.measured);
        ck["predicted"] = round_sig(c.predicted);
        if (std::isfinite(c.margin)) {
            ck["margin"] = round_sig(c.margin);
        } else {
            ck["margin"] = nullptr;
        }
        ck["pass"] = c.pass;
        checks.push_back(ck);
    }
    j["checks"] = checks;
    j["all_pass"] = r.all_pass;
    j["paper_factor_smaller"] = r.paper_factor_smaller;
    return j;
}

json gehring_martio_json(const GehringMartioRecord& r) {
    json j = json::object();
    j["alpha"] = round_sig(r.alpha);
    j["n_pairs"] = r.n_pairs;
    j["max_ratio"] = round_sig(r.max_ratio);
    j["witness_x"] = point_json(r.witness_x);
    j["witness_y"] = point_json(r.witness_y);
    json decades = json::array();
    for (const DecadeRatio& d : r.decades) {
        json row = json::object();
        row["sep_lo"] = round_sig(d.sep_lo);
        row["sep_hi"] = round_sig(d.sep_hi);
        row["n"] = d.n;
        row["max_ratio"] = round_sig(d.max_ratio);
        row["mean_ratio"] = round_sig(d.mean_ratio);
        decades.push_back(row);
    }
    j["decades"] = decades;
    return j;
}

std::string gehring_martio_csv(const GehringMartioRecord& r) {
    std::ostringstream out;
    out << "decade,n,max_ratio,mean_ratio\n";
    for (const DecadeRatio& d : r.decades) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.12g,%zu,%.12g,%.12g\n", d.sep_lo,
                      d.n, d.max_ratio, d.mean_ratio);
        out << buf;
    }
    return out.str();
}

json wos_json(const WosEstimate& e) {
    json j = json::object();
    j["mean"] = round_sig(e.mean);
    j["std_error"] = round_sig(e.std_error);
    j["n_walks"] = e.n_walks;
    j["epsilon"] = round_sig(e.epsilon);
    j["truncated_fraction"] = round_sig(e.truncated_fraction);
    j["maxed_fraction"] = round_sig(e.maxed_fraction);
    j["truncation_warning"] = e.truncation_warning;
    return j;
}

json run_constants(int dim, double alpha, double lip, double c_vertical) {
    return constants_json(derive_constants(dim, alpha, lip, c_vertical));
}

std::pair<json, bool> run_verify(const ScenarioConfig& config,
                                 const RunOptions& options) {
    ScenarioConfig c = config;
    apply_overrides(c, options);
    EpigraphDomain domain = build_domain(c);
    HarmonicField field = build_field(c, domain);
    TheoremReport report =
        theorem_check(field, domain, c.alpha, c.samplers, c.tolerance, c.inflation);
    return {report_json(report), report.all_pass};
}

json run_seminorm(const ScenarioConfig& config, SeminormMode mode,
                  const RunOptions& options) {
    ScenarioConfig c = config;
    apply_overrides(c, options);
    EpigraphDomain domain = build_domain(c);
    HarmonicField field = build_field(c, domain);
    SeminormEstimate est;
    switch (mode) {
    case SeminormMode::Vertical:
        est = vertical_seminorm(field, domain, c.alpha, c.samplers.vertical);
        break;
    case SeminormMode::Global:
        est = global_seminorm(field, domain, c.alpha, c.samplers.pairs);
        break;
    case SeminormMode::Local:
        est = local_seminorm(field, domain, c.alpha, c.samplers.pairs);
        break;
    }
    return estimate_json(est);
}

std::pair<json, std::string> run_extension(const ScenarioConfig& config,
                                           const RunOptions& options) {
    ScenarioConfig c = config;
    apply_overrides(c, options);
    EpigraphDomain domain = build_domain(c);
    GehringMartioRecord record =
        gehring_martio_check(domain, c.alpha, c.extension.n_pairs, c.extension.seed);
    return {gehring_martio_json(record), gehring_martio_csv(record)};
}

json run_wos(const ScenarioConfig& config, const RunOptions& options) {
    ScenarioConfig c = config;
    apply_overrides(c, options);
    EpigraphDomain domain = build_domain(c);
    BoundaryData data = wos_data_for(c, domain);
    WosEstimate est = wos_evaluate(domain, data, Point(c.wos_point), c.wos);
    return wos_json(est);
}

} // namespace lipharm
