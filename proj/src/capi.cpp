#include "lipharm/lipharm.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipharm/errors.hpp"
#include "lipharm/geometry.hpp"
#include "lipharm/harmonic.hpp"
#include "lipharm/scenario.hpp"

struct lph_domain {
    lipharm::EpigraphDomain domain;
};

struct lph_field {
    lipharm::HarmonicField field;
};

namespace {

thread_local std::string g_last_error;

char* alloc_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

/* Exception-to-status bridge; every entry point funnels through here so the
 * mapping stays in one place. extent_error must precede domain_error (its
 * base), the specific runtime errors precede the catch-all. */
template <class F>
lph_status guard(F&& body) noexcept {
    try {
        body();
        g_last_error.clear();
        return LPH_OK;
    } catch (const lipharm::extent_error& e) {
        g_last_error = e.what();
        return LPH_EEXTENT;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return LPH_EDOMAIN;
    } catch (const lipharm::config_error& e) {
        g_last_error = e.what();
        return LPH_EPARSE;
    } catch (const lipharm::json::exception& e) {
        g_last_error = e.what();
        return LPH_EPARSE;
    } catch (const lipharm::accuracy_error& e) {
        g_last_error = e.what();
        return LPH_EACCURACY;
    } catch (const lipharm::unsupported_error& e) {
        g_last_error = e.what();
        return LPH_EUNSUPPORTED;
    } catch (const lipharm::nonintegrable_error& e) {
        g_last_error = e.what();
        return LPH_ENONINTEGRABLE;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return LPH_EINVAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LPH_EFAIL;
    } catch (...) {
        g_last_error = "unknown failure";
        return LPH_EFAIL;
    }
}

lph_status einval(const char* message) {
    g_last_error = message;
    return LPH_EINVAL;
}

std::vector<double> to_vector(const double* data, int32_t n) {
    if (n < 0) throw std::invalid_argument("negative array length");
    return std::vector<double>(data, data + n);
}

lipharm::RunOptions to_options(const lph_run_options* options) {
    lipharm::RunOptions out;
    if (options) {
        if (options->has_seed) out.seed = options->seed;
        out.workers = options->workers;
    }
    return out;
}

lipharm::ScenarioConfig parse_config(const char* config_json) {
    return lipharm::parse_scenario(lipharm::json::parse(config_json));
}

} // namespace

extern "C" {

const char* lph_version(void) { return "0.1.0"; }

const char* lph_status_message(lph_status status) {
    switch (status) {
    case LPH_OK: return "ok";
    case LPH_EINVAL: return "invalid argument";
    case LPH_EDOMAIN: return "point outside the domain";
    case LPH_EEXTENT: return "outside the tabulated extent";
    case LPH_EACCURACY: return "requested accuracy not certifiable";
    case LPH_EUNSUPPORTED: return "operation unsupported for this kind";
    case LPH_ENONINTEGRABLE: return "quadrature node on the boundary";
    case LPH_EPARSE: return "malformed configuration";
    case LPH_EFAIL: return "failure";
    default: return "unknown status";
    }
}

const char* lph_last_error(void) { return g_last_error.c_str(); }

void lph_string_free(char* s) { std::free(s); }

lph_status lph_domain_affine(const double* slope, int32_t n_minus_1,
                             double offset, lph_domain** out) {
    if (!out || (!slope && n_minus_1 > 0)) return einval("null pointer");
    return guard([&] {
        auto graph = lipharm::LipschitzGraph::affine(to_vector(slope, n_minus_1),
                                                     offset);
        *out = new lph_domain{lipharm::EpigraphDomain(std::move(graph))};
    });
}

lph_status lph_domain_abs_cone(double slope, int32_t n_minus_1,
                               lph_domain** out) {
    if (!out) return einval("null pointer");
    return guard([&] {
        auto graph = lipharm::LipschitzGraph::abs_cone(slope, n_minus_1);
        *out = new lph_domain{lipharm::EpigraphDomain(std::move(graph))};
    });
}

lph_status lph_domain_piecewise_linear(const double* knots_x,
                                       const double* knots_y, int32_t n_knots,
                                       lph_domain** out) {
    if (!out || !knots_x || !knots_y) return einval("null pointer");
    return guard([&] {
        auto graph = lipharm::LipschitzGraph::piecewise_linear(
            to_vector(knots_x, n_knots), to_vector(knots_y, n_knots));
        *out = new lph_domain{lipharm::EpigraphDomain(std::move(graph))};
    });
}

lph_status lph_domain_tabulated(double x0, double dx, const double* values,
                                int32_t n_values, lph_domain** out) {
    if (!out || !values) return einval("null pointer");
    return guard([&] {
        auto graph =
            lipharm::LipschitzGraph::tabulated(x0, dx, to_vector(values, n_values));
        *out = new lph_domain{lipharm::EpigraphDomain(std::move(graph))};
    });
}

void lph_domain_free(lph_domain* domain) { delete domain; }

lph_status lph_domain_dim(const lph_domain* domain, int32_t* out) {
    if (!domain || !out) return einval("null pointer");
    return guard([&] { *out = domain->domain.dim(); });
}

lph_status lph_domain_lip(const lph_domain* domain, double* out) {
    if (!domain || !out) return einval("null pointer");
    return guard([&] { *out = domain->domain.graph().lip_bound(); });
}

lph_status lph_distance_lower_bound(const lph_domain* domain, const double* x,
                                    int32_t dim, double* out) {
    if (!domain || !x || !out) return einval("null pointer");
    return guard([&] {
        *out = lipharm::distance_lower_bound(domain->domain,
                                             lipharm::Point(to_vector(x, dim)));
    });
}

lph_status lph_distance_exact(const lph_domain* domain, const double* x,
                              int32_t dim, double* out_value,
                              double* out_error_bound) {
    if (!domain || !x || !out_value) return einval("null pointer");
    return guard([&] {
        auto r = lipharm::distance_exact(domain->domain,
                                         lipharm::Point(to_vector(x, dim)));
        *out_value = r.value;
        if (out_error_bound) *out_error_bound = r.error_bound;
    });
}

lph_status lph_shifted_distance_bound(const lph_domain* domain, const double* x,
                                      int32_t dim, double lambda, double* out) {
    if (!domain || !x || !out) return einval("null pointer");
    return guard([&] {
        *out = lipharm::shifted_distance_bound(
            domain->domain, lipharm::Point(to_vector(x, dim)), lambda);
    });
}

lph_status lph_field_separable_exp(int32_t dim, lph_field** out) {
    if (!out) return einval("null pointer");
    return guard([&] { *out = new lph_field{lipharm::make_separable_exp(dim)}; });
}

lph_status lph_field_pole(const lph_domain* domain, const double* pole,
                          int32_t dim, lph_field** out) {
    if (!domain || !pole || !out) return einval("null pointer");
    return guard([&] {
        *out = new lph_field{lipharm::make_pole_field(
            domain->domain, lipharm::Point(to_vector(pole, dim)))};
    });
}

lph_status lph_field_harmonic_measure_2d(lph_field** out) {
    if (!out) return einval("null pointer");
    return guard([&] { *out = new lph_field{lipharm::make_harmonic_measure_2d()}; });
}

void lph_field_free(lph_field* field) { delete field; }

lph_status lph_field_value(const lph_field* field, const double* x, int32_t dim,
                           double* out) {
    if (!field || !x || !out) return einval("null pointer");
    return guard([&] {
        *out = field->field.value(lipharm::Point(to_vector(x, dim)));
    });
}

lph_status lph_field_sup_bound(const lph_field* field, double* out) {
    if (!field || !out) return einval("null pointer");
    return guard([&] { *out = field->field.sup_bound(); });
}

lph_status lph_field_gradient(const lph_field* field, const double* x,
                              int32_t dim, double* out_grad) {
    if (!field || !x || !out_grad) return einval("null pointer");
    return guard([&] {
        auto g =
            lipharm::gradient(field->field, lipharm::Point(to_vector(x, dim)));
        std::memcpy(out_grad, g.data(), g.size() * sizeof(double));
    });
}

lph_status lph_derive_constants(int32_t dim, double alpha, double lip,
                                double c_vertical, lph_constant_bundle* out) {
    if (!out) return einval("null pointer");
    return guard([&] {
        auto b = lipharm::derive_constants(dim, alpha, lip, c_vertical);
        *out = lph_constant_bundle{b.dim,  b.alpha,      b.lip, b.c_vertical,
                                   b.k_n,  b.gamma_star, b.cone_cos,
                                   b.c1,   b.c1_paper,   b.c2,  b.c3};
    });
}

lph_status lph_wos_evaluate(const lph_domain* domain,
                            const lph_boundary_data* data, const double* x,
                            int32_t dim, double epsilon, double far_cutoff,
                            double far_value, uint64_t max_steps,
                            uint64_t n_walks, uint64_t seed, int32_t workers,
                            lph_wos_estimate* out) {
    if (!domain || !data || !x || !out) return einval("null pointer");
    return guard([&] {
        lipharm::BoundaryData bd;
        switch (data->kind) {
        case LPH_DATA_CONSTANT:
            bd = lipharm::BoundaryData::constant(data->value);
            break;
        case LPH_DATA_INDICATOR_FIRST_POSITIVE:
            bd = lipharm::BoundaryData::indicator_first_positive();
            break;
        case LPH_DATA_ABS_POWER:
            bd = lipharm::BoundaryData::abs_power(data->value);
            break;
        case LPH_DATA_FIELD_TRACE:
            if (!data->trace_field) {
                throw std::invalid_argument("boundary data: null trace field");
            }
            bd = lipharm::boundary_trace(data->trace_field->field, domain->domain);
            break;
        default:
            throw std::invalid_argument("boundary data: unknown kind");
        }
        lipharm::WosParams params;
        params.epsilon = epsilon;
        params.far_cutoff = far_cutoff;
        params.far_value = far_value;
        params.max_steps = max_steps;
        params.n_walks = n_walks;
        params.seed = seed;
        params.workers = workers;
        auto est = lipharm::wos_evaluate(domain->domain,
                                         bd, lipharm::Point(to_vector(x, dim)),
                                         params);
        *out = lph_wos_estimate{est.mean,
                                est.std_error,
                                est.n_walks,
                                est.epsilon,
                                est.truncated_fraction,
                                est.maxed_fraction,
                                est.truncation_warning ? 1 : 0};
    });
}

lph_status lph_run_constants(int32_t dim, double alpha, double lip,
                             double c_vertical, char** out_json) {
    if (!out_json) return einval("null pointer");
    return guard([&] {
        *out_json = alloc_string(
            lipharm::dump_json(lipharm::run_constants(dim, alpha, lip, c_vertical)));
    });
}

lph_status lph_run_verify(const char* config_json,
                          const lph_run_options* options, char** out_json,
                          int32_t* out_all_pass) {
    if (!config_json || !out_json) return einval("null pointer");
    return guard([&] {
        auto [report, all_pass] =
            lipharm::run_verify(parse_config(config_json), to_options(options));
        *out_json = alloc_string(lipharm::dump_json(report));
        if (out_all_pass) *out_all_pass = all_pass ? 1 : 0;
    });
}

lph_status lph_run_seminorm(const char* config_json, const char* mode,
                            const lph_run_options* options, char** out_json) {
    if (!config_json || !mode || !out_json) return einval("null pointer");
    return guard([&] {
        std::string m(mode);
        lipharm::SeminormMode sm;
        if (m == "vertical") {
            sm = lipharm::SeminormMode::Vertical;
        } else if (m == "global") {
            sm = lipharm::SeminormMode::Global;
        } else if (m == "local") {
            sm = lipharm::SeminormMode::Local;
        } else {
            throw std::invalid_argument("seminorm mode must be vertical, global, or local");
        }
        *out_json = alloc_string(lipharm::dump_json(
            lipharm::run_seminorm(parse_config(config_json), sm, to_options(options))));
    });
}

lph_status lph_run_extension(const char* config_json,
                             const lph_run_options* options, char** out_json,
                             char** out_csv) {
    if (!config_json || !out_json) return einval("null pointer");
    return guard([&] {
        auto [summary, csv] =
            lipharm::run_extension(parse_config(config_json), to_options(options));
        *out_json = alloc_string(lipharm::dump_json(summary));
        if (out_csv) {
            *out_csv = alloc_string(csv);
        }
    });
}

lph_status lph_run_wos(const char* config_json, const lph_run_options* options,
                       char** out_json) {
    if (!config_json || !out_json) return einval("null pointer");
    return guard([&] {
        *out_json = alloc_string(lipharm::dump_json(
            lipharm::run_wos(parse_config(config_json), to_options(options))));
    });
}

} // extern "C"
