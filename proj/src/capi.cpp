#include "twistchar/twistchar.h"

#include "affine.hpp"
#include "assembly.hpp"
#include "fermionic.hpp"
#include "folded.hpp"
#include "qp.hpp"
#include "series.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <string>

using namespace twistchar;

struct twc_folded {
    FoldedData data;
};

struct twc_series {
    MultiSeries series;

    explicit twc_series(MultiSeries s) : series(std::move(s)) {}
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
twc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return TWC_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return TWC_EINVAL;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return TWC_EINVAL;
    } catch (const std::filesystem::filesystem_error& e) {
        g_last_error = e.what();
        return TWC_EIO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TWC_ERUNTIME;
    } catch (...) {
        g_last_error = "unknown failure";
        return TWC_ERUNTIME;
    }
}

CacheOptions cache_options(const twc_options* options) {
    CacheOptions opts;
    if (options) {
        if (options->cache_dir) opts.dir = options->cache_dir;
        opts.disabled = options->no_cache != 0;
    }
    return opts;
}

std::string folded_json(const FoldedData& f) {
    std::ostringstream os;
    os << "{\"schema_version\":1,\"type\":\"" << f.type_token << "\",\"l\":" << f.l
       << ",\"r\":" << f.r << ",\"orbit_reps\":[";
    for (size_t i = 0; i < f.orbit_reps.size(); ++i) {
        if (i) os << ',';
        os << f.orbit_reps[i];
    }
    os << "],\"gram0\":[";
    for (size_t i = 0; i < f.gram0.size(); ++i) {
        if (i) os << ',';
        os << '[';
        for (size_t j = 0; j < f.gram0[i].size(); ++j) {
            if (j) os << ',';
            os << '"' << f.gram0[i][j].str() << '"';
        }
        os << ']';
    }
    os << "],\"rho\":[";
    for (size_t i = 0; i < f.rho.size(); ++i) {
        if (i) os << ',';
        os << '"' << f.rho[i].str() << '"';
    }
    os << "],\"h_dims\":[";
    for (size_t i = 0; i < f.h_dims.size(); ++i) {
        if (i) os << ',';
        os << f.h_dims[i];
    }
    os << "],\"theta0\":[";
    for (size_t i = 0; i < f.theta0.size(); ++i) {
        if (i) os << ',';
        os << f.theta0[i];
    }
    os << "],\"theta_fold\":[";
    for (size_t i = 0; i < f.theta_fold.size(); ++i) {
        if (i) os << ',';
        os << f.theta_fold[i];
    }
    os << "]}";
    return os.str();
}

}  // namespace

extern "C" {

const char* twc_version(void) { return "twistchar 1.0.0"; }

const char* twc_last_error(void) { return g_last_error.c_str(); }

void twc_string_free(char* text) { std::free(text); }

twc_status twc_folded_create(const char* type_token, twc_folded** out) {
    return guarded([&] {
        if (!type_token || !out) throw std::invalid_argument("null argument");
        auto [ambient, autom] = build_ambient(type_token);
        *out = new twc_folded{fold(ambient, autom)};
    });
}

void twc_folded_free(twc_folded* folded) { delete folded; }

twc_status twc_folded_to_json(const twc_folded* folded, char** out_json) {
    return guarded([&] {
        if (!folded || !out_json) throw std::invalid_argument("null argument");
        *out_json = dup_string(folded_json(folded->data));
    });
}

twc_status twc_char(const twc_folded* folded, const char* kind, int level,
                    const char* truncation, const twc_options* options, twc_series** out) {
    return guarded([&] {
        if (!folded || !kind || !truncation || !out) throw std::invalid_argument("null argument");
        Rational N = Rational::parse(truncation);
        if (N < Rational(0)) throw std::invalid_argument("truncation must be >= 0");
        if (level < 1) throw std::invalid_argument("level must be >= 1");
        const FoldedData& f = folded->data;
        std::string k = kind;
        MultiSeries s = MultiSeries::one(f.l, N);
        if (k == "theta")
            s = theta_series(f, N);
        else if (k == "fock")
            s = fock_char(f, N);
        else if (k == "level1")
            s = level1_char(f, N);
        else if (k == "principal")
            s = principal_char_formula(f, level, N);
        else if (k == "principal-enum")
            s = principal_char_enum(f, level, N);
        else if (k == "parafermionic")
            s = parafermionic_char_formula(f, level, N);
        else if (k == "parafermionic-enum")
            s = parafermionic_char_enum(f, level, N);
        else if (k == "module") {
            BasisCharParams params;
            params.type_token = f.type_token;
            params.level = level;
            params.truncation = N;
            params.ball_slack = options ? options->ball_slack : 0;
            s = module_char_basis(params);
        } else if (k == "oracle") {
            AffineGCM gcm = build_gcm(f);
            long long depth = std::max<long long>(1, (N * Rational(f.r)).ceil());
            WeightMultTable table =
                freudenthal_char_cached(gcm, level, depth, cache_options(options));
            s = weight_table_to_series(table, N);
        } else {
            throw std::invalid_argument("unknown character kind '" + k + "'");
        }
        *out = new twc_series(std::move(s));
    });
}

twc_status twc_series_format(const twc_series* series, const char* format, char** out_text) {
    return guarded([&] {
        if (!series || !format || !out_text) throw std::invalid_argument("null argument");
        std::string f = format;
        if (f == "json")
            *out_text = dup_string(series->series.to_json());
        else if (f == "csv")
            *out_text = dup_string(series->series.to_csv());
        else if (f == "pretty")
            *out_text = dup_string(series->series.to_pretty());
        else
            throw std::invalid_argument("unknown format '" + f + "'");
    });
}

void twc_series_free(twc_series* series) { delete series; }

twc_status twc_verify(const char* type_token, int level, const char* truncation,
                      const twc_options* options, char** out_report_json, int* out_all_pass) {
    return guarded([&] {
        if (!type_token || !truncation || !out_report_json || !out_all_pass)
            throw std::invalid_argument("null argument");
        if (level < 1) throw std::invalid_argument("level must be >= 1");
        BasisCharParams params;
        params.type_token = type_token;
        params.level = level;
        params.truncation = Rational::parse(truncation);
        if (params.truncation < Rational(0))
            throw std::invalid_argument("truncation must be >= 0");
        params.ball_slack = options ? options->ball_slack : 0;
        VerifyReport report = verify(params, cache_options(options));
        *out_report_json = dup_string(report.to_json());
        *out_all_pass = report.all_pass() ? 1 : 0;
    });
}

twc_status twc_cache_stat(const char* dir, char** out_json) {
    return guarded([&] {
        if (!out_json) throw std::invalid_argument("null argument");
        CacheStat stat = cache_stat(dir ? dir : "");
        std::ostringstream os;
        os << "{\"dir\":\"" << resolve_cache_dir(dir ? dir : "") << "\",\"files\":" << stat.files
           << ",\"bytes\":" << stat.bytes << ",\"names\":[";
        for (size_t i = 0; i < stat.names.size(); ++i) {
            if (i) os << ',';
            os << '"' << stat.names[i] << '"';
        }
        os << "]}";
        *out_json = dup_string(os.str());
    });
}

twc_status twc_cache_clear(const char* dir, long long* out_removed) {
    return guarded([&] {
        if (!out_removed) throw std::invalid_argument("null argument");
        *out_removed = cache_clear(dir ? dir : "");
    });
}

}  // extern "C"
