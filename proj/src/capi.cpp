#include "ifacelint.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "ifacelint/report.hpp"

using namespace ifacelint;

struct iflint_options {
    AnalysisOptions options;
};

struct iflint_result {
    AnalysisResult result;
};

namespace {

thread_local std::string g_last_error;

iflint_status status_of(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Usage: return IFLINT_ERROR_USAGE;
    case ErrorKind::Input: return IFLINT_ERROR_INPUT;
    case ErrorKind::MalformedFile: return IFLINT_ERROR_MALFORMED;
    case ErrorKind::Encoding: return IFLINT_ERROR_ENCODING;
    case ErrorKind::SchemaViolation: return IFLINT_ERROR_SCHEMA;
    case ErrorKind::CyclicHierarchy: return IFLINT_ERROR_CYCLIC_HIERARCHY;
    case ErrorKind::DuplicateTypeName: return IFLINT_ERROR_DUPLICATE_TYPE;
    case ErrorKind::UnknownType: return IFLINT_ERROR_UNKNOWN_TYPE;
    case ErrorKind::LengthMismatch: return IFLINT_ERROR_USAGE;
    case ErrorKind::Internal: return IFLINT_ERROR_INTERNAL;
    }
    return IFLINT_ERROR_INTERNAL;
}

iflint_status fail(iflint_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

iflint_status usage_error(const std::string& message) {
    return fail(IFLINT_ERROR_USAGE, message);
}

template <typename Fn>
iflint_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(IFLINT_ERROR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(IFLINT_ERROR_INTERNAL, e.what());
    }
}

} // namespace

extern "C" {

const char* iflint_version(void) { return "0.1.0"; }

const char* iflint_status_name(iflint_status status) {
    switch (status) {
    case IFLINT_OK: return "ok";
    case IFLINT_ERROR_USAGE: return "usage";
    case IFLINT_ERROR_INPUT: return "input";
    case IFLINT_ERROR_MALFORMED: return "malformed";
    case IFLINT_ERROR_ENCODING: return "encoding";
    case IFLINT_ERROR_SCHEMA: return "schema";
    case IFLINT_ERROR_CYCLIC_HIERARCHY: return "cyclic-hierarchy";
    case IFLINT_ERROR_DUPLICATE_TYPE: return "duplicate-type";
    case IFLINT_ERROR_UNKNOWN_TYPE: return "unknown-type";
    case IFLINT_ERROR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* iflint_last_error(void) { return g_last_error.c_str(); }

iflint_options* iflint_options_new(void) {
    return new (std::nothrow) iflint_options();
}

void iflint_options_free(iflint_options* options) { delete options; }

void iflint_options_set_exclude_tests(iflint_options* options, int on) {
    if (options) options->options.filters.exclude_tests = on != 0;
}

void iflint_options_set_exclude_markers(iflint_options* options, int on) {
    if (options) options->options.filters.exclude_markers = on != 0;
}

void iflint_options_set_min_implementations(iflint_options* options, int n) {
    if (options) options->options.filters.min_implementations = n < 0 ? 0 : n;
}

void iflint_options_set_library_mode(iflint_options* options, int on) {
    if (options) options->options.filters.treat_as_library = on != 0;
}

iflint_status iflint_options_set_correlation(iflint_options* options,
                                             const char* mode) {
    if (!options || !mode) return usage_error("null argument");
    const std::string value = mode;
    if (value != "pearson" && value != "spearman" && value != "both") {
        return usage_error("correlation mode must be pearson, spearman or both");
    }
    options->options.correlation_display = value;
    return IFLINT_OK;
}

iflint_status iflint_options_set_sort_key(iflint_options* options, const char* key) {
    if (!options || !key) return usage_error("null argument");
    const std::string value = key;
    for (const char* allowed : {"rum", "rdm", "size", "dm", "um", "iuc", "name"}) {
        if (value == allowed) {
            options->options.sort_key = value;
            return IFLINT_OK;
        }
    }
    return usage_error("unknown sort key: " + value);
}

iflint_status iflint_analyze_source(const char* dir, const iflint_options* options,
                                    iflint_result** out_result) {
    if (!dir || !out_result) return usage_error("null argument");
    return guarded([&]() {
        AnalysisOptions opts = options ? options->options : AnalysisOptions{};
        auto result = std::make_unique<iflint_result>();
        result->result = run_analysis_source(dir, opts);
        *out_result = result.release();
        return IFLINT_OK;
    });
}

iflint_status iflint_analyze_facts(const char* file, const iflint_options* options,
                                   iflint_result** out_result) {
    if (!file || !out_result) return usage_error("null argument");
    return guarded([&]() {
        AnalysisOptions opts = options ? options->options : AnalysisOptions{};
        auto result = std::make_unique<iflint_result>();
        result->result = run_analysis_facts(file, opts);
        *out_result = result.release();
        return IFLINT_OK;
    });
}

void iflint_result_free(iflint_result* result) { delete result; }

iflint_status iflint_result_render(const iflint_result* result, const char* format,
                                   char** out_document) {
    if (!result || !format || !out_document) return usage_error("null argument");
    return guarded([&]() {
        const std::string name = format;
        RenderFormat fmt;
        if (name == "text") fmt = RenderFormat::Text;
        else if (name == "csv") fmt = RenderFormat::Csv;
        else if (name == "machine") fmt = RenderFormat::Machine;
        else return usage_error("format must be text, csv or machine");
        std::string document = render(result->result, fmt);
        char* copy = static_cast<char*>(::operator new(document.size() + 1));
        std::memcpy(copy, document.c_str(), document.size() + 1);
        *out_document = copy;
        return IFLINT_OK;
    });
}

void iflint_string_free(char* text) { ::operator delete(text); }

iflint_status iflint_result_system_metric(const iflint_result* result,
                                          const char* name, double* out_value) {
    if (!result || !name || !out_value) return usage_error("null argument");
    const SystemMetrics& sys = result->result.system;
    const std::string key = name;
    double value;
    if (key == "interfaces") value = static_cast<double>(sys.interfaces);
    else if (key == "total_interface_methods")
        value = static_cast<double>(sys.total_interface_methods);
    else if (key == "sdm") value = static_cast<double>(sys.sdm);
    else if (key == "sum") value = static_cast<double>(sys.sum);
    else if (key == "snum") value = static_cast<double>(sys.snum);
    else if (key == "distinct_dup_signatures")
        value = static_cast<double>(sys.distinct_dup_signatures);
    else if (key == "reim") value = static_cast<double>(sys.reim);
    else if (key == "nulc") value = static_cast<double>(sys.nulc);
    else if (key == "system_loc") value = static_cast<double>(sys.system_loc);
    else if (key == "shared_impl_count")
        value = static_cast<double>(sys.shared_impl_count);
    else if (key == "rsdm") value = sys.rsdm;
    else if (key == "rsum") value = sys.rsum;
    else if (key == "rsnum") value = sys.rsnum;
    else if (key == "rreim") value = sys.rreim;
    else if (key == "rnulc") value = sys.rnulc;
    else if (key == "shared_impl_ratio") value = sys.shared_impl_ratio;
    else if (key == "suggestions")
        value = static_cast<double>(result->result.suggestions.size());
    else return usage_error("unknown system metric: " + key);
    *out_value = value;
    return IFLINT_OK;
}

iflint_status iflint_result_threshold_exceeded(const iflint_result* result,
                                               const char* metric, double threshold,
                                               int* out_flag) {
    if (!result || !metric || !out_flag) return usage_error("null argument");
    return guarded([&]() {
        *out_flag = threshold_exceeded(result->result, metric, threshold) ? 1 : 0;
        return IFLINT_OK;
    });
}

} // extern "C"
