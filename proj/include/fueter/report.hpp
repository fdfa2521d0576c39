#pragma once

/// Report serialization.  JSON objects carry one stable schema per check:
///   {check, field, backend, h, n, max_abs, mean_abs, rel_max,
///    worst_point{t,r,alpha,beta}, tol, pass, expected_pass, note}
/// CSV uses the same columns with worst_point flattened.  Floats are
/// written as shortest round-trip decimals.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fueter/fields.hpp"
#include "fueter/verify.hpp"
#include "fueter/version.hpp"

namespace fueter {

using ordered_json = nlohmann::ordered_json;

struct ReportEntry {
    ResidualReport report;
    bool expected_pass = true;
};

inline std::string dtoa_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline ordered_json report_to_json(const ResidualReport& r, bool expected_pass) {
    ordered_json j;
    j["check"] = r.check;
    j["field"] = r.field;
    j["backend"] = r.backend;
    j["h"] = r.h;
    j["n"] = r.n;
    j["max_abs"] = r.max_abs;
    j["mean_abs"] = r.mean_abs;
    j["rel_max"] = r.rel_max;
    j["worst_point"] = ordered_json{{"t", r.worst.t},
                                    {"r", r.worst.r},
                                    {"alpha", r.worst.alpha},
                                    {"beta", r.worst.beta}};
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["expected_pass"] = expected_pass;
    j["note"] = r.note;
    return j;
}

inline ordered_json plan_to_json(const SamplingPlan& plan) {
    ordered_json j;
    j["t_min"] = plan.box.t_min;
    j["t_max"] = plan.box.t_max;
    j["r_min"] = plan.box.r_min;
    j["r_max"] = plan.box.r_max;
    j["beta_min"] = plan.box.beta_min;
    j["beta_max"] = plan.box.beta_max;
    j["n"] = plan.n;
    j["rng_seed"] = plan.rng_seed;
    j["mode"] = plan.mode == SampleMode::grid ? "grid" : "random";
    return j;
}

inline ordered_json engine_to_json(const DerivativeEngine& e) {
    ordered_json j;
    switch (e.backend) {
        case Backend::analytic: j["backend"] = "analytic"; break;
        case Backend::fd2: j["backend"] = "fd2"; break;
        case Backend::fd4: j["backend"] = "fd4"; break;
    }
    j["h"] = e.h;
    j["richardson"] = e.richardson;
    return j;
}

inline ordered_json catalog_to_json(const std::vector<StructuredField>& fields) {
    ordered_json arr = ordered_json::array();
    for (const StructuredField& f : fields) {
        if (f.kind == FieldKind::fixture) continue;
        arr.push_back(ordered_json{{"name", f.name},
                                   {"kind", kind_name(f.kind)},
                                   {"singular_loci", f.singular_loci},
                                   {"satisfies_condition", f.satisfies_condition}});
    }
    return arr;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline const char* kReportCsvHeader =
    "check,field,backend,h,n,max_abs,mean_abs,rel_max,"
    "worst_t,worst_r,worst_alpha,worst_beta,tol,pass,expected_pass,note";

inline std::string report_to_csv_row(const ResidualReport& r, bool expected_pass) {
    std::string row;
    row += csv_escape(r.check);
    row += ',';
    row += csv_escape(r.field);
    row += ',';
    row += csv_escape(r.backend);
    row += ',';
    row += dtoa_shortest(r.h);
    row += ',';
    row += std::to_string(r.n);
    row += ',';
    row += dtoa_shortest(r.max_abs);
    row += ',';
    row += dtoa_shortest(r.mean_abs);
    row += ',';
    row += dtoa_shortest(r.rel_max);
    row += ',';
    row += dtoa_shortest(r.worst.t);
    row += ',';
    row += dtoa_shortest(r.worst.r);
    row += ',';
    row += dtoa_shortest(r.worst.alpha);
    row += ',';
    row += dtoa_shortest(r.worst.beta);
    row += ',';
    row += dtoa_shortest(r.tol);
    row += ',';
    row += r.pass ? "true" : "false";
    row += ',';
    row += expected_pass ? "true" : "false";
    row += ',';
    row += csv_escape(r.note);
    return row;
}

/// Write via a temp file and rename, so a failed run never leaves a
/// partial report on disk.
inline void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out.flush()) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("failed writing output file: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("failed to move report into place: " + path);
    }
}

} // namespace fueter
