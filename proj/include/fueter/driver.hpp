#pragma once

/// Batch orchestration shared by the CLI and the tests: resolve a run
/// configuration into (field, check) entries, execute them, and render
/// JSON / CSV / pretty output.
///
/// Outcome semantics: a run succeeds when every report's pass flag matches
/// its expectation.  Condition fields are expected to pass everything;
/// control fields are expected to fail exactly the checks whose hypotheses
/// they violate (an unexpectedly passing control is an error).

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fueter/report.hpp"

namespace fueter {

// ---------------------------------------------------------------------------
// Check registry

using FieldCheckFn = ResidualReport (*)(const StructuredField&, const SamplingPlan&,
                                        const DerivativeEngine&);

namespace detail {

inline ResidualReport run_condition(const StructuredField& f, const SamplingPlan& p,
                                    const DerivativeEngine& e) {
    return check_condition(f, p, e);
}
inline ResidualReport run_theorem_both(const StructuredField& f, const SamplingPlan& p,
                                       const DerivativeEngine& e) {
    return check_theorem(f, p, e, TheoremRoute::both);
}
inline ResidualReport run_theorem_dbar(const StructuredField& f, const SamplingPlan& p,
                                       const DerivativeEngine& e) {
    return check_theorem(f, p, e, TheoremRoute::dbar);
}
inline ResidualReport run_theorem_direct(const StructuredField& f, const SamplingPlan& p,
                                         const DerivativeEngine& e) {
    return check_theorem(f, p, e, TheoremRoute::direct);
}
inline ResidualReport run_cr_system(const StructuredField& f, const SamplingPlan& p,
                                    const DerivativeEngine& e) {
    return check_cr_system(f, p, e);
}
inline ResidualReport run_angular_laplace(const StructuredField& f, const SamplingPlan& p,
                                          const DerivativeEngine& e) {
    return check_angular_laplace(f, p, e);
}

} // namespace detail

inline const std::map<std::string, FieldCheckFn>& field_check_registry() {
    static const std::map<std::string, FieldCheckFn> reg = {
        {"condition", &detail::run_condition},
        {"holomorphy_tr", &check_holomorphy_tr},
        {"angular_condition", &check_angular_condition},
        {"cr_system", &detail::run_cr_system},
        {"t_closure", &check_t_closure},
        {"harmonic_v_over_r", &check_harmonic_v_over_r},
        {"theorem", &detail::run_theorem_both},
        {"theorem_dbar", &detail::run_theorem_dbar},
        {"theorem_direct", &detail::run_theorem_direct},
        {"angular_laplace", &detail::run_angular_laplace},
        {"angular_tr_closure", &check_angular_tr_closure},
        {"commutation", &check_field_chain},
        {"dl_consistency", &check_dl_consistency},
    };
    return reg;
}

inline const std::vector<std::string>& standalone_check_ids() {
    static const std::vector<std::string> ids = {
        "frame_identities", "second_angular",    "angular_iota_product",
        "scalar_commutation", "mercator_cr",     "axial_regularity",
    };
    return ids;
}

inline bool is_standalone_check(const std::string& id) {
    const auto& ids = standalone_check_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

inline bool is_known_check(const std::string& id) {
    return field_check_registry().count(id) > 0 || is_standalone_check(id);
}

/// Checks whose hypotheses a control field can violate; everything else
/// (consistency of two operator forms, unconditional identities) is
/// expected to pass on every field.
inline bool expected_pass_for(const StructuredField& f, const std::string& check) {
    if (f.satisfies_condition) return true;
    return std::find(f.expected_failures.begin(), f.expected_failures.end(), check) ==
           f.expected_failures.end();
}

inline std::vector<ResidualReport> run_standalone_check(const std::string& id,
                                                        const SamplingPlan& plan,
                                                        const DerivativeEngine& e) {
    if (id == "frame_identities") return {check_frame_identities(plan)};
    if (id == "second_angular")
        return {check_second_angular(random_trig_scalars(20, plan.rng_seed ^ 0x5eedbeefULL), plan,
                                     e, "builtin:trig_scalars")};
    if (id == "angular_iota_product")
        return {check_angular_iota_product(random_trig_quat_fields(8, plan.rng_seed ^ 0x9e3779b9ULL),
                                           plan, e, "builtin:trig_quat")};
    if (id == "scalar_commutation") {
        std::vector<ScalarField> gs;
        for (auto& [name, g] : commutation_scalar_fixtures()) gs.push_back(g);
        return {check_scalar_commutation(gs, plan, e, "builtin:scalar_polys")};
    }
    if (id == "mercator_cr") {
        std::vector<ResidualReport> out;
        for (const AngularPair& pair : mercator_fixture_pairs())
            out.push_back(check_cr_system(pair, plan, e));
        return out;
    }
    if (id == "axial_regularity") {
        std::vector<ResidualReport> out;
        for (const StructuredField& f : regular_fixture_fields())
            out.push_back(check_axial_regularity(f, plan, e));
        return out;
    }
    throw config_error("unknown standalone check '" + id + "'");
}

// ---------------------------------------------------------------------------
// Globs and configuration

inline bool glob_match(const std::string& pattern, const std::string& text) {
    const char* p = pattern.c_str();
    const char* s = text.c_str();
    // iterative match with single backtrack point for '*'
    const char* star = nullptr;
    const char* star_s = nullptr;
    while (*s) {
        if (*p == '*') {
            star = p++;
            star_s = s;
        } else if (*p == '?' || *p == *s) {
            ++p;
            ++s;
        } else if (star) {
            p = star + 1;
            s = ++star_s;
        } else {
            return false;
        }
    }
    while (*p == '*') ++p;
    return *p == '\0';
}

struct RunConfig {
    std::string suite = "all"; // all | positive | negative | identities
    std::vector<std::string> field_selectors;
    std::vector<std::string> check_selectors;
    SamplingPlan plan{};
    DerivativeEngine engine{};
    std::string format = "pretty"; // json | csv | pretty
    std::string out_path;
};

struct RunEntry {
    std::string field; // empty for standalone checks
    std::string check;
    bool operator<(const RunEntry& o) const {
        return field != o.field ? field < o.field : check < o.check;
    }
    bool operator==(const RunEntry&) const = default;
};

inline const std::vector<std::string>& positive_suite_checks() {
    static const std::vector<std::string> ids = {
        "angular_condition", "angular_laplace", "angular_tr_closure", "commutation",
        "condition",         "cr_system",       "harmonic_v_over_r",  "holomorphy_tr",
        "t_closure",         "theorem",         "theorem_dbar",       "theorem_direct",
    };
    return ids;
}

inline std::vector<RunEntry> suite_entries(const std::string& suite,
                                           const std::vector<StructuredField>& cat) {
    std::vector<RunEntry> entries;
    auto add_positive = [&] {
        for (const StructuredField& f : cat)
            if (f.satisfies_condition)
                for (const std::string& c : positive_suite_checks()) entries.push_back({f.name, c});
    };
    auto add_negative = [&] {
        for (const StructuredField& f : cat) {
            if (f.kind != FieldKind::control) continue;
            entries.push_back({f.name, "condition"});
            for (const char* c : {"theorem", "theorem_dbar", "theorem_direct"})
                if (!expected_pass_for(f, c)) entries.push_back({f.name, c});
        }
    };
    auto add_identities = [&] {
        for (const std::string& c : standalone_check_ids()) entries.push_back({"", c});
        for (const StructuredField& f : cat) entries.push_back({f.name, "dl_consistency"});
    };
    if (suite == "positive")
        add_positive();
    else if (suite == "negative")
        add_negative();
    else if (suite == "identities")
        add_identities();
    else if (suite == "all") {
        add_positive();
        add_negative();
        add_identities();
    } else {
        throw config_error("unknown suite '" + suite + "'");
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    return entries;
}

/// Resolve the configured selection into concrete entries.  All names are
/// validated before any computation starts.
inline std::vector<RunEntry> resolve_entries(const RunConfig& cfg,
                                             const std::vector<StructuredField>& cat) {
    for (const std::string& c : cfg.check_selectors)
        if (!is_known_check(c)) throw config_error("unknown check '" + c + "'");

    std::vector<std::string> selected_fields;
    for (const StructuredField& f : cat) {
        if (f.kind == FieldKind::fixture) continue;
        if (cfg.field_selectors.empty()) {
            selected_fields.push_back(f.name);
            continue;
        }
        for (const std::string& g : cfg.field_selectors)
            if (glob_match(g, f.name)) {
                selected_fields.push_back(f.name);
                break;
            }
    }
    for (const std::string& g : cfg.field_selectors) {
        bool any = false;
        for (const StructuredField& f : cat)
            if (f.kind != FieldKind::fixture && glob_match(g, f.name)) any = true;
        if (!any) throw config_error("field selector '" + g + "' matches no catalog field");
    }

    std::vector<RunEntry> entries;
    if (!cfg.check_selectors.empty()) {
        // explicit check list: run it on the selected fields
        for (const std::string& c : cfg.check_selectors) {
            if (is_standalone_check(c)) {
                entries.push_back({"", c});
                continue;
            }
            for (const std::string& fname : selected_fields) entries.push_back({fname, c});
        }
    } else {
        for (RunEntry& en : suite_entries(cfg.suite, cat)) {
            if (!cfg.field_selectors.empty()) {
                if (en.field.empty()) continue; // standalone: not field-addressable
                bool keep = false;
                for (const std::string& g : cfg.field_selectors)
                    if (glob_match(g, en.field)) keep = true;
                if (!keep) continue;
            }
            entries.push_back(en);
        }
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    if (entries.empty()) throw config_error("selection resolves to no checks");
    return entries;
}

struct RunOutcome {
    std::vector<ReportEntry> entries;
    bool all_as_expected = true;
};

inline RunOutcome run_checks(const RunConfig& cfg) {
    validate(cfg.plan);
    const std::vector<StructuredField> cat = catalog();
    const std::vector<RunEntry> entries = resolve_entries(cfg, cat);

    RunOutcome out;
    for (const RunEntry& en : entries) {
        if (en.field.empty()) {
            for (ResidualReport& r : run_standalone_check(en.check, cfg.plan, cfg.engine))
                out.entries.push_back({std::move(r), true});
            continue;
        }
        const StructuredField* f = find_field(cat, en.field);
        if (!f) throw config_error("unknown field '" + en.field + "'");
        const FieldCheckFn fn = field_check_registry().at(en.check);
        out.entries.push_back({fn(*f, cfg.plan, cfg.engine), expected_pass_for(*f, en.check)});
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const ReportEntry& a, const ReportEntry& b) {
        if (a.report.field != b.report.field) return a.report.field < b.report.field;
        return a.report.check < b.report.check;
    });
    for (const ReportEntry& en : out.entries)
        if (en.report.pass != en.expected_pass) out.all_as_expected = false;
    return out;
}

// ---------------------------------------------------------------------------
// Output rendering

inline ordered_json config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["suite"] = cfg.suite;
    j["fields"] = cfg.field_selectors;
    j["checks"] = cfg.check_selectors;
    j["plan"] = plan_to_json(cfg.plan);
    j["engine"] = engine_to_json(cfg.engine);
    j["format"] = cfg.format;
    return j;
}

inline std::string render_run_json(const RunConfig& cfg, const RunOutcome& out) {
    ordered_json doc;
    doc["artifact"] = kArtifactName;
    doc["version"] = kVersion;
    doc["config"] = config_to_json(cfg);
    ordered_json reports = ordered_json::array();
    for (const ReportEntry& en : out.entries)
        reports.push_back(report_to_json(en.report, en.expected_pass));
    doc["reports"] = reports;
    doc["all_as_expected"] = out.all_as_expected;
    return doc.dump(2) + "\n";
}

inline std::string render_run_csv(const RunConfig& cfg, const RunOutcome& out) {
    std::string s;
    s += std::string("# artifact=") + kArtifactName + " version=" + kVersion + "\n";
    s += "# suite=" + cfg.suite + " backend=" + cfg.engine.descriptor() +
         " h=" + dtoa_shortest(cfg.engine.h) + "\n";
    s += "# box t=" + dtoa_shortest(cfg.plan.box.t_min) + ":" + dtoa_shortest(cfg.plan.box.t_max) +
         ",r=" + dtoa_shortest(cfg.plan.box.r_min) + ":" + dtoa_shortest(cfg.plan.box.r_max) +
         ",beta=" + dtoa_shortest(cfg.plan.box.beta_min) + ":" +
         dtoa_shortest(cfg.plan.box.beta_max) + " n=" + std::to_string(cfg.plan.n) +
         " seed=" + std::to_string(cfg.plan.rng_seed) +
         " mode=" + (cfg.plan.mode == SampleMode::grid ? "grid" : "random") + "\n";
    s += kReportCsvHeader;
    s += "\n";
    for (const ReportEntry& en : out.entries) {
        s += report_to_csv_row(en.report, en.expected_pass);
        s += "\n";
    }
    return s;
}

inline std::string render_run_pretty(const RunConfig& cfg, const RunOutcome& out) {
    std::ostringstream os;
    os << kArtifactName << " " << kVersion << "  suite=" << cfg.suite
       << "  backend=" << cfg.engine.descriptor() << "  n=" << cfg.plan.n
       << "  seed=" << cfg.plan.rng_seed << "\n";
    int unexpected = 0;
    for (const ReportEntry& en : out.entries) {
        const ResidualReport& r = en.report;
        const bool ok = r.pass == en.expected_pass;
        if (!ok) ++unexpected;
        os << (ok ? "[ ok ]" : "[FAIL]") << " " << r.field << " :: " << r.check
           << "  rel_max=" << dtoa_shortest(r.rel_max) << " tol=" << dtoa_shortest(r.tol)
           << (r.pass ? " pass" : " fail") << (en.expected_pass ? "" : " (failure expected)");
        if (!r.note.empty()) os << "  note: " << r.note;
        os << "\n";
    }
    os << (unexpected == 0 ? "all checks behaved as expected"
                           : std::to_string(unexpected) + " check(s) deviated from expectation")
       << " (" << out.entries.size() << " reports)\n";
    return os.str();
}

inline std::string render_run(const RunConfig& cfg, const RunOutcome& out) {
    if (cfg.format == "json") return render_run_json(cfg, out);
    if (cfg.format == "csv") return render_run_csv(cfg, out);
    if (cfg.format == "pretty") return render_run_pretty(cfg, out);
    throw config_error("unknown format '" + cfg.format + "'");
}

// ---------------------------------------------------------------------------
// Convergence command

struct ConvergeConfig {
    std::string check = "condition";
    std::string field = "fueter:exp";
    double h0 = 0.1;
    int levels = 4;
    SamplingPlan plan{};
    DerivativeEngine engine{Backend::fd2, 0.1, false};
    std::string format = "pretty";
    std::string out_path;
};

inline ConvergenceResult run_convergence(const ConvergeConfig& cfg) {
    validate(cfg.plan);
    if (!field_check_registry().count(cfg.check))
        throw config_error("unknown or non-field check '" + cfg.check + "'");
    const std::vector<StructuredField> cat = catalog();
    const StructuredField* f = find_field(cat, cfg.field);
    if (!f) throw config_error("unknown field '" + cfg.field + "'");
    const FieldCheckFn fn = field_check_registry().at(cfg.check);
    return estimate_convergence_order(
        [&](double h) {
            DerivativeEngine e = cfg.engine;
            e.h = h;
            return fn(*f, cfg.plan, e).rel_max;
        },
        cfg.h0, cfg.levels);
}

inline std::string render_convergence(const ConvergeConfig& cfg, const ConvergenceResult& res) {
    if (cfg.format == "json") {
        ordered_json doc;
        doc["artifact"] = kArtifactName;
        doc["version"] = kVersion;
        ordered_json c;
        c["check"] = cfg.check;
        c["field"] = cfg.field;
        c["h0"] = cfg.h0;
        c["levels"] = cfg.levels;
        c["plan"] = plan_to_json(cfg.plan);
        c["engine"] = engine_to_json(cfg.engine);
        doc["config"] = c;
        ordered_json lv = ordered_json::array();
        for (const ConvergenceLevel& l : res.levels)
            lv.push_back(ordered_json{{"h", l.h}, {"rel_max", l.rel_max}});
        doc["levels"] = lv;
        doc["floor_reached"] = res.floor_reached;
        if (!res.floor_reached) doc["order"] = res.order;
        return doc.dump(2) + "\n";
    }
    if (cfg.format == "csv") {
        std::string s = "h,rel_max\n";
        for (const ConvergenceLevel& l : res.levels)
            s += dtoa_shortest(l.h) + "," + dtoa_shortest(l.rel_max) + "\n";
        s += res.floor_reached ? "# floor reached\n" : "# order=" + dtoa_shortest(res.order) + "\n";
        return s;
    }
    std::ostringstream os;
    os << "convergence of " << cfg.check << " on " << cfg.field << " ("
       << cfg.engine.descriptor() << ")\n";
    for (const ConvergenceLevel& l : res.levels)
        os << "  h=" << dtoa_shortest(l.h) << "  rel_max=" << dtoa_shortest(l.rel_max) << "\n";
    if (res.floor_reached)
        os << "floor reached (residuals at the analytic noise floor; no order estimate)\n";
    else
        os << "fitted order: " << dtoa_shortest(res.order) << "\n";
    return os.str();
}

} // namespace fueter
