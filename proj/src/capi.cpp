#include "diracred/diracred.h"

#include <cstring>
#include <json.hpp>

#include "core/engine.hpp"

using namespace diracred;

struct dr_scene {
    Scene scene;
};

struct dr_report {
    Report report;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** error_message, const std::string& what) {
    if (error_message) *error_message = dup_string(what);
}

dr_status status_of(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::SyntaxError:
        case ErrorKind::ParseError:
        case ErrorKind::UnknownCoordinate:
        case ErrorKind::DivisionByZeroPolynomial:
            return DR_ERR_PARSE;
        case ErrorKind::UnknownScene:
        case ErrorKind::InvalidArgument:
            return DR_ERR_ARGUMENT;
        case ErrorKind::Internal:
            return DR_ERR_INTERNAL;
        default:
            return DR_ERR_VALIDATION;
    }
}

template <typename Fn>
dr_status guarded(char** error_message, Fn&& fn) {
    try {
        fn();
        return DR_OK;
    } catch (const Error& e) {
        set_error(error_message, e.what());
        return status_of(e);
    } catch (const std::exception& e) {
        set_error(error_message, e.what());
        return DR_ERR_INTERNAL;
    }
}

EngineOptions parse_options(const char* options_json) {
    EngineOptions opt;
    if (!options_json || !*options_json) return opt;
    nlohmann::json j = nlohmann::json::parse(options_json);
    if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "options must be a JSON object");
    if (j.contains("bound")) opt.bound = j["bound"].get<int>();
    if (j.contains("stratum")) opt.stratum = j["stratum"].get<std::string>();
    if (j.contains("seed")) opt.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) opt.extra_samples = j["samples"].get<int>();
    if (j.contains("f")) opt.hamiltonian = j["f"].get<std::string>();
    if (j.contains("expr")) opt.average_expr = j["expr"].get<std::string>();
    if (j.contains("field")) opt.field = j["field"].get<std::string>();
    if (j.contains("start")) opt.start = j["start"].get<std::string>();
    if (j.contains("time")) opt.time = j["time"].get<double>();
    if (j.contains("steps")) opt.steps = j["steps"].get<int>();
    return opt;
}

} // namespace

extern "C" {

const char* dr_version(void) { return "diracred 1.0.0"; }

dr_status dr_scene_load_file(const char* path, dr_scene** out, char** error_message) {
    if (!path || !out) return DR_ERR_ARGUMENT;
    return guarded(error_message, [&] { *out = new dr_scene{load_scene_file(path)}; });
}

dr_status dr_scene_load_string(const char* text, const char* name, dr_scene** out,
                               char** error_message) {
    if (!text || !out) return DR_ERR_ARGUMENT;
    return guarded(error_message, [&] {
        *out = new dr_scene{load_scene_text(text, name ? name : "scene")};
    });
}

dr_status dr_scene_builtin(const char* name, dr_scene** out, char** error_message) {
    if (!name || !out) return DR_ERR_ARGUMENT;
    return guarded(error_message, [&] { *out = new dr_scene{builtin_scene(name)}; });
}

dr_status dr_builtin_names(char** out) {
    if (!out) return DR_ERR_ARGUMENT;
    std::string s;
    for (const auto& n : builtin_scene_names()) {
        if (!s.empty()) s += ",";
        s += n;
    }
    *out = dup_string(s);
    return DR_OK;
}

const char* dr_scene_name(const dr_scene* scene) {
    return scene ? scene->scene.name.c_str() : nullptr;
}

dr_status dr_scene_to_text(const dr_scene* scene, char** out) {
    if (!scene || !out) return DR_ERR_ARGUMENT;
    return guarded(nullptr, [&] { *out = dup_string(scene_to_text(scene->scene)); });
}

void dr_scene_free(dr_scene* scene) { delete scene; }

dr_status dr_run(const dr_scene* scene, const char* command, const char* options_json,
                 dr_report** out, char** error_message) {
    if (!scene || !command || !out) return DR_ERR_ARGUMENT;
    return guarded(error_message, [&] {
        EngineOptions opt;
        try {
            opt = parse_options(options_json);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::InvalidArgument, std::string("bad options JSON: ") + e.what());
        }
        *out = new dr_report{run_command(scene->scene, command, opt)};
    });
}

dr_status dr_report_to_json(const dr_report* report, char** out) {
    if (!report || !out) return DR_ERR_ARGUMENT;
    return guarded(nullptr, [&] { *out = dup_string(report->report.to_json()); });
}

dr_status dr_report_to_text(const dr_report* report, char** out) {
    if (!report || !out) return DR_ERR_ARGUMENT;
    return guarded(nullptr, [&] { *out = dup_string(report->report.to_text()); });
}

int dr_report_has_failures(const dr_report* report) {
    return report && report->report.has_failures() ? 1 : 0;
}

void dr_report_free(dr_report* report) { delete report; }

dr_status dr_parse_expr(const char* coords_csv, const char* expr, char** canonical_out,
                        char** error_message) {
    if (!coords_csv || !expr || !canonical_out) return DR_ERR_ARGUMENT;
    return guarded(error_message, [&] {
        std::vector<std::string> coords;
        std::string cur;
        for (const char* p = coords_csv;; ++p) {
            if (*p == ',' || *p == '\0') {
                if (!cur.empty()) coords.push_back(cur);
                cur.clear();
                if (*p == '\0') break;
            } else if (!std::isspace((unsigned char)*p)) {
                cur += *p;
            }
        }
        auto chart = make_chart("C", coords);
        *canonical_out = dup_string(parse_expr(expr, chart).to_string());
    });
}

void dr_string_free(char* s) { std::free(s); }

} // extern "C"
