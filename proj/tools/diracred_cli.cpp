// Command-line front end; talks to the library exclusively through the
// public C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <memory>
#include <string>

#include "diracred/diracred.h"

namespace {

struct StringOut {
    char* s = nullptr;
    ~StringOut() { dr_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

struct SceneHandle {
    dr_scene* s = nullptr;
    ~SceneHandle() { dr_scene_free(s); }
};

struct ReportHandle {
    dr_report* r = nullptr;
    ~ReportHandle() { dr_report_free(r); }
};

int load_scene(const std::string& ref, SceneHandle& scene) {
    StringOut err;
    dr_status st;
    if (ref.rfind("builtin:", 0) == 0)
        st = dr_scene_builtin(ref.substr(8).c_str(), &scene.s, &err.s);
    else
        st = dr_scene_load_file(ref.c_str(), &scene.s, &err.s);
    if (st != DR_OK) {
        std::fprintf(stderr, "error: %s\n", err.str().c_str());
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diracred -- exact Dirac structures and singular reduction on group quotients"};
    app.require_subcommand(1);

    std::string scene_ref;
    bool json_out = false;
    int bound = 4;
    std::string stratum;
    std::uint64_t seed = 1;
    int samples = 0;
    std::string hamiltonian_f;
    std::string average_expr;
    std::string flow_field;
    std::string flow_start;
    double flow_time = 1.0;
    int flow_steps = 1000;

    auto add_common = [&](CLI::App* cmd, bool with_scene = true) {
        if (with_scene)
            cmd->add_option("scene", scene_ref,
                            "scene reference: builtin:NAME or a .scene file path")
                ->required();
        cmd->add_flag("--json", json_out, "emit the canonical JSON report");
        cmd->add_option("--bound", bound, "re-expression degree bound (default 4)");
        cmd->add_option("--seed", seed, "seed for random sample generation");
    };

    auto* check = app.add_subcommand("check", "run every applicable certificate");
    add_common(check);

    auto* reduce = app.add_subcommand("reduce", "reduced Dirac structure per stratum");
    add_common(reduce);
    reduce->add_option("--stratum", stratum, "restrict to one stratum");

    auto* bracket = app.add_subcommand("bracket", "Courant bracket tables and identities");
    add_common(bracket);

    auto* average = app.add_subcommand("average", "exact Haar averages with certificates");
    add_common(average);
    average->add_option("--expr", average_expr, "also average this function");

    auto* hamiltonian = app.add_subcommand("hamiltonian", "implicit Hamiltonian systems");
    add_common(hamiltonian);
    hamiltonian->add_option("--f", hamiltonian_f, "the Hamiltonian function")->required();
    hamiltonian->add_option("--stratum", stratum, "restrict reduction to one stratum");

    auto* probe = app.add_subcommand("probe", "spanning-hypothesis probe at sample points");
    add_common(probe);
    probe->add_option("--samples", samples, "extra seeded random samples");

    auto* flow = app.add_subcommand("flow", "numeric RK4 flow with stratum drift check");
    add_common(flow);
    flow->add_option("--field", flow_field, "tg:K | vertical:K | comma-separated components")
        ->required();
    flow->add_option("--start", flow_start, "comma-separated rational start point")->required();
    flow->add_option("--time", flow_time, "total integration time");
    flow->add_option("--steps", flow_steps, "RK4 step count");

    auto* scenes = app.add_subcommand("scenes", "list builtin scenes");
    scenes->add_flag("--json", json_out, "emit JSON");

    auto* export_cmd = app.add_subcommand("export", "print a scene in the text exchange format");
    add_common(export_cmd);

    CLI11_PARSE(app, argc, argv);

    if (scenes->parsed()) {
        StringOut names;
        dr_builtin_names(&names.s);
        if (json_out) {
            nlohmann::ordered_json j;
            j["builtins"] = nlohmann::ordered_json::array();
            std::string cur;
            for (char c : names.str() + ",") {
                if (c == ',') {
                    if (!cur.empty()) j["builtins"].push_back(cur);
                    cur.clear();
                } else cur += c;
            }
            std::printf("%s\n", j.dump(2).c_str());
        } else {
            std::printf("%s\n", names.str().c_str());
        }
        return 0;
    }

    SceneHandle scene;
    if (int rc = load_scene(scene_ref, scene)) return rc;

    if (export_cmd->parsed()) {
        StringOut text;
        if (dr_scene_to_text(scene.s, &text.s) != DR_OK) return 2;
        std::printf("%s", text.str().c_str());
        return 0;
    }

    std::string command;
    for (auto* cmd : {check, reduce, bracket, average, hamiltonian, probe, flow})
        if (cmd->parsed()) command = cmd->get_name();

    nlohmann::ordered_json opts;
    opts["bound"] = bound;
    opts["seed"] = seed;
    if (!stratum.empty()) opts["stratum"] = stratum;
    if (samples > 0) opts["samples"] = samples;
    if (!hamiltonian_f.empty()) opts["f"] = hamiltonian_f;
    if (!average_expr.empty()) opts["expr"] = average_expr;
    if (!flow_field.empty()) opts["field"] = flow_field;
    if (!flow_start.empty()) opts["start"] = flow_start;
    if (command == "flow") {
        opts["time"] = flow_time;
        opts["steps"] = flow_steps;
    }

    ReportHandle report;
    StringOut err;
    dr_status st = dr_run(scene.s, command.c_str(), opts.dump().c_str(), &report.r, &err.s);
    if (st != DR_OK) {
        std::fprintf(stderr, "error: %s\n", err.str().c_str());
        return 2;
    }

    StringOut rendered;
    if (json_out) dr_report_to_json(report.r, &rendered.s);
    else dr_report_to_text(report.r, &rendered.s);
    std::printf("%s\n", rendered.str().c_str());

    return dr_report_has_failures(report.r) ? 1 : 0;
}
