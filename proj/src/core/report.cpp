#include "report.hpp"

#include <json.hpp>
#include <sstream>

namespace diracred {

const char* status_name(ReportNode::Status s) {
    switch (s) {
        case ReportNode::Status::Pass: return "pass";
        case ReportNode::Status::Fail: return "fail";
        case ReportNode::Status::Skip: return "skip";
        case ReportNode::Status::Warn: return "warn";
    }
    return "unknown";
}

bool ReportNode::has_failures() const {
    if (status == Status::Fail) return true;
    for (const auto& c : children)
        if (c.has_failures()) return true;
    return false;
}

namespace {

nlohmann::ordered_json node_to_json(const ReportNode& n) {
    nlohmann::ordered_json j;
    j["name"] = n.name;
    j["status"] = status_name(n.status);
    if (!n.detail.empty()) j["detail"] = n.detail;
    if (!n.witnesses.empty()) j["witnesses"] = n.witnesses;
    if (!n.children.empty()) {
        auto& arr = j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : n.children) arr.push_back(node_to_json(c));
    }
    return j;
}

void node_to_text(const ReportNode& n, std::ostringstream& out, int depth) {
    for (int i = 0; i < depth; ++i) out << "  ";
    out << "[" << status_name(n.status) << "] " << n.name;
    if (!n.detail.empty()) out << " -- " << n.detail;
    out << "\n";
    for (const auto& w : n.witnesses) {
        for (int i = 0; i < depth + 1; ++i) out << "  ";
        out << "witness: " << w << "\n";
    }
    for (const auto& c : n.children) node_to_text(c, out, depth + 1);
}

} // namespace

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["schemaVersion"] = schema_version;
    j["command"] = command;
    j["scene"] = scene;
    j["report"] = node_to_json(root);
    j["ok"] = !has_failures();
    return j.dump(2);
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << "scene: " << scene << "  command: " << command << "\n";
    node_to_text(root, out, 0);
    out << (has_failures() ? "RESULT: FAIL" : "RESULT: OK") << "\n";
    return out.str();
}

} // namespace diracred
