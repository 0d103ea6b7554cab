#ifndef DIRACRED_CORE_REPORT_HPP
#define DIRACRED_CORE_REPORT_HPP

#include <string>
#include <vector>

namespace diracred {

/// Tree of named check results. Children keep construction order, so two
/// runs of the same command emit byte-identical serializations.
struct ReportNode {
    enum class Status { Pass, Fail, Skip, Warn };

    std::string name;
    Status status = Status::Pass;
    std::string detail;
    std::vector<std::string> witnesses;
    std::vector<ReportNode> children;

    ReportNode() = default;
    ReportNode(std::string n, Status s, std::string d = "")
        : name(std::move(n)), status(s), detail(std::move(d)) {}

    ReportNode& add(ReportNode child) {
        children.push_back(std::move(child));
        return children.back();
    }
    ReportNode& add(std::string n, Status s, std::string d = "") {
        return add(ReportNode(std::move(n), s, std::move(d)));
    }
    ReportNode& add_pass(std::string n, std::string d = "") {
        return add(std::move(n), Status::Pass, std::move(d));
    }
    ReportNode& add_fail(std::string n, std::string d = "") {
        return add(std::move(n), Status::Fail, std::move(d));
    }
    ReportNode& add_skip(std::string n, std::string d = "") {
        return add(std::move(n), Status::Skip, std::move(d));
    }
    ReportNode& add_warn(std::string n, std::string d = "") {
        return add(std::move(n), Status::Warn, std::move(d));
    }

    bool has_failures() const;
};

struct Report {
    int schema_version = 1;
    std::string command;
    std::string scene;
    ReportNode root;

    bool has_failures() const { return root.has_failures(); }
    std::string to_json() const;
    std::string to_text() const;
};

const char* status_name(ReportNode::Status s);

} // namespace diracred

#endif
