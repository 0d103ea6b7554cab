#ifndef DIRACRED_CORE_CHART_HPP
#define DIRACRED_CORE_CHART_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace diracred {

/// A named coordinate chart. Every symbolic object carries one; two objects
/// interoperate only when their charts agree structurally.
struct Chart {
    std::string name;
    std::vector<std::string> coords;

    std::size_t dim() const { return coords.size(); }

    std::optional<std::size_t> index_of(const std::string& c) const {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] == c) return i;
        return std::nullopt;
    }
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::string name, std::vector<std::string> coords) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].empty())
            throw Error(ErrorKind::ValidationError, "empty coordinate name in chart '" + name + "'");
        for (std::size_t j = i + 1; j < coords.size(); ++j)
            if (coords[i] == coords[j])
                throw Error(ErrorKind::ValidationError,
                            "duplicate coordinate '" + coords[i] + "' in chart '" + name + "'");
    }
    auto c = std::make_shared<Chart>();
    c->name = std::move(name);
    c->coords = std::move(coords);
    return c;
}

inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->coords == b->coords;
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where) {
    if (!same_chart(a, b))
        throw Error(ErrorKind::ChartMismatch, std::string(where) + ": charts disagree");
}

} // namespace diracred

#endif
