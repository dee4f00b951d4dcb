#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lansim {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateIdError : SimError {
    explicit DuplicateIdError(const std::string& id)
        : SimError("duplicate id: " + id) {}
};

struct UnknownElementError : SimError {
    explicit UnknownElementError(const std::string& what)
        : SimError("unknown element: " + what) {}
};

struct NonPositiveWeightError : SimError {
    NonPositiveWeightError(const std::string& a, const std::string& b)
        : SimError("non-positive weight on link " + a + "-" + b) {}
};

struct NoPathError : SimError {
    NoPathError(const std::string& src, const std::string& dst)
        : SimError("no path from " + src + " to " + dst) {}
};

struct NoBackupError : SimError {
    NoBackupError(const std::string& src, const std::string& dst)
        : SimError("no backup path between " + src + " and " + dst) {}
};

struct ScheduleInPastError : SimError {
    ScheduleInPastError(long long at, long long now)
        : SimError("cannot schedule event at t=" + std::to_string(at) +
                   " before current time t=" + std::to_string(now)) {}
};

struct UnknownFaultError : SimError {
    explicit UnknownFaultError(int id)
        : SimError("unknown fault id: " + std::to_string(id)) {}
};

struct RunNotEndedError : SimError {
    RunNotEndedError() : SimError("metrics report requested before run end") {}
};

struct FaultNotQuiescedError : SimError {
    explicit FaultNotQuiescedError(int id)
        : SimError("fault " + std::to_string(id) + " still has actions in flight") {}
};

struct MissingStatusError : SimError {
    explicit MissingStatusError(const std::string& node)
        : SimError("no status for node " + node) {}
};

struct SyntaxError : SimError {
    explicit SyntaxError(const std::string& detail)
        : SimError("scenario syntax error: " + detail) {}
};

// Aggregated scenario validation failure; one entry per problem, each with a
// location like "links[3].weight".
struct ValidationError : SimError {
    explicit ValidationError(std::vector<std::string> problems)
        : SimError(join(problems)), errors(std::move(problems)) {}

    std::vector<std::string> errors;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "scenario validation failed:";
        for (const auto& e : v) out += "\n  " + e;
        return out;
    }
};

} // namespace lansim
