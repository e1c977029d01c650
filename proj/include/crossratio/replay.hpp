#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crossratio/field.hpp"
#include "crossratio/ratfunc.hpp"

namespace crossratio {

/// Raised when the permutation convention fails its sign-table self-test.
class ConventionError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

enum class Verdict { Pass, Fail, Evidence, AssumedByPaper, Skipped };
std::string to_string(Verdict v);

/// Named elements of k(x1..x4) for one characteristic branch.
///   char != 2: w, y, z, a, u = w/y, t = z/y, b = 1 - 2a, x = b^2,
///              y' = (b/2)(u + 1/u), z' = (1/2)(u - 1/u)
///   char 2:    w, y, z, a, u = y/w, t = z/w, x = a(1 + a),
///              y' = u(1 + u), z' = a + u
struct NamedExpressionTable {
    Ring ring;
    std::map<std::string, RatFunc> values;
    const RatFunc& operator[](const std::string& name) const { return values.at(name); }
};

NamedExpressionTable named_expressions(const Field& f);

/// Outcome of one check over the whole field set.
struct CheckResult {
    std::string id;
    std::string anchor;
    Verdict verdict;
    std::string details;
    double ms = 0;
    /// Counts reported by sampling checks (EVIDENCE).
    std::map<std::string, std::int64_t> stats;
};

struct RunConfig {
    std::vector<Field> fields = default_fields();
    std::uint64_t seed = 0;
    unsigned degree_bound = 2;
    std::size_t samples = 100;
    std::string cert_dir = default_cert_dir();
    bool timing = true;

    static std::vector<Field> default_fields();
    static std::string default_cert_dir();
};

struct Report {
    RunConfig config;
    std::vector<CheckResult> checks;  // sorted by id
    bool has_fail() const;
    const CheckResult* find(const std::string& id) const;
};

/// All check ids, in dependency order.
const std::vector<std::string>& checklist_ids();
/// Claim label printed with each check.
const std::string& anchor_for(const std::string& id);
/// Checks an id needs before it can run (aggregates only).
std::vector<std::string> dependencies_of(const std::string& id);

/// Throws ConventionError if the 4-cycle does not act by the expected sign table.
void validate_convention();

/// Runs the selected checks (empty selection: all) plus their dependencies.
/// Throws DomainError on an unknown id.
Report run_checklist(const std::set<std::string>& selection, const RunConfig& config);

enum class ReportFormat { Text, Json };
/// `verbose` adds the details under each text line; JSON always carries them.
std::string emit_report(const Report& r, ReportFormat fmt, bool verbose = false);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace crossratio
