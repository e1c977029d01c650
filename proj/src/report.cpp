#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "crossratio/replay.hpp"

namespace crossratio {

namespace {

std::string pad(std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
}

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", ms);
    return buf;
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat fmt, bool verbose) {
    if (fmt == ReportFormat::Json) {
        nlohmann::ordered_json run;
        run["seed"] = r.config.seed;
        nlohmann::ordered_json fields = nlohmann::ordered_json::array();
        for (const auto& f : r.config.fields) fields.push_back(f.name());
        run["fields"] = fields;
        run["version"] = kVersion;
        run["degree_bound"] = r.config.degree_bound;
        run["samples"] = r.config.samples;

        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& c : r.checks) {
            nlohmann::ordered_json j;
            j["id"] = c.id;
            j["verdict"] = to_string(c.verdict);
            j["anchor"] = c.anchor;
            j["details"] = c.details;
            // rounded so the document stays short; zero when timing is off
            j["ms"] = static_cast<double>(static_cast<long long>(c.ms * 10 + 0.5)) / 10;
            if (!c.stats.empty()) {
                nlohmann::ordered_json s = nlohmann::ordered_json::object();
                for (const auto& [k, v] : c.stats) s[k] = v;
                j["stats"] = s;
            }
            checks.push_back(j);
        }
        nlohmann::ordered_json doc;
        doc["run"] = run;
        doc["checks"] = checks;
        return doc.dump(2) + "\n";
    }

    std::ostringstream os;
    os << "replay " << kVersion << "  seed " << r.config.seed << "  degree bound " << r.config.degree_bound
       << "  samples " << r.config.samples << "  fields";
    for (const auto& f : r.config.fields) os << ' ' << f.name();
    os << "\n";
    for (const auto& c : r.checks) {
        os << pad(c.id, 16) << pad(to_string(c.verdict), 18) << pad(format_ms(c.ms) + " ms", 12) << c.anchor << "\n";
        if (verbose) os << "    " << c.details << "\n";
    }
    std::size_t fails = 0;
    for (const auto& c : r.checks) fails += c.verdict == Verdict::Fail ? 1 : 0;
    os << (fails ? std::to_string(fails) + " FAIL" : std::string("no FAIL")) << " in " << r.checks.size()
       << " checks\n";
    return os.str();
}

}  // namespace crossratio
