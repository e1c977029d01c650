// Command-line harness: runs the checklist and exposes the individual engines.
// Exit codes: 0 success, 1 a FAIL was reported, 2 usage or input error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "crossratio/certificate.hpp"
#include "crossratio/conic.hpp"
#include "crossratio/parser.hpp"
#include "crossratio/perm.hpp"
#include "crossratio/projline.hpp"
#include "crossratio/replay.hpp"

using namespace crossratio;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        depth += c == '(' ? 1 : c == ')' ? -1 : 0;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct RunOptions {
    std::string checks;
    std::string fields = "Q,Q(i),F2,F3,F5";
    std::uint64_t seed = 0;
    unsigned degree_bound = 2;
    std::size_t samples = 100;
    std::string format = "text";
    std::string out;
    std::string cert_dir = RunConfig::default_cert_dir();
    bool no_timing = false;
    bool verbose = false;
};

int cmd_run(const RunOptions& o) {
    RunConfig cfg;
    cfg.fields.clear();
    for (const auto& n : split_commas(o.fields)) cfg.fields.push_back(Field::parse(n));
    cfg.seed = o.seed;
    cfg.degree_bound = o.degree_bound;
    cfg.samples = o.samples;
    cfg.cert_dir = o.cert_dir;
    cfg.timing = !o.no_timing;
    std::set<std::string> sel;
    for (const auto& id : split_commas(o.checks)) sel.insert(id);
    for (const auto& id : sel) dependencies_of(id);  // unknown ids are usage errors

    Report rep;
    try {
        rep = run_checklist(sel, cfg);
    } catch (const ConventionError& e) {
        std::cerr << e.what() << "\n";
        return kFail;
    }
    const std::string doc = emit_report(rep, o.format == "json" ? ReportFormat::Json : ReportFormat::Text, o.verbose);
    if (o.out.empty()) {
        std::cout << doc;
    } else {
        std::ofstream f(o.out);
        if (!f) throw DomainError("cannot write " + o.out);
        f << doc;
    }
    return rep.has_fail() ? kFail : kOk;
}

int cmd_check_identity(const std::string& field, const std::string& lhs, const std::string& rhs) {
    const Field f = Field::parse(field);
    std::set<std::string> ids = collect_identifiers(lhs);
    for (const auto& v : collect_identifiers(rhs)) ids.insert(v);
    const Ring r(f, std::vector<std::string>(ids.begin(), ids.end()));
    const RatFunc a = parse_expr(lhs, r), b = parse_expr(rhs, r);
    if (a == b) {
        std::cout << "EQUAL over " << f.name() << "\n";
        return kOk;
    }
    std::cout << "NOT EQUAL over " << f.name() << "\n  lhs - rhs = " << (a - b).to_string() << "\n";
    return kFail;
}

int cmd_subgroups() {
    const auto& subs = enumerate_subgroups();
    std::cout << "class  order  cyclic  fixed-pt  S[4]  splits  elements\n";
    for (const auto& s : subs) {
        const auto sp = sequence_splits(s.group);
        std::ostringstream line;
        line << std::setw(5) << s.class_id << "  " << std::setw(5) << s.group.order() << "  "
             << std::setw(6) << (s.group.is_cyclic() ? "yes" : "no") << "  " << std::setw(8)
             << (orbits(s.group).has_fixed_point ? "yes" : "no") << "  " << std::setw(4)
             << klein_part(s.group).order() << "  " << std::setw(6) << (sp.splits ? "yes" : "no") << "  "
             << s.group.to_string();
        if (sp.splits && sp.complement && sp.complement->order() < s.group.order()) {
            line << "  complement " << sp.complement->to_string();
        }
        std::cout << line.str() << "\n";
    }
    std::cout << subs.size() << " subgroups, " << conjugacy_class_count(subs) << " conjugacy classes\n";
    return kOk;
}

TernaryForm form_or_default(const std::string& text, const Field& f) {
    if (!text.empty()) return TernaryForm::parse(text, f);
    return f.characteristic() == 2 ? char2_conic(f) : isotropy_form(f);
}

int cmd_conic_decide(const std::string& field, unsigned d) {
    const Field f = Field::parse(field);
    if (f.characteristic() == 2) {
        const TernaryForm q = char2_conic(f);
        const ProjPoint2 p = ProjPoint2::parse("x,1,1", f);
        const bool on = form_eval(q, p).is_point;
        std::cout << q.to_string() << " over " << f.name() << "(x): " << (on ? "point " + p.to_string() : "no point")
                  << "\n";
        return on ? kOk : kFail;
    }
    const auto dec = paper_isotropy_decision(f, d);
    std::cout << isotropy_form(f).to_string() << " over " << f.name() << "(x): "
              << (dec.isotropic ? "isotropic" : "anisotropic") << "\n";
    if (dec.witness) std::cout << "  witness " << dec.witness->to_string() << " (checked)\n";
    if (dec.obstruction) {
        for (const auto& s : dec.obstruction->steps) std::cout << "  [" << (s.holds ? "ok" : "FAILED") << "] " << s.claim << "\n";
        std::cout << "  bounded replay to degree " << d << "; no claim beyond that bound\n";
        return dec.obstruction->verified ? kOk : kFail;
    }
    return kOk;
}

int cmd_conic_search(const std::string& field, const std::string& form, unsigned d) {
    const Field f = Field::parse(field);
    const TernaryForm q = form_or_default(form, f);
    const auto res = bounded_point_search(q, d);
    std::cout << q.to_string() << " over " << f.name() << ", degree <= " << d << ": " << res.enumerated
              << " triples, " << res.solutions << " on the conic";
    if (res.point) std::cout << ", least point " << res.point->to_string();
    std::cout << "\n";
    return kOk;
}

int cmd_conic_parametrize(const std::string& field, const std::string& form, const std::string& point) {
    const Field f = Field::parse(field);
    const TernaryForm q = form_or_default(form, f);
    std::string pt = point;
    if (pt.empty()) {
        if (f.characteristic() == 2) {
            pt = "x,1,1";
        } else if (auto s = sqrt_minus_one(f)) {
            pt = "0," + s->to_string() + ",1";
        } else {
            throw DomainError("no default point over " + f.name() + "; pass --point");
        }
    }
    const auto m = parametrize(q, ProjPoint2::parse(pt, f));
    std::cout << "conic " << q.to_string() << " through " << m.base_point.to_string() << "\n"
              << "  forward s -> (" << m.forward[0].to_string() << " : " << m.forward[1].to_string() << " : "
              << m.forward[2].to_string() << ")\n"
              << "  inverse s = " << m.inverse.to_string() << "  (chart " << m.chart << " != 0)\n"
              << "  checked: form(forward) = 0 and inverse(forward) = s\n";
    return kOk;
}

int cmd_stabilizer(const std::string& field, const std::string& points) {
    const Field f = Field::parse(field);
    std::vector<ProjPoint1> pts;
    for (const auto& p : split_commas(points)) pts.push_back(ProjPoint1::parse(p, f));
    std::vector<Moebius> stab;
    if (pts.size() == 4) {
        stab = borel_stabilizer(pts, f);
        std::cout << "upper-triangular stabilizer";
    } else if (pts.size() == 5) {
        stab = pgl2_stabilizer(pts, f);
        std::cout << "PGL2 stabilizer";
    } else {
        throw DomainError("give 4 points (upper-triangular group) or 5 points (PGL2)");
    }
    std::cout << " over " << f.name() << ": " << stab.size() << " element(s)\n";
    for (const auto& m : stab) std::cout << "  " << m.to_string() << "\n";
    return kOk;
}

int cmd_certificate(const std::string& path, const std::string& field) {
    const Certificate c = Certificate::load(path);
    std::vector<Field> fields;
    if (!field.empty()) {
        fields.push_back(Field::parse(field));
    } else {
        for (const auto& f : RunConfig::default_fields()) {
            if (c.applies_to(f)) fields.push_back(f);
        }
    }
    bool fail = false;
    for (const auto& f : fields) {
        const CertReport r = verify_certificate(c, f);
        std::cout << r.to_string();
        fail = fail || !r.passed;
    }
    return fail ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact replay of the rationality computations for cyclic S of order 4"};
    app.require_subcommand(1);

    RunOptions ro;
    auto* run = app.add_subcommand("run", "run the checklist and print a report");
    run->add_option("--checks", ro.checks, "comma-separated check ids (default: all)");
    run->add_option("--fields", ro.fields, "comma-separated base fields");
    run->add_option("--seed", ro.seed, "seed for sampling checks");
    run->add_option("--degree-bound", ro.degree_bound, "degree bound for conic replays");
    run->add_option("--samples", ro.samples, "sample count for sampling checks");
    run->add_option("--format", ro.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    run->add_option("--out", ro.out, "write the report to FILE");
    run->add_option("--cert-dir", ro.cert_dir, "directory with .cert files");
    run->add_flag("--no-timing", ro.no_timing, "report 0 ms so output is byte-identical across runs");
    run->add_flag("--verbose", ro.verbose, "print details under each text line");

    std::string field, lhs, rhs;
    auto* ident = app.add_subcommand("check-identity", "decide lhs = rhs in a rational function field");
    ident->add_option("--field", field, "base field")->required();
    ident->add_option("--lhs", lhs)->required();
    ident->add_option("--rhs", rhs)->required();

    auto* subs = app.add_subcommand("subgroups", "list the subgroups of the symmetric group on 4 letters");

    std::string form, point;
    unsigned degree = 2;
    auto* conic = app.add_subcommand("conic", "conic tools over k(x)");
    conic->require_subcommand(1);
    auto* decide = conic->add_subcommand("decide", "isotropy of Y^2 - xZ^2 - xW^2");
    decide->add_option("--field", field)->required();
    decide->add_option("--degree-bound", degree);
    auto* search = conic->add_subcommand("search", "exhaustive bounded-degree point search");
    search->add_option("--field", field)->required();
    search->add_option("--form", form, "quadratic form in Y, Z, W over k(x)");
    search->add_option("--degree-bound", degree);
    auto* param = conic->add_subcommand("parametrize", "line-pencil parametrization through a point");
    param->add_option("--field", field)->required();
    param->add_option("--form", form);
    param->add_option("--point", point, "base point Y,Z,W");

    std::string points;
    auto* stab = app.add_subcommand("stabilizer", "brute-force stabilizer of a 4-set or 5-set of points");
    stab->add_option("--field", field)->required();
    stab->add_option("--points", points, "comma-separated points, inf for infinity")->required();

    std::string cert_path;
    auto* cert = app.add_subcommand("certificate", "verify one certificate file");
    cert->add_option("file", cert_path)->required();
    cert->add_option("--field", field, "field (default: all default fields of the certificate's class)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*run) return cmd_run(ro);
        if (*ident) return cmd_check_identity(field, lhs, rhs);
        if (*subs) return cmd_subgroups();
        if (*decide) return cmd_conic_decide(field, degree);
        if (*search) return cmd_conic_search(field, form, degree);
        if (*param) return cmd_conic_parametrize(field, form, point);
        if (*stab) return cmd_stabilizer(field, points);
        if (*cert) return cmd_certificate(cert_path, field);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
