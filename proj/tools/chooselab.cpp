#include <chrono>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chooselab/claims.hpp"
#include "chooselab/discharging.hpp"
#include "chooselab/graph_io.hpp"
#include "chooselab/key_lemma.hpp"
#include "chooselab/multicolor.hpp"
#include "chooselab/reduction.hpp"

using namespace chooselab;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

void emit(const json& report, const std::string& format, const std::function<void(const json&)>& text) {
    if (format == "json")
        std::cout << report.dump(2) << "\n";
    else
        text(report);
}

std::string failure_text(const SchemeTrace& t) {
    if (auto f = t.first_failure()) return f->step + ": " + (f->error.empty() ? f->inequality : f->error);
    if (!t.exhausted()) return "vertices left undeleted";
    return "";
}

json trace_summary(const SchemeTrace& t) {
    json j{{"legal", t.legal()}, {"exhausted", t.exhausted()}, {"assumptions", t.assumptions()}, {"flags", t.flags()}};
    if (!t.fully_passes()) j["failure"] = failure_text(t);
    return j;
}

// ---------------------------------------------------------------------------
// verify-claims

struct ClaimsArgs {
    std::string claim;
    bool literal = false;
    bool strict = false;
    int scale = 1;
    std::size_t samples = 64;
    std::uint64_t seed = 7;
    std::string format = "text";
};

json variant_json(const VariantReport& v, bool with_steps) {
    json j{{"label", v.label},
           {"passes", v.passes()},
           {"triangle_free", v.triangle_free},
           {"golden_values", v.golden_values},
           {"minimality", v.minimality},
           {"concrete_runs", v.concrete_runs},
           {"concrete_failures", v.concrete_failures},
           {"scheme", with_steps ? trace_to_json(v.trace) : trace_summary(v.trace)}};
    if (v.nice_checked) j["nice"] = v.nice.nice;
    json mm = json::array();
    for (const auto& m : v.mismatches) {
        json x{{"vertex", m.vertex}, {"expected", {m.expected.first, m.expected.second}}};
        x["got"] = m.got ? json{m.got->first, m.got->second} : json(nullptr);
        mm.push_back(x);
    }
    j["profile_mismatches"] = mm;
    if (v.literal_trace) {
        j["literal"] = with_steps ? trace_to_json(*v.literal_trace) : trace_summary(*v.literal_trace);
        j["literal"]["passes"] = v.literal_trace->fully_passes();
        j["literal"]["note"] = v.literal_note;
    }
    return j;
}

int cmd_verify_claims(const ClaimsArgs& a) {
    if (a.scale < 1) throw Error("BadArgument", "--scale must be at least 1");
    VerifyOptions opt;
    opt.scale = a.scale;
    opt.concrete_samples = a.samples;
    opt.seed = a.seed;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ClaimReport> reports;
    if (!a.claim.empty())
        reports.push_back(verify_claim(a.claim, opt));
    else
        reports = verify_all(opt).claims;
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json claims = json::array();
    std::size_t passed = 0, literal_failures = 0;
    for (const auto& r : reports) {
        json vs = json::array();
        for (const auto& v : r.variants) {
            vs.push_back(variant_json(v, !a.claim.empty()));
            if (v.literal_trace && !v.literal_trace->fully_passes()) ++literal_failures;
        }
        passed += r.passes();
        claims.push_back({{"id", r.id}, {"statement", r.statement}, {"depends_on", r.depends_on}, {"passes", r.passes()},
                          {"variants", vs}});
    }
    const bool ok = passed == reports.size() && !(a.strict && literal_failures > 0);
    json report{{"schema_version", kSchemaVersion},
                {"command", "verify-claims"},
                {"scale", a.scale},
                {"claims", claims},
                {"passed", passed},
                {"total", reports.size()},
                {"literal_failures", literal_failures},
                {"strict", a.strict},
                {"seconds", seconds},
                {"ok", ok}};

    emit(report, a.format, [&](const json& r) {
        for (const auto& c : r["claims"]) {
            std::cout << (c["passes"].get<bool>() ? "PASS " : "FAIL ") << c["id"].get<std::string>() << "  "
                      << c["statement"].get<std::string>() << "\n";
            for (const auto& v : c["variants"]) {
                const bool vp = v["passes"].get<bool>();
                std::cout << "  " << (vp ? "ok   " : "FAIL ") << v["label"].get<std::string>();
                if (!v["scheme"].value("legal", true) || !v["scheme"].value("exhausted", true))
                    std::cout << "  scheme: " << v["scheme"].value("failure", std::string("illegal"));
                if (!v["profile_mismatches"].empty())
                    std::cout << "  profile mismatches: " << v["profile_mismatches"].size();
                if (v["concrete_failures"].get<std::size_t>() > 0)
                    std::cout << "  concrete failures: " << v["concrete_failures"].get<std::size_t>();
                if (!v["scheme"]["assumptions"].empty()) std::cout << "  (assumption-backed)";
                std::cout << "\n";
                if (a.literal && v.contains("literal")) {
                    const auto& l = v["literal"];
                    std::cout << "       printed sequence: "
                              << (l["passes"].get<bool>() ? "passes" : "fails at " + l.value("failure", std::string()));
                    if (!l["note"].get<std::string>().empty()) std::cout << "  [" << l["note"].get<std::string>() << "]";
                    std::cout << "\n";
                }
                if (v["scheme"].contains("branches"))
                    for (const auto& b : v["scheme"]["branches"]) {
                        std::cout << "       branch " << b["label"].get<std::string>() << ":\n";
                        for (const auto& s : b["steps"])
                            std::cout << "         " << s["step"].get<std::string>() << "  " << s["inequality"].get<std::string>()
                                      << "  [" << s["verdict"].get<std::string>() << "]\n";
                    }
            }
        }
        std::cout << r["passed"] << "/" << r["total"] << " claims pass";
        if (a.literal) std::cout << ", " << r["literal_failures"] << " printed sequences fail";
        std::cout << " (" << r["seconds"].get<double>() << " s)\n";
    });
    return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// check-choosability

struct ChooseArgs {
    std::string graph, f, g, format = "text";
    int a = 0, b = 0;
    bool colorable = false;
};

int cmd_check_choosability(const ChooseArgs& args) {
    const PlaneGraph g = load_graph(args.graph);
    json report{{"schema_version", kSchemaVersion}, {"command", "check-choosability"}, {"graph", args.graph}};
    bool yes = false;
    if (args.colorable) {
        if (args.a <= 0 || args.b <= 0) throw Error("BadArgument", "--colorable needs --a and --b");
        const auto c = colorable_ab(g, args.a, args.b);
        yes = c.has_value();
        report["question"] = "(" + std::to_string(args.a) + "," + std::to_string(args.b) + ")-colorable";
        report["witness"] = c ? color_sets_to_json(*c) : json(nullptr);
    } else {
        if (args.f.empty() || args.g.empty()) throw Error("BadArgument", "need --f and --g (or --colorable --a --b)");
        const auto f = per_vertex_ints(args.f, g, "--f");
        const auto d = per_vertex_ints(args.g, g, "--g");
        const ChoosabilityVerdict v = choosable(g, f, d);
        yes = v.choosable;
        report["question"] = "(f,g)-choosable with f=" + args.f + ", g=" + args.g;
        report["classes_checked"] = v.classes_checked;
        report["witness"] = v.witness ? color_sets_to_json(*v.witness) : json(nullptr);
    }
    report["verdict"] = yes ? "yes" : "no";
    emit(report, args.format, [&](const json& r) {
        std::cout << r["question"].get<std::string>() << ": " << r["verdict"].get<std::string>() << "\n";
        if (r.contains("classes_checked")) std::cout << "list-assignment classes checked: " << r["classes_checked"] << "\n";
        if (!r["witness"].is_null())
            std::cout << (args.colorable ? "colouring: " : "uncolourable lists: ") << r["witness"].dump() << "\n";
    });
    return yes ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// discharge

int cmd_discharge(const std::string& path, const std::string& format) {
    const PlaneGraph g = load_graph(path);
    const ChargeLedger l = final_charges(g);
    json entries = json::array();
    for (const auto& e : l.entries)
        entries.push_back({{"element", e.element},
                           {"degree", e.degree},
                           {"initial", to_twelfths(e.initial)},
                           {"in", to_twelfths(e.in)},
                           {"out", to_twelfths(e.out)},
                           {"final", to_twelfths(e.final_charge())}});
    json transfers = json::array();
    for (const auto& t : l.transfers) {
        json x{{"from", t.from}, {"to", t.to}, {"amount", to_twelfths(t.amount)}, {"rule", t.rule}};
        if (!t.note.empty()) x["note"] = t.note;
        transfers.push_back(x);
    }
    json report{{"schema_version", kSchemaVersion},
                {"command", "discharge"},
                {"graph", path},
                {"ledger", entries},
                {"transfers", transfers},
                {"total_initial", to_twelfths(l.total_initial())},
                {"total_final", to_twelfths(l.total_final())},
                {"conserved", l.conserved()},
                {"negative", l.negative()},
                {"anomalies", l.anomalies},
                {"notes", l.notes}};
    emit(report, format, [&](const json& r) {
        std::cout << "element  degree  initial  in  out  final\n";
        for (const auto& e : l.entries)
            std::cout << e.element << "  " << e.degree << "  " << to_fraction(e.initial) << "  " << to_fraction(e.in) << "  "
                      << to_fraction(e.out) << "  " << to_fraction(e.final_charge()) << "\n";
        std::cout << "transfers: " << r["transfers"].size() << "\n";
        for (const auto& t : l.transfers)
            std::cout << "  " << t.from << " -> " << t.to << "  " << to_fraction(t.amount) << "  " << t.rule
                      << (t.note.empty() ? "" : "  " + t.note) << "\n";
        std::cout << "total initial " << to_fraction(l.total_initial()) << ", total final " << to_fraction(l.total_final())
                  << (l.conserved() ? " (conserved)" : " (NOT conserved)") << "\n";
        std::cout << "negative final charge: " << (l.negative().empty() ? "none" : "") ;
        for (const auto& n : l.negative()) std::cout << n << " ";
        std::cout << "\n";
        for (const auto& a : l.anomalies) std::cout << "anomaly: " << a << "\n";
        for (const auto& n : l.notes) std::cout << "note: " << n << "\n";
    });
    return l.conserved() ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// audit

json audit_json(const AuditReport& r, bool warning) {
    json f = json::array();
    for (const auto& x : r.findings) f.push_back({{"key", x.key}, {"message", x.message}});
    return {{"name", r.name}, {"passed", r.passed()}, {"findings", f}, {"stats", r.stats}, {"info", r.info},
            {"findings_are_warnings", warning}};
}

AuditReport key_lemma_audit() {
    AuditReport r{"key-lemma", {}, {}, {}};
    for (auto c : {FrontierCase::P2, FrontierCase::P3, FrontierCase::P4, FrontierCase::K13}) {
        const KeyLemmaReport k = verify_key_lemma_case(c);
        const std::string name = to_string(c);
        r.stats[name + ":classes"] = static_cast<std::int64_t>(k.classes);
        r.stats[name + ":colorable"] = static_cast<std::int64_t>(k.colorable);
        r.stats[name + ":verified"] = static_cast<std::int64_t>(k.verified);
        r.info.push_back(name + ": " + k.mode);
        if (!k.passed())
            r.findings.push_back({name, std::to_string(k.colorable - k.verified) + " colourable assignments without a construction"});
    }
    return r;
}

int cmd_audit(std::vector<std::string> names, bool lenient, int dmax, const std::string& format) {
    const std::vector<std::string> all{"families", "observations", "ineq6plus", "case-ledger", "four-face", "key-lemma"};
    if (names.empty() || (names.size() == 1 && names[0] == "all")) names = all;
    json audits = json::array();
    bool ok = true;
    for (const auto& n : names) {
        AuditReport r;
        if (n == "families") r = audit_family_partition();
        else if (n == "observations") r = audit_transfer_observations();
        else if (n == "ineq6plus") r = audit_inequality_6plus(dmax);
        else if (n == "case-ledger") r = audit_case_ledger();
        else if (n == "four-face") r = sweep_4face();
        else if (n == "key-lemma") r = key_lemma_audit();
        else throw Error("BadArgument", "unknown audit '" + n + "'");
        const bool warning = lenient && n == "four-face";
        if (!r.passed() && !warning) ok = false;
        audits.push_back(audit_json(r, warning));
    }
    json report{{"schema_version", kSchemaVersion}, {"command", "audit"}, {"audits", audits}, {"ok", ok}};
    emit(report, format, [](const json& r) {
        for (const auto& a : r["audits"]) {
            const bool passed = a["passed"].get<bool>();
            std::cout << (passed ? "PASS " : a["findings_are_warnings"].get<bool>() ? "WARN " : "FAIL ")
                      << a["name"].get<std::string>() << "\n";
            for (const auto& [k, v] : a["stats"].items()) std::cout << "  " << k << " = " << v << "\n";
            for (const auto& i : a["info"]) std::cout << "  info: " << i.get<std::string>() << "\n";
            for (const auto& f : a["findings"])
                std::cout << "  finding: " << f["key"].get<std::string>() << ": " << f["message"].get<std::string>() << "\n";
        }
    });
    return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// schemes run

int cmd_schemes_run(const std::string& path, const std::string& format) {
    const json cfg = read_json_file(path);
    if (!cfg.contains("graph") || !cfg.contains("profile") || !cfg.contains("scheme"))
        throw Error("BadInput", "config needs \"graph\", \"profile\" and \"scheme\"");
    const PlaneGraph g = graph_from_json(cfg["graph"]);
    const int scale = cfg.value("scale", 1);
    if (scale < 1) throw Error("BadInput", "scale must be at least 1");
    Profile p;
    for (const auto& [k, v] : cfg["profile"].items()) {
        if (!v.is_array() || v.size() != 2) throw Error("BadInput", "profile entries are [f, g]");
        p[detail::vertex_id(k)] = {v[0].get<int>(), v[1].get<int>()};
    }
    for (int v : g.vertices())
        if (!p.count(v)) throw Error("BadInput", "profile has no entry for vertex " + std::to_string(v));
    p = scale_profile(p, scale);
    const Scheme sc = scale_scheme(scheme_from_json(cfg["scheme"]), scale);
    const std::string mode = cfg.value("mode", std::string("symbolic"));

    json report{{"schema_version", kSchemaVersion}, {"command", "schemes run"}, {"config", path}, {"mode", mode}};
    bool ok = false;
    if (mode == "symbolic") {
        const SchemeTrace t = run_scheme_symbolic(SymbolicState::make(g, p), sc);
        report["trace"] = trace_to_json(t);
        ok = t.fully_passes();
    } else if (mode == "concrete") {
        if (!cfg.contains("lists")) throw Error("BadInput", "concrete mode needs \"lists\"");
        ListAssignment la;
        Demand d;
        for (const auto& [k, v] : cfg["lists"].items()) la[detail::vertex_id(k)] = ColorSet::from_vector(v.get<std::vector<int>>());
        for (const auto& [v, fg] : p) d[v] = fg.second;
        const ConcreteTrace t = run_scheme_concrete(g, la, d, sc);
        json steps = json::array();
        for (const auto& r : t.steps)
            steps.push_back({{"step", r.step},
                             {"inequality", r.inequality},
                             {"lhs", r.lhs},
                             {"rhs", r.rhs},
                             {"verdict", r.legal ? "legal" : "illegal"},
                             {"error", r.error}});
        report["trace"] = {{"legal", t.legal}, {"exhausted", t.exhausted}, {"steps", steps}};
        report["coloring"] = t.coloring ? color_sets_to_json(*t.coloring) : json(nullptr);
        ok = t.legal && t.exhausted && t.coloring.has_value();
    } else {
        throw Error("BadInput", "mode must be symbolic or concrete");
    }
    report["ok"] = ok;
    emit(report, format, [&](const json& r) {
        const json& t = r["trace"];
        auto print_steps = [](const json& steps) {
            for (const auto& s : steps)
                std::cout << "  " << s["step"].get<std::string>() << "  " << s["inequality"].get<std::string>() << "  lhs="
                          << s["lhs"] << " rhs=" << s["rhs"] << "  [" << s["verdict"].get<std::string>() << "]\n";
        };
        if (t.contains("branches"))
            for (const auto& b : t["branches"]) {
                std::cout << "branch " << b["label"].get<std::string>() << "\n";
                print_steps(b["steps"]);
            }
        else
            print_steps(t["steps"]);
        std::cout << "legal: " << t["legal"] << ", all vertices deleted: " << t["exhausted"] << "\n";
    });
    return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification workbench for multi-fold list colouring of triangle-free plane graphs"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--report", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    ClaimsArgs ca;
    auto* verify = app.add_subcommand("verify-claims", "Check the reducible-configuration catalog");
    verify->add_option("--claim", ca.claim, "Only this claim id");
    verify->add_flag("--literal", ca.literal, "Also show the printed step sequences where they differ");
    verify->add_flag("--strict", ca.strict, "Fail when a printed sequence fails");
    verify->add_option("--scale", ca.scale, "Multiply every size by this factor")->check(CLI::PositiveNumber);
    verify->add_option("--samples", ca.samples, "Random concrete list assignments per variant");
    verify->add_option("--seed", ca.seed, "Seed for concrete sampling");

    ChooseArgs ch;
    auto* choose = app.add_subcommand("check-choosability", "Exact (f,g)-choosability or (a,b)-colourability");
    choose->add_option("--graph", ch.graph, "Graph JSON file")->required();
    choose->add_option("--f", ch.f, "List sizes: integer or JSON object");
    choose->add_option("--g", ch.g, "Demands: integer or JSON object");
    choose->add_option("--a", ch.a, "Palette size for --colorable");
    choose->add_option("--b", ch.b, "Colours per vertex for --colorable");
    choose->add_flag("--colorable", ch.colorable, "Decide (a,b)-colourability instead");

    std::string discharge_graph;
    auto* discharge = app.add_subcommand("discharge", "Initial and final charges of an embedded graph");
    discharge->add_option("--graph", discharge_graph, "Embedded graph JSON file")->required();

    std::vector<std::string> audit_names;
    bool lenient = false;
    int dmax = 12;
    auto* audit = app.add_subcommand("audit", "Audits of the charge rules");
    audit->add_option("names", audit_names, "families | observations | ineq6plus | case-ledger | four-face | key-lemma | all");
    audit->add_flag("--lenient", lenient, "Report four-face shortfalls as warnings");
    audit->add_option("--dmax", dmax, "Largest degree for the 6+ inequality sweep");

    std::string config;
    auto* schemes = app.add_subcommand("schemes", "Reduction schemes");
    schemes->require_subcommand(1);
    auto* run = schemes->add_subcommand("run", "Run a scheme from a JSON config");
    run->add_option("--config", config, "Config file")->required();

    for (auto* sub : {verify, choose, discharge, audit, run})
        sub->add_option("--report", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        ca.format = ch.format = format;
        if (*verify) return cmd_verify_claims(ca);
        if (*choose) return cmd_check_choosability(ch);
        if (*discharge) return cmd_discharge(discharge_graph, format);
        if (*audit) return cmd_audit(audit_names, lenient, dmax, format);
        if (*run) return cmd_schemes_run(config, format);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
