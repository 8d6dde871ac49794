#include "CLI11.hpp"

#include <fstream>
#include <iostream>

#include "padyn/problem.hpp"

using namespace padyn;

namespace {

struct Options {
    std::string input;
    std::string output;
    long precision = 0;
    long cap = 0;
    long total_cap = 0;
    bool quiet = false;
    bool json_only = false;
};

void add_common(CLI::App* sub, Options& opt, bool needs_input) {
    auto* in = sub->add_option("--input,-i", opt.input, "problem document (JSON)");
    if (needs_input) in->required();
    sub->add_option("--precision,-r", opt.precision, "override rel_precision");
    sub->add_option("--cap,-D", opt.cap, "override the series cap");
    sub->add_option("--total-cap,-T", opt.total_cap, "override the bivariate total cap");
    sub->add_option("--output,-o", opt.output, "write the JSON report to a file");
    sub->add_flag("--quiet,-q", opt.quiet, "suppress the stderr summary");
    sub->add_flag("--json-only", opt.json_only, "JSON on stdout only, nothing on stderr");
}

ProblemDocument load(const Options& opt) {
    std::ifstream in(opt.input);
    if (!in) throw InputError("cannot open input file: " + opt.input);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
    if (opt.precision > 0) j["ring"]["rel_precision"] = opt.precision;
    if (opt.cap > 0) j["cap"] = opt.cap;
    if (opt.total_cap > 0) j["total_cap"] = opt.total_cap;
    return parse_problem(j);
}

int emit(const ordered_json& report, const Options& opt) {
    std::string text = report.dump(2);
    if (!opt.output.empty()) {
        std::ofstream out(opt.output);
        if (!out) throw InputError("cannot write output file: " + opt.output);
        out << text << "\n";
    }
    std::cout << text << "\n";
    if (!opt.quiet && !opt.json_only) {
        for (const auto& t : report.at("tasks")) {
            std::string label = t.contains("check") ? t.at("check").get<std::string>()
                                                    : t.at("cmd").get<std::string>();
            std::cerr << "  " << label << ": " << t.at("status").get<std::string>() << "\n";
        }
    }
    return exit_code_for(report);
}

/// Single-command mode: build one task from the flags.
int run_single(const char* cmd, const Options& opt, const ordered_json& extra) {
    ProblemDocument doc = load(opt);
    ordered_json task = extra;
    task["cmd"] = cmd;
    if (!task.contains("f") && (doc.series.count("f") || doc.units.count("f"))) task["f"] = "f";
    ordered_json rep;
    rep["ring"] = {{"p", doc.ring->p()},
                   {"residue_degree", doc.ring->residue_degree()},
                   {"rel_precision", doc.ring->rel_precision()}};
    rep["cap"] = doc.cap;
    rep["tasks"] = ordered_json::array({run_task(doc, task)});
    return emit(rep, opt);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"padyn: certified computations with p-adic dynamical systems"};
    app.require_subcommand(1);

    Options opt;
    std::string f_name, g_name, u_name, L_name, cmp_name, h_name, fS_name, a_lit;
    long m = 0, n = 0;

    auto* analyze = app.add_subcommand("analyze", "wideg, stability, Newton polygon, criteria");
    add_common(analyze, opt, true);
    analyze->add_option("--f", f_name, "series to analyze (default: \"f\")");
    analyze->add_option("--m", m, "also test criterion B for this m");

    auto* logc = app.add_subcommand("log", "Lubin logarithm by both algorithms");
    add_common(logc, opt, true);
    logc->add_option("--f", f_name, "series (default: \"f\")");

    auto* group = app.add_subcommand("group", "formal group law from the logarithm");
    add_common(group, opt, true);
    group->add_option("--f", f_name, "noninvertible series whose log to use");
    group->add_option("--L", L_name, "named logarithm series to use directly");

    auto* endo = app.add_subcommand("endo", "endomorphism [a] of the group law");
    add_common(endo, opt, true);
    endo->add_option("--f", f_name, "noninvertible series whose log to use");
    endo->add_option("--L", L_name, "named logarithm series");
    endo->add_option("--a", a_lit, "scalar literal")->required();
    endo->add_option("--compare", cmp_name, "named series to compare against");

    auto* commute = app.add_subcommand("commute", "commutation check or commuter solve");
    add_common(commute, opt, true);
    commute->add_option("--f", f_name, "series (default: \"f\")");
    commute->add_option("--g", g_name, "second series for the check");
    commute->add_option("--a", a_lit, "derivative for solve_commuting");

    auto* semiconj = app.add_subcommand("semiconj", "descent pipeline f(X^m) = f0(X)^m");
    add_common(semiconj, opt, true);
    semiconj->add_option("--f", f_name, "series (default: \"f\")");
    semiconj->add_option("--m", m, "exponent of the isogeny X^m");
    semiconj->add_option("--u", u_name, "commuter to lift");
    semiconj->add_option("--n", n, "transport-check iterate");
    semiconj->add_option("--isogeny", h_name, "candidate isogeny (verification-only mode)");
    semiconj->add_option("--f-upstairs", fS_name, "upstairs series (verification-only mode)");

    auto* runc = app.add_subcommand("run", "run every task listed in the document");
    add_common(runc, opt, true);

    auto* selftest = app.add_subcommand("selftest", "built-in worked-example regression suite");
    add_common(selftest, opt, false);

    CLI11_PARSE(app, argc, argv);

    try {
        ordered_json extra;
        if (!f_name.empty()) extra["f"] = f_name;
        if (!g_name.empty()) extra["g"] = g_name;
        if (!u_name.empty()) extra["u"] = u_name;
        if (!L_name.empty()) extra["L"] = L_name;
        if (!cmp_name.empty()) extra["compare"] = cmp_name;
        if (!h_name.empty()) extra["h"] = h_name;
        if (!fS_name.empty()) extra["f_S"] = fS_name;
        if (!a_lit.empty()) extra["a"] = a_lit;
        if (m > 0) extra["m"] = m;
        if (n > 0) extra["n"] = n;

        if (analyze->parsed()) return run_single("analyze", opt, extra);
        if (logc->parsed()) return run_single("log", opt, extra);
        if (group->parsed()) return run_single("group", opt, extra);
        if (endo->parsed()) return run_single("endo", opt, extra);
        if (commute->parsed()) return run_single("commute", opt, extra);
        if (semiconj->parsed()) return run_single("semiconj", opt, extra);
        if (runc->parsed()) {
            ProblemDocument doc = load(opt);
            return emit(run_document(doc), opt);
        }
        if (selftest->parsed()) return emit(run_selftest(), opt);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedRamifiedError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}
