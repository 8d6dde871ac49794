#include "doctest.h"
#include "padyn/problem.hpp"

using namespace padyn;

namespace {

ordered_json base_doc() {
    return ordered_json{
        {"ring", {{"p", 3}, {"rel_precision", 32}}},
        {"cap", 24},
        {"series", {{"f", {9, 6, 1}}, {"u", {4, 1}}}},
        {"tasks", ordered_json::array()},
    };
}

} // namespace

TEST_CASE("scalar literal grammar") {
    auto R = make_zp(3, 16);
    CHECK(parse_scalar(7, R).agrees_with(PadicScalar::from_long(R, 7)));
    CHECK(parse_scalar("1/4", R).agrees_with(PadicScalar::from_rational(R, mpq_class(1, 4))));
    CHECK(parse_scalar("-5/2", R).agrees_with(PadicScalar::from_rational(R, mpq_class(-5, 2))));
    CHECK(parse_scalar("p^2*5", R).agrees_with(PadicScalar::from_long(R, 45)));
    CHECK(parse_scalar("3^2*5", R).agrees_with(PadicScalar::from_long(R, 45)));
    CHECK(parse_scalar("p^-1*2", R).agrees_with(PadicScalar::from_rational(R, mpq_class(2, 3))));

    auto R9 = make_unramified(3, 2, 16);
    PadicScalar gen = parse_scalar(ordered_json::array({0, 1}), R9);
    CHECK(gen.exact_coords()[1] == 1);

    CHECK_THROWS_AS(parse_scalar("1/3x", R), InputError);
    CHECK_THROWS_AS(parse_scalar("q^2*5", R), InputError);
    CHECK_THROWS_AS(parse_scalar(ordered_json::array({0, 1, 2}), R), InputError);
    CHECK_THROWS_AS(parse_scalar("1/6", R), InputError); // denominator divisible by p
}

TEST_CASE("strict document schema") {
    CHECK_NOTHROW(parse_problem(base_doc()));
    ordered_json extra = base_doc();
    extra["typo_field"] = 1;
    CHECK_THROWS_AS(parse_problem(extra), InputError);
    ordered_json badring = base_doc();
    badring["ring"]["modulos"] = ordered_json::array({1, 0, 1});
    CHECK_THROWS_AS(parse_problem(badring), InputError);
    ordered_json badtask = base_doc();
    badtask["tasks"].push_back({{"cmd", "analyze"}, {"f", "f"}, {"surprise", true}});
    ProblemDocument doc = parse_problem(badtask);
    CHECK_THROWS_AS(run_task(doc, doc.tasks[0]), InputError);
    ordered_json noprime = base_doc();
    noprime["ring"].erase("p");
    CHECK_THROWS_AS(parse_problem(noprime), InputError);
}

TEST_CASE("document defaults and named series") {
    ProblemDocument doc = parse_problem(base_doc());
    CHECK(doc.ring->p() == 3);
    CHECK(doc.cap == 24);
    CHECK(doc.effective_total_cap() == 12);
    CHECK(doc.named("f").coeff(1).agrees_with(PadicScalar::from_long(doc.ring, 9)));
    CHECK(doc.named("u").coeff(1).agrees_with(PadicScalar::from_long(doc.ring, 4)));
    CHECK_THROWS_AS(doc.named("nope"), InputError);
}

TEST_CASE("analyze task on the worked example") {
    ordered_json j = base_doc();
    j["tasks"].push_back({{"cmd", "analyze"}, {"f", "f"}, {"m", 2}});
    ProblemDocument doc = parse_problem(j);
    ordered_json rep = run_task(doc, doc.tasks[0]);
    CHECK(rep.at("wideg") == 3);
    CHECK(rep.at("stability") == "stable");
    CHECK(rep.at("criterion_A").at("holds") == false);
    CHECK(rep.at("criterion_B").at("holds") == true);
    CHECK(rep.at("status") == "certified-negative"); // criterion A fails honestly
}

TEST_CASE("semiconj task end to end") {
    ordered_json j = base_doc();
    j["tasks"].push_back({{"cmd", "semiconj"}, {"f", "f"}, {"m", 2}, {"u", "u"}, {"n", 2}});
    ProblemDocument doc = parse_problem(j);
    ordered_json rep = run_task(doc, doc.tasks[0]);
    CHECK(rep.at("status") == "certified");
    CHECK(rep.at("semiconjugacy_verified") == true);
    CHECK(rep.at("extension_degree") == 1);
    CHECK(rep.at("criterion_B").at("holds") == true);
    CHECK(rep.at("f0").is_array());
    CHECK(rep.at("u0_commutes_with_f0") == true);
    CHECK(rep.at("transport").at("iterate_identity") == true);
}

TEST_CASE("task reports are deterministic") {
    ordered_json j = base_doc();
    j["tasks"].push_back({{"cmd", "analyze"}, {"f", "f"}, {"m", 2}});
    j["tasks"].push_back({{"cmd", "log"}, {"f", "f"}});
    j["tasks"].push_back({{"cmd", "commute"}, {"f", "f"}, {"g", "u"}});
    ProblemDocument doc = parse_problem(j);
    std::string a = run_document(doc).dump();
    std::string b = run_document(parse_problem(j)).dump();
    CHECK(a == b);
}

TEST_CASE("exit codes summarize task statuses") {
    ordered_json ok;
    ok["tasks"] = ordered_json::array({{{"status", "certified"}}});
    CHECK(exit_code_for(ok) == 0);
    ordered_json neg;
    neg["tasks"] = ordered_json::array({{{"status", "certified"}}, {{"status", "certified-negative"}}});
    CHECK(exit_code_for(neg) == 1);
    ordered_json ind;
    ind["tasks"] = ordered_json::array(
        {{{"status", "certified-negative"}}, {{"status", "indeterminate-at-precision"}}});
    CHECK(exit_code_for(ind) == 2);
}

TEST_CASE("built-in selftest passes") {
    ordered_json rep = run_selftest();
    for (const auto& t : rep.at("tasks")) {
        INFO(t.dump());
        CHECK(t.at("status") == "certified");
    }
    CHECK(exit_code_for(rep) == 0);
}
