#include "bbkit/conic_image.hpp"
#include "bbkit/sampling.hpp"
#include "bbkit/verify.hpp"
#include "doctest.h"

using namespace bbkit;

TEST_CASE("report bookkeeping") {
    VerificationReport a, b;
    a.record({"x", "y"}, true);
    a.record("x", false, "broken", {{"seed", 1}});
    a.details["count"] = 2;
    a.details["list"] = {1};
    b.record("y", true);
    b.details["count"] = 3;
    b.details["list"] = {2};
    b.details["nested"]["k"] = 1;
    CHECK(a.attempted == a.passed + a.failures.size());
    CHECK_FALSE(a.ok());
    a.merge(b);
    CHECK(a.attempted == 3);
    CHECK(a.passed == 2);
    CHECK(a.breakdown["x"].attempted == 2);
    CHECK(a.breakdown["y"].passed == 2);
    CHECK(a.details["count"] == 5);
    CHECK(a.details["list"] == Json({1, 2}));
    CHECK(a.details["nested"]["k"] == 1);
    const Json j = to_json(a);
    CHECK(j["failures"][0]["check"] == "x");
    CHECK(j["failures"][0]["witness"]["seed"] == 1);
    CHECK_FALSE(j.contains("seconds"));
}

TEST_CASE("conic specs and curves round trip through JSON") {
    auto F = FieldTower::build(3, 1);
    const BBContext ctx = BBContext::build(F);
    Rng rng(2);
    for (CaseLabel label : {CaseLabel::S1, CaseLabel::T1, CaseLabel::E1, CaseLabel::E4}) {
        const auto spec = sample_conic(*F, label, rng);
        REQUIRE(spec.has_value());
        const ConicSpec back = conic_spec_from_json(*F, Json::parse(to_json(*spec).dump()));
        CHECK(back.frame.M == spec->frame.M);
        CHECK(back.form == spec->form);

        const NRC curve = conic_image(ctx, *spec).curve;
        const NRC again = nrc_from_json(*F, Json::parse(to_json(curve).dump()));
        CHECK(again.embedding == curve.embedding);
        CHECK(again.level == curve.level);
    }
    CHECK_THROWS_AS(conic_spec_from_json(*F, Json::parse(R"({"frame": [[1,0,0],[0,1,0],[0,0,1]], "form": [1,0,0,0,0,0]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(conic_spec_from_json(*F, Json::parse(R"({"frame": [[1,0],[0,1]], "form": [1,1,1,0,0,0]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(conic_spec_from_json(*F, Json::parse(R"({"frame": [[1,0,0],[0,1,0],[0,0,1]], "form": [5,1,1,0,0,0]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(vec_from_json(*F, Json::parse("[1, -2]")), std::invalid_argument);
}

TEST_CASE("map_conic reports the expected profile") {
    auto F = FieldTower::build(2, 2);
    const BBContext ctx = BBContext::build(F);
    Rng rng(6);
    for (CaseLabel label : all_case_labels) {
        if (!case_reachable(label, F->q())) continue;
        const auto spec = sample_conic(*F, label, rng);
        REQUIRE(spec.has_value());
        const Json j = map_conic(ctx, *spec);
        CAPTURE(to_string(label));
        CHECK(j["label"] == to_string(label));
        CHECK(j["match"] == true);
        CHECK(j["image"]["k"] == expected_profile(label).k);
        CHECK(j["special"]["type"] == expected_profile(label).type);
        CHECK(j.contains("r_on_h") == (label == CaseLabel::E1));
    }
}

TEST_CASE("configuration errors") {
    RunConfig cfg;
    cfg.p = 4;
    CHECK_THROWS_AS(run_selftest(cfg), ConfigError);
    cfg.p = 2;
    CHECK_THROWS_AS(run_forward(cfg), ConfigError);
    cfg.p = 5;
    CHECK_THROWS_AS(run_converse(cfg), ConfigError);
    cfg.suites = {"nonsense"};
    CHECK_THROWS_AS(run_selftest(cfg), ConfigError);
    cfg.suites = {"embedding"};
    CHECK_THROWS_AS(run_selftest(cfg), ConfigError);
}

TEST_CASE("reports are deterministic and independent of the worker count") {
    RunConfig cfg;
    cfg.p = 3;
    cfg.samples = 3;
    const std::string one = to_json(run_forward(cfg)).dump();
    CHECK(one == to_json(run_forward(cfg)).dump());
    cfg.jobs = 3;
    CHECK(one == to_json(run_forward(cfg)).dump());
    cfg.seed = 2;
    CHECK(one != to_json(run_forward(cfg)).dump());
}

TEST_CASE("small suites pass") {
    RunConfig cfg;
    cfg.p = 2;
    cfg.samples = 20;
    const auto st = run_selftest(cfg);
    CHECK(st.ok());
    CHECK(st.attempted == st.passed);

    cfg.p = 3;
    cfg.samples = 2;
    const auto table = run_case_table(cfg);
    CHECK(table.ok());
    CHECK(table.details["bundle"]["counts"]["E1"] == 13);
    CHECK(table.details["diff"].empty());

    cfg.p = 2;
    cfg.e = 3;
    cfg.samples = 1;
    const auto conv = run_converse(cfg);
    CHECK(conv.ok());
    for (int type = 1; type <= 6; ++type) CHECK(conv.breakdown.at("type " + std::to_string(type)).passed == 1);
    CHECK(conv.details["classify_fatal"] == 0);
}
