// bbkit: verification driver for the Bruck-Bose representation of conics.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.
// Every flag can also be set through the environment variable BBKIT_<FLAG>
// (for example BBKIT_SEED); flags given on the command line win.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "bbkit/verify.hpp"

namespace {

using namespace bbkit;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& ex) {
        throw ConfigError(path + ": " + ex.what());
    }
}

void emit(const Json& j, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw ConfigError("cannot write " + out);
    f << j.dump(2) << '\n';
}

int emit_report(const VerificationReport& rep, const std::string& out) {
    emit(to_json(rep), out);
    std::cerr << rep.suite << " q=" << rep.q << ": " << rep.passed << "/" << rep.attempted << " passed\n";
    return rep.ok() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bruck-Bose conic verification toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string out;
    int samples = 0;
    app.add_option("--p", cfg.p, "characteristic")->envname("BBKIT_P")->capture_default_str();
    app.add_option("--e", cfg.e, "q = p^e")->envname("BBKIT_E")->capture_default_str();
    app.add_option("--seed", cfg.seed, "base seed")->envname("BBKIT_SEED")->capture_default_str();
    auto* samples_opt = app.add_option("--samples", samples, "samples per label, type or check (suite default if unset)")
                            ->envname("BBKIT_SAMPLES")
                            ->check(CLI::PositiveNumber);
    app.add_option("--budget", cfg.budget, "enumeration budget in points")->envname("BBKIT_BUDGET")->capture_default_str();
    app.add_option("--suite", cfg.suites, "selftest parts: spread, ibb, subgeometry, embedding")
        ->envname("BBKIT_SUITE")
        ->delimiter(',');
    app.add_option("--jobs", cfg.jobs, "worker threads")->envname("BBKIT_JOBS")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--out", out, "report path (stdout if unset)")->envname("BBKIT_OUT");
    app.add_flag("--timing", cfg.timing, "include wall-clock seconds in reports")->envname("BBKIT_TIMING");

    auto* selftest = app.add_subcommand("selftest", "spread, I_BB axioms, sublines/subplanes, Bose embedding");
    auto* forward = app.add_subcommand("verify-forward", "images of sampled conics are 3-special curves of the expected type");
    auto* converse = app.add_subcommand("verify-converse", "generated 3-special curves come from conics (q >= 8)");
    auto* table = app.add_subcommand("case-table", "observed (k, type) per case label and bundle counts");
    auto* map = app.add_subcommand("map-conic", "analyse one conic given as JSON");
    std::string spec_path, curve_path;
    map->add_option("--spec", spec_path, "conic JSON: {\"frame\": 3x3 codes, \"form\": 6 codes}")->required();
    auto* classify = app.add_subcommand("classify", "3-special report of a curve given as JSON");
    classify->add_option("--curve", curve_path, "curve JSON as written in report witnesses")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return kExitConfig;
    }
    if (samples_opt->count() > 0) cfg.samples = samples;

    try {
        if (*selftest) return emit_report(run_selftest(cfg), out);
        if (*forward) return emit_report(run_forward(cfg), out);
        if (*converse) return emit_report(run_converse(cfg), out);
        if (*table) return emit_report(run_case_table(cfg), out);

        TowerPtr F;
        try {
            F = FieldTower::build(cfg.p, cfg.e);
        } catch (const std::exception& ex) {
            throw ConfigError(ex.what());
        }
        const BBContext ctx = BBContext::build(F);
        if (*map) {
            ConicSpec spec;
            try {
                spec = conic_spec_from_json(*F, read_json_file(spec_path));
            } catch (const std::invalid_argument& ex) {
                throw ConfigError(ex.what());
            } catch (const Json::exception& ex) {
                throw ConfigError(ex.what());
            }
            const Json j = map_conic(ctx, spec);
            emit(j, out);
            return j["match"].get<bool>() ? 0 : kExitFail;
        }
        NRC curve;
        try {
            curve = nrc_from_json(*F, read_json_file(curve_path));
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(ex.what());
        } catch (const Json::exception& ex) {
            throw ConfigError(ex.what());
        }
        const Json j = classify_curve(ctx, curve);
        emit(j, out);
        return j.contains("classifier_error") ? kExitFail : 0;
    } catch (const ConfigError& ex) {
        std::cerr << "configuration error: " << ex.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitFail;
    }
}
