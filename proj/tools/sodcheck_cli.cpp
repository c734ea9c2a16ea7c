// Command-line front end: scene-driven verification of semiorthogonal
// decompositions induced from small resolutions.
//
// Exit codes: 0 all verdicts pass, 1 a verification failed, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sodcheck/sodcheck.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct CommonOptions {
    std::string scene_path;
    std::string json_path;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_scene = true) {
    if (with_scene)
        cmd->add_option("--scene", opt.scene_path,
                        "scene file (JSON); defaults to the built-in conifold scene");
    cmd->add_option("--json", opt.json_path, "write the machine-readable report to this path");
    cmd->add_flag("--quiet", opt.quiet, "suppress the human-readable report");
}

sodcheck::Scene load_scene(const CommonOptions& opt) {
    if (opt.scene_path.empty()) return sodcheck::Scene::builtin_example54();
    return sodcheck::Scene::load(opt.scene_path);
}

int finish(const sodcheck::report::Output& out, const CommonOptions& opt) {
    if (!opt.quiet) std::cout << out.text;
    if (!opt.json_path.empty()) {
        std::ofstream f(opt.json_path);
        if (!f) {
            std::cerr << "error: cannot write " << opt.json_path << "\n";
            return kExitInput;
        }
        f << out.machine.dump(2) << "\n";
    }
    return out.all_pass ? kExitPass : kExitFail;
}

/* "lo..hi" or a single integer; bounds are enforced by the table runner. */
std::pair<long long, long long> parse_range(const std::string& s) {
    const size_t dots = s.find("..");
    try {
        size_t used = 0;
        if (dots == std::string::npos) {
            const long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {v, v};
        }
        const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
        const long long l = std::stoll(lo, &used);
        if (used != lo.size()) throw std::invalid_argument(s);
        const long long h = std::stoll(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(s);
        return {l, h};
    } catch (const std::exception&) {
        throw sodcheck::Error("malformed-range", "cannot parse range '" + s + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for semiorthogonal decompositions induced from "
                 "small resolutions"};
    app.require_subcommand(1);

    CommonOptions opt;

    CLI::App* cmd_example = app.add_subcommand(
        "example54", "run the built-in conifold scene through the full pipeline");
    add_common(cmd_example, opt, /*with_scene=*/false);

    std::string collection_name = "projective-bundle";
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "Ext-level verification of an exceptional collection");
    cmd_verify->add_option("collection", collection_name, "collection name in the scene");
    add_common(cmd_verify, opt);

    std::string a_range = "0..0", b_range = "0..0";
    CLI::App* cmd_table =
        app.add_subcommand("table", "cohomology and Euler characteristic grid for O(aE+bH)");
    cmd_table->add_option("--a", a_range, "fibre-degree range lo..hi (|a| <= 12)");
    cmd_table->add_option("--b", b_range, "base-degree range lo..hi (|b| <= 12)");
    add_common(cmd_table, opt, /*with_scene=*/false);

    CLI::App* cmd_mutate =
        app.add_subcommand("mutate", "apply the scene's scripted mutations and verify");
    add_common(cmd_mutate, opt);

    CLI::App* cmd_compat =
        app.add_subcommand("compat", "check compatibility of the scene's block assignment");
    add_common(cmd_compat, opt);

    CLI::App* cmd_induce =
        app.add_subcommand("induce", "gate the induced decomposition and report its blocks");
    add_common(cmd_induce, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (cmd_example->parsed()) return finish(sodcheck::report::run_example54(), opt);
        if (cmd_verify->parsed())
            return finish(sodcheck::report::run_verify(load_scene(opt), collection_name), opt);
        if (cmd_table->parsed()) {
            const auto [alo, ahi] = parse_range(a_range);
            const auto [blo, bhi] = parse_range(b_range);
            return finish(sodcheck::report::run_table(alo, ahi, blo, bhi), opt);
        }
        if (cmd_mutate->parsed()) return finish(sodcheck::report::run_mutations(load_scene(opt)), opt);
        if (cmd_compat->parsed()) return finish(sodcheck::report::run_compat(load_scene(opt)), opt);
        if (cmd_induce->parsed()) return finish(sodcheck::report::run_induce(load_scene(opt)), opt);
    } catch (const sodcheck::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
