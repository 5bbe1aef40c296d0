// formfit: formation detection and player position labelling for football
// tracking data.
//
// Exit codes: 0 success, 1 input error, 2 configuration error.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "formfit/errors.hpp"
#include "formfit/formation_catalog.hpp"
#include "formfit/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitConfig = 2;

int run_command(const formfit::RunConfig& config) {
    const formfit::RunSummary summary = formfit::run_pipeline(config);
    std::cerr << fmt::format("matched {} of {} segments ({} skipped)\n", summary.segments_matched,
                             summary.segments_total, summary.segments_skipped);
    for (const std::string& path : summary.output_files) std::cerr << "  " << path << "\n";
    return kExitOk;
}

int validate_command(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << fmt::format("input error: cannot open template catalog \"{}\"\n", path);
        return kExitInput;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const formfit::CatalogReport report = formfit::TemplateRegistry::validate_csv(buffer.str());

    for (const formfit::FormationTemplate& tpl : report.templates) {
        std::cout << fmt::format("{:<8} {} slots\n", tpl.name, tpl.outfielder_count());
    }
    if (!report.templates.empty()) {
        const formfit::TemplateRegistry registry{
            std::vector<formfit::FormationTemplate>(report.templates)};
        const formfit::Bounds& b = registry.bounds();
        std::cout << fmt::format("bounds: x [{}, {}], y [{}, {}]\n", b.min_x, b.max_x, b.min_y,
                                 b.max_y);
    }
    std::cout << fmt::format("{} valid templates, {} violations\n", report.templates.size(),
                             report.issues.size());
    for (const formfit::CatalogIssue& issue : report.issues) {
        std::cout << fmt::format("violation: line {}: {}\n", issue.line, issue.message);
    }
    return report.valid() ? kExitOk : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Formation detection from football tracking data"};
    app.require_subcommand(1);

    formfit::RunConfig config;
    CLI::App* run = app.add_subcommand("run", "Detect formations over a tracked match");
    run->add_option("--input", config.tracking_path, "Tracking data CSV")->required();
    run->add_option("--meta", config.meta_path, "Match metadata JSON")->required();
    std::string templates_path;
    run->add_option("--templates", templates_path, "Formation catalog CSV (default: built-in)");
    run->add_option("--formations", config.formations,
                    "Restrict to these formation names (comma separated)")
        ->delimiter(',');
    run->add_option("--every", config.every,
                    "Segmentation: frame, possession, period, <n>s or <n>m");
    run->add_option("--substitutions", config.substitutions, "Substitution handling (drop)");
    run->add_option("--epsilon", config.epsilon,
                    "Relative cost improvement required to change formation");
    run->add_flag("--change-after-possession", config.change_after_possession,
                  "Adopt the new best formation unconditionally after possession changes");
    run->add_flag("!--no-scaling", config.scaling,
                  "Match raw positions instead of scaling them to the template bounds");
    run->add_flag("!--no-split-phase", config.split_phase,
                  "Do not split segments into attacking/defending phases");
    run->add_flag("--render", config.render, "Write one SVG per segment");
    run->add_option("--threads", config.threads, "Worker threads for per-team/phase streams");
    run->add_option("--out", config.out_dir, "Output directory")->required();

    std::string validate_path;
    CLI::App* validate =
        app.add_subcommand("validate-templates", "Check a formation catalog document");
    validate->add_option("path", validate_path, "Formation catalog CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (run->parsed()) {
            if (!templates_path.empty()) config.templates_path = templates_path;
            return run_command(config);
        }
        return validate_command(validate_path);
    } catch (const formfit::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const formfit::InvalidInputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
}
