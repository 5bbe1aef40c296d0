// formfit-recovery: measures how often each catalog formation is recovered
// when its own slot coordinates are jittered with Gaussian noise (sigma = 2%
// of the template width). The resulting table is recorded in
// docs/noise_recovery.md and guards the matcher's discriminative power after
// catalog edits.

#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "formfit/formation_catalog.hpp"
#include "formfit/matching.hpp"
#include "formfit/random.hpp"

using namespace formfit;

int main(int argc, char** argv) {
    CLI::App app{"Noise-recovery report for a formation catalog"};
    std::string templates_path;
    int trials = 100;
    std::uint64_t seed = 20240811;
    app.add_option("--templates", templates_path, "Catalog CSV (default: built-in)");
    app.add_option("--trials", trials, "Trials per formation")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Random seed");
    CLI11_PARSE(app, argc, argv);

    std::optional<TemplateRegistry> file_registry;
    if (!templates_path.empty()) file_registry = TemplateRegistry::load_file(templates_path);
    const TemplateRegistry& registry =
        file_registry ? *file_registry : TemplateRegistry::default_registry();

    DeterministicRng rng(seed);
    double rate_sum = 0.0;
    std::size_t worst_count = 0;
    std::string worst_name;
    double worst_rate = 2.0;

    fmt::print("formation  outfielders  recovered\n");
    for (const FormationTemplate& tpl : registry.all()) {
        std::vector<Vec2> points;
        for (const TemplateSlot& slot : tpl.slots) points.push_back(slot.position);
        const Bounds box = Bounds::of(points);
        const double sigma = 0.02 * box.width();

        int recovered = 0;
        for (int trial = 0; trial < trials; ++trial) {
            TeamObservation obs;
            for (std::size_t s = 0; s < tpl.slots.size(); ++s) {
                obs.players.push_back({fmt::format("p{:02}", s + 1),
                                       {tpl.slots[s].position.x + rng.gaussian(0.0, sigma),
                                        tpl.slots[s].position.y + rng.gaussian(0.0, sigma)}});
            }
            if (match(obs, registry, Scaling::on).formation_name == tpl.name) ++recovered;
        }
        const double rate = static_cast<double>(recovered) / trials;
        rate_sum += rate;
        if (rate < worst_rate) {
            worst_rate = rate;
            worst_name = tpl.name;
        }
        if (rate < 1.0) ++worst_count;
        fmt::print("{:<10} {:<12} {}/{}\n", tpl.name, tpl.outfielder_count(), recovered, trials);
    }
    const double mean = rate_sum / static_cast<double>(registry.size());
    fmt::print("mean recovery rate: {:.4f} over {} formations x {} trials (seed {})\n", mean,
               registry.size(), trials, seed);
    fmt::print("weakest: {} at {:.2f}; formations below 100%: {}\n", worst_name, worst_rate,
               worst_count);
    return 0;
}
