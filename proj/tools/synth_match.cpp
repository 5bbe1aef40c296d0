// formfit-synth: deterministic synthetic tracking data for demos and tests.
// Two teams hold noisy formation shapes, possession alternates in runs with
// occasional dead-ball spells, attack directions swap at half time, and one
// substitution per team happens during the second period.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "formfit/errors.hpp"
#include "formfit/formation_catalog.hpp"
#include "formfit/random.hpp"
#include "formfit/segmentation.hpp"
#include "formfit/tracking_io.hpp"

namespace fs = std::filesystem;
using namespace formfit;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Options {
    std::string out_dir;
    int periods = 2;
    double period_seconds = 600.0;
    double fps = 2.0;
    std::uint64_t seed = 7;
};

struct TeamPlan {
    std::string id;
    std::string gk;
    std::vector<std::string> starters;       // 10 outfielders
    std::string substitute;                  // joins mid period 2
    std::string replaced;                    // leaves when the substitute joins
    std::vector<std::string> formation_by_period;
};

struct PossessionRun {
    double until_seconds = 0.0;              // run end within the period
    std::optional<std::string> team;
};

std::vector<PossessionRun> plan_possession(DeterministicRng& rng, double period_seconds,
                                           const std::string& home, const std::string& away,
                                           bool home_starts) {
    std::vector<PossessionRun> runs;
    double t = 0.0;
    bool home_ball = home_starts;
    while (t < period_seconds) {
        t += rng.uniform(8.0, 25.0);
        runs.push_back({t, home_ball ? home : away});
        if (rng.uniform() < 0.08 && t < period_seconds) {
            t += rng.uniform(2.0, 6.0);
            runs.push_back({t, std::nullopt});
        }
        home_ball = !home_ball;
    }
    return runs;
}

Vec2 template_to_pitch(Vec2 slot, const Bounds& tpl_box, double length, double width) {
    // Team shape occupies roughly two thirds of the pitch, biased to its own half.
    const double x = -0.38 * length +
                     (slot.x - tpl_box.min_x) / tpl_box.length() * (0.68 * length);
    const double y = -0.40 * width +
                     (slot.y - tpl_box.min_y) / tpl_box.width() * (0.80 * width);
    return {x, y};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic tracked match"};
    Options opt;
    app.add_option("--out", opt.out_dir, "Output directory")->required();
    app.add_option("--periods", opt.periods, "Number of periods")->check(CLI::Range(1, 4));
    app.add_option("--period-seconds", opt.period_seconds, "Seconds per period")
        ->check(CLI::PositiveNumber);
    app.add_option("--fps", opt.fps, "Frames per second")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "Random seed");
    CLI11_PARSE(app, argc, argv);

    const double pitch_length = 105.0;
    const double pitch_width = 68.0;
    const TemplateRegistry& registry = TemplateRegistry::default_registry();
    const Bounds& tpl_box = registry.bounds();

    TeamPlan home{"home", "h_gk",
                  {"h01", "h02", "h03", "h04", "h05", "h06", "h07", "h08", "h09", "h10"},
                  "h11", "h07",
                  {"4411", "442", "4411", "442"}};
    TeamPlan away{"away", "a_gk",
                  {"a01", "a02", "a03", "a04", "a05", "a06", "a07", "a08", "a09", "a10"},
                  "a11", "a03",
                  {"433", "433", "433", "433"}};

    DeterministicRng rng(opt.seed);
    std::vector<FrameRecord> records;

    const std::int64_t frames_per_period =
        static_cast<std::int64_t>(opt.period_seconds * opt.fps);
    for (int period = 1; period <= opt.periods; ++period) {
        const auto runs = plan_possession(rng, opt.period_seconds, home.id, away.id, period % 2 == 1);

        // Per-player wander phases, redrawn each period.
        std::vector<double> phase_x, phase_y;
        for (int i = 0; i < 22; ++i) {
            phase_x.push_back(rng.uniform(0.0, 2.0 * kPi));
            phase_y.push_back(rng.uniform(0.0, 2.0 * kPi));
        }

        for (std::int64_t k = 0; k < frames_per_period; ++k) {
            const double t = static_cast<double>(k) / opt.fps;
            const std::int64_t frame_id = (period - 1) * frames_per_period + k;

            std::optional<std::string> possession;
            for (const PossessionRun& run : runs) {
                if (t < run.until_seconds) {
                    possession = run.team;
                    break;
                }
            }

            int player_slot = 0;
            for (const TeamPlan* team : {&home, &away}) {
                const bool attacks_right =
                    (team->id == home.id) == (period % 2 == 1);
                const auto emit = [&](const std::string& player, Vec2 attack_pos) {
                    FrameRecord rec;
                    rec.period = period;
                    rec.frame_id = frame_id;
                    rec.timestamp = t;
                    rec.team_id = team->id;
                    rec.player_id = player;
                    rec.x = attacks_right ? attack_pos.x : -attack_pos.x;
                    rec.y = attacks_right ? attack_pos.y : -attack_pos.y;
                    rec.possession_team_id = possession;
                    records.push_back(std::move(rec));
                };

                const FormationTemplate* tpl =
                    registry.find(team->formation_by_period[static_cast<std::size_t>(period - 1)]);
                if (tpl == nullptr) throw ConfigError("synthetic plan names an unknown formation");

                const double drift = !possession              ? 0.0
                                     : *possession == team->id ? 0.06 * pitch_length
                                                               : -0.06 * pitch_length;
                // Substitution halfway through the final period.
                const bool after_sub = period == opt.periods && t >= opt.period_seconds / 2.0;

                for (std::size_t s = 0; s < tpl->slots.size(); ++s) {
                    std::string player = team->starters[s];
                    if (after_sub && player == team->replaced) player = team->substitute;
                    Vec2 base = template_to_pitch(tpl->slots[s].position, tpl_box, pitch_length,
                                                  pitch_width);
                    base.x += drift + 2.2 * std::sin(2.0 * kPi * t / 70.0 + phase_x[player_slot]) +
                              rng.gaussian(0.0, 0.7);
                    base.y += 2.2 * std::sin(2.0 * kPi * t / 90.0 + phase_y[player_slot]) +
                              rng.gaussian(0.0, 0.7);
                    emit(player, base);
                    ++player_slot;
                }
                emit(team->gk, {-0.47 * pitch_length, rng.gaussian(0.0, 1.5)});
                ++player_slot;
            }
        }
    }

    nlohmann::json meta;
    meta["pitch_length"] = pitch_length;
    meta["pitch_width"] = pitch_width;
    meta["teams"] = {{{"id", home.id}, {"goalkeepers", {home.gk}}},
                     {{"id", away.id}, {"goalkeepers", {away.gk}}}};
    for (int period = 1; period <= opt.periods; ++period) {
        const bool home_right = period % 2 == 1;
        meta["attack_direction"][home.id][std::to_string(period)] = home_right ? "right" : "left";
        meta["attack_direction"][away.id][std::to_string(period)] = home_right ? "left" : "right";
    }

    fs::create_directories(opt.out_dir);
    const fs::path tracking_path = fs::path(opt.out_dir) / "tracking.csv";
    const fs::path meta_path = fs::path(opt.out_dir) / "meta.json";
    {
        std::ofstream out(tracking_path, std::ios::binary);
        const std::string csv = serialize_tracking(records);
        out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
        if (!out) {
            std::cerr << "input error: failed writing " << tracking_path << "\n";
            return 1;
        }
    }
    {
        std::ofstream out(meta_path, std::ios::binary);
        out << meta.dump(2) << "\n";
        if (!out) {
            std::cerr << "input error: failed writing " << meta_path << "\n";
            return 1;
        }
    }
    std::cerr << fmt::format("wrote {} records\n", records.size());
    std::cout << tracking_path.string() << "\n" << meta_path.string() << "\n";
    return 0;
}
