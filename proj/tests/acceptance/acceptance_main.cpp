// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each check pins its tolerance in code.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <vector>

#include <fmt/format.h>

#include "formfit/formation_catalog.hpp"
#include "formfit/matching.hpp"
#include "formfit/pipeline.hpp"
#include "formfit/random.hpp"
#include "formfit/segmentation.hpp"
#include "formfit/stability.hpp"
#include "formfit/tracking_io.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace formfit;
using namespace formfit::testsupport;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    fmt::print("{} {}. {} ({})\n", pass ? "PASS" : "FAIL", number, name, detail);
    if (!pass) ++failures;
}

const TemplateRegistry& registry() { return TemplateRegistry::default_registry(); }

// --- 1. solver equals brute force on 1000 random matrices, n in 2..8 -------

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    DeterministicRng rng(101);
    int exact = 0;
    const int total = 1000;
    for (int round = 0; round < total; ++round) {
        const std::size_t n = 2 + static_cast<std::size_t>(round % 7);
        CostMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m.set(i, j, static_cast<double>(rng.uniform_int(0, 99)));
            }
        }
        if (solve_assignment(m).total_cost == brute_force_min_cost(m)) ++exact;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(1, "solver matches the exhaustive permutation minimum",
           exact == total && seconds < 10.0,
           fmt::format("{}/{} exact, {:.2f} s", exact, total, seconds));
}

// --- 2. all 65 templates self-match with scaling on -------------------------

void criterion_2() {
    int matched = 0;
    int labelled = 0;
    const int total = static_cast<int>(registry().size());
    for (const FormationTemplate& tpl : registry().all()) {
        const MatchResult result = match(observation_of_template(tpl), registry(), Scaling::on);
        if (result.formation_name == tpl.name && result.cost <= 1e-9) ++matched;
        bool identity = true;
        for (std::size_t i = 0; i < tpl.slots.size(); ++i) {
            if (result.labels.at(fmt::format("p{:02}", i + 1)) != tpl.slots[i].label) {
                identity = false;
            }
        }
        if (identity) ++labelled;
    }
    report(2, "every template self-matches at cost <= 1e-9 with identity labels",
           matched == total && labelled == total,
           fmt::format("{}/{} matched, {}/{} identity", matched, total, labelled, total));
}

// --- 3. noisy self-recovery at the recorded baseline rate -------------------

void criterion_3() {
    DeterministicRng rng(20240811);
    const int trials = 100;
    double rate_sum = 0.0;
    for (const FormationTemplate& tpl : registry().all()) {
        std::vector<Vec2> points;
        for (const TemplateSlot& slot : tpl.slots) points.push_back(slot.position);
        const double sigma = 0.02 * Bounds::of(points).width();
        int recovered = 0;
        for (int trial = 0; trial < trials; ++trial) {
            TeamObservation obs;
            for (std::size_t s = 0; s < tpl.slots.size(); ++s) {
                obs.players.push_back({fmt::format("p{:02}", s + 1),
                                       {tpl.slots[s].position.x + rng.gaussian(0.0, sigma),
                                        tpl.slots[s].position.y + rng.gaussian(0.0, sigma)}});
            }
            if (match(obs, registry(), Scaling::on).formation_name == tpl.name) ++recovered;
        }
        rate_sum += static_cast<double>(recovered) / trials;
    }
    const double mean = rate_sum / static_cast<double>(registry().size());
    // docs/noise_recovery.md records the measured baseline (mean 1.0000).
    report(3, "2%-noise recovery stays above the 0.95 target mean", mean >= 0.95,
           fmt::format("mean {:.4f} over {} formations x {} trials", mean, registry().size(),
                       trials));
}

// --- 4. translation and per-axis stretch never change the outcome -----------

void criterion_4() {
    DeterministicRng rng(104);
    int stable = 0;
    const int total = 200;
    for (int round = 0; round < total; ++round) {
        const std::size_t players = 8 + static_cast<std::size_t>(round % 3);
        TeamObservation obs;
        for (std::size_t p = 0; p < players; ++p) {
            obs.players.push_back({fmt::format("p{:02}", p + 1),
                                   {rng.uniform(-52.5, 52.5), rng.uniform(-34.0, 34.0)}});
        }
        const MatchResult base = match(obs, registry(), Scaling::on);

        TeamObservation moved = obs;
        const double fx = std::exp(rng.uniform(-1.2, 1.2));
        const double fy = std::exp(rng.uniform(-1.2, 1.2));
        const Vec2 shift{rng.uniform(-100.0, 100.0), rng.uniform(-50.0, 50.0)};
        for (PlayerPosition& p : moved.players) {
            p.position = {p.position.x * fx + shift.x, p.position.y * fy + shift.y};
        }
        const MatchResult transformed = match(moved, registry(), Scaling::on);
        if (transformed.formation_name == base.formation_name &&
            transformed.labels == base.labels) {
            ++stable;
        }
    }
    report(4, "scaled matching is invariant to translation and per-axis stretch",
           stable == total, fmt::format("{}/{} identical outcomes", stable, total));
}

// --- 5. stability filter on the four-segment drift fixture ------------------

void criterion_5() {
    const std::vector<TeamObservation> sequence = stability_sequence(registry());
    std::vector<std::pair<Segment, MatchResult>> seq;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        seq.emplace_back(segment_of(sequence[i], "home", Phase::all, 1,
                                    static_cast<std::int64_t>(i) * 10,
                                    static_cast<std::int64_t>(i) * 10 + 9),
                         match(sequence[i], registry(), Scaling::on));
    }

    // Fixture premises: four distinct unfiltered winners; consecutive-winner
    // gaps after the second segment stay below 10%.
    std::set<std::string> winners;
    for (const auto& [seg, result] : seq) winners.insert(result.formation_name);
    const auto ratio_vs = [&](std::size_t t, const char* formation) {
        const TeamObservation& obs = sequence[t];
        const double refit = fit_template(obs, registry(), *registry().find(formation),
                                          Scaling::on)
                                 .cost;
        return (refit - seq[t].second.cost) / seq[t].second.cost;
    };
    const bool premises = winners.size() == 4 && ratio_vs(2, "424") > 0.0 &&
                          ratio_vs(2, "424") <= 0.1 && ratio_vs(3, "4222") > 0.0 &&
                          ratio_vs(3, "4222") <= 0.1;

    const auto changes_at = [&](double epsilon) {
        const Timeline t = stabilize(seq, registry(), epsilon, false, Scaling::on);
        std::size_t changes = 0;
        for (std::size_t i = 1; i < t.entries.size(); ++i) {
            if (t.entries[i].adopted_formation != t.entries[i - 1].adopted_formation) ++changes;
        }
        return changes;
    };
    const std::size_t c000 = changes_at(0.0);
    const std::size_t c005 = changes_at(0.05);
    const std::size_t c010 = changes_at(0.1);
    const std::size_t c020 = changes_at(0.2);
    const bool monotone = c000 >= c005 && c005 >= c010 && c010 >= c020;

    report(5, "stability threshold filters the drift fixture as specified",
           premises && c000 >= 3 && c010 == 1 && monotone,
           fmt::format("changes: e=0 -> {}, e=0.05 -> {}, e=0.1 -> {}, e=0.2 -> {}", c000, c005,
                       c010, c020));
}

// --- 6. segment means and the frame-policy equivalence ----------------------

void criterion_6() {
    DeterministicRng rng(106);

    // Means against an independent long-double summation oracle.
    int mean_ok = 0;
    const int frame_total = 10000;
    std::vector<FrameRecord> frames;
    for (int i = 0; i < frame_total; ++i) {
        FrameRecord rec;
        rec.period = 1;
        rec.frame_id = i;
        rec.timestamp = i * 0.04;
        rec.team_id = "home";
        rec.player_id = "p01";
        rec.x = rng.uniform(-52.5, 52.5);
        rec.y = rng.uniform(-34.0, 34.0);
        frames.push_back(std::move(rec));
        long double sx = 0.0L, sy = 0.0L;
        // re-evaluate the running prefix every 1000 frames to bound runtime
        if ((i + 1) % 1000 == 0) {
            for (const FrameRecord& f : frames) {
                sx += f.x;
                sy += f.y;
            }
            const Vec2 mean = mean_position(frames);
            const auto n = static_cast<long double>(frames.size());
            if (std::abs(mean.x - static_cast<double>(sx / n)) <= 1e-12 &&
                std::abs(mean.y - static_cast<double>(sy / n)) <= 1e-12) {
                ++mean_ok;
            }
        }
    }

    // Frame-policy segmentation + matching equals direct per-frame matching.
    std::vector<FrameRecord> feed;
    std::vector<TeamObservation> direct;
    for (int f = 0; f < 40; ++f) {
        TeamObservation obs;
        for (int p = 0; p < 10; ++p) {
            FrameRecord rec;
            rec.period = 1;
            rec.frame_id = f;
            rec.timestamp = f * 0.1;
            rec.team_id = "home";
            rec.player_id = fmt::format("p{:02}", p + 1);
            rec.x = rng.uniform(-52.5, 52.5);
            rec.y = rng.uniform(-34.0, 34.0);
            obs.players.push_back({rec.player_id, {rec.x, rec.y}});
            feed.push_back(std::move(rec));
        }
        direct.push_back(std::move(obs));
    }
    int frame_match_ok = 0;
    const std::vector<Segment> segments = segment(feed, SegmentPolicy::frame(), false);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        TeamObservation from_segment;
        for (const auto& [player, pos] : segments[i].mean_positions) {
            from_segment.players.push_back({player, pos});
        }
        const MatchResult via_segment = match(from_segment, registry(), Scaling::on);
        const MatchResult direct_result = match(direct[i], registry(), Scaling::on);
        if (via_segment.formation_name == direct_result.formation_name &&
            via_segment.labels == direct_result.labels &&
            via_segment.cost == direct_result.cost) {
            ++frame_match_ok;
        }
    }

    report(6, "segment means hit the summation oracle and frame policy equals direct matching",
           mean_ok == 10 && frame_match_ok == 40,
           fmt::format("means {}/10 within 1e-12 over {} frames, frames {}/40 identical", mean_ok,
                       frame_total, frame_match_ok));
}

// --- 7. substitution resolution with deterministic tie-breaking -------------

void criterion_7() {
    int cases = 0;
    int correct = 0;

    // 12 unique players, ties straddling the cut at every position.
    std::vector<std::size_t> counts{900, 900, 900, 900, 900, 900, 900, 900, 450, 450, 450, 20};
    std::sort(counts.begin(), counts.end());
    do {
        std::vector<std::pair<std::string, std::size_t>> players;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            players.emplace_back(fmt::format("p{:02}", i + 1), counts[i]);
        }
        const std::vector<std::string> retained = resolve_substitutions(players, 10);

        // Oracle: order by (count desc, id asc), keep ten.
        std::vector<std::pair<std::string, std::size_t>> oracle = players;
        std::stable_sort(oracle.begin(), oracle.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        std::vector<std::string> expected;
        for (std::size_t i = 0; i < 10; ++i) expected.push_back(oracle[i].first);
        std::sort(expected.begin(), expected.end());

        ++cases;
        if (retained == expected) ++correct;
    } while (std::next_permutation(counts.begin(), counts.end()));

    // The documented examples.
    {
        std::vector<std::pair<std::string, std::size_t>> players;
        for (int i = 0; i < 9; ++i) players.emplace_back(fmt::format("p{:02}", i), 900);
        players.emplace_back("p09", 450);
        players.emplace_back("p10", 430);
        players.emplace_back("p11", 20);
        const auto retained = resolve_substitutions(players, 10);
        ++cases;
        if (retained.size() == 10 &&
            std::find(retained.begin(), retained.end(), "p10") == retained.end() &&
            std::find(retained.begin(), retained.end(), "p11") == retained.end()) {
            ++correct;
        }
    }

    report(7, "substitution drop keeps the ten busiest players with id tie-breaks",
           cases == correct, fmt::format("{}/{} constructed cases", correct, cases));
}

// --- 8. CLI end-to-end determinism across runs and thread counts ------------

void criterion_8() {
    TempDir dir("acceptance-e2e");
    const auto synth = run_process(fmt::format(
        "{} --out {} --periods 2 --period-seconds 300 --fps 2 --seed 99", FORMFIT_SYNTH_PATH,
        dir.str("data")));
    if (synth.exit_code != 0) {
        report(8, "end-to-end determinism", false, "synthetic match generation failed");
        return;
    }
    const std::string base_cmd = fmt::format(
        "{} run --input {} --meta {} --every 1m --epsilon 0.1 --change-after-possession "
        "--render --out",
        FORMFIT_CLI_PATH, dir.str("data/tracking.csv"), dir.str("data/meta.json"));

    bool all_ok = true;
    std::string detail;
    for (const auto& [name, threads] : std::vector<std::pair<std::string, int>>{
             {"run1", 1}, {"run2", 1}, {"run4", 4}}) {
        const auto run = run_process(fmt::format("{} {} --threads {}", base_cmd, dir.str(name),
                                                 threads));
        if (run.exit_code != 0) {
            all_ok = false;
            detail = fmt::format("{} exited {}", name, run.exit_code);
        }
    }

    std::size_t files = 0;
    if (all_ok) {
        for (const auto& entry : fs::recursive_directory_iterator(dir.path() / "run1")) {
            if (!entry.is_regular_file()) continue;
            ++files;
            const fs::path relative = fs::relative(entry.path(), dir.path() / "run1");
            const std::string first = read_file(entry.path());
            if (first.empty() || first != read_file(dir.path() / "run2" / relative) ||
                first != read_file(dir.path() / "run4" / relative)) {
                all_ok = false;
                detail = fmt::format("mismatch in {}", relative.string());
                break;
            }
        }
        if (files == 0) {
            all_ok = false;
            detail = "no output files";
        }
    }
    if (all_ok) detail = fmt::format("{} files byte-identical across 2 runs and 4 threads", files);
    report(8, "CLI outputs are byte-identical across runs and thread counts", all_ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures != 0) {
        fmt::print("{} criterion(s) failed\n", failures);
        return 1;
    }
    fmt::print("all criteria passed\n");
    return 0;
}
