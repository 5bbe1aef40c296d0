#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "formfit/formation_catalog.hpp"
#include "formfit/matching.hpp"
#include "formfit/segmentation.hpp"

namespace formfit::testsupport {

/// Players p01..pNN standing exactly on a template's slots, in slot order.
inline TeamObservation observation_of_template(const FormationTemplate& tpl) {
    TeamObservation obs;
    for (std::size_t i = 0; i < tpl.slots.size(); ++i) {
        obs.players.push_back({fmt::format("p{:02}", i + 1), tpl.slots[i].position});
    }
    return obs;
}

/// Interpolates between two same-count templates along the optimal pairing
/// of their slots.
inline TeamObservation blend_templates(const FormationTemplate& a, const FormationTemplate& b,
                                       double alpha) {
    const Assignment pairing =
        solve_assignment(build_cost_matrix(observation_of_template(a), b));
    TeamObservation out;
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
        const Vec2 pa = a.slots[i].position;
        const Vec2 pb = b.slots[pairing.slot_of_player[i]].position;
        out.players.push_back({fmt::format("p{:02}", i + 1), (1.0 - alpha) * pa + alpha * pb});
    }
    return out;
}

/// Four-step trajectory whose per-segment best formations are
/// 31222 -> 424 -> 4222 -> 2422 with tuned relative cost gaps: the second
/// and fourth steps are within 10% of the previous formation's re-fit, the
/// third is well beyond it.
inline std::vector<TeamObservation> stability_sequence(const TemplateRegistry& registry) {
    const FormationTemplate& t1 = *registry.find("31222");
    const FormationTemplate& t2 = *registry.find("424");
    const FormationTemplate& t3 = *registry.find("4222");
    const FormationTemplate& t4 = *registry.find("2422");
    return {
        blend_templates(t1, t2, 0.20),
        blend_templates(t1, t2, 0.517),
        blend_templates(t2, t3, 0.5146),
        blend_templates(t3, t4, 0.5098),
    };
}

/// Compact in-play frame shaped like a squeezed 4411 block. Matching it
/// without scaling picks a three-back formation and mislabels the left
/// centre back as a defensive midfielder; with scaling it resolves to 4411
/// with every role correct.
inline TeamObservation compact_frame() {
    const TemplateRegistry& registry = TemplateRegistry::default_registry();
    const FormationTemplate& tpl = *registry.find("4411");
    TeamObservation obs;
    for (std::size_t i = 0; i < tpl.slots.size(); ++i) {
        const Vec2 p = tpl.slots[i].position;
        obs.players.push_back(
            {fmt::format("p{:02}", i + 1), {42.5 + (p.x - 15.0) * 0.65, 40.0 + (p.y - 40.0) * 0.45}});
    }
    obs.players[1].position.x -= 6.0;  // true RCB drops deeper
    obs.players[1].position.y -= 4.0;
    obs.players[2].position.y -= 6.0;  // true LCB tucks toward the axis
    return obs;
}

/// Wraps an observation as a single-window segment.
inline Segment segment_of(const TeamObservation& obs, std::string team_id, Phase phase,
                          int period, std::int64_t start_frame, std::int64_t end_frame,
                          std::optional<std::string> possession = std::nullopt) {
    Segment seg;
    seg.team_id = std::move(team_id);
    seg.phase = phase;
    seg.period = period;
    seg.start_frame = start_frame;
    seg.end_frame = end_frame;
    seg.frame_count = static_cast<std::size_t>(end_frame - start_frame + 1);
    seg.possession = std::move(possession);
    for (const PlayerPosition& p : obs.players) {
        seg.mean_positions.emplace_back(p.player_id, p.position);
        seg.player_frames.emplace_back(p.player_id, seg.frame_count);
    }
    const auto by_id = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(seg.mean_positions.begin(), seg.mean_positions.end(), by_id);
    std::sort(seg.player_frames.begin(), seg.player_frames.end(), by_id);
    return seg;
}

struct ProcessResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

/// Runs a shell command, capturing output and exit status.
inline ProcessResult run_process(const std::string& command) {
    ProcessResult result;
    FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
    if (pipe == nullptr) return result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = ::fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace formfit::testsupport
