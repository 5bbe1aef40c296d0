#include "formfit/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "formfit/errors.hpp"

namespace formfit {

namespace {

struct PlayerAccumulator {
    double sum_x = 0.0;
    double sum_y = 0.0;
    std::size_t frames = 0;
};

struct SegmentAccumulator {
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;
    std::int64_t last_frame = -1;
    bool any_frame = false;
    std::size_t frame_count = 0;
    std::map<std::string, PlayerAccumulator> players;
    // possession value -> (first appearance order, frame-row count)
    std::map<std::string, std::pair<std::size_t, std::size_t>> possession_votes;

    void add(const FrameRecord& rec) {
        if (!any_frame) {
            start_frame = rec.frame_id;
            any_frame = true;
        }
        end_frame = rec.frame_id;
        if (rec.frame_id != last_frame) {
            ++frame_count;
            last_frame = rec.frame_id;
        }
        PlayerAccumulator& acc = players[rec.player_id];
        acc.sum_x += rec.x;
        acc.sum_y += rec.y;
        ++acc.frames;
        if (rec.possession_team_id) {
            auto [it, inserted] = possession_votes.try_emplace(
                *rec.possession_team_id, std::make_pair(possession_votes.size(), std::size_t{0}));
            ++it->second.second;
        }
    }
};

// Window key: (period, index); phase folded in separately.
using WindowKey = std::tuple<int, std::int64_t, int /*Phase as int*/>;

int phase_rank(Phase phase) { return static_cast<int>(phase); }

std::optional<std::string> dominant_possession(const SegmentAccumulator& acc) {
    const std::string* best = nullptr;
    std::size_t best_order = 0;
    std::size_t best_count = 0;
    for (const auto& [team, vote] : acc.possession_votes) {
        const auto [order, count] = vote;
        if (best == nullptr || count > best_count ||
            (count == best_count && order < best_order)) {
            best = &team;
            best_order = order;
            best_count = count;
        }
    }
    if (best == nullptr) return std::nullopt;
    return *best;
}

}  // namespace

std::string_view phase_name(Phase phase) {
    switch (phase) {
        case Phase::attacking: return "attacking";
        case Phase::defending: return "defending";
        case Phase::all: return "all";
    }
    return "all";
}

SegmentPolicy SegmentPolicy::duration(double seconds) {
    if (!(seconds > 0.0) || !std::isfinite(seconds)) {
        throw ConfigError(fmt::format("segment duration must be positive, got {}", seconds));
    }
    return {Kind::duration, seconds};
}

Vec2 mean_position(std::span<const FrameRecord> frames) {
    if (frames.empty()) throw InvalidInputError("mean position of an empty frame list");
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (const FrameRecord& rec : frames) {
        sum_x += rec.x;
        sum_y += rec.y;
    }
    const double n = static_cast<double>(frames.size());
    return {sum_x / n, sum_y / n};
}

std::vector<Segment> segment(std::span<const FrameRecord> frames, const SegmentPolicy& policy,
                             bool split_phase, std::size_t min_frames) {
    for (std::size_t i = 1; i < frames.size(); ++i) {
        const FrameRecord& a = frames[i - 1];
        const FrameRecord& b = frames[i];
        if (std::tie(a.period, a.frame_id) > std::tie(b.period, b.frame_id)) {
            throw InvalidInputError("frames are not sorted by (period, frame_id)");
        }
    }

    const bool needs_possession = split_phase || policy.kind == SegmentPolicy::Kind::possession;
    if (needs_possession) {
        const bool any = std::any_of(frames.begin(), frames.end(), [](const FrameRecord& r) {
            return r.possession_team_id.has_value();
        });
        if (!any) {
            throw ConfigError(
                "possession attribution required (possession policy or phase splitting) "
                "but no frame carries possession_team_id");
        }
    }

    // Possession runs over distinct frames, shared by both teams.
    std::int64_t run_index = -1;
    int run_period = 0;
    std::int64_t run_last_frame = -1;
    bool run_has_value = false;
    std::optional<std::string> run_value;

    std::map<std::string, std::map<WindowKey, SegmentAccumulator>> per_team;

    for (const FrameRecord& rec : frames) {
        if (rec.period != run_period || !run_has_value ||
            (rec.frame_id != run_last_frame && rec.possession_team_id != run_value)) {
            ++run_index;
            run_period = rec.period;
            run_value = rec.possession_team_id;
            run_has_value = true;
        }
        run_last_frame = rec.frame_id;

        std::int64_t window = 0;
        switch (policy.kind) {
            case SegmentPolicy::Kind::frame: window = rec.frame_id; break;
            case SegmentPolicy::Kind::period: window = 0; break;
            case SegmentPolicy::Kind::possession: window = run_index; break;
            case SegmentPolicy::Kind::duration:
                window = static_cast<std::int64_t>(
                    std::floor(std::max(rec.timestamp, 0.0) / policy.window_seconds));
                break;
        }

        Phase phase = Phase::all;
        if (split_phase) {
            if (!rec.possession_team_id) continue;  // dead ball: no phase
            phase = *rec.possession_team_id == rec.team_id ? Phase::attacking : Phase::defending;
        }
        per_team[rec.team_id][WindowKey{rec.period, window, phase_rank(phase)}].add(rec);
    }

    std::vector<Segment> segments;
    for (auto& [team, windows] : per_team) {
        for (auto& [key, acc] : windows) {
            if (acc.frame_count < min_frames) continue;
            Segment seg;
            seg.team_id = team;
            seg.period = std::get<0>(key);
            seg.phase = static_cast<Phase>(std::get<2>(key));
            seg.start_frame = acc.start_frame;
            seg.end_frame = acc.end_frame;
            seg.frame_count = acc.frame_count;
            for (const auto& [player, pacc] : acc.players) {
                const double n = static_cast<double>(pacc.frames);
                seg.mean_positions.emplace_back(player, Vec2{pacc.sum_x / n, pacc.sum_y / n});
                seg.player_frames.emplace_back(player, pacc.frames);
            }
            seg.possession = dominant_possession(acc);
            segments.push_back(std::move(seg));
        }
    }

    // Window keys sort by (period, window, phase) within each team already;
    // the outer map walks teams in id order.
    return segments;
}

std::vector<std::string> resolve_substitutions(
    std::span<const std::pair<std::string, std::size_t>> player_frames, int limit,
    SubstitutionMode mode) {
    (void)mode;  // drop is the only mode
    if (limit < 1) throw ConfigError(fmt::format("substitution limit must be >= 1, got {}", limit));

    std::vector<std::pair<std::string, std::size_t>> ranked(player_frames.begin(),
                                                            player_frames.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > static_cast<std::size_t>(limit)) {
        ranked.resize(static_cast<std::size_t>(limit));
    }
    std::vector<std::string> retained;
    retained.reserve(ranked.size());
    for (auto& [player, _] : ranked) retained.push_back(std::move(player));
    std::sort(retained.begin(), retained.end());
    return retained;
}

void apply_substitutions(Segment& seg, int limit, SubstitutionMode mode) {
    const std::vector<std::string> retained = resolve_substitutions(seg.player_frames, limit, mode);
    seg.under_manned = seg.player_frames.size() < static_cast<std::size_t>(limit);
    if (retained.size() == seg.player_frames.size()) return;

    const auto keep = [&retained](const std::string& id) {
        return std::binary_search(retained.begin(), retained.end(), id);
    };
    std::erase_if(seg.mean_positions, [&](const auto& entry) { return !keep(entry.first); });
    std::erase_if(seg.player_frames, [&](const auto& entry) { return !keep(entry.first); });
}

}  // namespace formfit
