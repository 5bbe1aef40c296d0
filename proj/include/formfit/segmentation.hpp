#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "formfit/geometry.hpp"

namespace formfit {

/// One player of one team at one tracking frame.
struct FrameRecord {
    int period = 1;
    std::int64_t frame_id = 0;
    double timestamp = 0.0;  // seconds since period start
    std::string team_id;
    std::string player_id;
    double x = 0.0;
    double y = 0.0;
    std::optional<std::string> possession_team_id;

    friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

enum class Phase { attacking, defending, all };

std::string_view phase_name(Phase phase);

/// Contiguous frame range for one team and phase, carrying per-player mean
/// positions over the contributing frames.
struct Segment {
    std::string team_id;
    Phase phase = Phase::all;
    int period = 1;
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;
    std::size_t frame_count = 0;  // distinct contributing frames

    // Both sorted by player_id.
    std::vector<std::pair<std::string, Vec2>> mean_positions;
    std::vector<std::pair<std::string, std::size_t>> player_frames;

    /// Dominant possession attribution of the contributing frames; used as
    /// the possession-change marker by the stability filter.
    std::optional<std::string> possession;

    bool under_manned = false;
};

struct SegmentPolicy {
    enum class Kind { frame, possession, period, duration };

    Kind kind = Kind::period;
    double window_seconds = 0.0;

    static SegmentPolicy frame() { return {Kind::frame, 0.0}; }
    static SegmentPolicy possession() { return {Kind::possession, 0.0}; }
    static SegmentPolicy period() { return {Kind::period, 0.0}; }
    static SegmentPolicy duration(double seconds);  // seconds > 0
};

/// Arithmetic mean of one player's frame positions. Empty input is invalid.
Vec2 mean_position(std::span<const FrameRecord> frames);

/// Partitions sorted frames into per-team segments. With `split_phase`, each
/// policy window yields up to two segments per team (attacking/defending by
/// possession); frames without possession attribution are dropped. Duration
/// windows anchor at the period start and never span periods. Segments with
/// fewer than `min_frames` distinct frames are discarded.
std::vector<Segment> segment(std::span<const FrameRecord> frames, const SegmentPolicy& policy,
                             bool split_phase, std::size_t min_frames = 1);

enum class SubstitutionMode { drop };

/// Retains the `limit` players with the highest frame counts (ties keep the
/// lower player_id). Fewer than `limit` players: everyone stays.
std::vector<std::string> resolve_substitutions(
    std::span<const std::pair<std::string, std::size_t>> player_frames, int limit,
    SubstitutionMode mode = SubstitutionMode::drop);

/// Applies resolve_substitutions to a segment in place and flags it as
/// under-manned when fewer than `limit` players were present.
void apply_substitutions(Segment& seg, int limit, SubstitutionMode mode = SubstitutionMode::drop);

}  // namespace formfit
