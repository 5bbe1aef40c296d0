#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formfit/segmentation.hpp"

namespace formfit {

/// Goal a team attacks toward; `right` is the +x goal.
enum class AttackDirection { left, right };

struct TeamMeta {
    std::string id;
    std::set<std::string> goalkeeper_ids;
};

struct MatchMeta {
    double pitch_length = 105.0;
    double pitch_width = 68.0;
    std::vector<TeamMeta> teams;  // exactly two
    std::map<std::pair<std::string, int>, AttackDirection> attack_direction;

    const TeamMeta* team(std::string_view id) const;
    AttackDirection direction(const std::string& team_id, int period) const;
};

/// Parses the match metadata document (JSON). Validates that both teams are
/// present and attack opposite goals in every covered period.
MatchMeta parse_meta(const std::string& json_text);
MatchMeta load_meta_file(const std::string& path);

/// Parses delimited tracking data. Records come back sorted by
/// (period, frame_id) with goalkeeper rows removed. Malformed rows report
/// their line number.
std::vector<FrameRecord> parse_tracking(std::istream& in, const MatchMeta& meta);
std::vector<FrameRecord> parse_tracking_file(const std::string& path, const MatchMeta& meta);

/// Inverse of parse_tracking for in-contract records (bit-exact round trip).
std::string serialize_tracking(std::span<const FrameRecord> records);

/// Point-reflects every record of a team-period attacking the left goal, so
/// that every team attacks toward +x. Stateless: applying it twice restores
/// the input.
std::vector<FrameRecord> normalize_orientation(std::vector<FrameRecord> records,
                                               const MatchMeta& meta);

}  // namespace formfit
