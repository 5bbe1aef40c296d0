#include "formfit/tracking_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "formfit/errors.hpp"

namespace formfit {

namespace {

constexpr std::string_view kHeader =
    "period,frame_id,timestamp,team_id,player_id,x,y,possession_team_id";

template <typename T>
bool parse_number(std::string_view field, T& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) return false;
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(out)) return false;
    }
    return true;
}

[[noreturn]] void fail_line(std::size_t line, const std::string& message) {
    throw InvalidInputError(fmt::format("tracking data: line {}: {}", line, message));
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

AttackDirection parse_direction(const std::string& value, const std::string& context) {
    if (value == "left") return AttackDirection::left;
    if (value == "right") return AttackDirection::right;
    throw InvalidInputError(
        fmt::format("match metadata: {}: attack direction must be \"left\" or \"right\", got \"{}\"",
                    context, value));
}

}  // namespace

const TeamMeta* MatchMeta::team(std::string_view id) const {
    for (const TeamMeta& t : teams) {
        if (t.id == id) return &t;
    }
    return nullptr;
}

AttackDirection MatchMeta::direction(const std::string& team_id, int period) const {
    const auto it = attack_direction.find({team_id, period});
    if (it == attack_direction.end()) {
        throw ConfigError(fmt::format(
            "match metadata: no attack direction for team \"{}\" in period {}", team_id, period));
    }
    return it->second;
}

MatchMeta parse_meta(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(fmt::format("match metadata: {}", e.what()));
    }

    MatchMeta meta;
    try {
        meta.pitch_length = doc.at("pitch_length").get<double>();
        meta.pitch_width = doc.at("pitch_width").get<double>();
        for (const auto& team : doc.at("teams")) {
            TeamMeta tm;
            tm.id = team.at("id").get<std::string>();
            if (team.contains("goalkeepers")) {
                for (const auto& gk : team.at("goalkeepers")) {
                    tm.goalkeeper_ids.insert(gk.get<std::string>());
                }
            }
            meta.teams.push_back(std::move(tm));
        }
        if (doc.contains("attack_direction")) {
            for (const auto& [team_id, periods] : doc.at("attack_direction").items()) {
                for (const auto& [period_key, dir] : periods.items()) {
                    int period = 0;
                    if (!parse_number(period_key, period) || period < 1) {
                        throw InvalidInputError(fmt::format(
                            "match metadata: invalid period key \"{}\"", period_key));
                    }
                    meta.attack_direction[{team_id, period}] = parse_direction(
                        dir.get<std::string>(), fmt::format("team \"{}\" period {}", team_id, period));
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(fmt::format("match metadata: {}", e.what()));
    }

    if (meta.teams.size() != 2) {
        throw InvalidInputError(fmt::format("match metadata: expected exactly 2 teams, got {}",
                                            meta.teams.size()));
    }
    if (meta.teams[0].id == meta.teams[1].id) {
        throw InvalidInputError(
            fmt::format("match metadata: duplicate team id \"{}\"", meta.teams[0].id));
    }
    if (!(meta.pitch_length > 0.0) || !(meta.pitch_width > 0.0)) {
        throw InvalidInputError("match metadata: pitch dimensions must be positive");
    }
    for (const auto& [key, dir] : meta.attack_direction) {
        const auto& [team_id, period] = key;
        if (meta.team(team_id) == nullptr) {
            throw InvalidInputError(fmt::format(
                "match metadata: attack direction given for unknown team \"{}\"", team_id));
        }
        for (const TeamMeta& other : meta.teams) {
            if (other.id == team_id) continue;
            const auto other_it = meta.attack_direction.find({other.id, period});
            if (other_it != meta.attack_direction.end() && other_it->second == dir) {
                throw InvalidInputError(fmt::format(
                    "match metadata: both teams attack the same goal in period {}", period));
            }
        }
    }
    return meta;
}

MatchMeta load_meta_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError(fmt::format("cannot open match metadata \"{}\"", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_meta(buffer.str());
}

std::vector<FrameRecord> parse_tracking(std::istream& in, const MatchMeta& meta) {
    std::vector<FrameRecord> records;
    std::unordered_set<std::string> seen_keys;

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    bool any_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        any_content = true;
        if (!header_seen) {
            if (line != kHeader) fail_line(line_no, fmt::format("expected header \"{}\"", kHeader));
            header_seen = true;
            continue;
        }

        const auto fields = split_fields(line);
        if (fields.size() != 8) {
            fail_line(line_no, fmt::format("expected 8 fields, got {}", fields.size()));
        }
        FrameRecord rec;
        if (!parse_number(fields[0], rec.period) || rec.period < 1) {
            fail_line(line_no, fmt::format("bad period \"{}\"", fields[0]));
        }
        if (!parse_number(fields[1], rec.frame_id)) {
            fail_line(line_no, fmt::format("bad frame_id \"{}\"", fields[1]));
        }
        if (!parse_number(fields[2], rec.timestamp) || rec.timestamp < 0.0) {
            fail_line(line_no, fmt::format("bad timestamp \"{}\"", fields[2]));
        }
        rec.team_id = std::string(fields[3]);
        rec.player_id = std::string(fields[4]);
        if (rec.team_id.empty() || rec.player_id.empty()) {
            fail_line(line_no, "team_id and player_id must be non-empty");
        }
        const TeamMeta* team = meta.team(rec.team_id);
        if (team == nullptr) fail_line(line_no, fmt::format("unknown team_id \"{}\"", rec.team_id));
        if (!parse_number(fields[5], rec.x) || !parse_number(fields[6], rec.y)) {
            fail_line(line_no, "coordinates are not finite numbers");
        }
        if (!fields[7].empty()) {
            std::string possession(fields[7]);
            if (meta.team(possession) == nullptr) {
                fail_line(line_no, fmt::format("unknown possession_team_id \"{}\"", possession));
            }
            rec.possession_team_id = std::move(possession);
        }

        const std::string key =
            fmt::format("{}|{}|{}|{}", rec.period, rec.frame_id, rec.team_id, rec.player_id);
        if (!seen_keys.insert(key).second) {
            fail_line(line_no, fmt::format("duplicate record for frame {} team \"{}\" player \"{}\"",
                                           rec.frame_id, rec.team_id, rec.player_id));
        }

        if (team->goalkeeper_ids.contains(rec.player_id)) continue;
        records.push_back(std::move(rec));
    }
    if (!header_seen && any_content) fail_line(1, fmt::format("expected header \"{}\"", kHeader));

    std::stable_sort(records.begin(), records.end(), [](const FrameRecord& a, const FrameRecord& b) {
        return std::tie(a.period, a.frame_id) < std::tie(b.period, b.frame_id);
    });

    // Timestamps must be non-decreasing along frames within each period.
    for (std::size_t i = 1; i < records.size(); ++i) {
        const FrameRecord& prev = records[i - 1];
        const FrameRecord& cur = records[i];
        if (prev.period == cur.period && cur.timestamp < prev.timestamp) {
            throw InvalidInputError(fmt::format(
                "tracking data: timestamp decreases at frame {} in period {}", cur.frame_id,
                cur.period));
        }
    }
    return records;
}

std::vector<FrameRecord> parse_tracking_file(const std::string& path, const MatchMeta& meta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError(fmt::format("cannot open tracking data \"{}\"", path));
    return parse_tracking(in, meta);
}

std::string serialize_tracking(std::span<const FrameRecord> records) {
    std::string out{kHeader};
    out.push_back('\n');
    for (const FrameRecord& rec : records) {
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{},{}\n", rec.period,
                       rec.frame_id, rec.timestamp, rec.team_id, rec.player_id, rec.x, rec.y,
                       rec.possession_team_id ? *rec.possession_team_id : std::string());
    }
    return out;
}

std::vector<FrameRecord> normalize_orientation(std::vector<FrameRecord> records,
                                               const MatchMeta& meta) {
    for (FrameRecord& rec : records) {
        if (meta.direction(rec.team_id, rec.period) == AttackDirection::left) {
            rec.x = -rec.x;
            rec.y = -rec.y;
        }
    }
    return records;
}

}  // namespace formfit
