#include <doctest.h>

#include <sstream>

#include <fmt/format.h>

#include "formfit/errors.hpp"
#include "formfit/random.hpp"
#include "formfit/tracking_io.hpp"

using namespace formfit;

namespace {

const char* kMetaJson = R"({
  "pitch_length": 105.0,
  "pitch_width": 68.0,
  "teams": [
    {"id": "home", "goalkeepers": ["h_gk"]},
    {"id": "away", "goalkeepers": ["a_gk"]}
  ],
  "attack_direction": {
    "home": {"1": "right", "2": "left"},
    "away": {"1": "left", "2": "right"}
  }
})";

MatchMeta meta() { return parse_meta(kMetaJson); }

std::vector<FrameRecord> parse(const std::string& csv) {
    std::istringstream in(csv);
    return parse_tracking(in, meta());
}

}  // namespace

TEST_CASE("metadata parsing") {
    const MatchMeta m = meta();
    CHECK(m.pitch_length == 105.0);
    CHECK(m.teams.size() == 2);
    CHECK(m.team("home")->goalkeeper_ids.contains("h_gk"));
    CHECK(m.direction("home", 1) == AttackDirection::right);
    CHECK(m.direction("away", 1) == AttackDirection::left);
    CHECK_THROWS_AS(m.direction("home", 3), ConfigError);

    CHECK_THROWS_AS(parse_meta("{not json"), InvalidInputError);
    CHECK_THROWS_AS(parse_meta(R"({"pitch_length": 105, "pitch_width": 68, "teams": []})"),
                    InvalidInputError);
    CHECK_THROWS_AS(
        parse_meta(
            R"({"pitch_length": 105, "pitch_width": 68,
                "teams": [{"id": "a"}, {"id": "b"}],
                "attack_direction": {"a": {"1": "right"}, "b": {"1": "right"}}})"),
        InvalidInputError);
    CHECK_THROWS_AS(
        parse_meta(R"({"pitch_length": -3, "pitch_width": 68,
                       "teams": [{"id": "a"}, {"id": "b"}]})"),
        InvalidInputError);
}

TEST_CASE("a full frame parses with the goalkeeper stripped") {
    std::string csv = "period,frame_id,timestamp,team_id,player_id,x,y,possession_team_id\n";
    csv += "1,0,0.0,home,h_gk,-50.0,0.0,home\n";
    for (int i = 1; i <= 10; ++i) {
        csv += fmt::format("1,0,0.0,home,h{:02},{},{},home\n", i, -30.0 + i, i - 5.0);
    }
    const std::vector<FrameRecord> records = parse(csv);
    CHECK(records.size() == 10);
    for (const FrameRecord& rec : records) CHECK(rec.player_id != "h_gk");
}

TEST_CASE("golden two-frame fixture parses bit-exactly") {
    const std::string csv =
        "period,frame_id,timestamp,team_id,player_id,x,y,possession_team_id\n"
        "1,7,0.28,home,h01,-10.25,3.5,away\n"
        "1,8,0.32,away,a03,12.125,-7.75,\n";
    const std::vector<FrameRecord> records = parse(csv);
    REQUIRE(records.size() == 2);
    CHECK(records[0] == FrameRecord{1, 7, 0.28, "home", "h01", -10.25, 3.5, "away"});
    CHECK(records[1] == FrameRecord{1, 8, 0.32, "away", "a03", 12.125, -7.75, std::nullopt});
}

TEST_CASE("empty input gives an empty record list") {
    CHECK(parse("").empty());
    CHECK(parse("\n\n").empty());
    CHECK(parse("period,frame_id,timestamp,team_id,player_id,x,y,possession_team_id\n").empty());
}

TEST_CASE("malformed input is rejected with a line number") {
    const std::string header =
        "period,frame_id,timestamp,team_id,player_id,x,y,possession_team_id\n";

    CHECK_THROWS_WITH_AS(parse("bogus header\n"), doctest::Contains("line 1"), InvalidInputError);
    CHECK_THROWS_WITH_AS(parse(header + "1,0,0.0,home,h01,1.0\n"), doctest::Contains("line 2"),
                         InvalidInputError);
    CHECK_THROWS_WITH_AS(parse(header + "1,0,0.0,home,h01,abc,2.0,\n"),
                         doctest::Contains("line 2"), InvalidInputError);
    CHECK_THROWS_WITH_AS(parse(header + "1,0,0.0,nobody,h01,1.0,2.0,\n"),
                         doctest::Contains("unknown team_id"), InvalidInputError);
    CHECK_THROWS_WITH_AS(parse(header + "1,0,0.0,home,h01,1.0,2.0,nobody\n"),
                         doctest::Contains("unknown possession_team_id"), InvalidInputError);
    CHECK_THROWS_WITH_AS(
        parse(header + "1,0,0.0,home,h01,1.0,2.0,\n1,0,0.1,home,h01,1.5,2.0,\n"),
        doctest::Contains("duplicate record"), InvalidInputError);
    CHECK_THROWS_WITH_AS(parse(header + "0,0,0.0,home,h01,1.0,2.0,\n"),
                         doctest::Contains("bad period"), InvalidInputError);
}

TEST_CASE("records are sorted by period and frame and timestamps must not decrease") {
    const std::string header =
        "period,frame_id,timestamp,team_id,player_id,x,y,possession_team_id\n";
    const std::vector<FrameRecord> records = parse(header +
                                                   "2,100,1.0,home,h01,1.0,2.0,\n"
                                                   "1,5,0.5,home,h01,3.0,4.0,\n"
                                                   "1,4,0.4,away,a01,5.0,6.0,\n");
    REQUIRE(records.size() == 3);
    CHECK(records[0].frame_id == 4);
    CHECK(records[1].frame_id == 5);
    CHECK(records[2].period == 2);

    CHECK_THROWS_WITH_AS(parse(header +
                               "1,4,0.4,home,h01,1.0,2.0,\n"
                               "1,5,0.3,home,h01,1.0,2.0,\n"),
                         doctest::Contains("timestamp decreases"), InvalidInputError);
}

TEST_CASE("serialize and parse round-trip") {
    DeterministicRng rng(10);
    std::vector<FrameRecord> records;
    for (int f = 0; f < 50; ++f) {
        for (const char* team : {"away", "home"}) {
            for (int p = 1; p <= 3; ++p) {
                FrameRecord rec;
                rec.period = f < 25 ? 1 : 2;
                rec.frame_id = f;
                rec.timestamp = (f % 25) * 0.04;
                rec.team_id = team;
                rec.player_id = fmt::format("{}{:02}", team[0], p);
                rec.x = rng.uniform(-52.5, 52.5);
                rec.y = rng.uniform(-34.0, 34.0);
                if (f % 7 != 0) rec.possession_team_id = (f % 2 == 0) ? "home" : "away";
                records.push_back(std::move(rec));
            }
        }
    }
    const std::string csv = serialize_tracking(records);
    std::istringstream in(csv);
    const std::vector<FrameRecord> reparsed = parse_tracking(in, meta());
    CHECK(reparsed == records);
    CHECK(serialize_tracking(reparsed) == csv);
}

TEST_CASE("orientation normalization") {
    const MatchMeta m = meta();

    SUBCASE("teams attacking right are untouched, left is point-reflected") {
        std::vector<FrameRecord> records;
        records.push_back(FrameRecord{1, 0, 0.0, "home", "h01", 10.0, 5.0, std::nullopt});
        records.push_back(FrameRecord{1, 0, 0.0, "away", "a01", 10.0, 5.0, std::nullopt});
        const auto normalized = normalize_orientation(records, m);
        CHECK(normalized[0].x == 10.0);
        CHECK(normalized[0].y == 5.0);
        CHECK(normalized[1].x == -10.0);
        CHECK(normalized[1].y == -5.0);
    }

    SUBCASE("applying it twice restores every record") {
        DeterministicRng rng(9);
        std::vector<FrameRecord> records;
        for (int f = 0; f < 40; ++f) {
            FrameRecord rec;
            rec.period = 1 + f % 2;
            rec.frame_id = f;
            rec.timestamp = f * 0.1;
            rec.team_id = f % 3 == 0 ? "home" : "away";
            rec.player_id = fmt::format("p{:02}", f % 11);
            rec.x = rng.uniform(-52.5, 52.5);
            rec.y = rng.uniform(-34.0, 34.0);
            records.push_back(std::move(rec));
        }
        const auto twice = normalize_orientation(normalize_orientation(records, m), m);
        CHECK(twice == records);
    }

    SUBCASE("missing direction entries are a configuration error") {
        std::vector<FrameRecord> records{FrameRecord{3, 0, 0.0, "home", "h01", 1.0, 2.0, {}}};
        CHECK_THROWS_AS(normalize_orientation(records, m), ConfigError);
    }
}
