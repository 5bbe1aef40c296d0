#include "formfit/matching.hpp"

#include <limits>
#include <set>

#include <fmt/format.h>

#include "formfit/errors.hpp"

namespace formfit {

namespace {

constexpr int kMinOutfielders = 8;
constexpr int kMaxOutfielders = 10;

void check_observation(const TeamObservation& obs) {
    std::set<std::string_view> ids;
    for (const PlayerPosition& p : obs.players) {
        if (!ids.insert(p.player_id).second) {
            throw InvalidInputError(fmt::format("duplicate player id \"{}\"", p.player_id));
        }
    }
}

MatchResult label_result(const TeamObservation& obs, const FormationTemplate& tpl,
                         const Assignment& assignment, bool scaled) {
    MatchResult result;
    result.formation_name = tpl.name;
    result.cost = assignment.total_cost;
    result.scaled = scaled;
    for (std::size_t i = 0; i < obs.players.size(); ++i) {
        result.labels.emplace(obs.players[i].player_id,
                              tpl.slots[assignment.slot_of_player[i]].label);
    }
    return result;
}

MatchResult best_of(const TeamObservation& obs,
                    const std::vector<const FormationTemplate*>& candidates,
                    const TemplateRegistry& registry, Scaling scaling) {
    check_observation(obs);
    const TeamObservation scaled =
        scaling == Scaling::on ? scale_positions(obs, registry.bounds()) : obs;

    const FormationTemplate* best = nullptr;
    Assignment best_assignment;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const FormationTemplate* tpl : candidates) {
        Assignment a = solve_assignment(build_cost_matrix(scaled, *tpl));
        if (a.total_cost < best_cost) {  // ties keep the earlier template
            best_cost = a.total_cost;
            best = tpl;
            best_assignment = std::move(a);
        }
    }
    return label_result(obs, *best, best_assignment, scaling == Scaling::on);
}

}  // namespace

TeamObservation scale_positions(const TeamObservation& obs, const Bounds& target) {
    if (obs.players.size() < 2) {
        throw InvalidInputError("cannot scale an observation with fewer than 2 players");
    }
    std::vector<Vec2> points;
    points.reserve(obs.players.size());
    for (const PlayerPosition& p : obs.players) points.push_back(p.position);
    const Bounds box = Bounds::of(points);

    const bool flat_x = box.max_x == box.min_x;
    const bool flat_y = box.max_y == box.min_y;
    const double sx = flat_x ? 0.0 : target.length() / box.length();
    const double sy = flat_y ? 0.0 : target.width() / box.width();

    TeamObservation out = obs;
    for (PlayerPosition& p : out.players) {
        p.position.x = flat_x ? target.mid_x() : target.min_x + (p.position.x - box.min_x) * sx;
        p.position.y = flat_y ? target.mid_y() : target.min_y + (p.position.y - box.min_y) * sy;
    }
    return out;
}

CostMatrix build_cost_matrix(const TeamObservation& scaled, const FormationTemplate& tpl) {
    const std::size_t n = scaled.players.size();
    if (n != tpl.slots.size()) {
        throw InvalidInputError(fmt::format(
            "player count {} does not match formation \"{}\" with {} slots", n, tpl.name,
            tpl.slots.size()));
    }
    CostMatrix costs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            costs.set(i, j, distance(scaled.players[i].position, tpl.slots[j].position));
        }
    }
    return costs;
}

MatchResult match(const TeamObservation& obs, const TemplateRegistry& registry, Scaling scaling) {
    const int count = static_cast<int>(obs.players.size());
    if (count < kMinOutfielders || count > kMaxOutfielders) {
        throw InvalidInputError(
            fmt::format("observation has {} players, matching needs 8-10", count));
    }
    const auto candidates = registry.with_count(count);
    if (candidates.empty()) {
        throw NoTemplateError(fmt::format("no formation template with {} slots", count));
    }
    return best_of(obs, candidates, registry, scaling);
}

MatchResult match_restricted(const TeamObservation& obs, const TemplateRegistry& registry,
                             std::span<const std::string> allowed, Scaling scaling) {
    std::set<std::string_view> allowed_set;
    for (const std::string& name : allowed) {
        if (registry.find(name) == nullptr) {
            throw ConfigError(fmt::format("unknown formation \"{}\" in restriction", name));
        }
        allowed_set.insert(name);
    }
    const int count = static_cast<int>(obs.players.size());
    if (count < kMinOutfielders || count > kMaxOutfielders) {
        throw InvalidInputError(
            fmt::format("observation has {} players, matching needs 8-10", count));
    }
    std::vector<const FormationTemplate*> candidates;
    for (const FormationTemplate* tpl : registry.with_count(count)) {
        if (allowed_set.contains(tpl->name)) candidates.push_back(tpl);
    }
    if (candidates.empty()) {
        throw NoTemplateError(
            fmt::format("no allowed formation template with {} slots", count));
    }
    return best_of(obs, candidates, registry, scaling);
}

MatchResult fit_template(const TeamObservation& obs, const TemplateRegistry& registry,
                         const FormationTemplate& tpl, Scaling scaling) {
    check_observation(obs);
    const TeamObservation scaled =
        scaling == Scaling::on ? scale_positions(obs, registry.bounds()) : obs;
    const Assignment a = solve_assignment(build_cost_matrix(scaled, tpl));
    return label_result(obs, tpl, a, scaling == Scaling::on);
}

}  // namespace formfit
