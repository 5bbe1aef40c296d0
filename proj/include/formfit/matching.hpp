#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "formfit/assignment.hpp"
#include "formfit/formation_catalog.hpp"
#include "formfit/geometry.hpp"

namespace formfit {

enum class Scaling { on, off };

struct PlayerPosition {
    std::string player_id;
    Vec2 position;
};

/// Outfield players of one team, attacking toward +x. Either a single frame
/// or segment-averaged locations; goalkeepers are stripped upstream.
struct TeamObservation {
    std::vector<PlayerPosition> players;
};

struct MatchResult {
    std::string formation_name;
    std::map<std::string, std::string> labels;  // player_id -> slot label
    double cost = 0.0;
    bool scaled = false;
};

/// Per-axis affine map of the observation's tight bounding box onto `target`.
/// An axis on which every player is level collapses to the target midline;
/// a single-player observation is rejected.
TeamObservation scale_positions(const TeamObservation& obs, const Bounds& target);

/// Pairwise Euclidean distances: players as rows, template slots as columns.
/// Player and slot counts must agree.
CostMatrix build_cost_matrix(const TeamObservation& scaled, const FormationTemplate& tpl);

/// Cheapest count-matching template in the registry, with the optimal label
/// assignment for it. Equal-cost templates resolve to registry order.
MatchResult match(const TeamObservation& obs, const TemplateRegistry& registry, Scaling scaling);

/// As `match`, with candidates restricted to the named formations. Unknown
/// names are a configuration error.
MatchResult match_restricted(const TeamObservation& obs, const TemplateRegistry& registry,
                             std::span<const std::string> allowed, Scaling scaling);

/// Cost and labels of one specific template on this observation, scaled
/// against the registry bounds. Used to re-fit an incumbent formation.
MatchResult fit_template(const TeamObservation& obs, const TemplateRegistry& registry,
                         const FormationTemplate& tpl, Scaling scaling);

}  // namespace formfit
