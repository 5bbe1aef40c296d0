#include "formfit/stability.hpp"

#include <fmt/format.h>

#include "formfit/errors.hpp"

namespace formfit {

namespace {

TeamObservation observation_of(const Segment& seg) {
    TeamObservation obs;
    obs.players.reserve(seg.mean_positions.size());
    for (const auto& [player, pos] : seg.mean_positions) obs.players.push_back({player, pos});
    return obs;
}

}  // namespace

Timeline stabilize(std::span<const std::pair<Segment, MatchResult>> per_segment,
                   const TemplateRegistry& registry, double epsilon,
                   bool reset_on_possession_change, Scaling scaling) {
    if (epsilon < 0.0) {
        throw ConfigError(fmt::format("stability threshold must be >= 0, got {}", epsilon));
    }

    Timeline timeline;
    timeline.entries.reserve(per_segment.size());

    std::optional<std::string> incumbent;
    std::optional<std::string> last_possession;

    for (const auto& [seg, candidate] : per_segment) {
        if (reset_on_possession_change && seg.possession && last_possession &&
            *seg.possession != *last_possession) {
            incumbent.reset();
        }
        if (seg.possession) last_possession = seg.possession;

        TimelineEntry entry;
        entry.segment = seg;
        entry.candidate_formation = candidate.formation_name;
        entry.candidate_cost = candidate.cost;

        const FormationTemplate* incumbent_tpl =
            incumbent ? registry.find(*incumbent) : nullptr;
        const bool refittable =
            incumbent_tpl != nullptr &&
            incumbent_tpl->slots.size() == seg.mean_positions.size();

        if (!refittable) {
            // No incumbent (first segment, possession reset, or a player-count
            // change the incumbent cannot cover): adopt unconditionally.
            entry.adopted_formation = candidate.formation_name;
            entry.adopted_labels = candidate.labels;
        } else {
            const MatchResult refit =
                fit_template(observation_of(seg), registry, *incumbent_tpl, scaling);
            entry.incumbent_cost = refit.cost;
            // IEEE semantics carry the edge cases: a perfect candidate against
            // an imperfect incumbent gives +inf (adopt); two perfect fits give
            // NaN (keep).
            const bool adopt = (refit.cost - candidate.cost) / candidate.cost > epsilon;
            if (adopt) {
                entry.adopted_formation = candidate.formation_name;
                entry.adopted_labels = candidate.labels;
            } else {
                entry.adopted_formation = *incumbent;
                entry.adopted_labels = refit.labels;
            }
        }
        incumbent = entry.adopted_formation;
        timeline.entries.push_back(std::move(entry));
    }
    return timeline;
}

}  // namespace formfit
