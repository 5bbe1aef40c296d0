#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "formfit/matching.hpp"
#include "formfit/segmentation.hpp"

namespace formfit {

struct TimelineEntry {
    Segment segment;
    std::string adopted_formation;
    std::map<std::string, std::string> adopted_labels;
    std::string candidate_formation;
    double candidate_cost = 0.0;           // best template fitted to this segment
    std::optional<double> incumbent_cost;  // incumbent re-fitted to this segment
};

/// Ordered per-segment results for one team after stability filtering.
struct Timeline {
    std::vector<TimelineEntry> entries;
};

/// Folds per-segment match results into a timeline. The first segment adopts
/// its candidate unconditionally; afterwards a candidate is adopted only when
/// it undercuts the incumbent (re-fitted to the current segment) by more than
/// `epsilon`, relative to the candidate cost. When the candidate is rejected
/// the incumbent stays and labels are re-derived from its fit. With
/// `reset_on_possession_change`, a change in segment possession clears the
/// incumbent so the next candidate is adopted unconditionally.
Timeline stabilize(std::span<const std::pair<Segment, MatchResult>> per_segment,
                   const TemplateRegistry& registry, double epsilon,
                   bool reset_on_possession_change, Scaling scaling);

}  // namespace formfit
