#pragma once

#include <string>

#include "formfit/formation_catalog.hpp"
#include "formfit/matching.hpp"
#include "formfit/segmentation.hpp"

namespace formfit {

struct RenderSpec {
    double pitch_length = 105.0;  // meters
    double pitch_width = 68.0;
    bool show_players = true;
    bool show_slots = true;
    bool show_assignment_lines = true;
    bool show_labels = true;
};

/// Standalone SVG diagram of a matched segment: pitch outline, player
/// markers at segment mean positions, matched template slots projected onto
/// the players' bounding box, and assignment lines. Byte-deterministic for
/// identical inputs.
std::string render_match(const Segment& segment, const MatchResult& result,
                         const TemplateRegistry& registry, const RenderSpec& spec);

}  // namespace formfit
