#include "formfit/pitch_svg.hpp"

#include <fmt/format.h>

#include "formfit/errors.hpp"

namespace formfit {

namespace {

constexpr double kMargin = 4.0;

std::string escape_xml(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string render_match(const Segment& segment, const MatchResult& result,
                         const TemplateRegistry& registry, const RenderSpec& spec) {
    if (!(spec.pitch_length > 0.0) || !(spec.pitch_width > 0.0)) {
        throw InvalidInputError("render: pitch dimensions must be positive");
    }
    const FormationTemplate* tpl = registry.find(result.formation_name);
    if (tpl == nullptr) {
        throw InvalidInputError(
            fmt::format("render: formation \"{}\" not in registry", result.formation_name));
    }
    for (const auto& [player, _] : segment.mean_positions) {
        if (!result.labels.contains(player)) {
            throw InvalidInputError(fmt::format("render: no label for player \"{}\"", player));
        }
    }

    const double length = spec.pitch_length;
    const double width = spec.pitch_width;
    // Pitch frame: origin at center, +x toward the attacked goal, +y toward
    // the attacking team's left flank. SVG y points down, so y is mirrored.
    const auto sx = [&](double x) { return kMargin + length / 2.0 + x; };
    const auto sy = [&](double y) { return kMargin + width / 2.0 - y; };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.2f} {:.2f}\">\n",
        length + 2 * kMargin, width + 2 * kMargin);
    svg += fmt::format(
        "  <rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
        "fill=\"#3a915f\" stroke=\"white\" stroke-width=\"0.4\"/>\n",
        kMargin, kMargin, length, width);
    svg += fmt::format(
        "  <line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"white\" "
        "stroke-width=\"0.3\"/>\n",
        sx(0.0), kMargin, sx(0.0), kMargin + width);
    svg += fmt::format(
        "  <circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"9.15\" fill=\"none\" stroke=\"white\" "
        "stroke-width=\"0.3\"/>\n",
        sx(0.0), sy(0.0));

    // Template slots live in the catalog frame; project them onto the
    // players' own bounding box so residual lines are meaningful on the pitch.
    std::vector<Vec2> points;
    for (const auto& [_, pos] : segment.mean_positions) points.push_back(pos);
    Bounds obs_box{0, 0, 0, 0};
    if (!points.empty()) obs_box = Bounds::of(points);
    const Bounds& tpl_box = registry.bounds();
    const auto project = [&](Vec2 p) -> Vec2 {
        const double fx = tpl_box.length() > 0.0 && obs_box.length() > 0.0
                              ? obs_box.min_x + (p.x - tpl_box.min_x) * obs_box.length() / tpl_box.length()
                              : obs_box.mid_x();
        const double fy = tpl_box.width() > 0.0 && obs_box.width() > 0.0
                              ? obs_box.min_y + (p.y - tpl_box.min_y) * obs_box.width() / tpl_box.width()
                              : obs_box.mid_y();
        return {fx, fy};
    };

    if (spec.show_assignment_lines) {
        for (const auto& [player, pos] : segment.mean_positions) {
            const auto slot = tpl->slot_index(result.labels.at(player));
            if (!slot) continue;
            const Vec2 target = project(tpl->slots[*slot].position);
            svg += fmt::format(
                "  <line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                "stroke=\"#ffd24d\" stroke-width=\"0.25\"/>\n",
                sx(pos.x), sy(pos.y), sx(target.x), sy(target.y));
        }
    }
    if (spec.show_slots) {
        for (const TemplateSlot& slot : tpl->slots) {
            const Vec2 p = project(slot.position);
            svg += fmt::format(
                "  <rect class=\"slot\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"1.6\" height=\"1.6\" "
                "fill=\"none\" stroke=\"#ffd24d\" stroke-width=\"0.25\"/>\n",
                sx(p.x) - 0.8, sy(p.y) - 0.8);
        }
    }
    if (spec.show_players) {
        for (const auto& [player, pos] : segment.mean_positions) {
            svg += fmt::format(
                "  <circle class=\"player\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.1\" fill=\"white\" "
                "stroke=\"black\" stroke-width=\"0.2\"/>\n",
                sx(pos.x), sy(pos.y));
            if (spec.show_labels) {
                svg += fmt::format(
                    "  <text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"2.2\" text-anchor=\"middle\" "
                    "fill=\"white\">{}</text>\n",
                    sx(pos.x), sy(pos.y) - 1.8, escape_xml(result.labels.at(player)));
            }
        }
    }
    svg += fmt::format(
        "  <text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"2.6\" fill=\"white\">{} {} | {}</text>\n",
        kMargin + 1.0, kMargin - 1.0, escape_xml(segment.team_id), phase_name(segment.phase),
        escape_xml(result.formation_name));
    svg += "</svg>\n";
    return svg;
}

}  // namespace formfit
