#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formfit/geometry.hpp"

namespace formfit {

struct TemplateSlot {
    std::string label;  // role code, e.g. "LCB"
    Vec2 position;      // template frame, attacking toward +x
};

/// A named formation: one labelled slot per outfield player.
struct FormationTemplate {
    std::string name;                 // e.g. "4411"
    std::vector<TemplateSlot> slots;  // 8, 9 or 10 entries with unique labels

    int outfielder_count() const { return static_cast<int>(slots.size()); }
    std::optional<std::size_t> slot_index(std::string_view label) const;
};

struct CatalogIssue {
    std::size_t line = 0;  // 1-based source line; 0 = whole document
    std::string message;
};

/// Result of the tolerant validation pass: templates that parsed cleanly
/// plus every violation found.
struct CatalogReport {
    std::vector<FormationTemplate> templates;
    std::vector<CatalogIssue> issues;

    bool valid() const { return issues.empty(); }
};

/// Immutable set of formation templates plus their joint bounding box,
/// which the matcher uses as the scaling target. Safe to share across
/// threads once constructed.
class TemplateRegistry {
public:
    /// Strict load: any catalog violation raises InvalidInputError.
    static TemplateRegistry parse_csv(std::string_view text);
    static TemplateRegistry load_file(const std::string& path);

    /// The built-in catalog (65 formations for 8-10 outfield players).
    static const TemplateRegistry& default_registry();

    /// Tolerant single-pass validation, used by `validate-templates`.
    static CatalogReport validate_csv(std::string_view text);

    explicit TemplateRegistry(std::vector<FormationTemplate> templates);

    std::span<const FormationTemplate> all() const { return templates_; }
    std::size_t size() const { return templates_.size(); }
    const FormationTemplate* find(std::string_view name) const;

    /// Templates with exactly `outfielders` slots, in registry order.
    /// Unsupported counts give an empty list.
    std::vector<const FormationTemplate*> with_count(int outfielders) const;

    /// Tight box over all slot coordinates of all templates; cached at
    /// construction. Throws InvalidInputError for an empty registry.
    const Bounds& bounds() const;

    /// Catalog document that parses back to an identical registry.
    std::string serialize() const;

private:
    std::vector<FormationTemplate> templates_;
    std::optional<Bounds> bounds_;
};

/// CSV text of the built-in catalog (see data/formations.csv).
std::string_view default_catalog_csv();

}  // namespace formfit
