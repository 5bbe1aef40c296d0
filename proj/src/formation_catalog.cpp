#include "formfit/formation_catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "formfit/errors.hpp"

namespace formfit {

namespace {

constexpr std::string_view kHeader = "formation_name,slot_label,x,y";
constexpr int kMinOutfielders = 8;
constexpr int kMaxOutfielders = 10;

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool parse_double(std::string_view field, double& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

struct Row {
    std::size_t line = 0;
    std::string formation;
    std::string label;
    Vec2 position;
};

void finalize_template(FormationTemplate&& tpl, std::size_t first_line, CatalogReport& report,
                       std::set<std::string, std::less<>>& completed) {
    if (!completed.insert(tpl.name).second) {
        report.issues.push_back(
            {first_line, fmt::format("duplicate formation name \"{}\"", tpl.name)});
        return;
    }
    bool ok = true;
    const int count = tpl.outfielder_count();
    if (count < kMinOutfielders || count > kMaxOutfielders) {
        report.issues.push_back(
            {first_line, fmt::format("formation \"{}\" has {} slots, expected 8, 9 or 10",
                                     tpl.name, count)});
        ok = false;
    }
    std::set<std::string_view> labels;
    for (const TemplateSlot& slot : tpl.slots) {
        if (!labels.insert(slot.label).second) {
            report.issues.push_back(
                {first_line, fmt::format("duplicate slot label \"{}\" in formation \"{}\"",
                                         slot.label, tpl.name)});
            ok = false;
        }
    }
    if (ok) report.templates.push_back(std::move(tpl));
}

}  // namespace

std::optional<std::size_t> FormationTemplate::slot_index(std::string_view label) const {
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].label == label) return i;
    }
    return std::nullopt;
}

CatalogReport TemplateRegistry::validate_csv(std::string_view text) {
    CatalogReport report;

    std::vector<Row> rows;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = strip_cr(
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kHeader) {
                report.issues.push_back(
                    {line_no, fmt::format("expected header \"{}\"", kHeader)});
                return report;
            }
            header_seen = true;
            continue;
        }

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 4) {
            report.issues.push_back(
                {line_no, fmt::format("expected 4 fields, got {}", fields.size())});
            continue;
        }
        Row row;
        row.line = line_no;
        row.formation = std::string(fields[0]);
        row.label = std::string(fields[1]);
        if (row.formation.empty()) {
            report.issues.push_back({line_no, "empty formation name"});
            continue;
        }
        if (row.label.empty()) {
            report.issues.push_back({line_no, "empty slot label"});
            continue;
        }
        if (!parse_double(fields[2], row.position.x) || !parse_double(fields[3], row.position.y)) {
            report.issues.push_back(
                {line_no, fmt::format("coordinates of \"{}\" slot \"{}\" are not finite numbers",
                                      row.formation, row.label)});
            continue;
        }
        rows.push_back(std::move(row));
    }

    // Rows of one template must be contiguous; a name reappearing later is a
    // duplicate definition.
    std::set<std::string, std::less<>> completed;
    FormationTemplate current;
    std::size_t current_first_line = 0;
    for (Row& row : rows) {
        if (current.name != row.formation) {
            if (!current.name.empty()) {
                finalize_template(std::move(current), current_first_line, report, completed);
            }
            current = FormationTemplate{row.formation, {}};
            current_first_line = row.line;
        }
        current.slots.push_back({std::move(row.label), row.position});
    }
    if (!current.name.empty()) {
        finalize_template(std::move(current), current_first_line, report, completed);
    }
    return report;
}

TemplateRegistry TemplateRegistry::parse_csv(std::string_view text) {
    CatalogReport report = validate_csv(text);
    if (!report.valid()) {
        const CatalogIssue& issue = report.issues.front();
        throw InvalidInputError(fmt::format("template catalog: line {}: {}", issue.line, issue.message));
    }
    return TemplateRegistry(std::move(report.templates));
}

TemplateRegistry TemplateRegistry::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError(fmt::format("cannot open template catalog \"{}\"", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str());
}

const TemplateRegistry& TemplateRegistry::default_registry() {
    static const TemplateRegistry registry = parse_csv(default_catalog_csv());
    return registry;
}

TemplateRegistry::TemplateRegistry(std::vector<FormationTemplate> templates)
    : templates_(std::move(templates)) {
    std::unordered_set<std::string_view> names;
    for (const FormationTemplate& tpl : templates_) {
        if (!names.insert(tpl.name).second) {
            throw InvalidInputError(fmt::format("duplicate formation name \"{}\"", tpl.name));
        }
        const int count = tpl.outfielder_count();
        if (count < kMinOutfielders || count > kMaxOutfielders) {
            throw InvalidInputError(fmt::format("formation \"{}\" has {} slots, expected 8, 9 or 10",
                                                tpl.name, count));
        }
        std::set<std::string_view> labels;
        for (const TemplateSlot& slot : tpl.slots) {
            if (!labels.insert(slot.label).second) {
                throw InvalidInputError(fmt::format("duplicate slot label \"{}\" in formation \"{}\"",
                                                    slot.label, tpl.name));
            }
            if (!std::isfinite(slot.position.x) || !std::isfinite(slot.position.y)) {
                throw InvalidInputError(fmt::format("formation \"{}\" slot \"{}\" has non-finite coordinates",
                                                    tpl.name, slot.label));
            }
        }
    }
    if (!templates_.empty()) {
        Bounds box{templates_.front().slots.front().position.x,
                   templates_.front().slots.front().position.x,
                   templates_.front().slots.front().position.y,
                   templates_.front().slots.front().position.y};
        for (const FormationTemplate& tpl : templates_) {
            for (const TemplateSlot& slot : tpl.slots) box.expand(slot.position);
        }
        bounds_ = box;
    }
}

const FormationTemplate* TemplateRegistry::find(std::string_view name) const {
    for (const FormationTemplate& tpl : templates_) {
        if (tpl.name == name) return &tpl;
    }
    return nullptr;
}

std::vector<const FormationTemplate*> TemplateRegistry::with_count(int outfielders) const {
    std::vector<const FormationTemplate*> result;
    for (const FormationTemplate& tpl : templates_) {
        if (tpl.outfielder_count() == outfielders) result.push_back(&tpl);
    }
    return result;
}

const Bounds& TemplateRegistry::bounds() const {
    if (!bounds_) throw InvalidInputError("template registry is empty, bounds undefined");
    return *bounds_;
}

std::string TemplateRegistry::serialize() const {
    std::string out{kHeader};
    out.push_back('\n');
    for (const FormationTemplate& tpl : templates_) {
        for (const TemplateSlot& slot : tpl.slots) {
            fmt::format_to(std::back_inserter(out), "{},{},{},{}\n", tpl.name, slot.label,
                           slot.position.x, slot.position.y);
        }
    }
    return out;
}

}  // namespace formfit
