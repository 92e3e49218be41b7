#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxfinder {

// A folder label of the form CODE NUM? COUNTRY* DATE?, for example
// "POL 12-6 BRAZ 01/01/1967".
struct ParsedLabel {
    std::string primary_code;            // two or three capitals, e.g. "POL"
    std::string numeric_code;            // e.g. "12-6"; empty when absent
    std::vector<std::string> countries;  // abbreviations as written
    std::optional<int> year;

    bool operator==(const ParsedLabel&) const = default;
};

struct LabelParseError : std::runtime_error {
    LabelParseError(const std::string& msg, std::string raw)
        : std::runtime_error(msg), label(std::move(raw)) {}
    std::string label;
};

struct GuideEntry {
    std::string label;
    std::optional<std::string> scope_note;

    bool operator==(const GuideEntry&) const = default;
};

struct GuideError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Subject code definitions plus country abbreviation names. Codes are keyed
// by their full form ("POL", "POL 12", "POL 12-6").
class ClassificationGuide {
public:
    ClassificationGuide() = default;
    ClassificationGuide(std::map<std::string, GuideEntry> codes,
                        std::map<std::string, std::string> countries);

    const std::map<std::string, GuideEntry>& codes() const { return codes_; }
    const std::map<std::string, std::string>& country_names() const { return countries_; }

    const GuideEntry* find_code(const std::string& full_code) const;
    const std::string* find_country(const std::string& abbrev) const;

private:
    std::map<std::string, GuideEntry> codes_;
    std::map<std::string, std::string> countries_;
};

ClassificationGuide load_guide(const std::string& path);
void save_guide(const ClassificationGuide& g, const std::string& path);

struct LabelExpansionOptions {
    bool include_scope_notes = false;
    // Abbreviations dropped from expansions because they appear on nearly
    // every folder and carry no discriminating signal.
    std::set<std::string> suppressed_countries = {"BRAZ"};
};

ParsedLabel parse_folder_label(const std::string& label);

// Guide labels for every prefix of the code (including the bare primary),
// the leaf scope note when enabled, standard country names, then the year.
// Raw codes and the month/day never appear in the output. Unknown codes
// and country abbreviations are reported through warnings, not errors.
std::string expand_label(const ParsedLabel& parsed, const ClassificationGuide& guide,
                         const LabelExpansionOptions& opts,
                         std::vector<std::string>* warnings = nullptr);

struct BoxLabelText {
    std::string text;
    std::vector<std::string> warnings;
};

// Concatenated expansions of a box's folder labels, in sorted label order.
// Labels that parse to the same structure contribute once; unparseable
// labels are skipped with a warning.
BoxLabelText box_label_text(const std::set<std::string>& folder_labels,
                            const ClassificationGuide& guide,
                            const LabelExpansionOptions& opts);

} // namespace boxfinder
