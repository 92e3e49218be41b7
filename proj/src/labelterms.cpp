#include "boxfinder/labelterms.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "json.hpp"

namespace boxfinder {
namespace {

using ojson = nlohmann::ordered_json;

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

bool all_upper_alpha(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < 'A' || c > 'Z') return false;
    }
    return true;
}

bool is_primary_code(std::string_view s) {
    return (s.size() == 2 || s.size() == 3) && all_upper_alpha(s);
}

// digits separated by single hyphens: "12", "12-6", "2-3-1"
bool is_numeric_code(std::string_view s) {
    if (s.empty()) return false;
    size_t start = 0;
    while (start <= s.size()) {
        const size_t dash = s.find('-', start);
        const std::string_view part =
            s.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
        if (!all_digits(part)) return false;
        if (dash == std::string_view::npos) return true;
        start = dash + 1;
    }
    return false;
}

// d{1,2}/d{1,2}/d{4}
bool parse_date_token(std::string_view s, int& year_out) {
    const size_t s1 = s.find('/');
    if (s1 == std::string_view::npos) return false;
    const size_t s2 = s.find('/', s1 + 1);
    if (s2 == std::string_view::npos) return false;
    const std::string_view month = s.substr(0, s1);
    const std::string_view day = s.substr(s1 + 1, s2 - s1 - 1);
    const std::string_view year = s.substr(s2 + 1);
    if (month.size() < 1 || month.size() > 2 || !all_digits(month)) return false;
    if (day.size() < 1 || day.size() > 2 || !all_digits(day)) return false;
    if (year.size() != 4 || !all_digits(year)) return false;
    int y = 0;
    std::from_chars(year.data(), year.data() + year.size(), y);
    year_out = y;
    return true;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

} // namespace

ClassificationGuide::ClassificationGuide(std::map<std::string, GuideEntry> codes,
                                         std::map<std::string, std::string> countries)
    : codes_(std::move(codes)), countries_(std::move(countries)) {
    for (const auto& [code, entry] : codes_) {
        if (entry.label.empty()) {
            throw GuideError("guide entry for '" + code + "' has an empty label");
        }
        if (entry.scope_note && entry.scope_note->empty()) {
            throw GuideError("guide entry for '" + code + "' has an empty scope note");
        }
    }
    for (const auto& [abbr, name] : countries_) {
        if (abbr.empty() || name.empty()) {
            throw GuideError("guide country entry with empty abbreviation or name");
        }
    }
}

const GuideEntry* ClassificationGuide::find_code(const std::string& full_code) const {
    auto it = codes_.find(full_code);
    return it == codes_.end() ? nullptr : &it->second;
}

const std::string* ClassificationGuide::find_country(const std::string& abbrev) const {
    auto it = countries_.find(abbrev);
    return it == countries_.end() ? nullptr : &it->second;
}

ClassificationGuide load_guide(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw GuideError("cannot open '" + path + "'");
    }
    ojson doc;
    try {
        doc = ojson::parse(in);
    } catch (const ojson::parse_error& e) {
        throw GuideError("malformed guide file '" + path + "': " + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "boxfinder-guide") {
        throw GuideError("'" + path + "' is not a guide file");
    }
    if (doc.value("version", 0) != 1) {
        throw GuideError("unsupported guide version in '" + path + "'");
    }
    std::map<std::string, GuideEntry> codes;
    for (const auto& rec : doc.at("codes")) {
        if (!rec.is_object() || !rec.contains("code")) {
            throw GuideError("guide code entry without a 'code' field");
        }
        const std::string code = rec.at("code").get<std::string>();
        if (!rec.contains("label")) {
            // A scope note alone has nothing to attach to.
            throw GuideError("guide entry for '" + code + "' has no label");
        }
        GuideEntry entry;
        entry.label = rec.at("label").get<std::string>();
        if (rec.contains("scope_note")) {
            entry.scope_note = rec.at("scope_note").get<std::string>();
        }
        auto [it, inserted] = codes.emplace(code, std::move(entry));
        if (!inserted) {
            throw GuideError("duplicate guide code '" + code + "'");
        }
    }
    std::map<std::string, std::string> countries;
    if (doc.contains("countries")) {
        for (const auto& [abbr, name] : doc.at("countries").items()) {
            countries[abbr] = name.get<std::string>();
        }
    }
    return ClassificationGuide(std::move(codes), std::move(countries));
}

void save_guide(const ClassificationGuide& g, const std::string& path) {
    ojson doc;
    doc["format"] = "boxfinder-guide";
    doc["version"] = 1;
    ojson codes = ojson::array();
    for (const auto& [code, entry] : g.codes()) {
        ojson rec;
        rec["code"] = code;
        rec["label"] = entry.label;
        if (entry.scope_note) rec["scope_note"] = *entry.scope_note;
        codes.push_back(std::move(rec));
    }
    doc["codes"] = std::move(codes);
    ojson countries = ojson::object();
    for (const auto& [abbr, name] : g.country_names()) {
        countries[abbr] = name;
    }
    doc["countries"] = std::move(countries);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw GuideError("cannot write '" + path + "'");
    }
    out << doc.dump(1) << '\n';
    if (!out) {
        throw GuideError("write failed for '" + path + "'");
    }
}

ParsedLabel parse_folder_label(const std::string& label) {
    const std::vector<std::string> tokens = split_ws(label);
    if (tokens.empty()) {
        throw LabelParseError("empty label", label);
    }
    if (!is_primary_code(tokens[0])) {
        throw LabelParseError("label does not start with a subject code: '" + tokens[0] + "'",
                              label);
    }
    ParsedLabel p;
    p.primary_code = tokens[0];
    size_t i = 1;
    if (i < tokens.size() && is_numeric_code(tokens[i])) {
        p.numeric_code = tokens[i];
        ++i;
    }
    while (i < tokens.size() && all_upper_alpha(tokens[i])) {
        p.countries.push_back(tokens[i]);
        ++i;
    }
    if (i < tokens.size()) {
        int year = 0;
        if (parse_date_token(tokens[i], year)) {
            if (year < 1900 || year > 2100) {
                throw LabelParseError("implausible year " + std::to_string(year), label);
            }
            p.year = year;
            ++i;
        }
    }
    if (i != tokens.size()) {
        throw LabelParseError("unexpected token '" + tokens[i] + "'", label);
    }
    return p;
}

std::string expand_label(const ParsedLabel& parsed, const ClassificationGuide& guide,
                         const LabelExpansionOptions& opts,
                         std::vector<std::string>* warnings) {
    auto warn = [&](std::string msg) {
        if (warnings) warnings->push_back(std::move(msg));
    };
    // Code prefixes from general to specific: POL, POL 12, POL 12-6.
    std::vector<std::string> chain{parsed.primary_code};
    if (!parsed.numeric_code.empty()) {
        std::string acc = parsed.primary_code + " ";
        size_t start = 0;
        while (true) {
            const size_t dash = parsed.numeric_code.find('-', start);
            acc += parsed.numeric_code.substr(
                start, dash == std::string::npos ? std::string::npos : dash - start);
            chain.push_back(acc);
            if (dash == std::string::npos) break;
            acc += '-';
            start = dash + 1;
        }
    }
    std::vector<std::string> segments;
    bool found_any = false;
    for (const std::string& code : chain) {
        if (const GuideEntry* entry = guide.find_code(code)) {
            segments.push_back(entry->label);
            found_any = true;
        }
    }
    if (opts.include_scope_notes) {
        if (const GuideEntry* leaf = guide.find_code(chain.back())) {
            if (leaf->scope_note) segments.push_back(*leaf->scope_note);
        }
    }
    if (!found_any) {
        warn("no guide entry for any prefix of '" + chain.back() + "'");
    }
    for (const std::string& abbr : parsed.countries) {
        if (opts.suppressed_countries.count(abbr)) continue;
        if (const std::string* name = guide.find_country(abbr)) {
            segments.push_back(*name);
        } else {
            warn("unknown country abbreviation '" + abbr + "'");
        }
    }
    if (parsed.year) {
        segments.push_back(std::to_string(*parsed.year));
    }
    std::string out;
    for (const std::string& s : segments) {
        if (!out.empty()) out += ' ';
        out += s;
    }
    return out;
}

BoxLabelText box_label_text(const std::set<std::string>& folder_labels,
                            const ClassificationGuide& guide,
                            const LabelExpansionOptions& opts) {
    BoxLabelText out;
    std::vector<ParsedLabel> seen;
    for (const std::string& raw : folder_labels) {
        ParsedLabel parsed;
        try {
            parsed = parse_folder_label(raw);
        } catch (const LabelParseError& e) {
            out.warnings.push_back("skipping unparseable label '" + raw + "': " + e.what());
            continue;
        }
        // Raw labels differing only in whitespace parse identically and
        // should not double their terms.
        if (std::find(seen.begin(), seen.end(), parsed) != seen.end()) continue;
        seen.push_back(parsed);
        const std::string expansion = expand_label(parsed, guide, opts, &out.warnings);
        if (expansion.empty()) continue;
        if (!out.text.empty()) out.text += ' ';
        out.text += expansion;
    }
    return out;
}

} // namespace boxfinder
