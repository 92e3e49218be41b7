#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxfinder {

// One digitized document: OCR text per page plus catalog metadata.
struct DocumentRecord {
    std::string doc_id;
    std::string box_id;        // numeric box identifier, kept as text
    std::string folder_label;
    std::string title;         // may be empty
    std::vector<std::string> pages;

    bool operator==(const DocumentRecord&) const = default;
};

struct LoadError : std::runtime_error {
    explicit LoadError(const std::string& msg, size_t line_no = 0)
        : std::runtime_error(msg), line(line_no) {}
    size_t line;  // 1-based input line, 0 when not tied to one
};

struct Violation {
    std::string subject;  // doc_id, or box_id for box-level rules
    std::string rule;
    std::string message;

    bool operator==(const Violation&) const = default;
};

// Immutable set of documents grouped into boxes. The derived maps are
// built once at construction, so concurrent readers need no locking.
class Collection {
public:
    Collection() = default;

    static Collection from_documents(std::vector<DocumentRecord> docs);

    const std::vector<DocumentRecord>& documents() const { return documents_; }

    // box_id -> doc_ids in input order
    const std::map<std::string, std::vector<std::string>>& boxes() const { return boxes_; }

    // box_id -> distinct folder labels
    const std::map<std::string, std::set<std::string>>& folders() const { return folders_; }

    bool has_document(const std::string& doc_id) const;
    const DocumentRecord& document(const std::string& doc_id) const;

    // Box ids ordered by numeric value; ids that fail to parse sort after
    // the numeric ones, lexicographically.
    std::vector<std::string> sorted_box_ids() const;

    // Box id parsed as a non-negative integer; throws LoadError otherwise.
    static long long box_number(const std::string& box_id);

private:
    std::vector<DocumentRecord> documents_;
    std::map<std::string, std::vector<std::string>> boxes_;
    std::map<std::string, std::set<std::string>> folders_;
    std::map<std::string, size_t> doc_pos_;  // doc_id -> first index in documents_
};

// True when box_id is a plain non-negative integer; the value lands in out.
bool try_box_number(const std::string& box_id, long long& out);

// Reads one JSON record per line. Malformed JSON, missing or mistyped
// fields, duplicate doc_ids, non-numeric box_ids, and empty page lists
// are load errors carrying the offending line number.
Collection load_collection(const std::string& path);

void save_collection(const Collection& c, const std::string& path);
std::string collection_to_jsonl(const Collection& c);

// Every invariant violation, ordered by (subject, rule).
std::vector<Violation> validate_collection(const Collection& c);

} // namespace boxfinder
