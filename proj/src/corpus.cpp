#include "boxfinder/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace boxfinder {
namespace {

using ojson = nlohmann::ordered_json;

std::string require_string(const ojson& rec, const char* key, size_t line) {
    auto it = rec.find(key);
    if (it == rec.end()) {
        throw LoadError("line " + std::to_string(line) + ": missing field '" + key + "'", line);
    }
    if (!it->is_string()) {
        throw LoadError("line " + std::to_string(line) + ": field '" + key + "' must be a string", line);
    }
    return it->get<std::string>();
}

} // namespace

bool try_box_number(const std::string& box_id, long long& out) {
    if (box_id.empty()) return false;
    for (char c : box_id) {
        if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(box_id.data(), box_id.data() + box_id.size(), out);
    return ec == std::errc() && ptr == box_id.data() + box_id.size();
}

Collection Collection::from_documents(std::vector<DocumentRecord> docs) {
    Collection c;
    c.documents_ = std::move(docs);
    for (size_t i = 0; i < c.documents_.size(); ++i) {
        const DocumentRecord& d = c.documents_[i];
        c.boxes_[d.box_id].push_back(d.doc_id);
        c.folders_[d.box_id].insert(d.folder_label);
        c.doc_pos_.emplace(d.doc_id, i);  // keeps the first occurrence
    }
    return c;
}

bool Collection::has_document(const std::string& doc_id) const {
    return doc_pos_.count(doc_id) != 0;
}

const DocumentRecord& Collection::document(const std::string& doc_id) const {
    auto it = doc_pos_.find(doc_id);
    if (it == doc_pos_.end()) {
        throw LoadError("unknown doc_id '" + doc_id + "'");
    }
    return documents_[it->second];
}

std::vector<std::string> Collection::sorted_box_ids() const {
    std::vector<std::string> ids;
    ids.reserve(boxes_.size());
    for (const auto& [id, docs] : boxes_) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
        long long na = 0;
        long long nb = 0;
        const bool pa = try_box_number(a, na);
        const bool pb = try_box_number(b, nb);
        if (pa && pb) return na != nb ? na < nb : a < b;
        if (pa != pb) return pa;  // numeric ids first
        return a < b;
    });
    return ids;
}

long long Collection::box_number(const std::string& box_id) {
    long long n = 0;
    if (!try_box_number(box_id, n)) {
        throw LoadError("box_id '" + box_id + "' is not a non-negative integer");
    }
    return n;
}

Collection load_collection(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open '" + path + "'");
    }
    std::vector<DocumentRecord> docs;
    std::map<std::string, size_t> seen;  // doc_id -> line of first definition
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ojson rec;
        try {
            rec = ojson::parse(line);
        } catch (const ojson::parse_error& e) {
            throw LoadError("line " + std::to_string(line_no) + ": malformed JSON: " + e.what(), line_no);
        }
        if (!rec.is_object()) {
            throw LoadError("line " + std::to_string(line_no) + ": record is not a JSON object", line_no);
        }
        DocumentRecord d;
        d.doc_id = require_string(rec, "doc_id", line_no);
        d.box_id = require_string(rec, "box_id", line_no);
        d.folder_label = require_string(rec, "folder_label", line_no);
        d.title = require_string(rec, "title", line_no);
        if (d.doc_id.empty()) {
            throw LoadError("line " + std::to_string(line_no) + ": doc_id is empty", line_no);
        }
        long long n = 0;
        if (!try_box_number(d.box_id, n)) {
            throw LoadError("line " + std::to_string(line_no) + ": box_id '" + d.box_id +
                                "' is not a non-negative integer",
                            line_no);
        }
        auto pages_it = rec.find("pages");
        if (pages_it == rec.end() || !pages_it->is_array()) {
            throw LoadError("line " + std::to_string(line_no) + ": field 'pages' must be an array",
                            line_no);
        }
        for (const auto& p : *pages_it) {
            if (!p.is_string()) {
                throw LoadError("line " + std::to_string(line_no) + ": pages must contain strings",
                                line_no);
            }
            d.pages.push_back(p.get<std::string>());
        }
        if (d.pages.empty()) {
            throw LoadError("line " + std::to_string(line_no) + ": document '" + d.doc_id +
                                "' has no pages",
                            line_no);
        }
        auto [it, inserted] = seen.emplace(d.doc_id, line_no);
        if (!inserted) {
            throw LoadError("line " + std::to_string(line_no) + ": duplicate doc_id '" + d.doc_id +
                                "' (first defined on line " + std::to_string(it->second) + ")",
                            line_no);
        }
        docs.push_back(std::move(d));
    }
    return Collection::from_documents(std::move(docs));
}

std::string collection_to_jsonl(const Collection& c) {
    std::ostringstream out;
    for (const DocumentRecord& d : c.documents()) {
        ojson rec;
        rec["doc_id"] = d.doc_id;
        rec["box_id"] = d.box_id;
        rec["folder_label"] = d.folder_label;
        rec["title"] = d.title;
        rec["pages"] = d.pages;
        out << rec.dump() << '\n';
    }
    return out.str();
}

void save_collection(const Collection& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw LoadError("cannot write '" + path + "'");
    }
    out << collection_to_jsonl(c);
    if (!out) {
        throw LoadError("write failed for '" + path + "'");
    }
}

std::vector<Violation> validate_collection(const Collection& c) {
    std::vector<Violation> out;
    std::map<std::string, size_t> counts;
    for (const DocumentRecord& d : c.documents()) {
        ++counts[d.doc_id];
        if (d.pages.empty()) {
            out.push_back({d.doc_id, "nonempty-pages", "document has no pages"});
        }
        long long n = 0;
        if (!try_box_number(d.box_id, n)) {
            out.push_back({d.doc_id, "numeric-box-id",
                           "box_id '" + d.box_id + "' is not a non-negative integer"});
        }
        if (d.doc_id.empty()) {
            out.push_back({d.doc_id, "nonempty-doc-id", "doc_id is empty"});
        }
    }
    for (const auto& [id, n] : counts) {
        if (n > 1) {
            out.push_back({id, "unique-doc-id",
                           "doc_id appears " + std::to_string(n) + " times"});
        }
    }
    // Derived-map consistency. from_documents keeps these in lockstep, so
    // these only fire if the class grows another construction path.
    std::map<std::string, std::set<std::string>> folders;
    std::map<std::string, size_t> box_docs;
    for (const DocumentRecord& d : c.documents()) {
        folders[d.box_id].insert(d.folder_label);
        ++box_docs[d.box_id];
    }
    for (const auto& [box, docs] : c.boxes()) {
        if (docs.empty() || box_docs.find(box) == box_docs.end()) {
            out.push_back({box, "nonempty-box", "box has no documents"});
        }
    }
    if (folders != c.folders()) {
        out.push_back({"", "folders-map", "folder map does not match documents"});
    }
    std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        if (a.subject != b.subject) return a.subject < b.subject;
        if (a.rule != b.rule) return a.rule < b.rule;
        return a.message < b.message;
    });
    return out;
}

} // namespace boxfinder
