#include "fanoforge/store.hpp"

#include <fstream>
#include <set>

namespace ff {

void append_record(const std::string& path, const Json& record) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw DomainError("IoFailure", "cannot open for append: " + path);
    out << record.dump() << '\n';
    out.flush();
    if (!out) throw DomainError("IoFailure", "write failed: " + path);
}

RecordSet load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("IoFailure", "cannot open: " + path);
    RecordSet rs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw DomainError("IoFailure",
                              path + ":" + std::to_string(lineno) + ": malformed JSON");
        if (!j.is_object())
            throw DomainError("SchemaViolation",
                              path + ":" + std::to_string(lineno) + ": record is not an object");
        rs.records.push_back(std::move(j));
    }
    return rs;
}

std::vector<std::string> period_fingerprint(const Json& record, int depth) {
    std::vector<std::string> fp;
    if (!record.contains("period")) return fp;
    const Json& per = record.at("period");
    if (!per.is_array()) throw DomainError("SchemaViolation", "period is not an array");
    for (size_t d = 0; d < per.size() && d <= static_cast<size_t>(depth); ++d) {
        const Json& c = per[d];
        fp.push_back(c.is_string() ? c.get<std::string>() : c.dump());
    }
    return fp;
}

RecordSet dedupe(const RecordSet& rs, int depth) {
    RecordSet out;
    std::set<std::vector<std::string>> seen;
    for (const Json& rec : rs.records) {
        std::vector<std::string> fp = period_fingerprint(rec, depth);
        if (fp.empty() || seen.insert(fp).second) out.records.push_back(rec);
    }
    return out;
}

HilbertLookup load_hilbert(const std::string& path, size_t prefix_len) {
    HilbertLookup h;
    h.prefix_len = prefix_len;
    RecordSet rs = load_records(path);
    for (const Json& rec : rs.records) {
        if (!rec.contains("prefix") || !rec.contains("id") || !rec.at("id").is_string())
            throw DomainError("SchemaViolation", "hilbert entry needs \"prefix\" and \"id\"");
        std::vector<Int> key = vec_from_json(rec.at("prefix"));
        if (key.size() > prefix_len) key.resize(prefix_len);
        h.table[key].push_back(rec.at("id").get<std::string>());
    }
    return h;
}

std::vector<std::string> hilbert_matches(const HilbertLookup& h, const std::vector<Int>& prefix) {
    std::vector<Int> key = prefix;
    if (key.size() > h.prefix_len) key.resize(h.prefix_len);
    auto it = h.table.find(key);
    return it == h.table.end() ? std::vector<std::string>{} : it->second;
}

}  // namespace ff
