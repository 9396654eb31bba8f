#ifndef FANOFORGE_STORE_HPP
#define FANOFORGE_STORE_HPP

#include <map>
#include <string>

#include "fanoforge/json_io.hpp"

namespace ff {

// Append-only JSONL record store.  One record per line, canonical key order,
// no trailing whitespace.
struct RecordSet {
    std::vector<Json> records;
};

// Appends one record as a single line; flushes before returning so a crash
// never leaves a partial record visible to a subsequent load.
void append_record(const std::string& path, const Json& record);

// Loads a JSONL file.  Blank lines are skipped; anything unparseable raises
// IoFailure, a parsed non-object raises SchemaViolation.
RecordSet load_records(const std::string& path);

// Truncated-period fingerprint used for deduplication and classification:
// the first `depth`+1 period coefficients as decimal strings.
std::vector<std::string> period_fingerprint(const Json& record, int depth);

// Keeps the first record for each period fingerprint at the given depth.
// Records without a period field are kept unconditionally.  Idempotent.
RecordSet dedupe(const RecordSet& rs, int depth);

// Lookup table from Hilbert-series prefixes to known ids.  File format:
// one JSON object per line with keys "prefix" (array of ints) and "id".
struct HilbertLookup {
    size_t prefix_len = 5;
    std::map<std::vector<Int>, std::vector<std::string>> table;
};

HilbertLookup load_hilbert(const std::string& path, size_t prefix_len = 5);

// Ids registered for the given prefix (truncated to the table's length);
// empty when unknown.
std::vector<std::string> hilbert_matches(const HilbertLookup& h, const std::vector<Int>& prefix);

}  // namespace ff

#endif
