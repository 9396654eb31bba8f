#ifndef FANOFORGE_PIPELINE_HPP
#define FANOFORGE_PIPELINE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "fanoforge/mmlp.hpp"
#include "fanoforge/store.hpp"
#include "fanoforge/toric.hpp"

namespace ff {

// Randomized search over rank-2 GIT weight data with a hypersurface class.
struct SampleConfig {
    std::uint64_t seed = 0;
    long count = 0;
    int entry_max = 6;
    int rows = 2;
    int cols = 6;
    int period_depth = 10;
    long tower_bound = 6;
};

// Counter-based stream: every draw is a pure function of (key, counter), so
// sample i can be generated without generating samples 0..i-1.
struct CounterRng {
    std::uint64_t key = 0;
    std::uint64_t counter = 0;

    CounterRng(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next();
    long uniform(long n);  // uniform on {0..n-1}, rejection-sampled
};

// Entries of w (row major) then d, i.i.d. uniform on {0..entry_max}.
std::pair<IntMatrix, Vec> sample(const SampleConfig& cfg, std::uint64_t index);

struct StepVerdict {
    bool pass = false;
    std::string reason;  // empty on pass
};

// Weight matrix of full rank, anticanonical class off every wall, d nef and
// the anticanonical minus d ample at the anticanonical stability.
StepVerdict step2_filter(const IntMatrix& w, const Vec& d);

// Optional extra divisibility screen; defaults to pass-through.
using ExtraScreen = std::function<bool(const IntMatrix& w, const Vec& d, const Laurent& mirror)>;

// gcd of the indices d >= 1 with a nonzero period coefficient; 0 when the
// truncated tail vanishes entirely.
Int period_index_gcd(const PeriodSequence& p);

struct Step3Result {
    StepVerdict verdict;
    std::optional<Laurent> mirror;
    std::optional<Scaffolding> scaffolding;
    std::optional<PeriodSequence> period;
    std::optional<EhrhartPrefix> hilbert;
    std::optional<Int> genus;
    std::vector<std::string> hilbert_ids;
    std::string hilbert_status;  // "matched", "miss", "skipped", "undefined"
};

// (a) d is not a weight column; (c) a mirror exists: some column subset with
// class sum d admits a tower whose Laurent polynomial is defined; (b) the
// indices of nonzero period coefficients have gcd 1 at the configured depth;
// (d) the Hilbert prefix of the dual Newton polytope is in the lookup table
// when one is supplied, otherwise recorded as skipped.
Step3Result step3_filter(const IntMatrix& w, const Vec& d, const SampleConfig& cfg,
                         const HilbertLookup* lookup, const ExtraScreen& extra = nullptr);

struct Step4Result {
    StepVerdict verdict;
    Rat shift;           // constant term removed before testing
    int dimension = -1;  // solution-space dimension of the certificate
};

// Rigid maximally-mutable test on the constant-centered mirror.
Step4Result step4_filter(const Laurent& f);

struct Step5Result {
    StepVerdict verdict;
    SingularityReport report;
};

// Singular strata of the ambient at the anticanonical stability versus the
// generic degree-d section: pass iff every contribution is isolated.
Step5Result step5_screen(const IntMatrix& w, const Vec& d);

// Full record for one sample index, canonical key order, schema version 1.
// Verdicts are monotone: steps after the first failure are absent.
Json process_sample(const SampleConfig& cfg, const HilbertLookup* lookup, std::uint64_t index,
                    const ExtraScreen& extra = nullptr);

// Streams one JSONL line per sample in index order.  With jobs > 1 the
// samples are processed by a work queue and the output is order-buffered, so
// the byte stream is identical for every worker count.
void run(const SampleConfig& cfg, const HilbertLookup* lookup, std::ostream& out, int jobs = 1,
         const ExtraScreen& extra = nullptr);

// Partition of record positions by exact truncated period equality; records
// without a period are skipped.  Classes ordered by first appearance.
std::vector<std::vector<std::size_t>> classify(const RecordSet& rs, int depth);

// CSV "genus,fingerprint,count" over records carrying genus and hilbert,
// where the fingerprint is the colon-joined Hilbert prefix.
std::string heatmap_csv(const RecordSet& rs);

}  // namespace ff

#endif
