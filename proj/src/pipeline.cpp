#include "fanoforge/pipeline.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

namespace ff {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index)
    : key(mix64(mix64(seed) ^ (index + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::next() {
    return mix64(key ^ mix64(counter++));
}

long CounterRng::uniform(long n) {
    std::uint64_t un = static_cast<std::uint64_t>(n);
    std::uint64_t reject_below = (0 - un) % un;  // 2^64 mod n
    for (;;) {
        std::uint64_t v = next();
        if (v >= reject_below) return static_cast<long>(v % un);
    }
}

std::pair<IntMatrix, Vec> sample(const SampleConfig& cfg, std::uint64_t index) {
    CounterRng rng(cfg.seed, index);
    IntMatrix w(cfg.rows, cfg.cols);
    for (int i = 0; i < cfg.rows; ++i)
        for (int j = 0; j < cfg.cols; ++j) w.at(i, j) = rng.uniform(cfg.entry_max + 1);
    Vec d(cfg.rows);
    for (int i = 0; i < cfg.rows; ++i) d[i] = rng.uniform(cfg.entry_max + 1);
    return {std::move(w), std::move(d)};
}

StepVerdict step2_filter(const IntMatrix& w, const Vec& d) {
    if (rank(w) != w.rows) return {false, "rank-deficient"};
    Vec k = anticanonical(w);
    if (on_wall(w, k)) return {false, "anticanonical-on-wall"};
    if (!is_nef(w, k, d)) return {false, "not-nef"};
    Vec rest(k.size());
    for (size_t i = 0; i < k.size(); ++i) rest[i] = k[i] - d[i];
    if (!is_ample(w, k, rest)) return {false, "residual-not-ample"};
    return {true, ""};
}

namespace {

bool origin_interior(const LatticePolytope& p) {
    if (!p.full_dimensional()) return false;
    for (const Facet& f : p.facets)
        if (f.offset >= 0) return false;
    return true;
}

}  // namespace

Int period_index_gcd(const PeriodSequence& p) {
    Int g = 0;
    for (size_t k = 1; k < p.coefficients.size(); ++k)
        if (p.coefficients[k] != 0) g = gcd(g, Int(long(k)));
    return g;
}

Step3Result step3_filter(const IntMatrix& w, const Vec& d, const SampleConfig& cfg,
                         const HilbertLookup* lookup, const ExtraScreen& extra) {
    Step3Result r;
    for (int j = 0; j < w.cols; ++j)
        if (w.col(j) == d) {
            r.verdict = {false, "divisor-is-column"};
            return r;
        }

    // Smallest-mask column subset with class sum d that carries a tower.
    for (int mask = 1; mask < (1 << w.cols) && !r.mirror; ++mask) {
        std::vector<int> s0, s1;
        for (int j = 0; j < w.cols; ++j) (mask >> j & 1 ? s1 : s0).push_back(j);
        if (static_cast<int>(s0.size()) < w.rows) continue;
        Vec sum(w.rows);
        for (int j : s1)
            for (int i = 0; i < w.rows; ++i) sum[i] += w.at(i, j);
        if (sum != d) continue;
        std::vector<std::vector<int>> part{s0, s1};
        std::vector<TowerSpec> towers;
        try {
            towers = enumerate_towers(w, part, cfg.tower_bound);
        } catch (const DomainError&) {
            continue;
        }
        for (const TowerSpec& t : towers) {
            try {
                TowerLaurent tl = laurent_from_tower(w, part, t, {s1[0]});
                r.mirror = tl.f;
                r.scaffolding = tl.scaffolding;
                break;
            } catch (const DomainError&) {
            }
        }
    }
    if (!r.mirror) {
        r.verdict = {false, "no-mirror"};
        return r;
    }
    if (extra && !extra(w, d, *r.mirror)) {
        r.verdict = {false, "extra-screen"};
        return r;
    }

    r.period = classical_period(*r.mirror, cfg.period_depth);
    Int g = period_index_gcd(*r.period);
    if (g == 0) {
        r.verdict = {false, "period-vanishes"};
        return r;
    }
    if (g != 1) {
        r.verdict = {false, "period-gcd"};
        return r;
    }

    LatticePolytope newt = newton_polytope(*r.mirror);
    if (origin_interior(newt)) {
        try {
            EhrhartPrefix pre = ehrhart_prefix(dual(newt), 5);
            r.genus = genus_from_hilbert(pre);
            r.hilbert = std::move(pre);
        } catch (const DomainError&) {
        }
    }
    if (!lookup) {
        r.hilbert_status = "skipped";
        r.verdict = {true, ""};
        return r;
    }
    if (!r.hilbert) {
        r.hilbert_status = "undefined";
        r.verdict = {false, "hilbert-undefined"};
        return r;
    }
    r.hilbert_ids = hilbert_matches(*lookup, r.hilbert->coefficients);
    if (r.hilbert_ids.empty()) {
        r.hilbert_status = "miss";
        r.verdict = {false, "hilbert-miss"};
        return r;
    }
    r.hilbert_status = "matched";
    r.verdict = {true, ""};
    return r;
}

Step4Result step4_filter(const Laurent& f) {
    Step4Result r;
    r.shift = f.constant_term();
    Laurent centered = f;
    centered.set(Vec(f.n_vars), 0);
    try {
        RigidCertificate cert = is_rigid_mmlp(centered);
        r.dimension = cert.dimension;
        r.verdict = cert.rigid ? StepVerdict{true, ""} : StepVerdict{false, "not-rigid"};
    } catch (const DomainError& e) {
        r.verdict = {false, e.code};
    }
    return r;
}

Step5Result step5_screen(const IntMatrix& w, const Vec& d) {
    Step5Result r;
    try {
        ToricModel m = make_model(w, anticanonical(w));
        r.report = singular_strata_report(m, d);
        r.verdict = r.report.all_isolated ? StepVerdict{true, ""}
                                          : StepVerdict{false, "non-isolated-singularity"};
    } catch (const DomainError& e) {
        r.verdict = {false, e.code};
    }
    return r;
}

namespace {

Json verdict_to_json(const StepVerdict& v) {
    Json j;
    j["pass"] = v.pass;
    j["reason"] = v.reason;
    return j;
}

Json prefix_to_json(const EhrhartPrefix& e) {
    Json j = Json::array();
    for (const Int& c : e.coefficients)
        j.push_back(c.fits_slong_p() ? Json(c.get_si()) : Json(c.get_str()));
    return j;
}

Json singularity_to_json(const SingularityReport& r) {
    Json j;
    j["all_isolated"] = r.all_isolated;
    j["total_points"] = r.total_points;
    Json strata = Json::array();
    for (const StratumReport& s : r.strata) {
        Json e;
        e["rays"] = s.rays;
        e["dim"] = s.dim;
        e["index"] = s.quotient.index.get_str();
        e["cyclic"] = s.quotient.cyclic;
        e["weights"] = vec_to_json(s.quotient.weights);
        e["points"] = s.point_count;
        e["isolated"] = s.isolated;
        e["note"] = s.note;
        strata.push_back(std::move(e));
    }
    j["strata"] = std::move(strata);
    return j;
}

}  // namespace

Json process_sample(const SampleConfig& cfg, const HilbertLookup* lookup, std::uint64_t index,
                    const ExtraScreen& extra) {
    auto [w, d] = sample(cfg, index);
    Json rec;
    rec["v"] = 1;
    rec["index"] = index;
    rec["w"] = matrix_to_json(w);
    rec["d"] = vec_to_json(d);
    Json verdicts = Json::object();
    bool survivor = false;

    StepVerdict v2 = step2_filter(w, d);
    verdicts["step2"] = verdict_to_json(v2);
    if (v2.pass) {
        Step3Result r3 = step3_filter(w, d, cfg, lookup, extra);
        Json j3 = verdict_to_json(r3.verdict);
        j3["period_depth"] = cfg.period_depth;
        j3["hilbert"] = r3.hilbert_status.empty() ? "unreached" : r3.hilbert_status;
        j3["extra"] = extra ? "active" : "pass-through";
        verdicts["step3"] = std::move(j3);
        if (r3.mirror) rec["mirror"] = laurent_to_json(*r3.mirror);
        if (r3.period) {
            Json per = Json::array();
            for (const Rat& c : r3.period->coefficients) per.push_back(rat_to_string(c));
            rec["period"] = std::move(per);
        }
        if (r3.hilbert) rec["hilbert"] = prefix_to_json(*r3.hilbert);
        if (r3.genus) rec["genus"] = r3.genus->fits_slong_p() ? Json(r3.genus->get_si())
                                                              : Json(r3.genus->get_str());
        if (!r3.hilbert_ids.empty()) rec["hilbert_ids"] = r3.hilbert_ids;
        if (r3.verdict.pass) {
            Step4Result r4 = step4_filter(*r3.mirror);
            Json j4 = verdict_to_json(r4.verdict);
            j4["shift"] = rat_to_string(r4.shift);
            j4["dimension"] = r4.dimension;
            verdicts["step4"] = std::move(j4);
            if (r4.verdict.pass) {
                Step5Result r5 = step5_screen(w, d);
                verdicts["step5"] = verdict_to_json(r5.verdict);
                rec["singularity"] = singularity_to_json(r5.report);
                survivor = r5.verdict.pass;
            }
        }
    }
    rec["verdicts"] = std::move(verdicts);
    rec["survivor"] = survivor;
    return rec;
}

void run(const SampleConfig& cfg, const HilbertLookup* lookup, std::ostream& out, int jobs,
         const ExtraScreen& extra) {
    if (jobs < 1) jobs = 1;
    long count = cfg.count;
    if (jobs == 1 || count < 2) {
        for (long i = 0; i < count; ++i)
            out << process_sample(cfg, lookup, i, extra).dump() << '\n';
        out.flush();
        return;
    }
    std::atomic<long> next_index{0};
    std::mutex mu;
    std::map<long, std::string> pending;
    long next_write = 0;
    auto worker = [&] {
        for (;;) {
            long i = next_index.fetch_add(1);
            if (i >= count) return;
            std::string line = process_sample(cfg, lookup, i, extra).dump();
            std::lock_guard<std::mutex> lock(mu);
            pending.emplace(i, std::move(line));
            while (true) {
                auto it = pending.find(next_write);
                if (it == pending.end()) break;
                out << it->second << '\n';
                pending.erase(it);
                ++next_write;
            }
        }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    out.flush();
}

std::vector<std::vector<std::size_t>> classify(const RecordSet& rs, int depth) {
    std::vector<std::vector<std::size_t>> classes;
    std::map<std::vector<std::string>, std::size_t> where;
    for (std::size_t i = 0; i < rs.records.size(); ++i) {
        std::vector<std::string> fp = period_fingerprint(rs.records[i], depth);
        if (fp.empty()) continue;
        auto [it, fresh] = where.try_emplace(fp, classes.size());
        if (fresh) classes.emplace_back();
        classes[it->second].push_back(i);
    }
    return classes;
}

std::string heatmap_csv(const RecordSet& rs) {
    auto scalar = [](const Json& j) {
        return j.is_string() ? j.get<std::string>() : j.dump();
    };
    std::map<std::pair<std::string, std::string>, long> counts;
    for (const Json& rec : rs.records) {
        if (!rec.contains("genus") || !rec.contains("hilbert")) continue;
        std::string fp;
        for (const Json& c : rec.at("hilbert")) {
            if (!fp.empty()) fp += ':';
            fp += scalar(c);
        }
        ++counts[{scalar(rec.at("genus")), fp}];
    }
    std::string csv = "genus,fingerprint,count\n";
    for (const auto& [key, n] : counts)
        csv += key.first + "," + key.second + "," + std::to_string(n) + "\n";
    return csv;
}

}  // namespace ff
