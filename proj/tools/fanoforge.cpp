#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include "fanoforge/pipeline.hpp"

using namespace ff;

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("IoFailure", "cannot open: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw DomainError("SchemaViolation", path + ": malformed JSON");
    return j;
}

Vec parse_int_list(const std::string& s) {
    Vec out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(Int(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(Int(cur));
    if (out.empty()) throw DomainError("SchemaViolation", "empty integer list: " + s);
    return out;
}

// All tower mirrors for a weight matrix and hypersurface class: every column
// subset with class sum d, every tower over it, deduplicated.
std::vector<Laurent> tower_mirrors(const IntMatrix& w, const Vec& d, long bound) {
    std::vector<Laurent> out;
    std::set<std::map<Vec, Rat>> seen;
    for (int mask = 1; mask < (1 << w.cols); ++mask) {
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
            towers = enumerate_towers(w, part, bound);
        } catch (const DomainError&) {
            continue;
        }
        for (const TowerSpec& t : towers) {
            try {
                TowerLaurent tl = laurent_from_tower(w, part, t, {s1[0]});
                if (seen.insert(tl.f.terms).second) out.push_back(tl.f);
            } catch (const DomainError&) {
            }
        }
    }
    return out;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"exact toolkit for lattice polytopes, Laurent polynomial mirrors "
                 "and toric hypersurface search"};
    app.require_subcommand(1);

    std::string input, mutation_path, polytope_path, scaffolding_path, model_path;
    std::string weights_path, bundle_str, out_path, in_path, hilbert_path;
    int terms = 10, depth = 10, jobs = 0;
    long bound = 6, samples = 0;
    std::uint64_t seed = 0;
    bool orbits = false;

    CLI::App* period = app.add_subcommand("period", "constant-term sequence of powers");
    period->add_option("--input", input, "Laurent polynomial JSON")->required();
    period->add_option("--terms", terms, "last index to print")->required();

    CLI::App* mutate_cmd = app.add_subcommand("mutate", "apply a mutation");
    mutate_cmd->add_option("--input", input, "Laurent polynomial JSON")->required();
    mutate_cmd->add_option("--mutation", mutation_path, "mutation JSON")->required();

    CLI::App* mmlp_cmd = app.add_subcommand("mmlp", "rigid maximally-mutable polynomials");
    mmlp_cmd->add_option("--polytope", polytope_path, "polytope JSON")->required();
    mmlp_cmd->add_flag("--orbits", orbits, "group the results into symmetry orbits");

    CLI::App* invert = app.add_subcommand("invert", "rebuild the ambient model");
    invert->add_option("--scaffolding", scaffolding_path, "scaffolding JSON")->required();

    CLI::App* towers_cmd = app.add_subcommand("towers", "enumerate bundle towers");
    towers_cmd->add_option("--model", model_path, "model JSON with weights and partition")
        ->required();
    towers_cmd->add_option("--bound", bound, "entry bound");

    CLI::App* ghv = app.add_subcommand("ghv", "tower mirrors of a hypersurface");
    ghv->add_option("--weights", weights_path, "weight matrix JSON")->required();
    ghv->add_option("--bundle", bundle_str, "hypersurface class, comma separated")->required();
    ghv->add_option("--bound", bound, "entry bound");

    CLI::App* pipe = app.add_subcommand("pipeline", "randomized hypersurface search");
    pipe->add_option("--samples", samples, "number of samples")->required();
    pipe->add_option("--seed", seed, "generator seed")->required();
    pipe->add_option("--out", out_path, "output JSONL path")->required();
    pipe->add_option("--hilbert-db", hilbert_path, "Hilbert prefix lookup JSONL");
    pipe->add_option("--jobs", jobs, "worker count (FANOFORGE_JOBS as fallback)");

    CLI::App* classify_cmd = app.add_subcommand("classify", "bucket records by period");
    classify_cmd->add_option("--in", in_path, "records JSONL")->required();
    classify_cmd->add_option("--depth", depth, "period truncation depth");

    CLI::App* heat = app.add_subcommand("heatmap", "genus/fingerprint counts");
    heat->add_option("--in", in_path, "records JSONL")->required();
    heat->add_option("--out", out_path, "CSV path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (period->parsed()) {
        Laurent f = laurent_from_json(load_json(input));
        PeriodSequence p = classical_period(f, terms);
        for (const Rat& c : p.coefficients) std::cout << rat_to_string(c) << "\n";
    } else if (mutate_cmd->parsed()) {
        Laurent f = laurent_from_json(load_json(input));
        MutationData m = mutation_from_json(load_json(mutation_path));
        if (!is_mutable(f, m))
            throw DomainError("NotMutable", "the factor does not divide the slices");
        std::cout << laurent_to_json(mutate(f, m)).dump() << "\n";
    } else if (mmlp_cmd->parsed()) {
        LatticePolytope p = polytope_from_json(load_json(polytope_path));
        std::vector<Laurent> fs = find_rigid_mmlps(p);
        if (orbits) {
            for (const auto& orbit : orbit_classes(fs, automorphisms(p))) {
                Json line = Json::array();
                for (const Laurent& f : orbit) line.push_back(laurent_to_json(f));
                std::cout << line.dump() << "\n";
            }
        } else {
            for (const Laurent& f : fs) std::cout << laurent_to_json(f).dump() << "\n";
        }
    } else if (invert->parsed()) {
        Scaffolding s = scaffolding_from_json(load_json(scaffolding_path));
        std::cout << model_to_json(reconstruct(s)).dump() << "\n";
    } else if (towers_cmd->parsed()) {
        CIModel m = model_from_json(load_json(model_path));
        if (m.partition.empty())
            throw DomainError("SchemaViolation", "model needs a partition");
        for (const TowerSpec& t : enumerate_towers(m.weights, m.partition, bound))
            std::cout << (t.zeta.rows > 0 ? matrix_to_json(t.zeta) : Json::array()).dump()
                      << "\n";
    } else if (ghv->parsed()) {
        IntMatrix w = matrix_from_json(load_json(weights_path));
        Vec d = parse_int_list(bundle_str);
        if (static_cast<int>(d.size()) != w.rows)
            throw DomainError("SchemaViolation", "bundle length must match weight rows");
        std::vector<Laurent> fs = tower_mirrors(w, d, bound);
        if (fs.empty()) throw DomainError("NoMirror", "no tower mirror for this class");
        for (const Laurent& f : fs) std::cout << laurent_to_json(f).dump() << "\n";
    } else if (pipe->parsed()) {
        SampleConfig cfg;
        cfg.seed = seed;
        cfg.count = samples;
        if (jobs <= 0) {
            const char* env = std::getenv("FANOFORGE_JOBS");
            jobs = env ? std::atoi(env) : 1;
            if (jobs <= 0) jobs = 1;
        }
        HilbertLookup lookup;
        bool have_lookup = !hilbert_path.empty();
        if (have_lookup) lookup = load_hilbert(hilbert_path);
        std::ofstream out(out_path);
        if (!out) throw DomainError("IoFailure", "cannot open for write: " + out_path);
        run(cfg, have_lookup ? &lookup : nullptr, out, jobs);
        if (!out) throw DomainError("IoFailure", "write failed: " + out_path);
    } else if (classify_cmd->parsed()) {
        RecordSet rs = load_records(in_path);
        for (const auto& cls : classify(rs, depth)) {
            Json line = Json::array();
            for (std::size_t i : cls) line.push_back(i);
            std::cout << line.dump() << "\n";
        }
    } else if (heat->parsed()) {
        std::string csv = heatmap_csv(load_records(in_path));
        if (out_path.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(out_path);
            if (!out) throw DomainError("IoFailure", "cannot open for write: " + out_path);
            out << csv;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const DomainError& e) {
        Json diag;
        diag["error"] = e.code;
        diag["message"] = e.what();
        std::cerr << diag.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json diag;
        diag["error"] = "Internal";
        diag["message"] = e.what();
        std::cerr << diag.dump() << "\n";
        return 2;
    }
}
