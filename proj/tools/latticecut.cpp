#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include "latticecut/coa.hpp"
#include "latticecut/instance_io.hpp"

using namespace latticecut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitMismatch = 3;

struct RunConfig {
    std::string instance_path;
    std::string result_path;  // verify only
    std::string trace_path;
    std::string oracle_name = "enumeration";
    std::uint64_t seed = 0;
    bool seed_given = false;
    long ell = 0;  // 0: derived default
    unsigned jobs = 1;
    bool verify = false;
    bool fractional = false;
    int repeat = 3;  // bench
};

std::uint64_t effective_seed(const RunConfig& cfg) {
    if (cfg.seed_given) return cfg.seed;
    if (const char* env = std::getenv("LATTICECUT_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

const char* empty_reason_name(EmptyReason r) {
    switch (r) {
        case EmptyReason::SliceMissed: return "lattice-misses-hull";
        case EmptyReason::FlatNoInteger: return "flat-direction";
        case EmptyReason::OneDim: return "one-dimensional-miss";
        case EmptyReason::OracleEmpty: return "oracle-empty";
        case EmptyReason::None: break;
    }
    return "none";
}

json counters_json(const CoaStats& s, std::size_t classes, long ell) {
    json c;
    c["outer_cuts"] = s.outer_cuts;
    c["inner_iterations"] = s.inner_iterations;
    c["oracle_calls"] = s.oracle_calls;
    c["averaging_rounds"] = s.averaging_rounds;
    c["centroid_rounds"] = s.centroid_rounds;
    c["max_depth"] = s.max_depth;
    c["cap_violations"] = s.cap_violations;
    c["budget_alarms"] = s.budget_alarms;
    c["residue_classes"] = classes;
    c["ell"] = ell;
    return c;
}

json counters_json(const CellCounters& c) {
    json out;
    out["cells"] = c.cells_total;
    out["cells_examined"] = c.cells_examined;
    out["cells_skipped"] = c.cells_skipped;
    out["oracle_calls"] = c.oracle_calls;
    out["gamma_probes"] = c.gamma_probes;
    return out;
}

json point_json(const std::optional<QVec>& x) {
    if (!x) return nullptr;
    return qvec_to_json(*x);
}

AffineLattice instance_lattice(const Instance& inst) {
    if (inst.lattice) return *inst.lattice;
    return AffineLattice::standard(inst.polytope->dim());
}

// brute-force referee used by --verify and the verify subcommand; nullopt
// when the instance exceeds the enumeration guard
std::optional<bool> referee_feasible(const Instance& inst, std::optional<QVec>* witness) {
    constexpr double kGuard = 1e7;
    switch (inst.type) {
        case Instance::Type::LatticeIp: {
            auto box = inst.polytope->exact_box();
            double candidates = 1;
            for (std::size_t i = 0; i < inst.polytope->dim(); ++i)
                candidates *= std::max(0.0, to_double(box.second[i]) - to_double(box.first[i]) + 1.0);
            if (candidates > kGuard) return std::nullopt;
            auto pts = collect_points(instance_lattice(inst), *inst.polytope);
            if (witness && !pts.empty()) *witness = pts.front();
            return !pts.empty();
        }
        case Instance::Type::SubsetSum: {
            double table = static_cast<double>(std::max(0L, inst.target));
            if (table > kGuard) return std::nullopt;
            auto dp = dp_subset_sum(inst.z, inst.target, inst.u);
            if (witness && dp) *witness = qvec_of_ints(*dp);
            return dp.has_value();
        }
        case Instance::Type::Standard: {
            double candidates = 1;
            for (long ui : inst.u) candidates *= static_cast<double>(ui + 1);
            if (candidates > kGuard) return std::nullopt;
            // odometer scan over the box
            std::vector<long> x(inst.u.size(), 0);
            for (;;) {
                QVec q = qvec_of_ints(x);
                if (inst.a * q == inst.b) {
                    if (witness) *witness = q;
                    return true;
                }
                std::size_t d = x.size();
                while (d > 0) {
                    --d;
                    if (++x[d] <= inst.u[d]) break;
                    x[d] = 0;
                    if (d == 0) return false;
                }
                if (inst.u.empty()) return false;
            }
        }
        case Instance::Type::Knapsack:
        case Instance::Type::Inequality:
            return std::nullopt;  // verified through the optimum instead
    }
    return std::nullopt;
}

// optimum referee for the objective-carrying types; outer nullopt = beyond
// the guard, inner nullopt = infeasible
std::optional<std::optional<Rat>> referee_optimum(const Instance& inst) {
    constexpr double kGuard = 1e7;
    double candidates = 1;
    for (long ui : inst.u) candidates *= static_cast<double>(ui + 1);
    if (candidates > kGuard) return std::nullopt;
    const QVec obj = inst.type == Instance::Type::Knapsack ? qvec_of_ints(inst.values) : inst.objective;
    const QMat a = inst.type == Instance::Type::Knapsack ? QMat() : inst.a;
    std::optional<Rat> best;
    std::vector<long> x(inst.u.size(), 0);
    for (;;) {
        QVec q = qvec_of_ints(x);
        bool ok = true;
        if (inst.type == Instance::Type::Knapsack) {
            Rat w(0);
            for (std::size_t i = 0; i < inst.z.size(); ++i) w += Rat(inst.z[i]) * q[i];
            ok = w <= inst.capacity;
        } else {
            for (std::size_t i = 0; i < a.rows() && ok; ++i) ok = dot(a.row(i), q) <= inst.b[i];
        }
        if (ok) {
            Rat v = dot(obj, q);
            if (!best || v > *best) best = v;
        }
        std::size_t d = x.size();
        bool done = x.empty();
        while (d > 0) {
            --d;
            if (++x[d] <= inst.u[d]) break;
            x[d] = 0;
            if (d == 0) done = true;
        }
        if (done) break;
    }
    return std::optional<std::optional<Rat>>(std::move(best));
}

json run_solver(const Instance& inst, const RunConfig& cfg, const ApxIpOracle& oracle,
                std::ostream* trace) {
    const std::uint64_t seed = effective_seed(cfg);
    json out;
    out["oracle"] = cfg.oracle_name;
    out["seed"] = seed;
    switch (inst.type) {
        case Instance::Type::Standard: {
            StandardFormIP sf{inst.a, inst.b, inst.u};
            auto res = solve_standard_form(sf, oracle, seed);
            out["status"] = res.x ? "feasible" : "infeasible";
            out["x"] = point_json(res.x);
            out["cells"] = res.counters.cells_total;
            out["oracle_calls"] = res.counters.oracle_calls;
            out["counters"] = counters_json(res.counters);
            break;
        }
        case Instance::Type::SubsetSum: {
            auto res = subset_sum(inst.z, inst.target, inst.u, oracle, seed);
            out["status"] = res.x ? "feasible" : "infeasible";
            out["x"] = point_json(res.x);
            out["cells"] = res.counters.cells_total;
            out["oracle_calls"] = res.counters.oracle_calls;
            out["counters"] = counters_json(res.counters);
            break;
        }
        case Instance::Type::Inequality: {
            auto res = solve_inequality_form(inst.a, inst.b, inst.objective, inst.u, oracle, seed);
            out["status"] = res.x ? "optimal" : "infeasible";
            out["x"] = point_json(res.x);
            if (res.x) out["value"] = rat_to_json(res.value);
            out["cells"] = res.counters.cells_total;
            out["oracle_calls"] = res.counters.oracle_calls;
            out["counters"] = counters_json(res.counters);
            break;
        }
        case Instance::Type::Knapsack: {
            auto res = knapsack(inst.values, inst.z, inst.capacity, inst.u, oracle, seed);
            out["status"] = res.x ? "optimal" : "infeasible";
            out["x"] = point_json(res.x);
            if (res.x) out["value"] = rat_to_json(res.value);
            out["cells"] = res.counters.cells_total;
            out["oracle_calls"] = res.counters.oracle_calls;
            out["counters"] = counters_json(res.counters);
            break;
        }
        case Instance::Type::LatticeIp: {
            AffineLattice lat = instance_lattice(inst);
            CoaOptions opt;
            opt.seed = seed;
            opt.jobs = cfg.jobs;
            opt.trace = trace;
            if (cfg.fractional) {
                long ell = cfg.ell > 0 ? cfg.ell : 5 * static_cast<long>(lat.rank() + 1);
                auto res = cut_or_average(*inst.polytope, lat, ell, oracle, opt);
                out["status"] = res.feasible() ? "feasible" : "infeasible";
                out["x"] = point_json(res.point);
                if (!res.feasible()) out["certificate"] = empty_reason_name(res.stats.empty_reason);
                out["counters"] = counters_json(res.stats, 0, ell);
            } else {
                auto res = solve_exact_ip(*inst.polytope, lat, oracle, opt);
                out["status"] = res.point ? "feasible" : "infeasible";
                out["x"] = point_json(res.point);
                if (!res.point) out["certificate"] = "all-residue-classes-empty";
                out["counters"] = counters_json(res.stats, res.residue_classes_tried, res.ell);
            }
            break;
        }
    }
    return out;
}

// exact validity of a claimed solution against the instance constraints
bool point_valid(const Instance& inst, const QVec& x) {
    switch (inst.type) {
        case Instance::Type::LatticeIp:
            return inst.polytope->contains(x) && instance_lattice(inst).contains(x);
        case Instance::Type::Standard: {
            if (!all_integer(x) || inst.a * x != inst.b) return false;
            for (std::size_t i = 0; i < inst.u.size(); ++i)
                if (x[i] < 0 || x[i] > inst.u[i]) return false;
            return true;
        }
        case Instance::Type::SubsetSum: {
            if (!all_integer(x)) return false;
            Rat s(0);
            for (std::size_t i = 0; i < inst.z.size(); ++i) {
                if (x[i] < 0 || x[i] > inst.u[i]) return false;
                s += Rat(inst.z[i]) * x[i];
            }
            return s == inst.target;
        }
        case Instance::Type::Inequality: {
            if (!all_integer(x)) return false;
            for (std::size_t i = 0; i < inst.a.rows(); ++i)
                if (dot(inst.a.row(i), x) > inst.b[i]) return false;
            for (std::size_t i = 0; i < inst.u.size(); ++i)
                if (x[i] < 0 || x[i] > inst.u[i]) return false;
            return true;
        }
        case Instance::Type::Knapsack: {
            if (!all_integer(x)) return false;
            Rat w(0);
            for (std::size_t i = 0; i < inst.z.size(); ++i) {
                if (x[i] < 0 || x[i] > inst.u[i]) return false;
                w += Rat(inst.z[i]) * x[i];
            }
            return w <= inst.capacity;
        }
    }
    return false;
}

// verdict for a result object against brute force; second = detail
std::pair<std::string, std::string> verify_result(const Instance& inst, const json& result) {
    const std::string status = result.value("status", "");
    const bool claims_point = result.contains("x") && !result.at("x").is_null();
    std::optional<QVec> x;
    if (claims_point) x = qvec_from_json(result.at("x"));

    if (claims_point && !point_valid(inst, *x)) return {"mismatch", "claimed point fails the constraints"};

    if (inst.type == Instance::Type::Inequality || inst.type == Instance::Type::Knapsack) {
        auto best = referee_optimum(inst);
        if (!best) return {"refused: guard", "instance beyond the enumeration guard"};
        if (status == "infeasible")
            return best->has_value()
                       ? std::pair<std::string, std::string>{"mismatch", "claimed infeasible, referee found a point"}
                       : std::pair<std::string, std::string>{"match", ""};
        if (!claims_point) return {"mismatch", "optimal status without a point"};
        Rat claimed = rat_from_json(result.at("value"));
        if (!best->has_value() || claimed != **best)
            return {"mismatch", "claimed optimum " + rat_to_string(claimed) + " disagrees with the referee"};
        return {"match", ""};
    }

    auto feas = referee_feasible(inst, nullptr);
    if (!feas) return {"refused: guard", "instance beyond the enumeration guard"};
    const bool claimed_feasible = status == "feasible" || status == "optimal";
    if (claimed_feasible != *feas) return {"mismatch", "feasibility disagrees with brute force"};
    if (claimed_feasible && !claims_point) return {"mismatch", "feasible status without a point"};
    return {"match", ""};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice point solver: cut-or-average, residue enumeration, reflection cells"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("instance", cfg.instance_path, "instance JSON file")->required();
        cmd->add_option("--seed", cfg.seed, "RNG seed (fallback: LATTICECUT_SEED)")
            ->each([&](const std::string&) { cfg.seed_given = true; });
        cmd->add_option("--oracle", cfg.oracle_name, "approximate-IP oracle name");
        cmd->add_option("--ell", cfg.ell, "refinement parameter l (>= 5(r+1))");
        cmd->add_option("--jobs", cfg.jobs, "residue classes evaluated concurrently");
    };

    auto* solve = app.add_subcommand("solve", "solve an instance and print result JSON");
    add_common(solve);
    solve->add_flag("--verify", cfg.verify, "cross-check against brute force (guarded)");
    solve->add_flag("--fractional", cfg.fractional,
                    "lattice_ip only: run cut-or-average for a point of K in (1/l)L");
    solve->add_option("--trace", cfg.trace_path, "write line-delimited JSON trace");

    auto* verify = app.add_subcommand("verify", "re-check a run against brute force");
    add_common(verify);
    verify->add_option("--result", cfg.result_path, "result JSON to validate (default: re-solve)");

    auto* bench = app.add_subcommand("bench", "repeat a solve and report wall time");
    add_common(bench);
    bench->add_option("--repeat", cfg.repeat, "number of repetitions");

    std::string dump_path;
    auto* tdump = app.add_subcommand("trace-dump", "summarize a trace file");
    tdump->add_option("trace", dump_path, "trace file from solve --trace")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (tdump->parsed()) {
            std::ifstream in(dump_path);
            if (!in) {
                std::cerr << "cannot open trace file\n";
                return kExitInput;
            }
            std::map<std::string, std::size_t> by_event;
            std::size_t lines = 0;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                json j = json::parse(line);
                ++lines;
                by_event[j.value("event", "?")] += 1;
            }
            json out;
            out["records"] = lines;
            out["by_event"] = by_event;
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }

        Instance inst = load_instance(cfg.instance_path);
        if (inst.type == Instance::Type::LatticeIp && cfg.ell > 0) {
            long min_ell = 5 * static_cast<long>(instance_lattice(inst).rank() + 1);
            if (cfg.ell < min_ell) {
                std::cerr << "--ell must be at least " << min_ell << " for this instance\n";
                return kExitInput;
            }
        }
        ApxIpOracle oracle;
        try {
            oracle = OracleRegistry::instance().get(cfg.oracle_name);
        } catch (const std::out_of_range&) {
            std::cerr << "unknown oracle '" << cfg.oracle_name << "'\n";
            return kExitInput;
        }

        if (solve->parsed()) {
            std::ofstream trace_file;
            std::ostream* trace = nullptr;
            if (!cfg.trace_path.empty()) {
                trace_file.open(cfg.trace_path);
                if (!trace_file) {
                    std::cerr << "cannot open trace file for writing\n";
                    return kExitInput;
                }
                trace = &trace_file;
            }
            json out = run_solver(inst, cfg, oracle, trace);
            if (cfg.verify) {
                auto [verdict, detail] = verify_result(inst, out);
                out["verify"] = verdict;
                if (!detail.empty()) out["verify_detail"] = detail;
                std::cout << out.dump(2) << "\n";
                if (verdict == "mismatch") return kExitMismatch;
                return kExitOk;  // guard refusals still report the solve itself
            }
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }

        if (verify->parsed()) {
            json result;
            if (!cfg.result_path.empty()) {
                std::ifstream in(cfg.result_path);
                if (!in) {
                    std::cerr << "cannot open result file\n";
                    return kExitInput;
                }
                in >> result;
            } else {
                result = run_solver(inst, cfg, oracle, nullptr);
            }
            auto [verdict, detail] = verify_result(inst, result);
            json out;
            out["verdict"] = verdict;
            if (!detail.empty()) out["detail"] = detail;
            std::cout << out.dump(2) << "\n";
            if (verdict == "mismatch") return kExitMismatch;
            if (verdict.rfind("refused", 0) == 0) return kExitInput;
            return kExitOk;
        }

        if (bench->parsed()) {
            json out;
            out["repeat"] = cfg.repeat;
            std::vector<double> ms;
            for (int r = 0; r < cfg.repeat; ++r) {
                auto t0 = std::chrono::steady_clock::now();
                run_solver(inst, cfg, oracle, nullptr);
                auto t1 = std::chrono::steady_clock::now();
                ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            }
            double total = 0;
            for (double v : ms) total += v;
            out["ms_per_run"] = total / static_cast<double>(cfg.repeat);
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
