#ifndef BMOO_DRIVER_HPP
#define BMOO_DRIVER_HPP

#include <Eigen/Core>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bmoo/bounds.hpp"
#include "bmoo/criterion.hpp"
#include "bmoo/gp.hpp"
#include "bmoo/hypervolume.hpp"
#include "bmoo/problems.hpp"
#include "bmoo/rng.hpp"
#include "bmoo/smc_x.hpp"
#include "bmoo/smc_y.hpp"

namespace bmoo {

struct RunConfig {
    std::string problem;
    int budget = 0;
    int n_init = 0;  // 0 selects 3 * dim
    int m_x = 1000;
    int m_y = 1000;
    double nu = 0.2;    // splitting survival fraction (output domain)
    double nu_x = 0.2;  // ESS fraction (search domain)
    double lambda_obj = 5.0;
    double lambda_cons = 5.0;
    std::uint64_t seed = 0;
    double feas_tol = 1e-5;  // reporting tolerance
    bool factorial_density = false;
    bool exact_single_objective = true;
    int mc_draws = 100;
    int mh_sweeps_y = 10;
    int mh_sweeps_x = 5;
    bool dump_particles = false;
};

struct IterationRecord {
    Eigen::VectorXd x, f, c;
    bool feasible = false;       // at the reporting tolerance
    double ei_value = std::numeric_limits<double>::quiet_NaN();
    std::optional<BoxBounds> bounds;  // snapshot when the point was selected
    double elapsed_s = 0.0;
};

struct ParticleDump {
    int evaluation_index = 0;  // 1-based count after which the dump was taken
    char kind = 'x';           // 'x' candidates, 'y' output-space particles
    std::vector<Eigen::VectorXd> coords;
};

struct RunRecord {
    int schema_version = 1;
    RunConfig config;
    int dim = 0, num_obj = 0, num_cons = 0;
    std::vector<IterationRecord> entries;
    int first_feasible = -1;  // 1-based evaluation count, -1 when never reached
    int first_target = -1;
    std::vector<double> hv_fractions;  // per evaluation, multi-objective runs
    std::vector<ParticleDump> particle_dumps;
};

/// Latin hypercube design with maximin selection over random candidates:
/// every 1-D projection hits each stratum exactly once, and the candidate
/// with the largest minimum pairwise distance wins.
inline std::vector<Eigen::VectorXd> initial_design(int dim, int n_init,
                                                   const Eigen::VectorXd& x_low,
                                                   const Eigen::VectorXd& x_upp, Rng& rng,
                                                   int candidates = 1000) {
    if (n_init < 2) throw std::invalid_argument("initial_design: need at least 2 points");
    std::vector<Eigen::VectorXd> best;
    double best_dist = -1.0;
    std::vector<int> perm(n_init);
    for (int trial = 0; trial < candidates; ++trial) {
        std::vector<Eigen::VectorXd> design(n_init, Eigen::VectorXd(dim));
        for (int l = 0; l < dim; ++l) {
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = n_init - 1; i > 0; --i) {
                std::swap(perm[i], perm[static_cast<int>(rng.index(i + 1))]);
            }
            for (int i = 0; i < n_init; ++i) {
                design[i][l] = (perm[i] + rng.uniform()) / n_init;
            }
        }
        double min_dist = std::numeric_limits<double>::infinity();
        for (int i = 1; i < n_init && min_dist > best_dist; ++i) {
            for (int j = 0; j < i; ++j) {
                min_dist = std::min(min_dist, (design[i] - design[j]).squaredNorm());
            }
        }
        if (min_dist > best_dist) {
            best_dist = min_dist;
            best = std::move(design);
        }
    }
    for (auto& x : best) x = x_low + x.cwiseProduct(x_upp - x_low);
    return best;
}

/// Candidate closer than 1e-9 of the domain width to an already evaluated
/// point, which would make the training covariance singular.
inline bool is_near_duplicate(const Eigen::VectorXd& x, const std::vector<Evaluation>& evals,
                              const Eigen::VectorXd& x_low, const Eigen::VectorXd& x_upp) {
    for (const auto& ev : evals) {
        bool close = true;
        for (int i = 0; i < x.size(); ++i) {
            if (std::abs(x[i] - ev.x[i]) >= 1e-9 * (x_upp[i] - x_low[i])) {
                close = false;
                break;
            }
        }
        if (close) return true;
    }
    return false;
}

/// Discrete argmax of the criterion over the candidate particles.  Ties
/// break toward the smallest index; near-duplicates of existing design
/// points are skipped, and when every candidate has zero value the particle
/// with the largest total posterior variance is used instead.
inline int select_next(const std::vector<Eigen::VectorXd>& candidates,
                       const std::vector<double>& ei_values,
                       const std::vector<PosteriorBundle>& bundles,
                       const std::vector<Evaluation>& evals, const Eigen::VectorXd& x_low,
                       const Eigen::VectorXd& x_upp) {
    const auto duplicate = [&](const Eigen::VectorXd& x) {
        return is_near_duplicate(x, evals, x_low, x_upp);
    };

    int best = -1;
    double best_value = 0.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (ei_values[k] > best_value && !duplicate(candidates[k])) {
            best = static_cast<int>(k);
            best_value = ei_values[k];
        }
    }
    if (best >= 0) return best;

    // documented fallback: largest summed posterior variance
    double best_var = -1.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (duplicate(candidates[k])) continue;
        double v = 0.0;
        for (const auto& post : bundles[k].obj) v += post.var;
        for (const auto& post : bundles[k].cons) v += post.var;
        if (v > best_var) {
            best_var = v;
            best = static_cast<int>(k);
        }
    }
    if (best < 0) best = 0;  // every candidate duplicates an evaluation
    return best;
}

inline ExtendedFront extended_front_of(const std::vector<Evaluation>& evals) {
    ExtendedFront front;
    for (const auto& ev : evals) front.insert(extend_point(ev.f, ev.c));
    return front;
}

/// State snapshot plus the particle population required by the criterion at
/// this phase: constraint-space particles before feasibility, objective-space
/// particles afterwards.
inline CriterionState make_criterion_state(const std::vector<Evaluation>& evals,
                                           const BoxBounds& bounds, int m_y, std::uint64_t seed,
                                           double nu = 0.2, int mh_sweeps = 10,
                                           bool build_particles = true) {
    CriterionState state;
    state.front = extended_front_of(evals);
    state.bounds = bounds;
    for (const auto& ev : evals) {
        if (is_feasible(ev.c, 0.0)) {
            state.feasible_found = true;
            if (ev.f.size() == 1) {
                if (!state.best_feasible_value || ev.f[0] < *state.best_feasible_value) {
                    state.best_feasible_value = ev.f[0];
                }
            }
        }
    }
    if (!build_particles) return state;

    const int q = bounds.num_cons();
    std::shared_ptr<ParticleSetY> particles;
    ExtendedFront target;
    if (!state.feasible_found && q >= 1) {
        particles = std::make_shared<ParticleSetY>(
            ParticleSetY::init_uniform(YBox::constraint(bounds), m_y, seed));
        target = violation_front(state.front);
    } else if (state.feasible_found) {
        particles = std::make_shared<ParticleSetY>(
            ParticleSetY::init_uniform(YBox::objective(bounds), m_y, seed));
        target = feasible_objective_front(state.front);
    }
    if (particles) {
        if (particles->advance_front(target, nu, mh_sweeps) != ParticleSetY::Advance::ok) {
            throw std::runtime_error("make_criterion_state: particle transition failed");
        }
        state.y_particles = particles;
    }
    return state;
}

/// Full optimization run: initial design, then the myopic loop of refit,
/// bound update, particle transitions, criterion maximization over the
/// candidates and evaluation of the winner.
inline RunRecord run_bmoo(const RunConfig& config) {
    const ProblemSpec problem = find_problem(config.problem);
    const int d = problem.dim;
    const int p = problem.num_obj;
    const int q = problem.num_cons;
    const int n_init = config.n_init > 0 ? config.n_init : 3 * d;
    if (config.budget <= n_init || n_init < 2) {
        throw std::invalid_argument("run_bmoo: budget must exceed the initial design size");
    }
    if (config.m_x < 10 || config.m_y < 10) {
        throw std::invalid_argument("run_bmoo: particle counts below 10");
    }

    RunRecord record;
    record.config = config;
    record.dim = d;
    record.num_obj = p;
    record.num_cons = q;

    Rng init_rng = Rng::stream(config.seed, "initial-design");
    std::vector<Evaluation> evals;
    const auto t_run0 = std::chrono::steady_clock::now();
    for (const auto& x : initial_design(d, n_init, problem.x_low, problem.x_upp, init_rng)) {
        evals.push_back(evaluate(problem, x));
        IterationRecord rec;
        rec.x = evals.back().x;
        rec.f = evals.back().f;
        rec.c = evals.back().c;
        rec.feasible = is_feasible(rec.c, config.feas_tol);
        rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_run0)
                            .count();
        record.entries.push_back(std::move(rec));
    }

    ParticleSetX x_particles = ParticleSetX::init(
        problem.x_low, problem.x_upp, config.m_x, Rng::stream(config.seed, "x-seed").next_u64(),
        config.factorial_density ? DensityTag::factorial_modified : DensityTag::plain);

    std::vector<GpModel> obj_models(p), cons_models(q);
    std::vector<std::optional<GpHyperparameters>> warm(p + q);
    SmcXConfig x_config;
    x_config.mc_draws = config.mc_draws;
    x_config.nu = config.nu_x;
    x_config.mh_sweeps = config.mh_sweeps_x;

    CriterionState state_old;  // empty front before the first transition

    for (int n = n_init; n < config.budget; ++n) {
        const auto t0 = std::chrono::steady_clock::now();

        Eigen::MatrixXd train_x(n, d);
        for (int i = 0; i < n; ++i) train_x.row(i) = evals[i].x.transpose();
        GpConfig gp_config;
        gp_config.x_low = problem.x_low;
        gp_config.x_upp = problem.x_upp;
        gp_config.num_starts = n == n_init ? 5 : 2;
        for (int j = 0; j < p + q; ++j) {
            Eigen::VectorXd y(n);
            for (int i = 0; i < n; ++i) y[i] = j < p ? evals[i].f[j] : evals[i].c[j - p];
            gp_config.warm_start = warm[j];
            gp_config.seed = Rng::stream(config.seed, "gp-fit", static_cast<std::uint64_t>(n) *
                                                                    64 + j)
                                 .next_u64();
            GpModel model = fit_map(train_x, y, gp_config);
            warm[j] = model.hyper();
            (j < p ? obj_models[j] : cons_models[j - p]) = std::move(model);
        }

        const BoxBounds bounds =
            update_bounds(evals, as_predictors(obj_models), as_predictors(cons_models),
                          x_particles.particles(), config.lambda_obj, config.lambda_cons);

        const bool need_y_particles = [&] {
            CriterionState probe = make_criterion_state(evals, bounds, 0, 0, 0, 0, false);
            if (!probe.feasible_found) return q >= 1;
            return p > 1 || !config.exact_single_objective;
        }();
        CriterionState state =
            make_criterion_state(evals, bounds, config.m_y,
                                 Rng::stream(config.seed, "y-seed", n).next_u64(), config.nu,
                                 config.mh_sweeps_y, need_y_particles);

        const BundleProvider provider = [&](const Eigen::VectorXd& x) {
            PosteriorBundle bundle;
            bundle.obj.reserve(p);
            bundle.cons.reserve(q);
            for (int i = 0; i < p; ++i) bundle.obj.push_back(obj_models[i].predict(x));
            for (int j = 0; j < q; ++j) bundle.cons.push_back(cons_models[j].predict(x));
            return bundle;
        };

        x_particles.step(provider, state_old, state, x_config);

        std::vector<double> ei(x_particles.size());
        double max_ei = 0.0;
        for (int k = 0; k < x_particles.size(); ++k) {
            ei[k] = expected_improvement(x_particles.bundles()[k], state,
                                         config.exact_single_objective);
            max_ei = std::max(max_ei, ei[k]);
        }
        int pick = -1;
        if (max_ei <= 0.0 && p == 1 && state.feasible_found && config.exact_single_objective) {
            // criterion values too deep in the tail for double precision;
            // compare candidates in log space instead
            double best_log = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < x_particles.size(); ++k) {
                const double lv =
                    log_expected_improvement_exact(x_particles.bundles()[k], state);
                if (lv > best_log &&
                    !is_near_duplicate(x_particles.particles()[k], evals, problem.x_low,
                                       problem.x_upp)) {
                    best_log = lv;
                    pick = k;
                }
            }
        }
        if (pick < 0) {
            pick = select_next(x_particles.particles(), ei, x_particles.bundles(), evals,
                               problem.x_low, problem.x_upp);
        }

        evals.push_back(evaluate(problem, x_particles.particles()[pick]));
        IterationRecord rec;
        rec.x = evals.back().x;
        rec.f = evals.back().f;
        rec.c = evals.back().c;
        rec.feasible = is_feasible(rec.c, config.feas_tol);
        rec.ei_value = ei[pick];
        rec.bounds = bounds;
        rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
        record.entries.push_back(std::move(rec));

        if (config.dump_particles) {
            ParticleDump dx;
            dx.evaluation_index = static_cast<int>(evals.size());
            dx.kind = 'x';
            dx.coords = x_particles.particles();
            record.particle_dumps.push_back(std::move(dx));
            if (state.y_particles) {
                ParticleDump dy;
                dy.evaluation_index = static_cast<int>(evals.size());
                dy.kind = 'y';
                dy.coords = state.y_particles->particles();
                record.particle_dumps.push_back(std::move(dy));
            }
        }

        state_old = std::move(state);
    }

    // derived metrics
    for (std::size_t i = 0; i < record.entries.size(); ++i) {
        if (record.entries[i].feasible) {
            record.first_feasible = static_cast<int>(i) + 1;
            break;
        }
    }
    if (p == 1 && problem.target) {
        for (std::size_t i = 0; i < record.entries.size(); ++i) {
            if (record.entries[i].feasible && record.entries[i].f[0] <= *problem.target) {
                record.first_target = static_cast<int>(i) + 1;
                break;
            }
        }
    }
    if (p > 1 && problem.hv_ref_point && problem.hv_ref_volume) {
        HvReference ref{*problem.hv_ref_point, *problem.hv_ref_volume};
        std::vector<std::vector<Eigen::VectorXd>> fronts;
        ExtendedFront running;
        for (const auto& e : record.entries) {
            if (e.feasible) running.insert(extend_point(e.f, Eigen::VectorXd()));
            std::vector<Eigen::VectorXd> objs;
            objs.reserve(running.size());
            for (const auto& m : running.points()) objs.push_back(m.obj);
            fronts.push_back(std::move(objs));
        }
        record.hv_fractions = hv_fraction(fronts, ref);
    }
    return record;
}

// ---------------------------------------------------------------------------
// Benchmark harness
// ---------------------------------------------------------------------------

struct BenchTargetStat {
    int n_success = 0;
    double mean = std::numeric_limits<double>::quiet_NaN();
    double sd = std::numeric_limits<double>::quiet_NaN();
};

struct BenchRow {
    std::string problem;
    int repeats = 0;
    std::vector<std::pair<std::string, BenchTargetStat>> stats;  // label -> stat
};

inline BenchTargetStat summarize(const std::vector<int>& evals_to_hit) {
    BenchTargetStat s;
    std::vector<double> hits;
    for (int v : evals_to_hit) {
        if (v > 0) hits.push_back(static_cast<double>(v));
    }
    s.n_success = static_cast<int>(hits.size());
    if (!hits.empty()) {
        s.mean = std::accumulate(hits.begin(), hits.end(), 0.0) / hits.size();
        if (hits.size() > 1) {
            double ss = 0.0;
            for (double v : hits) ss += (v - s.mean) * (v - s.mean);
            s.sd = std::sqrt(ss / (hits.size() - 1));
        }
    }
    return s;
}

inline int evals_to_hv_level(const RunRecord& record, double level) {
    for (std::size_t i = 0; i < record.hv_fractions.size(); ++i) {
        if (record.hv_fractions[i] >= level) return static_cast<int>(i) + 1;
    }
    return -1;
}

/// Repeated seeded runs over a suite, optionally in parallel; one row per
/// problem with the evaluation counts to the suite's targets.
inline std::vector<BenchRow> bench(Suite suite, int repeats, int budget, int jobs,
                                   RunConfig base = {},
                                   std::vector<RunRecord>* all_records = nullptr) {
    std::vector<BenchRow> rows;
    for (const auto& problem : list_problems(suite)) {
        RunConfig config = base;
        config.problem = problem.name;
        config.budget = budget;

        std::vector<RunRecord> records(repeats);
        std::vector<int> order(repeats);
        std::iota(order.begin(), order.end(), 0);
        std::atomic<int> cursor{0};
        auto worker = [&]() {
            while (true) {
                const int r = cursor.fetch_add(1);
                if (r >= repeats) break;
                RunConfig run_config = config;
                run_config.seed = Rng::stream(base.seed, problem.name, r).next_u64();
                records[r] = run_bmoo(run_config);
            }
        };
        if (jobs <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        BenchRow row;
        row.problem = problem.name;
        row.repeats = repeats;
        if (problem.num_obj == 1) {
            std::vector<int> feas, targ;
            for (const auto& rec : records) {
                feas.push_back(rec.first_feasible);
                targ.push_back(rec.first_target);
            }
            row.stats.emplace_back("feasible", summarize(feas));
            row.stats.emplace_back("target", summarize(targ));
        } else {
            for (double level : {0.90, 0.95, 0.99}) {
                std::vector<int> hits;
                for (const auto& rec : records) hits.push_back(evals_to_hv_level(rec, level));
                row.stats.emplace_back("hv" + std::to_string(static_cast<int>(level * 100)),
                                       summarize(hits));
            }
        }
        rows.push_back(std::move(row));
        if (all_records) {
            for (auto& rec : records) all_records->push_back(std::move(rec));
        }
    }
    return rows;
}

}  // namespace bmoo

#endif
