#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bmoo/driver.hpp>
#include <bmoo/serialize.hpp>

#include <cmath>
#include <set>

using bmoo::initial_design;
using bmoo::RunConfig;
using bmoo::RunRecord;
using bmoo::run_bmoo;
using bmoo::select_next;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

}  // namespace

TEST_CASE("latin hypercube design") {
    const Eigen::VectorXd lo = vec({0, -5});
    const Eigen::VectorXd up = vec({2, 5});

    SUBCASE("every 1-D projection hits each stratum exactly once") {
        bmoo::Rng rng(91);
        const int n = 9;
        const auto design = initial_design(2, n, lo, up, rng);
        REQUIRE(static_cast<int>(design.size()) == n);
        for (int l = 0; l < 2; ++l) {
            std::set<int> strata;
            for (const auto& x : design) {
                const double u = (x[l] - lo[l]) / (up[l] - lo[l]);
                strata.insert(static_cast<int>(u * n));
            }
            CHECK(static_cast<int>(strata.size()) == n);
        }
    }

    SUBCASE("deterministic for a fixed seed") {
        bmoo::Rng a(92), b(92);
        const auto d1 = initial_design(3, 7, vec({0, 0, 0}), vec({1, 1, 1}), a);
        const auto d2 = initial_design(3, 7, vec({0, 0, 0}), vec({1, 1, 1}), b);
        for (std::size_t i = 0; i < d1.size(); ++i) CHECK(d1[i] == d2[i]);
    }

    SUBCASE("maximin selection beats the median random design") {
        const auto min_dist = [](const std::vector<Eigen::VectorXd>& design) {
            double d = std::numeric_limits<double>::infinity();
            for (std::size_t i = 1; i < design.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    d = std::min(d, (design[i] - design[j]).norm());
                }
            }
            return d;
        };
        int wins = 0;
        for (int seed = 0; seed < 20; ++seed) {
            bmoo::Rng rng(200 + seed);
            const auto maximin = initial_design(2, 8, vec({0, 0}), vec({1, 1}), rng, 500);
            bmoo::Rng single(300 + seed);
            const auto lone = initial_design(2, 8, vec({0, 0}), vec({1, 1}), single, 1);
            if (min_dist(maximin) >= min_dist(lone)) ++wins;
        }
        CHECK(wins >= 17);
    }
}

TEST_CASE("candidate selection") {
    std::vector<Eigen::VectorXd> candidates = {vec({0.1}), vec({0.5}), vec({0.9})};
    std::vector<bmoo::PosteriorBundle> bundles(3);
    for (auto& b : bundles) b.obj.push_back(bmoo::Posterior{0.0, 1.0});
    const Eigen::VectorXd lo = vec({0}), up = vec({1});

    SUBCASE("plain argmax with ties to the first index") {
        CHECK(select_next(candidates, {0.3, 0.8, 0.2}, bundles, {}, lo, up) == 1);
        CHECK(select_next(candidates, {0.4, 0.4, 0.4}, bundles, {}, lo, up) == 0);
        CHECK(select_next({vec({0.5})}, {0.7}, {bundles[0]}, {}, lo, up) == 0);
    }

    SUBCASE("duplicates of evaluated points are skipped") {
        bmoo::Evaluation ev;
        ev.x = vec({0.5});
        CHECK(select_next(candidates, {0.3, 0.8, 0.2}, bundles, {ev}, lo, up) == 0);
    }

    SUBCASE("zero criterion falls back to the widest posterior") {
        bundles[2].obj[0].var = 9.0;
        CHECK(select_next(candidates, {0.0, 0.0, 0.0}, bundles, {}, lo, up) == 2);
    }
}

TEST_CASE("bi-objective run on the toy problem") {
    RunConfig config;
    config.problem = "toy";
    config.budget = 60;
    config.n_init = 10;  // matches the paper's illustration run
    config.m_x = 600;
    config.m_y = 600;
    config.seed = 0;
    const RunRecord record = run_bmoo(config);

    CHECK(static_cast<int>(record.entries.size()) == config.budget);
    CHECK(record.first_feasible > 0);

    // count feasible non-dominated solutions at the end
    bmoo::ExtendedFront front;
    for (const auto& e : record.entries) {
        if (e.feasible) front.insert(bmoo::extend_point(e.f, Eigen::VectorXd()));
    }
    CHECK(static_cast<int>(front.size()) >= 5);
}

TEST_CASE("single-objective run bookkeeping") {
    RunConfig config;
    config.problem = "g24";
    config.budget = 22;
    config.m_x = 400;
    config.m_y = 400;
    config.seed = 7;
    const RunRecord record = run_bmoo(config);

    CHECK(static_cast<int>(record.entries.size()) == config.budget);

    // first-feasible metric agrees with the raw entries
    int expected_first = -1;
    for (std::size_t i = 0; i < record.entries.size(); ++i) {
        if (record.entries[i].c.maxCoeff() <= config.feas_tol) {
            expected_first = static_cast<int>(i) + 1;
            break;
        }
    }
    CHECK(record.first_feasible == expected_first);

    // running best feasible objective never increases
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : record.entries) {
        if (!e.feasible) continue;
        CHECK(e.f[0] >= -1e12);
        best = std::min(best, e.f[0]);
    }
    CHECK(best < std::numeric_limits<double>::infinity());

    // iteration records past the design carry the criterion value and bounds
    for (std::size_t i = 6; i < record.entries.size(); ++i) {
        CHECK_FALSE(std::isnan(record.entries[i].ei_value));
        CHECK(record.entries[i].bounds.has_value());
    }
}

TEST_CASE("runs are reproducible") {
    RunConfig config;
    config.problem = "g24";
    config.budget = 14;
    config.m_x = 200;
    config.m_y = 200;
    config.seed = 123;
    const RunRecord a = run_bmoo(config);
    const RunRecord b = run_bmoo(config);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].x == b.entries[i].x);
        CHECK(a.entries[i].f == b.entries[i].f);
        CHECK(a.entries[i].c == b.entries[i].c);
    }
    CHECK(a.first_feasible == b.first_feasible);
}

TEST_CASE("records serialize with a stable schema") {
    RunConfig config;
    config.problem = "g24";
    config.budget = 10;
    config.n_init = 6;
    config.m_x = 100;
    config.m_y = 100;
    config.seed = 5;
    config.dump_particles = true;
    const RunRecord record = run_bmoo(config);

    const auto doc = bmoo::to_json(record);
    CHECK(doc.at("schema_version").get<int>() == 1);
    CHECK(doc.at("entries").size() == 10);
    CHECK(doc.at("config").at("problem").get<std::string>() == "g24");

    const std::string csv = bmoo::particle_dumps_to_csv(record);
    CHECK(csv.find("evaluation,kind,particle") == 0);
    CHECK(csv.find("x") != std::string::npos);
}

TEST_CASE("bench aggregates repeated runs") {
    RunConfig base;
    base.m_x = 150;
    base.m_y = 150;
    base.seed = 11;
    const auto rows = bmoo::bench(bmoo::Suite::toy, 2, 12, 1, base);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].problem == "toy");
    CHECK(rows[0].repeats == 2);

    const std::string csv = bmoo::bench_to_csv(rows);
    CHECK(csv.find("problem,") == 0);
    CHECK(csv.find("toy") != std::string::npos);
}
