#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bmoo/bounds.hpp>
#include <bmoo/domination.hpp>
#include <bmoo/rng.hpp>

#include <cmath>

using bmoo::BoxBounds;
using bmoo::dominated_box_volume_feasible;
using bmoo::dominated_box_volume_infeasible;
using bmoo::Evaluation;
using bmoo::Posterior;
using bmoo::PosteriorFn;
using bmoo::update_bounds;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

Evaluation eval_of(std::initializer_list<double> f, std::initializer_list<double> c) {
    Evaluation ev;
    ev.x = Eigen::VectorXd::Zero(1);
    ev.f = vec(f);
    ev.c = vec(c);
    return ev;
}

PosteriorFn constant_posterior(double mean, double var) {
    return [mean, var](const Eigen::VectorXd&) { return Posterior{mean, var}; };
}

BoxBounds box(std::initializer_list<double> obj_low, std::initializer_list<double> obj_upp,
              std::initializer_list<double> cons_low, std::initializer_list<double> cons_upp) {
    BoxBounds b;
    b.obj_low = vec(obj_low);
    b.obj_upp = vec(obj_upp);
    b.cons_low = vec(cons_low);
    b.cons_upp = vec(cons_upp);
    return b;
}

}  // namespace

TEST_CASE("corner formulas") {
    const std::vector<Eigen::VectorXd> candidates = {Eigen::VectorXd::Zero(1)};

    SUBCASE("single evaluation with a flat model collapses to a padded box") {
        const auto b = update_bounds({eval_of({1.0}, {2.0})}, {constant_posterior(1.0, 0.0)},
                                     {constant_posterior(2.0, 0.0)}, candidates, 5.0, 5.0);
        CHECK(b.obj_low[0] < 1.0);
        CHECK(b.obj_upp[0] > 1.0);
        CHECK(b.obj_upp[0] - b.obj_low[0] <= 3e-6);
        CHECK(b.cons_low[0] < 0.0);  // zero is forced interior
        CHECK(b.cons_upp[0] >= 2.0);
    }

    SUBCASE("positive-only constraint observations still get a negative corner") {
        const auto b = update_bounds({eval_of({0.0}, {1.5}), eval_of({0.0}, {0.5})},
                                     {constant_posterior(0.0, 0.0)},
                                     {constant_posterior(1.0, 0.0)}, candidates, 0.0, 0.0);
        CHECK(b.cons_low[0] < 0.0);
        CHECK(b.cons_upp[0] == doctest::Approx(1.5));
    }

    SUBCASE("posterior band sets the objective corner") {
        const auto b = update_bounds({eval_of({3.0}, {-1.0})}, {constant_posterior(2.0, 1.0)},
                                     {constant_posterior(-1.0, 0.0)}, candidates, 5.0, 5.0);
        CHECK(b.obj_upp[0] == doctest::Approx(7.0));  // predictor + 5 sd beats the observed 3
        CHECK(b.obj_low[0] == doctest::Approx(-3.0));
    }

    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(update_bounds({}, {}, {}, candidates, 5, 5), std::invalid_argument);
        CHECK_THROWS_AS(update_bounds({eval_of({1.0}, {})}, {constant_posterior(0, 0)}, {}, {},
                                      5, 5),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            update_bounds({eval_of({1.0}, {})},
                          {constant_posterior(std::numeric_limits<double>::quiet_NaN(), 0)}, {},
                          candidates, 5, 5),
            std::runtime_error);
    }
}

TEST_CASE("bounds grow monotonically with data and contain every evaluation") {
    bmoo::Rng rng(51);
    std::vector<Evaluation> evals;
    const std::vector<Eigen::VectorXd> candidates = {Eigen::VectorXd::Zero(1)};
    const std::vector<PosteriorFn> obj = {constant_posterior(0.0, 0.5)};
    const std::vector<PosteriorFn> cons = {constant_posterior(0.0, 0.5)};
    BoxBounds prev;
    for (int n = 1; n <= 30; ++n) {
        Evaluation ev;
        ev.x = Eigen::VectorXd::Zero(1);
        ev.f = vec({rng.uniform(-3, 3)});
        ev.c = vec({rng.uniform(-3, 3)});
        evals.push_back(ev);
        const auto b = update_bounds(evals, obj, cons, candidates, 5.0, 5.0);
        for (const auto& e : evals) {
            CHECK(e.f[0] >= b.obj_low[0]);
            CHECK(e.f[0] <= b.obj_upp[0]);
            CHECK(e.c[0] >= b.cons_low[0]);
            CHECK(e.c[0] <= b.cons_upp[0]);
        }
        if (n > 1) {
            CHECK(b.obj_low[0] <= prev.obj_low[0] + 1e-12);
            CHECK(b.obj_upp[0] >= prev.obj_upp[0] - 1e-12);
        }
        prev = b;
    }
}

TEST_CASE("single-point dominated volumes") {
    SUBCASE("unfeasible point") {
        const auto b = box({0}, {2}, {-1}, {1});
        CHECK(dominated_box_volume_infeasible(b, vec({0.5})) == doctest::Approx(1.0));
        CHECK(dominated_box_volume_infeasible(b, vec({1.0})) == doctest::Approx(0.0));
        CHECK_THROWS_AS(dominated_box_volume_infeasible(b, vec({-0.5})), std::invalid_argument);

        // satisfying a constraint earns the full slab, a discontinuous jump
        const auto b2 = box({0}, {1}, {-2, -2}, {1, 1});
        const double just_violated = dominated_box_volume_infeasible(b2, vec({1e-12, 0.5}));
        const double satisfied = dominated_box_volume_infeasible(b2, vec({-1e-12, 0.5}));
        CHECK(satisfied - just_violated == doctest::Approx(2.0 * 0.5).epsilon(1e-6));
    }

    SUBCASE("feasible point") {
        const auto b = box({0}, {2}, {-1}, {1});
        CHECK(dominated_box_volume_feasible(b, vec({0.0})) == doctest::Approx(4.0));
        CHECK(dominated_box_volume_feasible(b, vec({2.0})) == doctest::Approx(2.0));
        CHECK(dominated_box_volume_feasible(b, vec({1.0})) == doctest::Approx(3.0));
        // beyond the box in some coordinate: objective slab clamps to zero
        CHECK(dominated_box_volume_feasible(b, vec({5.0})) == doctest::Approx(2.0));
    }
}

TEST_CASE("volume formulas agree with Monte Carlo over random configurations") {
    bmoo::Rng rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = 1 + static_cast<int>(rng.index(3));
        const int q = 1 + static_cast<int>(rng.index(3));
        BoxBounds b;
        b.obj_low.resize(p);
        b.obj_upp.resize(p);
        b.cons_low.resize(q);
        b.cons_upp.resize(q);
        for (int i = 0; i < p; ++i) {
            b.obj_low[i] = rng.uniform(-3, 0);
            b.obj_upp[i] = b.obj_low[i] + rng.uniform(0.5, 3);
        }
        for (int j = 0; j < q; ++j) {
            b.cons_low[j] = rng.uniform(-2, -0.2);
            b.cons_upp[j] = rng.uniform(0.2, 2);
        }

        Eigen::VectorXd f(p), c(q);
        for (int i = 0; i < p; ++i) f[i] = rng.uniform(b.obj_low[i], b.obj_upp[i]);
        const bool feasible_case = rng.uniform() < 0.5;
        for (int j = 0; j < q; ++j) {
            c[j] = feasible_case ? rng.uniform(b.cons_low[j], 0.0)
                                 : rng.uniform(b.cons_low[j], b.cons_upp[j]);
        }
        if (!feasible_case && c.maxCoeff() <= 0.0) c[0] = rng.uniform(0.0, b.cons_upp[0]);

        const double formula = (c.maxCoeff() <= 0.0) ? dominated_box_volume_feasible(b, f)
                                                     : dominated_box_volume_infeasible(b, c);

        bmoo::ExtendedFront front;
        front.insert(bmoo::extend_point(f, c));
        double total = b.obj_volume() * b.cons_volume();
        long hits = 0;
        const long n = 1000000;
        Eigen::VectorXd yo(p), yc(q);
        for (long s = 0; s < n; ++s) {
            for (int i = 0; i < p; ++i) yo[i] = rng.uniform(b.obj_low[i], b.obj_upp[i]);
            for (int j = 0; j < q; ++j) yc[j] = rng.uniform(b.cons_low[j], b.cons_upp[j]);
            if (bmoo::front_dominates_eval(front, yo, yc)) ++hits;
        }
        const double mc = total * static_cast<double>(hits) / static_cast<double>(n);
        INFO("p=", p, " q=", q, " formula=", formula, " mc=", mc);
        CHECK(std::abs(mc - formula) <= 0.02 * std::max(formula, 1e-3 * total));
    }
}
