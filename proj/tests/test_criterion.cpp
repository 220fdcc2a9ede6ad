#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bmoo/criterion.hpp>
#include <bmoo/driver.hpp>
#include <bmoo/math.hpp>
#include <bmoo/rng.hpp>

#include <cmath>

using bmoo::CriterionState;
using bmoo::ei_classic;
using bmoo::ei_feasible_part;
using bmoo::ei_kernel;
using bmoo::ei_schonlau;
using bmoo::ei_unfeasible_part;
using bmoo::expected_improvement;
using bmoo::extend_point;
using bmoo::normal_cdf;
using bmoo::Posterior;
using bmoo::PosteriorBundle;
using bmoo::prob_dominates;
using bmoo::prob_feasible;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

bmoo::BoxBounds box_pq(std::initializer_list<double> obj_low,
                       std::initializer_list<double> obj_upp,
                       std::initializer_list<double> cons_low,
                       std::initializer_list<double> cons_upp) {
    bmoo::BoxBounds b;
    b.obj_low = vec(obj_low);
    b.obj_upp = vec(obj_upp);
    b.cons_low = vec(cons_low);
    b.cons_upp = vec(cons_upp);
    return b;
}

bmoo::Evaluation eval_of(std::initializer_list<double> f, std::initializer_list<double> c) {
    bmoo::Evaluation ev;
    ev.x = Eigen::VectorXd::Zero(1);
    ev.f = vec(f);
    ev.c = vec(c);
    return ev;
}

PosteriorBundle bundle_of(std::initializer_list<Posterior> obj,
                          std::initializer_list<Posterior> cons) {
    PosteriorBundle b;
    b.obj = obj;
    b.cons = cons;
    return b;
}

/// Accept-reject value of the improvement integral over the whole box:
/// uniform samples, dominated ones contribute zero.
double brute_force_ei(const PosteriorBundle& bundle, const CriterionState& state, long samples,
                      bmoo::Rng& rng) {
    const auto& b = state.bounds;
    const int p = b.num_obj(), q = b.num_cons();
    Eigen::VectorXd yo(p), yc(q);
    double sum = 0.0;
    for (long s = 0; s < samples; ++s) {
        for (int i = 0; i < p; ++i) yo[i] = rng.uniform(b.obj_low[i], b.obj_upp[i]);
        for (int j = 0; j < q; ++j) yc[j] = rng.uniform(b.cons_low[j], b.cons_upp[j]);
        if (bmoo::front_dominates_eval(state.front, yo, yc)) continue;
        sum += prob_dominates(bundle, extend_point(yo, yc));
    }
    return b.obj_volume() * b.cons_volume() * sum / static_cast<double>(samples);
}

}  // namespace

TEST_CASE("expected-improvement kernel") {
    CHECK(ei_kernel(-3.0, 0.0) == 0.0);
    CHECK(ei_kernel(2.5, 0.0) == 2.5);
    CHECK(ei_kernel(0.0, 1.0) == doctest::Approx(0.398942).epsilon(1e-5));
    CHECK(ei_kernel(1.0, 1.0) == doctest::Approx(1.083315).epsilon(1e-5));

    // the kernel is the antiderivative of the normal cdf in its first slot
    bmoo::Rng rng(61);
    for (int t = 0; t < 200; ++t) {
        const double z = rng.uniform(-3, 3);
        const double s = rng.uniform(0.1, 4.0);
        const double h = 1e-6;
        const double numeric = (ei_kernel(z + h, s) - ei_kernel(z - h, s)) / (2 * h);
        CHECK(numeric == doctest::Approx(normal_cdf(z / std::sqrt(s))).epsilon(1e-5));
    }
}

TEST_CASE("classical criterion") {
    CHECK(ei_classic(Posterior{5.0, 0.0}, 5.0) == 0.0);
    CHECK(ei_classic(Posterior{4.0, 0.0}, 5.0) == 1.0);
    CHECK(ei_classic(Posterior{5.0, 1.0}, 5.0) == doctest::Approx(0.398942).epsilon(1e-5));
}

TEST_CASE("probability of feasibility") {
    CHECK(prob_feasible({Posterior{0.0, 1.0}}) == doctest::Approx(0.5));
    CHECK(prob_feasible({Posterior{0.0, 1.0}, Posterior{0.0, 4.0}}) == doctest::Approx(0.25));
    CHECK(prob_feasible({Posterior{-1.6449, 1.0}}) == doctest::Approx(0.95).epsilon(1e-4));
    // exact indicators at zero variance
    CHECK(prob_feasible({Posterior{-0.1, 0.0}}) == 1.0);
    CHECK(prob_feasible({Posterior{0.1, 0.0}}) == 0.0);
}

TEST_CASE("product criterion") {
    const double best = 1.0;
    CHECK(ei_schonlau(bundle_of({Posterior{0.5, 1.0}}, {Posterior{-2.0, 0.0}}), best) ==
          doctest::Approx(ei_classic(Posterior{0.5, 1.0}, best)));
    CHECK(ei_schonlau(bundle_of({Posterior{0.5, 1.0}}, {Posterior{2.0, 0.0}}), best) == 0.0);
    CHECK(ei_schonlau(bundle_of({Posterior{1.0, 1.0}}, {Posterior{0.0, 1.0}}), 1.0) ==
          doctest::Approx(0.19947).epsilon(1e-4));
    CHECK_THROWS_AS(ei_schonlau(bundle_of({Posterior{0, 1}, Posterior{0, 1}}, {}), 0.0),
                    std::logic_error);
}

TEST_CASE("domination probability of a box point") {
    // deterministic bundles give the exact indicator
    const auto det = bundle_of({Posterior{1.0, 0.0}}, {Posterior{-1.0, 0.0}});
    CHECK(prob_dominates(det, extend_point(vec({2.0}), vec({-0.5}))) == 1.0);
    CHECK(prob_dominates(det, extend_point(vec({1.0}), vec({-0.5}))) == 0.0);  // equal: no strict
    CHECK(prob_dominates(det, extend_point(vec({0.5}), vec({-0.5}))) == 0.0);

    // unfeasible probe with clipped coordinates at the posterior means
    const auto b2 = bundle_of({}, {Posterior{0.3, 1.0}, Posterior{0.0, 1.0}});
    CHECK(prob_dominates(b2, extend_point(Eigen::VectorXd(), vec({0.3, -2.0}))) ==
          doctest::Approx(0.25));

    // feasible probe needs both the objective block and feasibility
    const auto b3 = bundle_of({Posterior{0.0, 1.0}}, {Posterior{0.0, 1.0}});
    CHECK(prob_dominates(b3, extend_point(vec({0.0}), vec({-0.5}))) == doctest::Approx(0.25));
}

TEST_CASE("feasible component") {
    SUBCASE("closed form before any feasible point") {
        CriterionState state;
        state.bounds = box_pq({0}, {2}, {-1}, {1});
        state.front.insert(extend_point(vec({0.5}), vec({0.7})));  // unfeasible member only
        state.feasible_found = false;

        // degenerate objective posterior at the box center: the objective
        // integral is the length of [mean, upp]
        const auto bundle = bundle_of({Posterior{1.0, 0.0}}, {Posterior{0.0, 1.0}});
        CHECK(ei_feasible_part(bundle, state) == doctest::Approx(1.0 * 0.5 * 1.0));

        // certain infeasibility kills the term
        const auto dead = bundle_of({Posterior{1.0, 1.0}}, {Posterior{0.5, 0.0}});
        CHECK(ei_feasible_part(dead, state) == 0.0);
    }

    SUBCASE("closed form agrees with adaptive quadrature") {
        bmoo::Rng rng(62);
        for (int t = 0; t < 20; ++t) {
            const double lo = rng.uniform(-3, 0), hi = lo + rng.uniform(0.5, 4.0);
            const double mean = rng.uniform(-4, 4), var = rng.uniform(0.01, 4.0);
            const double closed = ei_kernel(hi - mean, var) - ei_kernel(lo - mean, var);
            // Simpson rule, refined grid
            const int n = 20001;
            const double h = (hi - lo) / (n - 1);
            double integral = 0.0;
            for (int i = 0; i < n; ++i) {
                const double y = lo + i * h;
                const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                integral += w * normal_cdf((y - mean) / std::sqrt(var));
            }
            integral *= h / 3.0;
            CHECK(closed == doctest::Approx(integral).epsilon(1e-8));
        }
    }
}

TEST_CASE("unfeasible component") {
    SUBCASE("vanishes once a feasible point exists") {
        std::vector<bmoo::Evaluation> evals = {eval_of({0.5}, {-0.2})};
        const auto bounds = box_pq({0}, {2}, {-1}, {1});
        const auto state = bmoo::make_criterion_state(evals, bounds, 500, 7);
        const auto bundle = bundle_of({Posterior{1.0, 1.0}}, {Posterior{0.0, 1.0}});
        CHECK(ei_unfeasible_part(bundle, state) == 0.0);
    }

    SUBCASE("deterministic constraint posterior reproduces the volume formula") {
        std::vector<bmoo::Evaluation> evals;  // empty history: region is the whole box
        const auto bounds = box_pq({0}, {2}, {-1, -1}, {1, 1});
        CriterionState state;
        state.bounds = bounds;
        auto particles = std::make_shared<bmoo::ParticleSetY>(
            bmoo::ParticleSetY::init_uniform(bmoo::YBox::constraint(bounds), 20000, 8));
        state.y_particles = particles;

        const auto bundle = bundle_of({Posterior{1.0, 1.0}},
                                      {Posterior{0.6, 0.0}, Posterior{-0.3, 0.0}});
        const double expected =
            bmoo::dominated_box_volume_infeasible(bounds, vec({0.6, -0.3}));
        CHECK(ei_unfeasible_part(bundle, state) == doctest::Approx(expected).epsilon(0.05));
    }

    SUBCASE("symmetric posterior against a brute-force expectation") {
        const auto bounds = box_pq({0}, {2}, {-1}, {1});
        CriterionState state;
        state.bounds = bounds;
        auto particles = std::make_shared<bmoo::ParticleSetY>(
            bmoo::ParticleSetY::init_uniform(bmoo::YBox::constraint(bounds), 20000, 9));
        state.y_particles = particles;

        const auto bundle = bundle_of({Posterior{1.0, 1.0}}, {Posterior{0.0, 1.0}});
        const double est = ei_unfeasible_part(bundle, state);

        bmoo::Rng rng(63);
        double sum = 0.0;
        const long n = 1000000;
        for (long s = 0; s < n; ++s) {
            const double y = rng.uniform(-1.0, 1.0);
            if (y <= 0.0) continue;
            sum += normal_cdf(y - 0.0);
        }
        const double brute = 2.0 * 2.0 * sum / static_cast<double>(n);
        CHECK(est == doctest::Approx(brute).epsilon(0.02));
    }
}

TEST_CASE("criterion dispatch") {
    SUBCASE("single-objective exact path recovers the product criterion") {
        std::vector<bmoo::Evaluation> evals = {eval_of({1.2}, {-0.5}), eval_of({1.8}, {0.3})};
        const auto bounds = box_pq({0}, {2}, {-1}, {1});
        const auto state = bmoo::make_criterion_state(evals, bounds, 500, 11);
        REQUIRE(state.feasible_found);
        REQUIRE(*state.best_feasible_value == 1.2);

        const auto bundle = bundle_of({Posterior{0.8, 0.25}}, {Posterior{-0.4, 0.09}});
        const double expected =
            bounds.feasible_cons_volume() * ei_schonlau(bundle, 1.2);
        CHECK(expected_improvement(bundle, state) == doctest::Approx(expected));
    }

    SUBCASE("deterministic bundle at an existing front point brings nothing") {
        std::vector<bmoo::Evaluation> evals = {eval_of({1.0, 1.0}, {-0.5})};
        const auto bounds = box_pq({0, 0}, {2, 2}, {-1}, {1});
        const auto state = bmoo::make_criterion_state(evals, bounds, 1000, 12);
        const auto bundle =
            bundle_of({Posterior{1.0, 0.0}, Posterior{1.0, 0.0}}, {Posterior{-0.5, 0.0}});
        CHECK(expected_improvement(bundle, state) == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("particle estimate matches accept-reject Monte Carlo") {
        bmoo::Rng rng(64);
        for (int t = 0; t < 3; ++t) {
            const auto bounds = box_pq({0, -1}, {2, 1}, {-1, -0.5}, {1, 1.5});
            std::vector<bmoo::Evaluation> evals;
            evals.push_back(eval_of({0.9, -0.2}, {0.4, 0.3}));
            evals.push_back(eval_of({1.5, 0.4}, {-0.2, 0.8}));
            if (t > 0) evals.push_back(eval_of({1.1, 0.0}, {-0.3, -0.1}));  // feasible
            const auto state = bmoo::make_criterion_state(evals, bounds, 10000, 100 + t);

            PosteriorBundle bundle;
            for (int i = 0; i < 2; ++i) {
                bundle.obj.push_back(
                    Posterior{rng.uniform(0.0, 1.5), rng.uniform(0.05, 0.5)});
                bundle.cons.push_back(
                    Posterior{rng.uniform(-0.5, 0.5), rng.uniform(0.05, 0.5)});
            }
            const double smc = ei_feasible_part(bundle, state) + ei_unfeasible_part(bundle, state);
            const double brute = brute_force_ei(bundle, state, 1000000, rng);
            INFO("case ", t, ": smc=", smc, " brute=", brute);
            CHECK(smc == doctest::Approx(brute).epsilon(0.05));
        }
    }

    SUBCASE("dispatch rejects mismatched shapes") {
        CriterionState state;
        state.bounds = box_pq({0}, {1}, {-1}, {1});
        CHECK_THROWS_AS(
            expected_improvement(bundle_of({Posterior{0, 1}, Posterior{0, 1}}, {}), state),
            std::logic_error);
    }
}

TEST_CASE("criterion invariants") {
    std::vector<bmoo::Evaluation> evals = {eval_of({1.0}, {-0.5}), eval_of({0.6}, {0.4})};
    const auto bounds = box_pq({0}, {2}, {-1}, {1});
    const auto state = bmoo::make_criterion_state(evals, bounds, 2000, 13);

    bmoo::Rng rng(65);
    double prev = -1.0;
    SUBCASE("nonnegative everywhere") {
        for (int t = 0; t < 200; ++t) {
            const auto bundle = bundle_of({Posterior{rng.uniform(-1, 3), rng.uniform(0, 2)}},
                                          {Posterior{rng.uniform(-2, 2), rng.uniform(0, 2)}});
            CHECK(expected_improvement(bundle, state) >= 0.0);
        }
    }

    SUBCASE("optimism in the objective never hurts under certain feasibility") {
        for (double mean = 2.0; mean >= -1.0; mean -= 0.1) {
            const auto bundle =
                bundle_of({Posterior{mean, 0.3}}, {Posterior{-5.0, 1e-12}});
            const double value = expected_improvement(bundle, state);
            CHECK(value >= prev - 1e-12);
            prev = value;
        }
    }

    SUBCASE("single-objective reduction to the classical criterion") {
        // huge box below: the exact path equals |Bc-| * EI_classic once the
        // incumbent sits inside the objective box
        bmoo::BoxBounds wide = bounds;
        wide.obj_low[0] = -1e6;
        CriterionState s2;
        s2.front = state.front;
        s2.bounds = wide;
        s2.best_feasible_value = state.best_feasible_value;
        s2.feasible_found = true;
        for (int t = 0; t < 50; ++t) {
            const auto bundle = bundle_of({Posterior{rng.uniform(-1, 3), rng.uniform(0.01, 2)}},
                                          {Posterior{-5.0, 1e-12}});
            const double lhs = expected_improvement(bundle, s2) / wide.feasible_cons_volume();
            const double rhs = ei_classic(bundle.obj[0], *s2.best_feasible_value);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
        }
    }
}
