#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bmoo/hypervolume.hpp>
#include <bmoo/rng.hpp>

#include <cmath>
#include <vector>

using bmoo::hv_exact_2d;
using bmoo::hv_fraction;
using bmoo::hv_monte_carlo;
using bmoo::HvReference;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

std::vector<Eigen::VectorXd> random_front(bmoo::Rng& rng, int count) {
    std::vector<Eigen::VectorXd> front;
    for (int i = 0; i < count; ++i) front.push_back(vec({rng.uniform(), rng.uniform()}));
    return front;
}

}  // namespace

TEST_CASE("two-objective sweep") {
    CHECK(hv_exact_2d({vec({0, 0})}, vec({1, 1})) == doctest::Approx(1.0));
    CHECK(hv_exact_2d({vec({0, 0.5}), vec({0.5, 0})}, vec({1, 1})) == doctest::Approx(0.75));
    CHECK(hv_exact_2d({}, vec({1, 1})) == 0.0);
    // clipping at the reference
    CHECK(hv_exact_2d({vec({-1, 0.5})}, vec({1, 1})) == doctest::Approx(1.0));
    CHECK(hv_exact_2d({vec({1, 0})}, vec({1, 1})) == 0.0);  // boundary carries no measure
    CHECK_THROWS_AS(hv_exact_2d({vec({0, 0, 0})}, vec({1, 1, 1})), std::invalid_argument);

    // brute-force grid integration oracle
    bmoo::Rng rng(81);
    for (int trial = 0; trial < 10; ++trial) {
        const auto front = random_front(rng, 6);
        const auto ref = vec({1, 1});
        const int grid = 400;
        long dominated = 0;
        for (int ix = 0; ix < grid; ++ix) {
            for (int iy = 0; iy < grid; ++iy) {
                const double x = (ix + 0.5) / grid, y = (iy + 0.5) / grid;
                for (const auto& f : front) {
                    if (f[0] <= x && f[1] <= y) {
                        ++dominated;
                        break;
                    }
                }
            }
        }
        const double brute = static_cast<double>(dominated) / (grid * grid);
        CHECK(std::abs(hv_exact_2d(front, ref) - brute) <= 2.0 / grid);
    }
}

TEST_CASE("scaling the objectives scales the area quadratically") {
    bmoo::Rng rng(82);
    for (int trial = 0; trial < 20; ++trial) {
        const auto front = random_front(rng, 5);
        const double s = rng.uniform(0.5, 3.0);
        std::vector<Eigen::VectorXd> scaled;
        for (const auto& f : front) scaled.push_back(s * f);
        const double base = hv_exact_2d(front, vec({1, 1}));
        CHECK(hv_exact_2d(scaled, vec({s, s})) == doctest::Approx(s * s * base).epsilon(1e-12));
    }
}

TEST_CASE("sampling estimator") {
    CHECK(hv_monte_carlo({}, vec({1, 1}), 1000, 1).first == 0.0);

    const auto corner = hv_monte_carlo({vec({0, 0})}, vec({1, 1}), 20000, 2);
    CHECK(corner.first == doctest::Approx(1.0));
    CHECK(corner.second == doctest::Approx(0.0));

    bmoo::Rng rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        const auto front = random_front(rng, 5);
        const double exact = hv_exact_2d(front, vec({1, 1}));
        const auto [est, sd] = hv_monte_carlo(front, vec({1, 1}), 40000, 100 + trial);
        CHECK(std::abs(est - exact) <= 3.0 * sd + 1e-9);
    }

    // five objectives: single corner point still dominates the whole box
    const auto high = hv_monte_carlo({Eigen::VectorXd::Zero(5)}, Eigen::VectorXd::Ones(5),
                                     20000, 3);
    CHECK(high.first == doctest::Approx(1.0));
}

TEST_CASE("progress fractions") {
    HvReference ref{vec({1, 1}), 0.75};
    std::vector<std::vector<Eigen::VectorXd>> fronts;
    fronts.push_back({});                                   // nothing feasible yet
    fronts.push_back({vec({0.5, 0.5})});                    // quarter of the box
    fronts.push_back({vec({0.5, 0.5}), vec({0, 0.9})});     // a little more
    fronts.push_back({vec({0, 0.5}), vec({0.5, 0})});       // the reference front
    const auto fractions = hv_fraction(fronts, ref);
    REQUIRE(fractions.size() == 4);
    CHECK(fractions[0] == 0.0);
    CHECK(fractions[1] == doctest::Approx(0.25 / 0.75));
    CHECK(fractions[3] == doctest::Approx(1.0));
    for (std::size_t i = 1; i < fractions.size(); ++i) {
        CHECK(fractions[i] >= fractions[i - 1] - 1e-12);
    }
}
