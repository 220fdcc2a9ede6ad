#ifndef BMOO_PROBLEMS_HPP
#define BMOO_PROBLEMS_HPP

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bmoo {

using Objectives = Eigen::VectorXd;
using Constraints = Eigen::VectorXd;

/// A black-box constrained problem: minimize f(x) in R^p subject to
/// c(x) <= 0 in R^q over a box search domain.
struct ProblemSpec {
    std::string name;
    int dim = 0;       // d
    int num_obj = 1;   // p
    int num_cons = 0;  // q
    Eigen::VectorXd x_low, x_upp;
    std::function<std::pair<Objectives, Constraints>(const Eigen::VectorXd&)> evaluator;

    std::optional<double> best_known;
    std::optional<double> target;                      // single-objective target value
    std::optional<Eigen::VectorXd> hv_ref_point;       // multi-objective reference point
    std::optional<double> hv_ref_volume;               // dominated volume of the true front
    std::optional<double> feasible_fraction_pct;       // tabulated feasible-volume ratio
};

/// One evaluation of a problem.
struct Evaluation {
    Eigen::VectorXd x;
    Objectives f;
    Constraints c;
};

/// Signed logarithmic damping transform: log(1+x) for x >= 0, -log(1-x)
/// otherwise.  Odd and strictly increasing on the reals.
inline double plog(double x) {
    return x >= 0.0 ? std::log1p(x) : -std::log1p(-x);
}

/// max_j c_j <= tol.  Use tol = 1e-5 for reporting, 0 for domination logic.
inline bool is_feasible(const Constraints& c, double tol) {
    return c.size() == 0 || c.maxCoeff() <= tol;
}

enum class Suite { mono, multi, modified, toy };

inline Suite suite_from_string(const std::string& s) {
    if (s == "mono") return Suite::mono;
    if (s == "multi") return Suite::multi;
    if (s == "modified") return Suite::modified;
    if (s == "toy") return Suite::toy;
    throw std::invalid_argument("unknown suite: " + s);
}

/// Evaluate with domain and sanity checks.
inline Evaluation evaluate(const ProblemSpec& problem, const Eigen::VectorXd& x) {
    if (x.size() != problem.dim) {
        throw std::domain_error(problem.name + ": point has wrong dimension");
    }
    for (int i = 0; i < problem.dim; ++i) {
        const double tol = 1e-12 * std::max(1.0, problem.x_upp[i] - problem.x_low[i]);
        if (x[i] < problem.x_low[i] - tol || x[i] > problem.x_upp[i] + tol) {
            throw std::domain_error(problem.name + ": point outside the search domain");
        }
    }
    auto [f, c] = problem.evaluator(x);
    if (!f.allFinite() || !c.allFinite()) {
        std::string msg = problem.name + ": non-finite evaluation at x = [";
        for (int i = 0; i < x.size(); ++i) msg += (i ? ", " : "") + std::to_string(x[i]);
        throw std::runtime_error(msg + "]");
    }
    Evaluation ev;
    ev.x = x;
    ev.f = std::move(f);
    ev.c = std::move(c);
    return ev;
}

namespace detail {

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

inline double sq(double v) { return v * v; }
inline double cube(double v) { return v * v * v; }

// ---------------------------------------------------------------------------
// Single-objective suite
// ---------------------------------------------------------------------------

inline std::pair<Objectives, Constraints> eval_g1(const Eigen::VectorXd& x) {
    double f = 0.0;
    for (int i = 0; i < 4; ++i) f += 5.0 * x[i] - 5.0 * sq(x[i]);
    for (int i = 4; i < 13; ++i) f -= x[i];
    Constraints c(9);
    c[0] = 2 * x[0] + 2 * x[1] + x[9] + x[10] - 10;
    c[1] = 2 * x[0] + 2 * x[2] + x[9] + x[11] - 10;
    c[2] = 2 * x[1] + 2 * x[2] + x[10] + x[11] - 10;
    c[3] = -8 * x[0] + x[9];
    c[4] = -8 * x[1] + x[10];
    c[5] = -8 * x[2] + x[11];
    c[6] = -2 * x[3] - x[4] + x[9];
    c[7] = -2 * x[5] - x[6] + x[10];
    c[8] = -2 * x[7] - x[8] + x[11];
    return {vec({f}), c};
}

inline double g3mod_product(const Eigen::VectorXd& x) {
    const double d = static_cast<double>(x.size());
    double prod = std::pow(std::sqrt(d), d);
    for (int i = 0; i < x.size(); ++i) prod *= x[i];
    return prod;
}

inline std::pair<Objectives, Constraints> eval_g3mod(const Eigen::VectorXd& x) {
    const double f = -plog(g3mod_product(x));
    return {vec({f}), vec({x.squaredNorm() - 1.0})};
}

inline std::pair<Objectives, Constraints> eval_g5mod(const Eigen::VectorXd& x) {
    const double f = 3.0 * x[0] + 1e-6 * cube(x[0]) + 2.0 * x[1] + (2e-6 / 3.0) * cube(x[1]);
    Constraints c(5);
    c[0] = -x[3] + x[2] - 0.55;
    c[1] = -x[2] + x[3] - 0.55;
    c[2] = 1000 * std::sin(-x[2] - 0.25) + 1000 * std::sin(-x[3] - 0.25) + 894.8 - x[0];
    c[3] = 1000 * std::sin(x[2] - 0.25) + 1000 * std::sin(x[2] - x[3] - 0.25) + 894.8 - x[1];
    c[4] = 1000 * std::sin(x[3] - 0.25) + 1000 * std::sin(x[3] - x[2] - 0.25) + 1294.8;
    return {vec({f}), c};
}

inline std::pair<Objectives, Constraints> eval_g6(const Eigen::VectorXd& x) {
    const double f = cube(x[0] - 10.0) + cube(x[1] - 20.0);
    Constraints c(2);
    c[0] = -sq(x[0] - 5.0) - sq(x[1] - 5.0) + 100.0;
    c[1] = sq(x[0] - 6.0) + sq(x[1] - 5.0) - 82.81;
    return {vec({f}), c};
}

inline std::pair<Objectives, Constraints> eval_g7(const Eigen::VectorXd& x) {
    const double f = sq(x[0]) + sq(x[1]) + x[0] * x[1] - 14 * x[0] - 16 * x[1] + sq(x[2] - 10) +
                     4 * sq(x[3] - 5) + sq(x[4] - 3) + 2 * sq(x[5] - 1) + 5 * sq(x[6]) +
                     7 * sq(x[7] - 11) + 2 * sq(x[8] - 10) + sq(x[9] - 7) + 45;
    Constraints c(8);
    c[0] = -105 + 4 * x[0] + 5 * x[1] - 3 * x[6] + 9 * x[7];
    c[1] = 10 * x[0] - 8 * x[1] - 17 * x[6] + 2 * x[7];
    c[2] = -8 * x[0] + 2 * x[1] + 5 * x[8] - 2 * x[9] - 12;
    c[3] = 3 * sq(x[0] - 2) + 4 * sq(x[1] - 3) + 2 * sq(x[2]) - 7 * x[3] - 120;
    c[4] = 5 * sq(x[0]) + 8 * x[1] + sq(x[2] - 6) - 2 * x[3] - 40;
    c[5] = sq(x[0]) + 2 * sq(x[1] - 2) - 2 * x[0] * x[1] + 14 * x[4] - 6 * x[5];
    c[6] = 0.5 * sq(x[0] - 8) + 2 * sq(x[1] - 4) + 3 * sq(x[4]) - x[5] - 30;
    c[7] = -3 * x[0] + 6 * x[1] + 12 * sq(x[8] - 8) - 7 * x[9];
    return {vec({f}), c};
}

inline std::pair<Objectives, Constraints> eval_g8(const Eigen::VectorXd& x) {
    const double s1 = std::sin(2 * M_PI * x[0]);
    const double f = -cube(s1) * std::sin(2 * M_PI * x[1]) / (cube(x[0]) * (x[0] + x[1]));
    Constraints c(2);
    c[0] = sq(x[0]) - x[1] + 1.0;
    c[1] = 1.0 - x[0] + sq(x[1] - 4.0);
    return {vec({f}), c};
}

inline std::pair<Objectives, Constraints> eval_g9(const Eigen::VectorXd& x) {
    const double f = sq(x[0] - 10) + 5 * sq(x[1] - 12) + std::pow(x[2], 4) + 3 * sq(x[3] - 11) +
                     10 * std::pow(x[4], 6) + 7 * sq(x[5]) + std::pow(x[6], 4) -
                     4 * x[5] * x[6] - 10 * x[5] - 8 * x[6];
    Constraints c(4);
    c[0] = -127 + 2 * sq(x[0]) + 3 * std::pow(x[1], 4) + x[2] + 4 * sq(x[3]) + 5 * x[4];
    c[1] = -282 + 7 * x[0] + 3 * x[1] + 10 * sq(x[2]) + x[3] - x[4];
    c[2] = -196 + 23 * x[0] + sq(x[1]) + 6 * sq(x[5]) - 8 * x[6];
    c[3] = 4 * sq(x[0]) + sq(x[1]) - 3 * x[0] * x[1] + 2 * sq(x[2]) + 5 * x[5] - 11 * x[6];
    return {vec({f}), c};
}

inline void g10_raw_constraints(const Eigen::VectorXd& x, double out[6]) {
    out[0] = -1 + 0.0025 * (x[3] + x[5]);
    out[1] = -1 + 0.0025 * (x[4] + x[6] - x[3]);
    out[2] = -1 + 0.01 * (x[7] - x[4]);
    out[3] = 100 * x[0] - x[0] * x[5] + 833.33252 * x[3] - 83333.333;
    out[4] = x[1] * x[3] - x[1] * x[6] - 1250 * x[3] + 1250 * x[4];
    out[5] = x[2] * x[4] - x[2] * x[7] - 2500 * x[4] + 1250000;
}

inline std::pair<Objectives, Constraints> eval_g10(const Eigen::VectorXd& x) {
    double raw[6];
    g10_raw_constraints(x, raw);
    Constraints c(6);
    for (int j = 0; j < 6; ++j) c[j] = raw[j];
    return {vec({x[0] + x[1] + x[2]}), c};
}

inline std::pair<Objectives, Constraints> eval_g13mod(const Eigen::VectorXd& x) {
    const double f = std::exp(x[0] * x[1] * x[2] * x[3] * x[4]);
    Constraints c(3);
    c[0] = x.squaredNorm() - 10.0;
    c[1] = x[1] * x[2] - 5.0 * x[3] * x[4];
    c[2] = cube(x[0]) + cube(x[1]) + 1.0;
    return {vec({f}), c};
}

// Industrial chemical process design problem with 17 intermediate quantities
// bounded from both sides, giving 38 constraints.
inline std::pair<Objectives, Constraints> eval_g16(const Eigen::VectorXd& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
    const double y1 = x2 + x3 + 41.6;
    const double c1 = 0.024 * x4 - 4.62;
    const double y2 = 12.5 / c1 + 12.0;
    const double c2 = 0.0003535 * sq(x1) + 0.5311 * x1 + 0.08705 * y2 * x1;
    const double c3 = 0.052 * x1 + 78.0 + 0.002377 * y2 * x1;
    const double y3 = c2 / c3;
    const double y4 = 19.0 * y3;
    const double c4 =
        0.04782 * (x1 - y3) + 0.1956 * sq(x1 - y3) / x2 + 0.6376 * y4 + 1.594 * y3;
    const double c5 = 100.0 * x2;
    const double c6 = x1 - y3 - y4;
    const double c7 = 0.950 - c4 / c5;
    const double y5 = c6 * c7;
    const double y6 = x1 - y5 - y4 - y3;
    const double c8 = (y5 + y4) * 0.995;
    const double y7 = c8 / y1;
    const double y8 = c8 / 3798.0;
    const double c9 = y7 - 0.0663 * y7 / y8 - 0.3153;
    const double y9 = 96.82 / c9 + 0.321 * y1;
    const double y10 = 1.29 * y5 + 1.258 * y4 + 2.29 * y3 + 1.71 * y6;
    const double y11 = 1.71 * x1 - 0.452 * y4 + 0.580 * y3;
    const double c10 = 12.3 / 752.3;
    const double c11 = 1.75 * y2 * 0.995 * x1;
    const double c12 = 0.995 * y10 + 1998.0;
    const double y12 = c10 * x1 + c11 / c12;
    const double y13 = c12 - 1.75 * y2;
    const double y14 = 3623.0 + 64.4 * x2 + 58.4 * x3 + 146312.0 / (y9 + x5);
    const double c13 = 0.995 * y10 + 60.8 * x2 + 48.0 * x4 - 0.1121 * y14 - 5095.0;
    const double y15 = y13 / c13;
    const double y16 = 148000.0 - 331000.0 * y15 + 40.0 * y13 - 61.0 * y15 * y13;
    const double c14 = 2324.0 * y10 - 28740000.0 * y2;
    const double y17 = 14130000.0 - 1328.0 * y10 - 531.0 * y11 + c14 / c12;
    const double c15 = y13 / y15 - y13 / 0.52;
    const double c16 = 1.104 - 0.72 * y15;
    const double c17 = y9 + x5;

    const double f = 0.000117 * y14 + 0.1365 + 0.00002358 * y13 + 0.000001502 * y16 +
                     0.0321 * y12 + 0.004324 * y5 + 0.0001 * c15 / c16 + 37.48 * y2 / c12 -
                     0.0000005843 * y17;

    Constraints c(38);
    c[0] = 0.28 / 0.72 * y5 - y4;
    c[1] = x3 - 1.5 * x2;
    c[2] = 3496.0 * y2 / c12 - 21.0;
    c[3] = 110.6 + y1 - 62212.0 / c17;
    const double lo[17] = {213.1,   17.505, 11.275,  214.228, 7.458,    0.961,
                           1.612,   0.146,  107.99,  922.693, 926.832,  18.766,
                           1072.163, 8961.448, 0.063, 71084.33, 2802713.0};
    const double hi[17] = {405.23,  1053.6667, 35.03,   665.585, 584.463,  265.916,
                           7.046,   0.222,     273.366, 1286.105, 1444.046, 537.141,
                           3247.039, 26844.086, 0.386,  140000.0, 12146108.0};
    const double y[17] = {y1, y2, y3, y4, y5, y6, y7, y8, y9, y10, y11, y12, y13, y14, y15, y16, y17};
    for (int k = 0; k < 17; ++k) {
        c[4 + 2 * k] = lo[k] - y[k];
        c[5 + 2 * k] = y[k] - hi[k];
    }
    return {vec({f}), c};
}

inline std::pair<Objectives, Constraints> eval_g18(const Eigen::VectorXd& x) {
    const double f = -0.5 * (x[0] * x[3] - x[1] * x[2] + x[2] * x[8] - x[4] * x[8] +
                             x[4] * x[7] - x[5] * x[6]);
    Constraints c(13);
    c[0] = sq(x[2]) + sq(x[3]) - 1;
    c[1] = sq(x[8]) - 1;
    c[2] = sq(x[4]) + sq(x[5]) - 1;
    c[3] = sq(x[0]) + sq(x[1] - x[8]) - 1;
    c[4] = sq(x[0] - x[4]) + sq(x[1] - x[5]) - 1;
    c[5] = sq(x[0] - x[6]) + sq(x[1] - x[7]) - 1;
    c[6] = sq(x[2] - x[4]) + sq(x[3] - x[5]) - 1;
    c[7] = sq(x[2] - x[6]) + sq(x[3] - x[7]) - 1;
    c[8] = sq(x[6]) + sq(x[7] - x[8]) - 1;
    c[9] = x[1] * x[2] - x[0] * x[3];
    c[10] = -x[2] * x[8];
    c[11] = x[4] * x[8];
    c[12] = x[5] * x[6] - x[4] * x[7];
    return {vec({f}), c};
}

inline std::pair<Objectives, Constraints> eval_g19(const Eigen::VectorXd& x) {
    static const double a[10][5] = {
        {-16, 2, 0, 1, 0},     {0, -2, 0, 0.4, 2},   {-3.5, 0, 2, 0, 0}, {0, -2, 0, -4, -1},
        {0, -9, -2, 1, -2.8},  {2, 0, -4, 0, 0},     {-1, -1, -1, -1, -1},
        {-1, -2, -3, -2, -1},  {1, 2, 3, 4, 5},      {1, 1, 1, 1, 1}};
    static const double b[10] = {-40, -2, -0.25, -4, -4, -1, -40, -60, 5, 1};
    static const double cm[5][5] = {{30, -20, -10, 32, -10},
                                    {-20, 39, -6, -31, 32},
                                    {-10, -6, 10, -6, -10},
                                    {32, -31, -6, 39, -20},
                                    {-10, 32, -10, -20, 30}};
    static const double d[5] = {4, 8, 10, 6, 2};
    static const double e[5] = {-15, -27, -36, -18, -12};

    double f = 0.0;
    for (int j = 0; j < 5; ++j) {
        for (int i = 0; i < 5; ++i) f += cm[i][j] * x[10 + i] * x[10 + j];
        f += 2.0 * d[j] * cube(x[10 + j]);
    }
    for (int i = 0; i < 10; ++i) f -= b[i] * x[i];

    Constraints c(5);
    for (int j = 0; j < 5; ++j) {
        double g = -3.0 * d[j] * sq(x[10 + j]) - e[j];
        for (int i = 0; i < 5; ++i) g -= 2.0 * cm[i][j] * x[10 + i];
        for (int i = 0; i < 10; ++i) g += a[i][j] * x[i];
        c[j] = g;
    }
    return {vec({f}), c};
}

inline std::pair<Objectives, Constraints> eval_g24(const Eigen::VectorXd& x) {
    Constraints c(2);
    c[0] = -2 * std::pow(x[0], 4) + 8 * cube(x[0]) - 8 * sq(x[0]) + x[1] - 2;
    c[1] = -4 * std::pow(x[0], 4) + 32 * cube(x[0]) - 88 * sq(x[0]) + 96 * x[0] + x[1] - 36;
    return {vec({-x[0] - x[1]}), c};
}

// Speed reducer design.
inline std::pair<Objectives, Constraints> eval_sr7(const Eigen::VectorXd& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6];
    const double f = 0.7854 * x1 * sq(x2) * (3.3333 * sq(x3) + 14.9334 * x3 - 43.0934) -
                     1.508 * x1 * (sq(x6) + sq(x7)) + 7.477 * (cube(x6) + cube(x7)) +
                     0.7854 * (x4 * sq(x6) + x5 * sq(x7));
    Constraints c(11);
    c[0] = 27.0 / (x1 * sq(x2) * x3) - 1.0;
    c[1] = 397.5 / (x1 * sq(x2) * sq(x3)) - 1.0;
    c[2] = 1.93 * cube(x4) / (x2 * x3 * std::pow(x6, 4)) - 1.0;
    c[3] = 1.93 * cube(x5) / (x2 * x3 * std::pow(x7, 4)) - 1.0;
    c[4] = std::sqrt(sq(745.0 * x4 / (x2 * x3)) + 16.9e6) / (110.0 * cube(x6)) - 1.0;
    c[5] = std::sqrt(sq(745.0 * x5 / (x2 * x3)) + 157.5e6) / (85.0 * cube(x7)) - 1.0;
    c[6] = x2 * x3 / 40.0 - 1.0;
    c[7] = 5.0 * x2 / x1 - 1.0;
    c[8] = x1 / (12.0 * x2) - 1.0;
    c[9] = (1.5 * x6 + 1.9) / x4 - 1.0;
    c[10] = (1.1 * x7 + 1.9) / x5 - 1.0;
    return {vec({f}), c};
}

inline double pvd4_objective(const Eigen::VectorXd& x) {
    return 0.6224 * x[0] * x[2] * x[3] + 1.7781 * x[1] * sq(x[2]) + 3.1661 * sq(x[0]) * x[3] +
           19.84 * sq(x[0]) * x[2];
}

inline double pvd4_volume_constraint(const Eigen::VectorXd& x) {
    return -M_PI * sq(x[2]) * x[3] - (4.0 / 3.0) * M_PI * cube(x[2]) + 1296000.0;
}

// Pressure vessel design.
inline std::pair<Objectives, Constraints> eval_pvd4(const Eigen::VectorXd& x) {
    Constraints c(3);
    c[0] = -x[0] + 0.0193 * x[2];
    c[1] = -x[1] + 0.00954 * x[2];
    c[2] = pvd4_volume_constraint(x);
    return {vec({pvd4_objective(x)}), c};
}

struct WeldedBeamStresses {
    double shear;      // combined shear stress
    double bending;    // bending stress
    double buckling;   // buckling load
    double deflection; // tip deflection
};

inline WeldedBeamStresses welded_beam_stresses(double h, double l, double t, double b) {
    const double tau1 = 6000.0 / (std::sqrt(2.0) * h * l);
    const double moment = 6000.0 * (14.0 + 0.5 * l);
    const double radius = std::sqrt(0.25 * sq(l) + sq(0.5 * (h + t)));
    const double inertia = 2.0 * (std::sqrt(2.0) * h * l * (sq(l) / 12.0 + sq(0.5 * (h + t))));
    const double tau2 = moment * radius / inertia;
    WeldedBeamStresses s;
    s.shear = std::sqrt(sq(tau1) + tau1 * tau2 * l / radius + sq(tau2));
    s.bending = 504000.0 / (sq(t) * b);
    s.buckling = 64746.022 * (1.0 - 0.0282346 * t) * t * cube(b);
    s.deflection = 2.1952 / (cube(t) * b);
    return s;
}

// Welded beam design, single-objective version with six constraints; the
// minimum-weld-size requirement is part of the box bounds.
inline std::pair<Objectives, Constraints> eval_wb4(const Eigen::VectorXd& x) {
    const double h = x[0], l = x[1], t = x[2], b = x[3];
    const auto s = welded_beam_stresses(h, l, t, b);
    const double f = 1.10471 * sq(h) * l + 0.04811 * t * b * (14.0 + l);
    Constraints c(6);
    c[0] = s.shear - 13600.0;
    c[1] = s.bending - 30000.0;
    c[2] = h - b;
    c[3] = 0.10471 * sq(h) + 0.04811 * t * b * (14.0 + l) - 5.0;
    c[4] = s.deflection - 0.25;
    c[5] = 6000.0 - s.buckling;
    return {vec({f}), c};
}

// ---------------------------------------------------------------------------
// Multi-objective suite
// ---------------------------------------------------------------------------

inline std::pair<Objectives, Constraints> eval_bnh(const Eigen::VectorXd& x) {
    Objectives f(2);
    f[0] = 4 * sq(x[0]) + 4 * sq(x[1]);
    f[1] = sq(x[0] - 5) + sq(x[1] - 5);
    Constraints c(2);
    c[0] = sq(x[0] - 5) + sq(x[1]) - 25.0;
    c[1] = 7.7 - sq(x[0] - 8) - sq(x[1] + 3);
    return {f, c};
}

inline std::pair<Objectives, Constraints> eval_srn(const Eigen::VectorXd& x) {
    Objectives f(2);
    f[0] = 2.0 + sq(x[0] - 2) + sq(x[1] - 1);
    f[1] = 9.0 * x[0] - sq(x[1] - 1);
    Constraints c(2);
    c[0] = sq(x[0]) + sq(x[1]) - 225.0;
    c[1] = x[0] - 3.0 * x[1] + 10.0;
    return {f, c};
}

inline std::pair<Objectives, Constraints> eval_tnk(const Eigen::VectorXd& x) {
    Objectives f(2);
    f[0] = x[0];
    f[1] = x[1];
    Constraints c(2);
    c[0] = -sq(x[0]) - sq(x[1]) + 1.0 + 0.1 * std::cos(16.0 * std::atan2(x[0], x[1]));
    c[1] = sq(x[0] - 0.5) + sq(x[1] - 0.5) - 0.5;
    return {f, c};
}

inline std::pair<Objectives, Constraints> eval_osy(const Eigen::VectorXd& x) {
    Objectives f(2);
    f[0] = -(25 * sq(x[0] - 2) + sq(x[1] - 2) + sq(x[2] - 1) + sq(x[3] - 4) + sq(x[4] - 1));
    f[1] = x.squaredNorm();
    Constraints c(6);
    c[0] = 2.0 - x[0] - x[1];
    c[1] = x[0] + x[1] - 6.0;
    c[2] = x[1] - x[0] - 2.0;
    c[3] = x[0] - 3.0 * x[1] - 2.0;
    c[4] = sq(x[2] - 3) + x[3] - 4.0;
    c[5] = 4.0 - sq(x[4] - 3) - x[5];
    return {f, c};
}

inline std::pair<Objectives, Constraints> eval_two_bar_truss(const Eigen::VectorXd& x) {
    const double a1 = x[0], a2 = x[1], y = x[2];
    const double stress_ac = 20.0 * std::sqrt(16.0 + sq(y)) / (y * a1);
    const double stress_bc = 80.0 * std::sqrt(1.0 + sq(y)) / (y * a2);
    Objectives f(2);
    f[0] = a1 * std::sqrt(16.0 + sq(y)) + a2 * std::sqrt(1.0 + sq(y));
    f[1] = std::max(stress_ac, stress_bc);
    return {f, vec({std::max(stress_ac, stress_bc) - 1e5})};
}

// Welded beam design, bi-objective version trading cost against deflection.
inline std::pair<Objectives, Constraints> eval_welded_beam(const Eigen::VectorXd& x) {
    const double h = x[0], l = x[1], t = x[2], b = x[3];
    const auto s = welded_beam_stresses(h, l, t, b);
    Objectives f(2);
    f[0] = 1.10471 * sq(h) * l + 0.04811 * t * b * (14.0 + l);
    f[1] = s.deflection;
    Constraints c(4);
    c[0] = s.shear - 13600.0;
    c[1] = s.bending - 30000.0;
    c[2] = h - b;
    c[3] = 6000.0 - s.buckling;
    return {f, c};
}

inline std::pair<Objectives, Constraints> eval_constr(const Eigen::VectorXd& x) {
    Objectives f(2);
    f[0] = x[0];
    f[1] = (1.0 + x[1]) / x[0];
    Constraints c(2);
    c[0] = 6.0 - 9.0 * x[0] - x[1];
    c[1] = 1.0 + x[1] - 9.0 * x[0];
    return {f, c};
}

// Water resource planning; objectives are scaled by their suprema over the
// search domain so that the tabulated reference point applies.
inline std::pair<Objectives, Constraints> eval_water(const Eigen::VectorXd& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2];
    Objectives f(5);
    f[0] = 106780.37 * (x2 + x3) + 61704.67;
    f[1] = 3000.0 * x1;
    f[2] = 305700.0 * 2289.0 * x2 / std::pow(0.06 * 2289.0, 0.65);
    f[3] = 250.0 * 2289.0 * std::exp(-39.75 * x2 + 9.9 * x3 + 2.74);
    f[4] = 25.0 * (1.39 / (x1 * x2) + 4940.0 * x3 - 80.0);

    // suprema of each objective over [0.01,0.45] x [0.01,0.10]^2
    static const double scale[5] = {
        106780.37 * 0.2 + 61704.67,
        3000.0 * 0.45,
        305700.0 * 2289.0 * 0.10 / std::pow(0.06 * 2289.0, 0.65),
        250.0 * 2289.0 * std::exp(-39.75 * 0.01 + 9.9 * 0.10 + 2.74),
        25.0 * (1.39 / (0.01 * 0.01) + 4940.0 * 0.10 - 80.0)};
    for (int i = 0; i < 5; ++i) f[i] /= scale[i];

    Constraints c(7);
    const double inv = 1.0 / (x1 * x2);
    c[0] = 0.00139 * inv + 4.94 * x3 - 0.08 - 1.0;
    c[1] = 0.000306 * inv + 1.082 * x3 - 0.0986 - 1.0;
    c[2] = 12.307 * inv + 49408.24 * x3 + 4051.02 - 50000.0;
    c[3] = 2.098 * inv + 8046.33 * x3 - 696.71 - 16000.0;
    c[4] = 2.138 * inv + 7883.39 * x3 - 705.04 - 10000.0;
    c[5] = 0.417 * x1 * x2 + 1721.26 * x3 - 136.54 - 2000.0;
    c[6] = 0.164 * inv + 631.13 * x3 - 54.48 - 550.0;
    return {f, c};
}

// ---------------------------------------------------------------------------
// Modified problems: sign-preserving logarithmic damping of the terms with
// extreme ranges.
// ---------------------------------------------------------------------------

inline double plog_pow(double z, double exponent) {
    const double damped = plog(z);
    // odd integer exponents keep the sign; fractional exponents only reach
    // nonnegative arguments here
    if (damped >= 0.0) return std::pow(damped, exponent);
    return -std::pow(-damped, exponent);
}

inline std::pair<Objectives, Constraints> eval_modified_g3mod(const Eigen::VectorXd& x) {
    const double f = -plog_pow(g3mod_product(x), 0.1);
    return {vec({f}), vec({x.squaredNorm() - 1.0})};
}

inline std::pair<Objectives, Constraints> eval_modified_g10(const Eigen::VectorXd& x) {
    double raw[6];
    g10_raw_constraints(x, raw);
    Constraints c(6);
    for (int j = 0; j < 3; ++j) c[j] = raw[j];
    for (int j = 3; j < 6; ++j) c[j] = plog_pow(raw[j], 7.0);
    return {vec({x[0] + x[1] + x[2]}), c};
}

inline std::pair<Objectives, Constraints> eval_modified_pvd4(const Eigen::VectorXd& x) {
    Constraints c(3);
    c[0] = -x[0] + 0.0193 * x[2];
    c[1] = -x[1] + 0.00954 * x[2];
    c[2] = plog_pow(pvd4_volume_constraint(x), 7.0);
    return {vec({pvd4_objective(x)}), c};
}

// ---------------------------------------------------------------------------
// Two-dimensional bi-objective illustration problem
// ---------------------------------------------------------------------------

inline std::pair<Objectives, Constraints> eval_toy(const Eigen::VectorXd& x) {
    Objectives f(2);
    f[0] = -sq(x[0] - 10.0) - sq(x[1] - 15.0);
    f[1] = -sq(x[0] + 5.0) - sq(x[1]);
    const double branin = sq(x[1] - 5.1 / (4.0 * sq(M_PI)) * sq(x[0]) + 5.0 / M_PI * x[0] - 6.0) +
                          10.0 * (1.0 - 1.0 / (8.0 * M_PI)) * std::cos(x[0]) + 10.0;
    return {f, vec({branin - 1.0})};
}

inline ProblemSpec make_mono(std::string name, std::vector<double> lo, std::vector<double> up,
                             int q, double gamma_pct, double best, double target,
                             std::pair<Objectives, Constraints> (*fn)(const Eigen::VectorXd&)) {
    ProblemSpec p;
    p.name = std::move(name);
    p.dim = static_cast<int>(lo.size());
    p.num_obj = 1;
    p.num_cons = q;
    p.x_low = Eigen::Map<Eigen::VectorXd>(lo.data(), static_cast<Eigen::Index>(lo.size()));
    p.x_upp = Eigen::Map<Eigen::VectorXd>(up.data(), static_cast<Eigen::Index>(up.size()));
    p.evaluator = fn;
    p.feasible_fraction_pct = gamma_pct;
    p.best_known = best;
    p.target = target;
    return p;
}

inline ProblemSpec make_multi(std::string name, std::vector<double> lo, std::vector<double> up,
                              int p_obj, int q, double gamma_pct, double ref_volume,
                              std::vector<double> ref_point,
                              std::pair<Objectives, Constraints> (*fn)(const Eigen::VectorXd&)) {
    ProblemSpec p;
    p.name = std::move(name);
    p.dim = static_cast<int>(lo.size());
    p.num_obj = p_obj;
    p.num_cons = q;
    p.x_low = Eigen::Map<Eigen::VectorXd>(lo.data(), static_cast<Eigen::Index>(lo.size()));
    p.x_upp = Eigen::Map<Eigen::VectorXd>(up.data(), static_cast<Eigen::Index>(up.size()));
    p.evaluator = fn;
    p.feasible_fraction_pct = gamma_pct;
    p.hv_ref_volume = ref_volume;
    p.hv_ref_point =
        Eigen::Map<Eigen::VectorXd>(ref_point.data(), static_cast<Eigen::Index>(ref_point.size()));
    return p;
}

}  // namespace detail

inline std::vector<ProblemSpec> list_problems(Suite suite) {
    using namespace detail;
    std::vector<ProblemSpec> out;
    switch (suite) {
        case Suite::mono: {
            std::vector<double> lo13(13, 0.0), up13(13, 1.0);
            for (int i = 9; i < 12; ++i) up13[i] = 100.0;
            out.push_back(make_mono("g1", lo13, up13, 9, 4e-4, -15.0, -14.85, eval_g1));
            out.push_back(make_mono("g3mod", std::vector<double>(20, 0.0),
                                    std::vector<double>(20, 1.0), 1, 1e-4, -0.693, -0.33,
                                    eval_g3mod));
            out.push_back(make_mono("g5mod", {0, 0, -0.55, -0.55}, {1200, 1200, 0.55, 0.55}, 5,
                                    8.7e-2, 5126.2, 5150.0, eval_g5mod));
            out.push_back(make_mono("g6", {13, 0}, {100, 100}, 2, 6.6e-3, -6961.8, -6800.0,
                                    eval_g6));
            out.push_back(make_mono("g7", std::vector<double>(10, -10.0),
                                    std::vector<double>(10, 10.0), 8, 1e-4, 24.3, 25.0, eval_g7));
            out.push_back(make_mono("g8", {0, 0}, {10, 10}, 2, 0.86, -0.0958, -0.09, eval_g8));
            out.push_back(make_mono("g9", std::vector<double>(7, -10.0),
                                    std::vector<double>(7, 10.0), 4, 0.52, 680.6, 1000.0,
                                    eval_g9));
            out.push_back(make_mono("g10", {100, 1000, 1000, 10, 10, 10, 10, 10},
                                    {10000, 10000, 10000, 1000, 1000, 1000, 1000, 1000}, 6, 7e-4,
                                    7049.4, 8000.0, eval_g10));
            out.push_back(make_mono("g13mod", {-2.3, -2.3, -3.2, -3.2, -3.2},
                                    {2.3, 2.3, 3.2, 3.2, 3.2}, 3, 4.5, 0.0035, 0.005,
                                    eval_g13mod));
            out.push_back(make_mono("g16", {704.4148, 68.6, 0, 193, 25},
                                    {906.3855, 288.88, 134.75, 287.0966, 84.1988}, 38, 1.3e-2,
                                    -1.916, -1.8, eval_g16));
            {
                std::vector<double> lo(9, -10.0), up(9, 10.0);
                lo[8] = 0.0;
                up[8] = 20.0;
                out.push_back(make_mono("g18", lo, up, 13, 2e-10, -0.866, -0.8, eval_g18));
            }
            out.push_back(make_mono("g19", std::vector<double>(15, 0.0),
                                    std::vector<double>(15, 10.0), 5, 3.4e-3, 32.66, 40.0,
                                    eval_g19));
            out.push_back(make_mono("g24", {0, 0}, {3, 4}, 2, 44.3, -5.5080, -5.0, eval_g24));
            out.push_back(make_mono("SR7", {2.6, 0.7, 17, 7.3, 7.3, 2.9, 5.0},
                                    {3.6, 0.8, 28, 8.3, 8.3, 3.9, 5.5}, 11, 9.3e-2, 2994.4,
                                    2995.0, eval_sr7));
            out.push_back(make_mono("PVD4", {0, 0, 0, 0}, {1, 1, 50, 240}, 3, 5.6e-1, 5804.3,
                                    6000.0, eval_pvd4));
            out.push_back(make_mono("WB4", {0.125, 0.1, 0.1, 0.1}, {10, 10, 10, 10}, 6, 5.6e-2,
                                    2.3813, 2.5, eval_wb4));
            break;
        }
        case Suite::multi: {
            out.push_back(make_multi("BNH", {0, 0}, {5, 3}, 2, 2, 93.6, 5249.0, {140, 50},
                                     eval_bnh));
            out.push_back(make_multi("SRN", {-20, -20}, {20, 20}, 2, 2, 16.1, 29281.0, {200, 50},
                                     eval_srn));
            out.push_back(make_multi("TNK", {0, 0}, {M_PI, M_PI}, 2, 2, 5.1, 0.6466, {1.2, 1.2},
                                     eval_tnk));
            out.push_back(make_multi("OSY", {0, 0, 1, 0, 1, 0}, {10, 10, 5, 6, 5, 10}, 2, 6, 3.2,
                                     16169.0, {0, 80}, eval_osy));
            out.push_back(make_multi("TwoBarTruss", {0, 0, 1}, {0.01, 0.01, 3}, 2, 1, 86.3,
                                     4495.0, {0.06, 1e5}, eval_two_bar_truss));
            out.push_back(make_multi("WeldedBeam", {0.125, 0.1, 0.1, 0.125}, {5, 10, 10, 5}, 2, 4,
                                     45.5, 0.4228, {50, 0.01}, eval_welded_beam));
            out.push_back(make_multi("CONSTR", {0.1, 0}, {1, 5}, 2, 2, 52.5, 3.8152, {1, 9},
                                     eval_constr));
            out.push_back(make_multi("WATER", {0.01, 0.01, 0.01}, {0.45, 0.10, 0.10}, 5, 7, 92.0,
                                     0.5138, {1, 1, 1, 1.6, 3.2}, eval_water));
            break;
        }
        case Suite::modified: {
            out.push_back(make_mono("modified-g3mod", std::vector<double>(20, 0.0),
                                    std::vector<double>(20, 1.0), 1, 1e-4,
                                    -std::pow(0.693, 0.1), -std::pow(0.33, 0.1),
                                    eval_modified_g3mod));
            out.push_back(make_mono("modified-g10", {100, 1000, 1000, 10, 10, 10, 10, 10},
                                    {10000, 10000, 10000, 1000, 1000, 1000, 1000, 1000}, 6, 7e-4,
                                    7049.4, 8000.0, eval_modified_g10));
            out.push_back(make_mono("modified-PVD4", {0, 0, 0, 0}, {1, 1, 50, 240}, 3, 5.6e-1,
                                    5804.3, 6000.0, eval_modified_pvd4));
            break;
        }
        case Suite::toy: {
            ProblemSpec p;
            p.name = "toy";
            p.dim = 2;
            p.num_obj = 2;
            p.num_cons = 1;
            p.x_low = detail::vec({-5, 0});
            p.x_upp = detail::vec({10, 15});
            p.evaluator = detail::eval_toy;
            out.push_back(std::move(p));
            break;
        }
    }
    return out;
}

inline ProblemSpec find_problem(const std::string& name) {
    for (Suite s : {Suite::mono, Suite::multi, Suite::modified, Suite::toy}) {
        for (auto& p : list_problems(s)) {
            if (p.name == name) return p;
        }
    }
    throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace bmoo

#endif
