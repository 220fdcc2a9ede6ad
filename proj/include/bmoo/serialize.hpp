#ifndef BMOO_SERIALIZE_HPP
#define BMOO_SERIALIZE_HPP

#include <json.hpp>

#include <sstream>
#include <string>

#include "bmoo/driver.hpp"

namespace bmoo {

inline nlohmann::json to_json(const Eigen::VectorXd& v) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

inline nlohmann::json to_json(const RunConfig& c) {
    return nlohmann::json{{"problem", c.problem},
                          {"budget", c.budget},
                          {"n_init", c.n_init},
                          {"m_x", c.m_x},
                          {"m_y", c.m_y},
                          {"nu", c.nu},
                          {"nu_x", c.nu_x},
                          {"lambda_obj", c.lambda_obj},
                          {"lambda_cons", c.lambda_cons},
                          {"seed", c.seed},
                          {"feas_tol", c.feas_tol},
                          {"factorial_density", c.factorial_density},
                          {"exact_single_objective", c.exact_single_objective},
                          {"mc_draws", c.mc_draws},
                          {"mh_sweeps_y", c.mh_sweeps_y},
                          {"mh_sweeps_x", c.mh_sweeps_x}};
}

inline nlohmann::json to_json(const RunRecord& record) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : record.entries) {
        nlohmann::json row{{"x", to_json(e.x)},    {"f", to_json(e.f)},
                           {"c", to_json(e.c)},    {"feasible", e.feasible},
                           {"elapsed_s", e.elapsed_s}};
        if (!std::isnan(e.ei_value)) row["ei"] = e.ei_value;
        if (e.bounds) {
            row["bounds"] = nlohmann::json{{"obj_low", to_json(e.bounds->obj_low)},
                                           {"obj_upp", to_json(e.bounds->obj_upp)},
                                           {"cons_low", to_json(e.bounds->cons_low)},
                                           {"cons_upp", to_json(e.bounds->cons_upp)}};
        }
        entries.push_back(std::move(row));
    }
    nlohmann::json out{{"schema_version", record.schema_version},
                       {"config", to_json(record.config)},
                       {"dim", record.dim},
                       {"num_obj", record.num_obj},
                       {"num_cons", record.num_cons},
                       {"entries", std::move(entries)},
                       {"first_feasible", record.first_feasible},
                       {"first_target", record.first_target}};
    if (!record.hv_fractions.empty()) out["hv_fractions"] = record.hv_fractions;
    return out;
}

inline std::string format_stat_cell(const BenchTargetStat& s) {
    std::ostringstream os;
    if (s.n_success == 0) {
        os << "- (-)";
        return os.str();
    }
    os.setf(std::ios::fixed);
    os.precision(1);
    os << s.mean << " (";
    if (std::isnan(s.sd)) {
        os << "-";
    } else {
        os << s.sd;
    }
    os << ")";
    return os.str();
}

/// Benchmark rows as CSV, one header row, mean (sd) cells with dashes where
/// no value can be calculated.
inline std::string bench_to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    if (rows.empty()) return "problem\n";
    os << "problem";
    for (const auto& [label, stat] : rows.front().stats) {
        os << ",n_success_" << label << ",evals_" << label;
    }
    os << "\n";
    for (const auto& row : rows) {
        os << row.problem;
        for (const auto& [label, stat] : row.stats) {
            os << "," << stat.n_success << ",\"" << format_stat_cell(stat) << "\"";
        }
        os << "\n";
    }
    return os.str();
}

/// Per-iteration particle coordinates for plotting.
inline std::string particle_dumps_to_csv(const RunRecord& record) {
    std::ostringstream os;
    os << "evaluation,kind,particle";
    int max_dim = 0;
    for (const auto& d : record.particle_dumps) {
        for (const auto& c : d.coords) max_dim = std::max(max_dim, static_cast<int>(c.size()));
    }
    for (int i = 0; i < max_dim; ++i) os << ",coord" << i;
    os << "\n";
    for (const auto& d : record.particle_dumps) {
        for (std::size_t k = 0; k < d.coords.size(); ++k) {
            os << d.evaluation_index << "," << d.kind << "," << k;
            for (int i = 0; i < d.coords[k].size(); ++i) os << "," << d.coords[k][i];
            for (int i = static_cast<int>(d.coords[k].size()); i < max_dim; ++i) os << ",";
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace bmoo

#endif
