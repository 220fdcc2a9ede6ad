#include <CLI11.hpp>

#include <bmoo/bmoo.hpp>
#include <bmoo/serialize.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << content;
}

int run_command(const bmoo::RunConfig& config, const std::string& out_path,
                const std::string& particles_path) {
    const auto record = bmoo::run_bmoo(config);
    const std::string json = bmoo::to_json(record).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << json;
    } else {
        write_file(out_path, json);
        std::cout << "run written to " << out_path << "\n";
    }
    if (!particles_path.empty()) {
        write_file(particles_path, bmoo::particle_dumps_to_csv(record));
        std::cout << "particles written to " << particles_path << "\n";
    }
    std::cout << "first feasible: " << record.first_feasible
              << "  first target: " << record.first_target << "\n";
    if (!record.hv_fractions.empty()) {
        std::cout << "final hypervolume fraction: " << record.hv_fractions.back() << "\n";
    }
    return 0;
}

int bench_command(const std::string& suite_name, int repeats, int budget, int jobs,
                  const bmoo::RunConfig& base, const std::string& out_dir) {
    const auto suite = bmoo::suite_from_string(suite_name);
    bmoo::RunConfig config = base;
    config.budget = budget;
    const auto rows = bmoo::bench(suite, repeats, budget, jobs, config);
    const std::string csv = bmoo::bench_to_csv(rows);
    if (out_dir.empty()) {
        std::cout << csv;
    } else {
        std::filesystem::create_directories(out_dir);
        const std::string path = out_dir + "/" + suite_name + "_results.csv";
        write_file(path, csv);
        std::cout << "results written to " << path << "\n";
    }
    return 0;
}

int list_command() {
    std::cout << "name,suite,d,p,q,best,target,ref_point,ref_volume\n";
    const char* names[] = {"mono", "multi", "modified", "toy"};
    const bmoo::Suite suites[] = {bmoo::Suite::mono, bmoo::Suite::multi, bmoo::Suite::modified,
                                  bmoo::Suite::toy};
    for (int s = 0; s < 4; ++s) {
        for (const auto& p : bmoo::list_problems(suites[s])) {
            std::cout << p.name << "," << names[s] << "," << p.dim << "," << p.num_obj << ","
                      << p.num_cons << ",";
            if (p.best_known) std::cout << *p.best_known;
            std::cout << ",";
            if (p.target) std::cout << *p.target;
            std::cout << ",";
            if (p.hv_ref_point) {
                std::cout << "\"[";
                for (int i = 0; i < p.hv_ref_point->size(); ++i) {
                    std::cout << (i ? " " : "") << (*p.hv_ref_point)[i];
                }
                std::cout << "]\"";
            }
            std::cout << ",";
            if (p.hv_ref_volume) std::cout << *p.hv_ref_volume;
            std::cout << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian constrained single- and multi-objective optimization"};
    app.require_subcommand(1);

    bmoo::RunConfig config;
    std::string out_path, particles_path, suite_name = "mono", out_dir;
    int repeats = 10, jobs = 1;
    bool no_exact = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", config.seed, "base random seed");
        cmd->add_option("--m-x", config.m_x, "candidate particles");
        cmd->add_option("--m-y", config.m_y, "output-space particles");
        cmd->add_option("--nu", config.nu, "splitting survival fraction");
        cmd->add_option("--nu-x", config.nu_x, "candidate ESS fraction");
        cmd->add_option("--n-init", config.n_init, "initial design size (default 3d)");
        cmd->add_option("--lambda-obj", config.lambda_obj, "objective range inflation");
        cmd->add_option("--lambda-cons", config.lambda_cons, "constraint range inflation");
        cmd->add_option("--feas-tol", config.feas_tol, "feasibility reporting tolerance");
        cmd->add_option("--mc-draws", config.mc_draws, "draws per improvement estimate");
        cmd->add_flag("--factorial-density", config.factorial_density,
                      "tilt the candidate density by K! for many-constraint search");
        cmd->add_flag("--no-exact-single-objective", no_exact,
                      "force the particle estimate in the single-objective case");
    };

    auto* run = app.add_subcommand("run", "one optimization run");
    run->add_option("--problem", config.problem, "problem name")->required();
    run->add_option("--budget", config.budget, "total evaluations")->required();
    run->add_option("--out", out_path, "run record (JSON)");
    run->add_option("--particles-out", particles_path, "particle coordinates (CSV)");
    run->add_flag("--dump-particles", config.dump_particles,
                  "keep per-iteration particle snapshots");
    add_common(run);

    auto* bench = app.add_subcommand("bench", "repeated runs over a suite");
    bench->add_option("--suite", suite_name, "mono | multi | modified | toy")->required();
    bench->add_option("--repeats", repeats, "runs per problem")->required();
    int bench_budget = 0;
    bench->add_option("--budget", bench_budget, "total evaluations per run")->required();
    bench->add_option("--jobs", jobs, "concurrent runs");
    bench->add_option("--out", out_dir, "output directory for CSV results");
    add_common(bench);

    auto* list = app.add_subcommand("list-problems", "print the problem metadata");

    CLI11_PARSE(app, argc, argv);
    config.exact_single_objective = !no_exact;

    try {
        if (run->parsed()) {
            if (!particles_path.empty()) config.dump_particles = true;
            return run_command(config, out_path, particles_path);
        }
        if (bench->parsed()) {
            return bench_command(suite_name, repeats, bench_budget, jobs, config, out_dir);
        }
        if (list->parsed()) return list_command();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
