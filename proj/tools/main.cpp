#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "cli/commands.hpp"
#include "cli/config.hpp"

int main(int argc, char** argv) {
    using namespace qgroupoid::cli;

    CLI::App app{"Finite groupoids, history path sums and the qubit propagator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    CommandOptions opt;
    std::size_t power = 0;
    std::size_t steps = 0;
    std::string semigroup;
    std::string partition;
    std::string state;

    app.add_option("-c,--config", config_path, "run configuration (key = value)")->required();
    app.add_option("--out", out_path, "write results here instead of standard output");
    auto* power_opt = app.add_option("--power", power, "also print U^N (propagator)");
    auto* steps_opt = app.add_option("--steps", steps, "override the configured step count");
    auto* semigroup_opt = app.add_option("--check-semigroup", semigroup, "verify P(A+B) = P(B) P(A) (pathsum)");
    auto* partition_opt = app.add_option("--partition", partition, "outcome blocks, e.g. x1,x2|x3,x4");
    auto* state_opt = app.add_option("--state", state, "initial amplitudes re,im;re,im in outcome order");

    const std::pair<const char*, const char*> commands[] = {
        {"validate", "check the groupoid axioms"},
        {"table", "print the composition table"},
        {"propagator", "build the qubit propagator and its unitarity residuals"},
        {"pathsum", "N-step path sum over histories"},
        {"sweep", "quantization scan over mu"},
        {"evolve", "evolve a state vector"},
        {"coarse-grain", "merge outcomes into blocks"},
    };
    for (const auto& [name, about] : commands) app.add_subcommand(name, about)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    if (*power_opt) opt.power = power;
    if (*steps_opt) opt.steps = steps;
    if (*semigroup_opt) opt.check_semigroup = semigroup;
    if (*partition_opt) opt.partition = partition;
    if (*state_opt) opt.state = state;

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const qgroupoid::Error& e) {
        std::cerr << "error: " << config_path << ": " << e.what() << '\n';
        return kInvalid;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    std::ostringstream buffer;
    const int code = run_command(command, cfg, opt, buffer, std::cerr);
    if (out_path.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return kInvalid;
        }
        file << buffer.str();
    }
    return code;
}
