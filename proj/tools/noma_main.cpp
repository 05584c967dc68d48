#include "noma/config.hpp"
#include "noma/errors.hpp"
#include "noma/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Two-user downlink NOMA with blind SIC classification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;

    for (const char* name : {"fig7", "fig8", "fig9", "fig10", "validate"}) {
        auto* sub = app.add_subcommand(name, std::string("run ") + name);
        sub->add_option("--config", config_path, "flat key = value config file");
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--override", overrides, "key=value, applied after the config file");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const auto* sub = app.get_subcommands().front();
        const auto experiment = noma::parse_experiment(sub->get_name());
        if (sub->count("--seed"))
            overrides.push_back("seed=" + std::to_string(seed));
        const auto cfg = noma::load_config(experiment, config_path, overrides);
        const auto result = noma::run_experiment(cfg);
        noma::write_outputs(result, out_dir);
        if (!result.report.empty())
            std::cout << result.report;
        std::cout << "wrote " << out_dir << "/" << result.name << ".csv\n";
        return result.exit_code;
    } catch (const noma::ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
