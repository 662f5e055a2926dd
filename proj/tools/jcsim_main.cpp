#include "jcsim/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Two-atom single-mode cavity simulator: entanglement dynamics, "
                 "photon statistics and Wigner distributions from a declarative config"};

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    int threads = 1;

    app.add_option("--config", config_path, "scenario config file")->required();
    app.add_option("--out", out_dir, "output directory (default $JCSIM_OUT_DIR or ./out)");
    app.add_option("--override", overrides, "section.key=value, repeatable");
    app.add_option("--threads", threads, "parallel workers across sweep points");

    CLI11_PARSE(app, argc, argv);

    if (out_dir.empty()) {
        const char* env = std::getenv("JCSIM_OUT_DIR");
        out_dir = env ? env : "out";
    }

    try {
        jcsim::ConfigMap config = jcsim::parse_config_file(config_path);
        for (const auto& kv : overrides)
            jcsim::apply_override(config, kv);
        const jcsim::Scenario scenario = jcsim::scenario_from_config(config);
        if (scenario.sweep)
            jcsim::run_sweep(scenario, out_dir, threads);
        else
            jcsim::run_scenario(scenario, out_dir);
    } catch (const jcsim::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const jcsim::TruncationError& e) {
        std::cerr << "truncation failure: " << e.what() << "\n";
        return 3;
    } catch (const jcsim::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
