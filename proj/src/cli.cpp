#include "physarum/cli.hpp"

#include "physarum/config.hpp"
#include "physarum/output.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace physarum {

namespace {

void print_summary(const RunRecord& record, const std::filesystem::path& dir, std::ostream& out)
{
    const auto& s = record.summary;
    out << "output: " << dir.string() << '\n';
    out << "contrast_peak: ";
    if (s.contrast_peak) {
        out << *s.contrast_peak << " at step " << *s.contrast_peak_step;
    } else {
        out << "n/a";
    }
    out << '\n';
    out << "baseline_cv: ";
    if (s.baseline_cv) {
        out << *s.baseline_cv;
    } else {
        out << "n/a";
    }
    out << '\n';
    out << "recovery_step: ";
    if (s.recovery_step) {
        out << *s.recovery_step;
    } else {
        out << "none";
    }
    out << '\n';
    out << "onset_columns:";
    for (const int c : s.onset_columns) {
        out << ' ' << c;
    }
    out << '\n';
}

int run_and_write(ExperimentConfig config, std::optional<std::uint64_t> seed, const std::string& out_dir,
                  std::ostream& out)
{
    if (seed) {
        config.seed = *seed;
    }
    require_valid(config);
    const RunRecord record = run(config);
    write_output_bundle(record, out_dir);
    print_summary(record, out_dir, out);
    return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Slime-mould particle simulator: lateral inhibition / activation experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "./out";
    std::optional<std::uint64_t> seed;
    std::string preset_name;

    auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a config file");
    run_cmd->add_option("--config", config_path, "Config file")->required();
    run_cmd->add_option("--seed", seed, "Override the config seed");
    run_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

    auto* preset_cmd = app.add_subcommand("preset", "Run a built-in experiment");
    preset_cmd->add_option("name", preset_name, "li (attractant) or la (simulated light)")
        ->required()
        ->check(CLI::IsMember({"li", "la"}));
    preset_cmd->add_option("--seed", seed, "Override the default seed");
    preset_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

    auto* validate_cmd = app.add_subcommand("validate", "Check a config file and list every violation");
    validate_cmd->add_option("--config", config_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    try {
        if (*run_cmd) {
            return run_and_write(parse_config(config_path), seed, out_dir, out);
        }
        if (*preset_cmd) {
            return run_and_write(preset_name == "li" ? preset_li() : preset_la(), seed, out_dir, out);
        }
        if (*validate_cmd) {
            const auto config = parse_config_unchecked(config_path);
            const auto violations = validate(config);
            if (violations.empty()) {
                out << "ok\n";
                return kExitOk;
            }
            for (const auto& v : violations) {
                err << v.code << ": " << v.message << '\n';
            }
            return kExitConfigError;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitConfigError;
}

}  // namespace physarum
