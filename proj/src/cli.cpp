#include <codeforest/cli.hpp>
#include <codeforest/error.hpp>
#include <codeforest/exporters.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <ostream>
#include <thread>

namespace codeforest {

namespace {

constexpr int kOk = 0;
constexpr int kModelError = 1;
constexpr int kUsageError = 2;

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

unsigned resolve_jobs(unsigned jobs) {
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
}

void report_diagnostics(const ParsedCorpus& corpus, std::ostream& err) {
    for (const auto& d : corpus.diagnostics) {
        err << (d.severity == Severity::Error ? "error: " : "warning: ");
        if (!d.path.empty()) err << d.path << ": ";
        err << d.message << '\n';
    }
}

// Parses and analyses the corpus; Error exceptions propagate to the caller.
CodeModel load_model(const std::filesystem::path& root, unsigned jobs, std::ostream& err) {
    const auto corpus = parse_corpus(root, resolve_jobs(jobs));
    report_diagnostics(corpus, err);
    return analyze(corpus);
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::RootNotFound:
    case ErrorKind::UnknownKey:
    case ErrorKind::NonPositiveValue:
    case ErrorKind::ConfigSyntax: return kUsageError;
    default: return kModelError;
    }
}

int cmd_analyze(const std::filesystem::path& root, const std::filesystem::path& report, unsigned jobs,
                std::ostream& out, std::ostream& err) {
    const auto model = load_model(root, jobs, err);
    const auto metrics = compute_metrics(model);
    write_file(report, export_report(model, metrics).bytes);
    std::uint64_t loc = 0;
    for (const auto& c : metrics.classes) loc += c.loc;
    out << fmt::format("classes={} methods={} loc={} inheritance={}\n", model.classes.size(), model.method_count(),
                       loc, model.inheritance_edges.size());
    return kOk;
}

int cmd_render(const std::filesystem::path& root, const std::filesystem::path& output, const std::string& format,
               const std::optional<std::filesystem::path>& config_path, std::optional<std::uint64_t> seed,
               unsigned jobs, std::ostream& err) {
    Config cfg = config_path ? load_config(*config_path) : Config{};
    if (seed) cfg.layout.seed = *seed;

    const auto model = load_model(root, jobs, err);
    const auto metrics = compute_metrics(model);
    const auto layout = layout_forest(model, cfg.layout);
    const auto scene = build_scene(model, metrics, layout, cfg.visual, cfg.palette);

    if (format == "gltf") {
        write_file(output, export_gltf(scene).bytes);
    } else if (format == "mel") {
        write_file(output, export_mel(scene).bytes);
    } else {
        auto mtl_path = output;
        mtl_path.replace_extension(".mtl");
        const auto [obj, mtl] = export_obj(scene, mtl_path.filename().string());
        write_file(output, obj.bytes);
        write_file(mtl_path, mtl.bytes);
    }
    return kOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Renders a Java code base as a 3D forest of class trees on package islands.", "codeforest"};
    app.require_subcommand(1);

    unsigned jobs = 0;
    std::string root;

    std::string report;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute metrics and write the JSON report");
    analyze_cmd->add_option("root", root, "Corpus root directory")->required();
    analyze_cmd->add_option("--report", report, "Report output file")->required();
    analyze_cmd->add_option("--jobs", jobs, "Parser threads (0 = hardware concurrency)");

    std::string output;
    std::string format = "gltf";
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    auto* render_cmd = app.add_subcommand("render", "Render the forest scene");
    render_cmd->add_option("root", root, "Corpus root directory")->required();
    render_cmd->add_option("-o,--output", output, "Scene output file")->required();
    render_cmd->add_option("--format", format, "gltf, obj or mel")
        ->check(CLI::IsMember({"gltf", "obj", "mel"}));
    render_cmd->add_option("--config", config, "Parameter file (key = value)");
    render_cmd->add_option("--seed", seed, "Layout seed; overrides the config file");
    render_cmd->add_option("--jobs", jobs, "Parser threads (0 = hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(root, report, jobs, out, err);
        std::optional<std::filesystem::path> config_path;
        if (config) config_path = *config;
        return cmd_render(root, output, format, config_path, seed, jobs, err);
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e);
    }
}

} // namespace codeforest
