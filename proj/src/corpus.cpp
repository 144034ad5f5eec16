#include <codeforest/source_parser.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace codeforest {

namespace fs = std::filesystem;

namespace {

struct FileOutcome {
    std::vector<ClassDecl> classes;
    std::optional<std::string> error;
};

FileOutcome parse_one(const SourceFile& src, std::uint32_t file_id) {
    FileOutcome out;
    try {
        const auto tokens = tokenize(src.bytes, file_id);
        out.classes = parse_unit(tokens);
    } catch (const Error& e) {
        out.error = fmt::format("{}: {}", to_string(e.kind()), e.what());
    }
    return out;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, fmt::format("cannot read '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

} // namespace

ParsedCorpus parse_sources(std::vector<SourceFile> sources, unsigned jobs) {
    std::sort(sources.begin(), sources.end(),
              [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });

    std::vector<FileOutcome> outcomes(sources.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(sources.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < sources.size(); ++i) {
            outcomes[i] = parse_one(sources[i], static_cast<std::uint32_t>(i));
        }
    } else {
        // Each worker writes only to the slot of the file it claimed.
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < sources.size(); i = next++) {
                    outcomes[i] = parse_one(sources[i], static_cast<std::uint32_t>(i));
                }
            });
        }
    }

    ParsedCorpus corpus;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (outcomes[i].error) {
            corpus.diagnostics.push_back({Severity::Error, sources[i].path, *outcomes[i].error});
            continue;
        }
        corpus.files.push_back({static_cast<std::uint32_t>(i), sources[i].path, std::move(outcomes[i].classes)});
    }
    if (sources.empty()) {
        corpus.diagnostics.push_back({Severity::Warning, "", "NoSourceFiles: no .java files found"});
    }
    return corpus;
}

ParsedCorpus parse_corpus(const fs::path& root, unsigned jobs) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw Error(ErrorKind::RootNotFound, fmt::format("source root '{}' not found", root.string()));
    }
    std::vector<SourceFile> sources;
    for (auto it = fs::recursive_directory_iterator(root, ec); !ec && it != fs::recursive_directory_iterator();
         it.increment(ec)) {
        if (!it->is_regular_file() || it->path().extension() != ".java") continue;
        SourceFile src;
        src.path = fs::relative(it->path(), root).generic_string();
        src.bytes = read_file(it->path());
        sources.push_back(std::move(src));
    }
    if (ec) throw Error(ErrorKind::Io, fmt::format("cannot walk '{}': {}", root.string(), ec.message()));
    return parse_sources(std::move(sources), jobs);
}

} // namespace codeforest
