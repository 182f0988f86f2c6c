#pragma once

// Command-line driver: form expressions, cache, subcommands, output.

#include "cyclelift/qseries.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace cyclelift::cli {

enum class Format { json, csv, pretty };

struct RunConfig {
    unsigned prec_bits = 96;
    long truncation = 200;
    int quad_degree = 64;
    double tol = 1e-8;
    std::optional<std::filesystem::path> cache_dir;
    Format format = Format::json;
};

/// Disk cache of exact series, one JSON file per key named by its FNV-1a hash.
class SeriesCache {
public:
    explicit SeriesCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

    template <class Build>
    QSeries get(const std::string& key, Build&& build) const
    {
        if (auto hit = load(key)) return *hit;
        QSeries s = build();
        store(key, s);
        return s;
    }

    std::optional<QSeries> load(const std::string& key) const;
    void store(const std::string& key, const QSeries& s) const;

private:
    std::filesystem::path file_for(const std::string& key) const;
    std::optional<std::filesystem::path> dir_;
};

std::uint64_t fnv1a(const std::string& text);

/// Parses G<2k>, E<w>, Delta, j, f<w>_<m>, bol(<form>,<k>), products with
/// '*' and parentheses into a series with N coefficients.
QSeries parse_form(const std::string& text, long N, const SeriesCache& cache);

/// Entry point; returns the process exit code (0 pass, 1 identity failure,
/// 2 usage or input error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclelift::cli
