#pragma once

// Append-only CSV cache of per-prime scan records, keyed by (p, kind) and
// guarded by a code-version tag: a record is reused only when its tag
// matches the current build's algorithm fingerprint. Corrupt rows are
// skipped with a warning and recomputed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "gpv/partial_sums.hpp"

namespace gpv {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fingerprint of everything the cached numbers depend on: conventions and
// the scan algorithm. Bump on any change that can alter c_p values.
inline constexpr const char* kCodeVersion =
    "gpv1;eps=least-nonresidue;gamma=first-noncube;kernel=e(+mb/p)";

struct CacheRecord {
    u64 p;
    Kind kind;
    double c_p;
    u64 argmax_s;
    std::string code_version;
};

inline std::filesystem::path cache_file(const std::filesystem::path& dir, Kind kind) {
    return dir / (std::string("constants_") + kind_name(kind) + ".csv");
}

inline std::map<u64, PartialSumRecord> cache_load(const std::filesystem::path& dir, Kind kind) {
    std::map<u64, PartialSumRecord> out;
    std::ifstream in(cache_file(dir, kind));
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string p_s, kind_s, cp_s, s_s, ver_s;
        if (!std::getline(row, p_s, ',') || !std::getline(row, kind_s, ',') ||
            !std::getline(row, cp_s, ',') || !std::getline(row, s_s, ',') ||
            !std::getline(row, ver_s)) {
            std::fprintf(stderr, "cache: skipping corrupt row: %s\n", line.c_str());
            continue;
        }
        if (ver_s != kCodeVersion || kind_s != kind_name(kind)) continue;
        try {
            PartialSumRecord rec;
            rec.p = std::stoull(p_s);
            rec.kind = kind;
            rec.c_p = std::stod(cp_s);
            rec.argmax_s = std::stoull(s_s);
            out[rec.p] = rec;
        } catch (const std::exception&) {
            std::fprintf(stderr, "cache: skipping corrupt row: %s\n", line.c_str());
        }
    }
    return out;
}

inline void cache_store(const std::filesystem::path& dir, const PartialSumRecord& rec) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(cache_file(dir, rec.kind), std::ios::app);
    if (!out) throw io_error("cache_store: cannot open cache file for append");
    char buf[128];
    std::snprintf(buf, sizeof buf, "%llu,%s,%.17g,%llu,",
                  static_cast<unsigned long long>(rec.p), kind_name(rec.kind), rec.c_p,
                  static_cast<unsigned long long>(rec.argmax_s));
    out << buf << kCodeVersion << '\n';
    if (!out) throw io_error("cache_store: write failed");
}

}  // namespace gpv
