#pragma once

// Abel-summation partial sums D(s) = sum_{m<=s} sigma_{-1}(m) c(m) for
// s < p, their normalised maxima c_p = max_s |D(s)|/sqrt(p*s), and the
// scan constants C(M) = max c_p over primes p = 2,5 mod 9 below M.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gpv/char_sums.hpp"
#include "gpv/primes.hpp"

namespace gpv {

// sigma_{-1}(m) = sum_{k|m} 1/k for m = 1..n_max; index 0 unused.
inline std::vector<double> sigma_minus1_table(std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("sigma_minus1_table: n_max must be >= 1");
    std::vector<double> s(n_max + 1, 0.0);
    for (std::size_t k = 1; k <= n_max; ++k) {
        const double w = 1.0 / double(k);
        for (std::size_t m = k; m <= n_max; m += k) s[m] += w;
    }
    return s;
}

struct PartialSumRecord {
    u64 p = 0;
    Kind kind = Kind::main;
    double c_p = 0.0;   // max over 1 <= s < p of |D(s)|/sqrt(p*s)
    u64 argmax_s = 0;
    cdouble d_final{};  // D(p-1)
};

// Running scan of D(s) for s = 1..p-1 with compensated (Kahan) accumulation.
inline PartialSumRecord d_scan(const CharTable& table, const std::vector<double>& sigma) {
    const u64 p = table.p;
    if (sigma.size() < p)
        throw std::invalid_argument("d_scan: sigma table must cover m <= p-1");
    PartialSumRecord rec{p, table.kind, 0.0, 1, {}};
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    for (u64 s = 1; s < p; ++s) {
        const cdouble term = sigma[s] * table.values[s];
        double y = term.real() - cre;
        double t = re + y;
        cre = (t - re) - y;
        re = t;
        y = term.imag() - cim;
        t = im + y;
        cim = (t - im) - y;
        im = t;
        const double ratio = std::hypot(re, im) / std::sqrt(double(p) * double(s));
        if (ratio > rec.c_p) {
            rec.c_p = ratio;
            rec.argmax_s = s;
        }
    }
    rec.d_final = {re, im};
    return rec;
}

struct ConstantReport {
    u64 M = 0;
    Kind kind = Kind::main;
    double c_of_m = 0.0;
    u64 witness_p = 0;
    std::vector<PartialSumRecord> records;  // one per scanned prime, p ascending
};

struct partial_result_error : std::runtime_error {
    std::vector<u64> unprocessed;
    partial_result_error(const std::string& msg, std::vector<u64> missing)
        : std::runtime_error(msg), unprocessed(std::move(missing)) {}
};

// Scans primes p = classes mod 9 below M. Work items are independent; the
// reduction (max, tie broken towards smaller p) is order-independent, so the
// result does not depend on scheduling. Records already present in preload
// are reused; fresh ones are announced through on_record (serialised).
inline ConstantReport constant_scan(
    u64 M, Kind kind, unsigned workers,
    const std::map<u64, PartialSumRecord>* preload = nullptr,
    const std::function<void(const PartialSumRecord&)>& on_record = {},
    const std::vector<u64>& classes = {2, 5}) {
    if (M < 11) throw std::invalid_argument("constant_scan: M must be >= 11");
    if (workers < 1) workers = 1;
    const std::vector<u64> ps = primes_in_classes_mod9(M, classes);
    const std::vector<double> sigma = sigma_minus1_table(M);

    std::vector<PartialSumRecord> recs(ps.size());
    std::vector<char> done(ps.size(), 0);
    std::atomic<std::size_t> next{0};
    std::mutex emit_mutex;

    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= ps.size()) return;
            const u64 p = ps[i];
            if (preload) {
                auto it = preload->find(p);
                if (it != preload->end()) {
                    recs[i] = it->second;
                    done[i] = 1;
                    continue;
                }
            }
            PrimeModulus pm(p);
            recs[i] = d_scan(char_table(pm, kind), sigma);
            done[i] = 1;
            if (on_record) {
                std::lock_guard<std::mutex> lock(emit_mutex);
                on_record(recs[i]);
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::vector<u64> missing;
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (!done[i]) missing.push_back(ps[i]);
    if (!missing.empty())
        throw partial_result_error("constant_scan: unprocessed primes remain", missing);

    ConstantReport rep{M, kind, 0.0, 0, std::move(recs)};
    for (const auto& r : rep.records) {
        if (r.c_p > rep.c_of_m) {
            rep.c_of_m = r.c_p;
            rep.witness_p = r.p;
        }
    }
    return rep;
}

}  // namespace gpv
