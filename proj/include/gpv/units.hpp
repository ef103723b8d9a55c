#pragma once

// Numerical evaluation of the Siegel-unit products via truncated
// q-expansions. With w = q^{1/p},
//   log R       = -6 sum_{m !== 0 (p)} w^m sigma_{-1}(m) c(m)
//                 + (4(p+1)/p) sum_{n !== 0 (p)} sum_k q^{nk}/k
//   log R_gamma = -6 sum_{m !== 0 (p)} w^m sigma_{-1}(m) c_gamma(m)
//                 - (2(p+1)/p) sum_{n !== 0 (p)} sum_k q^{nk}/k
// and log|U| = Ord_q(U) log|q| + 3 log p + log|R|. The inner k-sums are the
// -log(1-q^n) series and are kept in closed form.

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gpv/char_sums.hpp"
#include "gpv/partial_sums.hpp"

namespace gpv {

struct insufficient_truncation : std::runtime_error {
    double tail_bound;
    insufficient_truncation(const std::string& msg, double tail)
        : std::runtime_error(msg), tail_bound(tail) {}
};

struct Rational {
    i64 num;
    i64 den;  // > 0, gcd(num, den) = 1

    double value() const { return double(num) / double(den); }
};

inline Rational make_rational(i64 num, i64 den) {
    if (den < 0) { num = -num; den = -den; }
    const i64 g = std::gcd(num < 0 ? -num : num, den);
    return {num / g, den / g};
}

// Ord_q(U) = (p^2 - 1)/(6p).
inline Rational ord_q_U(u64 p) {
    if (p % 3 != 2) throw unsupported_congruence("ord_q_U: requires p = 2 mod 3");
    return make_rational(i64(p) * i64(p) - 1, 6 * i64(p));
}

// Ord_q(U o gamma) = -(p^2 - 1)/(12p).
inline Rational ord_q_U_gamma(u64 p) {
    if (p % 3 != 2) throw unsupported_congruence("ord_q_U_gamma: requires p = 2 mod 3");
    return make_rational(-(i64(p) * i64(p) - 1), 12 * i64(p));
}

struct UnitEvaluation {
    u64 p;
    cdouble tau;
    u64 truncation;   // terms with w-exponent > N dropped
    cdouble log_R;
    double tail_bound;  // p^2 r^{N+1} / (1-r)^2 with r = |q|^{1/p}
};

// Truncated series for log R (kind = main) or log R_gamma. For real q the
// kernel uses the real p-th root, so negative q gets w = -|q|^{1/p}
// (the gamma-shifted domain convention). N = 0 selects ceil(40 p / x).
inline UnitEvaluation eval_log_R(const PrimeModulus& pm, cdouble tau, Kind kind,
                                 u64 N = 0, const CharTable* table = nullptr) {
    const double pi = std::numbers::pi;
    const u64 p = pm.p;
    if (tau.imag() < 1.0)
        throw std::domain_error("eval_log_R: requires Im tau >= 1");
    const double x = 2.0 * pi * tau.imag();  // |log|q||
    if (N == 0) N = static_cast<u64>(std::ceil(40.0 * double(p) / x));

    const double r = std::exp(-x / double(p));
    const double tail = double(p) * double(p) * std::pow(r, double(N + 1)) /
                        ((1.0 - r) * (1.0 - r));
    if (tail > 1e-8)
        throw insufficient_truncation("eval_log_R: truncation tail above 1e-8", tail);

    cdouble q = std::exp(cdouble(0.0, 2.0 * pi) * tau);
    if (std::abs(q.imag()) <= 1e-12 * std::abs(q)) q = cdouble(q.real(), 0.0);
    cdouble w;
    if (q.imag() == 0.0 && q.real() < 0.0)
        w = cdouble(-std::pow(-q.real(), 1.0 / double(p)), 0.0);
    else if (q.imag() == 0.0)
        w = cdouble(std::pow(q.real(), 1.0 / double(p)), 0.0);
    else
        w = std::exp(cdouble(0.0, 2.0 * pi) * tau / double(p));

    CharTable local;
    if (!table) {
        local = char_table(pm, kind);
        table = &local;
    }
    const std::vector<double> sigma = sigma_minus1_table(N);

    cdouble series = 0.0;
    cdouble wm = 1.0;
    for (u64 m = 1; m <= N; ++m) {
        wm *= w;
        if (m % p == 0) continue;
        series += wm * sigma[m] * table->values[m % p];
    }
    cdouble correction = 0.0;
    cdouble qn = 1.0;
    for (u64 n = 1; n <= N / p; ++n) {
        qn *= q;
        if (n % p == 0) continue;
        correction -= std::log(cdouble(1.0, 0.0) - qn);
    }
    const double coef = kind == Kind::main ? 4.0 * double(p + 1) / double(p)
                                           : -2.0 * double(p + 1) / double(p);
    return {p, tau, N, -6.0 * series + coef * correction, tail};
}

struct UnitStructureSample {
    double im_tau;
    double log_abs_R;
    double log_abs_U;
    double const_term;  // log|U| - Ord_q(U) log|q|, tends to 3 log p
};

struct UnitStructureReport {
    u64 p;
    std::vector<UnitStructureSample> samples;
    std::vector<double> slopes;  // finite differences of log|U| vs log|q|
    bool converged;
};

// Evaluates log|U| = Ord_q(U) log|q| + 3 log p + log|R| across the given
// heights and checks the two structural facts: the constant term tends to
// 3 log p and the log|q|-slope tends to Ord_q(U).
inline UnitStructureReport verify_U_structure(const PrimeModulus& pm,
                                              const std::vector<double>& im_tau_list) {
    if (im_tau_list.size() < 2)
        throw std::invalid_argument("verify_U_structure: need at least two heights");
    for (double t : im_tau_list)
        if (t < 5.0) throw std::domain_error("verify_U_structure: heights must be >= 5");
    const double ord = ord_q_U(pm.p).value();
    const double const_expected = 3.0 * std::log(double(pm.p));
    const CharTable table = char_table(pm, Kind::main);

    UnitStructureReport rep{pm.p, {}, {}, true};
    for (double t : im_tau_list) {
        const double logq = -2.0 * std::numbers::pi * t;
        const UnitEvaluation ev = eval_log_R(pm, cdouble(0.0, t), Kind::main, 0, &table);
        const double log_abs_R = ev.log_R.real();
        const double log_abs_U = ord * logq + const_expected + log_abs_R;
        rep.samples.push_back({t, log_abs_R, log_abs_U, log_abs_U - ord * logq});
    }
    for (std::size_t i = 1; i < rep.samples.size(); ++i) {
        const double dlogq = -2.0 * std::numbers::pi *
                             (rep.samples[i].im_tau - rep.samples[i - 1].im_tau);
        rep.slopes.push_back((rep.samples[i].log_abs_U - rep.samples[i - 1].log_abs_U) / dlogq);
    }
    const double const_err = std::abs(rep.samples.back().const_term - const_expected);
    double slope_err = 0.0;
    for (double s : rep.slopes) slope_err = std::max(slope_err, std::abs(s - ord) / ord);
    rep.converged = const_err < 1e-6 && slope_err < 1e-4;
    return rep;
}

}  // namespace gpv
