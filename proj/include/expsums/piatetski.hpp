#ifndef EXPSUMS_PIATETSKI_HPP
#define EXPSUMS_PIATETSKI_HPP

// Piatetski-Shapiro machinery: enumeration of n with floor(n^c) prime, the
// exact counting identity relating those n to bracket differences, the
// saw-tooth decomposition, and the asymptotic reports for coefficient sums
// over Piatetski-Shapiro primes.
//
// Floors of n^c are the silent corruption hazard here: a single mis-floored
// value skews every downstream statistic.  Powers are evaluated in
// binary128 and any value within 1e-9 of an integer is re-evaluated with
// 256-bit MPFR before the floor is trusted.

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "expsums/arith.hpp"
#include "expsums/eigenforms.hpp"
#include "expsums/errors.hpp"
#include "expsums/highprec.hpp"

namespace expsums {

struct PSConfig {
    double c = 1.05;     // exponent, 1 <= c < 12/11 (c = 1 is a diagnostic mode)
    std::uint64_t N = 0; // enumerate n <= N

    double gamma() const { return 1.0 / c; }

    void validate() const {
        if (!(c >= 1.0 && c < 12.0 / 11.0))
            throw std::invalid_argument("PSConfig: c must lie in [1, 12/11)");
        if (N < 1) throw std::invalid_argument("PSConfig: N >= 1 required");
    }
};

struct PSRecord {
    std::uint64_t n = 0;
    std::uint64_t p = 0; // floor(n^c)
    bool is_prime = false;
};

namespace detail {

// floor(base^expo) for integer base, with binary128 evaluation and MPFR
// escalation when the power lands near an integer.
inline std::uint64_t floor_pow_verified(std::uint64_t base, double expo) {
    if (base <= 1) return base; // 0 and 1 are fixed points of every power
    float128 y = powq(static_cast<float128>(base), static_cast<float128>(expo));
    float128 fl = floorq(y);
    float128 dist = y - fl;
    if (dist > 1e-9 && dist < 1 - 1e-9) return static_cast<std::uint64_t>(fl);

    // escalate: 256-bit evaluation
    mpfr_t b, e, r;
    mpfr_init2(b, 256);
    mpfr_init2(e, 256);
    mpfr_init2(r, 256);
    mpfr_set_ui(b, static_cast<unsigned long>(base), MPFR_RNDN);
    mpfr_set_d(e, expo, MPFR_RNDN);
    mpfr_pow(r, b, e, MPFR_RNDN);
    mpfr_t flr, diff;
    mpfr_init2(flr, 256);
    mpfr_init2(diff, 256);
    mpfr_floor(flr, r);
    mpfr_sub(diff, r, flr, MPFR_RNDN);
    double d = mpfr_get_d(diff, MPFR_RNDN);
    std::uint64_t result = static_cast<std::uint64_t>(mpfr_get_ui(flr, MPFR_RNDZ));
    mpfr_clears(b, e, r, flr, diff, static_cast<mpfr_ptr>(nullptr));
    if (d < 1e-60 || d > 1 - 1e-60)
        throw internal_consistency_error("floor_pow_verified: ambiguous floor at base " +
                                         std::to_string(base));
    return result;
}

inline std::uint64_t ceil_pow_verified(std::uint64_t base, double expo) {
    if (base <= 1) return base;
    // base^expo is non-integral whenever floor_pow_verified succeeds
    return floor_pow_verified(base, expo) + 1;
}

} // namespace detail

// All n <= N with floor(n^c) prime, ascending.
inline std::vector<PSRecord> ps_enumerate(const PSConfig& cfg) {
    cfg.validate();
    std::vector<PSRecord> hits;
    for (std::uint64_t n = 1; n <= cfg.N; ++n) {
        std::uint64_t p = cfg.c == 1.0 ? n : detail::floor_pow_verified(n, cfg.c);
        if (is_prime(p)) hits.push_back({n, p, true});
    }
    return hits;
}

struct CountingIdentityReport {
    std::int64_t max_discrepancy_interior = 0;
    std::uint64_t interior_checked = 0;
    std::uint64_t boundary_flagged = 0; // primes clipped by n <= N (the O(N^eps) edge)
};

// For every prime p <= N^c, compares #{n <= N : floor(n^c) = p} against
// floor(-p^gamma) - floor(-(p+1)^gamma).  Interior primes (those whose full
// n-window fits below N) must agree exactly.
inline CountingIdentityReport counting_identity_check(const PSConfig& cfg) {
    cfg.validate();
    CountingIdentityReport rep;
    const double g = cfg.gamma();
    std::uint64_t pmax = cfg.c == 1.0 ? cfg.N : detail::floor_pow_verified(cfg.N, cfg.c);

    // counts by enumeration
    std::vector<std::uint32_t> count(pmax + 2, 0);
    for (std::uint64_t n = 1; n <= cfg.N; ++n) {
        std::uint64_t p = cfg.c == 1.0 ? n : detail::floor_pow_verified(n, cfg.c);
        if (p <= pmax) ++count[p];
    }

    for (std::uint64_t p : primes_in(1, pmax).primes) {
        // bracket formula: ceil((p+1)^gamma) - ceil(p^gamma)
        std::uint64_t lo = cfg.c == 1.0 ? p : detail::ceil_pow_verified(p, g);
        std::uint64_t hi = cfg.c == 1.0 ? p + 1 : detail::ceil_pow_verified(p + 1, g);
        std::int64_t bracket = static_cast<std::int64_t>(hi) - static_cast<std::int64_t>(lo);
        bool interior = hi <= cfg.N + 1; // full window [lo, hi) fits below N
        std::int64_t diff = static_cast<std::int64_t>(count[p]) - bracket;
        if (interior) {
            ++rep.interior_checked;
            rep.max_discrepancy_interior =
                std::max(rep.max_discrepancy_interior, diff < 0 ? -diff : diff);
        } else {
            ++rep.boundary_flagged;
        }
    }
    return rep;
}

// psi(x) = x - [x] - 1 (saw tooth, mean -1/2 shifted by the constant -1/2
// relative to the conventional normalization; the constant cancels in the
// telescoped differences this feeds).
inline double sawtooth(double x) { return x - std::floor(x) - 1.0; }

// Fourier partial sum of the same function with truncation J:
//   psi_J(x) = -1/2 - sum_{j<=J} sin(2 pi j x) / (pi j)
inline double sawtooth_fourier(double x, int J) {
    if (J < 1) throw std::invalid_argument("sawtooth_fourier: J >= 1 required");
    double s = -0.5;
    for (int j = 1; j <= J; ++j) s -= std::sin(kTwoPi * j * x) / (M_PI * j);
    return s;
}

struct Theorem3Report {
    double lhs = 0;  // sum over n <= N with floor(n^c) prime of a_{floor(n^c)}
    double main = 0; // sum over p <= N^c of ((p+1)^{1/c} - p^{1/c}) a_p
    double diff = 0;
};

inline Theorem3Report theorem3_check(const PSConfig& cfg, const CoefficientSequence& coeff) {
    cfg.validate();
    Theorem3Report rep;
    std::uint64_t pmax = cfg.c == 1.0 ? cfg.N : detail::floor_pow_verified(cfg.N, cfg.c);
    if (coeff.n_max() < pmax)
        throw std::out_of_range("theorem3_check: coefficient table too small, need n_max >= " +
                                std::to_string(pmax));

    for (const auto& rec : ps_enumerate(cfg)) rep.lhs += coeff(rec.p);

    const float128 g = static_cast<float128>(cfg.gamma());
    for (std::uint64_t p : primes_in(1, pmax).primes) {
        float128 w = powq(static_cast<float128>(p + 1), g) - powq(static_cast<float128>(p), g);
        rep.main += static_cast<double>(w) * coeff(p);
    }
    rep.diff = rep.lhs - rep.main;
    return rep;
}

struct Theorem5Report {
    std::uint64_t ps_count = 0;    // number of Piatetski-Shapiro prime hits
    double sum_lambda_sq = 0;      // sum lambda(floor(n^c))^2 over the hits
    double main_term = 0;          // N / (c log N)
    double ratio = 0;              // sum / main
    double identity_gap = 0;       // |sum lambda(p)^2 - (count + sum lambda(p^2))| on the
                                   // sub-range where tau(p^2) is tabulated
    std::uint64_t identity_checked = 0;
};

// Empirical form of the squares-of-eigenvalues asymptotic: the sum needs
// tau only up to N^c via lambda(p)^2; the identity route through
// lambda(p^2) cross-checks the sub-range the table covers.
inline Theorem5Report theorem5_report(const PSConfig& cfg, const TauTable& tau) {
    cfg.validate();
    Theorem5Report rep;
    std::uint64_t pmax = cfg.c == 1.0 ? cfg.N : detail::floor_pow_verified(cfg.N, cfg.c);
    if (tau.n_max < pmax)
        throw std::out_of_range("theorem5_report: tau table too small, need n_max >= " +
                                std::to_string(pmax));

    double identity_lhs = 0, identity_rhs = 0;
    for (const auto& rec : ps_enumerate(cfg)) {
        ++rep.ps_count;
        double lp = hecke_lambda(tau, rec.p);
        rep.sum_lambda_sq += lp * lp;
        if (rec.p * rec.p <= tau.n_max) {
            identity_lhs += lp * lp;
            identity_rhs += 1.0 + hecke_lambda(tau, rec.p * rec.p);
            ++rep.identity_checked;
        }
    }
    double N = static_cast<double>(cfg.N);
    rep.main_term = N / (cfg.c * std::log(N));
    rep.ratio = rep.sum_lambda_sq / rep.main_term;
    rep.identity_gap = std::abs(identity_lhs - identity_rhs);
    return rep;
}

} // namespace expsums

#endif
