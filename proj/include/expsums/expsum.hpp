#ifndef EXPSUMS_EXPSUM_HPP
#define EXPSUMS_EXPSUM_HPP

// Exponential sum evaluators for sum_{N < n <= N'} a_n e(f(n)) and the
// prime-restricted analogue: a direct compensated evaluation, the
// Farey-decomposed regrouping with the factorized surrogate phase per arc,
// and empirical bound-ratio tracking.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expsums/amplitude.hpp"
#include "expsums/arith.hpp"
#include "expsums/eigenforms.hpp"
#include "expsums/errors.hpp"
#include "expsums/farey.hpp"
#include "expsums/highprec.hpp"

namespace expsums {

// Admissibility margin for bound tracking: f(N) must lie within
// [N^{3/4+eta}, N^{3/2-eta}].
inline constexpr double kBoundEta = 0.01;
// Frozen empirical ceiling for |sum| / (N^{3/4} f(N)^{1/6}).
inline constexpr double kBoundRatioCeiling = 10.0;

struct SumRequest {
    CoefficientSequence coeff;
    PowerAmplitude f{1.0, 0.5};
    std::uint64_t N = 0;
    std::uint64_t N_prime = 0; // N < N' <= 2N
    bool prime_only = false;
    std::optional<double> explicit_Q; // default: N^{1/2} / f(N)^{1/3}

    double Q() const {
        if (explicit_Q) return *explicit_Q;
        return std::sqrt(static_cast<double>(N)) / std::cbrt(f.value(static_cast<double>(N)));
    }

    void validate() const {
        if (!(N >= 1 && N < N_prime && N_prime <= 2 * N))
            throw std::invalid_argument("SumRequest: need 1 <= N < N' <= 2N");
        if (coeff.n_max() < N_prime)
            throw std::out_of_range("SumRequest: coefficient table too small, need n_max >= " +
                                    std::to_string(N_prime));
    }
};

struct ArcDiagnostics {
    FareyArc arc;
    ProjectedInterval interval;
    std::complex<double> subsum;      // naive per-arc evaluation
    std::complex<double> factorized;  // e(C) e(nl/q) n^{-iT} e(f-g) route
    std::uint64_t n_terms = 0;
    double max_phase_residual = 0; // max |e(f(n)) - factorized term|
};

struct SumResult {
    std::complex<double> value;
    std::uint64_t n_terms = 0;
    double abs_sum = 0;          // sum |a_n| over the range
    double bound_ratio = -1;     // |value| / (N^{3/4} f(N)^{1/6}); -1 when not applicable
    std::vector<ArcDiagnostics> per_arc; // filled on request
};

inline bool bound_tracking_admissible(const SumRequest& req) {
    double N = static_cast<double>(req.N);
    double fN = req.f.value(N);
    return fN >= std::pow(N, 0.75 + kBoundEta) && fN <= std::pow(N, 1.5 - kBoundEta);
}

inline double bound_ratio(const SumRequest& req, const std::complex<double>& value) {
    double N = static_cast<double>(req.N);
    return std::abs(value) / (std::pow(N, 0.75) * std::pow(req.f.value(N), 1.0 / 6.0));
}

namespace detail {

// primality flags for (N, N'] when prime restriction is on
inline std::vector<bool> prime_flags(std::uint64_t N, std::uint64_t N_prime) {
    std::vector<bool> flags(N_prime - N, false);
    for (std::uint64_t p : primes_in(N, N_prime).primes) flags[p - N - 1] = true;
    return flags;
}

} // namespace detail

inline SumResult direct_sum(const SumRequest& req) {
    req.validate();
    SumResult out;
    if (req.N_prime == req.N) return out;
    std::vector<bool> flags;
    if (req.prime_only) flags = detail::prime_flags(req.N, req.N_prime);

    CompensatedSum acc;
    for (std::uint64_t n = req.N + 1; n <= req.N_prime; ++n) {
        if (req.prime_only && !flags[n - req.N - 1]) continue;
        double a = req.coeff(n);
        if (a == 0.0) continue;
        double phase = power_phase_frac(req.f.j(), req.f.gamma(), static_cast<float128>(n));
        acc.add(a * e_of(phase));
    }
    out.value = acc.value();
    out.n_terms = acc.count();
    out.abs_sum = acc.abs_sum();
    if (bound_tracking_admissible(req)) out.bound_ratio = bound_ratio(req, out.value);
    return out;
}

// Farey-decomposed evaluation: dissect [h(N'), h(N)), project every arc,
// evaluate each projected interval separately (optionally through the
// factorized surrogate phase), and regroup.  This is a regrouping of the
// identical terms plus an exact phase identity, so the result must match
// direct_sum to rounding.
inline SumResult farey_decomposed_sum(const SumRequest& req, bool factorized = true,
                                      bool collect_diagnostics = false) {
    req.validate();
    SumResult out;
    double N = static_cast<double>(req.N);
    double Np = static_cast<double>(req.N_prime);
    double Q = req.Q();

    double hN = req.f.h(N);
    double hNp = req.f.h(Np);
    if (!(hNp < hN))
        throw internal_consistency_error("farey_decomposed_sum: h must be decreasing on [N, N']");
    auto arcs = dissect(hNp, hN, Q);

    // Assign every integer to its arc in h-space: arc boundaries in h are
    // ascending (arcs are), n belongs to arc iff arc.left <= h(n) < arc.right.
    // h decreasing => integers descend through the arcs in order.
    std::vector<bool> flags;
    if (req.prime_only) flags = detail::prime_flags(req.N, req.N_prime);

    std::vector<ArcDiagnostics> diag(arcs.size());
    std::vector<CompensatedSum> naive(arcs.size());
    std::vector<CompensatedSum> fact(arcs.size());
    std::vector<LocalApproximation> approx(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        approx[i] = build_approximation(req.f, arcs[i].l, arcs[i].q);
        if (collect_diagnostics) {
            diag[i].arc = arcs[i];
            diag[i].interval = project(arcs[i], req.f);
        }
    }

    std::uint64_t assigned = 0;
    for (std::uint64_t n = req.N + 1; n <= req.N_prime; ++n) {
        double hn = req.f.h(static_cast<double>(n));
        // locate the unique arc with left <= hn < right (binary search)
        std::size_t lo = 0, hi = arcs.size();
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (hn >= arcs[mid].left)
                lo = mid;
            else
                hi = mid;
        }
        if (!(hn >= arcs[lo].left && hn < arcs[lo].right))
            throw internal_consistency_error("farey_decomposed_sum: integer claimed by 0 arcs (n=" +
                                             std::to_string(n) + ")");
        ++assigned;
        if (req.prime_only && !flags[n - req.N - 1]) continue;
        double a = req.coeff(n);
        if (a == 0.0) continue;

        double direct_frac = power_phase_frac(req.f.j(), req.f.gamma(), static_cast<float128>(n));
        std::complex<double> direct_term = e_of(direct_frac);
        naive[lo].add(a * direct_term);

        if (factorized || collect_diagnostics) {
            const auto& ap = approx[lo];
            // e(g(n)) * e(f(n) - g(n)) with all pieces reduced in binary128
            double gfrac = ap.g_frac(n);
            double dfg = fg_diff(req.f, ap, static_cast<float128>(n));
            std::complex<double> term = e_of(frac128(static_cast<float128>(gfrac) +
                                                     static_cast<float128>(dfg)));
            fact[lo].add(a * term);
            if (collect_diagnostics) {
                double resid = std::abs(direct_term - term);
                diag[lo].max_phase_residual = std::max(diag[lo].max_phase_residual, resid);
            }
        }
    }
    if (assigned != req.N_prime - req.N)
        throw internal_consistency_error("farey_decomposed_sum: partition lost integers");

    CompensatedSum total;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const CompensatedSum& chosen = factorized ? fact[i] : naive[i];
        total.add(chosen.value());
        out.abs_sum += chosen.abs_sum();
        out.n_terms += chosen.count();
        if (collect_diagnostics) {
            diag[i].subsum = naive[i].value();
            diag[i].factorized = fact[i].value();
            diag[i].n_terms = chosen.count();
        }
    }
    out.value = total.value();
    if (bound_tracking_admissible(req)) out.bound_ratio = bound_ratio(req, out.value);
    if (collect_diagnostics) out.per_arc = std::move(diag);
    return out;
}

} // namespace expsums

#endif
