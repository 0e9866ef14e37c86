#ifndef EXPSUMS_AMPLITUDE_HPP
#define EXPSUMS_AMPLITUDE_HPP

// The amplitude family f, the frequency map h(x) = f'(x) + x f''(x), the
// local surrogate phase g (linear + logarithmic) anchored at a rational
// value of h, and numeric verification of the structural conditions the
// sum estimates require of f.
//
// Only the power family f = j x^gamma is built in, but everything
// downstream consumes amplitudes through the AmplitudeLike concept, so any
// type exposing derivatives up to order four plugs in.

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "expsums/errors.hpp"
#include "expsums/highprec.hpp"

namespace expsums {

template <typename A>
concept AmplitudeLike = requires(const A& a, double x, int k) {
    { a.value(x) } -> std::convertible_to<double>;
    { a.derivative(x, k) } -> std::convertible_to<double>;
};

// f(x) = j * x^gamma with 0 < gamma < 1, j != 0.  h is strictly decreasing
// for j > 0, which is the orientation the dissection assumes.
class PowerAmplitude {
public:
    PowerAmplitude(double j, double gamma) : j_(j), gamma_(gamma) {
        if (j == 0.0) throw std::invalid_argument("PowerAmplitude: j must be nonzero");
        if (!(gamma > 0.0 && gamma < 1.0))
            throw std::invalid_argument("PowerAmplitude: gamma must lie in (0,1)");
    }

    double j() const { return j_; }
    double gamma() const { return gamma_; }

    double value(double x) const { return j_ * std::pow(x, gamma_); }

    double derivative(double x, int k) const {
        double c = j_;
        for (int i = 0; i < k; ++i) c *= gamma_ - i;
        return c * std::pow(x, gamma_ - k);
    }

    // h(x) = f'(x) + x f''(x) = j gamma^2 x^{gamma-1}
    double h(double x) const { return j_ * gamma_ * gamma_ * std::pow(x, gamma_ - 1.0); }
    double h_prime(double x) const {
        return j_ * gamma_ * gamma_ * (gamma_ - 1.0) * std::pow(x, gamma_ - 2.0);
    }

    // closed-form inverse of h
    double invert_h(double y) const {
        double base = y / (j_ * gamma_ * gamma_);
        if (!(base > 0.0)) throw no_solution_error("invert_h: value outside range of h");
        return std::pow(base, 1.0 / (gamma_ - 1.0));
    }

    // binary128 evaluators for phase-accurate work
    float128 value128(float128 x) const {
        return static_cast<float128>(j_) * powq(x, static_cast<float128>(gamma_));
    }
    float128 h128(float128 x) const {
        return static_cast<float128>(j_) * static_cast<float128>(gamma_) *
               static_cast<float128>(gamma_) * powq(x, static_cast<float128>(gamma_) - 1);
    }
    float128 invert_h128(float128 y) const {
        float128 base = y / (static_cast<float128>(j_) * static_cast<float128>(gamma_) *
                             static_cast<float128>(gamma_));
        if (!(base > 0)) throw no_solution_error("invert_h128: value outside range of h");
        return powq(base, 1 / (static_cast<float128>(gamma_) - 1));
    }

private:
    double j_;
    double gamma_;
};

// Generic monotone inversion of h by bisection, for amplitude types without
// a closed form.  Tolerance 1e-13 relative.
template <AmplitudeLike A>
double invert_h_bisect(const A& a, double y, double xlo, double xhi) {
    auto h = [&](double x) { return a.derivative(x, 1) + x * a.derivative(x, 2); };
    double flo = h(xlo) - y, fhi = h(xhi) - y;
    if (flo == 0) return xlo;
    if (fhi == 0) return xhi;
    if ((flo > 0) == (fhi > 0)) throw no_solution_error("invert_h_bisect: not bracketed");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (xlo + xhi);
        double fm = h(mid) - y;
        if ((fm > 0) == (flo > 0)) {
            xlo = mid;
            flo = fm;
        } else {
            xhi = mid;
        }
        if (xhi - xlo <= 1e-13 * std::abs(mid)) break;
    }
    return 0.5 * (xlo + xhi);
}

// g(x) = (l/q) x - x0^2 f''(x0) log x + C with h(x0) = l/q, so that
// g, g', g'' all match f at x0 and e(g(n)) factors as a constant times an
// additive character mod q times the complex power n^{-iT}.
struct LocalApproximation {
    std::int64_t l = 0;
    std::int64_t q = 1;
    double x0 = 0;
    double slope = 0;   // l/q = h(x0)
    double logcoef = 0; // x0^2 f''(x0) = T / (2 pi)
    double C = 0;
    double T = 0; // 2 pi x0^2 f''(x0)

    // binary128 copies used for phase reduction
    float128 x0q = 0, logcoefq = 0, Cq = 0;

    double g(double x) const { return slope * x - logcoef * std::log(x) + C; }
    double g_prime(double x) const { return slope - logcoef / x; }
    double g_second(double x) const { return logcoef / (x * x); }
    double g_third(double x) const { return -2.0 * logcoef / (x * x * x); }

    // frac of g(n) computed in binary128, with n*l reduced mod q exactly
    double g_frac(std::uint64_t n) const {
        std::int64_t lm = ((l % q) + q) % q;
        std::uint64_t r = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(n) * static_cast<unsigned __int128>(lm) %
            static_cast<unsigned __int128>(q));
        float128 phase = static_cast<float128>(r) / static_cast<float128>(q) -
                         logcoefq * logq(static_cast<float128>(n)) + Cq;
        return frac128(phase);
    }
};

inline LocalApproximation build_approximation(const PowerAmplitude& f, std::int64_t l, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("build_approximation: q >= 1 required");
    LocalApproximation ap;
    ap.l = l;
    ap.q = q;
    ap.slope = static_cast<double>(l) / static_cast<double>(q);
    float128 slopeq = static_cast<float128>(l) / static_cast<float128>(q);
    ap.x0q = f.invert_h128(slopeq);
    ap.x0 = static_cast<double>(ap.x0q);
    float128 g = static_cast<float128>(f.gamma());
    float128 jq = static_cast<float128>(f.j());
    float128 f2 = jq * g * (g - 1) * powq(ap.x0q, g - 2); // f''(x0)
    ap.logcoefq = ap.x0q * ap.x0q * f2;
    ap.logcoef = static_cast<double>(ap.logcoefq);
    ap.T = static_cast<double>(2 * static_cast<float128>(M_PI) * ap.logcoefq);
    float128 fx0 = jq * powq(ap.x0q, g);
    ap.Cq = fx0 - slopeq * ap.x0q + ap.logcoefq * logq(ap.x0q);
    ap.C = static_cast<double>(ap.Cq);
    return ap;
}

// frac of (f - g)(n): small difference of large phases, done in binary128.
inline double fg_diff(const PowerAmplitude& f, const LocalApproximation& ap, float128 x) {
    float128 slopeq = static_cast<float128>(ap.l) / static_cast<float128>(ap.q);
    float128 gq = slopeq * x - ap.logcoefq * logq(x) + ap.Cq;
    return static_cast<double>(f.value128(x) - gq);
}

// --- structural condition checks -------------------------------------------

struct ConditionCheck {
    std::string name;
    bool pass = false;
    double lo = 0; // min of the normalized ratio over the sample
    double hi = 0; // max
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Windowed numeric check of the seven structural conditions over a
// 1024-point log-spaced sample of [N, 2N].  Ratios are normalized so that
// the power family produces gamma-dependent constants; windows accept
// anything bounded away from 0 and infinity.
inline ConditionReport check_conditions(const PowerAmplitude& f, double N) {
    if (N < 2) throw std::invalid_argument("check_conditions: N >= 2 required");
    constexpr int kSamples = 1024;
    constexpr double kLo = 1e-4, kHi = 1e4; // frozen windows for "bounded away from 0 and infinity"
    ConditionReport rep;

    std::vector<double> xs(kSamples);
    for (int i = 0; i < kSamples; ++i)
        xs[i] = N * std::exp(std::log(2.0) * i / (kSamples - 1));

    auto window_check = [&](const std::string& name, auto ratio) {
        ConditionCheck c;
        c.name = name;
        c.lo = 1e300;
        c.hi = -1e300;
        for (double x : xs) {
            double r = ratio(x);
            c.lo = std::min(c.lo, r);
            c.hi = std::max(c.hi, r);
        }
        // ratios may have either sign (e.g. x^2 f''/f = gamma(gamma-1) < 0);
        // "bounded away from 0 and infinity" constrains the magnitude, with
        // the sign constant across the range
        bool same_sign = (c.lo > 0) == (c.hi > 0) && c.lo != 0 && c.hi != 0;
        double amin = std::min(std::abs(c.lo), std::abs(c.hi));
        double amax = std::max(std::abs(c.lo), std::abs(c.hi));
        c.pass = same_sign && amin > kLo && amax < kHi;
        rep.checks.push_back(c);
    };

    // i) smoothness: derivative evaluators agree with finite differences
    {
        ConditionCheck c;
        c.name = "i:smooth";
        c.lo = 0;
        c.hi = 0;
        c.pass = true;
        for (int k = 1; k <= 4 && c.pass; ++k) {
            for (double x : {N, 1.3 * N, 1.9 * N}) {
                double hstep = x * 1e-4;
                double fd;
                if (k == 1)
                    fd = (f.value(x + hstep) - f.value(x - hstep)) / (2 * hstep);
                else
                    fd = (f.derivative(x + hstep, k - 1) - f.derivative(x - hstep, k - 1)) / (2 * hstep);
                double cf = f.derivative(x, k);
                double rel = std::abs(fd - cf) / std::max(1e-300, std::abs(cf));
                c.hi = std::max(c.hi, rel);
                if (rel > 1e-5) c.pass = false;
            }
        }
        rep.checks.push_back(c);
    }
    // ii) monotone increasing
    {
        ConditionCheck c;
        c.name = "ii:increasing";
        c.lo = c.hi = f.derivative(N, 1);
        c.pass = true;
        for (double x : xs) {
            double d = f.derivative(x, 1);
            c.lo = std::min(c.lo, d);
            c.hi = std::max(c.hi, d);
            if (d <= 0) c.pass = false;
        }
        rep.checks.push_back(c);
    }
    // iii) f(2x) comparable to f(x)
    window_check("iii:doubling", [&](double x) { return f.value(2 * x) / f.value(x); });
    // iv) x^k f^{(k)} / f bounded for k = 1..4
    for (int k = 1; k <= 4; ++k) {
        window_check("iv:deriv" + std::to_string(k), [&, k](double x) {
            return f.derivative(x, k) * std::pow(x, k) / f.value(x);
        });
    }
    // v) x h(x) / f(x)
    window_check("v:h", [&](double x) { return f.h(x) * x / f.value(x); });
    // vi) x^2 (2f'' + x f''') / f
    window_check("vi:hprime", [&](double x) {
        return (2 * f.derivative(x, 2) + x * f.derivative(x, 3)) * x * x / f.value(x);
    });
    // vii) x^2 (2f'' - x f''') / f
    window_check("vii:reflected", [&](double x) {
        return (2 * f.derivative(x, 2) - x * f.derivative(x, 3)) * x * x / f.value(x);
    });
    return rep;
}

// --- Taylor error profile ---------------------------------------------------

struct ErrorProfile {
    double max_norm_d1 = 0;   // max |(f-g)'| * (qQ)^2 f(N) / N
    double max_norm_d2 = 0;   // max |(f-g)''| * qQ N
    double min_norm_d3 = 0;   // min |(f-g)'''| * N^3 / f(N)
    double max_norm_d3 = 0;
};

// Normalized Taylor-error sizes of f - g over (x1, x2], sampled.
inline ErrorProfile approximation_error_profile(const PowerAmplitude& f, const LocalApproximation& ap,
                                                double x1, double x2, int samples, double N, double Q) {
    ErrorProfile ep;
    ep.min_norm_d3 = 1e300;
    double fN = f.value(N);
    double qQ = static_cast<double>(ap.q) * Q;
    for (int i = 0; i <= samples; ++i) {
        double x = x1 + (x2 - x1) * (i + 0.5) / (samples + 1);
        double d1 = f.derivative(x, 1) - ap.g_prime(x);
        double d2 = f.derivative(x, 2) - ap.g_second(x);
        double d3 = f.derivative(x, 3) - ap.g_third(x);
        ep.max_norm_d1 = std::max(ep.max_norm_d1, std::abs(d1) * qQ * qQ * fN / N);
        ep.max_norm_d2 = std::max(ep.max_norm_d2, std::abs(d2) * qQ * N);
        double n3 = std::abs(d3) * N * N * N / fN;
        ep.min_norm_d3 = std::min(ep.min_norm_d3, n3);
        ep.max_norm_d3 = std::max(ep.max_norm_d3, n3);
    }
    return ep;
}

} // namespace expsums

#endif
