#ifndef EXPSUMS_FAREY_HPP
#define EXPSUMS_FAREY_HPP

// Farey dissection of level Q of an interval [a, b) and the projection of
// each arc back to an n-interval under the inverse of the frequency map h.
// Interior arc endpoints are mediants of Farey neighbours and are kept as
// exact rationals, so the disjoint-union claim is testable exactly.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "expsums/amplitude.hpp"
#include "expsums/errors.hpp"

namespace expsums {

// Projected-length window: interior arcs satisfy
//   m1, m2 <= kProjectedLengthK * N^2 / (q Q f(N)).
// For the power family the geometry forces the constant above
// 4 / (gamma (1-gamma) 2^gamma) ~ 44 at gamma = 0.95; frozen from an oracle
// sweep over all interior arcs (observed max 36.1).
inline constexpr double kProjectedLengthK = 48.0;

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct FareyArc {
    std::int64_t l = 0; // owner l/q, reduced, q <= Q
    std::int64_t q = 1;
    // Arc endpoints in h-space: mediants of Farey neighbours unless clipped
    // to the dissected interval [a, b).
    Fraction left_mediant, right_mediant;
    bool clipped_left = false;
    bool clipped_right = false;
    double left = 0;  // [left, right), equals the mediant value unless clipped
    double right = 0;
    double M1 = 0; // arc = [l/q - M1/(qQ), l/q + M2/(qQ))
    double M2 = 0;

    bool interior() const { return !clipped_left && !clipped_right; }
    double owner_value() const { return static_cast<double>(l) / static_cast<double>(q); }
};

struct ProjectedInterval {
    double x0 = 0; // h^{-1}(l/q)
    double m1 = 0;
    double m2 = 0;
    double lo() const { return x0 - m1; } // interval (lo, hi]
    double hi() const { return x0 + m2; }
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

// Largest fraction l/q with q <= order and l/q <= x (brute force over
// denominators; the dissection levels used here are tiny).
inline Fraction farey_floor(double x, std::int64_t order) {
    Fraction best{static_cast<std::int64_t>(std::floor(x)), 1};
    for (std::int64_t q = 1; q <= order; ++q) {
        std::int64_t l = static_cast<std::int64_t>(std::floor(x * q));
        while (static_cast<double>(l) / q > x) --l; // float guards
        while (static_cast<double>(l + 1) / q <= x) ++l;
        if (l * best.den > best.num * q) {
            std::int64_t g = std::gcd(std::abs(l), q);
            if (g == 0) g = 1;
            best = {l / g, q / g};
        }
    }
    return best;
}

// Largest fraction < f in the Farey sequence of order m.
inline Fraction farey_pred(const Fraction& f, std::int64_t m) {
    std::int64_t bl = f.num - f.den, bq = f.den;
    for (std::int64_t d = 1; d <= m; ++d) {
        std::int64_t c = floor_div(f.num * d - 1, f.den); // largest c with c*f.den < f.num*d
        if (c * bq > bl * d) {
            bl = c;
            bq = d;
        }
    }
    std::int64_t g = std::gcd(std::abs(bl), bq);
    if (g == 0) g = 1;
    return {bl / g, bq / g};
}

} // namespace detail

// Successor of l/q in the Farey sequence of order floor(Q).
inline std::pair<std::int64_t, std::int64_t> next_farey(std::int64_t l, std::int64_t q, double Q) {
    std::int64_t m = static_cast<std::int64_t>(std::floor(Q));
    if (m < 1) throw std::invalid_argument("next_farey: Q >= 1 required");
    if (q < 1 || q > m || std::gcd(std::abs(l), q) != 1)
        throw std::invalid_argument("next_farey: need reduced l/q with q <= Q");
    // smallest fraction > l/q among all denominators <= m, by exact
    // cross-multiplication comparisons
    std::int64_t bl = detail::floor_div(l, q) + 2, bq = 1;
    for (std::int64_t d = 1; d <= m; ++d) {
        std::int64_t c = detail::floor_div(l * d, q) + 1; // smallest c with c*q > l*d
        if (c * bq < bl * d) {
            bl = c;
            bq = d;
        }
    }
    std::int64_t g = std::gcd(std::abs(bl), bq);
    if (g == 0) g = 1;
    return {bl / g, bq / g};
}

// Farey dissection of level Q of [a, b): pairwise disjoint arcs whose
// union is exactly [a, b); every reduced fraction in [a, b) with q <= Q
// owns one arc, and arcs of fractions just outside [a, b) are clipped.
inline std::vector<FareyArc> dissect(double a, double b, double Q) {
    if (!(a < b)) throw std::invalid_argument("dissect: a < b required");
    if (!(a > 0)) throw std::invalid_argument("dissect: a > 0 required");
    std::int64_t m = static_cast<std::int64_t>(std::floor(Q));
    if (m < 1) throw std::invalid_argument("dissect: Q >= 1 required");

    // Walk consecutive Farey fractions f_prev < f_cur < f_next; the arc of
    // f_cur is [mediant(f_prev, f_cur), mediant(f_cur, f_next)).
    Fraction cur = detail::farey_floor(a, m);
    Fraction prev = detail::farey_pred(cur, m);

    std::vector<FareyArc> arcs;
    while (true) {
        auto [nl, nq] = next_farey(cur.num, cur.den, Q);
        Fraction next{nl, nq};
        Fraction medL{prev.num + cur.num, prev.den + cur.den};
        Fraction medR{cur.num + next.num, cur.den + next.den};
        double lo = medL.value(), hi = medR.value();
        if (lo >= b) break;
        if (hi > a) {
            FareyArc arc;
            arc.l = cur.num;
            arc.q = cur.den;
            arc.left_mediant = medL;
            arc.right_mediant = medR;
            arc.left = lo;
            arc.right = hi;
            if (lo < a) {
                arc.left = a;
                arc.clipped_left = true;
            }
            if (hi > b) {
                arc.right = b;
                arc.clipped_right = true;
            }
            // M1, M2 from the actual (possibly clipped) endpoints
            double lq = arc.owner_value();
            arc.M1 = (lq - arc.left) * arc.q * Q;
            arc.M2 = (arc.right - lq) * arc.q * Q;
            arcs.push_back(arc);
        }
        prev = cur;
        cur = next;
    }
    return arcs;
}

// Projection of an arc back into n-space under h^{-1} (h decreasing):
// the preimage of [left, right) is (h^{-1}(right), h^{-1}(left)].
inline ProjectedInterval project(const FareyArc& arc, const PowerAmplitude& f) {
    ProjectedInterval iv;
    iv.x0 = f.invert_h(arc.owner_value());
    double xlo = f.invert_h(arc.right);
    double xhi = f.invert_h(arc.left);
    iv.m1 = iv.x0 - xlo;
    iv.m2 = xhi - iv.x0;
    // clipped arcs may not contain their owner fraction, so x0 can fall
    // outside [xlo, xhi) and one of m1, m2 go negative; lo()/hi() stay valid
    if (arc.interior() && (iv.m1 < 0 || iv.m2 < 0))
        throw internal_consistency_error("project: inverted interval (is h decreasing?)");
    if (xlo > xhi) throw internal_consistency_error("project: inverted interval");
    return iv;
}

} // namespace expsums

#endif
