#ifndef EXPSUMS_HIGHPREC_HPP
#define EXPSUMS_HIGHPREC_HPP

// Extended-precision helpers shared by the sum evaluators.  Phases like
// j*n^gamma can reach 1e9 while e(.) needs their fractional part to 1e-12,
// so mod-1 reduction of large phases is done in binary128 throughout.

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace expsums {

using float128 = __float128;
using int128 = __int128;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e(theta) = exp(2*pi*i*theta)
inline std::complex<double> e_of(double theta) {
    double t = kTwoPi * theta;
    return {std::cos(t), std::sin(t)};
}

// Fractional part in [0, 1), computed in binary128.
inline double frac128(float128 x) {
    float128 f = x - floorq(x);
    if (f >= 1) f -= 1; // floorq edge at representable boundary
    if (f < 0) f += 1;
    return static_cast<double>(f);
}

// x^y for x > 0 in binary128.
inline float128 pow128(float128 x, float128 y) { return powq(x, y); }

// frac(j * n^gamma): the central phase reduction of the whole artifact.
inline double power_phase_frac(double j, double gamma, float128 n) {
    return frac128(static_cast<float128>(j) * powq(n, static_cast<float128>(gamma)));
}

inline std::complex<double> e_of_frac128(float128 theta) { return e_of(frac128(theta)); }

// Compensated (Kahan) accumulator for complex sums with a running
// absolute-value tally, used for the triangle-inequality diagnostics.
class CompensatedSum {
public:
    void add(std::complex<double> term) {
        add_part(re_, re_c_, term.real());
        add_part(im_, im_c_, term.imag());
        abs_sum_ += std::abs(term);
        ++count_;
    }
    std::complex<double> value() const { return {re_, im_}; }
    double abs_sum() const { return abs_sum_; }
    std::uint64_t count() const { return count_; }

private:
    static void add_part(double& s, double& c, double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0, abs_sum_ = 0;
    std::uint64_t count_ = 0;
};

inline std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

// Parses a decimal (optionally signed) integer; returns false on junk.
inline bool parse_int128(const std::string& s, int128& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
        if (s.size() == 1) return false;
    }
    unsigned __int128 u = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        u = u * 10 + static_cast<unsigned>(s[i] - '0');
    }
    out = neg ? -static_cast<int128>(u) : static_cast<int128>(u);
    return true;
}

} // namespace expsums

#endif
