#ifndef EXPSUMS_EIGENFORMS_HPP
#define EXPSUMS_EIGENFORMS_HPP

// Exact Ramanujan tau values and normalized Hecke eigenvalues for the
// weight-12 level-1 cusp form, plus the coefficient-sequence abstraction
// consumed by every sum evaluator.
//
// tau is computed by expanding the 24th power of the eta-quotient series:
// the cube has Jacobi's sparse expansion sum (-1)^k (2k+1) q^{k(k+1)/2},
// one sparse self-convolution gives the 6th power in int64, and two dense
// squarings done with a number-theoretic transform modulo two 62-bit
// primes are recombined by CRT.  tau(n) for n <= 2^21 fits comfortably in
// a signed 128-bit integer, which keeps every identity test exact.

#include <zlib.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "expsums/arith.hpp"
#include "expsums/errors.hpp"
#include "expsums/highprec.hpp"

namespace expsums {

inline constexpr std::uint32_t kTauCeiling = 2u << 20; // int128 overflow margin ends near here

struct TauTable {
    std::uint32_t n_max = 0;
    std::vector<int128> tau; // tau[n] valid for 1 <= n <= n_max; tau[0] unused

    int128 operator()(std::uint64_t n) const {
        if (n < 1 || n > n_max) throw std::out_of_range("TauTable: n out of range");
        return tau[static_cast<std::size_t>(n)];
    }
};

namespace ntt {

struct Modulus {
    std::uint64_t p;
    std::uint64_t g; // primitive root
};

// 29*2^57 + 1 and 27*2^56 + 1; both support transforms of length 2^21.
inline constexpr Modulus kMod0{4179340454199820289ULL, 3};
inline constexpr Modulus kMod1{1945555039024054273ULL, 5};

inline void transform(std::vector<std::uint64_t>& a, const Modulus& mod, bool invert) {
    const std::uint64_t p = mod.p;
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = detail::powmod_u64(mod.g, (p - 1) / len, p);
        if (invert) w = detail::powmod_u64(w, p - 2, p);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t wn = 1;
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::uint64_t u = a[i + k];
                std::uint64_t v = detail::mulmod_u64(a[i + k + len / 2], wn, p);
                a[i + k] = u + v < p ? u + v : u + v - p;
                a[i + k + len / 2] = u >= v ? u - v : u + p - v;
                wn = detail::mulmod_u64(wn, w, p);
            }
        }
    }
    if (invert) {
        std::uint64_t inv_n = detail::powmod_u64(n % p, p - 2, p);
        for (auto& x : a) x = detail::mulmod_u64(x, inv_n, p);
    }
}

// Squares a sequence (given as centered residues) modulo mod, truncated to
// out_len coefficients.
inline std::vector<std::uint64_t> square_mod(const std::vector<std::uint64_t>& a_mod,
                                             std::size_t out_len, const Modulus& mod) {
    std::size_t len = 1;
    while (len < 2 * out_len) len <<= 1;
    std::vector<std::uint64_t> a(a_mod.begin(), a_mod.end());
    a.resize(len, 0);
    transform(a, mod, false);
    for (auto& x : a) x = detail::mulmod_u64(x, x, mod.p);
    transform(a, mod, true);
    a.resize(out_len);
    return a;
}

// Centered lift of a residue to (-p/2, p/2].
inline std::int64_t centered(std::uint64_t r, std::uint64_t p) {
    return r > p / 2 ? static_cast<std::int64_t>(r) - static_cast<std::int64_t>(p)
                     : static_cast<std::int64_t>(r);
}

} // namespace ntt

// Exact tau(n) for 1 <= n <= n_max.
inline TauTable compute_tau(std::uint32_t n_max) {
    if (n_max < 1 || n_max > kTauCeiling)
        throw resource_limit_error("compute_tau: n_max outside [1, " + std::to_string(kTauCeiling) + "]");

    // Coefficients of prod (1-q^m)^3 up to degree n_max - 1 (tau(n) is the
    // coefficient of q^{n-1} in the 24th power).
    const std::size_t len = n_max; // degrees 0 .. n_max-1
    std::vector<std::pair<std::size_t, std::int64_t>> cube;
    for (std::size_t k = 0;; ++k) {
        std::size_t deg = k * (k + 1) / 2;
        if (deg >= len) break;
        cube.emplace_back(deg, (k % 2 ? -1 : 1) * static_cast<std::int64_t>(2 * k + 1));
    }

    // Sparse self-convolution: 6th power, exact in int64.
    std::vector<std::int64_t> p6(len, 0);
    for (std::size_t i = 0; i < cube.size(); ++i) {
        if (2 * cube[i].first >= len) break;
        p6[2 * cube[i].first] += cube[i].second * cube[i].second;
        for (std::size_t j = i + 1; j < cube.size(); ++j) {
            std::size_t deg = cube[i].first + cube[j].first;
            if (deg >= len) break;
            p6[deg] += 2 * cube[i].second * cube[j].second;
        }
    }

    TauTable table;
    table.n_max = n_max;
    table.tau.assign(static_cast<std::size_t>(n_max) + 1, 0);

    const auto& m0 = ntt::kMod0;
    const auto& m1 = ntt::kMod1;
    std::vector<std::uint64_t> r0(len), r1(len);
    for (std::size_t i = 0; i < len; ++i) {
        std::int64_t v = p6[i];
        r0[i] = v >= 0 ? static_cast<std::uint64_t>(v) : m0.p - static_cast<std::uint64_t>(-v);
        r1[i] = v >= 0 ? static_cast<std::uint64_t>(v) : m1.p - static_cast<std::uint64_t>(-v);
    }
    // 12th power, then 24th power, modulo each prime.
    r0 = ntt::square_mod(ntt::square_mod(r0, len, m0), len, m0);
    r1 = ntt::square_mod(ntt::square_mod(r1, len, m1), len, m1);

    // CRT into int128 with centered lift; |tau(n)| < p0*p1/2 throughout the
    // supported range.
    const std::uint64_t p1_inv_mod_p0 = detail::powmod_u64(m1.p % m0.p, m0.p - 2, m0.p);
    for (std::size_t i = 0; i < len; ++i) {
        // x = r1 + p1 * ((r0 - r1) * p1^{-1} mod p0), centered
        std::uint64_t d = (r0[i] + m0.p - r1[i] % m0.p) % m0.p;
        std::uint64_t k = detail::mulmod_u64(d, p1_inv_mod_p0, m0.p);
        std::int64_t kc = ntt::centered(k, m0.p);
        int128 x = static_cast<int128>(r1[i]) + static_cast<int128>(kc) * static_cast<int128>(m1.p);
        // normalize r1 part: r1 stored as least residue; recenter the total
        // (kc already centers; the r1 term is < p1 which is absorbed)
        table.tau[i + 1] = x;
    }
    return table;
}

// Normalized eigenvalue lambda(n) = tau(n) / n^{11/2}.
inline double hecke_lambda(const TauTable& t, std::uint64_t n) {
    int128 v = t(n);
    // exact int128 -> float128 conversion in two 64-bit chunks
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    float128 hi = static_cast<float128>(static_cast<std::uint64_t>(u >> 64));
    float128 lo = static_cast<float128>(static_cast<std::uint64_t>(u));
    float128 num = hi * 18446744073709551616.0 + lo;
    if (neg) num = -num;
    float128 den = powq(static_cast<float128>(n), static_cast<float128>(5.5));
    return static_cast<double>(num / den);
}

// Returns (lambda(p)^2, 1 + lambda(p^2)); the caller asserts equality.
inline std::pair<double, double> lambda_square_identity(const TauTable& t, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("lambda_square_identity: p not prime");
    double lp = hecke_lambda(t, p);
    double lp2 = hecke_lambda(t, p * p);
    return {lp * lp, 1.0 + lp2};
}

struct SatakeAngle {
    std::uint64_t p = 0;
    std::complex<double> alpha; // unit modulus, alpha + conj(alpha) = lambda(p)
};

inline SatakeAngle satake_angle(const TauTable& t, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("satake_angle: p not prime");
    double lp = hecke_lambda(t, p);
    double re = lp / 2.0;
    // |lambda(p)| <= 2 (Deligne); clamp roundoff at the boundary
    double im2 = 1.0 - re * re;
    double im = im2 > 0 ? std::sqrt(im2) : 0.0;
    return {p, {re, im}};
}

// b_{p^k} = (alpha^k + conj(alpha)^k)/k = 2*cos(k*theta)/k.
inline std::complex<double> euler_log_coeff(const SatakeAngle& a, int k) {
    if (k < 1) throw std::invalid_argument("euler_log_coeff: k >= 1 required");
    double theta = std::arg(a.alpha);
    return {2.0 * std::cos(k * theta) / k, 0.0};
}

// Prime coefficient of the symmetric-square series: lambda(p^2).
// For general n the divisor convolution sum_{d^2 | n} lambda((n/d^2)^2)
// applies; it needs tau up to n^2, so general n is limited to sqrt(n_max).
inline double sym2_coefficient(const TauTable& t, std::uint64_t n) {
    if (n == 0) throw std::out_of_range("sym2_coefficient: n >= 1 required");
    if (n == 1) return 1.0;
    double s = 0.0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % (d * d)) continue;
        std::uint64_t m = n / (d * d);
        if (m * m > t.n_max) throw std::out_of_range("sym2_coefficient: table too small (need tau to n^2)");
        s += hecke_lambda(t, m * m);
    }
    return s;
}

enum class CoeffKind { unit, hecke, hecke_square_primes, sym2_full };

inline const char* coeff_kind_name(CoeffKind k) {
    switch (k) {
        case CoeffKind::unit: return "unit";
        case CoeffKind::hecke: return "hecke";
        case CoeffKind::hecke_square_primes: return "hecke-square-at-primes";
        case CoeffKind::sym2_full: return "sym2-full";
    }
    return "?";
}

// A coefficient stream a_n.  a_1 = 1 for every kind.
class CoefficientSequence {
public:
    CoefficientSequence() : kind_(CoeffKind::unit) {}
    CoefficientSequence(CoeffKind kind, std::shared_ptr<const TauTable> table)
        : kind_(kind), table_(std::move(table)) {
        if (kind_ != CoeffKind::unit && !table_)
            throw std::invalid_argument("CoefficientSequence: kind requires a tau table");
    }

    CoeffKind kind() const { return kind_; }
    std::uint64_t n_max() const {
        if (kind_ == CoeffKind::unit) return ~std::uint64_t(0);
        if (kind_ == CoeffKind::sym2_full) {
            std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(table_->n_max)));
            while ((r + 1) * (r + 1) <= table_->n_max) ++r;
            while (r * r > table_->n_max) --r;
            return r;
        }
        return table_->n_max;
    }

    double operator()(std::uint64_t n) const {
        if (n == 0) throw std::out_of_range("CoefficientSequence: n >= 1 required");
        if (n == 1) return 1.0;
        switch (kind_) {
            case CoeffKind::unit:
                return 1.0;
            case CoeffKind::hecke:
                return hecke_lambda(*table_, n);
            case CoeffKind::hecke_square_primes: {
                // lambda(p^2) at primes via lambda(p)^2 - 1, needing only
                // tau(p); zero off the primes.
                if (!is_prime(n)) return 0.0;
                double lp = hecke_lambda(*table_, n);
                return lp * lp - 1.0;
            }
            case CoeffKind::sym2_full:
                return sym2_coefficient(*table_, n);
        }
        return 0.0;
    }

    const TauTable* table() const { return table_.get(); }

private:
    CoeffKind kind_;
    std::shared_ptr<const TauTable> table_;
};

// --- cache file -----------------------------------------------------------
//
// Text format, bit-exact round trip:
//   line 1: "TAUCACHE v1 <n_max>"
//   then one decimal integer per line, tau(1) .. tau(n_max)
//   final line: "CRC32 <hex of all prior bytes>"

inline void save_table(const TauTable& t, const std::string& path) {
    std::string body = "TAUCACHE v1 " + std::to_string(t.n_max) + "\n";
    for (std::uint32_t n = 1; n <= t.n_max; ++n) {
        body += int128_to_string(t.tau[n]);
        body += '\n';
    }
    unsigned long crc = crc32(0L, reinterpret_cast<const Bytef*>(body.data()),
                              static_cast<uInt>(body.size()));
    char tail[32];
    std::snprintf(tail, sizeof(tail), "CRC32 %08lx\n", crc);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw format_error("save_table: cannot open '" + path + "' for writing");
    out << body << tail;
    if (!out) throw format_error("save_table: write failed for '" + path + "'");
}

inline TauTable load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("load_table: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw format_error("load_table: " + path + ":1: empty file");
    std::string body = line + "\n";
    unsigned n_max = 0;
    if (std::sscanf(line.c_str(), "TAUCACHE v1 %u", &n_max) != 1 || n_max == 0)
        throw format_error("load_table: " + path + ":1: bad magic/header");

    TauTable t;
    t.n_max = n_max;
    t.tau.assign(static_cast<std::size_t>(n_max) + 1, 0);
    for (unsigned n = 1; n <= n_max; ++n) {
        if (!std::getline(in, line))
            throw format_error("load_table: " + path + ":" + std::to_string(n + 1) + ": truncated");
        body += line + "\n";
        int128 v;
        if (!parse_int128(line, v))
            throw format_error("load_table: " + path + ":" + std::to_string(n + 1) + ": bad integer");
        t.tau[n] = v;
    }
    if (!std::getline(in, line))
        throw format_error("load_table: " + path + ": missing CRC32 line");
    unsigned long stored = 0;
    if (std::sscanf(line.c_str(), "CRC32 %lx", &stored) != 1)
        throw format_error("load_table: " + path + ": bad CRC32 line");
    unsigned long crc = crc32(0L, reinterpret_cast<const Bytef*>(body.data()),
                              static_cast<uInt>(body.size()));
    if (crc != stored)
        throw format_error("load_table: " + path + ": checksum mismatch");
    return t;
}

} // namespace expsums

#endif
