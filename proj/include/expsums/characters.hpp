#ifndef EXPSUMS_CHARACTERS_HPP
#define EXPSUMS_CHARACTERS_HPP

// Dirichlet characters mod q as full value tables, Gauss sums by direct
// summation, and the finite identity rewriting an additive character as a
// linear combination of multiplicative ones.
//
// Construction decomposes (Z/q)^* by CRT into cyclic pieces: one cyclic
// group per odd prime power (generated by a primitive root) and the
// {-1} x <5> pair for powers of two.  Character values are tracked as exact
// integer exponents of e(1/L), L = lcm of the component orders, so
// orthogonality and conductor tests reduce to integer arithmetic.

#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "expsums/arith.hpp"
#include "expsums/errors.hpp"
#include "expsums/highprec.hpp"

namespace expsums {

class DirichletCharacter {
public:
    // exps[n] = exponent k with chi(n) = e(k / order), or -1 when gcd(n,q) > 1.
    DirichletCharacter(std::uint32_t q, std::uint32_t order, std::vector<std::int32_t> exps)
        : q_(q), order_(order), exps_(std::move(exps)) {
        build_values();
    }

    std::uint32_t modulus() const { return q_; }
    std::uint32_t order() const { return order_; } // denominator of the exponents, lcm of component orders
    bool is_principal() const { return principal_; }
    bool is_primitive() const { return conductor_ == q_; }
    std::uint32_t conductor() const { return conductor_; }

    std::complex<double> operator()(std::uint64_t n) const { return values_[n % q_]; }
    std::int32_t exponent(std::uint64_t n) const { return exps_[n % q_]; }

    // Exact multiplicativity on the exponent level.
    bool same_values(const DirichletCharacter& o) const {
        return q_ == o.q_ && order_ == o.order_ && exps_ == o.exps_;
    }

private:
    void build_values() {
        values_.resize(q_);
        // one primitive root of unity e(1/order), integer exponents
        std::vector<std::complex<double>> roots(order_);
        for (std::uint32_t k = 0; k < order_; ++k) {
            long double t = 2.0L * 3.14159265358979323846264338327950288L * k / order_;
            roots[k] = {static_cast<double>(cosl(t)), static_cast<double>(sinl(t))};
        }
        principal_ = true;
        for (std::uint32_t n = 0; n < q_; ++n) {
            if (exps_[n] < 0) {
                values_[n] = 0.0;
            } else {
                values_[n] = roots[static_cast<std::uint32_t>(exps_[n]) % order_];
                if (exps_[n] % static_cast<std::int32_t>(order_) != 0) principal_ = false;
            }
        }
        compute_conductor();
    }

    void compute_conductor() {
        // smallest d | q with chi trivial on {n : n = 1 (mod d), gcd(n,q)=1}
        conductor_ = q_;
        auto divisors = [&] {
            std::vector<std::uint32_t> ds;
            for (std::uint32_t d = 1; d <= q_; ++d)
                if (q_ % d == 0) ds.push_back(d);
            return ds;
        }();
        for (std::uint32_t d : divisors) {
            bool trivial = true;
            for (std::uint64_t n = 1; n < q_; n += d) {
                if (exps_[n] < 0) continue;
                if (exps_[n] % order_ != 0) {
                    trivial = false;
                    break;
                }
            }
            if (trivial) {
                conductor_ = d;
                break;
            }
        }
    }

    std::uint32_t q_;
    std::uint32_t order_;
    std::vector<std::int32_t> exps_;
    std::vector<std::complex<double>> values_;
    bool principal_ = false;
    std::uint32_t conductor_ = 1;
};

namespace detail {

struct CyclicComponent {
    std::uint32_t pk;                 // prime power
    std::uint32_t ord;                // order of the cyclic piece
    std::vector<std::uint32_t> dlog;  // dlog[residue mod pk] for the cyclic part
    std::vector<std::uint32_t> sign;  // powers of two only: exponent of -1 (0 or 1)
    bool two_part = false;
};

inline std::uint32_t primitive_root_mod_pk(std::uint32_t p, std::uint32_t e) {
    std::uint32_t pk = 1;
    for (std::uint32_t i = 0; i < e; ++i) pk *= p;
    std::uint64_t phi = (pk / p) * (p - 1);
    auto fact = factorize(phi);
    for (std::uint32_t g = 2; g < pk; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (const auto& [f, _] : fact.factors) {
            if (powmod_u64(g, phi / f, pk) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw internal_consistency_error("primitive_root_mod_pk: none found");
}

// Builds discrete-log tables for one prime-power component of (Z/q)^*.
inline CyclicComponent build_component(std::uint32_t p, std::uint32_t e) {
    CyclicComponent c;
    c.pk = 1;
    for (std::uint32_t i = 0; i < e; ++i) c.pk *= p;
    if (p == 2) {
        c.two_part = true;
        if (e == 1) {
            c.ord = 1;
            c.dlog.assign(2, 0);
            c.sign.assign(2, 0);
            return c;
        }
        if (e == 2) {
            // (Z/4)^* = {1,3} = <-1>
            c.ord = 1;
            c.dlog.assign(4, 0);
            c.sign.assign(4, 0);
            c.sign[3] = 1;
            return c;
        }
        c.ord = c.pk / 4; // order of 5
        c.dlog.assign(c.pk, 0);
        c.sign.assign(c.pk, 0);
        std::uint64_t v = 1;
        for (std::uint32_t k = 0; k < c.ord; ++k) {
            c.dlog[v] = k;
            c.sign[v] = 0;
            c.dlog[c.pk - v] = k;
            c.sign[c.pk - v] = 1;
            v = v * 5 % c.pk;
        }
        return c;
    }
    c.ord = (c.pk / p) * (p - 1);
    c.dlog.assign(c.pk, 0);
    std::uint32_t g = primitive_root_mod_pk(p, e);
    std::uint64_t v = 1;
    for (std::uint32_t k = 0; k < c.ord; ++k) {
        c.dlog[v] = k;
        v = v * g % c.pk;
    }
    return c;
}

} // namespace detail

// All phi(q) characters mod q, principal first, the rest in a fixed
// deterministic order.
inline std::vector<DirichletCharacter> all_characters(std::uint32_t q) {
    if (q == 0) throw std::invalid_argument("all_characters: q >= 1 required");
    if (q > 1000000) throw std::invalid_argument("all_characters: q above table ceiling 10^6");

    std::vector<detail::CyclicComponent> comps;
    for (const auto& [p, e] : factorize(q).factors)
        comps.push_back(detail::build_component(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e)));

    // cyclic factor orders: sign part (order 2) for 2^e with e >= 2, then
    // the cyclic parts of every component
    std::vector<std::uint32_t> orders;
    for (const auto& c : comps) {
        if (c.two_part && c.pk >= 4) orders.push_back(2);
        orders.push_back(c.ord);
    }
    std::uint32_t L = 1;
    for (std::uint32_t o : orders) L = static_cast<std::uint32_t>(std::lcm(L, o));

    // residue -> exponent vector in the cyclic factors
    std::uint64_t phi = totient(q);
    std::vector<std::vector<std::uint32_t>> res_exp(q);
    std::vector<bool> coprime(q, false);
    for (std::uint32_t n = 0; n < q; ++n) {
        if (std::gcd<std::uint64_t>(n, q) != 1) continue;
        coprime[n] = true;
        std::vector<std::uint32_t> ev;
        for (const auto& c : comps) {
            std::uint32_t r = n % c.pk;
            if (c.two_part && c.pk >= 4) ev.push_back(c.sign[r]);
            ev.push_back(c.dlog[r]);
        }
        res_exp[n] = std::move(ev);
    }

    // enumerate characters by exponent tuples (a_i mod orders[i]);
    // chi(n) = e( sum_i a_i * ev_i / orders[i] )
    std::vector<DirichletCharacter> chars;
    chars.reserve(phi);
    std::vector<std::uint32_t> a(orders.size(), 0);
    auto emit = [&] {
        std::vector<std::int32_t> exps(q, -1);
        for (std::uint32_t n = 0; n < q; ++n) {
            if (!coprime[n]) continue;
            std::uint64_t k = 0;
            for (std::size_t i = 0; i < orders.size(); ++i)
                k += static_cast<std::uint64_t>(a[i]) * res_exp[n][i] * (L / orders[i]);
            exps[n] = static_cast<std::int32_t>(k % L);
        }
        chars.emplace_back(q, L, std::move(exps));
    };
    if (q == 1) {
        chars.emplace_back(1, 1, std::vector<std::int32_t>{0});
        return chars;
    }
    // odometer over exponent tuples; the all-zero tuple (principal) comes first
    while (true) {
        emit();
        std::size_t i = 0;
        while (i < a.size()) {
            if (++a[i] < orders[i]) break;
            a[i] = 0;
            ++i;
        }
        if (i == a.size()) break;
    }
    return chars;
}

// Gauss sum tau(chi) = sum_{a mod q} chi(a) e(a/q), by direct summation.
inline std::complex<double> gauss_sum(const DirichletCharacter& chi) {
    std::uint32_t q = chi.modulus();
    std::complex<double> s = 0.0;
    for (std::uint32_t a = 0; a < q; ++a) {
        if (chi.exponent(a) < 0) continue;
        long double t = 2.0L * 3.14159265358979323846264338327950288L * a / q;
        s += chi(a) * std::complex<double>(static_cast<double>(cosl(t)), static_cast<double>(sinl(t)));
    }
    return s;
}

// Returns (e(nl/q), (1/phi(q)) * sum_chi chi(l) tau(conj chi) chi(n));
// the two agree whenever gcd(nl, q) = 1.
inline std::pair<std::complex<double>, std::complex<double>>
additive_decomposition(std::uint64_t n, std::uint64_t l, std::uint32_t q,
                       const std::vector<DirichletCharacter>* chars = nullptr) {
    if (q == 0) throw std::invalid_argument("additive_decomposition: q >= 1 required");
    if (std::gcd(n * l % q, static_cast<std::uint64_t>(q)) != 1 && q > 1)
        throw std::invalid_argument("additive_decomposition: gcd(nl, q) must be 1");

    std::complex<double> lhs = e_of(static_cast<double>(n % q * (l % q) % q) / q);

    std::vector<DirichletCharacter> local;
    if (!chars) {
        local = all_characters(q);
        chars = &local;
    }
    std::complex<double> acc = 0.0;
    for (const auto& chi : *chars) {
        // tau(conj chi) = conj(tau(chi)) * chi(-1); direct: sum with conjugated values
        std::complex<double> tau_bar = 0.0;
        for (std::uint32_t a = 0; a < q; ++a) {
            if (chi.exponent(a) < 0) continue;
            long double t = 2.0L * 3.14159265358979323846264338327950288L * a / q;
            tau_bar += std::conj(chi(a)) *
                       std::complex<double>(static_cast<double>(cosl(t)), static_cast<double>(sinl(t)));
        }
        acc += chi(l) * tau_bar * chi(n);
    }
    acc /= static_cast<double>(totient(q));
    return {lhs, acc};
}

} // namespace expsums

#endif
