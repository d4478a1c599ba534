/*
 * Finite fields F_{p^e}, p in {2, 3, 5}.
 *
 * An element is an integer whose base-p digits are its power-basis coordinates, lowest first.
 * Up to 2^16 elements we use log/exp tables; bigger binary fields (e <= 63) multiply by
 * shift-and-reduce.
 */
#pragma once

#include "kummerlab/intmat.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kummerlab {

namespace detail {

/// Dense polynomial over F_p, lowest degree first, trimmed.
using PrimePoly = std::vector<unsigned>;

inline void pp_trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PrimePoly pp_mod(PrimePoly a, const PrimePoly& m, unsigned p) {
    pp_trim(a);
    const std::size_t dm = m.size() - 1;
    unsigned lead_inv = 1;
    for (unsigned c = 1; c < p; ++c)
        if ((c * m.back()) % p == 1) lead_inv = c;
    while (a.size() > dm) {
        unsigned c = (a.back() * lead_inv) % p;
        std::size_t sh = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[sh + i] = (a[sh + i] + p * p - c * m[i] % p) % p;
        pp_trim(a);
    }
    return a;
}

inline PrimePoly pp_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, unsigned p) {
    if (a.empty() || b.empty()) return {};
    PrimePoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return pp_mod(r, m, p);
}

inline PrimePoly pp_sub(PrimePoly a, const PrimePoly& b, unsigned p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    pp_trim(a);
    return a;
}

inline PrimePoly pp_gcd(PrimePoly a, PrimePoly b, unsigned p) {
    pp_trim(a);
    pp_trim(b);
    while (!b.empty()) {
        PrimePoly r = pp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// x^(p^k) mod m.
inline PrimePoly pp_frobenius_power(const PrimePoly& m, unsigned p, unsigned k) {
    PrimePoly x{0, 1};
    PrimePoly cur = pp_mod(x, m, p);
    for (unsigned step = 0; step < k; ++step) {
        PrimePoly acc{1};
        for (unsigned i = 0; i < p; ++i) acc = pp_mulmod(acc, cur, m, p);
        cur = acc;
    }
    return cur;
}

/// Rabin's test: m of degree e is irreducible iff x^(p^e) = x mod m and gcd(x^(p^(e/r)) - x, m) = 1 for primes r | e.
inline bool pp_irreducible(const PrimePoly& m, unsigned p) {
    const unsigned e = static_cast<unsigned>(m.size() - 1);
    if (e == 0) return false;
    if (e == 1) return true;
    PrimePoly x{0, 1};
    if (pp_sub(pp_frobenius_power(m, p, e), pp_mod(x, m, p), p).size() != 0) return false;
    for (unsigned r = 2; r <= e; ++r) {
        if (e % r != 0) continue;
        bool prime = true;
        for (unsigned d = 2; d * d <= r; ++d)
            if (r % d == 0) prime = false;
        if (!prime) continue;
        PrimePoly g = pp_gcd(m, pp_sub(pp_frobenius_power(m, p, e / r), x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

/// Lexicographically smallest monic irreducible of degree e (coefficients read from the top).
inline PrimePoly smallest_irreducible(unsigned p, unsigned e) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < e && count < (std::uint64_t(1) << 40); ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        PrimePoly m(e + 1, 0);
        m[e] = 1;
        std::uint64_t c = code;
        // enumerate low-weight candidates first: code indexes coefficients from degree 0 upward
        for (unsigned i = 0; i < e; ++i) {
            m[i] = static_cast<unsigned>(c % p);
            c /= p;
        }
        if (m[0] == 0) continue;
        if (pp_irreducible(m, p)) return m;
    }
    throw std::runtime_error("no irreducible polynomial found");
}

}  // namespace detail

/// The finite field F_{p^e}.
class GF {
public:
    using Elem = std::uint64_t;

    GF() : GF(2, 1) {}
    GF(unsigned p, unsigned e) : GF(p, e, detail::smallest_irreducible(p, e)) {}
    GF(unsigned p, unsigned e, std::vector<unsigned> modulus) : p_(p), e_(e), mod_(std::move(modulus)) {
        if (p != 2 && p != 3 && p != 5) throw std::invalid_argument("characteristic must be 2, 3 or 5");
        if (e == 0) throw std::invalid_argument("extension degree must be positive");
        if (p == 2 && e > 63) throw std::invalid_argument("binary fields are limited to e <= 63");
        q_ = 1;
        for (unsigned i = 0; i < e; ++i) {
            if (q_ > std::numeric_limits<std::uint64_t>::max() / p) throw std::invalid_argument("field too large");
            q_ *= p;
        }
        if (p != 2 && q_ > (1u << 16)) throw std::invalid_argument("odd-characteristic fields are limited to 2^16 elements");
        if (mod_.size() != e + 1 || mod_.back() != 1) throw std::invalid_argument("modulus must be monic of degree e");
        for (unsigned c : mod_)
            if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
        if (!detail::pp_irreducible(mod_, p)) throw std::invalid_argument("modulus is not irreducible");
        if (p == 2)
            for (unsigned i = 0; i < e; ++i)
                if (mod_[i]) low_ |= std::uint64_t(1) << i;
        if (q_ <= (1u << 16)) build_tables();
    }

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return e_; }
    std::uint64_t size() const { return q_; }
    BigInt order() const { return BigInt(q_); }
    const std::vector<unsigned>& modulus() const { return mod_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        Elem r = 0, mul = 1;
        for (unsigned i = 0; i < e_; ++i) {
            r += ((a % p_ + b % p_) % p_) * mul;
            a /= p_;
            b /= p_;
            mul *= p_;
        }
        return r;
    }
    Elem neg(Elem a) const {
        if (p_ == 2) return a;
        Elem r = 0, mul = 1;
        for (unsigned i = 0; i < e_; ++i) {
            r += ((p_ - a % p_) % p_) * mul;
            a /= p_;
            mul *= p_;
        }
        return r;
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) {
            std::uint64_t s = log_[a] + log_[b];
            if (s >= q_ - 1) s -= q_ - 1;
            return exp_[s];
        }
        return mul_slow(a, b);
    }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("division by zero in finite field");
        if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
        return pow(a, q_ - 2);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t n) const {
        Elem r = 1;
        while (n) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    /// Inverse Frobenius: the unique b with b^p = a.
    Elem frob_root(Elem a) const {
        if (a == 0) return 0;
        if (!log_.empty()) {
            // log(b) = log(a) * p^(e-1) mod (q-1)
            std::uint64_t l = log_[a];  // tables exist only for q <= 2^16
            for (unsigned i = 0; i + 1 < e_; ++i) l = (l * p_) % (q_ - 1);
            return exp_[l];
        }
        Elem r = a;
        for (unsigned i = 0; i + 1 < e_; ++i) r = pow(r, p_);
        return r;
    }
    Elem frob(Elem a) const { return pow(a, p_); }

    Elem from_int(long long k) const {
        long long m = ((k % static_cast<long long>(p_)) + p_) % p_;
        return static_cast<Elem>(m);
    }
    /// Element with encoding i (i < q).
    Elem from_index(std::uint64_t i) const {
        if (i >= q_) throw std::out_of_range("element index out of range");
        return i;
    }
    Elem random(std::mt19937_64& rng) const { return std::uniform_int_distribution<std::uint64_t>(0, q_ - 1)(rng); }
    Elem random_nonzero(std::mt19937_64& rng) const {
        return std::uniform_int_distribution<std::uint64_t>(1, q_ - 1)(rng);
    }

    /// Coordinates little-endian (coefficient of z^0 first).
    std::string str(Elem a) const {
        std::string s;
        for (unsigned i = 0; i < e_; ++i) {
            s += static_cast<char>('0' + a % p_);
            a /= p_;
        }
        return s;
    }
    Elem parse(const std::string& s) const {
        if (s.size() != e_) throw std::invalid_argument("field element '" + s + "' must have " + std::to_string(e_) + " digits");
        Elem r = 0, mul = 1;
        for (char c : s) {
            if (c < '0' || static_cast<unsigned>(c - '0') >= p_)
                throw std::invalid_argument("bad digit in field element '" + s + "'");
            r += static_cast<Elem>(c - '0') * mul;
            mul *= p_;
        }
        return r;
    }

    /// True when F_4 is a subfield.
    bool contains_f4() const { return p_ == 2 && e_ % 2 == 0; }

    /// A root of z^2 + z + 1 when F_4 is a subfield.
    Elem f4_generator() const {
        if (!contains_f4()) throw std::domain_error("F_4 is not a subfield");
        for (Elem a = 2; a < q_; ++a) {
            Elem b = pow(a, (q_ - 1) / 3);
            if (b != 1) return b;
        }
        throw std::logic_error("no element of order 3");
    }

    bool operator==(const GF& o) const { return p_ == o.p_ && e_ == o.e_ && mod_ == o.mod_; }

private:
    unsigned p_ = 2, e_ = 1;
    std::vector<unsigned> mod_;
    std::uint64_t q_ = 2;
    std::uint64_t low_ = 0;  // binary modulus without the leading term
    std::vector<std::uint64_t> log_, exp_;

    Elem mul_slow(Elem a, Elem b) const {
        if (p_ == 2) {
            Elem r = 0;
            const Elem top = Elem(1) << (e_ - 1);
            const Elem mask = e_ == 64 ? ~Elem(0) : ((Elem(1) << e_) - 1);
            while (b) {
                if (b & 1) r ^= a;
                b >>= 1;
                bool carry = (a & top) != 0;
                a = (a << 1) & mask;
                if (carry) a ^= low_;
            }
            return r;
        }
        detail::PrimePoly pa, pb;
        for (unsigned i = 0; i < e_; ++i) {
            pa.push_back(static_cast<unsigned>(a % p_));
            pb.push_back(static_cast<unsigned>(b % p_));
            a /= p_;
            b /= p_;
        }
        detail::pp_trim(pa);
        detail::pp_trim(pb);
        detail::PrimePoly r = detail::pp_mulmod(pa, pb, mod_, p_);
        Elem out = 0, m = 1;
        for (unsigned c : r) {
            out += c * m;
            m *= p_;
        }
        return out;
    }

    std::vector<std::uint64_t> order_factors() const {
        std::vector<std::uint64_t> fs;
        std::uint64_t n = q_ - 1;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                fs.push_back(d);
                while (n % d == 0) n /= d;
            }
        if (n > 1) fs.push_back(n);
        return fs;
    }

    bool has_full_order(Elem g) const {
        if (g == 0) return false;
        if (q_ == 2) return g == 1;
        for (std::uint64_t f : order_factors())
            if (mul_slow_pow(g, (q_ - 1) / f) == 1) return false;
        return true;
    }

    Elem mul_slow_pow(Elem a, std::uint64_t n) const {
        Elem r = 1;
        while (n) {
            if (n & 1) r = mul_slow(r, a);
            a = mul_slow(a, a);
            n >>= 1;
        }
        return r;
    }

    void build_tables() {
        if (q_ == 2) {
            log_ = {0, 0};
            exp_ = {1, 1};
            return;
        }
        Elem g = 0;
        for (Elem c = 2; c < q_ && g == 0; ++c)
            if (has_full_order(c)) g = c;
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        Elem x = 1;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = x;
            log_[x] = i;
            x = mul_slow(x, g);
        }
    }
};

}  // namespace kummerlab
