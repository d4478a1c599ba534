// Rational double points in characteristic 2 and the bound f(m) + b - n_B <= 5.
#pragma once

#include "kummerlab/codes.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kummerlab {

/// A_N, D_N^r or E_N^r; the coindex is stored doubled so that D_{2l+1}^{1/2} has r2 = 1.
struct RdpType {
    char family = 'A';
    int n = 1;
    int r2 = 0;

    auto operator<=>(const RdpType&) const = default;

    bool legal() const {
        switch (family) {
            case 'A': return n >= 1 && r2 == 0;
            case 'D':
                if (n < 4) return false;
                if (n % 2 == 0) return r2 % 2 == 0 && r2 >= 0 && r2 <= n - 2;  // r = 0..l-1
                return r2 % 2 == 1 && r2 >= 1 && r2 <= n - 2;                   // r = 1/2..l-1/2
            case 'E':
                if (n == 6) return r2 == 0 || r2 == 2;
                if (n == 7) return r2 % 2 == 0 && r2 >= 0 && r2 <= 6;
                if (n == 8) return r2 % 2 == 0 && r2 >= 0 && r2 <= 8;
                return false;
        }
        return false;
    }

    std::string str() const {
        std::string s(1, family);
        s += std::to_string(n);
        if (family == 'A') return s;
        if (r2 % 2 == 0) return s + "^" + std::to_string(r2 / 2);
        return s + "^" + std::to_string(r2) + "/2";
    }
};

inline RdpType rdp(char family, int n, int r2 = -1) {
    if (r2 < 0) r2 = (family == 'D' && n % 2 == 1) ? 1 : 0;
    RdpType t{family, n, r2};
    if (!t.legal()) throw std::invalid_argument("illegal RDP type " + t.str());
    return t;
}

/// "A3", "D16r0", "D16^0", "D5r1/2", "E8^0"; the coindex defaults to 0 (1/2 for odd D).
inline RdpType parse_rdp(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'A' && s[0] != 'D' && s[0] != 'E'))
        throw std::invalid_argument("malformed RDP type '" + s + "'");
    std::size_t pos = 1;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == 1) throw std::invalid_argument("malformed RDP type '" + s + "'");
    const int n = std::stoi(s.substr(1, pos - 1));
    int r2 = -1;
    if (pos < s.size()) {
        if (s[pos] != 'r' && s[pos] != '^') throw std::invalid_argument("malformed RDP type '" + s + "'");
        std::string r = s.substr(pos + 1);
        auto slash = r.find('/');
        try {
            if (slash == std::string::npos) {
                r2 = 2 * std::stoi(r);
            } else {
                if (r.substr(slash + 1) != "2") throw std::invalid_argument("coindex denominator must be 2");
                r2 = std::stoi(r.substr(0, slash));
            }
        } catch (const std::logic_error&) {
            throw std::invalid_argument("malformed coindex in '" + s + "'");
        }
    }
    return rdp(s[0], n, r2);
}

/// n_B(z); zero exactly for F-injective types.
inline int b_index(const RdpType& t) {
    if (!t.legal()) throw std::invalid_argument("illegal RDP type " + t.str());
    switch (t.family) {
        case 'A': return 0;
        case 'D': return ceil_log2((t.n - t.r2) / 2);  // N/2 - r = (N - r2)/2
        case 'E': {
            const int r = t.r2 / 2;
            if (t.n == 8) return r == 0 ? 3 : r == 1 ? 3 : r == 2 ? 2 : r == 3 ? 1 : 0;
            if (t.n == 7) return r == 0 ? 3 : r == 1 ? 2 : r == 2 ? 1 : 0;
            return r == 0 ? 1 : 0;
        }
    }
    return 0;
}

/// dim B-bar_{n,z}, constant for n >= b_index.
inline int dim_b_bar(const RdpType& t, int n) {
    if (!t.legal()) throw std::invalid_argument("illegal RDP type " + t.str());
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    const int nb = b_index(t);
    if (nb == 0 || n == 0) return 0;
    n = std::min(n, nb);
    switch (t.family) {
        case 'D': {
            const long long m = (t.n - t.r2) / 2 - 1;  // N/2 - r - 1
            return static_cast<int>(m - m / (1LL << n));
        }
        case 'E': {
            const int r = t.r2 / 2;
            if (t.n == 8 && r == 0) return n + 1;  // 2, 3, 4
            return n;                              // 1, 2, ... up to the index
        }
    }
    return 0;
}

struct Imb {
    int i, m, b;
    bool operator==(const Imb&) const = default;
};

/// (i_z, m_z, b_z); b_z is tabulated for A_N, D_{2l}^0, D_{2l+1}^{1/2} and E_N^0 only.
inline Imb mzbz(const RdpType& t) {
    if (!t.legal()) throw std::invalid_argument("illegal RDP type " + t.str());
    Imb v{t.n, 0, 0};
    switch (t.family) {
        case 'A': v.m = t.n % 2 == 1 ? (t.n - 1) / 2 + 1 : 0; break;
        case 'D': v.m = t.n % 2 == 0 ? t.n / 2 + 1 : 2; break;
        case 'E': v.m = t.n == 7 ? 3 : 0; break;
    }
    const bool tabulated = t.family == 'A' || (t.family == 'D' && t.r2 == (t.n % 2)) || (t.family == 'E' && t.r2 == 0);
    if (!tabulated) throw std::invalid_argument("b_z is not tabulated for " + t.str());
    switch (t.family) {
        case 'A': v.b = 0; break;
        case 'D': v.b = t.n / 2 - 1; break;
        case 'E': v.b = t.n == 6 ? 1 : t.n == 7 ? 3 : 4; break;
    }
    return v;
}

class RdpCollection {
public:
    RdpCollection() = default;
    explicit RdpCollection(std::vector<RdpType> types) : types_(std::move(types)) {
        std::sort(types_.begin(), types_.end());
    }

    /// "16A1", "13A1+D4^0", "2E8r0".
    static RdpCollection parse(const std::string& s) {
        std::vector<RdpType> out;
        std::size_t start = 0;
        while (start <= s.size()) {
            std::size_t end = s.find('+', start);
            if (end == std::string::npos) end = s.size();
            std::string part = s.substr(start, end - start);
            if (part.empty()) throw std::invalid_argument("empty term in RDP collection '" + s + "'");
            std::size_t p = 0;
            while (p < part.size() && std::isdigit(static_cast<unsigned char>(part[p]))) ++p;
            const int count = p == 0 ? 1 : std::stoi(part.substr(0, p));
            RdpType t = parse_rdp(part.substr(p));
            for (int i = 0; i < count; ++i) out.push_back(t);
            start = end + 1;
        }
        return RdpCollection(out);
    }

    const std::vector<RdpType>& types() const { return types_; }
    bool empty() const { return types_.empty(); }

    int i() const { return sum([](const Imb& v) { return v.i; }); }
    int m() const { return sum([](const Imb& v) { return v.m; }); }
    int b() const { return sum([](const Imb& v) { return v.b; }); }
    int n_b() const {
        int r = 0;
        for (const auto& t : types_) r = std::max(r, b_index(t));
        return r;
    }

    std::string str() const {
        if (types_.empty()) return "0";
        std::map<RdpType, int> counts;
        for (const auto& t : types_) ++counts[t];
        std::string s;
        for (const auto& [t, c] : counts) {
            if (!s.empty()) s += "+";
            if (c > 1) s += std::to_string(c);
            s += t.str();
        }
        return s;
    }

    bool operator==(const RdpCollection&) const = default;

private:
    std::vector<RdpType> types_;

    template <class G>
    int sum(G get) const {
        int r = 0;
        for (const auto& t : types_) r += get(mzbz(t));
        return r;
    }
};

/// dim H^0(B_n) for an RDP K3 with this singular locus: sum of dim B-bar_{n,z} minus n, with n capped at n_B.
inline int h0_bn_dim(const RdpCollection& c, int n) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    n = std::min(n, c.n_b());
    int s = -n;
    for (const auto& t : c.types()) s += dim_b_bar(t, n);
    if (s < 0) throw std::domain_error("collection not realizable on an RDP K3");
    return s;
}

inline int leq5_value(const RdpCollection& c) { return f_bound(c.m()) + c.b() - c.n_b(); }

inline const std::vector<RdpCollection>& kummer_configurations() {
    static const std::vector<RdpCollection> k{RdpCollection::parse("16A1"), RdpCollection::parse("4D4^0"),
                                              RdpCollection::parse("2D8^0"), RdpCollection::parse("D16^0"),
                                              RdpCollection::parse("2E8^0")};
    return k;
}

/// Types allowed in the exhaustive check: A_N, D_{2l}^0, D_{2l+1}^{1/2}, E_6^0, E_7^0, E_8^0.
inline std::vector<RdpType> allowed_types(int max_index) {
    std::vector<RdpType> out;
    for (int n = 1; n <= max_index; ++n) {
        out.push_back(rdp('A', n));
        if (n >= 4) out.push_back(rdp('D', n));
        if (n >= 6 && n <= 8) out.push_back(rdp('E', n, 0));
    }
    return out;
}

struct Leq5Result {
    int max_value = 0;
    std::vector<RdpCollection> equality_cases;
    std::size_t collections = 0;  // nonempty and empty multisets examined
};

inline Leq5Result verify_leq5(int max_index = 16) {
    if (max_index < 0 || max_index > 24) throw std::invalid_argument("max_index out of range");
    const auto types = allowed_types(max_index);
    struct Acc {
        int i, m, b, nb;
    };
    // per-type invariants, precomputed
    std::vector<Acc> inv;
    for (const auto& t : types) {
        auto v = mzbz(t);
        inv.push_back({v.i, v.m, v.b, b_index(t)});
    }
    Leq5Result res;
    res.max_value = f_bound(0);
    std::vector<std::size_t> chosen;
    // non-decreasing sequences of type indices with total index <= max_index
    auto rec = [&](auto&& self, std::size_t from, Acc acc) -> void {
        ++res.collections;
        const int value = f_bound(acc.m) + acc.b - acc.nb;
        if (value > res.max_value) {
            res.max_value = value;
            res.equality_cases.clear();
        }
        if (value == res.max_value) {
            std::vector<RdpType> ts;
            for (auto c : chosen) ts.push_back(types[c]);
            res.equality_cases.emplace_back(ts);
        }
        for (std::size_t k = from; k < types.size(); ++k) {
            if (acc.i + inv[k].i > max_index) continue;
            chosen.push_back(k);
            self(self, k, Acc{acc.i + inv[k].i, acc.m + inv[k].m, acc.b + inv[k].b, std::max(acc.nb, inv[k].nb)});
            chosen.pop_back();
        }
    };
    rec(rec, 0, Acc{0, 0, 0, 0});
    std::sort(res.equality_cases.begin(), res.equality_cases.end(),
              [](const RdpCollection& a, const RdpCollection& b) { return a.str() < b.str(); });
    return res;
}

struct ZInftyBound {
    int bound = 0;
    bool sharpness_caveat = false;  // the f(m) bound is known not to be attained here
};

/// f(m) + b - n_B. The caveat marks collections outside the exhaustive range (total index above 16)
/// or reaching 5 without being a Kummer configuration.
inline ZInftyBound z_infty_upper_bound(const RdpCollection& c) {
    ZInftyBound z{leq5_value(c), false};
    const auto& k = kummer_configurations();
    const bool kummer = std::find(k.begin(), k.end(), c) != k.end();
    z.sharpness_caveat = c.i() > 16 || (z.bound == 5 && !kummer);
    return z;
}

}  // namespace kummerlab
