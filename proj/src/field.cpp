#include "shallowcode/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "shallowcode/errors.hpp"

namespace shallowcode {
namespace {

constexpr std::uint32_t kTableMaxQ = 4096;  // exp/log tables stay cache-resident

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over F_p as coefficient vectors, low degree first, trimmed.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        // b is monic, so the quotient digit is just the leading coefficient.
        std::uint32_t c = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint32_t sub = (c * b[i]) % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

// Decode the scan index into (c_0 .. c_{m-1}); c_0 is the most significant
// digit so that increasing v enumerates coefficient sequences in
// lexicographic order compared low-degree-first.
Poly decode_lex(std::uint64_t v, std::uint32_t p, std::uint32_t m) {
    Poly c(m + 1, 0);
    c[m] = 1;  // monic
    for (std::uint32_t i = 0; i < m; ++i) {
        std::uint64_t pw = 1;
        for (std::uint32_t j = 0; j < m - 1 - i; ++j) pw *= p;
        c[i] = static_cast<std::uint32_t>((v / pw) % p);
    }
    return c;
}

bool divides_any_monic_of_degree(const Poly& f, std::uint32_t deg, std::uint32_t p) {
    // Enumerate all monic divisors of the given degree and trial-divide.
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
        Poly d(deg + 1, 0);
        d[deg] = 1;
        std::uint64_t t = v;
        for (std::uint32_t i = 0; i < deg; ++i) {
            d[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        if (poly_mod(f, d, p).empty()) return true;
    }
    return false;
}

bool is_irreducible(const Poly& f, std::uint32_t m, std::uint32_t p) {
    if (f[0] == 0) return false;  // divisible by x
    for (std::uint32_t deg = 1; deg <= m / 2; ++deg)
        if (divides_any_monic_of_degree(f, deg, p)) return false;
    return true;
}

std::vector<std::uint32_t> to_digits(std::uint32_t idx, std::uint32_t p, std::uint32_t m) {
    std::vector<std::uint32_t> d(m, 0);
    for (std::uint32_t i = 0; i < m && idx != 0; ++i) {
        d[i] = idx % p;
        idx /= p;
    }
    return d;
}

std::uint32_t from_digits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    std::uint32_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + (i < d.size() ? d[i] : 0);
    return idx;
}

}  // namespace

Elem Field::add(Elem a, Elem b) const {
    const auto& d = *data_;
    if (d.is_binary) return a ^ b;
    if (d.m == 1) return static_cast<Elem>((a + b) % d.p);
    std::uint32_t out = 0, pw = 1;
    std::uint32_t x = a, y = b;
    for (std::uint32_t i = 0; i < d.m; ++i) {
        out += ((x % d.p + y % d.p) % d.p) * pw;
        x /= d.p;
        y /= d.p;
        pw *= d.p;
    }
    return static_cast<Elem>(out);
}

Elem Field::neg(Elem a) const {
    const auto& d = *data_;
    if (d.is_binary) return a;
    if (d.m == 1) return static_cast<Elem>((d.p - a) % d.p);
    std::uint32_t out = 0, pw = 1;
    std::uint32_t x = a;
    for (std::uint32_t i = 0; i < d.m; ++i) {
        out += ((d.p - x % d.p) % d.p) * pw;
        x /= d.p;
        pw *= d.p;
    }
    return static_cast<Elem>(out);
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul_schoolbook(Elem a, Elem b) const {
    const auto& d = *data_;
    if (d.m == 1) return static_cast<Elem>((static_cast<std::uint32_t>(a) * b) % d.p);
    auto da = to_digits(a, d.p, d.m);
    auto db = to_digits(b, d.p, d.m);
    std::vector<std::uint32_t> prod(2 * d.m - 1, 0);
    for (std::uint32_t i = 0; i < d.m; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < d.m; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % d.p;
    }
    // Reduce modulo the modulus polynomial (monic of degree m).
    for (std::size_t k = prod.size(); k-- > d.m;) {
        std::uint32_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (std::uint32_t i = 0; i < d.m; ++i) {
            std::uint32_t sub = (c * d.modulus[i]) % d.p;
            prod[k - d.m + i] = (prod[k - d.m + i] + d.p - sub) % d.p;
        }
    }
    prod.resize(d.m);
    return static_cast<Elem>(from_digits(prod, d.p));
}

Elem Field::mul(Elem a, Elem b) const {
    const auto& d = *data_;
    if (a == 0 || b == 0) return 0;
    if (d.tabulated) {
        std::uint64_t s = d.log_table[a] + d.log_table[b];
        if (s >= d.q - 1) s -= d.q - 1;
        return d.exp_table[s];
    }
    return mul_schoolbook(a, b);
}

Elem Field::inv(Elem a) const {
    const auto& d = *data_;
    if (a == 0) raise("DivisionByZero", "inv(0) is undefined");
    if (d.tabulated) {
        std::uint32_t l = d.log_table[a];
        return d.exp_table[l == 0 ? 0 : d.q - 1 - l];
    }
    return pow(a, d.q - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    Elem result = 1, base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Elem Field::uniform(RandomStream& rs) const {
    return static_cast<Elem>(rs.below(data_->q));
}

Elem Field::uniform_nonzero(RandomStream& rs) const {
    return static_cast<Elem>(1 + rs.below(data_->q - 1));
}

Field Field::make(std::uint32_t q) {
    if (q < 2 || q > (1u << 16)) raise("NotPrimePower", "q must satisfy 2 <= q <= 2^16, got " + std::to_string(q));
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    std::uint32_t m = 0, t = q;
    while (t % p == 0) {
        t /= p;
        ++m;
    }
    if (t != 1) raise("NotPrimePower", std::to_string(q) + " has two distinct prime factors");
    if (!is_prime(p)) raise("NotPrimePower", std::to_string(q) + " is not a prime power");

    // Canonical fields are cached; Data is immutable after construction.
    static std::mutex cache_mutex;
    static std::map<std::uint32_t, std::shared_ptr<const Data>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(q);
        if (it != cache.end()) return Field(it->second);
    }

    auto data = std::make_shared<Data>();
    data->q = q;
    data->p = p;
    data->m = m;
    data->is_binary = (p == 2);

    if (m == 1) {
        data->modulus = {0, 1};  // the degenerate polynomial x
    } else {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < m; ++i) count *= p;
        bool found = false;
        for (std::uint64_t v = 0; v < count && !found; ++v) {
            Poly f = decode_lex(v, p, m);
            if (is_irreducible(f, m, p)) {
                data->modulus.assign(f.begin(), f.end());
                found = true;
            }
        }
        if (!found) raise("NotPrimePower", "no irreducible modulus found (internal)");
    }

    Field field{std::shared_ptr<const Data>(data)};
    if (q <= kTableMaxQ) {
        // Find a generator and build exp/log tables via schoolbook products.
        data->exp_table.assign(q - 1, 0);
        data->log_table.assign(q, 0);
        for (std::uint32_t g = 1; g < q; ++g) {
            Elem x = 1;
            std::uint32_t i = 0;
            for (; i < q - 1; ++i) {
                data->exp_table[i] = x;
                x = field.mul_schoolbook(x, static_cast<Elem>(g));
                if (x == 1) {
                    ++i;
                    break;
                }
            }
            if (i == q - 1 && x == 1) {
                for (std::uint32_t e = 0; e < q - 1; ++e) data->log_table[data->exp_table[e]] = e;
                data->tabulated = true;
                break;
            }
        }
    }

    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(q, data);
    }
    return field;
}

}  // namespace shallowcode
