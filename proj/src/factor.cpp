#include "hshadow/factor.hpp"

#include "hshadow/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace hshadow {

namespace {

// ---- arithmetic in F_p[x]; polynomials low degree first, coefficients in [0, p)

using ModPoly = std::vector<Integer>;

ModPoly mod_trim(ModPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

ModPoly mod_reduce(const ZPoly& a, const Integer& p) {
    ModPoly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mpz_mod(out[i].get_mpz_t(), a[i].get_mpz_t(), p.get_mpz_t());
    return mod_trim(std::move(out));
}

Integer mod_inverse(const Integer& a, const Integer& p) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) throw std::domain_error("non-invertible residue");
    return inv;
}

ModPoly mod_sub(const ModPoly& a, const ModPoly& b, const Integer& p) {
    ModPoly out(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
        Integer v = (i < a.size() ? a[i] : Integer(0)) - (i < b.size() ? b[i] : Integer(0));
        mpz_mod(out[i].get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    }
    return mod_trim(std::move(out));
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const Integer& p) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    for (auto& c : out) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    return mod_trim(std::move(out));
}

std::pair<ModPoly, ModPoly> mod_divmod(const ModPoly& a, const ModPoly& b, const Integer& p) {
    if (b.empty()) throw std::domain_error("F_p[x] division by zero");
    ModPoly rem = a;
    if (rem.size() < b.size()) return {ModPoly{}, rem};
    ModPoly quot(rem.size() - b.size() + 1, Integer(0));
    const Integer inv = mod_inverse(b.back(), p);
    for (std::size_t i = rem.size(); i-- >= b.size();) {
        Integer coef = rem[i] * inv;
        mpz_mod(coef.get_mpz_t(), coef.get_mpz_t(), p.get_mpz_t());
        quot[i - (b.size() - 1)] = coef;
        if (coef == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            Integer& r = rem[i - (b.size() - 1) + j];
            r -= coef * b[j];
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
        }
    }
    return {mod_trim(std::move(quot)), mod_trim(std::move(rem))};
}

ModPoly mod_monic(ModPoly a, const Integer& p) {
    if (a.empty()) return a;
    const Integer inv = mod_inverse(a.back(), p);
    for (auto& c : a) {
        c *= inv;
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    }
    return a;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, const Integer& p) {
    while (!b.empty()) {
        ModPoly r = mod_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return mod_monic(std::move(a), p);
}

ModPoly mod_powmod(const ModPoly& base, Integer e, const ModPoly& f, const Integer& p) {
    ModPoly result{Integer(1)};
    ModPoly b = mod_divmod(base, f, p).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = mod_divmod(mod_mul(result, b, p), f, p).second;
        e >>= 1;
        if (e > 0) b = mod_divmod(mod_mul(b, b, p), f, p).second;
    }
    return result;
}

int mod_degree(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

/// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f, const Integer& p) {
    std::vector<std::pair<ModPoly, int>> out;
    const ModPoly x{Integer(0), Integer(1)};
    ModPoly h = x;
    for (int d = 1; 2 * d <= mod_degree(f); ++d) {
        h = mod_powmod(h, p, f, p);
        ModPoly g = mod_gcd(f, mod_sub(h, x, p), p);
        if (mod_degree(g) > 0) {
            out.emplace_back(g, d);
            f = mod_divmod(f, g, p).first;
            h = mod_divmod(h, f, p).second;
        }
    }
    if (mod_degree(f) > 0) out.emplace_back(f, mod_degree(f));
    return out;
}

/// Cantor-Zassenhaus equal-degree splitting (p odd).
void equal_degree(const ModPoly& f, int d, const Integer& p, gmp_randclass& rng, std::vector<ModPoly>& out) {
    if (mod_degree(f) == d) {
        out.push_back(f);
        return;
    }
    Integer pd;
    mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    const Integer exponent = (pd - 1) / 2;
    for (;;) {
        ModPoly a(static_cast<std::size_t>(mod_degree(f)));
        for (auto& c : a) c = rng.get_z_range(p);
        a = mod_trim(std::move(a));
        if (mod_degree(a) < 1) continue;
        ModPoly g = mod_gcd(f, a, p);
        if (mod_degree(g) > 0 && mod_degree(g) < mod_degree(f)) {
            equal_degree(g, d, p, rng, out);
            equal_degree(mod_divmod(f, g, p).first, d, p, rng, out);
            return;
        }
        ModPoly b = mod_sub(mod_powmod(a, exponent, f, p), ModPoly{Integer(1)}, p);
        g = mod_gcd(f, b, p);
        if (mod_degree(g) > 0 && mod_degree(g) < mod_degree(f)) {
            equal_degree(g, d, p, rng, out);
            equal_degree(mod_monic(mod_divmod(f, g, p).first, p), d, p, rng, out);
            return;
        }
    }
}

ZPoly symmetric_lift(const ModPoly& a, const Integer& p) {
    const Integer half = p / 2;
    ZPoly out(a.begin(), a.end());
    for (auto& c : out)
        if (c > half) c -= p;
    return trim(out);
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    while (k > 0) {
        --k;
        if (idx[k] < n - idx.size() + k) {
            ++idx[k];
            for (std::size_t j = k + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// Factors a primitive squarefree polynomial of degree >= 2 without rational roots.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    const int n = degree(f);
    Integer norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    root += 1;
    Integer lc = abs(f.back());
    Integer bound = lc * root;
    bound <<= static_cast<mp_bitcnt_t>(n);
    Integer p = 2 * bound + 1;
    const ZPoly df = [&] {
        ZPoly d;
        for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
        return d;
    }();
    for (;;) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (mpz_divisible_p(f.back().get_mpz_t(), p.get_mpz_t())) continue;
        ModPoly fp = mod_reduce(f, p);
        if (mod_degree(mod_gcd(fp, mod_reduce(df, p), p)) == 0) break;
    }

    ModPoly fp = mod_monic(mod_reduce(f, p), p);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(20240531UL);
    std::vector<ModPoly> modular;
    for (auto& [g, d] : distinct_degree(fp, p)) equal_degree(g, d, p, rng, modular);
    std::sort(modular.begin(), modular.end(), [](const ModPoly& a, const ModPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });

    std::vector<ZPoly> found;
    ZPoly rest = f;
    std::size_t subset = 1;
    while (2 * subset <= modular.size()) {
        bool split = false;
        std::vector<std::size_t> idx(subset);
        for (std::size_t i = 0; i < subset; ++i) idx[i] = i;
        for (;;) {
            ModPoly prod{Integer(rest.back())};
            mpz_mod(prod[0].get_mpz_t(), prod[0].get_mpz_t(), p.get_mpz_t());
            for (std::size_t i : idx) prod = mod_mul(prod, modular[i], p);
            ZPoly candidate = primitive_part(symmetric_lift(prod, p));
            if (degree(candidate) >= 1) {
                if (auto q = exact_divide(rest, candidate)) {
                    found.push_back(candidate);
                    rest = *q;
                    for (std::size_t k = subset; k-- > 0;) modular.erase(modular.begin() + static_cast<long>(idx[k]));
                    split = true;
                    break;
                }
            }
            if (!next_combination(idx, modular.size())) break;
        }
        if (!split) ++subset;
    }
    if (degree(rest) >= 1) found.push_back(primitive_part(rest));
    return found;
}

std::vector<Integer> positive_divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Splits off linear factors q*x - p by the rational root test (cheap
/// coefficient sizes only; Zassenhaus catches anything skipped).
std::vector<ZPoly> split_rational_roots(ZPoly& f) {
    std::vector<ZPoly> linear;
    while (degree(f) >= 1 && f[0] == 0) {
        linear.push_back(ZPoly{Integer(0), Integer(1)});
        f.erase(f.begin());
    }
    if (degree(f) < 1) return linear;
    const Integer limit("1000000000000");
    if (abs(f[0]) > limit || abs(f.back()) > limit) return linear;
    const auto nums = positive_divisors(f[0]);
    const auto dens = positive_divisors(f.back());
    for (const auto& den : dens)
        for (const auto& num : nums)
            for (int s : {1, -1}) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                if (g != 1) continue;
                ZPoly lin{Integer(-s * num), den};
                while (degree(f) >= 1) {
                    auto q = exact_divide(f, lin);
                    if (!q) break;
                    linear.push_back(primitive_part(lin));
                    f = *q;
                }
            }
    return linear;
}

}  // namespace

std::vector<IrreducibleFactor> squarefree_decomposition(const ZPoly& f_in) {
    ZPoly f = primitive_part(f_in);
    std::vector<IrreducibleFactor> out;
    if (degree(f) < 1) return out;
    Polynomial fq = to_rational(f);
    Polynomial a = gcd(fq, fq.derivative());
    Polynomial b = divmod(fq, a).first;
    Polynomial c = divmod(fq.derivative(), a).first;
    Polynomial d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() >= 1) {
        Polynomial ai = gcd(b, d);
        Polynomial bn = divmod(b, ai).first;
        Polynomial cn = divmod(d, ai).first;
        if (ai.degree() >= 1) out.push_back({to_primitive_integer(ai), i});
        b = bn;
        d = cn - b.derivative();
        ++i;
    }
    return out;
}

std::vector<IrreducibleFactor> factor_over_integers(const ZPoly& f) {
    if (trim(f).empty()) throw std::domain_error("factorization of zero polynomial");
    std::map<ZPoly, unsigned> tally;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        ZPoly rest = part;
        for (auto& lin : split_rational_roots(rest)) tally[lin] += mult;
        rest = primitive_part(rest);
        if (degree(rest) < 1) continue;
        if (degree(rest) == 1) {
            tally[rest] += mult;
            continue;
        }
        if (degree(rest) > kMaxFactorDegree)
            throw ValidationError("factorization limited to degree " + std::to_string(kMaxFactorDegree) + ", got degree " +
                                  std::to_string(degree(rest)));
        for (auto& g : zassenhaus(rest)) tally[g] += mult;
    }
    std::vector<IrreducibleFactor> out;
    for (auto& [poly, mult] : tally) out.push_back({poly, mult});
    std::sort(out.begin(), out.end(), [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        return a.poly < b.poly;
    });
    return out;
}

}  // namespace hshadow
