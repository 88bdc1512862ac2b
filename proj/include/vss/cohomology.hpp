#ifndef VSS_COHOMOLOGY_HPP
#define VSS_COHOMOLOGY_HPP

#include "vss/linalg.hpp"
#include "vss/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vss {

namespace detail {
// factor order: by second index, then first
inline bool factor_less(const std::pair<int, int>& a, const std::pair<int, int>& b)
{
    return a.second != b.second ? a.second < b.second : a.first < b.first;
}
} // namespace detail

/// A square-free product of generators a_ij (i < j) of H*(F(p)).  Factors are
/// kept sorted by (j, i).  The monomial is a *basis* (admissible) monomial
/// when the second indices are strictly increasing.
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(std::vector<std::pair<int, int>> factors)
    {
        for (const auto& [i, j] : factors)
            if (i >= j || i < 1)
                throw std::invalid_argument("Monomial: factors must have 1 <= i < j");
        std::sort(factors.begin(), factors.end(), detail::factor_less);
        for (std::size_t t = 1; t < factors.size(); ++t)
            if (factors[t] == factors[t - 1])
                throw std::invalid_argument("Monomial: repeated factor (square)");
        factors_ = std::move(factors);
    }

    const std::vector<std::pair<int, int>>& factors() const { return factors_; }
    int degree() const { return 2 * static_cast<int>(factors_.size()); }

    bool admissible() const
    {
        for (std::size_t t = 1; t < factors_.size(); ++t)
            if (factors_[t].second <= factors_[t - 1].second)
                return false;
        return true;
    }

    bool uses_all_indices(int p) const
    {
        std::vector<bool> used(p + 1, false);
        for (const auto& [i, j] : factors_) {
            if (j > p)
                return false;
            used[i] = used[j] = true;
        }
        for (int x = 1; x <= p; ++x)
            if (!used[x])
                return false;
        return true;
    }

    bool operator==(const Monomial& rhs) const { return factors_ == rhs.factors_; }
    bool operator<(const Monomial& rhs) const
    {
        return std::lexicographical_compare(factors_.begin(), factors_.end(),
                                            rhs.factors_.begin(), rhs.factors_.end(),
                                            detail::factor_less);
    }

    /// "a12.a13"; the empty product prints as "1".  Single-digit indices only
    /// (p <= 9, which covers every supported computation).
    std::string to_text() const
    {
        if (factors_.empty())
            return "1";
        std::string out;
        for (std::size_t t = 0; t < factors_.size(); ++t) {
            const auto& [i, j] = factors_[t];
            if (j > 9)
                throw std::invalid_argument("Monomial::to_text: indices above 9 unsupported");
            if (t)
                out += '.';
            out += 'a';
            out += static_cast<char>('0' + i);
            out += static_cast<char>('0' + j);
        }
        return out;
    }

    static Monomial from_text(const std::string& text)
    {
        if (text == "1")
            return Monomial();
        std::vector<std::pair<int, int>> factors;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, '.')) {
            if (item.size() != 3 || item[0] != 'a')
                throw std::invalid_argument("Monomial::from_text: bad factor '" + item + "'");
            factors.emplace_back(item[1] - '0', item[2] - '0');
        }
        return Monomial(std::move(factors));
    }

private:
    std::vector<std::pair<int, int>> factors_;
};

/// An exact class in H^q(F(p)), expressed in admissible monomials.
struct CohClass {
    int p = 0;
    int q = 0;
    std::map<Monomial, Rational> coeffs;

    void add(const Monomial& m, const Rational& c)
    {
        auto it = coeffs.find(m);
        if (it == coeffs.end()) {
            if (c != 0)
                coeffs[m] = c;
            return;
        }
        it->second += c;
        if (it->second == 0)
            coeffs.erase(it);
    }

    bool is_zero() const { return coeffs.empty(); }

    bool operator==(const CohClass& rhs) const
    {
        return p == rhs.p && q == rhs.q && coeffs == rhs.coeffs;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, c] : coeffs)
            terms.push_back({{"mono", m.to_text()}, {"coeff", to_string(c)}});
        return {{"p", p}, {"q", q}, {"terms", terms}};
    }
};

/// Coefficients of the Poincare polynomial prod_{k=1}^{p-1} (1 + k t^2);
/// entry d is the t^{2d} coefficient.
inline std::vector<Integer> poincare_polynomial(int p)
{
    if (p < 1)
        throw std::invalid_argument("poincare_polynomial: p must be >= 1");
    std::vector<Integer> coeffs{1};
    for (int k = 1; k < p; ++k) {
        std::vector<Integer> next(coeffs.size() + 1, Integer(0));
        for (std::size_t d = 0; d < coeffs.size(); ++d) {
            next[d] += coeffs[d];
            next[d + 1] += coeffs[d] * k;
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

/// Admissible monomials of degree q on indices {1..p}, in lexicographic
/// order.  Cached; the returned reference stays valid for the process
/// lifetime.
inline const std::vector<Monomial>& basis(int p, int q)
{
    if (p < 0)
        throw std::invalid_argument("basis: p must be >= 0");
    if (q < 0 || q % 2 != 0)
        throw std::invalid_argument("basis: q must be even and >= 0");

    static std::map<std::pair<int, int>, std::vector<Monomial>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);

    auto it = cache.find({p, q});
    if (it != cache.end())
        return it->second;

    std::vector<Monomial> out;
    std::vector<std::pair<int, int>> current;
    const int want = q / 2;
    auto rec = [&](auto&& self, int min_j) -> void {
        if (static_cast<int>(current.size()) == want) {
            out.emplace_back(current);
            return;
        }
        for (int j = min_j; j <= p; ++j)
            for (int i = 1; i < j; ++i) {
                current.emplace_back(i, j);
                self(self, j + 1);
                current.pop_back();
            }
    };
    rec(rec, 2);
    assert(std::is_sorted(out.begin(), out.end()));
    return cache.emplace(std::pair{p, q}, std::move(out)).first->second;
}

inline const std::map<Monomial, std::size_t>& basis_lookup(int p, int q)
{
    static std::map<std::pair<int, int>, std::map<Monomial, std::size_t>> cache;
    static std::mutex mutex;
    const auto& b = basis(p, q);
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, q});
    if (it != cache.end())
        return it->second;
    std::map<Monomial, std::size_t> lookup;
    for (std::size_t idx = 0; idx < b.size(); ++idx)
        lookup[b[idx]] = idx;
    return cache.emplace(std::pair{p, q}, std::move(lookup)).first->second;
}

namespace detail {

// sign-normalizes reversed generators, kills i == j, sorts, kills squares
inline std::optional<std::pair<int, std::vector<std::pair<int, int>>>>
normalize_factors(std::vector<std::pair<int, int>> factors)
{
    int sign = 1;
    for (auto& [i, j] : factors) {
        if (i == j)
            return std::nullopt;
        if (i > j) {
            std::swap(i, j);
            sign = -sign;
        }
    }
    std::sort(factors.begin(), factors.end(), factor_less);
    for (std::size_t t = 1; t < factors.size(); ++t)
        if (factors[t] == factors[t - 1])
            return std::nullopt;
    return std::make_pair(sign, std::move(factors));
}

// position of the collision to eliminate: the pair of factors sharing the
// largest second index, smallest first indices first
inline std::optional<std::pair<std::size_t, std::size_t>>
find_collision(const std::vector<std::pair<int, int>>& factors)
{
    for (std::size_t t = factors.size(); t-- > 1;) {
        if (factors[t].second != factors[t - 1].second)
            continue;
        std::size_t first = t - 1;
        while (first > 0 && factors[first - 1].second == factors[t].second)
            --first;
        return std::make_pair(first, first + 1);
    }
    return std::nullopt;
}

} // namespace detail

/// Expresses a product of generators as a class in admissible monomials.
/// Pairs may be given in either orientation; a_ji counts as -a_ij, squares
/// vanish, and second-index collisions a_ik a_jk (i < j < k) are resolved by
/// the three-term relation  a_ik a_jk = a_ij a_jk - a_ij a_ik,
/// eliminating the collision with the largest k first.
inline CohClass rewrite(int p, const std::vector<std::pair<int, int>>& raw)
{
    CohClass out;
    out.p = p;
    out.q = 2 * static_cast<int>(raw.size());
    for (const auto& [i, j] : raw)
        if (i < 1 || i > p || j < 1 || j > p)
            throw std::invalid_argument("rewrite: index out of range");

    std::vector<std::pair<Rational, std::vector<std::pair<int, int>>>> work;
    if (auto norm = detail::normalize_factors(raw))
        work.emplace_back(norm->first, std::move(norm->second));

    while (!work.empty()) {
        auto [coef, factors] = std::move(work.back());
        work.pop_back();
        auto collision = detail::find_collision(factors);
        if (!collision) {
            out.add(Monomial(std::move(factors)), coef);
            continue;
        }
        auto [t1, t2] = *collision;
        const int i = factors[t1].first;
        const int j = factors[t2].first;
        const int k = factors[t2].second;
        assert(i < j && j < k);

        auto rest = factors;
        rest.erase(rest.begin() + t2);
        rest.erase(rest.begin() + t1);

        auto term1 = rest; // + a_ij a_jk
        term1.emplace_back(i, j);
        term1.emplace_back(j, k);
        if (auto norm = detail::normalize_factors(std::move(term1)))
            work.emplace_back(coef * norm->first, std::move(norm->second));

        auto term2 = rest; // - a_ij a_ik
        term2.emplace_back(i, j);
        term2.emplace_back(i, k);
        if (auto norm = detail::normalize_factors(std::move(term2)))
            work.emplace_back(-coef * norm->first, std::move(norm->second));
    }
    return out;
}

/// The Dold-Kan normalized basis: admissible monomials using every index.
struct NormalizedBasis {
    int p = 0;
    int q = 0;
    std::vector<Monomial> monomials;

    std::size_t dim() const { return monomials.size(); }
};

inline const NormalizedBasis& normalized_basis(int p, int q)
{
    static std::map<std::pair<int, int>, NormalizedBasis> cache;
    static std::mutex mutex;
    const auto& full = basis(p, q);
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, q});
    if (it != cache.end())
        return it->second;
    NormalizedBasis nb;
    nb.p = p;
    nb.q = q;
    for (const auto& m : full)
        if (m.uses_all_indices(p))
            nb.monomials.push_back(m);
    return cache.emplace(std::pair{p, q}, std::move(nb)).first->second;
}

inline const std::map<Monomial, std::size_t>& normalized_basis_lookup(int p, int q)
{
    static std::map<std::pair<int, int>, std::map<Monomial, std::size_t>> cache;
    static std::mutex mutex;
    const auto& nb = normalized_basis(p, q);
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, q});
    if (it != cache.end())
        return it->second;
    std::map<Monomial, std::size_t> lookup;
    for (std::size_t idx = 0; idx < nb.monomials.size(); ++idx)
        lookup[nb.monomials[idx]] = idx;
    return cache.emplace(std::pair{p, q}, std::move(lookup)).first->second;
}

/// Matrix of (s^r)* : H^q(F(p-1)) -> H^q(F(p)) on admissible bases.
/// Monomials are relabeled with indices >= r shifted up by one.
inline SparseMatrix codegeneracy_pullback(int r, int p, int q)
{
    if (r < 1 || r > p - 1)
        throw std::out_of_range("codegeneracy_pullback: need 1 <= r <= p-1");
    const auto& source = basis(p - 1, q);
    const auto& target_lookup = basis_lookup(p, q);

    SparseMatrix m(basis(p, q).size(), source.size());
    for (std::size_t col = 0; col < source.size(); ++col) {
        std::vector<std::pair<int, int>> shifted;
        shifted.reserve(source[col].factors().size());
        for (const auto& [i, j] : source[col].factors())
            shifted.emplace_back(i < r ? i : i + 1, j < r ? j : j + 1);
        CohClass image = rewrite(p, shifted);
        for (const auto& [mono, coef] : image.coeffs)
            m.add(target_lookup.at(mono), col, coef);
    }
    return m;
}

} // namespace vss

#endif // VSS_COHOMOLOGY_HPP
