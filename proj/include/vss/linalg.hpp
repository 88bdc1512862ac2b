#ifndef VSS_LINALG_HPP
#define VSS_LINALG_HPP

#include "vss/rational.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vss {

/// Sparse matrix over the rationals.  Zero entries are never stored.
class SparseMatrix {
public:
    using Row = std::map<std::size_t, Rational>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_data_(rows) {}

    static SparseMatrix identity(std::size_t n)
    {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.row_data_[i][i] = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational at(std::size_t r, std::size_t c) const
    {
        check_index(r, c);
        auto it = row_data_[r].find(c);
        return it == row_data_[r].end() ? Rational(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const Rational& v)
    {
        check_index(r, c);
        if (v == 0)
            row_data_[r].erase(c);
        else
            row_data_[r][c] = v;
    }

    void add(std::size_t r, std::size_t c, const Rational& v)
    {
        check_index(r, c);
        auto it = row_data_[r].find(c);
        if (it == row_data_[r].end()) {
            if (v != 0)
                row_data_[r][c] = v;
            return;
        }
        it->second += v;
        if (it->second == 0)
            row_data_[r].erase(it);
    }

    const Row& row(std::size_t r) const
    {
        if (r >= rows_)
            throw std::out_of_range("SparseMatrix::row");
        return row_data_[r];
    }

    std::size_t nonzero_count() const
    {
        std::size_t n = 0;
        for (const auto& r : row_data_)
            n += r.size();
        return n;
    }

    bool is_zero() const { return nonzero_count() == 0; }

    SparseMatrix transposed() const
    {
        SparseMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : row_data_[r])
                t.row_data_[c][r] = v;
        return t;
    }

    SparseMatrix operator*(const SparseMatrix& rhs) const
    {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("SparseMatrix multiply: shape mismatch");
        SparseMatrix out(rows_, rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [k, v] : row_data_[r])
                for (const auto& [c, w] : rhs.row_data_[k])
                    out.add(r, c, v * w);
        return out;
    }

    SparseMatrix& add_scaled(const SparseMatrix& rhs, const Rational& scale)
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw std::invalid_argument("SparseMatrix add: shape mismatch");
        if (scale == 0)
            return *this;
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : rhs.row_data_[r])
                add(r, c, v * scale);
        return *this;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const
    {
        if (v.size() != cols_)
            throw std::invalid_argument("SparseMatrix apply: size mismatch");
        std::vector<Rational> out(rows_, Rational(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, a] : row_data_[r])
                out[r] += a * v[c];
        return out;
    }

    bool operator==(const SparseMatrix& rhs) const
    {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && row_data_ == rhs.row_data_;
    }

private:
    void check_index(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_)
            throw std::out_of_range("SparseMatrix index");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Row> row_data_;
};

namespace detail {

// In-place reduced row echelon form on sparse rows.  Returns the pivot
// columns in increasing order; afterwards rows[i] is the row with pivot
// pivots[i] (pivot value 1, pivot column cleared everywhere else) and
// trailing zero rows are removed.
inline std::vector<std::size_t> sparse_rref(std::vector<SparseMatrix::Row>& rows, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < cols && next < rows.size(); ++col) {
        // pick the sparsest candidate row to limit fill-in
        std::size_t best = rows.size();
        for (std::size_t i = next; i < rows.size(); ++i) {
            auto it = rows[i].find(col);
            if (it == rows[i].end())
                continue;
            if (best == rows.size() || rows[i].size() < rows[best].size())
                best = i;
        }
        if (best == rows.size())
            continue;
        std::swap(rows[next], rows[best]);

        Rational inv = Rational(1) / rows[next].at(col);
        if (inv != 1)
            for (auto& [c, v] : rows[next])
                v *= inv;

        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == next)
                continue;
            auto it = rows[i].find(col);
            if (it == rows[i].end())
                continue;
            Rational factor = it->second;
            for (const auto& [c, v] : rows[next]) {
                auto jt = rows[i].find(c);
                if (jt == rows[i].end()) {
                    rows[i][c] = -factor * v;
                } else {
                    jt->second -= factor * v;
                    if (jt->second == 0)
                        rows[i].erase(jt);
                }
            }
        }
        pivots.push_back(col);
        ++next;
    }
    rows.resize(pivots.size());
    return pivots;
}

inline std::vector<SparseMatrix::Row> copy_rows(const SparseMatrix& m)
{
    std::vector<SparseMatrix::Row> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.push_back(m.row(r));
    return rows;
}

} // namespace detail

/// Exact rank over the rationals.
inline std::size_t rank(const SparseMatrix& m)
{
    auto rows = detail::copy_rows(m);
    return detail::sparse_rref(rows, m.cols()).size();
}

/// A linear subspace of Q^ambient_dim held by its unique reduced-echelon
/// basis: pivot columns strictly increasing, pivots 1, pivot columns zero in
/// every other basis vector.  Structural equality is subspace equality.
struct Subspace {
    std::size_t ambient_dim = 0;
    std::vector<std::vector<Rational>> basis;

    std::size_t dim() const { return basis.size(); }

    bool contains(const std::vector<Rational>& v) const
    {
        if (v.size() != ambient_dim)
            throw std::invalid_argument("Subspace::contains: ambient mismatch");
        // reduce v against the echelon basis; leading entries locate pivots
        std::vector<Rational> w = v;
        for (const auto& b : basis) {
            std::size_t pivot = 0;
            while (pivot < ambient_dim && b[pivot] == 0)
                ++pivot;
            if (pivot < ambient_dim && w[pivot] != 0) {
                Rational f = w[pivot];
                for (std::size_t i = pivot; i < ambient_dim; ++i)
                    w[i] -= f * b[i];
            }
        }
        for (const auto& x : w)
            if (x != 0)
                return false;
        return true;
    }
};

/// Canonicalizes a spanning set into the echelon-basis Subspace.
inline Subspace subspace_from_vectors(std::size_t ambient_dim,
                                      const std::vector<std::vector<Rational>>& vectors)
{
    std::vector<SparseMatrix::Row> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.size() != ambient_dim)
            throw std::invalid_argument("subspace_from_vectors: ambient mismatch");
        SparseMatrix::Row row;
        for (std::size_t c = 0; c < ambient_dim; ++c)
            if (v[c] != 0)
                row[c] = v[c];
        rows.push_back(std::move(row));
    }
    detail::sparse_rref(rows, ambient_dim);
    Subspace s;
    s.ambient_dim = ambient_dim;
    for (const auto& row : rows) {
        std::vector<Rational> dense(ambient_dim, Rational(0));
        for (const auto& [c, v] : row)
            dense[c] = v;
        s.basis.push_back(std::move(dense));
    }
    return s;
}

/// Canonical echelon basis of the right kernel {v : m v = 0}.
inline Subspace kernel_basis(const SparseMatrix& m)
{
    auto rows = detail::copy_rows(m);
    auto pivots = detail::sparse_rref(rows, m.cols());

    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;

    std::vector<std::vector<Rational>> vectors;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            auto it = rows[i].find(f);
            if (it != rows[i].end())
                v[pivots[i]] = -it->second;
        }
        vectors.push_back(std::move(v));
    }
    return subspace_from_vectors(m.cols(), vectors);
}

/// True iff the two subspaces of the same ambient space coincide.
inline bool subspace_equal(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("subspace_equal: ambient dimension mismatch");
    return a.basis == b.basis;
}

} // namespace vss

#endif // VSS_LINALG_HPP
