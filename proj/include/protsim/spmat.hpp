#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "protsim/parallel.hpp"

namespace protsim {

using Index = std::uint64_t;

/// Coordinate-form nonzeros. Duplicates are only resolved by an explicit
/// combine when converting to DCSC.
template <class T>
struct Triplets {
    Index nrows = 0;
    Index ncols = 0;
    std::vector<Index> rows;
    std::vector<Index> cols;
    std::vector<T> values;

    Triplets() = default;
    Triplets(Index r, Index c) : nrows(r), ncols(c) {}

    void push(Index r, Index c, T v) {
        if (r >= nrows || c >= ncols) throw std::out_of_range("triplet outside matrix bounds");
        rows.push_back(r);
        cols.push_back(c);
        values.push_back(std::move(v));
    }
    std::size_t size() const noexcept { return values.size(); }
};

/// Doubly compressed sparse column storage: only non-empty columns are
/// listed (jc), so memory is O(nnz + nzc) whatever ncols is.
template <class T>
class DcscMatrix {
public:
    using value_type = T;

    DcscMatrix() : cp_{0} {}
    DcscMatrix(Index nrows, Index ncols) : nrows_(nrows), ncols_(ncols), cp_{0} {}

    /// Sort by (column, row); equal coordinates are folded with `combine(acc, next)`
    /// in input order.
    template <class Combine>
    static DcscMatrix from_triplets(Triplets<T> t, Combine combine) {
        DcscMatrix m(t.nrows, t.ncols);
        std::vector<std::size_t> order(t.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return t.cols[a] != t.cols[b] ? t.cols[a] < t.cols[b] : t.rows[a] < t.rows[b];
        });
        m.ir_.reserve(order.size());
        m.num_.reserve(order.size());
        for (std::size_t idx : order) {
            Index r = t.rows[idx], c = t.cols[idx];
            if (!m.jc_.empty() && m.jc_.back() == c && m.ir_.back() == r && m.ir_.size() > m.cp_.back()) {
                combine(m.num_.back(), std::move(t.values[idx]));
                continue;
            }
            if (m.jc_.empty() || m.jc_.back() != c) {
                if (!m.jc_.empty()) m.cp_.push_back(m.ir_.size());
                m.jc_.push_back(c);
            }
            m.ir_.push_back(r);
            m.num_.push_back(std::move(t.values[idx]));
        }
        if (!m.jc_.empty()) m.cp_.push_back(m.ir_.size());
        return m;
    }

    /// Duplicate coordinates are an error.
    static DcscMatrix from_triplets(Triplets<T> t) {
        return from_triplets(std::move(t), [](T&, T&&) { throw std::invalid_argument("duplicate nonzero coordinate"); });
    }

    /// Append one column; columns must arrive in ascending order with rows ascending.
    void append_column(Index col, std::span<const Index> rows, std::vector<T>&& values) {
        if (rows.empty()) return;
        if (col >= ncols_ || (!jc_.empty() && col <= jc_.back())) throw std::invalid_argument("columns out of order");
        jc_.push_back(col);
        ir_.insert(ir_.end(), rows.begin(), rows.end());
        for (auto& v : values) num_.push_back(std::move(v));
        cp_.push_back(ir_.size());
    }

    Index nrows() const noexcept { return nrows_; }
    Index ncols() const noexcept { return ncols_; }
    std::size_t nnz() const noexcept { return ir_.size(); }
    std::size_t nzc() const noexcept { return jc_.size(); }

    std::span<const Index> jc() const noexcept { return jc_; }
    std::span<const Index> cp() const noexcept { return cp_; }
    std::span<const Index> ir() const noexcept { return ir_; }
    std::span<const T> values() const noexcept { return num_; }

    /// Position of `col` in jc, if the column is non-empty.
    std::optional<std::size_t> find_column(Index col) const {
        auto it = std::lower_bound(jc_.begin(), jc_.end(), col);
        if (it == jc_.end() || *it != col) return std::nullopt;
        return static_cast<std::size_t>(it - jc_.begin());
    }

    const T* find(Index row, Index col) const {
        auto c = find_column(col);
        if (!c) return nullptr;
        auto lo = ir_.begin() + static_cast<std::ptrdiff_t>(cp_[*c]);
        auto hi = ir_.begin() + static_cast<std::ptrdiff_t>(cp_[*c + 1]);
        auto it = std::lower_bound(lo, hi, row);
        if (it == hi || *it != row) return nullptr;
        return &num_[static_cast<std::size_t>(it - ir_.begin())];
    }

    /// f(row, col, value) in column-major order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t c = 0; c < jc_.size(); ++c)
            for (Index k = cp_[c]; k < cp_[c + 1]; ++k) f(ir_[k], jc_[c], num_[k]);
    }

    Triplets<T> to_triplets() const {
        Triplets<T> t(nrows_, ncols_);
        for_each([&](Index r, Index c, const T& v) { t.push(r, c, v); });
        return t;
    }

    /// Words of index storage plus stored values; never depends on ncols.
    std::size_t storage_units() const noexcept { return jc_.size() + cp_.size() + ir_.size() + num_.size(); }

    friend bool operator==(const DcscMatrix&, const DcscMatrix&) = default;

private:
    Index nrows_ = 0;
    Index ncols_ = 0;
    std::vector<Index> jc_;
    std::vector<Index> cp_;
    std::vector<Index> ir_;
    std::vector<T> num_;
};

template <class T>
DcscMatrix<T> transpose(const DcscMatrix<T>& a) {
    Triplets<T> t(a.ncols(), a.nrows());
    t.rows.reserve(a.nnz());
    t.cols.reserve(a.nnz());
    t.values.reserve(a.nnz());
    a.for_each([&](Index r, Index c, const T& v) {
        t.rows.push_back(c);
        t.cols.push_back(r);
        t.values.push_back(v);
    });
    return DcscMatrix<T>::from_triplets(std::move(t));
}

/// Semiring over heterogeneous operands: multiply(a, b, row, col, inner)
/// builds a partial product and add folds a partial into an accumulator.
/// An absent cell is the additive identity.
template <class S>
concept SpSemiring = requires(const S& s, const typename S::lhs_type& a, const typename S::rhs_type& b,
                              typename S::value_type& acc, typename S::value_type&& part) {
    { s.multiply(a, b, Index{}, Index{}, Index{}) } -> std::convertible_to<typename S::value_type>;
    s.add(acc, std::move(part));
    { s.is_identity(acc) } -> std::convertible_to<bool>;
};

/// C = A (x) B column by column with a hash accumulator per output column.
/// Partials are folded in ascending inner index, so results are independent
/// of `threads`.
template <SpSemiring S>
DcscMatrix<typename S::value_type> spgemm(const DcscMatrix<typename S::lhs_type>& a,
                                          const DcscMatrix<typename S::rhs_type>& b, const S& sr, int threads = 1) {
    using V = typename S::value_type;
    if (a.ncols() != b.nrows())
        throw std::invalid_argument("spgemm: dimension mismatch (" + std::to_string(a.ncols()) + " vs " +
                                    std::to_string(b.nrows()) + ")");

    struct Column {
        std::vector<Index> rows;
        std::vector<V> values;
    };
    std::vector<Column> out(b.nzc());
    const auto a_jc = a.jc();
    const auto a_cp = a.cp();
    const auto a_ir = a.ir();
    const auto a_num = a.values();
    const auto b_jc = b.jc();
    const auto b_cp = b.cp();
    const auto b_ir = b.ir();
    const auto b_num = b.values();

    parallel_for(b.nzc(), threads, [&](std::size_t bc) {
        std::unordered_map<Index, V> acc;
        const Index col = b_jc[bc];
        auto a_pos = a_jc.begin();
        for (Index k = b_cp[bc]; k < b_cp[bc + 1]; ++k) {
            const Index inner = b_ir[k];
            a_pos = std::lower_bound(a_pos, a_jc.end(), inner);
            if (a_pos == a_jc.end()) break;
            if (*a_pos != inner) continue;
            auto ac = static_cast<std::size_t>(a_pos - a_jc.begin());
            for (Index t = a_cp[ac]; t < a_cp[ac + 1]; ++t) {
                const Index row = a_ir[t];
                V part = sr.multiply(a_num[t], b_num[k], row, col, inner);
                auto it = acc.find(row);
                if (it == acc.end())
                    acc.emplace(row, std::move(part));
                else
                    sr.add(it->second, std::move(part));
            }
        }
        Column& c = out[bc];
        c.rows.reserve(acc.size());
        for (const auto& kv : acc)
            if (!sr.is_identity(kv.second)) c.rows.push_back(kv.first);
        std::sort(c.rows.begin(), c.rows.end());
        c.values.reserve(c.rows.size());
        for (Index r : c.rows) c.values.push_back(std::move(acc.at(r)));
    });

    DcscMatrix<V> result(a.nrows(), b.ncols());
    for (std::size_t bc = 0; bc < out.size(); ++bc) result.append_column(b_jc[bc], out[bc].rows, std::move(out[bc].values));
    return result;
}

/// Element-wise semiring addition of two equally shaped matrices.
template <class S>
DcscMatrix<typename S::value_type> ewise_add(const DcscMatrix<typename S::value_type>& x,
                                             const DcscMatrix<typename S::value_type>& y, const S& sr) {
    using V = typename S::value_type;
    if (x.nrows() != y.nrows() || x.ncols() != y.ncols()) throw std::invalid_argument("ewise_add: shape mismatch");
    Triplets<V> t(x.nrows(), x.ncols());
    x.for_each([&](Index r, Index c, const V& v) { t.push(r, c, v); });
    y.for_each([&](Index r, Index c, const V& v) { t.push(r, c, v); });
    auto m = DcscMatrix<V>::from_triplets(std::move(t), [&](V& acc, V&& v) { sr.add(acc, std::move(v)); });
    Triplets<V> kept(m.nrows(), m.ncols());
    m.for_each([&](Index r, Index c, const V& v) {
        if (!sr.is_identity(v)) kept.push(r, c, v);
    });
    return DcscMatrix<V>::from_triplets(std::move(kept));
}

/// Ordinary (+, x) arithmetic; zero sums are dropped.
template <class T>
struct PlusTimes {
    using lhs_type = T;
    using rhs_type = T;
    using value_type = T;
    T multiply(const T& a, const T& b, Index, Index, Index) const { return a * b; }
    void add(T& acc, T&& v) const { acc += v; }
    bool is_identity(const T& v) const { return v == T{}; }
};

/// (or, and) over presence.
struct BooleanSemiring {
    using lhs_type = std::uint8_t;
    using rhs_type = std::uint8_t;
    using value_type = std::uint8_t;
    std::uint8_t multiply(std::uint8_t a, std::uint8_t b, Index, Index, Index) const { return a && b; }
    void add(std::uint8_t& acc, std::uint8_t&& v) const { acc = acc || v; }
    bool is_identity(std::uint8_t v) const { return v == 0; }
};

/// Matrix-Market-style debug dump: "row col payload" per line, 1-based.
template <class T, class Format>
void write_triples(std::ostream& os, const DcscMatrix<T>& m, Format&& fmt) {
    os << "%%MatrixMarket matrix coordinate custom general\n";
    os << m.nrows() << ' ' << m.ncols() << ' ' << m.nnz() << '\n';
    m.for_each([&](Index r, Index c, const T& v) { os << r + 1 << ' ' << c + 1 << ' ' << fmt(v) << '\n'; });
}

}  // namespace protsim
