#include <gtest/gtest.h>

#include <random>

#include "protsim/semirings.hpp"
#include "protsim/spmat.hpp"

using namespace protsim;

namespace {

using Dense = std::vector<std::vector<long>>;

Dense random_dense(std::mt19937_64& rng, std::size_t r, std::size_t c, double density) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<long> v(-5, 5);
    Dense d(r, std::vector<long>(c, 0));
    for (auto& row : d)
        for (auto& x : row)
            if (u(rng) < density) x = v(rng);
    return d;
}

DcscMatrix<long> to_sparse(const Dense& d, std::size_t ncols) {
    Triplets<long> t(d.size(), ncols);
    for (std::size_t r = 0; r < d.size(); ++r)
        for (std::size_t c = 0; c < d[r].size(); ++c)
            if (d[r][c] != 0) t.push(r, c, d[r][c]);
    return DcscMatrix<long>::from_triplets(std::move(t));
}

Dense to_dense(const DcscMatrix<long>& m) {
    Dense d(m.nrows(), std::vector<long>(m.ncols(), 0));
    m.for_each([&](Index r, Index c, long v) { d[r][c] = v; });
    return d;
}

Dense dense_product(const Dense& a, const Dense& b) {
    Dense c(a.size(), std::vector<long>(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace

TEST(Dcsc, FromTripletsSortsAndCompresses) {
    Triplets<int> t(4, 1000);
    t.push(3, 900, 1);
    t.push(0, 5, 2);
    t.push(2, 5, 3);
    auto m = DcscMatrix<int>::from_triplets(std::move(t));
    EXPECT_EQ(m.nnz(), 3u);
    EXPECT_EQ(m.nzc(), 2u);
    EXPECT_EQ(std::vector<Index>(m.jc().begin(), m.jc().end()), (std::vector<Index>{5, 900}));
    EXPECT_EQ(std::vector<Index>(m.cp().begin(), m.cp().end()), (std::vector<Index>{0, 2, 3}));
    EXPECT_EQ(std::vector<Index>(m.ir().begin(), m.ir().end()), (std::vector<Index>{0, 2, 3}));
    ASSERT_NE(m.find(2, 5), nullptr);
    EXPECT_EQ(*m.find(2, 5), 3);
    EXPECT_EQ(m.find(1, 5), nullptr);
    EXPECT_EQ(m.find(0, 6), nullptr);
}

TEST(Dcsc, DuplicatesNeedCombine) {
    Triplets<int> t(2, 2);
    t.push(1, 1, 4);
    t.push(1, 1, 5);
    EXPECT_THROW(DcscMatrix<int>::from_triplets(t), std::invalid_argument);
    auto m = DcscMatrix<int>::from_triplets(t, [](int& a, int&& b) { a += b; });
    EXPECT_EQ(*m.find(1, 1), 9);
    EXPECT_THROW(t.push(2, 0, 1), std::out_of_range);
}

TEST(Dcsc, StorageIndependentOfColumnCount) {
    Triplets<int> small(3, 10), huge(3, 191102976);
    for (Index c : {1, 4, 7}) {
        small.push(c % 3, c, 1);
        huge.push(c % 3, c, 1);
    }
    auto a = DcscMatrix<int>::from_triplets(small), b = DcscMatrix<int>::from_triplets(huge);
    EXPECT_EQ(a.storage_units(), b.storage_units());
    EXPECT_EQ(a.storage_units(), 3u + 4u + 3u + 3u);
    EXPECT_EQ(DcscMatrix<int>(5, 1u << 30).storage_units(), 1u);
}

TEST(Dcsc, TransposeTwiceIsIdentity) {
    std::mt19937_64 rng(2);
    auto d = random_dense(rng, 20, 30, 0.2);
    auto m = to_sparse(d, 30);
    auto t = transpose(m);
    EXPECT_EQ(t.nrows(), 30u);
    m.for_each([&](Index r, Index c, long v) { EXPECT_EQ(*t.find(c, r), v); });
    EXPECT_EQ(transpose(t), m);
}

TEST(SpGemm, MatchesDenseProduct) {
    std::mt19937_64 rng(8);
    for (double density : {0.02, 0.1, 0.5}) {
        auto a = random_dense(rng, 17, 23, density), b = random_dense(rng, 23, 11, density);
        auto expect = dense_product(a, b);
        for (int threads : {1, 3}) {
            auto c = spgemm(to_sparse(a, 23), to_sparse(b, 11), PlusTimes<long>{}, threads);
            EXPECT_EQ(to_dense(c), expect);
            c.for_each([](Index, Index, long v) { EXPECT_NE(v, 0); });
        }
    }
}

TEST(SpGemm, BooleanPattern) {
    Triplets<std::uint8_t> a(2, 3), b(3, 2);
    a.push(0, 1, 1);
    a.push(1, 2, 1);
    b.push(1, 0, 1);
    b.push(1, 1, 1);
    auto c = spgemm(DcscMatrix<std::uint8_t>::from_triplets(a), DcscMatrix<std::uint8_t>::from_triplets(b),
                    BooleanSemiring{});
    EXPECT_EQ(c.nnz(), 2u);
    EXPECT_NE(c.find(0, 0), nullptr);
    EXPECT_EQ(c.find(1, 0), nullptr);
}

TEST(SpGemm, DimensionMismatch) {
    DcscMatrix<long> a(2, 3), b(4, 2);
    EXPECT_THROW(spgemm(a, b, PlusTimes<long>{}), std::invalid_argument);
}

TEST(SpGemm, EwiseAddMatchesDenseSum) {
    std::mt19937_64 rng(12);
    auto x = random_dense(rng, 9, 9, 0.3), y = random_dense(rng, 9, 9, 0.3);
    Dense sum = x;
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) sum[i][j] += y[i][j];
    EXPECT_EQ(to_dense(ewise_add(to_sparse(x, 9), to_sparse(y, 9), PlusTimes<long>{})), sum);
}

TEST(Semiring, CommonKmersMergeIsOrderIndependent) {
    std::vector<SeedPair> seeds{{40, 1, 2}, {7, 3, 3}, {19, 0, 9}, {7, 2, 1}, {88, 5, 5}};
    auto fold = [&](const std::vector<std::size_t>& order) {
        CommonKmers acc = CommonKmers::single(seeds[order[0]]);
        for (std::size_t i = 1; i < order.size(); ++i) acc.merge(CommonKmers::single(seeds[order[i]]));
        return acc;
    };
    std::vector<std::size_t> order{0, 1, 2, 3, 4};
    CommonKmers first = fold(order);
    EXPECT_EQ(first.count, 5u);
    EXPECT_EQ(first.nseeds, 2);
    EXPECT_EQ(first.seeds[0], (SeedPair{7, 2, 1}));
    EXPECT_EQ(first.seeds[1], (SeedPair{7, 3, 3}));
    while (std::next_permutation(order.begin(), order.end())) EXPECT_EQ(fold(order), first);
}

TEST(Semiring, MirroredSwapsPositions) {
    CommonKmers c = CommonKmers::single({3, 10, 20});
    c.merge(CommonKmers::single({9, 1, 2}));
    auto m = c.mirrored();
    EXPECT_EQ(m.seeds[0], (SeedPair{3, 20, 10}));
    EXPECT_EQ(m.seeds[1], (SeedPair{9, 2, 1}));
    EXPECT_EQ(m.mirrored(), c);
}

TEST(Semiring, ClosestKeepsSmallestDistanceThenOrigin) {
    ClosestKmerSemiring sr{};
    SubstitutePos acc = sr.multiply(5, 7, 0, 0, 100);
    sr.add(acc, sr.multiply(9, 3, 0, 0, 200));
    EXPECT_EQ(acc, (SubstitutePos{9, 3, 200}));
    sr.add(acc, sr.multiply(1, 3, 0, 0, 150));
    EXPECT_EQ(acc, (SubstitutePos{1, 3, 150}));
    sr.add(acc, sr.multiply(2, 3, 0, 0, 180));
    EXPECT_EQ(acc.origin, 150u);
}

TEST(Semiring, InnerOffsetRestoresGlobalIds) {
    ExactMatchSemiring sr{};
    sr.inner_offset = 1000;
    EXPECT_EQ(sr.multiply(4, 6, 0, 0, 5).seeds[0], (SeedPair{1005, 4, 6}));
}
