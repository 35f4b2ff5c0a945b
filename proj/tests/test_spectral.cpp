#include "doctest.h"

#include "knotss/spectral.hpp"
#include "random_complex.hpp"

using namespace knotss;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field QQ = Field::rationals();

FilteredComplex two_cell(Field f, Slot x, Slot y, int r) {
    FilteredComplex c(f);
    c.add_slot(x, {"x"});
    c.add_slot(y, {"y"});
    c.set_block(x, r, Matrix::from_rows(f, {{1}}));
    return c;
}

}  // namespace

TEST_CASE("filtration drop one: d1 is an isomorphism") {
    SpectralSequence ss(two_cell(QQ, {2, 1}, {1, 1}, 1), 3);
    CHECK(ss.page(1).dim({2, 1}) == 1);
    CHECK(ss.page(1).dim({1, 1}) == 1);
    CHECK(ss.page(1).slots.at({2, 1}).d_rank == 1);
    CHECK(ss.page(2).dim({2, 1}) == 0);
    CHECK(ss.page(2).dim({1, 1}) == 0);
}

TEST_CASE("filtration drop two: d1 = 0, d2 != 0") {
    SpectralSequence ss(two_cell(F3, {2, 1}, {0, 0}, 2), 3);
    CHECK(ss.page(1).slots.at({2, 1}).d_rank == 0);
    CHECK(ss.page(2).dim({2, 1}) == 1);
    CHECK(ss.page(2).slots.at({2, 1}).d_rank == 1);
    CHECK(ss.page(3).dim({2, 1}) == 0);
    CHECK(ss.page(3).dim({0, 0}) == 0);
}

TEST_CASE("internal differential is d0") {
    SpectralSequence ss(two_cell(F2, {1, 0}, {1, 1}, 0), 2);
    CHECK(ss.page(0).slots.at({1, 0}).d_rank == 1);
    CHECK(ss.page(1).dim({1, 0}) == 0);
}

TEST_CASE("blocks are validated") {
    FilteredComplex c(QQ);
    c.add_slot({1, 0}, {"a"});
    c.add_slot({0, 0}, {"b"});
    CHECK_THROWS_AS(c.set_block({1, 0}, 0, Matrix::from_rows(QQ, {{1}})), DimensionError);
    // a -> b -> a would need a degree-raising cycle; build D o D != 0 explicitly.
    FilteredComplex bad(QQ);
    bad.add_slot({2, 0}, {"x"});
    bad.add_slot({1, 0}, {"y"});
    bad.add_slot({0, 0}, {"z"});
    bad.set_block({2, 0}, 1, Matrix::from_rows(QQ, {{1}}));
    bad.set_block({1, 0}, 1, Matrix::from_rows(QQ, {{1}}));
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    CHECK_FALSE(bad.squares_to_zero());
}

TEST_CASE("each page is the homology of the previous one") {
    std::mt19937_64 rng(31);
    for (Field f : {F2, F3, QQ})
        for (int it = 0; it < 10; ++it) {
            FilteredComplex c = testing::random_filtered_complex(f, rng, 20);
            SpectralSequence ss(c, SpectralSequence::stable_page(c));
            for (int r = 1; r <= ss.r_max(); ++r)
                for (const auto& [s, sp] : ss.page(r).slots) {
                    const auto& prev = ss.page(r - 1);
                    std::size_t in = 0;
                    auto src = prev.slots.find({s.first + r - 1, s.second + r - 2});
                    if (src != prev.slots.end()) in = src->second.d_rank;
                    CHECK(sp.dim == prev.dim(s) - prev.slots.at(s).d_rank - in);
                }
        }
}

TEST_CASE("Euler characteristic by total degree is conserved") {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 15; ++it) {
        FilteredComplex c = testing::random_filtered_complex(F3, rng, 24);
        SpectralSequence ss(c, SpectralSequence::stable_page(c));
        auto chi = [&](int r) {
            long total = 0;
            for (const auto& [s, sp] : ss.page(r).slots)
                total += ((s.second - s.first) % 2 == 0 ? 1 : -1) * static_cast<long>(sp.dim);
            return total;
        };
        for (int r = 1; r <= ss.r_max(); ++r) CHECK(chi(r) == chi(0));
    }
}

TEST_CASE("E-infinity equals the associated graded of total cohomology") {
    std::mt19937_64 rng(33);
    for (Field f : {F2, F3, QQ})
        for (int it = 0; it < 10; ++it) {
            FilteredComplex c = testing::random_filtered_complex(f, rng, 30);
            SpectralSequence ss(c, SpectralSequence::stable_page(c));
            auto gr = testing::associated_graded(c);
            for (const auto& [s, sp] : ss.pages().back().slots) CHECK(sp.dim == gr.at(s));
        }
}

TEST_CASE("class coordinates of representatives") {
    SpectralSequence ss(two_cell(QQ, {2, 1}, {0, 0}, 2), 3);
    const SlotPage& sp = ss.page(2).slots.at({2, 1});
    auto coords = ss.class_coordinates({2, 1}, 2, sp.reps.column(0));
    REQUIRE(coords);
    CHECK((*coords)[0].is_one());
}
