#pragma once

// Spectral sequence of a finite complex filtered by arity.

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "knotss/exactalg.hpp"

namespace knotss {

/** Slot (p, q): filtration degree p, internal degree q; total degree q - p. */
using Slot = std::pair<int, int>;

/**
 * Finite complex with basis tagged by slots. The differential is stored in
 * blocks D_r : (p, q) -> (p - r, q - r + 1) for r >= 0.
 */
class FilteredComplex {
public:
    explicit FilteredComplex(Field f) : f_(f) {}

    Field field() const { return f_; }
    void add_slot(Slot s, std::vector<std::string> labels);
    /** Block D_r out of slot s; shapes are checked against the slot sizes. */
    void set_block(Slot s, int r, Matrix m);

    const std::map<Slot, std::vector<std::string>>& slots() const { return slots_; }
    std::size_t slot_dim(Slot s) const;
    const Matrix* block(Slot s, int r) const;
    const std::map<std::pair<Slot, int>, Matrix>& blocks() const { return blocks_; }

    /** Throws PreconditionError naming the first slot where D o D != 0. */
    void validate() const;
    bool squares_to_zero() const;

    /** Total degrees present, ascending. */
    std::vector<int> total_degrees() const;
    /** Slots of total degree t in ascending p; this fixes the coordinate order in degree t. */
    std::vector<Slot> slots_in_degree(int t) const;
    /** Offset of slot s inside degree-(q-p) coordinates. */
    std::size_t offset_in_degree(Slot s) const;
    std::size_t degree_dim(int t) const;
    /** Full differential from degree t to degree t+1 in degree coordinates. */
    Matrix total_differential(int t) const;

private:
    Field f_;
    std::map<Slot, std::vector<std::string>> slots_;
    std::map<std::pair<Slot, int>, Matrix> blocks_;
};

struct SlotPage {
    std::size_t dim = 0;
    /** Representatives as columns in the coordinates of total degree q - p. */
    Matrix reps;
    /** d_r to slot (p - r, q - r + 1), in representative coordinates. */
    Matrix d;
    std::size_t d_rank = 0;
};

struct SSPage {
    int r = 0;
    std::map<Slot, SlotPage> slots;
    std::size_t dim(Slot s) const;
    /** True when every d_r on this page vanishes. */
    bool differential_vanishes() const;
};

class SpectralSequence {
public:
    /** Pages 0..r_max; validates D o D = 0 first. */
    SpectralSequence(const FilteredComplex& c, int r_max);

    const FilteredComplex& complex() const { return c_; }
    const std::vector<SSPage>& pages() const { return pages_; }
    const SSPage& page(int r) const { return pages_.at(static_cast<std::size_t>(r)); }
    int r_max() const { return static_cast<int>(pages_.size()) - 1; }

    /** Z_r and B_r of slot s as subspaces of degree-(q-p) coordinates. */
    Subspace cycles(Slot s, int r) const;
    Subspace boundaries(Slot s, int r) const;
    /** Coordinates of v (a vector in degree coordinates lying in Z_r) modulo B_r. */
    std::optional<Vector> class_coordinates(Slot s, int r, const Vector& v) const;

    /** Page index after which nothing changes for this complex. */
    static int stable_page(const FilteredComplex& c);

private:
    Subspace filtration(int t, int s) const;
    Subspace z_space(int t, int s, int r) const;

    FilteredComplex c_;
    mutable std::map<std::tuple<int, int, int>, Subspace> zcache_;
    std::vector<SSPage> pages_;
    std::map<int, Matrix> dtot_;
};

/** Runs pages 0..r_max with internal E_{r+1} = H(E_r, d_r) checks. */
std::vector<SSPage> ss_pages(const FilteredComplex& c, int r_max);

}  // namespace knotss
