#include "knotss/spectral.hpp"

#include <algorithm>
#include <set>

namespace knotss {

void FilteredComplex::add_slot(Slot s, std::vector<std::string> labels) {
    if (slots_.count(s)) throw PreconditionError("slot added twice");
    slots_[s] = std::move(labels);
}

std::size_t FilteredComplex::slot_dim(Slot s) const {
    auto it = slots_.find(s);
    return it == slots_.end() ? 0 : it->second.size();
}

void FilteredComplex::set_block(Slot s, int r, Matrix m) {
    if (r < 0) throw PreconditionError("negative filtration drop");
    require_same_field(f_, m.field());
    Slot t{s.first - r, s.second - r + 1};
    if (m.cols() != slot_dim(s) || m.rows() != slot_dim(t))
        throw DimensionError("block shape does not match slot sizes");
    if (m.is_zero()) {
        blocks_.erase({s, r});
        return;
    }
    blocks_.insert_or_assign({s, r}, std::move(m));
}

const Matrix* FilteredComplex::block(Slot s, int r) const {
    auto it = blocks_.find({s, r});
    return it == blocks_.end() ? nullptr : &it->second;
}

void FilteredComplex::validate() const {
    // For each source slot and total drop R, sum_{r + r' = R} D_{r'} D_r must vanish.
    for (const auto& [s, labels] : slots_) {
        std::map<Slot, Matrix> acc;
        for (const auto& [key, m1] : blocks_) {
            if (key.first != s) continue;
            Slot mid{s.first - key.second, s.second - key.second + 1};
            for (const auto& [key2, m2] : blocks_) {
                if (key2.first != mid) continue;
                Slot tgt{mid.first - key2.second, mid.second - key2.second + 1};
                Matrix prod = m2 * m1;
                auto it = acc.find(tgt);
                if (it == acc.end())
                    acc.emplace(tgt, prod);
                else
                    it->second = it->second + prod;
            }
        }
        for (const auto& [tgt, m] : acc)
            if (!m.is_zero())
                throw PreconditionError("D o D != 0 from slot (" + std::to_string(s.first) + "," +
                                        std::to_string(s.second) + ") to (" + std::to_string(tgt.first) + "," +
                                        std::to_string(tgt.second) + ")");
        (void)labels;
    }
}

bool FilteredComplex::squares_to_zero() const {
    try {
        validate();
        return true;
    } catch (const PreconditionError&) {
        return false;
    }
}

std::vector<int> FilteredComplex::total_degrees() const {
    std::set<int> ts;
    for (const auto& [s, l] : slots_) ts.insert(s.second - s.first);
    return {ts.begin(), ts.end()};
}

std::vector<Slot> FilteredComplex::slots_in_degree(int t) const {
    std::vector<Slot> out;
    for (const auto& [s, l] : slots_)
        if (s.second - s.first == t) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t FilteredComplex::offset_in_degree(Slot s) const {
    std::size_t off = 0;
    for (Slot x : slots_in_degree(s.second - s.first)) {
        if (x == s) return off;
        off += slot_dim(x);
    }
    return off;
}

std::size_t FilteredComplex::degree_dim(int t) const {
    std::size_t n = 0;
    for (Slot x : slots_in_degree(t)) n += slot_dim(x);
    return n;
}

Matrix FilteredComplex::total_differential(int t) const {
    Matrix m(f_, degree_dim(t + 1), degree_dim(t));
    for (Slot s : slots_in_degree(t)) {
        std::size_t co = offset_in_degree(s);
        for (const auto& [key, b] : blocks_) {
            if (key.first != s) continue;
            Slot tgt{s.first - key.second, s.second - key.second + 1};
            std::size_t ro = offset_in_degree(tgt);
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (!b.entry_is_zero(i, j)) m.set(ro + i, co + j, b.at(i, j));
        }
    }
    return m;
}

std::size_t SSPage::dim(Slot s) const {
    auto it = slots.find(s);
    return it == slots.end() ? 0 : it->second.dim;
}

bool SSPage::differential_vanishes() const {
    for (const auto& [s, sp] : slots)
        if (sp.d_rank != 0) return false;
    return true;
}

int SpectralSequence::stable_page(const FilteredComplex& c) {
    if (c.slots().empty()) return 1;
    int lo = c.slots().begin()->first.first, hi = lo;
    for (const auto& [s, l] : c.slots()) {
        lo = std::min(lo, s.first);
        hi = std::max(hi, s.first);
    }
    return hi - lo + 2;
}

Subspace SpectralSequence::filtration(int t, int s) const {
    std::size_t n = c_.degree_dim(t);
    std::vector<Vector> vecs;
    for (Slot x : c_.slots_in_degree(t)) {
        if (x.first > s) continue;
        std::size_t off = c_.offset_in_degree(x);
        for (std::size_t k = 0; k < c_.slot_dim(x); ++k) {
            Vector v = zero_vector(c_.field(), n);
            v[off + k] = Scalar(c_.field(), 1);
            vecs.push_back(std::move(v));
        }
    }
    return Subspace::span(Matrix::from_columns(c_.field(), n, vecs));
}

Subspace SpectralSequence::z_space(int t, int s, int r) const {
    if (r < 0) return filtration(t, s);
    auto key = std::make_tuple(t, s, r);
    auto it = zcache_.find(key);
    if (it != zcache_.end()) return it->second;

    // Columns: coordinates of F_s in degree t. Rows: degree t+1 coordinates with p > s - r.
    std::vector<std::size_t> cols, rows;
    for (Slot x : c_.slots_in_degree(t))
        if (x.first <= s)
            for (std::size_t k = 0; k < c_.slot_dim(x); ++k) cols.push_back(c_.offset_in_degree(x) + k);
    for (Slot x : c_.slots_in_degree(t + 1))
        if (x.first > s - r)
            for (std::size_t k = 0; k < c_.slot_dim(x); ++k) rows.push_back(c_.offset_in_degree(x) + k);
    std::size_t n = c_.degree_dim(t);
    Subspace result(c_.field(), n);
    if (!cols.empty()) {
        Matrix constraint = dtot_.at(t).select_rows(rows).select_cols(cols);
        Subspace k = kernel_basis(constraint);
        Matrix emb(c_.field(), n, k.dim());
        for (std::size_t j = 0; j < k.dim(); ++j)
            for (std::size_t i = 0; i < cols.size(); ++i)
                if (!k.basis().entry_is_zero(i, j)) emb.set(cols[i], j, k.basis().at(i, j));
        result = Subspace::from_basis(emb);
    }
    zcache_.emplace(key, result);
    return result;
}

Subspace SpectralSequence::cycles(Slot s, int r) const { return z_space(s.second - s.first, s.first, r); }

Subspace SpectralSequence::boundaries(Slot s, int r) const {
    int t = s.second - s.first, p = s.first;
    Subspace lower = z_space(t, p - 1, r - 1);
    Subspace above = z_space(t - 1, p + r - 1, r - 1);
    if (above.dim() == 0) return lower;
    return lower.sum(above.image_under(dtot_.at(t - 1)));
}

std::optional<Vector> SpectralSequence::class_coordinates(Slot s, int r, const Vector& v) const {
    Subspace z = cycles(s, r);
    if (!z.contains(v)) return std::nullopt;
    const SlotPage& sp = page(r).slots.at(s);
    return quotient_coordinates(z, boundaries(s, r), sp.reps, v);
}

SpectralSequence::SpectralSequence(const FilteredComplex& c, int r_max) : c_(c) {
    c_.validate();
    std::vector<int> degrees = c_.total_degrees();
    for (int t : degrees) {
        dtot_.emplace(t, c_.total_differential(t));
        if (!dtot_.count(t - 1)) dtot_.emplace(t - 1, c_.total_differential(t - 1));
    }
    for (int r = 0; r <= r_max; ++r) {
        SSPage page;
        page.r = r;
        for (const auto& [s, labels] : c_.slots()) {
            Subquotient sq = subquotient(cycles(s, r), boundaries(s, r));
            SlotPage sp{sq.dimension, sq.representatives, Matrix(c_.field(), 0, sq.dimension), 0};
            page.slots.emplace(s, std::move(sp));
        }
        for (auto& [s, sp] : page.slots) {
            Slot tgt{s.first - r, s.second - r + 1};
            int t = s.second - s.first;
            Matrix d = induced_map(dtot_.at(t), cycles(s, r), boundaries(s, r), cycles(tgt, r), boundaries(tgt, r));
            sp.d_rank = rank(d);
            sp.d = std::move(d);
        }
        // d_r o d_r = 0 slotwise.
        for (const auto& [s, sp] : page.slots) {
            Slot tgt{s.first - r, s.second - r + 1};
            auto it = page.slots.find(tgt);
            if (it == page.slots.end() || sp.dim == 0) continue;
            if (!(it->second.d * sp.d).is_zero()) throw std::logic_error("page differential does not square to zero");
        }
        if (r > 0) {
            const SSPage& prev = pages_.back();
            for (const auto& [s, sp] : page.slots) {
                std::size_t out = prev.slots.at(s).d_rank;
                std::size_t in = 0;
                Slot src{s.first + r - 1, s.second + r - 2};
                auto it = prev.slots.find(src);
                if (it != prev.slots.end()) in = it->second.d_rank;
                if (sp.dim + out + in != prev.slots.at(s).dim)
                    throw std::logic_error("page " + std::to_string(r) + " is not the homology of page " +
                                           std::to_string(r - 1));
            }
        }
        pages_.push_back(std::move(page));
    }
}

std::vector<SSPage> ss_pages(const FilteredComplex& c, int r_max) { return SpectralSequence(c, r_max).pages(); }

}  // namespace knotss
