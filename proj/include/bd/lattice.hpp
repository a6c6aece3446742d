#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

namespace bd {

using Coord = std::int32_t;
using Height = std::int64_t;

// A lattice site in Z^d. Dimension is carried by the coordinate vector and is
// fixed per run.
struct Site {
    std::vector<Coord> c;

    Site() = default;
    explicit Site(std::vector<Coord> coords) : c(std::move(coords)) {}
    static Site origin(int d) { return Site(std::vector<Coord>(d, 0)); }

    int dim() const { return static_cast<int>(c.size()); }
    long l1() const {
        long s = 0;
        for (Coord v : c) s += std::abs(static_cast<long>(v));
        return s;
    }
    long linf() const {
        long s = 0;
        for (Coord v : c) s = std::max(s, std::abs(static_cast<long>(v)));
        return s;
    }
    bool operator==(const Site& o) const { return c == o.c; }
    bool operator<(const Site& o) const { return c < o.c; }
};

// x +- e_i, canonical order (+e_1, -e_1, +e_2, -e_2, ...).
std::vector<Site> neighbors(const Site& x);

// Distance helpers.
long l1_distance(const Site& a, const Site& b);

// The box [-N,N]^d with lexicographic flat indexing (first coordinate most
// significant). The lexicographic order fixes serialization layout and RNG
// consumption order.
class Box {
  public:
    Box(int dim, int half_width);

    int dim() const { return d_; }
    int half_width() const { return n_; }
    int side() const { return 2 * n_ + 1; }
    std::size_t size() const { return size_; }

    bool contains(const Site& x) const;
    std::size_t index_of(const Site& x) const;  // requires contains(x)
    Site site_at(std::size_t idx) const;
    std::vector<Site> sites() const;  // canonical order, length (2N+1)^d

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    // Flat-index neighbor table: entry [idx * 2d + k] is the index of the
    // k-th neighbor in canonical direction order, or npos if outside the box.
    // Built on first use and shared between copies.
    const std::vector<std::size_t>& neighbor_table() const;

    bool operator==(const Box& o) const { return d_ == o.d_ && n_ == o.n_; }

  private:
    int d_;
    int n_;
    std::size_t size_;
    mutable std::shared_ptr<const std::vector<std::size_t>> nbr_;
};

// How height queries outside the box resolve. PinnedZero is the simulation
// chain convention (zero outside B_N at all times). FrozenInitial is the
// graphical-construction convention: outside heights keep the initial value,
// stored here as a constant that shifts with the field.
enum class Boundary { PinnedZero, FrozenInitial };

class HeightField {
  public:
    HeightField(Box box, Boundary boundary, Height fill = 0)
        : box_(std::move(box)), boundary_(boundary),
          h_(box_.size(), fill), outside_(boundary == Boundary::PinnedZero ? 0 : fill) {}

    const Box& box() const { return box_; }
    Boundary boundary() const { return boundary_; }

    Height operator[](std::size_t idx) const { return h_[idx]; }
    Height& operator[](std::size_t idx) { return h_[idx]; }

    // Height at any site of Z^d under the boundary convention.
    Height at(const Site& x) const {
        return box_.contains(x) ? h_[box_.index_of(x)] : outside_;
    }
    // Same, for a flat neighbor-table entry (npos means outside).
    Height at_index(std::size_t idx) const {
        return idx == Box::npos ? outside_ : h_[idx];
    }

    Height outside_value() const { return outside_; }

    // Shift the whole surface. Under FrozenInitial the outside constant moves
    // too; under PinnedZero the outside stays pinned at 0.
    void add_constant(Height c) {
        for (Height& v : h_) v += c;
        if (boundary_ == Boundary::FrozenInitial) outside_ += c;
    }

    const std::vector<Height>& data() const { return h_; }
    std::vector<Height>& data() { return h_; }

    bool operator==(const HeightField& o) const {
        return box_ == o.box_ && boundary_ == o.boundary_ && h_ == o.h_ &&
               outside_ == o.outside_;
    }

  private:
    Box box_;
    Boundary boundary_;
    std::vector<Height> h_;
    Height outside_;
};

// Forward differences h(x+e_i) - h(x); component (axis, idx) is defined only
// when both endpoints lie in the box.
struct GradientField {
    Box box;
    std::vector<std::vector<Height>> comp;  // [axis][flat index]

    bool valid(int axis, std::size_t idx) const {
        return box.neighbor_table()[idx * 2 * box.dim() + 2 * axis] != Box::npos;
    }
    bool empty() const;
};

GradientField gradient_field(const HeightField& h);

// Path-sum the gradient from the origin; returns the centered surface
// (origin height 0). Inverse of gradient_field up to re-centering.
HeightField field_from_gradient(const GradientField& g);

// h(x) - h(0); throws if the origin is outside the box (only possible for a
// degenerate caller-constructed box, B_N always contains it).
HeightField recenter(const HeightField& h);

// Axis permutation + per-axis sign flip: the hyperoctahedral group, order
// 2^d d!. s(x)_i = sign[i] * x[perm[i]].
struct LatticeSymmetry {
    std::vector<int> perm;
    std::vector<int> sign;

    static LatticeSymmetry identity(int d);
    static std::vector<LatticeSymmetry> all(int d);

    Site apply(const Site& x) const;
    LatticeSymmetry compose(const LatticeSymmetry& other) const;  // this after other
    LatticeSymmetry inverse() const;
    bool operator==(const LatticeSymmetry& o) const {
        return perm == o.perm && sign == o.sign;
    }
};

// out(x) = in(s^{-1}(x)). B_N is invariant under every lattice symmetry.
HeightField apply_symmetry(const LatticeSymmetry& s, const HeightField& h);

}  // namespace bd
