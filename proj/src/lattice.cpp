#include "bd/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace bd {

std::vector<Site> neighbors(const Site& x) {
    std::vector<Site> out;
    out.reserve(2 * x.dim());
    for (int i = 0; i < x.dim(); ++i) {
        Site p = x, m = x;
        p.c[i] += 1;
        m.c[i] -= 1;
        out.push_back(std::move(p));
        out.push_back(std::move(m));
    }
    return out;
}

long l1_distance(const Site& a, const Site& b) {
    long s = 0;
    for (int i = 0; i < a.dim(); ++i)
        s += std::abs(static_cast<long>(a.c[i]) - static_cast<long>(b.c[i]));
    return s;
}

Box::Box(int dim, int half_width) : d_(dim), n_(half_width) {
    if (dim < 1) throw std::invalid_argument("Box: dimension must be >= 1");
    if (half_width < 0) throw std::invalid_argument("Box: half-width must be >= 0");
    size_ = 1;
    for (int i = 0; i < d_; ++i) {
        if (size_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(side()))
            throw std::invalid_argument("Box: site count overflows");
        size_ *= static_cast<std::size_t>(side());
    }
}

// Precomputed neighbor indices keep the deposit loop free of coordinate
// arithmetic.
const std::vector<std::size_t>& Box::neighbor_table() const {
    if (nbr_) return *nbr_;
    auto table = std::make_shared<std::vector<std::size_t>>(
        size_ * 2 * static_cast<std::size_t>(d_), npos);
    auto& nbr = *table;
    std::vector<std::size_t> stride(d_);
    stride[d_ - 1] = 1;
    for (int i = d_ - 2; i >= 0; --i)
        stride[i] = stride[i + 1] * static_cast<std::size_t>(side());
    std::vector<Coord> c(d_, static_cast<Coord>(-n_));
    for (std::size_t idx = 0; idx < size_; ++idx) {
        for (int i = 0; i < d_; ++i) {
            if (c[i] < n_) nbr[idx * 2 * d_ + 2 * i] = idx + stride[i];
            if (c[i] > -n_) nbr[idx * 2 * d_ + 2 * i + 1] = idx - stride[i];
        }
        for (int i = d_ - 1; i >= 0; --i) {
            if (c[i] < n_) { ++c[i]; break; }
            c[i] = static_cast<Coord>(-n_);
        }
    }
    nbr_ = std::move(table);
    return *nbr_;
}

bool Box::contains(const Site& x) const {
    if (x.dim() != d_) return false;
    for (Coord v : x.c)
        if (v < -n_ || v > n_) return false;
    return true;
}

std::size_t Box::index_of(const Site& x) const {
    std::size_t idx = 0;
    for (int i = 0; i < d_; ++i)
        idx = idx * static_cast<std::size_t>(side()) +
              static_cast<std::size_t>(x.c[i] + n_);
    return idx;
}

Site Box::site_at(std::size_t idx) const {
    Site x{std::vector<Coord>(static_cast<std::size_t>(d_))};
    for (int i = d_ - 1; i >= 0; --i) {
        x.c[i] = static_cast<Coord>(idx % static_cast<std::size_t>(side())) - n_;
        idx /= static_cast<std::size_t>(side());
    }
    return x;
}

std::vector<Site> Box::sites() const {
    std::vector<Site> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back(site_at(i));
    return out;
}

bool GradientField::empty() const {
    const std::size_t d2 = 2 * static_cast<std::size_t>(box.dim());
    for (std::size_t idx = 0; idx < box.size(); ++idx)
        for (int a = 0; a < box.dim(); ++a)
            if (box.neighbor_table()[idx * d2 + 2 * a] != Box::npos) return false;
    return true;
}

GradientField gradient_field(const HeightField& h) {
    const Box& box = h.box();
    GradientField g{box, std::vector<std::vector<Height>>(
                             box.dim(), std::vector<Height>(box.size(), 0))};
    const std::size_t d2 = 2 * static_cast<std::size_t>(box.dim());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        for (int a = 0; a < box.dim(); ++a) {
            std::size_t up = box.neighbor_table()[idx * d2 + 2 * a];
            if (up != Box::npos) g.comp[a][idx] = h[up] - h[idx];
        }
    }
    return g;
}

HeightField field_from_gradient(const GradientField& g) {
    const Box& box = g.box;
    HeightField out(box, Boundary::FrozenInitial, 0);
    // Walk each site from the origin one axis at a time, summing forward
    // differences (backwards when the coordinate is negative). Telescoping
    // makes the path choice irrelevant for a curl-free field.
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Site target = box.site_at(idx);
        Site cur = Site::origin(box.dim());
        Height v = 0;
        for (int a = 0; a < box.dim(); ++a) {
            while (cur.c[a] < target.c[a]) {
                v += g.comp[a][box.index_of(cur)];
                ++cur.c[a];
            }
            while (cur.c[a] > target.c[a]) {
                --cur.c[a];
                v -= g.comp[a][box.index_of(cur)];
            }
        }
        out[idx] = v;
    }
    return out;
}

HeightField recenter(const HeightField& h) {
    Site o = Site::origin(h.box().dim());
    if (!h.box().contains(o))
        throw std::invalid_argument("recenter: origin outside box");
    HeightField out = h;
    out.add_constant(-h.at(o));
    return out;
}

LatticeSymmetry LatticeSymmetry::identity(int d) {
    LatticeSymmetry s;
    s.perm.resize(d);
    std::iota(s.perm.begin(), s.perm.end(), 0);
    s.sign.assign(d, 1);
    return s;
}

std::vector<LatticeSymmetry> LatticeSymmetry::all(int d) {
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<LatticeSymmetry> out;
    do {
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            LatticeSymmetry s;
            s.perm = perm;
            s.sign.resize(d);
            for (int i = 0; i < d; ++i) s.sign[i] = (mask >> i) & 1 ? -1 : 1;
            out.push_back(std::move(s));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Site LatticeSymmetry::apply(const Site& x) const {
    Site y{std::vector<Coord>(static_cast<std::size_t>(x.dim()))};
    for (int i = 0; i < x.dim(); ++i)
        y.c[i] = static_cast<Coord>(sign[i]) * x.c[perm[i]];
    return y;
}

LatticeSymmetry LatticeSymmetry::compose(const LatticeSymmetry& other) const {
    // (this o other)(x) = this.apply(other.apply(x))
    const int d = static_cast<int>(perm.size());
    LatticeSymmetry s;
    s.perm.resize(d);
    s.sign.resize(d);
    for (int i = 0; i < d; ++i) {
        s.perm[i] = other.perm[perm[i]];
        s.sign[i] = sign[i] * other.sign[perm[i]];
    }
    return s;
}

LatticeSymmetry LatticeSymmetry::inverse() const {
    const int d = static_cast<int>(perm.size());
    LatticeSymmetry s;
    s.perm.resize(d);
    s.sign.resize(d);
    for (int i = 0; i < d; ++i) {
        s.perm[perm[i]] = i;
        s.sign[perm[i]] = sign[i];
    }
    return s;
}

HeightField apply_symmetry(const LatticeSymmetry& s, const HeightField& h) {
    const Box& box = h.box();
    HeightField out(box, h.boundary(), h.outside_value());
    LatticeSymmetry inv = s.inverse();
    for (std::size_t idx = 0; idx < box.size(); ++idx)
        out[idx] = h[box.index_of(inv.apply(box.site_at(idx)))];
    return out;
}

}  // namespace bd
