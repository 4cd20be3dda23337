#ifndef NSFR_MESH_HPP
#define NSFR_MESH_HPP

#include <array>
#include <stdexcept>

namespace nsfr {

/// Uniform periodic Cartesian mesh of axis-aligned affine elements.
/// Element index is lexicographic with x fastest:
/// e = ex + n[0]*(ey + n[1]*ez). Faces are numbered 2*dir + side with side 0
/// on the low-coordinate end.
struct CartesianMesh {
    int dim = 1;
    std::array<int, 3> n = {1, 1, 1};
    std::array<double, 3> lo = {0.0, 0.0, 0.0};
    std::array<double, 3> hi = {1.0, 1.0, 1.0};

    CartesianMesh() = default;
    CartesianMesh(int d, std::array<int, 3> cells, std::array<double, 3> lo_,
                  std::array<double, 3> hi_)
        : dim(d), n(cells), lo(lo_), hi(hi_)
    {
        if (d < 1 || d > 3) throw std::invalid_argument("mesh: dim 1..3");
        for (int a = 0; a < d; ++a) {
            if (n[a] < 1) throw std::invalid_argument("mesh: cells >= 1");
            if (!(hi[a] > lo[a]))
                throw std::invalid_argument("mesh: empty extent");
        }
        for (int a = d; a < 3; ++a) n[a] = 1;
    }

    int n_elements() const { return n[0] * n[1] * n[2]; }

    double dx(int dir) const { return (hi[dir] - lo[dir]) / n[dir]; }

    std::array<int, 3> element_coords(int e) const
    {
        return {e % n[0], (e / n[0]) % n[1], e / (n[0] * n[1])};
    }

    int element_index(std::array<int, 3> c) const
    {
        return c[0] + n[0] * (c[1] + n[1] * c[2]);
    }

    /// Low corner of an element in physical coordinates.
    std::array<double, 3> element_origin(int e) const
    {
        auto c = element_coords(e);
        return {lo[0] + c[0] * dx_or_one(0), lo[1] + c[1] * dx_or_one(1),
                lo[2] + c[2] * dx_or_one(2)};
    }

    /// Periodic neighbor across the given face; the shared face seen from the
    /// neighbor is the opposite one, and face nodes match index-for-index.
    int neighbor(int e, int face) const
    {
        const int dir = face / 2;
        auto c = element_coords(e);
        c[dir] += face % 2 == 0 ? -1 : 1;
        c[dir] = (c[dir] + n[dir]) % n[dir];
        return element_index(c);
    }

    static int opposite_face(int face) { return face ^ 1; }

private:
    double dx_or_one(int dir) const { return dir < dim ? dx(dir) : 1.0; }
};

} // namespace nsfr

#endif
