#pragma once

#include <cstdint>
#include <vector>

#include "maxsurf/core.hpp"

namespace maxsurf {

// Uniform rectangular grid with square cells.  Point (iu, iv) sits at
// u0 + iu*h, v0 + iv*h; storage is row major with v as the slow index.
struct GridSpec {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    int nu = 5, nv = 5;
    double h = 0.25;

    static GridSpec make(double u0, double u1, double v0, double v1, int nu, int nv);

    int size() const { return nu * nv; }
    int index(int iu, int iv) const { return iv * nu + iu; }
    double u(int iu) const { return u0 + iu * h; }
    double v(int iv) const { return v0 + iv * h; }
    Complex point(int iu, int iv) const { return {u(iu), v(iv)}; }

    // refinement that keeps the corners and nests the coarse points
    GridSpec refined() const;
};

template <class T>
struct Field {
    GridSpec grid;
    std::vector<T> data;

    Field() = default;
    explicit Field(const GridSpec& g, T fill = T{}) : grid(g), data(g.size(), fill) {}

    T& at(int iu, int iv) { return data[grid.index(iu, iv)]; }
    const T& at(int iu, int iv) const { return data[grid.index(iu, iv)]; }
    T& operator[](int i) { return data[i]; }
    const T& operator[](int i) const { return data[i]; }
};

using Mask = std::vector<std::uint8_t>;

}  // namespace maxsurf
