#pragma once

#include <cstdint>
#include <string>

namespace ldtk {

// A point of a configured ground space. Interval spaces use the coordinate x
// (id stays -1); finite point sets and clouds address points by index.
struct Point {
    double x = 0.0;
    int id = -1;

    static Point coord(double v) { return Point{v, -1}; }
    static Point indexed(int i) { return Point{0.0, i}; }

    bool is_indexed() const { return id >= 0; }

    friend bool operator==(const Point& a, const Point& b) { return a.id == b.id && a.x == b.x; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) {
        if (a.id != b.id) return a.id < b.id;
        return a.x < b.x;
    }
};

inline std::string to_string(const Point& p) {
    if (p.is_indexed()) return "#" + std::to_string(p.id);
    return std::to_string(p.x);
}

}  // namespace ldtk
