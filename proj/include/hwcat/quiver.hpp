#pragma once

// Quivers and paths.  A path stores its arrows in application order (the
// arrow traversed first comes first); the printed spelling follows function
// composition, rightmost factor applied first, so the path that travels d
// then a is written "ad".

#include "hwcat/error.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace hwcat {

struct Arrow {
    std::string name;
    int src = -1; // where the arrow starts (travel direction)
    int tgt = -1; // where it ends
};

class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                require(vertices_[i] != vertices_[j], ErrorKind::ParseError,
                        "duplicate vertex name '" + vertices_[i] + "'");
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            const Arrow& a = arrows_[i];
            require(a.src >= 0 && a.src < static_cast<int>(vertices_.size()),
                    ErrorKind::UnknownVertex, "arrow '" + a.name + "' source out of range");
            require(a.tgt >= 0 && a.tgt < static_cast<int>(vertices_.size()),
                    ErrorKind::UnknownVertex, "arrow '" + a.name + "' target out of range");
            for (std::size_t j = i + 1; j < arrows_.size(); ++j)
                require(a.name != arrows_[j].name, ErrorKind::ParseError,
                        "duplicate arrow name '" + a.name + "'");
        }
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::string& vertex_name(int v) const { return vertices_.at(v); }
    const Arrow& arrow(int a) const { return arrows_.at(a); }

    int vertex_index(const std::string& name) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == name) return static_cast<int>(i);
        fail(ErrorKind::UnknownVertex, "no vertex named '" + name + "'");
    }

    int arrow_index(const std::string& name) const {
        for (std::size_t i = 0; i < arrows_.size(); ++i)
            if (arrows_[i].name == name) return static_cast<int>(i);
        fail(ErrorKind::UnknownArrow, "no arrow named '" + name + "'");
    }

    /// Same vertices, every arrow reversed.  Arrow names are kept, so paths
    /// correspond by reversing their spelling.
    Quiver reversed() const {
        std::vector<Arrow> rev = arrows_;
        for (Arrow& a : rev) std::swap(a.src, a.tgt);
        return Quiver(vertices_, std::move(rev));
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

/// A path in a quiver.  `arrows` lists arrow indices in application order;
/// an empty list is the trivial path at `src` (== `tgt`).
struct Path {
    int src = -1;
    int tgt = -1;
    std::vector<int> arrows;

    static Path trivial(int v) { return Path{v, v, {}}; }

    static Path of_arrows(const Quiver& q, const std::vector<int>& arrows_in_order) {
        require(!arrows_in_order.empty(), ErrorKind::Internal, "empty arrow list");
        Path p;
        p.arrows = arrows_in_order;
        p.src = q.arrow(arrows_in_order.front()).src;
        p.tgt = q.arrow(arrows_in_order.back()).tgt;
        for (std::size_t i = 0; i + 1 < arrows_in_order.size(); ++i)
            require(q.arrow(arrows_in_order[i]).tgt == q.arrow(arrows_in_order[i + 1]).src,
                    ErrorKind::IllFormedRelation, "arrows do not compose");
        return p;
    }

    std::size_t length() const { return arrows.size(); }
    bool is_trivial() const { return arrows.empty(); }

    bool operator==(const Path& o) const {
        return src == o.src && arrows == o.arrows;
    }
    bool operator!=(const Path& o) const { return !(*this == o); }

    /// Order by (length, arrow sequence, source).  Length-first makes the
    /// order compatible with concatenation, which the rewriting relies on.
    bool operator<(const Path& o) const {
        if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
        if (arrows != o.arrows) return arrows < o.arrows;
        return src < o.src;
    }

    /// Function-composition spelling: rightmost arrow is applied first.
    std::string spell(const Quiver& q) const {
        if (is_trivial()) return "e_" + q.vertex_name(src);
        std::string s;
        for (auto it = arrows.rbegin(); it != arrows.rend(); ++it) {
            if (!s.empty()) s += "*";
            s += q.arrow(*it).name;
        }
        return s;
    }
};

/// compose(p, q) = p after q: defined when q ends where p starts.
inline bool composable(const Path& p, const Path& q) { return q.tgt == p.src; }

inline Path compose(const Path& p, const Path& q) {
    require(composable(p, q), ErrorKind::Internal,
            "compose: paths not composable");
    Path r;
    r.src = q.src;
    r.tgt = p.tgt;
    r.arrows = q.arrows;
    r.arrows.insert(r.arrows.end(), p.arrows.begin(), p.arrows.end());
    return r;
}

} // namespace hwcat
