#pragma once

// Built-in example algebras used by the CLI and the regression corpus.
//
//   kalck  three vertices; arrows a,b:1->2, c:2->3, d:3->1;
//          relations a*d = 0, c*b = 0, d*c = 0 (words read right to left).
//          Finite dimensional (dim 9), global dimension 4, not directed.
//   a2     linear quiver 1 -> 2, no relations (dim 3).
//   a3     linear quiver 1 -> 2 -> 3, no relations (dim 6).
//   z2     two vertices with arrows a:1->2, b:2->1 and relations
//          a*b = 0, b*a = 0 (dim 4, infinite global dimension).
//   pt     a single vertex, no arrows (dim 1).

#include "hwcat/error.hpp"
#include "hwcat/path_algebra.hpp"
#include "hwcat/quiver.hpp"

#include <string>
#include <vector>

namespace hwcat {

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"kalck", "a2", "a3", "z2", "pt"};
    return names;
}

inline bool is_builtin(const std::string& name) {
    for (const auto& n : builtin_names())
        if (n == name) return true;
    return false;
}

namespace detail {

inline Quiver builtin_quiver(const std::string& name) {
    if (name == "kalck")
        return Quiver({"1", "2", "3"},
                      {Arrow{"a", 0, 1}, Arrow{"b", 0, 1}, Arrow{"c", 1, 2}, Arrow{"d", 2, 0}});
    if (name == "a2") return Quiver({"1", "2"}, {Arrow{"a", 0, 1}});
    if (name == "a3") return Quiver({"1", "2", "3"}, {Arrow{"a", 0, 1}, Arrow{"b", 1, 2}});
    if (name == "z2") return Quiver({"1", "2"}, {Arrow{"a", 0, 1}, Arrow{"b", 1, 0}});
    if (name == "pt") return Quiver({"1"}, {});
    fail(ErrorKind::ParseError, "unknown builtin algebra '" + name + "'");
}

} // namespace detail

/// Build one of the builtin algebras over the given field context.
template <class K>
typename PathAlgebra<K>::Ptr make_builtin(const std::string& name, FieldCtx<K> ctx,
                                          std::size_t length_bound = 50) {
    Quiver q = detail::builtin_quiver(name);
    auto mono = [&](std::initializer_list<const char*> arrows_applied_first_to_last) {
        std::vector<int> ids;
        for (const char* a : arrows_applied_first_to_last) ids.push_back(q.arrow_index(a));
        Relation<K> r;
        r.terms.emplace_back(ctx.one(), Path::of_arrows(q, ids));
        return r;
    };
    std::vector<Relation<K>> rels;
    if (name == "kalck") {
        rels.push_back(mono({"d", "a"})); // a*d = 0
        rels.push_back(mono({"b", "c"})); // c*b = 0
        rels.push_back(mono({"c", "d"})); // d*c = 0
    } else if (name == "z2") {
        rels.push_back(mono({"b", "a"})); // a*b = 0
        rels.push_back(mono({"a", "b"})); // b*a = 0
    }
    return PathAlgebra<K>::build(std::move(q), std::move(rels), ctx, length_bound);
}

} // namespace hwcat
