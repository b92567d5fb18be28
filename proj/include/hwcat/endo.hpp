#pragma once

// Present the opposite endomorphism algebra of a direct sum of pairwise
// non-isomorphic indecomposables as a path algebra with relations, and
// transport modules across the resulting equivalence Hom(T, -).

#include "hwcat/decompose.hpp"
#include "hwcat/error.hpp"
#include "hwcat/module.hpp"
#include "hwcat/path_algebra.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hwcat {

namespace detail {

/// Per-vertex offsets of each part inside a direct sum.
template <class K>
std::vector<std::vector<std::size_t>> sum_offsets(const std::vector<Module<K>>& parts) {
    if (parts.empty()) return {};
    std::size_t nv = parts.front().algebra()->quiver().vertex_count();
    std::vector<std::vector<std::size_t>> off(parts.size(), std::vector<std::size_t>(nv, 0));
    for (std::size_t v = 0; v < nv; ++v) {
        std::size_t acc = 0;
        for (std::size_t s = 0; s < parts.size(); ++s) {
            off[s][v] = acc;
            acc += parts[s].dims()[v];
        }
    }
    return off;
}

/// Extract the block T_i -> T_j of an endomorphism of the direct sum.
template <class K>
ModuleMap<K> sum_block(const ModuleMap<K>& f, const std::vector<Module<K>>& parts,
                       const std::vector<std::vector<std::size_t>>& off, std::size_t i,
                       std::size_t j) {
    const Module<K>& src = parts[i];
    const Module<K>& tgt = parts[j];
    FieldCtx<K> ctx = src.algebra()->ctx();
    std::size_t nv = src.algebra()->quiver().vertex_count();
    std::vector<Matrix<K>> comps;
    for (std::size_t v = 0; v < nv; ++v) {
        Matrix<K> m(tgt.dims()[v], src.dims()[v], ctx);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                m.at(r, c) = f.component(static_cast<int>(v)).at(off[j][v] + r, off[i][v] + c);
        comps.push_back(std::move(m));
    }
    return ModuleMap<K>(src, tgt, std::move(comps));
}

} // namespace detail

/// A path-algebra presentation of End(T_1 + ... + T_n)^op together with the
/// data needed to move modules across Hom(T, -).
template <class K>
struct EndoPresentation {
    typename PathAlgebra<K>::Ptr alg;      // presents the opposite endomorphism algebra
    std::vector<Module<K>> summands;       // the T_i, in vertex order
    std::vector<ModuleMap<K>> arrow_maps;  // arrow i -> j realizes a map T_j -> T_i

    /// Hom(T, x) as a module over the presented algebra: the space at vertex i
    /// is Hom(T_i, x) and an arrow acts by precomposition with its map.
    Module<K> transport(const Module<K>& x) const {
        FieldCtx<K> ctx = alg->ctx();
        const Quiver& q = alg->quiver();
        std::vector<std::vector<ModuleMap<K>>> bases;
        std::vector<std::size_t> dims;
        for (const Module<K>& t : summands) {
            bases.push_back(hom_space(t, x));
            dims.push_back(bases.back().size());
        }
        std::vector<Matrix<K>> acts;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            std::size_t i = static_cast<std::size_t>(q.arrow(static_cast<int>(a)).src);
            std::size_t j = static_cast<std::size_t>(q.arrow(static_cast<int>(a)).tgt);
            std::vector<ModuleMap<K>> pushed;
            for (const ModuleMap<K>& b : bases[i]) pushed.push_back(b.after(arrow_maps[a]));
            acts.push_back(detail::coords_in(bases[j], pushed, ctx));
        }
        return Module<K>(alg, std::move(dims), std::move(acts));
    }

    /// Functorial action on maps: Hom(T, f).
    ModuleMap<K> transport_map(const ModuleMap<K>& f) const {
        FieldCtx<K> ctx = alg->ctx();
        Module<K> src = transport(f.source());
        Module<K> tgt = transport(f.target());
        std::vector<Matrix<K>> comps;
        for (std::size_t i = 0; i < summands.size(); ++i) {
            std::vector<ModuleMap<K>> src_basis = hom_space(summands[i], f.source());
            std::vector<ModuleMap<K>> tgt_basis = hom_space(summands[i], f.target());
            std::vector<ModuleMap<K>> pushed;
            for (const ModuleMap<K>& b : src_basis) pushed.push_back(f.after(b));
            comps.push_back(detail::coords_in(tgt_basis, pushed, ctx));
        }
        return ModuleMap<K>(src, tgt, std::move(comps));
    }
};

/// Compute the presentation.  Requires the summands to be bricks or at least
/// to assemble into a split basic endomorphism algebra; anything else raises
/// an undecided/ill-posed error rather than guessing.
template <class K>
EndoPresentation<K> present_opposite_endomorphisms(const std::vector<Module<K>>& summands,
                                                   std::vector<std::string> vertex_names = {}) {
    require(!summands.empty(), ErrorKind::DimensionMismatch, "no summands given");
    auto alg = summands.front().algebra();
    for (const Module<K>& t : summands) {
        require(t.algebra() == alg, ErrorKind::AlgebraMismatch,
                "summands live over different algebras");
        require(!t.is_zero(), ErrorKind::DimensionMismatch, "zero summand");
    }
    FieldCtx<K> ctx = alg->ctx();
    std::size_t n = summands.size();
    if (vertex_names.empty())
        for (std::size_t i = 0; i < n; ++i) vertex_names.push_back(std::to_string(i + 1));
    require(vertex_names.size() == n, ErrorKind::DimensionMismatch,
            "one vertex name per summand required");

    Module<K> total = Module<K>::direct_sum(summands, alg);
    auto off = detail::sum_offsets(summands);
    std::vector<ModuleMap<K>> end_basis = hom_space(total, total);

    EndoRadical<K> rad = endo_radical(total, end_basis);
    require(rad.certified, ErrorKind::Undecided,
            "radical of the endomorphism algebra not certified: " + rad.note);
    require(end_basis.size() - rad.rad_basis.size() == n, ErrorKind::Undecided,
            "endomorphism algebra is not split basic over its radical");

    // radical-squared spanning set
    std::vector<ModuleMap<K>> rad_sq;
    for (const ModuleMap<K>& r : rad.rad_basis)
        for (const ModuleMap<K>& s : rad.rad_basis) rad_sq.push_back(r.after(s));

    // choose arrow representatives: the arrow i -> j of the presentation
    // corresponds to a map T_j -> T_i spanning radical modulo radical-squared
    std::vector<Arrow> arrows;
    std::vector<ModuleMap<K>> arrow_maps;
    std::size_t arrow_no = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // block (j -> i): maps T_j -> T_i
            std::vector<ModuleMap<K>> blocks, sq_blocks;
            for (const ModuleMap<K>& r : rad.rad_basis)
                blocks.push_back(detail::sum_block(r, summands, off, j, i));
            for (const ModuleMap<K>& r : rad_sq)
                sq_blocks.push_back(detail::sum_block(r, summands, off, j, i));
            Matrix<K> flat = detail::flatten_maps(blocks, ctx);
            Matrix<K> inside = detail::flatten_maps(sq_blocks, ctx).image_basis();
            for (std::size_t c : complete_basis_indices(inside, flat)) {
                arrows.push_back(Arrow{"u" + std::to_string(++arrow_no), static_cast<int>(i),
                                       static_cast<int>(j)});
                arrow_maps.push_back(blocks[c]);
            }
        }
    }
    Quiver q(vertex_names, arrows);

    // walk path words in normal-form order; linear dependence yields relations
    struct WordState {
        Path path;
        ModuleMap<K> image; // T_{tgt} -> T_{src}
    };
    std::map<std::pair<int, int>, std::vector<std::size_t>> buckets; // (src,tgt) -> word ids
    std::vector<WordState> words;
    std::vector<Relation<K>> relations;
    std::vector<std::size_t> frontier;
    for (std::size_t v = 0; v < n; ++v) {
        words.push_back(WordState{Path::trivial(static_cast<int>(v)),
                                  ModuleMap<K>::identity(summands[v])});
        buckets[{static_cast<int>(v), static_cast<int>(v)}].push_back(words.size() - 1);
        frontier.push_back(words.size() - 1);
    }
    std::size_t max_len = 0;
    while (!frontier.empty()) {
        // extensions of the frontier, in normal-form order
        std::vector<std::pair<Path, std::pair<std::size_t, std::size_t>>> cand; // path, (word, arrow)
        for (std::size_t w : frontier) {
            for (std::size_t a = 0; a < q.arrow_count(); ++a) {
                if (q.arrow(static_cast<int>(a)).src != words[w].path.tgt) continue;
                Path ap = Path::of_arrows(q, {static_cast<int>(a)});
                cand.push_back({compose(ap, words[w].path), {w, a}});
            }
        }
        std::sort(cand.begin(), cand.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<std::size_t> next;
        for (const auto& c : cand) {
            const Path& p = c.first;
            ModuleMap<K> img = words[c.second.first].image.after(arrow_maps[c.second.second]);
            auto& bucket = buckets[{p.src, p.tgt}];
            std::vector<ModuleMap<K>> basis;
            for (std::size_t id : bucket) basis.push_back(words[id].image);
            Matrix<K> flat = detail::flatten_maps(basis, ctx);
            Matrix<K> v = detail::flatten_map(img, ctx);
            std::optional<Matrix<K>> x;
            if (flat.cols() == 0) {
                if (v.is_zero()) x = Matrix<K>(0, 1, ctx);
            } else {
                x = flat.solve(v);
            }
            if (x.has_value()) {
                Relation<K> rel;
                rel.terms.push_back({ctx.one(), p});
                for (std::size_t b = 0; b < bucket.size(); ++b) {
                    K coeff = (flat.cols() == 0) ? ctx.zero() : x->at(b, 0);
                    if (!(coeff == ctx.zero()))
                        rel.terms.push_back({ctx.zero() - coeff, words[bucket[b]].path});
                }
                relations.push_back(std::move(rel));
            } else {
                words.push_back(WordState{p, img});
                bucket.push_back(words.size() - 1);
                next.push_back(words.size() - 1);
                max_len = std::max(max_len, p.arrows.size());
            }
        }
        frontier = std::move(next);
    }
    require(words.size() == end_basis.size(), ErrorKind::Internal,
            "presentation walk found a basis of the wrong size");

    EndoPresentation<K> out;
    out.alg = PathAlgebra<K>::build(q, relations, ctx, max_len + 2);
    require(out.alg->dim() == end_basis.size(), ErrorKind::Internal,
            "presented algebra has the wrong dimension");
    out.summands = summands;
    out.arrow_maps = std::move(arrow_maps);
    return out;
}

} // namespace hwcat
