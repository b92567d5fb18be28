#pragma once

// Minimal projective resolutions and their consequences: Ext groups,
// projective dimension, a global-dimension probe that certifies infinity via
// syzygy periodicity, and the Euler pairing on dimension vectors.

#include "hwcat/decompose.hpp"
#include "hwcat/error.hpp"
#include "hwcat/module.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hwcat {

template <class K>
struct Cover {
    Module<K> proj;                    // direct sum of indecomposable projectives
    ModuleMap<K> onto;                 // the cover map
    std::vector<std::size_t> mults;    // multiplicity of each vertex projective
};

/// Projective cover: one vertex projective per basis vector of the head.
template <class K>
Cover<K> projective_cover(const Module<K>& m) {
    auto alg = m.algebra();
    const Quiver& q = alg->quiver();
    FieldCtx<K> ctx = alg->ctx();

    ModuleMap<K> head = top(m); // m -> m/rad m
    std::vector<std::size_t> mults(q.vertex_count());
    std::vector<Module<K>> parts;
    std::vector<std::vector<Matrix<K>>> generators; // chosen preimages per vertex copy
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        mults[v] = head.target().dims()[v];
        if (mults[v] == 0) continue;
        // lift the identity of the head block through the projection
        auto lift = head.component(static_cast<int>(v))
                        .solve(Matrix<K>::identity(mults[v], ctx));
        require(lift.has_value(), ErrorKind::Internal, "head projection is not surjective");
        for (std::size_t i = 0; i < mults[v]; ++i) {
            parts.push_back(Module<K>::projective(alg, static_cast<int>(v)));
            generators.push_back({lift->col(i)});
        }
    }
    Module<K> p = Module<K>::direct_sum(parts, alg);

    // assemble the map: on the copy of P_v with generator g, a basis path
    // (v -> w) goes to its action on g
    std::vector<Matrix<K>> comps;
    for (std::size_t w = 0; w < q.vertex_count(); ++w)
        comps.emplace_back(m.dims()[w], p.dims()[w], ctx);
    std::size_t copy = 0;
    std::vector<std::size_t> col_off(q.vertex_count(), 0);
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        for (std::size_t i = 0; i < mults[v]; ++i) {
            const Matrix<K>& g = generators[copy].front(); // column in m at vertex v
            for (std::size_t w = 0; w < q.vertex_count(); ++w) {
                const auto& ids = alg->ids_from_to(static_cast<int>(v), static_cast<int>(w));
                for (std::size_t b = 0; b < ids.size(); ++b) {
                    Matrix<K> img = m.path_action(alg->basis_path(ids[b])) * g;
                    for (std::size_t r = 0; r < img.rows(); ++r)
                        comps[w].at(r, col_off[w] + b) = img.at(r, 0);
                }
            }
            // advance column offsets by this copy's block widths
            for (std::size_t w = 0; w < q.vertex_count(); ++w)
                col_off[w] += alg->ids_from_to(static_cast<int>(v), static_cast<int>(w)).size();
            ++copy;
        }
    }
    ModuleMap<K> onto(p, m, std::move(comps));
    for (std::size_t w = 0; w < q.vertex_count(); ++w)
        require(onto.component(static_cast<int>(w)).rank() == m.dims()[w], ErrorKind::Internal,
                "projective cover failed to surject");
    return Cover<K>{std::move(p), std::move(onto), std::move(mults)};
}

/// Minimal projective resolution, grown on demand.  Stage i holds P_i; the
/// differential d_i : P_i -> P_{i-1} exists for i >= 1, and the augmentation
/// maps P_0 onto the module.
template <class K>
class Resolution {
public:
    explicit Resolution(Module<K> m) : m_(std::move(m)) {
        Cover<K> c = projective_cover(m_);
        terms_.push_back(c.proj);
        mults_.push_back(c.mults);
        aug_ = std::make_unique<ModuleMap<K>>(c.onto);
        kernels_.push_back(kernel(c.onto));
        done_ = kernels_.back().source().is_zero();
    }

    const Module<K>& module() const { return m_; }
    const ModuleMap<K>& augmentation() const { return *aug_; }

    /// Ensure stages 0..depth exist (or the resolution has terminated).
    void extend_to(std::size_t depth) {
        while (terms_.size() <= depth && !done_) {
            const ModuleMap<K>& incl = kernels_.back();
            Cover<K> c = projective_cover(incl.source());
            diffs_.push_back(incl.after(c.onto)); // P_i -> P_{i-1}
            terms_.push_back(c.proj);
            mults_.push_back(c.mults);
            kernels_.push_back(kernel(c.onto));
            done_ = kernels_.back().source().is_zero();
        }
    }

    /// P_i, a zero module once the resolution has terminated.
    Module<K> term(std::size_t i) {
        extend_to(i);
        if (i < terms_.size()) return terms_[i];
        return Module<K>::zero(m_.algebra());
    }

    /// d_i : P_i -> P_{i-1} for i >= 1 (zero map past termination).
    ModuleMap<K> diff(std::size_t i) {
        require(i >= 1, ErrorKind::Internal, "differentials start at stage 1");
        extend_to(i);
        if (i - 1 < diffs_.size()) return diffs_[i - 1];
        return ModuleMap<K>::zero(term(i), term(i - 1));
    }

    /// Multiplicities of the vertex projectives in P_i.
    std::vector<std::size_t> multiplicities(std::size_t i) {
        extend_to(i);
        if (i < mults_.size()) return mults_[i];
        return std::vector<std::size_t>(m_.algebra()->quiver().vertex_count(), 0);
    }

    /// The i-th syzygy (kernel after stage i); available once stage i exists.
    Module<K> syzygy(std::size_t i) {
        extend_to(i);
        if (i < kernels_.size()) return kernels_[i].source();
        return Module<K>::zero(m_.algebra());
    }

    /// Projective dimension if it reveals itself within the bound.
    std::optional<std::size_t> proj_dim(std::size_t bound) {
        extend_to(bound);
        if (!done_) return std::nullopt;
        return terms_.size() - 1;
    }

    bool terminated() const { return done_; }

private:
    Module<K> m_;
    std::vector<Module<K>> terms_;
    std::vector<std::vector<std::size_t>> mults_;
    std::vector<ModuleMap<K>> diffs_;
    std::vector<ModuleMap<K>> kernels_; // inclusion of ker(stage i cover target)
    std::unique_ptr<ModuleMap<K>> aug_;
    bool done_ = false;
};

/// Ext^i(M, N) with representative cocycles P_i -> N.
template <class K>
struct ExtSpace {
    std::size_t dim = 0;
    std::vector<ModuleMap<K>> representatives;
};

/// All Ext dimensions 0..max_i in one resolution pass.
template <class K>
std::vector<std::size_t> ext_profile(const Module<K>& m, const Module<K>& n, std::size_t max_i) {
    require(m.algebra() == n.algebra(), ErrorKind::AlgebraMismatch,
            "ext of modules over different algebras");
    FieldCtx<K> ctx = m.algebra()->ctx();
    std::vector<std::size_t> out(max_i + 1, 0);
    if (m.is_zero() || n.is_zero()) return out;
    Resolution<K> res(m);
    res.extend_to(max_i + 1);

    std::vector<std::vector<ModuleMap<K>>> hom(max_i + 2);
    for (std::size_t k = 0; k <= max_i + 1; ++k) hom[k] = hom_space(res.term(k), n);

    std::vector<std::size_t> rank_delta(max_i + 1, 0); // rank of Hom(P_k,N)->Hom(P_{k+1},N)
    std::vector<std::size_t> ker_delta(max_i + 1, 0);
    for (std::size_t k = 0; k <= max_i; ++k) {
        std::vector<ModuleMap<K>> pushed;
        ModuleMap<K> d = res.diff(k + 1);
        for (const ModuleMap<K>& f : hom[k]) pushed.push_back(f.after(d));
        Matrix<K> delta = detail::coords_in(hom[k + 1], pushed, ctx);
        rank_delta[k] = delta.rank();
        ker_delta[k] = hom[k].size() - rank_delta[k];
    }
    for (std::size_t i = 0; i <= max_i; ++i)
        out[i] = ker_delta[i] - (i == 0 ? 0 : rank_delta[i - 1]);
    return out;
}

template <class K>
std::size_t ext_dim(const Module<K>& m, const Module<K>& n, std::size_t i) {
    return ext_profile(m, n, i)[i];
}

/// Ext^i with explicit representative cocycles (maps P_i -> N whose classes
/// form a basis of Ext^i).
template <class K>
ExtSpace<K> ext_space(const Module<K>& m, const Module<K>& n, std::size_t i) {
    require(m.algebra() == n.algebra(), ErrorKind::AlgebraMismatch,
            "ext of modules over different algebras");
    FieldCtx<K> ctx = m.algebra()->ctx();
    ExtSpace<K> out;
    if (m.is_zero() || n.is_zero()) return out;
    Resolution<K> res(m);
    res.extend_to(i + 1);
    std::vector<ModuleMap<K>> hom_i = hom_space(res.term(i), n);
    std::vector<ModuleMap<K>> hom_next = hom_space(res.term(i + 1), n);

    // kernel of the outgoing differential, in hom_i coordinates
    std::vector<ModuleMap<K>> pushed;
    ModuleMap<K> d_out = res.diff(i + 1);
    for (const ModuleMap<K>& f : hom_i) pushed.push_back(f.after(d_out));
    Matrix<K> delta = detail::coords_in(hom_next, pushed, ctx);
    Matrix<K> ker = delta.kernel_basis(); // columns: cocycles in hom_i coords

    // image of the incoming differential, in the same coordinates
    Matrix<K> img(hom_i.size(), 0, ctx);
    if (i >= 1) {
        std::vector<ModuleMap<K>> prev = hom_space(res.term(i - 1), n);
        std::vector<ModuleMap<K>> pushed_prev;
        ModuleMap<K> d_in = res.diff(i);
        for (const ModuleMap<K>& f : prev) pushed_prev.push_back(f.after(d_in));
        img = detail::coords_in(hom_i, pushed_prev, ctx).image_basis();
    }
    std::vector<std::size_t> chosen = complete_basis_indices(img, ker);
    out.dim = chosen.size();
    for (std::size_t c : chosen) {
        ModuleMap<K> rep = ModuleMap<K>::zero(res.term(i), n);
        for (std::size_t b = 0; b < hom_i.size(); ++b) rep = rep + hom_i[b].scaled(ker.at(b, c));
        out.representatives.push_back(std::move(rep));
    }
    return out;
}

enum class GlKind { Finite, InfiniteCertified, Undecided };

struct GlobalDimension {
    GlKind kind = GlKind::Undecided;
    std::size_t value = 0; // meaningful when Finite
    std::string witness;
};

/// Probe the global dimension: finite values are certified by terminating
/// resolutions of all simples; infinity is certified by a repeating syzygy.
template <class K>
GlobalDimension global_dimension_probe(std::shared_ptr<const PathAlgebra<K>> alg,
                                       std::size_t depth_bound = 50) {
    const Quiver& q = alg->quiver();
    GlobalDimension out;
    std::size_t best = 0;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        Module<K> s = Module<K>::simple(alg, static_cast<int>(v));
        Resolution<K> res(s);
        std::vector<Module<K>> syz;
        std::optional<std::size_t> pd;
        for (std::size_t i = 0; i <= depth_bound; ++i) {
            res.extend_to(i);
            Module<K> k = res.syzygy(i);
            if (k.is_zero()) {
                pd = i;
                break;
            }
            for (std::size_t j = 0; j < syz.size(); ++j) {
                bool repeat = false;
                try {
                    repeat = is_isomorphic(syz[j], k);
                } catch (const EngineError&) {
                    continue; // undecidable comparison: keep probing
                }
                if (repeat) {
                    out.kind = GlKind::InfiniteCertified;
                    out.witness = "syzygy of the simple at vertex " +
                                  q.vertex_name(static_cast<int>(v)) + " repeats: stage " +
                                  std::to_string(i) + " is isomorphic to stage " +
                                  std::to_string(j) + " (period " + std::to_string(i - j) + ")";
                    return out;
                }
            }
            syz.push_back(std::move(k));
        }
        if (!pd.has_value()) {
            out.kind = GlKind::Undecided;
            out.witness = "resolution of the simple at vertex " +
                          q.vertex_name(static_cast<int>(v)) + " did not terminate within " +
                          std::to_string(depth_bound) + " stages and no period was found";
            return out;
        }
        best = std::max(best, *pd);
    }
    out.kind = GlKind::Finite;
    out.value = best;
    return out;
}

/// Cartan matrix: column v is the dimension vector of the projective at v.
template <class K>
Matrix<K> cartan_matrix(std::shared_ptr<const PathAlgebra<K>> alg) {
    const Quiver& q = alg->quiver();
    std::size_t nv = q.vertex_count();
    Matrix<K> c(nv, nv, alg->ctx());
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t w = 0; w < nv; ++w)
            c.at(w, v) = alg->ctx().from_long(static_cast<long>(
                alg->ids_from_to(static_cast<int>(v), static_cast<int>(w)).size()));
    return c;
}

/// Euler pairing matrix E with <x, y> = x^T E y, when the Cartan matrix is
/// invertible (alternating sum of ext dimensions on dimension vectors).
template <class K>
std::optional<Matrix<K>> euler_pairing(std::shared_ptr<const PathAlgebra<K>> alg) {
    auto inv = cartan_matrix(alg).inverse();
    if (!inv.has_value()) return std::nullopt;
    return inv->transpose();
}

template <class K>
K euler_form(const Matrix<K>& pairing, const std::vector<std::size_t>& x,
             const std::vector<std::size_t>& y, FieldCtx<K> ctx) {
    K acc = ctx.zero();
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            acc = acc + pairing.at(i, j) * ctx.from_long(static_cast<long>(x[i])) *
                            ctx.from_long(static_cast<long>(y[j]));
    return acc;
}

} // namespace hwcat
