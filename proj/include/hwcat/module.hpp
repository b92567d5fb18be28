#pragma once

// Finite-dimensional left modules over a path algebra, presented as quiver
// representations: a vector space per vertex and a matrix per arrow (an
// arrow i -> j acts from the space at i to the space at j).  Constructors
// validate the algebra's relations on the given matrices, so every Module
// in circulation genuinely is a module.

#include "hwcat/error.hpp"
#include "hwcat/matrix.hpp"
#include "hwcat/path_algebra.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hwcat {

namespace detail {

/// Kronecker product, compatible with column-major vec():
/// vec(B F A) = (A^T kron B) vec(F).
template <class K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
    Matrix<K> r(a.rows() * b.rows(), a.cols() * b.cols(), a.ctx());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const K& x = a.at(i1, j1);
            if (x.is_zero()) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
                    K y = x * b.at(i2, j2);
                    if (!y.is_zero()) r.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = y;
                }
        }
    return r;
}

template <class K>
Matrix<K> take_rows(const Matrix<K>& m, std::size_t from, std::size_t to) {
    Matrix<K> r(to - from, m.cols(), m.ctx());
    for (std::size_t i = from; i < to; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i - from, j) = m.at(i, j);
    return r;
}

} // namespace detail

template <class K>
class Module {
public:
    using AlgPtr = typename PathAlgebra<K>::Ptr;

    /// A module from explicit data; relation matrices are verified.
    Module(AlgPtr alg, std::vector<std::size_t> dims, std::vector<Matrix<K>> arrow_acts)
        : alg_(std::move(alg)), dims_(std::move(dims)), acts_(std::move(arrow_acts)) {
        validate();
    }

    static Module zero(AlgPtr alg) {
        std::size_t nv = alg->quiver().vertex_count();
        std::vector<std::size_t> dims(nv, 0);
        std::vector<Matrix<K>> acts;
        for (std::size_t a = 0; a < alg->quiver().arrow_count(); ++a)
            acts.emplace_back(0, 0, alg->ctx());
        return Module(std::move(alg), std::move(dims), std::move(acts));
    }

    /// Simple module at a vertex: one-dimensional there, arrows act by zero.
    static Module simple(AlgPtr alg, int v) {
        const Quiver& q = alg->quiver();
        std::vector<std::size_t> dims(q.vertex_count(), 0);
        dims.at(v) = 1;
        std::vector<Matrix<K>> acts;
        for (std::size_t a = 0; a < q.arrow_count(); ++a)
            acts.emplace_back(dims[q.arrow(static_cast<int>(a)).tgt],
                              dims[q.arrow(static_cast<int>(a)).src], alg->ctx());
        return Module(std::move(alg), std::move(dims), std::move(acts));
    }

    /// Projective at a vertex: spanned by the paths starting there, arrows
    /// acting by post-composition.
    static Module projective(AlgPtr alg, int v) {
        const Quiver& q = alg->quiver();
        FieldCtx<K> ctx = alg->ctx();
        std::vector<std::size_t> dims(q.vertex_count());
        for (std::size_t w = 0; w < q.vertex_count(); ++w)
            dims[w] = alg->ids_from_to(v, static_cast<int>(w)).size();
        std::vector<Matrix<K>> acts;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(static_cast<int>(a));
            const auto& src_ids = alg->ids_from_to(v, ar.src);
            const auto& tgt_ids = alg->ids_from_to(v, ar.tgt);
            Matrix<K> m(tgt_ids.size(), src_ids.size(), ctx);
            AlgElem<K> alpha = AlgElem<K>::single(alg->arrow_id(static_cast<int>(a)), ctx.one());
            for (std::size_t c = 0; c < src_ids.size(); ++c) {
                AlgElem<K> img =
                    alg->mult(alpha, AlgElem<K>::single(src_ids[c], ctx.one()));
                for (const auto& [id, coeff] : img.terms()) {
                    std::size_t r = 0;
                    while (r < tgt_ids.size() && tgt_ids[r] != id) ++r;
                    require(r < tgt_ids.size(), ErrorKind::Internal,
                            "projective action left the expected path block");
                    m.at(r, c) = coeff;
                }
            }
            acts.push_back(std::move(m));
        }
        return Module(std::move(alg), std::move(dims), std::move(acts));
    }

    /// Injective at a vertex: dual of the paths ending there.  The space at
    /// w is spanned by duals of paths w -> v; an arrow acts by dualized
    /// pre-composition.
    static Module injective(AlgPtr alg, int v) {
        const Quiver& q = alg->quiver();
        FieldCtx<K> ctx = alg->ctx();
        std::vector<std::size_t> dims(q.vertex_count());
        for (std::size_t w = 0; w < q.vertex_count(); ++w)
            dims[w] = alg->ids_from_to(static_cast<int>(w), v).size();
        std::vector<Matrix<K>> acts;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(static_cast<int>(a));
            const auto& col_ids = alg->ids_from_to(ar.src, v); // duals at source vertex
            const auto& row_ids = alg->ids_from_to(ar.tgt, v); // duals at target vertex
            Matrix<K> m(row_ids.size(), col_ids.size(), ctx);
            AlgElem<K> alpha = AlgElem<K>::single(alg->arrow_id(static_cast<int>(a)), ctx.one());
            for (std::size_t r = 0; r < row_ids.size(); ++r) {
                AlgElem<K> prod =
                    alg->mult(AlgElem<K>::single(row_ids[r], ctx.one()), alpha);
                for (const auto& [id, coeff] : prod.terms()) {
                    for (std::size_t c = 0; c < col_ids.size(); ++c)
                        if (col_ids[c] == id) m.at(r, c) = coeff;
                }
            }
            acts.push_back(std::move(m));
        }
        return Module(std::move(alg), std::move(dims), std::move(acts));
    }

    static Module direct_sum(const std::vector<Module>& parts, AlgPtr alg_if_empty = nullptr) {
        require(!parts.empty() || alg_if_empty != nullptr, ErrorKind::Internal,
                "direct sum of nothing needs an algebra");
        if (parts.empty()) return zero(alg_if_empty);
        AlgPtr alg = parts.front().alg_;
        const Quiver& q = alg->quiver();
        for (const Module& p : parts)
            require(p.alg_ == alg, ErrorKind::AlgebraMismatch,
                    "direct sum of modules over different algebras");
        std::vector<std::size_t> dims(q.vertex_count(), 0);
        for (const Module& p : parts)
            for (std::size_t w = 0; w < q.vertex_count(); ++w) dims[w] += p.dims_[w];
        std::vector<Matrix<K>> acts;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(static_cast<int>(a));
            Matrix<K> m(dims[ar.tgt], dims[ar.src], alg->ctx());
            std::size_t roff = 0, coff = 0;
            for (const Module& p : parts) {
                const Matrix<K>& b = p.acts_[a];
                for (std::size_t i = 0; i < b.rows(); ++i)
                    for (std::size_t j = 0; j < b.cols(); ++j) m.at(roff + i, coff + j) = b.at(i, j);
                roff += p.dims_[ar.tgt];
                coff += p.dims_[ar.src];
            }
            acts.push_back(std::move(m));
        }
        return Module(alg, std::move(dims), std::move(acts));
    }

    const AlgPtr& algebra() const { return alg_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim_at(int v) const { return dims_.at(v); }
    std::size_t total_dim() const {
        std::size_t t = 0;
        for (std::size_t d : dims_) t += d;
        return t;
    }
    bool is_zero() const { return total_dim() == 0; }

    /// Offset of the vertex block inside the flattened total space.
    std::size_t offset(int v) const {
        std::size_t o = 0;
        for (int w = 0; w < v; ++w) o += dims_[w];
        return o;
    }

    const Matrix<K>& arrow_action(int a) const { return acts_.at(a); }

    /// Action of a path (arrows applied first-to-last).
    Matrix<K> path_action(const Path& p) const {
        Matrix<K> acc = Matrix<K>::identity(dims_.at(p.src), alg_->ctx());
        for (int a : p.arrows) acc = acts_.at(a) * acc;
        return acc;
    }

    bool operator==(const Module& o) const {
        return alg_ == o.alg_ && dims_ == o.dims_ && acts_ == o.acts_;
    }
    bool operator!=(const Module& o) const { return !(*this == o); }

    std::string describe() const {
        std::string s = "[";
        for (std::size_t v = 0; v < dims_.size(); ++v) {
            if (v) s += ",";
            s += std::to_string(dims_[v]);
        }
        return s + "]";
    }

private:
    void validate() const {
        const Quiver& q = alg_->quiver();
        require(dims_.size() == q.vertex_count(), ErrorKind::DimensionMismatch,
                "module has " + std::to_string(dims_.size()) + " vertex spaces, quiver has " +
                    std::to_string(q.vertex_count()));
        require(acts_.size() == q.arrow_count(), ErrorKind::DimensionMismatch,
                "module provides " + std::to_string(acts_.size()) + " arrow actions, quiver has " +
                    std::to_string(q.arrow_count()));
        for (std::size_t a = 0; a < acts_.size(); ++a) {
            const Arrow& ar = q.arrow(static_cast<int>(a));
            require(acts_[a].rows() == dims_[ar.tgt] && acts_[a].cols() == dims_[ar.src],
                    ErrorKind::DimensionMismatch,
                    "action of arrow " + ar.name + " has the wrong shape");
        }
        for (const Relation<K>& rel : alg_->relations()) {
            const Path& p0 = rel.terms.front().second;
            Matrix<K> sum(dims_[p0.tgt], dims_[p0.src], alg_->ctx());
            for (const auto& [c, p] : rel.terms) sum = sum + path_action(p).scaled(c);
            require(sum.is_zero(), ErrorKind::RelationViolated,
                    "arrow matrices violate the relation through " + p0.spell(q));
        }
    }

    AlgPtr alg_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix<K>> acts_; // per arrow: dims[tgt] x dims[src]
};

/// A homomorphism of modules: one matrix per vertex, commuting with all
/// arrow actions (verified at construction).
template <class K>
class ModuleMap {
public:
    ModuleMap(Module<K> source, Module<K> target, std::vector<Matrix<K>> comps)
        : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {
        validate();
    }

    static ModuleMap zero(const Module<K>& m, const Module<K>& n) {
        std::vector<Matrix<K>> comps;
        for (std::size_t v = 0; v < m.dims().size(); ++v)
            comps.emplace_back(n.dims()[v], m.dims()[v], m.algebra()->ctx());
        return ModuleMap(m, n, std::move(comps));
    }

    static ModuleMap identity(const Module<K>& m) {
        std::vector<Matrix<K>> comps;
        for (std::size_t v = 0; v < m.dims().size(); ++v)
            comps.push_back(Matrix<K>::identity(m.dims()[v], m.algebra()->ctx()));
        return ModuleMap(m, m, std::move(comps));
    }

    const Module<K>& source() const { return source_; }
    const Module<K>& target() const { return target_; }
    const Matrix<K>& component(int v) const { return comps_.at(v); }
    const std::vector<Matrix<K>>& components() const { return comps_; }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool is_iso() const {
        for (const auto& c : comps_)
            if (c.rows() != c.cols() || !c.invertible()) return false;
        return true;
    }

    std::size_t rank() const {
        std::size_t r = 0;
        for (const auto& c : comps_) r += c.rank();
        return r;
    }

    ModuleMap operator+(const ModuleMap& o) const {
        check_parallel(o);
        std::vector<Matrix<K>> comps;
        for (std::size_t v = 0; v < comps_.size(); ++v) comps.push_back(comps_[v] + o.comps_[v]);
        return ModuleMap(source_, target_, std::move(comps));
    }

    ModuleMap operator-(const ModuleMap& o) const {
        check_parallel(o);
        std::vector<Matrix<K>> comps;
        for (std::size_t v = 0; v < comps_.size(); ++v) comps.push_back(comps_[v] - o.comps_[v]);
        return ModuleMap(source_, target_, std::move(comps));
    }

    ModuleMap scaled(const K& c) const {
        std::vector<Matrix<K>> comps;
        for (const auto& m : comps_) comps.push_back(m.scaled(c));
        return ModuleMap(source_, target_, std::move(comps));
    }

    /// this after other.
    ModuleMap after(const ModuleMap& other) const {
        require(other.target_ == source_, ErrorKind::DimensionMismatch,
                "composition of non-composable module maps");
        std::vector<Matrix<K>> comps;
        for (std::size_t v = 0; v < comps_.size(); ++v) comps.push_back(comps_[v] * other.comps_[v]);
        return ModuleMap(other.source_, target_, std::move(comps));
    }

    bool operator==(const ModuleMap& o) const {
        return source_ == o.source_ && target_ == o.target_ && comps_ == o.comps_;
    }
    bool operator!=(const ModuleMap& o) const { return !(*this == o); }

private:
    void check_parallel(const ModuleMap& o) const {
        require(source_ == o.source_ && target_ == o.target_, ErrorKind::DimensionMismatch,
                "module maps are not parallel");
    }

    void validate() const {
        require(source_.algebra() == target_.algebra(), ErrorKind::AlgebraMismatch,
                "module map between modules over different algebras");
        const Quiver& q = source_.algebra()->quiver();
        require(comps_.size() == q.vertex_count(), ErrorKind::DimensionMismatch,
                "module map needs one matrix per vertex");
        for (std::size_t v = 0; v < comps_.size(); ++v)
            require(comps_[v].rows() == target_.dims()[v] && comps_[v].cols() == source_.dims()[v],
                    ErrorKind::DimensionMismatch,
                    "component at vertex " + q.vertex_name(static_cast<int>(v)) +
                        " has the wrong shape");
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(static_cast<int>(a));
            Matrix<K> lhs = comps_[ar.tgt] * source_.arrow_action(static_cast<int>(a));
            Matrix<K> rhs = target_.arrow_action(static_cast<int>(a)) * comps_[ar.src];
            require(lhs == rhs, ErrorKind::NotAModuleMap,
                    "matrices do not commute with arrow " + ar.name);
        }
    }

    Module<K> source_;
    Module<K> target_;
    std::vector<Matrix<K>> comps_;
};

/// Basis of the homomorphism space Hom(M, N), in a deterministic order.
template <class K>
std::vector<ModuleMap<K>> hom_space(const Module<K>& m, const Module<K>& n) {
    require(m.algebra() == n.algebra(), ErrorKind::AlgebraMismatch,
            "hom space of modules over different algebras");
    const Quiver& q = m.algebra()->quiver();
    FieldCtx<K> ctx = m.algebra()->ctx();

    std::size_t nv = q.vertex_count();
    std::vector<std::size_t> block(nv), off(nv);
    std::size_t total = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        block[v] = n.dims()[v] * m.dims()[v];
        off[v] = total;
        total += block[v];
    }

    std::size_t crow = 0;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(static_cast<int>(a));
        crow += n.dims()[ar.tgt] * m.dims()[ar.src];
    }

    Matrix<K> sys(crow, total, ctx);
    std::size_t r0 = 0;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(static_cast<int>(a));
        std::size_t i = ar.src, j = ar.tgt;
        // f_j * M_alpha - N_alpha * f_i = 0
        Matrix<K> lhs = detail::kron(m.arrow_action(static_cast<int>(a)).transpose(),
                                     Matrix<K>::identity(n.dims()[j], ctx));
        Matrix<K> rhs = detail::kron(Matrix<K>::identity(m.dims()[i], ctx),
                                     n.arrow_action(static_cast<int>(a)));
        for (std::size_t r = 0; r < lhs.rows(); ++r) {
            for (std::size_t c = 0; c < lhs.cols(); ++c)
                if (!lhs.at(r, c).is_zero()) sys.at(r0 + r, off[j] + c) = lhs.at(r, c);
            for (std::size_t c = 0; c < rhs.cols(); ++c)
                if (!rhs.at(r, c).is_zero())
                    sys.at(r0 + r, off[i] + c) = sys.at(r0 + r, off[i] + c) - rhs.at(r, c);
        }
        r0 += lhs.rows();
    }

    Matrix<K> basis = sys.kernel_basis();
    std::vector<ModuleMap<K>> maps;
    for (std::size_t col = 0; col < basis.cols(); ++col) {
        std::vector<Matrix<K>> comps;
        for (std::size_t v = 0; v < nv; ++v) {
            Matrix<K> f(n.dims()[v], m.dims()[v], ctx);
            for (std::size_t jj = 0; jj < m.dims()[v]; ++jj)
                for (std::size_t ii = 0; ii < n.dims()[v]; ++ii)
                    f.at(ii, jj) = basis.at(off[v] + jj * n.dims()[v] + ii, col);
            comps.push_back(std::move(f));
        }
        maps.emplace_back(m, n, std::move(comps));
    }
    return maps;
}

/// Kernel of a map, returned as the inclusion of a fresh module.
template <class K>
ModuleMap<K> kernel(const ModuleMap<K>& f) {
    const Module<K>& m = f.source();
    const Quiver& q = m.algebra()->quiver();
    std::vector<Matrix<K>> bases;
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        bases.push_back(f.component(static_cast<int>(v)).kernel_basis());
        dims.push_back(bases.back().cols());
    }
    std::vector<Matrix<K>> acts;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(static_cast<int>(a));
        Matrix<K> img = m.arrow_action(static_cast<int>(a)) * bases[ar.src];
        auto coords = bases[ar.tgt].solve(img);
        require(coords.has_value(), ErrorKind::Internal,
                "kernel is not closed under arrow " + ar.name);
        acts.push_back(std::move(*coords));
    }
    Module<K> sub(m.algebra(), std::move(dims), std::move(acts));
    return ModuleMap<K>(std::move(sub), m, std::move(bases));
}

/// Image of a map: the inclusion into the target and the projection from
/// the source, with incl . proj == f.
template <class K>
struct ImagePair {
    ModuleMap<K> incl;
    ModuleMap<K> proj;
};

template <class K>
ImagePair<K> image(const ModuleMap<K>& f) {
    const Module<K>& m = f.source();
    const Module<K>& n = f.target();
    const Quiver& q = m.algebra()->quiver();
    std::vector<Matrix<K>> bases;
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        bases.push_back(f.component(static_cast<int>(v)).image_basis());
        dims.push_back(bases.back().cols());
    }
    std::vector<Matrix<K>> acts;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(static_cast<int>(a));
        Matrix<K> img = n.arrow_action(static_cast<int>(a)) * bases[ar.src];
        auto coords = bases[ar.tgt].solve(img);
        require(coords.has_value(), ErrorKind::Internal,
                "image is not closed under arrow " + ar.name);
        acts.push_back(std::move(*coords));
    }
    Module<K> im(m.algebra(), std::move(dims), std::move(acts));
    std::vector<Matrix<K>> projs;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        auto coords = bases[v].solve(f.component(static_cast<int>(v)));
        require(coords.has_value(), ErrorKind::Internal, "image factorization failed");
        projs.push_back(std::move(*coords));
    }
    return ImagePair<K>{ModuleMap<K>(im, n, std::move(bases)),
                        ModuleMap<K>(m, im, std::move(projs))};
}

/// Cokernel of a map, returned as the projection onto a fresh module.
template <class K>
ModuleMap<K> cokernel(const ModuleMap<K>& f) {
    const Module<K>& n = f.target();
    const Quiver& q = n.algebra()->quiver();
    FieldCtx<K> ctx = n.algebra()->ctx();
    std::vector<Matrix<K>> pis;       // projections N_v -> Q_v
    std::vector<Matrix<K>> sections;  // chosen representatives Q_v -> N_v
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        Matrix<K> c = f.component(static_cast<int>(v)).image_basis();
        Matrix<K> id = Matrix<K>::identity(n.dims()[v], ctx);
        std::vector<std::size_t> extend = complete_basis_indices(c, id);
        Matrix<K> e = id.take_cols(extend);
        Matrix<K> t = c.hstack(e);
        auto tinv = t.inverse();
        require(tinv.has_value(), ErrorKind::Internal, "cokernel basis completion failed");
        pis.push_back(detail::take_rows(*tinv, c.cols(), n.dims()[v]));
        sections.push_back(std::move(e));
        dims.push_back(extend.size());
    }
    std::vector<Matrix<K>> acts;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(static_cast<int>(a));
        acts.push_back(pis[ar.tgt] * n.arrow_action(static_cast<int>(a)) * sections[ar.src]);
    }
    Module<K> quo(n.algebra(), std::move(dims), std::move(acts));
    return ModuleMap<K>(n, std::move(quo), std::move(pis));
}

/// Radical (arrow-generated submodule), as an inclusion.
template <class K>
ModuleMap<K> radical(const Module<K>& m) {
    const Quiver& q = m.algebra()->quiver();
    FieldCtx<K> ctx = m.algebra()->ctx();
    std::vector<Matrix<K>> bases;
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        Matrix<K> span(m.dims()[v], 0, ctx);
        for (std::size_t a = 0; a < q.arrow_count(); ++a)
            if (q.arrow(static_cast<int>(a)).tgt == static_cast<int>(v))
                span = span.hstack(m.arrow_action(static_cast<int>(a)));
        bases.push_back(span.image_basis());
        dims.push_back(bases.back().cols());
    }
    std::vector<Matrix<K>> acts;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(static_cast<int>(a));
        Matrix<K> img = m.arrow_action(static_cast<int>(a)) * bases[ar.src];
        auto coords = bases[ar.tgt].solve(img);
        require(coords.has_value(), ErrorKind::Internal,
                "radical is not closed under arrow " + ar.name);
        acts.push_back(std::move(*coords));
    }
    Module<K> sub(m.algebra(), std::move(dims), std::move(acts));
    return ModuleMap<K>(std::move(sub), m, std::move(bases));
}

/// Head of a module: the projection onto m / rad m.
template <class K>
ModuleMap<K> top(const Module<K>& m) { return cokernel(radical(m)); }

/// Socle (annihilated by every arrow), as an inclusion.
template <class K>
ModuleMap<K> socle(const Module<K>& m) {
    const Quiver& q = m.algebra()->quiver();
    FieldCtx<K> ctx = m.algebra()->ctx();
    std::vector<Matrix<K>> bases;
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        Matrix<K> stack(0, m.dims()[v], ctx);
        for (std::size_t a = 0; a < q.arrow_count(); ++a)
            if (q.arrow(static_cast<int>(a)).src == static_cast<int>(v))
                stack = stack.vstack(m.arrow_action(static_cast<int>(a)));
        bases.push_back(stack.kernel_basis());
        dims.push_back(bases.back().cols());
    }
    std::vector<Matrix<K>> acts;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(static_cast<int>(a));
        acts.emplace_back(dims[ar.tgt], dims[ar.src], ctx); // arrows kill the socle
    }
    Module<K> sub(m.algebra(), std::move(dims), std::move(acts));
    return ModuleMap<K>(std::move(sub), m, std::move(bases));
}

/// Standard duality into the opposite algebra: spaces dualize in place,
/// arrow matrices transpose.  `op` must be algebra->opposite().
template <class K>
Module<K> dual_module(const Module<K>& m, typename PathAlgebra<K>::Ptr op) {
    const Quiver& q = m.algebra()->quiver();
    const Quiver& qop = op->quiver();
    require(q.vertex_count() == qop.vertex_count() && q.arrow_count() == qop.arrow_count(),
            ErrorKind::AlgebraMismatch, "dual_module target is not the opposite algebra");
    std::vector<std::size_t> dims(q.vertex_count());
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
        dims[qop.vertex_index(q.vertex_name(static_cast<int>(v)))] = m.dims()[v];
    std::vector<Matrix<K>> acts(q.arrow_count(), Matrix<K>(0, 0, m.algebra()->ctx()));
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        int aop = qop.arrow_index(q.arrow(static_cast<int>(a)).name);
        acts[aop] = m.arrow_action(static_cast<int>(a)).transpose();
    }
    return Module<K>(op, std::move(dims), std::move(acts));
}

} // namespace hwcat
