#pragma once

// Bounded complexes of projective modules presented by block matrices with
// entries in the algebra: shifts, sums, cones, minimization by cancelling
// locally invertible entries, Hom complexes with representative cocycles,
// module-valued cohomology, and the Nakayama image.

#include "hwcat/error.hpp"
#include "hwcat/module.hpp"
#include "hwcat/path_algebra.hpp"
#include "hwcat/resolution.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hwcat {

namespace detail {

template <class K>
K coeff_of(const AlgElem<K>& e, int index, FieldCtx<K> ctx) {
    for (const auto& [i, c] : e.terms())
        if (i == index) return c;
    return ctx.zero();
}

template <class K>
AlgElem<K> neg_elem(const AlgElem<K>& e) {
    return AlgElem<K>{} - e;
}

/// Inverse of an element of e_u A e_u (a local ring: invertible exactly when
/// the coefficient of the trivial path is nonzero).
template <class K>
std::optional<AlgElem<K>> local_inverse(const typename PathAlgebra<K>::Ptr& alg, int u,
                                        const AlgElem<K>& g) {
    FieldCtx<K> ctx = alg->ctx();
    int e_id = alg->trivial_id(u);
    K c = coeff_of(g, e_id, ctx);
    if (c.is_zero()) return std::nullopt;
    AlgElem<K> unit = AlgElem<K>::single(e_id, ctx.one());
    AlgElem<K> nil = unit - g.scaled(c.inv()); // nilpotent part
    AlgElem<K> acc = unit;
    AlgElem<K> pw = nil;
    std::size_t guard = alg->dim() + 1;
    while (!pw.is_zero()) {
        require(guard-- > 0, ErrorKind::Internal, "geometric series failed to terminate");
        acc = acc + pw;
        pw = alg->mult(pw, nil);
    }
    AlgElem<K> inv = acc.scaled(c.inv());
    require(alg->mult(g, inv) == unit && alg->mult(inv, g) == unit, ErrorKind::Internal,
            "local inverse check failed");
    return inv;
}

inline std::size_t pos_in(const std::vector<int>& ids, int id) {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return i;
    fail(ErrorKind::Internal, "basis id not found in block");
}

} // namespace detail

/// Block matrix presenting a map between direct sums of vertex projectives.
/// The (i, j) entry represents a map P_{src[j]} -> P_{tgt[i]} and is stored as
/// an algebra element supported on paths from tgt[i] to src[j]; composition of
/// maps multiplies representatives in application order.
template <class K>
class AMat {
public:
    using AlgPtr = typename PathAlgebra<K>::Ptr;

    AMat(AlgPtr alg, std::vector<int> tgt, std::vector<int> src)
        : alg_(std::move(alg)), tgt_(std::move(tgt)), src_(std::move(src)),
          ents_(tgt_.size() * src_.size()) {}

    static AMat identity_on(AlgPtr alg, const std::vector<int>& verts) {
        AMat m(alg, verts, verts);
        for (std::size_t i = 0; i < verts.size(); ++i)
            m.at(i, i) = AlgElem<K>::single(alg->trivial_id(verts[i]), alg->ctx().one());
        return m;
    }

    std::size_t rows() const { return tgt_.size(); }
    std::size_t cols() const { return src_.size(); }
    const std::vector<int>& tgt_verts() const { return tgt_; }
    const std::vector<int>& src_verts() const { return src_; }
    const AlgPtr& algebra() const { return alg_; }

    AlgElem<K>& at(std::size_t i, std::size_t j) { return ents_[i * src_.size() + j]; }
    const AlgElem<K>& at(std::size_t i, std::size_t j) const {
        return ents_[i * src_.size() + j];
    }

    bool is_zero() const {
        for (const auto& e : ents_)
            if (!e.is_zero()) return false;
        return true;
    }

    bool operator==(const AMat& o) const {
        return tgt_ == o.tgt_ && src_ == o.src_ && ents_ == o.ents_;
    }

    /// Composition this∘first.
    AMat after(const AMat& first) const {
        require(alg_ == first.alg_, ErrorKind::AlgebraMismatch, "block matrices over different algebras");
        require(src_ == first.tgt_, ErrorKind::DimensionMismatch,
                "block matrix composition shape mismatch");
        AMat out(alg_, tgt_, first.src_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t k = 0; k < first.cols(); ++k) {
                AlgElem<K> acc;
                for (std::size_t j = 0; j < cols(); ++j)
                    acc = acc + alg_->mult(first.at(j, k), at(i, j));
                out.at(i, k) = std::move(acc);
            }
        return out;
    }

    AMat operator+(const AMat& o) const {
        require(tgt_ == o.tgt_ && src_ == o.src_, ErrorKind::DimensionMismatch,
                "block matrix addition shape mismatch");
        AMat out(alg_, tgt_, src_);
        for (std::size_t k = 0; k < ents_.size(); ++k) out.ents_[k] = ents_[k] + o.ents_[k];
        return out;
    }

    AMat operator-(const AMat& o) const { return *this + o.negated(); }

    AMat negated() const {
        AMat out(alg_, tgt_, src_);
        for (std::size_t k = 0; k < ents_.size(); ++k) out.ents_[k] = detail::neg_elem(ents_[k]);
        return out;
    }

    AMat scaled(const K& c) const {
        AMat out(alg_, tgt_, src_);
        for (std::size_t k = 0; k < ents_.size(); ++k) out.ents_[k] = ents_[k].scaled(c);
        return out;
    }

    AMat hstack(const AMat& o) const {
        require(tgt_ == o.tgt_, ErrorKind::DimensionMismatch, "hstack target mismatch");
        std::vector<int> src = src_;
        src.insert(src.end(), o.src_.begin(), o.src_.end());
        AMat out(alg_, tgt_, src);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) out.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols(); ++j) out.at(i, cols() + j) = o.at(i, j);
        }
        return out;
    }

    AMat vstack(const AMat& o) const {
        require(src_ == o.src_, ErrorKind::DimensionMismatch, "vstack source mismatch");
        std::vector<int> tgt = tgt_;
        tgt.insert(tgt.end(), o.tgt_.begin(), o.tgt_.end());
        AMat out(alg_, tgt, src_);
        for (std::size_t j = 0; j < cols(); ++j) {
            for (std::size_t i = 0; i < rows(); ++i) out.at(i, j) = at(i, j);
            for (std::size_t i = 0; i < o.rows(); ++i) out.at(rows() + i, j) = o.at(i, j);
        }
        return out;
    }

    /// Submatrix keeping the listed target and source parts, in order.
    AMat take_parts(const std::vector<std::size_t>& keep_tgt,
                    const std::vector<std::size_t>& keep_src) const {
        std::vector<int> t, s;
        for (std::size_t i : keep_tgt) t.push_back(tgt_[i]);
        for (std::size_t j : keep_src) s.push_back(src_[j]);
        AMat out(alg_, t, s);
        for (std::size_t i = 0; i < keep_tgt.size(); ++i)
            for (std::size_t j = 0; j < keep_src.size(); ++j)
                out.at(i, j) = at(keep_tgt[i], keep_src[j]);
        return out;
    }

    /// Every entry must be supported on paths from its target vertex to its
    /// source vertex.
    void validate() const {
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                for (const auto& [id, c] : at(i, j).terms()) {
                    (void)c;
                    const Path& p = alg_->basis_path(id);
                    require(p.src == tgt_[i] && p.tgt == src_[j], ErrorKind::DimensionMismatch,
                            "block entry not parallel to its slot");
                }
    }

private:
    AlgPtr alg_;
    std::vector<int> tgt_, src_;
    std::vector<AlgElem<K>> ents_;
};

/// The direct sum of vertex projectives named by a list of vertices.
template <class K>
Module<K> realize_sum(typename PathAlgebra<K>::Ptr alg, const std::vector<int>& verts) {
    std::vector<Module<K>> parts;
    for (int v : verts) parts.push_back(Module<K>::projective(alg, v));
    return Module<K>::direct_sum(parts, alg);
}

/// The module map a block matrix presents.
template <class K>
ModuleMap<K> realize_map(const AMat<K>& f) {
    auto alg = f.algebra();
    const Quiver& q = alg->quiver();
    FieldCtx<K> ctx = alg->ctx();
    Module<K> src = realize_sum<K>(alg, f.src_verts());
    Module<K> tgt = realize_sum<K>(alg, f.tgt_verts());
    std::vector<Matrix<K>> comps;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        Matrix<K> m(tgt.dims()[v], src.dims()[v], ctx);
        std::size_t col_off = 0;
        for (std::size_t j = 0; j < f.cols(); ++j) {
            const auto& col_ids = alg->ids_from_to(f.src_verts()[j], static_cast<int>(v));
            std::size_t row_off = 0;
            for (std::size_t i = 0; i < f.rows(); ++i) {
                const auto& row_ids = alg->ids_from_to(f.tgt_verts()[i], static_cast<int>(v));
                const AlgElem<K>& entry = f.at(i, j);
                if (!entry.is_zero()) {
                    for (std::size_t b = 0; b < col_ids.size(); ++b) {
                        AlgElem<K> img =
                            alg->mult(AlgElem<K>::single(col_ids[b], ctx.one()), entry);
                        for (const auto& [id, c] : img.terms())
                            m.at(row_off + detail::pos_in(row_ids, id), col_off + b) =
                                m.at(row_off + detail::pos_in(row_ids, id), col_off + b) + c;
                    }
                }
                row_off += row_ids.size();
            }
            col_off += col_ids.size();
        }
        comps.push_back(std::move(m));
    }
    return ModuleMap<K>(src, tgt, std::move(comps));
}

/// Recover the block matrix of a module map between realized sums.
template <class K>
AMat<K> amat_from_module_map(const ModuleMap<K>& f, const std::vector<int>& tgt_verts,
                             const std::vector<int>& src_verts) {
    auto alg = f.source().algebra();
    require(f.source() == realize_sum<K>(alg, src_verts) &&
                f.target() == realize_sum<K>(alg, tgt_verts),
            ErrorKind::DimensionMismatch, "map does not match the stated projective sums");
    AMat<K> out(alg, tgt_verts, src_verts);
    for (std::size_t j = 0; j < src_verts.size(); ++j) {
        int u = src_verts[j];
        const auto& gen_ids = alg->ids_from_to(u, u);
        // column of the generator (trivial path) of part j at vertex u
        std::size_t col = 0;
        for (std::size_t j2 = 0; j2 < j; ++j2)
            col += alg->ids_from_to(src_verts[j2], u).size();
        col += detail::pos_in(gen_ids, alg->trivial_id(u));
        const Matrix<K>& comp = f.component(u);
        std::size_t row_off = 0;
        for (std::size_t i = 0; i < tgt_verts.size(); ++i) {
            const auto& row_ids = alg->ids_from_to(tgt_verts[i], u);
            AlgElem<K> acc;
            for (std::size_t r = 0; r < row_ids.size(); ++r)
                acc = acc + AlgElem<K>::single(row_ids[r], comp.at(row_off + r, col));
            out.at(i, j) = std::move(acc);
            row_off += row_ids.size();
        }
    }
    require(realize_map(out) == f, ErrorKind::Internal, "block matrix reconstruction failed");
    return out;
}

/// Cohomology ker(d_out)/im(d_in) of a three-term module chain.
template <class K>
Module<K> chain_cohomology(const ModuleMap<K>& d_in, const ModuleMap<K>& d_out) {
    require(d_in.target() == d_out.source(), ErrorKind::DimensionMismatch,
            "chain maps do not meet in the middle");
    require(d_out.after(d_in).is_zero(), ErrorKind::DimensionMismatch,
            "not a complex: consecutive maps do not compose to zero");
    ModuleMap<K> incl = kernel(d_out);
    std::vector<Matrix<K>> comps;
    const Quiver& q = d_in.source().algebra()->quiver();
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        auto x = incl.component(static_cast<int>(v)).solve(d_in.component(static_cast<int>(v)));
        require(x.has_value(), ErrorKind::Internal, "image not inside the kernel");
        comps.push_back(std::move(*x));
    }
    ModuleMap<K> g(d_in.source(), incl.source(), std::move(comps));
    return cokernel(g).target();
}

/// Bounded complex of projective modules; the differential raises degree.
template <class K>
class ProjComplex {
public:
    using AlgPtr = typename PathAlgebra<K>::Ptr;

    explicit ProjComplex(AlgPtr alg) : alg_(std::move(alg)) {}

    ProjComplex(AlgPtr alg, std::map<int, std::vector<int>> terms, std::map<int, AMat<K>> diffs)
        : alg_(std::move(alg)), terms_(std::move(terms)), diffs_(std::move(diffs)) {
        normalize();
        validate();
    }

    static ProjComplex stalk(AlgPtr alg, std::vector<int> verts, int degree = 0) {
        ProjComplex x(alg);
        if (!verts.empty()) x.terms_[degree] = std::move(verts);
        return x;
    }

    const AlgPtr& algebra() const { return alg_; }
    bool is_zero() const { return terms_.empty(); }
    int low() const {
        require(!is_zero(), ErrorKind::DimensionMismatch, "zero complex has no degree range");
        return terms_.begin()->first;
    }
    int high() const {
        require(!is_zero(), ErrorKind::DimensionMismatch, "zero complex has no degree range");
        return terms_.rbegin()->first;
    }

    std::vector<int> term_verts(int n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? std::vector<int>{} : it->second;
    }

    /// The differential out of degree n (zero-shaped when absent).
    AMat<K> diff(int n) const {
        auto it = diffs_.find(n);
        if (it != diffs_.end()) return it->second;
        return AMat<K>(alg_, term_verts(n + 1), term_verts(n));
    }

    std::size_t total_parts() const {
        std::size_t t = 0;
        for (const auto& [n, v] : terms_) t += v.size();
        return t;
    }

    bool concentrated_at(int n) const {
        return !is_zero() && low() == n && high() == n;
    }

    /// Structural equality: same terms and the same differentials (absent and
    /// explicitly-zero differentials compare equal).
    bool operator==(const ProjComplex& o) const {
        if (alg_ != o.alg_ || terms_ != o.terms_) return false;
        if (is_zero()) return true;
        for (int n = low(); n < high(); ++n)
            if (!(diff(n) == o.diff(n))) return false;
        return true;
    }
    bool operator!=(const ProjComplex& o) const { return !(*this == o); }

    ProjComplex shift(int k) const {
        ProjComplex out(alg_);
        for (const auto& [n, v] : terms_) out.terms_[n - k] = v;
        for (const auto& [n, d] : diffs_) {
            out.diffs_.emplace(n - k, (k % 2 == 0) ? d : d.negated());
        }
        return out;
    }

    ProjComplex sum(const ProjComplex& o) const {
        require(alg_ == o.alg_, ErrorKind::AlgebraMismatch, "sum of complexes over different algebras");
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        std::map<int, std::vector<int>> terms;
        std::map<int, AMat<K>> diffs;
        int lo = std::min(low(), o.low());
        int hi = std::max(high(), o.high());
        for (int n = lo; n <= hi; ++n) {
            std::vector<int> v = term_verts(n);
            std::vector<int> w = o.term_verts(n);
            v.insert(v.end(), w.begin(), w.end());
            if (!v.empty()) terms[n] = std::move(v);
        }
        for (int n = lo; n < hi; ++n) {
            AMat<K> a = diff(n);
            AMat<K> b = o.diff(n);
            // block diagonal
            AMat<K> top = a.hstack(AMat<K>(alg_, a.tgt_verts(), b.src_verts()));
            AMat<K> bot = AMat<K>(alg_, b.tgt_verts(), a.src_verts()).hstack(b);
            diffs.emplace(n, top.vstack(bot));
        }
        return ProjComplex(alg_, std::move(terms), std::move(diffs));
    }

    /// Strip contractible summands until no differential entry is locally
    /// invertible; preserves the quasi-isomorphism type.
    ProjComplex minimize() const {
        if (is_zero()) return *this;
        int lo = low(), hi = high();
        std::map<int, std::vector<int>> verts;
        std::map<int, AMat<K>> d;
        for (int n = lo; n <= hi; ++n) verts[n] = term_verts(n);
        for (int n = lo; n < hi; ++n) d.emplace(n, diff(n));
        bool changed = true;
        while (changed) {
            changed = false;
            for (int n = lo; n < hi && !changed; ++n) {
                AMat<K>& dn = d.at(n);
                for (std::size_t i = 0; i < dn.rows() && !changed; ++i) {
                    for (std::size_t j = 0; j < dn.cols() && !changed; ++j) {
                        if (dn.src_verts()[j] != dn.tgt_verts()[i]) continue;
                        auto ainv =
                            detail::local_inverse<K>(alg_, dn.src_verts()[j], dn.at(i, j));
                        if (!ainv.has_value()) continue;
                        // cancel source part j against target part i
                        std::vector<std::size_t> keep_r, keep_c;
                        for (std::size_t r = 0; r < dn.rows(); ++r)
                            if (r != i) keep_r.push_back(r);
                        for (std::size_t c = 0; c < dn.cols(); ++c)
                            if (c != j) keep_c.push_back(c);
                        AMat<K> nd = dn.take_parts(keep_r, keep_c);
                        for (std::size_t r = 0; r < keep_r.size(); ++r)
                            for (std::size_t c = 0; c < keep_c.size(); ++c)
                                nd.at(r, c) =
                                    nd.at(r, c) -
                                    alg_->mult(alg_->mult(dn.at(i, keep_c[c]), *ainv),
                                               dn.at(keep_r[r], j));
                        if (d.count(n - 1)) {
                            std::vector<std::size_t> all_c;
                            for (std::size_t c = 0; c < d.at(n - 1).cols(); ++c)
                                all_c.push_back(c);
                            d.at(n - 1) = d.at(n - 1).take_parts(keep_c, all_c);
                        }
                        if (d.count(n + 1)) {
                            std::vector<std::size_t> all_r;
                            for (std::size_t r = 0; r < d.at(n + 1).rows(); ++r)
                                all_r.push_back(r);
                            d.at(n + 1) = d.at(n + 1).take_parts(all_r, keep_r);
                        }
                        verts.at(n).erase(verts.at(n).begin() + static_cast<long>(j));
                        verts.at(n + 1).erase(verts.at(n + 1).begin() + static_cast<long>(i));
                        d.at(n) = std::move(nd);
                        changed = true;
                    }
                }
            }
        }
        return ProjComplex(alg_, std::move(verts), std::move(d));
    }

    /// The n-th cohomology module.
    Module<K> cohomology(int n) const {
        return chain_cohomology(realize_map(diff(n - 1)), realize_map(diff(n)));
    }

    std::string describe() const {
        if (is_zero()) return "0";
        std::string out;
        const Quiver& q = alg_->quiver();
        for (const auto& [n, v] : terms_) {
            if (!out.empty()) out += "  ";
            out += "[" + std::to_string(n) + "]";
            for (std::size_t k = 0; k < v.size(); ++k)
                out += (k == 0 ? " P(" : "+P(") + q.vertex_name(v[k]) + ")";
        }
        return out;
    }

private:
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.empty())
                it = terms_.erase(it);
            else
                ++it;
        }
        for (auto it = diffs_.begin(); it != diffs_.end();) {
            if (!terms_.count(it->first) || !terms_.count(it->first + 1))
                it = diffs_.erase(it);
            else
                ++it;
        }
    }

    void validate() const {
        for (const auto& [n, d] : diffs_) {
            require(d.algebra() == alg_, ErrorKind::AlgebraMismatch,
                    "differential over the wrong algebra");
            require(d.src_verts() == term_verts(n) && d.tgt_verts() == term_verts(n + 1),
                    ErrorKind::DimensionMismatch, "differential shape mismatch");
            d.validate();
        }
        if (!terms_.empty()) {
            for (int n = low(); n + 1 < high(); ++n)
                require(diff(n + 1).after(diff(n)).is_zero(), ErrorKind::DimensionMismatch,
                        "differentials do not square to zero");
        }
    }

    AlgPtr alg_;
    std::map<int, std::vector<int>> terms_;
    std::map<int, AMat<K>> diffs_;
};

/// Degreewise map of complexes commuting with the differentials.
template <class K>
class ChainMap {
public:
    ChainMap(ProjComplex<K> src, ProjComplex<K> tgt, std::map<int, AMat<K>> comps)
        : src_(std::move(src)), tgt_(std::move(tgt)), comps_(std::move(comps)) {
        for (auto it = comps_.begin(); it != comps_.end();) {
            require(it->second.src_verts() == src_.term_verts(it->first) &&
                        it->second.tgt_verts() == tgt_.term_verts(it->first),
                    ErrorKind::DimensionMismatch, "chain map component shape mismatch");
            it->second.validate();
            if (it->second.rows() == 0 || it->second.cols() == 0)
                it = comps_.erase(it);
            else
                ++it;
        }
        if (!src_.is_zero() && !tgt_.is_zero()) {
            int lo = std::min(src_.low(), tgt_.low()) - 1;
            int hi = std::max(src_.high(), tgt_.high());
            for (int n = lo; n <= hi; ++n)
                require(tgt_.diff(n).after(comp(n)) == comp(n + 1).after(src_.diff(n)),
                        ErrorKind::NotAModuleMap, "chain map does not commute with differentials");
        }
    }

    const ProjComplex<K>& source() const { return src_; }
    const ProjComplex<K>& target() const { return tgt_; }

    AMat<K> comp(int n) const {
        auto it = comps_.find(n);
        if (it != comps_.end()) return it->second;
        return AMat<K>(src_.algebra(), tgt_.term_verts(n), src_.term_verts(n));
    }

    /// The same map between the shifted complexes (no sign: both
    /// differentials pick up the same factor).
    ChainMap shift(int k) const {
        std::map<int, AMat<K>> comps;
        for (const auto& [n, c] : comps_) comps.emplace(n - k, c);
        return ChainMap(src_.shift(k), tgt_.shift(k), std::move(comps));
    }

    /// Composite: apply `first`, then this map.
    ChainMap after(const ChainMap& first) const {
        require(first.tgt_ == src_, ErrorKind::DimensionMismatch,
                "chain map composition endpoint mismatch");
        std::map<int, AMat<K>> comps;
        if (!first.src_.is_zero()) {
            for (int n = first.src_.low(); n <= first.src_.high(); ++n)
                comps.emplace(n, comp(n).after(first.comp(n)));
        }
        return ChainMap(first.src_, tgt_, std::move(comps));
    }

    bool is_zero_map() const {
        for (const auto& [n, c] : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

private:
    ProjComplex<K> src_, tgt_;
    std::map<int, AMat<K>> comps_;
};

/// Mapping cone: degree n is X^{n+1} + Y^n with the usual differential.
template <class K>
ProjComplex<K> cone(const ChainMap<K>& f) {
    const ProjComplex<K>& x = f.source();
    const ProjComplex<K>& y = f.target();
    auto alg = x.algebra();
    if (x.is_zero() && y.is_zero()) return ProjComplex<K>(alg);
    int lo = y.is_zero() ? x.low() - 1 : (x.is_zero() ? y.low() : std::min(x.low() - 1, y.low()));
    int hi = y.is_zero() ? x.high() - 1
                         : (x.is_zero() ? y.high() : std::max(x.high() - 1, y.high()));
    std::map<int, std::vector<int>> terms;
    std::map<int, AMat<K>> diffs;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> v = x.term_verts(n + 1);
        std::vector<int> w = y.term_verts(n);
        v.insert(v.end(), w.begin(), w.end());
        if (!v.empty()) terms[n] = std::move(v);
    }
    for (int n = lo; n < hi; ++n) {
        AMat<K> dx = x.diff(n + 1).negated();
        AMat<K> dy = y.diff(n);
        AMat<K> fc = f.comp(n + 1);
        AMat<K> top = dx.hstack(AMat<K>(alg, dx.tgt_verts(), dy.src_verts()));
        AMat<K> bot = fc.hstack(dy);
        diffs.emplace(n, top.vstack(bot));
    }
    return ProjComplex<K>(alg, std::move(terms), std::move(diffs));
}

/// Concatenate chain maps with a common target into one map from the sum.
template <class K>
ChainMap<K> chain_hstack(const std::vector<ChainMap<K>>& fs) {
    require(!fs.empty(), ErrorKind::DimensionMismatch, "no chain maps to concatenate");
    ProjComplex<K> src = fs.front().source();
    for (std::size_t k = 1; k < fs.size(); ++k) src = src.sum(fs[k].source());
    const ProjComplex<K>& tgt = fs.front().target();
    std::map<int, AMat<K>> comps;
    if (!src.is_zero()) {
        for (int n = src.low(); n <= src.high(); ++n) {
            AMat<K> acc = fs.front().comp(n);
            for (std::size_t k = 1; k < fs.size(); ++k) acc = acc.hstack(fs[k].comp(n));
            comps.emplace(n, std::move(acc));
        }
    }
    return ChainMap<K>(src, tgt, std::move(comps));
}

/// Stack chain maps with a common source into one map to the direct sum of
/// the targets.
template <class K>
ChainMap<K> chain_vstack(const std::vector<ChainMap<K>>& fs) {
    require(!fs.empty(), ErrorKind::DimensionMismatch, "no chain maps to stack");
    const ProjComplex<K>& src = fs.front().source();
    ProjComplex<K> tgt = fs.front().target();
    for (std::size_t k = 1; k < fs.size(); ++k) {
        require(fs[k].source() == src, ErrorKind::DimensionMismatch,
                "stacked chain maps must share their source");
        tgt = tgt.sum(fs[k].target());
    }
    std::map<int, AMat<K>> comps;
    if (!src.is_zero()) {
        for (int n = src.low(); n <= src.high(); ++n) {
            AMat<K> acc = fs.front().comp(n);
            for (std::size_t k = 1; k < fs.size(); ++k) acc = acc.vstack(fs[k].comp(n));
            comps.emplace(n, std::move(acc));
        }
    }
    return ChainMap<K>(src, tgt, std::move(comps));
}

/// A mapping cone together with its structural maps: the inclusion of the
/// target and the projection onto the shifted source.
template <class K>
struct Triangle {
    ProjComplex<K> total;            // cone of the defining map
    ChainMap<K> from_target;         // Y -> cone
    ChainMap<K> to_shifted_source;   // cone -> X[1]
};

template <class K>
Triangle<K> cone_triangle(const ChainMap<K>& f) {
    ProjComplex<K> c = cone(f);
    const ProjComplex<K>& x = f.source();
    const ProjComplex<K>& y = f.target();
    auto alg = x.algebra();
    FieldCtx<K> ctx = alg->ctx();
    std::map<int, AMat<K>> incl, proj;
    if (!c.is_zero()) {
        for (int n = c.low(); n <= c.high(); ++n) {
            std::vector<int> xv = x.term_verts(n + 1);
            std::vector<int> yv = y.term_verts(n);
            std::vector<int> cv = c.term_verts(n);
            AMat<K> in(alg, cv, yv);
            for (std::size_t r = 0; r < yv.size(); ++r)
                in.at(xv.size() + r, r) =
                    AlgElem<K>::single(alg->trivial_id(yv[r]), ctx.one());
            incl.emplace(n, std::move(in));
            AMat<K> pr(alg, xv, cv);
            for (std::size_t r = 0; r < xv.size(); ++r)
                pr.at(r, r) = AlgElem<K>::single(alg->trivial_id(xv[r]), ctx.one());
            proj.emplace(n, std::move(pr));
        }
    }
    return Triangle<K>{c, ChainMap<K>(y, c, std::move(incl)),
                       ChainMap<K>(c, x.shift(1), std::move(proj))};
}

namespace detail {

/// One plain matrix for a module map, acting on the concatenation of the
/// vertex coordinate blocks.
template <class K>
Matrix<K> stacked_matrix(const ModuleMap<K>& f) {
    FieldCtx<K> ctx = f.source().algebra()->ctx();
    Matrix<K> m(f.target().total_dim(), f.source().total_dim(), ctx);
    std::size_t ro = 0, co = 0;
    for (std::size_t v = 0; v < f.source().dims().size(); ++v) {
        const Matrix<K>& b = f.components()[v];
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m.at(ro + i, co + j) = b.at(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return m;
}

} // namespace detail

/// Rank of the map a chain map induces on degree-n cohomology.
template <class K>
std::size_t induced_cohomology_rank(const ChainMap<K>& f, int n) {
    const ProjComplex<K>& x = f.source();
    const ProjComplex<K>& y = f.target();
    if (x.is_zero() || y.is_zero()) return 0;
    Matrix<K> zx = detail::stacked_matrix(realize_map(x.diff(n))).kernel_basis();
    if (zx.cols() == 0) return 0;
    Matrix<K> fz = detail::stacked_matrix(realize_map(f.comp(n))) * zx;
    Matrix<K> by = detail::stacked_matrix(realize_map(y.diff(n - 1))).image_basis();
    return fz.hstack(by).rank() - by.rank();
}

/// Long-exact-sequence bookkeeping for a mapping cone: in every degree,
/// dim H^n(cone) = (dim H^n(Y) - r_n) + (dim H^{n+1}(X) - r_{n+1}) where r_k
/// is the rank of the induced cohomology map in degree k.
template <class K>
bool verify_cone_rank_identities(const ChainMap<K>& f) {
    ProjComplex<K> c = cone(f);
    const ProjComplex<K>& x = f.source();
    const ProjComplex<K>& y = f.target();
    int lo = 0, hi = -1;
    auto widen = [&](const ProjComplex<K>& z, int offset) {
        if (z.is_zero()) return;
        if (lo > hi) {
            lo = z.low() + offset;
            hi = z.high() + offset;
            return;
        }
        lo = std::min(lo, z.low() + offset);
        hi = std::max(hi, z.high() + offset);
    };
    widen(x, -1);
    widen(y, 0);
    widen(c, 0);
    for (int n = lo - 1; n <= hi + 1; ++n) {
        std::size_t hx1 = x.is_zero() ? 0 : x.cohomology(n + 1).total_dim();
        std::size_t hy = y.is_zero() ? 0 : y.cohomology(n).total_dim();
        std::size_t hc = c.is_zero() ? 0 : c.cohomology(n).total_dim();
        std::size_t rn = induced_cohomology_rank(f, n);
        std::size_t rn1 = induced_cohomology_rank(f, n + 1);
        if (hc != (hy - rn) + (hx1 - rn1)) return false;
    }
    return true;
}

/// Minimal projective resolution as a complex in degrees [-depth, 0].
template <class K>
struct ResolutionComplex {
    ProjComplex<K> cx;
    bool complete; // true when the resolution terminated within the depth
};

template <class K>
ResolutionComplex<K> resolution_complex(const Module<K>& m, std::size_t depth) {
    auto alg = m.algebra();
    if (m.is_zero()) return ResolutionComplex<K>{ProjComplex<K>(alg), true};
    Resolution<K> res(m);
    res.extend_to(depth);
    std::map<int, std::vector<int>> terms;
    std::map<int, AMat<K>> diffs;
    std::vector<std::vector<int>> verts_at;
    for (std::size_t i = 0; i <= depth; ++i) {
        std::vector<int> verts;
        std::vector<std::size_t> mults = res.multiplicities(i);
        for (std::size_t v = 0; v < mults.size(); ++v)
            for (std::size_t c = 0; c < mults[v]; ++c) verts.push_back(static_cast<int>(v));
        verts_at.push_back(verts);
        if (!verts.empty()) terms[-static_cast<int>(i)] = verts;
    }
    for (std::size_t i = 1; i <= depth; ++i) {
        if (verts_at[i].empty()) break;
        diffs.emplace(-static_cast<int>(i),
                      amat_from_module_map(res.diff(i), verts_at[i - 1], verts_at[i]));
    }
    bool complete = res.proj_dim(depth).has_value();
    return ResolutionComplex<K>{ProjComplex<K>(alg, std::move(terms), std::move(diffs)),
                                complete};
}

/// A module viewed in the derived category: its full minimal projective
/// resolution placed in degrees <= 0.  Refuses to truncate silently.
template <class K>
ProjComplex<K> complex_of_module(const Module<K>& m, std::size_t bound = 40) {
    ResolutionComplex<K> rc = resolution_complex(m, bound);
    require(rc.complete, ErrorKind::TruncationTooShallow,
            "projective resolution does not terminate within the requested bound");
    return rc.cx;
}

/// A module together with its minimal projective model and the augmentation
/// from the realized degree-zero term onto the module.
template <class K>
struct ModelledModule {
    Module<K> mod;
    ProjComplex<K> cx;
    ModuleMap<K> aug;
};

template <class K>
ModelledModule<K> modeled_module(const Module<K>& m, std::size_t bound = 40) {
    auto alg = m.algebra();
    ProjComplex<K> cx = complex_of_module(m, bound);
    if (m.is_zero())
        return ModelledModule<K>{m, cx, ModuleMap<K>::zero(Module<K>::zero(alg), m)};
    Resolution<K> res(m);
    Module<K> p0 = realize_sum<K>(alg, cx.term_verts(0));
    require(res.augmentation().source() == p0, ErrorKind::Internal,
            "projective cover does not match the realized degree-zero term");
    return ModelledModule<K>{m, std::move(cx), res.augmentation()};
}

/// Lift a module map to a chain map between projective models (a comparison
/// lift; it exists because the source terms are projective and the target
/// model is exact over its module).
template <class K>
ChainMap<K> lift_module_map(const ModuleMap<K>& f, const ModelledModule<K>& xm,
                            const ModelledModule<K>& ym) {
    require(f.source() == xm.mod && f.target() == ym.mod, ErrorKind::DimensionMismatch,
            "lift endpoints do not match the modelled modules");
    auto alg = xm.mod.algebra();
    FieldCtx<K> ctx = alg->ctx();
    std::map<int, AMat<K>> comps;
    if (!xm.cx.is_zero()) {
        std::optional<ModuleMap<K>> up; // chosen component one degree higher
        for (int n = 0; n >= xm.cx.low(); --n) {
            Module<K> xn = realize_sum<K>(alg, xm.cx.term_verts(n));
            Module<K> yn = realize_sum<K>(alg, ym.cx.term_verts(n));
            std::vector<ModuleMap<K>> basis = hom_space(xn, yn);
            ModuleMap<K> phi = ModuleMap<K>::zero(xn, yn);
            ModuleMap<K> want = (n == 0)
                                    ? f.after(xm.aug)
                                    : up->after(realize_map(xm.cx.diff(n)));
            if (!want.is_zero()) {
                // solve (post-composition with aug or differential)(phi) = want
                std::vector<ModuleMap<K>> pushed;
                if (n == 0) {
                    for (const ModuleMap<K>& b : basis) pushed.push_back(ym.aug.after(b));
                } else {
                    ModuleMap<K> dy = realize_map(ym.cx.diff(n));
                    for (const ModuleMap<K>& b : basis) pushed.push_back(dy.after(b));
                }
                std::vector<ModuleMap<K>> space = hom_space(xn, want.target());
                Matrix<K> a = detail::coords_in(space, pushed, ctx);
                Matrix<K> rhs = detail::coords_in(space, {want}, ctx);
                std::optional<Matrix<K>> sol = a.solve(rhs);
                require(sol.has_value(), ErrorKind::Internal, "comparison lift failed");
                for (std::size_t b = 0; b < basis.size(); ++b)
                    phi = phi + basis[b].scaled(sol->at(b, 0));
            }
            comps.emplace(n,
                          amat_from_module_map(phi, ym.cx.term_verts(n), xm.cx.term_verts(n)));
            up = std::move(phi);
        }
    }
    return ChainMap<K>(xm.cx, ym.cx, std::move(comps));
}

/// Total Hom complex between two complexes of projectives, with dimensions,
/// cohomology, and representative cocycles as chain maps into a shift.
template <class K>
class HomComplex {
public:
    HomComplex(ProjComplex<K> x, ProjComplex<K> y) : x_(std::move(x)), y_(std::move(y)) {
        if (x_.is_zero() || y_.is_zero()) {
            lo_ = 0;
            hi_ = -1;
            return;
        }
        lo_ = y_.low() - x_.high();
        hi_ = y_.high() - x_.low();
        FieldCtx<K> ctx = x_.algebra()->ctx();
        for (int n = lo_; n <= hi_; ++n) {
            auto& toks = tokens_[n];
            for (int i = x_.low(); i <= x_.high(); ++i) {
                std::vector<int> u = x_.term_verts(i);
                std::vector<int> w = y_.term_verts(i + n);
                for (std::size_t ti = 0; ti < w.size(); ++ti)
                    for (std::size_t si = 0; si < u.size(); ++si)
                        for (int pid : x_.algebra()->ids_from_to(w[ti], u[si])) {
                            index_[n][{i, ti, si, pid}] = toks.size();
                            toks.push_back(Token{i, ti, si, pid});
                        }
            }
        }
        auto alg = x_.algebra();
        for (int n = lo_; n <= hi_; ++n) {
            std::size_t rows = (n + 1 <= hi_) ? tokens_[n + 1].size() : 0;
            Matrix<K> delta(rows, tokens_[n].size(), ctx);
            K sign = (n % 2 == 0) ? (ctx.zero() - ctx.one()) : ctx.one();
            for (std::size_t c = 0; c < tokens_[n].size(); ++c) {
                const Token& t = tokens_[n][c];
                AlgElem<K> p = AlgElem<K>::single(t.pid, ctx.one());
                // d_Y ∘ f lands at chain degree i, hom degree n+1
                AMat<K> dy = y_.diff(t.i + n);
                for (std::size_t r = 0; r < dy.rows(); ++r) {
                    AlgElem<K> val = alg->mult(p, dy.at(r, t.ti));
                    scatter(delta, c, n + 1, t.i, r, t.si, val, ctx.one());
                }
                // f ∘ d_X lands at chain degree i-1, hom degree n+1, with sign
                AMat<K> dx = x_.diff(t.i - 1);
                for (std::size_t s = 0; s < dx.cols(); ++s) {
                    AlgElem<K> val = alg->mult(dx.at(t.si, s), p);
                    scatter(delta, c, n + 1, t.i - 1, t.ti, s, val, sign);
                }
            }
            delta_.emplace(n, std::move(delta));
        }
    }

    int low() const { return lo_; }
    int high() const { return hi_; }

    std::size_t space_dim(int n) const {
        auto it = tokens_.find(n);
        return it == tokens_.end() ? 0 : it->second.size();
    }

    std::size_t cohom_dim(int n) {
        if (space_dim(n) == 0) return 0;
        std::size_t k = space_dim(n) - delta_.at(n).rank();
        std::size_t im = (n - 1 >= lo_) ? delta_.at(n - 1).rank() : 0;
        return k - im;
    }

    std::map<int, std::size_t> cohomology_dims() {
        std::map<int, std::size_t> out;
        for (int n = lo_; n <= hi_; ++n) {
            std::size_t d = cohom_dim(n);
            if (d > 0) out[n] = d;
        }
        return out;
    }

    /// Chain maps X -> Y[n] whose classes form a basis of the degree-n
    /// cohomology.
    std::vector<ChainMap<K>> cocycle_reps(int n) {
        std::vector<ChainMap<K>> out;
        if (space_dim(n) == 0) return out;
        FieldCtx<K> ctx = x_.algebra()->ctx();
        Matrix<K> ker = delta_.at(n).kernel_basis();
        Matrix<K> img(space_dim(n), 0, ctx);
        if (n - 1 >= lo_) img = delta_.at(n - 1).image_basis();
        ProjComplex<K> shifted = y_.shift(n);
        for (std::size_t c : complete_basis_indices(img, ker)) {
            std::map<int, AMat<K>> comps;
            for (int i = x_.low(); i <= x_.high(); ++i)
                comps.emplace(i, AMat<K>(x_.algebra(), shifted.term_verts(i), x_.term_verts(i)));
            for (std::size_t b = 0; b < tokens_[n].size(); ++b) {
                const K& coeff = ker.at(b, c);
                if (coeff.is_zero()) continue;
                const Token& t = tokens_[n][b];
                comps.at(t.i).at(t.ti, t.si) =
                    comps.at(t.i).at(t.ti, t.si) + AlgElem<K>::single(t.pid, coeff);
            }
            out.emplace_back(x_, shifted, std::move(comps));
        }
        return out;
    }

    /// Coordinates of a cocycle's cohomology class in the basis produced by
    /// cocycle_reps(n).  The map must be X -> Y[n].
    std::vector<K> class_coords(int n, const ChainMap<K>& f) {
        FieldCtx<K> ctx = x_.algebra()->ctx();
        require(f.source() == x_ && f.target() == y_.shift(n), ErrorKind::DimensionMismatch,
                "cocycle endpoints do not match the hom complex");
        std::size_t sd = space_dim(n);
        if (sd == 0) {
            require(f.is_zero_map(), ErrorKind::Internal, "nonzero map in an empty hom space");
            return {};
        }
        Matrix<K> v(sd, 1, ctx);
        for (std::size_t b = 0; b < tokens_[n].size(); ++b) {
            const Token& t = tokens_[n][b];
            v.at(b, 0) = detail::coeff_of(f.comp(t.i).at(t.ti, t.si), t.pid, ctx);
        }
        require((delta_.at(n) * v).is_zero(), ErrorKind::Internal, "map is not a cocycle");
        Matrix<K> ker = delta_.at(n).kernel_basis();
        Matrix<K> img(sd, 0, ctx);
        if (n - 1 >= lo_) img = delta_.at(n - 1).image_basis();
        std::vector<std::size_t> chosen = complete_basis_indices(img, ker);
        Matrix<K> a = img.hstack(ker.take_cols(chosen));
        std::optional<Matrix<K>> sol = a.solve(v);
        require(sol.has_value(), ErrorKind::Internal, "cocycle class escapes its basis");
        std::vector<K> out;
        for (std::size_t k = 0; k < chosen.size(); ++k) out.push_back(sol->at(img.cols() + k, 0));
        return out;
    }

private:
    struct Token {
        int i;
        std::size_t ti, si;
        int pid;
    };

    void scatter(Matrix<K>& delta, std::size_t col, int n1, int i, std::size_t ti,
                 std::size_t si, const AlgElem<K>& val, const K& scale) {
        if (n1 > hi_) {
            require(val.is_zero(), ErrorKind::Internal, "hom differential escapes the window");
            return;
        }
        for (const auto& [id, c] : val.terms()) {
            auto it = index_.at(n1).find({i, ti, si, id});
            require(it != index_.at(n1).end(), ErrorKind::Internal, "hom token missing");
            delta.at(it->second, col) = delta.at(it->second, col) + c * scale;
        }
    }

    ProjComplex<K> x_, y_;
    int lo_ = 0, hi_ = -1;
    std::map<int, std::vector<Token>> tokens_;
    std::map<int, std::map<std::tuple<int, std::size_t, std::size_t, int>, std::size_t>> index_;
    std::map<int, Matrix<K>> delta_;
};

/// Hom spaces in the derived category, graded by shift: dimensions and
/// representative chain maps X -> Y[n] per degree.
template <class K>
struct GradedHom {
    std::map<int, std::size_t> dims;
    std::map<int, std::vector<ChainMap<K>>> reps;

    std::size_t dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }
    bool is_zero() const { return dims.empty(); }
    /// True when every nonzero graded piece sits in the given degree.
    bool concentrated_in(int n) const {
        for (const auto& [d, k] : dims)
            if (k > 0 && d != n) return false;
        return true;
    }
    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& [d, k] : dims) t += k;
        return t;
    }
};

template <class K>
GradedHom<K> graded_hom(const ProjComplex<K>& x, const ProjComplex<K>& y,
                        bool with_reps = true) {
    require(x.algebra() == y.algebra(), ErrorKind::AlgebraMismatch,
            "graded hom needs complexes over one algebra");
    GradedHom<K> out;
    HomComplex<K> hc(x, y);
    for (int n = hc.low(); n <= hc.high(); ++n) {
        std::size_t d = hc.cohom_dim(n);
        if (d == 0) continue;
        out.dims[n] = d;
        if (with_reps) out.reps[n] = hc.cocycle_reps(n);
    }
    return out;
}

/// Nonzero cohomology modules by degree.
template <class K>
std::map<int, Module<K>> cohomology_modules(const ProjComplex<K>& x) {
    std::map<int, Module<K>> out;
    if (x.is_zero()) return out;
    for (int n = x.low(); n <= x.high(); ++n) {
        Module<K> h = x.cohomology(n);
        if (!h.is_zero()) out.emplace(n, std::move(h));
    }
    return out;
}

/// Outermost degrees carrying nonzero cohomology; both absent for an acyclic
/// or empty complex.
template <class K>
std::pair<std::optional<int>, std::optional<int>> cohomology_range(const ProjComplex<K>& x) {
    std::pair<std::optional<int>, std::optional<int>> out;
    if (x.is_zero()) return out;
    for (int n = x.low(); n <= x.high(); ++n) {
        if (x.cohomology(n).is_zero()) continue;
        if (!out.first.has_value()) out.first = n;
        out.second = n;
    }
    return out;
}

/// The degree-zero cohomology when the complex is concentrated there (the
/// zero module for an acyclic complex); nullopt when cohomology lives in any
/// other degree.
template <class K>
std::optional<Module<K>> as_module(const ProjComplex<K>& x) {
    auto [lo, hi] = cohomology_range(x);
    if (!lo.has_value()) return Module<K>::zero(x.algebra());
    if (*lo != 0 || *hi != 0) return std::nullopt;
    return x.cohomology(0);
}

/// Class in the Grothendieck group: alternating sum of the dimension vectors
/// of the terms (equal to that of the cohomology).
template <class K>
std::vector<long long> complex_class_vector(const ProjComplex<K>& x) {
    auto alg = x.algebra();
    std::size_t nv = alg->quiver().vertex_count();
    std::vector<long long> out(nv, 0);
    if (x.is_zero()) return out;
    for (int n = x.low(); n <= x.high(); ++n) {
        long long sign = (((n % 2) + 2) % 2 == 0) ? 1 : -1;
        for (int v : x.term_verts(n))
            for (std::size_t w = 0; w < nv; ++w)
                out[w] += sign * static_cast<long long>(
                                     alg->ids_from_to(v, static_cast<int>(w)).size());
    }
    return out;
}

/// Dimension vector of a module as a Grothendieck class.
template <class K>
std::vector<long long> module_class_vector(const Module<K>& m) {
    std::vector<long long> out;
    for (std::size_t d : m.dims()) out.push_back(static_cast<long long>(d));
    return out;
}

/// Graded maps from a complex of projectives into a single module placed in
/// degree zero; exact in every degree, even for truncated resolutions.
template <class K>
struct ModuleValuedHom {
    std::map<int, std::size_t> dims;
    std::map<int, std::vector<ModuleMap<K>>> reps; // maps X^{-n} -> N, cocycle classes
};

template <class K>
ModuleValuedHom<K> graded_hom_to_module(const ProjComplex<K>& x, const Module<K>& n) {
    ModuleValuedHom<K> out;
    if (x.is_zero() || n.is_zero()) return out;
    FieldCtx<K> ctx = x.algebra()->ctx();
    int lo = -x.high(), hi = -x.low();
    std::map<int, Module<K>> realized;
    std::map<int, std::vector<ModuleMap<K>>> spaces;
    for (int d = lo; d <= hi; ++d) {
        realized.emplace(d, realize_sum<K>(x.algebra(), x.term_verts(-d)));
        spaces[d] = hom_space(realized.at(d), n);
    }
    std::map<int, Matrix<K>> delta;
    for (int d = lo; d <= hi; ++d) {
        std::vector<ModuleMap<K>> pushed;
        if (d + 1 <= hi) {
            ModuleMap<K> dx = realize_map(x.diff(-d - 1)); // X^{-d-1} -> X^{-d}
            for (const ModuleMap<K>& f : spaces[d]) pushed.push_back(f.after(dx));
            delta.emplace(d, detail::coords_in(spaces[d + 1], pushed, ctx));
        } else {
            delta.emplace(d, Matrix<K>(0, spaces[d].size(), ctx));
        }
    }
    for (int d = lo; d <= hi; ++d) {
        if (spaces[d].empty()) continue;
        Matrix<K> ker = delta.at(d).kernel_basis();
        Matrix<K> img(spaces[d].size(), 0, ctx);
        if (d - 1 >= lo) img = delta.at(d - 1).image_basis();
        std::vector<std::size_t> chosen = complete_basis_indices(img, ker);
        if (chosen.empty()) continue;
        out.dims[d] = chosen.size();
        for (std::size_t c : chosen) {
            ModuleMap<K> rep = ModuleMap<K>::zero(realized.at(d), n);
            for (std::size_t b = 0; b < spaces[d].size(); ++b)
                rep = rep + spaces[d][b].scaled(ker.at(b, c));
            out.reps[d].push_back(std::move(rep));
        }
    }
    return out;
}

/// Complex of realized modules (used for images under the Nakayama functor).
template <class K>
struct ModuleComplex {
    typename PathAlgebra<K>::Ptr alg;
    std::map<int, Module<K>> terms;
    std::map<int, ModuleMap<K>> diffs; // diffs[n]: terms[n] -> terms[n+1]

    Module<K> term(int n) const {
        auto it = terms.find(n);
        return it == terms.end() ? Module<K>::zero(alg) : it->second;
    }

    ModuleMap<K> diff(int n) const {
        auto it = diffs.find(n);
        return it == diffs.end() ? ModuleMap<K>::zero(term(n), term(n + 1)) : it->second;
    }

    Module<K> cohomology(int n) const { return chain_cohomology(diff(n - 1), diff(n)); }
};

/// Apply the Nakayama functor termwise: each vertex projective becomes the
/// matching injective, and block entries act through duality.
template <class K>
ModuleComplex<K> nakayama_complex(const ProjComplex<K>& x) {
    auto alg = x.algebra();
    const Quiver& q = alg->quiver();
    FieldCtx<K> ctx = alg->ctx();
    ModuleComplex<K> out;
    out.alg = alg;
    if (x.is_zero()) return out;
    auto realize_inj = [&](const std::vector<int>& verts) {
        std::vector<Module<K>> parts;
        for (int v : verts) parts.push_back(Module<K>::injective(alg, v));
        return Module<K>::direct_sum(parts, alg);
    };
    for (int n = x.low(); n <= x.high(); ++n) {
        std::vector<int> v = x.term_verts(n);
        if (!v.empty()) out.terms.emplace(n, realize_inj(v));
    }
    for (int n = x.low(); n < x.high(); ++n) {
        AMat<K> d = x.diff(n);
        if (d.rows() == 0 || d.cols() == 0) continue;
        Module<K> src = out.term(n);
        Module<K> tgt = out.term(n + 1);
        std::vector<Matrix<K>> comps;
        for (std::size_t vv = 0; vv < q.vertex_count(); ++vv) {
            int v = static_cast<int>(vv);
            Matrix<K> m(tgt.dims()[vv], src.dims()[vv], ctx);
            std::size_t col_off = 0;
            for (std::size_t j = 0; j < d.cols(); ++j) {
                const auto& col_ids = alg->ids_from_to(v, d.src_verts()[j]);
                std::size_t row_off = 0;
                for (std::size_t i = 0; i < d.rows(); ++i) {
                    const auto& row_ids = alg->ids_from_to(v, d.tgt_verts()[i]);
                    const AlgElem<K>& entry = d.at(i, j);
                    if (!entry.is_zero()) {
                        // dual of left multiplication: row (path v->tgt_i),
                        // col (path v->src_j); entry = coefficient of the
                        // column path in (entry * row path)
                        for (std::size_t r = 0; r < row_ids.size(); ++r) {
                            AlgElem<K> prod =
                                alg->mult(entry, AlgElem<K>::single(row_ids[r], ctx.one()));
                            for (const auto& [id, c] : prod.terms())
                                m.at(row_off + r, col_off + detail::pos_in(col_ids, id)) =
                                    m.at(row_off + r, col_off + detail::pos_in(col_ids, id)) + c;
                        }
                    }
                    row_off += row_ids.size();
                }
                col_off += col_ids.size();
            }
            comps.push_back(std::move(m));
        }
        out.diffs.emplace(n, ModuleMap<K>(src, tgt, std::move(comps)));
    }
    return out;
}

/// A quasi-isomorphic bounded complex of projectives for a bounded complex of
/// modules.  Works from the top degree downward: each stage covers the
/// pullback of the next stage's cycles against the incoming differential, so
/// cohomology is matched degree by degree; below the support it completes a
/// minimal resolution of the remaining cycles (so it terminates exactly when
/// those cycles have finite projective dimension).
template <class K>
ProjComplex<K> proj_model_of_module_complex(const ModuleComplex<K>& src,
                                            std::size_t tail_bound = 64) {
    auto alg = src.alg;
    FieldCtx<K> ctx = alg->ctx();
    std::optional<int> top, bot;
    for (const auto& [deg, t] : src.terms) {
        if (t.is_zero()) continue;
        if (!top) top = deg;
        top = std::max(*top, deg);
        bot = bot ? std::min(*bot, deg) : deg;
    }
    if (!top) return ProjComplex<K>(alg);

    std::map<int, std::vector<int>> verts;
    std::map<int, ModuleMap<K>> dmod; // realized differential P^d -> P^{d+1}
    Module<K> pup = Module<K>::zero(alg);
    ModuleMap<K> dup = ModuleMap<K>::zero(pup, Module<K>::zero(alg));
    ModuleMap<K> eup = ModuleMap<K>::zero(pup, src.term(*top + 1));
    for (int d = *top;; --d) {
        require(*top - d <= static_cast<int>(tail_bound) + (*top - *bot) + 1,
                ErrorKind::NonTerminating,
                "projective model construction exceeded its depth bound");
        ModuleMap<K> zincl = kernel(dup); // cycles of the stage above
        Module<K> z = zincl.source();
        Module<K> nd = src.term(d);
        ModuleMap<K> into_next = eup.after(zincl); // Z -> N^{d+1}
        ModuleMap<K> psi = src.diff(d);            // N^d -> N^{d+1}
        // pullback {(z, x) : e(z) = d_N(x)} as the kernel of [e | -d_N]
        Module<K> s = Module<K>::direct_sum({z, nd}, alg);
        std::vector<Matrix<K>> hc;
        for (std::size_t v = 0; v < alg->quiver().vertex_count(); ++v)
            hc.push_back(into_next.components()[v].hstack(-psi.components()[v]));
        ModuleMap<K> both(s, psi.target(), std::move(hc));
        ModuleMap<K> wincl = kernel(both);
        Module<K> w = wincl.source();
        if (w.is_zero() && d < *bot) break;
        std::vector<Matrix<K>> pzc, pnc;
        for (std::size_t v = 0; v < alg->quiver().vertex_count(); ++v) {
            std::size_t zd = z.dims()[v], xd = nd.dims()[v];
            Matrix<K> a(zd, zd + xd, ctx), b(xd, zd + xd, ctx);
            for (std::size_t i = 0; i < zd; ++i) a.at(i, i) = ctx.one();
            for (std::size_t i = 0; i < xd; ++i) b.at(i, zd + i) = ctx.one();
            pzc.push_back(std::move(a));
            pnc.push_back(std::move(b));
        }
        ModuleMap<K> pz(s, z, std::move(pzc));
        ModuleMap<K> pn(s, nd, std::move(pnc));
        Module<K> pd = Module<K>::zero(alg);
        std::vector<int> vlist;
        std::optional<Cover<K>> cov;
        if (!w.is_zero()) {
            cov = projective_cover(w);
            pd = cov->proj;
            for (std::size_t v = 0; v < cov->mults.size(); ++v)
                for (std::size_t k = 0; k < cov->mults[v]; ++k)
                    vlist.push_back(static_cast<int>(v));
        }
        ModuleMap<K> onto = cov ? cov->onto : ModuleMap<K>::zero(pd, w);
        ModuleMap<K> to_pair = wincl.after(onto);        // P^d -> Z + N^d
        ModuleMap<K> dp = zincl.after(pz.after(to_pair)); // P^d -> P^{d+1}
        if (!vlist.empty()) verts[d] = std::move(vlist);
        dmod.emplace(d, dp);
        pup = std::move(pd);
        dup = std::move(dp);
        eup = pn.after(to_pair);
    }

    std::map<int, AMat<K>> diffs;
    for (const auto& [deg, vl] : verts) {
        auto above = verts.find(deg + 1);
        if (above == verts.end()) continue;
        diffs.emplace(deg, amat_from_module_map(dmod.at(deg), above->second, vl));
    }
    std::map<int, std::vector<int>> terms = verts;
    ProjComplex<K> out(alg, std::move(terms), std::move(diffs));

    int check_lo = (verts.empty() ? *bot : std::min(verts.begin()->first, *bot)) - 1;
    for (int deg = check_lo; deg <= *top + 1; ++deg) {
        std::size_t hp = out.is_zero() ? 0 : out.cohomology(deg).total_dim();
        require(hp == src.cohomology(deg).total_dim(), ErrorKind::Internal,
                "projective model cohomology mismatch");
    }
    return out;
}

/// Image of a bounded complex of projectives under the derived Nakayama
/// functor (tensoring with the dual of the algebra), returned again as a
/// minimal complex of projectives.  Requires finite global dimension.
template <class K>
ProjComplex<K> nakayama(const ProjComplex<K>& x, std::size_t depth_bound = 50) {
    auto alg = x.algebra();
    if (x.is_zero()) return x;
    GlobalDimension gd = global_dimension_probe<K>(alg, depth_bound);
    require(gd.kind == GlKind::Finite, ErrorKind::InfiniteGlobalDimension,
            "the derived Nakayama image needs finite global dimension (" + gd.witness + ")");
    ModuleComplex<K> img = nakayama_complex(x);
    return proj_model_of_module_complex(img, gd.value + 8).minimize();
}

} // namespace hwcat
