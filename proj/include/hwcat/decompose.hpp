#pragma once

// Direct-sum decomposition of modules with certificates.
//
// Splitting uses Fitting's lemma: for an endomorphism f and an eigenvalue c
// of its minimal polynomial, a high power of (f - c) splits the module into
// kernel and image.  Candidate endomorphisms are swept from the basis of the
// endomorphism algebra together with pairwise products, sums and differences.
//
// Indecomposability of the leaves is certified independently: the kernel of
// the trace form on End(M) is checked to be a nilpotent two-sided ideal (in
// which case it equals the radical in any characteristic), and a leaf is
// certified when End(M) modulo that radical is one-dimensional.  When the
// certificate cannot be established the result says so instead of guessing.

#include "hwcat/error.hpp"
#include "hwcat/module.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hwcat {

enum class Certainty { Certified, Undecided };

template <class K>
struct Decomposition {
    std::vector<Module<K>> summands;   // deterministic order
    Certainty status = Certainty::Certified;
    std::string note;                  // filled when status == Undecided
};

namespace detail {

/// Monic minimal polynomial of a square matrix, lowest coefficient first
/// (the returned vector v encodes sum v[i] x^i with v.back() == 1).
template <class K>
std::vector<K> minimal_polynomial(const Matrix<K>& t) {
    FieldCtx<K> ctx = t.ctx();
    std::size_t n = t.rows();
    Matrix<K> pw = Matrix<K>::identity(n, ctx);
    Matrix<K> krylov(n * n, 0, ctx);
    for (std::size_t k = 0;; ++k) {
        std::vector<K> flat = pw.flatten();
        Matrix<K> v(n * n, 1, ctx);
        for (std::size_t i = 0; i < flat.size(); ++i) v.at(i, 0) = flat[i];
        auto x = krylov.solve(v);
        if (x.has_value()) {
            std::vector<K> coeffs;
            for (std::size_t i = 0; i < k; ++i) coeffs.push_back(-x->at(i, 0));
            coeffs.push_back(ctx.one());
            return coeffs;
        }
        krylov = krylov.hstack(v);
        pw = pw * t;
        require(k <= n, ErrorKind::Internal, "minimal polynomial search exceeded the dimension");
    }
}

template <class K>
K eval_poly(const std::vector<K>& coeffs, const K& x, FieldCtx<K> ctx) {
    K acc = ctx.zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> divs;
    if (n == 0) return divs;
    // trial division with a cap; if a large cofactor remains, keep it as a
    // candidate divisor so typical eigenvalues are still found
    mpz_class rest = n;
    std::vector<std::pair<mpz_class, unsigned>> fac;
    for (mpz_class p = 2; p * p <= rest && p < 100000; ++p) {
        if (rest % p == 0) {
            unsigned e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            fac.emplace_back(p, e);
        }
    }
    if (rest > 1) fac.emplace_back(rest, 1);
    divs.push_back(1);
    for (const auto& [p, e] : fac) {
        std::size_t sz = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    return divs;
}

/// All rational roots of a monic polynomial over the rationals.
inline std::vector<Rat> poly_roots(std::vector<Rat> coeffs, FieldCtx<Rat> ctx) {
    std::vector<Rat> roots;
    // strip zero roots
    while (coeffs.size() > 1 && coeffs.front().is_zero()) {
        roots.push_back(ctx.zero());
        coeffs.erase(coeffs.begin());
    }
    if (coeffs.size() <= 1) {
        std::sort(roots.begin(), roots.end(),
                  [](const Rat& a, const Rat& b) { return a.str() < b.str(); });
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        return roots;
    }
    // clear denominators: integer coefficients a_0 .. a_d
    mpz_class lcm_den = 1;
    for (const Rat& c : coeffs) {
        mpz_class d = c.den();
        lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    std::vector<mpz_class> a;
    for (const Rat& c : coeffs) a.push_back(c.num() * (lcm_den / c.den()));
    std::vector<mpz_class> ps = positive_divisors(a.front());
    std::vector<mpz_class> qs = positive_divisors(a.back());
    for (const mpz_class& p : ps)
        for (const mpz_class& q : qs) {
            if (gcd(p, q) != 1) continue;
            for (int sign : {1, -1}) {
                Rat cand(mpq_class(sign * p, q));
                if (eval_poly(coeffs, cand, ctx).is_zero()) roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end(),
              [](const Rat& x, const Rat& y) { return x.str() < y.str(); });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/// Roots of a polynomial over a prime field by scanning (caps out loudly on
/// huge primes; the sweep then simply has fewer candidates).
inline std::vector<Fp> poly_roots(const std::vector<Fp>& coeffs, FieldCtx<Fp> ctx) {
    std::vector<Fp> roots;
    std::uint64_t limit = std::min<std::uint64_t>(ctx.p, 65536);
    for (std::uint64_t v = 0; v < limit; ++v) {
        Fp cand(v, ctx.p);
        if (eval_poly(coeffs, cand, ctx).is_zero()) roots.push_back(cand);
    }
    return roots;
}

/// Flatten an endomorphism into one long column (all vertex blocks).
template <class K>
Matrix<K> flatten_map(const ModuleMap<K>& f, FieldCtx<K> ctx) {
    std::vector<K> entries;
    for (const Matrix<K>& c : f.components()) {
        std::vector<K> part = c.flatten();
        entries.insert(entries.end(), part.begin(), part.end());
    }
    Matrix<K> r(entries.size(), 1, ctx);
    for (std::size_t i = 0; i < entries.size(); ++i) r.at(i, 0) = entries[i];
    return r;
}

template <class K>
Matrix<K> flatten_maps(const std::vector<ModuleMap<K>>& fs, FieldCtx<K> ctx) {
    if (fs.empty()) return Matrix<K>(0, 0, ctx);
    Matrix<K> m = flatten_map(fs.front(), ctx);
    for (std::size_t i = 1; i < fs.size(); ++i) m = m.hstack(flatten_map(fs[i], ctx));
    return m;
}

/// Coordinates of maps with respect to a fixed hom-space basis.
template <class K>
Matrix<K> coords_in(const std::vector<ModuleMap<K>>& basis, const std::vector<ModuleMap<K>>& maps,
                    FieldCtx<K> ctx) {
    Matrix<K> flat = flatten_maps(basis, ctx);
    Matrix<K> out(basis.size(), maps.size(), ctx);
    for (std::size_t j = 0; j < maps.size(); ++j) {
        Matrix<K> v = flatten_map(maps[j], ctx);
        if (flat.cols() == 0) {
            require(v.is_zero(), ErrorKind::Internal, "map outside the hom-space span");
            continue;
        }
        auto x = flat.solve(v);
        require(x.has_value(), ErrorKind::Internal, "map outside the hom-space span");
        for (std::size_t i = 0; i < basis.size(); ++i) out.at(i, j) = x->at(i, 0);
    }
    return out;
}

template <class K>
K block_trace(const ModuleMap<K>& f, const ModuleMap<K>& g, FieldCtx<K> ctx) {
    K t = ctx.zero();
    for (std::size_t v = 0; v < f.components().size(); ++v) {
        Matrix<K> prod = f.components()[v] * g.components()[v];
        for (std::size_t i = 0; i < prod.rows(); ++i) t = t + prod.at(i, i);
    }
    return t;
}

} // namespace detail

/// Radical of the endomorphism algebra with a validity certificate: the
/// trace-form kernel, certified equal to the radical when it is a nilpotent
/// two-sided ideal (always true in characteristic zero).
template <class K>
struct EndoRadical {
    std::vector<ModuleMap<K>> rad_basis;
    bool certified = false;
    std::string note;
};

template <class K>
EndoRadical<K> endo_radical(const Module<K>& m, const std::vector<ModuleMap<K>>& end_basis) {
    FieldCtx<K> ctx = m.algebra()->ctx();
    std::size_t r = end_basis.size();
    EndoRadical<K> out;
    Matrix<K> gram(r, r, ctx);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            gram.at(i, j) = detail::block_trace(end_basis[i], end_basis[j], ctx);
    Matrix<K> knl = gram.kernel_basis();
    for (std::size_t c = 0; c < knl.cols(); ++c) {
        ModuleMap<K> f = ModuleMap<K>::zero(m, m);
        for (std::size_t i = 0; i < r; ++i) f = f + end_basis[i].scaled(knl.at(i, c));
        out.rad_basis.push_back(std::move(f));
    }

    // certificate: the trace kernel is a two-sided ideal and nilpotent
    Matrix<K> rad_flat = detail::flatten_maps(out.rad_basis, ctx);
    auto inside_kernel = [&](const ModuleMap<K>& f) {
        if (rad_flat.cols() == 0) return f.is_zero();
        return rad_flat.solve(detail::flatten_map(f, ctx)).has_value();
    };
    bool ideal = true;
    for (const ModuleMap<K>& t : out.rad_basis) {
        for (const ModuleMap<K>& e : end_basis) {
            if (!inside_kernel(t.after(e)) || !inside_kernel(e.after(t))) {
                ideal = false;
                break;
            }
        }
        if (!ideal) break;
    }
    if (!ideal) {
        out.note = "trace-form kernel is not an ideal; radical not certified";
        return out;
    }
    if (out.rad_basis.empty()) { // nondegenerate trace form: semisimple
        out.certified = true;
        return out;
    }
    // nilpotency: iterate products until the span dies or stabilizes
    std::vector<ModuleMap<K>> layer = out.rad_basis;
    for (std::size_t step = 0; step <= r && !layer.empty(); ++step) {
        std::vector<ModuleMap<K>> next;
        for (const ModuleMap<K>& t : out.rad_basis)
            for (const ModuleMap<K>& w : layer) {
                ModuleMap<K> prod = t.after(w);
                if (!prod.is_zero()) next.push_back(std::move(prod));
            }
        if (next.empty()) {
            out.certified = true;
            return out;
        }
        // keep an independent spanning subset to bound growth
        Matrix<K> flat = detail::flatten_maps(next, ctx);
        std::vector<std::size_t> keep = flat.image_col_indices();
        std::vector<ModuleMap<K>> reduced;
        for (std::size_t idx : keep) reduced.push_back(next[idx]);
        if (reduced.size() >= layer.size() && step == r) break;
        layer = std::move(reduced);
    }
    out.note = "trace-form kernel does not certify as nilpotent";
    return out;
}

namespace detail {

template <class K>
std::optional<std::pair<Module<K>, Module<K>>> try_split(const Module<K>& m) {
    FieldCtx<K> ctx = m.algebra()->ctx();
    std::vector<ModuleMap<K>> end_basis = hom_space(m, m);
    if (end_basis.size() <= 1) return std::nullopt; // End = k: indecomposable

    std::vector<ModuleMap<K>> candidates = end_basis;
    std::size_t nb = end_basis.size();
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            if (candidates.size() > 400) break;
            candidates.push_back(end_basis[i].after(end_basis[j]));
            if (i < j) {
                candidates.push_back(end_basis[i] + end_basis[j]);
                candidates.push_back(end_basis[i] - end_basis[j]);
            }
        }

    std::size_t n = m.total_dim();
    for (const ModuleMap<K>& g : candidates) {
        if (g.is_zero()) continue;
        // minimal polynomial on the total space (block diagonal)
        Matrix<K> total(n, n, ctx);
        std::size_t off = 0;
        for (std::size_t v = 0; v < m.dims().size(); ++v) {
            const Matrix<K>& b = g.components()[v];
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) total.at(off + i, off + j) = b.at(i, j);
            off += m.dims()[v];
        }
        std::vector<K> mu = minimal_polynomial(total);
        for (const K& root : poly_roots(mu, ctx)) {
            ModuleMap<K> h = g - ModuleMap<K>::identity(m).scaled(root);
            ModuleMap<K> hp = h;
            for (std::size_t k = 1; k < n; k <<= 1) hp = hp.after(hp); // power >= n
            ModuleMap<K> ker_incl = kernel(hp);
            if (ker_incl.source().is_zero() || ker_incl.source().total_dim() == n) continue;
            ImagePair<K> img = image(hp);
            require(ker_incl.source().total_dim() + img.incl.source().total_dim() == n,
                    ErrorKind::Internal, "kernel/image split does not fill the module");
            return std::make_pair(ker_incl.source(), img.incl.source());
        }
    }
    return std::nullopt;
}

template <class K>
void decompose_into(const Module<K>& m, Decomposition<K>& out) {
    if (m.is_zero()) return;
    if (m.total_dim() == 1) {
        out.summands.push_back(m);
        return;
    }
    auto split = try_split(m);
    if (split.has_value()) {
        decompose_into(split->first, out);
        decompose_into(split->second, out);
        return;
    }
    // no split found: certify indecomposability
    std::vector<ModuleMap<K>> end_basis = hom_space(m, m);
    if (end_basis.size() == 1) { // End = k: local, independent of the trace form
        out.summands.push_back(m);
        return;
    }
    EndoRadical<K> rad = endo_radical(m, end_basis);
    if (!rad.certified) {
        out.status = Certainty::Undecided;
        out.note = "summand " + m.describe() + ": " + rad.note;
    } else if (end_basis.size() - rad.rad_basis.size() != 1) {
        out.status = Certainty::Undecided;
        out.note = "summand " + m.describe() +
                   ": semisimple endomorphism quotient has dimension " +
                   std::to_string(end_basis.size() - rad.rad_basis.size()) +
                   " and no split was found";
    }
    out.summands.push_back(m);
}

} // namespace detail

/// Decompose a module into indecomposable summands (certified when possible).
template <class K>
Decomposition<K> decompose(const Module<K>& m) {
    Decomposition<K> out;
    detail::decompose_into(m, out);
    std::stable_sort(out.summands.begin(), out.summands.end(),
                     [](const Module<K>& a, const Module<K>& b) {
                         if (a.total_dim() != b.total_dim()) return a.total_dim() < b.total_dim();
                         return a.dims() < b.dims();
                     });
    return out;
}

/// Isomorphism test between certified-indecomposable modules: some pair of
/// forward/backward basis maps composes to an automorphism.
template <class K>
bool indecomposable_iso(const Module<K>& x, const Module<K>& y) {
    if (x.dims() != y.dims()) return false;
    std::vector<ModuleMap<K>> fwd = hom_space(x, y);
    std::vector<ModuleMap<K>> bwd = hom_space(y, x);
    for (const ModuleMap<K>& f : fwd)
        for (const ModuleMap<K>& g : bwd)
            if (g.after(f).is_iso()) return true;
    return false;
}

/// Complete isomorphism test via decomposition and summand matching.
/// Throws Undecided when a decomposition cannot be certified.
template <class K>
bool is_isomorphic(const Module<K>& m, const Module<K>& n) {
    require(m.algebra() == n.algebra(), ErrorKind::AlgebraMismatch,
            "isomorphism test across different algebras");
    if (m.dims() != n.dims()) return false;
    if (m == n) return true;
    Decomposition<K> dm = decompose(m);
    Decomposition<K> dn = decompose(n);
    require(dm.status == Certainty::Certified && dn.status == Certainty::Certified,
            ErrorKind::Undecided,
            "isomorphism test needs certified decompositions: " + dm.note + dn.note);
    if (dm.summands.size() != dn.summands.size()) return false;
    std::vector<bool> used(dn.summands.size(), false);
    for (const Module<K>& x : dm.summands) {
        bool matched = false;
        for (std::size_t j = 0; j < dn.summands.size(); ++j) {
            if (used[j]) continue;
            if (indecomposable_iso(x, dn.summands[j])) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

/// Dimension of the radical of Hom(M, N): maps with no invertible component
/// between matching indecomposable summands.
template <class K>
std::size_t rad_hom_dim(const Module<K>& m, const Module<K>& n) {
    Decomposition<K> dm = decompose(m);
    Decomposition<K> dn = decompose(n);
    require(dm.status == Certainty::Certified && dn.status == Certainty::Certified,
            ErrorKind::Undecided, "radical Hom needs certified decompositions");
    std::size_t total = 0;
    for (const Module<K>& x : dm.summands)
        for (const Module<K>& y : dn.summands) {
            std::size_t h = hom_space(x, y).size();
            if (indecomposable_iso(x, y)) h -= 1;
            total += h;
        }
    return total;
}

} // namespace hwcat
