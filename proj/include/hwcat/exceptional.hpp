#pragma once

// Exceptional objects and sequences in the bounded derived category of a
// finite-dimensional path algebra: mutation of exceptional pairs, dual
// sequences, the hom-duality pairing between a sequence and its dual, the
// glued t-structure aisles, and necessary conditions for fullness.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hwcat/complex.hpp"
#include "hwcat/decompose.hpp"
#include "hwcat/resolution.hpp"

namespace hwcat {

/// Whether an object's graded endomorphisms are one copy of the ground field
/// in degree zero.  Offending degrees list every violation (degree zero
/// appears when its dimension is not one).
struct ExceptionalCheck {
    bool exceptional = false;
    std::map<int, std::size_t> endo_dims;
    std::vector<int> offending_degrees;
};

template <class K>
ExceptionalCheck is_exceptional(const ProjComplex<K>& x) {
    ExceptionalCheck out;
    GradedHom<K> gh = graded_hom(x, x, false);
    out.endo_dims = gh.dims;
    for (const auto& [d, k] : gh.dims)
        if (d != 0 && k > 0) out.offending_degrees.push_back(d);
    if (gh.dim(0) != 1) out.offending_degrees.push_back(0);
    std::sort(out.offending_degrees.begin(), out.offending_degrees.end());
    out.exceptional = out.offending_degrees.empty();
    return out;
}

/// Exceptionality of a module, decided through a certified self-extension
/// bound: either a finite projective dimension, or a syzygy repetition that
/// folds all higher extension degrees into the scanned window.  A nonzero
/// higher self-extension is a definitive failure regardless of the bound.
struct ModuleExceptionalCheck {
    bool exceptional = false;
    bool certified = false;
    std::size_t checked_through = 0;
    std::map<std::size_t, std::size_t> nonzero; // degree -> dimension
    std::vector<std::size_t> offending_degrees;
    std::string note;
};

template <class K>
ModuleExceptionalCheck is_exceptional(const Module<K>& m, std::size_t depth_cap = 30) {
    ModuleExceptionalCheck out;
    if (m.is_zero()) {
        out.certified = true;
        out.offending_degrees = {0};
        out.note = "zero module";
        return out;
    }
    std::size_t h0 = hom_space(m, m).size();
    out.nonzero[0] = h0;
    if (h0 != 1) out.offending_degrees.push_back(0);
    Resolution<K> res(m);
    std::optional<std::size_t> bound;
    if (auto pd = res.proj_dim(depth_cap)) {
        bound = *pd;
        out.note = "projective dimension " + std::to_string(*pd);
    } else {
        auto omega = [&](std::size_t j) {
            return j == 0 ? m : res.syzygy(j - 1);
        };
        for (std::size_t b = 1; !bound && b <= depth_cap; ++b)
            for (std::size_t a = 0; a < b; ++a) {
                try {
                    if (!is_isomorphic(omega(a), omega(b))) continue;
                } catch (const EngineError&) {
                    continue; // comparison undecided; try other offsets
                }
                bound = b;
                out.note = "syzygy repetition: " + std::to_string(a) + " ~ " +
                           std::to_string(b);
                break;
            }
    }
    out.certified = bound.has_value();
    std::size_t top = bound ? *bound : depth_cap;
    out.checked_through = top;
    if (top >= 1) {
        std::vector<std::size_t> profile = ext_profile(m, m, top);
        for (std::size_t i = 1; i <= top; ++i)
            if (profile[i] > 0) {
                out.nonzero[i] = profile[i];
                out.offending_degrees.push_back(i);
            }
    }
    out.exceptional = out.offending_degrees.empty();
    if (!out.offending_degrees.empty()) out.certified = true; // a witness is final
    if (!out.certified)
        out.note = "no certified bound within depth " + std::to_string(depth_cap);
    return out;
}

/// A nonzero backward hom space inside a would-be exceptional sequence:
/// Hom(E_from, E_to[degree]) != 0 with from > to.
struct PairViolation {
    std::size_t from = 0, to = 0;
    int degree = 0;
    std::size_t dim = 0;
};

struct SequenceCheck {
    bool exceptional = false;
    std::vector<std::pair<std::size_t, std::vector<int>>> object_violations;
    std::vector<PairViolation> pair_violations;
};

template <class K>
SequenceCheck is_exceptional_sequence(const std::vector<ProjComplex<K>>& seq) {
    SequenceCheck out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        ExceptionalCheck c = is_exceptional(seq[i]);
        if (!c.exceptional) out.object_violations.push_back({i, c.offending_degrees});
    }
    for (std::size_t j = 0; j < seq.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            GradedHom<K> gh = graded_hom(seq[j], seq[i], false);
            for (const auto& [d, k] : gh.dims)
                if (k > 0) out.pair_violations.push_back({j, i, d, k});
        }
    out.exceptional = out.object_violations.empty() && out.pair_violations.empty();
    return out;
}

namespace detail {

/// An exceptional pair (e, f): both objects exceptional and every backward
/// hom space Hom(f, e[l]) zero.
template <class K>
void require_exceptional_pair(const ProjComplex<K>& e, const ProjComplex<K>& f) {
    require(is_exceptional(e).exceptional && is_exceptional(f).exceptional,
            ErrorKind::NotExceptionalPair, "mutation endpoints must both be exceptional");
    require(graded_hom(f, e, false).is_zero(), ErrorKind::NotExceptionalPair,
            "backward hom spaces must vanish for an exceptional pair");
}

} // namespace detail

/// The outcome of a mutation, together with the graded hom dimensions that
/// assembled the (co)evaluation map.
template <class K>
struct Mutation {
    ProjComplex<K> result;
    std::map<int, std::size_t> hom_table;
};

/// Left mutation of x through an exceptional pair (through, x): the cone over
/// the evaluation map from the shifted copies of `through` indexed by a basis
/// of the graded hom space.
template <class K>
Mutation<K> left_mutation(const ProjComplex<K>& through, const ProjComplex<K>& x) {
    detail::require_exceptional_pair(through, x);
    GradedHom<K> gh = graded_hom(through, x);
    Mutation<K> out{x.minimize(), gh.dims};
    if (gh.dims.empty()) return out;
    std::vector<ChainMap<K>> legs;
    for (const auto& [d, reps] : gh.reps)
        for (const ChainMap<K>& r : reps) legs.push_back(r.shift(-d));
    out.result = cone(chain_hstack(legs)).minimize();
    return out;
}

/// Right mutation of x through an exceptional pair (x, through): the shifted
/// cone over the coevaluation map into the copies of `through` indexed by a
/// basis of the graded hom space.
template <class K>
Mutation<K> right_mutation(const ProjComplex<K>& through, const ProjComplex<K>& x) {
    detail::require_exceptional_pair(x, through);
    GradedHom<K> gh = graded_hom(x, through);
    Mutation<K> out{x.minimize(), gh.dims};
    if (gh.dims.empty()) return out;
    std::vector<ChainMap<K>> legs;
    for (const auto& [d, reps] : gh.reps)
        for (const ChainMap<K>& r : reps) legs.push_back(r);
    out.result = cone(chain_vstack(legs)).shift(-1).minimize();
    return out;
}

/// A sequence with its left-dual sequence.  The duals are stored in matching
/// positions (dual i answers original i under the hom pairing); read as an
/// exceptional sequence they run in reverse order.
template <class K>
struct DualPair {
    std::vector<ProjComplex<K>> originals;
    std::vector<ProjComplex<K>> duals;
    std::vector<ProjComplex<K>> dual_sequence() const {
        return std::vector<ProjComplex<K>>(duals.rbegin(), duals.rend());
    }
};

/// Iterated left mutation: dual i is E_i mutated through E_{i-1}, ..., E_1 in
/// that order (innermost first).
template <class K>
DualPair<K> left_dual_sequence(const std::vector<ProjComplex<K>>& seq) {
    SequenceCheck sc = is_exceptional_sequence(seq);
    require(sc.exceptional, ErrorKind::NotExceptionalSequence,
            "left duals require an exceptional sequence");
    DualPair<K> out;
    out.originals = seq;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        ProjComplex<K> f = seq[i];
        for (std::size_t j = i; j-- > 0;) f = left_mutation(seq[j], f).result;
        out.duals.push_back(std::move(f));
    }
    return out;
}

/// A violation of the duality pairing Hom(E_i, F_j[l]) = delta_ij delta_l0.
struct DualityFailure {
    std::size_t i = 0, j = 0;
    int degree = 0;
    std::size_t dim = 0;
};

struct HomDualityReport {
    bool holds = false;
    std::vector<DualityFailure> failures;
};

template <class K>
HomDualityReport verify_hom_duality(const DualPair<K>& pair) {
    HomDualityReport out;
    for (std::size_t i = 0; i < pair.originals.size(); ++i)
        for (std::size_t j = 0; j < pair.duals.size(); ++j) {
            GradedHom<K> gh = graded_hom(pair.originals[i], pair.duals[j], false);
            for (const auto& [d, k] : gh.dims) {
                if (k == 0) continue;
                if (i == j && d == 0 && k == 1) continue;
                out.failures.push_back({i, j, d, k});
            }
            if (i == j && gh.dim(0) == 0) out.failures.push_back({i, j, 0, 0});
        }
    out.holds = out.failures.empty();
    return out;
}

/// A nonzero hom space witnessing failure of an aisle condition.
struct AisleWitness {
    std::size_t index = 0;
    int degree = 0;
    std::size_t dim = 0;
};

/// Membership in the aisles of the t-structure glued along a dual pair: the
/// co-aisle tests hom into the duals in negative degrees, the aisle tests hom
/// out of the originals in negative degrees, the heart is the intersection.
struct AisleMembership {
    bool in_coaisle = true;
    bool in_aisle = true;
    bool in_heart = false;
    std::optional<AisleWitness> coaisle_witness, aisle_witness;
};

template <class K>
AisleMembership glued_aisle_membership(const ProjComplex<K>& x, const DualPair<K>& pair) {
    AisleMembership out;
    for (std::size_t s = 0; s < pair.duals.size() && !out.coaisle_witness; ++s) {
        GradedHom<K> gh = graded_hom(x, pair.duals[s], false);
        for (const auto& [d, k] : gh.dims)
            if (d < 0 && k > 0) {
                out.coaisle_witness = AisleWitness{s, d, k};
                out.in_coaisle = false;
                break;
            }
    }
    for (std::size_t s = 0; s < pair.originals.size() && !out.aisle_witness; ++s) {
        GradedHom<K> gh = graded_hom(pair.originals[s], x, false);
        for (const auto& [d, k] : gh.dims)
            if (d < 0 && k > 0) {
                out.aisle_witness = AisleWitness{s, d, k};
                out.in_aisle = false;
                break;
            }
    }
    out.in_heart = out.in_coaisle && out.in_aisle;
    return out;
}

/// Cohomological spread of a dual pair: the weak form asks the originals to
/// live in degrees <= 0 and the duals in degrees >= 0; the strong form asks
/// every object to be a module in degree zero.
struct RestrictionReport {
    bool weak = false;
    bool strong = false;
    std::vector<std::pair<std::optional<int>, std::optional<int>>> original_ranges;
    std::vector<std::pair<std::optional<int>, std::optional<int>>> dual_ranges;
};

template <class K>
RestrictionReport restriction_hypotheses(const DualPair<K>& pair) {
    RestrictionReport out;
    bool weak = true, strong = true;
    for (const auto& e : pair.originals) {
        auto r = cohomology_range(e);
        out.original_ranges.push_back(r);
        if (r.second && *r.second > 0) weak = false;
        if (!(r.first && *r.first == 0 && *r.second == 0)) strong = false;
    }
    for (const auto& f : pair.duals) {
        auto r = cohomology_range(f);
        out.dual_ranges.push_back(r);
        if (r.first && *r.first < 0) weak = false;
        if (!(r.first && *r.first == 0 && *r.second == 0)) strong = false;
    }
    out.weak = weak;
    out.strong = strong;
    return out;
}

namespace detail {

/// Fraction-free (Bareiss) determinant of a small integer matrix.
inline long long integer_determinant(std::vector<std::vector<long long>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    long long prev = 1;
    long long sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace detail

/// Conditions a full exceptional sequence must satisfy (they do not certify
/// fullness): as many objects as simples, and a unimodular matrix of classes.
struct FullnessCheck {
    bool length_matches = false;
    bool unimodular = false;
    long long det = 0;
    std::vector<std::vector<long long>> class_matrix;
    bool passes() const { return length_matches && unimodular; }
};

template <class K>
FullnessCheck fullness_necessary_conditions(const typename PathAlgebra<K>::Ptr& alg,
                                            const std::vector<ProjComplex<K>>& seq) {
    FullnessCheck out;
    out.length_matches = seq.size() == alg->quiver().vertex_count();
    for (const auto& e : seq) out.class_matrix.push_back(complex_class_vector(e));
    if (out.length_matches && !seq.empty()) {
        out.det = detail::integer_determinant(out.class_matrix);
        out.unimodular = out.det == 1 || out.det == -1;
    }
    return out;
}

} // namespace hwcat
