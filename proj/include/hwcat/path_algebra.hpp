#pragma once

// Finite-dimensional path algebras presented by a quiver and admissible
// relations.  Construction runs a Buchberger-style completion on the
// rewriting system induced by the relations (paths ordered by length, then
// lexicographically), enumerates the irreducible paths, certifies finite
// dimensionality against the length bound, and tabulates multiplication.
// The multiplication table is verified associative on all basis triples, so
// a successfully built algebra is a certified associative structure even if
// the input relations were pathological.

#include "hwcat/error.hpp"
#include "hwcat/field.hpp"
#include "hwcat/quiver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hwcat {

/// A linear combination of parallel paths, all of length >= 2.
template <class K>
struct Relation {
    std::vector<std::pair<K, Path>> terms;
};

/// Sparse element of a path algebra in its irreducible-path basis:
/// index/coefficient pairs, sorted by index, zero coefficients dropped.
template <class K>
class AlgElem {
public:
    AlgElem() = default;

    static AlgElem single(int index, const K& coeff) {
        AlgElem e;
        if (!coeff.is_zero()) e.terms_.emplace_back(index, coeff);
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<std::pair<int, K>>& terms() const { return terms_; }

    AlgElem operator+(const AlgElem& o) const {
        AlgElem r;
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first))
                r.terms_.push_back(terms_[i++]);
            else if (i == terms_.size() || o.terms_[j].first < terms_[i].first)
                r.terms_.push_back(o.terms_[j++]);
            else {
                K c = terms_[i].second + o.terms_[j].second;
                if (!c.is_zero()) r.terms_.emplace_back(terms_[i].first, c);
                ++i, ++j;
            }
        }
        return r;
    }

    AlgElem operator-(const AlgElem& o) const { return *this + o.scaled_neg(); }

    AlgElem scaled(const K& c) const {
        AlgElem r;
        if (c.is_zero()) return r;
        for (const auto& [i, x] : terms_) {
            K y = x * c;
            if (!y.is_zero()) r.terms_.emplace_back(i, y);
        }
        return r;
    }

    bool operator==(const AlgElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgElem& o) const { return !(*this == o); }

private:
    AlgElem scaled_neg() const {
        AlgElem r;
        for (const auto& [i, x] : terms_) r.terms_.emplace_back(i, -x);
        return r;
    }

    std::vector<std::pair<int, K>> terms_;
};

template <class K>
class PathAlgebra : public std::enable_shared_from_this<PathAlgebra<K>> {
public:
    using Ptr = std::shared_ptr<const PathAlgebra<K>>;
    using LinComb = std::map<Path, K>;

    /// Build the quotient of the path algebra of `quiver` by the ideal the
    /// `relations` generate.  Throws NotFiniteDimensional (with a witness
    /// path) if any irreducible path reaches `length_bound`, and
    /// IllFormedRelation for non-parallel or short relation terms.
    static Ptr build(Quiver quiver, std::vector<Relation<K>> relations, FieldCtx<K> ctx,
                     std::size_t length_bound = 50) {
        auto alg = std::shared_ptr<PathAlgebra>(new PathAlgebra());
        alg->quiver_ = std::move(quiver);
        alg->ctx_ = ctx;
        alg->length_bound_ = length_bound;
        alg->relations_ = std::move(relations);
        alg->construct();
        return alg;
    }

    const Quiver& quiver() const { return quiver_; }
    const FieldCtx<K>& ctx() const { return ctx_; }
    std::size_t length_bound() const { return length_bound_; }
    const std::vector<Relation<K>>& relations() const { return relations_; }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<Path>& basis() const { return basis_; }
    const Path& basis_path(int i) const { return basis_.at(i); }

    int basis_index(const Path& p) const {
        auto it = index_.find(p);
        require(it != index_.end(), ErrorKind::Internal,
                "path " + p.spell(quiver_) + " is not a basis path");
        return it->second;
    }

    /// Basis ids of paths that travel from `src` to `tgt`.
    const std::vector<int>& ids_from_to(int src, int tgt) const {
        return by_src_tgt_.at(src).at(tgt);
    }
    /// Basis ids of paths that start at `src` (a basis of the projective at src).
    const std::vector<int>& ids_from(int src) const { return by_src_.at(src); }
    /// Basis ids of paths that end at `tgt` (a basis of the injective at tgt, as labels).
    const std::vector<int>& ids_into(int tgt) const { return by_tgt_.at(tgt); }

    int trivial_id(int v) const { return basis_index(Path::trivial(v)); }
    int arrow_id(int a) const {
        return basis_index(Path::of_arrows(quiver_, {a}));
    }

    /// Table-driven product of basis elements: b_i after b_j.
    const AlgElem<K>& mult(int i, int j) const { return table_.at(i).at(j); }

    AlgElem<K> mult(const AlgElem<K>& x, const AlgElem<K>& y) const {
        AlgElem<K> r;
        for (const auto& [i, a] : x.terms())
            for (const auto& [j, b] : y.terms())
                r = r + mult(i, j).scaled(a * b);
        return r;
    }

    AlgElem<K> one() const {
        AlgElem<K> r;
        for (std::size_t v = 0; v < quiver_.vertex_count(); ++v)
            r = r + AlgElem<K>::single(trivial_id(static_cast<int>(v)), ctx_.one());
        return r;
    }

    /// Normal form of an arbitrary path of the free algebra, as an element.
    AlgElem<K> normal_form(const Path& p) const {
        LinComb c;
        c[p] = ctx_.one();
        LinComb r = reduce(c);
        AlgElem<K> e;
        for (const auto& [w, coeff] : r)
            e = e + AlgElem<K>::single(basis_index(w), coeff);
        return e;
    }

    std::string spell(int basis_id) const { return basis_.at(basis_id).spell(quiver_); }

    std::string show_elem(const AlgElem<K>& x) const {
        if (x.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [i, c] : x.terms()) {
            if (!first) os << " + ";
            first = false;
            if (!c.is_one()) os << show(c) << " ";
            os << spell(i);
        }
        return os.str();
    }

    /// The opposite algebra: reversed quiver, reversed relation words.
    /// Arrow and vertex names survive, so bases correspond by reversal.
    Ptr opposite() const {
        std::vector<Relation<K>> rels;
        rels.reserve(relations_.size());
        for (const Relation<K>& r : relations_) {
            Relation<K> rr;
            for (const auto& [c, p] : r.terms) {
                Path q;
                q.src = p.tgt;
                q.tgt = p.src;
                q.arrows.assign(p.arrows.rbegin(), p.arrows.rend());
                rr.terms.emplace_back(c, q);
            }
            rels.push_back(std::move(rr));
        }
        return build(quiver_.reversed(), std::move(rels), ctx_, length_bound_);
    }

private:
    PathAlgebra() = default;

    struct Rule {
        Path lead;
        LinComb rhs; // lead rewrites to rhs; every rhs path is < lead
    };

    // --- rewriting -------------------------------------------------------

    // first position at which `lead`'s arrow word occurs inside `w`, or -1
    static int find_occurrence(const Path& w, const Path& lead) {
        if (lead.arrows.size() > w.arrows.size()) return -1;
        std::size_t m = lead.arrows.size();
        for (std::size_t pos = 0; pos + m <= w.arrows.size(); ++pos) {
            bool hit = true;
            for (std::size_t k = 0; k < m; ++k)
                if (w.arrows[pos + k] != lead.arrows[k]) { hit = false; break; }
            if (hit) return static_cast<int>(pos);
        }
        return -1;
    }

    // replace the slice [pos, pos+m) of w by each path of rhs
    LinComb splice(const Path& w, std::size_t pos, std::size_t m, const LinComb& rhs,
                   const K& coeff) const {
        LinComb out;
        for (const auto& [t, c] : rhs) {
            Path r;
            r.arrows.assign(w.arrows.begin(), w.arrows.begin() + pos);
            r.arrows.insert(r.arrows.end(), t.arrows.begin(), t.arrows.end());
            r.arrows.insert(r.arrows.end(), w.arrows.begin() + pos + m, w.arrows.end());
            if (r.arrows.empty()) {
                r.src = r.tgt = w.src;
            } else {
                r.src = quiver_.arrow(r.arrows.front()).src;
                r.tgt = quiver_.arrow(r.arrows.back()).tgt;
            }
            add_term(out, r, coeff * c);
        }
        return out;
    }

    static void add_term(LinComb& c, const Path& p, const K& x) {
        if (x.is_zero()) return;
        auto it = c.find(p);
        if (it == c.end()) {
            c.emplace(p, x);
        } else {
            it->second = it->second + x;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    static void add_comb(LinComb& c, const LinComb& o) {
        for (const auto& [p, x] : o) add_term(c, p, x);
    }

    LinComb reduce(LinComb x) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = x.rbegin(); it != x.rend(); ++it) { // largest term first
                const Path w = it->first;
                const K coeff = it->second;
                for (const Rule& r : rules_) {
                    int pos = find_occurrence(w, r.lead);
                    if (pos < 0) continue;
                    x.erase(w);
                    add_comb(x, splice(w, static_cast<std::size_t>(pos), r.lead.arrows.size(),
                                       r.rhs, coeff));
                    changed = true;
                    break;
                }
                if (changed) break;
            }
        }
        return x;
    }

    // turn a fully reduced nonzero combination into a rule (monic lead)
    Rule make_rule(const LinComb& x) const {
        auto lead_it = std::prev(x.end());
        K inv = lead_it->second.inv();
        Rule r;
        r.lead = lead_it->first;
        for (auto it = x.begin(); it != lead_it; ++it)
            r.rhs.emplace(it->first, -(it->second * inv));
        return r;
    }

    void validate_relations() const {
        for (const Relation<K>& rel : relations_) {
            require(!rel.terms.empty(), ErrorKind::IllFormedRelation, "empty relation");
            const Path& p0 = rel.terms.front().second;
            for (const auto& [c, p] : rel.terms) {
                require(!c.is_zero(), ErrorKind::IllFormedRelation,
                        "zero coefficient in relation");
                require(p.length() >= 2, ErrorKind::IllFormedRelation,
                        "relation term " + p.spell(quiver_) + " has length < 2");
                require(p.src == p0.src && p.tgt == p0.tgt, ErrorKind::IllFormedRelation,
                        "relation terms " + p0.spell(quiver_) + " and " + p.spell(quiver_) +
                            " are not parallel");
                for (int a : p.arrows)
                    require(a >= 0 && a < static_cast<int>(quiver_.arrow_count()),
                            ErrorKind::UnknownArrow, "relation uses an unknown arrow");
            }
        }
    }

    void complete_rules() {
        for (const Relation<K>& rel : relations_) {
            LinComb c;
            for (const auto& [coeff, p] : rel.terms) add_term(c, p, coeff);
            LinComb red = reduce(std::move(c));
            if (!red.empty()) rules_.push_back(make_rule(red));
        }

        // Overlap ambiguities, processed by increasing S-word length.  The
        // cap keeps completion finite; it is generous enough that the basis
        // enumeration below and the associativity check stay sound for any
        // algebra that passes the finite-dimension certificate.
        const std::size_t cap = 2 * length_bound_ + 2;
        struct Amb {
            std::size_t len;
            std::size_t r1, r2;
            std::size_t pos; // occurrence position of r2's lead in the S-word
            Path word;
        };
        auto push_pair = [&](std::size_t i, std::size_t j, std::vector<Amb>& out) {
            const Path& a = rules_[i].lead;
            const Path& b = rules_[j].lead;
            // overlap: a suffix of `a` equals a prefix of `b`
            for (std::size_t s = 1; s < std::min(a.arrows.size(), b.arrows.size()) + 1; ++s) {
                if (s == a.arrows.size() && s == b.arrows.size()) continue; // identical lead
                if (s > a.arrows.size() || s > b.arrows.size()) break;
                bool hit = true;
                for (std::size_t k = 0; k < s; ++k)
                    if (a.arrows[a.arrows.size() - s + k] != b.arrows[k]) { hit = false; break; }
                if (!hit) continue;
                Path w;
                w.arrows.assign(a.arrows.begin(), a.arrows.end());
                w.arrows.insert(w.arrows.end(), b.arrows.begin() + s, b.arrows.end());
                w.src = quiver_.arrow(w.arrows.front()).src;
                w.tgt = quiver_.arrow(w.arrows.back()).tgt;
                if (w.arrows.size() > cap) continue;
                out.push_back(Amb{w.arrows.size(), i, j, a.arrows.size() - s, w});
            }
            // containment: `b` occurs strictly inside `a` (every position)
            if (b.arrows.size() < a.arrows.size()) {
                std::size_t m = b.arrows.size();
                for (std::size_t pos = 0; pos + m <= a.arrows.size(); ++pos) {
                    bool hit = true;
                    for (std::size_t k = 0; k < m; ++k)
                        if (a.arrows[pos + k] != b.arrows[k]) { hit = false; break; }
                    if (hit) out.push_back(Amb{a.arrows.size(), i, j, pos, a});
                }
            }
        };

        std::vector<Amb> queue;
        for (std::size_t i = 0; i < rules_.size(); ++i)
            for (std::size_t j = 0; j < rules_.size(); ++j) push_pair(i, j, queue);

        std::size_t processed = 0;
        while (processed < queue.size()) {
            std::stable_sort(queue.begin() + processed, queue.end(),
                             [](const Amb& x, const Amb& y) { return x.len < y.len; });
            Amb amb = queue[processed++];
            if (amb.r1 >= rules_.size() || amb.r2 >= rules_.size()) continue;
            const Rule& r1 = rules_[amb.r1];
            const Rule& r2 = rules_[amb.r2];
            // reduce the S-word via r1 at position 0 and via r2 at amb.pos
            int p1 = find_occurrence(amb.word, r1.lead);
            if (p1 < 0) continue;
            LinComb x1 = splice(amb.word, static_cast<std::size_t>(p1), r1.lead.arrows.size(),
                                r1.rhs, ctx_.one());
            LinComb x2 = splice(amb.word, amb.pos, r2.lead.arrows.size(), r2.rhs, ctx_.one());
            LinComb diff = std::move(x1);
            for (const auto& [p, c] : x2) add_term(diff, p, -c);
            diff = reduce(std::move(diff));
            if (diff.empty()) continue;
            rules_.push_back(make_rule(diff));
            std::size_t nw = rules_.size() - 1;
            for (std::size_t i = 0; i < nw; ++i) {
                push_pair(i, nw, queue);
                push_pair(nw, i, queue);
            }
            push_pair(nw, nw, queue);
        }
    }

    bool reducible(const Path& w) const {
        for (const Rule& r : rules_)
            if (find_occurrence(w, r.lead) >= 0) return true;
        return false;
    }

    void enumerate_basis() {
        std::vector<Path> frontier;
        for (std::size_t v = 0; v < quiver_.vertex_count(); ++v)
            frontier.push_back(Path::trivial(static_cast<int>(v)));
        basis_ = frontier;
        while (!frontier.empty()) {
            std::vector<Path> next;
            for (const Path& w : frontier) {
                for (std::size_t a = 0; a < quiver_.arrow_count(); ++a) {
                    const Arrow& ar = quiver_.arrow(static_cast<int>(a));
                    if (ar.src != w.tgt) continue;
                    Path w2 = w;
                    w2.arrows.push_back(static_cast<int>(a));
                    w2.tgt = ar.tgt;
                    // w is irreducible, so only suffixes ending at the new
                    // arrow can match a lead
                    bool red = false;
                    for (const Rule& r : rules_) {
                        std::size_t m = r.lead.arrows.size();
                        if (m > w2.arrows.size()) continue;
                        bool hit = true;
                        for (std::size_t k = 0; k < m; ++k)
                            if (w2.arrows[w2.arrows.size() - m + k] != r.lead.arrows[k]) {
                                hit = false;
                                break;
                            }
                        if (hit) { red = true; break; }
                    }
                    if (red) continue;
                    require(w2.arrows.size() < length_bound_, ErrorKind::NotFiniteDimensional,
                            "irreducible path " + w2.spell(quiver_) + " reaches the length bound " +
                                std::to_string(length_bound_));
                    next.push_back(w2);
                }
            }
            basis_.insert(basis_.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
        std::sort(basis_.begin(), basis_.end());
        for (std::size_t i = 0; i < basis_.size(); ++i)
            index_.emplace(basis_[i], static_cast<int>(i));
    }

    void tabulate() {
        std::size_t n = basis_.size();
        by_src_.assign(quiver_.vertex_count(), {});
        by_tgt_.assign(quiver_.vertex_count(), {});
        by_src_tgt_.assign(quiver_.vertex_count(),
                           std::vector<std::vector<int>>(quiver_.vertex_count()));
        for (std::size_t i = 0; i < n; ++i) {
            by_src_[basis_[i].src].push_back(static_cast<int>(i));
            by_tgt_[basis_[i].tgt].push_back(static_cast<int>(i));
            by_src_tgt_[basis_[i].src][basis_[i].tgt].push_back(static_cast<int>(i));
        }
        table_.assign(n, std::vector<AlgElem<K>>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Path& p = basis_[i];
                const Path& q = basis_[j];
                if (!composable(p, q)) continue;
                LinComb c;
                c[compose(p, q)] = ctx_.one();
                LinComb r = reduce(std::move(c));
                AlgElem<K> e;
                for (const auto& [w, coeff] : r) {
                    auto it = index_.find(w);
                    require(it != index_.end(), ErrorKind::Internal,
                            "normal form contains a non-basis path " + w.spell(quiver_));
                    e = e + AlgElem<K>::single(it->second, coeff);
                }
                table_[i][j] = std::move(e);
            }
    }

    void verify_table() const {
        std::size_t n = basis_.size();
        // identity
        AlgElem<K> id = one();
        for (std::size_t i = 0; i < n; ++i) {
            AlgElem<K> x = AlgElem<K>::single(static_cast<int>(i), ctx_.one());
            require(mult(id, x) == x && mult(x, id) == x, ErrorKind::Internal,
                    "identity fails on basis path " + spell(static_cast<int>(i)));
        }
        // associativity on all basis triples
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!composable(basis_[i], basis_[j])) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    if (!composable(basis_[j], basis_[k])) continue;
                    AlgElem<K> left = mult(table_[i][j], AlgElem<K>::single(static_cast<int>(k),
                                                                            ctx_.one()));
                    AlgElem<K> right = mult(AlgElem<K>::single(static_cast<int>(i), ctx_.one()),
                                            table_[j][k]);
                    require(left == right, ErrorKind::Internal,
                            "multiplication table not associative at (" + spell(i) + ", " +
                                spell(j) + ", " + spell(k) + ")");
                }
            }
    }

    void construct() {
        validate_relations();
        complete_rules();
        enumerate_basis();
        tabulate();
        verify_table();
    }

    std::string spell(std::size_t i) const { return basis_.at(i).spell(quiver_); }

    Quiver quiver_;
    FieldCtx<K> ctx_;
    std::size_t length_bound_ = 50;
    std::vector<Relation<K>> relations_;
    std::vector<Rule> rules_;
    std::vector<Path> basis_;
    std::map<Path, int> index_;
    std::vector<std::vector<int>> by_src_, by_tgt_;
    std::vector<std::vector<std::vector<int>>> by_src_tgt_;
    std::vector<std::vector<AlgElem<K>>> table_;
};

} // namespace hwcat
