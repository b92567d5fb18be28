#pragma once

// Plain-text formats.
//
// Algebra files are line oriented with explicit sections:
//
//   # comments run to the end of the line
//   FIELD q                  (or fp:<p>)
//   VERTICES 1 2 3
//   ARROWS
//     a: 1 -> 2
//     d: 3 -> 1
//   RELATIONS
//     a*d                    (path words compose right to left: d applies first)
//   BOUND 50                 (optional irreducible-path length bound)
//
// Sequence files hold one object descriptor per line.  A descriptor is one of
//
//   simple:<v>  proj:<v>  inj:<v>        (or the shorthands s<v>, p<v>, i<v>)
//   module (d_1,...,d_n) a=[[...],...]   (dimensions per vertex, matrices per arrow)
//   complex 0:(v,...) 1:(v,...) d0:[[entry,...],...]
//
// where module matrices list rows of field scalars (integers or n/d) and
// complex entries are linear combinations of path words.  In an inline
// sequence string, descriptors are separated by commas at top nesting level.

#include "hwcat/complex.hpp"
#include "hwcat/error.hpp"
#include "hwcat/field.hpp"
#include "hwcat/matrix.hpp"
#include "hwcat/module.hpp"
#include "hwcat/path_algebra.hpp"
#include "hwcat/quiver.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hwcat {

namespace fmt_detail {

[[noreturn]] inline void parse_fail_at(std::size_t line, std::size_t col, const std::string& msg) {
    fail(ErrorKind::ParseError,
         "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

struct Tok {
    enum class Kind { Word, Int, Punct, End };
    Kind kind = Kind::End;
    std::string s;
    std::size_t line = 1, col = 1;
};

[[noreturn]] inline void parse_fail(const Tok& t, const std::string& msg) {
    parse_fail_at(t.line, t.col, msg);
}

/// Scan a snippet into tokens: alphanumeric words, digit runs, and the fixed
/// punctuation set.  `#` starts a comment running to the end of the line.
inline std::vector<Tok> scan_text(const std::string& text, std::size_t first_line = 1) {
    std::vector<Tok> out;
    std::size_t line = first_line, col = 1, i = 0;
    const std::size_t n = text.size();
    auto is_word_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < n) {
        char ch = text[i];
        if (ch == '\n') { ++line; col = 1; ++i; continue; }
        if (ch == ' ' || ch == '\t' || ch == '\r') { ++col; ++i; continue; }
        if (ch == '#') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        std::size_t c0 = col;
        if (is_word_start(ch)) {
            std::string w;
            while (i < n && is_word_char(text[i])) { w += text[i]; ++i; ++col; }
            out.push_back({Tok::Kind::Word, std::move(w), line, c0});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string w;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) { w += text[i]; ++i; ++col; }
            out.push_back({Tok::Kind::Int, std::move(w), line, c0});
            continue;
        }
        if (ch == '-' && i + 1 < n && text[i + 1] == '>') {
            out.push_back({Tok::Kind::Punct, "->", line, c0});
            i += 2; col += 2;
            continue;
        }
        static const std::string punct = ":()[]{},;=*+-/";
        if (punct.find(ch) != std::string::npos) {
            out.push_back({Tok::Kind::Punct, std::string(1, ch), line, c0});
            ++i; ++col;
            continue;
        }
        parse_fail_at(line, c0, std::string("unexpected character '") + ch + "'");
    }
    out.push_back({Tok::Kind::End, "", line, col});
    return out;
}

/// Token cursor with single- and double-token lookahead.
class Cursor {
public:
    explicit Cursor(std::vector<Tok> toks) : toks_(std::move(toks)) {}

    const Tok& peek(std::size_t ahead = 0) const {
        std::size_t j = i_ + ahead;
        return j < toks_.size() ? toks_[j] : toks_.back();
    }
    const Tok& next() {
        const Tok& t = peek();
        if (i_ + 1 < toks_.size()) ++i_;
        return t;
    }
    bool at_end() const { return peek().kind == Tok::Kind::End; }

    bool eat_punct(const std::string& p) {
        if (peek().kind == Tok::Kind::Punct && peek().s == p) { next(); return true; }
        return false;
    }
    void expect_punct(const std::string& p, const std::string& what) {
        if (!eat_punct(p)) parse_fail(peek(), "expected '" + p + "' " + what);
    }
    void expect_end(const std::string& what) {
        if (!at_end()) parse_fail(peek(), "unexpected trailing tokens " + what);
    }

private:
    std::vector<Tok> toks_;
    std::size_t i_ = 0;
};

inline long parse_long(Cursor& c, const std::string& what) {
    const Tok& t = c.peek();
    if (t.kind != Tok::Kind::Int) parse_fail(t, "expected a number " + what);
    try {
        long v = std::stol(t.s);
        c.next();
        return v;
    } catch (const std::exception&) {
        parse_fail(t, "number out of range " + what);
    }
}

/// A field scalar: [-] integer [/ positive-integer].
template <class K>
K parse_scalar(Cursor& c, const FieldCtx<K>& ctx) {
    bool neg = c.eat_punct("-");
    long num = parse_long(c, "as a scalar");
    long den = 1;
    if (c.eat_punct("/")) {
        const Tok& t = c.peek();
        den = parse_long(c, "as a denominator");
        if (den == 0) parse_fail(t, "zero denominator");
    }
    K v = den == 1 ? ctx.from_long(num) : ctx.from_ratio(num, den);
    return neg ? ctx.zero() - v : v;
}

inline int vertex_of(const Quiver& q, const Tok& t) {
    if (t.kind != Tok::Kind::Word && t.kind != Tok::Kind::Int)
        parse_fail(t, "expected a vertex name");
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
        if (q.vertices()[v] == t.s) return static_cast<int>(v);
    parse_fail(t, "unknown vertex '" + t.s + "'");
}

/// A path word: arrow names (or trivial paths e_<v>) joined by '*', composing
/// right to left — the rightmost factor applies first.
inline Path parse_word(Cursor& c, const Quiver& q) {
    std::vector<Path> atoms;
    const Tok start = c.peek();
    for (;;) {
        const Tok& t = c.peek();
        if (t.kind != Tok::Kind::Word) parse_fail(t, "expected an arrow name");
        bool found = false;
        for (std::size_t a = 0; a < q.arrow_count(); ++a)
            if (q.arrows()[a].name == t.s) {
                atoms.push_back(Path::of_arrows(q, {static_cast<int>(a)}));
                found = true;
                break;
            }
        if (!found) {
            if (t.s.size() > 2 && t.s.rfind("e_", 0) == 0) {
                std::string vname = t.s.substr(2);
                bool is_vertex = false;
                for (std::size_t v = 0; v < q.vertex_count(); ++v)
                    if (q.vertices()[v] == vname) {
                        atoms.push_back(Path::trivial(static_cast<int>(v)));
                        is_vertex = true;
                        break;
                    }
                if (!is_vertex) parse_fail(t, "unknown vertex in trivial path '" + t.s + "'");
            } else {
                parse_fail(t, "unknown arrow '" + t.s + "'");
            }
        }
        c.next();
        if (c.peek().kind == Tok::Kind::Punct && c.peek().s == "*" &&
            c.peek(1).kind == Tok::Kind::Word) {
            c.next();
            continue;
        }
        break;
    }
    Path acc = atoms.back();
    for (std::size_t k = atoms.size() - 1; k-- > 0;) {
        if (!composable(atoms[k], acc))
            parse_fail(start, "path word does not compose (consecutive arrows do not meet)");
        acc = compose(atoms[k], acc);
    }
    return acc;
}

/// A linear combination of path words, e.g. "a*d - 2*c" or "0".  Stops at
/// ',', ']', ')', ';', '=' or the end of input.
template <class K>
std::vector<std::pair<K, Path>> parse_elem_terms(Cursor& c, const Quiver& q,
                                                 const FieldCtx<K>& ctx) {
    std::vector<std::pair<K, Path>> terms;
    auto at_stop = [&]() {
        const Tok& t = c.peek();
        if (t.kind == Tok::Kind::End) return true;
        if (t.kind != Tok::Kind::Punct) return false;
        return t.s == "," || t.s == "]" || t.s == ")" || t.s == ";" || t.s == "=";
    };
    bool first = true;
    while (!at_stop()) {
        bool neg = false;
        if (!first) {
            if (c.eat_punct("+")) {
            } else if (c.eat_punct("-")) {
                neg = true;
            } else {
                parse_fail(c.peek(), "expected '+' or '-' between terms");
            }
        }
        if (c.eat_punct("-")) neg = !neg;
        first = false;

        K coeff = ctx.one();
        bool have_word = true;
        if (c.peek().kind == Tok::Kind::Int) {
            coeff = parse_scalar(c, ctx);
            if (c.eat_punct("*")) {
                have_word = true;
            } else {
                if (!coeff.is_zero())
                    parse_fail(c.peek(), "a nonzero scalar must multiply a path word");
                have_word = false;
            }
        }
        if (!have_word) continue;
        Path p = parse_word(c, q);
        if (neg) coeff = ctx.zero() - coeff;
        if (!coeff.is_zero()) terms.emplace_back(std::move(coeff), std::move(p));
    }
    return terms;
}

/// Split text into lines, 1-based.
inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    lines.push_back(cur);
    return lines;
}

} // namespace fmt_detail

// ---------------------------------------------------------------------------
// algebra files

/// The FIELD spec declared in an algebra file ("q" or "fp:<p>"), if any.
inline std::optional<std::string> algebra_field_spec(const std::string& text) {
    using namespace fmt_detail;
    std::vector<std::string> lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        Cursor c(scan_text(lines[ln], ln + 1));
        if (c.peek().kind == Tok::Kind::Word && c.peek().s == "FIELD") {
            c.next();
            const Tok& t = c.peek();
            if (t.kind != Tok::Kind::Word) parse_fail(t, "expected a field spec after FIELD");
            if (t.s == "q") {
                c.next();
                c.expect_end("after the field spec");
                return std::string("q");
            }
            if (t.s == "fp") {
                c.next();
                c.expect_punct(":", "in the field spec fp:<p>");
                long p = parse_long(c, "as the field characteristic");
                c.expect_end("after the field spec");
                if (p < 2) parse_fail(t, "field characteristic must be at least 2");
                return "fp:" + std::to_string(p);
            }
            parse_fail(t, "unknown field spec '" + t.s + "' (use q or fp:<p>)");
        }
    }
    return std::nullopt;
}

/// Parse an algebra file over the given field context.  The file's FIELD
/// section must agree with the context.  Errors: ParseError with line and
/// column; IllFormedRelation and NotFiniteDimensional pass through from the
/// algebra construction.
template <class K>
typename PathAlgebra<K>::Ptr parse_algebra(const std::string& text, FieldCtx<K> ctx,
                                           std::size_t default_bound = 50) {
    using namespace fmt_detail;
    std::vector<std::string> lines = split_lines(text);

    bool seen_field = false;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation<K>> relations;
    std::size_t bound = default_bound;
    std::optional<Quiver> quiver;

    enum class Section { None, Arrows, Relations };
    Section section = Section::None;

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        Cursor c(scan_text(lines[ln], ln + 1));
        if (c.at_end()) continue;
        const Tok head = c.peek();

        if (head.kind == Tok::Kind::Word && head.s == "FIELD") {
            if (seen_field) parse_fail(head, "duplicate FIELD section");
            c.next();
            const Tok& ft = c.peek();
            if (ft.kind != Tok::Kind::Word) parse_fail(ft, "expected a field spec after FIELD");
            std::string spec;
            if (ft.s == "q") {
                spec = "q";
                c.next();
            } else if (ft.s == "fp") {
                c.next();
                c.expect_punct(":", "in the field spec fp:<p>");
                long p = parse_long(c, "as the field characteristic");
                if (p < 2) parse_fail(ft, "field characteristic must be at least 2");
                spec = "fp:" + std::to_string(p);
            } else {
                parse_fail(ft, "unknown field spec '" + ft.s + "' (use q or fp:<p>)");
            }
            c.expect_end("after the field spec");
            if (spec != ctx.describe())
                parse_fail(head, "file declares field " + spec + " but parsing over " +
                                     ctx.describe());
            seen_field = true;
            section = Section::None;
            continue;
        }
        if (head.kind == Tok::Kind::Word && head.s == "VERTICES") {
            if (quiver.has_value()) parse_fail(head, "VERTICES section after RELATIONS");
            c.next();
            while (!c.at_end()) {
                const Tok& t = c.peek();
                if (t.kind != Tok::Kind::Word && t.kind != Tok::Kind::Int)
                    parse_fail(t, "expected a vertex name");
                vertices.push_back(t.s);
                c.next();
            }
            section = Section::None;
            continue;
        }
        if (head.kind == Tok::Kind::Word && head.s == "ARROWS") {
            if (quiver.has_value()) parse_fail(head, "ARROWS section after RELATIONS");
            c.next();
            c.expect_end("after ARROWS");
            section = Section::Arrows;
            continue;
        }
        if (head.kind == Tok::Kind::Word && head.s == "RELATIONS") {
            c.next();
            c.expect_end("after RELATIONS");
            section = Section::Relations;
            continue;
        }
        if (head.kind == Tok::Kind::Word && head.s == "BOUND") {
            c.next();
            long b = parse_long(c, "after BOUND");
            c.expect_end("after the bound");
            if (b < 1) parse_fail(head, "bound must be positive");
            bound = static_cast<std::size_t>(b);
            section = Section::None;
            continue;
        }

        if (section == Section::Arrows) {
            const Tok& nt = c.peek();
            if (nt.kind != Tok::Kind::Word)
                parse_fail(nt, "expected an arrow name (arrow names start with a letter)");
            std::string name = nt.s;
            c.next();
            c.expect_punct(":", "after the arrow name");
            const Tok st = c.peek();
            if (st.kind != Tok::Kind::Word && st.kind != Tok::Kind::Int)
                parse_fail(st, "expected the source vertex");
            c.next();
            c.expect_punct("->", "between source and target");
            const Tok tt = c.peek();
            if (tt.kind != Tok::Kind::Word && tt.kind != Tok::Kind::Int)
                parse_fail(tt, "expected the target vertex");
            c.next();
            c.expect_end("after the arrow");
            auto find_vertex = [&](const Tok& t) {
                for (std::size_t v = 0; v < vertices.size(); ++v)
                    if (vertices[v] == t.s) return static_cast<int>(v);
                parse_fail(t, "unknown vertex '" + t.s + "'");
            };
            arrows.push_back(Arrow{name, find_vertex(st), find_vertex(tt)});
            continue;
        }
        if (section == Section::Relations) {
            if (!quiver.has_value()) quiver.emplace(vertices, arrows);
            auto terms = parse_elem_terms(c, *quiver, ctx);
            if (c.eat_punct("=")) {
                const Tok& z = c.peek();
                if (z.kind != Tok::Kind::Int || z.s != "0")
                    parse_fail(z, "a relation may only be set equal to 0");
                c.next();
            }
            c.expect_end("after the relation");
            if (!terms.empty()) relations.push_back(Relation<K>{std::move(terms)});
            continue;
        }
        parse_fail(head, "expected a section keyword (FIELD, VERTICES, ARROWS, RELATIONS, BOUND)");
    }

    if (!seen_field) fmt_detail::parse_fail_at(lines.size(), 1, "missing FIELD section");
    if (vertices.empty()) fmt_detail::parse_fail_at(lines.size(), 1, "missing VERTICES section");
    if (!quiver.has_value()) quiver.emplace(vertices, arrows);
    return PathAlgebra<K>::build(std::move(*quiver), std::move(relations), ctx, bound);
}

/// Read and parse an algebra file from disk.
template <class K>
typename PathAlgebra<K>::Ptr parse_algebra_file(const std::string& path, FieldCtx<K> ctx,
                                                std::size_t default_bound = 50) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::ParseError, "cannot read algebra file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra<K>(buf.str(), ctx, default_bound);
}

/// Read a whole file into a string (for field-spec peeking).
inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::ParseError, "cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace fmt_detail {

template <class K>
std::string spell_terms(const PathAlgebra<K>& alg, const std::vector<std::pair<K, Path>>& terms) {
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) s += " + ";
        const auto& [c, p] = terms[i];
        if (!c.is_one()) s += show(c) + "*";
        s += p.spell(alg.quiver());
    }
    return s.empty() ? "0" : s;
}

} // namespace fmt_detail

/// Emit an algebra as a parsable file.  Deterministic: sections in fixed
/// order, vertices, arrows and relations in stored order, so that parsing the
/// output reproduces the identical basis and multiplication table.
template <class K>
std::string emit_algebra(const PathAlgebra<K>& alg) {
    const Quiver& q = alg.quiver();
    std::ostringstream os;
    os << "# path algebra description\n";
    os << "# path words compose right to left: in a*d, arrow d applies first\n";
    os << "FIELD " << alg.ctx().describe() << "\n";
    os << "VERTICES";
    for (const std::string& v : q.vertices()) os << " " << v;
    os << "\n";
    if (q.arrow_count() > 0) {
        os << "ARROWS\n";
        for (const Arrow& a : q.arrows())
            os << "  " << a.name << ": " << q.vertex_name(a.src) << " -> " << q.vertex_name(a.tgt)
               << "\n";
    }
    if (!alg.relations().empty()) {
        os << "RELATIONS\n";
        for (const Relation<K>& r : alg.relations())
            os << "  " << fmt_detail::spell_terms(alg, r.terms) << "\n";
    }
    os << "BOUND " << alg.length_bound() << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// sequence descriptors

/// One parsed object descriptor: either a module or a bounded complex of
/// projectives over the fixed algebra.
template <class K>
struct SequenceObject {
    std::string source;
    std::optional<Module<K>> module;
    std::optional<ProjComplex<K>> complex;

    bool is_module() const { return module.has_value(); }

    /// The object as a module; a complex descriptor qualifies only when its
    /// cohomology is concentrated in degree zero.
    Module<K> to_module() const {
        if (module.has_value()) return *module;
        std::optional<Module<K>> m = as_module(*complex);
        require(m.has_value(), ErrorKind::NonModuleStandard,
                "descriptor '" + source + "' is not concentrated in degree zero");
        return *m;
    }

    /// The object as a complex of projectives (modules are resolved).
    ProjComplex<K> to_complex(std::size_t bound = 40) const {
        if (complex.has_value()) return *complex;
        return modeled_module(*module, bound).cx;
    }
};

namespace fmt_detail {

template <class K>
Matrix<K> parse_matrix(Cursor& c, const FieldCtx<K>& ctx) {
    const Tok open = c.peek();
    c.expect_punct("[", "to open a matrix");
    std::vector<std::vector<K>> rows;
    if (!c.eat_punct("]")) {
        for (;;) {
            c.expect_punct("[", "to open a matrix row");
            std::vector<K> row;
            if (!c.eat_punct("]")) {
                for (;;) {
                    row.push_back(parse_scalar(c, ctx));
                    if (c.eat_punct(",")) continue;
                    c.expect_punct("]", "to close the matrix row");
                    break;
                }
            }
            rows.push_back(std::move(row));
            if (c.eat_punct(",")) continue;
            c.expect_punct("]", "to close the matrix");
            break;
        }
    }
    std::size_t nr = rows.size(), nc = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
        if (r.size() != nc) parse_fail(open, "matrix rows have unequal lengths");
    Matrix<K> m(nr, nc, ctx);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
    return m;
}

template <class K>
Module<K> parse_module_literal(Cursor& c, const typename PathAlgebra<K>::Ptr& alg) {
    const Quiver& q = alg->quiver();
    const FieldCtx<K>& ctx = alg->ctx();
    const Tok open = c.peek();
    c.expect_punct("(", "to open the dimension tuple");
    std::vector<std::size_t> dims;
    if (!c.eat_punct(")")) {
        for (;;) {
            long d = parse_long(c, "as a dimension");
            if (d < 0) parse_fail(open, "dimensions must be nonnegative");
            dims.push_back(static_cast<std::size_t>(d));
            if (c.eat_punct(",")) continue;
            c.expect_punct(")", "to close the dimension tuple");
            break;
        }
    }
    if (dims.size() != q.vertex_count())
        parse_fail(open, "expected " + std::to_string(q.vertex_count()) +
                             " dimensions, got " + std::to_string(dims.size()));

    std::vector<Matrix<K>> acts;
    std::vector<bool> assigned(q.arrow_count(), false);
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        acts.emplace_back(dims[q.arrows()[a].tgt], dims[q.arrows()[a].src], ctx);

    while (!c.at_end() && !(c.peek().kind == Tok::Kind::Punct)) {
        const Tok& nt = c.peek();
        if (nt.kind != Tok::Kind::Word) parse_fail(nt, "expected an arrow name");
        int a = -1;
        for (std::size_t k = 0; k < q.arrow_count(); ++k)
            if (q.arrows()[k].name == nt.s) a = static_cast<int>(k);
        if (a < 0) parse_fail(nt, "unknown arrow '" + nt.s + "'");
        if (assigned[a]) parse_fail(nt, "arrow '" + nt.s + "' assigned twice");
        assigned[a] = true;
        c.next();
        c.expect_punct("=", "after the arrow name");
        Matrix<K> m = parse_matrix(c, ctx);
        const Arrow& ar = q.arrows()[a];
        std::size_t want_r = dims[ar.tgt], want_c = dims[ar.src];
        bool empty_ok = m.rows() == 0 && (want_r == 0 || want_c == 0);
        if (!empty_ok && (m.rows() != want_r || m.cols() != want_c))
            parse_fail(nt, "matrix for arrow '" + nt.s + "' must be " + std::to_string(want_r) +
                               "x" + std::to_string(want_c) + ", got " + std::to_string(m.rows()) +
                               "x" + std::to_string(m.cols()));
        if (!empty_ok) acts[a] = std::move(m);
    }
    return Module<K>(alg, std::move(dims), std::move(acts));
}

template <class K>
ProjComplex<K> parse_complex_literal(Cursor& c, const typename PathAlgebra<K>::Ptr& alg) {
    const Quiver& q = alg->quiver();
    const FieldCtx<K>& ctx = alg->ctx();
    std::map<int, std::vector<int>> terms;
    struct RawDiff {
        Tok at;
        int degree;
        std::vector<std::vector<AlgElem<K>>> entries;
    };
    std::vector<RawDiff> raw_diffs;

    auto parse_degree = [&]() -> int {
        bool neg = c.eat_punct("-");
        long d = parse_long(c, "as a degree");
        return static_cast<int>(neg ? -d : d);
    };

    while (!c.at_end()) {
        const Tok head = c.peek();
        if (head.kind == Tok::Kind::Int || (head.kind == Tok::Kind::Punct && head.s == "-")) {
            int deg = parse_degree();
            c.expect_punct(":", "after the degree");
            c.expect_punct("(", "to open the term list");
            std::vector<int> verts;
            if (!c.eat_punct(")")) {
                for (;;) {
                    verts.push_back(vertex_of(q, c.peek()));
                    c.next();
                    if (c.eat_punct(",")) continue;
                    c.expect_punct(")", "to close the term list");
                    break;
                }
            }
            if (terms.count(deg)) parse_fail(head, "degree given twice");
            if (!verts.empty()) terms[deg] = std::move(verts);
            continue;
        }
        if (head.kind == Tok::Kind::Word && head.s.size() >= 1 && head.s[0] == 'd') {
            int deg = 0;
            if (head.s == "d") {
                c.next();
                deg = parse_degree();
            } else {
                bool digits = true;
                for (std::size_t k = 1; k < head.s.size(); ++k)
                    digits = digits && std::isdigit(static_cast<unsigned char>(head.s[k]));
                if (!digits) parse_fail(head, "expected a degree block or a differential block");
                deg = std::stoi(head.s.substr(1));
                c.next();
            }
            c.expect_punct(":", "after the differential label");
            c.expect_punct("[", "to open the differential matrix");
            std::vector<std::vector<AlgElem<K>>> entries;
            if (!c.eat_punct("]")) {
                for (;;) {
                    c.expect_punct("[", "to open a differential row");
                    std::vector<AlgElem<K>> row;
                    if (!c.eat_punct("]")) {
                        for (;;) {
                            auto ts = parse_elem_terms(c, q, ctx);
                            AlgElem<K> e;
                            for (const auto& [coeff, p] : ts)
                                e = e + alg->normal_form(p).scaled(coeff);
                            row.push_back(std::move(e));
                            if (c.eat_punct(",")) continue;
                            c.expect_punct("]", "to close the differential row");
                            break;
                        }
                    }
                    entries.push_back(std::move(row));
                    if (c.eat_punct(",")) continue;
                    c.expect_punct("]", "to close the differential matrix");
                    break;
                }
            }
            raw_diffs.push_back(RawDiff{head, deg, std::move(entries)});
            continue;
        }
        parse_fail(head, "expected a degree block N:(...) or a differential block dN:[[...]]");
    }

    std::map<int, AMat<K>> diffs;
    for (RawDiff& rd : raw_diffs) {
        auto src_it = terms.find(rd.degree);
        auto tgt_it = terms.find(rd.degree + 1);
        std::vector<int> src = src_it == terms.end() ? std::vector<int>{} : src_it->second;
        std::vector<int> tgt = tgt_it == terms.end() ? std::vector<int>{} : tgt_it->second;
        if (rd.entries.size() != tgt.size())
            parse_fail(rd.at, "differential must have " + std::to_string(tgt.size()) +
                                  " rows, got " + std::to_string(rd.entries.size()));
        AMat<K> m(alg, tgt, src);
        for (std::size_t i = 0; i < rd.entries.size(); ++i) {
            if (rd.entries[i].size() != src.size())
                parse_fail(rd.at, "differential rows must have " + std::to_string(src.size()) +
                                      " entries, got " + std::to_string(rd.entries[i].size()));
            for (std::size_t j = 0; j < src.size(); ++j) m.at(i, j) = std::move(rd.entries[i][j]);
        }
        diffs.emplace(rd.degree, std::move(m));
    }
    return ProjComplex<K>(alg, std::move(terms), std::move(diffs));
}

} // namespace fmt_detail

/// Parse one object descriptor against an algebra.
template <class K>
SequenceObject<K> parse_object(const typename PathAlgebra<K>::Ptr& alg, const std::string& text,
                               std::size_t line_no = 1) {
    using namespace fmt_detail;
    const Quiver& q = alg->quiver();
    Cursor c(scan_text(text, line_no));
    const Tok head = c.peek();
    if (head.kind != Tok::Kind::Word) parse_fail(head, "expected an object descriptor");

    SequenceObject<K> out;
    out.source = text;

    auto vertex_arg = [&](const std::string& what) {
        c.expect_punct(":", "after " + what);
        int v = vertex_of(q, c.peek());
        c.next();
        return v;
    };

    if (head.s == "simple") {
        c.next();
        out.module = Module<K>::simple(alg, vertex_arg("simple"));
    } else if (head.s == "proj") {
        c.next();
        out.module = Module<K>::projective(alg, vertex_arg("proj"));
    } else if (head.s == "inj") {
        c.next();
        out.module = Module<K>::injective(alg, vertex_arg("inj"));
    } else if (head.s == "module") {
        c.next();
        out.module = parse_module_literal<K>(c, alg);
    } else if (head.s == "complex") {
        c.next();
        out.complex = parse_complex_literal<K>(c, alg);
    } else if (head.s.size() >= 2 && (head.s[0] == 's' || head.s[0] == 'p' || head.s[0] == 'i')) {
        std::string vname = head.s.substr(1);
        int v = -1;
        for (std::size_t k = 0; k < q.vertex_count(); ++k)
            if (q.vertices()[k] == vname) v = static_cast<int>(k);
        if (v < 0) parse_fail(head, "unknown descriptor '" + head.s + "'");
        c.next();
        if (head.s[0] == 's') out.module = Module<K>::simple(alg, v);
        if (head.s[0] == 'p') out.module = Module<K>::projective(alg, v);
        if (head.s[0] == 'i') out.module = Module<K>::injective(alg, v);
    } else {
        parse_fail(head, "unknown descriptor '" + head.s + "'");
    }
    c.expect_end("after the descriptor");
    return out;
}

/// Split an inline sequence string on commas at top nesting level.
inline std::vector<std::string> split_inline_sequence(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(' || ch == '[' || ch == '{') ++depth;
        if (ch == ')' || ch == ']' || ch == '}') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    // trim whitespace, drop empties
    std::vector<std::string> out;
    for (std::string& p : parts) {
        std::size_t b = p.find_first_not_of(" \t");
        std::size_t e = p.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(p.substr(b, e - b + 1));
    }
    return out;
}

/// Parse an inline comma-separated sequence, e.g. "s3,p2,p1".
template <class K>
std::vector<SequenceObject<K>> parse_inline_sequence(const typename PathAlgebra<K>::Ptr& alg,
                                                     const std::string& text) {
    std::vector<SequenceObject<K>> out;
    for (const std::string& item : split_inline_sequence(text))
        out.push_back(parse_object<K>(alg, item));
    require(!out.empty(), ErrorKind::ParseError, "empty object sequence");
    return out;
}

/// Parse a sequence file: one descriptor per line, comments and blanks
/// skipped.
template <class K>
std::vector<SequenceObject<K>> parse_sequence_text(const typename PathAlgebra<K>::Ptr& alg,
                                                   const std::string& text) {
    using namespace fmt_detail;
    std::vector<SequenceObject<K>> out;
    std::vector<std::string> lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        Cursor probe(scan_text(lines[ln], ln + 1));
        if (probe.at_end()) continue;
        out.push_back(parse_object<K>(alg, lines[ln], ln + 1));
    }
    require(!out.empty(), ErrorKind::ParseError, "empty object sequence");
    return out;
}

} // namespace hwcat
