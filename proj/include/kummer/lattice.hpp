// lattice.hpp
//
// Picard lattice of a Jacobian Kummer surface, presented on the 32
// standard (-2)-curves: the 16 nodes E0, Eij (1 <= i < j <= 6) and the
// 16 tropes Ti (1 <= i <= 6), Tij6 (1 <= i < j <= 5).  Provides the
// Gram matrix of the intersection form, pairing, self-intersection,
// linear-equivalence testing (Gram-kernel), exact integer rank, and the
// divisor-expression grammar.

#ifndef KUMMER_LATTICE_HPP
#define KUMMER_LATTICE_HPP

#include <array>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kummer {

inline constexpr int kGeneratorCount = 32;
inline constexpr int kNodeCount = 16;
inline constexpr int kTropeCount = 16;

enum class CurveKind { node, trope };

struct Generator {
    CurveKind kind;
    std::string label;  // canonical name, no underscores: E0, E12, T3, T126
    int index;          // basis position 0..31
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("64-bit overflow in lattice arithmetic");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("64-bit overflow in lattice arithmetic");
    return r;
}

}  // namespace detail

// Integer coefficient vector over the fixed 32-generator basis.
struct DivisorClass {
    std::array<std::int64_t, kGeneratorCount> coeffs{};

    bool operator==(const DivisorClass&) const = default;

    bool is_zero() const {
        for (auto c : coeffs)
            if (c != 0) return false;
        return true;
    }

    bool is_effective() const {
        for (auto c : coeffs)
            if (c < 0) return false;
        return true;
    }

    // Sum of coefficients (total degree of a node/trope sum).
    std::int64_t degree() const {
        std::int64_t d = 0;
        for (auto c : coeffs) d = detail::checked_add(d, c);
        return d;
    }

    static DivisorClass unit(int index) {
        DivisorClass d;
        d.coeffs.at(static_cast<std::size_t>(index)) = 1;
        return d;
    }
};

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    DivisorClass r;
    for (int i = 0; i < kGeneratorCount; ++i)
        r.coeffs[i] = detail::checked_add(a.coeffs[i], b.coeffs[i]);
    return r;
}

inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    DivisorClass r;
    for (int i = 0; i < kGeneratorCount; ++i)
        r.coeffs[i] = detail::checked_add(a.coeffs[i], -b.coeffs[i]);
    return r;
}

inline DivisorClass operator*(std::int64_t k, const DivisorClass& a) {
    DivisorClass r;
    for (int i = 0; i < kGeneratorCount; ++i)
        r.coeffs[i] = detail::checked_mul(k, a.coeffs[i]);
    return r;
}

// Immutable once built; safe to share across threads.
struct LatticeContext {
    std::array<std::array<std::int64_t, kGeneratorCount>, kGeneratorCount> gram{};
    std::array<int, kGeneratorCount> theta_perm{};
    std::vector<Generator> basis;
    std::unordered_map<std::string, int> index_by_label;
};

namespace detail {

// Weierstrass-index subset of each generator, as a bitmask over bits 1..6.
// E0 is the lone node with an empty mask and is special-cased below.
struct GeneratorKey {
    CurveKind kind;
    unsigned mask;
};

inline std::vector<GeneratorKey> generator_keys() {
    std::vector<GeneratorKey> keys;
    keys.push_back({CurveKind::node, 0u});  // E0
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            keys.push_back({CurveKind::node, (1u << i) | (1u << j)});
    for (int i = 1; i <= 6; ++i)
        keys.push_back({CurveKind::trope, 1u << i});
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j)
            keys.push_back({CurveKind::trope, (1u << i) | (1u << j) | (1u << 6)});
    return keys;
}

inline std::vector<std::string> generator_labels() {
    std::vector<std::string> labels;
    labels.push_back("E0");
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            labels.push_back("E" + std::to_string(i) + std::to_string(j));
    for (int i = 1; i <= 6; ++i)
        labels.push_back("T" + std::to_string(i));
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j)
            labels.push_back("T" + std::to_string(i) + std::to_string(j) + "6");
    return labels;
}

// Node-trope incidence: E0 meets exactly the six Ti; Eij meets Tk iff
// k in {i,j}; Eij meets Tkl6 iff {i,j} is contained in {k,l,6} or
// disjoint from it.
inline std::int64_t node_trope_entry(const GeneratorKey& node, const GeneratorKey& trope) {
    const bool single_index_trope = __builtin_popcount(trope.mask) == 1;
    if (node.mask == 0)  // E0
        return single_index_trope ? 1 : 0;
    const unsigned common = node.mask & trope.mask;
    if (single_index_trope)
        return common != 0 ? 1 : 0;
    return (common == node.mask || common == 0) ? 1 : 0;
}

}  // namespace detail

inline LatticeContext build_context() {
    LatticeContext ctx;
    const auto keys = detail::generator_keys();
    const auto labels = detail::generator_labels();

    for (int i = 0; i < kGeneratorCount; ++i) {
        ctx.basis.push_back({keys[i].kind, labels[i], i});
        ctx.index_by_label.emplace(labels[i], i);
    }

    for (int i = 0; i < kGeneratorCount; ++i) {
        for (int j = 0; j < kGeneratorCount; ++j) {
            if (i == j) {
                ctx.gram[i][j] = -2;
            } else if (keys[i].kind == keys[j].kind) {
                ctx.gram[i][j] = 0;  // each family is mutually disjoint
            } else if (keys[i].kind == CurveKind::node) {
                ctx.gram[i][j] = detail::node_trope_entry(keys[i], keys[j]);
            } else {
                ctx.gram[i][j] = detail::node_trope_entry(keys[j], keys[i]);
            }
        }
    }

    // The Enriques involution swaps nodes and tropes pairwise.
    static constexpr const char* kThetaPairs[16][2] = {
        {"E0", "T456"},  {"E12", "T3"},   {"E13", "T2"},   {"E14", "T156"},
        {"E15", "T146"}, {"E16", "T236"}, {"E23", "T1"},   {"E24", "T256"},
        {"E25", "T246"}, {"E26", "T136"}, {"E34", "T356"}, {"E35", "T346"},
        {"E36", "T126"}, {"E45", "T6"},   {"E46", "T5"},   {"E56", "T4"},
    };
    for (const auto& p : kThetaPairs) {
        const int a = ctx.index_by_label.at(p[0]);
        const int b = ctx.index_by_label.at(p[1]);
        ctx.theta_perm[a] = b;
        ctx.theta_perm[b] = a;
    }
    return ctx;
}

inline const LatticeContext& context() {
    static const LatticeContext ctx = build_context();
    return ctx;
}

inline int generator_index(std::string_view label) {
    const auto& m = context().index_by_label;
    auto it = m.find(std::string(label));
    if (it == m.end())
        throw std::invalid_argument("unknown generator name: " + std::string(label));
    return it->second;
}

// Intersection pairing a^T . gram . b.
inline std::int64_t pair(const DivisorClass& a, const DivisorClass& b) {
    const auto& gram = context().gram;
    std::int64_t total = 0;
    for (int i = 0; i < kGeneratorCount; ++i) {
        if (a.coeffs[i] == 0) continue;
        std::int64_t row = 0;
        for (int j = 0; j < kGeneratorCount; ++j) {
            if (b.coeffs[j] == 0 || gram[i][j] == 0) continue;
            row = detail::checked_add(row, detail::checked_mul(gram[i][j], b.coeffs[j]));
        }
        total = detail::checked_add(total, detail::checked_mul(a.coeffs[i], row));
    }
    return total;
}

inline std::int64_t self_int(const DivisorClass& d) { return pair(d, d); }

// Linear equivalence: a ~ b iff a-b pairs to zero against all generators
// (the pairing on the Picard lattice of a K3 surface is nondegenerate).
inline bool equiv(const DivisorClass& a, const DivisorClass& b) {
    const auto& gram = context().gram;
    std::array<int, kGeneratorCount> support{};
    int nsupport = 0;
    for (int j = 0; j < kGeneratorCount; ++j)
        if (a.coeffs[j] != b.coeffs[j]) support[nsupport++] = j;
    if (nsupport == 0) return true;
    for (int g = 0; g < kGeneratorCount; ++g) {
        std::int64_t s = 0;
        for (int k = 0; k < nsupport; ++k) {
            const int j = support[k];
            s = detail::checked_add(
                s, detail::checked_mul(gram[g][j],
                                       detail::checked_add(a.coeffs[j], -b.coeffs[j])));
        }
        if (s != 0) return false;
    }
    return true;
}

// Exact rank of an integer matrix via fraction-free (Bareiss) elimination.
inline int integer_rank(std::vector<std::vector<std::int64_t>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = m[i][j];

    int rank = 0;
    __int128 prev = 1;
    for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows; ++r) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        std::swap(a[static_cast<std::size_t>(rank)], a[pivot]);
        const __int128 p = a[static_cast<std::size_t>(rank)][col];
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows; ++r) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a[r][j] = (a[r][j] * p - a[r][col] * a[static_cast<std::size_t>(rank)][j]) / prev;
            a[r][col] = 0;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

inline int gram_rank() {
    const auto& gram = context().gram;
    std::vector<std::vector<std::int64_t>> m(kGeneratorCount,
                                             std::vector<std::int64_t>(kGeneratorCount));
    for (int i = 0; i < kGeneratorCount; ++i)
        for (int j = 0; j < kGeneratorCount; ++j)
            m[i][j] = gram[i][j];
    return integer_rank(std::move(m));
}

namespace detail {

inline void strip_spaces(std::string_view& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
}

// term := [integer '*'?]? name, with optional underscores in the name.
inline void parse_term(std::string_view term, DivisorClass& out, bool allow_negative) {
    strip_spaces(term);
    if (term.empty()) throw std::invalid_argument("empty term in divisor expression");

    std::int64_t coeff = 1;
    std::size_t pos = 0;
    const bool has_sign = term[0] == '-';
    if (has_sign || (term[0] >= '0' && term[0] <= '9')) {
        std::size_t end = has_sign ? 1 : 0;
        while (end < term.size() && term[end] >= '0' && term[end] <= '9') ++end;
        if (has_sign && end == 1)
            throw std::invalid_argument("malformed integer in term: " + std::string(term));
        const auto res = std::from_chars(term.data(), term.data() + end, coeff);
        if (res.ec != std::errc{})
            throw std::invalid_argument("malformed integer in term: " + std::string(term));
        pos = end;
        while (pos < term.size() && (term[pos] == ' ' || term[pos] == '\t')) ++pos;
        if (pos < term.size() && term[pos] == '*') {
            ++pos;
            while (pos < term.size() && (term[pos] == ' ' || term[pos] == '\t')) ++pos;
        }
    }
    if (!allow_negative && coeff < 0)
        throw std::invalid_argument("negative coefficient in effective-only context: " +
                                    std::string(term));

    std::string name;
    for (; pos < term.size(); ++pos) {
        const char c = term[pos];
        if (c == '_') continue;
        if (c == ' ' || c == '\t')
            throw std::invalid_argument("malformed term: " + std::string(term));
        name.push_back(c);
    }
    if (name.empty())
        throw std::invalid_argument("missing generator name in term: " + std::string(term));

    const int idx = generator_index(name);
    out.coeffs[idx] = checked_add(out.coeffs[idx], coeff);
}

}  // namespace detail

// Parses expressions like "E0 + 2E13", "3E23 + E14 + 2E56", "E_12 + T_3".
// Repeated names accumulate.  "0" denotes the zero class.
inline DivisorClass parse_divisor(std::string_view text, bool allow_negative = true) {
    std::string_view s = text;
    detail::strip_spaces(s);
    if (s.empty()) throw std::invalid_argument("empty divisor expression");

    DivisorClass d;
    if (s == "0") return d;

    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == '+') {
            detail::parse_term(s.substr(start, i - start), d, allow_negative);
            start = i + 1;
        }
    }
    return d;
}

// Canonical form: terms in basis order, unit coefficients omitted,
// e.g. "E0 + 2E13".  The zero class prints as "0".
inline std::string format_divisor(const DivisorClass& d) {
    const auto& basis = context().basis;
    std::string out;
    for (int i = 0; i < kGeneratorCount; ++i) {
        const std::int64_t c = d.coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        if (c != 1) out += std::to_string(c);
        out += basis[i].label;
    }
    return out.empty() ? "0" : out;
}

}  // namespace kummer

#endif  // KUMMER_LATTICE_HPP
