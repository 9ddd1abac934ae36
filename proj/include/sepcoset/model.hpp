#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepcoset/letters.hpp"
#include "sepcoset/word.hpp"

namespace sepcoset {

// Multiplication table of a finite factor. Element 0 is the identity.
struct FiniteFactor {
    std::string name;
    int order = 0;
    std::vector<std::int32_t> mul;  // mul[order*i + j] = i*j
    std::vector<std::int32_t> inv;  // inv[i]

    std::int32_t times(std::int32_t i, std::int32_t j) const { return mul[static_cast<std::size_t>(order) * i + j]; }

    static FiniteFactor cyclic(int n, const std::string& name);
    // Validates the group axioms (identity row/column, inverses, associativity).
    void validate() const;
};

enum class ModelKind { free_product, free_cyclic };

// Parsed model description. FreeProduct: finite factors plus an optional free
// part; every finite factor is one hyperbolically embedded family. FreeCyclic:
// a free group with one cyclic family <W>.
struct GroupModelSpec {
    ModelKind kind = ModelKind::free_cyclic;
    std::vector<FiniteFactor> factors;
    int free_rank = 2;
    std::vector<Letter> relator;  // X-letters of W (free_cyclic only)
    bool declared_infinite_relative_metric = false;

    static GroupModelSpec builtin_free_cyclic();  // F(a,b), W = ab
    static GroupModelSpec builtin_free_product(); // Z/3 * Z/5
    static GroupModelSpec parse_file(const std::string& path);
};

// Exact algebra for the two model kinds: normal forms, subgroup membership,
// canonical coset representatives, and the fixed total order on the alphabet.
//
// Factor indices in Word syllables: [0, m) finite factors, [m, m+rank) free
// generators, where m = factors().size().
class Model {
public:
    explicit Model(GroupModelSpec spec);

    const GroupModelSpec& spec() const { return spec_; }
    int num_families() const { return num_families_; }
    int free_rank() const { return spec_.free_rank; }
    int num_finite_factors() const { return static_cast<int>(spec_.factors.size()); }
    bool family_is_cyclic(int lam) const { return lam >= num_finite_factors(); }
    bool declared_infinite_relative_metric() const { return spec_.declared_infinite_relative_metric; }

    // --- group law -------------------------------------------------------
    Word normalize(std::span<const Letter> letters) const;
    Word mul(const Word& a, const Word& b) const;
    void mul_into(Word& out, const Word& a, const Word& b) const;  // allocation-friendly
    Word inv(const Word& a) const;
    Word letter_word(const Letter& l) const;  // the letter as a group element
    Word apply(const Word& g, const Letter& l) const { return mul(g, letter_word(l)); }

    // --- subgroups and cosets -------------------------------------------
    // g in H_lam \ {1} -> its code; g = 1 -> identity marker; otherwise empty.
    std::optional<SubgroupElement> subgroup_membership(const Word& g, int lam) const;
    CosetRef coset_canonical(const Word& g, int lam) const;
    // All h in H_lam \ {1} with x_length(h) <= x_budget, in shortlex order.
    std::vector<SubgroupElement> h_enumerate(int lam, int x_budget) const;
    Word subgroup_word(int lam, std::int32_t code) const;

    // --- lengths and orders ----------------------------------------------
    int x_length(const Word& g) const;
    int x_length_letter(const Letter& l) const;
    // Shortlex over the letter expansion, using the alphabet order below.
    bool shortlex_less(const Word& a, const Word& b) const;
    // Fixed well-order on X u H: X-letters first by (id, sign with + < -),
    // then H-letters by (lambda, shortlex of expansion).
    bool letter_less(const Letter& a, const Letter& b) const;
    bool letter_leq(const Letter& a, const Letter& b) const { return a == b || letter_less(a, b); }
    // Injection of the alphabet into the naturals (tokens for tail checks).
    std::uint64_t letter_token(const Letter& l) const;

    void validate_letter(const Letter& l) const;  // throws input_error
    Letter inv_letter(const Letter& l) const;

    // --- text I/O ---------------------------------------------------------
    std::string signature() const;  // stable key for cache headers
    std::string word_str(const Word& g) const;
    std::string letter_str(const Letter& l) const;
    Word parse_word(const std::string& text) const;
    Letter parse_letter(const std::string& text) const;  // "x:a", "h:(ab)^3", "h0:3"

    // Letter sequence of the normal form (used by shortlex and by PathRec
    // conversions): free syllables expand to single X-letters, finite
    // syllables stay one H-letter.
    std::vector<Letter> word_letters(const Word& g) const;

private:
    GroupModelSpec spec_;
    int num_families_ = 0;
    Word relator_word_;      // W as a normal form (free_cyclic)
    int relator_xlen_ = 0;

    Word cyclic_power(int lam, std::int64_t k) const;
    void append_syllable(Word& w, Syllable s) const;
    int gen_symbol_to_factor(char c) const;
    char factor_symbol(int factor) const;
};

} // namespace sepcoset
