#include "sepcoset/model.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sepcoset/errors.hpp"

namespace sepcoset {

// ---------------------------------------------------------------------------
// FiniteFactor

FiniteFactor FiniteFactor::cyclic(int n, const std::string& name) {
    FiniteFactor f;
    f.name = name;
    f.order = n;
    f.mul.resize(static_cast<std::size_t>(n) * n);
    f.inv.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) f.mul[static_cast<std::size_t>(n) * i + j] = (i + j) % n;
        f.inv[i] = (n - i) % n;
    }
    return f;
}

void FiniteFactor::validate() const {
    if (order < 2) throw input_error("factor " + name + ": order must be >= 2");
    if (mul.size() != static_cast<std::size_t>(order) * order || inv.size() != static_cast<std::size_t>(order))
        throw input_error("factor " + name + ": table size mismatch");
    for (std::int32_t v : mul)
        if (v < 0 || v >= order) throw input_error("factor " + name + ": table entry out of range");
    for (int i = 0; i < order; ++i) {
        if (times(0, i) != i || times(i, 0) != i)
            throw input_error("factor " + name + ": 0 is not an identity");
        if (inv[i] < 0 || inv[i] >= order || times(i, inv[i]) != 0 || times(inv[i], i) != 0)
            throw input_error("factor " + name + ": bad inverse of " + std::to_string(i));
    }
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            for (int k = 0; k < order; ++k)
                if (times(times(i, j), k) != times(i, times(j, k)))
                    throw input_error("factor " + name + ": not associative at (" + std::to_string(i) + "," +
                                      std::to_string(j) + "," + std::to_string(k) + ")");
}

// ---------------------------------------------------------------------------
// GroupModelSpec

GroupModelSpec GroupModelSpec::builtin_free_cyclic() {
    GroupModelSpec s;
    s.kind = ModelKind::free_cyclic;
    s.free_rank = 2;
    s.relator = {Letter::x(0, +1), Letter::x(1, +1)};  // W = ab
    s.declared_infinite_relative_metric = false;
    return s;
}

GroupModelSpec GroupModelSpec::builtin_free_product() {
    GroupModelSpec s;
    s.kind = ModelKind::free_product;
    s.factors = {FiniteFactor::cyclic(3, "Z3"), FiniteFactor::cyclic(5, "Z5")};
    s.free_rank = 0;
    s.declared_infinite_relative_metric = true;
    return s;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

FiniteFactor load_table_csv(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open table file: " + path);
    std::vector<std::vector<std::int32_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::int32_t> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cell = trim(cell);
            if (cell.empty()) throw input_error(path + ": empty cell");
            row.push_back(static_cast<std::int32_t>(std::stol(cell)));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw input_error(path + ": empty table");
    const int n = static_cast<int>(rows.size());
    FiniteFactor f;
    f.name = name;
    f.order = n;
    f.mul.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw input_error(path + ": table is not square");
        for (std::int32_t v : row) f.mul.push_back(v);
    }
    f.inv.assign(n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (f.mul[static_cast<std::size_t>(n) * i + j] == 0) f.inv[i] = j;
    f.validate();
    return f;
}

} // namespace

GroupModelSpec GroupModelSpec::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open model file: " + path);
    std::string line, section;
    std::vector<std::pair<std::string, std::string>> kv;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw input_error(path + ": expected key=value, got: " + line);
        if (section != "model") throw input_error(path + ": unknown section [" + section + "]");
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    auto get = [&](const std::string& key) -> const std::string* {
        for (const auto& [k, v] : kv)
            if (k == key) return &v;
        return nullptr;
    };
    const std::string* kind = get("kind");
    if (!kind) throw input_error(path + ": missing kind");
    GroupModelSpec s;
    if (*kind == "free_cyclic") {
        s.kind = ModelKind::free_cyclic;
        const std::string* rank = get("rank");
        const std::string* rel = get("relator");
        if (!rank || !rel) throw input_error(path + ": free_cyclic needs rank and relator");
        s.free_rank = std::stoi(*rank);
        if (s.free_rank < 1 || s.free_rank > 26) throw input_error(path + ": rank out of range");
        s.relator.clear();
        for (std::size_t i = 0; i < rel->size(); ++i) {
            char c = (*rel)[i];
            int sign = +1;
            if (std::isupper(static_cast<unsigned char>(c))) {
                sign = -1;
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
            if (c < 'a' || c >= 'a' + s.free_rank) throw input_error(path + ": relator letter out of range");
            s.relator.push_back(Letter::x(c - 'a', sign));
        }
        s.declared_infinite_relative_metric = false;
    } else if (*kind == "free_product") {
        s.kind = ModelKind::free_product;
        const std::string* factors = get("factors");
        if (!factors) throw input_error(path + ": free_product needs factors");
        std::stringstream ss(*factors);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.size() > 1 && (item[0] == 'Z' || item[0] == 'z')) {
                s.factors.push_back(FiniteFactor::cyclic(std::stoi(item.substr(1)), item));
            } else if (item.rfind("table:", 0) == 0) {
                s.factors.push_back(load_table_csv(item.substr(6), item));
            } else {
                throw input_error(path + ": unknown factor spec: " + item);
            }
        }
        if (s.factors.empty()) throw input_error(path + ": no factors");
        const std::string* fr = get("free_rank");
        s.free_rank = fr ? std::stoi(*fr) : 0;
        if (s.free_rank < 0 || s.free_rank > 26) throw input_error(path + ": free_rank out of range");
        s.declared_infinite_relative_metric = true;
    } else {
        throw input_error(path + ": unknown kind: " + *kind);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Model

Model::Model(GroupModelSpec spec) : spec_(std::move(spec)) {
    for (const FiniteFactor& f : spec_.factors) f.validate();
    if (spec_.kind == ModelKind::free_cyclic) {
        if (spec_.free_rank < 1) throw input_error("free_cyclic model needs rank >= 1");
        num_families_ = 1;
        relator_word_ = normalize(spec_.relator);
        relator_xlen_ = x_length(relator_word_);
        if (relator_word_.empty()) throw input_error("relator is trivial");
        // cyclically reduced: first and last syllable don't cancel
        Word sq = mul(relator_word_, relator_word_);
        if (x_length(sq) != 2 * relator_xlen_) throw input_error("relator must be cyclically reduced");
        // not a proper power: W != U^d for any proper divisor length
        for (int d = 1; d < relator_xlen_; ++d) {
            if (relator_xlen_ % d != 0) continue;
            std::vector<Letter> all = word_letters(relator_word_);
            std::vector<Letter> head(all.begin(), all.begin() + d);
            Word u = normalize(head);
            Word p;
            for (int i = 0; i < relator_xlen_ / d; ++i) p = mul(p, u);
            if (p == relator_word_) throw input_error("relator must not be a proper power");
        }
    } else {
        num_families_ = static_cast<int>(spec_.factors.size());
        if (num_families_ == 0) throw input_error("free_product model needs at least one factor");
    }
}

void Model::append_syllable(Word& w, Syllable s) const {
    if (s.value == 0) return;
    if (w.empty() || w.back().factor != s.factor) {
        w.push_back(s);
        return;
    }
    Syllable last = w.back();
    w.pop_back();
    if (last.factor < num_finite_factors())
        s.value = spec_.factors[last.factor].times(last.value, s.value);
    else
        s.value = last.value + s.value;
    if (s.value != 0) w.push_back(s);
}

Word Model::letter_word(const Letter& l) const {
    validate_letter(l);
    if (l.is_x) return Word{Syllable{num_finite_factors() + l.id, l.val}};
    return subgroup_word(l.id, l.val);
}

Word Model::subgroup_word(int lam, std::int32_t code) const {
    if (lam < 0 || lam >= num_families_) throw input_error("bad family id");
    if (code == 0) return Word{};
    if (!family_is_cyclic(lam)) {
        if (code < 0 || code >= spec_.factors[lam].order) throw input_error("bad subgroup element code");
        return Word{Syllable{lam, code}};
    }
    return cyclic_power(lam, code);
}

Word Model::cyclic_power(int /*lam*/, std::int64_t k) const {
    Word base = k > 0 ? relator_word_ : inv(relator_word_);
    std::int64_t n = k > 0 ? k : -k;
    Word out;
    for (std::int64_t i = 0; i < n; ++i) out = mul(out, base);
    return out;
}

Word Model::normalize(std::span<const Letter> letters) const {
    Word w;
    for (const Letter& l : letters) {
        Word lw = letter_word(l);
        for (const Syllable& s : lw) append_syllable(w, s);
    }
    return w;
}

Word Model::mul(const Word& a, const Word& b) const {
    Word w = a;
    for (const Syllable& s : b) append_syllable(w, s);
    return w;
}

void Model::mul_into(Word& out, const Word& a, const Word& b) const {
    out.clear();
    out.insert(out.end(), a.begin(), a.end());
    for (const Syllable& s : b) append_syllable(out, s);
}

Word Model::inv(const Word& a) const {
    Word w;
    w.reserve(a.size());
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        Syllable s = *it;
        if (s.factor < num_finite_factors())
            s.value = spec_.factors[s.factor].inv[s.value];
        else
            s.value = -s.value;
        w.push_back(s);
    }
    return w;
}

std::optional<SubgroupElement> Model::subgroup_membership(const Word& g, int lam) const {
    if (lam < 0 || lam >= num_families_) throw input_error("bad family id");
    if (g.empty()) return SubgroupElement{0};
    if (!family_is_cyclic(lam)) {
        if (g.size() == 1 && g[0].factor == lam) return SubgroupElement{g[0].value};
        return std::nullopt;
    }
    // g = W^k forces x_length(g) = |k| * x_length(W) since W is cyclically reduced
    int len = x_length(g);
    if (len % relator_xlen_ != 0) return std::nullopt;
    std::int64_t k = len / relator_xlen_;
    if (cyclic_power(lam, k) == g) return SubgroupElement{static_cast<std::int32_t>(k)};
    if (cyclic_power(lam, -k) == g) return SubgroupElement{static_cast<std::int32_t>(-k)};
    return std::nullopt;
}

CosetRef Model::coset_canonical(const Word& g, int lam) const {
    if (lam < 0 || lam >= num_families_) throw input_error("bad family id");
    Word best = g;
    if (!family_is_cyclic(lam)) {
        for (int c = 1; c < spec_.factors[lam].order; ++c) {
            Word cand = mul(g, Word{Syllable{lam, c}});
            if (shortlex_less(cand, best)) best = cand;
        }
    } else {
        // beyond |k| <= 2|g|/|W| + 2 the product g*W^k strictly grows in length
        int window = 2 * x_length(g) / relator_xlen_ + 2;
        for (int k = -window; k <= window; ++k) {
            if (k == 0) continue;
            Word cand = mul(g, cyclic_power(lam, k));
            if (shortlex_less(cand, best)) best = cand;
        }
    }
    return CosetRef{lam, std::move(best)};
}

std::vector<SubgroupElement> Model::h_enumerate(int lam, int x_budget) const {
    if (lam < 0 || lam >= num_families_) throw input_error("bad family id");
    if (x_budget < 0) throw input_error("h_enumerate: negative budget");
    std::vector<SubgroupElement> out;
    if (!family_is_cyclic(lam)) {
        if (x_budget >= 1)
            for (int c = 1; c < spec_.factors[lam].order; ++c) out.push_back(SubgroupElement{c});
        return out;  // already in shortlex order (single-letter expansions by code)
    }
    int kmax = x_budget / relator_xlen_;
    for (int k = 1; k <= kmax; ++k) {
        out.push_back(SubgroupElement{k});
        out.push_back(SubgroupElement{-k});
    }
    std::sort(out.begin(), out.end(), [&](SubgroupElement a, SubgroupElement b) {
        return shortlex_less(subgroup_word(lam, a.code), subgroup_word(lam, b.code));
    });
    return out;
}

int Model::x_length(const Word& g) const {
    int len = 0;
    for (const Syllable& s : g) len += s.factor < num_finite_factors() ? 1 : std::abs(s.value);
    return len;
}

int Model::x_length_letter(const Letter& l) const {
    if (l.is_x) return 1;
    if (!family_is_cyclic(l.id)) return 1;
    return std::abs(l.val) * relator_xlen_;
}

std::vector<Letter> Model::word_letters(const Word& g) const {
    std::vector<Letter> out;
    for (const Syllable& s : g) {
        if (s.factor < num_finite_factors()) {
            out.push_back(Letter::h(s.factor, s.value));
        } else {
            int id = s.factor - num_finite_factors();
            int sign = s.value > 0 ? +1 : -1;
            for (int i = 0; i < std::abs(s.value); ++i) out.push_back(Letter::x(id, sign));
        }
    }
    return out;
}

bool Model::letter_less(const Letter& a, const Letter& b) const {
    if (a.is_x != b.is_x) return a.is_x;
    if (a.is_x) {
        if (a.id != b.id) return a.id < b.id;
        return a.val > 0 && b.val < 0;  // + before -
    }
    if (a.id != b.id) return a.id < b.id;
    if (a.val == b.val) return false;
    if (!family_is_cyclic(a.id)) return a.val < b.val;
    return shortlex_less(subgroup_word(a.id, a.val), subgroup_word(b.id, b.val));
}

bool Model::shortlex_less(const Word& a, const Word& b) const {
    int la = x_length(a), lb = x_length(b);
    if (la != lb) return la < lb;
    std::vector<Letter> xa = word_letters(a), xb = word_letters(b);
    for (std::size_t i = 0; i < xa.size() && i < xb.size(); ++i) {
        if (xa[i] == xb[i]) continue;
        // components here are either X-letters or finite-factor letters, so
        // letter_less never recurses back into shortlex_less unboundedly
        return letter_less(xa[i], xb[i]);
    }
    return xa.size() < xb.size();
}

std::uint64_t Model::letter_token(const Letter& l) const {
    if (l.is_x) return 2ull * static_cast<std::uint64_t>(l.id) + (l.val < 0 ? 1u : 0u);
    std::uint64_t xblock = 2ull * static_cast<std::uint64_t>(spec_.free_rank);
    std::uint64_t rank;
    if (!family_is_cyclic(l.id)) {
        rank = static_cast<std::uint64_t>(l.val - 1);
    } else {
        std::uint64_t mag = static_cast<std::uint64_t>(std::abs(l.val));
        rank = 2ull * (mag - 1) + (l.val < 0 ? 1u : 0u);
    }
    return xblock + static_cast<std::uint64_t>(l.id) + static_cast<std::uint64_t>(num_families_) * rank;
}

Letter Model::inv_letter(const Letter& l) const {
    validate_letter(l);
    if (l.is_x) return Letter::x(l.id, -l.val);
    if (!family_is_cyclic(l.id)) return Letter::h(l.id, spec_.factors[l.id].inv[l.val]);
    return Letter::h(l.id, -l.val);
}

void Model::validate_letter(const Letter& l) const {
    if (l.is_x) {
        if (l.id < 0 || l.id >= spec_.free_rank) throw input_error("X-letter generator id out of range");
        if (l.val != 1 && l.val != -1) throw input_error("X-letter sign must be +1 or -1");
    } else {
        if (l.id < 0 || l.id >= num_families_) throw input_error("H-letter family id out of range");
        if (l.val == 0) throw input_error("H-letter must not be the subgroup identity");
        if (!family_is_cyclic(l.id) && (l.val < 1 || l.val >= spec_.factors[l.id].order))
            throw input_error("H-letter element code out of range");
    }
}

// ---------------------------------------------------------------------------
// text I/O

std::string Model::signature() const {
    std::string s = spec_.kind == ModelKind::free_cyclic ? "fc:" : "fp:";
    for (const FiniteFactor& f : spec_.factors) s += std::to_string(f.order) + ",";
    s += "|r" + std::to_string(spec_.free_rank);
    if (spec_.kind == ModelKind::free_cyclic) s += "|W=" + word_str(relator_word_);
    return s;
}

char Model::factor_symbol(int factor) const { return static_cast<char>('a' + factor); }

int Model::gen_symbol_to_factor(char c) const {
    int total = num_finite_factors() + spec_.free_rank;
    if (c < 'a' || c >= 'a' + total) throw input_error(std::string("unknown generator symbol: ") + c);
    return c - 'a';
}

std::string Model::word_str(const Word& g) const {
    if (g.empty()) return "1";
    std::string out;
    for (const Syllable& s : g) {
        out += factor_symbol(s.factor);
        if (s.value != 1) out += "^" + std::to_string(s.value);
    }
    return out;
}

std::string Model::letter_str(const Letter& l) const {
    if (l.is_x) return std::string("x:") + static_cast<char>('a' + num_finite_factors() + l.id) + (l.val < 0 ? "^-1" : "");
    return "h" + std::to_string(l.id) + ":" + std::to_string(l.val);
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    bool done() const { return i >= s.size(); }
    char peek() const { return s[i]; }
    void skip_ws() {
        while (!done() && (s[i] == ' ' || s[i] == '\t' || s[i] == '*')) ++i;
    }
};

long parse_exponent(Cursor& c) {
    if (c.done() || c.peek() != '^') return 1;
    ++c.i;
    bool neg = false;
    if (!c.done() && (c.peek() == '-' || c.peek() == '+')) {
        neg = c.peek() == '-';
        ++c.i;
    }
    if (c.done() || !std::isdigit(static_cast<unsigned char>(c.peek()))) throw input_error("expected exponent digits");
    long v = 0;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = v * 10 + (c.peek() - '0');
        ++c.i;
    }
    return neg ? -v : v;
}

} // namespace

Word Model::parse_word(const std::string& text) const {
    std::string t = trim(text);
    if (t.empty() || t == "1" || t == "e") return Word{};
    Cursor c{t};
    Word acc;
    c.skip_ws();
    while (!c.done()) {
        Word piece;
        if (c.peek() == '(') {
            ++c.i;
            std::size_t depth = 1, start = c.i;
            while (!c.done() && depth > 0) {
                if (c.peek() == '(') ++depth;
                if (c.peek() == ')') --depth;
                ++c.i;
            }
            if (depth != 0) throw input_error("unbalanced parentheses in word: " + text);
            piece = parse_word(t.substr(start, c.i - 1 - start));
        } else {
            char sym = c.peek();
            int factor;
            int sign = +1;
            if (std::isupper(static_cast<unsigned char>(sym))) {
                sign = -1;
                factor = gen_symbol_to_factor(static_cast<char>(std::tolower(static_cast<unsigned char>(sym))));
            } else {
                factor = gen_symbol_to_factor(sym);
            }
            ++c.i;
            if (factor < num_finite_factors()) {
                int v = sign > 0 ? 1 : spec_.factors[factor].inv[1];
                piece = Word{Syllable{factor, v}};
            } else {
                piece = Word{Syllable{factor, sign}};
            }
        }
        long e = parse_exponent(c);
        Word powed;
        Word base = e >= 0 ? piece : inv(piece);
        for (long r = 0; r < std::labs(e); ++r) powed = mul(powed, base);
        acc = mul(acc, powed);
        c.skip_ws();
    }
    return acc;
}

Letter Model::parse_letter(const std::string& text) const {
    std::string t = trim(text);
    auto colon = t.find(':');
    if (colon == std::string::npos) throw input_error("letter needs 'x:' or 'h:' prefix: " + text);
    std::string tag = trim(t.substr(0, colon));
    std::string rest = trim(t.substr(colon + 1));
    if (tag == "x") {
        Word w = parse_word(rest);
        if (w.size() != 1 || w[0].factor < num_finite_factors() || std::abs(w[0].value) != 1)
            throw input_error("not a single X-letter: " + text);
        Letter l = Letter::x(w[0].factor - num_finite_factors(), w[0].value);
        validate_letter(l);
        return l;
    }
    if (tag == "h") {
        Word w = parse_word(rest);
        for (int lam = 0; lam < num_families_; ++lam) {
            auto m = subgroup_membership(w, lam);
            if (m && !m->is_identity()) {
                Letter l = Letter::h(lam, m->code);
                validate_letter(l);
                return l;
            }
        }
        throw input_error("word is not a nontrivial subgroup element: " + text);
    }
    if (tag.size() > 1 && tag[0] == 'h') {
        int lam = std::stoi(tag.substr(1));
        Letter l = Letter::h(lam, static_cast<std::int32_t>(std::stol(rest)));
        validate_letter(l);
        return l;
    }
    throw input_error("unknown letter tag: " + text);
}

} // namespace sepcoset
