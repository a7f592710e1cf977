#include "tsq/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tsq {

// ---------------------------------------------------------------------------
// Word

Word::Word(std::vector<Syllable> syllables) {
  for (auto const& s : syllables) {
    if (s.exp == 0) continue;
    if (!syl_.empty() && syl_.back().gen == s.gen) {
      syl_.back().exp += s.exp;
      if (syl_.back().exp == 0) syl_.pop_back();
    } else {
      syl_.push_back(s);
    }
  }
}

Word Word::generator(std::uint32_t gen, std::int64_t exp) { return Word({{gen, exp}}); }

std::size_t Word::length() const noexcept {
  std::size_t n = 0;
  for (auto const& s : syl_) n += std::size_t(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

std::uint32_t Word::max_generator() const noexcept {
  std::uint32_t m = 0;
  for (auto const& s : syl_) m = std::max(m, s.gen);
  return m;
}

std::vector<std::uint32_t> Word::letters() const {
  std::vector<std::uint32_t> out;
  out.reserve(length());
  for (auto const& s : syl_) {
    std::uint32_t col = 2 * s.gen + (s.exp < 0 ? 1 : 0);
    for (std::int64_t i = 0; i < (s.exp < 0 ? -s.exp : s.exp); ++i) out.push_back(col);
  }
  return out;
}

Word operator*(Word const& u, Word const& v) {
  std::vector<Syllable> s = u.syllables();
  s.insert(s.end(), v.syllables().begin(), v.syllables().end());
  return Word(std::move(s));
}

Word inverse(Word const& w) {
  std::vector<Syllable> s(w.syllables().rbegin(), w.syllables().rend());
  for (auto& x : s) x.exp = -x.exp;
  return Word(std::move(s));
}

Word power(Word const& w, std::int64_t k) {
  Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

Word substitute(Word const& w, std::uint32_t gen, Word const& replacement) {
  Word out;
  for (auto const& s : w.syllables())
    out = out * (s.gen == gen ? power(replacement, s.exp) : Word::generator(s.gen, s.exp));
  return out;
}

Word map_generators(Word const& w, std::vector<Word> const& images) {
  Word out;
  for (auto const& s : w.syllables()) {
    if (s.gen >= images.size()) throw std::out_of_range("map_generators: generator has no image");
    out = out * power(images[s.gen], s.exp);
  }
  return out;
}

Word commutator(Word const& u, Word const& v) { return inverse(u) * inverse(v) * u * v; }

Word conjugate(Word const& u, Word const& v) { return inverse(v) * u * v; }

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : gens_(std::move(generators)) {
  std::set<std::string> seen;
  for (auto const& g : gens_)
    if (!seen.insert(g).second) throw std::invalid_argument("duplicate generator name '" + g + "'");
  for (auto& r : relators) {
    if (r.empty()) continue;
    if (r.max_generator() >= gens_.size())
      throw std::invalid_argument("relator references an undeclared generator");
    rels_.push_back(std::move(r));
  }
}

std::string Presentation::word_to_string(Word const& w) const {
  std::ostringstream os;
  bool first = true;
  for (auto const& s : w.syllables()) {
    if (!first) os << ' ';
    first = false;
    os << gens_.at(s.gen);
    if (s.exp != 1) os << '^' << s.exp;
  }
  return os.str();
}

std::string Presentation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : "") << gens_[i];
  os << " | ";
  for (std::size_t i = 0; i < rels_.size(); ++i) os << (i ? ", " : "") << word_to_string(rels_[i]);
  return os.str();
}

// ---------------------------------------------------------------------------
// parser

ParseError::ParseError(std::string const& what, std::size_t line, std::size_t column,
                       std::string expected)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + " (expected " + expected + ")"),
      line_(line), column_(column), expected_(std::move(expected)) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Presentation presentation() {
    std::vector<std::string> names;
    skip();
    names.push_back(name("generator name"));
    for (skip(); peek() == ','; skip()) {
      advance();
      skip();
      names.push_back(name("generator name"));
    }
    std::set<std::string> seen;
    for (auto const& n : names)
      if (!seen.insert(n).second) fail("duplicate generator '" + n + "'", "distinct names");
    gens_ = names;
    expect('|');
    std::vector<Word> rels;
    skip();
    rels.push_back(word());
    for (skip(); peek() == ','; skip()) {
      advance();
      rels.push_back(word());
    }
    skip();
    if (!at_end()) fail("unexpected character", "',' or end of input");
    return Presentation(std::move(names), std::move(rels));
  }

  Word lone_word(std::vector<std::string> gens) {
    gens_ = std::move(gens);
    Word w = word();
    skip();
    if (!at_end()) fail("unexpected character", "end of word");
    return w;
  }

 private:
  Word word() {
    skip();
    Word w;
    bool any = false;
    while (true) {
      skip();
      char c = peek();
      if (!(std::islower(static_cast<unsigned char>(c)) || c == '(' || c == '[')) break;
      w = w * factor();
      any = true;
    }
    if (!any) fail("empty word", "generator, '(' or '['");
    return w;
  }

  Word factor() {
    Word base;
    char c = peek();
    if (c == '(') {
      advance();
      base = word();
      expect(')');
    } else if (c == '[') {
      advance();
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      base = commutator(u, v);
    } else {
      auto line = line_, col = col_;
      std::string n = name("generator name");
      auto it = std::find(gens_.begin(), gens_.end(), n);
      if (it == gens_.end()) throw ParseError("unknown generator '" + n + "'", line, col, "declared generator");
      base = Word::generator(std::uint32_t(it - gens_.begin()));
    }
    skip();
    if (peek() == '^') {
      advance();
      skip();
      base = power(base, integer());
    }
    return base;
  }

  std::int64_t integer() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent", "integer");
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000) fail("exponent too large", "integer <= 10^6");
      advance();
    }
    return neg ? -v : v;
  }

  std::string name(char const* what) {
    if (!std::islower(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what, what);
    std::string out;
    while (std::islower(static_cast<unsigned char>(peek())) ||
           std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') {
      out += peek();
      advance();
    }
    return out;
  }

  void expect(char c) {
    skip();
    if (peek() != c) {
      std::string e = "'";
      e += c;
      e += "'";
      fail(c == ')' || c == ']' ? "unbalanced bracket" : "unexpected character", e);
    }
    advance();
  }

  void skip() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == '#') {
        while (!at_end() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(std::string const& what, std::string expected) {
    throw ParseError(what, line_, col_, std::move(expected));
  }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
  std::vector<std::string> gens_;
};

}  // namespace

Presentation parse_presentation(std::string_view text) { return Parser(text).presentation(); }

Word parse_word(Presentation const& p, std::string_view text) {
  return Parser(text).lone_word(p.generators());
}

// ---------------------------------------------------------------------------
// nu(G)

Word NuPresentation::to_second_copy(Word const& w) const {
  std::vector<Syllable> s = w.syllables();
  for (auto& x : s) {
    if (x.gen >= base_generators) throw std::invalid_argument("word is not over the first copy");
    x.gen += std::uint32_t(base_generators);
  }
  return Word(std::move(s));
}

std::vector<Word> NuPresentation::second_copy_generators() const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < base_generators; ++i)
    out.push_back(Word::generator(std::uint32_t(base_generators + i)));
  return out;
}

// The defining relations of the tensor square use left actions
// (^g h = g h g^-1, [g, h] = g h g^-1 h^-1). Relator words below are written
// with right actions, u^v = v^-1 u v and [u, v] = u^-1 v^-1 u v: the
// crossed-commutator identities are imposed for conjugation by every
// generator, and since ^g x = x^(g^-1) and [a, b]_left = [a^-1, b^-1]_right,
// both forms generate the same normal subgroup. Element-level symbols
// g (x) h are always formed in the left convention (tensor_symbol).
NuPresentation nu_presentation(Presentation const& p) {
  std::size_t const g = p.generator_count();
  if (g == 0) throw std::invalid_argument("nu_presentation: presentation has no generators");
  NuPresentation nu;
  nu.base_generators = g;

  std::vector<std::string> names = p.generators();
  std::set<std::string> used(names.begin(), names.end());
  for (auto const& n : p.generators()) {
    std::string copy = n + "_phi";
    while (used.count(copy)) copy += "_";
    used.insert(copy);
    names.push_back(copy);
  }

  auto x = [&](std::size_t i) { return Word::generator(std::uint32_t(i)); };
  auto y = [&](std::size_t i) { return Word::generator(std::uint32_t(g + i)); };

  std::vector<Word> rels;
  for (auto const& r : p.relators()) rels.push_back(r);
  for (auto const& r : p.relators()) rels.push_back(nu.to_second_copy(r));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t k = 0; k < g; ++k) {
        Word const base = commutator(x(i), y(j));
        Word const rhs = commutator(conjugate(x(i), x(k)), nu.to_second_copy(conjugate(x(j), x(k))));
        rels.push_back(conjugate(base, x(k)) * inverse(rhs));
        rels.push_back(conjugate(base, y(k)) * inverse(rhs));
      }
  nu.presentation = Presentation(std::move(names), std::move(rels));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) nu.tensor_generators.push_back(tensor_symbol(nu, x(i), x(j)));
  return nu;
}

Word tensor_symbol(NuPresentation const& nu, Word const& g, Word const& h) {
  Word const hp = nu.to_second_copy(h);
  return g * hp * inverse(g) * inverse(hp);
}

IntegerMatrix abelianized_relation_matrix(Presentation const& p) {
  IntegerMatrix m(p.relators().size(), p.generator_count());
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    for (auto const& s : p.relators()[i].syllables()) m(i, s.gen) += s.exp;
  return m;
}

FiniteAbelianGroup presentation_abelianization(Presentation const& p) {
  return abelian_from_relations(p.generator_count(), abelianized_relation_matrix(p));
}

// ---------------------------------------------------------------------------
// families

namespace {

struct Descriptor {
  std::string head;
  std::vector<long long> ints;
  std::vector<Descriptor> children;
  std::string text;
};

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view s) : s_(s) {}

  Descriptor parse() {
    Descriptor d = one();
    skip();
    if (pos_ != s_.size()) throw FamilyError("family descriptor: trailing input in '" + std::string(s_) + "'");
    return d;
  }

 private:
  Descriptor one() {
    skip();
    std::size_t const start = pos_;
    Descriptor d;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      d.head += s_[pos_++];
    if (d.head.empty()) throw FamilyError("family descriptor: expected a family name in '" + std::string(s_) + "'");
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      while (true) {
        skip();
        if (pos_ < s_.size() && (s_[pos_] == '-' || std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
          std::size_t used = 0;
          d.ints.push_back(std::stoll(std::string(s_.substr(pos_)), &used));
          pos_ += used;
        } else {
          d.children.push_back(one());
        }
        skip();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == ')') {
          ++pos_;
          break;
        }
        throw FamilyError("family descriptor: expected ',' or ')' in '" + std::string(s_) + "'");
      }
    }
    d.text = std::string(s_.substr(start, pos_ - start));
    return d;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

long long powmod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

void need_args(Descriptor const& d, std::size_t ints, std::size_t children = 0) {
  if (d.ints.size() != ints || d.children.size() != children)
    throw FamilyError("family descriptor '" + d.text + "': wrong number of arguments");
}

std::string letter_name(std::size_t i) {
  if (i < 26) return std::string(1, char('a' + i));
  return "g" + std::to_string(i);
}

FamilyGroup build(Descriptor const& d);

FamilyGroup from_text(Descriptor const& d, std::string const& text, GroupTable table) {
  table.set_name(d.text);
  return {d.text, parse_presentation(text), std::move(table)};
}

FamilyGroup build(Descriptor const& d) {
  std::string const& h = d.head;
  if (h == "cyclic") {
    need_args(d, 1);
    if (d.ints[0] < 1) throw FamilyError("cyclic(n): n must be positive");
    return from_text(d, "a | a^" + std::to_string(d.ints[0]), cyclic_group(std::size_t(d.ints[0])));
  }
  if (h == "dihedral") {
    need_args(d, 1);
    long long n = d.ints[0];
    if (n < 1) throw FamilyError("dihedral(n): n must be positive");
    return from_text(d, "a,b | a^" + std::to_string(n) + ", b^2, (a b)^2", dihedral_group(std::size_t(n)));
  }
  if (h == "metacyclic") {
    need_args(d, 3);
    long long m = d.ints[0], n = d.ints[1];
    if (m < 1 || n < 1) throw FamilyError("metacyclic(m,n,r): m and n must be positive");
    long long r = mod(d.ints[2], m);
    if (powmod(r, n, m) != 1 % m)
      throw FamilyError("metacyclic(" + std::to_string(m) + "," + std::to_string(n) + "," +
                        std::to_string(d.ints[2]) + "): r^n is not 1 mod m");
    auto base = cyclic_group(std::size_t(m));
    auto top = cyclic_group(std::size_t(n));
    std::vector<Elem> img;
    if (m > 1) img.push_back(Elem(r));
    GroupTable table = semidirect_product(
        base, top, action_from_generators(base, top, std::vector<std::vector<Elem>>(top.generators().size(), img)));
    std::string text = "a,b | a^" + std::to_string(m) + ", b^" + std::to_string(n) + ", b a b^-1 a^-" +
                       std::to_string(r == 0 ? m : r);
    return from_text(d, text, std::move(table));
  }
  if (h == "A4") {
    need_args(d, 0);
    return from_text(d, "a,b | a^3, b^2, (a b)^3", alternating_group_4());
  }
  if (h == "Q8") {
    need_args(d, 0);
    return from_text(d, "a,b | a^4, a^2 b^-2, b^-1 a b a", quaternion_group());
  }
  if (h == "gendihedral") {
    if (d.ints.empty() || !d.children.empty()) throw FamilyError("gendihedral needs cyclic orders");
    std::size_t const k = d.ints.size();
    GroupTable base = cyclic_group(1);
    std::string text;
    for (std::size_t i = 0; i < k; ++i) {
      if (d.ints[i] < 2) throw FamilyError("gendihedral: orders must be >= 2");
      base = i == 0 ? cyclic_group(std::size_t(d.ints[i])) : direct_product(base, cyclic_group(std::size_t(d.ints[i])));
      text += (i ? "," : "") + letter_name(i);
    }
    std::string t = letter_name(k);
    text += "," + t + " | ";
    for (std::size_t i = 0; i < k; ++i) text += letter_name(i) + "^" + std::to_string(d.ints[i]) + ", ";
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) text += "[" + letter_name(i) + "," + letter_name(j) + "], ";
    text += t + "^2";
    for (std::size_t i = 0; i < k; ++i) text += ", (" + letter_name(i) + " " + t + ")^2";
    std::vector<Elem> inv;
    for (Elem s : base.generators()) inv.push_back(base.inv(s));
    auto z2 = cyclic_group(2);
    GroupTable table = semidirect_product(base, z2, action_from_generators(base, z2, {inv}));
    return from_text(d, text, std::move(table));
  }
  if (h == "linear") {
    need_args(d, 6);
    long long p = d.ints[0], n = d.ints[1];
    if (!is_prime(std::uint64_t(std::max(p, 0LL))) || n < 1) throw FamilyError("linear(p,n,...): p prime, n >= 1");
    long long a = mod(d.ints[2], p), b = mod(d.ints[3], p), c = mod(d.ints[4], p), e = mod(d.ints[5], p);
    auto base = direct_product(cyclic_group(std::size_t(p)), cyclic_group(std::size_t(p)));
    auto top = cyclic_group(std::size_t(n));
    // base element (u, v) sits at u*p + v; generators are x = (1,0), y = (0,1)
    std::vector<Elem> img{Elem(a * p + c), Elem(b * p + e)};
    GroupTable table = [&] {
      try {
        return semidirect_product(base, top, action_from_generators(base, top, {img}));
      } catch (GroupError const& err) {
        throw FamilyError("linear: matrix does not define an action of Z_n: " + std::string(err.what()));
      }
    }();
    auto pw = [](std::string const& g, long long k) { return k == 0 ? std::string() : g + "^" + std::to_string(k); };
    auto image = [&](long long u, long long v) {
      std::string s = pw("x", u);
      std::string t = pw("y", v);
      if (s.empty()) return t;
      if (t.empty()) return s;
      return s + " " + t;
    };
    std::string text = "x,y,t | x^" + std::to_string(p) + ", y^" + std::to_string(p) + ", [x,y], t^" +
                       std::to_string(n);
    auto rel = [&](std::string const& g, long long u, long long v) {
      std::string im = image(u, v);
      return ", t " + g + " t^-1" + (im.empty() ? "" : " (" + im + ")^-1");
    };
    text += rel("x", a, c) + rel("y", b, e);
    return from_text(d, text, std::move(table));
  }
  if (h == "a4ext") {
    need_args(d, 2);
    long long m = d.ints[0];
    if (m < 1) throw FamilyError("a4ext(m,r): m must be positive");
    long long r = mod(d.ints[1], m);
    if (powmod(r, 3, m) != 1 % m) throw FamilyError("a4ext(m,r): r^3 is not 1 mod m");
    auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
    auto zm = cyclic_group(std::size_t(m));
    auto base = direct_product(v4, zm);
    auto z3 = cyclic_group(3);
    // base generators: (1,0,0), (0,1,0) of V4 then c (absent when m = 1)
    std::vector<Elem> img;
    std::size_t const mm = std::size_t(m);
    img.push_back(Elem(3 * mm));  // V4 element 2 -> 3
    img.push_back(Elem(2 * mm));  // V4 element 1 -> 2
    if (m > 1) img.push_back(Elem(r));
    GroupTable table = semidirect_product(base, z3, action_from_generators(base, z3, {img}));
    std::string text = "a,b,c | a^3, b^2, (a b)^3, c^" + std::to_string(m) + ", a c a^-1 c^-" +
                       std::to_string(r == 0 ? m : r) + ", [b,c]";
    return from_text(d, text, std::move(table));
  }
  if (h == "direct") {
    need_args(d, 0, 2);
    FamilyGroup l = build(d.children[0]);
    FamilyGroup r = build(d.children[1]);
    std::size_t const nl = l.presentation.generator_count();
    std::size_t const nr = r.presentation.generator_count();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nl + nr; ++i) names.push_back(letter_name(i));
    std::vector<Word> rels = l.presentation.relators();
    std::vector<Word> shift;
    for (std::size_t i = 0; i < nr; ++i) shift.push_back(Word::generator(std::uint32_t(nl + i)));
    for (auto const& w : r.presentation.relators()) rels.push_back(map_generators(w, shift));
    for (std::size_t i = 0; i < nl; ++i)
      for (std::size_t j = 0; j < nr; ++j)
        rels.push_back(commutator(Word::generator(std::uint32_t(i)), Word::generator(std::uint32_t(nl + j))));
    GroupTable table = direct_product(l.table, r.table);
    table.set_name(d.text);
    return {d.text, Presentation(std::move(names), std::move(rels)), std::move(table)};
  }
  throw FamilyError("unknown family '" + h + "'");
}

}  // namespace

FamilyGroup family_group(std::string_view descriptor) {
  return build(DescriptorParser(descriptor).parse());
}

Presentation family_presentation(std::string_view descriptor) {
  return family_group(descriptor).presentation;
}

}  // namespace tsq
