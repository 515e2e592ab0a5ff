#include "fpaut/words.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace fpaut {

FreeProduct::FreeProduct(int free_rank, std::vector<FactorGroup> factors)
    : free_rank_(free_rank), factors_(std::move(factors)) {
  if (free_rank_ < 0) throw WordError("negative free rank");
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].id() != static_cast<int>(i) + 1)
      throw WordError("factor ids must be 1..r in order");
}

const FactorGroup& FreeProduct::factor(int id) const {
  if (id < 1 || id > static_cast<int>(factors_.size()))
    throw WordError("no factor with id " + std::to_string(id));
  return factors_[static_cast<std::size_t>(id - 1)];
}

bool interacts(const Syllable& x, const Syllable& y) {
  if (is_free(x) != is_free(y)) return false;
  if (is_free(x)) {
    const auto& a = as_free(x);
    const auto& b = as_free(y);
    return a.index == b.index && a.sign == -b.sign;
  }
  return as_factor(x).factor == as_factor(y).factor;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (interacts(w[i - 1], w[i])) return false;
  return true;
}

Syllable inverse(const FreeProduct& fp, const Syllable& s) {
  if (is_free(s)) return FreeLetter{as_free(s).index, -as_free(s).sign};
  const auto& x = as_factor(s);
  return fp.factor(x.factor).inverse(x);
}

Word inverse(const FreeProduct& fp, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(fp, *it));
  return out;
}

namespace {

// Pushes s onto a reduced stack; returns the number of junction steps.
std::size_t push_reduced(const FreeProduct& fp, Word& stack, const Syllable& s) {
  if (stack.empty() || !interacts(stack.back(), s)) {
    stack.push_back(s);
    return 0;
  }
  if (is_free(s)) {
    stack.pop_back();
    return 1;
  }
  const auto& top = as_factor(stack.back());
  MaybeElement m = fp.factor(top.factor).multiply(top, as_factor(s));
  stack.pop_back();
  if (!m) return 2;
  stack.push_back(std::move(*m));
  return 1;
}

}  // namespace

Word reduce(const FreeProduct& fp, const Word& raw) {
  Word stack;
  stack.reserve(raw.size());
  for (const auto& s : raw) push_reduced(fp, stack, s);
  return stack;
}

Concatenation concat(const FreeProduct& fp, const Word& u, const Word& v) {
  Concatenation c;
  c.word = reduce(fp, u);
  Word rv = reduce(fp, v);
  // Only the leading syllables of v can interact; afterwards it is a plain append.
  bool junction = true;
  for (const auto& s : rv) {
    if (!junction) {
      c.word.push_back(s);
      continue;
    }
    std::size_t before = c.word.size();
    std::size_t steps = push_reduced(fp, c.word, s);
    c.cancellation += steps;
    // a non-trivial merge or a plain push ends the junction
    if (steps == 0 || (steps == 1 && c.word.size() == before)) junction = false;
  }
  return c;
}

Word multiply(const FreeProduct& fp, const Word& u, const Word& v) {
  Word raw = u;
  raw.insert(raw.end(), v.begin(), v.end());
  return reduce(fp, raw);
}

Word power(const FreeProduct& fp, const Word& w, long k) {
  Word base = k < 0 ? inverse(fp, w) : w;
  long n = k < 0 ? -k : k;
  Word out;
  for (long i = 0; i < n; ++i) out = multiply(fp, out, base);
  return out;
}

bool is_cyclically_reduced(const Word& w) {
  return is_reduced(w) && (w.size() < 2 || !interacts(w.back(), w.front()));
}

CyclicReduction cyclic_reduce(const FreeProduct& fp, const Word& w) {
  CyclicReduction r;
  r.core = reduce(fp, w);
  while (r.core.size() >= 2 && interacts(r.core.back(), r.core.front())) {
    Syllable first = r.core.front();
    if (is_free(first)) {
      r.conjugator.push_back(first);
      r.core = Word(r.core.begin() + 1, r.core.end() - 1);
    } else {
      // x m y = x (m (y x)) x^-1
      Word next(r.core.begin() + 1, r.core.end());
      next.push_back(first);
      r.conjugator.push_back(first);
      r.core = reduce(fp, next);
    }
  }
  r.conjugator = reduce(fp, r.conjugator);
  return r;
}

bool is_hyperbolic(const FreeProduct& fp, const Word& w) {
  Word core = cyclic_reduce(fp, w).core;
  if (core.size() >= 2) return true;
  return core.size() == 1 && is_free(core.front());
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t offset = 0;  // column of text[0] minus one

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  std::size_t column() const { return offset + pos + 1; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, column()); }
};

std::string read_name(Cursor& c) {
  std::size_t start = c.pos;
  if (!(std::isalpha(static_cast<unsigned char>(c.peek())) || c.peek() == '_'))
    c.fail("expected a generator name");
  while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_')) ++c.pos;
  return std::string(c.text.substr(start, c.pos - start));
}

long read_int(Cursor& c) {
  std::size_t start = c.pos;
  if (c.peek() == '-' || c.peek() == '+') ++c.pos;
  std::size_t digits = c.pos;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
  if (c.pos == digits) {
    c.pos = start;
    c.fail("expected an integer");
  }
  return std::stol(std::string(c.text.substr(start, c.pos - start)));
}

std::optional<FreeLetter> as_free_token(const FreeProduct& fp, std::string_view tok) {
  if (tok.size() < 2 || (tok[0] != 'b' && tok[0] != 'B')) return std::nullopt;
  if (!std::all_of(tok.begin() + 1, tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    return std::nullopt;
  int index = std::stoi(std::string(tok.substr(1)));
  if (index < 1 || index > fp.free_rank()) return std::nullopt;
  return FreeLetter{index, tok[0] == 'b' ? 1 : -1};
}

// Factor id whose generator list contains `name`; 0 when absent, -1 when ambiguous.
int factor_with_generator(const FreeProduct& fp, const std::string& name) {
  int found = 0;
  for (const auto& h : fp.factors()) {
    const auto& names = h.generator_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) found = found ? -1 : h.id();
  }
  return found;
}

MaybeElement parse_factor_token(const FreeProduct& fp, Cursor& c) {
  std::vector<std::pair<std::string, std::pair<long, std::size_t>>> parts;
  for (;;) {
    std::size_t col = c.column();
    std::string name = read_name(c);
    long exp = 1;
    if (c.peek() == '^') {
      ++c.pos;
      exp = read_int(c);
    }
    parts.push_back({name, {exp, col}});
    if (c.peek() != '.') break;
    ++c.pos;
  }
  int id = 0;
  if (c.peek() == '@') {
    ++c.pos;
    id = static_cast<int>(read_int(c));
    if (id < 1 || id > static_cast<int>(fp.factor_count())) c.fail("unknown factor id");
  } else {
    id = factor_with_generator(fp, parts.front().first);
    if (id == 0) throw ParseError("unknown generator '" + parts.front().first + "'", parts.front().second.second);
    if (id < 0) throw ParseError("ambiguous generator '" + parts.front().first + "', add @id", parts.front().second.second);
  }
  if (!c.done()) c.fail("unexpected character in factor element");
  const FactorGroup& h = fp.factor(id);
  std::vector<std::pair<int, long>> word;
  for (const auto& [name, info] : parts) {
    const auto& names = h.generator_names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw ParseError("generator '" + name + "' is not in factor " + std::to_string(id), info.second);
    word.emplace_back(static_cast<int>(it - names.begin()), info.first);
  }
  return h.from_generator_word(word);
}

}  // namespace

Word parse_syllables(const FreeProduct& fp, std::string_view text) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    if (tok == "1") {
      i = j;
      continue;
    }
    if (tok.find('@') == std::string_view::npos) {
      if (auto letter = as_free_token(fp, tok)) {
        out.push_back(*letter);
        i = j;
        continue;
      }
    }
    Cursor c{tok, 0, i};
    if (MaybeElement e = parse_factor_token(fp, c)) out.push_back(std::move(*e));
    i = j;
  }
  return out;
}

Word parse_word(const FreeProduct& fp, std::string_view text) {
  return reduce(fp, parse_syllables(fp, text));
}

std::string format(const FreeProduct& fp, const Syllable& s) {
  if (is_free(s)) {
    const auto& l = as_free(s);
    return (l.sign > 0 ? "b" : "B") + std::to_string(l.index);
  }
  const auto& x = as_factor(s);
  return fp.factor(x.factor).format(x) + "@" + std::to_string(x.factor);
}

std::string format(const FreeProduct& fp, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format(fp, w[i]);
  }
  return out;
}

namespace {

FactorElement random_element(const FactorGroup& h, std::mt19937_64& rng) {
  if (h.is_finite()) {
    auto all = h.elements();
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
  }
  const int rank = static_cast<int>(h.generator_count());
  std::uniform_int_distribution<int> letter(1, 2 * rank);
  std::size_t len = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
  std::vector<int> data;
  while (data.size() < len) {
    int l = letter(rng);
    l = l > rank ? rank - l : l;
    if (!data.empty() && data.back() == -l) continue;
    data.push_back(l);
  }
  return {h.id(), data};
}

}  // namespace

Syllable random_syllable(const FreeProduct& fp, std::mt19937_64& rng, const Syllable* prev) {
  const int choices = 2 * fp.free_rank() + static_cast<int>(fp.factor_count());
  if (choices == 0) throw WordError("trivial group has no syllables");
  std::uniform_int_distribution<int> pick(0, choices - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    int c = pick(rng);
    Syllable s = c < 2 * fp.free_rank()
                     ? Syllable(FreeLetter{c / 2 + 1, c % 2 ? -1 : 1})
                     : Syllable(random_element(fp.factor(c - 2 * fp.free_rank() + 1), rng));
    if (!prev || !interacts(*prev, s)) return s;
  }
  throw WordError("no syllable avoids the previous one");
}

Word random_word(const FreeProduct& fp, std::size_t length, std::mt19937_64& rng) {
  Word w;
  w.reserve(length);
  while (w.size() < length) w.push_back(random_syllable(fp, rng, w.empty() ? nullptr : &w.back()));
  return w;
}

}  // namespace fpaut
