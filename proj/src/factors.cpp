#include "fpaut/factors.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace fpaut {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Appends a letter to a freely reduced letter list.
void push_free_letter(std::vector<int>& letters, int letter) {
  if (!letters.empty() && letters.back() == -letter)
    letters.pop_back();
  else
    letters.push_back(letter);
}

std::vector<std::pair<int, long>> compress_letters(const std::vector<int>& letters) {
  std::vector<std::pair<int, long>> out;
  for (int l : letters) {
    int gen = std::abs(l) - 1;
    long exp = l > 0 ? 1 : -1;
    if (!out.empty() && out.back().first == gen)
      out.back().second += exp;
    else
      out.emplace_back(gen, exp);
  }
  return out;
}

}  // namespace

FactorGroup FactorGroup::cyclic(int id, int modulus, std::string generator) {
  if (modulus < 2) throw FactorError("cyclic factor needs modulus >= 2");
  FactorGroup g;
  g.id_ = id;
  g.kind_ = FactorKind::cyclic;
  g.modulus_ = modulus;
  g.names_ = {std::move(generator)};
  return g;
}

FactorGroup FactorGroup::table(int id, std::vector<std::vector<int>> table,
                               std::vector<int> generators,
                               std::vector<std::string> generator_names) {
  const int n = static_cast<int>(table.size());
  if (n < 2) throw FactorError("table factor needs at least two elements");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw FactorError("multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw FactorError("multiplication table entry out of range");
  }
  if (generators.size() != generator_names.size())
    throw FactorError("generator list and generator names differ in length");

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw FactorError("multiplication table has no identity");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          std::ostringstream os;
          os << "multiplication table is not associative at (" << a << "," << b << "," << c << ")";
          throw FactorError(os.str());
        }

  std::vector<int> inverse(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] == identity && table[b][a] == identity) inverse[a] = b;
  if (std::find(inverse.begin(), inverse.end(), -1) != inverse.end())
    throw FactorError("multiplication table has an element without inverse");

  // Shortest generator words by breadth-first search from the identity.
  std::vector<std::vector<std::pair<int, long>>> words(n);
  std::vector<bool> seen(n, false);
  seen[identity] = true;
  std::deque<int> queue{identity};
  std::vector<std::vector<int>> raw(n);
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < generators.size(); ++j) {
      int gen = generators[j];
      if (gen < 0 || gen >= n) throw FactorError("generator index out of range");
      int y = table[x][gen];
      if (seen[y]) continue;
      seen[y] = true;
      raw[y] = raw[x];
      raw[y].push_back(static_cast<int>(j) + 1);
      queue.push_back(y);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw FactorError("generators do not generate the table group");
  for (int x = 0; x < n; ++x) words[x] = compress_letters(raw[x]);

  FactorGroup g;
  g.id_ = id;
  g.kind_ = FactorKind::table;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.table_generators_ = std::move(generators);
  g.names_ = std::move(generator_names);
  g.identity_ = identity;
  g.shortest_word_ = std::move(words);
  return g;
}

FactorGroup FactorGroup::free(int id, std::vector<std::string> generators) {
  if (generators.empty()) throw FactorError("free factor needs rank >= 1");
  FactorGroup g;
  g.id_ = id;
  g.kind_ = FactorKind::free;
  g.names_ = std::move(generators);
  return g;
}

std::size_t FactorGroup::order() const {
  switch (kind_) {
    case FactorKind::cyclic: return static_cast<std::size_t>(modulus_);
    case FactorKind::table: return table_.size();
    case FactorKind::free: break;
  }
  throw FactorError("free factor has infinite order");
}

MaybeElement FactorGroup::generator(std::size_t j) const {
  if (j >= names_.size()) throw FactorError("generator index out of range");
  switch (kind_) {
    case FactorKind::cyclic: return FactorElement{id_, {1}};
    case FactorKind::table:
      if (table_generators_[j] == identity_) return std::nullopt;
      return FactorElement{id_, {table_generators_[j]}};
    case FactorKind::free: return FactorElement{id_, {static_cast<int>(j) + 1}};
  }
  return std::nullopt;
}

std::vector<FactorElement> FactorGroup::elements() const {
  std::vector<FactorElement> out;
  switch (kind_) {
    case FactorKind::cyclic:
      for (int e = 1; e < modulus_; ++e) out.push_back({id_, {e}});
      break;
    case FactorKind::table:
      for (int i = 0; i < static_cast<int>(table_.size()); ++i)
        if (i != identity_) out.push_back({id_, {i}});
      break;
    case FactorKind::free: throw FactorError("cannot enumerate a free factor");
  }
  return out;
}

void FactorGroup::check_member(const FactorElement& x) const {
  if (x.factor != id_) {
    std::ostringstream os;
    os << "element of factor " << x.factor << " used in factor " << id_;
    throw FactorError(os.str());
  }
}

MaybeElement FactorGroup::multiply(const MaybeElement& x, const MaybeElement& y) const {
  if (!x) return y;
  if (!y) return x;
  check_member(*x);
  check_member(*y);
  switch (kind_) {
    case FactorKind::cyclic: {
      int e = static_cast<int>(mod(x->data[0] + y->data[0], modulus_));
      if (e == 0) return std::nullopt;
      return FactorElement{id_, {e}};
    }
    case FactorKind::table: {
      int p = table_[x->data[0]][y->data[0]];
      if (p == identity_) return std::nullopt;
      return FactorElement{id_, {p}};
    }
    case FactorKind::free: {
      std::vector<int> letters = x->data;
      for (int l : y->data) push_free_letter(letters, l);
      if (letters.empty()) return std::nullopt;
      return FactorElement{id_, std::move(letters)};
    }
  }
  return std::nullopt;
}

FactorElement FactorGroup::inverse(const FactorElement& x) const {
  check_member(x);
  switch (kind_) {
    case FactorKind::cyclic: return {id_, {modulus_ - x.data[0]}};
    case FactorKind::table: return {id_, {inverse_[x.data[0]]}};
    case FactorKind::free: {
      std::vector<int> letters(x.data.rbegin(), x.data.rend());
      for (int& l : letters) l = -l;
      return {id_, std::move(letters)};
    }
  }
  return x;
}

MaybeElement FactorGroup::power(const MaybeElement& x, long exponent) const {
  if (!x || exponent == 0) return std::nullopt;
  if (kind_ == FactorKind::cyclic) {
    int e = static_cast<int>(mod(static_cast<long>(x->data[0]) * mod(exponent, modulus_), modulus_));
    if (e == 0) return std::nullopt;
    return FactorElement{id_, {e}};
  }
  FactorElement base = exponent < 0 ? inverse(*x) : *x;
  long n = exponent < 0 ? -exponent : exponent;
  MaybeElement result;
  MaybeElement square = base;
  // Square-and-multiply; free-kind growth is linear in n anyway.
  while (n > 0) {
    if (n & 1) result = multiply(result, square);
    n >>= 1;
    if (n > 0) square = multiply(square, square);
  }
  return result;
}

std::vector<std::pair<int, long>> FactorGroup::as_generator_word(const FactorElement& x) const {
  check_member(x);
  switch (kind_) {
    case FactorKind::cyclic: return {{0, x.data[0]}};
    case FactorKind::table: return shortest_word_[x.data[0]];
    case FactorKind::free: return compress_letters(x.data);
  }
  return {};
}

MaybeElement FactorGroup::from_generator_word(const std::vector<std::pair<int, long>>& word) const {
  MaybeElement result;
  for (auto [gen, exp] : word) result = multiply(result, power(generator(static_cast<std::size_t>(gen)), exp));
  return result;
}

bool FactorGroup::is_valid(const FactorElement& x) const {
  if (x.factor != id_) return false;
  switch (kind_) {
    case FactorKind::cyclic:
      return x.data.size() == 1 && x.data[0] > 0 && x.data[0] < modulus_;
    case FactorKind::table:
      return x.data.size() == 1 && x.data[0] >= 0 &&
             x.data[0] < static_cast<int>(table_.size()) && x.data[0] != identity_;
    case FactorKind::free: {
      if (x.data.empty()) return false;
      const int rank = static_cast<int>(names_.size());
      for (std::size_t i = 0; i < x.data.size(); ++i) {
        int l = x.data[i];
        if (l == 0 || std::abs(l) > rank) return false;
        if (i > 0 && x.data[i - 1] == -l) return false;
      }
      return true;
    }
  }
  return false;
}

std::string FactorGroup::format(const FactorElement& x) const {
  std::ostringstream os;
  bool first = true;
  for (auto [gen, exp] : as_generator_word(x)) {
    if (!first) os << '.';
    first = false;
    os << names_[static_cast<std::size_t>(gen)];
    if (exp != 1) os << '^' << exp;
  }
  return os.str();
}

MaybeElement elem_mul(const FactorGroup& group, const FactorElement& x, const FactorElement& y) {
  return group.multiply(x, y);
}

FactorAutomorphism FactorAutomorphism::identity(const FactorGroup& group) {
  FactorAutomorphism a;
  a.source = a.target = group.id();
  for (std::size_t j = 0; j < group.generator_count(); ++j) {
    a.images.push_back(group.generator(j));
    a.inverse_images.push_back(group.generator(j));
  }
  return a;
}

FactorAutomorphism FactorAutomorphism::inverse() const {
  return FactorAutomorphism{target, source, inverse_images, images};
}

MaybeElement apply_factor_aut(const FactorGroup& source, const FactorGroup& target,
                              const FactorAutomorphism& alpha, const FactorElement& x) {
  if (x.factor != alpha.source || source.id() != alpha.source || target.id() != alpha.target)
    throw FactorError("factor automorphism applied outside its source factor");
  if (alpha.images.size() != source.generator_count())
    throw FactorError("factor automorphism has wrong number of generator images");
  MaybeElement result;
  for (auto [gen, exp] : source.as_generator_word(x))
    result = target.multiply(result, target.power(alpha.images[static_cast<std::size_t>(gen)], exp));
  return result;
}

MaybeElement apply_factor_aut(const FactorGroup& source, const FactorGroup& target,
                              const FactorAutomorphism& alpha, const MaybeElement& x) {
  if (!x) return std::nullopt;
  return apply_factor_aut(source, target, alpha, *x);
}

FactorAutomorphism compose(const FactorGroup& inner_source, const FactorGroup& middle,
                           const FactorGroup& outer_target, const FactorAutomorphism& outer,
                           const FactorAutomorphism& inner) {
  if (inner.target != outer.source) throw FactorError("factor automorphisms do not compose");
  FactorAutomorphism c;
  c.source = inner.source;
  c.target = outer.target;
  for (const auto& img : inner.images)
    c.images.push_back(apply_factor_aut(middle, outer_target, outer, img));
  const FactorAutomorphism inner_inv = inner.inverse();
  for (const auto& img : outer.inverse_images)
    c.inverse_images.push_back(apply_factor_aut(middle, inner_source, inner_inv, img));
  return c;
}

FactorAutVerdict verify_factor_aut(const FactorGroup& source, const FactorGroup& target,
                                   const FactorAutomorphism& alpha) {
  FactorAutVerdict v;
  auto fail = [&](std::string why) {
    v.ok = false;
    v.witness = std::move(why);
    return v;
  };
  auto show = [](const FactorGroup& g, const MaybeElement& e) {
    return e ? g.format(*e) : std::string("1");
  };
  if (alpha.source != source.id() || alpha.target != target.id())
    return fail("factor ids do not match");
  if (source.kind() != target.kind()) return fail("source and target kinds differ");
  if (alpha.images.size() != source.generator_count() ||
      alpha.inverse_images.size() != target.generator_count())
    return fail("wrong number of generator images");
  for (const auto& e : alpha.images)
    if (e && !target.is_valid(*e)) return fail("image outside target factor");
  for (const auto& e : alpha.inverse_images)
    if (e && !source.is_valid(*e)) return fail("inverse image outside source factor");

  const FactorAutomorphism inv = alpha.inverse();
  for (std::size_t j = 0; j < source.generator_count(); ++j) {
    MaybeElement g = source.generator(j);
    MaybeElement back = apply_factor_aut(target, source, inv, apply_factor_aut(source, target, alpha, g));
    if (back != g) return fail(source.generator_names()[j] + " -> " + show(source, back));
  }
  for (std::size_t j = 0; j < target.generator_count(); ++j) {
    MaybeElement g = target.generator(j);
    MaybeElement back = apply_factor_aut(source, target, alpha, apply_factor_aut(target, source, inv, g));
    if (back != g) return fail(target.generator_names()[j] + " -> " + show(target, back));
  }

  if (source.is_finite()) {
    if (source.order() != target.order()) return fail("orders differ");
    std::vector<MaybeElement> all{std::nullopt};
    for (auto& e : source.elements()) all.emplace_back(e);
    std::vector<MaybeElement> images;
    for (const auto& x : all) images.push_back(apply_factor_aut(source, target, alpha, x));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) {
        MaybeElement lhs = apply_factor_aut(source, target, alpha, source.multiply(all[i], all[j]));
        MaybeElement rhs = target.multiply(images[i], images[j]);
        if (lhs != rhs)
          return fail("not a homomorphism at (" + show(source, all[i]) + ", " + show(source, all[j]) + ")");
      }
    std::vector<MaybeElement> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return fail("not injective");
  }
  return v;
}

}  // namespace fpaut
