#include "tw/relalg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "tw/error.hpp"

namespace tw {

namespace {

RelElem bit(int a) { return RelElem{1} << a; }

template <typename Fn>
void for_each_atom(RelElem x, Fn&& fn) {
  while (x) {
    fn(std::countr_zero(x));
    x &= x - 1;
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void AtomStructure::validate() const {
  if (k < 1) throw UsageError("atom structure needs at least one atom");
  if (k > kMaxRelAtoms) throw CapacityError("atom structure has " + std::to_string(k) + " atoms; limit is 12");
  if (static_cast<int>(converse.size()) != k) throw UsageError("converse table has the wrong length");
  for (int a = 0; a < k; ++a) {
    const int c = converse[static_cast<std::size_t>(a)];
    if (c < 0 || c >= k || converse[static_cast<std::size_t>(c)] != a)
      throw UsageError("converse is not an involution at atom " + std::to_string(a));
  }
  if (identity >> k) throw UsageError("identity atom out of range");
  for (const auto& t : cycles)
    for (int a : t)
      if (a < 0 || a >= k) throw UsageError("cycle atom out of range");
}

namespace {

std::array<int, 3> peirce1(const AtomStructure& s, const std::array<int, 3>& t) {
  return {s.converse[static_cast<std::size_t>(t[0])], t[2], t[1]};
}
std::array<int, 3> peirce2(const AtomStructure& s, const std::array<int, 3>& t) {
  return {t[2], s.converse[static_cast<std::size_t>(t[1])], t[0]};
}

}  // namespace

bool AtomStructure::peircean_closed() const {
  for (const auto& t : cycles)
    if (!cycles.count(peirce1(*this, t)) || !cycles.count(peirce2(*this, t))) return false;
  return true;
}

AtomStructure AtomStructure::peircean_closure() const {
  AtomStructure out = *this;
  std::vector<std::array<int, 3>> todo(cycles.begin(), cycles.end());
  while (!todo.empty()) {
    const auto t = todo.back();
    todo.pop_back();
    for (const auto& u : {peirce1(out, t), peirce2(out, t)})
      if (out.cycles.insert(u).second) todo.push_back(u);
  }
  return out;
}

AtomStructure AtomStructure::parse(std::string_view text) {
  AtomStructure s;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_k = false;
  std::vector<std::pair<int, int>> conv;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&] { return ParseError("atom structure line " + std::to_string(lineno) + ": cannot read '" + trim(line) + "'"); };
    int a = 0, b = 0, c = 0;
    if (word == "atoms") {
      if (!(ls >> a) || have_k) throw fail();
      s.k = a;
      have_k = true;
    } else if (!have_k) {
      throw ParseError("atom structure must start with 'atoms k'");
    } else if (word == "conv") {
      if (!(ls >> a >> b)) throw fail();
      conv.push_back({a, b});
    } else if (word == "id") {
      if (!(ls >> a) || a < 0 || a >= s.k) throw fail();
      s.identity |= bit(a);
    } else if (word == "cycle") {
      if (!(ls >> a >> b >> c)) throw fail();
      s.cycles.insert({a, b, c});
    } else {
      throw fail();
    }
    if (ls >> word) throw fail();
  }
  if (!have_k) throw ParseError("atom structure must start with 'atoms k'");
  if (s.k > kMaxRelAtoms) throw CapacityError("atom structure has " + std::to_string(s.k) + " atoms; limit is 12");
  if (s.k < 1) throw ParseError("atom structure needs at least one atom");
  s.converse.resize(static_cast<std::size_t>(s.k));
  std::iota(s.converse.begin(), s.converse.end(), 0);
  for (auto [a, b] : conv) {
    if (a < 0 || a >= s.k || b < 0 || b >= s.k) throw ParseError("conv atom out of range");
    s.converse[static_cast<std::size_t>(a)] = b;
    s.converse[static_cast<std::size_t>(b)] = a;
  }
  s.validate();
  return s;
}

std::string AtomStructure::to_string() const {
  std::ostringstream out;
  out << "atoms " << k << '\n';
  for (int a = 0; a < k; ++a) {
    const int c = converse[static_cast<std::size_t>(a)];
    if (a < c) out << "conv " << a << ' ' << c << '\n';
  }
  for_each_atom(identity, [&](int a) { out << "id " << a << '\n'; });
  for (const auto& t : cycles) out << "cycle " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return out.str();
}

AtomStructure structure_a1() {
  AtomStructure s{1, {0}, 1, {{0, 0, 0}}};
  return s;
}

AtomStructure structure_a2() {
  AtomStructure s{2, {0, 1}, 1, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};
  return s;
}

AtomStructure structure_a3() {
  AtomStructure s = structure_a2();
  s.cycles.insert({1, 1, 1});
  return s;
}

AtomStructure proper_structure(int n) {
  if (n < 1 || n > 3) throw CapacityError("proper relation algebras are built for bases of 1 to 3 points");
  AtomStructure s;
  s.k = n * n;
  s.converse.resize(static_cast<std::size_t>(s.k));
  for (int i = 0; i < n; ++i) {
    s.identity |= bit(i * n + i);
    for (int j = 0; j < n; ++j) {
      s.converse[static_cast<std::size_t>(i * n + j)] = j * n + i;
      for (int l = 0; l < n; ++l) s.cycles.insert({i * n + j, j * n + l, i * n + l});
    }
  }
  return s;
}

FiniteRelAlgebra::FiniteRelAlgebra(AtomStructure as) : as_(std::move(as)) {
  as_.validate();
  table_.assign(static_cast<std::size_t>(as_.k * as_.k), 0);
  for (const auto& t : as_.cycles) table_[static_cast<std::size_t>(t[0] * as_.k + t[1])] |= bit(t[2]);
}

RelElem FiniteRelAlgebra::converse(RelElem x) const {
  RelElem out = 0;
  for_each_atom(x, [&](int a) { out |= bit(as_.converse[static_cast<std::size_t>(a)]); });
  return out;
}

RelElem FiniteRelAlgebra::compose(RelElem x, RelElem y) const {
  RelElem out = 0;
  for_each_atom(x, [&](int a) { for_each_atom(y, [&](int b) { out |= atom_product(a, b); }); });
  return out;
}

std::string FiniteRelAlgebra::show(RelElem x) const {
  std::string out = "{";
  bool first = true;
  for_each_atom(x, [&](int a) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(a);
  });
  return out + "}";
}

std::string FiniteRelAlgebra::table_text() const {
  std::ostringstream out;
  for (int a = 0; a < as_.k; ++a)
    for (int b = 0; b < as_.k; ++b) out << a << " . " << b << " = " << show(atom_product(a, b)) << '\n';
  return out.str();
}

bool triangle_laws_atoms(const FiniteRelAlgebra& A) {
  const int k = A.atom_count();
  const auto& cv = A.structure().converse;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        const bool p = A.atom_product(a, b) & bit(c);
        const bool q = A.atom_product(cv[static_cast<std::size_t>(a)], c) & bit(b);
        const bool r = A.atom_product(c, cv[static_cast<std::size_t>(b)]) & bit(a);
        if (p != q || q != r) return false;
      }
  return true;
}

bool triangle_laws_elements(const FiniteRelAlgebra& A) {
  const std::size_t n = A.size();
  std::vector<RelElem> comp(n * n);
  std::vector<RelElem> conv(n);
  for (RelElem x = 0; x < n; ++x) {
    conv[x] = A.converse(x);
    for (RelElem y = 0; y < n; ++y) comp[x * n + y] = A.compose(x, y);
  }
  for (RelElem x = 0; x < n; ++x)
    for (RelElem y = 0; y < n; ++y)
      for (RelElem z = 0; z < n; ++z) {
        const bool p = (comp[x * n + y] & z) == 0;
        const bool q = (comp[conv[x] * n + z] & y) == 0;
        const bool r = (comp[z * n + conv[y]] & x) == 0;
        if (p != q || q != r) return false;
      }
  return true;
}

AxiomReport check_axioms(const FiniteRelAlgebra& A) {
  AxiomReport r;
  const int k = A.atom_count();
  const RelElem one = A.one();
  const RelElem e = A.identity();
  const auto& cv = A.structure().converse;

  // Operators normal and additive; on small algebras also checked pairwise.
  r.boolean_reduct = A.compose(0, one) == 0 && A.compose(one, 0) == 0 && A.converse(0) == 0;
  if (A.size() <= 256) {
    for (RelElem x = 0; x <= one && r.boolean_reduct; ++x)
      for (RelElem y = 0; y <= one; ++y)
        if (A.converse(x | y) != (A.converse(x) | A.converse(y)) ||
            A.compose(x | y, one) != (A.compose(x, one) | A.compose(y, one)) ||
            A.compose(one, x | y) != (A.compose(one, x) | A.compose(one, y))) {
          r.boolean_reduct = false;
          break;
        }
  }
  r.converse_involution = true;
  for (int a = 0; a < k; ++a)
    if (cv[static_cast<std::size_t>(cv[static_cast<std::size_t>(a)])] != a) r.converse_involution = false;

  r.identity = true;
  for (int a = 0; a < k; ++a)
    if (A.compose(e, bit(a)) != bit(a) || A.compose(bit(a), e) != bit(a)) r.identity = false;

  r.triangle_atoms = triangle_laws_atoms(A);
  if (A.size() <= 256) r.triangle_elements = triangle_laws_elements(A);

  r.semiassociative = true;
  for (int a = 0; a < k && r.semiassociative; ++a) {
    const RelElem x1 = A.compose(bit(a), one);
    if (A.compose(x1, one) != x1) {
      r.semiassociative = false;
      r.semiassociative_witness = bit(a);
    }
  }

  r.associative = true;
  for (int a = 0; a < k && r.associative; ++a)
    for (int b = 0; b < k && r.associative; ++b)
      for (int c = 0; c < k; ++c)
        if (A.compose(A.atom_product(a, b), bit(c)) != A.compose(bit(a), A.atom_product(b, c))) {
          r.associative = false;
          break;
        }

  r.reflexive = true;
  for (RelElem x = 1; x <= one; ++x)
    if ((x & ~A.compose(x, x)) != 0) {
      r.reflexive = false;
      r.reflexive_witness = x;
      break;
    }

  r.symmetric = true;
  for (int a = 0; a < k; ++a)
    if (cv[static_cast<std::size_t>(a)] != a) r.symmetric = false;

  // x.(x' & y) <= x + y reduces to x.c <= x + c for atoms c outside x.
  r.subadditive = true;
  for (RelElem x = 0; x <= one && r.subadditive; ++x)
    for_each_atom(one & ~x, [&](int c) {
      if (A.compose(x, bit(c)) & ~(x | bit(c))) r.subadditive = false;
    });
  return r;
}

std::string AxiomReport::text(const FiniteRelAlgebra& a) const {
  std::ostringstream out;
  auto yn = [](bool b) { return b ? "true" : "false"; };
  out << "boolean-reduct=" << yn(boolean_reduct) << '\n';
  out << "converse-involution=" << yn(converse_involution) << '\n';
  out << "identity=" << yn(identity) << '\n';
  out << "triangle-atoms=" << yn(triangle_atoms) << '\n';
  out << "triangle-elements=" << (triangle_elements ? yn(*triangle_elements) : "not-run") << '\n';
  out << "semiassociative=" << yn(semiassociative);
  if (semiassociative_witness) out << " witness=" << a.show(*semiassociative_witness);
  out << '\n';
  out << "associative=" << yn(associative) << '\n';
  out << "reflexive=" << yn(reflexive);
  if (reflexive_witness) out << " witness=" << a.show(*reflexive_witness);
  out << '\n';
  out << "symmetric=" << yn(symmetric) << '\n';
  out << "subadditive=" << yn(subadditive) << '\n';
  return out.str();
}

FiniteRelAlgebra minimal_subalgebra(const FiniteRelAlgebra& A) {
  std::set<RelElem> sub{A.zero(), A.one(), A.identity()};
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<RelElem> cur(sub.begin(), sub.end());
    for (RelElem x : cur) {
      grew |= sub.insert(A.complement(x)).second;
      grew |= sub.insert(A.converse(x)).second;
      for (RelElem y : cur) {
        grew |= sub.insert(x | y).second;
        grew |= sub.insert(A.compose(x, y)).second;
      }
    }
  }
  std::vector<RelElem> atoms;
  for (RelElem x : sub) {
    if (x == 0) continue;
    bool minimal = true;
    for (RelElem y : sub)
      if (y != 0 && y != x && (y & ~x) == 0) minimal = false;
    if (minimal) atoms.push_back(x);
  }
  std::sort(atoms.begin(), atoms.end());
  const int k = static_cast<int>(atoms.size());
  auto atoms_below = [&](RelElem x) {
    RelElem out = 0;
    for (int i = 0; i < k; ++i)
      if ((atoms[static_cast<std::size_t>(i)] & ~x) == 0) out |= bit(i);
    return out;
  };
  AtomStructure s;
  s.k = k;
  s.converse.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    s.converse[static_cast<std::size_t>(i)] = std::countr_zero(atoms_below(A.converse(atoms[static_cast<std::size_t>(i)])));
    for (int j = 0; j < k; ++j)
      for_each_atom(atoms_below(A.compose(atoms[static_cast<std::size_t>(i)], atoms[static_cast<std::size_t>(j)])),
                    [&](int l) { s.cycles.insert({i, j, l}); });
  }
  s.identity = atoms_below(A.identity());
  return FiniteRelAlgebra(std::move(s));
}

bool isomorphic(const AtomStructure& a, const AtomStructure& b) {
  if (a.k != b.k || a.cycles.size() != b.cycles.size() || std::popcount(a.identity) != std::popcount(b.identity))
    return false;
  if (a.k > 8) throw CapacityError("isomorphism test is limited to 8 atoms");
  std::vector<int> pi(static_cast<std::size_t>(a.k));
  std::iota(pi.begin(), pi.end(), 0);
  do {
    auto P = [&](int i) { return pi[static_cast<std::size_t>(i)]; };
    bool ok = true;
    for (int i = 0; i < a.k && ok; ++i) {
      ok = P(a.converse[static_cast<std::size_t>(i)]) == b.converse[static_cast<std::size_t>(P(i))] &&
           ((a.identity >> i) & 1U) == ((b.identity >> P(i)) & 1U);
    }
    for (auto it = a.cycles.begin(); ok && it != a.cycles.end(); ++it)
      ok = b.cycles.count({P((*it)[0]), P((*it)[1]), P((*it)[2])}) != 0;
    if (ok) return true;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return false;
}

CompositionScheme CompositionScheme::parse(std::string_view text) {
  std::optional<Term> comp;
  std::optional<Term> conv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("scheme line needs 'comp:' or 'conv:': " + t);
    const std::string key = trim(std::string_view(t).substr(0, colon));
    Term term = parse_term(std::string_view(t).substr(colon + 1));
    if (key == "comp") {
      if (term.arity() > 2) throw ParseError("comp term may only use x and y");
      comp = term;
    } else if (key == "conv") {
      if (term.arity() > 1) throw ParseError("conv term may only use x");
      conv = term;
    } else {
      throw ParseError("unknown scheme key '" + key + "'");
    }
  }
  if (!comp) throw ParseError("scheme has no 'comp:' line");
  CompositionScheme s{*comp};
  if (conv) s.conv = *conv;
  return s;
}

SymbolicSet rel_compose_symbolic(const SParamPtr& s, const std::optional<CompositionScheme>& scheme,
                                 const SymbolicSet& x, const SymbolicSet& y) {
  if (!scheme)
    throw ConfigurationError(
        "no composition scheme: the term equivalence between total tense algebras and symmetric "
        "semiassociative r-algebras (Jipsen, Kramer and Maddux, Theorem 7) must be supplied as a scheme file");
  return eval_term(scheme->comp, SymbolicCarrier(s), {x, y});
}

}  // namespace tw
