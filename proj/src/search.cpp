#include "tw/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "tw/error.hpp"
#include "tw/parallel.hpp"

namespace tw {

namespace {

AdjacencyCode edge_bit(int i, int j, int k) { return AdjacencyCode{1} << (k * k - 1 - (i * k + j)); }

bool has(AdjacencyCode code, int i, int j, int k) { return (code & edge_bit(i, j, k)) != 0; }

std::vector<std::vector<int>> permutations(int n, int first = 0) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin() + first, p.end()));
  return out;
}

// Fixed chunk count so the split does not depend on the number of workers.
constexpr std::size_t kChunks = 64;

}  // namespace

AdjacencyCode adjacency_code(const std::vector<std::vector<bool>>& adj) {
  const int k = static_cast<int>(adj.size());
  if (k > kMaxFrameSearch) throw CapacityError("adjacency codes are limited to 5 points");
  AdjacencyCode code = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) code |= edge_bit(i, j, k);
  return code;
}

AdjacencyCode canonical_code(AdjacencyCode code, int k) {
  static const std::vector<std::vector<std::vector<int>>> perms = [] {
    std::vector<std::vector<std::vector<int>>> all;
    for (int n = 0; n <= kMaxFrameSearch; ++n) all.push_back(permutations(n));
    return all;
  }();
  AdjacencyCode best = code;
  for (const auto& p : perms[static_cast<std::size_t>(k)]) {
    AdjacencyCode c = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (has(code, i, j, k)) c |= edge_bit(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)], k);
    best = std::min(best, c);
  }
  return best;
}

Frame frame_from_code(AdjacencyCode code, int k) {
  std::vector<VertexId> vs;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (int i = 0; i < k; ++i) {
    vs.push_back({0, i + 1});
    for (int j = 0; j < k; ++j)
      if (has(code, i, j, k)) edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }
  return Frame(std::move(vs), edges);
}

std::string code_text(AdjacencyCode code, int k) {
  std::string out;
  for (int i = 0; i < k; ++i) {
    if (i) out += '/';
    for (int j = 0; j < k; ++j) out += has(code, i, j, k) ? '1' : '0';
  }
  return out;
}

std::vector<AdjacencyCode> enumerate_total_codes(int k, unsigned jobs) {
  if (k < 1 || k > kMaxFrameSearch) throw CapacityError("total frames are enumerated for 1 to 5 points");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs.push_back({i, j});
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
  AdjacencyCode loops = 0;
  for (int i = 0; i < k; ++i) loops |= edge_bit(i, i, k);

  // Each unordered pair carries i->j, j->i, or both.
  auto chunk = [&](std::size_t c) {
    std::set<AdjacencyCode> seen;
    for (std::size_t idx = c; idx < total; idx += kChunks) {
      AdjacencyCode code = loops;
      std::size_t rest = idx;
      for (auto [i, j] : pairs) {
        const std::size_t d = rest % 3;
        rest /= 3;
        if (d != 1) code |= edge_bit(i, j, k);
        if (d != 0) code |= edge_bit(j, i, k);
      }
      seen.insert(canonical_code(code, k));
    }
    return std::vector<AdjacencyCode>(seen.begin(), seen.end());
  };
  std::set<AdjacencyCode> all;
  for (const auto& part : parallel_map<std::vector<AdjacencyCode>>(kChunks, jobs, chunk)) all.insert(part.begin(), part.end());
  return {all.begin(), all.end()};
}

std::vector<Frame> enumerate_total_frames(int k, unsigned jobs) {
  std::vector<Frame> out;
  for (auto code : enumerate_total_codes(k, jobs)) out.push_back(frame_from_code(code, k));
  return out;
}

std::string to_string(Minimality::Kind k) {
  switch (k) {
    case Minimality::Kind::TrivialSize2: return "TrivialSize2";
    case Minimality::Kind::MinimalCoverCandidate: return "MinimalCoverCandidate";
    case Minimality::Kind::NotMinimal: return "NotMinimal";
  }
  return "?";
}

std::size_t generated_atom_count(const FiniteTenseAlgebra& a, const std::vector<IndexSet>& gens) {
  std::vector<IndexSet> cells{a.one()};
  auto refine = [&](const IndexSet& x) {
    std::vector<IndexSet> next;
    for (const auto& c : cells) {
      IndexSet in = c & x;
      IndexSet out = c - x;
      if (!in.empty()) next.push_back(std::move(in));
      if (!out.empty()) next.push_back(std::move(out));
    }
    const bool grew = next.size() != cells.size();
    cells = std::move(next);
    return grew;
  };
  for (const auto& x : gens) refine(x);
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<IndexSet> snapshot = cells;
    for (const auto& c : snapshot) {
      grew |= refine(a.f(c));
      grew |= refine(a.g(c));
    }
  }
  return cells.size();
}

namespace {

IndexSet from_mask(std::uint32_t mask, std::size_t n) {
  IndexSet x(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1U) x.insert(i);
  return x;
}

std::uint32_t to_mask(const IndexSet& x) {
  std::uint32_t m = 0;
  for (auto i : x.members()) m |= std::uint32_t{1} << i;
  return m;
}

}  // namespace

Minimality classify_minimal(const FiniteTenseAlgebra& a) {
  const std::size_t n = a.atom_count();
  if (n > 10) throw CapacityError("minimality is classified for at most 10 atoms");
  if (n == 1) return {Minimality::Kind::TrivialSize2, std::nullopt};
  const std::uint32_t one = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t m = 1; m < one; ++m) {
    IndexSet x = from_mask(m, n);
    if (generated_atom_count(a, {x}) < n) return {Minimality::Kind::NotMinimal, std::move(x)};
  }
  return {Minimality::Kind::MinimalCoverCandidate, std::nullopt};
}

bool is_total(const FiniteTenseAlgebra& a) {
  for (std::size_t i = 0; i < a.atom_count(); ++i)
    if (!(a.f_atom(i) | a.g_atom(i)).is_full()) return false;
  return true;
}

bool check_discriminator(const FiniteTenseAlgebra& a) {
  const std::size_t n = a.atom_count();
  if (n > 8) throw CapacityError("discriminator check is limited to 8 atoms");
  if (!is_total(a)) throw PreconditionError("algebra is not total: some atom has f(x) + g(x) != 1");
  const std::uint32_t size = std::uint32_t{1} << n;
  const std::uint32_t one = size - 1;
  std::vector<std::uint32_t> fa(n), ga(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = to_mask(a.f_atom(i));
    ga[i] = to_mask(a.g_atom(i));
  }
  std::vector<std::uint32_t> u(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    std::uint32_t v = x;
    for (std::size_t i = 0; i < n; ++i)
      if ((x >> i) & 1U) v |= fa[i] | ga[i];
    u[x] = v;
    if (v != (x == 0 ? 0 : one)) return false;
  }
  for (std::uint32_t x = 0; x < size; ++x)
    for (std::uint32_t y = 0; y < size; ++y) {
      const std::uint32_t d = u[x ^ y];
      for (std::uint32_t z = 0; z < size; ++z) {
        const std::uint32_t t = (d & x) | (~d & one & z);
        if (t != (x != y ? x : z)) return false;
      }
    }
  return true;
}

StructureConstraints StructureConstraints::parse(const std::string& text) {
  StructureConstraints c;
  std::istringstream in(text);
  std::string word;
  while (std::getline(in, word, ',')) {
    word.erase(std::remove_if(word.begin(), word.end(), [](unsigned char ch) { return std::isspace(ch); }), word.end());
    if (word.empty()) continue;
    if (word == "sym") c.symmetric = true;
    else if (word == "refl") c.reflexive = true;
    else if (word == "subadd") c.subadditive = true;
    else if (word == "sa") c.semiassociative = true;
    else if (word == "assoc") c.associative = true;
    else throw UsageError("unknown constraint '" + word + "' (use sym, refl, subadd, sa, assoc)");
  }
  return c;
}

std::string StructureConstraints::to_string() const {
  std::vector<std::string> parts;
  if (symmetric) parts.push_back("sym");
  if (reflexive) parts.push_back("refl");
  if (subadditive) parts.push_back("subadd");
  if (semiassociative) parts.push_back("sa");
  if (associative) parts.push_back("assoc");
  if (parts.empty()) return "none";
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

bool satisfies(const AxiomReport& r, const StructureConstraints& c) {
  return (!c.symmetric || r.symmetric) && (!c.reflexive || r.reflexive) && (!c.subadditive || r.subadditive) &&
         (!c.semiassociative || r.semiassociative) && (!c.associative || r.associative);
}

namespace {

// Involutions of {1..k-1}; atom 0 is always fixed.
std::vector<std::vector<int>> involutions(int k, bool identity_only) {
  std::vector<std::vector<int>> out;
  std::vector<int> conv(static_cast<std::size_t>(k), -1);
  conv[0] = 0;
  auto go = [&](auto&& self, int i) -> void {
    while (i < k && conv[static_cast<std::size_t>(i)] != -1) ++i;
    if (i == k) {
      out.push_back(conv);
      return;
    }
    conv[static_cast<std::size_t>(i)] = i;
    self(self, i + 1);
    if (!identity_only) {
      for (int j = i + 1; j < k; ++j) {
        if (conv[static_cast<std::size_t>(j)] != -1) continue;
        conv[static_cast<std::size_t>(i)] = j;
        conv[static_cast<std::size_t>(j)] = i;
        self(self, i + 1);
        conv[static_cast<std::size_t>(j)] = -1;
      }
    }
    conv[static_cast<std::size_t>(i)] = -1;
  };
  go(go, 1);
  return out;
}

using Key = std::pair<std::vector<int>, std::vector<std::array<int, 3>>>;

Key relabel(const AtomStructure& s, const std::vector<int>& p) {
  Key key;
  key.first.assign(static_cast<std::size_t>(s.k), 0);
  for (int a = 0; a < s.k; ++a)
    key.first[static_cast<std::size_t>(p[static_cast<std::size_t>(a)])] =
        p[static_cast<std::size_t>(s.converse[static_cast<std::size_t>(a)])];
  for (const auto& t : s.cycles)
    key.second.push_back({p[static_cast<std::size_t>(t[0])], p[static_cast<std::size_t>(t[1])],
                          p[static_cast<std::size_t>(t[2])]});
  std::sort(key.second.begin(), key.second.end());
  return key;
}

AtomStructure from_key(int k, const Key& key) {
  AtomStructure s;
  s.k = k;
  s.converse = key.first;
  s.identity = 1;
  s.cycles.insert(key.second.begin(), key.second.end());
  return s;
}

}  // namespace

std::vector<AtomStructure> enumerate_atom_structures(int k, bool symmetric_only, unsigned jobs) {
  if (k < 1 || k > kMaxStructureSearch) throw CapacityError("atom structures are enumerated for 1 to 4 atoms");
  const auto perms = permutations(k, 1);
  std::set<Key> keys;
  for (const auto& conv : involutions(k, symmetric_only)) {
    AtomStructure base;
    base.k = k;
    base.converse = conv;
    base.identity = 1;
    for (int a = 0; a < k; ++a) {
      base.cycles.insert({0, a, a});
      base.cycles.insert({a, 0, a});
      base.cycles.insert({a, conv[static_cast<std::size_t>(a)], 0});
    }
    // Peircean orbits of triples of non-identity atoms.
    std::vector<std::vector<std::array<int, 3>>> orbits;
    std::set<std::array<int, 3>> placed;
    for (int a = 1; a < k; ++a)
      for (int b = 1; b < k; ++b)
        for (int c = 1; c < k; ++c) {
          if (placed.count({a, b, c})) continue;
          AtomStructure one{k, conv, 1, {{a, b, c}}};
          const auto closed = one.peircean_closure();
          orbits.emplace_back(closed.cycles.begin(), closed.cycles.end());
          placed.insert(closed.cycles.begin(), closed.cycles.end());
        }
    const std::size_t subsets = std::size_t{1} << orbits.size();
    auto chunk = [&](std::size_t c) {
      std::set<Key> local;
      for (std::size_t mask = c; mask < subsets; mask += kChunks) {
        AtomStructure s = base;
        for (std::size_t o = 0; o < orbits.size(); ++o)
          if ((mask >> o) & 1U) s.cycles.insert(orbits[o].begin(), orbits[o].end());
        Key best = relabel(s, perms.front());
        for (const auto& p : perms) best = std::min(best, relabel(s, p));
        local.insert(std::move(best));
      }
      return std::vector<Key>(local.begin(), local.end());
    };
    for (const auto& part : parallel_map<std::vector<Key>>(kChunks, jobs, chunk)) keys.insert(part.begin(), part.end());
  }
  std::vector<AtomStructure> out;
  for (const auto& key : keys) out.push_back(from_key(k, key));
  return out;
}

std::string SearchReport::text() const {
  std::ostringstream out;
  out << "mode=" << mode << '\n' << "k=" << k << '\n';
  if (!constraints.empty()) out << "constraints=" << constraints << '\n';
  out << "raw=" << raw << '\n' << "classes=" << classes << '\n';
  for (const auto& [name, n] : passing) out << "passing." << name << '=' << n << '\n';
  for (const auto& r : representatives) out << "rep " << r << '\n';
  return out.str();
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string structure_line(const AtomStructure& s) {
  std::string out = "conv=";
  for (int a = 0; a < s.k; ++a) out += (a ? "," : "") + std::to_string(s.converse[static_cast<std::size_t>(a)]);
  out += " cycles=";
  bool first = true;
  for (const auto& t : s.cycles) {
    if (t[0] == 0 || t[1] == 0 || t[2] == 0) continue;
    out += (first ? "" : ",") + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
    first = false;
  }
  if (first) out += "-";
  return out;
}

}  // namespace

SearchReport search_frames(int k, unsigned jobs) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchReport r;
  r.mode = "frames";
  r.k = k;
  r.raw = 1;
  for (int i = 0; i < k * (k - 1) / 2; ++i) r.raw *= 3;
  const auto codes = enumerate_total_codes(k, jobs);
  r.classes = codes.size();
  struct Row {
    Minimality m;
    bool disc = false;
  };
  const auto rows = parallel_map<Row>(codes.size(), jobs, [&](std::size_t i) {
    const FiniteTenseAlgebra a = as_finite_algebra(frame_from_code(codes[i], k));
    return Row{classify_minimal(a), check_discriminator(a)};
  });
  std::map<std::string, std::size_t> tally;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const auto& row = rows[i];
    std::string line = code_text(codes[i], k) + " " + to_string(row.m.kind);
    if (row.m.witness) {
      line += " witness={";
      for (auto v : row.m.witness->members()) line += (line.back() == '{' ? "" : ",") + std::to_string(v);
      line += "}";
    }
    line += std::string(" discriminator=") + (row.disc ? "true" : "false");
    r.representatives.push_back(line);
    ++tally[to_string(row.m.kind)];
    if (row.disc) ++tally["discriminator"];
  }
  for (const char* name : {"discriminator", "MinimalCoverCandidate", "NotMinimal", "TrivialSize2"})
    r.passing.push_back({name, tally[name]});
  r.seconds = seconds_since(t0);
  return r;
}

SearchReport search_structures(int k, const StructureConstraints& c, unsigned jobs) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchReport r;
  r.mode = "structures";
  r.k = k;
  r.constraints = c.to_string();
  const auto all = enumerate_atom_structures(k, c.symmetric, jobs);
  r.classes = all.size();
  // Raw count: every subset of Peircean orbits for every converse.
  r.raw = 0;
  for (const auto& conv : involutions(k, c.symmetric)) {
    std::set<std::array<int, 3>> placed;
    std::size_t orbits = 0;
    for (int a = 1; a < k; ++a)
      for (int b = 1; b < k; ++b)
        for (int d = 1; d < k; ++d) {
          if (placed.count({a, b, d})) continue;
          const auto closed = AtomStructure{k, conv, 1, {{a, b, d}}}.peircean_closure();
          placed.insert(closed.cycles.begin(), closed.cycles.end());
          ++orbits;
        }
    r.raw += std::size_t{1} << orbits;
  }
  const auto reports = parallel_map<AxiomReport>(all.size(), jobs, [&](std::size_t i) { return check_axioms(expand(all[i])); });
  std::size_t n_sym = 0, n_refl = 0, n_sub = 0, n_sa = 0, n_assoc = 0, n_all = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& a = reports[i];
    n_sym += a.symmetric;
    n_refl += a.reflexive;
    n_sub += a.subadditive;
    n_sa += a.semiassociative;
    n_assoc += a.associative;
    if (!satisfies(a, c)) continue;
    ++n_all;
    std::string line = structure_line(all[i]);
    line += std::string(" sa=") + (a.semiassociative ? "true" : "false");
    line += std::string(" assoc=") + (a.associative ? "true" : "false");
    r.representatives.push_back(line);
  }
  r.passing = {{"sym", n_sym}, {"refl", n_refl}, {"subadd", n_sub}, {"sa", n_sa}, {"assoc", n_assoc}, {"all", n_all}};
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace tw
