#pragma once

// Exhaustive enumeration of small total frames and small relation-type atom
// structures, with the minimality and discriminator checks run on each.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tw/frames.hpp"
#include "tw/relalg.hpp"

namespace tw {

inline constexpr int kMaxFrameSearch = 5;
inline constexpr int kMaxStructureSearch = 4;

/// Adjacency of a relation on k <= 5 points: bit k*k-1-(i*k+j) is the edge
/// (i, j), so numeric order is lexicographic order of the row-major matrix.
using AdjacencyCode = std::uint32_t;

AdjacencyCode adjacency_code(const std::vector<std::vector<bool>>& adj);
/// Least code over all relabelings of the k points.
AdjacencyCode canonical_code(AdjacencyCode code, int k);
/// Frame on vertices a_{0,1..k}.
Frame frame_from_code(AdjacencyCode code, int k);
/// Rows of the matrix joined by '/', e.g. `11/01`.
std::string code_text(AdjacencyCode code, int k);

/// One canonical frame per isomorphism class of total relations on k points,
/// in ascending code order. Throws CapacityError for k > 5.
std::vector<Frame> enumerate_total_frames(int k, unsigned jobs = 1);
std::vector<AdjacencyCode> enumerate_total_codes(int k, unsigned jobs = 1);

struct Minimality {
  enum class Kind { TrivialSize2, MinimalCoverCandidate, NotMinimal };
  Kind kind = Kind::TrivialSize2;
  std::optional<IndexSet> witness;  // for NotMinimal: x generating a proper subalgebra
};

std::string to_string(Minimality::Kind k);

/// Number of atoms of the subalgebra generated by `gens`.
std::size_t generated_atom_count(const FiniteTenseAlgebra& a, const std::vector<IndexSet>& gens);

/// Candidate iff more than two elements and every x outside {0, 1} generates
/// the whole algebra. Throws CapacityError above 10 atoms.
Minimality classify_minimal(const FiniteTenseAlgebra& a);

/// f(x) + g(x) = 1 for every x != 0.
bool is_total(const FiniteTenseAlgebra& a);

/// u(x) = f(x) + g(x) + x is 0 at 0 and 1 elsewhere, and
/// t(x,y,z) = (u(x^y) & x) + (u(x^y)' & z) is the discriminator on every
/// triple. Throws PreconditionError when `a` is not total; CapacityError
/// above 8 atoms.
bool check_discriminator(const FiniteTenseAlgebra& a);

/// Constraint names: sym, refl, subadd, sa, assoc.
struct StructureConstraints {
  bool symmetric = false;
  bool reflexive = false;
  bool subadditive = false;
  bool semiassociative = false;
  bool associative = false;

  /// Comma-separated names; empty text means no constraint.
  static StructureConstraints parse(const std::string& text);
  std::string to_string() const;
};

bool satisfies(const AxiomReport& r, const StructureConstraints& c);

/// Nonassociative atom structures on k atoms with atom 0 the identity, one per
/// isomorphism class (relabelings fixing atom 0), in ascending canonical order.
std::vector<AtomStructure> enumerate_atom_structures(int k, bool symmetric_only, unsigned jobs = 1);

struct SearchReport {
  std::string mode;  // "frames" or "structures"
  int k = 0;
  std::string constraints;
  std::size_t raw = 0;
  std::size_t classes = 0;
  std::vector<std::pair<std::string, std::size_t>> passing;
  std::vector<std::string> representatives;
  double seconds = 0;  // not part of text()

  std::string text() const;
};

SearchReport search_frames(int k, unsigned jobs = 1);
SearchReport search_structures(int k, const StructureConstraints& c, unsigned jobs = 1);

}  // namespace tw
