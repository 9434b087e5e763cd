#pragma once

// Tilde Stokes factors, the section element M(s) and the Stokes matrices
// S_1, S_2, together with the constrained search that fixes the two root
// subsets the factors are built from.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ucgl/linalg.hpp"

namespace ucgl {

/// Ordered index pair (i, j), i != j, standing for the elementary matrix E_ij.
struct RootPair {
  int i = 0;
  int j = 0;
  friend bool operator==(const RootPair&, const RootPair&) = default;
};

enum class Parity { odd, even };

struct RootSetData {
  int n = 0;
  std::vector<RootPair> r1;   // roots of the factor at k = 1
  std::vector<RootPair> r1p;  // roots of the factor at k = 1 + 1/(n+1)
  int survivor_count = 0;

  Parity parity() const { return n % 2 == 1 ? Parity::odd : Parity::even; }
  int size() const { return n + 1; }
};

/// Stokes parameters (s_1, ..., s_n).
using StokesParams = std::vector<Complex>;

/// Index k = k_num / (n+1) on the lattice of Stokes sectors.
struct SectorIndex {
  int k_num = 0;
};

/// Signed coefficient s_{i,j} multiplying E_ij in a Stokes factor.
Complex root_coefficient(int n, RootPair root, const StokesParams& s);

/// Roots carried by the factor at sector k (delta-shift of R1 or R1p).
std::vector<RootPair> roots_at(const RootSetData& rs, SectorIndex k);

/// Q_k = I + sum of s_{i,j} E_ij over roots_at(k).
ComplexMatrix build_Q(const RootSetData& rs, SectorIndex k, const StokesParams& s);

/// Same factor obtained by conjugating the base factor with powers of the
/// Coxeter matrix (pi_hat for odd n, pi for even n).
ComplexMatrix build_Q_by_conjugation(const RootSetData& rs, SectorIndex k, const StokesParams& s);

/// Q_k(sdot) - I: the derivative of the (affine) factor along sdot.
ComplexMatrix build_Q_direction(const RootSetData& rs, SectorIndex k, const StokesParams& sdot);

ComplexMatrix build_M(const RootSetData& rs, const StokesParams& s);

/// Exact partial derivatives dM/ds_i, i = 1..n (M is bilinear in the factors).
std::vector<ComplexMatrix> build_M_partials(const RootSetData& rs, const StokesParams& s);

/// S_m, the ordered product of the n+1 factors starting at k = m (m = 1 or 2).
ComplexMatrix build_S(const RootSetData& rs, int m, const StokesParams& s);

/// Directional derivative of S_m along sdot.
ComplexMatrix build_S_direction(const RootSetData& rs, int m, const StokesParams& s, const StokesParams& sdot);

/// Parameters read off the characteristic polynomial with the parity sign.
StokesParams stokes_params_of(const ComplexMatrix& a);

struct SectionMembership {
  bool in_section = false;
  bool in_mlocal = false;
  StokesParams s;
};

SectionMembership section_membership(const RootSetData& rs, const ComplexMatrix& a, double tol);

/// True when s is real and palindromic (s_i = s_{n-i+1}) within tol.
bool is_local_params(const StokesParams& s, double tol);

StokesParams reversed(const StokesParams& s);
StokesParams conj_reversed(const StokesParams& s);

/// Exhaustive constrained search for the root subsets.
/// Throws search-failure when nothing survives within the time budget.
RootSetData derive_root_sets(int n, double budget_seconds = 60.0);

/// Checks one candidate against every search constraint.
bool root_sets_admissible(const RootSetData& candidate);

std::string root_sets_to_json(const RootSetData& rs);
RootSetData root_sets_from_json(const std::string& text);

/// Cache directory: $UCGL_ROOT_CACHE if set, otherwise a ucgl directory
/// under the system temporary path.
std::filesystem::path root_cache_directory();

/// Loads roots_n<k>.json from the cache when present and admissible,
/// otherwise derives the sets and writes the cache file.
RootSetData load_or_derive_root_sets(int n, double budget_seconds = 60.0);

}  // namespace ucgl
