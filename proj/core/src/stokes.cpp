#include "ucgl/stokes.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "ucgl/error.hpp"
#include "ucgl/involutions.hpp"

namespace ucgl {

namespace {

int wrap(int i, int size) { return ((i % size) + size) % size; }

void require_params(int n, const StokesParams& s) {
  if (static_cast<int>(s.size()) != n) {
    throw Error(ErrorKind::invalid_dimension,
                "expected " + std::to_string(n) + " Stokes parameters, got " + std::to_string(s.size()));
  }
}

// Chain data for a sector: which base set and how many delta-steps.
std::pair<const std::vector<RootPair>*, int> chain_of(const RootSetData& rs, SectorIndex k) {
  const int diff = k.k_num - rs.size();
  if (diff % 2 == 0) return {&rs.r1, diff / 2};
  return {&rs.r1p, (diff - 1) / 2};
}

// Q_k - I, which is linear in s.
ComplexMatrix factor_offdiag(const RootSetData& rs, SectorIndex k, const StokesParams& s) {
  const auto size = static_cast<std::size_t>(rs.size());
  ComplexMatrix q(size);
  for (const auto& root : roots_at(rs, k)) {
    q(static_cast<std::size_t>(root.i), static_cast<std::size_t>(root.j)) += root_coefficient(rs.n, root, s);
  }
  return q;
}

std::vector<std::pair<int, int>> column_key(const std::vector<RootPair>& roots) {
  std::vector<std::pair<int, int>> key;
  key.reserve(roots.size());
  for (const auto& r : roots) key.emplace_back(r.j, r.i);
  return key;
}

void sort_roots(std::vector<RootPair>& roots) {
  std::sort(roots.begin(), roots.end(),
            [](const RootPair& a, const RootPair& b) { return std::pair(a.j, a.i) < std::pair(b.j, b.i); });
}

bool candidate_less(const RootSetData& a, const RootSetData& b) {
  const auto ka = column_key(a.r1), kb = column_key(b.r1);
  if (ka != kb) return ka < kb;
  return column_key(a.r1p) < column_key(b.r1p);
}

double params_diff(const StokesParams& a, const StokesParams& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

}  // namespace

Complex root_coefficient(int n, RootPair root, const StokesParams& s) {
  const int size = n + 1;
  const int m = wrap(root.j - root.i, size);
  if (m == 0) throw Error(ErrorKind::precondition_violation, "diagonal index pair");
  const Complex value = s[static_cast<std::size_t>(m - 1)];
  const double orient = root.i < root.j ? 1.0 : -1.0;
  if (n % 2 == 1) return orient * value;
  const double parity = ((root.j - root.i) % 2 == 0) ? 1.0 : -1.0;
  return orient * parity * value;
}

std::vector<RootPair> roots_at(const RootSetData& rs, SectorIndex k) {
  const auto [base, shift] = chain_of(rs, k);
  std::vector<RootPair> out;
  out.reserve(base->size());
  for (const auto& r : *base) out.push_back({wrap(r.i - shift, rs.size()), wrap(r.j - shift, rs.size())});
  return out;
}

ComplexMatrix build_Q(const RootSetData& rs, SectorIndex k, const StokesParams& s) {
  require_params(rs.n, s);
  return ComplexMatrix::identity(static_cast<std::size_t>(rs.size())) + factor_offdiag(rs, k, s);
}

ComplexMatrix build_Q_by_conjugation(const RootSetData& rs, SectorIndex k, const StokesParams& s) {
  require_params(rs.n, s);
  const auto [base, shift] = chain_of(rs, k);
  const int base_num = base == &rs.r1 ? rs.size() : rs.size() + 1;
  const ComplexMatrix q0 = build_Q(rs, SectorIndex{base_num}, s);
  const auto st = structural_matrices(rs.n);
  const ComplexMatrix g = power(st.coxeter(), shift);
  return g * q0 * inverse(g);
}

ComplexMatrix build_Q_direction(const RootSetData& rs, SectorIndex k, const StokesParams& sdot) {
  require_params(rs.n, sdot);
  return factor_offdiag(rs, k, sdot);
}

ComplexMatrix build_M(const RootSetData& rs, const StokesParams& s) {
  const auto st = structural_matrices(rs.n);
  return build_Q(rs, SectorIndex{rs.size()}, s) * build_Q(rs, SectorIndex{rs.size() + 1}, s) * st.coxeter();
}

std::vector<ComplexMatrix> build_M_partials(const RootSetData& rs, const StokesParams& s) {
  const auto st = structural_matrices(rs.n);
  const SectorIndex k1{rs.size()}, k2{rs.size() + 1};
  const ComplexMatrix q1 = build_Q(rs, k1, s);
  const ComplexMatrix q2 = build_Q(rs, k2, s);
  std::vector<ComplexMatrix> partials;
  partials.reserve(static_cast<std::size_t>(rs.n));
  for (int i = 0; i < rs.n; ++i) {
    StokesParams e(static_cast<std::size_t>(rs.n), Complex{});
    e[static_cast<std::size_t>(i)] = 1.0;
    partials.push_back((factor_offdiag(rs, k1, e) * q2 + q1 * factor_offdiag(rs, k2, e)) * st.coxeter());
  }
  return partials;
}

ComplexMatrix build_S(const RootSetData& rs, int m, const StokesParams& s) {
  if (m != 1 && m != 2) throw Error(ErrorKind::invalid_sector, "S_m needs m in {1, 2}, got " + std::to_string(m));
  ComplexMatrix out = ComplexMatrix::identity(static_cast<std::size_t>(rs.size()));
  for (int t = 0; t < rs.size(); ++t) out = out * build_Q(rs, SectorIndex{m * rs.size() + t}, s);
  return out;
}

ComplexMatrix build_S_direction(const RootSetData& rs, int m, const StokesParams& s, const StokesParams& sdot) {
  if (m != 1 && m != 2) throw Error(ErrorKind::invalid_sector, "S_m needs m in {1, 2}, got " + std::to_string(m));
  const auto size = static_cast<std::size_t>(rs.size());
  ComplexMatrix value = ComplexMatrix::identity(size);
  ComplexMatrix deriv(size);
  for (int t = 0; t < rs.size(); ++t) {
    const SectorIndex k{m * rs.size() + t};
    const ComplexMatrix q = build_Q(rs, k, s);
    deriv = deriv * q + value * build_Q_direction(rs, k, sdot);
    value = value * q;
  }
  return deriv;
}

StokesParams stokes_params_of(const ComplexMatrix& a) {
  const auto c = char_poly(a).coefficients;
  const int n = static_cast<int>(a.dim()) - 1;
  StokesParams s(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const Complex ci = c[static_cast<std::size_t>(i)];
    s[static_cast<std::size_t>(i - 1)] = (n % 2 == 1 || i % 2 == 1) ? ci : -ci;
  }
  return s;
}

bool is_local_params(const StokesParams& s, double tol) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(s[i].imag()) >= tol) return false;
    if (std::abs(s[i] - s[n - 1 - i]) >= tol) return false;
  }
  return true;
}

SectionMembership section_membership(const RootSetData& rs, const ComplexMatrix& a, double tol) {
  SectionMembership out;
  if (static_cast<int>(a.dim()) != rs.size()) return out;
  out.s = stokes_params_of(a);
  out.in_section = max_abs_diff(a, build_M(rs, out.s)) < tol;
  out.in_mlocal = out.in_section && is_local_params(out.s, tol);
  return out;
}

StokesParams reversed(const StokesParams& s) { return {s.rbegin(), s.rend()}; }

StokesParams conj_reversed(const StokesParams& s) {
  StokesParams out = reversed(s);
  for (auto& x : out) x = std::conj(x);
  return out;
}

bool root_sets_admissible(const RootSetData& candidate) {
  const int n = candidate.n;
  std::mt19937_64 rng(0x5eed0000u + static_cast<unsigned>(n));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  constexpr double tol = 1e-9;
  try {
    for (int trial = 0; trial < 2 * (n + 2); ++trial) {
      StokesParams s(static_cast<std::size_t>(n));
      for (auto& x : s) x = Complex(unif(rng), unif(rng));
      const ComplexMatrix m = build_M(candidate, s);
      if (std::abs(determinant(m) - 1.0) > tol) return false;
      if (params_diff(stokes_params_of(m), s) > tol) return false;
      if (max_abs_diff(sigma0(candidate, m), build_M(candidate, reversed(s))) > tol) return false;
      if (max_abs_diff(theta0(candidate, m), build_M(candidate, conj_reversed(s))) > tol) return false;
      for (int k = 1; k <= 3 * candidate.size(); ++k) {
        if (max_abs_diff(build_Q(candidate, SectorIndex{k}, s),
                         build_Q_by_conjugation(candidate, SectorIndex{k}, s)) > tol) {
          return false;
        }
      }
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

RootSetData derive_root_sets(int n, double budget_seconds) {
  if (n < 1 || n > 6) throw Error(ErrorKind::invalid_dimension, "root-set search supports 1 <= n <= 6");
  const int size = n + 1;
  const auto start = std::chrono::steady_clock::now();

  // One root per residue class (j - i) mod (n+1), placed in either factor.
  const long long radix = 2LL * size;
  long long total = 1;
  for (int m = 0; m < n; ++m) total *= radix;

  std::optional<RootSetData> best;
  int survivors = 0;
  for (long long code = 0; code < total; ++code) {
    if ((code & 63) == 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > budget_seconds) {
        throw Error(ErrorKind::search_failure, "time budget exhausted for n = " + std::to_string(n));
      }
    }
    RootSetData cand;
    cand.n = n;
    long long rest = code;
    for (int m = 1; m <= n; ++m) {
      const int digit = static_cast<int>(rest % radix);
      rest /= radix;
      const int i = digit % size;
      const RootPair root{i, wrap(i + m, size)};
      (digit / size == 0 ? cand.r1 : cand.r1p).push_back(root);
    }
    sort_roots(cand.r1);
    sort_roots(cand.r1p);
    if (!root_sets_admissible(cand)) continue;
    ++survivors;
    if (!best || candidate_less(cand, *best)) best = std::move(cand);
  }
  if (!best) throw Error(ErrorKind::search_failure, "no admissible root sets for n = " + std::to_string(n));
  best->survivor_count = survivors;
  return *best;
}

std::string root_sets_to_json(const RootSetData& rs) {
  auto encode = [](const std::vector<RootPair>& roots) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : roots) arr.push_back({r.i, r.j});
    return arr;
  };
  nlohmann::ordered_json j;
  j["n"] = rs.n;
  j["R1"] = encode(rs.r1);
  j["R1p"] = encode(rs.r1p);
  j["survivor_count"] = rs.survivor_count;
  return j.dump() + "\n";
}

RootSetData root_sets_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  auto decode = [](const nlohmann::json& arr) {
    std::vector<RootPair> roots;
    for (const auto& item : arr) roots.push_back({item.at(0).get<int>(), item.at(1).get<int>()});
    return roots;
  };
  RootSetData rs;
  rs.n = j.at("n").get<int>();
  rs.r1 = decode(j.at("R1"));
  rs.r1p = decode(j.at("R1p"));
  rs.survivor_count = j.value("survivor_count", 0);
  return rs;
}

std::filesystem::path root_cache_directory() {
  if (const char* env = std::getenv("UCGL_ROOT_CACHE"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::filesystem::temp_directory_path() / "ucgl-root-cache";
}

RootSetData load_or_derive_root_sets(int n, double budget_seconds) {
  const auto dir = root_cache_directory();
  const auto file = dir / ("roots_n" + std::to_string(n) + ".json");
  std::error_code ec;
  if (std::filesystem::exists(file, ec)) {
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      RootSetData cached = root_sets_from_json(buf.str());
      if (cached.n == n && cached.survivor_count > 0 && root_sets_admissible(cached)) return cached;
    } catch (const std::exception&) {
      // Unreadable or stale cache entries are rebuilt below.
    }
  }
  RootSetData rs = derive_root_sets(n, budget_seconds);
  std::filesystem::create_directories(dir, ec);
  if (!ec) {
    const auto tmp = file.string() + "." + std::to_string(std::random_device{}()) + ".tmp";
    {
      std::ofstream out(tmp);
      out << root_sets_to_json(rs);
    }
    std::filesystem::rename(tmp, file, ec);
  }
  return rs;
}

}  // namespace ucgl
