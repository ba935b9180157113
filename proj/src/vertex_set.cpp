#include "anticonc/vertex_set.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

namespace anticonc {

namespace {

// Highest coordinate with entry -1, or -1 for the all-(+1) vector.
long highest_negative(const SignVector& v) {
  auto w = v.words();
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] != 0) return static_cast<long>(i * 64 + 63 - std::countl_zero(w[i]));
  }
  return -1;
}

bool is_identity(const SignVector& v) { return highest_negative(v) < 0; }

// Rows sorted by strictly decreasing pivot (highest -1 coordinate).
SignVector reduce(SignVector v, const std::vector<SignVector>& rows) {
  for (const auto& r : rows) {
    const long p = highest_negative(r);
    if (v.negative(static_cast<std::size_t>(p))) v = signing_orbit(v, r);
  }
  return v;
}

void check_dimension(int n) {
  if (n < 1) throw ValidationError("dimension must be positive");
}

std::vector<std::uint32_t> fixed_weight_masks(int n, int weight) {
  std::vector<std::uint32_t> out;
  if (weight == 0) {
    out.push_back(0);
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t v = (std::uint64_t{1} << weight) - 1;
  while (v < limit) {
    out.push_back(static_cast<std::uint32_t>(v));
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

}  // namespace

std::vector<SignVector> echelon_basis(std::vector<SignVector> rows) {
  std::vector<SignVector> basis;
  for (auto& row : rows) {
    SignVector v = reduce(std::move(row), basis);
    if (is_identity(v)) continue;
    basis.push_back(std::move(v));
    std::sort(basis.begin(), basis.end(), [](const SignVector& a, const SignVector& b) {
      return highest_negative(a) > highest_negative(b);
    });
  }
  return basis;
}

void VertexSet::require_enumerable(const char* op) const {
  if (!enumerable()) {
    throw InfeasibleError(std::string(op) + ": dimension " + std::to_string(n_) +
                          " exceeds the exhaustive cap n=" + std::to_string(kExhaustiveCap));
  }
}

std::span<const std::uint32_t> VertexSet::members() const {
  require_enumerable("enumeration");
  return *members_;
}

double VertexSet::density_exponent() const {
  return log2_big(size_) / n_;
}

VertexSet VertexSet::cube(int n) {
  check_dimension(n);
  VertexSet s(n, SetKind::Cube);
  s.size_ = pow2(static_cast<unsigned>(n));
  if (s.enumerable()) {
    std::vector<std::uint32_t> m(std::size_t{1} << n);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint32_t>(i);
    s.members_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(m));
  }
  return s;
}

VertexSet VertexSet::slice(int n, long long sum) {
  check_dimension(n);
  if (sum > n || sum < -n || ((n - sum) % 2) != 0) {
    throw ValidationError("slice n=" + std::to_string(n) + ", sum=" + std::to_string(sum) +
                          " is empty");
  }
  VertexSet s(n, SetKind::Slice);
  s.target_sum_ = sum;
  const int weight = static_cast<int>((n - sum) / 2);
  s.size_ = binomial(static_cast<unsigned>(n), static_cast<unsigned>(weight));
  if (s.enumerable()) {
    s.members_ = std::make_shared<const std::vector<std::uint32_t>>(fixed_weight_masks(n, weight));
  }
  return s;
}

VertexSet VertexSet::biased_slice(int n, double eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) throw ValidationError("eps must lie in [0, 0.5]");
  const long long minus = std::llround(eps * n);
  VertexSet s = slice(n, n - 2 * minus);
  s.kind_ = SetKind::BiasedSlice;
  return s;
}

VertexSet VertexSet::subspace(int n, std::vector<SignVector> rows) {
  check_dimension(n);
  for (const auto& r : rows) {
    if (r.size() != static_cast<std::size_t>(n)) throw ValidationError("subspace: row dimension mismatch");
  }
  VertexSet s(n, SetKind::Subspace);
  s.rows_ = echelon_basis(std::move(rows));
  s.size_ = pow2(static_cast<unsigned>(s.rows_.size()));
  if (s.enumerable()) {
    std::vector<std::uint32_t> m{0};
    m.reserve(std::size_t{1} << s.rows_.size());
    for (const auto& r : s.rows_) {
      const auto rm = static_cast<std::uint32_t>(r.mask());
      const std::size_t half = m.size();
      for (std::size_t i = 0; i < half; ++i) m.push_back(m[i] ^ rm);
    }
    std::sort(m.begin(), m.end());
    s.members_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(m));
  }
  return s;
}

VertexSet VertexSet::random_subspace(int n, int dim, std::uint64_t seed) {
  check_dimension(n);
  if (dim < 0 || dim > n) throw ValidationError("subspace dim must lie in [0, n]");
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(mix_seed(seed, attempt));
    std::vector<SignVector> rows;
    for (int i = 0; i < dim; ++i) {
      SignVector r(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        if (rng.coin()) r.flip(static_cast<std::size_t>(j));
      }
      rows.push_back(std::move(r));
    }
    if (echelon_basis(rows).size() == static_cast<std::size_t>(dim)) {
      return subspace(n, std::move(rows));
    }
  }
}

VertexSet VertexSet::mod4_class(int n, int r) {
  check_dimension(n);
  if (r != 0 && r != 1) throw ValidationError("mod4 residue must be 0 or 1");
  VertexSet s(n, SetKind::Mod4Class);
  s.residue_ = r;
  s.size_ = pow2(static_cast<unsigned>(n - 1));
  if (s.enumerable()) {
    std::vector<std::uint32_t> m;
    m.reserve(std::size_t{1} << (n - 1));
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v) {
      if ((std::popcount(v) & 1) == r) m.push_back(v);
    }
    s.members_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(m));
  }
  return s;
}

VertexSet VertexSet::explicit_set(int n, std::vector<SignVector> members) {
  check_dimension(n);
  if (members.empty()) throw ValidationError("explicit set is empty");
  for (const auto& m : members) {
    if (m.size() != static_cast<std::size_t>(n)) throw ValidationError("explicit set: dimension mismatch");
  }
  VertexSet s(n, SetKind::Explicit);
  s.size_ = members.size();
  if (s.enumerable()) {
    std::vector<std::uint32_t> m;
    m.reserve(members.size());
    for (const auto& v : members) m.push_back(static_cast<std::uint32_t>(v.mask()));
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
      throw ValidationError("explicit set contains a duplicate vector");
    }
    s.members_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(m));
  } else {
    std::set<std::string> seen;
    for (const auto& v : members) {
      if (!seen.insert(v.to_string()).second) throw ValidationError("explicit set contains a duplicate vector");
    }
    s.rows_ = std::move(members);
  }
  return s;
}

VertexSet VertexSet::random_subset(int n, std::uint64_t size, std::uint64_t seed) {
  check_dimension(n);
  if (n > kExhaustiveCap) throw InfeasibleError("random_subset: dimension above exhaustive cap");
  const std::uint64_t universe = std::uint64_t{1} << n;
  if (size < 1 || size > universe) throw ValidationError("random_subset: size must lie in [1, 2^n]");
  Rng rng(seed);
  std::vector<std::uint32_t> chosen;
  if (size * 4 >= universe) {
    std::vector<std::uint32_t> all(universe);
    for (std::uint64_t i = 0; i < universe; ++i) all[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t i = 0; i < size; ++i) {
      std::swap(all[i], all[i + rng.below(universe - i)]);
    }
    chosen.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
  } else {
    // Floyd's sampling without replacement.
    std::unordered_set<std::uint32_t> picked;
    for (std::uint64_t j = universe - size; j < universe; ++j) {
      const auto t = static_cast<std::uint32_t>(rng.below(j + 1));
      if (!picked.insert(t).second) picked.insert(static_cast<std::uint32_t>(j));
    }
    chosen.assign(picked.begin(), picked.end());
  }
  std::sort(chosen.begin(), chosen.end());
  VertexSet s(n, SetKind::Explicit);
  s.size_ = size;
  s.members_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(chosen));
  return s;
}

VertexSet VertexSet::load_explicit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open explicit set file '" + path.string() + "'");
  std::vector<SignVector> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    try {
      rows.push_back(SignVector::from_string(line));
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (rows.back().size() != rows.front().size()) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": inconsistent vector length");
    }
  }
  if (rows.empty()) throw ValidationError("explicit set file '" + path.string() + "' is empty");
  const int n = static_cast<int>(rows.front().size());
  return explicit_set(n, std::move(rows));
}

bool VertexSet::satisfies(const SignVector& y) const {
  if (y.size() != static_cast<std::size_t>(n_)) return false;
  switch (kind_) {
    case SetKind::Cube:
      return true;
    case SetKind::Slice:
    case SetKind::BiasedSlice:
      return static_cast<long long>(n_) - 2 * static_cast<long long>(y.count_negative()) == target_sum_;
    case SetKind::Mod4Class:
      return static_cast<int>(y.count_negative() % 2) == residue_;
    case SetKind::Subspace:
      return is_identity(reduce(y, rows_));
    case SetKind::Explicit:
      return contains(y);
  }
  return false;
}

bool VertexSet::contains(const SignVector& y) const {
  if (y.size() != static_cast<std::size_t>(n_)) return false;
  if (enumerable()) {
    return std::binary_search(members_->begin(), members_->end(), static_cast<std::uint32_t>(y.mask()));
  }
  if (kind_ == SetKind::Explicit) return std::find(rows_.begin(), rows_.end(), y) != rows_.end();
  return satisfies(y);
}

SignVector VertexSet::sample(Rng& rng) const {
  const auto n = static_cast<std::size_t>(n_);
  if (enumerable() && kind_ == SetKind::Explicit) {
    return SignVector::from_mask((*members_)[rng.below(members_->size())], n);
  }
  SignVector y(n);
  switch (kind_) {
    case SetKind::Cube:
      for (std::size_t j = 0; j < n; ++j) {
        if (rng.coin()) y.flip(j);
      }
      break;
    case SetKind::Mod4Class:
      for (std::size_t j = 0; j + 1 < n; ++j) {
        if (rng.coin()) y.flip(j);
      }
      if (static_cast<int>(y.count_negative() % 2) != residue_) y.flip(n - 1);
      break;
    case SetKind::Slice:
    case SetKind::BiasedSlice: {
      const auto weight = static_cast<std::size_t>((n_ - target_sum_) / 2);
      std::vector<std::size_t> idx(n);
      for (std::size_t j = 0; j < n; ++j) idx[j] = j;
      for (std::size_t i = 0; i < weight; ++i) {
        std::swap(idx[i], idx[i + rng.below(n - i)]);
        y.flip(idx[i]);
      }
      break;
    }
    case SetKind::Subspace:
      for (const auto& r : rows_) {
        if (rng.coin()) y = signing_orbit(y, r);
      }
      break;
    case SetKind::Explicit:
      return rows_[rng.below(rows_.size())];
  }
  return y;
}

SignVector VertexSet::sample(std::uint64_t seed) const {
  Rng rng(seed);
  return sample(rng);
}

VertexSet materialize(const SetSpec& spec) {
  switch (spec.variant) {
    case SetVariant::Cube:
      return VertexSet::cube(spec.n);
    case SetVariant::Slice:
      return VertexSet::slice(spec.n, spec.sum);
    case SetVariant::Subspace:
      return VertexSet::random_subspace(spec.n, spec.dim, spec.seed);
    case SetVariant::Mod4:
      return VertexSet::mod4_class(spec.n, spec.residue);
    case SetVariant::Biased:
      return VertexSet::biased_slice(spec.n, std::stod(spec.eps));
    case SetVariant::Explicit:
      return VertexSet::load_explicit(spec.path);
    case SetVariant::TwoCube:
      throw ValidationError("twocube specs describe directions, not vertex sets");
  }
  throw std::logic_error("unhandled set variant");
}

}  // namespace anticonc
