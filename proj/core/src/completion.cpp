// Buchberger completion for pure-difference binomials, represented as
// (lead, trail) exponent-vector pairs, plus the variable-by-variable
// saturation pipeline that turns a lattice kernel basis into a full
// Markov basis. Non-graded kernels get a homogenizing variable whose
// coordinate is dropped from the final moves.

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "fiberwalk/basis.hpp"

namespace fiberwalk {
namespace {

using Exp = std::vector<long long>;

long long to_ll(const Int& x) {
  static const Int lo = std::numeric_limits<long long>::min() / 4;
  static const Int hi = std::numeric_limits<long long>::max() / 4;
  if (x < lo || x > hi)
    throw Error("kernel entry too large for completion arithmetic");
  return x.convert_to<long long>();
}

long long degree(const Exp& e) {
  long long d = 0;
  for (auto x : e) d += x;
  return d;
}

// Graded reverse lexicographic order. scan[0] is the least significant
// variable: on equal degrees, the first scanned variable with differing
// exponents decides, the smaller exponent winning.
struct TermOrder {
  std::vector<std::size_t> scan;
};

TermOrder natural_order(std::size_t n) {
  TermOrder o;
  o.scan.resize(n);
  for (std::size_t k = 0; k < n; ++k) o.scan[k] = n - 1 - k;
  return o;
}

TermOrder order_with_least(std::size_t n, std::size_t least) {
  TermOrder o;
  o.scan.push_back(least);
  for (std::size_t v = n; v-- > 0;)
    if (v != least) o.scan.push_back(v);
  return o;
}

int compare(const Exp& a, const Exp& b, const TermOrder& o) {
  const long long da = degree(a), db = degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (auto v : o.scan)
    if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
  return 0;
}

struct Binomial {
  Exp lead, trail;
};

std::optional<Binomial> orient(Exp u, Exp v, const TermOrder& o) {
  const int c = compare(u, v, o);
  if (c == 0) return std::nullopt;
  if (c < 0) u.swap(v);
  return Binomial{std::move(u), std::move(v)};
}

bool divides(const Exp& a, const Exp& m) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (m[i] < a[i]) return false;
  return true;
}

bool coprime(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

void rewrite(Exp& m, const Binomial& g) {
  for (std::size_t i = 0; i < m.size(); ++i) m[i] += g.trail[i] - g.lead[i];
}

const Binomial* find_reducer(const Exp& m, const std::vector<Binomial>& g,
                             const Binomial* skip) {
  for (const auto& b : g)
    if (&b != skip && divides(b.lead, m)) return &b;
  return nullptr;
}

// Full normal form: rewrite lead and trail until neither is divisible by
// any lead in g; re-orients after each rewrite, returns nothing when the
// binomial collapses to zero.
std::optional<Binomial> reduce_full(Binomial f, const std::vector<Binomial>& g,
                                    const TermOrder& o) {
  for (;;) {
    if (const Binomial* r = find_reducer(f.lead, g, nullptr)) {
      rewrite(f.lead, *r);
      const int c = compare(f.lead, f.trail, o);
      if (c == 0) return std::nullopt;
      if (c < 0) f.lead.swap(f.trail);
      continue;
    }
    if (const Binomial* r = find_reducer(f.trail, g, nullptr)) {
      rewrite(f.trail, *r);
      if (f.lead == f.trail) return std::nullopt;
      continue;
    }
    return f;
  }
}

void check_caps(const Binomial& b, std::size_t current_count,
                const CompletionCaps& caps) {
  if (std::max(degree(b.lead), degree(b.trail)) >
      static_cast<long long>(caps.max_degree))
    throw CompletionOverflow("completion exceeded the degree cap",
                             caps.max_degree);
  if (current_count + 1 > caps.max_binomials)
    throw CompletionOverflow("completion exceeded the binomial-count cap",
                             caps.max_binomials);
}

// Buchberger loop followed by interreduction; the result is the reduced
// completed set for the given order (unique up to the input ideal).
std::vector<Binomial> complete(const std::vector<std::pair<Exp, Exp>>& inputs,
                               const TermOrder& o, const CompletionCaps& caps) {
  std::vector<Binomial> g;
  std::set<std::tuple<long long, std::size_t, std::size_t>> pairs;

  auto add = [&](Binomial b) {
    check_caps(b, g.size(), caps);
    const std::size_t k = g.size();
    for (std::size_t i = 0; i < k; ++i) {
      long long d = 0;
      for (std::size_t v = 0; v < b.lead.size(); ++v)
        d += std::max(g[i].lead[v], b.lead[v]);
      pairs.insert({d, i, k});
    }
    g.push_back(std::move(b));
  };

  for (const auto& [p, q] : inputs) {
    auto b = orient(p, q, o);
    if (!b) continue;
    auto r = reduce_full(std::move(*b), g, o);
    if (r) add(std::move(*r));
  }

  while (!pairs.empty()) {
    const auto [d, i, j] = *pairs.begin();
    pairs.erase(pairs.begin());
    if (coprime(g[i].lead, g[j].lead)) continue;
    const std::size_t n = g[i].lead.size();
    Exp u(n), v(n);
    for (std::size_t c = 0; c < n; ++c) {
      const long long m = std::max(g[i].lead[c], g[j].lead[c]);
      u[c] = m - g[i].lead[c] + g[i].trail[c];
      v[c] = m - g[j].lead[c] + g[j].trail[c];
    }
    auto b = orient(std::move(u), std::move(v), o);
    if (!b) continue;
    auto r = reduce_full(std::move(*b), g, o);
    if (r) add(std::move(*r));
  }

  // Minimalize: drop entries whose lead another kept lead divides.
  std::vector<std::size_t> idx(g.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const int c = compare(g[a].lead, g[b].lead, o);
    return c != 0 ? c < 0 : a < b;
  });
  std::vector<Binomial> kept;
  for (auto i : idx) {
    if (find_reducer(g[i].lead, kept, nullptr)) continue;
    kept.push_back(std::move(g[i]));
  }
  // Reduce trails to normal form.
  for (auto& b : kept)
    while (const Binomial* r = find_reducer(b.trail, kept, &b))
      rewrite(b.trail, *r);
  return kept;
}

// Saturate the binomial set with respect to every variable: for each v,
// recomplete with v least significant, then divide each binomial by the
// common power of v. One pass over all variables reaches the saturation.
std::vector<std::pair<Exp, Exp>> saturate(std::vector<std::pair<Exp, Exp>> cur,
                                          std::size_t nvars,
                                          const CompletionCaps& caps) {
  for (std::size_t v = 0; v < nvars; ++v) {
    const TermOrder o = order_with_least(nvars, v);
    auto gb = complete(cur, o, caps);
    cur.clear();
    for (auto& b : gb) {
      const long long k = std::min(b.lead[v], b.trail[v]);
      if (k > 0) {
        b.lead[v] -= k;
        b.trail[v] -= k;
      }
      cur.push_back({std::move(b.lead), std::move(b.trail)});
    }
  }
  return cur;
}

void sign_normalize(IntVector& v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
}

std::pair<Exp, Exp> split_parts(const IntVector& vec, std::size_t nvars) {
  Exp p(nvars, 0), q(nvars, 0);
  for (std::size_t c = 0; c < vec.size(); ++c) {
    const long long x = to_ll(vec[c]);
    if (x > 0)
      p[c] = x;
    else
      q[c] = -x;
  }
  return {std::move(p), std::move(q)};
}

}  // namespace

std::vector<Move> binomial_completion(const std::vector<Move>& generators,
                                      const IntMatrix& a,
                                      CompletionCaps caps) {
  const std::size_t n = a.cols();
  std::vector<std::pair<Exp, Exp>> gens;
  for (const auto& m : generators) {
    if (m.vector.size() != n)
      throw DimensionError("generator length does not match design columns");
    if (!in_kernel(a, m.vector))
      throw ModelError("completion generator lies outside the design kernel");
    gens.push_back(split_parts(m.vector, n));
  }
  auto gb = complete(gens, natural_order(n), caps);
  std::set<IntVector> canon;
  for (const auto& b : gb) {
    IntVector vec(n);
    for (std::size_t c = 0; c < n; ++c) vec[c] = b.lead[c] - b.trail[c];
    sign_normalize(vec);
    canon.insert(std::move(vec));
  }
  std::vector<Move> out;
  for (const auto& v : canon) out.push_back(Move(v));
  return out;
}

namespace {

Int one_norm(const IntVector& v) {
  Int s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

// Pairwise size reduction of a lattice basis: replace any vector by a
// shorter signed combination with another. The spanned lattice is
// untouched, so the saturated ideal downstream is too; short seeds keep
// intermediate completion degrees small.
void reduce_lattice_basis(std::vector<IntVector>& basis) {
  bool changed = true;
  for (int round = 0; changed && round < 1000; ++round) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int sign : {1, -1}) {
          IntVector cand = basis[i];
          for (std::size_t c = 0; c < cand.size(); ++c)
            cand[c] += sign * basis[j][c];
          if (one_norm(cand) < one_norm(basis[i])) {
            basis[i] = std::move(cand);
            changed = true;
          }
        }
      }
  }
}

}  // namespace

MarkovBasis toric_markov_basis(const IntMatrix& a, CompletionCaps caps) {
  MarkovBasis out;
  out.design = a;
  auto kernel = lattice_kernel_basis(a);
  if (kernel.empty()) return out;
  reduce_lattice_basis(kernel);

  bool graded = true;
  for (const auto& b : kernel) {
    Int s = 0;
    for (const auto& x : b) s += x;
    if (s != 0) {
      graded = false;
      break;
    }
  }

  const std::size_t n = a.cols();
  const std::size_t nvars = graded ? n : n + 1;
  std::vector<std::pair<Exp, Exp>> gens;
  for (const auto& b : kernel) {
    Exp p(nvars, 0), q(nvars, 0);
    Int s = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const long long x = to_ll(b[c]);
      if (x > 0)
        p[c] = x;
      else
        q[c] = -x;
      s += b[c];
    }
    if (!graded) {
      // balance with the homogenizing variable so both parts share a degree
      const long long sl = to_ll(s);
      if (sl > 0)
        q[n] = sl;
      else
        p[n] = -sl;
    }
    gens.push_back({std::move(p), std::move(q)});
  }

  auto sat = saturate(std::move(gens), nvars, caps);
  std::set<IntVector> canon;
  for (const auto& [lead, trail] : sat) {
    IntVector vec(n);
    bool zero = true;
    for (std::size_t c = 0; c < n; ++c) {
      vec[c] = lead[c] - trail[c];
      if (vec[c] != 0) zero = false;
    }
    if (zero) continue;
    sign_normalize(vec);
    canon.insert(std::move(vec));
  }
  for (const auto& v : canon) out.moves.push_back(Move(v));
  return out;
}

}  // namespace fiberwalk
