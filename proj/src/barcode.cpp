#include "persist/barcode.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "persist/error.hpp"

namespace persist {

Bar Bar::make(double birth, double death, std::optional<int> degree) {
  if (std::isnan(birth) || std::isnan(death)) fail_input("bar endpoint is NaN");
  if (birth == kInf || death == -kInf) fail_input("bar endpoints out of order");
  if (!(birth < death)) fail_input("bar requires birth < death");
  return Bar{birth, death, degree};
}

bool Bar::finite() const { return std::isfinite(birth) && std::isfinite(death); }

void Barcode::add(double birth, double death, std::optional<int> degree, std::size_t copies) {
  Bar b = Bar::make(birth, death, degree);
  for (std::size_t i = 0; i < copies; ++i) bars.push_back(b);
}

bool Barcode::all_tagged() const {
  return std::all_of(bars.begin(), bars.end(), [](const Bar& b) { return b.degree.has_value(); });
}

std::vector<int> Barcode::degrees() const {
  std::set<int> s;
  for (const auto& b : bars)
    if (b.degree) s.insert(*b.degree);
  return {s.begin(), s.end()};
}

Barcode Barcode::in_degree(int k) const {
  Barcode r;
  for (const auto& b : bars)
    if (b.degree && *b.degree == k) r.bars.push_back(b);
  return r;
}

Barcode Barcode::untagged() const {
  Barcode r = *this;
  for (auto& b : r.bars) b.degree.reset();
  return r;
}

static bool canonical_less(const Bar& x, const Bar& y) {
  int dx = x.degree ? *x.degree : std::numeric_limits<int>::max();
  int dy = y.degree ? *y.degree : std::numeric_limits<int>::max();
  if (dx != dy) return dx < dy;
  if (x.birth != y.birth) return x.birth < y.birth;
  return x.death < y.death;
}

Barcode Barcode::sorted() const {
  Barcode r = *this;
  std::stable_sort(r.bars.begin(), r.bars.end(), canonical_less);
  return r;
}

std::size_t Barcode::finite_count() const {
  return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [](const Bar& b) { return b.finite(); }));
}

static bool close(double a, double b, double tol) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::fabs(a - b) <= tol;
}

bool same_bars(const Barcode& a, const Barcode& b, double tol) {
  if (a.size() != b.size()) return false;
  Barcode x = a.sorted(), y = b.sorted();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].degree != y[i].degree) return false;
    if (!close(x[i].birth, y[i].birth, tol) || !close(x[i].death, y[i].death, tol)) return false;
  }
  return true;
}

static double endpoint_gap(double x, double y) {
  if (x == y) return 0;
  if (!std::isfinite(x) || !std::isfinite(y)) return kInf;
  return std::fabs(x - y);
}

double bar_match_cost(const Bar& I, const Bar& J) {
  return std::max(endpoint_gap(I.birth, J.birth), endpoint_gap(I.death, J.death));
}

bool is_delta_matching(const Barcode& B, const Barcode& C, const Matching& M, double delta) {
  std::vector<bool> usedB(B.size(), false), usedC(C.size(), false);
  for (auto [i, j] : M.pairs) {
    if (i >= B.size() || j >= C.size()) fail_input("malformed matching: index out of range");
    if (usedB[i] || usedC[j]) fail_input("malformed matching: index used twice");
    usedB[i] = usedC[j] = true;
    if (bar_match_cost(B[i], C[j]) > delta) return false;
  }
  for (std::size_t i = 0; i < B.size(); ++i)
    if (!usedB[i] && B[i].length() > 2 * delta) return false;
  for (std::size_t j = 0; j < C.size(); ++j)
    if (!usedC[j] && C[j].length() > 2 * delta) return false;
  return true;
}

namespace {

// Kuhn's augmenting paths on a bipartite graph with adjacency in index order.
class Bipartite {
 public:
  Bipartite(std::size_t nl, std::size_t nr) : adj_(nl), match_r_(nr, kNone), match_l_(nl, kNone) {}
  void edge(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

  std::size_t max_matching() {
    std::size_t size = 0;
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      seen_.assign(match_r_.size(), false);
      if (augment(l)) ++size;
    }
    return size;
  }
  std::size_t partner_of_left(std::size_t l) const { return match_l_[l]; }
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  bool augment(std::size_t l) {
    for (std::size_t r : adj_[l]) {
      if (seen_[r]) continue;
      seen_[r] = true;
      if (match_r_[r] == kNone || augment(match_r_[r])) {
        match_r_[r] = l;
        match_l_[l] = r;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_r_, match_l_;
  std::vector<bool> seen_;
};

}  // namespace

std::optional<Matching> delta_matching(const Barcode& B, const Barcode& C, double delta) {
  const std::size_t nb = B.size(), nc = C.size();
  // Left: bars of B then diagonal slots for C. Right: bars of C then diagonal slots for B.
  Bipartite g(nb + nc, nc + nb);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nc; ++j)
      if (bar_match_cost(B[i], C[j]) <= delta) g.edge(i, j);
    if (B[i].length() <= 2 * delta) g.edge(i, nc + i);
  }
  for (std::size_t j = 0; j < nc; ++j) {
    if (C[j].length() <= 2 * delta) g.edge(nb + j, j);
    for (std::size_t i = 0; i < nb; ++i) g.edge(nb + j, nc + i);
  }
  if (g.max_matching() != nb + nc) return std::nullopt;
  Matching m;
  for (std::size_t i = 0; i < nb; ++i) {
    std::size_t r = g.partner_of_left(i);
    if (r < nc) m.pairs.emplace_back(i, r);
  }
  return m;
}

static BottleneckResult bottleneck_pool(const Barcode& B, const Barcode& C) {
  std::vector<double> cand{0.0};
  for (const auto& I : B.bars)
    for (const auto& J : C.bars) {
      double c = bar_match_cost(I, J);
      if (std::isfinite(c)) cand.push_back(c);
    }
  for (const auto* X : {&B, &C})
    for (const auto& I : X->bars)
      if (I.finite()) cand.push_back(I.length() / 2);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  auto top = delta_matching(B, C, cand.back());
  if (!top) return {kInf, {}};
  std::size_t lo = 0, hi = cand.size() - 1;
  Matching best = *top;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (auto m = delta_matching(B, C, cand[mid])) {
      hi = mid;
      best = *m;
    } else {
      lo = mid + 1;
    }
  }
  return {cand[lo], best};
}

BottleneckResult bottleneck(const Barcode& B, const Barcode& C) {
  if (!(B.all_tagged() && C.all_tagged())) return bottleneck_pool(B, C);
  std::set<int> degs;
  for (int d : B.degrees()) degs.insert(d);
  for (int d : C.degrees()) degs.insert(d);
  BottleneckResult out;
  for (int d : degs) {
    std::vector<std::size_t> ib, ic;
    Barcode Bd, Cd;
    for (std::size_t i = 0; i < B.size(); ++i)
      if (*B[i].degree == d) { ib.push_back(i); Bd.bars.push_back(B[i]); }
    for (std::size_t j = 0; j < C.size(); ++j)
      if (*C[j].degree == d) { ic.push_back(j); Cd.bars.push_back(C[j]); }
    BottleneckResult r = bottleneck_pool(Bd, Cd);
    out.distance = std::max(out.distance, r.distance);
    if (!std::isfinite(r.distance)) return {kInf, {}};
    for (auto [i, j] : r.matching.pairs) out.matching.pairs.emplace_back(ib[i], ic[j]);
  }
  return out;
}

double bottleneck_distance(const Barcode& B, const Barcode& C) { return bottleneck(B, C).distance; }

double matching_lemma(const std::vector<double>& b, const std::vector<double>& c) {
  if (b.size() != c.size()) fail_input("matching lemma needs lists of equal length");
  std::vector<double> x = b, y = c;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double sorted_value = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sorted_value = std::max(sorted_value, endpoint_gap(x[i], y[i]));
  if (x.size() <= 8) {
    std::vector<std::size_t> perm(y.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    double best = kInf;
    do {
      double v = 0;
      for (std::size_t i = 0; i < x.size(); ++i) v = std::max(v, endpoint_gap(x[i], y[perm[i]]));
      best = std::min(best, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (x.empty()) best = 0;
    if (best != sorted_value) fail_state("matching lemma violated");
  }
  return sorted_value;
}

double interval_interleaving_distance(const Bar& I, const Bar& J) {
  double kill = std::max(I.length() / 2, J.length() / 2);
  return std::min(kill, bar_match_cost(I, J));
}

Barcode shift_barcode(const Barcode& B, double delta) {
  Barcode r = B;
  for (auto& b : r.bars) {
    b.birth += delta;
    b.death += delta;
  }
  return r;
}

double beta_k(const Barcode& B, std::size_t k) {
  if (k == 0) fail_input("beta_k needs k >= 1");
  std::vector<double> len;
  for (const auto& b : B.bars)
    if (b.finite()) len.push_back(b.length());
  if (len.size() < k) return 0;
  std::nth_element(len.begin(), len.begin() + (k - 1), len.end(), std::greater<>());
  return len[k - 1];
}

double ell(const Barcode& B, double lo, double hi) {
  if (lo > hi) fail_input("ell needs lo <= hi");
  double total = 0;
  for (const auto& b : B.bars) {
    double len = std::min(b.death, hi) - std::max(b.birth, lo);
    if (len > 0) total += len;
  }
  return total;
}

std::size_t nu(const Barcode& B, double c) {
  std::size_t n = 0;
  for (const auto& b : B.bars)
    if (b.finite() && b.length() > c) ++n;
  return n;
}

std::size_t persistent_betti(const Barcode& B, const Bar& I) {
  std::size_t n = 0;
  for (const auto& b : B.bars)
    if (b.birth <= I.birth && b.death >= I.death) ++n;
  return n;
}

std::vector<double> infinite_endpoint_spectrum(const Barcode& B) {
  std::vector<double> s;
  for (const auto& b : B.bars)
    if (b.death == kInf) s.push_back(b.birth);
  std::sort(s.begin(), s.end());
  return s;
}

static std::size_t containing(const Barcode& B, double s, double e) {
  std::size_t n = 0;
  for (const auto& b : B.bars)
    if (b.birth <= s && b.death >= e) ++n;
  return n;
}

bool multiplicity_feasible(const Barcode& B, std::size_t k, double c) {
  // Counts are piecewise constant in s on left-closed cells cut at {b, b-2c}
  // and in e on right-closed cells cut at {d, d+2c}; the left end of an
  // s-cell and the right end of an e-cell give the longest window.
  std::vector<double> S{-kInf}, E{kInf};
  for (const auto& b : B.bars) {
    if (std::isfinite(b.birth)) { S.push_back(b.birth); S.push_back(b.birth - 2 * c); }
    if (std::isfinite(b.death)) { E.push_back(b.death); E.push_back(b.death + 2 * c); }
  }
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  std::sort(E.begin(), E.end());
  E.erase(std::unique(E.begin(), E.end()), E.end());
  for (double s : S)
    for (double e : E) {
      if (!(e - s > 4 * c)) continue;
      if (containing(B, s, e) != k) continue;
      if (containing(B, s + 2 * c, e - 2 * c) != k) continue;
      return true;
    }
  return false;
}

double multiplicity_function(const Barcode& B, std::size_t k) {
  if (k == 0) fail_input("multiplicity function needs k >= 1");
  std::vector<double> ends;
  for (const auto& b : B.bars) {
    if (std::isfinite(b.birth)) ends.push_back(b.birth);
    if (std::isfinite(b.death)) ends.push_back(b.death);
  }
  std::vector<double> cand{0.0};
  for (double x : ends)
    for (double y : ends)
      if (x > y) {
        cand.push_back((x - y) / 2);
        cand.push_back((x - y) / 4);
      }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Feasibility is downward closed in c and can only change at candidates,
  // so probing midpoints of consecutive candidates locates the supremum.
  auto probe = [&](std::size_t i) {
    double c = i + 1 < cand.size() ? (cand[i] + cand[i + 1]) / 2 : cand[i] + 1.0 + cand[i];
    return multiplicity_feasible(B, k, c);
  };
  const std::size_t n = cand.size();
  if (probe(n - 1)) return kInf;
  if (!probe(0)) return 0;
  std::size_t lo = 0, hi = n - 1;  // probe(lo) true, probe(hi) false
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (probe(mid)) lo = mid; else hi = mid;
  }
  return cand[lo + 1];
}

double mu_odd(const Barcode& B) {
  double best = 0;
  for (std::size_t k = 1; k <= B.size(); k += 2) best = std::max(best, multiplicity_function(B, k));
  return best;
}

}  // namespace persist
