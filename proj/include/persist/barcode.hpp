#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace persist {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Half-open interval (birth, death]; birth may be -inf, death may be +inf.
struct Bar {
  double birth = 0;
  double death = kInf;
  std::optional<int> degree;

  static Bar make(double birth, double death, std::optional<int> degree = std::nullopt);
  double length() const { return death - birth; }
  bool finite() const;
  bool operator==(const Bar& o) const = default;
};

struct Barcode {
  std::vector<Bar> bars;

  Barcode() = default;
  Barcode(std::initializer_list<Bar> b) : bars(b) {}
  explicit Barcode(std::vector<Bar> b) : bars(std::move(b)) {}

  std::size_t size() const { return bars.size(); }
  bool empty() const { return bars.empty(); }
  const Bar& operator[](std::size_t i) const { return bars[i]; }
  void add(double birth, double death, std::optional<int> degree = std::nullopt, std::size_t copies = 1);

  bool all_tagged() const;
  std::vector<int> degrees() const;
  Barcode in_degree(int k) const;
  Barcode untagged() const;
  // Canonical order: degree (untagged last), birth, death.
  Barcode sorted() const;
  std::size_t finite_count() const;
};

// Multiset equality with endpoints compared up to tol (degrees must match).
bool same_bars(const Barcode& a, const Barcode& b, double tol = 0.0);

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

double bar_match_cost(const Bar& I, const Bar& J);
bool is_delta_matching(const Barcode& B, const Barcode& C, const Matching& M, double delta);

struct BottleneckResult {
  double distance = 0;
  Matching matching;  // a delta-matching at the returned distance (empty if infinite)
};

// Per degree when both barcodes are fully tagged, combined by maximum;
// otherwise B and C are compared as single pools.
BottleneckResult bottleneck(const Barcode& B, const Barcode& C);
double bottleneck_distance(const Barcode& B, const Barcode& C);
// Feasibility of a delta-matching between B and C treated as untagged pools.
std::optional<Matching> delta_matching(const Barcode& B, const Barcode& C, double delta);

double matching_lemma(const std::vector<double>& b, const std::vector<double>& c);
double interval_interleaving_distance(const Bar& I, const Bar& J);
Barcode shift_barcode(const Barcode& B, double delta);

double beta_k(const Barcode& B, std::size_t k);
inline double boundary_depth(const Barcode& B) { return beta_k(B, 1); }
double ell(const Barcode& B, double lo, double hi);
std::size_t nu(const Barcode& B, double c);
std::size_t persistent_betti(const Barcode& B, const Bar& I);
double multiplicity_function(const Barcode& B, std::size_t k);
// Whether some finite window I of length > 4c has m(B,I) = m(B,I^{2c}) = k.
bool multiplicity_feasible(const Barcode& B, std::size_t k, double c);
double mu_odd(const Barcode& B);
std::vector<double> infinite_endpoint_spectrum(const Barcode& B);

}  // namespace persist
