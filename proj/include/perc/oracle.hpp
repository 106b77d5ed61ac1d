#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perc/config.hpp"
#include "perc/lattice.hpp"

namespace perc {

using ConfigPredicate = std::function<bool(const Config&)>;

// Exact probability of an event on a small rect, kept as a polynomial in p:
// eval(p) = sum_k coeffs[k] * p^k * (1-p)^(n_sites-k) where coeffs[k] counts
// the satisfying configurations with exactly k occupied sites.
class PPolynomial {
 public:
  PPolynomial(int n_sites, std::vector<std::uint64_t> coeffs);

  int n_sites() const { return n_sites_; }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
  double eval(double p) const;

  std::string to_json() const;
  static PPolynomial from_json(const std::string& text);

  friend bool operator==(const PPolynomial&, const PPolynomial&) = default;

 private:
  int n_sites_;
  std::vector<std::uint64_t> coeffs_;
};

// Enumerates all 2^N configurations of rect (N <= Config::kEnumerateCap).
PPolynomial exact_prob(const Rect& rect, const ConfigPredicate& pred);

struct VerifyResult {
  bool ok = true;
  std::optional<Config> counterexample;
};

// Checks on every configuration of rect that exactly one of the horizontal
// occupied crossing on G and the vertical vacant crossing on GStar holds.
VerifyResult verify_duality(const Rect& rect);

// Checks antecedent(c) => consequent(c) on every configuration of rect.
VerifyResult verify_implication(const Rect& rect,
                                const ConfigPredicate& antecedent,
                                const ConfigPredicate& consequent);

}  // namespace perc
