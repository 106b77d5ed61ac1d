#include "perc/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "perc/geometry.hpp"

namespace perc {

PPolynomial::PPolynomial(int n_sites, std::vector<std::uint64_t> coeffs)
    : n_sites_(n_sites), coeffs_(std::move(coeffs)) {
  if (n_sites_ < 0 || coeffs_.size() != static_cast<std::size_t>(n_sites_) + 1)
    throw std::invalid_argument("need one coefficient per occupation count");
}

double PPolynomial::eval(double p) const {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p outside [0,1]");
  double sum = 0.0;
  for (int k = 0; k <= n_sites_; ++k) {
    if (coeffs_[k] == 0) continue;
    sum += static_cast<double>(coeffs_[k]) * std::pow(p, k) *
           std::pow(1.0 - p, n_sites_ - k);
  }
  return sum;
}

std::string PPolynomial::to_json() const {
  nlohmann::ordered_json j;
  j["n_sites"] = n_sites_;
  j["coeffs"] = coeffs_;
  return j.dump();
}

PPolynomial PPolynomial::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  return PPolynomial(j.at("n_sites").get<int>(),
                     j.at("coeffs").get<std::vector<std::uint64_t>>());
}

PPolynomial exact_prob(const Rect& rect, const ConfigPredicate& pred) {
  EnumCursor cur(rect);
  const int n = static_cast<int>(rect.site_count());
  std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t pat = 0; pat < cur.pattern_count(); ++pat)
    if (pred(cur.at(pat))) ++coeffs[std::popcount(pat)];
  return PPolynomial(n, std::move(coeffs));
}

VerifyResult verify_duality(const Rect& rect) {
  EnumCursor cur(rect);
  for (std::uint64_t pat = 0; pat < cur.pattern_count(); ++pat) {
    const Config& c = cur.at(pat);
    const bool occ_h = has_crossing(
        c, {Direction::Horizontal, Occupancy::Occupied, GraphKind::G});
    const bool vac_v = has_crossing(
        c, {Direction::Vertical, Occupancy::Vacant, GraphKind::GStar});
    if (occ_h == vac_v) return {false, c};
  }
  return {};
}

VerifyResult verify_implication(const Rect& rect,
                                const ConfigPredicate& antecedent,
                                const ConfigPredicate& consequent) {
  EnumCursor cur(rect);
  for (std::uint64_t pat = 0; pat < cur.pattern_count(); ++pat) {
    const Config& c = cur.at(pat);
    if (antecedent(c) && !consequent(c)) return {false, c};
  }
  return {};
}

}  // namespace perc
