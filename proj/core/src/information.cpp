#include "kitaev/information.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kitaev/errors.hpp"

namespace kitaev {
namespace {

double clamp_probability(double x, const char* what) {
  if (!(x >= -kPhysicalSlack && x <= 1.0 + kPhysicalSlack)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": value " << x << " lies outside [0, 1]";
    throw DomainError(msg.str());
  }
  return std::clamp(x, 0.0, 1.0);
}

void check_c2(double c2) {
  if (!(std::abs(c2) <= 1.0 + kPhysicalSlack)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "two-site correlator <zz> = " << c2 << " lies outside [-1, 1]";
    throw DomainError(msg.str());
  }
}

std::array<double, 3> two_bond_eigenvalues(double c2, double c4) {
  check_c2(c2);
  const std::array<double, 3> raw = {(1.0 - c4) / 16.0, (1.0 - 2.0 * c2 + c4) / 16.0,
                                     (1.0 + 2.0 * c2 + c4) / 16.0};
  for (double v : raw) {
    if (v < -kPhysicalSlack) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "unphysical correlator pair: <zz> = " << c2 << ", <zzzz> = " << c4
          << " gives a negative two-bond eigenvalue " << v;
      throw DomainError(msg.str());
    }
  }
  return {std::max(raw[0], 0.0), std::max(raw[1], 0.0), std::max(raw[2], 0.0)};
}

// Marginal probabilities of the bond parity p = +1 / -1.
std::array<double, 2> parity_marginals(double c2) {
  const double c = std::clamp(c2, -1.0, 1.0);
  return {0.5 * (1.0 + c), 0.5 * (1.0 - c)};
}

constexpr std::array<int, 2> kParity = {+1, -1};

}  // namespace

double RdmSpectrum::trace() const {
  double t = 0.0;
  for (const auto& e : entries) t += e.value * e.multiplicity;
  return t;
}

double RdmSpectrum::entropy() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.multiplicity * entropy_term(e.value);
  return s;
}

int RdmSpectrum::dimension() const {
  int d = 0;
  for (const auto& e : entries) d += e.multiplicity;
  return d;
}

double DiagonalRdm::trace() const {
  double t = 0.0;
  for (double v : diagonal) t += v;
  return t;
}

double DiagonalRdm::entropy() const {
  double s = 0.0;
  for (double v : diagonal) s += entropy_term(v);
  return s;
}

double entropy_term(double x) {
  const double p = clamp_probability(x, "entropy_term");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p);
}

DiagonalRdm two_site_rdm(double c2) {
  check_c2(c2);
  const double c = std::clamp(c2, -1.0, 1.0);
  const double aligned = 0.25 * (1.0 + c);
  const double anti = 0.25 * (1.0 - c);
  return {4, {aligned, anti, anti, aligned}};
}

double mutual_info_two_site(double c2) {
  check_c2(c2);
  // 2 - 2H((1-c)/4) - 2H((1+c)/4) rewritten as
  // ((1+c) log2(1+c) + (1-c) log2(1-c)) / 2, which is free of cancellation
  // near c = 0 and exactly even in c.
  const double c = std::min(std::abs(c2), 1.0);
  if (c == 1.0) return 1.0;
  return ((1.0 + c) * std::log1p(c) + (1.0 - c) * std::log1p(-c)) / (2.0 * std::numbers::ln2);
}

RdmSpectrum two_bond_rdm_spectrum(double c2, double c4) {
  const auto ev = two_bond_eigenvalues(c2, c4);
  return {{{ev[0], 8}, {ev[1], 4}, {ev[2], 4}}};
}

DiagonalRdm two_bond_rdm(double c2, double c4) {
  two_bond_eigenvalues(c2, c4);
  DiagonalRdm rdm{16, std::vector<double>(16)};
  for (int idx = 0; idx < 16; ++idx) {
    auto z = [idx](int bit) { return ((idx >> bit) & 1) ? -1.0 : 1.0; };
    const double p = z(3) * z(2);
    const double s = z(1) * z(0);
    rdm.diagonal[idx] = std::max(0.0, (1.0 + c2 * p + c2 * s + c4 * p * s) / 16.0);
  }
  return rdm;
}

double mutual_info_two_bond(double c2, double c4) {
  const auto ev = two_bond_eigenvalues(c2, c4);
  const double c = std::clamp(c2, -1.0, 1.0);
  const double single = 2.0 * entropy_term(0.25 * (1.0 + c)) + 2.0 * entropy_term(0.25 * (1.0 - c));
  return 2.0 * single - 8.0 * entropy_term(ev[0]) - 4.0 * entropy_term(ev[1]) -
         4.0 * entropy_term(ev[2]);
}

namespace detail {

// The two-bond state is a product of a classical distribution over the bond
// parities (p, s) with maximally mixed states inside each parity sector, so
// its mutual information equals that of
//   J(p, s) = P_p P_s (1 + x_ps),   x_ps = (c4c / 4) p s / (P_p P_s).
// Because sum_ps P_p P_s x_ps = 0,
//   MI ln 2 = sum_ps P_p P_s [(1 + x) ln(1 + x) - x].
double mutual_info_connected_exact(double c2, double c4c) {
  const auto marg = parity_marginals(c2);
  const double delta = 0.25 * c4c;
  double acc = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double prod = marg[a] * marg[b];
      const double joint = prod + delta * kParity[a] * kParity[b];
      if (joint <= 0.0 || prod <= 0.0) continue;
      acc += joint * std::log(joint / prod);
    }
  }
  return acc / std::numbers::ln2;
}

// sum_ps P_p P_s x^k = delta^k (sum_p p^k / P_p^(k-1))^2, and
// (1 + x) ln(1 + x) - x = sum_{k>=2} (-1)^k x^k / (k (k - 1)).
double mutual_info_connected_series(double c2, double c4c) {
  const auto marg = parity_marginals(c2);
  const double delta = 0.25 * c4c;
  double acc = 0.0;
  double delta_k = delta;
  std::array<double, 2> inv_power = {1.0, 1.0};  // P_p^-(k-1)
  for (int k = 2; k <= kConnectedSeriesOrder; ++k) {
    delta_k *= delta;
    inv_power[0] /= marg[0];
    inv_power[1] /= marg[1];
    const double sign_minus = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
    const double inner = inv_power[0] + sign_minus * inv_power[1];
    acc += sign_minus * delta_k * inner * inner / (static_cast<double>(k) * (k - 1));
  }
  return acc / std::numbers::ln2;
}

}  // namespace detail

double mutual_info_two_bond_connected(double c2, double c4c) {
  two_bond_eigenvalues(c2, std::clamp(c2, -1.0, 1.0) * std::clamp(c2, -1.0, 1.0) + c4c);
  if (c4c == 0.0) return 0.0;
  const auto marg = parity_marginals(c2);
  const double min_prod = std::min(marg[0], marg[1]);
  double max_x = 0.0;
  if (min_prod > 0.0) {
    max_x = std::abs(0.25 * c4c) / (min_prod * min_prod);
  }
  double mi = 0.0;
  if (min_prod > 0.0 && max_x < detail::kConnectedSeriesCrossover) {
    mi = detail::mutual_info_connected_series(c2, c4c);
  } else {
    mi = detail::mutual_info_connected_exact(c2, c4c);
  }
  return std::max(mi, 0.0);
}

double concurrence_two_site() { return 0.0; }

double generalized_concurrence(double purity, int dim) {
  if (dim < 2) throw DomainError("generalized_concurrence: dimension must be >= 2");
  const double lower = 1.0 / dim;
  if (purity < lower - kPhysicalSlack || purity > 1.0 + kPhysicalSlack) {
    throw DomainError("generalized_concurrence: purity outside [1/d, 1]");
  }
  const double p = std::clamp(purity, lower, 1.0);
  return std::sqrt(static_cast<double>(dim) / (dim - 1) * (1.0 - p));
}

}  // namespace kitaev
