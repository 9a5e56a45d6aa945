#pragma once

// Reduced density matrices, entropies and mutual information for
// two z-linked sites and for two z-bonds, in bits.
//
// Both reduced density matrices are diagonal in the computational basis and
// are fixed by the correlators c2 = <zz> and c4 = <zzzz>:
//
//   two sites: diag(1 + c2, 1 - c2, 1 - c2, 1 + c2) / 4
//   two bonds: (1 + c2 p + c2 s + c4 p s) / 16 for bond parities p, s = +-1
//
// giving the two-bond spectrum {(1 - c4)/16 x8, (1 - 2 c2 + c4)/16 x4,
// (1 + 2 c2 + c4)/16 x4}.

#include <vector>

namespace kitaev {

/// Slack for eigenvalues and correlators that arrive from floating-point sums.
inline constexpr double kPhysicalSlack = 1e-12;

struct RdmEigenvalue {
  double value;
  int multiplicity;
};

struct RdmSpectrum {
  std::vector<RdmEigenvalue> entries;

  double trace() const;
  /// Von Neumann entropy in bits.
  double entropy() const;
  int dimension() const;
};

struct DiagonalRdm {
  int dim;
  std::vector<double> diagonal;

  double trace() const;
  double entropy() const;
};

/// -x log2 x, exactly 0 at x = 0 and x = 1. Accepts x within kPhysicalSlack
/// of [0, 1] and clamps it.
double entropy_term(double x);

DiagonalRdm two_site_rdm(double c2);

/// 2 - 2 H((1 - c2)/4) - 2 H((1 + c2)/4). The single-site state is I/2.
double mutual_info_two_site(double c2);

RdmSpectrum two_bond_rdm_spectrum(double c2, double c4);

/// The 16 diagonal entries, basis index = 8 s1 + 4 s2 + 2 s3 + s4 with
/// sites (r1,1), (r1,2), (r2,1), (r2,2) and bit 1 meaning spin down.
DiagonalRdm two_bond_rdm(double c2, double c4);

double mutual_info_two_bond(double c2, double c4);

/// Same value as mutual_info_two_bond(c2, c2*c2 + c4c), but accurate to
/// relative precision when the connected correlator c4c is tiny.
double mutual_info_two_bond_connected(double c2, double c4c);

/// Concurrence of the two-site state: zero, since the state is diagonal.
double concurrence_two_site();

/// sqrt(d/(d-1) (1 - Tr rho^2)) for a d-dimensional subsystem state of the
/// given purity Tr rho^2.
double generalized_concurrence(double purity, int dim);

namespace detail {

/// |x| threshold on the per-cell relative deviation x = (c4c/4) p s / (P_p P_s)
/// below which the series path is used.
inline constexpr double kConnectedSeriesCrossover = 1e-2;
inline constexpr int kConnectedSeriesOrder = 12;

double mutual_info_connected_exact(double c2, double c4c);
double mutual_info_connected_series(double c2, double c4c);

}  // namespace detail

}  // namespace kitaev
