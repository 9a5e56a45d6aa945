#pragma once

// Dense exact diagonalization of the 8-site periodic cluster (the 2 x 2
// unit-cell torus) as an independent check on the correlator structure
// and on the reduced density matrices.
//
// Sites are numbered 1..8. Basis index bit (8 - s) holds site s, so site 1
// is the most significant qubit (Kronecker order); bit value 1 is spin down.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/parallel.hpp"
#include "kitaev/spectrum.hpp"

namespace kitaev::ed {

inline constexpr int kClusterSites = 8;
inline constexpr int kClusterDim = 1 << kClusterSites;

enum class Axis { I = 0, X = 1, Y = 2, Z = 3 };

char axis_label(Axis a);

/// Product of single-site Pauli matrices, keyed by site (1..8).
struct PauliString {
  std::map<int, Axis> factors;

  PauliString() = default;
  PauliString(std::initializer_list<std::pair<const int, Axis>> f);

  std::string label() const;
};

using DenseOperator = Eigen::MatrixXcd;
using State = Eigen::VectorXcd;

struct Link {
  int a;
  int b;
};

/// The three link families of the cluster.
struct ClusterLinks {
  std::array<Link, 4> x;
  std::array<Link, 4> y;
  std::array<Link, 4> z;

  /// x: (5,3) (6,4) (7,1) (8,2); y: (3,6) (5,4) (8,1) (7,2);
  /// z: (3,7) (4,8) (5,1) (6,2).
  static ClusterLinks standard();

  const std::array<Link, 4>& of(Axis a) const;

  /// Every site in exactly one link of each family, sites in 1..8, no
  /// self-links.
  bool is_three_regular_coloring() const;
};

State apply(const PauliString& p, const State& psi);
DenseOperator pauli_operator(const PauliString& p);

/// -Jx sum_x sx sx - Jy sum_y sy sy - Jz sum_z sz sz over the link table.
DenseOperator build_h8(const Couplings& j,
                       const ClusterLinks& links = ClusterLinks::standard());

bool is_hermitian(const DenseOperator& h, double tol = 1e-12);

struct GroundSpace {
  double energy = 0.0;
  Eigen::MatrixXcd states;  ///< orthonormal columns spanning the ground space

  int degeneracy() const { return static_cast<int>(states.cols()); }
};

/// Lowest eigenvalue and every eigenvector within degeneracy_tol of it.
GroundSpace ground_state(const DenseOperator& h, double degeneracy_tol = 1e-9);

/// <sigma^alpha_a sigma^beta_b> for alpha, beta in {0, x, y, z}.
/// mean averages over the ground-space basis; spread is max - min over it.
struct CorrelatorTable {
  std::array<std::array<double, 4>, 4> mean{};
  std::array<std::array<double, 4>, 4> spread{};
};

CorrelatorTable all_two_site_correlators(const GroundSpace& g, int site_a, int site_b);

/// Expectation value averaged over the ground-space basis.
double expectation(const GroundSpace& g, const PauliString& p);

/// Partial trace of the ground-space average (1/d) sum_k |k><k| onto the
/// given sites (at most 4); sites[0] is the most significant qubit.
DenseOperator reduced_density_matrix(const GroundSpace& g, std::span<const int> sites);

/// W = prod_{v in loop} sigma_v^{axis of the link at v not on the loop},
/// one per fundamental cycle of the link graph (cycle-space dimension
/// 12 - 8 + 1 = 5). Throws DomainError for an improper link table.
std::vector<PauliString> loop_operators(const ClusterLinks& links);

/// <psi|H|psi> for the product state with the given Bloch unit vectors.
double product_state_energy(const DenseOperator& h,
                            std::span<const std::array<double, 3>> bloch);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct OracleReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> info;

  bool all_passed() const;
};

/// Deterministic sample of couplings: half on the symmetric line
/// (both phases), half spread over the simplex.
std::vector<Couplings> oracle_samples(int count, std::uint64_t seed);

/// Runs every cluster invariant: link coloring, Hermiticity, loop-operator
/// commutation, z-link correlator sparsity, z-link and single-site reduced
/// density matrices, and the variational bound. Coupling points are
/// diagonalized concurrently; the report does not depend on the worker count.
OracleReport check_invariants(const ClusterLinks& links, std::span<const Couplings> samples,
                              std::uint64_t seed = 7, Exec exec = {});

}  // namespace kitaev::ed
