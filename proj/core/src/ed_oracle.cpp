#include "kitaev/ed_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "kitaev/correlators.hpp"
#include "kitaev/errors.hpp"

namespace kitaev::ed {
namespace {

using cplx = std::complex<double>;

constexpr std::array<Axis, 4> kAxes = {Axis::I, Axis::X, Axis::Y, Axis::Z};

int bit_of(int site) {
  if (site < 1 || site > kClusterSites) {
    throw DomainError("cluster site index must lie in 1..8, got " + std::to_string(site));
  }
  return kClusterSites - site;
}

// P|b> = phase(b) |b ^ flip>.
struct PauliAction {
  std::uint32_t flip = 0;
  std::vector<std::pair<int, Axis>> phased;  // (bit, axis) for Y and Z factors

  explicit PauliAction(const PauliString& p) {
    for (const auto& [site, axis] : p.factors) {
      const int bit = bit_of(site);
      if (axis == Axis::X || axis == Axis::Y) flip |= 1u << bit;
      if (axis == Axis::Y || axis == Axis::Z) phased.emplace_back(bit, axis);
    }
  }

  cplx phase(std::uint32_t b) const {
    cplx ph{1.0, 0.0};
    for (const auto& [bit, axis] : phased) {
      const bool down = (b >> bit) & 1u;
      if (axis == Axis::Z) {
        if (down) ph = -ph;
      } else {
        // Y|0> = i|1>, Y|1> = -i|0>
        ph *= down ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
      }
    }
    return ph;
  }
};

Axis third_axis(Axis a, Axis b) {
  for (Axis c : {Axis::X, Axis::Y, Axis::Z}) {
    if (c != a && c != b) return c;
  }
  return Axis::I;
}

double off_diagonal_mass(const DenseOperator& m) {
  double mass = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != c) mass = std::max(mass, std::abs(m(r, c)));
    }
  }
  return mass;
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string fmt_couplings(const Couplings& j) {
  return "(" + fmt_double(j.jx()) + ", " + fmt_double(j.jy()) + ", " + fmt_double(j.jz()) + ")";
}

}  // namespace

char axis_label(Axis a) {
  switch (a) {
    case Axis::I: return '0';
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

PauliString::PauliString(std::initializer_list<std::pair<const int, Axis>> f) {
  for (const auto& [site, axis] : f) {
    bit_of(site);
    if (!factors.emplace(site, axis).second) {
      throw DomainError("PauliString: repeated site " + std::to_string(site));
    }
  }
}

std::string PauliString::label() const {
  if (factors.empty()) return "I";
  std::string s;
  for (const auto& [site, axis] : factors) {
    if (!s.empty()) s += ' ';
    s += axis_label(axis);
    s += std::to_string(site);
  }
  return s;
}

ClusterLinks ClusterLinks::standard() {
  return {{{{5, 3}, {6, 4}, {7, 1}, {8, 2}}},
          {{{3, 6}, {5, 4}, {8, 1}, {7, 2}}},
          {{{3, 7}, {4, 8}, {5, 1}, {6, 2}}}};
}

const std::array<Link, 4>& ClusterLinks::of(Axis a) const {
  switch (a) {
    case Axis::X: return x;
    case Axis::Y: return y;
    case Axis::Z: return z;
    case Axis::I: break;
  }
  throw DomainError("ClusterLinks::of: identity has no link family");
}

bool ClusterLinks::is_three_regular_coloring() const {
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    std::array<int, kClusterSites + 1> seen{};
    for (const Link& l : of(a)) {
      if (l.a < 1 || l.a > kClusterSites || l.b < 1 || l.b > kClusterSites) return false;
      if (l.a == l.b) return false;
      ++seen[l.a];
      ++seen[l.b];
    }
    for (int s = 1; s <= kClusterSites; ++s) {
      if (seen[s] != 1) return false;
    }
  }
  return true;
}

State apply(const PauliString& p, const State& psi) {
  const PauliAction act(p);
  State out = State::Zero(psi.size());
  for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(psi.size()); ++b) {
    out(b ^ act.flip) += act.phase(b) * psi(b);
  }
  return out;
}

DenseOperator pauli_operator(const PauliString& p) {
  const PauliAction act(p);
  DenseOperator m = DenseOperator::Zero(kClusterDim, kClusterDim);
  for (std::uint32_t b = 0; b < kClusterDim; ++b) m(b ^ act.flip, b) = act.phase(b);
  return m;
}

DenseOperator build_h8(const Couplings& j, const ClusterLinks& links) {
  DenseOperator h = DenseOperator::Zero(kClusterDim, kClusterDim);
  const std::array<std::pair<Axis, double>, 3> families = {
      {{Axis::X, j.jx()}, {Axis::Y, j.jy()}, {Axis::Z, j.jz()}}};
  for (const auto& [axis, coupling] : families) {
    for (const Link& l : links.of(axis)) {
      if (l.a == l.b) throw DomainError("build_h8: self-link on site " + std::to_string(l.a));
      h -= coupling * pauli_operator(PauliString{{l.a, axis}, {l.b, axis}});
    }
  }
  return h;
}

bool is_hermitian(const DenseOperator& h, double tol) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

GroundSpace ground_state(const DenseOperator& h, double degeneracy_tol) {
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("ground_state: Hermitian eigensolver did not converge");
  }
  const auto& values = solver.eigenvalues();
  const double e0 = values(0);
  Eigen::Index count = 1;
  while (count < values.size() && values(count) <= e0 + degeneracy_tol) ++count;
  return {e0, solver.eigenvectors().leftCols(count)};
}

double expectation(const GroundSpace& g, const PauliString& p) {
  double sum = 0.0;
  for (int k = 0; k < g.degeneracy(); ++k) {
    const State psi = g.states.col(k);
    sum += psi.dot(ed::apply(p, psi)).real();
  }
  return sum / g.degeneracy();
}

CorrelatorTable all_two_site_correlators(const GroundSpace& g, int site_a, int site_b) {
  if (site_a == site_b) throw DomainError("all_two_site_correlators: sites must differ");
  CorrelatorTable t;
  for (int alpha = 0; alpha < 4; ++alpha) {
    for (int beta = 0; beta < 4; ++beta) {
      PauliString p;
      if (kAxes[alpha] != Axis::I) p.factors.emplace(site_a, kAxes[alpha]);
      if (kAxes[beta] != Axis::I) p.factors.emplace(site_b, kAxes[beta]);
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      double sum = 0.0;
      for (int k = 0; k < g.degeneracy(); ++k) {
        const State psi = g.states.col(k);
        const double v = psi.dot(ed::apply(p, psi)).real();
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      t.mean[alpha][beta] = sum / g.degeneracy();
      t.spread[alpha][beta] = hi - lo;
    }
  }
  return t;
}

DenseOperator reduced_density_matrix(const GroundSpace& g, std::span<const int> sites) {
  if (sites.empty() || sites.size() > 4) {
    throw DomainError("reduced_density_matrix: between 1 and 4 sites supported");
  }
  std::vector<int> kept_bits;
  std::set<int> unique;
  for (int s : sites) {
    if (!unique.insert(s).second) throw DomainError("reduced_density_matrix: repeated site");
    kept_bits.push_back(bit_of(s));
  }
  std::vector<int> rest_bits;
  for (int b = kClusterSites - 1; b >= 0; --b) {
    if (std::find(kept_bits.begin(), kept_bits.end(), b) == kept_bits.end()) {
      rest_bits.push_back(b);
    }
  }
  const int m = static_cast<int>(kept_bits.size());
  const int dk = 1 << m;
  const int dr = kClusterDim / dk;

  // Full basis index for (kept index, rest index); first listed site is the
  // most significant digit of the kept index.
  auto full_index = [&](int ki, int ri) {
    std::uint32_t b = 0;
    for (int t = 0; t < m; ++t) {
      if ((ki >> (m - 1 - t)) & 1) b |= 1u << kept_bits[t];
    }
    const int nr = static_cast<int>(rest_bits.size());
    for (int t = 0; t < nr; ++t) {
      if ((ri >> (nr - 1 - t)) & 1) b |= 1u << rest_bits[t];
    }
    return b;
  };

  DenseOperator rho = DenseOperator::Zero(dk, dk);
  Eigen::MatrixXcd psi_mat(dk, dr);
  for (int k = 0; k < g.degeneracy(); ++k) {
    for (int ki = 0; ki < dk; ++ki) {
      for (int ri = 0; ri < dr; ++ri) psi_mat(ki, ri) = g.states(full_index(ki, ri), k);
    }
    rho += psi_mat * psi_mat.adjoint();
  }
  return rho / static_cast<double>(g.degeneracy());
}

std::vector<PauliString> loop_operators(const ClusterLinks& links) {
  if (!links.is_three_regular_coloring()) {
    throw DomainError("loop_operators: link table is not a proper 3-edge-coloring");
  }
  struct Edge {
    int a;
    int b;
    Axis axis;
  };
  std::vector<Edge> edges;
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    for (const Link& l : links.of(axis)) edges.push_back({l.a, l.b, axis});
  }
  std::array<std::vector<int>, kClusterSites + 1> adjacent;  // edge indices
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adjacent[edges[e].a].push_back(e);
    adjacent[edges[e].b].push_back(e);
  }

  // BFS spanning tree from site 1.
  std::array<int, kClusterSites + 1> parent_edge;
  std::array<int, kClusterSites + 1> depth;
  parent_edge.fill(-1);
  depth.fill(-1);
  std::vector<bool> in_tree(edges.size(), false);
  std::queue<int> frontier;
  depth[1] = 0;
  frontier.push(1);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int e : adjacent[v]) {
      const int w = edges[e].a == v ? edges[e].b : edges[e].a;
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      parent_edge[w] = e;
      in_tree[e] = true;
      frontier.push(w);
    }
  }
  for (int s = 1; s <= kClusterSites; ++s) {
    if (depth[s] < 0) throw DomainError("loop_operators: link graph is disconnected");
  }

  std::vector<PauliString> loops;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (in_tree[e]) continue;
    // Edge set of the fundamental cycle: tree paths from both ends to their
    // meeting point, plus the closing edge.
    std::vector<int> cycle = {e};
    int u = edges[e].a;
    int v = edges[e].b;
    auto step_up = [&](int& x) {
      const int pe = parent_edge[x];
      cycle.push_back(pe);
      x = edges[pe].a == x ? edges[pe].b : edges[pe].a;
    };
    while (depth[u] > depth[v]) step_up(u);
    while (depth[v] > depth[u]) step_up(v);
    while (u != v) {
      step_up(u);
      step_up(v);
    }
    std::map<int, std::vector<Axis>> on_loop;
    for (int ce : cycle) {
      on_loop[edges[ce].a].push_back(edges[ce].axis);
      on_loop[edges[ce].b].push_back(edges[ce].axis);
    }
    PauliString w;
    for (const auto& [site, axes] : on_loop) {
      w.factors.emplace(site, third_axis(axes.at(0), axes.at(1)));
    }
    loops.push_back(std::move(w));
  }
  return loops;
}

double product_state_energy(const DenseOperator& h,
                            std::span<const std::array<double, 3>> bloch) {
  if (bloch.size() != kClusterSites) {
    throw DomainError("product_state_energy: need one Bloch vector per site");
  }
  State psi = State::Ones(1);
  for (const auto& n : bloch) {
    // |n> = cos(t/2)|0> + e^{i p} sin(t/2)|1>
    const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
    const double phi = std::atan2(n[1], n[0]);
    Eigen::Vector2cd site;
    site << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
    State next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next(2 * i) = psi(i) * site(0);
      next(2 * i + 1) = psi(i) * site(1);
    }
    psi = std::move(next);
  }
  return psi.dot(h * psi).real();
}

bool OracleReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<Couplings> oracle_samples(int count, std::uint64_t seed) {
  std::vector<Couplings> out;
  const int on_line = count / 2;
  for (int i = 0; i < on_line; ++i) {
    out.push_back(line_point((i + 0.5) / on_line));
  }
  std::mt19937_64 rng(seed);
  // Uniform on the simplex from two sorted uniforms, using the raw engine
  // output so the sample is identical on every standard library.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  while (static_cast<int>(out.size()) < count) {
    double a = uniform();
    double b = uniform();
    if (a > b) std::swap(a, b);
    const double jx = a;
    const double jy = b - a;
    const double jz = 1.0 - b;
    if (jx == 0.0 && jy == 0.0 && jz == 0.0) continue;
    out.emplace_back(jx, jy, jz);
  }
  return out;
}

namespace {

// Everything measured at one coupling point.
struct SampleOutcome {
  std::string build_error;
  bool hermitian = true;
  bool loops = true;
  bool sparsity = true;
  bool zlink_rdm = true;
  bool site_rdm = true;
  bool variational = true;
  double commutator = 0.0;
  double sparsity_value = 0.0;
  std::string sparsity_where;
  double zlink_off = 0.0;
  double site_dev = 0.0;
  std::string info;
};

SampleOutcome check_sample(const ClusterLinks& links, const std::vector<DenseOperator>& loops,
                           const Couplings& j, std::uint64_t seed, bool coloring) {
  constexpr double kOperatorTol = 1e-12;
  constexpr double kStateTol = 1e-9;
  SampleOutcome out;
  DenseOperator h;
  try {
    h = build_h8(j, links);
  } catch (const DomainError& e) {
    out.build_error = e.what();
    out.hermitian = false;
    return out;
  }
  out.hermitian = is_hermitian(h, kOperatorTol);

  for (const auto& wm : loops) {
    const double c = (h * wm - wm * h).cwiseAbs().maxCoeff();
    out.commutator = std::max(out.commutator, c);
    if (c > kOperatorTol) out.loops = false;
  }

  const GroundSpace g = ground_state(h);

  for (const Link& zl : links.z) {
    const auto table = all_two_site_correlators(g, zl.a, zl.b);
    for (int alpha = 0; alpha < 4; ++alpha) {
      for (int beta = 0; beta < 4; ++beta) {
        if ((alpha == 0 && beta == 0) || (alpha == 3 && beta == 3)) continue;
        const double v = std::abs(table.mean[alpha][beta]);
        if (v > out.sparsity_value) {
          out.sparsity_value = v;
          out.sparsity_where = std::string(1, axis_label(kAxes[alpha])) + axis_label(kAxes[beta]) +
                               " on (" + std::to_string(zl.a) + "," + std::to_string(zl.b) +
                               ") at " + fmt_couplings(j);
        }
        if (v > kStateTol) out.sparsity = false;
      }
    }

    const std::array<int, 2> pair = {zl.a, zl.b};
    const DenseOperator rho = reduced_density_matrix(g, pair);
    const double zz = table.mean[3][3];
    const std::array<double, 4> expected = {(1 + zz) / 4, (1 - zz) / 4, (1 - zz) / 4,
                                            (1 + zz) / 4};
    double off = off_diagonal_mass(rho);
    for (int d = 0; d < 4; ++d) off = std::max(off, std::abs(rho(d, d) - expected[d]));
    out.zlink_off = std::max(out.zlink_off, off);
    if (off > kStateTol) out.zlink_rdm = false;
  }

  for (int s = 1; s <= kClusterSites; ++s) {
    const std::array<int, 1> one = {s};
    const DenseOperator rho = reduced_density_matrix(g, one);
    const double dev = (rho - 0.5 * DenseOperator::Identity(2, 2)).cwiseAbs().maxCoeff();
    out.site_dev = std::max(out.site_dev, dev);
    if (dev > kStateTol) out.site_rdm = false;
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 8; ++trial) {
    std::array<std::array<double, 3>, kClusterSites> bloch{};
    for (auto& n : bloch) {
      const double z = 2.0 * uniform() - 1.0;
      const double phi = 2.0 * std::numbers::pi * uniform();
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      n = {r * std::cos(phi), r * std::sin(phi), z};
    }
    if (g.energy > product_state_energy(h, bloch) + kOperatorTol) out.variational = false;
  }

  if (coloring) {
    const Link zl = links.z[2];
    const double ed_zz = expectation(g, PauliString{{zl.a, Axis::Z}, {zl.b, Axis::Z}});
    const double sum_zz = two_site_zz(j, LatticeSize{2}).value;
    out.info = "L=2 cross-check at " + fmt_couplings(j) + ": ED <zz> = " + fmt_double(ed_zz) +
               ", momentum sum = " + fmt_double(sum_zz) + "; ED E0 = " + fmt_double(g.energy) +
               ", -sum|f| = " + fmt_double(ground_energy(j, LatticeSize{2}));
  }
  return out;
}

}  // namespace

OracleReport check_invariants(const ClusterLinks& links, std::span<const Couplings> samples,
                              std::uint64_t seed, Exec exec) {
  OracleReport report;

  const bool coloring = links.is_three_regular_coloring();
  report.checks.push_back({"link-coloring", coloring,
                           coloring ? "every site has one x, one y and one z link"
                                    : "link table is not a proper 3-edge-coloring"});

  std::vector<PauliString> loops;
  std::string loop_error;
  try {
    loops = loop_operators(links);
  } catch (const DomainError& e) {
    loop_error = e.what();
  }
  std::vector<DenseOperator> loop_matrices;
  for (const auto& w : loops) loop_matrices.push_back(pauli_operator(w));

  std::vector<SampleOutcome> outcomes(samples.size());
  parallel_for(samples.size(), exec, [&](std::size_t i) {
    outcomes[i] = check_sample(links, loop_matrices, samples[i], seed + i, coloring);
  });

  bool hermitian_ok = true;
  bool loops_ok = loop_error.empty();
  bool sparsity_ok = true;
  bool zlink_rdm_ok = true;
  bool site_rdm_ok = true;
  bool variational_ok = true;
  double worst_commutator = 0.0;
  double worst_sparsity = 0.0;
  double worst_zlink_off = 0.0;
  double worst_site_dev = 0.0;
  std::string sparsity_where;
  for (const SampleOutcome& o : outcomes) {
    if (!o.build_error.empty()) {
      report.info.push_back("build_h8 failed: " + o.build_error);
      hermitian_ok = loops_ok = sparsity_ok = zlink_rdm_ok = site_rdm_ok = variational_ok = false;
      continue;
    }
    hermitian_ok = hermitian_ok && o.hermitian;
    loops_ok = loops_ok && o.loops;
    sparsity_ok = sparsity_ok && o.sparsity;
    zlink_rdm_ok = zlink_rdm_ok && o.zlink_rdm;
    site_rdm_ok = site_rdm_ok && o.site_rdm;
    variational_ok = variational_ok && o.variational;
    worst_commutator = std::max(worst_commutator, o.commutator);
    if (o.sparsity_value > worst_sparsity) {
      worst_sparsity = o.sparsity_value;
      sparsity_where = o.sparsity_where;
    }
    worst_zlink_off = std::max(worst_zlink_off, o.zlink_off);
    worst_site_dev = std::max(worst_site_dev, o.site_dev);
    if (!o.info.empty()) report.info.push_back(o.info);
  }

  const std::string n = std::to_string(samples.size());
  report.checks.push_back({"hermitian", hermitian_ok, "H8 Hermitian at " + n + " couplings"});
  report.checks.push_back(
      {"loop-commutation", loops_ok,
       loop_error.empty()
           ? std::to_string(loops.size()) + " loop operators, max |[H,W]| = " +
                 fmt_double(worst_commutator)
           : loop_error});
  report.checks.push_back({"correlator-sparsity", sparsity_ok,
                           "largest forbidden z-link correlator " + fmt_double(worst_sparsity) +
                               (sparsity_where.empty() ? "" : " (" + sparsity_where + ")")});
  report.checks.push_back({"zlink-rdm-diagonal", zlink_rdm_ok,
                           "max deviation from diag((1+zz),(1-zz),(1-zz),(1+zz))/4 = " +
                               fmt_double(worst_zlink_off)});
  report.checks.push_back({"single-site-rdm", site_rdm_ok,
                           "max |rho_i - I/2| = " + fmt_double(worst_site_dev)});
  report.checks.push_back({"variational-bound", variational_ok,
                           "E0 <= <H> for 8 random product states per coupling"});
  return report;
}

}  // namespace kitaev::ed
