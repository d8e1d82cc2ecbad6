// Acceptance battery: one line of output per criterion, PASS or FAIL with a
// short reason. Exit status is the number of failed criteria.

#include "gqms/dilation.hpp"
#include "gqms/graph.hpp"
#include "gqms/magic.hpp"
#include "gqms/pencil.hpp"
#include "gqms/sdp.hpp"
#include "gqms/separation.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gqms;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what, double seconds) {
    std::printf("criterion %2d: %s — %s (%.1fs)\n", idx, ok ? "PASS" : "FAIL",
                what.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename F>
void criterion(int idx, const std::string& what, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note = what;
    try {
        ok = body(note);
    } catch (const std::exception& e) {
        note = what + " [exception: " + e.what() + "]";
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(idx, ok, note, dt);
}

ComplexMatrix random_herm(int s, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m(i, j) = Complex(g(rng), g(rng));
    return 0.5 * (m + m.adjoint());
}

ComplexMatrix random_isometry_cols(int rows, int cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    return ComplexMatrix(qr.householderQ()).leftCols(cols);
}

}  // namespace

int main() {
    criterion(1, "cycle commutant dimensions: spectral, nullspace, closed form agree",
              [](std::string&) {
                  for (int n = 3; n <= 12; ++n) {
                      Graph g = cycle(n);
                      int spec = commutant_dimension_spectral(g);
                      int null = commutant_basis(g).dimension;
                      int form = cycle_commutant_dim_formula(n);
                      if (spec != form || null != form) return false;
                  }
                  return true;
              });

    criterion(2, "independent parameter counts for cycles and complete graphs",
              [](std::string&) {
                  if (gqms_affine(cycle(4), 1).independent_indices.size() != 5) return false;
                  if (gqms_affine(cycle(5), 1).independent_indices.size() != 8) return false;
                  for (int n = 3; n <= 6; ++n) {
                      size_t expect = static_cast<size_t>(n - 1) * (n - 1);
                      if (gqms_affine(complete(n), 1).independent_indices.size() != expect)
                          return false;
                  }
                  return true;
              });

    criterion(3, "monic identity holds in exact integer arithmetic for n=2..8",
              [](std::string&) {
                  for (int n = 2; n <= 8; ++n) {
                      AffineBlockParametrization a = qms_affine(n, 1);
                      if (!a.has_integer_form) return false;
                      for (int kl = 0; kl < n * n; ++kl) {
                          long total = static_cast<long>(n) * a.alpha_int(kl);
                          for (Eigen::Index p = 0; p < a.c_int.cols(); ++p)
                              total += a.c_int(kl, p);
                          if (total != 1) return false;
                      }
                  }
                  return true;
              });

    criterion(4, "pencil and direct membership routes agree on 1200 samples",
              [](std::string& note) {
                  int checked = 0;
                  for (int n : {3, 4, 5})
                      for (int s : {1, 2})
                          for (int t = 0; t < 100; ++t) {
                              std::uint64_t seed = 90000 + 977 * n + 83 * s + t;
                              BlockMatrix valid = random_qms(n, s, seed);
                              MembershipResult mv = membership_test(valid);
                              if (!(mv.direct && mv.pencil)) return false;
                              ++checked;

                              // walk outward along the affine line through the
                              // uniform square until positivity breaks
                              BlockMatrix bad = valid;
                              ComplexMatrix uni =
                                  (1.0 / n) * ComplexMatrix::Identity(s, s);
                              double t_out = 3.0;
                              MembershipResult mb;
                              for (int tries = 0; tries < 6; ++tries) {
                                  for (int kl = 0; kl < n * n; ++kl)
                                      bad.blocks[kl] =
                                          uni + t_out * (valid.blocks[kl] - uni);
                                  mb = membership_test(bad);
                                  if (!mb.direct) break;
                                  t_out *= 2.0;
                              }
                              if (mb.direct) return false;       // could not invalidate
                              if (mb.pencil != mb.direct) return false;
                              ++checked;
                          }
                  note += " (" + std::to_string(checked) + " agreed)";
                  return true;
              });

    criterion(5, "cyclic averaging: residuals, entrywise formula, idempotence",
              [](std::string&) {
                  Graph c4 = cycle(4);
                  auto twirl = z4_cycle_powers();
                  for (int t = 0; t < 50; ++t) {
                      BlockMatrix a = random_qms(4, 2, 7000 + t);
                      BlockMatrix avg = group_average(a, twirl);
                      MagicReport mr = verify_magic(avg, 1e-9);
                      if (!mr.overall) return false;
                      if (graph_commutes(avg, c4, 1e-10).residual > 1e-10) return false;
                      ComplexMatrix expect = 0.25 * (a.block(0, 1) + a.block(1, 2) +
                                                     a.block(2, 3) + a.block(3, 0));
                      if ((avg.block(0, 1) - expect).norm() > 1e-14) return false;
                      BlockMatrix twice = group_average(avg, twirl);
                      for (int kl = 0; kl < 16; ++kl)
                          if ((twice.blocks[kl] - avg.blocks[kl]).norm() > 1e-13)
                              return false;
                  }
                  return true;
              });

    criterion(6, "zero-sum basis span, standard 2x2 Hermitian basis, exact coefficients",
              [](std::string&) {
                  ZeBasis ze = ze_basis(4, ZeVariant::RowAndCol);
                  if (ze.dimension() != 5) return false;
                  // independent kernel computation for the mutual span check
                  ComplexMatrix cons = ComplexMatrix::Zero(12, 16);
                  for (int i = 0; i < 4; ++i) {
                      cons(i, i * 4 + i) = 1.0;
                      for (int j = 0; j < 4; ++j) {
                          cons(4 + i, i * 4 + j) = 1.0;
                          cons(8 + i, j * 4 + i) = 1.0;
                      }
                  }
                  ComplexMatrix kern = nullspace(cons);
                  if (kern.cols() != 5) return false;
                  ComplexMatrix v(16, 5);
                  for (int k = 0; k < 5; ++k)
                      for (int i = 0; i < 4; ++i)
                          for (int j = 0; j < 4; ++j)
                              v(i * 4 + j, k) = ze.basis[k](i, j);
                  double r1 = (v - kern * (kern.adjoint() * v)).norm() / v.norm();
                  Eigen::JacobiSVD<ComplexMatrix> svd(
                      v, Eigen::ComputeThinU | Eigen::ComputeThinV);
                  ComplexMatrix proj = svd.matrixU();
                  double r2 =
                      (kern - proj * (proj.adjoint() * kern)).norm() / kern.norm();
                  if (r1 > 1e-10 || r2 > 1e-10) return false;

                  auto hb = her_basis(2);
                  ComplexMatrix s1(2, 2), s2(2, 2), s3(2, 2), s4(2, 2);
                  s1 << 1, 0, 0, 0;
                  s2 << 0, 1, 1, 0;
                  s3 << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
                  s4 << 0, 0, 0, 1;
                  if ((hb[0] - s1).norm() != 0 || (hb[1] - s2).norm() != 0 ||
                      (hb[2] - s3).norm() != 0 || (hb[3] - s4).norm() != 0)
                      return false;

                  SeparationOperator op = separation_operator(from_permutation({0, 1, 2, 3}, 1));
                  return op.alpha_num == 1 && op.alpha_den == 6 && op.beta_num == 3 &&
                         op.beta_den == 8 && op.gamma_num == 1 && op.gamma_den == 8;
              });

    criterion(7, "positive controls pass the primal test with near-zero dual objectives",
              [](std::string& note) {
                  auto autos = c4_automorphisms();
                  std::vector<BlockMatrix> squares;
                  for (const auto& p : autos) squares.push_back(from_permutation(p, 2));
                  double worst = 0.0;
                  for (const BlockMatrix& sq : squares) {
                      FeasibilityWitness w = primal_feasibility(sq, ZeVariant::RowAndCol);
                      if (!w.feasible) return false;
                      DualCertificate cert = dual_certificate(sq, ZeVariant::RowAndCol);
                      if (!cert.validated || cert.objective < -1e-7) return false;
                      worst = std::min(worst, cert.objective);
                  }
                  for (int t = 0; t < 20; ++t) {
                      ComplexMatrix tall = random_isometry_cols(16, 2, 500 + t);
                      std::vector<ComplexMatrix> vs;
                      for (int i = 0; i < 8; ++i) vs.push_back(tall.block(2 * i, 0, 2, 2));
                      BlockMatrix mixed = matrix_convex_combine(squares, vs);
                      FeasibilityWitness w = primal_feasibility(mixed, ZeVariant::RowAndCol);
                      if (!w.feasible) return false;
                      DualCertificate cert = dual_certificate(mixed, ZeVariant::RowAndCol);
                      if (!cert.validated || cert.objective < -1e-7) return false;
                      worst = std::min(worst, cert.objective);
                  }
                  std::ostringstream os;
                  os << " (most negative objective " << worst << ")";
                  note += os.str();
                  return true;
              });

    criterion(8, "certified separation found for a cycle-commuting square at s=2",
              [](std::string& note) {
                  const int budget = 40;
                  const std::uint64_t seed = 20260825;
                  SearchResult r = counterexample_search(budget, seed, false);
                  std::ostringstream os;
                  if (r.found) {
                      const BlockMatrix& b = r.best_square;
                      bool ok = verify_magic(b, 1e-9).overall &&
                                graph_commutes(b, cycle(4), 1e-9).commutes &&
                                r.certificate.validated &&
                                r.certificate.objective <= -1e-6;
                      os << " (objective " << r.certificate.objective << ", seed "
                         << r.certificate.seed << ")";
                      note += os.str();
                      return ok;
                  }
                  os << " [budget " << budget << " exhausted; best objective "
                     << r.best_objective << "; seeds " << r.seeds.front() << ".."
                     << r.seeds.back() << " (consecutive); "
                     << r.candidates_evaluated << " certificates evaluated]";
                  note += os.str();
                  return false;
              });

    criterion(9, "dilation probe: permutation squares rigid, uniform square dilates",
              [](std::string& note) {
                  Graph c4 = cycle(4);
                  auto autos = c4_automorphisms();
                  double worst = 0.0;
                  for (int k = 0; k < 5; ++k) {
                      BlockMatrix sq = from_permutation(autos[k], 2);
                      DilationProbeResult r = arveson_dilation_probe(sq, &c4, 20, 600 + k);
                      worst = std::max(worst, r.max_beta_norm);
                      if (r.max_beta_norm > 1e-6) return false;
                  }
                  BlockMatrix uni(4, 2);
                  for (auto& b : uni.blocks) b = 0.25 * ComplexMatrix::Identity(2, 2);
                  DilationProbeResult r = arveson_dilation_probe(uni, &c4, 5, 606);
                  if (r.max_beta_norm < 1e-2) return false;
                  if (!verify_magic(r.dilated, 1e-7).overall) return false;
                  if (!graph_commutes(r.dilated, c4, 1e-7).commutes) return false;
                  std::ostringstream os;
                  os << " (rigid max " << worst << ", dilation norm " << r.max_beta_norm
                     << ")";
                  note += os.str();
                  return true;
              });

    criterion(10, "two-triangle union: parametrization internally consistent",
              [](std::string& note) {
                  Graph g = parse_graph_spec("union:cycle:3+cycle:3");
                  AffineBlockParametrization aff = gqms_affine(g, 1);
                  const int measured = static_cast<int>(aff.independent_indices.size());
                  std::ostringstream os;
                  os << " (measured " << measured
                     << " parameters vs predicted d-N = 18)";
                  note += os.str();

                  std::mt19937_64 rng(31337);
                  const int q = measured;
                  for (int t = 0; t < 30; ++t) {
                      // sample the affine space directly
                      BlockMatrix x(6, 1);
                      std::vector<ComplexMatrix> yp;
                      std::normal_distribution<double> gd;
                      for (int p = 0; p < q; ++p) {
                          ComplexMatrix v(1, 1);
                          v(0, 0) = 0.2 * gd(rng);
                          yp.push_back(v);
                      }
                      for (int kl = 0; kl < 36; ++kl) {
                          ComplexMatrix blk = (1.0 / 6) * ComplexMatrix::Identity(1, 1);
                          for (int p = 0; p < q; ++p) blk += aff.d(kl, p) * yp[p];
                          x.blocks[kl] = blk;
                      }
                      MagicReport mr = verify_magic(x, 1e-10);
                      double rowcol = 0.0;
                      for (double r : mr.row_residuals) rowcol = std::max(rowcol, r);
                      for (double r : mr.col_residuals) rowcol = std::max(rowcol, r);
                      if (rowcol > 1e-10) return false;
                      if (graph_commutes(x, g, 1e-10).residual > 1e-10) return false;
                  }

                  // averaged valid samples land inside the parametrized space:
                  // twirl over independent rotations of the two triangles
                  std::vector<std::vector<int>> rotations;
                  for (int r1 = 0; r1 < 3; ++r1)
                      for (int r2 = 0; r2 < 3; ++r2) {
                          std::vector<int> perm(6);
                          for (int v = 0; v < 3; ++v) perm[v] = (v + r1) % 3;
                          for (int v = 0; v < 3; ++v) perm[3 + v] = 3 + (v + r2) % 3;
                          rotations.push_back(perm);
                      }
                  for (int t = 0; t < 20; ++t) {
                      BlockMatrix avg =
                          group_average(random_qms(6, 1, 40000 + t), rotations);
                      MembershipResult m = membership_test(avg, &g);
                      if (!m.affine_consistent || !m.direct || !m.pencil) return false;
                  }
                  return true;
              });

    criterion(11, "sdp engine: analytic optima, weak duality, determinism",
              [](std::string&) {
                  SdpProblem p1;
                  p1.C = RealMatrix::Zero(2, 2);
                  p1.C(0, 0) = 1;
                  p1.C(1, 1) = -1;
                  p1.A = {RealMatrix::Identity(2, 2)};
                  p1.b = RealVector::Constant(1, 1.0);
                  SdpSolution s1 = solve(p1);
                  if (s1.status != SdpStatus::Optimal || std::abs(s1.objective + 1.0) > 1e-7)
                      return false;

                  SdpProblem p2;
                  p2.C = RealMatrix::Identity(3, 3);
                  p2.A = {RealMatrix::Identity(3, 3), RealMatrix::Identity(3, 3)};
                  p2.b = RealVector(2);
                  p2.b << 1.0, 2.0;
                  if (solve(p2).status != SdpStatus::Infeasible) return false;

                  LmiProblem ball;
                  ball.F0 = RealMatrix::Identity(2, 2);
                  RealMatrix fx = RealMatrix::Zero(2, 2), fy = RealMatrix::Zero(2, 2);
                  fx(0, 0) = 1;
                  fx(1, 1) = -1;
                  fy(0, 1) = fy(1, 0) = 1;
                  ball.F = {fx, fy};
                  ball.c = RealVector::Constant(2, 1.0);
                  LmiSolution ls = solve_lmi(ball);
                  if (ls.status != SdpStatus::Optimal ||
                      std::abs(ls.objective - std::sqrt(2.0)) > 1e-6)
                      return false;

                  std::mt19937_64 rng(2024);
                  for (int t = 0; t < 20; ++t) {
                      const int n = 5;
                      SdpProblem p;
                      RealMatrix cm = random_herm(n, rng).real();
                      p.C = 0.5 * (cm + cm.transpose());
                      RealMatrix gm = random_herm(n, rng).real();
                      RealMatrix y0 = gm * gm.transpose() + RealMatrix::Identity(n, n);
                      RealMatrix a1 = random_herm(n, rng).real();
                      a1 = 0.5 * (a1 + a1.transpose());
                      p.A = {RealMatrix::Identity(n, n), a1};
                      p.b = RealVector(2);
                      for (int i = 0; i < 2; ++i)
                          p.b(i) = (p.A[i].array() * y0.array()).sum();
                      SdpSolution a = solve(p);
                      SdpSolution b = solve(p);
                      if (a.status != SdpStatus::Optimal) return false;
                      if ((a.Y - b.Y).norm() != 0.0 || a.objective != b.objective)
                          return false;
                      if (a.objective < a.dual_objective -
                                            1e-6 * (1.0 + std::abs(a.objective)))
                          return false;
                  }
                  return true;
              });

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures;
}
