#include "qfilter/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfilter {

namespace {

using Matrix4 = std::array<std::array<Amplitude, 4>, 4>;

constexpr double kJacobiTolerance = 1e-13;
constexpr int kMaxJacobiSweeps = 64;

double off_diagonal_mass(const Matrix4& a) {
  double mass = 0.0;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      if (p != q) mass += std::norm(a[p][q]);
    }
  }
  return mass;
}

double frobenius_norm(const Matrix4& a) {
  double total = 0.0;
  for (const auto& row : a) {
    for (const auto& entry : row) total += std::norm(entry);
  }
  return std::sqrt(total);
}

// One complex Jacobi rotation annihilating a[p][q]; accumulates the
// rotation into v when given.
void jacobi_rotate(Matrix4& a, int p, int q, Matrix4* v) {
  const Amplitude apq = a[p][q];
  const double magnitude = std::abs(apq);
  if (magnitude == 0.0) return;
  const Amplitude phase = apq / magnitude;
  const double app = a[p][p].real();
  const double aqq = a[q][q].real();
  const double tau = (app - aqq) / (2.0 * magnitude);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const Amplitude s = t * c * phase;

  for (int k = 0; k < 4; ++k) {
    const Amplitude akp = a[k][p];
    const Amplitude akq = a[k][q];
    a[k][p] = c * akp + std::conj(s) * akq;
    a[k][q] = -s * akp + c * akq;
  }
  for (int k = 0; k < 4; ++k) {
    const Amplitude apk = a[p][k];
    const Amplitude aqk = a[q][k];
    a[p][k] = c * apk + s * aqk;
    a[q][k] = -std::conj(s) * apk + c * aqk;
  }
  a[p][q] = Amplitude(0.0, 0.0);
  a[q][p] = Amplitude(0.0, 0.0);
  a[p][p] = Amplitude(a[p][p].real(), 0.0);
  a[q][q] = Amplitude(a[q][q].real(), 0.0);
  if (v) {
    for (int k = 0; k < 4; ++k) {
      const Amplitude vkp = (*v)[k][p];
      const Amplitude vkq = (*v)[k][q];
      (*v)[k][p] = c * vkp + std::conj(s) * vkq;
      (*v)[k][q] = -s * vkp + c * vkq;
    }
  }
}

void check_hermitian(const Matrix4& a) {
  for (int p = 0; p < 4; ++p) {
    for (int q = p; q < 4; ++q) {
      if (std::abs(a[p][q] - std::conj(a[q][p])) > 1e-12) {
        throw std::invalid_argument("matrix is not Hermitian");
      }
    }
  }
}

// Eigen-decomposition A = V diag(d) V+; returns eigenvalues unsorted,
// columns of V aligned with them.
std::array<double, 4> jacobi_eigensystem(Matrix4 a, Matrix4* v) {
  if (v) {
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        (*v)[p][q] = Amplitude(p == q ? 1.0 : 0.0, 0.0);
      }
    }
  }
  const double scale = std::max(1.0, frobenius_norm(a));
  const double threshold = kJacobiTolerance * scale;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (std::sqrt(off_diagonal_mass(a)) <= threshold) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        jacobi_rotate(a, p, q, v);
      }
    }
  }
  if (std::sqrt(off_diagonal_mass(a)) > threshold) {
    throw std::runtime_error("Jacobi iteration failed to converge");
  }
  return {a[0][0].real(), a[1][1].real(), a[2][2].real(), a[3][3].real()};
}

Matrix4 multiply(const Matrix4& a, const Matrix4& b) {
  Matrix4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      const Amplitude aik = a[i][k];
      if (aik == Amplitude(0.0, 0.0)) continue;
      for (int j = 0; j < 4; ++j) {
        out[i][j] += aik * b[k][j];
      }
    }
  }
  return out;
}

// sigma_y (x) sigma_y: the spin-flip map is rho~ = Y conj(rho) Y.
constexpr std::array<std::array<double, 4>, 4> kSpinFlip = {{
    {0.0, 0.0, 0.0, -1.0},
    {0.0, 0.0, 1.0, 0.0},
    {0.0, 1.0, 0.0, 0.0},
    {-1.0, 0.0, 0.0, 0.0},
}};

Matrix4 spin_flipped(const Matrix4& rho) {
  Matrix4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Amplitude sum(0.0, 0.0);
      for (int k = 0; k < 4; ++k) {
        if (kSpinFlip[i][k] == 0.0) continue;
        for (int l = 0; l < 4; ++l) {
          if (kSpinFlip[l][j] == 0.0) continue;
          sum += kSpinFlip[i][k] * std::conj(rho[k][l]) * kSpinFlip[l][j];
        }
      }
      out[i][j] = sum;
    }
  }
  return out;
}

}  // namespace

double TwoQubitDensity::trace() const {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) total += entries[i][i].real();
  return total;
}

void TwoQubitDensity::validate() const {
  check_hermitian(entries);
  const auto eigenvalues = hermitian_eigenvalues(entries);
  for (double value : eigenvalues) {
    if (value < -1e-10) {
      throw std::invalid_argument("density matrix is not positive semidefinite");
    }
  }
}

PolarizationReduction reduce_to_polarization(const Ensemble& ensemble,
                                             const PathPair& paths) {
  const ModeRegistry& registry = ensemble.registry();
  const std::size_t p1h = registry.index_of(paths.path1_h);
  const std::size_t p1v = registry.index_of(paths.path1_v);
  const std::size_t p2h = registry.index_of(paths.path2_h);
  const std::size_t p2v = registry.index_of(paths.path2_v);

  std::array<OccupationVector, 4> basis;
  for (std::size_t b = 0; b < 4; ++b) {
    OccupationVector occupation(registry.size(), 0);
    occupation[b < 2 ? p1h : p1v] = 1;
    occupation[(b % 2) == 0 ? p2h : p2v] = 1;
    basis[b] = std::move(occupation);
  }

  PolarizationReduction result;
  for (const auto& branch : ensemble.branches()) {
    std::array<Amplitude, 4> overlap{};
    double inside = 0.0;
    for (std::size_t b = 0; b < 4; ++b) {
      overlap[b] = branch.state.amplitude(basis[b]);
      inside += std::norm(overlap[b]);
    }
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        result.rho.entries[i][j] +=
            branch.weight * overlap[i] * std::conj(overlap[j]);
      }
    }
    result.leakage += branch.weight * std::max(0.0, 1.0 - inside);
  }
  return result;
}

double concurrence(const TwoQubitDensity& rho) {
  check_hermitian(rho.entries);
  if (std::abs(rho.trace() - 1.0) > 1e-6) {
    throw std::invalid_argument("concurrence requires a normalized density");
  }

  // sqrt(rho) via eigen-decomposition.
  Matrix4 vectors;
  Matrix4 a = rho.entries;
  const auto eigenvalues = jacobi_eigensystem(a, &vectors);
  Matrix4 sqrt_rho{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Amplitude sum(0.0, 0.0);
      for (int k = 0; k < 4; ++k) {
        const double value = std::sqrt(std::max(0.0, eigenvalues[k]));
        sum += vectors[i][k] * value * std::conj(vectors[j][k]);
      }
      sqrt_rho[i][j] = sum;
    }
  }

  // Eigenvalues of sqrt(rho) rho~ sqrt(rho) are those of rho rho~, but the
  // sandwiched product is Hermitian, so the Jacobi solver applies.
  const Matrix4 sandwich =
      multiply(multiply(sqrt_rho, spin_flipped(rho.entries)), sqrt_rho);
  auto lambdas = jacobi_eigensystem(sandwich, nullptr);

  // Eigenvalues below the numerical rank of the product are round-off; the
  // square root would otherwise blow O(eps) residue up to O(sqrt(eps)).
  double lambda_max = 0.0;
  for (double value : lambdas) lambda_max = std::max(lambda_max, value);
  const double rank_floor = 1e-13 * lambda_max;
  std::array<double, 4> roots;
  for (int i = 0; i < 4; ++i) {
    roots[i] = lambdas[i] > rank_floor ? std::sqrt(lambdas[i]) : 0.0;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double fidelity_to_pure(const TwoQubitDensity& rho,
                        const std::array<Amplitude, 4>& target) {
  double target_norm = 0.0;
  for (const auto& amplitude : target) target_norm += std::norm(amplitude);
  if (std::abs(target_norm - 1.0) > 1e-9) {
    throw std::invalid_argument("target state must be normalized");
  }
  Amplitude value(0.0, 0.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      value += std::conj(target[i]) * rho.entries[i][j] * target[j];
    }
  }
  return value.real();
}

std::array<double, 4> hermitian_eigenvalues(
    const std::array<std::array<Amplitude, 4>, 4>& matrix) {
  check_hermitian(matrix);
  auto values = jacobi_eigensystem(matrix, nullptr);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

}  // namespace qfilter
