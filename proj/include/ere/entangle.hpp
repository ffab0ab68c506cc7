#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace ere {

/// Contiguous bipartition: block A holds sites [0, block_a_size).
class Partition {
 public:
  Partition(int n_sites, int block_a_size);
  /// N/2 : N/2 split; N must be even.
  static Partition equal(int n_sites);

  int n_sites() const noexcept { return n_sites_; }
  int block_a_size() const noexcept { return block_a_; }
  int block_b_size() const noexcept { return n_sites_ - block_a_; }
  int min_block() const noexcept { return block_a_ < n_sites_ - block_a_ ? block_a_ : n_sites_ - block_a_; }
  /// Block sizes swapped. For a translation-invariant state this describes
  /// rho_B; in general rotate the sites first (see the Schmidt tests).
  Partition complement() const { return Partition(n_sites_, n_sites_ - block_a_); }

 private:
  int n_sites_;
  int block_a_;
};

inline constexpr double kSpectrumFloor = 1e-12;

/// Eigenvalues of a reduced density matrix, descending, entries below
/// kSpectrumFloor dropped.
class EntanglementSpectrum {
 public:
  EntanglementSpectrum() = default;
  /// Validates (non-negative, sum 1 within 1e-10), floors and sorts.
  static EntanglementSpectrum from_probs(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double max() const noexcept { return probs_.empty() ? 0.0 : probs_.front(); }

 private:
  explicit EntanglementSpectrum(std::vector<double> p) : probs_(std::move(p)) {}
  friend EntanglementSpectrum reduced_spectrum(std::span<const double>, const Partition&);
  std::vector<double> probs_;
};

/// Squared singular values of the amplitude matrix M(a, b) = psi[a + 2^|A| * b].
EntanglementSpectrum reduced_spectrum(std::span<const double> state, const Partition& part);

/// S_alpha in bits; the von Neumann entropy when |alpha - 1| <= 1e-9.
double renyi_entropy(const EntanglementSpectrum& spec, double alpha);

struct RenyiCurve {
  std::vector<double> alphas;
  std::vector<double> values;
};

RenyiCurve renyi_curve(const EntanglementSpectrum& spec, std::span<const double> alphas);

/// Points k*step (k integer) inside [lo, hi] together with both endpoints.
/// Anchoring at multiples of step keeps grids nested when windows grow or the
/// step is halved.
std::vector<double> alpha_grid(double lo, double hi, double step);

/// True iff psi is majorized by phi: psi -> phi is possible by deterministic LOCC.
bool majorizes(const EntanglementSpectrum& psi, const EntanglementSpectrum& phi);

enum class Dominance { FirstGeqEverywhere, SecondGeqEverywhere, Crossing, Identical };

std::string_view dominance_name(Dominance d);

inline constexpr double kEntropyEqualTol = 1e-10;

/// Sign pattern of S_alpha(first) - S_alpha(second) over the grid.
/// FirstGeqEverywhere is necessary for first -> second by (catalytic) LOCC.
Dominance renyi_dominance(const EntanglementSpectrum& first, const EntanglementSpectrum& second,
                          std::span<const double> alphas);
Dominance renyi_dominance(const RenyiCurve& first, const RenyiCurve& second);

}  // namespace ere
