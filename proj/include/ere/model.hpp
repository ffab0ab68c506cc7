#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace ere {

/// Spin-1/2 chain Hamiltonians with periodic boundary conditions.
///
///   TransverseIsing:  H = -sum_i [ sx_i sx_{i+1} + g sz_i ]
///   XY:               H = -sum_i [ (1+gamma) sx_i sx_{i+1} + (1-gamma) sy_i sy_{i+1} + h sz_i ]
///   XXZ:              H =  sum_i [ sx_i sx_{i+1} + sy_i sy_{i+1} + delta sz_i sz_{i+1} ]
///
/// Sites are bits of the basis index; bit value 0 is sz = +1 ("up").
enum class Family { TransverseIsing, XY, XXZ };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

inline constexpr int kMinSites = 3;
inline constexpr int kMaxSites = 22;

class ModelSpec {
 public:
  ModelSpec(Family family, std::map<std::string, double> params, int n_sites);

  static ModelSpec transverse_ising(double g, int n_sites);
  static ModelSpec xy(double gamma, double h, int n_sites);
  static ModelSpec xxz(double delta, int n_sites);

  Family family() const noexcept { return family_; }
  int n_sites() const noexcept { return n_sites_; }
  std::uint64_t dimension() const noexcept { return std::uint64_t{1} << n_sites_; }
  const std::map<std::string, double>& params() const noexcept { return params_; }
  double param(std::string_view key) const;

  ModelSpec with_param(std::string_view key, double value) const;
  ModelSpec with_sites(int n_sites) const;

  /// Flat key/value record: "family", "n_sites", "boundary" and one entry per parameter.
  std::map<std::string, std::string> to_record() const;
  static ModelSpec from_record(const std::map<std::string, std::string>& record);

  /// Parameter keys a family requires, in canonical order.
  static std::vector<std::string> parameter_keys(Family family);

  bool operator==(const ModelSpec&) const = default;

 private:
  Family family_;
  std::map<std::string, double> params_;
  int n_sites_;
};

struct BasisIndex {
  std::uint64_t value = 0;
  bool operator==(const BasisIndex&) const = default;
};

struct MatrixEntry {
  BasisIndex index;
  double amplitude = 0.0;
};

/// Coefficients of one family in the form used by every kernel:
///   diagonal(b) = field * sum_i s_i + zz * sum_i s_i s_{i+1}
///   off-diagonal on bond (i, i+1): coef_aligned if bits equal, coef_anti otherwise,
///   connecting b to b with both bits flipped.
struct BondCoefficients {
  double field = 0.0;
  double zz = 0.0;
  double coef_aligned = 0.0;
  double coef_anti = 0.0;
};

BondCoefficients bond_coefficients(const ModelSpec& spec);

/// Nonzero entries of column b of H: the diagonal first (if nonzero), then one flip per bond.
std::vector<MatrixEntry> hamiltonian_element_action(const ModelSpec& spec, BasisIndex b);

/// Precomputed matrix-free operator. Immutable after construction; apply() is re-entrant.
class HamiltonianOperator {
 public:
  explicit HamiltonianOperator(const ModelSpec& spec);

  const ModelSpec& spec() const noexcept { return spec_; }
  std::uint64_t dimension() const noexcept { return diag_.size(); }
  std::span<const double> diagonal() const noexcept { return diag_; }
  std::span<const std::uint64_t> bond_masks() const noexcept { return masks_; }

  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  ModelSpec spec_;
  BondCoefficients coef_;
  std::vector<double> diag_;
  std::vector<std::uint64_t> masks_;
  std::vector<int> site_i_;
  std::vector<int> site_j_;
};

std::vector<double> apply_hamiltonian(const ModelSpec& spec, std::span<const double> v);

inline constexpr std::uint64_t kDefaultDenseCap = 4096;

/// Dense H; throws CapacityError above dense_cap.
Eigen::MatrixXd build_dense_hamiltonian(const ModelSpec& spec,
                                        std::uint64_t dense_cap = kDefaultDenseCap);

/// (-1)^popcount(b): eigenvalue of the global parity prod_i sz_i on basis state b.
inline int basis_parity(std::uint64_t b) noexcept {
  return (__builtin_popcountll(b) & 1) ? -1 : 1;
}

}  // namespace ere
