#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "exsym/channel.hpp"
#include "exsym/linalg.hpp"

namespace exsym {

/// omega = sqrt(1 - gamma^2), alpha = gamma - 1, beta = gamma + 1.
struct KrausFactors {
  double gamma;
  double omega;
  double alpha;
  double beta;

  static KrausFactors from_gamma(double gamma);
};

/// One operator-sum representation. Completeness is not enforced at
/// construction; operations that need it check completeness_residual().
struct KrausSet {
  std::vector<Matrix4> operators;
  std::string label;
  std::optional<double> gamma;
};

inline constexpr double kCompletenessTol = 1e-10;

/// max |(sum_mu K_mu^dagger K_mu - I)_ij|.
double completeness_residual(const KrausSet& set);

/// The four diagonal operators of the identical-rate dephasing channel.
/// Throws std::invalid_argument for gamma outside [0, 1].
KrausSet canonical_kraus(double gamma);

/// sum_mu K rho K^dagger. Throws std::invalid_argument when the set is
/// incomplete beyond `tol`.
DensityMatrix apply_kraus(const KrausSet& set, const DensityMatrix& rho,
                          double tol = kCompletenessTol);

/// Unitary 4x4 matrix mixing a four-element Kraus set.
class UnitaryMixer {
 public:
  static constexpr double kUnitaryTol = 1e-10;

  explicit UnitaryMixer(const Matrix4& u, double tol = kUnitaryTol);
  static UnitaryMixer identity() { return UnitaryMixer(Matrix4::Identity()); }

  const Matrix4& matrix() const { return u_; }
  Complex operator()(int row, int col) const { return u_(row, col); }

 private:
  Matrix4 u_;
};

/// E_mu = sum_j u_{mu j} K_j. Requires exactly four operators.
KrausSet mix_kraus(const KrausSet& set, const UnitaryMixer& mixer);

/// Diagonal of the mixed operator E_mu (0-based row) built directly from the
/// canonical factors, without forming K_1..K_4.
std::array<Complex, 4> mixed_kraus_diagonal(const KrausFactors& f, const UnitaryMixer& mixer,
                                            int mu);

/// C = sum_ij |i><j| (x) Phi(|i><j|); index (4 i + a, 4 j + b).
struct ChoiMatrix {
  Matrix16 mat;
};

ChoiMatrix choi_of_channel(const ChannelParams& params);
ChoiMatrix choi_of_factors(DephasingFactors f);
ChoiMatrix choi_of_kraus(const KrausSet& set);

inline constexpr double kKrausRankCutoff = 1e-12;
inline constexpr double kChoiNegativityTol = 1e-9;

/// Spectral Kraus extraction: K_{a i} = sqrt(lambda) v_{4 i + a}, i.e. the
/// eigenvector is reshaped column-index-major. Eigenvalues below 1e-12 are
/// dropped. Throws NumericalError when an eigenvalue is below -1e-9.
KrausSet kraus_from_choi(const ChoiMatrix& c);

/// True iff the Choi matrices of the two maps agree entrywise within tol.
bool channels_equal(const KrausSet& a, const KrausSet& b, double tol);

}  // namespace exsym
