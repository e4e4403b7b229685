#include "exsym/kraus.hpp"

#include <cmath>
#include <stdexcept>

namespace exsym {

namespace {

Matrix4 diag4(Complex a, Complex b, Complex c, Complex d) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

Matrix4 basis_op(int i, int j) {
  Matrix4 m = Matrix4::Zero();
  m(i, j) = 1.0;
  return m;
}

template <typename Map>
ChoiMatrix choi_of_map(Map&& phi) {
  ChoiMatrix c{Matrix16::Zero()};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      c.mat.block<4, 4>(4 * i, 4 * j) = phi(basis_op(i, j));
    }
  }
  return c;
}

}  // namespace

KrausFactors KrausFactors::from_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  return {gamma, std::sqrt(1.0 - gamma * gamma), gamma - 1.0, gamma + 1.0};
}

double completeness_residual(const KrausSet& set) {
  Matrix4 sum = Matrix4::Zero();
  for (const auto& k : set.operators) sum += k.adjoint() * k;
  return max_abs_diff<4>(sum, Matrix4::Identity());
}

KrausSet canonical_kraus(double gamma) {
  const auto f = KrausFactors::from_gamma(gamma);
  const double w = f.omega / std::sqrt(2.0);
  const double a = f.alpha / 2.0;
  const double b = f.beta / 2.0;
  KrausSet set;
  set.label = "canonical";
  set.gamma = gamma;
  set.operators = {
      diag4(-w, 0.0, 0.0, w),
      diag4(0.0, -w, w, 0.0),
      diag4(a, -a, -a, a),
      diag4(b, b, b, b),
  };
  return set;
}

DensityMatrix apply_kraus(const KrausSet& set, const DensityMatrix& rho, double tol) {
  if (set.operators.empty()) throw std::invalid_argument("apply_kraus: empty Kraus set");
  if (completeness_residual(set) > tol) {
    throw std::invalid_argument("apply_kraus: Kraus set violates completeness");
  }
  Matrix4 out = Matrix4::Zero();
  for (const auto& k : set.operators) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(out);
}

UnitaryMixer::UnitaryMixer(const Matrix4& u, double tol) : u_(u) {
  if (!is_unitary<4>(u, tol)) throw std::invalid_argument("mixer is not unitary");
}

KrausSet mix_kraus(const KrausSet& set, const UnitaryMixer& mixer) {
  if (set.operators.size() != 4) {
    throw std::invalid_argument("mix_kraus requires exactly four Kraus operators");
  }
  KrausSet out;
  out.label = "mixed";
  out.gamma = set.gamma;
  out.operators.assign(4, Matrix4::Zero());
  for (int mu = 0; mu < 4; ++mu)
    for (int j = 0; j < 4; ++j) out.operators[mu] += mixer(mu, j) * set.operators[j];
  return out;
}

std::array<Complex, 4> mixed_kraus_diagonal(const KrausFactors& f, const UnitaryMixer& mixer,
                                            int mu) {
  const double s2 = std::sqrt(2.0);
  const Complex u1 = mixer(mu, 0), u2 = mixer(mu, 1), u3 = mixer(mu, 2), u4 = mixer(mu, 3);
  const Complex wide = f.beta * u4 / 2.0;
  return {
      -f.omega * u1 / s2 + f.alpha * u3 / 2.0 + wide,
      -f.omega * u2 / s2 - f.alpha * u3 / 2.0 + wide,
      f.omega * u2 / s2 - f.alpha * u3 / 2.0 + wide,
      f.omega * u1 / s2 + f.alpha * u3 / 2.0 + wide,
  };
}

ChoiMatrix choi_of_factors(DephasingFactors f) {
  return choi_of_map([&](const Matrix4& m) { return dephase_operator(m, f); });
}

ChoiMatrix choi_of_channel(const ChannelParams& params) {
  return choi_of_factors(dephasing_factors(params));
}

ChoiMatrix choi_of_kraus(const KrausSet& set) {
  return choi_of_map([&](const Matrix4& m) {
    Matrix4 out = Matrix4::Zero();
    for (const auto& k : set.operators) out += k * m * k.adjoint();
    return out;
  });
}

KrausSet kraus_from_choi(const ChoiMatrix& c) {
  auto eig = hermitian_eig<16>(c.mat);
  if (eig.values.back() < -kChoiNegativityTol) {
    throw NumericalError("Choi matrix has eigenvalue " + std::to_string(eig.values.back()) +
                         "; map is not completely positive");
  }
  KrausSet set;
  set.label = "choi-extracted";
  for (int k = 0; k < 16; ++k) {
    if (eig.values[k] < kKrausRankCutoff) continue;
    const double scale = std::sqrt(eig.values[k]);
    Matrix4 op;
    for (int i = 0; i < 4; ++i)
      for (int a = 0; a < 4; ++a) op(a, i) = scale * eig.vectors(4 * i + a, k);
    set.operators.push_back(op);
  }
  return set;
}

bool channels_equal(const KrausSet& a, const KrausSet& b, double tol) {
  return approx_equal<16>(choi_of_kraus(a).mat, choi_of_kraus(b).mat, tol);
}

}  // namespace exsym
