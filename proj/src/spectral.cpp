#include "orthoplate/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <fmt/format.h>

#include "orthoplate/hermite.hpp"

namespace orthoplate {

using Complex = std::complex<double>;

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussN = 8;
constexpr double kGaussX[kGaussN] = {-0.960289856497536232, -0.796666477413626740,
                                     -0.525532409916328986, -0.183434642495649805,
                                     0.183434642495649805,  0.525532409916328986,
                                     0.796666477413626740,  0.960289856497536232};
constexpr double kGaussW[kGaussN] = {0.101228536290376259, 0.222381034453374471,
                                     0.313706645877887287, 0.362683783378361983,
                                     0.362683783378361983, 0.313706645877887287,
                                     0.222381034453374471, 0.101228536290376259};

// Composite Gauss quadrature of fn over [a, b] with npan equal panels.
template <typename Fn>
double integrate_panels(double a, double b, int npan, Fn&& fn) {
  const double h = (b - a) / npan;
  double acc = 0;
  for (int p = 0; p < npan; ++p) {
    const double mid = a + (p + 0.5) * h;
    double panel = 0;
    for (int q = 0; q < kGaussN; ++q) panel += kGaussW[q] * fn(mid + 0.5 * h * kGaussX[q]);
    acc += 0.5 * h * panel;
  }
  return acc;
}

// Fundamental even/odd solutions of Y'''' = s^2-type ladders: the entire functions
// C(s, y) = cosh(sqrt(s) y) and S(s, y) = sinh(sqrt(s) y)/sqrt(s).  Both are entire
// in s, which lets one expression cover the oscillatory, exponential, and mixed
// root regimes.  Series branches keep small |s y^2| accurate.
Complex entire_C(Complex s, double y) {
  const Complex t = std::sqrt(s);
  if (std::abs(t) * std::abs(y) < 0.1) {
    const Complex w = s * y * y;
    return 1.0 + w / 2.0 + w * w / 24.0 + w * w * w / 720.0 + w * w * w * w / 40320.0;
  }
  return std::cosh(t * y);
}

Complex entire_S(Complex s, double y) {
  const Complex t = std::sqrt(s);
  if (std::abs(t) * std::abs(y) < 0.1) {
    const Complex w = s * y * y;
    return y * (1.0 + w / 6.0 + w * w / 120.0 + w * w * w / 5040.0 + w * w * w * w / 362880.0);
  }
  return std::sinh(t * y) / t;
}

// Scaled variants: multiplied by exp(-Re sqrt(s) * ell) so that values stay
// bounded by ~1 on |y| <= ell for arbitrarily large roots.
Complex scaled_C(Complex s, double y, double ell) {
  const Complex t = std::sqrt(s);
  const double tr = t.real();
  if (std::abs(t) * std::abs(y) < 0.1) return entire_C(s, y) * std::exp(-tr * ell);
  return 0.5 * (std::exp(t * y - tr * ell) + std::exp(-t * y - tr * ell));
}

Complex scaled_S(Complex s, double y, double ell) {
  const Complex t = std::sqrt(s);
  const double tr = t.real();
  if (std::abs(t) * std::abs(y) < 0.1) return entire_S(s, y) * std::exp(-tr * ell);
  return (std::exp(t * y - tr * ell) - std::exp(-t * y - tr * ell)) / (2.0 * t);
}

// k-th y-derivative of the scaled parity basis function (Even base C, Odd base S).
// The ladders C' = s S, S' = C give pure multiplications by powers of s.
Complex scaled_basis(Complex s, double y, double ell, int k, Parity parity) {
  const bool base_c = (parity == Parity::Even) == (k % 2 == 0);
  const Complex val = base_c ? scaled_C(s, y, ell) : scaled_S(s, y, ell);
  // Power of s in front: Even ladder (C, sS, sC, s^2 S, s^2 C), Odd (S, C, sS, sC, s^2 S).
  const int half = (parity == Parity::Even) ? (k + 1) / 2 : k / 2;
  Complex p = 1.0;
  for (int i = 0; i < half; ++i) p *= s;
  return p * val;
}

// Free-edge boundary operators applied to the scaled parity basis at y = ell:
// P = Y'' - nu mu^2 Y, Q = Y''' - (2 - nu) mu^2 Y'.
Complex edge_P(const ModeProblem& mode, Parity parity, Complex s) {
  const double numu2 = mode.nu * mode.mu * mode.mu;
  if (parity == Parity::Even) return (s - numu2) * scaled_C(s, mode.ell, mode.ell);
  return (s - numu2) * scaled_S(s, mode.ell, mode.ell);
}

Complex edge_Q(const ModeProblem& mode, Parity parity, Complex s) {
  const double c = (2.0 - mode.nu) * mode.mu * mode.mu;
  if (parity == Parity::Even) return s * (s - c) * scaled_S(s, mode.ell, mode.ell);
  return (s - c) * scaled_C(s, mode.ell, mode.ell);
}

}  // namespace

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

ModeProblem ModeProblem::reduce(const PlateModel& model, int m) {
  if (m < 1) throw ValidationError(fmt::format("x-mode index must be >= 1, got {}", m));
  ModeProblem mp;
  mp.m = m;
  mp.L = model.geometry.L;
  mp.mu = m * M_PI / model.geometry.L;
  mp.R = model.R;
  mp.kappa = model.material.kappa;
  mp.nu = model.material.nu;
  mp.ell = model.geometry.ell;
  mp.M = model.M;
  return mp;
}

CharacteristicRoots characteristic_structure(const ModeProblem& mode, double lambda) {
  const double mu2 = mode.mu * mode.mu;
  const double mu4 = mu2 * mu2;
  const double disc = lambda / mode.R - mode.kappa * mu4;
  CharacteristicRoots r;
  const Complex w = std::sqrt(Complex(disc, 0.0));
  r.s1 = mu2 + w;
  r.s2 = mu2 - w;
  const double scale = std::max({std::abs(disc), mu4, 1e-300});
  if (std::abs(disc) <= 1e-12 * scale) {
    r.regime = RootRegime::DegenerateLower;
    r.degenerate = true;
  } else if (std::abs(lambda / mode.R - (1.0 + mode.kappa) * mu4) <=
             1e-12 * std::max(lambda / mode.R, (1.0 + mode.kappa) * mu4)) {
    r.regime = RootRegime::DegenerateUpper;
    r.degenerate = true;
  } else if (disc < 0) {
    r.regime = RootRegime::ComplexPair;
  } else if (lambda / mode.R < (1.0 + mode.kappa) * mu4) {
    r.regime = RootRegime::TwoPositive;
  } else {
    r.regime = RootRegime::MixedSign;
  }
  return r;
}

double mode_determinant(const ModeProblem& mode, Parity parity, double lambda) {
  if (!(lambda > 0)) {
    // The determinant is still well defined at lambda <= 0; allow evaluation for
    // diagnostics (no eigenvalues live there).
  }
  const double mu2 = mode.mu * mode.mu;
  const CharacteristicRoots roots = characteristic_structure(mode, lambda);
  const Complex s1 = roots.s1, s2 = roots.s2;
  if (std::abs(s1 - s2) > 1e-8 * std::max(mu2, std::abs(s1))) {
    const Complex g = (edge_P(mode, parity, s1) * edge_Q(mode, parity, s2) -
                       edge_P(mode, parity, s2) * edge_Q(mode, parity, s1)) /
                      (s1 - s2);
    return g.real();
  }
  // Confluent limit: divided difference -> d/ds, via dC/ds = (y/2) S and
  // dS/ds = (y C - S)/(2s) at the double root s = mu^2 (unscaled basis; the
  // double root is always moderate so no overflow is possible here).
  const Complex s(mu2, 0.0);
  const double ell = mode.ell;
  const Complex C = entire_C(s, ell), S = entire_S(s, ell);
  const Complex dC = 0.5 * ell * S;
  const Complex dS = (ell * C - S) / (2.0 * s);
  const double numu2 = mode.nu * mu2;
  const double c = (2.0 - mode.nu) * mu2;
  Complex P, Q, dP, dQ;
  if (parity == Parity::Even) {
    P = (s - numu2) * C;
    dP = C + (s - numu2) * dC;
    Q = s * (s - c) * S;
    dQ = (2.0 * s - c) * S + s * (s - c) * dS;
  } else {
    P = (s - numu2) * S;
    dP = S + (s - numu2) * dS;
    Q = (s - c) * C;
    dQ = C + (s - c) * dC;
  }
  return (dP * Q - P * dQ).real();
}

ModeShape::ModeShape(Parity parity, double ell, Complex s1, Complex s2, Complex c1, Complex c2)
    : parity_(parity), ell_(ell), s1_(s1), s2_(s2), c1_(c1), c2_(c2) {}

double ModeShape::operator()(double y, int deriv) const {
  if (deriv < 0 || deriv > 4) {
    throw ValidationError(fmt::format("mode shapes carry derivatives 0..4, requested {}", deriv));
  }
  const Complex v = c1_ * scaled_basis(s1_, y, ell_, deriv, parity_) +
                    c2_ * scaled_basis(s2_, y, ell_, deriv, parity_);
  return v.real();
}

void ModeShape::scale(double factor) {
  c1_ *= factor;
  c2_ *= factor;
}

Eigen::VectorXd EigenPair::sample_y(const std::vector<double>& ys, int deriv) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(ys.size()));
  for (size_t i = 0; i < ys.size(); ++i) out[static_cast<Eigen::Index>(i)] = shape(ys[i], deriv);
  return out;
}

DisplacementField EigenPair::field(const Grid& grid) const {
  return synthesize_modal({this}, {1.0}, grid);
}

namespace {

// The positive-term rewriting of the per-mode energy quadratic form,
//   q(Y) = Int [ nu (Y'' - mu^2 Y)^2 + (1-nu)(Y'')^2 + 2(1-nu) mu^2 (Y')^2
//                + (1-nu) mu^4 Y^2 + kappa mu^4 Y^2 ],
// algebraically equal to Int [ (Y'')^2 - 2 nu mu^2 Y'' Y + 2(1-nu) mu^2 (Y')^2
// + (1+kappa) mu^4 Y^2 ] but free of cancellation, so small eigenvalues can be
// recovered accurately as R q(Y) / Int Y^2.
double positive_form_quotient(const std::function<double(double, int)>& Yfn, double a, double b,
                              int npan, const ModeProblem& mode) {
  const double mu2 = mode.mu * mode.mu;
  const double mu4 = mu2 * mu2;
  const double nu = mode.nu;
  double num = 0, den = 0;
  const double h = (b - a) / npan;
  for (int p = 0; p < npan; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int q = 0; q < kGaussN; ++q) {
      const double y = mid + 0.5 * h * kGaussX[q];
      const double w = 0.5 * h * kGaussW[q];
      const double Y = Yfn(y, 0), Y1 = Yfn(y, 1), Y2 = Yfn(y, 2);
      const double bend = Y2 - mu2 * Y;
      num += w * (nu * bend * bend + (1.0 - nu) * Y2 * Y2 + 2.0 * (1.0 - nu) * mu2 * Y1 * Y1 +
                  (1.0 - nu) * mu4 * Y * Y + mode.kappa * mu4 * Y * Y);
      den += w * Y * Y;
    }
  }
  return mode.R * num / den;
}

int shape_panel_count(const CharacteristicRoots& roots, double ell) {
  const double tmax = std::max(std::sqrt(std::abs(roots.s1)), std::sqrt(std::abs(roots.s2)));
  return std::max(64, static_cast<int>(std::ceil(3.0 * tmax * ell)));
}

// Builds the normalized eigenfunction for a converged root.
EigenPair make_pair(const ModeProblem& mode, Parity parity, double lambda) {
  const CharacteristicRoots roots = characteristic_structure(mode, lambda);
  const Complex s1 = roots.s1, s2 = roots.s2;
  if (std::abs(s1 - s2) <= 1e-8 * std::max(mode.mu * mode.mu, std::abs(s1))) {
    throw NumericalError(
        "eigenvalue sits on a characteristic-root degeneracy; eigenfunction construction "
        "would need the confluent basis");
  }
  const Complex P1 = edge_P(mode, parity, s1), P2 = edge_P(mode, parity, s2);
  const Complex Q1 = edge_Q(mode, parity, s1), Q2 = edge_Q(mode, parity, s2);
  // Null vector of [[P1, P2], [Q1, Q2]] from its better-conditioned row.
  Complex v1, v2;
  if (std::abs(P1) + std::abs(P2) >= std::abs(Q1) + std::abs(Q2)) {
    v1 = P2;
    v2 = -P1;
  } else {
    v1 = Q2;
    v2 = -Q1;
  }
  ModeShape shape(parity, mode.ell, s1, s2, v1, v2);
  // For a complex-conjugate pair the combination may come out (almost) purely
  // imaginary; rotating by i makes it real.  Decide by sampling.
  double max_re = 0, max_im = 0;
  for (int i = 0; i <= 8; ++i) {
    const double y = -mode.ell + 2.0 * mode.ell * i / 8.0;
    const Complex v = v1 * scaled_basis(s1, y, mode.ell, 0, parity) +
                      v2 * scaled_basis(s2, y, mode.ell, 0, parity);
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  if (max_im > max_re) {
    shape = ModeShape(parity, mode.ell, s1, s2, Complex(0, 1) * v1, Complex(0, 1) * v2);
  }
  // L^2(Omega) normalization: Int sin^2(mu x) dx = L/2, so Int Y^2 dy must be 2/L.
  const int npan = shape_panel_count(roots, mode.ell);
  const double norm2 =
      integrate_panels(-mode.ell, mode.ell, npan, [&](double y) { return shape(y) * shape(y); });
  if (!(norm2 > 0)) throw NumericalError("degenerate eigenfunction normalization");
  shape.scale(std::sqrt(2.0 / (mode.L * norm2)));
  // Sign convention Y(ell) > 0, falling back to the peak sample if Y(ell) ~ 0.
  double ref = shape(mode.ell);
  double peak = std::abs(ref);
  double peak_val = ref;
  for (int i = 0; i <= 32; ++i) {
    const double y = -mode.ell + 2.0 * mode.ell * i / 32.0;
    const double v = shape(y);
    if (std::abs(v) > peak) {
      peak = std::abs(v);
      peak_val = v;
    }
  }
  const double decider = (std::abs(ref) >= 1e-9 * peak) ? ref : peak_val;
  if (decider < 0) shape.scale(-1.0);

  EigenPair pair;
  pair.lambda = lambda;
  pair.m = mode.m;
  pair.parity = parity;
  pair.mu = mode.mu;
  pair.nu_hz = frequency_hz(lambda, mode.M, mode.ell);
  pair.omega = 2.0 * M_PI * pair.nu_hz;
  pair.shape = shape;
  const double lam_q = positive_form_quotient(
      [&](double y, int d) { return shape(y, d); }, -mode.ell, mode.ell, npan, mode);
  pair.rayleigh_residual = std::abs(lam_q - lambda) / lambda;
  return pair;
}

struct ScanResult {
  std::vector<double> roots;       // first k refined roots, ascending
  double next_bracket_low = 0;     // lower edge of the first unrefined bracket, or the ceiling
};

double refine_root(const ModeProblem& mode, Parity parity, double a, double b, double ga,
                   double gb) {
  for (int iter = 0; iter < 200 && (b - a) > 1e-12 * std::max(std::abs(a), std::abs(b)); ++iter) {
    double c = 0.5 * (a + b);
    // Secant proposal, accepted when it falls safely inside the bracket.
    if (gb != ga) {
      const double sec = b - gb * (b - a) / (gb - ga);
      const double margin = 0.01 * (b - a);
      if (sec > a + margin && sec < b - margin) c = sec;
    }
    const double gc = mode_determinant(mode, parity, c);
    if (gc == 0.0) return c;
    if ((ga < 0) != (gc < 0)) {
      b = c;
      gb = gc;
    } else {
      a = c;
      ga = gc;
    }
  }
  return 0.5 * (a + b);
}

ScanResult scan_mode(const ModeProblem& mode, Parity parity, int k) {
  if (k < 1) throw ValidationError(fmt::format("eigenvalue count must be >= 1, got {}", k));
  if (k > 12) {
    throw ValidationError(
        fmt::format("per-mode eigenvalue count is limited to 12, requested {}", k));
  }
  const double mu4 = std::pow(mode.mu, 4);
  const double lam_min = 1e-8 * mode.R * mu4;
  const std::vector<double> est = discretization_oracle(mode, parity, 120);
  if (static_cast<int>(est.size()) < k) {
    throw NumericalError("discretization oracle returned too few eigenvalue estimates");
  }
  const double ceiling = 10.0 * est[k - 1];

  std::vector<double> grid;
  for (double lam = lam_min; lam < ceiling; lam *= 1.05) grid.push_back(lam);
  grid.push_back(ceiling);
  // The two-positive-root band (kappa mu^4, (1+kappa) mu^4) in lambda/R can be
  // narrower than the geometric step; refine it explicitly.
  const double band_lo = mode.R * mode.kappa * mu4;
  const double band_hi = mode.R * (1.0 + mode.kappa) * mu4;
  if (band_lo < ceiling) {
    const double lo = band_lo * (1.0 + 1e-9);
    const double hi = std::min(band_hi * (1.0 - 1e-9), ceiling);
    const int nband = 48;
    for (int i = 0; i <= nband; ++i) {
      const double lam = lo * std::pow(hi / lo, static_cast<double>(i) / nband);
      if (lam > lam_min && lam < ceiling) grid.push_back(lam);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  ScanResult result;
  result.next_bracket_low = ceiling;
  double prev_lam = grid[0];
  double prev_g = mode_determinant(mode, parity, prev_lam);
  for (size_t i = 1; i < grid.size(); ++i) {
    const double lam = grid[i];
    const double g = mode_determinant(mode, parity, lam);
    const bool crossing = (prev_g == 0.0) || ((prev_g < 0) != (g < 0));
    if (crossing) {
      if (static_cast<int>(result.roots.size()) < k) {
        const double root = (prev_g == 0.0)
                                ? prev_lam
                                : refine_root(mode, parity, prev_lam, lam, prev_g, g);
        result.roots.push_back(root);
      } else {
        result.next_bracket_low = prev_lam;
        return result;
      }
    }
    prev_lam = lam;
    prev_g = g;
  }
  if (static_cast<int>(result.roots.size()) < k) {
    throw NumericalError(fmt::format(
        "incomplete spectrum: found {} of {} requested eigenvalues for m={} {} below the scan "
        "ceiling {:g}",
        result.roots.size(), k, mode.m, parity_name(parity), ceiling));
  }
  return result;
}

}  // namespace

std::vector<EigenPair> solve_mode_eigs(const ModeProblem& mode, Parity parity, int k) {
  const ScanResult scan = scan_mode(mode, parity, k);
  std::vector<EigenPair> pairs;
  pairs.reserve(scan.roots.size());
  for (double lam : scan.roots) pairs.push_back(make_pair(mode, parity, lam));
  return pairs;
}

std::vector<double> discretization_oracle(const ModeProblem& mode, Parity parity, int n) {
  if (n < 50) {
    throw ValidationError(fmt::format("oracle needs at least 50 elements, got {}", n));
  }
  const double mu2 = mode.mu * mode.mu;
  const double mu4 = mu2 * mu2;
  const HermiteAssembly asmb = hermite_assemble(0.0, mode.ell, n);
  const int ndof = asmb.ndof();
  // Symmetric form matrix and mass matrix of the reduced problem on [0, ell].
  const Eigen::MatrixXd A_full = asmb.K2 - mode.nu * mu2 * (asmb.G2 + asmb.G2.transpose()) +
                                 2.0 * (1.0 - mode.nu) * mu2 * asmb.K1 +
                                 (1.0 + mode.kappa) * mu4 * asmb.M0;
  // Parity condition at y = 0: Even drops the slope DOF, Odd the value DOF.
  const int drop = (parity == Parity::Even) ? 1 : 0;
  std::vector<int> keep;
  keep.reserve(ndof - 1);
  for (int i = 0; i < ndof; ++i) {
    if (i != drop) keep.push_back(i);
  }
  const int nred = static_cast<int>(keep.size());
  Eigen::MatrixXd A(nred, nred), B(nred, nred);
  for (int i = 0; i < nred; ++i) {
    for (int j = 0; j < nred; ++j) {
      A(i, j) = A_full(keep[i], keep[j]);
      B(i, j) = asmb.M0(keep[i], keep[j]);
    }
  }
  // The pencil is solved inverted: theta = 1/lambda are the LARGE eigenvalues of
  // L^-1 B L^-T with A = L L^T, so the smallest lambda are immune to the huge
  // norm of A (|A| ~ 1/h^3), and each lambda is then re-evaluated as the energy
  // quotient of its eigenfunction, which is what the returned values contain.
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("energy form is not positive definite in the oracle discretization");
  }
  const Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd S = L.triangularView<Eigen::Lower>().solve(B);
  S = L.triangularView<Eigen::Lower>().solve(S.transpose().eval());
  S = 0.5 * (S + S.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  if (es.info() != Eigen::Success) throw NumericalError("oracle eigensolver failed");

  const int count = std::min(12, nred);
  std::vector<double> lambdas;
  lambdas.reserve(count);
  for (int idx = 0; idx < count; ++idx) {
    const Eigen::VectorXd z = es.eigenvectors().col(nred - 1 - idx);
    const Eigen::VectorXd xr = L.transpose().triangularView<Eigen::Upper>().solve(z);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(ndof);
    for (int i = 0; i < nred; ++i) x[keep[i]] = xr[i];
    const double lam = positive_form_quotient(
        [&](double y, int d) { return asmb.evaluate(x, y, d); }, 0.0, mode.ell,
        std::max(n, 64), mode);
    lambdas.push_back(lam);
  }
  std::sort(lambdas.begin(), lambdas.end());
  return lambdas;
}

double frequency_hz(double lambda, double M, double ell) {
  if (!(lambda > 0) || !(M > 0) || !(ell > 0)) {
    throw ValidationError(
        fmt::format("frequency needs lambda, M, ell > 0, got {:g}, {:g}, {:g}", lambda, M, ell));
  }
  return std::sqrt(ell * lambda / (2.0 * M)) / M_PI;
}

Spectrum assemble_spectrum(const PlateModel& model, int m_max, int k_per_mode) {
  if (m_max < 1) throw ValidationError(fmt::format("m_max must be >= 1, got {}", m_max));
  Spectrum spec;
  spec.m_max = m_max;
  spec.k_per_mode = k_per_mode;
  spec.certified_below = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= m_max; ++m) {
    const ModeProblem mode = ModeProblem::reduce(model, m);
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      const ScanResult scan = scan_mode(mode, parity, k_per_mode);
      spec.certified_below = std::min(spec.certified_below, scan.next_bracket_low);
      for (double lam : scan.roots) spec.pairs.push_back(make_pair(mode, parity, lam));
      std::vector<double>& family = (parity == Parity::Even) ? spec.lambda_vert : spec.lambda_tors;
      family.push_back(scan.roots.front());
    }
  }
  // Modes beyond m_max cannot contribute below the coercivity bound of the energy
  // form, lambda >= R (kappa + 1 - nu) mu^4.
  const double mu_next = (m_max + 1) * M_PI / model.geometry.L;
  const double tail_bound =
      model.R * (model.material.kappa + 1.0 - model.material.nu) * std::pow(mu_next, 4);
  spec.certified_below = std::min(spec.certified_below, tail_bound);
  std::sort(spec.pairs.begin(), spec.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.m != b.m) return a.m < b.m;
    return static_cast<int>(a.parity) < static_cast<int>(b.parity);
  });
  for (double lam : spec.lambda_vert) {
    spec.vert_hz.push_back(frequency_hz(lam, model.M, model.geometry.ell));
  }
  for (double lam : spec.lambda_tors) {
    spec.tors_hz.push_back(frequency_hz(lam, model.M, model.geometry.ell));
  }
  return spec;
}

FrequencyTables frequencies(const Spectrum& spectrum, double M, double ell) {
  FrequencyTables t;
  for (double lam : spectrum.lambda_vert) t.vertical_hz.push_back(frequency_hz(lam, M, ell));
  for (double lam : spectrum.lambda_tors) t.torsional_hz.push_back(frequency_hz(lam, M, ell));
  return t;
}

DisplacementField synthesize_modal(const std::vector<const EigenPair*>& modes,
                                   const std::vector<double>& coeffs, const Grid& grid) {
  if (modes.size() != coeffs.size()) {
    throw ValidationError("modal synthesis needs one coefficient per mode");
  }
  DisplacementField f = DisplacementField::zero(grid);
  for (Deriv d : {Deriv::XX, Deriv::XY, Deriv::YY, Deriv::XXY, Deriv::YYY, Deriv::XXXX,
                  Deriv::XXYY, Deriv::YYYY}) {
    f.derivs[d] = Eigen::MatrixXd::Zero(grid.nx, grid.ny);
  }
  for (size_t kk = 0; kk < modes.size(); ++kk) {
    const EigenPair& p = *modes[kk];
    const double c = coeffs[kk];
    if (c == 0.0) continue;
    const double mu = p.mu;
    Eigen::VectorXd sx(grid.nx), cx(grid.nx);
    for (int i = 0; i < grid.nx; ++i) {
      sx[i] = std::sin(mu * grid.x(i));
      cx[i] = std::cos(mu * grid.x(i));
    }
    Eigen::RowVectorXd y0(grid.ny), y1(grid.ny), y2(grid.ny), y3(grid.ny), y4(grid.ny);
    for (int j = 0; j < grid.ny; ++j) {
      const double y = grid.y(j);
      y0[j] = p.shape(y, 0);
      y1[j] = p.shape(y, 1);
      y2[j] = p.shape(y, 2);
      y3[j] = p.shape(y, 3);
      y4[j] = p.shape(y, 4);
    }
    const double mu2 = mu * mu, mu4 = mu2 * mu2;
    f.u += c * sx * y0;
    f.derivs[Deriv::XX] += -c * mu2 * sx * y0;
    f.derivs[Deriv::XY] += c * mu * cx * y1;
    f.derivs[Deriv::YY] += c * sx * y2;
    f.derivs[Deriv::XXY] += -c * mu2 * sx * y1;
    f.derivs[Deriv::YYY] += c * sx * y3;
    f.derivs[Deriv::XXXX] += c * mu4 * sx * y0;
    f.derivs[Deriv::XXYY] += -c * mu2 * sx * y2;
    f.derivs[Deriv::YYYY] += c * sx * y4;
  }
  return f;
}

namespace {

// Piecewise-cubic local Lagrange interpolation of uniform samples; reproduces the
// sample values exactly at the nodes.
class SampledFunction {
 public:
  SampledFunction(double a, double h, const Eigen::VectorXd& vals) : a_(a), h_(h), vals_(vals) {}

  double operator()(double y) const {
    const int n = static_cast<int>(vals_.size());
    int j = static_cast<int>(std::floor((y - a_) / h_));
    const int start = std::clamp(j - 1, 0, n - 4);
    std::vector<double> offsets(4);
    for (int k = 0; k < 4; ++k) offsets[k] = a_ + (start + k) * h_ - y;
    const auto w = fd_weights(0.0, offsets, 0);
    double acc = 0;
    for (int k = 0; k < 4; ++k) acc += w[k] * vals_[start + k];
    return acc;
  }

 private:
  double a_, h_;
  const Eigen::VectorXd& vals_;
};

// Exact solve of the per-mode equilibrium BVP
//   R (Y'''' - 2 mu^2 Y'' + (1+kappa) mu^4 Y) = f_m(y),  free edges at +-ell,
// by convolution with the fundamental kernel K of the homogeneous operator
// (K(0) = K'(0) = K''(0) = 0, K'''(0) = 1) plus a homogeneous correction.
// Because K satisfies the ODE pointwise, the residual of the returned derivative
// samples is at roundoff level for any quadrature, applied identically to all
// derivative orders; quadrature only perturbs which nearby load is represented.
struct ModeBVPSolution {
  std::array<Eigen::VectorXd, 5> Y;  // derivatives 0..4 at the grid y nodes
};

ModeBVPSolution solve_mode_bvp(const ModeProblem& mode, const Eigen::VectorXd& fm,
                               const Grid& grid) {
  const double mu = mode.mu, kappa = mode.kappa, R = mode.R, ell = mode.ell;
  const double sq = std::sqrt(1.0 + kappa);
  const double p = mu * std::sqrt((sq + 1.0) / 2.0);
  const double q = mu * std::sqrt((sq - 1.0) / 2.0);
  if (p * 2.0 * ell > 600.0) {
    throw NumericalError(fmt::format(
        "static mode m={} has characteristic growth p*2ell = {:g}, beyond double range", mode.m,
        p * 2.0 * ell));
  }
  // Real fundamental system g = (cosh pr cos qr, sinh pr sin qr, sinh pr cos qr,
  // cosh pr sin qr) with derivative closure g' = D g.
  Eigen::Matrix4d D;
  D << 0, 0, p, -q, 0, 0, q, p, p, -q, 0, 0, q, p, 0, 0;
  const auto gvec = [&](double r) {
    Eigen::Vector4d g;
    const double ch = std::cosh(p * r), sh = std::sinh(p * r);
    const double co = std::cos(q * r), si = std::sin(q * r);
    g << ch * co, sh * si, sh * co, ch * si;
    return g;
  };
  // Kernel coefficients: K^{(j)}(r) = kc[j] . g(r).
  const double c = 1.0 / (std::pow(mu, 4) * std::sqrt(kappa * (1.0 + kappa)));
  std::array<Eigen::Vector4d, 5> kc;
  kc[0] << 0.0, 0.0, -q * c, p * c;
  for (int j = 1; j <= 4; ++j) kc[j] = D.transpose() * kc[j - 1];

  const SampledFunction load(-ell, grid.dy(), fm);
  ModeBVPSolution sol;
  for (auto& v : sol.Y) v = Eigen::VectorXd::Zero(grid.ny);
  const double panel_h = 2.0 * ell / 64.0;
  for (int jn = 0; jn < grid.ny; ++jn) {
    const double y = grid.y(jn);
    const double len = y + ell;
    if (len > 0) {
      const int npan = std::max(1, static_cast<int>(std::ceil(len / panel_h)));
      const double hp = len / npan;
      std::array<double, 5> acc{};
      for (int pp = 0; pp < npan; ++pp) {
        const double mid = -ell + (pp + 0.5) * hp;
        for (int gq = 0; gq < kGaussN; ++gq) {
          const double tau = mid + 0.5 * hp * kGaussX[gq];
          const double w = 0.5 * hp * kGaussW[gq] * load(tau);
          const Eigen::Vector4d g = gvec(y - tau);
          for (int j = 0; j <= 4; ++j) acc[j] += w * kc[j].dot(g);
        }
      }
      for (int j = 0; j <= 4; ++j) sol.Y[j][jn] = acc[j] / R;
    }
    // Leibniz boundary term of the fourth derivative (K'''(0) = 1).
    sol.Y[4][jn] += fm[jn] / R;
  }
  // Homogeneous correction fitted to the free-edge conditions at both ends.
  const double numu2 = mode.nu * mu * mu;
  const double cmu2 = (2.0 - mode.nu) * mu * mu;
  std::array<Eigen::Matrix4d, 4> Dpow;  // (D^T)^j
  Dpow[0].setIdentity();
  for (int j = 1; j <= 3; ++j) Dpow[j] = D.transpose() * Dpow[j - 1];
  Eigen::Matrix4d bc;
  Eigen::Vector4d rhs;
  int row = 0;
  for (double yb : {ell, -ell}) {
    const int node = (yb > 0) ? grid.ny - 1 : 0;
    const Eigen::Vector4d g = gvec(yb);
    for (int op = 0; op < 2; ++op) {
      for (int i = 0; i < 4; ++i) {
        const Eigen::Vector4d e = Eigen::Vector4d::Unit(i);
        if (op == 0) {
          bc(row, i) = (Dpow[2] * e).dot(g) - numu2 * (Dpow[0] * e).dot(g);
        } else {
          bc(row, i) = (Dpow[3] * e).dot(g) - cmu2 * (Dpow[1] * e).dot(g);
        }
      }
      rhs[row] = (op == 0) ? -(sol.Y[2][node] - numu2 * sol.Y[0][node])
                           : -(sol.Y[3][node] - cmu2 * sol.Y[1][node]);
      ++row;
    }
  }
  Eigen::FullPivLU<Eigen::Matrix4d> lu(bc);
  if (!lu.isInvertible()) {
    throw NumericalError(
        "singular per-mode boundary system; zero would have to be an eigenvalue");
  }
  const Eigen::Vector4d coef = lu.solve(rhs);
  for (int jn = 0; jn < grid.ny; ++jn) {
    const Eigen::Vector4d g = gvec(grid.y(jn));
    for (int j = 0; j <= 3; ++j) sol.Y[j][jn] += (Dpow[j] * coef).dot(g);
    // Fourth derivative of the homogeneous part via the closure once more.
    sol.Y[4][jn] += (D.transpose() * (Dpow[3] * coef)).dot(g);
  }
  return sol;
}

}  // namespace

DisplacementField static_solve(const PlateModel& model, const Eigen::MatrixXd& f, const Grid& grid,
                               int m_max, StaticReport* report) {
  if (f.rows() != grid.nx || f.cols() != grid.ny) {
    throw ValidationError("load plane does not match the grid");
  }
  if (m_max < 1) throw ValidationError(fmt::format("m_max must be >= 1, got {}", m_max));
  const auto wx = simpson_weights(grid.nx, grid.dx());
  DisplacementField field = DisplacementField::zero(grid);
  for (Deriv d : {Deriv::XX, Deriv::XY, Deriv::YY, Deriv::XXY, Deriv::YYY, Deriv::XXXX,
                  Deriv::XXYY, Deriv::YYYY}) {
    field.derivs[d] = Eigen::MatrixXd::Zero(grid.nx, grid.ny);
  }
  Eigen::MatrixXd f_repr = Eigen::MatrixXd::Zero(grid.nx, grid.ny);
  for (int m = 1; m <= m_max; ++m) {
    const ModeProblem mode = ModeProblem::reduce(model, m);
    const double mu = mode.mu;
    Eigen::VectorXd sx(grid.nx), cx(grid.nx);
    for (int i = 0; i < grid.nx; ++i) {
      sx[i] = std::sin(mu * grid.x(i));
      cx[i] = std::cos(mu * grid.x(i));
    }
    Eigen::VectorXd fm(grid.ny);
    for (int j = 0; j < grid.ny; ++j) {
      double acc = 0;
      for (int i = 0; i < grid.nx; ++i) acc += wx[i] * f(i, j) * sx[i];
      fm[j] = 2.0 * acc / grid.L;
    }
    const ModeBVPSolution sol = solve_mode_bvp(mode, fm, grid);
    const double mu2 = mu * mu, mu4 = mu2 * mu2;
    field.u += sx * sol.Y[0].transpose();
    field.derivs[Deriv::XX] += -mu2 * sx * sol.Y[0].transpose();
    field.derivs[Deriv::XY] += mu * cx * sol.Y[1].transpose();
    field.derivs[Deriv::YY] += sx * sol.Y[2].transpose();
    field.derivs[Deriv::XXY] += -mu2 * sx * sol.Y[1].transpose();
    field.derivs[Deriv::YYY] += sx * sol.Y[3].transpose();
    field.derivs[Deriv::XXXX] += mu4 * sx * sol.Y[0].transpose();
    field.derivs[Deriv::XXYY] += -mu2 * sx * sol.Y[2].transpose();
    field.derivs[Deriv::YYYY] += sx * sol.Y[4].transpose();
    f_repr += sx * fm.transpose();
  }
  if (report) {
    report->m_max = m_max;
    const double f_norm2 = inner_product(f, f, grid);
    if (f_norm2 > 0) {
      const Eigen::MatrixXd diff = f - f_repr;
      report->truncation_rel = std::sqrt(inner_product(diff, diff, grid) / f_norm2);
    } else {
      report->truncation_rel = 0;
    }
    report->interior_rel = relative_interior_residual(model, field, f_repr);
    report->boundary_rel = relative_boundary_residual(model, field);
    report->bending_energy = bending_energy(model, field);
    report->total_energy = report->bending_energy - inner_product(f, field.u, grid);
  }
  return field;
}

}  // namespace orthoplate
