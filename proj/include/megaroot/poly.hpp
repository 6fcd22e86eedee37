#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "megaroot/scaled_complex.hpp"

namespace megaroot {

/// Joint value/derivative of p at one point.
struct EvalResult {
  ScaledComplex value;
  ScaledComplex derivative;
};

enum class CorrectionStatus { ok, critical_point };

struct CorrectionResult {
  std::complex<double> value{0.0, 0.0};
  CorrectionStatus status = CorrectionStatus::ok;

  bool ok() const { return status == CorrectionStatus::ok; }
};

/// A degree-d polynomial exposing joint evaluation z -> (p(z), p'(z)) and a
/// radius R with all roots in |z| <= R.  Models are immutable after
/// construction; eval is stateless and safe to call from any thread.
class PolynomialModel {
 public:
  virtual ~PolynomialModel() = default;

  virtual std::int64_t degree() const = 0;

  /// Every root z* satisfies |z*| <= root_bound().
  virtual double root_bound() const = 0;

  virtual std::string describe() const = 0;

  /// Joint evaluation; `steps` is incremented once per recurrence round so
  /// tests can pin the advertised cost (d for coefficient forms, the nesting
  /// level for iterated quadratics).
  virtual EvalResult eval_counted(std::complex<double> z, std::int64_t& steps) const = 0;

  EvalResult eval(std::complex<double> z) const {
    std::int64_t steps = 0;
    return eval_counted(z, steps);
  }
};

/// Coefficient form, a_0..a_d ascending, a_d != 0.  Evaluated by a fused
/// Horner pass in scaled arithmetic.  Root bound is the Cauchy bound
/// 1 + max |a_k / a_d|.
class DensePoly final : public PolynomialModel {
 public:
  explicit DensePoly(std::vector<std::complex<double>> ascending_coefficients);

  /// Text format: one coefficient per line, "re im", ascending order.
  /// Blank lines and lines starting with '#' are skipped.
  static DensePoly from_file(const std::filesystem::path& path);

  std::int64_t degree() const override { return static_cast<std::int64_t>(coefficients_.size()) - 1; }
  double root_bound() const override { return root_bound_; }
  std::string describe() const override;
  EvalResult eval_counted(std::complex<double> z, std::int64_t& steps) const override;

  const std::vector<std::complex<double>>& coefficients() const { return coefficients_; }

 private:
  std::vector<std::complex<double>> coefficients_;
  std::vector<ScaledComplex> scaled_coefficients_;
  double root_bound_ = 0.0;
};

/// p_n(z): the n-fold composition of w -> w^2 + c applied to z, degree 2^n.
/// One evaluation costs n recurrence rounds (O(log d)), which is what makes
/// degree 2^20 tractable.  Root bound is the escape radius max(2, |c|).
class IteratedQuadratic final : public PolynomialModel {
 public:
  IteratedQuadratic(std::complex<double> c, int level);

  std::int64_t degree() const override { return std::int64_t{1} << level_; }
  double root_bound() const override;
  std::string describe() const override;
  EvalResult eval_counted(std::complex<double> z, std::int64_t& steps) const override;

  std::complex<double> parameter() const { return c_; }
  int level() const { return level_; }

 private:
  std::complex<double> c_;
  ScaledComplex c_scaled_;
  int level_;
};

/// Chebyshev T_d via the three-term recurrence, value and derivative
/// together.  All roots lie in (-1, 1).
class ChebyshevPoly final : public PolynomialModel {
 public:
  explicit ChebyshevPoly(std::int64_t degree);

  std::int64_t degree() const override { return degree_; }
  double root_bound() const override { return 1.0; }
  std::string describe() const override;
  EvalResult eval_counted(std::complex<double> z, std::int64_t& steps) const override;

 private:
  std::int64_t degree_;
};

/// Legendre P_d via the three-term recurrence.
class LegendrePoly final : public PolynomialModel {
 public:
  explicit LegendrePoly(std::int64_t degree);

  std::int64_t degree() const override { return degree_; }
  double root_bound() const override { return 1.0; }
  std::string describe() const override;
  EvalResult eval_counted(std::complex<double> z, std::int64_t& steps) const override;

 private:
  std::int64_t degree_;
};

/// Monic product of (z - r_i) with the true roots known by construction.
/// Duplicate roots are permitted; the multiplicity profile reports them so
/// callers can adjust expectations.
class KnownRootsPoly final : public PolynomialModel {
 public:
  struct MultiplicityProfile {
    std::size_t distinct = 0;
    std::size_t max_multiplicity = 1;
    bool has_duplicates() const { return max_multiplicity > 1; }
  };

  explicit KnownRootsPoly(std::vector<std::complex<double>> roots);

  std::int64_t degree() const override { return static_cast<std::int64_t>(roots_.size()); }
  double root_bound() const override { return root_bound_; }
  std::string describe() const override;
  EvalResult eval_counted(std::complex<double> z, std::int64_t& steps) const override;

  const std::vector<std::complex<double>>& roots() const { return roots_; }
  const MultiplicityProfile& multiplicity_profile() const { return profile_; }

 private:
  std::vector<std::complex<double>> roots_;
  MultiplicityProfile profile_;
  double root_bound_ = 0.0;
};

/// Newton correction p/p' through the logarithmic derivative
/// p'/p = sum 1/(z - r_i); never overflows regardless of the degree.
/// Returns 0 when z is exactly a stored root; critical_point when the sum
/// cancels to zero (p'(z) = 0).
CorrectionResult newton_correction_known_roots(const KnownRootsPoly& poly,
                                               std::complex<double> z);

}  // namespace megaroot
