#ifndef WISHART_ASYMPTOTICS_HPP
#define WISHART_ASYMPTOTICS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "wishart/coloring.hpp"
#include "wishart/model.hpp"
#include "wishart/moments.hpp"
#include "wishart/trace_expr.hpp"
#include "wishart/trace_word.hpp"

namespace wishart {

/// Limits m_k = lim tr_N(C^k) of a common C, or a word oracle
/// m^f = lim tr_N(C_{t(j1)} ... C_{t(jl)}) for distinct C_r.
class MomentSequence {
 public:
  using WordOracle = std::function<Complex(const TraceWord&)>;

  /// m[k - 1] = m_k.
  static MomentSequence common(std::vector<Complex> m);
  static MomentSequence common(const std::vector<double>& m);
  /// m_k = tr_N(C^k) for k = 1..k_max at the given finite N.
  static MomentSequence from_matrix(const ComplexMatrix& c, std::size_t k_max);
  /// m^f = tr_N of the product of the C_r named by the letters of f.
  static MomentSequence from_matrices(std::vector<ComplexMatrix> cs);
  static MomentSequence oracle(WordOracle f);

  bool is_common() const { return !oracle_; }
  /// Largest k available in the common case; unbounded for an oracle.
  std::size_t max_order() const;
  Complex moment(std::size_t k) const;
  Complex word(const TraceWord& w) const;

 private:
  std::vector<Complex> m_;
  WordOracle oracle_;
};

struct CltCovariance {
  double EXX = 0;
  double EYY = 0;
  double EXY = 0;
};

/// Second-order limits of Z = lim (tr q - centering) for the single star q of
/// coloring t: z_squared is E(Z^2) over S*_{2n}(t) and z_abs_squared is
/// E|Z|^2 over S**_{2n}(t), both in lambda and normalized face words.
struct CltSums {
  TraceExpr z_squared{TraceConvention::Normalized};
  TraceExpr z_abs_squared{TraceConvention::Normalized};
};

/// sum over a in the genus-0 single-star set of lambda^{#C(a)} times the
/// normalized words of the faces sigma_1 a.
TraceExpr limit_mean_symbolic(const Coloring& t, const EngineOptions& options = {});

/// Coefficient of N in the centering of tr(W_{t(1)} ... W_{t(n)}).
Complex limit_mean(const Coloring& t, double lambda, const MomentSequence& m,
                   const EngineOptions& options = {});

CltSums clt_sums(const Coloring& t, const EngineOptions& options = {});

/// Real/imaginary covariance of the CLT limit for common C and lambda.
CltCovariance clt_covariance(const Coloring& t, double lambda, const MomentSequence& m,
                             const EngineOptions& options = {});

/// Genus-0 grade of the cumulant of the two stars qa, qb (zero-based colors).
TraceExpr limit_covariance_symbolic(const std::vector<int>& qa, const std::vector<int>& qb,
                                    const EngineOptions& options = {});

/// lim cov(tr qa, tr qb) with lambdas[r] per color (one entry means common).
Complex limit_covariance(const std::vector<int>& qa, const std::vector<int>& qb,
                         const std::vector<double>& lambdas, const MomentSequence& m,
                         const EngineOptions& options = {});

/// Evaluates an expression in lambda symbols and normalized words.
Complex evaluate_limit(const TraceExpr& e, const std::vector<double>& lambdas,
                       const MomentSequence& m);

/// Finite-N correction N * (centering with tr_N(C^k) - centering with m_k).
/// For t = (1,2,3) and m_k = lim tr_N(C^k) this is lambda^3 b with
/// b = tr(C^3) - N m_3.
Complex mean_shift(const Coloring& t, double lambda, const MomentSequence& m,
                   const ComplexMatrix& c, const EngineOptions& options = {});

struct AsymptoticReport {
  Complex center_coefficient;
  Complex mean_shift_b;  ///< zero unless a finite-N matrix C was supplied
  CltCovariance covariance;
};

AsymptoticReport asymptotic_report(const Coloring& t, double lambda, const MomentSequence& m,
                                   const std::optional<ComplexMatrix>& c = std::nullopt,
                                   const EngineOptions& options = {});

}  // namespace wishart

#endif  // WISHART_ASYMPTOTICS_HPP
