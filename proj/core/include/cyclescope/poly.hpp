#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cyclescope {

// Exponent pair (i, j) of the monomial x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;

  constexpr int degree() const { return i + j; }
  friend constexpr auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Sparse real polynomial in x and y. Stored coefficients are never exactly zero.
class BivariatePoly {
 public:
  using Terms = std::map<Monomial, double>;

  BivariatePoly() = default;
  explicit BivariatePoly(const Terms& terms);

  static BivariatePoly constant(double c);
  static BivariatePoly monomial(int i, int j, double c = 1.0);
  static BivariatePoly x() { return monomial(1, 0); }
  static BivariatePoly y() { return monomial(0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Maximum total degree; empty for the zero polynomial.
  std::optional<int> degree() const;

  // Coefficient of x^i y^j (0 if absent).
  double coeff(int i, int j) const;

  // Adds c to the coefficient of x^i y^j, dropping the term if it cancels.
  void add_term(int i, int j, double c);

  double operator()(double x, double y) const;

  BivariatePoly derivative_x() const;
  BivariatePoly derivative_y() const;

  // Terms whose total degree satisfies pred.
  template <typename Pred>
  BivariatePoly filter_degree(Pred pred) const {
    BivariatePoly out;
    for (const auto& [m, c] : terms_)
      if (pred(m.degree())) out.terms_.emplace(m, c);
    return out;
  }

  BivariatePoly& operator+=(const BivariatePoly& rhs);
  BivariatePoly& operator-=(const BivariatePoly& rhs);
  BivariatePoly& operator*=(double s);

  friend BivariatePoly operator+(BivariatePoly lhs, const BivariatePoly& rhs) { return lhs += rhs; }
  friend BivariatePoly operator-(BivariatePoly lhs, const BivariatePoly& rhs) { return lhs -= rhs; }
  friend BivariatePoly operator*(BivariatePoly p, double s) { return p *= s; }
  friend BivariatePoly operator*(double s, BivariatePoly p) { return p *= s; }
  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b);
  friend BivariatePoly operator-(const BivariatePoly& p) { return p * -1.0; }

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

  std::string to_string() const;

 private:
  Terms terms_;
};

BivariatePoly pow(const BivariatePoly& p, int e);

// Dense evaluator for repeated evaluation at many points; holds the same
// polynomial as the sparse form it was built from.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(const BivariatePoly& p);

  int degree() const { return degree_; }

  // Evaluates using caller-provided power tables xp[k] = x^k, yp[k] = y^k, k <= degree().
  double eval_with_powers(const double* xp, const double* yp) const;
  double operator()(double x, double y) const;

 private:
  int degree_ = -1;
  // Row-major (degree_+1)^2 table, coeff_[i*(degree_+1)+j] multiplies x^i y^j.
  std::vector<double> coeff_;
};

double eval_poly(const BivariatePoly& p, double x, double y);

}  // namespace cyclescope
