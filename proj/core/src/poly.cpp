#include "cyclescope/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cyclescope/errors.hpp"

namespace cyclescope {

namespace {

double ipow(double b, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

BivariatePoly::BivariatePoly(const Terms& terms) {
  for (const auto& [m, c] : terms) {
    if (m.i < 0 || m.j < 0) throw DomainError("negative exponent in BivariatePoly");
    add_term(m.i, m.j, c);
  }
}

BivariatePoly BivariatePoly::constant(double c) { return monomial(0, 0, c); }

BivariatePoly BivariatePoly::monomial(int i, int j, double c) {
  BivariatePoly p;
  p.add_term(i, j, c);
  return p;
}

std::optional<int> BivariatePoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

double BivariatePoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

void BivariatePoly::add_term(int i, int j, double c) {
  if (i < 0 || j < 0) throw DomainError("negative exponent in BivariatePoly");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double BivariatePoly::operator()(double x, double y) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) sum += c * ipow(x, m.i) * ipow(y, m.j);
  return sum;
}

BivariatePoly BivariatePoly::derivative_x() const {
  BivariatePoly out;
  for (const auto& [m, c] : terms_)
    if (m.i > 0) out.add_term(m.i - 1, m.j, c * m.i);
  return out;
}

BivariatePoly BivariatePoly::derivative_y() const {
  BivariatePoly out;
  for (const auto& [m, c] : terms_)
    if (m.j > 0) out.add_term(m.i, m.j - 1, c * m.j);
  return out;
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m.i, m.j, c);
  return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m.i, m.j, -c);
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
  BivariatePoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
  return out;
}

BivariatePoly pow(const BivariatePoly& p, int e) {
  if (e < 0) throw DomainError("negative power of BivariatePoly");
  BivariatePoly r = BivariatePoly::constant(1.0);
  for (int k = 0; k < e; ++k) r = r * p;
  return r;
}

std::string BivariatePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (m.i > 0) os << "*x^" << m.i;
    if (m.j > 0) os << "*y^" << m.j;
  }
  return os.str();
}

DensePoly::DensePoly(const BivariatePoly& p) {
  degree_ = p.degree().value_or(-1);
  if (degree_ < 0) return;
  const int w = degree_ + 1;
  coeff_.assign(static_cast<std::size_t>(w * w), 0.0);
  for (const auto& [m, c] : p.terms()) coeff_[static_cast<std::size_t>(m.i * w + m.j)] = c;
}

double DensePoly::eval_with_powers(const double* xp, const double* yp) const {
  const int w = degree_ + 1;
  double sum = 0.0;
  for (int i = 0; i <= degree_; ++i) {
    const double* row = coeff_.data() + i * w;
    double inner = 0.0;
    for (int j = 0; j + i <= degree_; ++j) inner += row[j] * yp[j];
    sum += inner * xp[i];
  }
  return sum;
}

double DensePoly::operator()(double x, double y) const {
  if (degree_ < 0) return 0.0;
  std::vector<double> xp(static_cast<std::size_t>(degree_ + 1)), yp(xp.size());
  xp[0] = yp[0] = 1.0;
  for (int k = 1; k <= degree_; ++k) {
    xp[k] = xp[k - 1] * x;
    yp[k] = yp[k - 1] * y;
  }
  return eval_with_powers(xp.data(), yp.data());
}

double eval_poly(const BivariatePoly& p, double x, double y) { return p(x, y); }

}  // namespace cyclescope
