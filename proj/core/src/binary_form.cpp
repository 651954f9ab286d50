#include "stochdyn/binary_form.hpp"

#include <algorithm>
#include <cmath>

#include "stochdyn/errors.hpp"

namespace stochdyn {

Int pow_int(const Int& base, long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Int& c) { return c == 0; });
}

Int BinaryForm::eval(const Int& x, const Int& y) const {
  // Horner in x, folding one factor of y per step:
  // sum_i c_i x^i y^(n-i) with n big-by-big products total.
  const int n = degree();
  Int acc = coeffs[static_cast<std::size_t>(n)];
  Int ypow(1);
  for (int i = n - 1; i >= 0; --i) {
    ypow *= y;
    acc = acc * x + coeffs[static_cast<std::size_t>(i)] * ypow;
  }
  return acc;
}

double BinaryForm::eval_double(double x, double y) const {
  const int n = degree();
  double acc = coeffs[static_cast<std::size_t>(n)].get_d();
  double ypow = 1.0;
  for (int i = n - 1; i >= 0; --i) {
    ypow *= y;
    acc = acc * x + coeffs[static_cast<std::size_t>(i)].get_d() * ypow;
  }
  return acc;
}

BinaryForm form_mul(const BinaryForm& a, const BinaryForm& b) {
  std::vector<Int> out(a.coeffs.size() + b.coeffs.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      out[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return BinaryForm(std::move(out));
}

BinaryForm form_add(const BinaryForm& a, const BinaryForm& b) {
  std::vector<Int> out(std::max(a.coeffs.size(), b.coeffs.size()), Int(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) out[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out[i] += b.coeffs[i];
  return BinaryForm(std::move(out));
}

BinaryForm form_scale(const BinaryForm& a, const Int& c) {
  std::vector<Int> out = a.coeffs;
  for (Int& v : out) v *= c;
  return BinaryForm(std::move(out));
}

BinaryForm homogenize(const std::vector<Int>& poly, int d) {
  std::vector<Int> out(static_cast<std::size_t>(d) + 1, Int(0));
  for (std::size_t i = 0; i < poly.size(); ++i) {
    out[i] = poly[i];
  }
  return BinaryForm(std::move(out));
}

Int bareiss_determinant(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Int(1);
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k] == 0) ++pivot;
      if (pivot == n) return Int(0);
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

namespace {

// Sylvester matrix of binary forms of formal degree d, coefficients
// written in descending x-powers so row i of the F-block carries
// f_d .. f_0 starting at column i.
std::vector<std::vector<Int>> sylvester_matrix(const BinaryForm& F,
                                               const BinaryForm& G) {
  const int d = F.degree();
  const std::size_t n = 2 * static_cast<std::size_t>(d);
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
  for (int row = 0; row < d; ++row) {
    for (int j = 0; j <= d; ++j) {
      m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + j)] =
          F.coeffs[static_cast<std::size_t>(d - j)];
    }
  }
  for (int row = 0; row < d; ++row) {
    for (int j = 0; j <= d; ++j) {
      m[static_cast<std::size_t>(d + row)][static_cast<std::size_t>(row + j)] =
          G.coeffs[static_cast<std::size_t>(d - j)];
    }
  }
  return m;
}

// Exact Gaussian elimination over Q.
std::vector<Rat> solve_rational(std::vector<std::vector<Rat>> m,
                                std::vector<Rat> rhs) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) {
      throw DegenerateMapError("singular system in cofactor solve");
    }
    std::swap(m[k], m[pivot]);
    std::swap(rhs[k], rhs[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      Rat factor = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) {
        m[i][j] -= factor * m[k][j];
      }
      rhs[i] -= factor * rhs[k];
    }
  }
  std::vector<Rat> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = rhs[k] / m[k][k];
  }
  return out;
}

} // namespace

Int sylvester_resultant(const BinaryForm& F, const BinaryForm& G) {
  if (F.degree() != G.degree()) {
    throw DegenerateMapError("resultant requires equal formal degrees");
  }
  return bareiss_determinant(sylvester_matrix(F, G));
}

CofactorIdentity sylvester_cofactors(const BinaryForm& F, const BinaryForm& G,
                                     const Int& r) {
  const int d = F.degree();
  const std::size_t n = 2 * static_cast<std::size_t>(d);
  // Row k of the system is the coefficient of x^k y^(2d-1-k) in
  // A1*F + B1*G with unknowns (a_0..a_{d-1}, b_0..b_{d-1}).
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t k = 0; k < n; ++k) {
    for (int j = 0; j < d; ++j) {
      const long i = static_cast<long>(k) - j;
      if (i < 0 || i > d) continue;
      m[k][static_cast<std::size_t>(j)] = Rat(F.coeffs[static_cast<std::size_t>(i)]);
      m[k][static_cast<std::size_t>(d + j)] = Rat(G.coeffs[static_cast<std::size_t>(i)]);
    }
  }
  std::vector<Rat> rhs_x(n, Rat(0)), rhs_y(n, Rat(0));
  rhs_x[n - 1] = Rat(r);
  rhs_y[0] = Rat(r);
  std::vector<Rat> sol_x = solve_rational(m, rhs_x);
  std::vector<Rat> sol_y = solve_rational(m, rhs_y);

  CofactorIdentity out;
  out.a1.assign(sol_x.begin(), sol_x.begin() + d);
  out.b1.assign(sol_x.begin() + d, sol_x.end());
  out.a2.assign(sol_y.begin(), sol_y.begin() + d);
  out.b2.assign(sol_y.begin() + d, sol_y.end());
  return out;
}

namespace {

int poly_degree(const std::vector<Int>& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

} // namespace

Int univariate_resultant(const std::vector<Int>& f, const std::vector<Int>& g) {
  const int n = poly_degree(f);
  const int m = poly_degree(g);
  if (n < 0 || m < 0) return Int(0);
  if (n == 0) return pow_int(f[0], m);
  if (m == 0) return pow_int(g[0], n);
  const std::size_t size = static_cast<std::size_t>(n + m);
  std::vector<std::vector<Int>> s(size, std::vector<Int>(size, Int(0)));
  for (int row = 0; row < m; ++row) {
    for (int j = 0; j <= n; ++j) {
      s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + j)] =
          f[static_cast<std::size_t>(n - j)];
    }
  }
  for (int row = 0; row < n; ++row) {
    for (int j = 0; j <= m; ++j) {
      s[static_cast<std::size_t>(m + row)][static_cast<std::size_t>(row + j)] =
          g[static_cast<std::size_t>(m - j)];
    }
  }
  return bareiss_determinant(std::move(s));
}

Int discriminant(const std::vector<Int>& f) {
  const int n = poly_degree(f);
  if (n < 1) {
    throw InvalidSystemError("discriminant needs degree >= 1");
  }
  std::vector<Int> deriv(static_cast<std::size_t>(n), Int(0));
  for (int i = 1; i <= n; ++i) {
    deriv[static_cast<std::size_t>(i - 1)] = f[static_cast<std::size_t>(i)] * i;
  }
  Int res = univariate_resultant(f, deriv);
  Int lc = f[static_cast<std::size_t>(n)];
  Int disc = res / lc;
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) disc = -disc;
  return disc;
}

} // namespace stochdyn
