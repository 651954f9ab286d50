#include "stochdyn/rational_map.hpp"

#include <algorithm>
#include <cmath>

#include "stochdyn/errors.hpp"
#include "stochdyn/factor.hpp"

namespace stochdyn {

namespace {

int poly_degree(const std::vector<Int>& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

Int joint_content(const BinaryForm& F, const BinaryForm& G) {
  Int g(0);
  for (const Int& c : F.coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  for (const Int& c : G.coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// Directed-upward log of a positive rational; the slack keeps the
// certificate an upper bound through double rounding.
double log_upper(const Rat& q) {
  if (q == 1) return 0.0;
  double v = log_bigint(Int(q.get_num())) - log_bigint(Int(q.get_den()));
  return v + std::abs(v) * 0x1.0p-38 + 0x1.0p-38;
}

Rat l1_norm(const std::vector<Rat>& coeffs) {
  Rat sum(0);
  for (const Rat& c : coeffs) sum += abs(c);
  return sum;
}

Int l1_norm(const BinaryForm& form) {
  Int sum(0);
  for (const Int& c : form.coeffs) sum += abs(c);
  return sum;
}

// Upper side: |F(a,b)| <= |F|_1 max(|a|,|b|)^d, so
//   h(phi P) <= d h(P) + log max(|F|_1, |G|_1) =: d h(P) + c_upper.
// Lower side, from A1 F + B1 G = Res x^(2d-1) and the y-twin:
//   |Res| max^(2d-1) <= L max^(d-1) max(|F(a,b)|,|G(a,b)|),
// with L the larger of the two cofactor-pair l1 masses, and the content
// of the image pair divides Res (integral cofactors), so after
// reduction h(phi P) >= d h(P) - log L =: d h(P) - c_lower.
// Power maps get c_phi = 0, which is their true constant.
HeightControlCertificate make_certificate(const BinaryForm& F,
                                          const BinaryForm& G,
                                          const Int& res) {
  HeightControlCertificate cert;
  Int upper = std::max(l1_norm(F), l1_norm(G));
  cert.c_upper = log_upper(Rat(upper));

  CofactorIdentity cof = sylvester_cofactors(F, G, res);
  Rat mass = std::max(l1_norm(cof.a1) + l1_norm(cof.b1),
                      l1_norm(cof.a2) + l1_norm(cof.b2));
  cert.c_lower = log_upper(mass);

  cert.c_phi = std::max({cert.c_upper, cert.c_lower, 0.0});
  return cert;
}

} // namespace

RationalMapLift RationalMapLift::from_forms(BinaryForm F, BinaryForm G) {
  if (F.coeffs.empty() || F.coeffs.size() != G.coeffs.size()) {
    throw DegenerateMapError("numerator and denominator forms need the same formal degree");
  }
  const int d = F.degree();
  if (d < 2) {
    throw DegenerateMapError("map degree must be at least 2");
  }
  Int content = joint_content(F, G);
  if (content == 0) {
    throw DegenerateMapError("zero map");
  }
  if (content > 1) {
    for (Int& c : F.coeffs) c /= content;
    for (Int& c : G.coeffs) c /= content;
  }
  Int res = sylvester_resultant(F, G);
  if (res == 0) {
    throw DegenerateMapError("forms share a projective root (resultant is zero)");
  }
  RationalMapLift out;
  out.degree_ = d;
  out.F_ = std::move(F);
  out.G_ = std::move(G);
  out.resultant_ = res;
  out.control_ = make_certificate(out.F_, out.G_, res);
  return out;
}

RationalMapLift RationalMapLift::from_affine(std::vector<Int> numerator,
                                             std::vector<Int> denominator) {
  const int dn = poly_degree(numerator);
  const int dd = poly_degree(denominator);
  if (dn < 0 && dd < 0) {
    throw DegenerateMapError("empty map");
  }
  const int d = std::max(dn, dd);
  return from_forms(homogenize(numerator, d), homogenize(denominator, d));
}

RationalMapLift RationalMapLift::unicritical(int d, const Int& c) {
  std::vector<Int> num(static_cast<std::size_t>(d) + 1, Int(0));
  num[0] = c;
  num[static_cast<std::size_t>(d)] = 1;
  return from_affine(std::move(num), {Int(1)});
}

ProjectivePoint RationalMapLift::apply(const ProjectivePoint& P) const {
  auto [fx, gx] = apply_raw(P.x, P.y);
  return normalize(std::move(fx), std::move(gx));
}

std::pair<Int, Int> RationalMapLift::apply_raw(const Int& x, const Int& y) const {
  return {F_.eval(x, y), G_.eval(x, y)};
}

std::string RationalMapLift::to_string() const {
  auto side = [](const BinaryForm& f) {
    std::string s = "[";
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
      if (i) s += ",";
      s += f.coeffs[i].get_str();
    }
    return s + "]";
  };
  return side(F_) + "/" + side(G_);
}

RationalMapLift compose(const RationalMapLift& phi, const RationalMapLift& psi) {
  const int e = psi.degree();
  // Substitute phi's forms into psi: coefficient p_i of x^i y^(e-i)
  // contributes p_i * Fphi^i * Gphi^(e-i).
  std::vector<BinaryForm> fpow(static_cast<std::size_t>(e) + 1);
  std::vector<BinaryForm> gpow(static_cast<std::size_t>(e) + 1);
  fpow[0] = BinaryForm({Int(1)});
  gpow[0] = BinaryForm({Int(1)});
  for (int i = 1; i <= e; ++i) {
    fpow[static_cast<std::size_t>(i)] =
        form_mul(fpow[static_cast<std::size_t>(i - 1)], phi.numerator());
    gpow[static_cast<std::size_t>(i)] =
        form_mul(gpow[static_cast<std::size_t>(i - 1)], phi.denominator());
  }
  auto substitute = [&](const BinaryForm& outer) {
    BinaryForm acc({Int(0)});
    for (int i = 0; i <= e; ++i) {
      const Int& c = outer.coeffs[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      BinaryForm term = form_mul(fpow[static_cast<std::size_t>(i)],
                                 gpow[static_cast<std::size_t>(e - i)]);
      acc = form_add(acc, form_scale(term, c));
    }
    return acc;
  };
  return RationalMapLift::from_forms(substitute(psi.numerator()),
                                     substitute(psi.denominator()));
}

std::set<Int> bad_primes(const std::vector<RationalMapLift>& maps) {
  std::set<Int> out;
  for (const RationalMapLift& phi : maps) {
    for (const Int& p : prime_support(phi.resultant())) {
      out.insert(p);
    }
  }
  return out;
}

} // namespace stochdyn
