#include "stochdyn/riccati.hpp"

#include <algorithm>

#include "stochdyn/errors.hpp"
#include "stochdyn/factor.hpp"

namespace stochdyn {

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid; p prime and a != 0 mod p.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p);
  std::int64_t new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    const std::int64_t t2 = t - q * new_t;
    t = new_t;
    new_t = t2;
    const std::int64_t r2 = r - q * new_r;
    r = new_r;
    new_r = r2;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

void require_same_field(std::uint64_t a, std::uint64_t b) {
  if (a != b) {
    throw InvalidSystemError("mixed characteristics");
  }
}

void require_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0 || p >= (1ull << 31) ||
      !is_probable_prime(Int(static_cast<unsigned long>(p)))) {
    throw BadCharacteristicError("characteristic must be an odd prime < 2^31");
  }
}

} // namespace

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  require_odd_prime(p);
  for (std::uint64_t& c : coeffs_) c %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint64_t p, std::int64_t value) {
  std::int64_t v = value % static_cast<std::int64_t>(p);
  if (v < 0) v += static_cast<std::int64_t>(p);
  return FpPoly(p, {static_cast<std::uint64_t>(v)});
}

void FpPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpPoly FpPoly::derivative() const {
  if (coeffs_.size() <= 1) return zero(p_);
  std::vector<std::uint64_t> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out[i - 1] = coeffs_[i] * (i % p_) % p_;
  }
  FpPoly r;
  r.p_ = p_;
  r.coeffs_ = std::move(out);
  r.trim();
  return r;
}

FpPoly FpPoly::monic() const {
  if (is_zero() || leading() == 1) return *this;
  const std::uint64_t inv = mod_inverse(leading(), p_);
  FpPoly out = *this;
  for (std::uint64_t& c : out.coeffs_) c = c * inv % p_;
  return out;
}

std::string FpPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const std::uint64_t c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) {
      if (c != 1) s += "*";
      s += "t";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  require_same_field(a.p_, b.p_);
  FpPoly out;
  out.p_ = a.p_;
  out.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out.coeffs_[i] = a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
    out.coeffs_[i] = (out.coeffs_[i] + b.coeffs_[i]) % a.p_;
  }
  out.trim();
  return out;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  require_same_field(a.p_, b.p_);
  FpPoly out;
  out.p_ = a.p_;
  out.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out.coeffs_[i] = a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
    out.coeffs_[i] = (out.coeffs_[i] + a.p_ - b.coeffs_[i]) % a.p_;
  }
  out.trim();
  return out;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  require_same_field(a.p_, b.p_);
  FpPoly out;
  out.p_ = a.p_;
  if (a.is_zero() || b.is_zero()) return out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out.coeffs_[i + j] = (out.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j]) % a.p_;
    }
  }
  out.trim();
  return out;
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& a, const FpPoly& b) {
  require_same_field(a.p_, b.p_);
  if (b.is_zero()) {
    throw InvalidSystemError("division by the zero polynomial");
  }
  const std::uint64_t p = a.p_;
  FpPoly q = zero(p), r = a;
  const std::uint64_t inv = mod_inverse(b.leading(), p);
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const std::uint64_t coef = r.leading() * inv % p;
    std::vector<std::uint64_t> mono(static_cast<std::size_t>(shift) + 1, 0);
    mono.back() = coef;
    FpPoly term(p, std::move(mono));
    q = q + term;
    r = r - term * b;
  }
  return {q, r};
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpRatFunc FpRatFunc::make(FpPoly num, FpPoly den) {
  require_same_field(num.characteristic(), den.characteristic());
  if (den.is_zero()) {
    throw InvalidSystemError("zero denominator in F_p(t)");
  }
  if (num.is_zero()) {
    FpRatFunc out;
    out.num_ = FpPoly::zero(num.characteristic());
    out.den_ = FpPoly::constant(num.characteristic(), 1);
    return out;
  }
  FpPoly g = FpPoly::gcd(num, den);
  num = FpPoly::divmod(num, g).first;
  den = FpPoly::divmod(den, g).first;
  const std::uint64_t lead = den.leading();
  if (lead != 1) {
    const std::uint64_t inv = mod_inverse(lead, den.characteristic());
    num = num * FpPoly::constant(num.characteristic(),
                                 static_cast<std::int64_t>(inv));
    den = den.monic();
  }
  FpRatFunc out;
  out.num_ = std::move(num);
  out.den_ = std::move(den);
  return out;
}

FpRatFunc FpRatFunc::from_poly(FpPoly num) {
  const std::uint64_t p = num.characteristic();
  return make(std::move(num), FpPoly::constant(p, 1));
}

FpRatFunc FpRatFunc::constant(std::uint64_t p, std::int64_t value) {
  return from_poly(FpPoly::constant(p, value));
}

FpRatFunc FpRatFunc::ddt() const {
  // (n/d)' = (n'd - nd')/d^2, reduced on construction.
  return make(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string FpRatFunc::to_string() const {
  if (den_ == FpPoly::constant(characteristic(), 1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

FpRatFunc operator+(const FpRatFunc& a, const FpRatFunc& b) {
  return FpRatFunc::make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

FpRatFunc operator-(const FpRatFunc& a, const FpRatFunc& b) {
  return FpRatFunc::make(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

FpRatFunc operator*(const FpRatFunc& a, const FpRatFunc& b) {
  return FpRatFunc::make(a.num_ * b.num_, a.den_ * b.den_);
}

FpRatFunc operator/(const FpRatFunc& a, const FpRatFunc& b) {
  if (b.is_zero()) {
    throw InvalidSystemError("division by zero in F_p(t)");
  }
  return FpRatFunc::make(a.num_ * b.den_, a.den_ * b.num_);
}

FpPolySelfMap FpPolySelfMap::make(int degree, std::vector<FpRatFunc> coeffs) {
  if (degree < 3) {
    throw InvalidSystemError("polynomial self-maps need degree >= 3 here");
  }
  if (coeffs.size() != static_cast<std::size_t>(degree) + 1) {
    throw InvalidSystemError("expected degree+1 coefficients A_0..A_d");
  }
  if (coeffs[0].is_zero()) {
    throw InvalidSystemError("leading coefficient A_0 must be nonzero");
  }
  const std::uint64_t p = coeffs[0].characteristic();
  for (const FpRatFunc& c : coeffs) {
    require_same_field(c.characteristic(), p);
  }
  return FpPolySelfMap{degree, std::move(coeffs)};
}

FpRatFunc delta(const FpPolySelfMap& phi) {
  const std::uint64_t p = phi.A[0].characteristic();
  const int d = phi.degree;
  const FpRatFunc two_d = FpRatFunc::constant(p, 2 * d);
  const FpRatFunc d_minus_1 = FpRatFunc::constant(p, d - 1);
  return two_d * phi.A[0] * phi.A[2] - d_minus_1 * phi.A[1] * phi.A[1];
}

RiccatiCoeffs riccati_coeffs(const FpPolySelfMap& phi) {
  const std::uint64_t p = phi.A[0].characteristic();
  const int d = phi.degree;
  if (static_cast<std::uint64_t>(d) % p == 0) {
    throw BadCharacteristicError("p divides deg(phi); d must be a unit");
  }
  const FpRatFunc dlt = delta(phi);
  if (dlt.is_zero()) {
    throw SingularDeltaError("delta_phi = 0; Riccati data undefined");
  }
  const FpRatFunc A0 = phi.A[0], A1 = phi.A[1], A2 = phi.A[2];
  const FpRatFunc A0p = A0.ddt(), A1p = A1.ddt(), A2p = A2.ddt();
  auto k = [&](std::int64_t v) { return FpRatFunc::constant(p, v); };

  const FpRatFunc b_num = k(d) * A0 * A0 * A2p - k(d - 1) * A0 * A1 * A1p -
                          k(d) * A0 * A2 * A0p + k(d - 1) * A1 * A1 * A0p;
  const FpRatFunc f_num = k(static_cast<std::int64_t>(d) * d) * A0 * A0 * A2p -
                          k(static_cast<std::int64_t>(d) * (d - 1)) * A0 * A1 * A1p -
                          k(static_cast<std::int64_t>(d) * (d - 2)) * A0 * A2 * A0p +
                          k(static_cast<std::int64_t>(d) * (d - 2) + 1) * A1 * A1 * A0p;
  const FpRatFunc c_num = A0 * A1 * A2p - k(2) * A0 * A2 * A1p + A1 * A2 * A0p;

  RiccatiCoeffs out;
  out.b = b_num / dlt;
  out.f = f_num / dlt;
  out.c = c_num / dlt;
  out.g = phi.A[static_cast<std::size_t>(d - 1)] * out.c -
          phi.A[static_cast<std::size_t>(d)] * out.f +
          phi.A[static_cast<std::size_t>(d)].ddt();
  return out;
}

ConditionReport check_riccati_condition(const std::vector<FpPolySelfMap>& maps) {
  ConditionReport report;
  const int n = static_cast<int>(maps.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const FpPolySelfMap& phi = maps[static_cast<std::size_t>(i)];
      const FpPolySelfMap& psi = maps[static_cast<std::size_t>(j)];
      const std::uint64_t p = phi.A[0].characteristic();
      std::string reason;
      if (static_cast<std::uint64_t>(phi.degree) % p == 0 ||
          static_cast<std::uint64_t>(psi.degree) % p == 0) {
        reason = "p divides deg(phi)deg(psi)";
      } else if (delta(phi).is_zero()) {
        reason = "delta vanishes for the first map of the pair";
      } else if (delta(psi).is_zero()) {
        reason = "delta vanishes for the second map of the pair";
      } else if (riccati_coeffs(phi).b == riccati_coeffs(psi).f) {
        reason = "b_phi - f_psi = 0";
      }
      if (!reason.empty()) {
        report.pass = false;
        report.failing_i = i;
        report.failing_j = j;
        report.reason = std::move(reason);
        return report;
      }
    }
  }
  return report;
}

} // namespace stochdyn
