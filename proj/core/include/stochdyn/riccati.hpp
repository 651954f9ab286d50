#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stochdyn {

// Dense polynomial over F_p in t, p an odd prime below 2^31.
class FpPoly {
public:
  FpPoly() = default;
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  static FpPoly zero(std::uint64_t p) { return FpPoly(p, {}); }
  static FpPoly constant(std::uint64_t p, std::int64_t value);

  std::uint64_t characteristic() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for 0
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
  std::uint64_t leading() const { return coeffs_.back(); }

  FpPoly derivative() const;
  FpPoly monic() const;
  std::string to_string() const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) {
    return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
  }

  static std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
  static FpPoly gcd(FpPoly a, FpPoly b);

private:
  void trim();
  std::uint64_t p_ = 0;
  std::vector<std::uint64_t> coeffs_; // ascending in t, trimmed
};

// Element of F_p(t): reduced fraction with monic denominator.
class FpRatFunc {
public:
  FpRatFunc() = default;
  static FpRatFunc make(FpPoly num, FpPoly den);
  static FpRatFunc from_poly(FpPoly num);
  static FpRatFunc constant(std::uint64_t p, std::int64_t value);

  std::uint64_t characteristic() const { return num_.characteristic(); }
  const FpPoly& num() const { return num_; }
  const FpPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // d/dt by the quotient rule, exact in F_p(t).
  FpRatFunc ddt() const;

  std::string to_string() const;

  friend FpRatFunc operator+(const FpRatFunc& a, const FpRatFunc& b);
  friend FpRatFunc operator-(const FpRatFunc& a, const FpRatFunc& b);
  friend FpRatFunc operator*(const FpRatFunc& a, const FpRatFunc& b);
  friend FpRatFunc operator/(const FpRatFunc& a, const FpRatFunc& b);
  friend bool operator==(const FpRatFunc& a, const FpRatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

private:
  FpPoly num_;
  FpPoly den_;
};

// Polynomial self-map phi(x) = A_0 x^d + A_1 x^(d-1) + ... + A_d with
// coefficients in F_p(t), d >= 3 and A_0 != 0.
struct FpPolySelfMap {
  int degree = 0;
  std::vector<FpRatFunc> A; // A[0..d]

  static FpPolySelfMap make(int degree, std::vector<FpRatFunc> coeffs);
};

// delta_phi = 2d A_0 A_2 - (d-1) A_1^2.
FpRatFunc delta(const FpPolySelfMap& phi);

// The uniquely determined Riccati data of phi (a = e = 0 throughout):
//   b = (d A0^2 A2' - (d-1) A0 A1 A1' - d A0 A2 A0' + (d-1) A1^2 A0') / delta
//   f = (d^2 A0^2 A2' - d(d-1) A0 A1 A1' - d(d-2) A0 A2 A0'
//        + (d(d-2)+1) A1^2 A0') / delta
//   c = (A0 A1 A2' - 2 A0 A2 A1' + A1 A2 A0') / delta
//   g = A_{d-1} c - A_d f + A_d'
struct RiccatiCoeffs {
  FpRatFunc b, f, c, g;
};
RiccatiCoeffs riccati_coeffs(const FpPolySelfMap& phi);

// deg(phi) deg(psi) delta_phi delta_psi (b_phi - f_psi) != 0 for every
// ordered pair, including phi = psi.
struct ConditionReport {
  bool pass = true;
  int failing_i = -1;
  int failing_j = -1;
  std::string reason;
};
ConditionReport check_riccati_condition(const std::vector<FpPolySelfMap>& maps);

} // namespace stochdyn
