#include "config.hpp"

#include <fstream>
#include <sstream>

#include "stochdyn/errors.hpp"
#include "stochdyn/factor.hpp"

namespace stochdyn::cli {

namespace {

std::vector<Int> parse_int_list(const Json& j) {
  std::vector<Int> out;
  for (const auto& v : j) {
    if (v.is_number_integer()) {
      out.emplace_back(static_cast<long>(v.get<std::int64_t>()));
    } else if (v.is_string()) {
      out.emplace_back(v.get<std::string>());
    } else {
      throw InvalidSystemError("coefficients must be integers or strings");
    }
  }
  return out;
}

Json int_list(const std::vector<Int>& coeffs) {
  Json out = Json::array();
  for (const Int& c : coeffs) {
    if (c.fits_slong_p()) {
      out.push_back(c.get_si());
    } else {
      out.push_back(c.get_str());
    }
  }
  return out;
}

FpPoly parse_fp_poly(const Json& j, std::uint64_t p) {
  std::vector<std::uint64_t> coeffs;
  for (const auto& v : j) {
    std::int64_t raw = v.get<std::int64_t>();
    std::int64_t r = raw % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    coeffs.push_back(static_cast<std::uint64_t>(r));
  }
  return FpPoly(p, std::move(coeffs));
}

Json fp_poly_json(const FpPoly& poly) {
  Json out = Json::array();
  for (std::uint64_t c : poly.coeffs()) out.push_back(c);
  if (poly.is_zero()) out.push_back(0);
  return out;
}

} // namespace

SystemConfig parse_config(const Json& j) {
  SystemConfig config;
  if (j.contains("maps")) {
    std::vector<RationalMapLift> maps;
    for (const auto& m : j.at("maps")) {
      std::vector<Int> num = parse_int_list(m.at("num"));
      std::vector<Int> den = m.contains("den") ? parse_int_list(m.at("den"))
                                               : std::vector<Int>{Int(1)};
      maps.push_back(RationalMapLift::from_affine(std::move(num), std::move(den)));
    }
    std::vector<Rat> weights;
    if (j.contains("weights")) {
      for (const auto& w : j.at("weights")) {
        weights.push_back(rat_from_string(w.get<std::string>()));
      }
      config.system = GeneratingSystem::make(std::move(maps), std::move(weights));
    } else {
      config.system = GeneratingSystem::uniform(std::move(maps));
    }
  }
  if (j.contains("family")) {
    const auto& f = j.at("family");
    const long B = f.at("B").get<long>();
    const std::string law = f.at("law").get<std::string>();
    const double param = f.at("param").get<double>();
    if (law == "geometric") {
      config.family = UnicriticalFamily::geometric(B, param);
    } else if (law == "poisson") {
      config.family = UnicriticalFamily::poisson(B, param);
    } else {
      throw InvalidSystemError("family law must be geometric or poisson");
    }
  }
  if (j.contains("fp")) {
    const auto& fp = j.at("fp");
    const std::uint64_t p = fp.at("p").get<std::uint64_t>();
    std::vector<FpPolySelfMap> maps;
    for (const auto& m : fp.at("maps")) {
      std::vector<FpRatFunc> coeffs;
      for (const auto& c : m.at("coeffs")) {
        FpPoly num = parse_fp_poly(c.at("num"), p);
        FpPoly den = c.contains("den") ? parse_fp_poly(c.at("den"), p)
                                       : FpPoly::constant(p, 1);
        coeffs.push_back(FpRatFunc::make(std::move(num), std::move(den)));
      }
      const int degree = static_cast<int>(coeffs.size()) - 1;
      maps.push_back(FpPolySelfMap::make(degree, std::move(coeffs)));
    }
    config.fp_maps = std::move(maps);
    config.fp_characteristic = p;
  }
  if (!config.system && !config.family && !config.fp_maps) {
    throw InvalidSystemError("config defines no maps, family, or fp block");
  }
  return config;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidSystemError("cannot open config file: " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidSystemError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

Json serialize_config(const SystemConfig& config) {
  Json out = Json::object();
  if (config.system) {
    Json maps = Json::array();
    for (const RationalMapLift& phi : config.system->maps()) {
      Json m = Json::object();
      m["num"] = int_list(phi.numerator().coeffs);
      m["den"] = int_list(phi.denominator().coeffs);
      maps.push_back(std::move(m));
    }
    out["maps"] = std::move(maps);
    Json weights = Json::array();
    for (const Rat& w : config.system->weights()) {
      weights.push_back(rat_to_string(w));
    }
    out["weights"] = std::move(weights);
  }
  if (config.family) {
    Json f = Json::object();
    f["B"] = config.family->B;
    f["law"] = config.family->law == UnicriticalFamily::Law::Geometric
                   ? "geometric"
                   : "poisson";
    f["param"] = config.family->param;
    out["family"] = std::move(f);
  }
  if (config.fp_maps) {
    Json fp = Json::object();
    fp["p"] = config.fp_characteristic;
    Json maps = Json::array();
    for (const FpPolySelfMap& phi : *config.fp_maps) {
      Json m = Json::object();
      Json coeffs = Json::array();
      for (const FpRatFunc& c : phi.A) {
        Json entry = Json::object();
        entry["num"] = fp_poly_json(c.num());
        entry["den"] = fp_poly_json(c.den());
        coeffs.push_back(std::move(entry));
      }
      m["coeffs"] = std::move(coeffs);
      maps.push_back(std::move(m));
    }
    fp["maps"] = std::move(maps);
    out["fp"] = std::move(fp);
  }
  return out;
}

ProjectivePoint parse_point(const std::string& s) {
  return point_from_string(s);
}

DivisorForm parse_divisor(const std::string& s) {
  std::vector<Int> coeffs;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, ',')) {
    coeffs.emplace_back(item);
  }
  return DivisorForm::make(BinaryForm(std::move(coeffs)));
}

Place parse_place(const std::string& s) {
  if (s == "inf" || s == "oo" || s == "arch") {
    return Place::arch();
  }
  Int p(s);
  if (p < 2 || !is_probable_prime(p)) {
    throw InvalidSystemError("place must be 'inf' or a prime: " + s);
  }
  return Place::prime(std::move(p));
}

Word parse_word_list(const std::string& s) {
  Word out;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, ',')) {
    out.push_back(std::stoi(item));
  }
  if (out.empty()) {
    throw InvalidSystemError("empty word list");
  }
  return out;
}

} // namespace stochdyn::cli
