#include "pwcheck/traces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pwcheck {

namespace {

constexpr double kPi = std::numbers::pi;

// Portable uniform draw in [-1, 1); std distributions differ across libraries.
double symmetric_unit(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::string buf(text);
  std::stringstream ss(buf);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
  }
  return out;
}

}  // namespace

MuProfile MuProfile::constant(double mu0, double mu1, double mut) {
  MuProfile p;
  p.kind_ = Kind::kConstant;
  p.offset_ = {mu0, mu1, mut};
  return p;
}

MuProfile MuProfile::smooth_random(std::uint64_t seed, int harmonics) {
  if (harmonics < 1 || harmonics > 16) {
    throw std::invalid_argument("smooth-random mu profile needs 1..16 harmonics");
  }
  MuProfile p;
  p.kind_ = Kind::kSmoothRandom;
  p.seed_ = seed;
  p.harmonics_ = harmonics;
  std::mt19937_64 rng(seed);
  for (int j = 0; j < 3; ++j) {
    p.offset_[j] = kPi * symmetric_unit(rng);
    p.r_coupling_[j] = 0.5 * symmetric_unit(rng);
    for (int k = 0; k < harmonics; ++k) {
      p.cos_[j][k] = kPi * symmetric_unit(rng) / (k + 1);
      p.sin_[j][k] = kPi * symmetric_unit(rng) / (k + 1);
    }
  }
  return p;
}

MuProfile MuProfile::parse(std::string_view text) {
  if (text == "zero") return zero();
  if (text.starts_with("const:")) {
    const auto v = parse_numbers(text.substr(6));
    if (v.size() != 3) throw std::invalid_argument("const mu profile needs three values");
    return constant(v[0], v[1], v[2]);
  }
  if (text.starts_with("random:")) {
    const std::string_view digits = text.substr(7);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("random mu profile needs an integer seed");
    }
    return smooth_random(seed);
  }
  throw std::invalid_argument("unknown mu profile '" + std::string(text) + "'");
}

std::string MuProfile::to_string() const {
  switch (kind_) {
    case Kind::kZero:
      return "zero";
    case Kind::kConstant: {
      std::ostringstream os;
      os.precision(17);
      os << "const:" << offset_[0] << ',' << offset_[1] << ',' << offset_[2];
      return os.str();
    }
    case Kind::kSmoothRandom:
      return "random:" + std::to_string(seed_);
  }
  return "zero";
}

std::array<double, 3> MuProfile::operator()(double R, double phi) const {
  switch (kind_) {
    case Kind::kZero:
      return {0.0, 0.0, 0.0};
    case Kind::kConstant:
      return offset_;
    case Kind::kSmoothRandom:
      break;
  }
  std::array<double, 3> mu{};
  const double drift = std::sin(std::log1p(std::max(R, 0.0)));
  for (int j = 0; j < 3; ++j) {
    double v = offset_[j] + r_coupling_[j] * drift;
    for (int k = 0; k < harmonics_; ++k) {
      v += cos_[j][k] * std::cos((k + 1) * phi) + sin_[j][k] * std::sin((k + 1) * phi);
    }
    mu[j] = v;
  }
  return mu;
}

LogComplex cosh_log(double rho, double delta) {
  // 2 cosh(rho + i delta) = e^{|rho|} * u with
  // u = cos(delta) (1 + e^{-2|rho|}) + i sgn(rho) sin(delta) (1 - e^{-2|rho|}).
  const long double r = std::abs(static_cast<long double>(rho));
  const long double decay = std::exp(-2.0L * r);
  const long double sign = rho < 0.0 ? -1.0L : 1.0L;
  const long double d = delta;
  const std::complex<long double> u{std::cos(d) * (1.0L + decay),
                                    -sign * std::sin(d) * std::expm1(-2.0L * r)};
  const long double mag = std::abs(u);
  // |u| is O(1) unless cos(delta) cancels against nothing at rho = 0.
  if (mag <= 4.0L * std::numeric_limits<double>::epsilon()) return LogComplex::zero();
  return LogComplex{r + std::log(mag), principal_phase(static_cast<double>(std::arg(u))),
                    false};
}

TraceTriple trace_coordinates(double R, double phi, const PeriodTriangle& tri,
                              const MuProfile& mu) {
  if (!(R >= 0.0)) throw std::invalid_argument("R must be non-negative");
  const Complex rot = std::polar(1.0, 0.5 * phi);
  const double scale = 2.0 * std::sqrt(R);
  const auto [mu0, mu1, mut] = mu(R, phi);

  TraceTriple tt;
  tt.R = R;
  tt.phi = phi;
  tt.X[0] = cosh_log(scale * (rot * tri.a).real(), mu1 - mu0);
  tt.X[1] = cosh_log(scale * (rot * tri.b).real(), mu0 - mut);
  tt.X[2] = cosh_log(scale * (rot * tri.c).real(), mut - mu1);
  return tt;
}

ProjectivePoint projective_normalize(const TraceTriple& tt) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::array<long double, 4> raw{0.0L, 0.0L, 0.0L, 0.0L};
  ProjectivePoint p;
  p.phase[0] = 0.0;
  long double top = 0.0L;
  for (int j = 0; j < 3; ++j) {
    const auto& x = tt.X[j];
    raw[j + 1] = x.is_zero ? -std::numeric_limits<long double>::infinity() : x.logmag;
    p.phase[j + 1] = x.is_zero ? 0.0 : x.phase;
    top = std::max(top, raw[j + 1]);
  }
  for (int j = 0; j < 4; ++j) {
    p.ell[j] = std::isinf(raw[j]) ? kNegInf : static_cast<double>(raw[j] - top);
  }
  return p;
}

LogComplex fricke_residual(const TraceTriple& tt, const FrickeConstants& s) {
  const auto& [x1, x2, x3] = tt.X;
  const std::array<LogComplex, 8> terms{
      x1 * x2 * x3,
      x1.pow(2),
      x2.pow(2),
      x3.pow(2),
      -(LogComplex::from_complex(s[0]) * x1),
      -(LogComplex::from_complex(s[1]) * x2),
      -(LogComplex::from_complex(s[2]) * x3),
      LogComplex::from_complex(s[3]),
  };
  return log_sum(terms);
}

}  // namespace pwcheck
