#pragma once

// Named test functions fed to the transforms by the CLI and the checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sbk/dunkl.hpp"
#include "sbk/errors.hpp"
#include "sbk/random.hpp"
#include "sbk/su2.hpp"

namespace sbk {

using RealFunction = std::function<cplx(const ComplexPoint&)>;
using GroupFunction = std::function<cplx(const SU2Element&)>;

/// Known names: one, cubic, trig, gauss. `trig` draws its frequencies and
/// phases from (seed, stream 0x4000).
[[nodiscard]] inline RealFunction real_test_function(const std::string& name,
                                                     std::uint64_t seed = 20240601) {
  if (name == "one") return [](const ComplexPoint&) { return cplx(1.0); };
  if (name == "cubic") {
    return [](const ComplexPoint& q) {
      cplx s{};
      for (const auto& c : q.coords()) s += c * c * c - c;
      return s;
    };
  }
  if (name == "gauss") {
    return [](const ComplexPoint& q) { return std::exp(-0.5 * q.square()); };
  }
  if (name == "trig") {
    CounterRng rng(seed, 0x4000);
    const double k = rng.uniform(0.5, 2.0);
    const double phase = rng.uniform(0.0, 6.283185307179586);
    return [k, phase](const ComplexPoint& q) {
      cplx s{};
      for (const auto& c : q.coords()) s += std::cos(k * c + phase);
      return s;
    };
  }
  throw UsageError("unknown test function '" + name + "' (expected one, cubic, trig, gauss)");
}

inline const std::vector<std::string>& real_test_function_names() {
  static const std::vector<std::string> names{"one", "cubic", "trig", "gauss"};
  return names;
}

/// Group test functions: "one" or "chi<2u>" for the character of spin u,
/// e.g. chi0, chi1, chi2.
[[nodiscard]] inline GroupFunction group_test_function(const std::string& name) {
  if (name == "one") return [](const SU2Element&) { return cplx(1.0); };
  if (name.size() > 3 && name.rfind("chi", 0) == 0) {
    const int twice = std::stoi(name.substr(3));
    const HalfInteger u = HalfInteger::from_twice(twice);
    return [u](const SU2Element& x) { return character(u, x.matrix()); };
  }
  throw UsageError("unknown group test function '" + name + "' (expected one or chi<2u>)");
}

}  // namespace sbk
