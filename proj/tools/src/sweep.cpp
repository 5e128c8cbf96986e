#include "mwqi/cli/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mwqi::cli {
namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    v[i] = log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min);
  }
  // Endpoints exactly as given.
  v.front() = min;
  v.back() = max;
  return v;
}

Axis parse_axis(std::string_view name, std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    auto c = spec.find(':', pos);
    parts.push_back(spec.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw std::invalid_argument("axis '" + std::string(name) + "' must be min:max:count[:log]");
  }
  Axis a;
  a.name = std::string(name);
  a.min = parse_double(parts[0]);
  a.max = parse_double(parts[1]);
  const double count = parse_double(parts[2]);
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "lin") {
      throw std::invalid_argument("axis spacing must be 'log' or 'lin'");
    }
    a.log = parts[3] == "log";
  }
  if (!(count >= 2.0) || count != std::floor(count) || count > 1e7) {
    throw std::invalid_argument("axis '" + a.name + "' needs an integer point count >= 2");
  }
  a.count = static_cast<std::size_t>(count);
  if (!(std::isfinite(a.min) && std::isfinite(a.max) && a.min < a.max)) {
    throw std::invalid_argument("axis '" + a.name + "' needs finite min < max");
  }
  if (a.log && !(a.min > 0.0)) throw std::invalid_argument("log axis '" + a.name + "' needs min > 0");
  return a;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MWQI_THREADS")) {
    unsigned v = 0;
    std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace mwqi::cli
