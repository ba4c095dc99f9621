#include "hudg/instance.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace hudg {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

HPoint sample_area_uniform(SplitMix64& rng, double R) {
  double u = rng.uniform();
  double theta = kTwoPi * rng.uniform();
  double rho = 2.0 * std::asinh(std::sqrt(u) * std::sinh(0.5 * R));
  if (rho == 0.0) return HPoint{};
  return HPoint(rho, theta);
}

}  // namespace

Instance gen_random(int n, double R, double r, std::uint64_t seed) {
  if (n < 1 || !(R > 0.0) || !(r > 0.0)) throw std::invalid_argument("gen_random needs n >= 1, R > 0, r > 0");
  SplitMix64 rng(seed);
  Instance inst{r, {}, seed, "random"};
  inst.points.reserve(n);
  for (int i = 0; i < n; ++i) inst.points.push_back(sample_area_uniform(rng, R));
  return inst;
}

Instance gen_mindist_greedy(int n, double r, double R, std::uint64_t seed, long max_attempts) {
  if (n < 1 || !(R > 0.0) || !(r > 0.0)) throw std::invalid_argument("gen_mindist needs n >= 1, R > 0, r > 0");
  SplitMix64 rng(seed);
  Instance inst{r, {}, seed, "mindist"};
  long attempts = 0;
  while (static_cast<int>(inst.points.size()) < n && attempts < max_attempts) {
    ++attempts;
    HPoint p = sample_area_uniform(rng, R);
    bool ok = true;
    for (const HPoint& q : inst.points)
      if (dist(p, q) < 2.0 * r) {
        ok = false;
        break;
      }
    if (ok) inst.points.push_back(p);
  }
  return inst;
}

Instance gen_mindist(int n, double r, double R, std::uint64_t seed, long max_attempts) {
  Instance inst = gen_mindist_greedy(n, r, R, seed, max_attempts);
  if (static_cast<int>(inst.points.size()) < n)
    throw std::runtime_error("gen_mindist: rejection budget exhausted after " +
                             std::to_string(inst.points.size()) + " points");
  return inst;
}

Instance gen_grid(int k) {
  if (k < 2) throw std::invalid_argument("gen_grid needs k >= 2");
  const double n = static_cast<double>(k) * k;
  const double n3 = n * n * n;
  Instance inst{1.0 / n3, {}, 0, "grid"};
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) inst.points.push_back(from_halfplane(2.0 * i / n3, 1.0 + 2.0 * j / n3));
  return inst;
}

Instance gen_star(int n) {
  if (n < 3) throw std::invalid_argument("gen_star needs n >= 3");
  const double r = std::log(static_cast<double>(n));
  Instance inst{r, {HPoint{}}, 0, "star"};
  for (int i = 0; i + 1 < n; ++i) inst.points.push_back(HPoint(2.0 * r, kTwoPi * i / (n - 1)));
  return inst;
}

nlohmann::json to_json(const Instance& inst) {
  nlohmann::json pts = nlohmann::json::array();
  for (const HPoint& p : inst.points) pts.push_back({p.radial, p.angle});
  nlohmann::json j{{"r", inst.r}, {"points", pts}};
  if (!inst.generator.empty()) {
    j["generator"] = inst.generator;
    j["seed"] = inst.seed;
  }
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  inst.r = j.at("r").get<double>();
  if (!(inst.r > 0.0)) throw std::invalid_argument("instance radius must be positive");
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("points must be [radial, angle] pairs");
    inst.points.push_back(HPoint(p[0].get<double>(), p[1].get<double>()));
  }
  if (j.contains("seed")) inst.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("generator")) inst.generator = j["generator"].get<std::string>();
  return inst;
}

std::string serialize(const Instance& inst) { return to_json(inst).dump(); }

Instance parse_instance(const std::string& text) { return instance_from_json(nlohmann::json::parse(text)); }

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace hudg
