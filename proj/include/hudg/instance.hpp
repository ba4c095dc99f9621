#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hudg/hgeom.hpp"
#include "json.hpp"

namespace hudg {

// SplitMix64; uniform doubles take the top 53 bits.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)

 private:
  std::uint64_t state_;
};

struct Instance {
  double r = 1.0;
  std::vector<HPoint> points;
  std::uint64_t seed = 0;
  std::string generator;
};

Instance gen_random(int n, double R, double r, std::uint64_t seed);
// pairwise distances >= 2r; throws after `max_attempts` rejected samples
Instance gen_mindist(int n, double r, double R, std::uint64_t seed, long max_attempts = 2000000);
// as many points as fit within the attempt budget (never more than n)
Instance gen_mindist_greedy(int n, double r, double R, std::uint64_t seed, long max_attempts);
Instance gen_grid(int k);
Instance gen_star(int n);

nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
std::string serialize(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string format_double(double x);

}  // namespace hudg
