#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hudg/graph.hpp"
#include "hudg/hgeom.hpp"

namespace hudg {

struct Wedge {
  Geodesic axis;
  double phi = 0.0;
};

struct Box {
  long index = 0;
  int side = 1;
  std::vector<int> members;
  HPoint b_lo, b_hi;  // on the axis
  HPoint a_lo, a_hi;  // on the hypercycle at distance r
};

struct BoxCover {
  std::vector<Box> boxes;
  std::vector<std::vector<int>> cliques;
  double fitted_constant = 0.0;  // count / ((1 + 1/r) * (1 + log(1/phi)))
};

struct CliqueSeparator {
  std::vector<std::vector<int>> cliques;
  std::vector<int> side_a, side_b;
  Geodesic axis;
  double wedge_half_angle = 0.0;
  HPoint apex;
  int box_count = 0;
  double fitted_constant = 0.0;  // box_count / ((1 + 1/r) * log n)
  // whole components of G - S distributed greedily over two sides
  int greedy_a = 0, greedy_b = 0;
  int max_component = 0;
};

struct SeparatorCheck {
  bool cliques_ok = true;
  bool partition_ok = true;
  std::size_t crossing_edges = 0;
  int max_component = 0;
  int balance_bound = 0;  // ceil(2n/3)
  bool ok() const { return cliques_ok && partition_ok && crossing_edges == 0 && max_component <= balance_bound; }
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::vector<int> partial)
      : std::runtime_error(what), partial_best(std::move(partial)) {}
  std::vector<int> partial_best;
};

Wedge max_gap_wedge(const std::vector<HPoint>& points, const HPoint& apex);
std::vector<int> strip_members(const DiskGraph& g, const Geodesic& axis);
BoxCover box_cover(const DiskGraph& g, const Geodesic& axis, double phi, const std::vector<int>& members);
CliqueSeparator balanced_separator(const DiskGraph& g);
SeparatorCheck check_separator(const DiskGraph& g, const CliqueSeparator& s);

inline constexpr std::uint64_t kDefaultExactBudget = 50'000'000;
IndependentSet separator_exact_is(const DiskGraph& g, std::uint64_t budget = kDefaultExactBudget);

}  // namespace hudg
