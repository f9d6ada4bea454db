#pragma once

#include "sbseries/composition.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace sbs::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kOrderFailure = 2;

struct CorrectionTerm {
  Tree theta;                // implicit-part tree
  std::vector<Tree> omega;   // trees evaluated by Phi
};

// One row of the correction table: a tree shape with distinct labels
// 1..n assigned in preorder, its correction terms and its exact weight.
struct CorrectionRow {
  Tree shape;     // all nodes colored 1
  Tree labeled;   // colors 1..n in preorder
  std::vector<CorrectionTerm> terms;
  std::vector<Decomposition> shape_decompositions;  // theta != empty, shape
  IntegralExpr phi{Calculus::stratonovich};
};

std::vector<CorrectionRow> correction_table(std::size_t max_nodes);

// Renders node colors 1, 2, 3, ... as i, j, k, ...
std::string letter_labels(const std::string& encoding);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sbs::cli
