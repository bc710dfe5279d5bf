#include "walkrank/errors.hpp"

#include <sstream>

namespace walkrank {
namespace {

std::string join_ids(const std::vector<NodeId>& ids) {
  std::ostringstream out;
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < ids.size() && i < kShown; ++i) {
    if (i > 0) out << ", ";
    out << ids[i];
  }
  if (ids.size() > kShown) out << ", ... (" << ids.size() << " total)";
  return out.str();
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(Kind::input, "line " + std::to_string(line) + ": " + message), line_(line) {}

DanglingNodeError::DanglingNodeError(std::vector<NodeId> nodes)
    : Error(Kind::input, "dangling nodes without out-going links: " + join_ids(nodes)),
      nodes_(std::move(nodes)) {}

ConvergenceError::ConvergenceError(const std::string& algorithm, std::size_t iterations,
                                   double residual, std::vector<double> last_iterate)
    : Error(Kind::numerical, algorithm + " did not converge within " +
                                 std::to_string(iterations) +
                                 " iterations (residual " + std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual),
      last_iterate_(std::move(last_iterate)) {}

ReachabilityError::ReachabilityError(std::vector<NodeId> trapped)
    : Error(Kind::numerical,
            "nodes cannot reach any absorbing node: " + join_ids(trapped)),
      trapped_(std::move(trapped)) {}

InsufficientSamplesError::InsufficientSamplesError(std::vector<NodeId> nodes,
                                                   std::size_t min_returns)
    : Error(Kind::numerical, "fewer than " + std::to_string(min_returns) +
                                 " return times recorded for nodes: " + join_ids(nodes) +
                                 "; increase the number of walk steps"),
      nodes_(std::move(nodes)) {}

ColdStartError::ColdStartError(NodeId user)
    : Error(Kind::input,
            "user " + std::to_string(user) + " has collected no items (cold start)") {}

}  // namespace walkrank
