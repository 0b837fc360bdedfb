#include "hypersonic/agent_factory.hpp"

#include <stdexcept>

namespace hypersonic {

std::unique_ptr<Agent> make_agent(const std::string& kind, std::uint64_t seed, const AgentOptions& options) {
  if (kind == "beam") return std::make_unique<BeamAgent>(options.beam);
  if (kind == "mcts") return std::make_unique<MctsAgent>(seed, options.mcts);
  if (kind == "rhea") return std::make_unique<RheaAgent>(seed, options.rhea);
  if (kind == "random") return std::make_unique<RandomAgent>(seed);
  throw std::invalid_argument("unknown agent '" + kind + "'");
}

}  // namespace hypersonic
