#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "hypersonic/agent.hpp"
#include "hypersonic/beam_agent.hpp"
#include "hypersonic/mcts_agent.hpp"
#include "hypersonic/rhea_agent.hpp"

namespace hypersonic {

struct AgentOptions {
  BeamParams beam;
  MctsParams mcts;
  RheaParams rhea;
};

// kind is one of beam, mcts, rhea, random; throws std::invalid_argument otherwise.
std::unique_ptr<Agent> make_agent(const std::string& kind, std::uint64_t seed, const AgentOptions& options = {});

}  // namespace hypersonic
