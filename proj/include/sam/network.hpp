#pragma once

#include <string>
#include <variant>

#include "sam/amari.hpp"
#include "sam/gb.hpp"
#include "sam/willshaw.hpp"

namespace sam {

enum class ModelKind : std::uint8_t { amari = 0, willshaw = 1, gb = 2 };

using AnyNetwork = std::variant<AmariNetwork, WillshawNetwork, GBNetwork>;

inline ModelKind model_of(const AnyNetwork& net) {
  return static_cast<ModelKind>(net.index());
}

inline const NeuronSpace& space_of(const AnyNetwork& net) {
  return std::visit([](const auto& n) -> const NeuronSpace& {
    return n.space();
  }, net);
}

inline std::uint64_t stored_count_of(const AnyNetwork& net) {
  return std::visit([](const auto& n) { return n.stored_count(); }, net);
}

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

}  // namespace sam
