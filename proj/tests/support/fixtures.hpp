#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lgnv/netlist.hpp"
#include "lgnv/schema.hpp"

namespace lgnv::test {

/// One binary sensitive feature, bits (s0, s1).
inline FeatureSchema sensitive_only_schema() {
  return FeatureSchema({CategoricalFeature{"s", 2, true, {}}});
}

/// Class 0 copies bit 0 and class 1 copies bit 1, so the class follows the
/// sensitive feature with confidence 1.
inline Netlist flip_netlist() {
  Netlist n;
  n.input_width = 2;
  n.num_classes = 2;
  n.block_size = 1;
  n.layers = {{Gate{GateOp::kPassA, NodeRef::input(0), NodeRef::input(0)},
               Gate{GateOp::kPassA, NodeRef::input(1), NodeRef::input(1)}}};
  return n;
}

/// Every output gate is the constant `op` (kTrue or kFalse).
inline Netlist constant_netlist(std::uint32_t width, std::uint32_t classes,
                                std::uint32_t block, GateOp op = GateOp::kTrue) {
  Netlist n;
  n.input_width = width;
  n.num_classes = classes;
  n.block_size = block;
  n.layers.emplace_back(classes * block, Gate{op, NodeRef::input(0), NodeRef::input(0)});
  return n;
}

struct Instance {
  FeatureSchema schema;
  Netlist netlist;
};

/// Random schema of 1-2 thermometer features (B <= 4) and 1-2 categorical
/// features (m <= 3, the first one sensitive) with total width <= 12, and a
/// random netlist with 1-2 hidden layers of <= 8 gates over it.
inline Instance random_instance(std::mt19937_64& rng) {
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  for (;;) {
    std::vector<Feature> features;
    const std::uint32_t num = pick(1, 2);
    const std::uint32_t cat = pick(1, 2);
    std::uint32_t width = 0;
    for (std::uint32_t i = 0; i < num; ++i) {
      NumericFeature f;
      f.name = "n" + std::to_string(i);
      f.bits = pick(1, 4);
      f.thresholds = equal_width_thresholds(0.0, 1.0, f.bits);
      f.lo = 0.0;
      f.hi = 1.0;
      width += f.bits;
      features.emplace_back(std::move(f));
    }
    for (std::uint32_t i = 0; i < cat; ++i) {
      CategoricalFeature f{"c" + std::to_string(i), pick(2, 3), i == 0, {}};
      width += f.arity;
      features.emplace_back(std::move(f));
    }
    if (width > 12) continue;
    std::shuffle(features.begin(), features.end(), rng);
    FeatureSchema schema(std::move(features));

    const std::uint32_t classes = pick(2, 3);
    const std::uint32_t block = std::vector<std::uint32_t>{1, 2, 4}[pick(0, 2)];
    std::vector<std::uint32_t> sizes;
    const std::uint32_t hidden = pick(1, 2);
    for (std::uint32_t i = 0; i < hidden; ++i) sizes.push_back(pick(2, 8));
    sizes.push_back(classes * block);
    Netlist net = random_netlist(schema.width(), sizes, classes, block, rng());
    return {std::move(schema), std::move(net)};
  }
}

}  // namespace lgnv::test
