#ifndef CCLS_BUILTIN_HPP
#define CCLS_BUILTIN_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccls/error.hpp"

namespace ccls {

/// A built-in example network. `source` has no init line; `initial` lists
/// the species that receive the total, one per component with molecules.
struct BuiltinExample {
  std::string name;
  std::string description;
  std::string source;
  std::vector<std::string> initial;
  bool total_parameter = false;  // defines param Dtot, kept equal to the total
};

inline const std::vector<BuiltinExample>& builtin_examples() {
  static const std::vector<BuiltinExample> examples{
      {"cascade", "two irreversible conversions Z -> W -> Y",
       R"(species W Y Z
param alpha = 1
param beta = 1
reaction r1: Z -> W @ mass_action(alpha)
reaction r2: W -> Y @ mass_action(beta)
)",
       {"Z"}},
      {"disconnected", "two independent conversion systems",
       R"(species S1 S2 S3 S4
param k1 = 1
param k2 = 1
param k3 = 1
reaction r1: S1 -> S2 @ mass_action(k1)
reaction r2: S2 -> S1 @ mass_action(k2)
reaction r3: S3 -> S4 @ mass_action(k3)
)",
       {"S1", "S3"}},
      {"crossdep", "two conversion systems coupled through catalysts",
       R"(species S1 S2 S3 S4 S5
param k1 = 1
param k2 = 1
param k3 = 1
param k4 = 1
reaction r1: S1 + S4 -> S2 + S4 @ mass_action(k1)
reaction r2: S2 + S5 -> S1 + S5 @ mass_action(k2)
reaction r3: S3 -> S4 @ mass_action(k3)
reaction r4: S4 -> S3 @ mass_action(k4)
)",
       {"S1", "S3", "S5"}},
      {"chromatin2d", "histone modification circuit with activating and repressive marks",
       R"(species DR DA D
param kW0A = 1
param kWA = 1
param kMA = 1
param kEA = 1
param eps = 1
param mu = 1
param btilde = 1
param kW0R = 1
param kWR = 1
param kMR = 1
param V = 1
param Dtot = 1
reaction r1: D -> DA @ mass_action(kW0A + kWA)
reaction r2: D + DA -> 2 DA @ mass_action(kMA / V)
reaction r3: DA -> D @ mass_action(eps * kMA * Dtot / V)
reaction r4: DA + DR -> D + DR @ mass_action(kEA / V)
reaction r5: D -> DR @ mass_action(kW0R + kWR)
reaction r6: D + DR -> 2 DR @ mass_action(kMR / V)
reaction r7: DR -> D @ mass_action(mu * btilde * eps * kMA * Dtot / V)
reaction r8: DR + DA -> D + DA @ mass_action(mu * kEA / V)
)",
       {"D"}, true},
      {"chromatin4d", "chromatin circuit with histone modifications and DNA methylation",
       R"(species DR12 DA DR1 DR2 D
param kW0A = 1
param kWA = 1
param kMA = 1
param kEA = 1
param eps = 1
param mu = 1
param btilde = 1
param mup = 1
param beta = 1
param k1W0 = 1
param k1W = 1
param k2W0 = 1
param k2W = 1
param kM = 1
param kbarM = 1
param kpM = 1
param V = 1
param Dtot = 1
reaction r1: D -> DA @ mass_action(kW0A + kWA)
reaction r2: D + DA -> 2 DA @ mass_action(kMA / V)
reaction r3: DA -> D @ mass_action(eps * kMA * Dtot / V)
reaction r4: DA + DR1 -> D + DR1 @ mass_action(kEA / V)
reaction r5: DA + DR12 -> D + DR12 @ mass_action(2 * kEA / V)
reaction r6: DA + DR2 -> D + DR2 @ mass_action(kEA / V)
reaction r7: D -> DR1 @ mass_action(k1W0 + k1W)
reaction r8: D -> DR2 @ mass_action(k2W0 + k2W)
reaction r9: DR2 -> DR12 @ mass_action(k1W0)
reaction r10: DR1 -> DR12 @ mass_action(k2W0)
reaction r11: D + DR2 -> 2 DR2 @ mass_action(kM / V)
reaction r12: D + DR12 -> DR2 + DR12 @ mass_action((kM + kbarM) / V)
reaction r13: DR1 + DR2 -> DR12 + DR2 @ mass_action(kM / V)
reaction r14: DR1 + DR12 -> 2 DR12 @ mass_action((kM + kbarM) / V)
reaction r15: D + DR2 -> DR1 + DR2 @ mass_action(kpM / V)
reaction r16: D + DR12 -> DR1 + DR12 @ mass_action(kpM / V)
reaction r17: D + DR1 -> DR2 + DR1 @ mass_action(kbarM / V)
reaction r18: 2 DR2 -> DR12 + DR2 @ mass_action(kpM / (2 * V))
reaction r19: DR2 + DR12 -> 2 DR12 @ mass_action(kpM / V)
reaction r20: 2 DR1 -> DR12 + DR1 @ mass_action(kbarM / (2 * V))
reaction r21: DR2 -> D @ mass_action(btilde * mu * eps * kMA * Dtot / V)
reaction r22: DR2 + DA -> D + DA @ mass_action(mu * kEA / V)
reaction r23: DR1 -> D @ mass_action(beta * mup * eps * kMA * Dtot / V)
reaction r24: DR1 + DA -> D + DA @ mass_action(mup * kEA / V)
reaction r25: DR12 -> DR2 @ mass_action(beta * mup * eps * kMA * Dtot / V)
reaction r26: DR12 + DA -> DR2 + DA @ mass_action(mup * kEA / V)
reaction r27: DR12 -> DR1 @ mass_action(btilde * mu * eps * kMA * Dtot / V)
reaction r28: DR12 + DA -> DR1 + DA @ mass_action(mu * kEA / V)
)",
       {"D"}, true},
      {"biparallel", "one species converted to another along two parallel routes",
       R"(species Y Z W J
param k1 = 1
param k2 = 1
param k3 = 1
param k4 = 1
reaction r1: J -> Y @ mass_action(k1)
reaction r2: J -> Z @ mass_action(k2)
reaction r3: Y -> W @ mass_action(k3)
reaction r4: Z -> W @ mass_action(k4)
)",
       {"J"}},
  };
  return examples;
}

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& e : builtin_examples()) names.push_back(e.name);
  return names;
}

inline const BuiltinExample* find_builtin(std::string_view name) {
  for (const auto& e : builtin_examples()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

/// Source text of a built-in with every initial species set to `total`
/// (and Dtot = total where the example defines it).
inline std::string builtin_source(std::string_view name, long long total = 2) {
  const BuiltinExample* e = find_builtin(name);
  if (!e) {
    std::string valid;
    for (const auto& n : builtin_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ModelError("unknown example '" + std::string(name) + "'; valid names: " + valid);
  }
  if (total < 0) throw ModelError("total must be non-negative");
  std::string text = "# " + e->description + "\n" + e->source;
  if (e->total_parameter) {
    const std::string from = "param Dtot = 1\n";
    text.replace(text.find(from), from.size(), "param Dtot = " + std::to_string(total) + "\n");
  }
  text += "init ";
  for (std::size_t i = 0; i < e->initial.size(); ++i) {
    text += (i ? ", " : "") + e->initial[i] + " = " + std::to_string(total);
  }
  return text + "\n";
}

}  // namespace ccls

#endif  // CCLS_BUILTIN_HPP
