#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hpart/errors.hpp"
#include "hpart/model.hpp"

namespace hpart {

namespace catalog {

using enum Label;
using enum EdgeKind;

/// No constraints at all.
inline ModelGraph edgeless() { return ModelGraph("m1"); }

inline ModelGraph full_ab() { return ModelGraph("full-ab", {{A, B, Full}}); }

inline ModelGraph dotted_ab() { return ModelGraph("dotted-ab", {{A, B, Dotted}}); }

/// Full 4-cycle A-B-C-D-A; A/C and B/D are twins.
inline ModelGraph m7() {
  return ModelGraph("m7", {{A, B, Full}, {A, D, Full}, {B, C, Full}, {C, D, Full}});
}

/// Full AB, BC; dotted AC, BD, CD.
inline ModelGraph m23() {
  return ModelGraph("m23", {{A, B, Full}, {B, C, Full}, {A, C, Dotted}, {B, D, Dotted}, {C, D, Dotted}});
}

/// Smallest model with N_full(AB) = ABC, N_dot(AB) = D and AD conflicting through B.
inline ModelGraph m13_compatible() {
  return ModelGraph("m13-compatible", {{A, B, Full}, {A, C, Full}, {B, D, Dotted}});
}

/// Full 4-cycle A-B-D-C-A plus dotted AD: possible lists AD and BC, B full to A and D.
inline ModelGraph m10_compatible() {
  ModelGraph m("m10-compatible",
               {{A, B, Full}, {A, C, Full}, {B, D, Full}, {C, D, Full}, {A, D, Dotted}});
  m.set_strategy_hint(Strategy::PairLock);
  return m;
}

/// Full 4-cycle A-B-C-D-A with both diagonals dotted: possible lists AC and BD.
inline ModelGraph m11_compatible() {
  ModelGraph m("m11-compatible", {{A, B, Full},
                                  {B, C, Full},
                                  {C, D, Full},
                                  {A, D, Full},
                                  {A, C, Dotted},
                                  {B, D, Dotted}});
  m.set_strategy_hint(Strategy::PairLock);
  return m;
}

inline std::vector<ModelGraph> builtins() {
  return {edgeless(), full_ab(), dotted_ab(), m7(), m23(), m13_compatible(), m10_compatible(), m11_compatible()};
}

}  // namespace catalog

inline std::optional<ModelGraph> find_builtin(std::string_view name) {
  for (auto& m : catalog::builtins())
    if (m.name() == name) return m;
  return std::nullopt;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Loads a model from a file path, falling back to a built-in catalog name.
inline ModelGraph load_model(const std::string& path_or_name) {
  std::filesystem::path p(path_or_name);
  if (std::filesystem::is_regular_file(p)) return parse_model(read_file(p), p.stem().string());
  if (auto m = find_builtin(path_or_name)) return *m;
  throw std::runtime_error("no model file or built-in model named '" + path_or_name + "'");
}

}  // namespace hpart
