#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dimerbell/critical.hpp"
#include "dimerbell/dimers.hpp"
#include "dimerbell/lattice.hpp"

namespace dimerbell {

// ordered_json keeps insertion order, so serialized outputs are byte-stable
// across runs with the same inputs.
using ordered_json = nlohmann::ordered_json;

// FNV-1a over raw bytes; used to fingerprint serialized inputs in outputs.
std::uint64_t fnv1a(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

ordered_json lattice_to_json(const Lattice& lattice);

// {"n": int, "boundary": str, "coverings": [[edge_idx,...],...]}
ordered_json coverings_to_json(const Lattice& lattice,
                               const std::vector<DimerCovering>& coverings);

struct CoveringFile {
  int n = 0;
  Boundary boundary = Boundary::Torus;
  std::vector<DimerCovering> coverings;
};

// Accepts any document containing the covering-file keys; extra keys are
// ignored. Throws std::runtime_error on malformed content.
CoveringFile coverings_from_json(const ordered_json& j);

// {"classes": [{"id": int, "representative": int, "members": [int,...]},...]}
// where representative is the covering index of the lexicographically least
// member.
ordered_json classes_to_json(const std::vector<CoveringClass>& classes);

std::vector<CoveringClass> classes_from_json(const ordered_json& j,
                                             const std::vector<DimerCovering>& coverings);

// {"class_id", "eps_low", "eps_high", "converged", "trace": [[eps,bc,bq],...]}
// plus bracket and no-crossing detail.
ordered_json violation_to_json(const ViolationResult& v);

// CSV with header epsilon,beta_c,beta_q; values printed with %.17g so a
// parse(write(x)) round trip is exact.
std::string sweep_to_csv(const std::vector<BoundsPoint>& points);
std::vector<BoundsPoint> sweep_from_csv(const std::string& csv);

}  // namespace dimerbell
