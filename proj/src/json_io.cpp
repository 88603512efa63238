#include "dimerbell/json_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dimerbell {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ordered_json lattice_to_json(const Lattice& lattice) {
  ordered_json j;
  j["n"] = lattice.n();
  j["boundary"] = to_string(lattice.boundary());
  ordered_json edges = ordered_json::array();
  for (const Edge& e : lattice.edges()) edges.push_back({e.a, e.b});
  j["edges"] = std::move(edges);
  return j;
}

ordered_json coverings_to_json(const Lattice& lattice,
                               const std::vector<DimerCovering>& coverings) {
  ordered_json j;
  j["n"] = lattice.n();
  j["boundary"] = to_string(lattice.boundary());
  ordered_json list = ordered_json::array();
  for (const auto& c : coverings) list.push_back(c.edges);
  j["coverings"] = std::move(list);
  return j;
}

CoveringFile coverings_from_json(const ordered_json& j) {
  try {
    CoveringFile f;
    f.n = j.at("n").get<int>();
    f.boundary = boundary_from_string(j.at("boundary").get<std::string>());
    for (const auto& row : j.at("coverings")) {
      DimerCovering c;
      c.edges = row.get<std::vector<int>>();
      f.coverings.push_back(std::move(c));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed covering file: ") + e.what());
  }
}

ordered_json classes_to_json(const std::vector<CoveringClass>& classes) {
  ordered_json j;
  ordered_json list = ordered_json::array();
  for (const auto& c : classes) {
    ordered_json row;
    row["id"] = c.id;
    row["representative"] = c.members.empty() ? -1 : c.members.front();
    row["members"] = c.members;
    list.push_back(std::move(row));
  }
  j["classes"] = std::move(list);
  return j;
}

std::vector<CoveringClass> classes_from_json(const ordered_json& j,
                                             const std::vector<DimerCovering>& coverings) {
  try {
    std::vector<CoveringClass> out;
    for (const auto& row : j.at("classes")) {
      CoveringClass c;
      c.id = row.at("id").get<int>();
      c.members = row.at("members").get<std::vector<int>>();
      const int rep = row.at("representative").get<int>();
      if (rep < 0 || rep >= static_cast<int>(coverings.size())) {
        throw std::runtime_error("class representative index out of range");
      }
      for (int m : c.members) {
        if (m < 0 || m >= static_cast<int>(coverings.size())) {
          throw std::runtime_error("class member index out of range");
        }
      }
      c.representative = coverings[rep];
      out.push_back(std::move(c));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed class file: ") + e.what());
  }
}

ordered_json violation_to_json(const ViolationResult& v) {
  ordered_json j;
  j["class_id"] = v.class_id;
  j["eps_low"] = v.eps_low;
  j["eps_high"] = v.eps_high;
  j["converged"] = v.converged;
  j["no_crossing_low"] = v.no_crossing_low;
  j["no_crossing_high"] = v.no_crossing_high;
  j["bracket_low"] = {v.bracket_low.first, v.bracket_low.second};
  j["bracket_high"] = {v.bracket_high.first, v.bracket_high.second};
  ordered_json trace = ordered_json::array();
  for (const auto& p : v.trace) trace.push_back({p.epsilon, p.beta_c, p.beta_q});
  j["trace"] = std::move(trace);
  return j;
}

std::string sweep_to_csv(const std::vector<BoundsPoint>& points) {
  std::string out = "epsilon,beta_c,beta_q\n";
  char buf[96];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.epsilon, p.beta_c, p.beta_q);
    out += buf;
  }
  return out;
}

std::vector<BoundsPoint> sweep_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  // Leading '#' lines carry run metadata and are skipped.
  while (std::getline(in, line) && !line.empty() && line.front() == '#') {
  }
  if (line != "epsilon,beta_c,beta_q") {
    throw std::runtime_error("malformed sweep CSV: bad header");
  }
  std::vector<BoundsPoint> out;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    BoundsPoint p;
    char extra;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &p.epsilon, &p.beta_c, &p.beta_q, &extra) !=
        3) {
      throw std::runtime_error("malformed sweep CSV row: " + line);
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace dimerbell
