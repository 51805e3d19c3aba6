#include "multient/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "multient/errors.hpp"

namespace multient {

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string strip_comment_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string body;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      header = false;
    }
    body += line;
    body += '\n';
  }
  return body;
}

}  // namespace

PureState parse_state_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(strip_comment_lines(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("state file: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("d") || !j.contains("amplitudes")) {
    throw InputError("state file: expected an object with keys n, d, amplitudes");
  }
  if (!j["n"].is_number_integer() || !j["d"].is_number_integer()) {
    throw InputError("state file: n and d must be integers");
  }
  const int n = j["n"].get<int>();
  const int d = j["d"].get<int>();
  if (n < 2 || d < 2 || n > 24) throw InputError("state file: need 2 <= n <= 24 and d >= 2");
  const auto& amps = j["amplitudes"];
  if (!amps.is_array()) throw InputError("state file: amplitudes must be an array");
  const auto expected = ipow(static_cast<std::size_t>(d), n);
  if (amps.size() != expected) {
    std::ostringstream msg;
    msg << "state file: expected " << expected << " amplitudes for n=" << n << ", d=" << d << ", got "
        << amps.size();
    throw InputError(msg.str());
  }
  CVector v(static_cast<Eigen::Index>(expected));
  for (std::size_t k = 0; k < expected; ++k) {
    const auto& a = amps[k];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw InputError("state file: amplitude " + std::to_string(k) + " must be a [re, im] pair");
    }
    const double re = a[0].get<double>();
    const double im = a[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw InputError("state file: amplitude " + std::to_string(k) + " is not finite");
    }
    v(static_cast<Eigen::Index>(k)) = cplx(re, im);
  }
  return make_state(n, d, std::move(v));
}

PureState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read state file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

nlohmann::json state_json(const PureState& state) {
  nlohmann::json j;
  j["n"] = state.parties();
  j["d"] = state.local_dim();
  j["amplitudes"] = nlohmann::json::array();
  for (const auto& a : state.amplitudes()) j["amplitudes"].push_back({a.real(), a.imag()});
  return j;
}

std::string state_file_text(const PureState& state) {
  return std::string(kFormatLine) + "\n" + state_json(state).dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

std::string party_key(const PartySet& parties) {
  std::string key;
  for (std::size_t k = 0; k < parties.size(); ++k) {
    if (k) key += ',';
    key += std::to_string(parties[k] + 1);
  }
  return key;
}

nlohmann::json report_json(const MeasureReport& report, const std::set<std::string>& measures) {
  nlohmann::json j;
  j["format"] = kFormatTag;
  j["n"] = report.n;
  j["d"] = report.d;
  if (measures.count("gme_ame")) j["gme_ame"] = round12(report.gme_ame);
  if (measures.count("scott")) {
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [k, v] : report.scott) s[std::to_string(k)] = round12(v);
    j["scott"] = s;
  }
  if (measures.count("polygon") && report.polygon) {
    j["polygon"] = round12(*report.polygon);
    if (report.polygon_solution) {
      const auto& sol = *report.polygon_solution;
      nlohmann::json g = nlohmann::json::array();
      for (double x : sol.gammas) g.push_back(round12(x));
      j["polygon_solution"] = {{"gammas", g},
                               {"lambda", round12(sol.lambda)},
                               {"residual", round12(sol.residual)},
                               {"ambiguous", sol.ambiguous},
                               {"alternatives", sol.alternatives.size()}};
    }
  }
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [parties, v] : report.purities) p[party_key(parties)] = round12(v);
  j["purities"] = p;
  nlohmann::json k = nlohmann::json::array();
  for (int u : report.flags.k_uniform) k.push_back(u);
  j["flags"] = {{"biseparable", report.flags.biseparable}, {"ame", report.flags.ame}, {"k_uniform", k}};
  return j;
}

}  // namespace multient
