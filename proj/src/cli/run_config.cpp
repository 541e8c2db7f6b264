// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "xxzgap/errors.hpp"

namespace xxzgap::cli {

namespace {

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw InvalidArgument("cannot parse " + what + " from '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream is(text);
  while (std::getline(is, part, sep)) out.push_back(part);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::generic: return "generic";
    case Mode::chain_droplet: return "chain-droplet";
    case Mode::strip_droplet: return "strip-droplet";
  }
  return "generic";
}

Mode parse_mode(const std::string& text) {
  if (text == "generic") return Mode::generic;
  if (text == "chain-droplet") return Mode::chain_droplet;
  if (text == "strip-droplet") return Mode::strip_droplet;
  throw InvalidArgument("unknown mode '" + text + "'");
}

std::vector<double> DeltaRange::values() const {
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + 1e-9 * step) break;
    out.push_back(v);
  }
  return out;
}

DeltaRange parse_delta_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidArgument("delta range must be start:stop:step");
  DeltaRange r{parse_number<double>(parts[0], "delta start"), parse_number<double>(parts[1], "delta stop"),
               parse_number<double>(parts[2], "delta step")};
  if (!(r.step > 0.0) || !std::isfinite(r.start) || !std::isfinite(r.stop) || r.stop < r.start) {
    throw InvalidArgument("delta range needs finite start <= stop and step > 0");
  }
  return r;
}

std::pair<int, int> parse_n_range(const std::string& text) {
  const auto parts = split(text, ':');
  std::pair<int, int> r;
  if (parts.size() == 1) {
    r.first = r.second = parse_number<int>(parts[0], "N");
  } else if (parts.size() == 2) {
    r = {parse_number<int>(parts[0], "N"), parse_number<int>(parts[1], "N")};
  } else {
    throw InvalidArgument("N must be an integer or lo:hi");
  }
  if (r.first < 0 || r.second < r.first) throw InvalidParticleNumber("N range needs 0 <= lo <= hi");
  return r;
}

BaseGraph build_graph(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InvalidArgument("graph spec must be kind:params, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "file") return read_edge_list_file(arg);
  if (kind == "cycle") return BaseGraph::cycle(parse_number<int>(arg, "cycle length"));
  if (kind == "path") return BaseGraph::path(parse_number<int>(arg, "path length"));
  if (kind == "strip" || kind == "cylinder") {
    const auto x = arg.find('x');
    if (x == std::string::npos) throw InvalidArgument(kind + " needs nxL");
    const int n = parse_number<int>(arg.substr(0, x), "strip length");
    const int L = parse_number<int>(arg.substr(x + 1), "strip width");
    return kind == "strip" ? BaseGraph::strip(n, L, false) : BaseGraph::cylinder(n, L);
  }
  throw InvalidArgument("unknown graph kind '" + kind + "'");
}

std::vector<double> read_field_file(const std::string& path, int n_sites) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open field file '" + path + "'");
  std::vector<double> field(static_cast<std::size_t>(n_sites), 0.0);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    is.imbue(std::locale::classic());
    int site;
    double w;
    if (!(is >> site)) continue;
    if (!(is >> w)) throw ParseError("field file line " + std::to_string(line_no) + ": expected 'site W'");
    std::string rest;
    if (is >> rest) throw ParseError("field file line " + std::to_string(line_no) + ": trailing text");
    if (site < 0 || site >= n_sites) throw ParseError("field file line " + std::to_string(line_no) + ": site out of range");
    if (!std::isfinite(w)) throw ParseError("field file line " + std::to_string(line_no) + ": non-finite value");
    field[static_cast<std::size_t>(site)] = w;
  }
  return field;
}

void RunConfig::validate() const {
  if (M && (*M < 1 || *M > 255)) throw InvalidArgument("M must be in 1..255");
  if (delta && !(*delta > 0.0 && std::isfinite(*delta))) throw InvalidDelta("delta must be positive and finite");
  if (delta_range && !(delta_range->start > 0.0)) throw InvalidDelta("delta range must start above 0");
  if (k_lowest < 0) throw InvalidArgument("--k-lowest must be non-negative");
  if (threads < 1) throw InvalidArgument("--threads must be at least 1");
  if (caps.max_configs == 0 || caps.max_dense == 0) throw InvalidArgument("caps must be positive");

  const bool needs_instance = command != "equivalence";
  if (needs_instance) {
    if (graph.empty()) throw InvalidArgument(command + " needs --graph");
    if (!M) throw InvalidArgument(command + " needs --M");
    if (!N) throw InvalidArgument(command + " needs --N");
  }
  if ((command == "spectrum" || command == "certify" || command == "export") && !delta) {
    throw InvalidArgument(command + " needs --delta");
  }
  if (command == "sweep" && !delta_range) throw InvalidArgument("sweep needs --delta-range");
  if (command == "export" && out.empty()) throw InvalidArgument("export needs --out");
  if (command == "equivalence" && !graph.empty() && (!M || !N)) {
    throw InvalidArgument("equivalence on a single graph needs --M and --N");
  }
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

}  // namespace xxzgap::cli
