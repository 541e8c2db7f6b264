// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/serialization.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "xxzgap/errors.hpp"

namespace xxzgap {

namespace {

static_assert(std::endian::native == std::endian::little, "binary stream assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw ParseError("truncated triplet stream");
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace

void write_operator(std::ostream& out, const ConfigSpace& space, const SparseSymmetric& op,
                    const std::string& name) {
  if (static_cast<std::size_t>(op.dim()) != space.size()) {
    throw InvalidArgument("operator does not match the configuration space");
  }
  nlohmann::ordered_json h;
  h["format"] = "xxzgap-triplets";
  h["version"] = 1;
  h["graph"] = space.base().name();
  h["name"] = name;
  h["n_sites"] = space.n_sites();
  h["M"] = space.M();
  h["N"] = space.N();
  h["dim"] = static_cast<std::uint64_t>(op.dim());
  h["nnz"] = static_cast<std::uint64_t>(op.nonzeros());
  h["record"] = "u64 row, u64 col, f64 value (little-endian)";
  out << h.dump() << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto occ = space.occupations(i);
    out.write(reinterpret_cast<const char*>(occ.data()), static_cast<std::streamsize>(occ.size()));
  }
  for (Eigen::Index r = 0; r < op.dim(); ++r) {
    op.for_each_in_row(r, [&](Eigen::Index c, double v) {
      put<std::uint64_t>(out, static_cast<std::uint64_t>(r));
      put<std::uint64_t>(out, static_cast<std::uint64_t>(c));
      put<double>(out, v);
    });
  }
}

OperatorRecord read_operator(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header line");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad header: ") + e.what());
  }
  OperatorRecord rec;
  try {
    rec.header.format = h.at("format").get<std::string>();
    rec.header.version = h.at("version").get<int>();
    rec.header.graph = h.at("graph").get<std::string>();
    rec.header.name = h.at("name").get<std::string>();
    rec.header.n_sites = h.at("n_sites").get<int>();
    rec.header.M = h.at("M").get<int>();
    rec.header.N = h.at("N").get<int>();
    rec.header.dim = h.at("dim").get<std::uint64_t>();
    rec.header.nnz = h.at("nnz").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad header: ") + e.what());
  }
  if (rec.header.format != "xxzgap-triplets" || rec.header.version != 1) throw ParseError("unknown stream format");

  rec.occupations.resize(rec.header.dim * static_cast<std::uint64_t>(rec.header.n_sites));
  if (!in.read(reinterpret_cast<char*>(rec.occupations.data()), static_cast<std::streamsize>(rec.occupations.size()))) {
    throw ParseError("truncated configuration block");
  }
  std::vector<Triplet> t;
  t.reserve(rec.header.nnz);
  for (std::uint64_t k = 0; k < rec.header.nnz; ++k) {
    const auto r = get<std::uint64_t>(in);
    const auto c = get<std::uint64_t>(in);
    const auto v = get<double>(in);
    if (r >= rec.header.dim || c >= rec.header.dim) throw ParseError("triplet index out of range");
    t.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), v);
  }
  rec.matrix = SparseSymmetric::from_triplets(static_cast<Eigen::Index>(rec.header.dim), t);
  return rec;
}

}  // namespace xxzgap
