#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quivlat/error.hpp"
#include "quivlat/quiver.hpp"
#include "quivlat/ring.hpp"

namespace quivlat::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileNotFound, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

/// Integers as JSON numbers while they fit, decimal strings beyond that.
inline json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

inline json elem_to_json(const Ring& ring, const Elem& a) {
  switch (ring.kind()) {
    case Ring::Kind::Rationals: {
      const Rational& q = a.rational();
      if (q.get_den() == 1) return integer_to_json(q.get_num());
      return json(q.get_str());
    }
    case Ring::Kind::TruncatedPoly: {
      const auto& c = a.coeffs();
      bool constant = true;
      for (std::size_t i = 1; i < c.size(); ++i) constant = constant && c[i] == 0;
      if (constant) return json(c[0]);
      return json(c);
    }
    default: return integer_to_json(a.integer());
  }
}

inline Rational parse_rational(const std::string& s) {
  Rational q;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || q.set_str(t, 10) != 0 || q.get_den() == 0) fail(ErrorKind::ParseError, "bad number '" + s + "'");
  q.canonicalize();
  return q;
}

inline Elem elem_from_json(const Ring& ring, const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return ring.from_integer(Integer(std::to_string(j.get<unsigned long long>())));
    return ring.from_integer(Integer(std::to_string(j.get<long long>())));
  }
  if (j.is_string()) return ring.from_rational(parse_rational(j.get<std::string>()));
  if (j.is_array()) {
    std::vector<Integer> cs;
    for (const auto& c : j) {
      Rational q = elem_from_json(Ring::rationals(), c).rational();
      if (q.get_den() != 1) fail(ErrorKind::ParseError, "polynomial coefficients must be integers");
      cs.push_back(q.get_num());
    }
    return ring.from_coeffs(cs);
  }
  fail(ErrorKind::ParseError, "matrix entries must be integers, \"a/b\" strings or coefficient arrays");
}

inline json quiver_to_json(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows()) arrows.push_back({a.tail + 1, a.head + 1});
  return {{"vertices", q.vertex_count()}, {"arrows", arrows}};
}

inline Quiver quiver_from_json(const json& j) {
  try {
    std::size_t n = j.at("vertices").get<std::size_t>();
    std::vector<std::pair<std::size_t, std::size_t>> arrows;
    for (const auto& a : j.at("arrows")) {
      if (!a.is_array() || a.size() != 2) fail(ErrorKind::ParseError, "arrow must be a [tail, head] pair");
      arrows.emplace_back(a[0].get<std::size_t>(), a[1].get<std::size_t>());
    }
    return Quiver::from_one_based(n, arrows);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("quiver: ") + e.what());
  }
}

inline json dims_to_json(const DimVector& d) { return json(d.components()); }

inline json rep_to_json(const Rep& x) {
  json mats = json::array();
  for (const auto& m : x.mats()) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t k = 0; k < m.cols(); ++k) entries.push_back(elem_to_json(x.ring(), m(i, k)));
    mats.push_back(std::move(entries));
  }
  return {{"ring", x.ring().spec()}, {"quiver", quiver_to_json(x.quiver())}, {"dims", dims_to_json(x.dims())},
          {"mats", mats}};
}

/// Reads a rep; `ring` overrides the file's ring, `quiver` supplies or must
/// match the file's quiver.
inline Rep rep_from_json(const json& j, const std::optional<Ring>& ring = std::nullopt,
                         const std::optional<Quiver>& quiver = std::nullopt) {
  try {
    Ring r = ring ? *ring : Ring::parse(j.at("ring").get<std::string>());
    std::optional<Quiver> q = quiver;
    if (j.contains("quiver")) {
      Quiver fq = quiver_from_json(j.at("quiver"));
      if (q && !(fq == *q)) fail(ErrorKind::IncompatibleBase, "rep quiver differs from --quiver");
      q = fq;
    }
    if (!q) fail(ErrorKind::ParseError, "rep has no quiver and none was given");
    DimVector dims(j.at("dims").get<std::vector<std::size_t>>());
    if (dims.size() != q->vertex_count()) fail(ErrorKind::DimensionMismatch, "dims length differs from vertex count");
    const json& mats = j.at("mats");
    if (!mats.is_array() || mats.size() != q->arrow_count())
      fail(ErrorKind::DimensionMismatch, "need one entry list per arrow");
    std::vector<Matrix> ms;
    for (std::size_t a = 0; a < q->arrow_count(); ++a) {
      const std::size_t rows = dims[q->arrow(a).head], cols = dims[q->arrow(a).tail];
      const json& e = mats[a];
      if (!e.is_array() || e.size() != rows * cols)
        fail(ErrorKind::DimensionMismatch, "arrow " + std::to_string(a + 1) + " needs " +
                                               std::to_string(rows * cols) + " entries");
      Matrix m(r, rows, cols);
      for (std::size_t k = 0; k < e.size(); ++k) m(k / cols, k % cols) = elem_from_json(r, e[k]);
      ms.push_back(std::move(m));
    }
    return Rep(r, *q, dims, std::move(ms));
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("rep: ") + e.what());
  }
}

inline DimVector parse_dims(const std::string& csv) {
  std::vector<std::size_t> c;
  std::stringstream in(csv);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::ParseError, "bad --dims '" + csv + "'");
    c.push_back(std::stoul(part));
  }
  if (c.empty()) fail(ErrorKind::ParseError, "empty --dims");
  return DimVector(std::move(c));
}

}  // namespace quivlat::io
