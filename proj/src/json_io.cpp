#include "wittlab/json_io.hpp"

namespace wittlab {

namespace {

Json::array_t as_array(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a JSON array");
  return j.get<Json::array_t>();
}

}  // namespace

Json element_to_json(const LocalRing& R, Elem x) {
  if (!R.is_polynomial()) return x;
  Json arr = Json::array();
  for (Elem c : R.coefficients(x)) arr.push_back(element_to_json(*R.coefficient_field(), c));
  return arr;
}

Elem element_from_json(const LocalRing& R, const Json& j) {
  if (j.is_number_integer()) return R.from_int(j.get<std::int64_t>());
  if (j.is_string()) return R.parse_element(j.get<std::string>());
  if (j.is_array()) {
    if (!R.is_polynomial()) {
      if (j.size() != 1) throw Error(ErrorCode::InvalidInput, "element of " + R.spec_string() + " has one coefficient");
      return element_from_json(R, j[0]);
    }
    if (j.size() > R.degree()) throw Error(ErrorCode::InvalidInput, "too many coefficients for " + R.spec_string());
    Vec coeffs(R.degree(), 0);
    for (std::size_t i = 0; i < j.size(); ++i) coeffs[i] = element_from_json(*R.coefficient_field(), j[i]);
    return R.from_coefficients(coeffs);
  }
  throw Error(ErrorCode::InvalidInput, "cannot read a ring element from " + j.dump());
}

Json vector_to_json(const LocalRing& R, const Vec& v) {
  Json arr = Json::array();
  for (Elem x : v) arr.push_back(element_to_json(R, x));
  return arr;
}

Vec vector_from_json(const LocalRing& R, const Json& j) {
  Vec v;
  for (const auto& e : as_array(j, "vector")) v.push_back(element_from_json(R, e));
  return v;
}

Json matrix_to_json(const LocalRing& R, const Matrix& M) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < M.rows; ++i) arr.push_back(vector_to_json(R, M.row(i)));
  return arr;
}

Matrix matrix_from_json(const LocalRing& R, const Json& j) {
  std::vector<Vec> rows;
  for (const auto& r : as_array(j, "matrix")) rows.push_back(vector_from_json(R, r));
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  return Matrix::from_rows(rows);
}

Json basis_to_json(const LocalRing& R, const Basis& B) {
  Json arr = Json::array();
  for (const auto& v : B) arr.push_back(vector_to_json(R, v));
  return arr;
}

Basis basis_from_json(const LocalRing& R, const Json& j) {
  Basis B;
  for (const auto& v : as_array(j, "basis")) B.push_back(vector_from_json(R, v));
  return B;
}

Json witness_to_json(const LocalRing& R, const CongruenceWitness& w) {
  return {{"source", matrix_to_json(R, w.source)},
          {"target", matrix_to_json(R, w.target)},
          {"matrix", matrix_to_json(R, w.matrix)}};
}

CongruenceWitness witness_from_json(const LocalRing& R, const Json& j) {
  for (const char* key : {"source", "target", "matrix"})
    if (!j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("witness is missing \"") + key + "\"");
  return {matrix_from_json(R, j.at("source")), matrix_from_json(R, j.at("target")),
          matrix_from_json(R, j.at("matrix"))};
}

Json certificate_to_json(const ChainCertificate& c) {
  Json bases = Json::array();
  for (const auto& B : c.bases) bases.push_back(basis_to_json(*c.ring, B));
  return {{"ring", c.ring->spec_string()}, {"gram", matrix_to_json(*c.ring, c.gram)}, {"bases", bases}};
}

ChainCertificate certificate_from_json(const Json& j) {
  for (const char* key : {"ring", "gram", "bases"})
    if (!j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("certificate is missing \"") + key + "\"");
  if (!j.at("ring").is_string()) throw Error(ErrorCode::InvalidInput, "\"ring\" must be a string");
  ChainCertificate c;
  c.ring = LocalRing::parse(j.at("ring").get<std::string>());
  c.gram = matrix_from_json(*c.ring, j.at("gram"));
  for (const auto& B : as_array(j.at("bases"), "bases")) c.bases.push_back(basis_from_json(*c.ring, B));
  return c;
}

ChainCheck verify_certificate(const ChainCertificate& c) {
  if (c.bases.empty()) return {false, "certificate has no bases"};
  BilinearSpace S(c.ring, c.gram);
  Chain ch{c.bases};
  return verify_chain(S, ch, c.bases.front(), c.bases.back());
}

Json structure_to_json(const LocalRing& R, const AbelianGroup& G, const Vec& generators) {
  Json images = Json::object();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    IntVec e(G.generators(), 0);
    e[i] = 1;
    images[R.format(generators[i])] = G.coordinates(e);
  }
  return {{"free_rank", G.free_rank()}, {"invariant_factors", G.invariant_factors()}, {"generator_images", images}};
}

}  // namespace wittlab
