#pragma once

#include <json.hpp>

#include "wittlab/chain.hpp"
#include "wittlab/groups.hpp"

namespace wittlab {

using Json = nlohmann::json;

// Elements of Z/N and GF(p) are plain integers. Polynomial elements are
// coefficient arrays, lowest degree first, each coefficient serialized
// recursively in the coefficient field. On input an integer n also means the
// image of n in R and a string is parsed with the element grammar.
Json element_to_json(const LocalRing& R, Elem x);
Elem element_from_json(const LocalRing& R, const Json& j);

Json vector_to_json(const LocalRing& R, const Vec& v);
Vec vector_from_json(const LocalRing& R, const Json& j);
Json matrix_to_json(const LocalRing& R, const Matrix& M);
Matrix matrix_from_json(const LocalRing& R, const Json& j);
Json basis_to_json(const LocalRing& R, const Basis& B);
Basis basis_from_json(const LocalRing& R, const Json& j);

Json witness_to_json(const LocalRing& R, const CongruenceWitness& w);
CongruenceWitness witness_from_json(const LocalRing& R, const Json& j);

struct ChainCertificate {
  RingPtr ring;
  Matrix gram;
  std::vector<Basis> bases;
};
Json certificate_to_json(const ChainCertificate& c);
ChainCertificate certificate_from_json(const Json& j);
// Consecutive steps, anisotropy, orthogonality; endpoints are the first and
// last bases.
ChainCheck verify_certificate(const ChainCertificate& c);

// {"free_rank", "invariant_factors", "generator_images": {unit: coords}}
Json structure_to_json(const LocalRing& R, const AbelianGroup& G, const Vec& generators);

}  // namespace wittlab
