#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "theta.hpp"

namespace swj {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Matrices travel as {"re": [[...]], "im": [[...]]}; "im" may be omitted for
// real input, and a bare [[...]] array is accepted as a real matrix.
CMatrix parseCMatrix(const json& j);
RMatrix parseRMatrix(const json& j);
ojson matrixToJson(const CMatrix& a);

// "identity" or a matrix in the form above.
IndexMatrix parseIndexMatrix(const json& j, int m);

JacobiPoint parsePoint(const json& omega, const json& z, int n, int m);

// One generator: {"kind": "heisenberg"|"translation"|"dilation"|"inversion",
// "epsilon": [re,im] (optional), parameters per kind}; or {"word": [generators]}.
Generator parseGenerator(const json& j, int n, int m);
std::vector<Generator> parseGeneratorWord(const json& j, int n, int m);
ojson generatorToJson(const Generator& w);

ojson gridToJson(const GridFunction& f);
GridFunction gridFromJson(const json& j);

}  // namespace swj
