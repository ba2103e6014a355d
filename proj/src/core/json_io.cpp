#include "json_io.hpp"

namespace swj {

namespace {

RMatrix parseRows(const json& rows) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array())
    fail(Errc::InvalidArgument, "matrix must be a non-empty array of rows");
  long r = static_cast<long>(rows.size());
  long c = static_cast<long>(rows[0].size());
  RMatrix out(r, c);
  for (long i = 0; i < r; ++i) {
    if (static_cast<long>(rows[i].size()) != c)
      fail(Errc::InvalidArgument, "ragged matrix rows");
    for (long j = 0; j < c; ++j) {
      if (!rows[i][j].is_number()) fail(Errc::InvalidArgument, "matrix entries must be numbers");
      out(i, j) = rows[i][j].get<double>();
    }
  }
  return out;
}

cplx parseEps(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(Errc::InvalidArgument, "epsilon must be [re, im]");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

CMatrix parseCMatrix(const json& j) {
  if (j.is_array()) return parseRows(j).cast<cplx>();
  if (!j.is_object() || !j.contains("re")) fail(Errc::InvalidArgument, "expected {\"re\",\"im\"} matrix");
  RMatrix re = parseRows(j["re"]);
  if (!j.contains("im")) return re.cast<cplx>();
  RMatrix im = parseRows(j["im"]);
  if (im.rows() != re.rows() || im.cols() != re.cols())
    fail(Errc::ShapeMismatch, "re/im shapes differ");
  return re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
}

RMatrix parseRMatrix(const json& j) {
  CMatrix a = parseCMatrix(j);
  if (a.imag().cwiseAbs().maxCoeff() > 0.0) fail(Errc::InvalidArgument, "expected a real matrix");
  return a.real();
}

ojson matrixToJson(const CMatrix& a) {
  ojson re = ojson::array(), im = ojson::array();
  for (long i = 0; i < a.rows(); ++i) {
    ojson rrow = ojson::array(), irow = ojson::array();
    for (long j = 0; j < a.cols(); ++j) {
      rrow.push_back(a(i, j).real());
      irow.push_back(a(i, j).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return ojson{{"n", a.rows()}, {"re", re}, {"im", im}};
}

IndexMatrix parseIndexMatrix(const json& j, int m) {
  if (j.is_string()) {
    if (j.get<std::string>() == "identity") return identityIndex(m);
    fail(Errc::InvalidArgument, "index matrix must be \"identity\" or a matrix");
  }
  IndexMatrix out = makeIndexMatrix(parseRMatrix(j));
  if (out.degree() != m) fail(Errc::ShapeMismatch, "index matrix degree != m");
  return out;
}

JacobiPoint parsePoint(const json& omega, const json& z, int n, int m) {
  CMatrix om = parseCMatrix(omega);
  if (om.rows() != n) fail(Errc::ShapeMismatch, "omega degree != n");
  CMatrix zz;
  if (z.is_string() && z.get<std::string>() == "zero") {
    zz = CMatrix::Zero(m, n);
  } else {
    zz = parseCMatrix(z);
    if (zz.rows() != m || zz.cols() != n) fail(Errc::ShapeMismatch, "z must be m x n");
  }
  return JacobiPoint{validateSiegel(om), zz};
}

Generator parseGenerator(const json& j, int n, int m) {
  if (!j.is_object() || !j.contains("kind")) fail(Errc::InvalidArgument, "generator needs \"kind\"");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "heisenberg") {
    RMatrix lambda = j.contains("lambda") ? parseRMatrix(j["lambda"]) : RMatrix::Zero(m, n);
    RMatrix mu = j.contains("mu") ? parseRMatrix(j["mu"]) : RMatrix::Zero(m, n);
    RMatrix kappa = j.contains("kappa") ? parseRMatrix(j["kappa"]) : RMatrix::Zero(m, m);
    cplx eps = j.contains("epsilon") ? parseEps(j["epsilon"]) : cplx(1.0, 0.0);
    return genHeisenberg(lambda, mu, kappa, eps);
  }
  if (kind == "translation") {
    RMatrix b = parseRMatrix(j.at("b"));
    cplx eps = j.contains("epsilon") ? parseEps(j["epsilon"]) : cplx(1.0, 0.0);
    return genTranslation(m, b, eps);
  }
  if (kind == "dilation") {
    RMatrix alpha = parseRMatrix(j.at("alpha"));
    cplx eps = j.contains("epsilon") ? parseEps(j["epsilon"]) : cplx(1.0, 0.0);
    return genDilation(m, alpha, eps);
  }
  if (kind == "inversion") {
    cplx eps = j.contains("epsilon") ? parseEps(j["epsilon"]) : inversionPrincipalSheet(n);
    return genInversion(n, m, eps);
  }
  fail(Errc::InvalidArgument, "unknown generator kind: " + kind);
}

std::vector<Generator> parseGeneratorWord(const json& j, int n, int m) {
  std::vector<Generator> out;
  if (j.is_object() && j.contains("word")) {
    for (const auto& g : j["word"]) out.push_back(parseGenerator(g, n, m));
    return out;
  }
  if (j.is_array()) {
    for (const auto& g : j) out.push_back(parseGenerator(g, n, m));
    return out;
  }
  out.push_back(parseGenerator(j, n, m));
  return out;
}

ojson generatorToJson(const Generator& w) {
  auto real = [](const RMatrix& a) {
    ojson rows = ojson::array();
    for (long i = 0; i < a.rows(); ++i) {
      ojson row = ojson::array();
      for (long j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
      rows.push_back(row);
    }
    return rows;
  };
  ojson out;
  switch (w.kind) {
    case Generator::Kind::Heisenberg:
      out["kind"] = "heisenberg";
      out["lambda"] = real(w.lambda);
      out["mu"] = real(w.mu);
      out["kappa"] = real(w.kappa);
      break;
    case Generator::Kind::Translation:
      out["kind"] = "translation";
      out["b"] = real(w.b);
      break;
    case Generator::Kind::Dilation:
      out["kind"] = "dilation";
      out["alpha"] = real(w.alpha);
      break;
    case Generator::Kind::Inversion:
      out["kind"] = "inversion";
      break;
  }
  out["epsilon"] = ojson::array({w.eps.real(), w.eps.imag()});
  return out;
}

ojson gridToJson(const GridFunction& f) {
  ojson samples = ojson::array();
  for (const cplx& v : f.samples) samples.push_back(ojson::array({v.real(), v.imag()}));
  return ojson{{"m", f.m}, {"n", f.n}, {"L", f.L}, {"N", f.N}, {"samples", samples}};
}

GridFunction gridFromJson(const json& j) {
  GridFunction f = makeGrid(j.at("m").get<int>(), j.at("n").get<int>(), j.at("L").get<double>(),
                            j.at("N").get<int>());
  const auto& samples = j.at("samples");
  if (samples.size() != f.size()) fail(Errc::ShapeMismatch, "sample count != N^(m*n)");
  for (std::size_t i = 0; i < f.size(); ++i)
    f.samples[i] = cplx(samples[i][0].get<double>(), samples[i][1].get<double>());
  return f;
}

}  // namespace swj
