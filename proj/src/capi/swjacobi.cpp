#include "swjacobi.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <string>

#include "../core/json_io.hpp"
#include "../core/verify.hpp"

using namespace swj;

struct swj_cmatrix {
  CMatrix mat;
};

namespace {

thread_local std::string g_lastError;

swj_status toStatus(Errc code) {
  int v = static_cast<int>(code);
  if (v >= 1 && v <= 17) return static_cast<swj_status>(v);
  return SWJ_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes + the thread-local message.
template <typename Fn>
swj_status guarded(Fn&& fn) {
  try {
    fn();
    g_lastError.clear();
    return SWJ_OK;
  } catch (const Error& e) {
    g_lastError = e.what();
    return toStatus(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_lastError = e.what();
    return SWJ_ERR_PARSE;
  } catch (const std::exception& e) {
    g_lastError = e.what();
    return SWJ_ERR_INTERNAL;
  }
}

char* dupString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parseText(const char* text) {
  if (!text) fail(Errc::InvalidArgument, "null JSON input");
  // accept the bare keywords ("identity", "zero") without JSON quoting
  std::string s(text);
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalpha(c); }))
    return json(s);
  return json::parse(text);
}

struct ParsedPoint {
  int n, m;
  JacobiPoint p;
};

ParsedPoint parsePointJson(const json& j) {
  int n = j.at("n").get<int>();
  int m = j.at("m").get<int>();
  json z = j.contains("z") ? j["z"] : json("zero");
  return ParsedPoint{n, m, parsePoint(j.at("omega"), z, n, m)};
}

}  // namespace

extern "C" {

swj_cmatrix* swj_cmatrix_parse(const char* json_text, swj_status* status) {
  swj_cmatrix* out = nullptr;
  swj_status st = guarded([&] { out = new swj_cmatrix{parseCMatrix(parseText(json_text))}; });
  if (status) *status = st;
  return out;
}

void swj_cmatrix_free(swj_cmatrix* mat) { delete mat; }

int swj_cmatrix_rows(const swj_cmatrix* mat) {
  return mat ? static_cast<int>(mat->mat.rows()) : 0;
}

int swj_cmatrix_cols(const swj_cmatrix* mat) {
  return mat ? static_cast<int>(mat->mat.cols()) : 0;
}

swj_status swj_cmatrix_get(const swj_cmatrix* mat, int row, int col, double* re, double* im) {
  return guarded([&] {
    if (!mat || row < 0 || col < 0 || row >= mat->mat.rows() || col >= mat->mat.cols())
      fail(Errc::InvalidArgument, "index out of range");
    cplx v = mat->mat(row, col);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

swj_status swj_validate_siegel(const swj_cmatrix* omega) {
  return guarded([&] {
    if (!omega) fail(Errc::InvalidArgument, "null matrix");
    validateSiegel(omega->mat);
  });
}

swj_status swj_det_sqrt_holo(const swj_cmatrix* s, double* re, double* im) {
  return guarded([&] {
    if (!s) fail(Errc::InvalidArgument, "null matrix");
    cplx v = detSqrtHolo(s->mat);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

swj_status swj_j_half(const char* element_json, const char* omega_json, double* re, double* im) {
  return guarded([&] {
    SiegelPoint omega = validateSiegel(parseCMatrix(parseText(omega_json)));
    int n = omega.degree();
    std::vector<Generator> word = parseGeneratorWord(parseText(element_json), n, 1);
    MetaJacobiElement x = wordProduct(word);
    cplx v = jHalf(x.base, omega);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

swj_status swj_j_m_star(const char* element_json, const char* point_json, const char* m_json,
                        double* re, double* im) {
  return guarded([&] {
    ParsedPoint pp = parsePointJson(parseText(point_json));
    IndexMatrix M = parseIndexMatrix(parseText(m_json), pp.m);
    std::vector<Generator> word = parseGeneratorWord(parseText(element_json), pp.n, pp.m);
    cplx v = jMStar(wordProduct(word), pp.p, M);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

swj_status swj_theta_eval(const char* params_json, char** out_json) {
  return guarded([&] {
    json j = parseText(params_json);
    ParsedPoint pp = parsePointJson(j);
    ThetaParams params;
    params.M = parseIndexMatrix(j.contains("M") ? j["M"] : json("identity"), pp.m);
    if (j.contains("truncation_tol")) params.truncationTol = j["truncation_tol"].get<double>();
    if (j.contains("max_radius")) params.maxRadius = j["max_radius"].get<int>();
    ThetaResult r = thetaEvalDetailed(pp.p, params);
    ojson out{{"theta", ojson::array({r.value.real(), r.value.imag()})},
              {"radius", r.radius},
              {"certified_tol", r.certifiedTol}};
    if (out_json) *out_json = dupString(out.dump());
  });
}

swj_status swj_verify(const char* suite, const char* options_json, char** out_report_json) {
  return guarded([&] {
    if (!suite) fail(Errc::InvalidArgument, "null suite name");
    json j = options_json ? json::parse(options_json) : json::object();
    VerifyOptions opts;
    opts.suite = suite;
    opts.n = j.value("n", 1);
    opts.m = j.value("m", 1);
    if (j.contains("M")) opts.M = parseIndexMatrix(j["M"], opts.m);
    opts.trials = j.value("trials", 100);
    opts.tol = j.value("tol", 0.0);
    opts.truncationTol = j.value("truncation_tol", 1e-12);
    opts.seed = j.value("seed", static_cast<std::uint64_t>(0));
    opts.jobs = j.value("jobs", 1);
    opts.counterexample = j.value("counterexample", std::string());
    bool pretty = j.value("pretty", false);
    Report rep = runSuite(opts);
    if (out_report_json) *out_report_json = dupString(rep.toJson(pretty));
  });
}

void swj_string_free(char* s) { std::free(s); }

const char* swj_last_error(void) { return g_lastError.c_str(); }

}  // extern "C"
