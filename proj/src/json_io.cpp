#include "skv/json_io.hpp"

#include <bit>

namespace skv {

std::string cscalar_to_string(const CScalar& z) {
  if (z.im.is_zero()) return z.re.to_string();
  std::string im = "i*(" + z.im.to_string() + ")";
  if (z.re.is_zero()) return im;
  return z.re.to_string() + " + " + im;
}

Expected<CScalar> parse_cscalar(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  size_t ipos = s.find("i*(");
  if (ipos == std::string::npos) {
    auto re = QuadScalar::parse(s);
    if (!re) return Expected<CScalar>::failure(re.error());
    return CScalar(*re);
  }
  if (s.empty() || s.back() != ')')
    return Expected<CScalar>::failure("unterminated imaginary part in '" + s + "'");
  std::string im_body = s.substr(ipos + 3, s.size() - ipos - 4);
  bool negate = false;
  std::string re_body;
  if (ipos == 0) {
    re_body = "0";
  } else {
    char sep = s[ipos - 1];
    if (sep != '+' && sep != '-')
      return Expected<CScalar>::failure("malformed complex literal '" + s + "'");
    negate = sep == '-';
    re_body = ipos >= 2 ? s.substr(0, ipos - 1) : "0";
    if (re_body.empty()) re_body = "0";
  }
  auto re = QuadScalar::parse(re_body);
  if (!re) return Expected<CScalar>::failure(re.error());
  auto im = QuadScalar::parse(im_body);
  if (!im) return Expected<CScalar>::failure(im.error());
  return CScalar(*re, negate ? -*im : *im);
}

namespace {

json terms_to_json(const ModelForm<QuadScalar>::TermMap& terms) {
  json arr = json::array();
  for (const auto& [mask, coeff] : terms) {
    json idx = json::array();
    for (uint32_t m = mask; m; m &= m - 1) idx.push_back(std::countr_zero(m) + 1);
    arr.push_back(json{{"idx", idx}, {"coeff", coeff.to_string()}});
  }
  return arr;
}

Expected<uint32_t> mask_from_idx(const json& idx, int n2, int expect_len) {
  if (!idx.is_array())
    return Expected<uint32_t>::failure("idx must be an array");
  uint32_t mask = 0;
  int prev = 0;
  for (const json& v : idx) {
    if (!v.is_number_integer())
      return Expected<uint32_t>::failure("idx entries must be integers");
    int i = v.get<int>();
    if (i < 1 || i > n2)
      return Expected<uint32_t>::failure("index out of range 1..2n");
    if (i <= prev)
      return Expected<uint32_t>::failure("indices must be strictly increasing");
    prev = i;
    mask |= 1u << (i - 1);
  }
  if (expect_len >= 0 && std::popcount(mask) != expect_len)
    return Expected<uint32_t>::failure("index tuple has the wrong length");
  return mask;
}

}  // namespace

json form_to_json(const ModelForm<QuadScalar>& f) {
  return json{{"deg", f.deg()},
              {"terms", terms_to_json(f.base_part())},
              {"eta_part", terms_to_json(f.eta_part())}};
}

Expected<ModelForm<QuadScalar>> form_from_json(const json& j, int n) {
  using Out = Expected<ModelForm<QuadScalar>>;
  if (!j.is_object() || !j.contains("deg") || !j["deg"].is_number_integer())
    return Out::failure("form literal needs an integer 'deg'");
  int deg = j["deg"].get<int>();
  if (deg < 0 || deg > 2 * n + 1) return Out::failure("degree out of range");
  ModelForm<QuadScalar> f(n, deg);
  auto load = [&](const char* key, int len, auto&& add) -> std::string {
    if (!j.contains(key)) return {};
    if (!j[key].is_array()) return std::string(key) + " must be an array";
    for (const json& t : j[key]) {
      if (!t.is_object() || !t.contains("idx") || !t.contains("coeff"))
        return "each term needs 'idx' and 'coeff'";
      auto mask = mask_from_idx(t["idx"], 2 * n, len);
      if (!mask) return mask.error();
      if (!t["coeff"].is_string()) return "coeff must be a string literal";
      auto c = QuadScalar::parse(t["coeff"].get<std::string>());
      if (!c) return c.error();
      add(*mask, *c);
    }
    return {};
  };
  std::string err = load("terms", deg,
                         [&](uint32_t m, const QuadScalar& c) { f.add_base(m, c); });
  if (err.empty() && deg >= 1)
    err = load("eta_part", deg - 1,
               [&](uint32_t m, const QuadScalar& c) { f.add_eta(m, c); });
  else if (err.empty() && j.contains("eta_part") && !j["eta_part"].empty())
    err = "a 0-form cannot carry an eta part";
  if (!err.empty()) return Out::failure(err);
  return f;
}

json spinor_to_json(const Spinor<QuadScalar>& s) {
  json arr = json::array();
  for (const CScalar& z : s.c) arr.push_back(cscalar_to_string(z));
  return arr;
}

Expected<Spinor<QuadScalar>> spinor_from_json(const json& j) {
  using Out = Expected<Spinor<QuadScalar>>;
  if (!j.is_array()) return Out::failure("spinor literal must be an array");
  int dim = static_cast<int>(j.size());
  if (std::popcount(static_cast<unsigned>(dim)) != 1)
    return Out::failure("spinor length must be a power of two");
  Spinor<QuadScalar> s(dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_string()) return Out::failure("coefficients must be strings");
    auto z = parse_cscalar(j[i].get<std::string>());
    if (!z) return Out::failure(z.error());
    s.c[i] = *z;
  }
  return s;
}

Expected<KahlerCurvature<QuadScalar>> curvature_from_json(const json& j) {
  using Out = Expected<KahlerCurvature<QuadScalar>>;
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    return Out::failure("curvature literal needs an integer 'n'");
  int n = j["n"].get<int>();
  if (n < 1 || n > 8) return Out::failure("n out of supported range");
  KahlerCurvature<QuadScalar> R(n);
  const int d = 2 * n;
  std::vector<char> assigned(static_cast<size_t>(d) * d * d * d, 0);
  auto offset = [d](int a, int b, int c, int e) {
    return ((static_cast<size_t>(a) * d + b) * d + c) * d + e;
  };
  auto place = [&](int a, int b, int c, int e, const QuadScalar& v) -> bool {
    size_t off = offset(a, b, c, e);
    if (assigned[off]) return R.at(a, b, c, e) == v;
    assigned[off] = 1;
    R.at(a, b, c, e) = v;
    return true;
  };
  if (j.contains("components")) {
    if (!j["components"].is_array())
      return Out::failure("'components' must be an array");
    for (const json& t : j["components"]) {
      if (!t.is_object() || !t.contains("idx") || !t.contains("value"))
        return Out::failure("each component needs 'idx' and 'value'");
      const json& idx = t["idx"];
      if (!idx.is_array() || idx.size() != 4)
        return Out::failure("'idx' must list four frame indices");
      int ix[4];
      for (int k = 0; k < 4; ++k) {
        if (!idx[k].is_number_integer())
          return Out::failure("indices must be integers");
        ix[k] = idx[k].get<int>() - 1;
        if (ix[k] < 0 || ix[k] >= d)
          return Out::failure("index out of range 1..2n");
      }
      if (!t["value"].is_string())
        return Out::failure("'value' must be a scalar literal string");
      auto v = QuadScalar::parse(t["value"].get<std::string>());
      if (!v) return Out::failure(v.error());
      int a = ix[0], b = ix[1], c = ix[2], e = ix[3];
      // symmetry orbit: antisymmetry in both pairs and the pair swap
      bool ok = place(a, b, c, e, *v) && place(b, a, c, e, -*v) &&
                place(a, b, e, c, -*v) && place(b, a, e, c, *v) &&
                place(c, e, a, b, *v) && place(e, c, a, b, -*v) &&
                place(c, e, b, a, -*v) && place(e, c, b, a, *v);
      if (!ok)
        return Out::failure("component list is inconsistent with the symmetries");
    }
  }
  return R;
}

json curvature_to_json(const KahlerCurvature<QuadScalar>& R) {
  json comps = json::array();
  const int d = R.dim();
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = c + 1; e < d; ++e) {
          if (a * d + b > c * d + e) continue;  // pair symmetry canonical rep
          const QuadScalar& v = R.at(a, b, c, e);
          if (v.is_zero()) continue;
          comps.push_back(json{{"idx", {a + 1, b + 1, c + 1, e + 1}},
                               {"value", v.to_string()}});
        }
  return json{{"n", R.n()}, {"components", comps}};
}

json frame_vector_to_json(const FrameVector<QuadScalar>& v) {
  json arr = json::array();
  for (const QuadScalar& x : v.c) arr.push_back(x.to_string());
  return arr;
}

}  // namespace skv
