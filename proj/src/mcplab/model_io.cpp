#include "mcplab/model_io.hpp"

#include <cmath>

#include "mcplab/errors.hpp"

namespace mcplab::io {
namespace {

using nlohmann::json;

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ModelError("shape", where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ModelError("shape", where + " must be finite");
  return x;
}

geometry::Vec vector(const json& j, const char* key, int d) {
  if (!j.contains(key)) throw ModelError("shape", std::string("missing \"") + key + "\"");
  const json& a = j.at(key);
  if (!a.is_array() || static_cast<int>(a.size()) != d)
    throw ModelError("shape", std::string("\"") + key + "\" must be an array of length dim");
  geometry::Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = number(a[i], key);
  return v;
}

geometry::Mat matrix(const json& a, const char* key, int d) {
  if (!a.is_array() || static_cast<int>(a.size()) != d)
    throw ModelError("shape", std::string("\"") + key + "\" must be dim x dim");
  geometry::Mat m(d, d);
  for (int r = 0; r < d; ++r) {
    if (!a[r].is_array() || static_cast<int>(a[r].size()) != d)
      throw ModelError("shape", std::string("\"") + key + "\" must be dim x dim");
    for (int c = 0; c < d; ++c) m(r, c) = number(a[r][c], key);
  }
  return m;
}

}  // namespace

geometry::ContactModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError("json", e.what());
  }
  return parse_model(j);
}

geometry::ContactModel parse_model(const json& j) {
  if (!j.is_object()) throw ModelError("json", "model must be a JSON object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw ModelError("shape", "\"dim\" must be an integer");
  const int d = j.at("dim").get<int>();
  if (d < 1 || d > 64) throw ModelError("shape", "\"dim\" must lie in 1..64");

  geometry::ContactModel m;
  m.algebra.dim = d;
  m.algebra.bracket = Tensor3(d);
  Tensor3 seen(d);
  if (j.contains("bracket")) {
    const json& br = j.at("bracket");
    if (!br.is_array()) throw ModelError("shape", "\"bracket\" must be an array");
    for (const json& e : br) {
      if (!e.is_array() || e.size() != 4)
        throw ModelError("shape", "bracket entries are [i, j, k, value]");
      int idx[3];
      for (int q = 0; q < 3; ++q) {
        if (!e[q].is_number_integer()) throw ModelError("shape", "bracket indices must be integers");
        idx[q] = e[q].get<int>();
        if (idx[q] < 0 || idx[q] >= d) throw ModelError("shape", "bracket index out of range");
      }
      const double v = number(e[3], "bracket value");
      if (seen(idx[0], idx[1], idx[2]) != 0.0)
        throw ModelError("shape", "duplicate bracket entry");
      seen(idx[0], idx[1], idx[2]) = 1.0;
      m.algebra.bracket(idx[0], idx[1], idx[2]) = v;
    }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < d; ++k)
          if (seen(a, b, k) != 0.0 && seen(b, a, k) == 0.0)
            m.algebra.bracket(b, a, k) = -m.algebra.bracket(a, b, k);
  }
  m.algebra.metric = j.contains("metric") ? matrix(j.at("metric"), "metric", d)
                                          : geometry::Mat::Identity(d, d);
  if (!j.contains("J")) throw ModelError("shape", "missing \"J\"");
  m.contact.J = matrix(j.at("J"), "J", d);
  m.contact.eta = vector(j, "eta", d);
  m.contact.reeb = vector(j, "reeb", d);
  if (!j.contains("eps")) throw ModelError("shape", "missing \"eps\"");
  m.contact.eps = number(j.at("eps"), "eps");

  geometry::require_valid(m.algebra);
  return m;
}

json to_json(const geometry::ContactModel& model) {
  const int d = model.algebra.dim;
  json br = json::array();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k)
        if (model.algebra.bracket(a, b, k) != 0.0)
          br.push_back({a, b, k, model.algebra.bracket(a, b, k)});
  auto mat = [d](const geometry::Mat& m) {
    json rows = json::array();
    for (int r = 0; r < d; ++r) {
      json row = json::array();
      for (int c = 0; c < d; ++c) row.push_back(m(r, c));
      rows.push_back(row);
    }
    return rows;
  };
  auto vec = [](const geometry::Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); };
  return {{"dim", d},
          {"bracket", br},
          {"metric", mat(model.algebra.metric)},
          {"J", mat(model.contact.J)},
          {"eta", vec(model.contact.eta)},
          {"reeb", vec(model.contact.reeb)},
          {"eps", model.contact.eps}};
}

}  // namespace mcplab::io
