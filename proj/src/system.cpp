#include "h10ff/system.hpp"

#include <algorithm>
#include <stdexcept>

namespace h10ff {

Equation Equation::leaf(MultiPoly poly, std::vector<MultiPoly> cleared, std::string label) {
  Equation e;
  e.kind_ = Kind::Leaf;
  e.poly_ = std::move(poly);
  e.cleared_ = std::move(cleared);
  e.label_ = std::move(label);
  return e;
}

Equation Equation::product(std::vector<Equation> children, std::string label) {
  if (children.empty()) throw std::invalid_argument("empty product equation");
  Equation e;
  e.kind_ = Kind::Product;
  e.children_ = std::move(children);
  e.label_ = std::move(label);
  return e;
}

Equation Equation::combine(std::vector<Equation> children, std::string label) {
  if (children.empty()) throw std::invalid_argument("empty combined equation");
  Equation e;
  e.kind_ = Kind::Combine;
  e.children_ = std::move(children);
  e.label_ = std::move(label);
  return e;
}

RatFunc Equation::evaluate(const Assignment& a) const {
  switch (kind_) {
    case Kind::Leaf:
      return poly_.evaluate(a);
    case Kind::Product: {
      RatFunc acc = children_[0].evaluate(a);
      for (std::size_t i = 1; i < children_.size() && !acc.is_zero(); ++i) acc = acc * children_[i].evaluate(a);
      return acc;
    }
    case Kind::Combine: {
      RatFunc acc = children_[0].evaluate(a);
      const Field* f = acc.field();
      RatFunc t = RatFunc::t(f);
      for (std::size_t i = 1; i < children_.size(); ++i) {
        RatFunc g = children_[i].evaluate(a);
        acc = acc * acc - t * g * g;
      }
      return acc;
    }
  }
  return RatFunc();
}

MultiPoly combine_polys(const std::vector<MultiPoly>& polys) {
  if (polys.empty()) throw std::invalid_argument("nothing to combine");
  MultiPoly acc = polys[0];
  MultiPoly t = MultiPoly::t(acc.field());
  for (std::size_t i = 1; i < polys.size(); ++i) acc = acc * acc - t * polys[i] * polys[i];
  return acc;
}

MultiPoly Equation::expand() const {
  switch (kind_) {
    case Kind::Leaf:
      return poly_;
    case Kind::Product: {
      MultiPoly acc = children_[0].expand();
      for (std::size_t i = 1; i < children_.size(); ++i) acc = acc * children_[i].expand();
      return acc;
    }
    case Kind::Combine: {
      std::vector<MultiPoly> parts;
      for (auto& c : children_) parts.push_back(c.expand());
      return combine_polys(parts);
    }
  }
  return MultiPoly();
}

std::set<std::string> Equation::variables() const {
  if (kind_ == Kind::Leaf) {
    auto v = poly_.variables();
    for (auto& c : cleared_) {
      auto w = c.variables();
      v.insert(w.begin(), w.end());
    }
    return v;
  }
  std::set<std::string> out;
  for (auto& c : children_) {
    auto w = c.variables();
    out.insert(w.begin(), w.end());
  }
  return out;
}

Equation Equation::rename(const std::function<std::string(const std::string&)>& fn) const {
  Equation e = *this;
  e.poly_ = poly_.rename(fn);
  for (auto& c : e.cleared_) c = c.rename(fn);
  for (auto& c : e.children_) c = c.rename(fn);
  return e;
}

Equation Equation::partial_eval(const Assignment& a) const {
  Equation e = *this;
  e.poly_ = poly_.partial_eval(a);
  for (auto& c : e.cleared_) c = c.partial_eval(a);
  for (auto& c : e.children_) c = c.partial_eval(a);
  return e;
}

std::size_t Equation::leaf_count() const {
  if (kind_ == Kind::Leaf) return 1;
  std::size_t n = 0;
  for (auto& c : children_) n += c.leaf_count();
  return n;
}

bool Equation::operator==(const Equation& o) const {
  return kind_ == o.kind_ && poly_ == o.poly_ && cleared_ == o.cleared_ && children_ == o.children_ &&
         label_ == o.label_;
}

bool EquationSystem::has_unknown(const std::string& name) const {
  return std::find(unknowns.begin(), unknowns.end(), name) != unknowns.end();
}

void EquationSystem::add_unknown(const std::string& name) {
  if (!has_unknown(name)) unknowns.push_back(name);
}

Json field_to_json(const Field* f) {
  Json j;
  j["p"] = f->p();
  j["k"] = f->k();
  j["modulus"] = f->modulus_string();
  return j;
}

const Field* field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p")) throw std::invalid_argument("field must be an object with p");
  int p = j.at("p").get<int>();
  int k = j.value("k", 1);
  if (!j.contains("modulus")) return Field::get(p, k);
  const Field* fp = Field::get(p, 1);
  RatFunc m = RatFunc::parse(fp, j.at("modulus").get<std::string>());
  if (!m.is_polynomial()) throw std::invalid_argument("modulus must be a polynomial");
  std::vector<int> coeffs;
  for (Fe c : m.num().coeffs()) coeffs.push_back(static_cast<int>(c));
  if (static_cast<int>(coeffs.size()) - 1 != k) throw std::invalid_argument("modulus degree does not match k");
  return Field::get(p, coeffs);
}

Json poly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (auto& [m, c] : p.terms()) {
    Json t;
    t["c"] = c.to_string();
    Json mj = Json::object();
    for (auto& [v, e] : m) mj[v] = e;
    t["m"] = mj;
    terms.push_back(t);
  }
  Json j;
  j["terms"] = terms;
  return j;
}

MultiPoly poly_from_json(const Field* f, const Json& j, const std::vector<std::string>* declared) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    throw std::invalid_argument("polynomial must be an object with a terms array");
  MultiPoly p(f);
  for (auto& t : j.at("terms")) {
    if (!t.contains("c") || !t.at("c").is_string()) throw std::invalid_argument("term without coefficient string");
    RatFunc c;
    try {
      c = RatFunc::parse(f, t.at("c").get<std::string>());
    } catch (const std::exception& e) {
      throw std::invalid_argument("bad coefficient '" + t.at("c").get<std::string>() + "': " + e.what());
    }
    Monomial m;
    if (t.contains("m")) {
      for (auto& [v, e] : t.at("m").items()) {
        if (declared && std::find(declared->begin(), declared->end(), v) == declared->end())
          throw std::invalid_argument("undeclared unknown: " + v);
        int ex = e.get<int>();
        if (ex < 0) throw std::invalid_argument("negative exponent for " + v);
        if (ex > 0) m[v] = ex;
      }
    }
    p.add_term(m, c);
  }
  return p;
}

Json equation_to_json(const Equation& e) {
  Json j;
  switch (e.kind()) {
    case Equation::Kind::Leaf: {
      j["terms"] = poly_to_json(e.poly())["terms"];
      if (!e.cleared().empty()) {
        Json d = Json::array();
        for (auto& c : e.cleared()) d.push_back(poly_to_json(c));
        j["cleared"] = d;
      }
      break;
    }
    case Equation::Kind::Product:
    case Equation::Kind::Combine: {
      Json ch = Json::array();
      for (auto& c : e.children()) ch.push_back(equation_to_json(c));
      j[e.kind() == Equation::Kind::Product ? "product" : "combine"] = ch;
      break;
    }
  }
  if (!e.label().empty()) j["label"] = e.label();
  return j;
}

Equation equation_from_json(const Field* f, const Json& j, const std::vector<std::string>* declared) {
  if (!j.is_object()) throw std::invalid_argument("equation must be an object");
  std::string label = j.value("label", std::string());
  if (j.contains("product") || j.contains("combine")) {
    bool prod = j.contains("product");
    std::vector<Equation> ch;
    for (auto& c : j.at(prod ? "product" : "combine")) ch.push_back(equation_from_json(f, c, declared));
    return prod ? Equation::product(std::move(ch), label) : Equation::combine(std::move(ch), label);
  }
  MultiPoly poly = poly_from_json(f, j, declared);
  std::vector<MultiPoly> cleared;
  if (j.contains("cleared"))
    for (auto& c : j.at("cleared")) cleared.push_back(poly_from_json(f, c, declared));
  return Equation::leaf(std::move(poly), std::move(cleared), label);
}

Json system_to_json(const EquationSystem& s) {
  Json j;
  j["field"] = field_to_json(s.field);
  j["unknowns"] = s.unknowns;
  Json eqs = Json::array();
  for (auto& e : s.equations) eqs.push_back(equation_to_json(e));
  j["equations"] = eqs;
  j["meta"] = s.meta;
  return j;
}

EquationSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("system must be a JSON object");
  for (const char* key : {"field", "unknowns", "equations"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing key: ") + key);
  EquationSystem s;
  s.field = field_from_json(j.at("field"));
  for (auto& u : j.at("unknowns")) {
    std::string name = u.get<std::string>();
    if (s.has_unknown(name)) throw std::invalid_argument("duplicate unknown: " + name);
    s.unknowns.push_back(name);
  }
  for (auto& e : j.at("equations")) s.equations.push_back(equation_from_json(s.field, e, &s.unknowns));
  if (j.contains("meta")) s.meta = j.at("meta");
  return s;
}

Json assignment_to_json(const Assignment& a) {
  Json j = Json::object();
  for (auto& [k, v] : a) j[k] = v.to_string();
  return j;
}

Assignment assignment_from_json(const Field* f, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("assignment must be a JSON object");
  Assignment a;
  for (auto& [k, v] : j.items()) a[k] = RatFunc::parse(f, v.get<std::string>());
  return a;
}

Json divisor_to_json(const Divisor& d) {
  Json j = Json::object();
  for (auto& [P, m] : d) j[P.to_string()] = m;
  return j;
}

Divisor divisor_from_json(const Field* f, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("divisor must be a JSON object");
  Divisor d;
  for (auto& [k, v] : j.items()) {
    int m = v.get<int>();
    if (m != 0) d[Place::parse(f, k)] += m;
  }
  return d;
}

}  // namespace h10ff
