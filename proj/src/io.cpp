#include "multirank/io.hpp"

#include "multirank/error.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace multirank {

namespace {

std::uint64_t get_uint(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw InputError(where + ": \"" + key + "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

BigInt parse_integer(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw InputError(where + ": empty integer string");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw InputError(where + ": not an integer: \"" + s + "\"");
    }
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s);
  }
  throw InputError(where + ": expected an integer or decimal string");
}

Elem parse_field_value(const Field& field, const Json& v, const std::string& where) {
  if (v.is_array()) {
    if (v.size() != field.e()) {
      throw InputError(where + ": digit list has length " + std::to_string(v.size()) + ", field needs " +
                       std::to_string(field.e()));
    }
    FieldElement el;
    for (const auto& d : v) {
      if (!d.is_number_integer()) throw InputError(where + ": digits must be integers");
      const std::int64_t x = d.get<std::int64_t>();
      if (x < 0 || x >= static_cast<std::int64_t>(field.p())) {
        throw InputError(where + ": digit " + std::to_string(x) + " is not reduced mod " + std::to_string(field.p()));
      }
      el.digits.push_back(static_cast<std::uint32_t>(x));
    }
    return field.index(el);
  }
  BigInt x = parse_integer(v, where);
  BigInt r = x % field.p();
  if (r < 0) r += field.p();
  return r.convert_to<Elem>();
}

Json field_value_json(const Field& field, Elem v) {
  Json digits = Json::array();
  for (auto d : field.element(v).digits) digits.push_back(d);
  return digits;
}

std::vector<unsigned> parse_index(const Json& idx, unsigned d, unsigned n, const std::string& where) {
  if (!idx.is_array()) throw InputError(where + ": \"idx\" must be an array");
  if (idx.size() != d) {
    throw InputError(where + ": index has length " + std::to_string(idx.size()) + ", expected d = " +
                     std::to_string(d));
  }
  std::vector<unsigned> out;
  for (const auto& v : idx) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() >= n) {
      throw InputError(where + ": index component out of range [0, " + std::to_string(n) + ")");
    }
    out.push_back(v.get<unsigned>());
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

template <class T, class Parse>
void fill_entries(const Json& j, unsigned d, unsigned n, T& form, Parse parse_value) {
  if (!j.contains("entries") || !j.at("entries").is_array()) throw InputError("tensor: missing \"entries\" array");
  std::map<std::size_t, typename std::decay_t<decltype(parse_value(Json(), std::string()))>> seen;
  std::size_t k = 0;
  for (const auto& entry : j.at("entries")) {
    const std::string where = "entry " + std::to_string(k++);
    if (!entry.is_object() || !entry.contains("idx") || !entry.contains("val")) {
      throw InputError(where + ": needs \"idx\" and \"val\"");
    }
    const auto idx = parse_index(entry.at("idx"), d, n, where);
    auto val = parse_value(entry.at("val"), where);
    const std::size_t flat = flat_index(idx, n);
    auto [it, fresh] = seen.emplace(flat, val);
    if (!fresh && it->second != val) throw InputError(where + ": duplicate index with a conflicting value");
    form.coeffs()[flat] = val;
  }
}

}  // namespace

Json field_to_json(const FieldSpec& spec) {
  Json j;
  j["p"] = spec.p;
  j["e"] = spec.e;
  j["modulus"] = spec.modulus;
  return j;
}

FieldPtr parse_field(const Json& j) {
  if (!j.is_object()) throw InputError("field: expected an object or \"Z\"");
  const auto p = get_uint(j, "p", "field");
  const auto e = j.contains("e") ? get_uint(j, "e", "field") : 1;
  try {
    if (!j.contains("modulus")) return Field::make(static_cast<std::uint32_t>(p), static_cast<unsigned>(e));
    FieldSpec spec;
    spec.p = static_cast<std::uint32_t>(p);
    spec.e = static_cast<unsigned>(e);
    spec.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
    return Field::make(spec);
  } catch (const Json::exception& ex) {
    throw InputError(std::string("field: ") + ex.what());
  } catch (const DomainError& ex) {
    throw InputError(std::string("field: ") + ex.what());
  } catch (const BudgetError& ex) {
    throw InputError(std::string("field: ") + ex.what());
  }
}

AnyTensor parse_tensor(const Json& j) {
  if (!j.is_object()) throw InputError("tensor: expected a JSON object");
  if (!j.contains("field")) throw InputError("tensor: missing \"field\"");
  const unsigned d = static_cast<unsigned>(get_uint(j, "d", "tensor"));
  const unsigned n = static_cast<unsigned>(get_uint(j, "n", "tensor"));
  if (d < 2) throw InputError("tensor: d must be >= 2");
  if (n < 1) throw InputError("tensor: n must be >= 1");
  try {
    checked_entries(n, d);
  } catch (const Error& e) {
    throw InputError(std::string("tensor: ") + e.what());
  }
  const Json& fj = j.at("field");
  if (fj.is_string()) {
    if (fj.get<std::string>() != "Z") throw InputError("tensor: field string must be \"Z\"");
    IntMultilinearForm f(d, n);
    fill_entries(j, d, n, f, [](const Json& v, const std::string& where) { return parse_integer(v, where); });
    return f;
  }
  FieldPtr field = parse_field(fj);
  MultilinearForm f(field, d, n);
  fill_entries(j, d, n, f,
               [&](const Json& v, const std::string& where) { return parse_field_value(*field, v, where); });
  return f;
}

AnyTensor parse_tensor_file(const std::filesystem::path& path) { return parse_tensor(read_json_file(path)); }

Json tensor_to_json(const MultilinearForm& f) {
  Json j;
  j["field"] = field_to_json(f.field().spec());
  j["d"] = f.d();
  j["n"] = f.n();
  Json entries = Json::array();
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    if (f.coeffs()[flat] == 0) continue;
    Json e;
    e["idx"] = multi_index(flat, f.n(), f.d());
    e["val"] = field_value_json(f.field(), f.coeffs()[flat]);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json tensor_to_json(const IntMultilinearForm& f) {
  Json j;
  j["field"] = "Z";
  j["d"] = f.d();
  j["n"] = f.n();
  Json entries = Json::array();
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    if (f.coeffs()[flat] == 0) continue;
    Json e;
    e["idx"] = multi_index(flat, f.n(), f.d());
    e["val"] = to_string(f.coeffs()[flat]);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json tensor_to_json(const AnyTensor& f) {
  return std::visit([](const auto& t) { return tensor_to_json(t); }, f);
}

AnyPoly parse_poly(const Json& j) {
  if (!j.is_object()) throw InputError("polynomial: expected a JSON object");
  if (!j.contains("field")) throw InputError("polynomial: missing \"field\"");
  const unsigned n = static_cast<unsigned>(get_uint(j, "n", "polynomial"));
  const unsigned d = static_cast<unsigned>(get_uint(j, "d", "polynomial"));
  if (n < 1) throw InputError("polynomial: n must be >= 1");
  if (!j.contains("monomials") || !j.at("monomials").is_array()) {
    throw InputError("polynomial: missing \"monomials\" array");
  }
  auto parse_exp = [&](const Json& m, const std::string& where) {
    if (!m.is_object() || !m.contains("exp") || !m.contains("val")) {
      throw InputError(where + ": needs \"exp\" and \"val\"");
    }
    const Json& e = m.at("exp");
    if (!e.is_array() || e.size() != n) throw InputError(where + ": exponent must have n entries");
    Exponent out;
    unsigned total = 0;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) {
        throw InputError(where + ": exponents must be non-negative integers");
      }
      out.push_back(x.get<unsigned>());
      total += out.back();
    }
    if (total != d) throw InputError(where + ": exponent sums to " + std::to_string(total) + ", not d");
    return out;
  };
  const Json& fj = j.at("field");
  std::size_t k = 0;
  if (fj.is_string()) {
    if (fj.get<std::string>() != "Z") throw InputError("polynomial: field string must be \"Z\"");
    IntHomogeneousForm f(n, d);
    std::map<Exponent, BigInt> seen;
    for (const auto& m : j.at("monomials")) {
      const std::string where = "monomial " + std::to_string(k++);
      auto e = parse_exp(m, where);
      BigInt v = parse_integer(m.at("val"), where);
      auto [it, fresh] = seen.emplace(e, v);
      if (!fresh && it->second != v) throw InputError(where + ": duplicate exponent with a conflicting value");
      f.set(e, v);
    }
    return f;
  }
  FieldPtr field = parse_field(fj);
  HomogeneousForm f(field, n, d);
  std::map<Exponent, Elem> seen;
  for (const auto& m : j.at("monomials")) {
    const std::string where = "monomial " + std::to_string(k++);
    auto e = parse_exp(m, where);
    Elem v = parse_field_value(*field, m.at("val"), where);
    auto [it, fresh] = seen.emplace(e, v);
    if (!fresh && it->second != v) throw InputError(where + ": duplicate exponent with a conflicting value");
    f.set(e, v);
  }
  return f;
}

AnyPoly parse_poly_file(const std::filesystem::path& path) { return parse_poly(read_json_file(path)); }

Json poly_to_json(const HomogeneousForm& f) {
  Json j;
  j["field"] = field_to_json(f.field().spec());
  j["n"] = f.n();
  j["d"] = f.d();
  Json monos = Json::array();
  for (const auto& [e, c] : f.monomials()) {
    Json m;
    m["exp"] = e;
    m["val"] = field_value_json(f.field(), c);
    monos.push_back(std::move(m));
  }
  j["monomials"] = std::move(monos);
  return j;
}

Json poly_to_json(const IntHomogeneousForm& f) {
  Json j;
  j["field"] = "Z";
  j["n"] = f.n();
  j["d"] = f.d();
  Json monos = Json::array();
  for (const auto& [e, c] : f.monomials()) {
    Json m;
    m["exp"] = e;
    m["val"] = to_string(c);
    monos.push_back(std::move(m));
  }
  j["monomials"] = std::move(monos);
  return j;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json to_json(const ExactLogRank& r) {
  Json j;
  j["count"] = to_string(r.count);
  j["base"] = r.base;
  j["ambient"] = r.ambient;
  j["float"] = r.value();
  return j;
}

Json to_json(const LevelEstimate& e) {
  Json j;
  j["q"] = e.profile.q;
  j["ambient"] = e.profile.ambient;
  Json levels = Json::array();
  for (std::size_t i = 0; i < e.profile.entries.size(); ++i) {
    Json l;
    l["l"] = e.profile.entries[i].first;
    l["count"] = to_string(e.profile.entries[i].second);
    l["dim"] = e.per_level_dim[i];
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["stabilized"] = e.stabilized ? Json(*e.stabilized) : Json(nullptr);
  j["gap"] = e.gap;
  j["agree"] = e.agree;
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  return j;
}

Json to_json(const PrkResult& r, const FieldPtr& field, unsigned d, unsigned n) {
  Json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["exact"] = r.exact;
  if (r.certificate) {
    Json cert = Json::array();
    for (const auto& t : *r.certificate) {
      Json term;
      term["slots"] = t.slots;
      term["term"] = tensor_to_json(expand(t, field, d, n));
      cert.push_back(std::move(term));
    }
    j["certificate"] = std::move(cert);
  }
  return j;
}

Json to_json(const StrResult& r) {
  Json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["exact"] = r.exact;
  if (r.certificate) {
    Json cert = Json::array();
    for (const auto& t : *r.certificate) {
      Json term;
      term["g"] = poly_to_json(t.g);
      term["h"] = poly_to_json(t.h);
      cert.push_back(std::move(term));
    }
    j["certificate"] = std::move(cert);
  }
  return j;
}

Json to_json(const HeightRankEstimate& e) {
  Json j;
  j["ambient"] = e.ambient;
  if (e.q) j["q"] = e.q;
  if (e.ark) j["ark"] = to_json(*e.ark);
  Json pts = Json::array();
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    Json p;
    p[e.q ? "R" : "L"] = e.points[i].param;
    p["count"] = to_string(e.points[i].count);
    p["value"] = e.points[i].value;
    if (i < e.dominates_ark.size()) p["dominates_ark"] = static_cast<bool>(e.dominates_ark[i]);
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  j["non_increasing"] = e.non_increasing;
  j["non_decreasing"] = e.non_decreasing;
  return j;
}

}  // namespace multirank
