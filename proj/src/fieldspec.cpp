#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "heights/exact.hpp"
#include "heights/numberfield.hpp"

namespace heights {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

void expect(const std::string& s, size_t& i, char c) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != c)
    throw std::invalid_argument(std::string("field file: expected '") + c + "' in value: " + s);
  ++i;
}

bool peek(const std::string& s, size_t& i, char c) {
  skip_ws(s, i);
  if (i < s.size() && s[i] == c) {
    ++i;
    return true;
  }
  return false;
}

std::string parse_quoted(const std::string& s, size_t& i) {
  expect(s, i, '"');
  std::string out;
  while (i < s.size() && s[i] != '"') out += s[i++];
  if (i >= s.size()) throw std::invalid_argument("field file: unterminated string in value: " + s);
  ++i;
  return out;
}

mpz_class parse_integer(const std::string& text) {
  std::string t = trim(text);
  mpz_class z;
  if (t.empty() || z.set_str(t, 10) != 0)
    throw std::invalid_argument("field file: invalid integer '" + text + "'");
  return z;
}

ZPoly parse_int_array(const std::string& s) {
  size_t i = 0;
  expect(s, i, '[');
  ZPoly out;
  if (!peek(s, i, ']')) {
    while (true) {
      skip_ws(s, i);
      size_t start = i;
      while (i < s.size() && s[i] != ',' && s[i] != ']') ++i;
      out.push_back(parse_integer(s.substr(start, i - start)));
      if (peek(s, i, ',')) continue;
      expect(s, i, ']');
      break;
    }
  }
  skip_ws(s, i);
  if (i != s.size()) throw std::invalid_argument("field file: trailing text after array: " + s);
  return out;
}

QMatrix parse_rational_matrix(const std::string& s) {
  size_t i = 0;
  expect(s, i, '[');
  QMatrix out;
  if (!peek(s, i, ']')) {
    while (true) {
      expect(s, i, '[');
      std::vector<mpq_class> row;
      if (!peek(s, i, ']')) {
        while (true) {
          row.push_back(parse_rational(parse_quoted(s, i)));
          if (peek(s, i, ',')) continue;
          expect(s, i, ']');
          break;
        }
      }
      out.push_back(std::move(row));
      if (peek(s, i, ',')) continue;
      expect(s, i, ']');
      break;
    }
  }
  skip_ws(s, i);
  if (i != s.size()) throw std::invalid_argument("field file: trailing text after matrix: " + s);
  return out;
}

}  // namespace

NumberField field_from_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open field file: " + path);

  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("field file: expected 'key = value' but got: " + trim(line));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("field file: expected 'key = value' but got: " + trim(line));
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("field file: duplicate key '" + key + "'");
  }

  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::invalid_argument("field file: missing key '" + k + "'");
    return it->second;
  };
  auto check_keys = [&](std::set<std::string> allowed) {
    for (const auto& [k, v] : kv) {
      (void)v;
      if (!allowed.count(k)) throw std::invalid_argument("field file: unknown key '" + k + "'");
    }
  };

  size_t pos = 0;
  std::string kind = parse_quoted(need("field"), pos);
  if (kind == "Q") {
    check_keys({"field"});
    return NumberField::make_rationals();
  }
  if (kind == "quadratic") {
    check_keys({"field", "d"});
    return NumberField::make_quadratic(parse_integer(need("d")));
  }
  if (kind == "custom") {
    check_keys({"field", "poly", "basis", "disc"});
    return NumberField::make_custom(parse_int_array(need("poly")), parse_rational_matrix(need("basis")),
                                    parse_integer(need("disc")));
  }
  throw std::invalid_argument("field file: unknown field kind '" + kind + "' (expected Q, quadratic or custom)");
}

NumberField field_from_string(const std::string& text) {
  std::string t = trim(text);
  if (t == "Q") return NumberField::make_rationals();
  if (t.rfind("quadratic:", 0) == 0) return NumberField::make_quadratic(parse_integer(t.substr(10)));
  if (t.rfind("custom:", 0) == 0) return field_from_spec_file(t.substr(7));
  throw std::invalid_argument("unknown field '" + t + "' (expected Q, quadratic:<d> or custom:<path>)");
}

}  // namespace heights
