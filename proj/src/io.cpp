#include "affval/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace affval {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

Vector json_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(std::string(what) + ": entry " + std::to_string(i) + " is not a number");
    v(i) = j[i].get<double>();
  }
  return v;
}

}  // namespace

ConvexBody parse_body_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("body: invalid JSON: ") + e.what());
  }
  if (!j.contains("type") || !j["type"].is_string())
    throw ParseError("body: missing \"type\" field");
  std::string type = j["type"].get<std::string>();
  if (type == "polytope") {
    if (!j.contains("vertices") || !j["vertices"].is_array())
      throw ParseError("body: polytope needs a \"vertices\" array");
    std::vector<Vector> verts;
    for (size_t i = 0; i < j["vertices"].size(); ++i)
      verts.push_back(json_vector(j["vertices"][i], "body: vertex"));
    try {
      return ConvexBody(Polytope(verts));
    } catch (const InvalidBody& e) {
      throw ParseError(std::string("body: ") + e.what());
    }
  }
  if (type == "ellipsoid") {
    if (!j.contains("Q") || !j["Q"].is_array())
      throw ParseError("body: ellipsoid needs a \"Q\" matrix");
    size_t n = j["Q"].size();
    Matrix Q(n, n);
    for (size_t r = 0; r < n; ++r) {
      Vector row = json_vector(j["Q"][r], "body: Q row");
      if (static_cast<size_t>(row.size()) != n) throw ParseError("body: Q is not square");
      Q.row(r) = row;
    }
    try {
      return ConvexBody(Ellipsoid(Q));
    } catch (const InvalidBody& e) {
      throw ParseError(std::string("body: ") + e.what());
    }
  }
  throw ParseError("body: unknown type '" + type + "'");
}

ConvexBody parse_body(const std::string& path) { return parse_body_json(read_file(path)); }

std::string body_to_json(const ConvexBody& K) {
  json j;
  switch (K.kind()) {
    case ConvexBody::Kind::Polytope: {
      j["type"] = "polytope";
      json verts = json::array();
      for (const Vector& v : K.polytope().vertices()) {
        json row = json::array();
        for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
        verts.push_back(row);
      }
      j["vertices"] = verts;
      break;
    }
    case ConvexBody::Kind::Ellipsoid: {
      j["type"] = "ellipsoid";
      json rows = json::array();
      const Matrix& Q = K.ellipsoid().Q();
      for (int r = 0; r < Q.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < Q.cols(); ++c) row.push_back(Q(r, c));
        rows.push_back(row);
      }
      j["Q"] = rows;
      break;
    }
    default:
      throw IoError("body: support oracles have no file form");
  }
  return j.dump(2);
}

void write_body(const ConvexBody& K, const std::string& path) {
  write_file(path, body_to_json(K) + "\n");
}

namespace {

MultiIndex parse_multi_index(const std::string& text, int n, int line_no) {
  MultiIndex a;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    a.exponents.push_back(std::stoi(tok));
  if (static_cast<int>(a.exponents.size()) != n)
    throw ParseError("tensor: line " + std::to_string(line_no) + ": multi-index has wrong length");
  return a;
}

}  // namespace

AnyTensor parse_tensor_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("tensor: empty file");
  int n = 0, p = 0, q = 0;
  std::string variance;
  {
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> parts;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    if (parts.size() != 4) throw ParseError("tensor: header must be n,p,q,variance");
    try {
      n = std::stoi(parts[0]);
      p = std::stoi(parts[1]);
      q = std::stoi(parts[2]);
    } catch (const std::exception&) {
      throw ParseError("tensor: header fields n,p,q must be integers");
    }
    variance = parts[3];
  }

  bool is_sym = (variance == "sym_vec" || variance == "sym_cov");
  bool is_mixed = (variance == "mixed_phi" || variance == "mixed_psi");
  if (!is_sym && !is_mixed)
    throw ParseError("tensor: variance must be sym_vec, sym_cov, mixed_phi or mixed_psi");

  if (is_sym) {
    SymTensor t(n, p, variance == "sym_vec" ? Variance::VectorSide : Variance::CovectorSide);
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string sa, sb, sc;
      if (!std::getline(ss, sa, ';') || !std::getline(ss, sb, ';') || !std::getline(ss, sc))
        throw ParseError("tensor: line " + std::to_string(line_no) + ": expected a;;value");
      if (!sb.empty())
        throw ParseError("tensor: line " + std::to_string(line_no) + ": symmetric tensor has no second index");
      t.set_coeff(parse_multi_index(sa, n, line_no), std::stod(sc));
    }
    return t;
  }

  MixedTensor t(n, p, q, variance == "mixed_phi" ? MixedVariance::PhiArg : MixedVariance::PsiArg);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string sa, sb, sc;
    if (!std::getline(ss, sa, ';') || !std::getline(ss, sb, ';') || !std::getline(ss, sc))
      throw ParseError("tensor: line " + std::to_string(line_no) + ": expected a;b;value");
    t.set_coeff(parse_multi_index(sa, n, line_no), parse_multi_index(sb, n, line_no), std::stod(sc));
  }
  return t;
}

AnyTensor parse_tensor(const std::string& path) { return parse_tensor_text(read_file(path)); }

namespace {

std::string multi_index_str(const MultiIndex& a) {
  std::string s;
  for (int i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s;
}

}  // namespace

std::string tensor_to_text(const SymTensor& t) {
  std::ostringstream os;
  os << t.n() << "," << t.degree() << ",0,"
     << (t.variance() == Variance::VectorSide ? "sym_vec" : "sym_cov") << "\n";
  for (int i = 0; i < t.basis().size(); ++i)
    if (t.coeffs()(i) != 0.0)
      os << multi_index_str(t.basis().at(i)) << ";;" << format_double(t.coeffs()(i)) << "\n";
  return os.str();
}

std::string tensor_to_text(const MixedTensor& t) {
  std::ostringstream os;
  os << t.n() << "," << t.p() << "," << t.q() << ","
     << (t.variance() == MixedVariance::PhiArg ? "mixed_phi" : "mixed_psi") << "\n";
  for (int a = 0; a < t.basis_p().size(); ++a)
    for (int b = 0; b < t.basis_q().size(); ++b)
      if (t.coeffs()(a, b) != 0.0)
        os << multi_index_str(t.basis_p().at(a)) << ";" << multi_index_str(t.basis_q().at(b)) << ";"
           << format_double(t.coeffs()(a, b)) << "\n";
  return os.str();
}

void write_tensor(const AnyTensor& t, const std::string& path) {
  if (std::holds_alternative<SymTensor>(t))
    write_file(path, tensor_to_text(std::get<SymTensor>(t)));
  else
    write_file(path, tensor_to_text(std::get<MixedTensor>(t)));
}

namespace {

std::string csv_escape(const std::string& s) {
  bool need = s.find_first_of(",\"\n") != std::string::npos;
  if (!need) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string table_to_csv(const Table& table) {
  std::ostringstream os;
  for (size_t i = 0; i < table.header.size(); ++i)
    os << (i ? "," : "") << csv_escape(table.header[i]);
  os << "\r\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
    os << "\r\n";
  }
  return os.str();
}

void emit_csv(const Table& table, const std::string& path) {
  write_file(path, table_to_csv(table));
}

void emit_plotdata(const std::vector<std::pair<double, double>>& series, const std::string& path) {
  std::ostringstream os;
  for (const auto& [x, y] : series) os << format_double(x) << " " << format_double(y) << "\n";
  write_file(path, os.str());
}

}  // namespace affval
