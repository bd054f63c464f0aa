#pragma once

#include <string>
#include <variant>

#include "affval/bodies.hpp"
#include "affval/symtensor.hpp"

namespace affval {

// Body spec file (JSON):
//   {"type":"polytope","vertices":[[...],...]}
//   {"type":"ellipsoid","Q":[[...],...]}
ConvexBody parse_body(const std::string& path);
ConvexBody parse_body_json(const std::string& text);
std::string body_to_json(const ConvexBody& K);
void write_body(const ConvexBody& K, const std::string& path);

// Tensor file: header line "n,p,q,variance", then one line per non-zero
// coefficient "a;b;value" with the multi-indices comma-separated (the b
// part is empty for plain symmetric tensors).  variance is one of
// sym_vec, sym_cov, mixed_phi, mixed_psi.
using AnyTensor = std::variant<SymTensor, MixedTensor>;
AnyTensor parse_tensor(const std::string& path);
AnyTensor parse_tensor_text(const std::string& text);
std::string tensor_to_text(const SymTensor& t);
std::string tensor_to_text(const MixedTensor& t);
void write_tensor(const AnyTensor& t, const std::string& path);

// RFC-4180-style CSV; the first row is the header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
void emit_csv(const Table& table, const std::string& path);
std::string table_to_csv(const Table& table);

// two-column whitespace plot data
void emit_plotdata(const std::vector<std::pair<double, double>>& series, const std::string& path);

std::string format_double(double v);

}  // namespace affval
