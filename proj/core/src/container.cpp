#include "curvematch/container.hpp"

#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "curvematch/errors.hpp"

namespace curvematch {

namespace {

constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  require(in.good(), ErrorCode::ParseError, "truncated container");
  return v;
}
std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  require(in.good(), ErrorCode::ParseError, "truncated container");
  return v;
}

void write_magic(std::ostream& out, const char magic[4]) { out.write(magic, 4); }

void expect_magic(std::istream& in, const char magic[4]) {
  char buf[4] = {};
  in.read(buf, 4);
  require(in.good() && std::memcmp(buf, magic, 4) == 0, ErrorCode::ParseError,
          "bad container magic");
}

void write_doubles_rowmajor(std::ostream& out, const Eigen::MatrixXd& m) {
  std::vector<double> row(m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(sizeof(double) * row.size()));
  }
}

Eigen::MatrixXd read_doubles_rowmajor(std::istream& in, std::uint64_t rows, std::uint64_t cols) {
  require(rows > 0 && cols > 0 && rows < (1ull << 32) && cols < (1ull << 32) &&
              rows * cols < (1ull << 34),
          ErrorCode::ParseError, "implausible container dimensions");
  Eigen::MatrixXd m(rows, cols);
  std::vector<double> row(cols);
  for (std::uint64_t i = 0; i < rows; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(sizeof(double) * cols));
    require(in.good(), ErrorCode::ParseError, "truncated container payload");
    for (std::uint64_t j = 0; j < cols; ++j) m(i, j) = row[j];
  }
  return m;
}

}  // namespace

void write_matrix(std::ostream& out, const Eigen::MatrixXd& matrix, std::uint32_t kind) {
  write_magic(out, "CMBN");
  write_u32(out, kVersion);
  write_u32(out, kind);
  write_u64(out, static_cast<std::uint64_t>(matrix.rows()));
  write_u64(out, static_cast<std::uint64_t>(matrix.cols()));
  write_doubles_rowmajor(out, matrix);
}

Eigen::MatrixXd read_matrix(std::istream& in, std::uint32_t* kind) {
  expect_magic(in, "CMBN");
  require(read_u32(in) == kVersion, ErrorCode::ParseError, "unsupported container version");
  const std::uint32_t k = read_u32(in);
  if (kind) *kind = k;
  const std::uint64_t rows = read_u64(in);
  const std::uint64_t cols = read_u64(in);
  return read_doubles_rowmajor(in, rows, cols);
}

void save_descriptor_field(const DescriptorField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::IoError, "cannot write '" + path.string() + "'");
  write_matrix(out, field.values, field.kind == DescriptorKind::Hks ? 1 : 2);
  require(out.good(), ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

DescriptorField load_descriptor_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::uint32_t kind = 0;
  DescriptorField field;
  field.values = read_matrix(in, &kind);
  require(kind == 1 || kind == 2, ErrorCode::ParseError, "unknown descriptor kind tag");
  field.kind = kind == 1 ? DescriptorKind::Hks : DescriptorKind::Wks;
  return field;
}

void save_basis(const SpectralBasis& basis, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::IoError, "cannot write '" + path.string() + "'");
  write_magic(out, "CMSB");
  write_u32(out, kVersion);
  write_u64(out, static_cast<std::uint64_t>(basis.k()));
  write_u64(out, static_cast<std::uint64_t>(basis.n()));
  write_doubles_rowmajor(out, basis.eigenvalues);
  write_doubles_rowmajor(out, basis.mass);
  write_doubles_rowmajor(out, basis.eigenfunctions);
  require(out.good(), ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

SpectralBasis load_basis(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IoError, "cannot open '" + path.string() + "'");
  expect_magic(in, "CMSB");
  require(read_u32(in) == kVersion, ErrorCode::ParseError, "unsupported container version");
  const std::uint64_t k = read_u64(in);
  const std::uint64_t n = read_u64(in);
  SpectralBasis basis;
  basis.eigenvalues = read_doubles_rowmajor(in, k, 1);
  basis.mass = read_doubles_rowmajor(in, n, 1);
  basis.eigenfunctions = read_doubles_rowmajor(in, n, k);
  return basis;
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
  require(rows.is_array() && !rows.empty(), ErrorCode::ParseError, "expected array of rows");
  const size_t cols = rows[0].size();
  Eigen::MatrixXd m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].is_array() && rows[i].size() == cols, ErrorCode::ParseError, "ragged rows");
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

}  // namespace

std::string descriptor_field_json(const DescriptorField& field) {
  nlohmann::json doc;
  doc["kind"] = field.kind == DescriptorKind::Hks ? "hks" : "wks";
  doc["values"] = matrix_to_json(field.values);
  return doc.dump();
}

DescriptorField descriptor_field_from_json(const std::string& text) {
  DescriptorField field;
  try {
    const auto doc = nlohmann::json::parse(text);
    const std::string kind = doc.at("kind").get<std::string>();
    require(kind == "hks" || kind == "wks", ErrorCode::ParseError, "unknown descriptor kind");
    field.kind = kind == "hks" ? DescriptorKind::Hks : DescriptorKind::Wks;
    field.values = matrix_from_json(doc.at("values"));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  return field;
}

std::string basis_json(const SpectralBasis& basis) {
  nlohmann::json doc;
  doc["eigenvalues"] = matrix_to_json(basis.eigenvalues);
  doc["mass"] = matrix_to_json(basis.mass);
  doc["eigenfunctions"] = matrix_to_json(basis.eigenfunctions);
  return doc.dump();
}

SpectralBasis basis_from_json(const std::string& text) {
  SpectralBasis basis;
  try {
    const auto doc = nlohmann::json::parse(text);
    basis.eigenvalues = matrix_from_json(doc.at("eigenvalues"));
    basis.mass = matrix_from_json(doc.at("mass"));
    basis.eigenfunctions = matrix_from_json(doc.at("eigenfunctions"));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  return basis;
}

}  // namespace curvematch
