#include "dyncorr/channel_io.hpp"

#include <fstream>

#include "dyncorr/errors.hpp"

namespace dyncorr {

namespace {

ComplexMatrix matrix_from_json(const nlohmann::json& m) {
  if (!m.is_array() || m.empty()) throw FormatError("channel file: matrix must be a nested array");
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m.at(0).size());
  ComplexMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = m.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw FormatError("channel file: ragged matrix rows");
    for (int j = 0; j < cols; ++j) {
      const auto& cell = row.at(static_cast<size_t>(j));
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number())
        throw FormatError("channel file: entries must be [re, im] pairs");
      out(i, j) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return out;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ChannelFile parse_channel_json(const nlohmann::json& doc, const Tolerances& tol) {
  if (!doc.is_object()) throw FormatError("channel file: top level must be an object");
  if (!doc.contains("kind") || !doc.at("kind").is_string())
    throw FormatError("channel file: missing string field 'kind'");
  if (!doc.contains("dims") || !doc.at("dims").is_array() || doc.at("dims").size() != 2)
    throw FormatError("channel file: 'dims' must be [d_A, d_B]");
  const std::string kind = doc.at("kind").get<std::string>();
  const int d_A = doc.at("dims").at(0).get<int>();
  const int d_B = doc.at("dims").at(1).get<int>();
  if (d_A < 2 || d_B < 2) throw FormatError("channel file: dims must be >= 2");
  const int dim = d_A * d_B;

  if (kind == "unitary") {
    if (!doc.contains("matrix")) throw FormatError("channel file: unitary needs 'matrix'");
    ComplexMatrix u = matrix_from_json(doc.at("matrix"));
    if (u.rows() != dim || u.cols() != dim)
      throw DimensionMismatch("channel file: matrix size does not match dims");
    return ChannelFile{Channel::unitary(std::move(u), tol), d_A, d_B};
  }
  if (kind == "kraus") {
    if (!doc.contains("operators") || !doc.at("operators").is_array() ||
        doc.at("operators").empty())
      throw FormatError("channel file: kraus needs a nonempty 'operators' array");
    std::vector<ComplexMatrix> ops;
    for (const auto& op : doc.at("operators")) {
      ComplexMatrix k = matrix_from_json(op);
      if (k.rows() != dim || k.cols() != dim)
        throw DimensionMismatch("channel file: operator size does not match dims");
      ops.push_back(std::move(k));
    }
    return ChannelFile{Channel::kraus(std::move(ops), tol), d_A, d_B};
  }
  throw FormatError("channel file: kind must be 'unitary' or 'kraus'");
}

ChannelFile load_channel_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open channel file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("channel file: invalid JSON: ") + e.what());
  }
  return parse_channel_json(doc, tol);
}

nlohmann::json channel_to_json(const Channel& ch, int d_A, int d_B) {
  if (ch.dim() != d_A * d_B) throw DimensionMismatch("channel_to_json: dims mismatch");
  nlohmann::json doc;
  doc["dims"] = {d_A, d_B};
  if (ch.is_unitary()) {
    doc["kind"] = "unitary";
    doc["matrix"] = matrix_to_json(ch.unitary_matrix());
  } else {
    doc["kind"] = "kraus";
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& k : ch.operators()) ops.push_back(matrix_to_json(k));
    doc["operators"] = std::move(ops);
  }
  return doc;
}

void save_channel_file(const Channel& ch, int d_A, int d_B, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << channel_to_json(ch, d_A, d_B).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace dyncorr
