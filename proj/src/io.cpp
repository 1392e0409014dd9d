#include "dket/io.hpp"

#include <fstream>

namespace dket {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 1 || cols < 1)
      throw ParseError("matrix: rows and cols must be positive");
    const auto& data = j.at("data");
    if (!data.is_array() ||
        static_cast<Eigen::Index>(data.size()) != rows * cols)
      throw ParseError("matrix: data must hold rows*cols [re, im] pairs");
    ComplexMatrix m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++idx) {
        const auto& pair = data.at(idx);
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError("matrix: each entry must be a [re, im] pair");
        m(i, j2) = Complex(pair.at(0).get<double>(),
                           pair.at(1).get<double>());
      }
    if (!all_finite(m)) throw ParseError("matrix: entries must be finite");
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

json doubleket_to_json(const DoubleKet& k) {
  json j = matrix_to_json(k.mat);
  j["kind"] = "doubleket";
  return j;
}

DoubleKet doubleket_from_json(const json& j) {
  if (j.value("kind", "") != "doubleket")
    throw ParseError("doubleket: missing kind=doubleket");
  return DoubleKet{matrix_from_json(j)};
}

json spanning_set_to_json(const SpanningSet& s) {
  json elements = json::array();
  for (const auto& e : s.elements) elements.push_back(matrix_to_json(e));
  return json{{"dim", s.dim},
              {"elements", elements},
              {"weights", s.weights},
              {"labels", s.labels}};
}

SpanningSet spanning_set_from_json(const json& j) {
  try {
    SpanningSet s;
    s.dim = j.at("dim").get<Eigen::Index>();
    for (const auto& e : j.at("elements"))
      s.elements.push_back(matrix_from_json(e));
    s.weights = j.at("weights").get<std::vector<double>>();
    if (j.contains("labels"))
      s.labels = j.at("labels").get<std::vector<std::string>>();
    else
      for (std::size_t k = 0; k < s.elements.size(); ++k)
        s.labels.push_back(std::to_string(k));
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("spanning set: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("spanning set: ") + e.what());
  }
}

json kraus_channel_to_json(const KrausChannel& c) {
  json ops = json::array();
  for (const auto& a : c.ops) ops.push_back(matrix_to_json(a));
  return json{{"dim", c.dim()}, {"kraus", ops}};
}

KrausChannel kraus_channel_from_json(const json& j) {
  try {
    KrausChannel c;
    for (const auto& a : j.at("kraus")) c.ops.push_back(matrix_from_json(a));
    if (c.ops.empty())
      throw ParseError("kraus channel: needs at least one operator");
    const Eigen::Index d = j.at("dim").get<Eigen::Index>();
    for (const auto& a : c.ops)
      if (a.rows() != d || a.cols() != d)
        throw ParseError("kraus channel: operator dimension mismatch");
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("kraus channel: ") + e.what());
  }
}

json check_report_to_json(const CheckReport& r) {
  json j{{"statement", r.statement},
         {"max_residual", r.max_residual},
         {"pass", r.pass},
         {"tol", r.tol}};
  if (std::isnan(r.frame_min_eig))
    j["frame_min_eig"] = nullptr;
  else
    j["frame_min_eig"] = r.frame_min_eig;
  return j;
}

json teleport_record_to_json(const TeleportRecord& r) {
  return json{{"label", r.label},
              {"probability", r.probability},
              {"conditional", matrix_to_json(r.conditional)},
              {"corrected", matrix_to_json(r.corrected)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace dket
