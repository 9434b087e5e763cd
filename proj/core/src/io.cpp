#include "ucgl/io.hpp"

#include <nlohmann/json.hpp>

#include "ucgl/error.hpp"

namespace ucgl {

namespace {

using nlohmann::ordered_json;

ordered_json encode_complex(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

Complex decode_complex(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

ordered_json encode_matrix(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(encode_complex(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix decode_matrix(const nlohmann::json& j) {
  const std::size_t size = j.size();
  ComplexMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (j.at(i).size() != size) throw Error(ErrorKind::invalid_dimension, "matrix JSON is not square");
    for (std::size_t k = 0; k < size; ++k) m(i, k) = decode_complex(j.at(i).at(k));
  }
  return m;
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return encode_matrix(m).dump(); }

ComplexMatrix matrix_from_json(const std::string& text) { return decode_matrix(nlohmann::json::parse(text)); }

std::string sampled_points_to_json(const std::vector<SampledPoint>& points) {
  ordered_json arr = ordered_json::array();
  for (const auto& sp : points) {
    ordered_json s = ordered_json::array();
    for (const auto& x : sp.point.s) s.push_back(encode_complex(x));
    ordered_json item;
    item["B"] = encode_matrix(sp.point.b);
    item["A"] = encode_matrix(sp.point.a);
    item["s"] = std::move(s);
    item["flags"] = {{"fixed_route", sp.flags.fixed_route},
                     {"direct_route", sp.flags.direct_route},
                     {"c_reality", sp.flags.c_reality}};
    arr.push_back(std::move(item));
  }
  return arr.dump(2) + "\n";
}

std::vector<SampledPoint> sampled_points_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<SampledPoint> out;
  for (const auto& item : j) {
    SampledPoint sp;
    sp.point.b = decode_matrix(item.at("B"));
    sp.point.a = decode_matrix(item.at("A"));
    for (const auto& x : item.at("s")) sp.point.s.push_back(decode_complex(x));
    const auto& flags = item.at("flags");
    sp.flags.fixed_route = flags.at("fixed_route").get<bool>();
    sp.flags.direct_route = flags.at("direct_route").get<bool>();
    sp.flags.c_reality = flags.at("c_reality").get<bool>();
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace ucgl
