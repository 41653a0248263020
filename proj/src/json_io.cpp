#include "finmet/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace finmet::io {

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path.string() + ": " +
                                e.what());
  }
  return j;
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path.string());
  out << j.dump(2) << '\n';
}

FiniteMetricSpace metric_from_json(const json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("d"))
    throw std::invalid_argument("metric JSON needs 'labels' and 'd'");
  std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
  const auto& rows_j = j.at("d");
  if (!rows_j.is_array() || rows_j.size() != labels.size())
    throw std::invalid_argument("metric JSON: 'd' must be a square matrix");
  std::vector<std::vector<double>> rows;
  rows.reserve(rows_j.size());
  for (const auto& r : rows_j) rows.push_back(r.get<std::vector<double>>());
  const bool pseudo = j.value("pseudo", false);
  return FiniteMetricSpace::from_rows(std::move(labels), rows, pseudo);
}

json metric_to_json(const FiniteMetricSpace& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j2 = 0; j2 < m.size(); ++j2) row.push_back(m.d(i, j2));
    rows.push_back(std::move(row));
  }
  return json{{"labels", m.labels()}, {"d", std::move(rows)},
              {"pseudo", m.is_pseudo()}};
}

FiniteMetricSpace load_metric(const std::filesystem::path& path) {
  return metric_from_json(load_json(path));
}

Embedding embedding_from_json(const json& j, const FiniteMetricSpace& space) {
  if (!j.is_object() || !j.contains("q") || !j.contains("coords"))
    throw std::invalid_argument("embedding JSON needs 'q' and 'coords'");
  Embedding e;
  e.q = j.at("q").get<double>();
  const auto& coords = j.at("coords");
  e.coords.reserve(space.size());
  std::size_t dim = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto it = coords.find(space.label(i));
    if (it == coords.end())
      throw std::invalid_argument("embedding JSON: missing coordinates for '" +
                                  space.label(i) + "'");
    auto v = it->get<std::vector<double>>();
    if (i == 0)
      dim = v.size();
    else if (v.size() != dim)
      throw std::invalid_argument("embedding JSON: ragged coordinate arity");
    e.coords.push_back(std::move(v));
  }
  e.dim = dim;
  return e;
}

json embedding_to_json(const Embedding& e, const FiniteMetricSpace& space) {
  if (e.coords.size() != space.size())
    throw std::invalid_argument("embedding/space size mismatch");
  json coords = json::object();
  for (std::size_t i = 0; i < space.size(); ++i)
    coords[space.label(i)] = e.coords[i];
  return json{{"q", e.q}, {"coords", std::move(coords)}};
}

Embedding load_embedding(const std::filesystem::path& path,
                         const FiniteMetricSpace& space) {
  return embedding_from_json(load_json(path), space);
}

namespace {

json resolve_entry(const json& entry, const std::filesystem::path& base_dir) {
  if (entry.is_string()) {
    std::filesystem::path p = entry.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return load_json(p);
  }
  return entry;
}

}  // namespace

ReductionInstance instance_from_json(const json& j,
                                     const std::filesystem::path& base_dir) {
  for (const char* key : {"p", "q", "A", "C", "D", "eps", "eta", "levels"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("instance JSON missing '") + key +
                                  "'");
  std::vector<ReductionLevel> levels;
  for (const auto& lv : j.at("levels")) {
    if (!lv.contains("metric") || !lv.contains("embedding"))
      throw std::invalid_argument(
          "instance JSON: each level needs 'metric' and 'embedding'");
    FiniteMetricSpace space =
        metric_from_json(resolve_entry(lv.at("metric"), base_dir));
    Embedding map =
        embedding_from_json(resolve_entry(lv.at("embedding"), base_dir), space);
    levels.push_back({std::move(space), std::move(map)});
  }
  return ReductionInstance(
      std::move(levels), j.at("eps").get<std::vector<double>>(),
      j.at("eta").get<std::vector<double>>(), j.at("p").get<double>(),
      j.at("q").get<double>(), j.at("A").get<double>(), j.at("C").get<double>(),
      j.at("D").get<double>());
}

ReductionInstance load_instance(const std::filesystem::path& path) {
  return instance_from_json(load_json(path), path.parent_path());
}

std::vector<TailModel> models_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("models JSON must be an array");
  std::vector<TailModel> models;
  for (const auto& m : j) {
    const std::string kind = m.at("kind").get<std::string>();
    if (kind == "finite_support") {
      models.emplace_back(
          FiniteSupportTail{m.at("values").get<std::vector<double>>()});
    } else if (kind == "power") {
      models.emplace_back(
          PowerTail{m.at("c").get<double>(), m.at("s").get<double>()});
    } else if (kind == "geometric") {
      models.emplace_back(
          GeometricTail{m.at("c").get<double>(), m.at("r").get<double>()});
    } else {
      throw std::invalid_argument("models JSON: unknown kind '" + kind + "'");
    }
  }
  return models;
}

std::vector<TailModel> load_models(const std::filesystem::path& path) {
  return models_from_json(load_json(path));
}

std::vector<std::size_t> indices_from_labels(const json& labels,
                                             const FiniteMetricSpace& space) {
  if (!labels.is_array())
    throw std::invalid_argument("expected a JSON array of labels");
  std::vector<std::size_t> idx;
  idx.reserve(labels.size());
  for (const auto& l : labels)
    idx.push_back(space.index_of(l.get<std::string>()));
  return idx;
}

std::string metric_to_csv(const FiniteMetricSpace& m) {
  std::ostringstream out;
  out << "label";
  for (std::size_t j = 0; j < m.size(); ++j) out << ',' << m.label(j);
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.label(i);
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << m.d(i, j);
    out << '\n';
  }
  return out.str();
}

std::string table_to_csv(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace finmet::io
