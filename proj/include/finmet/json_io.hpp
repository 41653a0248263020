#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "finmet/embedding.hpp"
#include "finmet/metric_space.hpp"
#include "finmet/reduction.hpp"
#include "finmet/tail.hpp"

namespace finmet::io {

using nlohmann::json;

// {"labels": [...], "d": [[...], ...], "pseudo": bool}
FiniteMetricSpace metric_from_json(const json& j);
json metric_to_json(const FiniteMetricSpace& m);
FiniteMetricSpace load_metric(const std::filesystem::path& path);

// {"q": number, "coords": {label: [numbers...]}}; coordinate order follows
// the space's labels
Embedding embedding_from_json(const json& j, const FiniteMetricSpace& space);
json embedding_to_json(const Embedding& e, const FiniteMetricSpace& space);
Embedding load_embedding(const std::filesystem::path& path,
                         const FiniteMetricSpace& space);

// {"p","q","A","C","D","eps":[...],"eta":[...],
//  "levels":[{"metric": path-or-object, "embedding": path-or-object}, ...]};
// relative paths resolve against base_dir
ReductionInstance instance_from_json(const json& j,
                                     const std::filesystem::path& base_dir);
ReductionInstance load_instance(const std::filesystem::path& path);

// [{"kind":"finite_support","values":[...]},
//  {"kind":"power","c":..,"s":..}, {"kind":"geometric","c":..,"r":..}]
std::vector<TailModel> models_from_json(const json& j);
std::vector<TailModel> load_models(const std::filesystem::path& path);

json load_json(const std::filesystem::path& path);
void write_json(const json& j, const std::filesystem::path& path);

// labels -> indices in the given space
std::vector<std::size_t> indices_from_labels(const json& labels,
                                             const FiniteMetricSpace& space);

// distance matrix / flat table CSV (the --csv flag)
std::string metric_to_csv(const FiniteMetricSpace& m);
std::string table_to_csv(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

}  // namespace finmet::io
