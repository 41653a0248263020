// finmet: finite metric spaces, eps-nets and chains, Hölder embedding
// search with distortion certificates, and lp -> lq reduction bookkeeping.
// JSON in, JSON report out; exit 0 = success, 1 = domain finding
// (violations, unreachable pairs, non-embeddable inputs), 2 = structural
// error (bad input, bad flags).

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "finmet/chain.hpp"
#include "finmet/embed_l2.hpp"
#include "finmet/embed_search.hpp"
#include "finmet/embedding.hpp"
#include "finmet/json_io.hpp"
#include "finmet/metric_space.hpp"
#include "finmet/net.hpp"
#include "finmet/norms.hpp"
#include "finmet/pairing.hpp"
#include "finmet/reduction.hpp"
#include "finmet/simulate.hpp"
#include "finmet/snap_maps.hpp"
#include "finmet/tail.hpp"

namespace {

using finmet::io::json;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kStructural = 2;

struct Output {
  std::string out_path;
  bool csv = false;

  void emit(const json& report, const std::string& csv_text = "") const {
    if (out_path.empty()) {
      std::cout << report.dump(2) << '\n';
    } else {
      finmet::io::write_json(report, out_path);
    }
    if (csv) {
      if (out_path.empty())
        throw std::invalid_argument("--csv needs --out to name the file");
      fs::path p(out_path);
      p.replace_extension(".csv");
      std::ofstream f(p);
      f << csv_text;
    }
  }
};

json label_pair(const finmet::FiniteMetricSpace& m, std::size_t u,
                std::size_t v) {
  return json::array({m.label(u), m.label(v)});
}

json labels_of(const finmet::FiniteMetricSpace& m,
               const std::vector<std::size_t>& idx) {
  json arr = json::array();
  for (std::size_t i : idx) arr.push_back(m.label(i));
  return arr;
}

json certificate_json(const finmet::FiniteMetricSpace& m,
                      const finmet::DistortionCertificate& cert) {
  json j{{"alpha", cert.alpha},
         {"A", cert.degenerate ? json("inf") : json(cert.A)},
         {"degenerate", cert.degenerate},
         {"pass", cert.pass()}};
  if (cert.C) j["C"] = *cert.C;
  if (cert.D) j["D"] = *cert.D;
  auto pair_json = [&](const finmet::PairRef& p) {
    return json{{"pair", label_pair(m, p.u, p.v)},
                {"d", p.d},
                {"image_d", p.image}};
  };
  if (cert.worst_upper) j["worst_upper"] = pair_json(*cert.worst_upper);
  if (cert.worst_lower) j["worst_lower"] = pair_json(*cert.worst_lower);
  json c1 = json::array(), c2 = json::array();
  for (const auto& v : cert.clause1_violations) c1.push_back(pair_json(v));
  for (const auto& v : cert.clause2_violations) c2.push_back(pair_json(v));
  j["clause1_violations"] = std::move(c1);
  j["clause2_violations"] = std::move(c2);
  return j;
}

// subcommands whose preconditions need positive distances quotient pseudo
// inputs up front unless asked not to
finmet::FiniteMetricSpace load_metric_for_embedding(const std::string& path,
                                                    bool keep_zeros,
                                                    json& report) {
  auto m = finmet::io::load_metric(path);
  if (keep_zeros) return m;
  const auto rep = finmet::validate_metric(m);
  if (!rep.zero_pairs.empty()) {
    auto q = finmet::quotient_pseudometric(m);
    report["quotiented"] = true;
    report["quotient_classes"] = q.size();
    return q;
  }
  report["quotiented"] = false;
  return m;
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed_flag) {
  if (seed_flag) return *seed_flag;
  if (const char* env = std::getenv("FINMET_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw std::invalid_argument("FINMET_SEED is not a valid integer");
    }
  }
  throw std::invalid_argument(
      "stochastic subcommand requires --seed or FINMET_SEED");
}

std::vector<std::size_t> load_label_list(const std::string& path,
                                         const finmet::FiniteMetricSpace& m,
                                         const char* key) {
  json j = finmet::io::load_json(path);
  if (j.is_object() && j.contains(key)) j = j.at(key);
  return finmet::io::indices_from_labels(j, m);
}

json inequalities_json(const finmet::BoundReport& rep) {
  json arr = json::array();
  for (const auto& c : rep.inequalities)
    arr.push_back(json{{"name", c.name},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"pass", c.pass},
                       {"slack", c.slack}});
  return arr;
}

std::string inequalities_csv(const finmet::BoundReport& rep) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : rep.inequalities) {
    std::ostringstream lhs, rhs, slack;
    lhs.precision(17);
    rhs.precision(17);
    slack.precision(17);
    lhs << c.lhs;
    rhs << c.rhs;
    slack << c.slack;
    rows.push_back(
        {c.name, lhs.str(), rhs.str(), c.pass ? "pass" : "fail", slack.str()});
  }
  return finmet::io::table_to_csv({"name", "lhs", "rhs", "pass", "slack"},
                                  rows);
}

json clause_violations_json(const finmet::ReductionInstance& inst) {
  json arr = json::array();
  for (const auto& v : inst.clause_violations())
    arr.push_back(json{{"level", v.level},
                       {"pair", label_pair(inst.levels()[v.level].space, v.u, v.v)},
                       {"d", v.d},
                       {"image_d", v.image_d},
                       {"clause", v.clause}});
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite metric spaces: nets, chains, embeddings, reductions"};
  app.require_subcommand(1);

  // shared state filled by whichever subcommand runs
  std::string input, out_path, emb_path, order_path, sets_path, f_path,
      pool_path, x_path, y_path, instance_path, models_path, kind;
  bool csv = false, keep_zeros = false;
  double alpha = 1.0, q_exp = 2.0, eps = 0.0, big_c = 0.0, big_a = 1.0,
         big_d = 1.0, step = 0.01, p_exp = 1.0, model_c = 1.0, model_s = 1.0,
         model_r = 0.5;
  std::size_t dim = 1, restarts = 8, iters = 600, k_param = 1, prefix = 16,
              samples = 100;
  std::optional<double> opt_c;
  std::optional<std::uint64_t> seed_flag, pair_n, pair_m, pair_k;
  std::string from_label, to_label;
  std::vector<double> dvals, eps_list, values;

  const auto add_out = [&](CLI::App* cmd, bool with_csv = false) {
    cmd->add_option("--out", out_path, "write the JSON report here (default stdout)");
    if (with_csv)
      cmd->add_flag("--csv", csv, "also write a CSV next to --out");
  };

  auto* c_validate = app.add_subcommand("validate", "check metric axioms");
  c_validate->add_option("input", input, "metric JSON file")->required();
  add_out(c_validate);

  auto* c_quotient =
      app.add_subcommand("quotient", "collapse zero-distance classes");
  c_quotient->add_option("input", input, "metric JSON file")->required();
  add_out(c_quotient, true);

  auto* c_snowflake = app.add_subcommand("snowflake", "d -> d^alpha");
  c_snowflake->add_option("input", input, "metric JSON file")->required();
  c_snowflake->add_option("--alpha", alpha, "exponent in (0, 1]")->required();
  add_out(c_snowflake, true);

  auto* c_net = app.add_subcommand("net", "greedy eps-net");
  c_net->add_option("input", input, "metric JSON file")->required();
  c_net->add_option("--eps", eps, "net radius, > 0")->required();
  c_net->add_option("--order", order_path, "JSON array of labels");
  add_out(c_net);

  auto* c_chain = app.add_subcommand("chain", "minimal eps-chain between two points");
  c_chain->add_option("input", input, "metric JSON file")->required();
  c_chain->add_option("--eps", eps, "hop threshold, strict")->required();
  c_chain->add_option("--from", from_label, "start label")->required();
  c_chain->add_option("--to", to_label, "end label")->required();
  add_out(c_chain);

  auto* c_chain_number =
      app.add_subcommand("chain-number", "max minimal chain steps over pairs < C");
  c_chain_number->add_option("input", input, "metric JSON file")->required();
  c_chain_number->add_option("--eps", eps, "hop threshold, strict")->required();
  c_chain_number->add_option("--C", big_c, "pair scale: pairs with d < C")->required();
  add_out(c_chain_number);

  auto* c_build_z = app.add_subcommand("build-z", "chain-point sets over nested subsets");
  c_build_z->add_option("input", input, "ambient metric JSON file")->required();
  c_build_z->add_option("--sets", sets_path, "nested label sets JSON")->required();
  c_build_z->add_option("--C", big_c, "pair scale")->required();
  add_out(c_build_z);

  auto* c_distortion =
      app.add_subcommand("distortion", "least Hölder constant of a map");
  c_distortion->add_option("input", input, "metric JSON file")->required();
  c_distortion->add_option("--embedding", emb_path, "embedding JSON")->required();
  c_distortion->add_option("--alpha", alpha, "Hölder exponent")->required();
  c_distortion->add_flag("--keep-zeros", keep_zeros);
  add_out(c_distortion);

  auto* c_verify = app.add_subcommand("verify", "two-clause certificate check");
  c_verify->add_option("input", input, "metric JSON file")->required();
  c_verify->add_option("--embedding", emb_path, "embedding JSON")->required();
  c_verify->add_option("--alpha", alpha, "Hölder exponent")->required();
  c_verify->add_option("--C", big_c, "near/far split")->required();
  c_verify->add_option("--A", big_a, "sandwich constant")->required();
  c_verify->add_option("--D", big_d, "far-pair floor")->required();
  c_verify->add_flag("--keep-zeros", keep_zeros);
  add_out(c_verify, true);

  auto* c_embed = app.add_subcommand("embed", "search for a low-distortion map");
  c_embed->add_option("input", input, "metric JSON file")->required();
  c_embed->add_option("--alpha", alpha, "Hölder exponent")->required();
  c_embed->add_option("--q", q_exp, "target exponent, >= 1")->required();
  c_embed->add_option("--dim", dim, "target dimension")->required();
  c_embed->add_option("--C", opt_c, "optional near/far split");
  c_embed->add_option("--restarts", restarts, "seeded restarts (default 8)");
  c_embed->add_option("--iters", iters, "descent iterations per restart");
  c_embed->add_option("--seed", seed_flag, "RNG seed (or FINMET_SEED)");
  c_embed->add_option("--emb-out", emb_path, "save the embedding JSON");
  c_embed->add_flag("--keep-zeros", keep_zeros);
  add_out(c_embed);

  auto* c_embed_l2 = app.add_subcommand("embed-l2", "exact l2 route via double centering");
  c_embed_l2->add_option("input", input, "metric JSON file")->required();
  c_embed_l2->add_option("--emb-out", emb_path, "save the embedding JSON");
  c_embed_l2->add_flag("--keep-zeros", keep_zeros);
  add_out(c_embed_l2);

  auto* c_oracle = app.add_subcommand("oracle", "exhaustive grid optimum (<= 3 points)");
  c_oracle->add_option("input", input, "metric JSON file, <= 3 points")->required();
  c_oracle->add_option("--alpha", alpha, "Hölder exponent")->required();
  c_oracle->add_option("--q", q_exp, "target exponent")->required();
  c_oracle->add_option("--dim", dim, "1 or 2")->required();
  c_oracle->add_option("--step", step, "grid step")->required();
  c_oracle->add_flag("--keep-zeros", keep_zeros);
  add_out(c_oracle);

  auto* c_transfer = app.add_subcommand("transfer", "snap a finite set to a dense pool");
  c_transfer->add_option("input", input, "ambient metric JSON file")->required();
  c_transfer->add_option("--f", f_path, "query labels JSON")->required();
  c_transfer->add_option("--pool", pool_path, "pool labels JSON")->required();
  add_out(c_transfer);

  auto* c_round = app.add_subcommand("round-dense", "snap at threshold (4k)^{-1}");
  c_round->add_option("input", input, "ambient metric JSON file")->required();
  c_round->add_option("--f", f_path, "query labels JSON")->required();
  c_round->add_option("--pool", pool_path, "pool labels JSON")->required();
  c_round->add_option("--k", k_param, "threshold parameter: (4k)^{-1}")->required();
  c_round->add_option("--C", opt_c, "check condition (b) against this scale");
  add_out(c_round);

  auto* c_net_snap = app.add_subcommand("net-snap", "snap level maps through eps-nets");
  c_net_snap->add_option("--instance", instance_path, "reduction instance JSON")->required();
  add_out(c_net_snap, true);

  auto* c_pairfn = app.add_subcommand("pairfn", "diagonal pairing bijection");
  c_pairfn->add_option("--n", pair_n, "level index");
  c_pairfn->add_option("--m", pair_m, "coordinate index");
  c_pairfn->add_option("--k", pair_k, "flat index to invert");
  add_out(c_pairfn);

  auto* c_theta = app.add_subcommand("theta", "flat coordinate sequence of a choice");
  c_theta->add_option("--instance", instance_path, "reduction instance JSON")->required();
  c_theta->add_option("--x", x_path, "per-level choice labels JSON")->required();
  add_out(c_theta);

  auto* c_partition = app.add_subcommand("partition", "I1/I2/I3 split of level distances");
  c_partition->add_option("--dvals", dvals, "per-level distances")->required()->expected(-1);
  c_partition->add_option("--eps", eps_list, "eps list (one value broadcasts)")->required()->expected(-1);
  c_partition->add_option("--C", big_c, "far threshold")->required();
  c_partition->add_option("--p", p_exp, "exponent for the part sums");
  add_out(c_partition);

  auto* c_reduce_verify =
      app.add_subcommand("reduce-verify", "instance clauses and proof inequalities");
  c_reduce_verify->add_option("--instance", instance_path, "reduction instance JSON")->required();
  c_reduce_verify->add_option("--x", x_path, "choice labels (with --y: run the bounds)");
  c_reduce_verify->add_option("--y", y_path, "second choice labels");
  add_out(c_reduce_verify, true);

  auto* c_dense_snap = app.add_subcommand("dense-snap", "snap choices through 2^{-n} nets");
  c_dense_snap->add_option("--instance", instance_path, "reduction instance JSON")->required();
  c_dense_snap->add_option("--x", x_path, "per-level choice labels JSON")->required();
  add_out(c_dense_snap);

  auto* c_classify = app.add_subcommand("classify", "tail model convergence");
  c_classify->add_option("--kind", kind, "finite_support | power | geometric")->required();
  c_classify->add_option("--p", p_exp, "series exponent")->required();
  c_classify->add_option("--c", model_c, "scale (power/geometric)");
  c_classify->add_option("--s", model_s, "power decay");
  c_classify->add_option("--r", model_r, "geometric ratio in (0, 1)");
  c_classify->add_option("--values", values, "finite_support values")->expected(-1);
  add_out(c_classify);

  auto* c_simulate = app.add_subcommand("simulate", "source/image classification agreement");
  c_simulate->add_option("--instance", instance_path, "reduction instance JSON")->required();
  c_simulate->add_option("--models", models_path, "tail models JSON")->required();
  c_simulate->add_option("--prefix", prefix, "truncation length")->required();
  c_simulate->add_option("--samples", samples, "pairs per model")->required();
  c_simulate->add_option("--seed", seed_flag, "RNG seed (or FINMET_SEED)");
  add_out(c_simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kStructural;
  }

  const Output output{out_path, csv};
  try {
    if (*c_validate) {
      const auto m = finmet::io::load_metric(input);
      const auto rep = finmet::validate_metric(m);
      json tri = json::array();
      for (const auto& [i, j2, k] : rep.triangle_violations)
        tri.push_back(json::array({m.label(i), m.label(j2), m.label(k)}));
      json zp = json::array();
      for (const auto& [i, j2] : rep.zero_pairs)
        zp.push_back(label_pair(m, i, j2));
      const bool clean = rep.clean_for(m.is_pseudo());
      output.emit(json{{"command", "validate"},
                       {"clean", clean},
                       {"symmetric", rep.symmetric},
                       {"nonneg", rep.nonneg},
                       {"diagonal_zero", rep.diagonal_zero},
                       {"pseudo", m.is_pseudo()},
                       {"triangle_violations", tri},
                       {"zero_pairs", zp}});
      return clean ? kOk : kFinding;
    }

    if (*c_quotient) {
      const auto m = finmet::io::load_metric(input);
      const auto q = finmet::quotient_pseudometric(m);
      output.emit(finmet::io::metric_to_json(q), finmet::io::metric_to_csv(q));
      return kOk;
    }

    if (*c_snowflake) {
      const auto m = finmet::io::load_metric(input);
      const auto s = finmet::snowflake(m, alpha);
      output.emit(finmet::io::metric_to_json(s), finmet::io::metric_to_csv(s));
      return kOk;
    }

    if (*c_net) {
      const auto m = finmet::io::load_metric(input);
      finmet::Net net;
      if (order_path.empty()) {
        net = finmet::greedy_net(m, eps);
      } else {
        const auto order = load_label_list(order_path, m, "order");
        net = finmet::greedy_net(m, eps, order);
      }
      json assignment = json::object();
      for (std::size_t u = 0; u < m.size(); ++u)
        assignment[m.label(u)] = m.label(net.member_point(u));
      output.emit(json{{"command", "net"},
                       {"eps", eps},
                       {"members", labels_of(m, net.members)},
                       {"assignment", assignment}});
      return kOk;
    }

    if (*c_chain) {
      const auto m = finmet::io::load_metric(input);
      const auto chain = finmet::chain_witness(m, eps, m.index_of(from_label),
                                               m.index_of(to_label));
      json j{{"command", "chain"},
             {"eps", eps},
             {"from", from_label},
             {"to", to_label},
             {"reachable", chain.has_value()}};
      if (chain) {
        j["steps"] = chain->steps();
        j["points"] = labels_of(m, chain->points);
      }
      output.emit(j);
      return chain ? kOk : kFinding;
    }

    if (*c_chain_number) {
      const auto m = finmet::io::load_metric(input);
      const auto res = finmet::chain_number(m, eps, big_c);
      json j{{"command", "chain-number"},
             {"eps", eps},
             {"C", big_c},
             {"scope", "sampled link(C)"},
             {"linked", res.linked}};
      if (res.linked)
        j["N"] = res.N;
      else
        j["witness"] = label_pair(m, (*res.witness)[0], (*res.witness)[1]);
      output.emit(j);
      return res.linked ? kOk : kFinding;
    }

    if (*c_build_z) {
      const auto m = finmet::io::load_metric(input);
      json sets_j = finmet::io::load_json(sets_path);
      if (sets_j.is_object() && sets_j.contains("F")) sets_j = sets_j.at("F");
      std::vector<std::vector<std::size_t>> F;
      for (const auto& level : sets_j)
        F.push_back(finmet::io::indices_from_labels(level, m));
      const auto res = finmet::build_Z(m, F, big_c);
      json j{{"command", "build-z"}, {"C", big_c}, {"ok", res.ok}};
      json zs = json::array();
      for (const auto& z : res.Z) zs.push_back(labels_of(m, z));
      j["Z"] = zs;
      if (!res.ok)
        j["missing"] = json{{"pair", label_pair(m, res.missing->u, res.missing->v)},
                            {"level", res.missing->level},
                            {"eps", res.missing->eps}};
      output.emit(j);
      return res.ok ? kOk : kFinding;
    }

    if (*c_distortion) {
      json j{{"command", "distortion"}};
      const auto m = load_metric_for_embedding(input, keep_zeros, j);
      const auto e = finmet::io::load_embedding(emb_path, m);
      const auto cert = finmet::holder_distortion(m, e, alpha);
      j["certificate"] = certificate_json(m, cert);
      output.emit(j);
      return cert.degenerate ? kFinding : kOk;
    }

    if (*c_verify) {
      json j{{"command", "verify"}};
      const auto m = load_metric_for_embedding(input, keep_zeros, j);
      const auto e = finmet::io::load_embedding(emb_path, m);
      const auto cert = finmet::cfh_verify(m, e, alpha, big_c, big_a, big_d);
      j["certificate"] = certificate_json(m, cert);
      std::vector<std::vector<std::string>> rows;
      for (int clause = 1; clause <= 2; ++clause) {
        const auto& vs =
            clause == 1 ? cert.clause1_violations : cert.clause2_violations;
        for (const auto& v : vs) {
          std::ostringstream d, img;
          d.precision(17);
          img.precision(17);
          d << v.d;
          img << v.image;
          rows.push_back({std::to_string(clause), m.label(v.u), m.label(v.v),
                          d.str(), img.str()});
        }
      }
      output.emit(j, finmet::io::table_to_csv({"clause", "u", "v", "d", "image_d"},
                                              rows));
      return cert.pass() ? kOk : kFinding;
    }

    if (*c_embed) {
      json j{{"command", "embed"}};
      const auto m = load_metric_for_embedding(input, keep_zeros, j);
      finmet::SearchOptions opt;
      opt.alpha = alpha;
      opt.q = q_exp;
      opt.dim = dim;
      opt.C = opt_c;
      opt.restarts = restarts;
      opt.iterations = iters;
      opt.seed = require_seed(seed_flag);
      const auto res = finmet::embed_search(m, opt);
      j["seed"] = opt.seed;
      j["restarts"] = restarts;
      j["objective"] = res.objective;
      j["best_restart"] = res.best_restart;
      j["degenerate"] = res.degenerate;
      j["certificate"] = certificate_json(m, res.certificate);
      j["embedding"] = finmet::io::embedding_to_json(res.embedding, m);
      output.emit(j);
      if (!emb_path.empty())
        finmet::io::write_json(finmet::io::embedding_to_json(res.embedding, m),
                               emb_path);
      return res.degenerate ? kFinding : kOk;
    }

    if (*c_embed_l2) {
      json j{{"command", "embed-l2"}};
      const auto m = load_metric_for_embedding(input, keep_zeros, j);
      const auto res = finmet::embed_l2_exact(m);
      j["ok"] = res.ok;
      j["min_eigenvalue"] = res.min_eigenvalue;
      if (res.ok) {
        j["dim"] = res.embedding->dim;
        j["embedding"] = finmet::io::embedding_to_json(*res.embedding, m);
        if (!emb_path.empty())
          finmet::io::write_json(
              finmet::io::embedding_to_json(*res.embedding, m), emb_path);
      }
      output.emit(j);
      return res.ok ? kOk : kFinding;
    }

    if (*c_oracle) {
      json j{{"command", "oracle"}};
      const auto m = load_metric_for_embedding(input, keep_zeros, j);
      const auto res = finmet::oracle_embed(m, alpha, q_exp, dim, step);
      j["alpha"] = alpha;
      j["q"] = q_exp;
      j["dim"] = dim;
      j["step"] = step;
      j["A_star"] = res.A_star;
      j["evaluated"] = res.evaluated;
      j["embedding"] = finmet::io::embedding_to_json(res.embedding, m);
      output.emit(j);
      return kOk;
    }

    if (*c_transfer || *c_round) {
      const auto m = finmet::io::load_metric(input);
      const auto F = load_label_list(f_path, m, "F");
      const auto pool = load_label_list(pool_path, m, "pool");
      finmet::DenseTransferResult res;
      json j;
      if (*c_transfer) {
        res = finmet::transfer_dense(m, F, pool);
        j["command"] = "transfer";
      } else {
        res = finmet::round_to_dense(m, F, pool, k_param, opt_c);
        j["command"] = "round-dense";
        j["k"] = k_param;
      }
      j["ok"] = res.ok;
      j["threshold"] = res.threshold;
      j["gamma"] = res.gamma;
      if (res.ok) {
        json map = json::object();
        for (std::size_t i = 0; i < F.size(); ++i)
          map[m.label(F[i])] = m.label(res.image[i]);
        j["map"] = map;
        json viols = json::array();
        for (const auto& v : res.violations)
          viols.push_back(json{{"pair", label_pair(m, v.u, v.v)},
                               {"d", v.d},
                               {"image_d", v.image_d}});
        j["factor2_violations"] = viols;
        j["factor2_ok"] = res.violations.empty();
      } else {
        j["failed_at"] = m.label(*res.failed_at);
      }
      output.emit(j);
      return res.ok && res.violations.empty() ? kOk : kFinding;
    }

    if (*c_net_snap) {
      const auto inst = finmet::io::load_instance(instance_path);
      std::vector<finmet::Net> nets;
      for (std::size_t lv = 0; lv < inst.levels().size(); ++lv) {
        const double e = inst.eps()[lv];
        nets.push_back(e > 0.0
                           ? finmet::greedy_net(inst.levels()[lv].space, e)
                           : finmet::identity_net(inst.levels()[lv].space));
      }
      const auto res =
          finmet::net_snap(inst.levels(), nets, inst.eps(), inst.p(), inst.q(),
                           inst.A(), inst.C(), inst.D());
      json j{{"command", "net-snap"},
             {"pass", res.pass()},
             {"constants",
              json{{"eps_prime", res.constants.eps_prime},
                   {"eta_prime", res.constants.eta_prime},
                   {"A_prime", res.constants.A_prime},
                   {"C_prime", res.constants.C_prime},
                   {"D_prime", res.constants.D_prime},
                   {"sum_eps_prime_p", res.constants.sum_eps_prime_p},
                   {"sum_eta_prime_q", res.constants.sum_eta_prime_q}}}};
      json members = json::array();
      for (std::size_t lv = 0; lv < nets.size(); ++lv)
        members.push_back(nets[lv].members.size());
      j["net_members"] = members;
      json viols = json::array();
      std::vector<std::vector<std::string>> rows;
      for (const auto& v : res.violations) {
        const auto& space = inst.levels()[v.level].space;
        viols.push_back(json{{"level", v.level},
                             {"pair", label_pair(space, v.u, v.v)},
                             {"d", v.d},
                             {"image_d", v.image_d},
                             {"clause", v.clause}});
        rows.push_back({std::to_string(v.level), space.label(v.u),
                        space.label(v.v), std::to_string(v.clause)});
      }
      j["violations"] = viols;
      output.emit(j, finmet::io::table_to_csv({"level", "u", "v", "clause"}, rows));
      return res.pass() ? kOk : kFinding;
    }

    if (*c_pairfn) {
      json j{{"command", "pairfn"}};
      if (pair_k && (pair_n || pair_m))
        throw std::invalid_argument("pairfn: give either --k or --n/--m");
      if (pair_k) {
        const auto [n, m2] = finmet::unpair_index(*pair_k);
        j["k"] = *pair_k;
        j["n"] = n;
        j["m"] = m2;
      } else if (pair_n && pair_m) {
        j["n"] = *pair_n;
        j["m"] = *pair_m;
        j["k"] = finmet::pair_index(*pair_n, *pair_m);
      } else {
        throw std::invalid_argument("pairfn: need --n and --m, or --k");
      }
      output.emit(j);
      return kOk;
    }

    if (*c_theta) {
      const auto inst = finmet::io::load_instance(instance_path);
      json xj = finmet::io::load_json(x_path);
      if (xj.is_object() && xj.contains("x")) xj = xj.at("x");
      std::vector<std::size_t> x;
      for (std::size_t n = 0; n < xj.size(); ++n)
        x.push_back(
            inst.levels()[n].space.index_of(xj[n].get<std::string>()));
      const auto theta = finmet::build_theta(inst, x);
      json entries = json::array();
      for (const auto& [k, val] : theta.entries)
        entries.push_back(json::array({k, val}));
      output.emit(json{{"command", "theta"},
                       {"levels", inst.levels().size()},
                       {"entries", entries}});
      return kOk;
    }

    if (*c_partition) {
      if (eps_list.size() == 1 && dvals.size() > 1)
        eps_list.assign(dvals.size(), eps_list[0]);
      const auto part =
          finmet::partition_with_sums(dvals, eps_list, big_c, p_exp);
      output.emit(json{{"command", "partition"},
                       {"C", big_c},
                       {"p", p_exp},
                       {"I1", part.I1},
                       {"I2", part.I2},
                       {"I3", part.I3},
                       {"sum_d_p",
                        json::array({part.sum_d_p[0], part.sum_d_p[1],
                                     part.sum_d_p[2]})}});
      return kOk;
    }

    if (*c_reduce_verify) {
      const auto inst = finmet::io::load_instance(instance_path);
      json j{{"command", "reduce-verify"},
             {"levels", inst.levels().size()},
             {"sum_eps_p", inst.sum_eps_p()},
             {"sum_eta_q", inst.sum_eta_q()},
             {"clause_violations", clause_violations_json(inst)}};
      bool pass = inst.clause_violations().empty();
      std::string csv_text;
      if (!x_path.empty() != !y_path.empty())
        throw std::invalid_argument("reduce-verify: --x and --y go together");
      if (!x_path.empty()) {
        auto read_choice = [&](const std::string& path, const char* key) {
          json cj = finmet::io::load_json(path);
          if (cj.is_object() && cj.contains(key)) cj = cj.at(key);
          std::vector<std::size_t> c;
          for (std::size_t n = 0; n < cj.size(); ++n)
            c.push_back(
                inst.levels()[n].space.index_of(cj[n].get<std::string>()));
          return c;
        };
        const auto x = read_choice(x_path, "x");
        const auto y = read_choice(y_path, "y");
        const auto rep = finmet::verify_reduction_bounds(inst, x, y);
        j["inequalities"] = inequalities_json(rep);
        j["partition"] = json{{"I1", rep.partition.I1},
                              {"I2", rep.partition.I2},
                              {"I3", rep.partition.I3}};
        pass = pass && rep.all_pass();
        csv_text = inequalities_csv(rep);
      }
      j["pass"] = pass;
      output.emit(j, csv_text);
      return pass ? kOk : kFinding;
    }

    if (*c_dense_snap) {
      const auto inst = finmet::io::load_instance(instance_path);
      json xj = finmet::io::load_json(x_path);
      if (xj.is_object() && xj.contains("x")) xj = xj.at("x");
      std::vector<finmet::FiniteMetricSpace> spaces;
      std::vector<finmet::Net> nets;
      std::vector<std::size_t> x;
      for (std::size_t n = 0; n < inst.levels().size(); ++n) {
        spaces.push_back(inst.levels()[n].space);
        nets.push_back(
            finmet::greedy_net(spaces.back(), std::ldexp(1.0, -static_cast<int>(n))));
        x.push_back(spaces.back().index_of(xj.at(n).get<std::string>()));
      }
      const auto res = finmet::dense_snap(spaces, nets, x, inst.p());
      json j{{"command", "dense-snap"}, {"ok", res.ok}};
      if (res.ok) {
        json snapped = json::array();
        for (std::size_t n = 0; n < res.snapped.size(); ++n)
          snapped.push_back(spaces[n].label(res.snapped[n]));
        j["snapped"] = snapped;
        j["displacement"] = res.displacement;
        j["displacement_power_sum"] = res.displacement_power_sum;
        j["bound"] = res.bound;
        j["within_bound"] = res.displacement_power_sum < res.bound;
      } else {
        j["uncovered_level"] = *res.uncovered_level;
      }
      output.emit(j);
      return res.ok ? kOk : kFinding;
    }

    if (*c_classify) {
      std::optional<finmet::TailModel> model;
      if (kind == "finite_support")
        model.emplace(finmet::FiniteSupportTail{values});
      else if (kind == "power")
        model.emplace(finmet::PowerTail{model_c, model_s});
      else if (kind == "geometric")
        model.emplace(finmet::GeometricTail{model_c, model_r});
      else
        throw std::invalid_argument("classify: unknown kind '" + kind + "'");
      const auto cls = finmet::classify_tail(*model, p_exp);
      output.emit(json{{"command", "classify"},
                       {"kind", kind},
                       {"p", p_exp},
                       {"classification", cls == finmet::TailClass::convergent
                                              ? "convergent"
                                              : "divergent"}});
      return kOk;
    }

    if (*c_simulate) {
      const auto inst = finmet::io::load_instance(instance_path);
      const auto models = finmet::io::load_models(models_path);
      const auto seed = require_seed(seed_flag);
      const auto rep = finmet::simulate(inst, models, prefix, samples, seed);
      json mj = json::array();
      bool all_agree = true, any_flag = false;
      for (const auto& sim : rep.models) {
        json samples_j = json::array();
        for (const auto& s : sim.samples) {
          samples_j.push_back(json{
              {"max_deviation", s.max_deviation},
              {"realizable", s.realizable},
              {"i1", s.i1},
              {"i2", s.i2},
              {"i3", s.i3},
              {"sum_d_p", json::array({s.sum_d_p[0], s.sum_d_p[1], s.sum_d_p[2]})},
              {"sum_delta_q", json::array({s.sum_delta_q[0], s.sum_delta_q[1],
                                           s.sum_delta_q[2]})},
              {"bounds_pass", s.bounds_pass},
              {"i3_lower_cumulative", s.i3_lower_cumulative},
              {"agree", s.agree}});
        }
        mj.push_back(json{
            {"model", sim.model_kind},
            {"source_class", sim.source_class == finmet::TailClass::convergent
                                 ? "convergent"
                                 : "divergent"},
            {"agreement_rate", sim.agreement_rate},
            {"bound_pass_rate", sim.bound_pass_rate},
            {"flagged", sim.flagged},
            {"samples", samples_j}});
        if (sim.flagged > 0) any_flag = true;
        if (sim.agreement_rate < 1.0 && sim.flagged < sim.samples.size())
          all_agree = false;
      }
      output.emit(json{{"command", "simulate"},
                       {"prefix", rep.prefix},
                       {"samples", rep.samples},
                       {"seed", rep.seed},
                       {"extended", rep.extended},
                       {"tail_hypothesis_ok", rep.tail_hypothesis_ok},
                       {"models", mj}});
      return all_agree && !any_flag ? kOk : kFinding;
    }

    throw std::invalid_argument("no subcommand dispatched");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStructural;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStructural;
  }
}
