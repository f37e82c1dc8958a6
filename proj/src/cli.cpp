#include "cm3/cli.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cm3/json_io.hpp"
#include "cm3/registry.hpp"
#include "cm3/relations.hpp"

namespace cm3 {

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kVerificationFailure = 2;

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", kind}, {"message", message}};
}

template <class S>
Json residual_entries(const char* prefix, const std::array<S, 5>& r) {
  Json out = Json::array();
  for (int i = 0; i < 5; ++i)
    out.push_back(Json{{"id", std::string(prefix) + "." + std::to_string(i + 1)},
                       {"residual", scalar_to_json(r[i])}});
  return out;
}

template <class S>
Json check_relations_for_tuple(const Tuple7<S>& t, const S& v, const S& w,
                               bool have_vw) {
  Json residuals = Json::array();
  for (const auto& e : residual_entries("id1z", eval_id1z(t))) residuals.push_back(e);
  for (const auto& e : residual_entries("id2z", eval_id2z(t))) residuals.push_back(e);
  if (have_vw) {
    for (const auto& e : residual_entries("r", eval_r(t, v))) residuals.push_back(e);
    residuals.push_back(Json{{"id", "rel.old"},
                             {"residual", scalar_to_json(eval_old_relation(t, v, w))}});
    residuals.push_back(Json{{"id", "rel.new"},
                             {"residual", scalar_to_json(eval_new_relation(t, v, w))}});
  }
  return residuals;
}

struct CommonOpts {
  std::string input;
  double tol_abs = 1e-9;
  double tol_rel = 1e-9;
  TolerancePolicy tol() const { return {tol_abs, tol_rel}; }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
  if (with_input)
    cmd->add_option("--input", o.input, "input JSON file ('-' for stdin)")
        ->required();
  cmd->add_option("--tol-abs", o.tol_abs, "absolute epsilon for complex zero tests");
  cmd->add_option("--tol-rel", o.tol_rel, "relative epsilon for complex zero tests");
}

int cmd_invariants(const CommonOpts& o, bool with_aux, std::ostream& out) {
  const PairVariant p = pair_from_json(read_json_file(o.input));
  Json j = std::visit(
      [&](const auto& x) {
        using M = std::decay_t<decltype(x)>;
        const auto& y = std::get<M>(p.y);
        auto t = invariant_tuple(x, y);
        Json res = invariant_tuple_to_json(t);
        if (with_aux) {
          auto [a, b] = traceless_pair(x, y);
          const auto aux = aux_traces(a, b, o.tol());
          res["aux"] = Json{
              {"A3B", scalar_to_json(aux.a3b)},
              {"AB3", scalar_to_json(aux.ab3)},
              {"A3B2", scalar_to_json(aux.a3b2)},
              {"A2B3", scalar_to_json(aux.a2b3)},
              {"A3B3", scalar_to_json(aux.a3b3)},
              {"A2B2", scalar_to_json(aux.a2b2)},
              {"ABAB", scalar_to_json(aux.abab)},
              {"A4B2", scalar_to_json(aux.a4b2)},
              {"A3BAB", scalar_to_json(aux.a3bab)},
              {"A2BA2B", scalar_to_json(aux.a2ba2b)},
              {"A2B2AB", scalar_to_json(aux.a2b2ab)},
              {"A2BAB2", scalar_to_json(aux.a2bab2)},
              {"ABABAB", scalar_to_json(aux.ababab)},
          };
        }
        return res;
      },
      p.x);
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_classify_stratum(const CommonOpts& o, std::ostream& out) {
  const PairVariant p = pair_from_json(read_json_file(o.input));
  Json j = std::visit(
      [&](const auto& x) {
        using M = std::decay_t<decltype(x)>;
        const auto& y = std::get<M>(p.y);
        const Stratum s = classify_stratum(x, y, o.tol());
        auto c = commutator(x, y);
        const auto shifted =
            decltype(c)(c + identity_matrix<typename M::Scalar>(c.rows()));
        return Json{{"stratum", to_string(s)},
                    {"rank_shifted_commutator", rank(shifted, o.tol())}};
      },
      p.x);
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_check_relations(const CommonOpts& o, std::ostream& out) {
  const Json in = read_json_file(o.input);
  Json j;
  if (in.contains("X")) {
    const PairVariant p = pair_from_json(in);
    j = std::visit(
        [&](const auto& x) {
          using M = std::decay_t<decltype(x)>;
          using S = typename M::Scalar;
          const auto& y = std::get<M>(p.y);
          const auto t = invariant_tuple(x, y);
          Json res{{"tuple", invariant_tuple_to_json(t)},
                   {"residuals",
                    check_relations_for_tuple(t.seven(), t.v, t.w, true)}};
          const auto cp = check_cprime_criterion(x, y, o.tol());
          res["cprime"] = Json{{"rank_is_2", cp.rank_is_2},
                               {"one_plus_v_plus_w", scalar_to_json(cp.residual)}};
          res["on_cuspidal_curve"] = on_cuspidal_curve(t.v, t.w, o.tol());
          auto shifted = DenseMatrix<S>(commutator(x, y) +
                                        identity_matrix<S>(x.rows()));
          res["det_shifted_commutator"] = scalar_to_json(det(shifted));
          return res;
        },
        p.x);
  } else {
    const TupleInput t = tuple_from_json(in);
    if (t.was_rational) {
      j = Json{{"residuals",
                check_relations_for_tuple(t.seven_rational, t.v_rational,
                                          t.w_rational, t.has_v && t.has_w)}};
      if (t.has_v && t.has_w)
        j["on_cuspidal_curve"] =
            on_cuspidal_curve(t.v_rational, t.w_rational);
    } else {
      j = Json{{"residuals",
                check_relations_for_tuple(t.seven, t.v, t.w,
                                          t.has_v && t.has_w)}};
      if (t.has_v && t.has_w)
        j["on_cuspidal_curve"] = on_cuspidal_curve(t.v, t.w, o.tol());
    }
  }
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_verify(const CommonOpts&, const std::vector<std::string>& ids,
               int trials, std::uint64_t seed, std::ostream& out) {
  std::vector<std::string> selected = ids;
  if (selected.empty()) selected = registry_ids();
  const auto reports = run_identity_suite(selected, trials, seed);
  Json j = Json::array();
  bool failed = false;
  for (const auto& r : reports) {
    Json e{{"id", r.id},
           {"trials", r.trials},
           {"failures", r.failures},
           {"elapsed_ms", r.elapsed_ms}};
    if (!r.first_failure.empty())
      e["first_failure"] = Json::parse(r.first_failure);
    failed = failed || r.failures > 0;
    j.push_back(std::move(e));
  }
  out << j.dump(2) << "\n";
  return failed ? kVerificationFailure : kOk;
}

int cmd_sample(const std::string& kind, int n, std::uint64_t seed,
               std::ostream& out) {
  Rng rng(Rng::mix(seed, 0));
  Json j;
  if (kind == "cm") {
    const CMQuadruple q = random_cm_point(n, rng);
    j = quadruple_to_json(q);
    j["kind"] = "cm";
  } else if (kind == "commuting") {
    const auto fam = static_cast<CommutingFamily>(rng.uniform_int(0, 2));
    auto [x, y] = commuting_pair(fam, rng);
    j = Json{{"kind", "commuting"},
             {"family", to_string(fam)},
             {"X", matrix_to_json(x)},
             {"Y", matrix_to_json(y)}};
  } else if (kind == "rank2" || kind == "rank3") {
    auto [x, y] = rank_k_pair(kind == "rank2" ? 2 : 3, rng);
    j = Json{{"kind", kind}, {"X", matrix_to_json(x)}, {"Y", matrix_to_json(y)}};
  } else {
    throw ParseError("unknown --kind: " + kind +
                     " (expected cm|commuting|rank2|rank3)");
  }
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_act(const CommonOpts& o, const std::string& word_path,
            std::ostream& out) {
  const Json win = read_json_file(word_path);
  const Json in = read_json_file(o.input);
  Json j;
  if (in.contains("X")) {
    const PairVariant p = pair_from_json(in);
    j = std::visit(
        [&](const auto& x) {
          using M = std::decay_t<decltype(x)>;
          using S = typename M::Scalar;
          const auto& y = std::get<M>(p.y);
          GroupWord<S> w;
          const WordVariant wv = word_from_json(win, o.tol());
          if constexpr (ScalarTraits<S>::exact) {
            if (!std::holds_alternative<GroupWord<Rational>>(wv))
              throw DomainError("act: word and pair domains disagree");
            w = std::get<GroupWord<Rational>>(wv);
          } else {
            w = std::holds_alternative<GroupWord<Complex>>(wv)
                    ? std::get<GroupWord<Complex>>(wv)
                    : word_to_complex(std::get<GroupWord<Rational>>(wv),
                                      o.tol());
          }
          auto [x2, y2] = act_matrices(w, x, y);
          return Json{{"X", matrix_to_json(x2)}, {"Y", matrix_to_json(y2)}};
        },
        p.x);
  } else {
    const TupleInput t = tuple_from_json(in);
    if (!t.has_v)
      throw ParseError("act on a tuple needs \"v\" in the input");
    const WordVariant wv = word_from_json(win, o.tol());
    if (t.was_rational && std::holds_alternative<GroupWord<Rational>>(wv)) {
      const auto res = act_tuple(std::get<GroupWord<Rational>>(wv),
                                 t.seven_rational, t.v_rational);
      j = Json{{"a", tuple7_to_json(res)}, {"v", scalar_to_json(t.v_rational)}};
    } else {
      const GroupWord<Complex> w =
          std::holds_alternative<GroupWord<Complex>>(wv)
              ? std::get<GroupWord<Complex>>(wv)
              : word_to_complex(std::get<GroupWord<Rational>>(wv), o.tol());
      const auto res = act_tuple(w, t.seven, t.v);
      j = Json{{"a", tuple7_to_json(res)}, {"v", scalar_to_json(t.v)}};
    }
  }
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_normalize(const CommonOpts& o, std::ostream& out) {
  const TupleInput t = tuple_from_json(read_json_file(o.input));
  const NormalizationResult r = normalize_d3(t.seven, o.tol());
  Json j = normalization_to_json(r);
  j["input"] = tuple7_to_json(t.seven);
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_classify_commuting(const CommonOpts& o, std::ostream& out) {
  const TupleInput t = tuple_from_json(read_json_file(o.input));
  const ClassificationResult r = classify_d30(t.seven, o.tol());
  Json j = normalization_to_json(r.norm);
  j["input"] = tuple7_to_json(t.seven);
  j["label"] = to_string(r.label);
  out << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

const std::vector<CommandCoverage>& command_coverage() {
  static const std::vector<CommandCoverage> table = {
      {"invariants",
       {"trace_word", "traceless_pair", "invariant_tuple", "vw", "aux_traces"}},
      {"classify-stratum", {"commutator", "rank", "classify_stratum"}},
      {"check-relations",
       {"det", "eval_id1z", "eval_id2z", "eval_r", "eval_new_relation",
        "eval_old_relation", "on_cuspidal_curve", "check_cprime_criterion"}},
      {"verify-identities", {"run_identity_suite", "consistency_check"}},
      {"sample", {"cm_point", "commuting_pair", "rank_k_pair"}},
      {"act", {"act_matrices", "act_tuple"}},
      {"normalize", {"normalize_d3"}},
      {"classify-commuting", {"classify_d30"}},
  };
  return table;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact invariants, relation systems and orbit words for pairs "
               "of 3x3 matrices"};
  app.require_subcommand(1);

  CommonOpts inv_o, strat_o, rel_o, act_o, norm_o, cls_o, ver_o;
  bool with_aux = false;
  std::string ids_csv;
  int trials = 200;
  std::uint64_t seed = 1;
  std::string kind = "cm";
  int sample_n = 3;
  std::string word_path;

  auto* inv = app.add_subcommand("invariants",
                                 "nine generators plus v, w for a pair");
  add_common(inv, inv_o);
  inv->add_flag("--aux", with_aux, "also print the auxiliary trace monomials");

  auto* strat = app.add_subcommand(
      "classify-stratum", "commuting / rank-one / rank-two / rank-three");
  add_common(strat, strat_o);

  auto* rel = app.add_subcommand(
      "check-relations", "evaluate every relation system on a pair or tuple");
  add_common(rel, rel_o);

  auto* ver = app.add_subcommand("verify-identities",
                                 "run the exact identity suite");
  add_common(ver, ver_o, /*with_input=*/false);
  ver->add_option("--ids", ids_csv, "comma-separated identity ids (default: all)");
  ver->add_option("--trials", trials, "trials per identity");
  ver->add_option("--seed", seed, "deterministic seed");

  auto* smp = app.add_subcommand("sample", "construct exact witnesses");
  smp->add_option("--kind", kind, "cm | commuting | rank2 | rank3");
  smp->add_option("--n", sample_n, "dimension (cm only)");
  smp->add_option("--seed", seed, "deterministic seed");

  auto* act = app.add_subcommand("act", "apply a group word to a pair or tuple");
  add_common(act, act_o);
  act->add_option("--word", word_path, "group word JSON file")->required();

  auto* norm = app.add_subcommand(
      "normalize", "drive a rank-one-stratum tuple to zero by a group word");
  add_common(norm, norm_o);

  auto* cls = app.add_subcommand(
      "classify-commuting",
      "orbit of a commuting-variety tuple with its normalizing word");
  add_common(cls, cls_o);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      out << app.help() << std::flush;
      return kOk;
    }
    err << error_json("usage", e.what()).dump(2) << "\n";
    return kUsageError;
  }

  try {
    if (*inv) return cmd_invariants(inv_o, with_aux, out);
    if (*strat) return cmd_classify_stratum(strat_o, out);
    if (*rel) return cmd_check_relations(rel_o, out);
    if (*ver) {
      std::vector<std::string> ids;
      std::stringstream ss(ids_csv);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) ids.push_back(item);
      return cmd_verify(ver_o, ids, trials, seed, out);
    }
    if (*smp) return cmd_sample(kind, sample_n, seed, out);
    if (*act) return cmd_act(act_o, word_path, out);
    if (*norm) return cmd_normalize(norm_o, out);
    if (*cls) return cmd_classify_commuting(cls_o, out);
    err << error_json("usage", "no subcommand").dump(2) << "\n";
    return kUsageError;
  } catch (const AmbiguousError& e) {
    err << error_json("ambiguous", e.what()).dump(2) << "\n";
    return kVerificationFailure;
  } catch (const UnknownIdentityError& e) {
    err << error_json("unknown-identity", e.what()).dump(2) << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << error_json("parse", e.what()).dump(2) << "\n";
    return kUsageError;
  } catch (const DimensionError& e) {
    err << error_json("dimension", e.what()).dump(2) << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << error_json("domain", e.what()).dump(2) << "\n";
    return kUsageError;
  } catch (const ConstructionError& e) {
    err << error_json("construction", e.what()).dump(2) << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << error_json("internal", e.what()).dump(2) << "\n";
    return kVerificationFailure;
  }
}

}  // namespace cm3
