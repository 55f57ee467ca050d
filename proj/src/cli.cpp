#include "pfarc/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pfarc/jet.hpp"
#include "pfarc/order.hpp"
#include "pfarc/parse.hpp"
#include "pfarc/pfaffian.hpp"
#include "pfarc/quotient.hpp"
#include "pfarc/report.hpp"
#include "pfarc/standard.hpp"

namespace pfarc {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_even(const std::vector<int>& hs) {
  for (int h : hs) {
    if (h < 0 || h % 2 != 0) throw UsageError("h must be even and non-negative, got " + std::to_string(h));
  }
}

void require_nonempty(const std::vector<int>& v, const char* name) {
  if (v.empty()) throw UsageError(std::string("--") + name + " needs at least one value");
}

void require_range(int lo, int hi, const char* name) {
  if (lo < 0 || hi < lo) throw UsageError(std::string("empty or negative range for ") + name);
}

struct Common {
  std::string emit;
  int threads = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--emit", c.emit, "Write the report to this file instead of stdout");
  sub->add_option("--threads", c.threads, "Worker threads (PFARC_THREADS overrides)")->check(CLI::PositiveNumber);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int emit_report(const nlohmann::json& report, const Common& c, std::ostream& out) {
  const std::string text = serialize(report);
  if (c.emit.empty()) {
    out << text;
  } else {
    std::ofstream f(c.emit);
    if (!f) throw UsageError("cannot write " + c.emit);
    f << text;
    out << report["command"].get<std::string>() << ": " << report["verdict"].get<std::string>() << " ("
        << report["summary"]["passed"] << "/" << report["summary"]["cells"] << " cells)\n";
  }
  return report_passed(report) ? 0 : 1;
}

struct Grid {
  std::vector<int> ps{2};
  std::vector<int> hs{2};
  int deg_min = 0, deg_max = 2;
  int wt_min = 0, wt_max = 1;

  void add_to(CLI::App* sub) {
    sub->add_option("--p", ps, "Row counts (comma separated)")->delimiter(',');
    sub->add_option("--h", hs, "Even sizes (comma separated)")->delimiter(',');
    sub->add_option("--deg-min", deg_min);
    sub->add_option("--deg-max", deg_max);
    sub->add_option("--wt-min", wt_min);
    sub->add_option("--wt-max", wt_max);
  }
  void validate() const {
    require_nonempty(ps, "p");
    require_nonempty(hs, "h");
    require_even(hs);
    for (int p : ps) {
      if (p < 1 || p > kMaxIndex) throw UsageError("p out of range");
    }
    require_range(deg_min, deg_max, "degree");
    require_range(wt_min, wt_max, "weight");
  }
  nlohmann::json echo(int threads) const {
    return {{"p", ps},           {"h", hs},           {"deg_min", deg_min}, {"deg_max", deg_max},
            {"wt_min", wt_min}, {"wt_max", wt_max}, {"threads", threads}};
  }
  struct Cell {
    int p, h, d, w;
  };
  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    for (int p : ps) {
      for (int h : hs) {
        for (int d = deg_min; d <= deg_max; ++d) {
          for (int w = wt_min; w <= wt_max; ++w) out.push_back({p, h, d, w});
        }
      }
    }
    return out;
  }
};

nlohmann::json terms_json(const std::vector<StraightenTerm>& terms) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : terms) arr.push_back({{"product", to_string(t.product)}, {"coeff", t.coeff.str()}});
  return arr;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic for Pfaffian ideals on arc spaces", "pfarc"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file with per-subcommand sections");
  app.set_version_flag("--version", std::string(kToolVersion));

  // pfaffian
  auto* c_pf = app.add_subcommand("pfaffian", "Pfaffian derivative of a diagonal minor as Poly JSON");
  std::string pf_rows;
  int pf_order = 0;
  int pf_p = 0;
  c_pf->add_option("--rows", pf_rows, "Rows in display order, e.g. 4,3,2,1")->required();
  c_pf->add_option("--order", pf_order, "Derivative order n")->check(CLI::NonNegativeNumber);
  c_pf->add_option("--p", pf_p, "Row count of the ambient ring (default: largest row)");

  // order
  auto* c_ord = app.add_subcommand("order", "Compare sequences");
  std::string ord_cmp = "j", ord_lhs, ord_rhs;
  c_ord->add_option("--cmp", ord_cmp, "j | e | greater")->check(CLI::IsMember({"j", "e", "greater"}));
  c_ord->add_option("--lhs", ord_lhs)->required();
  c_ord->add_option("--rhs", ord_rhs)->required();

  // enum-standard
  auto* c_enum = app.add_subcommand("enum-standard", "List standard monomials of one cell");
  int en_p = 2, en_h = 2, en_d = 1, en_w = 0;
  bool en_count = false;
  c_enum->add_option("--p", en_p);
  c_enum->add_option("--h", en_h);
  c_enum->add_option("--deg", en_d);
  c_enum->add_option("--wt", en_w);
  c_enum->add_flag("--count-only", en_count);

  // straighten
  auto* c_str = app.add_subcommand("straighten", "Integer straightening modulo the Pfaffian ideal");
  int st_p = 2, st_h = 2;
  std::string st_expr, st_json;
  c_str->add_option("--p", st_p);
  c_str->add_option("--h", st_h);
  auto* o_expr = c_str->add_option("--expr", st_expr, "Polynomial expression");
  auto* o_json = c_str->add_option("--json", st_json, "File holding a Poly JSON document");
  o_expr->excludes(o_json);

  // verify-basis
  auto* c_vb = app.add_subcommand("verify-basis", "Z-basis certificate for the standard monomials");
  Grid vb_grid;
  Common vb_common;
  vb_grid.add_to(c_vb);
  add_common(c_vb, vb_common);

  // verify-leading
  auto* c_vl = app.add_subcommand("verify-leading", "Leading tableau of the Q_h image of standard monomials");
  Grid vl_grid;
  Common vl_common;
  vl_grid.add_to(c_vl);
  add_common(c_vl, vl_common);

  // verify-injectivity
  auto* c_vi = app.add_subcommand("verify-injectivity", "Rank of Q_h on standard monomials");
  Grid vi_grid;
  Common vi_common;
  vi_grid.add_to(c_vi);
  add_common(c_vi, vi_common);

  // verify-invariance
  auto* c_vv = app.add_subcommand("verify-invariance", "Symplectic jet invariance of the X generators");
  std::vector<int> vv_ps{2}, vv_hs{2};
  int vv_k = 2, vv_m = 2;
  Common vv_common;
  c_vv->add_option("--p", vv_ps)->delimiter(',');
  c_vv->add_option("--h", vv_hs)->delimiter(',');
  c_vv->add_option("--k-max", vv_k)->check(CLI::NonNegativeNumber);
  c_vv->add_option("--m-max", vv_m)->check(CLI::NonNegativeNumber);
  add_common(c_vv, vv_common);

  // invariant-dimension
  auto* c_id = app.add_subcommand("invariant-dimension", "Invariant subspace against the Q_h image, per cell");
  Grid id_grid;
  Common id_common;
  id_grid.add_to(c_id);
  add_common(c_id, id_common);

  // relations
  auto* c_rel = app.add_subcommand("relations", "Antisymmetrized two-Pfaffian relations and ideal membership");
  bool rel_curated = false;
  int rel_p = 4, rel_i = 2, rel_j = 1, rel_k0 = 0, rel_m = 0;
  std::vector<int> rel_u, rel_up;
  std::vector<std::string> rel_seed;
  Common rel_common;
  c_rel->add_flag("--curated", rel_curated, "Run the built-in suite");
  c_rel->add_option("--p", rel_p);
  c_rel->add_option("--u", rel_u, "Rows u_h..u_1")->delimiter(',');
  c_rel->add_option("--u-prime", rel_up, "Rows u'_h'..u'_1")->delimiter(',');
  c_rel->add_option("--i", rel_i);
  c_rel->add_option("--j", rel_j);
  c_rel->add_option("--k0", rel_k0);
  c_rel->add_option("--m", rel_m);
  c_rel->add_option("--seed", rel_seed, "a_k0..a_{k0+l0}")->delimiter(',');
  add_common(c_rel, rel_common);

  // qh
  auto* c_qh = app.add_subcommand("qh", "Image of an X-ring polynomial in the jet ring");
  int qh_p = 2, qh_h = 2;
  std::string qh_expr;
  c_qh->add_option("--p", qh_p);
  c_qh->add_option("--h", qh_h);
  c_qh->add_option("--expr", qh_expr)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*c_pf) {
      std::vector<int> rows = parse_int_list(pf_rows);
      int p = pf_p;
      for (int r : rows) p = std::max(p, r);
      if (rows.size() % 2 != 0) throw UsageError("--rows needs an even number of rows");
      out << to_json(jseq_value(p, rows, pf_order)).dump(2) << "\n";
      return 0;
    }
    if (*c_ord) {
      nlohmann::json j;
      if (ord_cmp == "j") {
        const JSeq a = parse_jseq(ord_lhs), b = parse_jseq(ord_rhs);
        j = {{"lhs_prec_rhs", j_prec(a, b)}, {"rhs_prec_lhs", j_prec(b, a)}};
      } else if (ord_cmp == "e") {
        const ESeq a = parse_eseq(ord_lhs), b = parse_eseq(ord_rhs);
        j = {{"lhs_le_rhs", e_partial_le(a, b)},
             {"rhs_le_lhs", e_partial_le(b, a)},
             {"lhs_prec_rhs", e_total_prec(a, b)},
             {"rhs_prec_lhs", e_total_prec(b, a)}};
      } else {
        const JSeq a = parse_jseq(ord_lhs);
        const ESeq e = parse_eseq(ord_rhs);
        if (a.size() > e.size()) throw UsageError("J is longer than E");
        auto dom = largest_dominating(e, a);
        j = {{"is_greater", is_greater(a, e)},
             {"largest_dominating", dom ? nlohmann::json(to_string(*dom)) : nlohmann::json(nullptr)}};
      }
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*c_enum) {
      require_even({en_h});
      nlohmann::json j;
      if (en_count) {
        j["count"] = count_standard(en_p, en_h, en_d, en_w);
      } else {
        const auto all = enumerate_standard(en_p, en_h, en_d, en_w);
        j["count"] = all.size();
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : all) arr.push_back(to_string(s));
        j["products"] = arr;
      }
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*c_str) {
      require_even({st_h});
      Poly f;
      if (!st_json.empty()) {
        std::ifstream in(st_json);
        if (!in) throw UsageError("cannot read " + st_json);
        f = poly_from_json(nlohmann::json::parse(in));
        if (f.alphabet().kind != RingKind::X) throw UsageError("straighten needs an X-ring polynomial");
        st_p = f.alphabet().p;
      } else if (!st_expr.empty()) {
        f = parse_expr(st_expr, st_p);
      } else {
        throw UsageError("straighten needs --expr or --json");
      }
      nlohmann::json j;
      if (f.is_zero()) {
        j["terms"] = nlohmann::json::array();
      } else {
        auto bd = f.bidegree();
        if (!bd) throw UsageError("straighten needs a homogeneous polynomial");
        j["bidegree"] = {bd->first, bd->second};
        j["terms"] = terms_json(straighten(f, st_p, st_h, bd->first, bd->second));
      }
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*c_vb) {
      vb_grid.validate();
      const int threads = resolve_threads(vb_common.threads);
      const auto cells = vb_grid.cells();
      auto results = parallel_map<nlohmann::json>(cells.size(), threads, [&](std::size_t i) {
        const auto& c = cells[i];
        return verify_standard_basis(c.p, c.h, c.d, c.w).to_json();
      });
      return emit_report(make_report("verify-basis", "standard-monomials-form-z-basis-of-quotient",
                                     vb_grid.echo(threads), results, seconds_since(t0)),
                         vb_common, out);
    }
    if (*c_vl) {
      vl_grid.validate();
      const int threads = resolve_threads(vl_common.threads);
      const auto cells = vl_grid.cells();
      auto results = parallel_map<nlohmann::json>(cells.size(), threads, [&](std::size_t i) {
        const auto& c = cells[i];
        const auto all = enumerate_standard(c.p, c.h, c.d, c.w);
        std::size_t failures = 0;
        nlohmann::json witness = nullptr;
        for (const auto& s : all) {
          const LeadingCheck chk = verify_leading(s, c.p, c.h);
          if (!chk.pass) {
            ++failures;
            if (witness.is_null()) {
              witness = {{"product", to_string(s)},
                         {"leading", to_string(chk.leading, RingKind::A)},
                         {"coeff", chk.coeff.str()},
                         {"expected", to_string(chk.expected, RingKind::A)}};
            }
          }
        }
        return nlohmann::json{{"p", c.p},
                              {"h", c.h},
                              {"d", c.d},
                              {"w", c.w},
                              {"n_standard", all.size()},
                              {"failures", failures},
                              {"witness", witness},
                              {"verdict", failures == 0 ? "pass" : "fail"}};
      });
      return emit_report(make_report("verify-leading", "leading-tableau-of-standard-image", vl_grid.echo(threads),
                                     results, seconds_since(t0)),
                         vl_common, out);
    }
    if (*c_vi) {
      vi_grid.validate();
      const int threads = resolve_threads(vi_common.threads);
      const auto cells = vi_grid.cells();
      auto results = parallel_map<nlohmann::json>(cells.size(), threads, [&](std::size_t i) {
        const auto& c = cells[i];
        return verify_injectivity(c.p, c.h, c.d, c.w).to_json();
      });
      return emit_report(make_report("verify-injectivity", "quotient-map-injective-on-standard-monomials",
                                     vi_grid.echo(threads), results, seconds_since(t0)),
                         vi_common, out);
    }
    if (*c_vv) {
      require_nonempty(vv_ps, "p");
      require_nonempty(vv_hs, "h");
      require_even(vv_hs);
      const int threads = resolve_threads(vv_common.threads);
      std::vector<std::pair<int, int>> cells;
      for (int p : vv_ps) {
        for (int h : vv_hs) cells.emplace_back(p, h);
      }
      auto results = parallel_map<nlohmann::json>(cells.size(), threads, [&](std::size_t i) {
        return verify_invariance(cells[i].first, cells[i].second, vv_k, vv_m).to_json();
      });
      nlohmann::json echo = {{"p", vv_ps}, {"h", vv_hs}, {"k_max", vv_k}, {"m_max", vv_m}, {"threads", threads}};
      return emit_report(make_report("verify-invariance", "symplectic-jet-invariance-of-generators", echo, results,
                                     seconds_since(t0), "checked at the Lie-algebra level over Q"),
                         vv_common, out);
    }
    if (*c_id) {
      id_grid.validate();
      const int threads = resolve_threads(id_common.threads);
      const auto cells = id_grid.cells();
      auto results = parallel_map<nlohmann::json>(cells.size(), threads, [&](std::size_t i) {
        const auto& c = cells[i];
        return invariant_dimension(c.p, c.h, c.d, c.w, c.w).to_json();
      });
      return emit_report(make_report("invariant-dimension", "invariants-equal-image-of-standard-monomials",
                                     id_grid.echo(threads), results, seconds_since(t0),
                                     "d is the degree in the jet ring; checked at the Lie-algebra level over Q"),
                         id_common, out);
    }
    if (*c_rel) {
      std::vector<CuratedRelation> suite;
      if (rel_curated) {
        suite = curated_relation_suite();
      } else {
        if (rel_u.empty() || rel_up.empty()) throw UsageError("relations needs --u and --u-prime, or --curated");
        CuratedRelation c{rel_p, {rel_u, rel_up, rel_i, rel_j, rel_k0, rel_m, {}}};
        for (const auto& s : rel_seed) c.spec.seed.push_back(parse_bigint(s));
        suite.push_back(std::move(c));
      }
      const int threads = resolve_threads(rel_common.threads);
      auto results = parallel_map<nlohmann::json>(suite.size(), threads, [&](std::size_t i) {
        const auto& c = suite[i];
        const Relation rel = generate_relation(c.p, c.spec);
        const RelationCheck chk = check_relation(c.p, rel);
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& a : rel.coefficients) coeffs.push_back(a.str());
        return nlohmann::json{{"p", c.p},
                              {"spec", to_json(c.spec)},
                              {"coefficients", coeffs},
                              {"terms", rel.value.size()},
                              {"identically_zero", chk.identically_zero},
                              {"in_ideal_rational", chk.in_ideal_rational},
                              {"in_ideal_integral", chk.in_ideal_integral},
                              {"in_smaller_odd_ideal", chk.identically_zero},
                              {"rank_before", chk.rank_before},
                              {"rank_after", chk.rank_after},
                              {"verdict", chk.in_ideal_rational ? "pass" : "fail"}};
      });
      nlohmann::json echo = {{"curated", rel_curated}, {"threads", threads}};
      return emit_report(make_report("relations", "antisymmetrized-pfaffian-relations-lie-in-ideal", echo, results,
                                     seconds_since(t0),
                                     "membership is tested in the ideal of size h+2 Pfaffians; the ideal of odd size "
                                     "h+1 is zero, so in_smaller_odd_ideal equals identically_zero"),
                         rel_common, out);
    }
    if (*c_qh) {
      require_even({qh_h});
      const Poly f = parse_expr(qh_expr, qh_p);
      out << to_json(qh(qh_p, qh_h, f)).dump(2) << "\n";
      return 0;
    }
  } catch (const NonIntegralSolution& e) {
    err << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace pfarc
