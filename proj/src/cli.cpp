#include "hths/cli.hpp"

#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hths/arrangement.hpp"
#include "hths/delcon.hpp"
#include "hths/formulas.hpp"
#include "hths/sheaf.hpp"

namespace hths {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MultiGraph load_checked(const RunConfig& cfg) {
  MultiGraph g;
  try {
    g = load_graph(cfg.graph_path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (!g.is_connected()) throw InputError("graph is not connected");
  std::size_t n = betti1(g);
  if (n > cfg.max_dim)
    throw InputError("first Betti number " + std::to_string(n) + " exceeds --max-dim " + std::to_string(cfg.max_dim));
  return g;
}

int guarded(const RunConfig& cfg, std::ostream& err, const std::function<int(const MultiGraph&)>& body) {
  try {
    return body(load_checked(cfg));
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::size_t> padded(std::vector<std::size_t> v, std::size_t len) {
  v.resize(len, 0);
  return v;
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

VerificationReport run_verification(const MultiGraph& g, std::uint64_t seed, std::size_t max_dim) {
  using nlohmann::json;
  VerificationReport report;
  json edges_json = json::array();
  auto record = [&](std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto attempt = [&](const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    try {
      record(name, fn(detail), detail);
    } catch (const std::exception& e) {
      record(name, false, e.what());
    }
  };

  std::size_t n = betti1(g);
  BettiTable table;
  attempt("sheaf cohomology (coboundaries square to zero)", [&](std::string& d) {
    table = compute_betti_table(g, seed, max_dim);
    d = betti_to_json(table);
    return true;
  });
  attempt("euler characteristic", [&](std::string& d) {
    long chi = complex_for_graph(g, seed, max_dim).euler_characteristic();
    d = std::to_string(chi);
    return chi == (n == 0 ? 1 : 0);
  });
  attempt("vanishing below the diagonal", [&](std::string&) {
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < i; ++k)
        if (table.at(i, k) != 0) return false;
    return true;
  });
  attempt("h^0 = 1 and h^1 = b1", [&](std::string& d) {
    auto p = to_polynomial(table);
    d = p.to_string();
    return p[0] == 1 && p[1] == n;
  });
  attempt("shift independence", [&](std::string& d) {
    for (std::uint64_t s = seed + 1; s <= seed + 2; ++s) {
      if (!(compute_betti_table(g, s, max_dim) == table)) {
        d = "seed " + std::to_string(s) + " differs";
        return false;
      }
    }
    return true;
  });
  attempt("top cohomology = top cells = spanning trees", [&](std::string& d) {
    auto r = tree_lemma_report(g, seed);
    d = std::to_string(r.top_betti) + " / " + std::to_string(r.top_cells) + " / " + r.spanning_trees.get_str();
    return r.holds;
  });
  if (auto closed = closed_form_poincare(g)) {
    attempt("closed-form poincare polynomial", [&](std::string& d) {
      auto p = to_polynomial(table);
      d = p.to_string() + " vs " + closed->to_string();
      return p == *closed;
    });
  }
  if (has_disconnecting_vertex(remove_bridges(g))) {
    attempt("product over blocks", [&](std::string& d) {
      auto p = to_polynomial(table), q = block_product_poincare(g, seed);
      d = p.to_string() + " vs " + q.to_string();
      return p == q;
    });
  }
  if (n >= 2 && !has_disconnecting_vertex(g)) {
    attempt("base-graph recursion", [&](std::string& d) {
      for (std::size_t i = 0; i <= n; ++i) {
        auto rec = intermsofbase_table(g, i, seed);
        if (rec != table.table[i]) {
          d = "R^" + std::to_string(i) + ": " + join(rec) + " vs " + join(table.table[i]);
          return false;
        }
      }
      return true;
    });
  }

  for (const auto& edge : g.edges()) {
    if (edge.is_loop() || is_bridge(g, edge.id)) continue;
    std::string tag = "edge " + std::to_string(to_index(edge.id)) + ": ";
    json ej;
    ej["edge"] = to_index(edge.id);
    try {
      BalloonSetup setup = balloon_setup(g, edge.id, seed, max_dim);
      record(tag + "generic subdivision", true);
      attempt(tag + "cap f-vector = deletion f-vector", [&](std::string& d) {
        auto del = complex_for_graph(remove_bridges(delete_edge(g, edge.id)), seed, max_dim).f_vector();
        auto cap = setup.cap.complex.f_vector();
        d = join(cap) + " vs " + join(del);
        return cap == del;
      });
      attempt(tag + "coarse table = contraction table", [&](std::string&) {
        return betti_table(setup.coarse) == compute_betti_table(contract_edge(g, edge.id), seed, max_dim);
      });
      json degrees = json::array();
      for (std::size_t i = 0; i <= n; ++i) {
        std::string itag = tag + "R^" + std::to_string(i) + " ";
        json dj;
        dj["i"] = i;
        bool ses_ok = false, les_ok = false;
        try {
          ShortExactSeq ses = build_ses(setup, i);
          ses_ok = true;
          record(itag + "short exact sequence", true);
          LongExactSeq les = snake_les(ses);
          les_ok = true;
          record(itag + "long exact sequence", true);
          std::vector<std::size_t> seq;
          for (const auto& node : les.nodes) seq.push_back(node.dim);
          dj["sequence"] = seq;
          auto hb = cohomology(ses.B);
          auto hcoarse = cohomology(build_Rif(setup.coarse, i));
          record(itag + "refinement invariance", hb == hcoarse, join(hb) + " vs " + join(hcoarse));
          auto hc = cohomology(ses.C);
          auto hcap = i == 0 ? std::vector<std::size_t>(n + 1, 0) : padded(cohomology(ses.cap_sheaf), n + 1);
          record(itag + "quotient = cap cohomology", hc == hcap, join(hc) + " vs " + join(hcap));
          dj["fine"] = cohomology(ses.A);
          dj["coarse"] = hb;
          dj["cap"] = hc;
        } catch (const std::exception& e) {
          record(itag + (ses_ok ? "long exact sequence" : "short exact sequence"), false, e.what());
        }
        dj["ses"] = ses_ok;
        dj["les"] = les_ok;
        degrees.push_back(dj);
      }
      ej["degrees"] = degrees;
    } catch (const std::exception& e) {
      record(tag + "generic subdivision", false, e.what());
    }
    attempt(tag + "total long exact sequence", [&](std::string&) { return total_les_check(g, edge.id, seed); });
    bool small = n >= 2 && !has_disconnecting_vertex(g) &&
                 (g.degree(edge.tail) == 2 || g.degree(edge.head) == 2);
    if (small) {
      attempt(tag + "degree-2 split", [&](std::string&) {
        auto r = smalldelcon_report(g, edge.id, seed);
        ej["split"] = r.holds;
        return r.holds;
      });
    }
    edges_json.push_back(ej);
  }

  json out;
  out["graph"] = json::parse(to_json(g));
  out["seed"] = seed;
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  out["checks"] = checks;
  out["edges"] = edges_json;
  out["passed"] = report.passed();
  report.json = out.dump(2);
  return report;
}

int cmd_betti(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, err, [&](const MultiGraph& g) {
    BettiTable t = compute_betti_table(g, cfg.seed, cfg.max_dim);
    if (cfg.json) {
      auto j = nlohmann::json::parse(betti_to_json(t));
      j["polynomial"] = to_polynomial(t).to_string();
      out << j.dump() << "\n";
      return 0;
    }
    out << "n = " << t.n << "\n";
    for (std::size_t i = 0; i <= t.n; ++i) out << "R^" << i << ": " << join(t.table[i]) << "\n";
    out << "P(y) = " << to_polynomial(t).to_string() << "\n";
    return 0;
  });
}

int cmd_poincare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, err, [&](const MultiGraph& g) {
    auto p = computed_poincare(g, cfg.seed, cfg.max_dim);
    auto closed = closed_form_poincare(g);
    bool agree = !closed || *closed == p;
    if (cfg.json) {
      nlohmann::json j;
      j["coefficients"] = p.coefficients;
      j["polynomial"] = p.to_string();
      j["closed_form"] = closed ? nlohmann::json(closed->to_string()) : nlohmann::json(nullptr);
      out << j.dump() << "\n";
    } else {
      out << p.to_string() << "\n";
      if (closed && !agree) out << "closed form: " << closed->to_string() << "\n";
    }
    if (!agree) err << "error: computed polynomial differs from the closed form\n";
    return agree ? 0 : 1;
  });
}

int cmd_arrangement(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, err, [&](const MultiGraph& g) {
    out << complex_to_json(complex_for_graph(g, cfg.seed, cfg.max_dim)) << "\n";
    return 0;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, err, [&](const MultiGraph& g) {
    VerificationReport r = run_verification(g, cfg.seed, cfg.max_dim);
    if (cfg.json) {
      out << r.json << "\n";
    } else {
      for (const auto& c : r.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed && !c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
      }
    }
    return r.passed() ? 0 : 1;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomology of cographical hypertoric Hitchin systems", "hths"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for the shift search")->capture_default_str();
  app.add_option("--max-dim", cfg.max_dim, "Largest supported first Betti number")->capture_default_str();
  app.add_flag("--json", cfg.json, "Machine-readable output");
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&, std::ostream&, std::ostream&);
  };
  const Command commands[] = {
      {"betti", "Table of dim H^k(T^n, R^i) and the total Poincare polynomial", cmd_betti},
      {"poincare", "Total Poincare polynomial", cmd_poincare},
      {"arrangement", "Cell decomposition of the torus as JSON", cmd_arrangement},
      {"verify", "Run every applicable verification", cmd_verify},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    sub->add_option("graph", cfg.graph_path, "Graph JSON file")->required();
    subs.emplace_back(sub, &c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [sub, c] : subs) {
    if (!sub->parsed()) continue;
    cfg.command = c->name;
    return c->run(cfg, out, err);
  }
  return 2;
}

}  // namespace hths
