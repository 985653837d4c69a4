#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "saw/enumeration.hpp"
#include "saw/errors.hpp"
#include "saw/exact_markov.hpp"
#include "saw/gmethod.hpp"
#include "saw/harness.hpp"
#include "saw/pivot.hpp"
#include "saw/symmetry.hpp"

namespace py = pybind11;
using namespace saw;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix<double> to_matrix(const Rows& rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m ? rows.front().size() : 0;
    Matrix<double> out(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) throw DimensionMismatch("ragged matrix rows");
        for (std::size_t j = 0; j < n; ++j) out(i, j) = rows[i][j];
    }
    return out;
}

Rows to_rows(const Matrix<double>& m) {
    Rows out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
    return out;
}

gmethod::Partition to_partition(std::size_t m, const std::vector<std::vector<std::size_t>>& blocks) {
    return gmethod::Partition(m, blocks);
}

py::dict matrix_dict(const TransitionMatrix& t) {
    std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>> entries;
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto cols = t.row_cols(i);
        auto cnt = t.row_counts(i);
        for (std::size_t k = 0; k < cols.size(); ++k) entries.emplace_back(i, cols[k], cnt[k]);
    }
    py::dict d;
    d["size"] = t.size();
    d["denominator"] = t.denominator();
    d["entries"] = entries;
    return d;
}

std::vector<std::string> walk_strings(const StateSpace& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.walk(i).to_string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Self-avoiding walk pivot chains: enumeration, exact matrices, sampling and G-method checks";
    m.attr("__version__") = SAW_VERSION;

    py::register_exception<Error>(m, "SawError", PyExc_ValueError);

    m.def("is_self_avoiding", [](const std::string& walk, int d) { return is_self_avoiding(Walk::parse(walk, d)); },
          py::arg("walk"), py::arg("d"));
    m.def("group_order", [](int d) { return symmetry_group(d).size(); }, py::arg("d"));
    m.def("pivot_move",
          [](const std::string& walk, int d, std::size_t k, std::size_t symmetry) {
              const auto& g = symmetry_group(d);
              if (symmetry >= g.size()) throw InvalidArgument("symmetry index out of range");
              return pivot_move(Walk::parse(walk, d), k, g[symmetry]).to_string();
          },
          py::arg("walk"), py::arg("d"), py::arg("k"), py::arg("symmetry"));

    m.def("count_walks",
          [](int d, int n, std::size_t max_walks) {
              const StateSpace s = enumerate(d, n, {max_walks});
              const WalkCounts c = counts(s);
              py::dict out;
              out["c_N"] = c.c_n;
              out["a_N"] = c.a_n;
              out["class_sizes"] = c.class_sizes;
              out["identity_holds"] = verify_partition_identity(s);
              return out;
          },
          py::arg("d"), py::arg("n"), py::arg("max_walks") = 1'000'000);
    m.def("enumerate_walks", [](int d, int n, std::size_t max_walks) { return walk_strings(enumerate(d, n, {max_walks})); },
          py::arg("d"), py::arg("n"), py::arg("max_walks") = 1'000'000);

    m.def("pivot_matrix", [](int d, int n) { return matrix_dict(build_pivot_matrix(enumerate(d, n, {kMaxExactStates}))); },
          py::arg("d"), py::arg("n"));
    m.def("pivot_plus_matrices",
          [](int d, int n) {
              const PivotPlusMatrices pp = build_pivot_plus_matrices(enumerate(d, n, {kMaxExactStates}));
              return py::make_tuple(matrix_dict(pp.p1), matrix_dict(pp.p2));
          },
          py::arg("d"), py::arg("n"));
    m.def("conjecture_table",
          [](int d, int n, std::size_t horizon) {
              const StateSpace s = enumerate(d, n, {kMaxExactStates});
              const ConjectureScan scan =
                  conjecture_scan(s, build_pivot_matrix(s), build_pivot_plus_matrices(s), horizon);
              std::vector<std::tuple<std::size_t, double, double, bool>> rows;
              for (const auto& r : scan.rows) rows.emplace_back(r.n, r.l1_pivot, r.l1_pivot_plus, r.p_leads);
              py::dict out;
              out["rows"] = rows;
              out["n0"] = scan.n0 ? py::cast(*scan.n0) : py::none();
              out["start_walk"] = scan.start_walk;
              return out;
          },
          py::arg("d"), py::arg("n"), py::arg("horizon") = 200);

    m.def("sample_chain",
          [](int d, int n, const std::string& variant, std::size_t n_steps, std::uint64_t seed, std::uint64_t replica) {
              ChainConfig cfg;
              cfg.d = d;
              cfg.n = n;
              cfg.variant = parse_variant(variant);
              cfg.seed = seed;
              validate(cfg);
              TrajectoryRecorder rec;
              ChainObserver* obs[] = {&rec};
              run_chain(cfg, n_steps, obs, replica);
              std::vector<std::string> out;
              for (const Walk& w : rec.walks) out.push_back(w.to_string());
              return out;
          },
          py::arg("d"), py::arg("n"), py::arg("variant") = "pivot", py::arg("n_steps") = 10, py::arg("seed") = 1,
          py::arg("replica") = 0);

    auto g = m.def_submodule("gmethod", "Stable-matrix predicates and reductions on dense float matrices");
    g.def("in_g",
          [](const Rows& p, const std::vector<std::vector<std::size_t>>& delta,
             const std::vector<std::vector<std::size_t>>& sigma, double tol) {
              const Matrix<double> mp = to_matrix(p);
              return gmethod::in_g(mp, to_partition(mp.rows(), delta), to_partition(mp.cols(), sigma), tol);
          },
          py::arg("p"), py::arg("delta"), py::arg("sigma"), py::arg("tol") = gmethod::kDefaultTolerance);
    g.def("reduce",
          [](const Rows& p, const std::vector<std::vector<std::size_t>>& delta,
             const std::vector<std::vector<std::size_t>>& sigma, double tol) {
              const Matrix<double> mp = to_matrix(p);
              return to_rows(
                  gmethod::reduce(mp, to_partition(mp.rows(), delta), to_partition(mp.cols(), sigma), tol).values);
          },
          py::arg("p"), py::arg("delta"), py::arg("sigma"), py::arg("tol") = gmethod::kDefaultTolerance);
    g.def("alpha_bar", [](const Rows& p) { return gmethod::alpha_bar(to_matrix(p)); }, py::arg("p"));
    g.def("gamma_bar",
          [](const Rows& p, const std::vector<std::vector<std::size_t>>& delta) {
              const Matrix<double> mp = to_matrix(p);
              return gmethod::gamma_bar(mp, to_partition(mp.rows(), delta));
          },
          py::arg("p"), py::arg("delta"));

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              // Minimal key/value front end for the harness: ["audit", "--d", "2", ...].
              if (args.empty()) throw InvalidArgument("missing subcommand");
              harness::RunConfig cfg;
              cfg.subcommand = args[0];
              for (std::size_t i = 1; i < args.size(); ++i) {
                  const std::string& key = args[i];
                  if (i + 1 >= args.size()) throw InvalidArgument("missing value for " + key);
                  const std::string& v = args[++i];
                  if (key == "--d") cfg.d = std::stoi(v);
                  else if (key == "--walk-length") cfg.walk_length = std::stoi(v);
                  else if (key == "--horizon") cfg.horizon = std::stoul(v);
                  else if (key == "--seed") cfg.seed = std::stoull(v);
                  else if (key == "--replicas") cfg.replicas = std::stoul(v);
                  else if (key == "--n-steps") cfg.n_steps = std::stoul(v);
                  else if (key == "--variant") cfg.variant = parse_variant(v);
                  else if (key == "--observe") cfg.observe = v;
                  else if (key == "--tol") cfg.tol = std::stod(v);
                  else if (key == "--format") cfg.format = v;
                  else if (key == "--cases") cfg.cases = std::stoul(v);
                  else throw InvalidArgument("unsupported option " + key);
              }
              std::ostringstream out, err;
              const int code = harness::run(cfg, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
