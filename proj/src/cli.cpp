#include "valuta/cli.hpp"

#include <algorithm>
#include <fstream>

#include <CLI11.hpp>

#include "valuta/invariants.hpp"
#include "valuta/json_io.hpp"
#include "valuta/moment.hpp"
#include "valuta/suites.hpp"

namespace valuta::cli {

namespace {

void emit(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

Mode parse_mode(const std::string& s) { return s == "float" ? Mode::floating : Mode::exact; }

int cmd_moment(const std::string& file, int rank, const std::string& mode, const std::string& out_path,
               std::ostream& out) {
  if (rank < 0) throw UsageError("--rank must be non-negative");
  const PolytopeQ body = polytope_from_json(read_json_file(file));
  if (parse_mode(mode) == Mode::exact)
    emit(tensor_to_json(moment_tensor(body, rank)), out_path, out);
  else
    emit(tensor_to_json(moment_tensor(cast_polytope<double>(body), rank)), out_path, out);
  return kPass;
}

int cmd_verify(const std::string& suite, const SuiteConfig& config, const std::string& out_path, std::ostream& out) {
  const Report report = run_suite(suite, config);
  emit(report_to_json(report), out_path, out);
  return report.pass ? kPass : kVerificationFailed;
}

int cmd_invariants(const std::string& kind, int m, int rank, bool emit_basis, const std::string& out_path,
                   std::ostream& out) {
  if (m < 2 || 2 * m > MultiIndex::kMaxDim) throw UsageError("--m out of range");
  if (rank < 0) throw UsageError("--rank must be non-negative");
  const AlgebraSpec spec = make_algebra(parse_algebra_kind(kind), m);
  const auto basis = invariant_subspace(spec, rank);
  Json j{{"kind", to_string(spec.kind)}, {"m", m}, {"rank", rank}, {"dim", basis.size()}};
  if (emit_basis) {
    Json list = Json::array();
    for (const auto& t : basis) list.push_back(tensor_to_json(t));
    j["basis"] = list;
  }
  emit(j, out_path, out);
  return kPass;
}

int cmd_weights(int m, int jdim, int rank, const std::string& out_path, std::ostream& out) {
  WeightConstraintResult res;
  try {
    res = enumerate_admissible_weights(m, jdim, rank);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json weights = Json::array();
  for (const auto& theta : res.weights) weights.push_back(theta.entries());
  Json j{{"m", m}, {"j", jdim}, {"rank", rank}};
  j["s"] = res.s ? Json(*res.s) : Json(nullptr);
  j["count"] = res.weights.size();
  j["weights"] = weights;
  emit(j, out_path, out);
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact moment tensor valuations and verification suites", "valuta"};
  app.require_subcommand(1);

  std::string out_path, mode = "exact", file, suite, kind;
  int rank = 2;
  int m = 2;
  int jdim = 1;
  bool emit_basis = false;
  SuiteConfig config;
  const auto modes = CLI::IsMember({"exact", "float"});

  auto* moment = app.add_subcommand("moment", "moment tensor M^r of a polytope file, as tensor JSON");
  moment->add_option("file", file, "polytope JSON")->required();
  moment->add_option("--rank", rank, "tensor rank r")->required();
  moment->add_option("--mode", mode, "exact | float")->check(modes);
  moment->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run a verification suite, print a report; exit 1 on failure");
  verify->add_option("suite", suite, "covariance | equivariance | mcmullen | klain | transfer | detid")->required();
  verify->add_option("--m", config.m, "complex dimension m (ambient R^{2m})");
  verify->add_option("--rank", config.rank, "tensor rank r");
  verify->add_option("--seed", config.seed, "64-bit seed");
  verify->add_option("--mode", mode, "exact | float")->check(modes);
  verify->add_option("--samples", config.samples, "number of samples (suite default if omitted)");
  verify->add_flag("--inject-fault", config.inject_fault, "run the suite's negative control");
  verify->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* invariants = app.add_subcommand("invariants", "invariant symmetric tensors of a Lie algebra action");
  invariants->add_option("--kind", kind, "sl_m_R_diag | sl_m_C")->required();
  invariants->add_option("--m", m, "m");
  invariants->add_option("--rank", rank, "tensor rank r")->required();
  invariants->add_flag("--emit-basis", emit_basis, "include the basis tensors");
  invariants->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* weights = app.add_subcommand("weights", "admissible weights theta for (m, j, r)");
  weights->add_option("--m", m, "m")->required();
  weights->add_option("--j", jdim, "subspace dimension j, j != m")->required();
  weights->add_option("--rank", rank, "tensor rank r")->required();
  weights->add_option("--out", out_path, "write JSON here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "valuta: " << e.what() << "\n" << sub->help();
    return kUsageError;
  }

  try {
    if (moment->parsed()) return cmd_moment(file, rank, mode, out_path, out);
    if (verify->parsed()) {
      config.mode = parse_mode(mode);
      return cmd_verify(suite, config, out_path, out);
    }
    if (invariants->parsed()) return cmd_invariants(kind, m, rank, emit_basis, out_path, out);
    if (weights->parsed()) return cmd_weights(m, jdim, rank, out_path, out);
  } catch (const ParseError& e) {
    err << "valuta: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "valuta: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "valuta: " << e.what() << "\n";
    return kGeometryError;
  }
  return kUsageError;
}

}  // namespace valuta::cli
