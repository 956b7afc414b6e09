// Command-line front end: model validation, exact inference, analytic and
// data-driven causal power, interventions, forward sampling, attribution
// statistics, and the unit-kind bridge.
//
// Exit codes: 0 success, 1 domain results (Undefined / NotIdentified /
// invalid model), 2 usage or parse errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cheng/attribution.hpp"
#include "cheng/bool_expr.hpp"
#include "cheng/dataset.hpp"
#include "cheng/estimation.hpp"
#include "cheng/inference.hpp"
#include "cheng/intervention.hpp"
#include "cheng/model_io.hpp"
#include "cheng/rubin.hpp"
#include "cheng/simulate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct Output {
  bool csv = false;
  bool full_precision = false;

  std::string number(double v) const {
    std::ostringstream os;
    os.precision(full_precision || csv ? 17 : 4);
    os << v;
    return os.str();
  }
};

// "V=0" / "V=1"
std::pair<std::string, int> parse_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw CLI::ValidationError("assignment", "expected VAR=0 or VAR=1, got '" + text + "'");
  std::string value = text.substr(eq + 1);
  if (value != "0" && value != "1")
    throw CLI::ValidationError("assignment", "expected 0/1 value in '" + text + "'");
  return {text.substr(0, eq), value == "1" ? 1 : 0};
}

cheng::PartialAssignment parse_assignment(const std::vector<std::string>& items) {
  cheng::PartialAssignment out;
  for (const auto& item : items) {
    std::istringstream is(item);
    std::string part;
    while (std::getline(is, part, ',')) {
      auto [name, value] = parse_binding(part);
      out[name] = value;
    }
  }
  return out;
}

std::string render_assignment(const cheng::PartialAssignment& pa) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [name, value] : pa) {
    if (!first) os << ',';
    os << name << '=' << value;
    first = false;
  }
  os << '}';
  return os.str();
}

cheng::ChengModel load_with_interventions(const std::string& path,
                                          const std::vector<std::string>& sets) {
  cheng::ChengModel model = cheng::load_model(path);
  for (const auto& [name, value] : parse_assignment(sets))
    model = cheng::intervene(model, name, value);
  return model;
}

int run_validate(const std::string& model_path, const Output& out) {
  auto spec = cheng::load_model_spec(model_path);
  auto diagnostics = cheng::validate(spec);
  if (out.csv) std::cout << "code,detail\n";
  if (diagnostics.empty()) {
    if (!out.csv) std::cout << "ok\n";
    return kOk;
  }
  for (const auto& d : diagnostics) {
    if (out.csv)
      std::cout << cheng::to_string(d.code) << ",\"" << d.detail << "\"\n";
    else
      std::cout << cheng::to_string(d.code) << ": " << d.detail << '\n';
  }
  return kDomainError;
}

int run_infer(const cheng::ChengModel& model, const std::vector<std::string>& event_args,
              const std::vector<std::string>& given_args, const std::string& joint_path,
              const Output& out) {
  if (event_args.empty() && joint_path.empty()) {
    std::cerr << "error: infer needs --event and/or --dump-joint\n";
    return kUsageError;
  }
  if (!joint_path.empty()) {
    auto table = cheng::joint(model);
    if (joint_path == "-") {
      cheng::write_joint_csv(table, std::cout);
    } else {
      std::ofstream os(joint_path);
      if (!os) throw cheng::Error(cheng::ErrorCode::ParseError, "cannot write '" + joint_path + "'");
      cheng::write_joint_csv(table, os);
    }
    if (event_args.empty()) return kOk;
  }
  auto event = parse_assignment(event_args);
  auto given = parse_assignment(given_args);
  auto p = cheng::probability(model, event, given);
  if (!p) {
    std::cout << "Undefined: conditioning event has probability 0\n";
    return kDomainError;
  }
  if (out.csv)
    std::cout << "probability\n" << out.number(*p) << '\n';
  else
    std::cout << out.number(*p) << '\n';
  return kOk;
}

int run_power(const cheng::ChengModel& model, const std::string& cause, const std::string& effect,
              const std::string& kind, bool show_equation, const Output& out) {
  if (show_equation)
    std::cout << "# " << effect << " = "
              << cheng::to_string(cheng::reduce(model, cause, effect), model) << '\n';
  if (kind == "direct") {
    double q = cheng::direct_power(model, cause, effect);
    if (out.csv)
      std::cout << "cause,effect,kind,value\n"
                << cause << ',' << effect << ",direct," << out.number(q) << '\n';
    else
      std::cout << out.number(q) << '\n';
    return kOk;
  }
  auto result = cheng::total_power(model, cause, effect);
  if (out.csv) {
    std::cout << "cause,effect,kind,sense,value,path_rule\n"
              << cause << ',' << effect << ",total," << cheng::to_string(result.sense) << ','
              << out.number(result.value) << ',' << out.number(result.via_path_rule) << '\n';
  } else {
    std::cout << out.number(result.value) << '\n';
    auto influence = cheng::influence_class(model, cause, effect);
    if (influence.kind == cheng::Influence::Mixed)
      std::cout << "# mixed pathways; net " << cheng::to_string(influence.net) << '\n';
    if (influence.parity_extrapolated)
      std::cout << "# chained preventers present; path signs use the parity rule (extrapolated)\n";
  }
  return kOk;
}

int run_estimate(const cheng::ChengModel& model, const std::string& data_path,
                 const std::string& cause, const std::string& effect, const std::string& kind,
                 const Output& out) {
  auto data = cheng::load_dataset_csv(data_path);
  auto est = cheng::estimate_power(model, data, cause, effect,
                                   kind == "total" ? cheng::PowerKind::Total
                                                   : cheng::PowerKind::Direct);
  if (out.csv) {
    std::cout << "status,reason,value,kind,polarity,delta_p,conditioning\n";
    std::cout << cheng::to_string(est.status) << ',' << est.reason << ','
              << (est.value ? out.number(*est.value) : "") << ',' << cheng::to_string(est.kind)
              << ',' << (est.polarity == cheng::Polarity::Facilitating ? "facilitating" : "preventive")
              << ',' << (est.delta_p ? out.number(*est.delta_p) : "") << ",\""
              << render_assignment(est.conditioning) << "\"\n";
    return est.status == cheng::EstimateStatus::Identified ? kOk : kDomainError;
  }
  switch (est.status) {
    case cheng::EstimateStatus::Identified:
      std::cout << out.number(*est.value) << '\n';
      std::cout << "# kind=" << cheng::to_string(est.kind) << " polarity="
                << (est.polarity == cheng::Polarity::Facilitating ? "facilitating" : "preventive")
                << " conditioning=" << render_assignment(est.conditioning);
      if (est.delta_p) std::cout << " delta_p=" << out.number(*est.delta_p);
      std::cout << '\n';
      return kOk;
    case cheng::EstimateStatus::NotIdentified:
      std::cout << "NotIdentified: " << est.reason;
      if (est.raw_value) std::cout << " (raw value " << out.number(*est.raw_value) << ')';
      std::cout << '\n';
      return kDomainError;
    case cheng::EstimateStatus::Undefined:
      std::cout << "Undefined: " << est.reason << '\n';
      return kDomainError;
  }
  return kDomainError;
}

int run_attribution(const std::string& which, const std::string& data_path,
                    const std::string& cause, const std::string& effect, const Output& out) {
  auto data = cheng::load_dataset_csv(data_path);
  std::optional<double> value;
  if (which == "paf")
    value = cheng::paf(data, cause, effect);
  else if (which == "prob-causation")
    value = cheng::prob_causation(data, cause, effect);
  else
    value = cheng::forecast_removal(data, cause, effect);
  if (!value) {
    std::cout << "Undefined: empty stratum or zero effect frequency\n";
    return kDomainError;
  }
  if (out.csv)
    std::cout << which << '\n' << out.number(*value) << '\n';
  else
    std::cout << out.number(*value) << '\n';
  return kOk;
}

int run_rubin_check(double c, double u, double cu, double n, double pc, double pu,
                    const Output& out) {
  auto rm = cheng::make_rubin(c, u, cu, n);
  auto pair = cheng::rubin_to_cheng(rm);
  double residual = cheng::independence_residual(rm);
  double pe = cheng::rubin_prob_e(rm, pc, pu);
  if (out.csv) {
    std::cout << "q_ec,q_eu,residual,prob_e\n"
              << out.number(pair.q_ec) << ',' << out.number(pair.q_eu) << ','
              << out.number(residual) << ',' << out.number(pe) << '\n';
  } else {
    std::cout << "q_ec = " << out.number(pair.q_ec) << '\n';
    std::cout << "q_eu = " << out.number(pair.q_eu) << '\n';
    std::cout << "independence residual = " << out.number(residual) << '\n';
    std::cout << "P(E) at P(C)=" << out.number(pc) << ", P(U)=" << out.number(pu) << " : "
              << out.number(pe) << '\n';
  }
  return kOk;
}

int run_rubin_convert(double q_ec, double q_eu, const Output& out) {
  auto rm = cheng::cheng_to_rubin(q_ec, q_eu);
  if (out.csv)
    std::cout << "c,u,cu,n\n"
              << out.number(rm.prob_c) << ',' << out.number(rm.prob_u) << ','
              << out.number(rm.prob_cu) << ',' << out.number(rm.prob_n) << '\n';
  else
    std::cout << "c = " << out.number(rm.prob_c) << "\nu = " << out.number(rm.prob_u)
              << "\ncu = " << out.number(rm.prob_cu) << "\nn = " << out.number(rm.prob_n) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal-power models over noisy-OR/AND networks"};
  app.require_subcommand(1);

  Output out;
  std::string format = "text";
  app.add_option("--format", format, "Output format: text|csv")->check(CLI::IsMember({"text", "csv"}));
  app.add_flag("--full-precision", out.full_precision, "Print full double precision");

  std::string model_path, data_path, cause, effect, kind = "total", joint_path, out_path;
  std::vector<std::string> sets, event_args, given_args;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  double rc = 0, ru = 0, rcu = 0, rn = 0, rpc = 0.5, rpu = 0.5, rqec = 0, rqeu = 0;

  auto add_model = [&](CLI::App* cmd, bool with_sets = true) {
    cmd->add_option("--model", model_path, "Model file (.cm)")->required();
    if (with_sets)
      cmd->add_option("--set", sets, "Intervention VAR=0/1, applied before the query (repeatable)");
  };

  auto* validate = app.add_subcommand("validate", "Check model invariants");
  add_model(validate, false);

  auto* infer = app.add_subcommand("infer", "Probability queries on the exact joint");
  add_model(infer);
  infer->add_option("--event", event_args, "Event assignment, e.g. E=1 or E=1,F=0");
  infer->add_option("--given", given_args, "Conditioning assignment");
  infer->add_option("--dump-joint", joint_path, "Write the joint table CSV to a file ('-' = stdout)");

  auto* power = app.add_subcommand("power", "Analytic direct/total causal power");
  add_model(power);
  power->add_option("--cause", cause)->required();
  power->add_option("--effect", effect)->required();
  power->add_option("--kind", kind, "direct|total (default total)")
      ->check(CLI::IsMember({"direct", "total"}));

  auto* estimate = app.add_subcommand("estimate", "Estimate power from data, with identifiability");
  add_model(estimate);
  estimate->add_option("--data", data_path, "Dataset CSV")->required();
  estimate->add_option("--cause", cause)->required();
  estimate->add_option("--effect", effect)->required();
  std::string est_kind = "direct";
  estimate->add_option("--kind", est_kind, "direct|total (default direct)")
      ->check(CLI::IsMember({"direct", "total"}));

  auto* intervene_cmd = app.add_subcommand("intervene", "Graph surgery, then optional query");
  add_model(intervene_cmd);
  intervene_cmd->add_option("--out", out_path, "Write the intervened model to a .cm file");
  intervene_cmd->add_option("--event", event_args, "Probability query on the intervened model");
  intervene_cmd->add_option("--given", given_args);
  intervene_cmd->add_option("--cause", cause, "Power query on the intervened model");
  intervene_cmd->add_option("--effect", effect);
  intervene_cmd->add_option("--kind", kind)->check(CLI::IsMember({"direct", "total"}));

  auto* simulate = app.add_subcommand("simulate", "Forward-sample a dataset");
  add_model(simulate);
  simulate->add_option("--n", sample_n, "Record count")->required();
  simulate->add_option("--seed", sample_seed, "RNG seed")->required();
  simulate->add_option("--out", out_path, "Output CSV path (default stdout)");

  for (const char* name : {"paf", "prob-causation", "forecast-removal"}) {
    auto* cmd = app.add_subcommand(name, "Attribution statistic from weighted data");
    cmd->add_option("--data", data_path, "Dataset CSV")->required();
    cmd->add_option("--cause", cause)->required();
    cmd->add_option("--effect", effect)->required();
  }

  auto* rubin = app.add_subcommand("rubin", "Unit-kind model bridge");
  rubin->require_subcommand(1);
  auto* rubin_check = rubin->add_subcommand("check", "q's, residual, and P(E) from kind frequencies");
  rubin_check->add_option("--c", rc)->required();
  rubin_check->add_option("--u", ru)->required();
  rubin_check->add_option("--cu", rcu)->required();
  rubin_check->add_option("--n", rn)->required();
  rubin_check->add_option("--pc", rpc, "P(C=1), default 0.5");
  rubin_check->add_option("--pu", rpu, "P(U=1), default 0.5");
  auto* rubin_convert = rubin->add_subcommand("convert", "Kind frequencies from q parameters");
  rubin_convert->add_option("--q-ec", rqec)->required();
  rubin_convert->add_option("--q-eu", rqeu)->required();

  // --format and --full-precision live on the root; subcommand parses fall
  // through to it for anything they do not define themselves.
  auto all = [](const CLI::App*) { return true; };
  for (auto* sub : app.get_subcommands(all)) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands(all)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }
  out.csv = out.csv || format == "csv";

  try {
    if (validate->parsed()) return run_validate(model_path, out);
    if (infer->parsed())
      return run_infer(load_with_interventions(model_path, sets), event_args, given_args,
                       joint_path, out);
    if (power->parsed())
      return run_power(load_with_interventions(model_path, sets), cause, effect, kind, out);
    if (estimate->parsed())
      return run_estimate(load_with_interventions(model_path, sets), data_path, cause, effect,
                          est_kind, out);
    if (intervene_cmd->parsed()) {
      auto model = load_with_interventions(model_path, sets);
      if (!out_path.empty()) cheng::save_model(model, out_path);
      if (!event_args.empty()) return run_infer(model, event_args, given_args, "", out);
      if (!cause.empty() && !effect.empty()) return run_power(model, cause, effect, kind, out);
      if (out_path.empty() && !out.csv) std::cout << cheng::model_to_text(model);
      return kOk;
    }
    if (simulate->parsed()) {
      auto model = load_with_interventions(model_path, sets);
      auto data = cheng::sample(model, sample_n, sample_seed);
      if (out_path.empty()) {
        cheng::write_dataset_csv(data, std::cout);
      } else {
        cheng::save_dataset_csv(data, out_path);
      }
      return kOk;
    }
    for (const char* name : {"paf", "prob-causation", "forecast-removal"})
      if (app.get_subcommand(name)->parsed())
        return run_attribution(name, data_path, cause, effect, out);
    if (rubin->parsed()) {
      if (rubin_check->parsed()) return run_rubin_check(rc, ru, rcu, rn, rpc, rpu, out);
      return run_rubin_convert(rqec, rqeu, out);
    }
  } catch (const cheng::Error& e) {
    if (e.code() == cheng::ErrorCode::ParseError) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsageError;
    }
    std::cout << cheng::to_string(e.code()) << ": " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}
