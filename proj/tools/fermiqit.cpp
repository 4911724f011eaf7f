// fermiqit: command-line front end for the fermionic-mode toolkit.
// Subcommands expose validation, partial tracing, Schmidt analysis,
// purification, entropy, channel conversions and the two demonstration
// protocols over JSON artifact files.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fermiqit/channels.hpp"
#include "fermiqit/entanglement.hpp"
#include "fermiqit/fock.hpp"
#include "fermiqit/io.hpp"
#include "fermiqit/jordan_wigner.hpp"
#include "fermiqit/nosignal.hpp"
#include "fermiqit/ptrace.hpp"
#include "fermiqit/ssr.hpp"

namespace {

using namespace fermiqit;

constexpr int kExitOk = 0;
constexpr int kExitSsrViolation = 2;
constexpr int kExitNumericalFailure = 3;
constexpr int kExitParseError = 64;

struct CliFailure {
  int code;
  std::string message;
};

void emit(const Artifact& artifact, const std::string& out_path) {
  if (out_path.empty())
    std::cout << serialize_artifact(artifact);
  else
    save_artifact(artifact, out_path);
}

FockOperator as_density(const Artifact& artifact) {
  if (artifact.kind == ArtifactKind::Operator) return *artifact.op;
  if (artifact.kind == ArtifactKind::State) {
    const FockState& st = *artifact.state;
    return outer(st, st);
  }
  throw CliFailure{kExitParseError, "expected a state or operator artifact"};
}

std::string format_matrix(const Matrix& m) {
  std::string out;
  char buf[64];
  auto clean = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
  for (std::int64_t r = 0; r < m.rows(); ++r) {
    for (std::int64_t c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%9.6f%+.6fi", clean(m(r, c).real()),
                    clean(m(r, c).imag()));
      out += buf;
      out += (c + 1 < m.cols()) ? "  " : "";
    }
    out += "\n";
  }
  return out;
}

std::string format_spectrum(const RealVector& v) {
  std::string out = "{";
  char buf[32];
  for (std::int64_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", v[i]);
    out += buf;
    if (i + 1 < v.size()) out += ", ";
  }
  return out + "}";
}

int run_validate(const std::string& path) {
  const Artifact artifact = load_artifact(path);  // channel/dilation checks
  switch (artifact.kind) {
    case ArtifactKind::State: {
      const FockState& st = *artifact.state;
      if (!has_definite_parity(st))
        throw CliFailure{kExitSsrViolation, "parity SSR violated"};
      if (std::abs(st.norm() - 1.0) > 1e-6)
        throw CliFailure{kExitNumericalFailure, "state is not normalized"};
      std::cout << "OK: " << st.mode_count()
                << "-mode pure SSR state (definite parity, normalized)\n";
      return kExitOk;
    }
    case ArtifactKind::Operator: {
      const BlockForm form = classify_operator(*artifact.op);
      if (form.kind == BlockKind::Neither)
        throw CliFailure{kExitSsrViolation,
                         "operator has no definite parity block form"};
      std::cout << "OK: operator is "
                << (form.kind == BlockKind::BlockDiagonal
                        ? "block diagonal"
                        : "block anti-diagonal")
                << " in the parity basis\n";
      const SsrVerdict state_verdict = is_ssr_state(*artifact.op);
      if (state_verdict.ok) std::cout << "OK: also a valid SSR density operator\n";
      return kExitOk;
    }
    case ArtifactKind::Channel: {
      const KrausChannel& ch = *artifact.channel;  // ctor enforced SSR forms
      std::cout << "OK: channel with " << ch.kraus().size()
                << " SSR Kraus operator(s), "
                << (ch.trace_preserving() ? "trace preserving"
                                          : "selective (sum E^+E < I)")
                << "\n";
      return kExitOk;
    }
    case ArtifactKind::Dilation: {
      const StinespringDilation& d = *artifact.dilation;
      if (!is_ssr_unitary(d.unitary))
        throw CliFailure{kExitSsrViolation,
                         "dilation unitary is not an SSR unitary"};
      if (!has_definite_parity(d.env_state) ||
          std::abs(d.env_state.norm() - 1.0) > 1e-6)
        throw CliFailure{kExitSsrViolation,
                         "environment state is not a pure SSR state"};
      std::cout << "OK: dilation with " << d.env_modes
                << " environment mode(s)\n";
      return kExitOk;
    }
  }
  return kExitOk;
}

int run_ptrace(const std::string& path, const std::vector<int>& traced,
               const std::string& out_path) {
  const FockOperator rho = as_density(load_artifact(path));
  ModeList modes(traced.begin(), traced.end());
  emit(make_artifact(ptrace(rho, modes)), out_path);
  return kExitOk;
}

int run_schmidt(const std::string& path, const std::vector<int>& partition) {
  const Artifact artifact = load_artifact(path);
  if (artifact.kind != ArtifactKind::State)
    throw CliFailure{kExitParseError, "schmidt needs a state artifact"};
  const SchmidtDecomposition dec =
      schmidt(*artifact.state, ModeList(partition.begin(), partition.end()));
  std::printf("schmidt_number = %zu\n", dec.schmidt_number());
  for (std::int64_t i = 0; i < dec.coeffs.size(); ++i)
    std::printf("p[%lld] = %.6f\n", static_cast<long long>(i), dec.coeffs[i]);
  const double err = (reconstruct(dec).amps - artifact.state->amps).norm();
  std::printf("reconstruction_error = %.2e\n", err);
  return err < 1e-8 ? kExitOk : kExitNumericalFailure;
}

int run_purify(const std::string& path, const std::string& out_path) {
  const FockOperator rho = as_density(load_artifact(path));
  emit(make_artifact(purify(rho)), out_path);
  return kExitOk;
}

int run_entropy(const std::string& path) {
  const FockOperator rho = as_density(load_artifact(path));
  const SsrVerdict verdict = is_ssr_state(rho, 1e-8);
  if (!verdict)
    throw CliFailure{kExitSsrViolation,
                     "not an SSR density operator: " + verdict.failure};
  std::printf("entropy = %.6f bits\n", von_neumann_entropy(rho));
  return kExitOk;
}

int run_channel(const std::string& action, const std::string& channel_path,
                const std::string& state_path, int trials,
                std::uint64_t seed, const std::string& out_path) {
  const Artifact channel_artifact = load_artifact(channel_path);
  if (channel_artifact.kind != ArtifactKind::Channel)
    throw CliFailure{kExitParseError, "expected a channel artifact"};
  const KrausChannel& ch = *channel_artifact.channel;

  if (action == "apply") {
    if (state_path.empty())
      throw CliFailure{kExitParseError, "apply needs --state"};
    const FockOperator rho = as_density(load_artifact(state_path));
    emit(make_artifact(apply_kraus(ch, rho)), out_path);
    return kExitOk;
  }
  if (action == "choi") {
    const ChoiState choi = choi_of_channel(ch);
    emit(make_artifact(choi.sigma), out_path);
    return kExitOk;
  }
  if (action == "dilate") {
    emit(make_artifact(stinespring_from_kraus(ch)), out_path);
    return kExitOk;
  }
  if (action == "verify") {
    const AxiomReport report = verify_axioms(ch, trials, seed);
    std::printf("trace_preserving   %s (max deviation %.2e)\n",
                report.trace_preserving ? "pass" : "FAIL",
                report.max_trace_deviation);
    std::printf("convex_linear      %s (max deviation %.2e)\n",
                report.convex_linear ? "pass" : "FAIL",
                report.max_convexity_deviation);
    std::printf("completely_positive %s (min Choi eigenvalue %+.2e)\n",
                report.completely_positive ? "pass" : "FAIL",
                report.min_choi_eigenvalue);
    return report.all_pass() ? kExitOk : kExitNumericalFailure;
  }
  throw CliFailure{kExitParseError, "unknown channel action '" + action + "'"};
}

int run_jw_check(const std::string& path, const std::vector<int>& traced) {
  const FockOperator rho = as_density(load_artifact(path));
  const SsrVerdict verdict = is_ssr_state(rho, 1e-8);
  if (!verdict)
    throw CliFailure{kExitSsrViolation,
                     "not an SSR density operator: " + verdict.failure};
  const InconsistencyReport report =
      demonstrate_inconsistency(rho, ModeList(traced.begin(), traced.end()));
  std::cout << "route 1 (fermionic trace, then qubit map):\n"
            << format_matrix(report.fermionic_route.mat)
            << "spectrum = " << format_spectrum(report.fermionic_spectrum)
            << "\n";
  std::printf("entropy = %.6f\n\n", report.fermionic_entropy);
  std::cout << "route 2 (qubit map, then qubit trace):\n"
            << format_matrix(report.qubit_route.mat)
            << "spectrum = " << format_spectrum(report.qubit_spectrum) << "\n";
  std::printf("entropy = %.6f\n\n", report.qubit_entropy);
  std::printf("max entry divergence = %.6f\n", report.divergence);
  return kExitOk;
}

int run_nosignal(const std::string& ua_path, const std::string& ub_path,
                 const std::string& rho_path) {
  const Artifact ua_artifact = load_artifact(ua_path);
  if (ua_artifact.kind != ArtifactKind::Operator)
    throw CliFailure{kExitParseError, "--ua must be an operator artifact"};
  FockOperator u_a = *ua_artifact.op;

  std::optional<FockOperator> u_b;
  if (!ub_path.empty() && ub_path != "none") {
    const Artifact ub_artifact = load_artifact(ub_path);
    if (ub_artifact.kind != ArtifactKind::Operator)
      throw CliFailure{kExitParseError, "--ub must be an operator artifact"};
    u_b = *ub_artifact.op;
    // Bob's modes follow Alice's.
    const Mode shift = u_a.modes.back();
    ModeList shifted;
    for (Mode m : u_b->modes) shifted.push_back(m + shift);
    u_b = FockOperator(shifted, u_b->entries);
  }

  ModeList all = u_a.modes;
  if (u_b) all.insert(all.end(), u_b->modes.begin(), u_b->modes.end());
  FockOperator rho = [&] {
    if (rho_path.empty()) {
      // Maximally mixed state on the union modes.
      FockOperator mixed = FockOperator::identity(all);
      mixed.entries /= static_cast<double>(mixed.dim());
      return mixed;
    }
    FockOperator loaded = as_density(load_artifact(rho_path));
    if (loaded.dim() != (std::size_t{1} << all.size()))
      throw CliFailure{kExitParseError,
                       "--rho has the wrong number of modes"};
    return FockOperator(all, loaded.entries);
  }();

  const ProtocolResult result = run_protocol(rho, u_a, u_b);
  std::printf("signal_strength = %.6f\n", signal_strength(result.qubit));
  const double residual =
      (result.fermionic.entries - rho.entries).cwiseAbs().maxCoeff();
  std::printf("global_state_change = %.2e\n", residual);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fermionic-mode quantum information toolkit"};
  app.require_subcommand(1);

  std::string file, out_path, channel_path, state_path;
  std::string ua_path, ub_path, rho_path, channel_action;
  std::vector<int> modes_list, partition, traced;
  int trials = 50;
  std::uint64_t seed = 12345;

  auto* validate = app.add_subcommand("validate", "check an artifact file");
  validate->add_option("file", file)->required();

  auto* ptrace_cmd =
      app.add_subcommand("ptrace", "fermionic partial trace of a density");
  ptrace_cmd->add_option("file", file)->required();
  ptrace_cmd->add_option("--modes", modes_list, "mode labels to trace out")
      ->delimiter(',');
  ptrace_cmd->add_option("-o,--output", out_path);

  auto* schmidt_cmd =
      app.add_subcommand("schmidt", "Schmidt decomposition of a pure state");
  schmidt_cmd->add_option("file", file)->required();
  schmidt_cmd->add_option("--partition", partition, "mode labels of side A")
      ->delimiter(',')
      ->required();

  auto* purify_cmd = app.add_subcommand("purify", "purify a density operator");
  purify_cmd->add_option("file", file)->required();
  purify_cmd->add_option("-o,--output", out_path);

  auto* entropy_cmd =
      app.add_subcommand("entropy", "Von Neumann entropy in bits");
  entropy_cmd->add_option("file", file)->required();

  auto* channel_cmd = app.add_subcommand("channel", "channel operations");
  channel_cmd->add_option("action", channel_action, "apply|choi|dilate|verify")
      ->required();
  channel_cmd->add_option("--channel", channel_path)->required();
  channel_cmd->add_option("--state", state_path);
  channel_cmd->add_option("--trials", trials);
  channel_cmd->add_option("--seed", seed);
  channel_cmd->add_option("-o,--output", out_path);

  auto* jw_cmd = app.add_subcommand(
      "jw-check", "compare fermionic and qubit-side partial traces");
  jw_cmd->add_option("file", file)->required();
  jw_cmd->add_option("--trace", traced, "mode labels to trace out")
      ->delimiter(',')
      ->required();

  auto* nosignal_cmd =
      app.add_subcommand("nosignal", "run the four-step signaling protocol");
  nosignal_cmd->add_option("--ua", ua_path)->required();
  nosignal_cmd->add_option("--ub", ub_path, "operator file or 'none'");
  nosignal_cmd->add_option("--rho", rho_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(file);
    if (ptrace_cmd->parsed()) return run_ptrace(file, modes_list, out_path);
    if (schmidt_cmd->parsed()) return run_schmidt(file, partition);
    if (purify_cmd->parsed()) return run_purify(file, out_path);
    if (entropy_cmd->parsed()) return run_entropy(file);
    if (channel_cmd->parsed())
      return run_channel(channel_action, channel_path, state_path, trials,
                         seed, out_path);
    if (jw_cmd->parsed()) return run_jw_check(file, traced);
    if (nosignal_cmd->parsed())
      return run_nosignal(ua_path, ub_path, rho_path);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const SsrError& e) {
    std::cerr << "SSR violation: " << e.what() << "\n";
    return kExitSsrViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
