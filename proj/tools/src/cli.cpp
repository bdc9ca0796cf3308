#include "kspave/cli.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "kspave/kspave.hpp"

namespace kspave::cli {
namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kEchoTol = 1e-12;

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

std::string need_input(const RunConfig& c) {
  if (c.inputs.empty()) throw UsageError("missing required option --input");
  return io::read_file(c.inputs.front());
}

double need_epsilon(const RunConfig& c) {
  const double eps = need(c.epsilon, "--epsilon");
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("--epsilon must lie in (0,1)");
  return eps;
}

SearchBudget budget_of(const RunConfig& c) {
  SearchBudget b;
  b.seed = c.seed;
  b.parallelism = c.parallelism;
  if (c.budget_restarts) b.restarts = *c.budget_restarts;
  b.validate();
  return b;
}

Frame frame_input(const std::string& text) {
  const std::string schema = io::detect_schema(text);
  if (schema == "frame") return io::parse_frame(text);
  if (schema == "matrix") return Frame(io::parse_matrix(text));
  throw Error(ErrorCode::Parse, "expected a frame or matrix document");
}

Matrix matrix_input(const std::string& text) {
  if (io::detect_schema(text) != "matrix") throw Error(ErrorCode::Parse, "expected a matrix document");
  return io::parse_matrix(text);
}

class Emitter {
 public:
  Emitter(const RunConfig& c, std::ostream& out) : config_(c), out_(out) {
    if (c.emit != "json" && c.emit != "csv") throw UsageError("--emit must be json or csv");
  }

  void text(const std::string& body) {
    if (config_.output) {
      io::write_file(*config_.output, body);
    } else {
      out_ << body;
      if (body.empty() || body.back() != '\n') out_ << '\n';
    }
  }

  void certificate(const PartitionCertificate& c) {
    text(config_.emit == "csv" ? io::certificate_csv(c) : io::dump_certificate(c));
  }

  // Flat key/value reports; CSV gives one "key,value" row per entry.
  void report(const ordered_json& j) {
    if (config_.emit == "json") {
      text(j.dump(2));
      return;
    }
    std::ostringstream csv;
    csv << "key,value\n";
    for (const auto& [k, v] : j.items()) csv << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    text(csv.str());
  }

 private:
  const RunConfig& config_;
  std::ostream& out_;
};

int certificate_exit(const PartitionCertificate& c, std::ostream& err) {
  if (c.valid()) return kValid;
  err << "no valid certificate: best max block norm " << c.max_block_norm() << " exceeds bound " << c.bound << '\n';
  return kInvalid;
}

int cmd_gen(const RunConfig& c, Emitter& emit) {
  const Field field = c.complex_field ? Field::complex : Field::real;
  const std::size_t d = need(c.dim, "--dim");
  const std::string& k = c.kind;
  if (k == "hermitian") {
    emit.text(io::dump_matrix(gen::hermitian(d, c.seed, field)));
  } else if (k == "zero-diag") {
    emit.text(io::dump_matrix(gen::hermitian(d, c.seed, field, true)));
  } else if (k == "contraction") {
    emit.text(io::dump_matrix(gen::selfadjoint_contraction(d, c.seed, 1.0, true, field)));
  } else if (k == "parseval") {
    emit.text(io::dump_frame(gen::parseval(d, need(c.m, "--m"), c.seed, field)));
  } else if (k == "gaussian") {
    emit.text(io::dump_frame(gen::gaussian_frame(d, need(c.m, "--m"), c.seed, field)));
  } else if (k == "bessel") {
    emit.text(io::dump_frame(gen::unit_bessel(d, need(c.m, "--m"), c.seed, field)));
  } else if (k == "eta-tight" || k == "repeated-basis") {
    const double eta = need(c.eta, "--eta");
    if (eta < 1.0 || std::floor(eta) != eta) throw UsageError("--eta must be a positive integer here");
    const auto e = static_cast<std::size_t>(eta);
    emit.text(io::dump_frame(k == "eta-tight" ? gen::eta_tight(d, e, c.seed) : gen::repeated_basis(d, e)));
  } else if (k == "projection") {
    emit.text(io::dump_matrix(gen::projection(d, need(c.m, "--m"), c.seed, field)));
  } else if (k == "subspace") {
    emit.text(io::dump_subspace(gen::large_subspace(d, need(c.m, "--m"), c.a.value_or(0.0), c.seed)));
  } else {
    throw UsageError("unknown --kind \"" + k +
                     "\" (hermitian, zero-diag, contraction, parseval, gaussian, bessel, eta-tight, "
                     "repeated-basis, projection, subspace)");
  }
  return kValid;
}

int cmd_pave(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const Matrix t = matrix_input(need_input(c));
  const double eps = need_epsilon(c);
  const PartitionCertificate cert =
      c.r ? heuristic_paving(t, *c.r, eps, budget_of(c)) : pave_min_r(t, eps, budget_of(c));
  emit.certificate(cert);
  return certificate_exit(cert, err);
}

int cmd_pave_complex(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const Matrix t = matrix_input(need_input(c));
  const PartitionCertificate cert = pave_complex(t, need_epsilon(c), budget_of(c));
  emit.certificate(cert);
  return certificate_exit(cert, err);
}

int cmd_lift(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const Matrix t = matrix_input(need_input(c));
  if (c.epsilon) {
    const PartitionCertificate cert = pave_selfadjoint_via_projection(t, need_epsilon(c), budget_of(c));
    emit.certificate(cert);
    return certificate_exit(cert, err);
  }
  if (c.sign != "plus" && c.sign != "minus") throw UsageError("--sign must be plus or minus");
  emit.text(io::dump_matrix(cekp_lift(t, c.sign == "plus" ? LiftSign::plus : LiftSign::minus)));
  return kValid;
}

int cmd_weaver(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const Frame f = frame_input(need_input(c));
  const PartitionCertificate cert = weaver_partition(f, c.eta.value_or(18.0), c.theta.value_or(2.0), budget_of(c));
  emit.certificate(cert);
  return certificate_exit(cert, err);
}

int cmd_mss(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const Frame f = frame_input(need_input(c));
  const PartitionCertificate cert = mss_partition(f, c.r.value_or(2), budget_of(c));
  emit.certificate(cert);
  return certificate_exit(cert, err);
}

int cmd_feichtinger(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const Frame f = frame_input(need_input(c));
  const PartitionCertificate cert = feichtinger_partition(f, need_epsilon(c), budget_of(c));
  emit.certificate(cert);
  return certificate_exit(cert, err);
}

int cmd_bt(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const Frame f = frame_input(need_input(c));
  if (c.a) {
    const SubsetSearchResult s = bt_subset_search(f.synthesis(), *c.a);
    ordered_json j;
    j["subset"] = s.subset;
    j["size"] = s.subset.size();
    j["achieved_lower_bound"] = s.achieved_lower_bound;
    j["ratio"] = s.ratio;
    emit.report(j);
    return kValid;
  }
  const PartitionCertificate cert = bt_partition(f.synthesis(), need_epsilon(c), budget_of(c));
  emit.certificate(cert);
  return certificate_exit(cert, err);
}

int cmd_renorm(const RunConfig& c, Emitter& emit) {
  const std::size_t n = need(c.n, "--n");
  ordered_json j;
  j["n"] = n;
  j["value"] = renorm_value(n);
  j["limit"] = renorm_limit();
  emit.report(j);
  return kValid;
}

int cmd_sundberg(const RunConfig& c, Emitter& emit) {
  const Frame f = frame_input(need_input(c));
  ordered_json j;
  j["sets"] = sundberg_split(f, need_epsilon(c), budget_of(c));
  emit.text(j.dump(2));
  return kValid;
}

int cmd_fourier_gram(const RunConfig& c, Emitter& emit) {
  const IntervalSet e = io::parse_interval_set(need_input(c));
  emit.text(io::dump_matrix(fourier_gram(e, FreqWindow(need(c.freq_window, "--freq-window")))));
  return kValid;
}

int cmd_fourier_pave(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const IntervalSet e = io::parse_interval_set(need_input(c));
  const FreqWindow w(need(c.freq_window, "--freq-window"));
  const double eps = need_epsilon(c);
  const PartitionCertificate cert =
      c.r ? ap_partition_check(e, *c.r, eps, w) : general_set_partition(e, eps, w, budget_of(c));
  emit.certificate(cert);
  return certificate_exit(cert, err);
}

int cmd_syndetic(const RunConfig& c, Emitter& emit, std::ostream& err) {
  std::vector<std::int64_t> values = c.values;
  if (!c.inputs.empty()) {
    const auto j = nlohmann::json::parse(need_input(c), nullptr, false);
    if (j.is_discarded() || !j.contains("set") || !j.at("set").is_array()) {
      throw Error(ErrorCode::Parse, "expected {\"set\":[...]}");
    }
    for (const auto& v : j.at("set")) {
      if (!v.is_number_integer()) throw Error(ErrorCode::Parse, "set entries must be integers");
      values.push_back(v.get<std::int64_t>());
    }
  }
  const SyndeticReport rep = syndetic_analyze(values, FreqWindow(need(c.freq_window, "--freq-window")), c.r);
  ordered_json j;
  j["gap_length"] = rep.gap_length;
  j["witness_shifts"] = rep.witness_shifts;
  j["window"] = rep.window;
  if (rep.within_r) j["within_r"] = *rep.within_r;
  emit.report(j);
  if (rep.within_r && !*rep.within_r) {
    err << "gap length " << rep.gap_length << " exceeds r = " << *c.r << '\n';
    return kInvalid;
  }
  return kValid;
}

int cmd_large(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const SubspaceModel h = io::parse_subspace(need_input(c));
  const LargeReport rep = is_A_large(h, need(c.a, "--A"));
  ordered_json j;
  j["large"] = rep.large;
  j["min_norm"] = rep.min_norm;
  emit.report(j);
  if (!rep.large) {
    err << "min ||P e_i|| = " << rep.min_norm << " is below A\n";
    return kInvalid;
  }
  return kValid;
}

int cmd_decompose(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const SubspaceModel h = io::parse_subspace(need_input(c));
  const Decomposition d = decompose(h, need_epsilon(c), budget_of(c));
  emit.certificate(d.certificate);
  if (!verify_decomposition(h, d.blocks)) {
    err << "a block of the partition is not surjective\n";
    return kInvalid;
  }
  return certificate_exit(d.certificate, err);
}

bool norms_agree(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kEchoTol * std::max(1.0, std::abs(b[i]))) return false;
  }
  return true;
}

int cmd_verify(const RunConfig& c, Emitter& emit, std::ostream& err) {
  const PartitionCertificate claim = io::parse_certificate(io::read_file(need(c.certificate, "--certificate")));
  const std::string subject = need_input(c);
  const std::string schema = io::detect_schema(subject);

  PartitionCertificate check;
  bool extra_ok = true;
  switch (claim.kind) {
    case CertificateKind::paving: {
      const Matrix t = matrix_input(subject);
      check = claim.bound_rule == BoundRule::relative
                  ? verify_paving(t, claim.partition, claim.epsilon, claim.tolerance)
                  : verify_paving_absolute(t, claim.partition, claim.bound, claim.epsilon, claim.tolerance);
      break;
    }
    case CertificateKind::outer_sum: {
      const Frame f = frame_input(subject);
      check = verify_outer_sum(f.synthesis(), claim.partition, claim.bound, claim.tolerance);
      check.epsilon = claim.epsilon;
      break;
    }
    case CertificateKind::riesz: {
      if (schema == "subspace") {
        const SubspaceModel h = io::parse_subspace(subject);
        check = verify_decomposition_certificate(h, claim.partition, claim.epsilon, claim.tolerance);
        extra_ok = verify_decomposition(h, claim.partition);
      } else {
        check = verify_riesz(frame_input(subject), claim.partition, claim.epsilon, claim.tolerance);
      }
      break;
    }
    case CertificateKind::band: {
      const IntervalSet e = io::parse_interval_set(subject);
      check = verify_band(e, FreqWindow(need(claim.freq_window, "freq_window in certificate")), claim.partition,
                          claim.epsilon, claim.tolerance);
      break;
    }
  }
  check.seed = claim.seed;
  check.scale = claim.scale;
  check.reported_r = claim.reported_r;

  int code = kValid;
  if (check.subject_hash != claim.subject_hash) {
    err << "subject hash mismatch: certificate " << claim.subject_hash << ", input " << check.subject_hash << '\n';
    code = kInvalid;
  }
  if (check.partition != canonicalize(claim.partition)) {
    err << "partition is not in canonical form\n";
    code = kInvalid;
  }
  if (!norms_agree(check.block_norms, claim.block_norms)) {
    err << "recomputed block norms differ from the certificate\n";
    code = kInvalid;
  }
  if (!extra_ok) {
    err << "a block of the partition is not surjective\n";
    code = kInvalid;
  }
  if (!check.valid()) {
    err << "recomputed verdict is invalid: max block norm " << check.max_block_norm() << " vs bound " << check.bound
        << '\n';
    code = kInvalid;
  }
  if (claim.verdict != check.verdict) {
    err << "certificate verdict " << to_string(claim.verdict) << " disagrees with recomputed "
        << to_string(check.verdict) << '\n';
    code = kInvalid;
  }
  emit.certificate(check);
  return code;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Emitter emit(c, out);
  const std::string& s = c.subcommand;
  if (s == "gen") return cmd_gen(c, emit);
  if (s == "pave") return cmd_pave(c, emit, err);
  if (s == "pave-complex") return cmd_pave_complex(c, emit, err);
  if (s == "lift") return cmd_lift(c, emit, err);
  if (s == "weaver") return cmd_weaver(c, emit, err);
  if (s == "mss") return cmd_mss(c, emit, err);
  if (s == "feichtinger") return cmd_feichtinger(c, emit, err);
  if (s == "bt") return cmd_bt(c, emit, err);
  if (s == "renorm") return cmd_renorm(c, emit);
  if (s == "sundberg") return cmd_sundberg(c, emit);
  if (s == "fourier-gram") return cmd_fourier_gram(c, emit);
  if (s == "fourier-pave") return cmd_fourier_pave(c, emit, err);
  if (s == "syndetic") return cmd_syndetic(c, emit, err);
  if (s == "large") return cmd_large(c, emit, err);
  if (s == "decompose") return cmd_decompose(c, emit, err);
  if (s == "verify") return cmd_verify(c, emit, err);
  throw UsageError("unknown subcommand \"" + s + "\"");
}

const std::vector<std::pair<const char*, const char*>> kSubcommands = {
    {"gen", "Generate a seeded random instance"},
    {"pave", "Find an (r,eps)-paving of a matrix"},
    {"pave-complex", "Pave a zero-diagonal complex matrix through its real and imaginary parts"},
    {"lift", "Projection lift of a self-adjoint contraction, or pave through it with --epsilon"},
    {"weaver", "Two-block partition of an eta-tight unit-norm frame"},
    {"mss", "r-block partition of a resolution of the identity"},
    {"feichtinger", "Partition a unit-norm Bessel system into eps-Riesz classes"},
    {"bt", "Riesz partition of matrix columns, or the largest well-conditioned subset with --A"},
    {"renorm", "Renormed length of the flat sum in the counterexample space"},
    {"sundberg", "Split a unit-norm Bessel system into non-spanning sets"},
    {"fourier-gram", "Gram matrix of the Fourier frame on E over a window"},
    {"fourier-pave", "Residue-class check (--r) or band partition of the Fourier frame"},
    {"syndetic", "Gap length of an integer set within a window"},
    {"large", "Check whether a subspace is A-large"},
    {"decompose", "Coordinate decomposition of an A-large subspace"},
    {"verify", "Re-check a certificate against its subject"},
};

}  // namespace

ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paving, frame and Riesz-partition certificates", "kspave"};
  app.require_subcommand(1);
  RunConfig c;

  app.add_option("--input", c.inputs, "Input document(s)");
  app.add_option("--certificate", c.certificate, "Certificate file (verify)");
  app.add_option("--epsilon", c.epsilon, "Epsilon");
  app.add_option("--r", c.r, "Number of blocks");
  app.add_option("--eta", c.eta, "Tightness eta");
  app.add_option("--theta", c.theta, "Weaver gap theta");
  app.add_option("--freq-window", c.freq_window, "Frequency window N (indices -N..N)");
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--parallelism", c.parallelism, "Worker threads")->capture_default_str();
  app.add_option("--budget-restarts", c.budget_restarts, "Local-search restarts");
  app.add_option("--emit", c.emit, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--output", c.output, "Output file (default stdout)");
  app.add_option("--kind", c.kind, "Instance kind (gen)");
  app.add_option("--dim", c.dim, "Dimension (gen)");
  app.add_option("--m", c.m, "Vector count or rank (gen)");
  app.add_flag("--complex", c.complex_field, "Complex entries (gen)");
  app.add_option("--sign", c.sign, "Lift sign: plus or minus")->capture_default_str();
  app.add_option("--A", c.a, "Largeness or lower-bound threshold");
  app.add_option("--n", c.n, "Length (renorm)");
  app.add_option("--values", c.values, "Integer set (syndetic)")->delimiter(',');

  for (const auto& [name, help] : kSubcommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? static_cast<int>(kValid) : static_cast<int>(kUsage)};
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  return {std::move(c), kValid};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::Parse || e.code() == ErrorCode::InvalidArgument ? kUsage : kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
}

int main(int argc, const char* const* argv) {
  const ParseResult parsed = parse_args(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, std::cout, std::cerr);
}

}  // namespace kspave::cli
