#include "kspave/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kspave/error.hpp"

namespace kspave::io {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(std::string(what) + " must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0) fail(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

Complex scalar(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object()) {
    const double re = j.contains("re") ? number(j.at("re"), "re") : 0.0;
    const double im = j.contains("im") ? number(j.at("im"), "im") : 0.0;
    return {re, im};
  }
  fail("entry must be a number or {\"re\":x,\"im\":y}");
}

json scalar_json(Complex z, bool real) {
  if (real) return z.real();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

// "p/q" or a plain decimal string.
double endpoint(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) fail("interval endpoint must be a number or \"p/q\" string");
  const auto s = j.get<std::string>();
  const auto slash = s.find('/');
  auto to_double = [&](std::string_view part) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) fail("bad interval endpoint \"" + s + "\"");
    return v;
  };
  if (slash == std::string::npos) return to_double(s);
  const double q = to_double(std::string_view(s).substr(slash + 1));
  if (q == 0.0) fail("zero denominator in \"" + s + "\"");
  return to_double(std::string_view(s).substr(0, slash)) / q;
}

// Columns of the result are the listed vectors; all must have length `dim`.
Matrix vector_list(const json& list, std::size_t dim, const char* what) {
  if (!list.is_array()) fail(std::string(what) + " must be an array of vectors");
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& v = list[i];
    if (!v.is_array() || v.size() != dim) {
      fail(std::string(what) + " entry " + std::to_string(i) + " must have length " + std::to_string(dim));
    }
    for (std::size_t k = 0; k < dim; ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = scalar(v[k]);
  }
  return m;
}

json vector_list_json(const Matrix& m) {
  const bool real = field_of(m) == Field::real;
  json list = json::array();
  for (Eigen::Index i = 0; i < m.cols(); ++i) {
    json v = json::array();
    for (Eigen::Index k = 0; k < m.rows(); ++k) v.push_back(scalar_json(m(k, i), real));
    list.push_back(std::move(v));
  }
  return list;
}

Partition partition_from(const json& j) {
  if (!j.is_array()) fail("partition must be an array of index arrays");
  Partition p;
  for (const json& block : j) {
    if (!block.is_array()) fail("partition block must be an array");
    IndexSet b;
    for (const json& idx : block) b.push_back(count(idx, "partition index"));
    p.push_back(std::move(b));
  }
  return p;
}

template <typename E>
E enum_from(const json& j, const char* what, std::initializer_list<E> options) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  const auto s = j.get<std::string>();
  for (E e : options) {
    if (to_string(e) == s) return e;
  }
  fail(std::string("unknown ") + what + " \"" + s + "\"");
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
  const json j = parse_json(text);
  const std::size_t rows = count(field(j, "rows"), "rows");
  const std::size_t cols = count(field(j, "cols"), "cols");
  auto read_part = [&](const json& part, const char* what) {
    if (!part.is_array() || part.size() != rows) fail(std::string(what) + " must have " + std::to_string(rows) + " rows");
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      if (!part[r].is_array() || part[r].size() != cols) {
        fail(std::string(what) + " row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
      }
      for (std::size_t c = 0; c < cols; ++c) {
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(part[r][c], what);
      }
    }
    return out;
  };
  Matrix m = read_part(field(j, "re"), "re").cast<Complex>();
  if (j.contains("im")) m += Complex(0.0, 1.0) * read_part(j.at("im"), "im").cast<Complex>();
  return m;
}

std::string dump_matrix(const Matrix& m) {
  ordered j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  auto part = [&](bool imag) {
    ordered rows = ordered::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      ordered row = ordered::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["re"] = part(false);
  if (field_of(m) == Field::complex) j["im"] = part(true);
  return j.dump();
}

Frame parse_frame(std::string_view text) {
  const json j = parse_json(text);
  const std::size_t dim = count(field(j, "dim"), "dim");
  if (dim == 0) fail("dim must be positive");
  const Matrix t = vector_list(field(j, "vectors"), dim, "vectors");
  if (t.cols() == 0) fail("frame has no vectors");
  return Frame(t);
}

std::string dump_frame(const Frame& f) {
  ordered j;
  j["dim"] = f.dim();
  j["vectors"] = vector_list_json(f.synthesis());
  return j.dump();
}

IntervalSet parse_interval_set(std::string_view text) {
  const json j = parse_json(text);
  const json& list = field(j, "intervals");
  if (!list.is_array()) fail("intervals must be an array");
  std::vector<IntervalSet::Interval> ivs;
  for (const json& iv : list) {
    if (!iv.is_array() || iv.size() != 2) fail("each interval must be [a,b]");
    ivs.emplace_back(endpoint(iv[0]), endpoint(iv[1]));
  }
  return IntervalSet(std::move(ivs));
}

std::string dump_interval_set(const IntervalSet& e) {
  ordered j;
  j["intervals"] = ordered::array();
  for (const auto& [a, b] : e.intervals()) j["intervals"].push_back({a, b});
  return j.dump();
}

SubspaceModel parse_subspace(std::string_view text) {
  const json j = parse_json(text);
  const std::size_t n = count(field(j, "ambient_dim"), "ambient_dim");
  if (n == 0) fail("ambient_dim must be positive");
  return SubspaceModel(n, vector_list(field(j, "basis"), n, "basis"));
}

std::string dump_subspace(const SubspaceModel& h) {
  ordered j;
  j["ambient_dim"] = h.ambient_dim();
  j["basis"] = vector_list_json(h.basis());
  return j.dump();
}

PartitionCertificate parse_certificate(std::string_view text) {
  const json j = parse_json(text);
  PartitionCertificate c;
  const json& hash = field(j, "subject_hash");
  if (!hash.is_string()) fail("subject_hash must be a string");
  c.subject_hash = hash.get<std::string>();
  if (j.contains("kind")) {
    c.kind = enum_from(j.at("kind"), "kind",
                       {CertificateKind::paving, CertificateKind::outer_sum, CertificateKind::riesz,
                        CertificateKind::band});
  }
  if (j.contains("bound_rule")) {
    c.bound_rule = enum_from(j.at("bound_rule"), "bound_rule", {BoundRule::relative, BoundRule::absolute});
  }
  c.partition = partition_from(field(j, "partition"));
  c.epsilon = number(field(j, "epsilon"), "epsilon");
  c.bound = number(field(j, "bound"), "bound");
  const json& norms = field(j, "block_norms");
  if (!norms.is_array()) fail("block_norms must be an array");
  for (const json& v : norms) c.block_norms.push_back(number(v, "block norm"));
  c.tolerance = number(field(j, "tolerance"), "tolerance");
  c.verdict = enum_from(field(j, "verdict"), "verdict", {Verdict::valid, Verdict::invalid});
  c.scale = number(field(j, "scale"), "scale");
  c.seed = static_cast<std::uint64_t>(count(field(j, "seed"), "seed"));
  if (j.contains("per_class_bounds")) {
    for (const json& b : j.at("per_class_bounds")) {
      if (!b.is_array() || b.size() != 2) fail("per_class_bounds entries must be [lo,hi]");
      c.class_bounds.push_back({number(b[0], "class bound"), number(b[1], "class bound")});
    }
  }
  if (j.contains("freq_window")) c.freq_window = count(j.at("freq_window"), "freq_window");
  if (j.contains("reported_r")) c.reported_r = number(j.at("reported_r"), "reported_r");
  return c;
}

std::string dump_certificate(const PartitionCertificate& c) {
  ordered j;
  j["subject_hash"] = c.subject_hash;
  j["kind"] = std::string(to_string(c.kind));
  j["bound_rule"] = std::string(to_string(c.bound_rule));
  j["partition"] = c.partition;
  j["epsilon"] = c.epsilon;
  j["bound"] = c.bound;
  j["block_norms"] = c.block_norms;
  j["tolerance"] = c.tolerance;
  j["verdict"] = std::string(to_string(c.verdict));
  j["scale"] = c.scale;
  j["seed"] = c.seed;
  if (!c.class_bounds.empty()) {
    ordered bounds = ordered::array();
    for (const auto& b : c.class_bounds) bounds.push_back({b.lower, b.upper});
    j["per_class_bounds"] = std::move(bounds);
  }
  if (c.freq_window) j["freq_window"] = *c.freq_window;
  if (c.reported_r) j["reported_r"] = *c.reported_r;
  return j.dump(2);
}

std::string certificate_csv(const PartitionCertificate& c) {
  std::ostringstream out;
  out.precision(17);
  const bool bounds = c.class_bounds.size() == c.partition.size() && !c.class_bounds.empty();
  out << "block,size,norm,bound";
  if (bounds) out << ",lower,upper";
  out << '\n';
  for (std::size_t b = 0; b < c.partition.size(); ++b) {
    out << b << ',' << c.partition[b].size() << ',' << (b < c.block_norms.size() ? c.block_norms[b] : 0.0) << ','
        << c.bound;
    if (bounds) out << ',' << c.class_bounds[b].lower << ',' << c.class_bounds[b].upper;
    out << '\n';
  }
  return out.str();
}

std::string detect_schema(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::exception&) {
    return "";
  }
  if (!j.is_object()) return "";
  if (j.contains("subject_hash")) return "certificate";
  if (j.contains("ambient_dim")) return "subspace";
  if (j.contains("intervals")) return "intervals";
  if (j.contains("vectors")) return "frame";
  if (j.contains("rows") && j.contains("re")) return "matrix";
  return "";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace kspave::io
