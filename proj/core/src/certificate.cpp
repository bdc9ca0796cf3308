#include "kspave/certificate.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "kspave/error.hpp"

namespace kspave {

double PartitionCertificate::max_block_norm() const {
  if (block_norms.empty()) return 0.0;
  return *std::max_element(block_norms.begin(), block_norms.end());
}

Partition canonicalize(Partition p) {
  for (auto& block : p) std::sort(block.begin(), block.end());
  std::erase_if(p, [](const IndexSet& b) { return b.empty(); });
  std::sort(p.begin(), p.end(), [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });
  return p;
}

void validate_partition(const Partition& p, std::size_t n) {
  std::vector<char> seen(n, 0);
  std::size_t count = 0;
  for (const auto& block : p) {
    for (std::size_t i : block) {
      if (i >= n) throw Error(ErrorCode::BadPartition, "index " + std::to_string(i) + " outside [0," + std::to_string(n) + ")");
      if (seen[i]) throw Error(ErrorCode::BadPartition, "index " + std::to_string(i) + " appears twice");
      seen[i] = 1;
      ++count;
    }
  }
  if (count != n) throw Error(ErrorCode::BadPartition, "blocks cover " + std::to_string(count) + " of " + std::to_string(n) + " indices");
}

bool canonical_less(const Partition& a, const Partition& b) { return a < b; }

Verdict judge(const std::vector<double>& norms, double bound, double tol) {
  const bool ok = std::all_of(norms.begin(), norms.end(), [&](double v) { return v <= bound + tol; });
  return ok ? Verdict::valid : Verdict::invalid;
}

std::string subject_digest(std::string_view tag, const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  feed(tag.data(), tag.size());
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  feed(dims, sizeof dims);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      // +0.0 and -0.0 hash alike.
      const double parts[2] = {m(i, j).real() + 0.0, m(i, j).imag() + 0.0};
      feed(parts, sizeof parts);
    }
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::paving: return "paving";
    case CertificateKind::outer_sum: return "outer_sum";
    case CertificateKind::riesz: return "riesz";
    case CertificateKind::band: return "band";
  }
  return "paving";
}

std::string_view to_string(Verdict v) { return v == Verdict::valid ? "valid" : "invalid"; }

std::string_view to_string(BoundRule rule) { return rule == BoundRule::relative ? "relative" : "absolute"; }

}  // namespace kspave
