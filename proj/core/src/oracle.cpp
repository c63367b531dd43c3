#include "oddweird/oracle.hpp"

#include <string>
#include <vector>

#include "oddweird/errors.hpp"

namespace oddweird {

namespace {

// Reachable-sums table over [0, target]: bit s set iff some subset sums to s.
class SumTable {
 public:
  explicit SumTable(std::uint64_t target)
      : target_(target), words_(target / 64 + 1, 0) {
    words_[0] = 1;
  }

  // table |= table << x, restricted to [0, target].
  void add(std::uint64_t x) {
    if (x > target_) return;
    const std::size_t shift_words = x / 64;
    const unsigned shift_bits = x % 64;
    for (std::size_t w = words_.size(); w-- > shift_words;) {
      const std::size_t src = w - shift_words;
      std::uint64_t v = words_[src] << shift_bits;
      if (shift_bits != 0 && src > 0) v |= words_[src - 1] >> (64 - shift_bits);
      words_[w] |= v;
    }
  }

  bool reached() const { return (words_[target_ / 64] >> (target_ % 64)) & 1; }

 private:
  std::uint64_t target_;
  std::vector<std::uint64_t> words_;
};

}  // namespace

bool oracle_subset_sum(const std::vector<std::uint64_t>& items, std::uint64_t target) {
  SumTable table(target);
  for (auto x : items) {
    if (table.reached()) break;
    table.add(x);
  }
  return table.reached();
}

Classification oracle_classify(std::uint64_t n) {
  if (n < 1 || n > kOracleMax) {
    throw OutOfRange("oracle_classify supports 1 <= n <= " + std::to_string(kOracleMax) +
                     ", got " + std::to_string(n));
  }
  std::vector<std::uint64_t> proper;
  std::uint64_t sigma = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    const std::uint64_t e = n / d;
    sigma += d;
    if (d != n) proper.push_back(d);
    if (e != d) {
      sigma += e;
      if (e != n) proper.push_back(e);
    }
  }
  if (sigma < 2 * n) return Classification::kDeficient;
  if (sigma == 2 * n) return Classification::kPerfect;
  // A proper-divisor subset sums to n iff its complement sums to sigma - 2n.
  const std::uint64_t a = sigma - 2 * n;
  return oracle_subset_sum(proper, a) ? Classification::kSemiperfect : Classification::kWeird;
}

}  // namespace oddweird
