#include "permstat/partition.hpp"

#include <numeric>
#include <stdexcept>

namespace permstat {

int Partition::n() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

std::vector<std::pair<int, int>> Partition::multiplicities() const {
  std::vector<std::pair<int, int>> mult;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    mult.emplace_back(parts[i], static_cast<int>(j - i));
    i = j;
  }
  return mult;
}

PartitionEnumerator::PartitionEnumerator(int n)
    : n_(n), first_(true), done_(false), m_(0), h_(0) {
  if (n < 0 || n > kPartitionCap)
    throw std::invalid_argument(
        "PartitionEnumerator: n must be in [0, " +
        std::to_string(kPartitionCap) + "] (enumeration cap)");
  if (n > 0) {
    x_.assign(static_cast<std::size_t>(n) + 1, 1);
    x_[1] = n;
    m_ = 1;
    h_ = 1;
  }
}

// Zoghbi-Stojmenovic ZS1: successive partitions in reverse-lex order, parts
// stored descending in x_[1..m_], h_ = index of the last part > 1.
bool PartitionEnumerator::next(Partition& out) {
  if (done_) return false;
  if (n_ == 0) {
    out.parts.clear();
    done_ = true;
    return true;
  }
  if (first_) {
    first_ = false;
  } else {
    if (x_[1] == 1) {  // reached (1^n)
      done_ = true;
      return false;
    }
    if (x_[static_cast<std::size_t>(h_)] == 2) {
      ++m_;
      x_[static_cast<std::size_t>(h_)] = 1;
      --h_;
    } else {
      const int r = x_[static_cast<std::size_t>(h_)] - 1;
      int t = m_ - h_ + 1;
      x_[static_cast<std::size_t>(h_)] = r;
      while (t >= r) {
        ++h_;
        x_[static_cast<std::size_t>(h_)] = r;
        t -= r;
      }
      if (t == 0) {
        m_ = h_;
      } else {
        m_ = h_ + 1;
        if (t > 1) {
          ++h_;
          x_[static_cast<std::size_t>(h_)] = t;
        }
      }
    }
  }
  out.parts.assign(x_.begin() + 1, x_.begin() + 1 + m_);
  return true;
}

void for_each_partition(int n, const std::function<void(const Partition&)>& fn) {
  PartitionEnumerator en(n);
  Partition p;
  while (en.next(p)) fn(p);
}

long partition_count(int n) {
  long count = 0;
  for_each_partition(n, [&count](const Partition&) { ++count; });
  return count;
}

double z_of(const Partition& lambda) {
  double z = 1.0;
  for (const auto& [k, ck] : lambda.multiplicities()) {
    for (int i = 0; i < ck; ++i) z *= static_cast<double>(k);
    for (int i = 2; i <= ck; ++i) z *= static_cast<double>(i);
  }
  return z;
}

double oracle_h(const ThetaSequence& theta, int n) {
  double h = 0.0;
  for_each_partition(n, [&](const Partition& la) {
    double w = 1.0;
    for (int part : la.parts) w *= theta.theta(part);
    h += w / z_of(la);
  });
  return h;
}

Complex expect_class_function(const ThetaSequence& theta, int n,
                              const std::function<Complex(const Partition&)>& u) {
  Complex num{0.0, 0.0};
  double h = 0.0;
  for_each_partition(n, [&](const Partition& la) {
    double w = 1.0;
    for (int part : la.parts) w *= theta.theta(part);
    w /= z_of(la);
    h += w;
    num += w * u(la);
  });
  return num / h;
}

}  // namespace permstat
