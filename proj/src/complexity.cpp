#include "arlab/complexity.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "arlab/errors.hpp"

namespace arlab {

namespace {

// Rolling double fingerprint modulo 2^61 - 1 with fixed bases. Candidates
// sharing a fingerprint are always compared symbol by symbol, so hashing only
// decides how often memcmp runs, never what the answer is.
constexpr std::uint64_t kMersenne = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kBase1 = 0x2545F4914F6CDD1Dull % kMersenne;
constexpr std::uint64_t kBase2 = 0x9E3779B97F4A7C15ull % kMersenne;

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
  __uint128_t c = static_cast<__uint128_t>(a) * b;
  std::uint64_t s = static_cast<std::uint64_t>(c & kMersenne) +
                    static_cast<std::uint64_t>(c >> 61);
  if (s >= kMersenne) s -= kMersenne;
  return s;
}

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s >= kMersenne) s -= kMersenne;
  return s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kMersenne - b;
}

struct FactorScan {
  static constexpr std::uint32_t kNone = UINT32_MAX;

  std::span<const Letter> buf;
  std::size_t n = 0;
  std::size_t positions = 0;

  struct ClassInfo {
    std::vector<std::uint32_t> occ;
    std::uint64_t lmask = 0;
    std::uint64_t rmask = 0;
  };
  std::vector<ClassInfo> classes;
  std::vector<std::uint32_t> cid;
  std::vector<std::uint32_t> prev;
  std::vector<std::uint32_t> left;
  std::uint64_t nrc_value = 0;
  std::uint32_t first_repeat = kNone;

  FactorScan(std::span<const Letter> buffer, std::size_t length)
      : buf(buffer), n(length) {
    if (n == 0 || buf.size() < n) {
      throw std::invalid_argument("scan needs 1 <= n <= buffer length");
    }
    if (buf.size() >= static_cast<std::size_t>(UINT32_MAX)) {
      throw std::domain_error("buffer too large for 32-bit indexing");
    }
    positions = buf.size() - n + 1;
    cid.assign(positions, 0);
    prev.assign(positions, kNone);
    left.assign(positions, 0);

    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    buckets.reserve(positions);

    std::uint64_t h1 = 0, h2 = 0, pow1 = 1, pow2 = 1;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      pow1 = mod_mul(pow1, kBase1);
      pow2 = mod_mul(pow2, kBase2);
    }
    for (std::size_t t = 0; t < n; ++t) {
      h1 = mod_add(mod_mul(h1, kBase1), buf[t] + 1);
      h2 = mod_add(mod_mul(h2, kBase2), buf[t] + 1);
    }

    for (std::size_t j = 0;; ++j) {
      std::uint64_t key = h1 * 0x9E3779B97F4A7C15ull ^ h2;
      auto& bucket = buckets[key];
      std::uint32_t match = kNone;
      for (std::uint32_t c : bucket) {
        if (std::memcmp(buf.data() + classes[c].occ.front(), buf.data() + j,
                        n) == 0) {
          match = c;
          break;
        }
      }
      if (match == kNone) {
        match = static_cast<std::uint32_t>(classes.size());
        bucket.push_back(match);
        classes.emplace_back();
      } else {
        prev[j] = classes[match].occ.back();
        if (first_repeat == kNone) {
          first_repeat = static_cast<std::uint32_t>(j);
        }
      }
      ClassInfo& info = classes[match];
      info.occ.push_back(static_cast<std::uint32_t>(j));
      cid[j] = match;
      if (j > 0) info.lmask |= std::uint64_t{1} << buf[j - 1];
      if (j + n < buf.size()) info.rmask |= std::uint64_t{1} << buf[j + n];

      if (j + 1 >= positions) break;
      h1 = mod_add(mod_mul(mod_sub(h1, mod_mul(buf[j] + 1, pow1)), kBase1),
                   buf[j + n] + 1);
      h2 = mod_add(mod_mul(mod_sub(h2, mod_mul(buf[j] + 1, pow2)), kBase2),
                   buf[j + n] + 1);
    }

    std::uint32_t lo = 0;
    for (std::size_t j = 0; j < positions; ++j) {
      if (prev[j] != kNone && prev[j] + 1 > lo) lo = prev[j] + 1;
      left[j] = lo;
      nrc_value = std::max<std::uint64_t>(nrc_value, j - lo + 1);
    }
  }

  std::uint64_t factor_count() const { return classes.size(); }

  std::optional<std::uint64_t> inrc() const {
    if (first_repeat == kNone) return std::nullopt;
    return first_repeat;
  }

  std::optional<std::uint64_t> recurrence() const {
    std::uint64_t max_gap = 0;
    for (const ClassInfo& c : classes) {
      if (c.occ.size() < 2) return std::nullopt;
      for (std::size_t t = 0; t + 1 < c.occ.size(); ++t) {
        max_gap = std::max<std::uint64_t>(max_gap, c.occ[t + 1] - c.occ[t]);
      }
    }
    return n - 1 + max_gap;
  }

  bool occurs_within(std::uint32_t c, std::uint32_t lo_pos,
                     std::uint32_t hi_pos) const {
    const auto& occ = classes[c].occ;
    auto it = std::lower_bound(occ.begin(), occ.end(), lo_pos);
    return it != occ.end() && *it <= hi_pos;
  }

  // Smallest h >= 1 whose window of nrc_value pairwise distinct factors has a
  // right special factor just before it and a left special factor just after
  // it, both occurring inside the window; otherwise the smallest h with a
  // distinct window and endpoints_checked = false.
  WindowCertificate certificate(int d) const {
    const std::uint64_t m = nrc_value;
    WindowCertificate cert;
    cert.length = m;
    for (std::size_t h = 1; h + m < positions; ++h) {
      if (left[h + m - 1] > h) continue;
      std::uint32_t rs = cid[h - 1];
      std::uint32_t ls = cid[h + m];
      if (std::popcount(classes[rs].rmask) < 2) continue;
      if (std::popcount(classes[ls].lmask) < 2) continue;
      if (!occurs_within(rs, static_cast<std::uint32_t>(h),
                         static_cast<std::uint32_t>(h + m - 1)) ||
          !occurs_within(ls, static_cast<std::uint32_t>(h),
                         static_cast<std::uint32_t>(h + m - 1)))
        continue;
      cert.start = h;
      cert.endpoints_checked = true;
      cert.right_special_endpoint = FiniteWord(d, buf.subspan(h - 1, n));
      cert.left_special_endpoint = FiniteWord(d, buf.subspan(h + m, n));
      return cert;
    }
    for (std::size_t h = 0; h + m <= positions; ++h) {
      if (left[h + m - 1] <= h) {
        cert.start = h;
        break;
      }
    }
    return cert;
  }
};

}  // namespace

NrcOracleResult nrc_oracle(const ARWordPrefix& p, std::size_t n,
                           std::optional<std::uint64_t> recurrence_hint) {
  if (n == 0) throw std::domain_error("n must be at least 1");
  if (p.size() < n) {
    throw std::invalid_argument("prefix shorter than the factor length");
  }
  const int d = p.directive.alphabet_size();
  FactorScan full(p.view(), n);
  NrcOracleResult out;
  out.value = full.nrc_value;
  out.certificate = full.certificate(d);
  if (p.size() / 2 >= n) {
    FactorScan half(p.view().first(p.size() / 2), n);
    WindowCertificate half_cert = half.certificate(d);
    std::uint64_t coverage = out.certificate.start + out.value + n +
                             recurrence_hint.value_or(0);
    out.stable = half.nrc_value == full.nrc_value &&
                 half_cert.start == out.certificate.start &&
                 half_cert.endpoints_checked &&
                 out.certificate.endpoints_checked && p.size() >= coverage;
  }
  return out;
}

std::uint64_t inrc_oracle(const ARWordPrefix& p0, std::size_t n) {
  if (n == 0) throw std::domain_error("n must be at least 1");
  if (n + 1 > p0.budget) {
    throw BudgetError("budget cannot hold two occurrences of length " +
                      std::to_string(n));
  }
  ARWordPrefix p = grow(
      p0, std::min(std::max(p0.size(), 4 * (n + 1)), p0.budget));
  for (;;) {
    FactorScan scan(p.view(), n);
    if (auto v = scan.inrc()) return *v;
    if (p.size() >= p.budget) {
      throw InstabilityError(
          "no repeated factor of length " + std::to_string(n) +
          " within the budget");
    }
    p = grow(p, std::min(2 * p.size(), p.budget));
  }
}

RecurrenceResult recurrence_oracle(const ARWordPrefix& p0, std::size_t n) {
  if (n == 0) throw std::domain_error("n must be at least 1");
  if (n + 2 > p0.budget) {
    throw BudgetError("budget cannot witness a return of length " +
                      std::to_string(n));
  }
  ARWordPrefix p = grow(
      p0, std::min(std::max(p0.size(), 4 * (n + 1)), p0.budget));
  for (;;) {
    std::optional<std::uint64_t> full_value, half_value;
    if (p.size() >= n) full_value = FactorScan(p.view(), n).recurrence();
    if (p.size() / 2 >= n) {
      half_value = FactorScan(p.view().first(p.size() / 2), n).recurrence();
    }
    if (full_value && half_value && *full_value == *half_value) {
      return {*full_value, true};
    }
    if (p.size() >= p.budget) {
      if (full_value) return {*full_value, false};
      throw InstabilityError(
          "a factor of length " + std::to_string(n) +
          " occurs fewer than twice within the budget");
    }
    p = grow(p, std::min(2 * p.size(), p.budget));
  }
}

std::optional<std::size_t> s_last_occurrence(const DirectiveSequence& ds,
                                             std::size_t k, Letter a) {
  if (static_cast<int>(a) >= ds.alphabet_size()) {
    throw std::domain_error("letter outside the directive alphabet");
  }
  for (std::size_t l = k; l-- > 0;) {
    if (ds.letter(l) == a) return l;
  }
  return std::nullopt;
}

BispecialLengths::BispecialLengths(DirectiveSequence ds) : ds_(std::move(ds)) {
  ds_.require_valid_ar();
  psi_.emplace_back(ds_.alphabet_size(), Int(1));
  b_.emplace_back(0);
}

void BispecialLengths::extend(std::size_t k) {
  while (psi_.size() <= k) {
    const std::size_t j = psi_.size() - 1;
    const Letter i = ds_.letter(j);
    const std::vector<Int>& cur = psi_[j];
    std::vector<Int> next = cur;
    for (int b = 0; b < ds_.alphabet_size(); ++b) {
      if (b != int(i)) next[b] += cur[i];
    }
    b_.push_back(b_.back() + cur[i]);
    psi_.push_back(std::move(next));
  }
}

const Int& BispecialLengths::bispecial_length(std::size_t k) {
  extend(k);
  return b_[k];
}

const Int& BispecialLengths::psi_image_length(std::size_t k, Letter a) {
  extend(k);
  return psi_[k][a];
}

std::size_t BispecialLengths::bracket(const Int& n) {
  if (n < 1) throw std::domain_error("n must be at least 1");
  std::size_t k = 0;
  while (bispecial_length(k) < n) ++k;
  return k;
}

std::size_t bracket_bispecial(const DirectiveSequence& ds, const Int& n) {
  BispecialLengths cache(ds);
  return cache.bracket(n);
}

NrcFormulaResult nrc_formula(BispecialLengths& cache, std::uint64_t n) {
  if (n == 0) throw std::domain_error("n must be at least 1");
  const DirectiveSequence& ds = cache.directive();
  const int d = ds.alphabet_size();

  NrcFormulaResult res;
  res.k = cache.bracket(Int(n));
  const Letter ik = ds.letter(res.k);

  std::optional<std::size_t> best;
  std::vector<Letter> minimizers;
  for (int a = 0; a < d; ++a) {
    if (a == int(ik)) continue;
    std::optional<std::size_t> s = s_last_occurrence(ds, res.k, Letter(a));
    if (minimizers.empty() || s < best) {
      best = s;
      minimizers.assign(1, Letter(a));
    } else if (s == best) {
      minimizers.push_back(Letter(a));
    }
  }

  res.letter = minimizers.front();
  res.minimizer_count = minimizers.size();
  const Int& psi_ik = cache.psi_image_length(res.k, ik);
  Int pair = psi_ik + cache.psi_image_length(res.k, res.letter);
  for (Letter a : minimizers) {
    if (psi_ik + cache.psi_image_length(res.k, a) != pair) {
      throw std::logic_error(
          "tied last-occurrence minimizers with unequal image lengths");
    }
  }
  res.bispecial_length = cache.bispecial_length(res.k);
  res.adjacent_pair_length = pair;
  res.value_at_bispecial = pair - 1;
  res.value = pair - 1 - res.bispecial_length + Int(n);
  return res;
}

NrcFormulaResult nrc_formula(const DirectiveSequence& ds, std::uint64_t n) {
  BispecialLengths cache(ds);
  return nrc_formula(cache, n);
}

Int inrc_formula(BispecialLengths& cache, std::uint64_t n) {
  if (n == 0) throw std::domain_error("n must be at least 1");
  std::size_t k = cache.bracket(Int(n));
  return cache.psi_image_length(k, cache.directive().letter(k));
}

Int inrc_formula(const DirectiveSequence& ds, std::uint64_t n) {
  BispecialLengths cache(ds);
  return inrc_formula(cache, n);
}

namespace {

void compute_row(TableRow& row, std::span<const Letter> view, int d) {
  const std::size_t n = row.n;
  if (view.size() < n) return;  // oracle columns stay empty

  FactorScan full(view, n);
  row.c_oracle = full.factor_count();
  row.nrc_oracle_value = full.nrc_value;
  WindowCertificate cert = full.certificate(d);
  row.certificate = cert;
  row.inrc_oracle_value = full.inrc();
  row.inrc_found = row.inrc_oracle_value.has_value();
  std::optional<std::uint64_t> r_full = full.recurrence();
  row.r_oracle = r_full;

  row.c_stable = false;
  row.nrc_stable = false;
  row.r_stable = false;
  if (view.size() / 2 >= n) {
    FactorScan half(view.first(view.size() / 2), n);
    row.c_stable = half.factor_count() == *row.c_oracle;
    WindowCertificate half_cert = half.certificate(d);
    std::uint64_t coverage = cert.start + cert.length + n + r_full.value_or(0);
    row.nrc_stable = half.nrc_value == full.nrc_value &&
                     half_cert.start == cert.start &&
                     half_cert.endpoints_checked && cert.endpoints_checked &&
                     view.size() >= coverage;
    std::optional<std::uint64_t> r_half = half.recurrence();
    row.r_stable = r_full && r_half && *r_full == *r_half;
  }
  row.stable = row.c_stable && row.nrc_stable && row.inrc_found && row.r_stable;
}

}  // namespace

std::size_t ComplexityTable::stable_rows() const {
  std::size_t count = 0;
  for (const TableRow& r : rows) count += r.stable;
  return count;
}

ComplexityTable complexity_table(const DirectiveSequence& ds,
                                 std::uint64_t n_max,
                                 const TableOptions& options) {
  ds.require_valid_ar();
  if (n_max < 1) throw std::domain_error("n_max must be at least 1");

  ComplexityTable table{ds, n_max, {}, 0};
  table.rows.resize(n_max);

  BispecialLengths cache(ds);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    TableRow& row = table.rows[n - 1];
    row.n = n;
    NrcFormulaResult nf = nrc_formula(cache, n);
    row.k = nf.k;
    row.nrc_formula_value = nf.value;
    row.inrc_formula_value = inrc_formula(cache, n);
  }

  const int d = ds.alphabet_size();
  std::size_t length = options.initial_length
                           ? options.initial_length
                           : std::max<std::size_t>(256, 8 * (n_max + 1));
  length = std::min(std::max<std::size_t>(length, 2 * (n_max + 1) + 2),
                    options.budget);

  for (;;) {
    ARWordPrefix p = generate_prefix(ds, length, options.budget);
    table.buffer_length = p.size();
    std::span<const Letter> view = p.view();

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      if (!table.rows[i].stable) pending.push_back(i);
    }

    unsigned threads = options.threads
                           ? options.threads
                           : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, pending.size()));
    if (threads <= 1) {
      for (std::size_t i : pending) compute_row(table.rows[i], view, d);
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr error;
      std::mutex error_mutex;
      auto work = [&]() {
        try {
          for (;;) {
            std::size_t slot = next.fetch_add(1);
            if (slot >= pending.size()) return;
            compute_row(table.rows[pending[slot]], view, d);
          }
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      };
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
      if (error) std::rethrow_exception(error);
    }

    bool all_stable = std::all_of(table.rows.begin(), table.rows.end(),
                                  [](const TableRow& r) { return r.stable; });
    if (all_stable || length >= options.budget) break;
    length = std::min(2 * length, options.budget);
  }

  for (TableRow& row : table.rows) {
    if (row.nrc_oracle_value) {
      row.agree_nrc = Int(*row.nrc_oracle_value) == row.nrc_formula_value;
    }
    if (row.inrc_oracle_value) {
      row.agree_inrc = Int(*row.inrc_oracle_value) == row.inrc_formula_value;
    }
  }
  return table;
}

namespace {

std::string opt_u64(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string opt_bool(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "true" : "false";
}

}  // namespace

std::string csv_header() {
  return "n,C,nrC_formula,nrC_oracle,inrC_formula,inrC_oracle,R_oracle,k,"
         "agree_nrc,agree_inrc,stable";
}

std::string to_csv_row(const TableRow& row) {
  std::string out;
  out += std::to_string(row.n);
  out += ',';
  out += opt_u64(row.c_oracle);
  out += ',';
  out += row.nrc_formula_value.str();
  out += ',';
  out += opt_u64(row.nrc_oracle_value);
  out += ',';
  out += row.inrc_formula_value.str();
  out += ',';
  out += opt_u64(row.inrc_oracle_value);
  out += ',';
  out += opt_u64(row.r_oracle);
  out += ',';
  out += std::to_string(row.k);
  out += ',';
  out += opt_bool(row.agree_nrc);
  out += ',';
  out += opt_bool(row.agree_inrc);
  out += ',';
  out += row.stable ? "true" : "false";
  return out;
}

std::string to_csv(const ComplexityTable& table) {
  std::string out = csv_header();
  out += '\n';
  for (const TableRow& row : table.rows) {
    out += to_csv_row(row);
    out += '\n';
  }
  return out;
}

}  // namespace arlab
