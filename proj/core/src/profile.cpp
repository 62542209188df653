#include "cadist/profile.hpp"

#include <mutex>
#include <sstream>
#include <thread>

namespace cadist {

const Int& DistanceProfile::h(int n) const {
  if (n < 0 || n > n_max()) throw BadInput("profile has no entry for n=" + std::to_string(n));
  return entries[static_cast<std::size_t>(n)].h;
}

DistanceProfile compute_h(const CayleyAutomaticStructure& s, int n_max, int threads) {
  if (n_max < 0) throw BadInput("compute_h: n_max must be >= 0");
  DistanceProfile prof;
  prof.structure = s.name;
  prof.constants = s.constants();

  std::vector<Word> words;
  enumerate_language(s.language, n_max, [&](const Convolution& c) {
    words.push_back(c.words[0]);
    return true;
  });

  // Codes of length n can represent exponentially far elements, so the
  // guard cap must be exponential in n too.
  Int cap = (Int(1) << (n_max + 6)) + Int(prof.constants.m) * n_max + prof.constants.e + 16;
  std::vector<Int> dist(words.size());
  std::exception_ptr worker_error;
  std::mutex error_mutex;
  auto worker = [&](std::size_t lo, std::size_t hi) {
    try {
      for (std::size_t i = lo; i < hi; ++i)
        dist[i] = s.distance(s.pi(words[i]), s.psi(words[i]), cap);
    } catch (...) {
      std::lock_guard<std::mutex> hold(error_mutex);
      if (!worker_error) worker_error = std::current_exception();
    }
  };
  if (threads <= 1 || words.size() < 64) {
    worker(0, words.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (words.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::size_t lo = std::min(words.size(), t * chunk);
      std::size_t hi = std::min(words.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (worker_error) std::rethrow_exception(worker_error);

  // Enumeration is length-lex, so a single sweep keeps the first maximizer.
  prof.entries.resize(static_cast<std::size_t>(n_max) + 1);
  Int best = 0;
  Word best_witness;
  std::size_t i = 0;
  for (int n = 0; n <= n_max; ++n) {
    for (; i < words.size() && static_cast<int>(words[i].size()) <= n; ++i)
      if (dist[i] > best) {
        best = dist[i];
        best_witness = words[i];
      }
    prof.entries[static_cast<std::size_t>(n)] = {n, best, best_witness};
  }
  return prof;
}

Int h_value(const CayleyAutomaticStructure& s, int n) {
  if (s.analytic_h)
    if (auto h = s.analytic_h(n)) return *h;
  return compute_h(s, std::max(n, 0)).entries.back().h;
}

LengthBoundReport check_length_bound(const CayleyAutomaticStructure& s, int n) {
  LengthBoundReport rep;
  StateBoundConstants c = s.constants();
  rep.m = c.m;
  rep.e = c.e;
  Int cap = (Int(1) << (n + 6)) + Int(c.m) * n + c.e + 16;
  enumerate_language(s.language, n, [&](const Convolution& conv) {
    const Word& u = conv.words[0];
    Int d = s.distance(s.model->identity(), s.psi(u), cap);
    Int slack = Int(c.m) * d + c.e - Int(u.size());
    if (slack < 0) {
      rep.pass = false;
      rep.witness = u;
      rep.detail = "length bound violated: |u|=" + std::to_string(u.size()) +
                   " > m*d+e=" + (Int(c.m) * d + c.e).str();
      return false;
    }
    if (slack > rep.max_slack) rep.max_slack = slack;
    return true;
  });
  return rep;
}

bool check_equivalence_constants(const DistanceProfile& p, const DistanceProfile& q,
                                 const Int& K, int M, int N) {
  if (K < 1 || M < 1 || N < 0) throw BadInput("check_equivalence_constants: need K,M >= 1, N >= 0");
  if (q.n_max() < M * p.n_max())
    throw BadInput("check_equivalence_constants: q covers n <= " + std::to_string(q.n_max()) +
                   " but needs " + std::to_string(M * p.n_max()));
  for (int n = N; n <= p.n_max(); ++n)
    if (p.h(n) > K * q.h(M * n)) return false;
  return true;
}

std::string profile_csv(const DistanceProfile& p, const Alphabet& symbols) {
  std::ostringstream out;
  out << "n,h,witness\n";
  for (const ProfileEntry& e : p.entries)
    out << e.n << "," << e.h << "," << render_word(symbols, e.witness) << "\n";
  return out.str();
}

}  // namespace cadist
