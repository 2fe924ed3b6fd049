#include "ptv/group.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace ptv {

namespace {

static_assert(sizeof(long) == 8, "integer store assumes 64-bit long");

// Signals that a product left the machine-integer range; enumeration
// restarts with rational arithmetic.
struct IntOverflow {};

// Union-find with min-root convention: find(x) is the least index of the
// class of x, so class representatives come for free.
struct UnionFind {
  std::vector<std::int32_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::int32_t find(std::int32_t x) {
    while (p[static_cast<std::size_t>(x)] != x) {
      p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
      x = p[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) p[static_cast<std::size_t>(b)] = a;
    else p[static_cast<std::size_t>(a)] = b;
  }
};

void mul_int(const std::int64_t* a, const std::int64_t* b, std::int64_t* c, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < n; ++k) acc += static_cast<__int128>(a[i * n + k]) * b[k * n + j];
      if (acc > std::numeric_limits<std::int64_t>::max() ||
          acc < std::numeric_limits<std::int64_t>::min())
        throw IntOverflow{};
      c[i * n + j] = static_cast<std::int64_t>(acc);
    }
}

std::string int_key(const std::int64_t* m, int nn) {
  std::ostringstream os;
  for (int i = 0; i < nn; ++i) {
    if (i) os << ' ';
    os << m[i];
  }
  return os.str();
}

std::string rat_key(const Rat* m, int nn) {
  std::ostringstream os;
  for (int i = 0; i < nn; ++i) {
    if (i) os << ' ';
    os << m[i].str();
  }
  return os.str();
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

FiniteMatrixGroup FiniteMatrixGroup::enumerate(int rank, const std::vector<QMat>& generators,
                                               std::size_t cap) {
  if (rank < 1) throw ValidationError("BadRank", "group rank must be positive");
  for (const QMat& g : generators) {
    if (g.rows() != rank || g.cols() != rank)
      throw ValidationError("DimensionMismatch", "generator is not a " + std::to_string(rank) +
                                                     "x" + std::to_string(rank) + " matrix");
    if (ptv::rank(g) != rank)
      throw ValidationError("NonInvertibleGenerator", "generator matrix is singular");
  }
  FiniteMatrixGroup g;
  g.n_ = rank;
  g.gen_mats_ = generators;

  bool int_ok = true;
  for (const QMat& m : generators) {
    if (!m.is_integral()) { int_ok = false; break; }
    for (int i = 0; int_ok && i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        if (!m.at(i, j).num().fits_slong_p()) { int_ok = false; break; }
  }

  if (int_ok) {
    try {
      g.int_bfs(cap);
      g.integral_store_ = true;
    } catch (const IntOverflow&) {
      g.reset_enumeration();
      int_ok = false;
    }
  }
  if (!int_ok) g.rat_bfs(cap);

  g.sort_and_remap();
  g.build_tables();
  return g;
}

void FiniteMatrixGroup::reset_enumeration() {
  imats_.clear();
  qmats_.clear();
  keys_.clear();
  index_of_.clear();
  parent_.clear();
  parent_gen_.clear();
  ltab_.clear();
}

void FiniteMatrixGroup::int_bfs(std::size_t cap) {
  const int n = n_, nn = n * n;
  const std::size_t ngen = gen_mats_.size();
  std::vector<std::int64_t> gens(ngen * static_cast<std::size_t>(nn));
  for (std::size_t s = 0; s < ngen; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gens[s * nn + static_cast<std::size_t>(i * n + j)] = gen_mats_[s].at(i, j).num().get_si();

  ltab_.assign(ngen, {});
  auto append = [&](const std::int64_t* m, std::int32_t par, std::int32_t pgen) -> ElemIdx {
    std::string key = int_key(m, nn);
    auto it = index_of_.find(key);
    if (it != index_of_.end()) return it->second;
    if (keys_.size() >= cap)
      throw ValidationError("CapExceeded",
                            "group enumeration exceeded cap of " + std::to_string(cap));
    ElemIdx idx = static_cast<ElemIdx>(keys_.size());
    imats_.insert(imats_.end(), m, m + nn);
    keys_.push_back(std::move(key));
    index_of_.emplace(keys_.back(), idx);
    parent_.push_back(par);
    parent_gen_.push_back(pgen);
    for (auto& t : ltab_) t.push_back(-1);
    return idx;
  };

  std::vector<std::int64_t> ident(static_cast<std::size_t>(nn), 0);
  for (int i = 0; i < n; ++i) ident[static_cast<std::size_t>(i * n + i)] = 1;
  append(ident.data(), -1, -1);

  std::vector<std::int64_t> prod(static_cast<std::size_t>(nn));
  for (std::size_t qi = 0; qi < keys_.size(); ++qi) {
    for (std::size_t s = 0; s < ngen; ++s) {
      mul_int(&gens[s * nn], &imats_[qi * static_cast<std::size_t>(nn)], prod.data(), n);
      ElemIdx idx = append(prod.data(), static_cast<std::int32_t>(qi), static_cast<std::int32_t>(s));
      ltab_[s][qi] = idx;
    }
  }
}

void FiniteMatrixGroup::rat_bfs(std::size_t cap) {
  const int n = n_, nn = n * n;
  const std::size_t ngen = gen_mats_.size();

  ltab_.assign(ngen, {});
  auto append = [&](const Rat* m, std::int32_t par, std::int32_t pgen) -> ElemIdx {
    std::string key = rat_key(m, nn);
    auto it = index_of_.find(key);
    if (it != index_of_.end()) return it->second;
    if (keys_.size() >= cap)
      throw ValidationError("CapExceeded",
                            "group enumeration exceeded cap of " + std::to_string(cap));
    ElemIdx idx = static_cast<ElemIdx>(keys_.size());
    qmats_.insert(qmats_.end(), m, m + nn);
    keys_.push_back(std::move(key));
    index_of_.emplace(keys_.back(), idx);
    parent_.push_back(par);
    parent_gen_.push_back(pgen);
    for (auto& t : ltab_) t.push_back(-1);
    return idx;
  };

  std::vector<Rat> ident(static_cast<std::size_t>(nn));
  for (int i = 0; i < n; ++i) ident[static_cast<std::size_t>(i * n + i)] = Rat(1);
  append(ident.data(), -1, -1);

  std::vector<Rat> prod(static_cast<std::size_t>(nn));
  for (std::size_t qi = 0; qi < keys_.size(); ++qi) {
    for (std::size_t s = 0; s < ngen; ++s) {
      const QMat& gm = gen_mats_[s];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Rat acc;
          for (int k = 0; k < n; ++k) {
            const Rat& a = gm.at(i, k);
            if (a.is_zero()) continue;
            acc += a * qmats_[qi * static_cast<std::size_t>(nn) + static_cast<std::size_t>(k * n + j)];
          }
          prod[static_cast<std::size_t>(i * n + j)] = acc;
        }
      ElemIdx idx = append(prod.data(), static_cast<std::int32_t>(qi), static_cast<std::int32_t>(s));
      ltab_[s][qi] = idx;
    }
  }
}

void FiniteMatrixGroup::sort_and_remap() {
  const std::size_t N = keys_.size();
  const std::size_t nn = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  std::vector<ElemIdx> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ElemIdx a, ElemIdx b) {
    return keys_[static_cast<std::size_t>(a)] < keys_[static_cast<std::size_t>(b)];
  });
  std::vector<ElemIdx> perm(N);
  for (std::size_t k = 0; k < N; ++k) perm[static_cast<std::size_t>(order[k])] = static_cast<ElemIdx>(k);

  auto permuted_keys = std::vector<std::string>(N);
  for (std::size_t i = 0; i < N; ++i)
    permuted_keys[static_cast<std::size_t>(perm[i])] = std::move(keys_[i]);
  keys_ = std::move(permuted_keys);

  if (!imats_.empty()) {
    std::vector<std::int64_t> im(N * nn);
    for (std::size_t i = 0; i < N; ++i)
      std::copy_n(&imats_[i * nn], nn, &im[static_cast<std::size_t>(perm[i]) * nn]);
    imats_ = std::move(im);
  }
  if (!qmats_.empty()) {
    std::vector<Rat> qm(N * nn);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t e = 0; e < nn; ++e)
        qm[static_cast<std::size_t>(perm[i]) * nn + e] = std::move(qmats_[i * nn + e]);
    qmats_ = std::move(qm);
  }

  std::vector<std::int32_t> par(N), pgen(N);
  for (std::size_t i = 0; i < N; ++i) {
    par[static_cast<std::size_t>(perm[i])] = parent_[i] < 0 ? -1 : perm[static_cast<std::size_t>(parent_[i])];
    pgen[static_cast<std::size_t>(perm[i])] = parent_gen_[i];
  }
  parent_ = std::move(par);
  parent_gen_ = std::move(pgen);

  for (auto& tab : ltab_) {
    std::vector<ElemIdx> t(N);
    for (std::size_t i = 0; i < N; ++i)
      t[static_cast<std::size_t>(perm[i])] = perm[static_cast<std::size_t>(tab[i])];
    tab = std::move(t);
  }

  bfs_order_.resize(N);
  for (std::size_t k = 0; k < N; ++k) bfs_order_[k] = perm[k];

  index_of_.clear();
  index_of_.reserve(N * 2);
  for (std::size_t i = 0; i < N; ++i) index_of_.emplace(keys_[i], static_cast<ElemIdx>(i));

  identity_ = bfs_order_[0];

  gen_elem_.clear();
  for (const QMat& m : gen_mats_) gen_elem_.push_back(index_of_.at(m.key()));
}

void FiniteMatrixGroup::build_tables() {
  const std::size_t N = keys_.size();
  const std::size_t ngen = gen_mats_.size();
  rtab_inv_.assign(ngen, {});
  for (std::size_t s = 0; s < ngen; ++s) {
    QMat gi = ptv::inverse(gen_mats_[s]);
    auto it = index_of_.find(gi.key());
    if (it == index_of_.end())
      throw IdentityError("ClosureBroken", "generator inverse missing from enumeration");
    std::vector<ElemIdx> tab(N);
    tab[static_cast<std::size_t>(identity_)] = it->second;
    for (std::size_t k = 1; k < N; ++k) {
      ElemIdx i = bfs_order_[k];
      tab[static_cast<std::size_t>(i)] =
          ltab_[static_cast<std::size_t>(parent_gen_[static_cast<std::size_t>(i)])]
               [static_cast<std::size_t>(tab[static_cast<std::size_t>(parent_[static_cast<std::size_t>(i)])])];
    }
    rtab_inv_[s] = std::move(tab);
  }

  inv_.assign(N, identity_);
  for (std::size_t k = 1; k < N; ++k) {
    ElemIdx i = bfs_order_[k];
    inv_[static_cast<std::size_t>(i)] =
        rtab_inv_[static_cast<std::size_t>(parent_gen_[static_cast<std::size_t>(i)])]
                 [static_cast<std::size_t>(inv_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(i)])])];
  }
}

void FiniteMatrixGroup::require_valid(ElemIdx i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= keys_.size())
    throw ValidationError("BadElementIndex", "element index out of range");
}

QMat FiniteMatrixGroup::element_matrix(ElemIdx i) const {
  require_valid(i);
  const std::size_t nn = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  QMat m(n_, n_);
  if (integral_store_) {
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        m.at(r, c) = Rat(static_cast<long>(imats_[static_cast<std::size_t>(i) * nn +
                                                  static_cast<std::size_t>(r * n_ + c)]));
  } else {
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        m.at(r, c) = qmats_[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(r * n_ + c)];
  }
  return m;
}

std::optional<ElemIdx> FiniteMatrixGroup::find_key(const std::string& key) const {
  auto it = index_of_.find(key);
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> FiniteMatrixGroup::word_of(ElemIdx i) const {
  std::vector<int> w;
  while (parent_[static_cast<std::size_t>(i)] >= 0) {
    w.push_back(parent_gen_[static_cast<std::size_t>(i)]);
    i = parent_[static_cast<std::size_t>(i)];
  }
  return w;  // outermost generator first: g = s[w0]·s[w1]···s[wk]·1
}

ElemIdx FiniteMatrixGroup::multiply(ElemIdx a, ElemIdx b) const {
  require_valid(a);
  require_valid(b);
  std::vector<int> w = word_of(a);
  ElemIdx r = b;
  for (std::size_t t = w.size(); t-- > 0;)
    r = ltab_[static_cast<std::size_t>(w[t])][static_cast<std::size_t>(r)];
  return r;
}

ElemIdx FiniteMatrixGroup::power(ElemIdx a, long k) const {
  require_valid(a);
  long o = element_order(a);
  long m = ((k % o) + o) % o;
  ElemIdx r = identity_;
  for (long t = 0; t < m; ++t) r = multiply(a, r);
  return r;
}

ElemIdx FiniteMatrixGroup::conjugate(ElemIdx t, ElemIdx x) const {
  return multiply(multiply(t, x), inverse(t));
}

int FiniteMatrixGroup::element_order(ElemIdx a) const {
  require_valid(a);
  int o = 1;
  ElemIdx r = a;
  while (r != identity_) {
    r = multiply(a, r);
    ++o;
  }
  return o;
}

QVec FiniteMatrixGroup::apply(ElemIdx g, const QVec& v) const {
  require_valid(g);
  if (v.dim() != n_) throw ValidationError("DimensionMismatch", "vector dimension differs from group rank");
  const std::size_t nn = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  QVec r(n_);
  for (int i = 0; i < n_; ++i) {
    Rat acc;
    for (int j = 0; j < n_; ++j) {
      if (integral_store_) {
        std::int64_t m = imats_[static_cast<std::size_t>(g) * nn + static_cast<std::size_t>(i * n_ + j)];
        if (m) acc += Rat(static_cast<long>(m)) * v[j];
      } else {
        const Rat& m = qmats_[static_cast<std::size_t>(g) * nn + static_cast<std::size_t>(i * n_ + j)];
        if (!m.is_zero()) acc += m * v[j];
      }
    }
    r[i] = acc;
  }
  return r;
}

FiniteMatrixGroup::VecOrbit FiniteMatrixGroup::vector_orbit(const QVec& v) const {
  if (v.dim() != n_) throw ValidationError("DimensionMismatch", "vector dimension differs from group rank");
  const std::size_t ngen = gen_mats_.size();
  VecOrbit orb;
  orb.points.push_back(v);
  std::unordered_map<std::string, std::int32_t> seen;
  seen.emplace(v.str(), 0);
  std::vector<std::vector<std::int32_t>> sigma(ngen);
  for (std::size_t qi = 0; qi < orb.points.size(); ++qi) {
    for (std::size_t s = 0; s < ngen; ++s) {
      QVec u = gen_mats_[s] * orb.points[qi];
      std::string key = u.str();
      auto it = seen.find(key);
      std::int32_t idx;
      if (it == seen.end()) {
        idx = static_cast<std::int32_t>(orb.points.size());
        orb.points.push_back(std::move(u));
        seen.emplace(std::move(key), idx);
      } else {
        idx = it->second;
      }
      sigma[s].push_back(idx);  // sigma[s][qi]
    }
  }
  const std::size_t N = keys_.size();
  orb.point_of.assign(N, 0);
  for (std::size_t k = 1; k < N; ++k) {
    ElemIdx i = bfs_order_[k];
    orb.point_of[static_cast<std::size_t>(i)] =
        sigma[static_cast<std::size_t>(parent_gen_[static_cast<std::size_t>(i)])]
             [static_cast<std::size_t>(orb.point_of[static_cast<std::size_t>(parent_[static_cast<std::size_t>(i)])])];
  }
  return orb;
}

std::vector<ElemIdx> FiniteMatrixGroup::stabilizer(const QVec& v) const {
  VecOrbit orb = vector_orbit(v);
  std::vector<ElemIdx> out;
  for (std::size_t i = 0; i < orb.point_of.size(); ++i)
    if (orb.point_of[i] == 0) out.push_back(static_cast<ElemIdx>(i));
  return out;
}

std::vector<ElemIdx> FiniteMatrixGroup::closure(const std::vector<ElemIdx>& seeds) const {
  const std::size_t N = keys_.size();
  std::vector<std::vector<int>> words;
  words.reserve(seeds.size());
  for (ElemIdx s : seeds) {
    require_valid(s);
    words.push_back(word_of(s));
  }
  std::vector<char> in(N, 0);
  std::vector<ElemIdx> queue;
  queue.push_back(identity_);
  in[static_cast<std::size_t>(identity_)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ElemIdx u = queue[head];
    for (const auto& w : words) {
      ElemIdx r = u;
      for (std::size_t t = w.size(); t-- > 0;)
        r = ltab_[static_cast<std::size_t>(w[t])][static_cast<std::size_t>(r)];
      if (!in[static_cast<std::size_t>(r)]) {
        in[static_cast<std::size_t>(r)] = 1;
        queue.push_back(r);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

bool FiniteMatrixGroup::generates_group(const std::vector<ElemIdx>& seeds) const {
  const std::size_t N = keys_.size();
  std::vector<std::vector<int>> words;
  words.reserve(seeds.size());
  for (ElemIdx s : seeds) {
    require_valid(s);
    words.push_back(word_of(s));
  }
  std::vector<char> in(N, 0);
  std::vector<ElemIdx> queue;
  queue.push_back(identity_);
  in[static_cast<std::size_t>(identity_)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ElemIdx u = queue[head];
    for (const auto& w : words) {
      ElemIdx r = u;
      for (std::size_t t = w.size(); t-- > 0;)
        r = ltab_[static_cast<std::size_t>(w[t])][static_cast<std::size_t>(r)];
      if (!in[static_cast<std::size_t>(r)]) {
        if (queue.size() + 1 == N) return true;
        in[static_cast<std::size_t>(r)] = 1;
        queue.push_back(r);
      }
    }
  }
  return queue.size() == N;
}

std::vector<ElemIdx> FiniteMatrixGroup::subgroup_generators(const std::vector<ElemIdx>& subgroup) const {
  const std::size_t N = keys_.size();
  std::vector<char> in_cl(N, 0);
  in_cl[static_cast<std::size_t>(identity_)] = 1;
  std::vector<ElemIdx> gens;
  for (ElemIdx x : subgroup) {
    require_valid(x);
    if (in_cl[static_cast<std::size_t>(x)]) continue;
    gens.push_back(x);
    std::fill(in_cl.begin(), in_cl.end(), 0);
    for (ElemIdx y : closure(gens)) in_cl[static_cast<std::size_t>(y)] = 1;
  }
  return gens;
}

bool FiniteMatrixGroup::is_subgroup(const std::vector<ElemIdx>& sorted_set) const {
  if (sorted_set.empty()) return false;
  for (std::size_t i = 0; i < sorted_set.size(); ++i) {
    require_valid(sorted_set[i]);
    if (i && sorted_set[i] <= sorted_set[i - 1]) return false;
  }
  std::vector<ElemIdx> cl = closure(subgroup_generators(sorted_set));
  return cl == sorted_set;
}

Subgroup FiniteMatrixGroup::make_subgroup(const std::vector<ElemIdx>& sorted_elements) const {
  if (sorted_elements.empty())
    throw ValidationError("NotASubgroup", "a subgroup cannot be empty");
  for (std::size_t i = 0; i < sorted_elements.size(); ++i) {
    require_valid(sorted_elements[i]);
    if (i && sorted_elements[i] <= sorted_elements[i - 1])
      throw ValidationError("NotASubgroup", "element list must be strictly ascending");
  }
  std::vector<ElemIdx> gens = subgroup_generators(sorted_elements);
  if (closure(gens) != sorted_elements)
    throw ValidationError("NotASubgroup", "element set is not closed under the group law");
  return Subgroup{sorted_elements, std::move(gens)};
}

Subgroup FiniteMatrixGroup::subgroup_from_generators(const std::vector<ElemIdx>& seeds) const {
  std::vector<ElemIdx> elems = closure(seeds);
  return Subgroup{std::move(elems), seeds};
}

std::vector<ElemIdx> FiniteMatrixGroup::cyclic_subgroup(ElemIdx x) const {
  require_valid(x);
  std::vector<ElemIdx> out{identity_};
  ElemIdx r = x;
  while (r != identity_) {
    out.push_back(r);
    r = multiply(x, r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElemIdx> FiniteMatrixGroup::right_mul_table(ElemIdx h) const {
  const std::size_t N = keys_.size();
  std::vector<ElemIdx> tab(N);
  tab[static_cast<std::size_t>(identity_)] = h;
  for (std::size_t k = 1; k < N; ++k) {
    ElemIdx i = bfs_order_[k];
    tab[static_cast<std::size_t>(i)] =
        ltab_[static_cast<std::size_t>(parent_gen_[static_cast<std::size_t>(i)])]
             [static_cast<std::size_t>(tab[static_cast<std::size_t>(parent_[static_cast<std::size_t>(i)])])];
  }
  return tab;
}

void FiniteMatrixGroup::left_mul_table(ElemIdx h, std::vector<ElemIdx>& out) const {
  const std::size_t N = keys_.size();
  std::vector<int> w = word_of(h);
  out.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    ElemIdx r = static_cast<ElemIdx>(i);
    for (std::size_t t = w.size(); t-- > 0;)
      r = ltab_[static_cast<std::size_t>(w[t])][static_cast<std::size_t>(r)];
    out[i] = r;
  }
}

CosetSystem FiniteMatrixGroup::left_cosets(const Subgroup& subgroup) const {
  const std::size_t N = keys_.size();
  UnionFind uf(N);
  for (ElemIdx h : subgroup.generators) {
    std::vector<ElemIdx> rt = right_mul_table(h);
    for (std::size_t i = 0; i < N; ++i) uf.unite(static_cast<std::int32_t>(i), rt[i]);
  }
  std::int32_t root0 = uf.find(identity_);
  std::vector<std::int32_t> coset_index(N, -1);
  std::vector<ElemIdx> reps;
  reps.push_back(identity_);
  coset_index[static_cast<std::size_t>(root0)] = 0;
  for (std::size_t i = 0; i < N; ++i) {
    std::int32_t r = uf.find(static_cast<std::int32_t>(i));
    if (coset_index[static_cast<std::size_t>(r)] < 0) {
      coset_index[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(reps.size());
      reps.push_back(r);  // min-root: the least element of the coset
    }
  }
  CosetSystem cs;
  cs.reps = std::move(reps);
  cs.coset_of.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    cs.coset_of[i] = coset_index[static_cast<std::size_t>(uf.find(static_cast<std::int32_t>(i)))];
  cs.subgroup = subgroup.elements;
  if (cs.reps.size() * subgroup.order() != N)
    throw IdentityError("CosetPartitionBroken", "coset sizes do not partition the group");
  return cs;
}

CosetSystem FiniteMatrixGroup::hall_representatives(const Subgroup& subgroup) const {
  const std::size_t N = keys_.size();

  UnionFind left(N), right(N);
  std::vector<ElemIdx> buf;
  for (ElemIdx h : subgroup.generators) {
    std::vector<ElemIdx> rt = right_mul_table(h);
    for (std::size_t i = 0; i < N; ++i) left.unite(static_cast<std::int32_t>(i), rt[i]);
    left_mul_table(h, buf);
    for (std::size_t i = 0; i < N; ++i) right.unite(static_cast<std::int32_t>(i), buf[i]);
  }

  // Compact ids; the coset containing the identity gets id 0 on both sides.
  auto compact = [&](UnionFind& uf) {
    std::vector<std::int32_t> id(N, -1);
    std::int32_t next = 1;
    id[static_cast<std::size_t>(uf.find(identity_))] = 0;
    for (std::size_t i = 0; i < N; ++i) {
      std::int32_t r = uf.find(static_cast<std::int32_t>(i));
      if (id[static_cast<std::size_t>(r)] < 0) id[static_cast<std::size_t>(r)] = next++;
    }
    return std::pair<std::vector<std::int32_t>, std::int32_t>(std::move(id), next);
  };
  auto [lid, lcount] = compact(left);
  auto [rid, rcount] = compact(right);
  if (lcount != rcount)
    throw IdentityError("CosetPartitionBroken", "left and right coset counts differ");
  const std::int32_t d = lcount;

  // Least element in each (left, right) coset intersection; -1 if empty.
  std::vector<ElemIdx> min_pair(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), -1);
  for (std::size_t i = 0; i < N; ++i) {
    std::int32_t l = lid[static_cast<std::size_t>(left.find(static_cast<std::int32_t>(i)))];
    std::int32_t r = rid[static_cast<std::size_t>(right.find(static_cast<std::int32_t>(i)))];
    ElemIdx& slot = min_pair[static_cast<std::size_t>(l) * static_cast<std::size_t>(d) +
                             static_cast<std::size_t>(r)];
    if (slot < 0) slot = static_cast<ElemIdx>(i);
  }

  // Perfect matching between left and right cosets along nonempty
  // intersections (augmenting paths). The identity pair is pre-matched.
  std::vector<std::int32_t> match_l(static_cast<std::size_t>(d), -1),
      match_r(static_cast<std::size_t>(d), -1);
  match_l[0] = 0;
  match_r[0] = 0;
  std::vector<char> visited(static_cast<std::size_t>(d));
  auto try_augment = [&](auto&& self, std::int32_t l) -> bool {
    for (std::int32_t r = 0; r < d; ++r) {
      if (visited[static_cast<std::size_t>(r)]) continue;
      if (min_pair[static_cast<std::size_t>(l) * static_cast<std::size_t>(d) +
                   static_cast<std::size_t>(r)] < 0)
        continue;
      visited[static_cast<std::size_t>(r)] = 1;
      if (match_r[static_cast<std::size_t>(r)] < 0 ||
          (match_r[static_cast<std::size_t>(r)] != 0 && self(self, match_r[static_cast<std::size_t>(r)]))) {
        match_l[static_cast<std::size_t>(l)] = r;
        match_r[static_cast<std::size_t>(r)] = l;
        return true;
      }
    }
    return false;
  };
  for (std::int32_t l = 1; l < d; ++l) {
    std::fill(visited.begin(), visited.end(), 0);
    visited[0] = 1;  // identity cosets stay paired with each other
    if (!try_augment(try_augment, l))
      throw IdentityError("RepresentativeMatchingFailed",
                          "no simultaneous left/right representative system");
  }

  CosetSystem cs;
  cs.reps.resize(static_cast<std::size_t>(d));
  cs.reps[0] = identity_;
  for (std::int32_t l = 1; l < d; ++l)
    cs.reps[static_cast<std::size_t>(l)] =
        min_pair[static_cast<std::size_t>(l) * static_cast<std::size_t>(d) +
                 static_cast<std::size_t>(match_l[static_cast<std::size_t>(l)])];
  cs.coset_of.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    cs.coset_of[i] = lid[static_cast<std::size_t>(left.find(static_cast<std::int32_t>(i)))];
  cs.subgroup = subgroup.elements;
  if (cs.reps.size() * subgroup.order() != N)
    throw IdentityError("CosetPartitionBroken", "coset sizes do not partition the group");
  return cs;
}

std::size_t FiniteMatrixGroup::double_coset_count(const Subgroup& h, const Subgroup& k) const {
  const std::size_t N = keys_.size();
  UnionFind uf(N);
  std::vector<ElemIdx> buf;
  for (ElemIdx x : h.generators) {
    left_mul_table(x, buf);
    for (std::size_t i = 0; i < N; ++i) uf.unite(static_cast<std::int32_t>(i), buf[i]);
  }
  for (ElemIdx y : k.generators) {
    std::vector<ElemIdx> rt = right_mul_table(y);
    for (std::size_t i = 0; i < N; ++i) uf.unite(static_cast<std::int32_t>(i), rt[i]);
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < N; ++i)
    if (uf.find(static_cast<std::int32_t>(i)) == static_cast<std::int32_t>(i)) ++count;
  return count;
}

void FiniteMatrixGroup::build_classes() const {
  if (classes_built_) return;
  const std::size_t N = keys_.size();
  UnionFind uf(N);
  for (std::size_t s = 0; s < gen_mats_.size(); ++s)
    for (std::size_t i = 0; i < N; ++i)
      uf.unite(static_cast<std::int32_t>(i),
               rtab_inv_[s][static_cast<std::size_t>(ltab_[s][i])]);
  for (std::size_t i = 0; i < N; ++i) uf.find(static_cast<std::int32_t>(i));

  // Merge conjugacy classes of x and x^u for u coprime to ord(x); one
  // representative per element class suffices.
  UnionFind merged = uf;
  for (std::size_t i = 0; i < N; ++i) {
    if (uf.find(static_cast<std::int32_t>(i)) != static_cast<std::int32_t>(i)) continue;
    if (static_cast<ElemIdx>(i) == identity_) continue;
    int o = element_order(static_cast<ElemIdx>(i));
    ElemIdx p = static_cast<ElemIdx>(i);
    for (int u = 2; u < o; ++u) {
      p = multiply(static_cast<ElemIdx>(i), p);
      if (std::gcd(u, o) == 1) merged.unite(static_cast<std::int32_t>(i), p);
    }
  }

  std::vector<std::size_t> class_elems(N, 0);
  for (std::size_t i = 0; i < N; ++i)
    ++class_elems[static_cast<std::size_t>(merged.find(static_cast<std::int32_t>(i)))];

  std::vector<CyclicSubgroupClass> classes;
  for (std::size_t i = 0; i < N; ++i) {
    if (merged.find(static_cast<std::int32_t>(i)) != static_cast<std::int32_t>(i)) continue;
    if (static_cast<ElemIdx>(i) == identity_) continue;
    int o = element_order(static_cast<ElemIdx>(i));
    std::size_t generators_per_subgroup = static_cast<std::size_t>(euler_phi(o));
    if (class_elems[i] % generators_per_subgroup != 0)
      throw IdentityError("ClassCountBroken", "generator count per subgroup is not uniform");
    classes.push_back(CyclicSubgroupClass{0, static_cast<ElemIdx>(i), o,
                                          class_elems[i] / generators_per_subgroup});
  }
  std::sort(classes.begin(), classes.end(), [](const CyclicSubgroupClass& a, const CyclicSubgroupClass& b) {
    if (a.subgroup_order != b.subgroup_order) return a.subgroup_order < b.subgroup_order;
    return a.representative < b.representative;
  });
  std::vector<std::int32_t> id_of_root(N, 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    classes[c].id = static_cast<int>(c) + 1;
    id_of_root[static_cast<std::size_t>(classes[c].representative)] = classes[c].id;
  }
  class_id_of_.assign(N, 0);
  for (std::size_t i = 0; i < N; ++i) {
    if (static_cast<ElemIdx>(i) == identity_) continue;
    class_id_of_[i] = id_of_root[static_cast<std::size_t>(merged.find(static_cast<std::int32_t>(i)))];
  }
  classes_ = std::move(classes);
  classes_built_ = true;
}

const std::vector<CyclicSubgroupClass>& FiniteMatrixGroup::cyclic_subgroup_classes() const {
  build_classes();
  return classes_;
}

int FiniteMatrixGroup::cyclic_class_id(ElemIdx x) const {
  require_valid(x);
  if (x == identity_)
    throw ValidationError("TrivialCyclicSubgroup", "the identity generates no usable class");
  build_classes();
  return class_id_of_[static_cast<std::size_t>(x)];
}

const CyclicSubgroupClass& FiniteMatrixGroup::conjugacy_class_of_cyclic(ElemIdx x) const {
  int id = cyclic_class_id(x);
  return classes_[static_cast<std::size_t>(id - 1)];
}

QMat FiniteMatrixGroup::sum_mtm() const {
  const std::size_t N = keys_.size();
  const int n = n_;
  const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  QMat out(n, n);
  if (integral_store_) {
    std::vector<__int128> acc(nn, 0);
    for (std::size_t e = 0; e < N; ++e) {
      const std::int64_t* m = &imats_[e * nn];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          __int128 s = 0;
          for (int k = 0; k < n; ++k)
            s += static_cast<__int128>(m[k * n + i]) * m[k * n + j];
          acc[static_cast<std::size_t>(i * n + j)] += s;
        }
    }
    bool fits = true;
    for (__int128 v : acc)
      if (v > std::numeric_limits<std::int64_t>::max() ||
          v < std::numeric_limits<std::int64_t>::min()) {
        fits = false;
        break;
      }
    if (fits) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out.at(i, j) = Rat(static_cast<long>(static_cast<std::int64_t>(acc[static_cast<std::size_t>(i * n + j)])));
      return out;
    }
    // Exceedingly large entries: redo with arbitrary precision.
    std::vector<Int> big(nn, Int(0));
    for (std::size_t e = 0; e < N; ++e) {
      const std::int64_t* m = &imats_[e * nn];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Int s(0);
          for (int k = 0; k < n; ++k)
            s += Int(static_cast<long>(m[k * n + i])) * Int(static_cast<long>(m[k * n + j]));
          big[static_cast<std::size_t>(i * n + j)] += s;
        }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(i, j) = Rat(big[static_cast<std::size_t>(i * n + j)]);
    return out;
  }
  for (std::size_t e = 0; e < N; ++e) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat s;
        for (int k = 0; k < n; ++k)
          s += qmats_[e * nn + static_cast<std::size_t>(k * n + i)] *
               qmats_[e * nn + static_cast<std::size_t>(k * n + j)];
        out.at(i, j) += s;
      }
  }
  return out;
}

std::vector<QMat> FiniteMatrixGroup::bucket_matrix_sums(const std::vector<std::int32_t>& bucket_of,
                                                        int nbuckets) const {
  const std::size_t N = keys_.size();
  if (bucket_of.size() != N)
    throw ValidationError("DimensionMismatch", "bucket assignment size differs from group order");
  const int n = n_;
  const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<QMat> out(static_cast<std::size_t>(nbuckets), QMat(n, n));
  if (integral_store_) {
    std::vector<__int128> acc(static_cast<std::size_t>(nbuckets) * nn, 0);
    for (std::size_t e = 0; e < N; ++e) {
      std::int32_t b = bucket_of[e];
      if (b < 0) continue;
      if (b >= nbuckets) throw ValidationError("BadBucket", "bucket index out of range");
      const std::int64_t* m = &imats_[e * nn];
      __int128* a = &acc[static_cast<std::size_t>(b) * nn];
      for (std::size_t t = 0; t < nn; ++t) a[t] += m[t];
    }
    for (int b = 0; b < nbuckets; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          __int128 v = acc[static_cast<std::size_t>(b) * nn + static_cast<std::size_t>(i * n + j)];
          if (v > std::numeric_limits<std::int64_t>::max() ||
              v < std::numeric_limits<std::int64_t>::min())
            throw ValidationError("Overflow", "bucket sum exceeds machine range");
          out[static_cast<std::size_t>(b)].at(i, j) = Rat(static_cast<long>(static_cast<std::int64_t>(v)));
        }
    return out;
  }
  for (std::size_t e = 0; e < N; ++e) {
    std::int32_t b = bucket_of[e];
    if (b < 0) continue;
    if (b >= nbuckets) throw ValidationError("BadBucket", "bucket index out of range");
    QMat& a = out[static_cast<std::size_t>(b)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a.at(i, j) += qmats_[e * nn + static_cast<std::size_t>(i * n + j)];
  }
  return out;
}

}  // namespace ptv
