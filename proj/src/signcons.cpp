#include "vbcert/signcons.hpp"

#include <algorithm>
#include <set>

#include "vbcert/linalg.hpp"

namespace vbcert {
namespace {

template <class T>
struct Labeled {
  IndexTuple rows;
  IndexTuple cols;
  T value;
  bool may_vanish = false;
};

std::string render(const Rational& x) { return to_exact_string(x); }
std::string render(double x) { return to_decimal_string(x, 17); }

template <class T>
MinorWitness witness_of(const Labeled<T>& item) {
  return {item.rows, item.cols, render(item.value), sign_of(item.value)};
}

// Sign test over labelled minors. forced_eps != 0 fixes the required sign;
// otherwise the first definite sign sets it. Items without may_vanish must be nonzero.
template <class T>
MatrixCheck judge(const std::vector<Labeled<T>>& items, int forced_eps) {
  MatrixCheck out;
  SignTally tally;
  int eps = forced_eps;
  const Labeled<T>* opposite = nullptr;
  const Labeled<T>* vanishing = nullptr;
  bool inconclusive = false;
  for (const auto& item : items) {
    const Sign s = sign_of(item.value);
    tally.add(s);
    if (s == Sign::Inconclusive) {
      inconclusive = true;
      continue;
    }
    if (s == Sign::Zero) {
      if (!item.may_vanish && vanishing == nullptr) vanishing = &item;
      continue;
    }
    const int d = static_cast<int>(s);
    if (eps == 0) eps = d;
    if (d != eps && opposite == nullptr) opposite = &item;
  }
  out.verdict = tally.verdict();
  if (opposite != nullptr) {
    out.witness = witness_of(*opposite);
    out.note = "minor of the wrong sign";
  } else if (vanishing != nullptr) {
    out.witness = witness_of(*vanishing);
    out.note = "vanishing minor where a strict sign is required";
  } else if (inconclusive) {
    out.note = "minor within tolerance of zero";
  } else {
    out.pass = true;
    out.epsilon = eps == 0 ? 1 : eps;
  }
  return out;
}

template <class T>
std::vector<Labeled<T>> all_minors(const Matrix<T>& x, int k, bool may_vanish) {
  const Matrix<T> c = compound(x, k);
  const auto row_sets = lex_tuples(static_cast<int>(x.rows()), k);
  const auto col_sets = lex_tuples(static_cast<int>(x.cols()), k);
  std::vector<Labeled<T>> items;
  items.reserve(row_sets.size() * col_sets.size());
  for (std::size_t i = 0; i < row_sets.size(); ++i)
    for (std::size_t j = 0; j < col_sets.size(); ++j) items.push_back({row_sets[i], col_sets[j], c(i, j), may_vanish});
  return items;
}

// Evaluates the listed minors in parallel; results keep input order.
template <class T>
std::vector<Labeled<T>> evaluate(const Matrix<T>& x, const std::vector<MinorPair>& pairs, bool all_may_vanish) {
  std::vector<Labeled<T>> items(pairs.size());
  const auto count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < count; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const MinorPair& p = pairs[i];
    items[i] = {p.rows, p.cols, minor_det(x, p.rows, p.cols),
                all_may_vanish || p.strictness == Strictness::NonStrictAllowed};
  }
  return items;
}

int dim(std::size_t v) { return static_cast<int>(v); }

void require_order(int k, std::size_t rows, std::size_t cols) {
  if (k < 1 || static_cast<std::size_t>(k) > std::min(rows, cols))
    throw Error(ErrorCode::RankOutOfRange, "order " + std::to_string(k) + " for a " + std::to_string(rows) + "x" +
                                               std::to_string(cols) + " matrix");
}

Decision decision_of(const MatrixCheck& c) {
  if (c.pass) return Decision::Holds;
  return c.witness ? Decision::Fails : Decision::Undecidable;
}

}  // namespace

std::vector<IndexTuple> reduced_tuples(int n, int k) {
  std::vector<IndexTuple> out;
  std::set<IndexTuple> seen;
  for (int r = 1; r <= k; ++r)
    for (int t = k - r + 1; t <= n - r + 1; ++t) {
      std::vector<int> e;
      for (int i = 1; i <= k - r; ++i) e.push_back(i);
      for (int i = t; i < t + r; ++i) e.push_back(i);
      IndexTuple tuple(n, std::move(e));
      if (seen.insert(tuple).second) out.push_back(std::move(tuple));
    }
  return out;
}

const char* to_string(DecisionPath p) {
  switch (p) {
    case DecisionPath::FullCompound: return "FullCompound";
    case DecisionPath::ConsecutiveMinors: return "ConsecutiveMinors";
    case DecisionPath::InitialMinors: return "InitialMinors";
    case DecisionPath::ReducedFamily: return "ReducedFamily";
    case DecisionPath::RankDeficientColumnSigns: return "RankDeficientColumnSigns";
    case DecisionPath::IndependentColumnsSignConsistency: return "IndependentColumnsSignConsistency";
    case DecisionPath::FullRankSignConsistency: return "FullRankSignConsistency";
    case DecisionPath::StrictSignConsistency: return "StrictSignConsistency";
    case DecisionPath::TotalPositivity: return "TotalPositivity";
    case DecisionPath::SignRegularIndependentColumns: return "SignRegularIndependentColumns";
    case DecisionPath::PerOrderVariationBound: return "PerOrderVariationBound";
    case DecisionPath::Undecidable: return "Undecidable";
  }
  return "?";
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Holds: return "Holds";
    case Decision::Fails: return "Fails";
    case Decision::Undecidable: return "Undecidable";
  }
  return "?";
}

template <class T>
MatrixCheck sign_consistent(const Matrix<T>& x, int k, bool strict) {
  require_order(k, x.rows(), x.cols());
  MatrixCheck out = judge(all_minors(x, k, !strict), 0);
  out.path = DecisionPath::FullCompound;
  return out;
}

template <class T>
MatrixCheck sign_regular(const Matrix<T>& x, int k, bool strict) {
  require_order(k, x.rows(), x.cols());
  MatrixCheck out;
  out.pass = true;
  out.path = DecisionPath::FullCompound;
  for (int j = 1; j <= k; ++j) {
    MatrixCheck order = sign_consistent(x, j, strict);
    out.per_order.push_back(order.verdict);
    if (out.pass && !order.pass) {
      out.pass = false;
      out.verdict = order.verdict;
      out.witness = order.witness;
      out.note = "order " + std::to_string(j) + ": " + order.note;
    }
    if (out.pass) {
      out.verdict = order.verdict;
      out.epsilon = order.epsilon;
    }
  }
  if (!out.pass) out.epsilon = 0;
  return out;
}

template <class T>
MatrixCheck k_positive(const Matrix<T>& x, int k, bool strict) {
  require_order(k, x.rows(), x.cols());
  MatrixCheck out;
  out.pass = true;
  out.epsilon = 1;
  out.path = DecisionPath::FullCompound;
  for (int j = 1; j <= k; ++j) {
    MatrixCheck order = judge(all_minors(x, j, !strict), 1);
    out.per_order.push_back(order.verdict);
    if (out.pass && !order.pass) {
      out.pass = false;
      out.epsilon = 0;
      out.verdict = order.verdict;
      out.witness = order.witness;
      out.note = "order " + std::to_string(j) + ": " + order.note;
    }
    if (out.pass) out.verdict = order.verdict;
  }
  return out;
}

template <class T>
MatrixCheck consecutive_certificate(const Matrix<T>& x, int k, bool strict_top) {
  require_order(k, x.rows(), x.cols());
  const int n = dim(x.rows()), m = dim(x.cols());
  std::vector<MinorPair> pairs;
  for (int r = 1; r <= k; ++r)
    for (int i = 1; i + r - 1 <= n; ++i)
      for (int j = 1; j + r - 1 <= m; ++j)
        pairs.push_back({IndexTuple::consecutive(n, i, r), IndexTuple::consecutive(m, j, r),
                         r == k && !strict_top ? Strictness::NonStrictAllowed : Strictness::Strict});
  MatrixCheck out = judge(evaluate(x, pairs, false), 1);
  out.path = DecisionPath::ConsecutiveMinors;
  return out;
}

template <class T>
MatrixCheck initial_minor_certificate(const Matrix<T>& x, bool strict_top) {
  const int n = dim(x.rows()), m = dim(x.cols());
  const int p = std::min(n, m);
  require_order(p, x.rows(), x.cols());
  const IndexTuple last_rows = n >= m ? IndexTuple::consecutive(n, n - m + 1, m) : IndexTuple::consecutive(n, 1, n);
  const IndexTuple last_cols = n >= m ? IndexTuple::consecutive(m, 1, m) : IndexTuple::consecutive(m, m - n + 1, n);
  std::vector<MinorPair> pairs;
  std::set<std::pair<IndexTuple, IndexTuple>> seen;
  auto add = [&](IndexTuple rows, IndexTuple cols) {
    if (!seen.insert({rows, cols}).second) return;
    const bool top = !strict_top && rows == last_rows && cols == last_cols;
    pairs.push_back({std::move(rows), std::move(cols), top ? Strictness::NonStrictAllowed : Strictness::Strict});
  };
  for (int j = 1; j <= p; ++j) {
    for (int t = 1; t + j - 1 <= n; ++t) add(IndexTuple::consecutive(n, t, j), IndexTuple::consecutive(m, 1, j));
    for (int t = 1; t + j - 1 <= m; ++t) add(IndexTuple::consecutive(n, 1, j), IndexTuple::consecutive(m, t, j));
  }
  MatrixCheck out = judge(evaluate(x, pairs, false), 1);
  out.path = DecisionPath::InitialMinors;
  return out;
}

template <class T>
PenaTransform<T> pena_transform(const Matrix<T>& x) {
  const std::size_t n = x.rows(), m = x.cols();
  if (m == 0 || n <= m)
    throw Error(ErrorCode::PreconditionViolated, "transform needs n > m >= 1, got " + x.shape());
  Matrix<T> head(m, m), tail(n - m, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) (i < m ? head(i, j) : tail(i - m, j)) = x(i, j);
  PenaTransform<T> out;
  out.head_det = det(head);
  const Sign s = sign_of(out.head_det);
  if (s == Sign::Zero || s == Sign::Inconclusive)
    throw Error(ErrorCode::SingularLeadingBlock, "leading m x m block is singular");
  out.head_sign = static_cast<int>(s);
  out.k = Matrix<T>(m, m);
  for (std::size_t j = 0; j < m; ++j) out.k(m - 1 - j, j) = j % 2 == 0 ? T(1) : T(-1);
  out.c = tail * inverse(head) * out.k;
  return out;
}

IndexTuple pena_row_tuple(int n, int m, const IndexTuple& alpha, const IndexTuple& beta) {
  if (n <= m || alpha.ambient() != n - m || beta.ambient() != m || alpha.size() != beta.size() || alpha.size() == 0)
    throw Error(ErrorCode::BadIndices, "minor " + alpha.to_string() + " x " + beta.to_string() + " does not fit " +
                                           std::to_string(n - m) + "x" + std::to_string(m));
  const int r = alpha.size();
  const IndexTuple rest = beta.complement();
  std::vector<int> gamma(static_cast<std::size_t>(m));
  for (int j = 1; j <= m - r; ++j) gamma[static_cast<std::size_t>(m - r - j)] = m + 1 - rest[j - 1];
  for (int i = 1; i <= r; ++i) gamma[static_cast<std::size_t>(m - r + i - 1)] = m + alpha[i - 1];
  return IndexTuple(n, std::move(gamma));
}

MinorFamily reduced_family(int n, int m, int k, bool strict) {
  if (k < 1 || m < k || n <= m)
    throw Error(ErrorCode::PreconditionViolated, "reduced family needs n > m >= k >= 1");
  if (!strict && !(k == m ? n >= 2 * m : 2 * k <= m))
    throw Error(ErrorCode::PreconditionViolated,
                k == m ? "non-strict family with k = m needs n >= 2m" : "non-strict family with k < m needs 2k <= m");
  MinorFamily fam{n, m, k, {}};
  const auto alphas = reduced_tuples(n, k);
  const auto betas = reduced_tuples(m, k);
  auto tail = [k](const IndexTuple& t) { return t.is_consecutive() && t[0] >= k + 1; };
  for (const auto& a : alphas)
    for (const auto& b : betas) {
      bool loose = false;
      if (!strict) loose = k == m ? tail(a) : tail(a) && tail(b);
      fam.pairs.push_back({a, b, loose ? Strictness::NonStrictAllowed : Strictness::Strict});
    }
  return fam;
}

template <class T>
MatrixCheck reduced_check(const Matrix<T>& x, int k, bool strict) {
  const MinorFamily fam = reduced_family(dim(x.rows()), dim(x.cols()), k, strict);
  MatrixCheck out = judge(evaluate(x, fam.pairs, false), 0);
  out.path = DecisionPath::ReducedFamily;
  return out;
}

template <class T>
bool k_columns_independent(const Matrix<T>& x, int k) {
  require_order(k, x.rows(), x.cols());
  for (const auto& cols : lex_tuples(dim(x.cols()), k))
    if (rank(select_columns(x, cols)) != k) return false;
  return true;
}

template <class T>
VariationCheck vb_matrix_check(const Matrix<T>& x, int k) {
  const int n = dim(x.rows()), m = dim(x.cols());
  if (k < 1 || m < k || n <= m) throw Error(ErrorCode::PreconditionViolated, "needs n > m >= k >= 1");
  VariationCheck out;
  out.rank = rank(x);

  const MatrixCheck strict = sign_consistent(x, k, true);
  out.strict_vb = decision_of(strict);

  if (out.rank == k && k < m) {
    out.path = DecisionPath::RankDeficientColumnSigns;
    const Matrix<T> c = compound(x, k);
    const auto row_sets = lex_tuples(n, k);
    const auto col_sets = lex_tuples(m, k);
    out.vb = Decision::Holds;
    for (std::size_t j = 0; j < col_sets.size(); ++j) {
      std::vector<Labeled<T>> column;
      for (std::size_t i = 0; i < row_sets.size(); ++i) column.push_back({row_sets[i], col_sets[j], c(i, j), true});
      const MatrixCheck col = judge(column, 0);
      if (col.pass) continue;
      if (col.witness) {
        out.vb = Decision::Fails;
        out.witness = col.witness;
        out.note = "column " + col_sets[j].to_string() + " of the compound has both signs";
        break;
      }
      out.vb = Decision::Undecidable;
      out.note = "column " + col_sets[j].to_string() + " has a minor within tolerance of zero";
    }
  } else if ((k < out.rank && k_columns_independent(x, k)) || (k == m && out.rank == m)) {
    out.path = k == m ? DecisionPath::FullRankSignConsistency : DecisionPath::IndependentColumnsSignConsistency;
    const MatrixCheck sc = sign_consistent(x, k, false);
    out.vb = decision_of(sc);
    out.witness = sc.witness;
    out.note = sc.note;
  } else {
    out.note = "rank hypothesis not met";
  }

  if (out.strict_vb == Decision::Holds && out.vb != Decision::Holds) {
    out.vb = Decision::Holds;
    out.path = DecisionPath::StrictSignConsistency;
    out.note.clear();
  }
  if (out.strict_vb == Decision::Fails && !out.witness) out.witness = strict.witness;
  return out;
}

template <class T>
DiminishingCheck vd_matrix_check(const Matrix<T>& x, int k) {
  const int n = dim(x.rows()), m = dim(x.cols());
  if (k < 1 || m < k || n < m) throw Error(ErrorCode::PreconditionViolated, "needs n >= m >= k >= 1");
  DiminishingCheck out;
  const MatrixCheck tp = k_positive(x, k, false);
  out.ovd = decision_of(tp);
  if (out.ovd == Decision::Holds) {
    out.vd = Decision::Holds;
    out.path = DecisionPath::TotalPositivity;
    return out;
  }
  if (rank(x) > k && k_columns_independent(x, k)) {
    out.path = DecisionPath::SignRegularIndependentColumns;
    const MatrixCheck sr = sign_regular(x, k, false);
    out.vd = decision_of(sr);
    out.note = sr.note;
    return out;
  }
  if (n > m) {
    out.path = DecisionPath::PerOrderVariationBound;
    bool all = true;
    for (int j = 1; j <= k; ++j) {
      const Decision d = vb_matrix_check(x, j).vb;
      out.per_order.push_back(d);
      if (d == Decision::Fails) {
        out.vd = Decision::Fails;
        out.note = "variation bound fails at order " + std::to_string(j);
        return out;
      }
      all = all && d == Decision::Holds;
    }
    out.vd = all ? Decision::Holds : Decision::Undecidable;
    if (!all) out.note = "rank hypothesis not met";
    return out;
  }
  out.path = DecisionPath::Undecidable;
  out.note = "rank hypothesis not met";
  return out;
}

#define VBCERT_INSTANTIATE(T)                                                   \
  template MatrixCheck sign_consistent<T>(const Matrix<T>&, int, bool);         \
  template MatrixCheck sign_regular<T>(const Matrix<T>&, int, bool);            \
  template MatrixCheck k_positive<T>(const Matrix<T>&, int, bool);              \
  template MatrixCheck consecutive_certificate<T>(const Matrix<T>&, int, bool); \
  template MatrixCheck initial_minor_certificate<T>(const Matrix<T>&, bool);    \
  template PenaTransform<T> pena_transform<T>(const Matrix<T>&);                \
  template MatrixCheck reduced_check<T>(const Matrix<T>&, int, bool);           \
  template bool k_columns_independent<T>(const Matrix<T>&, int);                \
  template VariationCheck vb_matrix_check<T>(const Matrix<T>&, int);            \
  template DiminishingCheck vd_matrix_check<T>(const Matrix<T>&, int);

VBCERT_INSTANTIATE(Rational)
VBCERT_INSTANTIATE(double)

#undef VBCERT_INSTANTIATE

}  // namespace vbcert
