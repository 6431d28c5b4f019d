#include "cactus/symcomb.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cactus {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int Partition::count(int l) const {
  return static_cast<int>(std::count(parts.begin(), parts.end(), l));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ',';
    os << parts[i];
  }
  os << ']';
  return os.str();
}

Partition Partition::parse(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("bad partition: " + s);
  std::vector<int> parts;
  std::string body = s.substr(1, s.size() - 2);
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) parts.push_back(std::stoi(tok));
  }
  return Partition(std::move(parts));
}

Permutation::Permutation(std::vector<int> imgs) : images(std::move(imgs)) {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 1 || v > static_cast<int>(images.size()) || seen[static_cast<size_t>(v - 1)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycle_type(const Partition& mu) {
  int n = mu.size();
  std::vector<int> im(static_cast<size_t>(n));
  int base = 0;
  for (int l : mu.parts) {
    for (int j = 0; j < l; ++j) im[static_cast<size_t>(base + j)] = base + (j + 1) % l + 1;
    base += l;
  }
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int a, int b) {
  Permutation p = identity(n);
  std::swap(p.images[static_cast<size_t>(a - 1)], p.images[static_cast<size_t>(b - 1)]);
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (n() != other.n()) throw std::invalid_argument("size mismatch");
  std::vector<int> im(images.size());
  for (int i = 1; i <= n(); ++i) im[static_cast<size_t>(i - 1)] = (*this)(other(i));
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images.size());
  for (int i = 1; i <= n(); ++i) im[static_cast<size_t>((*this)(i)-1)] = i;
  return Permutation(std::move(im));
}

namespace {

void gen_partitions(int n, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> cur;
  gen_partitions(n, n == 0 ? 1 : n, cur, out);
  return out;
}

Integer partition_count(int n) {
  // p(n, k): partitions of n with parts <= k.
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  static std::vector<std::vector<Integer>> table;  // table[n][k]
  int old = static_cast<int>(table.size());
  if (n + 1 > old) {
    table.resize(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
      auto& row = table[static_cast<size_t>(i)];
      if (static_cast<int>(row.size()) == i + 1) continue;
      row.assign(static_cast<size_t>(i + 1), 0);
      for (int k = 0; k <= i; ++k) {
        if (i == 0) { row[static_cast<size_t>(k)] = 1; continue; }
        if (k == 0) { row[static_cast<size_t>(k)] = 0; continue; }
        Integer v = row[static_cast<size_t>(k - 1)];
        if (i - k >= 0) v += table[static_cast<size_t>(i - k)][static_cast<size_t>(std::min(i - k, k))];
        row[static_cast<size_t>(k)] = v;
      }
    }
  }
  return table[static_cast<size_t>(n)][static_cast<size_t>(n)];
}

Partition cycle_type(const Permutation& p) {
  int n = p.n();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<int> lens;
  for (int i = 1; i <= n; ++i) {
    if (seen[static_cast<size_t>(i - 1)]) continue;
    int len = 0, j = i;
    do {
      seen[static_cast<size_t>(j - 1)] = true;
      j = p(j);
      ++len;
    } while (j != i);
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return Partition(std::move(lens));
}

Integer class_size(const Partition& mu) {
  int n = mu.size();
  Integer z = 1;
  int run = 0;
  for (size_t i = 0; i < mu.parts.size(); ++i) {
    ++run;
    Integer l = mu.parts[i];
    z *= l;
    if (i + 1 == mu.parts.size() || mu.parts[i + 1] != mu.parts[i]) {
      z *= factorial(run);
      run = 0;
    }
  }
  return factorial(n) / z;
}

namespace {

// Murnaghan-Nakayama on beta numbers: lam as the set {lam_i + (r-1-i)}.
long long mn_character(const std::vector<int>& lam, const std::vector<int>& mu,
                       size_t mu_pos,
                       std::map<std::pair<std::vector<int>, std::vector<int>>,
                                long long>& memo) {
  if (mu_pos == mu.size()) return 1;  // lam must be empty too
  std::vector<int> mu_rest(mu.begin() + static_cast<long>(mu_pos) + 1, mu.end());
  auto key = std::make_pair(lam, std::vector<int>(mu.begin() + static_cast<long>(mu_pos), mu.end()));
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  int l = mu[mu_pos];
  int r = static_cast<int>(lam.size());
  std::vector<int> beta(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) beta[static_cast<size_t>(i)] = lam[static_cast<size_t>(i)] + (r - 1 - i);

  long long total = 0;
  for (int j = 0; j < r; ++j) {
    int b = beta[static_cast<size_t>(j)] - l;
    if (b < 0) continue;
    if (std::find(beta.begin(), beta.end(), b) != beta.end()) continue;
    // height = number of beta entries strictly between b and beta[j]
    int crossed = 0;
    for (int x : beta)
      if (x > b && x < beta[static_cast<size_t>(j)]) ++crossed;
    std::vector<int> nb = beta;
    nb[static_cast<size_t>(j)] = b;
    std::sort(nb.rbegin(), nb.rend());
    // back to partition
    int nr = static_cast<int>(nb.size());
    std::vector<int> nl;
    for (int i = 0; i < nr; ++i) {
      int part = nb[static_cast<size_t>(i)] - (nr - 1 - i);
      if (part > 0) nl.push_back(part);
    }
    long long sub = mn_character(nl, mu, mu_pos + 1, memo);
    total += (crossed % 2 ? -sub : sub);
  }
  memo[key] = total;
  return total;
}

}  // namespace

long long irreducible_character(const Partition& lam, const Partition& mu) {
  if (lam.size() != mu.size())
    throw std::invalid_argument("irreducible_character: size mismatch");
  static std::mutex m;
  static std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo;
  std::lock_guard<std::mutex> lock(m);
  return mn_character(lam.parts, mu.parts, 0, memo);
}

Integer irreducible_dimension(const Partition& lam) {
  int n = lam.size();
  Integer hooks = 1;
  int r = lam.length();
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < lam.part(i); ++j) {
      int arm = lam.part(i) - j - 1;
      int leg = 0;
      for (int k = i + 1; k < r; ++k)
        if (lam.part(k) > j) ++leg;
      hooks *= arm + leg + 1;
    }
  }
  return factorial(n) / hooks;
}

Partition pad_partition(const Partition& lam, int n) {
  int head = n - lam.size();
  if (head < 0 || (lam.length() > 0 && head < lam.part(0)))
    throw std::invalid_argument("padding invalid: n < |lam| + lam_1");
  std::vector<int> parts;
  if (head > 0) parts.push_back(head);
  else if (lam.length() > 0)
    throw std::invalid_argument("padding invalid: zero head with nonempty tail");
  parts.insert(parts.end(), lam.parts.begin(), lam.parts.end());
  return Partition(std::move(parts));
}

Partition unpad_partition(const Partition& mu) {
  if (mu.length() == 0) return mu;
  return Partition(std::vector<int>(mu.parts.begin() + 1, mu.parts.end()));
}

Partition power_cycle_type(const Partition& mu, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<int> parts;
  for (int l : mu.parts) {
    int g = std::gcd(l, k);
    for (int j = 0; j < g; ++j) parts.push_back(l / g);
  }
  std::sort(parts.rbegin(), parts.rend());
  return Partition(std::move(parts));
}

const Rational& ClassFunction::at(const Partition& mu) const {
  auto it = values.find(mu);
  if (it == values.end()) throw std::invalid_argument("no value for class " + mu.to_string());
  return it->second;
}

ClassFunction irreducible_class_function(int n, const Partition& lam) {
  ClassFunction f(n);
  for (const Partition& mu : partitions(n))
    f.values[mu] = Rational(static_cast<long>(irreducible_character(lam, mu)));
  return f;
}

Rational inner_product(const ClassFunction& f, const ClassFunction& g) {
  if (f.n != g.n) throw std::invalid_argument("inner_product: size mismatch");
  Rational acc = 0;
  for (const auto& [mu, fv] : f.values) acc += class_size(mu) * fv * g.at(mu);
  return acc / Rational(factorial(f.n));
}

ClassFunction exterior_power_character(const ClassFunction& chi, int i) {
  ClassFunction out(chi.n);
  for (const auto& [mu, _] : chi.values) {
    std::vector<Rational> p(static_cast<size_t>(i + 1));
    for (int k = 1; k <= i; ++k) p[static_cast<size_t>(k)] = chi.at(power_cycle_type(mu, k));
    std::vector<Rational> e(static_cast<size_t>(i + 1));
    e[0] = 1;
    for (int m = 1; m <= i; ++m) {
      Rational s = 0;
      for (int k = 1; k <= m; ++k) {
        Rational t = e[static_cast<size_t>(m - k)] * p[static_cast<size_t>(k)];
        if (k % 2 == 0) s -= t; else s += t;
      }
      e[static_cast<size_t>(m)] = s / m;
    }
    out.values[mu] = e[static_cast<size_t>(i)];
  }
  return out;
}

namespace {

void trim_key(std::vector<int>& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

}  // namespace

int CharacterPolynomial::degree() const {
  int d = 0;
  for (const auto& [e, _] : coefficients) {
    int s = 0;
    for (size_t l = 0; l < e.size(); ++l) s += static_cast<int>(l + 1) * e[l];
    d = std::max(d, s);
  }
  return d;
}

CharacterPolynomial CharacterPolynomial::constant(const Rational& c) {
  CharacterPolynomial p;
  if (c != 0) p.coefficients[{}] = c;
  return p;
}

CharacterPolynomial CharacterPolynomial::variable(int l) {
  CharacterPolynomial p;
  std::vector<int> e(static_cast<size_t>(l), 0);
  e[static_cast<size_t>(l - 1)] = 1;
  p.coefficients[e] = 1;
  return p;
}

CharacterPolynomial CharacterPolynomial::binomial_in(int l, int k) {
  // binom(X,k) = X(X-1)...(X-k+1)/k!
  CharacterPolynomial p = constant(1);
  for (int j = 0; j < k; ++j)
    p = p * (variable(l) - constant(Rational(j)));
  return p * Rational(Integer(1), factorial(k));
}

CharacterPolynomial CharacterPolynomial::operator+(const CharacterPolynomial& o) const {
  CharacterPolynomial r = *this;
  for (const auto& [e, c] : o.coefficients) {
    auto& v = r.coefficients[e];
    v += c;
    if (v == 0) r.coefficients.erase(e);
  }
  return r;
}

CharacterPolynomial CharacterPolynomial::operator-(const CharacterPolynomial& o) const {
  return *this + o * Rational(-1);
}

CharacterPolynomial CharacterPolynomial::operator*(const CharacterPolynomial& o) const {
  CharacterPolynomial r;
  for (const auto& [e1, c1] : coefficients) {
    for (const auto& [e2, c2] : o.coefficients) {
      std::vector<int> e(std::max(e1.size(), e2.size()), 0);
      for (size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
      for (size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
      trim_key(e);
      auto& v = r.coefficients[e];
      v += c1 * c2;
      if (v == 0) r.coefficients.erase(e);
    }
  }
  return r;
}

CharacterPolynomial CharacterPolynomial::operator*(const Rational& c) const {
  CharacterPolynomial r;
  if (c == 0) return r;
  for (const auto& [e, v] : coefficients) r.coefficients[e] = v * c;
  return r;
}

Rational CharacterPolynomial::eval(const Partition& mu) const {
  Rational acc = 0;
  for (const auto& [e, c] : coefficients) {
    Rational term = c;
    for (size_t l = 0; l < e.size(); ++l) {
      if (e[l] == 0) continue;
      Rational x = mu.count(static_cast<int>(l + 1));
      for (int j = 0; j < e[l]; ++j) term *= x;
    }
    acc += term;
  }
  return acc;
}

ClassFunction CharacterPolynomial::eval_on(int n) const {
  ClassFunction f(n);
  for (const Partition& mu : partitions(n)) f.values[mu] = eval(mu);
  return f;
}

std::string CharacterPolynomial::to_string() const {
  if (coefficients.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coefficients) {
    if (!first) os << " + ";
    first = false;
    os << cactus::to_string(c);
    for (size_t l = 0; l < e.size(); ++l) {
      if (e[l] == 0) continue;
      os << "*X" << (l + 1);
      if (e[l] > 1) os << '^' << e[l];
    }
  }
  return os.str();
}

int MultiplicityTable::weight() const {
  int w = 0;
  for (const auto& [lam, m] : mult)
    if (m > 0) w = std::max(w, lam.size());
  return w;
}

Integer MultiplicityTable::total_dimension() const {
  Integer d = 0;
  for (const auto& [lam, m] : mult)
    if (m > 0) d += Integer(static_cast<long>(m)) * irreducible_dimension(pad_partition(lam, n));
  return d;
}

}  // namespace cactus
