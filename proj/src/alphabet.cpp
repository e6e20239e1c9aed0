#include "cfdim/alphabet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "cfdim/errors.hpp"

namespace cfdim {

namespace {

constexpr Digit kMaxDigit = Digit{1} << 62;
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

std::optional<Digit> poly_value(const PolynomialSequence& p, std::uint64_t n) {
  __int128 acc = 0;
  const __int128 limit = static_cast<__int128>(kMaxDigit);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    acc = acc * static_cast<__int128>(n) + *it;
    if (acc > limit * 4 || acc < -limit * 4) return std::nullopt;
  }
  if (acc > limit) return std::nullopt;
  if (acc <= 0) return Digit{0};
  return static_cast<Digit>(acc);
}

std::optional<Digit> geometric_value(const QuasiGeometric& q, std::uint64_t n) {
  __int128 v = q.base;
  for (std::uint64_t k = 0; k < n; ++k) {
    v *= q.ratio;
    if (v > static_cast<__int128>(kMaxDigit)) return std::nullopt;
  }
  return static_cast<Digit>(v);
}

// Walks a component's sequence in increasing order.
class Cursor {
 public:
  explicit Cursor(const Component& c) : c_(c) {
    std::visit([this](const auto& x) { init(x); }, c_);
  }

  // Current value, or nullopt once exhausted (or past the representable range).
  std::optional<Digit> value() const { return cur_; }
  std::uint64_t index() const { return idx_; }
  bool bounded_end_reached() const { return !cur_ && finite_; }

  void advance() {
    std::visit([this](const auto& x) { step(x); }, c_);
  }

 private:
  void init(const FiniteSet& f) {
    finite_ = true;
    idx_ = 0;
    cur_ = f.elements.empty() ? std::nullopt : std::optional<Digit>(f.elements[0]);
  }
  void step(const FiniteSet& f) {
    ++idx_;
    cur_ = idx_ < f.elements.size() ? std::optional<Digit>(f.elements[idx_]) : std::nullopt;
  }
  void init(const IntegerRange& r) {
    finite_ = r.hi.has_value();
    idx_ = r.lo;
    cur_ = (r.hi && r.lo > *r.hi) ? std::nullopt : std::optional<Digit>(r.lo);
  }
  void step(const IntegerRange& r) {
    ++idx_;
    cur_ = ((r.hi && idx_ > *r.hi) || idx_ > kMaxDigit) ? std::nullopt : std::optional<Digit>(idx_);
  }
  void init(const PolynomialSequence& p) {
    finite_ = p.to.has_value();
    idx_ = p.from;
    cur_ = (p.to && p.from > *p.to) ? std::nullopt : poly_value(p, idx_);
  }
  void step(const PolynomialSequence& p) {
    ++idx_;
    cur_ = (p.to && idx_ > *p.to) ? std::nullopt : poly_value(p, idx_);
  }
  void init(const QuasiGeometric& q) {
    finite_ = q.to.has_value();
    idx_ = q.from;
    if (q.kind == QuasiGeometric::Kind::fibonacci) {
      // Integer recurrence from F_0 = 0, F_1 = 1.
      Digit a = 0, b = 1;
      for (std::uint64_t k = 0; k < q.from; ++k) {
        Digit c = a + b;
        a = b;
        b = c;
        if (a > kMaxDigit) break;
      }
      fa_ = a;
      fb_ = b;
      cur_ = a > kMaxDigit ? std::nullopt : std::optional<Digit>(a);
    } else {
      cur_ = geometric_value(q, idx_);
    }
    if (q.to && q.from > *q.to) cur_.reset();
  }
  void step(const QuasiGeometric& q) {
    ++idx_;
    if (q.kind == QuasiGeometric::Kind::fibonacci) {
      Digit c = fa_ + fb_;
      fa_ = fb_;
      fb_ = c;
      cur_ = fa_ > kMaxDigit ? std::nullopt : std::optional<Digit>(fa_);
    } else {
      cur_ = (cur_ && *cur_ <= kMaxDigit / q.ratio) ? std::optional<Digit>(*cur_ * q.ratio)
                                                      : std::nullopt;
    }
    if (q.to && idx_ > *q.to) cur_.reset();
  }

  const Component& c_;
  std::uint64_t idx_ = 0;
  std::optional<Digit> cur_;
  bool finite_ = true;
  Digit fa_ = 0, fb_ = 1;
};

bool component_finite(const Component& c) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FiniteSet>) return true;
        else if constexpr (std::is_same_v<T, IntegerRange>) return x.hi.has_value();
        else return x.to.has_value();
      },
      c);
}

double component_abscissa(const Component& c) {
  if (component_finite(c)) return -std::numeric_limits<double>::infinity();
  if (std::holds_alternative<IntegerRange>(c)) return 0.5;
  if (const auto* p = std::get_if<PolynomialSequence>(&c))
    return 1.0 / (2.0 * static_cast<double>(p->coeffs.size() - 1));
  return 0.0;
}

// Cauchy bound on the roots of the sequence polynomial, used to keep the
// 1/n expansion of a polynomial tail well inside its disc of convergence.
double root_bound(const std::vector<std::int64_t>& c) {
  const double lead = static_cast<double>(c.back());
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k)
    m = std::max(m, std::abs(static_cast<double>(c[k])) / lead);
  return 1.0 + m;
}

TailDescriptor make_tail(const Component& c, std::uint64_t start) {
  TailDescriptor t;
  t.start_index = start;
  if (const auto* r = std::get_if<IntegerRange>(&c)) {
    (void)r;
    t.decay = TailDescriptor::Decay::polynomial;
    t.degree = 1;
    t.leading = 1.0;
    t.poly_coeffs = {0.0, 1.0};
  } else if (const auto* p = std::get_if<PolynomialSequence>(&c)) {
    t.decay = TailDescriptor::Decay::polynomial;
    t.degree = static_cast<int>(p->coeffs.size()) - 1;
    t.leading = static_cast<double>(p->coeffs.back());
    for (auto v : p->coeffs) t.poly_coeffs.push_back(static_cast<double>(v));
  } else {
    const auto& q = std::get<QuasiGeometric>(c);
    t.decay = TailDescriptor::Decay::geometric;
    t.ratio = q.lambda();
    t.binet_a = q.a();
    t.binet_lambda = q.lambda();
    t.binet_b = q.b();
    t.binet_rho = q.rho();
  }
  return t;
}

// Lowest value at which a component's closed-form tail is accurate.
double closure_floor(const Component& c) {
  if (const auto* p = std::get_if<PolynomialSequence>(&c)) {
    if (p->coeffs.size() > 2) {
      const double rb = 8.0 * root_bound(p->coeffs);
      // value of the polynomial at index rb, roughly
      return static_cast<double>(p->coeffs.back()) * std::pow(rb, static_cast<double>(p->coeffs.size() - 1));
    }
  }
  if (std::holds_alternative<QuasiGeometric>(c)) return 1e4;
  return 0.0;
}

bool tail_contains(const Component& c, std::uint64_t start, Digit v) {
  if (const auto* r = std::get_if<IntegerRange>(&c)) return v >= start && (!r->hi || v <= *r->hi);
  if (const auto* p = std::get_if<PolynomialSequence>(&c)) {
    // Strictly increasing, so bisect on the index; overflow counts as too large.
    std::uint64_t lo = start, hi = p->to ? *p->to : start + v;
    if (lo > hi) return false;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      const auto val = poly_value(*p, mid);
      if (val && *val < v) lo = mid + 1; else hi = mid;
    }
    const auto val = poly_value(*p, lo);
    return val && *val == v;
  }
  // Quasi-geometric tails start at a small index and grow exponentially.
  Cursor cur(c);
  while (cur.value() && cur.index() < start) cur.advance();
  while (cur.value() && *cur.value() < v) cur.advance();
  return cur.value() && *cur.value() == v;
}

std::uint64_t parse_uint(const std::string& tok, const std::string& spec) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a non-negative integer, got '" + tok + "' in '" + spec + "'");
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError("integer out of range: '" + tok + "'");
  }
}

std::int64_t parse_int(const std::string& tok, const std::string& spec) {
  std::string body = tok;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  auto v = parse_uint(body, spec);
  if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw ParseError("integer out of range: '" + tok + "'");
  return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Parses ":geq:N" or ":leq:N:from:M" suffix tokens.
void parse_bounds(const std::vector<std::string>& tok, std::size_t at, const std::string& spec,
                  std::uint64_t& from, std::optional<std::uint64_t>& to) {
  if (tok.size() == at + 2 && tok[at] == "geq") {
    from = parse_uint(tok[at + 1], spec);
    to.reset();
    return;
  }
  if (tok.size() == at + 4 && tok[at] == "leq" && tok[at + 2] == "from") {
    to = parse_uint(tok[at + 1], spec);
    from = parse_uint(tok[at + 3], spec);
    if (*to < from) throw ParseError("empty index range in '" + spec + "'");
    return;
  }
  throw ParseError("expected ':geq:N' or ':leq:N:from:M' in '" + spec + "'");
}

void validate_polynomial(const PolynomialSequence& p, const std::string& spec) {
  if (p.coeffs.size() < 2) throw ParseError("poly: degree must be at least 1 in '" + spec + "'");
  if (p.coeffs.back() <= 0) throw ParseError("poly: leading coefficient must be positive");
  // Differences s_{n+1} - s_n are eventually positive; check every n up to
  // where the difference polynomial can no longer change sign.
  const std::uint64_t span = static_cast<std::uint64_t>(root_bound(p.coeffs)) + 4;
  std::uint64_t last = p.to ? std::min<std::uint64_t>(*p.to, p.from + span) : p.from + span;
  auto prev = poly_value(p, p.from);
  if (!prev || *prev == 0) throw ParseError("poly: first term must be a positive integer");
  for (std::uint64_t n = p.from + 1; n <= last; ++n) {
    auto v = poly_value(p, n);
    if (!v) break;
    if (*v <= *prev) throw ParseError("poly: sequence is not strictly increasing in '" + spec + "'");
    prev = v;
  }
}

Component parse_component(const std::string& raw) {
  const std::string spec = trim(raw);
  auto tok = split_on(spec, ':');
  if (tok.empty()) throw ParseError("empty alphabet component");
  const std::string& head = tok[0];
  if (head == "set") {
    FiniteSet f;
    if (tok.size() == 2 && !trim(tok[1]).empty()) {
      for (const auto& e : split_on(tok[1], ',')) {
        auto v = parse_uint(trim(e), spec);
        if (v == 0) throw ParseError("set elements must be positive");
        f.elements.push_back(v);
      }
    } else if (tok.size() > 2) {
      throw ParseError("malformed set: '" + spec + "'");
    }
    std::sort(f.elements.begin(), f.elements.end());
    if (std::adjacent_find(f.elements.begin(), f.elements.end()) != f.elements.end())
      throw ParseError("duplicate element in '" + spec + "'");
    return f;
  }
  if (head == "empty" && tok.size() == 1) return FiniteSet{};
  if (head == "leq" || head == "geq") {
    if (tok.size() != 2) throw ParseError("malformed range: '" + spec + "'");
    auto n = parse_uint(tok[1], spec);
    if (n == 0) throw ParseError("range bound must be positive");
    if (n > kMaxDigit) throw ParseError("range bound too large");
    return head == "leq" ? IntegerRange{1, n} : IntegerRange{n, std::nullopt};
  }
  if (head == "poly") {
    if (tok.size() < 4) throw ParseError("malformed poly: '" + spec + "'");
    PolynomialSequence p;
    auto cs = split_on(tok[1], ',');
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) p.coeffs.push_back(parse_int(trim(*it), spec));
    while (p.coeffs.size() > 1 && p.coeffs.back() == 0) p.coeffs.pop_back();
    parse_bounds(tok, 2, spec, p.from, p.to);
    validate_polynomial(p, spec);
    return p;
  }
  if (head == "fib") {
    QuasiGeometric q;
    q.kind = QuasiGeometric::Kind::fibonacci;
    parse_bounds(tok, 1, spec, q.from, q.to);
    if (q.from < 2)
      throw ParseError("fib: start index must be at least 2 (F_0 = 0 and F_1 = F_2 = 1)");
    return q;
  }
  if (head == "geom") {
    if (tok.size() < 4) throw ParseError("malformed geom: '" + spec + "'");
    auto ab = split_on(tok[1], ',');
    if (ab.size() != 2) throw ParseError("geom needs 'a,ratio' in '" + spec + "'");
    QuasiGeometric q;
    q.kind = QuasiGeometric::Kind::geometric;
    q.base = parse_uint(trim(ab[0]), spec);
    q.ratio = parse_uint(trim(ab[1]), spec);
    if (q.base < 1) throw ParseError("geom: a must be positive");
    if (q.ratio < 2) throw ParseError("geom: ratio must be at least 2");
    parse_bounds(tok, 2, spec, q.from, q.to);
    return q;
  }
  throw ParseError("unknown alphabet form '" + head + "' in '" + spec + "'");
}

}  // namespace

double QuasiGeometric::a() const {
  return kind == Kind::fibonacci ? 1.0 / std::sqrt(5.0) : static_cast<double>(base);
}
double QuasiGeometric::lambda() const {
  return kind == Kind::fibonacci ? kPhi : static_cast<double>(ratio);
}
double QuasiGeometric::b() const { return kind == Kind::fibonacci ? -1.0 : 0.0; }
double QuasiGeometric::rho() const { return kind == Kind::fibonacci ? -1.0 / (kPhi * kPhi) : 0.0; }

double TailDescriptor::value_at(std::uint64_t n) const {
  const double x = static_cast<double>(n);
  if (decay == Decay::polynomial) {
    double acc = 0.0;
    for (auto it = poly_coeffs.rbegin(); it != poly_coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  return binet_a * std::pow(binet_lambda, x) * (1.0 + binet_b * std::pow(binet_rho, x));
}

Alphabet::Alphabet(std::vector<Component> parts, std::string text)
    : parts_(std::move(parts)), text_(std::move(text)) {
  // Disjointness on a prefix of each component.
  std::set<Digit> seen;
  for (const auto& c : parts_) {
    Cursor cur(c);
    for (int k = 0; k < 4096 && cur.value(); ++k, cur.advance())
      if (!seen.insert(*cur.value()).second)
        throw ParseError("alphabet components overlap at " + std::to_string(*cur.value()));
  }
}

bool Alphabet::is_finite() const {
  return std::all_of(parts_.begin(), parts_.end(), component_finite);
}

bool Alphabet::is_empty() const {
  for (const auto& c : parts_)
    if (Cursor(c).value()) return false;
  return true;
}

double Alphabet::convergence_abscissa() const {
  double a = -std::numeric_limits<double>::infinity();
  for (const auto& c : parts_) a = std::max(a, component_abscissa(c));
  return a;
}

Enumeration Alphabet::split(double min_tail_value, std::size_t max_explicit) const {
  Enumeration out;
  std::vector<std::pair<std::size_t, std::uint64_t>> tail_owner;
  for (std::size_t ci = 0; ci < parts_.size(); ++ci) {
    const auto& c = parts_[ci];
    const bool finite = component_finite(c);
    const double floor = std::max(min_tail_value, closure_floor(c));
    Cursor cur(c);
    std::size_t count = 0;
    while (cur.value()) {
      const Digit v = *cur.value();
      if (!finite && (static_cast<double>(v) >= floor || count >= max_explicit)) break;
      out.explicit_elements.push_back(v);
      ++count;
      cur.advance();
    }
    if (!finite) {
      out.tails.push_back(make_tail(c, cur.index()));
      tail_owner.emplace_back(ci, cur.index());
    }
  }
  std::sort(out.explicit_elements.begin(), out.explicit_elements.end());
  if (std::adjacent_find(out.explicit_elements.begin(), out.explicit_elements.end()) !=
      out.explicit_elements.end())
    throw ParseError("alphabet components overlap");
  for (const auto& [ci, start] : tail_owner) {
    Cursor first(parts_[ci]);
    while (first.value() && first.index() < start) first.advance();
    if (!first.value()) continue;
    const auto from = std::lower_bound(out.explicit_elements.begin(), out.explicit_elements.end(),
                                       *first.value());
    for (auto it = from; it != out.explicit_elements.end(); ++it)
      if (tail_contains(parts_[ci], start, *it))
        throw ParseError("alphabet components overlap at " + std::to_string(*it));
  }
  return out;
}

Alphabet parse_alphabet(const std::string& spec) {
  const std::string body = trim(spec);
  if (body.empty()) throw ParseError("empty alphabet string");
  std::vector<Component> parts;
  for (const auto& piece : split_on(body, '|')) {
    if (trim(piece).empty()) throw ParseError("empty union member in '" + spec + "'");
    parts.push_back(parse_component(piece));
  }
  return Alphabet(std::move(parts), body);
}

Enumeration enumerate(const Alphabet& alphabet, double weight_tol, double s) {
  if (!(weight_tol > 0.0)) throw DomainError("enumerate: weight_tol must be positive");
  if (!alphabet.is_finite() && !(s > alphabet.convergence_abscissa()))
    throw DivergentSumError("enumerate: s at or below the convergence abscissa");
  if (alphabet.is_finite()) return alphabet.split(0.0);
  // n^{-2s} < tol  <=>  n > tol^{-1/(2s)}
  const double cut = std::pow(weight_tol, -1.0 / (2.0 * s));
  return alphabet.split(std::min(cut, 1e300), std::size_t{1} << 22);
}

std::vector<Digit> first_elements(const Alphabet& alphabet, std::size_t limit) {
  std::vector<Digit> out;
  for (const auto& c : alphabet.components()) {
    Cursor cur(c);
    for (std::size_t k = 0; k < limit && cur.value(); ++k, cur.advance()) out.push_back(*cur.value());
  }
  std::sort(out.begin(), out.end());
  if (out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace cfdim
