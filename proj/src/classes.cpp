#include "normlab/classes.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "normlab/errors.hpp"
#include "normlab/lattice.hpp"

namespace normlab {

// ---- PrimeSet -------------------------------------------------------------

namespace {

bool is_prime_num(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<int> norm_primes(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (int p : v)
    if (!is_prime_num(p))
      throw ParseError("not a prime: " + std::to_string(p));
  return v;
}

}  // namespace

PrimeSet PrimeSet::of(std::vector<int> primes) {
  PrimeSet s;
  s.kind_ = Kind::Explicit;
  s.primes_ = norm_primes(std::move(primes));
  return s;
}

PrimeSet PrimeSet::complement_of(std::vector<int> primes) {
  PrimeSet s;
  s.kind_ = Kind::Complement;
  s.primes_ = norm_primes(std::move(primes));
  return s;
}

bool PrimeSet::contains(int p) const {
  bool in = std::binary_search(primes_.begin(), primes_.end(), p);
  switch (kind_) {
    case Kind::Explicit: return in;
    case Kind::Complement: return !in;
    default: return true;
  }
}

PrimeSet PrimeSet::complement() const {
  PrimeSet s;
  switch (kind_) {
    case Kind::Explicit:
      s.kind_ = Kind::Complement;
      s.primes_ = primes_;
      break;
    case Kind::Complement:
      s.kind_ = Kind::Explicit;
      s.primes_ = primes_;
      break;
    default:
      s.kind_ = Kind::Explicit;
      break;
  }
  return s;
}

PrimeSet PrimeSet::set_union(const PrimeSet& o) const {
  if (is_all() || o.is_all()) return all();
  if (kind_ == Kind::Explicit && o.kind_ == Kind::Explicit) {
    std::vector<int> v = primes_;
    v.insert(v.end(), o.primes_.begin(), o.primes_.end());
    return of(std::move(v));
  }
  if (kind_ == Kind::Complement && o.kind_ == Kind::Complement) {
    std::vector<int> v;
    for (int p : primes_)
      if (std::binary_search(o.primes_.begin(), o.primes_.end(), p))
        v.push_back(p);
    return complement_of(std::move(v));
  }
  const PrimeSet& comp = (kind_ == Kind::Complement) ? *this : o;
  const PrimeSet& expl = (kind_ == Kind::Complement) ? o : *this;
  std::vector<int> v;
  for (int p : comp.primes_)
    if (!std::binary_search(expl.primes_.begin(), expl.primes_.end(), p))
      v.push_back(p);
  return complement_of(std::move(v));
}

bool PrimeSet::subset_of(const PrimeSet& o) const {
  if (o.is_all()) return true;
  switch (kind_) {
    case Kind::Explicit:
      for (int p : primes_)
        if (!o.contains(p)) return false;
      return true;
    case Kind::Complement:
      if (o.kind_ == Kind::Complement) {
        // P\a within P\b  iff  b within a
        for (int p : o.primes_)
          if (!std::binary_search(primes_.begin(), primes_.end(), p))
            return false;
        return true;
      }
      return false;  // infinite set never inside a finite one
    default:
      return o.is_all();
  }
}

bool PrimeSet::disjoint_with(const PrimeSet& o) const {
  if (kind_ == Kind::Explicit) {
    for (int p : primes_)
      if (o.contains(p)) return false;
    return true;
  }
  if (o.kind_ == Kind::Explicit) return o.disjoint_with(*this);
  return false;  // two co-finite sets always intersect
}

bool PrimeSet::operator==(const PrimeSet& o) const {
  if (is_all() && o.is_all()) return true;
  return kind_ == o.kind_ && primes_ == o.primes_;
}

std::string PrimeSet::to_string() const {
  if (kind_ == Kind::All) return "P";
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < primes_.size(); ++i) {
    if (i) os << ',';
    os << primes_[i];
  }
  os << '}';
  if (kind_ == Kind::Complement) os << '\'';
  return os.str();
}

PrimeSet PrimeSet::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "P") return all();
  if (s.empty() || s.front() != '{')
    throw ParseError("prime set must be P or {..}: '" + text + "'");
  bool comp = false;
  if (s.back() == '\'') {
    comp = true;
    s.pop_back();
  }
  if (s.back() != '}') throw ParseError("unterminated prime set");
  std::string body = s.substr(1, s.size() - 2);
  std::vector<int> v;
  std::string cur;
  for (char c : body) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (c == ',') {
      if (cur.empty()) throw ParseError("empty prime in set");
      v.push_back(std::stoi(cur));
      cur.clear();
    } else {
      throw ParseError("bad character in prime set");
    }
  }
  if (!cur.empty()) v.push_back(std::stoi(cur));
  return comp ? complement_of(std::move(v)) : of(std::move(v));
}

// ---- ClassExpr construction ------------------------------------------------

namespace {

ClassPtr make_atom(AtomKind k, std::string key, PrimeSet pi = {}, int param = 0,
                   std::vector<int> sigma = {}) {
  auto e = std::make_shared<ClassExpr>();
  e->node = ClassExpr::Node::Atom;
  e->atom = k;
  e->pi = std::move(pi);
  e->param = param;
  e->sigma = std::move(sigma);
  e->key = std::move(key);
  return e;
}

}  // namespace

ClassPtr cls_trivial() { return make_atom(AtomKind::Trivial, "1"); }
ClassPtr cls_all() { return make_atom(AtomKind::All, "G"); }
ClassPtr cls_abelian() { return make_atom(AtomKind::Abelian, "A"); }
ClassPtr cls_nilpotent() { return make_atom(AtomKind::Nilpotent, "N"); }
ClassPtr cls_supersolvable() { return make_atom(AtomKind::Supersolvable, "U"); }
ClassPtr cls_solvable() { return make_atom(AtomKind::Solvable, "S"); }

ClassPtr cls_gpi(const PrimeSet& pi) {
  return make_atom(AtomKind::PiGroups, "Gpi(" + pi.to_string() + ")", pi);
}
ClassPtr cls_spi(const PrimeSet& pi) {
  return make_atom(AtomKind::PiSolvable, "Spi(" + pi.to_string() + ")", pi);
}
ClassPtr cls_npi(const PrimeSet& pi) {
  return make_atom(AtomKind::PiNilpotent, "Npi(" + pi.to_string() + ")", pi);
}
ClassPtr cls_cpi(const PrimeSet& pi) {
  return make_atom(AtomKind::PiClosed, "Cpi(" + pi.to_string() + ")", pi);
}
ClassPtr cls_nc(int c) {
  if (c < 1) throw ParseError("nilpotency class must be >= 1");
  return make_atom(AtomKind::NilpotentClass, "Nc(" + std::to_string(c) + ")",
                   {}, c);
}
ClassPtr cls_nr(int r) {
  if (r < 1) throw ParseError("Fitting length bound must be >= 1");
  return make_atom(AtomKind::FittingLength, "Nr(" + std::to_string(r) + ")",
                   {}, r);
}
ClassPtr cls_ldec(int p) {
  if (!is_prime_num(p)) throw ParseError("Ldec parameter must be prime");
  return make_atom(AtomKind::PDecomposable, "Ldec(" + std::to_string(p) + ")",
                   {}, p);
}
ClassPtr cls_tsigma(const std::vector<int>& ordering) {
  std::string key = "Tsigma(";
  for (size_t i = 0; i < ordering.size(); ++i) {
    if (!is_prime_num(ordering[i]))
      throw ParseError("Tsigma entries must be prime");
    if (i) key += '<';
    key += std::to_string(ordering[i]);
  }
  key += ')';
  return make_atom(AtomKind::SylowTower, key, {}, 0, ordering);
}

ClassPtr cls_fproduct(const ClassPtr& x, const ClassPtr& f) {
  auto e = std::make_shared<ClassExpr>();
  e->node = ClassExpr::Node::FormationProduct;
  e->left = x;
  e->right = f;
  e->key = "(" + x->key + "*" + f->key + ")";
  return e;
}

ClassPtr cls_hproduct(const ClassPtr& h, const ClassPtr& x) {
  auto e = std::make_shared<ClassExpr>();
  e->node = ClassExpr::Node::FittingProduct;
  e->left = h;
  e->right = x;
  e->key = "(" + h->key + "." + x->key + ")";
  return e;
}

// ---- parser -----------------------------------------------------------------

namespace {

struct ExprParser {
  const std::string& s;
  size_t pos = 0;

  explicit ExprParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("class expression: " + what + " at position " +
                         std::to_string(pos),
                     1, static_cast<int>(pos) + 1);
  }

  std::string parens_body() {
    if (!eat('(')) fail("expected '('");
    std::string body;
    int depth = 1;
    while (pos < s.size()) {
      char c = s[pos++];
      if (c == '(') ++depth;
      if (c == ')') {
        if (--depth == 0) return body;
      }
      body += c;
    }
    fail("unterminated '('");
  }

  int int_body() {
    std::string body = parens_body();
    try {
      size_t used = 0;
      int v = std::stoi(body, &used);
      if (used != body.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail("expected an integer argument");
    }
  }

  ClassPtr primary() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (s[pos] == '(') {
      std::string body = parens_body();
      return parse_class_expr(body);
    }
    if (s[pos] == '1') {
      ++pos;
      return cls_trivial();
    }
    std::string word;
    while (pos < s.size() &&
           std::isalpha(static_cast<unsigned char>(s[pos])))
      word += s[pos++];
    if (word == "G") return cls_all();
    if (word == "A") return cls_abelian();
    if (word == "N") return cls_nilpotent();
    if (word == "U") return cls_supersolvable();
    if (word == "S") return cls_solvable();
    if (word == "Gpi") return cls_gpi(PrimeSet::parse(parens_body()));
    if (word == "Spi") return cls_spi(PrimeSet::parse(parens_body()));
    if (word == "Npi") return cls_npi(PrimeSet::parse(parens_body()));
    if (word == "Cpi") return cls_cpi(PrimeSet::parse(parens_body()));
    if (word == "Nc") return cls_nc(int_body());
    if (word == "Nr") return cls_nr(int_body());
    if (word == "Ldec") return cls_ldec(int_body());
    if (word == "Tsigma") {
      std::string body = parens_body();
      std::vector<int> ordering;
      std::string cur;
      for (char c : body) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
          cur += c;
        } else if (c == '<') {
          if (cur.empty()) fail("bad Tsigma ordering");
          ordering.push_back(std::stoi(cur));
          cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
          fail("bad character in Tsigma ordering");
        }
      }
      if (!cur.empty()) ordering.push_back(std::stoi(cur));
      if (ordering.empty()) fail("empty Tsigma ordering");
      return cls_tsigma(ordering);
    }
    fail("unknown class atom '" + word + "'");
  }

  // '*' binds tighter than '.'; both right-associative.
  ClassPtr form_expr() {
    ClassPtr lhs = primary();
    skip_ws();
    if (eat('*')) return cls_fproduct(lhs, form_expr());
    return lhs;
  }

  ClassPtr expr() {
    ClassPtr lhs = form_expr();
    skip_ws();
    if (eat('.')) return cls_hproduct(lhs, expr());
    return lhs;
  }
};

}  // namespace

ClassPtr parse_class_expr(const std::string& text) {
  ExprParser p(text);
  ClassPtr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw ParseError("trailing input in class expression at position " +
                         std::to_string(p.pos),
                     1, static_cast<int>(p.pos) + 1);
  return e;
}

// ---- flags ------------------------------------------------------------------

ClassFlags class_flags(const ClassPtr& c) {
  ClassFlags f;
  if (c->node == ClassExpr::Node::Atom) {
    auto setf = [&](bool form, bool fit, bool sat, bool s, bool q, bool e) {
      f.formation = form;
      f.fitting = fit;
      f.saturated = sat;
      f.s_closed = s;
      f.sn_closed = s;  // every S-closed builtin is Sn-closed
      f.q_closed = q;
      f.e_closed = e;
    };
    switch (c->atom) {
      case AtomKind::Trivial:        setf(1, 1, 1, 1, 1, 1); break;
      case AtomKind::All:            setf(1, 1, 1, 1, 1, 1); break;
      case AtomKind::PiGroups:       setf(1, 1, 1, 1, 1, 1); break;
      case AtomKind::Abelian:        setf(1, 0, 0, 1, 1, 0); break;
      case AtomKind::Nilpotent:      setf(1, 1, 1, 1, 1, 0); break;
      case AtomKind::NilpotentClass: setf(1, 0, 1, 1, 1, 0); break;
      case AtomKind::Supersolvable:  setf(1, 0, 1, 1, 1, 0); break;
      case AtomKind::Solvable:       setf(1, 1, 1, 1, 1, 1); break;
      case AtomKind::PiSolvable:     setf(1, 1, 1, 1, 1, 1); break;
      case AtomKind::PiNilpotent:    setf(1, 1, 1, 1, 1, 0); break;
      case AtomKind::SylowTower:     setf(1, 0, 1, 1, 1, 0); break;
      case AtomKind::PiClosed:       setf(1, 0, 0, 1, 1, 0); break;
      case AtomKind::FittingLength:  setf(1, 1, 1, 1, 1, 0); break;
      case AtomKind::PDecomposable:  setf(1, 0, 0, 1, 1, 0); break;
    }
    return f;
  }
  ClassFlags l = class_flags(c->left);
  ClassFlags r = class_flags(c->right);
  if (c->node == ClassExpr::Node::FormationProduct) {
    f.formation = l.formation && r.formation;
    f.q_closed = f.formation;
    f.s_closed = l.s_closed && r.s_closed && f.formation;
    f.sn_closed = l.sn_closed && r.sn_closed && f.formation;
    // N o F and Npi o F are saturated (they are local: Lemma 2.11)
    bool left_nilp_shape =
        c->left->node == ClassExpr::Node::Atom &&
        (c->left->atom == AtomKind::Nilpotent ||
         c->left->atom == AtomKind::PiNilpotent);
    f.saturated = left_nilp_shape && r.formation;
    f.fitting = false;
    f.e_closed = false;
    return f;
  }
  // Fitting product H <> X
  f.fitting = l.fitting && r.fitting;
  // H <> (N o F) = (H <> N) o F is a formation for a Fitting formation H
  bool x_nilp_start =
      (c->right->node == ClassExpr::Node::Atom &&
       c->right->atom == AtomKind::Nilpotent) ||
      (c->right->node == ClassExpr::Node::FormationProduct &&
       c->right->left->node == ClassExpr::Node::Atom &&
       c->right->left->atom == AtomKind::Nilpotent);
  f.formation = l.formation && l.fitting && r.formation && x_nilp_start;
  f.q_closed = f.formation;
  f.saturated = f.formation && l.saturated;
  return f;
}

// ---- structural helpers -------------------------------------------------------

namespace {

bool is_atom(const ClassPtr& c, AtomKind k) {
  return c->node == ClassExpr::Node::Atom && c->atom == k;
}

std::vector<int> group_primes(const FiniteGroup& g) {
  return prime_divisors(g.order());
}

}  // namespace

std::vector<Subgroup> upper_central_series(const GroupPtr& g) {
  std::vector<Subgroup> series;
  Subgroup z = center(g);
  series.push_back(z);
  while (!z.is_whole()) {
    auto [q, pi] = quotient_group(g, z);
    Subgroup zq = center(q);
    Subgroup next = preimage(pi, zq);
    if (next.members == z.members) break;
    z = std::move(next);
    series.push_back(z);
  }
  return series;
}

std::optional<int> nilpotency_class(const GroupPtr& g) {
  if (g->order() == 1) return 0;
  auto ucs = upper_central_series(g);
  if (!ucs.back().is_whole()) return std::nullopt;
  return static_cast<int>(ucs.size());
}

std::vector<long long> chief_factor_orders(Workspace& ws, const GroupPtr& g) {
  std::vector<long long> orders;
  GroupPtr cur = g;
  while (cur->order() > 1) {
    const auto& normals = ws.normal_subgroups_of(cur);
    // least canonical minimal normal subgroup (list is sorted by order)
    const Subgroup* pick = nullptr;
    for (const auto& n : normals) {
      if (n.is_trivial()) continue;
      pick = &n;
      break;
    }
    orders.push_back(pick->order());
    auto [q, pi] = quotient_group(cur, *pick);
    cur = q;
  }
  return orders;
}

std::optional<int> fitting_length(Workspace& ws, const GroupPtr& g) {
  GroupPtr cur = g;
  int len = 0;
  while (cur->order() > 1) {
    Subgroup rad = radical(ws, cur, cls_nilpotent());
    if (rad.is_trivial()) return std::nullopt;  // no finite Fitting series
    ++len;
    auto [q, pi] = quotient_group(cur, rad);
    cur = q;
  }
  return len;
}

// ---- membership ---------------------------------------------------------------

namespace {

bool member_impl(Workspace& ws, const GroupPtr& g, const ClassPtr& c);

bool sylow_tower_member(Workspace& ws, const GroupPtr& g,
                        const std::vector<int>& sigma) {
  if (g->order() == 1) return true;
  auto primes = group_primes(*g);
  // sigma-least prime divisor: listed primes first, the rest in natural order
  int best = -1, best_rank = -1;
  for (int p : primes) {
    auto it = std::find(sigma.begin(), sigma.end(), p);
    int rank = (it == sigma.end())
                   ? static_cast<int>(sigma.size()) + p
                   : static_cast<int>(it - sigma.begin());
    if (best < 0 || rank < best_rank) {
      best = p;
      best_rank = rank;
    }
  }
  Subgroup syl = quick_sylow(g, best);
  if (!is_normal(syl)) return false;
  auto [q, pi] = quotient_group(g, syl);
  return sylow_tower_member(ws, q, sigma);
}

bool member_impl(Workspace& ws, const GroupPtr& g, const ClassPtr& c) {
  switch (c->node) {
    case ClassExpr::Node::FormationProduct: {
      Subgroup r = residual(ws, g, c->right);
      return is_member(ws, ws.as_group(r).group, c->left);
    }
    case ClassExpr::Node::FittingProduct: {
      Subgroup r = radical(ws, g, c->left);
      auto [q, pi] = quotient_group(g, r);
      return is_member(ws, q, c->right);
    }
    default: break;
  }
  switch (c->atom) {
    case AtomKind::Trivial:
      return g->order() == 1;
    case AtomKind::All:
      return true;
    case AtomKind::PiGroups: {
      for (int p : group_primes(*g))
        if (!c->pi.contains(p)) return false;
      return true;
    }
    case AtomKind::Abelian:
      return is_abelian(*g);
    case AtomKind::Nilpotent: {
      for (int p : group_primes(*g))
        if (!is_normal(quick_sylow(g, p))) return false;
      return true;
    }
    case AtomKind::NilpotentClass: {
      auto cl = nilpotency_class(g);
      return cl.has_value() && *cl <= c->param;
    }
    case AtomKind::Supersolvable: {
      for (long long o : chief_factor_orders(ws, g))
        if (!is_prime_num(static_cast<int>(o))) return false;
      return true;
    }
    case AtomKind::Solvable:
      return derived_series(g).back().order() == 1;
    case AtomKind::PiSolvable: {
      for (long long o : chief_factor_orders(ws, g)) {
        auto ps = prime_divisors(o);
        bool pi_free = true;
        for (int p : ps)
          if (c->pi.contains(p)) pi_free = false;
        if (pi_free) continue;           // pi'-group factor
        if (ps.size() == 1) continue;    // p-group factor
        return false;
      }
      return true;
    }
    case AtomKind::PiNilpotent: {
      // evaluated as Gpi' o N
      Subgroup r = residual(ws, g, cls_nilpotent());
      for (int p : prime_divisors(r.order()))
        if (c->pi.contains(p)) return false;
      return true;
    }
    case AtomKind::SylowTower:
      return sylow_tower_member(ws, g, c->sigma);
    case AtomKind::PiClosed: {
      long long part = 1;
      for (int p : group_primes(*g))
        if (c->pi.contains(p)) part *= p_part(g->order(), p);
      return o_pi(ws, g, c->pi).order() == part;
    }
    case AtomKind::FittingLength: {
      auto len = fitting_length(ws, g);
      return len.has_value() && *len <= c->param;
    }
    case AtomKind::PDecomposable: {
      int p = c->param;
      long long pp = p_part(g->order(), p);
      PrimeSet just_p = PrimeSet::of({p});
      if (o_pi(ws, g, just_p).order() != pp) return false;
      return o_pi(ws, g, just_p.complement()).order() == g->order() / pp;
    }
  }
  throw UnsupportedClass("unhandled class atom");
}

}  // namespace

bool is_member(Workspace& ws, const GroupPtr& g, const ClassPtr& c) {
  Workspace::ExprKey key{g->id(), c->key};
  auto it = ws.membership.find(key);
  if (it != ws.membership.end()) return it->second;
  bool v = member_impl(ws, g, c);
  ws.membership.emplace(std::move(key), v);
  ws.retained.push_back(g);
  return v;
}

Subgroup residual(Workspace& ws, const GroupPtr& g, const ClassPtr& f) {
  if (!class_flags(f).formation)
    throw UnsupportedClass("residual requires a declared formation: " + f->key);
  Workspace::ExprKey key{g->id(), f->key};
  auto it = ws.residuals.find(key);
  if (it != ws.residuals.end())
    return subgroup_from_members(g, it->second);

  // Intersection over normal N with G/N in F. Larger N first: their
  // quotients are cheaper and the accumulator shrinks early; skipping cases
  // where acc could not shrink does not change the intersection.
  const auto& normals = ws.normal_subgroups_of(g);
  DynBitset acc(g->order());
  acc.set_all();
  for (auto it2 = normals.rbegin(); it2 != normals.rend(); ++it2) {
    const auto& n = *it2;
    if (acc.is_subset_of(n.mask)) continue;
    auto [q, pi] = quotient_group(g, n);
    if (is_member(ws, q, f)) acc &= n.mask;
  }
  Subgroup r = subgroup_from_members(g, acc.to_indices());
  auto [qr, pir] = quotient_group(g, r);
  if (!is_member(ws, qr, f))
    throw FormationWitnessFailure(
        "residual post-verification failed for " + f->key +
        " (class not intersection-closed on this instance)");
  ws.residuals.emplace(key, r.members);
  ws.retained.push_back(g);
  return r;
}

Subgroup radical(Workspace& ws, const GroupPtr& g, const ClassPtr& h) {
  if (!class_flags(h).fitting)
    throw UnsupportedClass("radical requires a declared Fitting class: " +
                           h->key);
  Workspace::ExprKey key{g->id(), h->key};
  auto it = ws.radicals.find(key);
  if (it != ws.radicals.end())
    return subgroup_from_members(g, it->second);

  Subgroup rad = trivial_subgroup(g);
  for (const auto& n : ws.normal_subgroups_of(g)) {
    if (n.mask.is_subset_of(rad.mask)) continue;
    if (is_member(ws, ws.as_group(n).group, h)) rad = join_subgroups(rad, n);
  }
  if (!is_member(ws, ws.as_group(rad).group, h))
    throw FittingWitnessFailure(
        "radical post-verification failed for " + h->key +
        " (join of normal members left the class)");
  ws.radicals.emplace(key, rad.members);
  ws.retained.push_back(g);
  return rad;
}

Subgroup o_pi(Workspace& ws, const GroupPtr& g, const PrimeSet& pi) {
  return radical(ws, g, cls_gpi(pi));
}

// ---- symbolic facts -----------------------------------------------------------

PrimeSet pi_of_class(const ClassPtr& c) {
  if (c->node != ClassExpr::Node::Atom)
    return pi_of_class(c->left).set_union(pi_of_class(c->right));
  switch (c->atom) {
    case AtomKind::Trivial: return PrimeSet::of({});
    case AtomKind::PiGroups: return c->pi;
    default: return PrimeSet::all();
  }
}

bool contains_all_pi_groups(const ClassPtr& h, const PrimeSet& pi) {
  if (pi.empty()) return true;  // only the trivial group, in every class
  if (h->node != ClassExpr::Node::Atom) return false;
  switch (h->atom) {
    case AtomKind::All:
      return true;
    case AtomKind::PiGroups:
      return pi.subset_of(h->pi);
    case AtomKind::Trivial:
      return false;
    case AtomKind::Solvable:
      return pi.is_finite() && pi.base().size() <= 2;  // Burnside p^a q^b
    case AtomKind::PiSolvable:
      return (pi.is_finite() && pi.base().size() <= 2) ||
             pi.disjoint_with(h->pi);
    case AtomKind::Nilpotent:
      return pi.is_finite() && pi.base().size() <= 1;
    case AtomKind::PiNilpotent:
      return (pi.is_finite() && pi.base().size() <= 1) ||
             pi.disjoint_with(h->pi);
    case AtomKind::FittingLength:
      return pi.is_finite() && pi.base().size() <= 1;
    case AtomKind::PiClosed:
      return pi.subset_of(h->pi) || pi.disjoint_with(h->pi);
    default:
      return false;
  }
}

bool absorbs_pi_prime(const ClassPtr& f, const PrimeSet& pi) {
  PrimeSet pic = pi.complement();
  if (pic.empty()) return true;
  if (is_atom(f, AtomKind::All)) return true;
  if (is_atom(f, AtomKind::PiGroups)) return pic.subset_of(f->pi);
  if (is_atom(f, AtomKind::PiNilpotent) || is_atom(f, AtomKind::PiSolvable))
    return f->pi.subset_of(pi);
  if (f->node == ClassExpr::Node::FormationProduct)
    return absorbs_pi_prime(f->left, pi);
  return false;
}

bool subset_of_nilpotent(const ClassPtr& f) {
  if (is_atom(f, AtomKind::Trivial) || is_atom(f, AtomKind::Abelian) ||
      is_atom(f, AtomKind::Nilpotent) ||
      is_atom(f, AtomKind::NilpotentClass))
    return true;
  if (is_atom(f, AtomKind::PiGroups))
    return f->pi.is_finite() && f->pi.base().size() <= 1;
  return false;
}

bool subset_of_supersolvable(const ClassPtr& f) {
  return subset_of_nilpotent(f) || is_atom(f, AtomKind::Supersolvable);
}

bool subset_of_solvable(const ClassPtr& f) {
  if (subset_of_supersolvable(f) || is_atom(f, AtomKind::Solvable) ||
      is_atom(f, AtomKind::FittingLength) ||
      is_atom(f, AtomKind::SylowTower))
    return true;
  if (is_atom(f, AtomKind::PiGroups))
    return f->pi.is_finite() && f->pi.base().size() <= 2;
  if (is_atom(f, AtomKind::PiNilpotent) || is_atom(f, AtomKind::PiSolvable)) {
    PrimeSet pc = f->pi.complement();
    return pc.is_finite() && pc.base().size() <= 2;
  }
  if (f->node != ClassExpr::Node::Atom)
    return subset_of_solvable(f->left) && subset_of_solvable(f->right);
  return false;
}

bool subset_of_some_sylow_tower(const ClassPtr& f) {
  // nilpotent groups admit every complexion; supersolvable groups the
  // descending one
  return subset_of_supersolvable(f) || is_atom(f, AtomKind::SylowTower);
}

bool subset_of_two_closed(const ClassPtr& f) {
  if (subset_of_nilpotent(f)) return true;
  if (is_atom(f, AtomKind::PiClosed) && PrimeSet::of({2}).subset_of(f->pi) &&
      f->pi.subset_of(PrimeSet::of({2})))
    return true;
  if (is_atom(f, AtomKind::PiGroups))
    return !f->pi.contains(2) || f->pi.subset_of(PrimeSet::of({2}));
  return false;
}

bool subset_of_two_nilpotent(const ClassPtr& f) {
  if (subset_of_supersolvable(f)) return true;  // descending Sylow tower
  if (is_atom(f, AtomKind::PiNilpotent) &&
      PrimeSet::of({2}).subset_of(f->pi))
    return true;
  if (is_atom(f, AtomKind::PiGroups)) return !f->pi.contains(2);
  return false;
}

bool subset_of_odd_order(const ClassPtr& f) {
  if (is_atom(f, AtomKind::Trivial)) return true;
  if (is_atom(f, AtomKind::PiGroups)) return !f->pi.contains(2);
  return false;
}

bool is_shemetkov(const ClassPtr& f) {
  if (is_atom(f, AtomKind::Nilpotent) || is_atom(f, AtomKind::PiNilpotent))
    return true;
  if (is_atom(f, AtomKind::PiClosed))
    return f->pi == PrimeSet::of({2});
  return false;
}

std::optional<LocalAt> canonical_local_definition(const ClassPtr& f) {
  if (is_atom(f, AtomKind::Nilpotent)) {
    return LocalAt{[](int p) -> std::optional<ClassPtr> {
      return cls_gpi(PrimeSet::of({p}));
    }};
  }
  if (is_atom(f, AtomKind::PiGroups)) {
    PrimeSet pi = f->pi;
    ClassPtr self = f;
    return LocalAt{[pi, self](int p) -> std::optional<ClassPtr> {
      if (pi.contains(p)) return self;
      return std::nullopt;  // empty class
    }};
  }
  if (is_atom(f, AtomKind::PiNilpotent)) {
    PrimeSet pi = f->pi;
    ClassPtr self = f;
    return LocalAt{[pi, self](int p) -> std::optional<ClassPtr> {
      if (pi.contains(p)) return cls_gpi(PrimeSet::of({p}));
      return self;
    }};
  }
  if (f->node == ClassExpr::Node::FormationProduct) {
    // B = N o F or Npi o F: B(p) = Gp o F on pi, B elsewhere (Lemma 2.11(2))
    const ClassPtr& x = f->left;
    const ClassPtr& inner = f->right;
    if (is_atom(x, AtomKind::Nilpotent)) {
      return LocalAt{[inner](int p) -> std::optional<ClassPtr> {
        return cls_fproduct(cls_gpi(PrimeSet::of({p})), inner);
      }};
    }
    if (is_atom(x, AtomKind::PiNilpotent)) {
      PrimeSet pi = x->pi;
      ClassPtr self = f;
      return LocalAt{[pi, inner, self](int p) -> std::optional<ClassPtr> {
        if (pi.contains(p))
          return cls_fproduct(cls_gpi(PrimeSet::of({p})), inner);
        return self;
      }};
    }
  }
  return std::nullopt;
}

}  // namespace normlab
