#include "normlab/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "normlab/errors.hpp"
#include "normlab/lattice.hpp"
#include "normlab/series.hpp"

namespace normlab {

namespace fs = std::filesystem;
using nlohmann::json;

GroupPtr semidirect_from_gen_action(
    const GroupPtr& n, const GroupPtr& h,
    const std::vector<std::vector<int>>& n_gen_images_per_h_gen) {
  const auto& hgens = h->generators();
  if (n_gen_images_per_h_gen.size() != hgens.size())
    throw InvalidAction("need one automorphism per H generator");
  int hn = h->order(), nn = n->order();
  std::vector<std::vector<int32_t>> gen_auts;
  for (const auto& imgs : n_gen_images_per_h_gen) {
    for (int v : imgs)
      if (v < 0 || v >= nn) throw InvalidAction("N-generator image out of range");
    auto aut = extend_automorphism(*n, imgs);
    if (!aut)
      throw InvalidAction("generator images do not define an automorphism of N");
    gen_auts.push_back(std::move(*aut));
  }
  // extend over the Cayley graph of H: phi(h*g) = phi(h) o phi(g)
  std::vector<std::vector<int32_t>> action(hn);
  std::vector<int32_t> ident(nn);
  for (int i = 0; i < nn; ++i) ident[i] = i;
  action[0] = ident;
  std::vector<int> queue = {0};
  std::vector<char> seen(hn, 0);
  seen[0] = 1;
  for (size_t pos = 0; pos < queue.size(); ++pos) {
    int e = queue[pos];
    for (size_t k = 0; k < hgens.size(); ++k) {
      int e2 = h->mul(e, hgens[k]);
      std::vector<int32_t> comp(nn);
      for (int x = 0; x < nn; ++x) comp[x] = action[e][gen_auts[k][x]];
      if (!seen[e2]) {
        seen[e2] = 1;
        action[e2] = std::move(comp);
        queue.push_back(e2);
      } else if (action[e2] != comp) {
        throw InvalidAction("action fails the homomorphism law");
      }
    }
  }
  if (static_cast<int>(queue.size()) != hn)
    throw InvalidAction("H generators do not generate H");
  return semidirect_product(n, h, action);
}

// ---- builtin catalog -------------------------------------------------------

namespace {

json named(const std::string& family, std::vector<int> params) {
  return json{{"named", {{"family", family}, {"params", params}}}};
}

json semidirect_desc(json n, json h, std::vector<std::vector<int>> action) {
  return json{{"semidirect",
               {{"n", std::move(n)}, {"h", std::move(h)}, {"action", action}}}};
}

// Deterministic order-3 automorphism of Q8 = dicyclic(2): first generator
// image pair (in index order) that extends to an automorphism of order 3.
std::vector<std::vector<int>> q8_order3_action() {
  auto q8 = dicyclic_group(2);
  int n = q8->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto aut = extend_automorphism(*q8, {x, y});
      if (!aut) continue;
      bool ident = true, cube = true;
      for (int e = 0; e < n; ++e) {
        if ((*aut)[e] != e) ident = false;
        if ((*aut)[(*aut)[(*aut)[e]]] != e) cube = false;
      }
      if (!ident && cube) return {{x, y}};
    }
  throw NormLabError("no order-3 automorphism of Q8 found");
}

}  // namespace

CorpusManifest builtin_catalog() {
  CorpusManifest m;
  m.schema_version = 1;
  m.notes = "builtin small-group catalog";
  auto addg = [&](const std::string& name, json c) {
    m.groups.push_back({name, std::move(c)});
  };
  for (int nn = 1; nn <= 32; ++nn)
    addg("C" + std::to_string(nn), named("cyclic", {nn}));
  addg("E4", named("elementary_abelian", {2, 2}));
  addg("E8", named("elementary_abelian", {2, 3}));
  addg("E9", named("elementary_abelian", {3, 2}));
  addg("E27", named("elementary_abelian", {3, 3}));
  for (int nn = 2; nn <= 12; ++nn)
    addg("D" + std::to_string(2 * nn), named("dihedral", {2 * nn}));
  addg("Q8", named("dicyclic", {2}));
  addg("Q16", named("dicyclic", {4}));
  addg("S3", named("symmetric", {3}));
  addg("S4", named("symmetric", {4}));
  addg("S5", named("symmetric", {5}));
  addg("A4", named("alternating", {4}));
  addg("A5", named("alternating", {5}));
  addg("SL23",
       semidirect_desc(named("dicyclic", {2}), named("cyclic", {3}),
                       q8_order3_action()));
  addg("F20", semidirect_desc(named("cyclic", {5}), named("cyclic", {4}),
                              {{2}}));
  addg("F21", semidirect_desc(named("cyclic", {7}), named("cyclic", {3}),
                              {{2}}));
  addg("S3xC5", json{{"product",
                      {{"a", named("symmetric", {3})},
                       {"b", named("cyclic", {5})}}}});
  return m;
}

// ---- manifest parsing --------------------------------------------------------

namespace {

[[noreturn]] void manifest_fail(const std::string& what, const std::string& text,
                                size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw ParseError(what, line, col);
}

GroupPtr build_construction(Workspace& ws, const json& c, int cap);

GroupPtr build_named(Workspace& ws, const json& c, int cap) {
  (void)ws;
  std::string family = c.at("family").get<std::string>();
  std::vector<int> params = c.value("params", std::vector<int>{});
  auto need = [&](size_t k) {
    if (params.size() != k)
      throw ValidationError("family '" + family + "' expects " +
                            std::to_string(k) + " parameter(s)");
  };
  if (family == "trivial") {
    need(0);
    return trivial_group();
  }
  if (family == "cyclic") {
    need(1);
    return cyclic_group(params[0]);
  }
  if (family == "dihedral") {
    need(1);
    return dihedral_group(params[0]);
  }
  if (family == "dicyclic") {
    need(1);
    return dicyclic_group(params[0]);
  }
  if (family == "symmetric") {
    need(1);
    return symmetric_group(params[0], cap);
  }
  if (family == "alternating") {
    need(1);
    return alternating_group(params[0], cap);
  }
  if (family == "elementary_abelian") {
    need(2);
    return elementary_abelian_group(params[0], params[1]);
  }
  throw ValidationError("unknown group family: " + family);
}

GroupPtr build_construction(Workspace& ws, const json& c, int cap) {
  if (!c.is_object() || c.size() != 1)
    throw ValidationError("construction must be a single-key object");
  if (c.contains("named")) return build_named(ws, c.at("named"), cap);
  if (c.contains("perms")) {
    const json& p = c.at("perms");
    int degree = p.at("degree").get<int>();
    if (degree < 1) throw ValidationError("degree must be positive");
    std::vector<Permutation> gens;
    for (const auto& s : p.at("gens"))
      gens.push_back(parse_permutation(s.get<std::string>(), degree));
    return group_from_permutations(degree, gens, cap);
  }
  if (c.contains("table")) {
    const json& t = c.at("table");
    int order = t.at("order").get<int>();
    std::vector<int32_t> table = t.at("table").get<std::vector<int32_t>>();
    if (static_cast<int>(table.size()) != order * order)
      throw ValidationError("table length must be order^2");
    if (order > cap) throw OrderCapExceeded("table group above order cap");
    return group_from_table(table);
  }
  if (c.contains("product")) {
    const json& p = c.at("product");
    GroupPtr a = build_construction(ws, p.at("a"), cap);
    GroupPtr b = build_construction(ws, p.at("b"), cap);
    if (static_cast<long long>(a->order()) * b->order() > cap)
      throw OrderCapExceeded("product above order cap");
    return direct_product(a, b);
  }
  if (c.contains("semidirect")) {
    const json& p = c.at("semidirect");
    GroupPtr n = build_construction(ws, p.at("n"), cap);
    GroupPtr h = build_construction(ws, p.at("h"), cap);
    if (static_cast<long long>(n->order()) * h->order() > cap)
      throw OrderCapExceeded("semidirect above order cap");
    auto action = p.at("action").get<std::vector<std::vector<int>>>();
    return semidirect_from_gen_action(n, h, action);
  }
  throw ValidationError("unknown construction kind: " + c.begin().key());
}

}  // namespace

CorpusManifest parse_manifest(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    manifest_fail(std::string("manifest JSON: ") + e.what(), text, e.byte);
  }
  try {
    CorpusManifest m;
    m.schema_version = doc.at("schema_version").get<int>();
    if (m.schema_version != 1)
      throw ValidationError("unsupported manifest schema_version");
    if (doc.contains("cap")) m.cap = doc.at("cap").get<int>();
    m.notes = doc.value("notes", std::string{});
    for (const auto& g : doc.value("groups", json::array())) {
      GroupDescriptor d;
      d.name = g.at("name").get<std::string>();
      d.construction = g.at("construction");
      m.groups.push_back(std::move(d));
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest structure: ") + e.what(), 1, 1);
  }
}

std::string serialize_manifest(const CorpusManifest& m) {
  json doc;
  doc["schema_version"] = m.schema_version;
  if (m.cap) doc["cap"] = *m.cap;
  if (!m.notes.empty()) doc["notes"] = m.notes;
  doc["groups"] = json::array();
  for (const auto& g : m.groups)
    doc["groups"].push_back({{"name", g.name}, {"construction", g.construction}});
  return doc.dump(2);
}

GroupPtr load_group(Workspace& ws, const GroupDescriptor& desc,
                    std::optional<int> cap_override) {
  int cap = cap_override.value_or(ws.order_cap);
  return build_construction(ws, desc.construction, cap);
}

std::vector<std::pair<std::string, GroupPtr>> load_corpus(
    Workspace& ws, const CorpusManifest& m) {
  std::vector<std::pair<std::string, GroupPtr>> out;
  for (const auto& d : m.groups) {
    for (const auto& [name, g] : out)
      if (name == d.name)
        throw ValidationError("duplicate group name in corpus: " + d.name);
    out.emplace_back(d.name, load_group(ws, d, m.cap));
  }
  return out;
}

// ---- disk cache ---------------------------------------------------------------

namespace {

std::string gid_hex(const FiniteGroup& g) {
  std::ostringstream os;
  os << std::hex << g.id();
  return os.str();
}

fs::path cache_path(const std::string& dir, const FiniteGroup& g,
                    const std::string& kind) {
  return fs::path(dir) / gid_hex(g) /
         (kind + ".v" + std::to_string(kCacheVersion));
}

}  // namespace

void cache_store(const std::string& dir, const FiniteGroup& g,
                 const std::string& kind, const json& payload) {
  json doc;
  doc["schema_version"] = kCacheVersion;
  doc["order"] = g.order();
  doc["payload"] = payload;
  fs::path p = cache_path(dir, g, kind);
  fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream f(tmp);
    f << doc.dump();
  }
  fs::rename(tmp, p);  // atomic on POSIX
}

std::optional<json> cache_load(const std::string& dir, const FiniteGroup& g,
                               const std::string& kind) {
  fs::path p = cache_path(dir, g, kind);
  if (!fs::exists(p)) {
    // a blob written under a different version?
    fs::path parent = fs::path(dir) / gid_hex(g);
    if (fs::exists(parent))
      for (const auto& e : fs::directory_iterator(parent)) {
        auto fn = e.path().filename().string();
        if (fn.rfind(kind + ".v", 0) == 0)
          throw CacheVersionMismatch("cache entry has a different version: " +
                                     fn);
      }
    return std::nullopt;
  }
  std::ifstream f(p);
  std::stringstream buf;
  buf << f.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
    if (doc.at("schema_version").get<int>() != kCacheVersion)
      throw CacheVersionMismatch("cache schema_version mismatch");
    if (doc.at("order").get<int>() != g.order())
      throw CorruptCache("cached artifact is for a different group");
    return doc.at("payload");
  } catch (const CacheVersionMismatch&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptCache(std::string("unreadable cache blob: ") + e.what());
  }
}

void preload_group_caches(Workspace& ws, const GroupPtr& g) {
  if (!ws.cache_dir) return;
  auto guarded = [&](const std::string& kind) -> std::optional<json> {
    try {
      return cache_load(*ws.cache_dir, *g, kind);
    } catch (const CacheVersionMismatch&) {
      return std::nullopt;  // recompute
    } catch (const CorruptCache&) {
      return std::nullopt;  // recompute (warning surfaced by CLI layer)
    }
  };
  if (auto payload = guarded("lattice")) {
    // structural sanity re-check before use
    auto lat = std::make_shared<Lattice>();
    lat->parent = g;
    bool ok = true;
    for (const auto& mem : payload->at("subgroups")) {
      auto v = mem.get<std::vector<int>>();
      if (!is_subgroup_set(*g, v)) {
        ok = false;
        break;
      }
      lat->subgroups.push_back(subgroup_from_members(g, v));
    }
    if (ok && !lat->subgroups.empty() &&
        lat->subgroups.front().is_trivial() &&
        lat->subgroups.back().is_whole()) {
      int total = lat->size();
      lat->class_of.assign(total, -1);
      bool closed = true;
      for (int i = 0; i < total && closed; ++i) {
        if (lat->class_of[i] >= 0) continue;
        int c = static_cast<int>(lat->conjugacy_classes.size());
        std::vector<int> orbit = {i};
        lat->class_of[i] = c;
        for (size_t pos = 0; pos < orbit.size() && closed; ++pos)
          for (int y : g->generators()) {
            auto conj =
                conjugate_members(*g, lat->subgroups[orbit[pos]].members, y);
            int j = lat->index_of(conj);
            if (j < 0) {
              closed = false;
              break;
            }
            if (lat->class_of[j] < 0) {
              lat->class_of[j] = c;
              orbit.push_back(j);
            }
          }
        std::sort(orbit.begin(), orbit.end());
        lat->conjugacy_classes.push_back(std::move(orbit));
      }
      if (closed) {
        ws.lattices.emplace(g->id(), lat);
        ws.retained.push_back(g);
      }
    }
  }
  if (auto payload = guarded("chief_series")) {
    try {
      auto cs = std::make_shared<ChiefSeries>();
      cs->parent = g;
      for (const auto& mem : payload->at("terms"))
        cs->terms.push_back(
            subgroup_from_members(g, mem.get<std::vector<int>>()));
      bool ok = !cs->terms.empty() && cs->terms.front().is_trivial() &&
                cs->terms.back().is_whole();
      for (auto& t : cs->terms)
        if (!is_subgroup_set(*g, t.members) || !is_normal(t)) ok = false;
      if (ok) {
        for (size_t i = 0; i + 1 < cs->terms.size(); ++i) {
          ChiefSeries::Factor fct;
          fct.below = static_cast<int>(i);
          fct.order = cs->terms[i + 1].order() / cs->terms[i].order();
          fct.primes = prime_divisors(fct.order);
          cs->factors.push_back(std::move(fct));
        }
        ws.chief_cache.emplace(
            Workspace::SubKey{g->id(), whole_subgroup(g).members}, cs);
      }
    } catch (const std::exception&) {
      // advisory: ignore and recompute
    }
  }
  if (auto payload = guarded("norm_results")) {
    try {
      for (auto it = payload->begin(); it != payload->end(); ++it) {
        auto sep = it.key().find('|');
        if (sep == std::string::npos) continue;
        std::vector<int> mem = it.value().get<std::vector<int>>();
        if (!is_subgroup_set(*g, mem)) continue;
        ws.norm_cache.emplace(
            std::tuple<Gid, std::string, std::string>{
                g->id(), it.key().substr(0, sep), it.key().substr(sep + 1)},
            std::move(mem));
      }
    } catch (const std::exception&) {
    }
  }
}

void store_group_caches(Workspace& ws, const GroupPtr& g) {
  if (!ws.cache_dir) return;
  auto lit = ws.lattices.find(g->id());
  if (lit != ws.lattices.end()) {
    json subs = json::array();
    for (const auto& s : lit->second->subgroups) subs.push_back(s.members);
    cache_store(*ws.cache_dir, *g, "lattice", json{{"subgroups", subs}});
  }
  auto cit = ws.chief_cache.find(
      Workspace::SubKey{g->id(), whole_subgroup(g).members});
  if (cit != ws.chief_cache.end()) {
    json terms = json::array();
    for (const auto& t : cit->second->terms) terms.push_back(t.members);
    cache_store(*ws.cache_dir, *g, "chief_series", json{{"terms", terms}});
  }
  json norms = json::object();
  for (const auto& [k, v] : ws.norm_cache)
    if (std::get<0>(k) == g->id())
      norms[std::get<1>(k) + "|" + std::get<2>(k)] = v;
  if (!norms.empty()) cache_store(*ws.cache_dir, *g, "norm_results", norms);
}

}  // namespace normlab
