#include "vpbridge/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace vpb {

namespace {

bool is_open(char c) { return c == '[' || c == '{' || c == '('; }
bool is_close(char c) { return c == ']' || c == '}' || c == ')'; }

// drop whitespace inside brackets and next to '=' so the line splits cleanly
std::string squeeze(const std::string &s) {
  std::string out;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (is_open(c))
      ++depth;
    if (is_close(c))
      --depth;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (depth > 0)
        continue;
      size_t j = i;
      while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j])))
        ++j;
      bool near_eq = (j < s.size() && s[j] == '=') || (!out.empty() && out.back() == '=');
      if (near_eq) {
        i = j - 1;
        continue;
      }
    }
    out.push_back(c);
  }
  return out;
}

std::string strip(const std::string &s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return s.substr(a, b - a);
}

std::string join(const std::vector<std::string> &xs, const char *sep) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i)
      out += sep;
    out += xs[i];
  }
  return out;
}

bool parse_bool_flags(const std::string &v, Meta &m, const Record &r) {
  if (v.empty() || v == "none" || v == "-")
    return true;
  for (auto &f : split_top(v, ',')) {
    if (f == "irr")
      m.irreducible = true;
    else if (f == "ssep")
      m.spheres_separate = true;
    else if (f == "csep")
      m.surfaces_separate = true;
    else
      r.fail("unknown flag '" + f + "'");
  }
  return true;
}

} // namespace

const std::string &Record::get(const std::string &k) const {
  auto it = kv.find(k);
  if (it == kv.end())
    fail("missing key '" + k + "'");
  return it->second;
}

std::string Record::get_or(const std::string &k, const std::string &dflt) const {
  auto it = kv.find(k);
  return it == kv.end() ? dflt : it->second;
}

int Record::get_int(const std::string &k) const { return parse_int(get(k), *this); }

int Record::get_int_or(const std::string &k, int dflt) const {
  return has(k) ? get_int(k) : dflt;
}

void Record::fail(const std::string &msg) const {
  throw Error("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_top(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (is_open(c))
      ++depth;
    if (is_close(c))
      --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !out.empty())
    out.push_back(cur);
  return out;
}

int parse_int(const std::string &s, const Record &ctx) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size())
      ctx.fail("expected an integer, got '" + s + "'");
    return v;
  } catch (const std::logic_error &) {
    ctx.fail("expected an integer, got '" + s + "'");
  }
}

static std::string unwrap(const std::string &s, char open, char close, const Record &ctx) {
  if (s.size() < 2 || s.front() != open || s.back() != close)
    ctx.fail(std::string("expected ") + open + "..." + close + ", got '" + s + "'");
  return s.substr(1, s.size() - 2);
}

std::vector<std::string> parse_list(const std::string &s, const Record &ctx) {
  std::string in = unwrap(s, '[', ']', ctx);
  if (in.empty())
    return {};
  return split_top(in, ',');
}

std::vector<std::string> parse_tuple(const std::string &s, const Record &ctx) {
  return split_top(unwrap(s, '(', ')', ctx), ',');
}

std::map<std::string, std::string> parse_map(const std::string &s, const Record &ctx) {
  std::map<std::string, std::string> out;
  std::string in = unwrap(s, '{', '}', ctx);
  if (in.empty())
    return out;
  for (auto &item : split_top(in, ',')) {
    auto parts = split_top(item, ':');
    if (parts.size() != 2)
      ctx.fail("bad map entry '" + item + "'");
    if (!out.emplace(parts[0], parts[1]).second)
      ctx.fail("duplicate map key '" + parts[0] + "'");
  }
  return out;
}

Record parse_record(const std::string &text, int line) {
  Record r;
  r.line = line;
  std::istringstream is(squeeze(text));
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (r.kind.empty()) {
      r.kind = tok;
      continue;
    }
    if (eq == std::string::npos) {
      if (!r.kv.empty())
        r.fail("positional word '" + tok + "' after key=value pairs");
      r.args.push_back(tok);
    } else {
      std::string k = tok.substr(0, eq);
      if (k.empty())
        r.fail("empty key in '" + tok + "'");
      if (!r.kv.emplace(k, tok.substr(eq + 1)).second)
        r.fail("duplicate key '" + k + "'");
    }
  }
  return r;
}

std::vector<Record> read_records(std::istream &in) {
  std::vector<Record> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = strip(line);
    if (line.empty())
      continue;
    out.push_back(parse_record(line, n));
  }
  return out;
}

Diagram parse_diagram(std::istream &in) {
  Diagram d;
  bool have_meta = false;
  for (const Record &r : read_records(in)) {
    if (r.kind == "meta") {
      if (have_meta)
        r.fail("second meta record");
      have_meta = true;
      std::string tk = r.get_or("tkind", "link");
      if (tk == "empty")
        d.meta.tkind = TKind::empty;
      else if (tk == "link")
        d.meta.tkind = TKind::link;
      else if (tk == "graph")
        d.meta.tkind = TKind::graph;
      else
        r.fail("unknown tkind '" + tk + "'");
      if (r.has("valences"))
        for (auto &v : parse_list(r.get("valences"), r))
          d.meta.valences.push_back(parse_int(v, r));
      parse_bool_flags(r.get_or("flags", ""), d.meta, r);
      std::string gb = r.get_or("gbound", "none");
      if (gb != "none")
        d.meta.gbound = parse_int(gb, r);
      if (r.has("drilled"))
        d.meta.drilled = parse_list(r.get("drilled"), r);
      for (auto &[k, v] : r.kv)
        if (k != "tkind" && k != "valences" && k != "flags" && k != "gbound" && k != "drilled")
          r.fail("unknown meta key '" + k + "'");
    } else if (r.kind == "surface") {
      if (r.args.size() != 1)
        r.fail("surface needs exactly one id");
      Surface s;
      s.id = r.args[0];
      std::string role = r.get("role");
      if (role == "thick")
        s.role = Role::thick;
      else if (role == "thin")
        s.role = Role::thin;
      else if (role == "boundary")
        s.role = Role::boundary;
      else
        r.fail("unknown role '" + role + "'");
      s.genus = r.get_int("genus");
      s.punctures = r.get_int("punctures");
      for (auto &[k, v] : r.kv)
        if (k != "role" && k != "genus" && k != "punctures")
          r.fail("unknown surface key '" + k + "'");
      if (!d.surfaces.emplace(s.id, s).second)
        r.fail("duplicate surface id '" + s.id + "'");
    } else if (r.kind == "body") {
      if (r.args.size() != 1)
        r.fail("body needs exactly one id");
      Body b;
      b.id = r.args[0];
      b.plus = r.get("plus");
      if (r.has("minus"))
        b.minus = parse_list(r.get("minus"), r);
      b.bridge = r.get_int_or("bridge", 0);
      if (r.has("vertical"))
        for (auto &[k, v] : parse_map(r.get("vertical"), r))
          b.vertical[k] = parse_int(v, r);
      if (r.has("ghost"))
        for (auto &e : parse_list(r.get("ghost"), r)) {
          auto t = parse_tuple(e, r);
          if (t.size() != 2)
            r.fail("ghost arcs are pairs, got '" + e + "'");
          b.ghost.push_back(ghost_edge(t[0], t[1]));
        }
      b.loops = r.get_int_or("loops", 0);
      b.pockets = r.get_int_or("pockets", 0);
      for (auto &[k, v] : r.kv)
        if (k != "plus" && k != "minus" && k != "bridge" && k != "vertical" && k != "ghost" &&
            k != "loops" && k != "pockets")
          r.fail("unknown body key '" + k + "'");
      b.normalize();
      if (!d.bodies.emplace(b.id, b).second)
        r.fail("duplicate body id '" + b.id + "'");
    } else if (r.kind == "orient") {
      if (r.args.size() != 3 || !r.kv.empty())
        r.fail("orient expects: orient <surface> <source body> <target body>");
      if (!d.orient.emplace(r.args[0], Orient{r.args[1], r.args[2]}).second)
        r.fail("duplicate orientation for '" + r.args[0] + "'");
    } else {
      r.fail("unknown record '" + r.kind + "'");
    }
  }
  d.normalize();
  return d;
}

Diagram parse_diagram_string(const std::string &text) {
  std::istringstream is(text);
  return parse_diagram(is);
}

Diagram load_diagram(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read '" + path + "'");
  return parse_diagram(in);
}

std::string print_meta(const Meta &m) {
  std::vector<std::string> vals, flags;
  for (int v : m.valences)
    vals.push_back(std::to_string(v));
  if (m.irreducible)
    flags.push_back("irr");
  if (m.spheres_separate)
    flags.push_back("ssep");
  if (m.surfaces_separate)
    flags.push_back("csep");
  std::string out = std::string("meta tkind=") + to_string(m.tkind) + " valences=[" +
                    join(vals, ",") + "] flags=" + (flags.empty() ? "none" : join(flags, ",")) +
                    " gbound=" + (m.gbound ? std::to_string(*m.gbound) : "none");
  if (!m.drilled.empty())
    out += " drilled=[" + join(m.drilled, ",") + "]";
  return out;
}

std::string print_surface(const Surface &s) {
  return "surface " + s.id + " role=" + to_string(s.role) + " genus=" + std::to_string(s.genus) +
         " punctures=" + std::to_string(s.punctures);
}

std::string print_body(const Body &b) {
  std::vector<std::string> vs, gs;
  for (auto &[k, v] : b.vertical)
    vs.push_back(k + ":" + std::to_string(v));
  for (auto &e : b.ghost)
    gs.push_back("(" + e.first + "," + e.second + ")");
  return "body " + b.id + " plus=" + b.plus + " minus=[" + join(b.minus, ",") +
         "] bridge=" + std::to_string(b.bridge) + " vertical={" + join(vs, ",") + "} ghost=[" +
         join(gs, ",") + "] loops=" + std::to_string(b.loops) +
         " pockets=" + std::to_string(b.pockets);
}

std::string print_diagram(const Diagram &d) {
  std::ostringstream os;
  os << print_meta(d.meta) << '\n';
  for (auto &[id, s] : d.surfaces)
    os << print_surface(s) << '\n';
  for (auto &[id, b] : d.bodies)
    os << print_body(b) << '\n';
  for (auto &[id, o] : d.orient)
    os << "orient " << id << ' ' << o.first << ' ' << o.second << '\n';
  return os.str();
}

void save_diagram(const Diagram &d, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write '" + path + "'");
  out << print_diagram(d);
}

} // namespace vpb
