// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "generators.hpp"

#include "vpbridge/bounds.hpp"
#include "vpbridge/builders.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/search.hpp"
#include "vpbridge/sums.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <tuple>

using namespace vpb;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int n, const std::string &title, bool ok, const std::string &detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << detail
            << ")" << std::endl;
  if (!ok)
    ++failures;
}

// Runs a criterion body; an exception counts as a failure.
void criterion(int n, const std::string &title, const std::function<bool(std::ostringstream &)> &f) {
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = f(detail);
  } catch (const std::exception &e) {
    detail << "exception: " << e.what();
  }
  report(n, title, ok, detail.str());
}

bool identities_hold(const Diagram &d, std::ostringstream &why) {
  for (auto &c : check_identities(d))
    if (!c.holds) {
      why << "identity " << c.name << " fails: " << fmt_q(c.lhs) << " vs " << fmt_q(c.rhs) << "; ";
      return false;
    }
  return true;
}

using Profile = std::tuple<std::string, std::string, int>;

Profile profile(const Diagram &d) { return {fmt_q(netext(d)), fmt_q(width(d)), netchi(d)}; }

} // namespace

int main() {
  criterion(1, "width 92 before and 74 after thinning", [](std::ostringstream &os) {
    auto t0 = Clock::now();
    Diagram d = width92_diagram();
    bool ext_ok = true;
    for (auto &id : d.ids_with_role(Role::thick))
      ext_ok &= d.surface(id).ext() == Q(4);
    for (auto &id : d.ids_with_role(Role::thin))
      ext_ok &= d.surface(id).ext() == Q(1);
    Q w0 = width(d);
    ThinningRun run = extended_thinning(d, width92_to_74_script());
    Q w1 = width(run.result);
    Diagram e = width74_diagram();
    std::vector<Q> thick, thin;
    for (auto &id : run.result.ids_with_role(Role::thick))
      thick.push_back(run.result.surface(id).ext());
    for (auto &id : run.result.ids_with_role(Role::thin))
      thin.push_back(run.result.surface(id).ext());
    std::sort(thick.begin(), thick.end());
    bool shape_ok = thick == std::vector<Q>{Q(2), Q(2), Q(4), Q(4)} &&
                    thin == std::vector<Q>{Q(1), Q(1), Q(1)};
    double s = seconds_since(t0);
    os << "w=" << fmt_q(w0) << " then " << fmt_q(w1) << ", reference " << fmt_q(width(e)) << ", "
       << s << " s";
    return ext_ok && shape_ok && w0 == Q(92) && w1 == Q(74) && width(e) == Q(74) && s < 1.0;
  });

  criterion(2, "untelescoping preserves netext and netchi", [](std::ostringstream &os) {
    gen::Rng rng(20261015);
    std::size_t accepted = 0, rejected = 0, bad = 0;
    const gen::DiagramParams params[] = {
        {3, 1, 6, 1, false, true}, {4, 1, 6, 0, true, false}, {2, 2, 4, 1, false, false}};
    std::size_t round = 0;
    while (accepted < 10000 && rejected < 2000000) {
      Diagram d = gen::random_valid_diagram(rng, params[round++ % 3]);
      for (int k = 0; k < 30; ++k) {
        UntelescopeSpec u = gen::random_untelescope(rng, d);
        Diagram e;
        try {
          e = untelescope(d, u);
        } catch (const Error &) {
          ++rejected;
          continue;
        }
        ++accepted;
        if (netext(e) != netext(d) || netchi(e) != netchi(d) || !validate_diagram(e).ok())
          ++bad;
      }
    }
    os << accepted << " certificates accepted, " << rejected << " rejected, " << bad
       << " violations";
    return accepted >= 10000 && bad == 0;
  });

  criterion(3, "width algebra of one thinning on the full grid", [](std::ostringstream &os) {
    std::size_t points = 0, bad = 0;
    for (int x2 = -2; x2 <= 12; ++x2)
      for (int i = 0; i <= 1; ++i)
        for (int j = 0; j <= 1; ++j)
          for (int p2 = -2; p2 <= 8; ++p2)
            for (int m2 = -2; m2 <= 8; ++m2) {
              auto a = thinning_width_algebra(Q(x2, 2), i, j, Q(p2, 2), Q(m2, 2));
              ++points;
              if (a.lhs != a.rhs)
                ++bad;
            }
    auto s = thinning_width_algebra(Q(4), 1, 0, Q(1), Q(0));
    os << points << " grid points, " << bad << " mismatches, spot " << fmt_q(s.lhs) << " = "
       << fmt_q(s.rhs);
    return bad == 0 && s.lhs == Q(14) && s.rhs == Q(14);
  });

  criterion(4, "global identities on a generated corpus", [](std::ostringstream &os) {
    gen::Rng rng(4);
    std::vector<Diagram> corpus;
    for (int n = 1; n <= 4; ++n)
      corpus.push_back(s1xs2_closure(n));
    corpus.push_back(width92_diagram());
    corpus.push_back(width74_diagram());
    for (int e = 0; e <= 3; ++e)
      corpus.push_back(theta_diagram(e));
    const gen::DiagramParams params[] = {{4, 1, 6, 1, false, true}, {5, 1, 8, 0, true, false},
                                         {3, 2, 4, 2, false, false}};
    for (int k = 0; corpus.size() < 1200; ++k) {
      Diagram d = gen::random_valid_diagram(rng, params[k % 3]);
      corpus.push_back(d);
      if (k % 4 == 0) {
        auto s = gen::random_script(rng, d, 2, false);
        Diagram cur = d;
        for (auto &m : s)
          cur = apply_move(cur, m, {});
        if (!s.empty())
          corpus.push_back(cur);
      }
      if (k % 10 == 0)
        if (auto t = gen::random_glue_tree(rng, 3))
          corpus.push_back(t->whole);
    }
    std::size_t bad = 0, closures = 0;
    for (auto &d : corpus)
      if (!identities_hold(d, os))
        ++bad;
    for (int n = 1; n <= 4; ++n)
      closures += netext(s1xs2_closure(n)) == Q(0);
    os << corpus.size() << " diagrams, " << bad << " failures, closure netext 0 in " << closures
       << "/4";
    return corpus.size() >= 1000 && bad == 0 && closures == 4;
  });

  criterion(5, "delta oracle up to genus 2, 6 punctures, 3 minus surfaces", [](std::ostringstream &os) {
    auto t0 = Clock::now();
    OracleReport r = delta_oracle({2, 6, 3});
    double s = seconds_since(t0);
    bool ball = false;
    for (auto &e : enumerate_bodies({0, 0, 0}))
      ball |= is_ball_empty(e.shape.body(), e.shape.context) && e.delta == Q(-1);
    os << r.bodies << " bodies, " << r.unrealizable << " unrealizable, " << r.negative
       << " negative, " << r.class_agree << "/" << r.delta_zero << " delta-zero classes agree, " << s
       << " s";
    if (!r.issues.empty())
      os << ", first issue: " << r.issues.front();
    return r.ok() && r.negative == 0 && r.unrealizable == 0 && r.class_agree == r.delta_zero &&
           r.delta_zero > 0 && ball && s < 60.0;
  });

  criterion(6, "additivity and prime splitting on random glue trees", [](std::ostringstream &os) {
    gen::Rng rng(6);
    std::size_t trees = 0, bad = 0, kind2 = 0, kind3 = 0, attempts = 0;
    while (trees < 150 && attempts < 5000) {
      ++attempts;
      auto t = gen::random_glue_tree(rng, 5);
      if (!t)
        continue;
      ++trees;
      kind2 += t->p2;
      kind3 += t->p3;
      Q ne, w;
      for (auto &p : t->parts) {
        ne += netext(p);
        w += width(p);
      }
      Q shift = Q(t->p3, 2);
      bool ok = netext(t->whole) == ne - shift && width(t->whole) == w - shift &&
                additivity_check(t->parts, t->whole, t->p2, t->p3).ok();
      FactorizationResult f = split_prime(t->whole);
      std::vector<Profile> a, b;
      for (auto &p : t->parts)
        a.push_back(profile(p));
      for (auto &p : f.factors)
        b.push_back(profile(p));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      ok = ok && a == b && f.p2 == t->p2 && f.p3 == t->p3;
      if (!ok)
        ++bad;
    }
    os << trees << " trees, " << kind2 << " kind-2 and " << kind3 << " kind-3 sums, " << bad
       << " failures";
    return trees >= 100 && bad == 0 && kind2 > 0 && kind3 > 0;
  });

  criterion(7, "tunnel number and Morimoto bound tables", [](std::ostringstream &os) {
    SummandProfile one;
    one.n = 1;
    one.j = 0;
    one.tunnel = {1};
    TunnelBounds t = tunnel_bounds(one);
    bool prime = t.lower == 1 && t.upper == 1;
    // tunnel number one forces one summand: two or more give lower >= 2
    for (int n = 2; n <= 4; ++n)
      for (int j = 0; j <= n; ++j) {
        SummandProfile p;
        p.n = n;
        p.j = j;
        p.tunnel.assign(n, 1);
        prime &= tunnel_bounds(p).lower >= 2;
      }
    bool ordered = true;
    for (int n = 1; n <= 4; ++n)
      for (int j = 0; j <= n; ++j)
        for (int t0 = 0; t0 <= 3; ++t0) {
          SummandProfile p;
          p.n = n;
          p.j = j;
          for (int k = 0; k < n; ++k)
            p.tunnel.push_back(1 + (t0 + k) % 4);
          auto r = tunnel_bounds(p);
          ordered &= r.lower <= r.upper;
        }
    auto m03 = morimoto_bounds(0, 3), m12 = morimoto_bounds(1, 2);
    bool mor = m03.max_summands == 2 && m03.min_11 == 2 && m03.min_2bridge == 2 &&
               m12.max_summands == 2 && m12.min_11 == 2 && m12.min_2bridge == 1;
    bool mono = true;
    for (int g = 0; g <= 5; ++g)
      for (int b = 0; b <= 5; ++b) {
        if (g == 0 && b == 0)
          continue;
        int here = morimoto_bounds(g, b).max_summands;
        if (g + 1 <= 5)
          mono &= morimoto_bounds(g + 1, b).max_summands >= here;
        if (b + 1 <= 5)
          mono &= morimoto_bounds(g, b + 1).max_summands >= here;
      }
    bool schubert = schubert_summand_bound(netext(bridge_position(2))) == 1;
    os << "(n=1,t=1) -> " << t.lower << ".." << t.upper << ", (0,3) -> (" << m03.max_summands << ","
       << m03.min_11 << "," << m03.min_2bridge << "), (1,2) -> (" << m12.max_summands << ","
       << m12.min_11 << "," << m12.min_2bridge << ")";
    return prime && ordered && mor && mono && schubert;
  });

  criterion(8, "monotone invariants along random thinning scripts", [](std::ostringstream &os) {
    gen::Rng rng(8);
    std::size_t scripts = 0, steps = 0, bad = 0, attempts = 0;
    gen::DiagramParams p{4, 1, 6, 0, true, false};
    while (scripts < 1000 && attempts < 20000) {
      ++attempts;
      Diagram d = gen::random_valid_diagram(rng, p);
      if (!width_hypothesis(d))
        continue;
      auto script = gen::random_script(rng, d, 3, true);
      if (script.empty())
        continue;
      ++scripts;
      try {
        ThinningRun run = extended_thinning(d, script, MoveOptions{true});
        Q ne = netext(d), w = width(d);
        int nc = netchi(d);
        for (auto &s : run.steps) {
          ++steps;
          if (s.netext > ne || s.width > w || s.netchi > nc)
            ++bad;
          ne = s.netext;
          w = s.width;
          nc = s.netchi;
        }
      } catch (const Error &e) {
        if (bad == 0)
          os << "first violation: " << e.what() << "; ";
        ++bad;
      }
    }
    os << scripts << " scripts, " << steps << " steps, " << bad << " violations";
    return scripts >= 1000 && bad == 0;
  });

  return failures ? 1 : 0;
}
