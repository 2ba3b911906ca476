#include "jetvar/models.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <utility>

#include "jetvar/calculus.hpp"
#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

// Shorthand: the polynomial consisting of one generator (with a jet index).
GradedPoly pv(const TheoryModel& m, const std::string& fam, const std::vector<int>& idx,
              MultiIndex jet = {}) {
  return GradedPoly::variable(m.var(fam, idx, jet));
}

ParamTensor diag_metric(std::string name, const std::vector<Rational>& diagonal) {
  ParamTensor g;
  g.name = std::move(name);
  int n = static_cast<int>(diagonal.size());
  g.shape = {n, n};
  g.attr_symmetric = true;
  g.attr_invertible = true;
  for (int i = 0; i < n; ++i) g.set({i, i}, diagonal[i]);
  g.finalize();
  return g;
}

ParamTensor su2_structure() {
  ParamTensor c;
  c.name = "c";
  c.shape = {3, 3, 3};
  c.attr_totally_antisymmetric = true;
  c.attr_jacobi = true;
  c.set({0, 1, 2}, 1);
  c.finalize();
  return c;
}

ParamTensor levi_civita3(std::string name) {
  ParamTensor e;
  e.name = std::move(name);
  e.shape = {3, 3, 3};
  e.attr_totally_antisymmetric = true;
  e.set({0, 1, 2}, 1);
  e.finalize();
  return e;
}

TheoryModel free_scalar() {
  TheoryModel m;
  m.name = "free-scalar";
  m.ctx.dim = 2;

  GeneratorFamily y{.name = "y", .kind = Kind::Field, .base = field_grading(false)};
  GeneratorFamily ybar{.name = "ybar",
                       .kind = Kind::Antifield,
                       .base = antifield_grading(y.base),
                       .partner = "y"};
  m.families = {y, ybar};
  m.params["g"] = diag_metric("g", {1, -1});
  m.finalize();

  const ParamTensor& g = m.params.at("g");
  GradedPoly L;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Rational w = g.at({a, b});
      if (is_zero_rat(w)) continue;
      L += pv(m, "y", {}, MultiIndex{a}) * pv(m, "y", {}, MultiIndex{b}) * (w / 2);
    }
  m.lagrangian = L;
  m.has_lagrangian = true;

  std::map<VariableId, GradedPoly> shift;
  shift[m.var("y", {})] = pv(m, "y", {}, MultiIndex{0});
  m.derivations.emplace("translation", Derivation(0, shift));
  return m;
}

TheoryModel maxwell() {
  TheoryModel m;
  m.name = "maxwell";
  m.ctx.dim = 4;

  GeneratorFamily a{.name = "a", .kind = Kind::Field, .shape = {4}, .base = field_grading(false)};
  GeneratorFamily c{.name = "c", .kind = Kind::Ghost, .base = ghost_grading(true, 0)};
  GeneratorFamily abar{.name = "abar",
                       .kind = Kind::Antifield,
                       .shape = {4},
                       .base = antifield_grading(a.base),
                       .partner = "a"};
  GeneratorFamily cbar{.name = "cbar",
                       .kind = Kind::GhostAntifield,
                       .base = antifield_grading(c.base),
                       .partner = "c"};
  m.families = {a, c, abar, cbar};
  m.params["g"] = diag_metric("g", {1, -1, -1, -1});
  m.finalize();

  const ParamTensor& g = m.params.at("g");
  auto F = [&](int lam, int mu) {
    return pv(m, "a", {mu}, MultiIndex{lam}) - pv(m, "a", {lam}, MultiIndex{mu});
  };
  GradedPoly L;
  for (int lam = 0; lam < 4; ++lam)
    for (int mu = 0; mu < 4; ++mu)
      for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be) {
          Rational w = g.at({lam, al}) * g.at({mu, be});
          if (is_zero_rat(w)) continue;
          L += F(lam, mu) * F(al, be) * (w / -4);
        }
  m.lagrangian = L;
  m.has_lagrangian = true;

  NoetherFamily ni;
  ni.name = "gauge";
  ni.ghost_family = "c";
  ni.delta.resize(1);
  for (int lam = 0; lam < 4; ++lam)
    ni.delta[0][{m.var("a", {lam}), MultiIndex{lam}}] = GradedPoly::constant(-1);
  m.noether.push_back(std::move(ni));

  std::map<VariableId, GradedPoly> bc;
  for (int lam = 0; lam < 4; ++lam) bc[m.var("a", {lam})] = pv(m, "c", {}, MultiIndex{lam});
  Derivation b(1, bc);
  m.derivations.emplace("gauge", b);
  m.brst = b;
  m.extended = extend_lagrangian(m.lagrangian, *m.brst, m);
  return m;
}

TheoryModel chern_simons() {
  TheoryModel m;
  m.name = "chern-simons-3d";
  m.ctx.dim = 3;

  GeneratorFamily a{
      .name = "a", .kind = Kind::Field, .shape = {3, 3}, .base = field_grading(false)};
  GeneratorFamily c{.name = "c", .kind = Kind::Ghost, .shape = {3}, .base = ghost_grading(true, 0)};
  GeneratorFamily xi{
      .name = "xi", .kind = Kind::Ghost, .shape = {3}, .base = ghost_grading(true, 0)};
  GeneratorFamily abar{.name = "abar",
                       .kind = Kind::Antifield,
                       .shape = {3, 3},
                       .base = antifield_grading(a.base),
                       .partner = "a"};
  GeneratorFamily cbar{.name = "cbar",
                       .kind = Kind::GhostAntifield,
                       .shape = {3},
                       .base = antifield_grading(c.base),
                       .partner = "c"};
  GeneratorFamily xibar{.name = "xibar",
                        .kind = Kind::GhostAntifield,
                        .shape = {3},
                        .base = antifield_grading(xi.base),
                        .partner = "xi"};
  m.families = {a, c, xi, abar, cbar, xibar};
  m.params["c"] = su2_structure();
  m.params["eps"] = levi_civita3("eps");
  m.params["h"] = diag_metric("h", {1, 1, 1});
  m.finalize();

  const ParamTensor& f = m.params.at("c");
  const ParamTensor& eps = m.params.at("eps");
  const ParamTensor& h = m.params.at("h");

  auto F = [&](int n, int be, int ga) {
    GradedPoly r = pv(m, "a", {n, ga}, MultiIndex{be}) - pv(m, "a", {n, be}, MultiIndex{ga});
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) {
        Rational w = f.at({n, p, q});
        if (is_zero_rat(w)) continue;
        r += pv(m, "a", {p, be}) * pv(m, "a", {q, ga}) * w;
      }
    return r;
  };

  GradedPoly L;
  for (int mm = 0; mm < 3; ++mm)
    for (int n = 0; n < 3; ++n)
      for (int al = 0; al < 3; ++al)
        for (int be = 0; be < 3; ++be)
          for (int ga = 0; ga < 3; ++ga) {
            Rational w = h.at({mm, n}) * eps.at({al, be, ga});
            if (is_zero_rat(w)) continue;
            GradedPoly cubic;
            for (int p = 0; p < 3; ++p)
              for (int q = 0; q < 3; ++q) {
                Rational s = f.at({n, p, q});
                if (is_zero_rat(s)) continue;
                cubic += pv(m, "a", {p, be}) * pv(m, "a", {q, ga}) * (s / 3);
              }
            L += pv(m, "a", {mm, al}) * (F(n, be, ga) - cubic) * (w / 2);
          }
  m.lagrangian = L;
  m.has_lagrangian = true;

  NoetherFamily gauge;
  gauge.name = "gauge";
  gauge.ghost_family = "c";
  gauge.delta.resize(3);
  for (int j = 0; j < 3; ++j) {
    for (int r = 0; r < 3; ++r)
      for (int lam = 0; lam < 3; ++lam) {
        GradedPoly coeff;
        for (int i = 0; i < 3; ++i) {
          Rational w = f.at({r, j, i});
          if (is_zero_rat(w)) continue;
          coeff += pv(m, "a", {i, lam}) * -w;
        }
        if (!coeff.is_zero()) gauge.delta[j][{m.var("a", {r, lam}), MultiIndex{}}] = coeff;
      }
    for (int lam = 0; lam < 3; ++lam)
      gauge.delta[j][{m.var("a", {j, lam}), MultiIndex{lam}}] = GradedPoly::constant(-1);
  }
  m.noether.push_back(std::move(gauge));

  NoetherFamily diffeo;
  diffeo.name = "diffeo";
  diffeo.ghost_family = "xi";
  diffeo.delta.resize(3);
  for (int mu = 0; mu < 3; ++mu)
    for (int r = 0; r < 3; ++r)
      for (int lam = 0; lam < 3; ++lam) {
        diffeo.delta[mu][{m.var("a", {r, lam}), MultiIndex{}}] =
            pv(m, "a", {r, mu}, MultiIndex{lam}) - pv(m, "a", {r, lam}, MultiIndex{mu});
        diffeo.delta[mu][{m.var("a", {r, lam}), MultiIndex{lam}}] = pv(m, "a", {r, mu});
      }
  m.noether.push_back(std::move(diffeo));

  std::map<VariableId, GradedPoly> vert;
  for (int r = 0; r < 3; ++r)
    for (int lam = 0; lam < 3; ++lam) {
      GradedPoly u;
      for (int mu = 0; mu < 3; ++mu) {
        u -= pv(m, "xi", {mu}, MultiIndex{lam}) * pv(m, "a", {r, mu});
        u -= pv(m, "xi", {mu}) * pv(m, "a", {r, lam}, MultiIndex{mu});
      }
      vert[m.var("a", {r, lam})] = u;
    }
  m.derivations.emplace("vertical-diffeo", Derivation(1, vert));

  std::map<VariableId, GradedPoly> bc;
  for (int r = 0; r < 3; ++r)
    for (int lam = 0; lam < 3; ++lam) {
      GradedPoly u = pv(m, "c", {r}, MultiIndex{lam}) + vert.at(m.var("a", {r, lam}));
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          Rational w = f.at({r, p, q});
          if (is_zero_rat(w)) continue;
          u += pv(m, "c", {p}) * pv(m, "a", {q, lam}) * -w;
        }
      bc[m.var("a", {r, lam})] = u;
    }
  for (int r = 0; r < 3; ++r) {
    GradedPoly u;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rational w = f.at({r, i, j});
        if (is_zero_rat(w)) continue;
        u += pv(m, "c", {i}) * pv(m, "c", {j}) * (w / -2);
      }
    for (int mu = 0; mu < 3; ++mu)
      u -= pv(m, "xi", {mu}) * pv(m, "c", {r}, MultiIndex{mu});
    bc[m.var("c", {r})] = u;
  }
  for (int lam = 0; lam < 3; ++lam) {
    GradedPoly u;
    for (int mu = 0; mu < 3; ++mu)
      u += pv(m, "xi", {lam}, MultiIndex{mu}) * pv(m, "xi", {mu});
    bc[m.var("xi", {lam})] = u;
  }
  m.brst = Derivation(1, bc);
  m.extended = extend_lagrangian(m.lagrangian, *m.brst, m);
  return m;
}

TheoryModel gravitation() {
  TheoryModel m;
  m.name = "gravitation-gauge";
  m.ctx.dim = 4;

  GeneratorFamily sig{.name = "sig",
                      .kind = Kind::Field,
                      .shape = {4, 4},
                      .symmetric = true,
                      .base = field_grading(false)};
  GeneratorFamily k{
      .name = "k", .kind = Kind::Field, .shape = {4, 4, 4}, .base = field_grading(false)};
  GeneratorFamily xi{
      .name = "xi", .kind = Kind::Ghost, .shape = {4}, .base = ghost_grading(true, 0)};
  m.families = {sig, k, xi};
  m.finalize();

  auto add = [](std::map<std::pair<VariableId, MultiIndex>, GradedPoly>& row,
                const VariableId& gen, MultiIndex idx, const GradedPoly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = row.try_emplace({gen, std::move(idx)}, p);
    if (!inserted) it->second += p;
  };

  NoetherFamily diffeo;
  diffeo.name = "diffeo";
  diffeo.ghost_family = "xi";
  diffeo.delta.resize(4);
  for (int lam = 0; lam < 4; ++lam) {
    auto& row = diffeo.delta[lam];
    // Metric sector, written on ordered index pairs (symmetric slots).
    for (int al = 0; al < 4; ++al)
      for (int be = al; be < 4; ++be) {
        GradedPoly c0 = -pv(m, "sig", {al, be}, MultiIndex{lam});
        for (int nu = 0; nu < 4; ++nu) {
          if (al == lam) c0 -= pv(m, "sig", {nu, be}, MultiIndex{nu});
          if (be == lam) c0 -= pv(m, "sig", {nu, al}, MultiIndex{nu});
        }
        add(row, m.var("sig", {al, be}), MultiIndex{}, c0);
        for (int nu = 0; nu < 4; ++nu) {
          GradedPoly c1;
          if (al == lam) c1 -= pv(m, "sig", {nu, be});
          if (be == lam) c1 -= pv(m, "sig", {nu, al});
          add(row, m.var("sig", {al, be}), MultiIndex{nu}, c1);
        }
      }
    // Connection sector.
    for (int mu = 0; mu < 4; ++mu)
      for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be) {
          GradedPoly c0 = -pv(m, "k", {mu, al, be}, MultiIndex{lam}) +
                          pv(m, "k", {mu, al, lam}, MultiIndex{be}) +
                          pv(m, "k", {lam, al, be}, MultiIndex{mu});
          if (al == lam)
            for (int nu = 0; nu < 4; ++nu) c0 -= pv(m, "k", {mu, nu, be}, MultiIndex{nu});
          add(row, m.var("k", {mu, al, be}), MultiIndex{}, c0);
          for (int nu = 0; nu < 4; ++nu) {
            GradedPoly c1;
            if (al == lam) c1 -= pv(m, "k", {mu, nu, be});
            if (nu == be) c1 += pv(m, "k", {mu, al, lam});
            if (nu == mu) c1 += pv(m, "k", {lam, al, be});
            add(row, m.var("k", {mu, al, be}), MultiIndex{nu}, c1);
          }
        }
    for (int mu = 0; mu < 4; ++mu)
      for (int be = 0; be < 4; ++be)
        add(row, m.var("k", {mu, lam, be}), MultiIndex{mu, be}, GradedPoly::constant(1));
  }
  m.noether.push_back(std::move(diffeo));

  std::map<VariableId, GradedPoly> bc;
  for (int al = 0; al < 4; ++al)
    for (int be = al; be < 4; ++be) {
      GradedPoly u;
      for (int nu = 0; nu < 4; ++nu) {
        u += pv(m, "xi", {al}, MultiIndex{nu}) * pv(m, "sig", {nu, be});
        u += pv(m, "xi", {be}, MultiIndex{nu}) * pv(m, "sig", {al, nu});
      }
      for (int lam = 0; lam < 4; ++lam)
        u -= pv(m, "xi", {lam}) * pv(m, "sig", {al, be}, MultiIndex{lam});
      bc[m.var("sig", {al, be})] = u;
    }
  for (int mu = 0; mu < 4; ++mu)
    for (int al = 0; al < 4; ++al)
      for (int be = 0; be < 4; ++be) {
        GradedPoly u = pv(m, "xi", {al}, MultiIndex{mu, be});
        for (int nu = 0; nu < 4; ++nu) {
          u += pv(m, "xi", {al}, MultiIndex{nu}) * pv(m, "k", {mu, nu, be});
          u -= pv(m, "xi", {nu}, MultiIndex{be}) * pv(m, "k", {mu, al, nu});
          u -= pv(m, "xi", {nu}, MultiIndex{mu}) * pv(m, "k", {nu, al, be});
        }
        for (int lam = 0; lam < 4; ++lam)
          u -= pv(m, "xi", {lam}) * pv(m, "k", {mu, al, be}, MultiIndex{lam});
        bc[m.var("k", {mu, al, be})] = u;
      }
  for (int lam = 0; lam < 4; ++lam) {
    GradedPoly u;
    for (int mu = 0; mu < 4; ++mu)
      u += pv(m, "xi", {lam}, MultiIndex{mu}) * pv(m, "xi", {mu});
    bc[m.var("xi", {lam})] = u;
  }
  m.brst = Derivation(1, bc);
  return m;
}

}  // namespace

TheoryModel yang_mills_model(const ParamTensor& structure, bool validate_structure) {
  TheoryModel m;
  m.name = "yang-mills-su2";
  m.ctx.dim = 4;

  GeneratorFamily a{
      .name = "a", .kind = Kind::Field, .shape = {3, 4}, .base = field_grading(false)};
  GeneratorFamily c{.name = "c", .kind = Kind::Ghost, .shape = {3}, .base = ghost_grading(true, 0)};
  GeneratorFamily abar{.name = "abar",
                       .kind = Kind::Antifield,
                       .shape = {3, 4},
                       .base = antifield_grading(a.base),
                       .partner = "a"};
  GeneratorFamily cbar{.name = "cbar",
                       .kind = Kind::GhostAntifield,
                       .shape = {3},
                       .base = antifield_grading(c.base),
                       .partner = "c"};
  m.families = {a, c, abar, cbar};

  ParamTensor f = structure;
  f.name = "c";
  if (!validate_structure) {
    f.attr_totally_antisymmetric = false;
    f.attr_jacobi = false;
  }
  f.finalize();
  m.params["c"] = f;
  m.params["g"] = diag_metric("g", {1, -1, -1, -1});
  m.params["h"] = diag_metric("h", {1, 1, 1});
  m.finalize();

  const ParamTensor& g = m.params.at("g");
  const ParamTensor& h = m.params.at("h");

  auto F = [&](int n, int lam, int nu) {
    GradedPoly r = pv(m, "a", {n, nu}, MultiIndex{lam}) - pv(m, "a", {n, lam}, MultiIndex{nu});
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) {
        Rational w = f.at({n, p, q});
        if (is_zero_rat(w)) continue;
        r += pv(m, "a", {p, lam}) * pv(m, "a", {q, nu}) * w;
      }
    return r;
  };

  GradedPoly L;
  for (int mm = 0; mm < 3; ++mm)
    for (int n = 0; n < 3; ++n)
      for (int lam = 0; lam < 4; ++lam)
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu)
            for (int si = 0; si < 4; ++si) {
              Rational w = h.at({mm, n}) * g.at({lam, mu}) * g.at({nu, si});
              if (is_zero_rat(w)) continue;
              L += F(mm, lam, nu) * F(n, mu, si) * (w / -4);
            }
  m.lagrangian = L;
  m.has_lagrangian = true;

  NoetherFamily ni;
  ni.name = "gauge";
  ni.ghost_family = "c";
  ni.delta.resize(3);
  for (int j = 0; j < 3; ++j) {
    for (int r = 0; r < 3; ++r)
      for (int lam = 0; lam < 4; ++lam) {
        GradedPoly coeff;
        for (int i = 0; i < 3; ++i) {
          Rational w = f.at({r, j, i});
          if (is_zero_rat(w)) continue;
          coeff += pv(m, "a", {i, lam}) * -w;
        }
        if (!coeff.is_zero()) ni.delta[j][{m.var("a", {r, lam}), MultiIndex{}}] = coeff;
      }
    for (int lam = 0; lam < 4; ++lam)
      ni.delta[j][{m.var("a", {j, lam}), MultiIndex{lam}}] = GradedPoly::constant(-1);
  }
  m.noether.push_back(std::move(ni));

  for (int j = 0; j < 3; ++j) {
    std::map<VariableId, GradedPoly> rot;
    for (int r = 0; r < 3; ++r)
      for (int lam = 0; lam < 4; ++lam) {
        GradedPoly u;
        for (int i = 0; i < 3; ++i) {
          Rational w = f.at({r, j, i});
          if (is_zero_rat(w)) continue;
          u += pv(m, "a", {i, lam}) * -w;
        }
        if (!u.is_zero()) rot[m.var("a", {r, lam})] = u;
      }
    if (!rot.empty()) m.derivations.emplace("color-" + std::to_string(j), Derivation(0, rot));
  }

  std::map<VariableId, GradedPoly> bc;
  for (int r = 0; r < 3; ++r)
    for (int lam = 0; lam < 4; ++lam) {
      GradedPoly u = pv(m, "c", {r}, MultiIndex{lam});
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
          Rational w = f.at({r, j, i});
          if (is_zero_rat(w)) continue;
          u += pv(m, "c", {j}) * pv(m, "a", {i, lam}) * -w;
        }
      bc[m.var("a", {r, lam})] = u;
    }
  for (int r = 0; r < 3; ++r) {
    GradedPoly u;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rational w = f.at({r, i, j});
        if (is_zero_rat(w)) continue;
        u += pv(m, "c", {i}) * pv(m, "c", {j}) * (w / -2);
      }
    if (!u.is_zero()) bc[m.var("c", {r})] = u;
  }
  m.brst = Derivation(1, bc);
  if (nilpotency_residuals(*m.brst, m.ctx).empty())
    m.extended = extend_lagrangian(m.lagrangian, *m.brst, m);
  return m;
}

std::vector<std::string> builtin_names() {
  return {"free-scalar", "maxwell", "yang-mills-su2", "chern-simons-3d", "gravitation-gauge"};
}

TheoryModel builtin(const std::string& name) {
  if (name == "free-scalar") return free_scalar();
  if (name == "maxwell") return maxwell();
  if (name == "yang-mills-su2") return yang_mills_model(su2_structure(), true);
  if (name == "chern-simons-3d") return chern_simons();
  if (name == "gravitation-gauge") return gravitation();
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(Errc::UnknownModel, "no builtin model named '" + name + "' (available: " + known + ")");
}

bool ModelReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

struct Outcome {
  bool pass = false;
  std::optional<std::string> residual;
};

Outcome poly_outcome(const GradedPoly& residual) {
  Outcome o;
  o.pass = residual.is_zero();
  if (!o.pass) o.residual = residual.to_string();
  return o;
}

Outcome residual_map_outcome(const std::map<VariableId, GradedPoly>& residuals) {
  Outcome o;
  o.pass = residuals.empty();
  if (!o.pass) o.residual = residuals.begin()->second.to_string();
  return o;
}

}  // namespace

ModelReport verify_model(const TheoryModel& m, int jobs) {
  using Task = std::pair<std::string, std::function<Outcome()>>;
  std::vector<Task> tasks;
  const JetContext ctx = m.ctx;
  bool has_antifields = !m.antibracket_pairing().empty();

  for (const auto& ni : m.noether) {
    if (m.has_lagrangian) {
      tasks.emplace_back("ni:" + ni.name, [&m, &ni] {
        return poly_outcome(verify_ni(m, ni, field_euler_lagrange(m)));
      });
    } else {
      tasks.emplace_back("ni:" + ni.name, [&m, &ni, ctx] {
        GradedPoly r = placeholder_ni_residual(m, ni);
        Outcome o;
        o.pass = is_variationally_trivial(r, ctx);
        if (!o.pass) o.residual = r.to_string();
        return o;
      });
    }
  }
  if (m.has_lagrangian && has_antifields) {
    tasks.emplace_back("kt-nilpotency", [&m, ctx] {
      return residual_map_outcome(nilpotency_residuals(kt_differential(m), ctx));
    });
  }
  if (m.has_lagrangian && !m.noether.empty()) {
    tasks.emplace_back("gauge-condition", [&m, ctx] {
      Derivation u = gauge_operator(m);
      GradedPoly combination;
      for (const auto& [gen, comp] : u.components())
        combination += comp * euler_lagrange_one(m.lagrangian, gen, ctx);
      Outcome o;
      o.pass = is_variationally_trivial(combination, ctx);
      if (!o.pass) o.residual = combination.to_string();
      return o;
    });
  }
  if (m.brst) {
    tasks.emplace_back("brst-nilpotency", [&m, ctx] {
      return residual_map_outcome(nilpotency_residuals(*m.brst, ctx));
    });
  }
  if (has_antifields && (m.extended || m.has_lagrangian)) {
    tasks.emplace_back("master-equation", [&m, ctx] {
      const GradedPoly& le = m.extended ? *m.extended : m.lagrangian;
      GradedPoly bracket = antibracket(le, le, m.antibracket_pairing(), ctx);
      Outcome o;
      o.pass = is_variationally_trivial(bracket, ctx);
      if (!o.pass) o.residual = bracket.to_string();
      return o;
    });
  }
  if (m.has_lagrangian) {
    for (const auto& [name, d] : m.derivations) {
      tasks.emplace_back("symmetry:" + name, [&m, d, ctx] {
        GradedPoly drift = lie_derivative(d, m.lagrangian, ctx);
        Outcome o;
        o.pass = is_variationally_trivial(drift, ctx);
        if (!o.pass) o.residual = drift.to_string();
        return o;
      });
      tasks.emplace_back("current:" + name, [&m, d, ctx] {
        Outcome o;
        try {
          std::vector<GradedPoly> current = noether_current(d, m.lagrangian, ctx);
          GradedPoly balance;
          for (int lam = 0; lam < ctx.dim; ++lam)
            balance += total_derivative(current[lam], lam, ctx);
          for (const auto& [gen, comp] : d.components())
            balance -= comp * euler_lagrange_one(m.lagrangian, gen, ctx);
          o.pass = balance.is_zero();
          if (!o.pass) o.residual = balance.to_string();
        } catch (const Error& e) {
          if (e.code() != Errc::NotASymmetry) throw;
          o.pass = false;
          o.residual = e.what();
        }
        return o;
      });
    }
  }

  ModelReport report;
  report.model = m.name;
  report.checks.resize(tasks.size());

  auto run_one = [&](std::size_t i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o = tasks[i].second();
    auto stop = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = tasks[i].first;
    r.pass = o.pass;
    r.residual = std::move(o.residual);
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return r;
  };

  if (jobs > 1) {
    std::vector<std::future<CheckResult>> futures;
    futures.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i)
      futures.push_back(std::async(std::launch::async, run_one, i));
    for (std::size_t i = 0; i < tasks.size(); ++i) report.checks[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) report.checks[i] = run_one(i);
  }
  return report;
}

}  // namespace jetvar
